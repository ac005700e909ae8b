//! Full orbifold Hodge diamond, untwisted part and Euler number of a group.

use toroidal_orbifold::cohomology::untwisted_sector_diamond;
use toroidal_orbifold::report::literal::GroupLiteral;
use toroidal_orbifold::{chen_ruan_diamond, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    let g = GroupLiteral::admissible_group(CurveOrder::Four, "1,3,0;0,0,0 | 3,0,1;0,1,0")?;
    println!("G = {}", g.literal());
    println!("untwisted:\n{}", untwisted_sector_diamond(&g)?);
    let d = chen_ruan_diamond(&g)?;
    println!("orbifold:\n{d}");
    println!("(h11,h12) = {:?}, euler = {}", d.pair(), d.euler());
    Ok(())
}
