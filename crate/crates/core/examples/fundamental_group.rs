//! pi1 of the quotient and the elements with fixed points that generate the kernel.

use toroidal_orbifold::pi1::fixed_point_subset;
use toroidal_orbifold::report::literal::GroupLiteral;
use toroidal_orbifold::{fundamental_group, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    for gens in ["1,2,0;0,0,1 | 2,0,1;1,1,0", "1,2,0;0,0,0 | 2,0,1;0,0,0"] {
        let g = GroupLiteral::admissible_group(CurveOrder::Three, gens)?;
        let f = fixed_point_subset(&g)?;
        println!(
            "G = {} (order {}), {} elements with fixed points",
            g.literal(),
            g.order(),
            f.len()
        );
        println!("  pi1 = {}", fundamental_group(&g)?);
    }
    Ok(())
}
