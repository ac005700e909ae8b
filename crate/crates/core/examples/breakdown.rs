//! Per-sector contributions, with orbit types, for the group of order 27 with pi1 = Z/3.

use toroidal_orbifold::cohomology::twisted_sectors;
use toroidal_orbifold::report::literal::GroupLiteral;
use toroidal_orbifold::{contribution_breakdown, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    let g = GroupLiteral::admissible_group(CurveOrder::Three, "1,2,0;0,0,1 | 2,0,1;1,1,0")?;
    for s in twisted_sectors(&g)? {
        println!(
            "{:<16} age {} {:?}: {} orbits ({} elliptic)",
            s.element.literal(),
            s.kappa,
            s.kind,
            s.orbit_count(),
            s.elliptic_count()
        );
    }
    println!();
    let mut total = (0, 0);
    for e in contribution_breakdown(&g)? {
        println!("({}) -> ({},{})", e.element.literal(), e.h11, e.h12);
        total = (total.0 + e.h11, total.1 + e.h12);
    }
    println!("total {total:?}");
    Ok(())
}
