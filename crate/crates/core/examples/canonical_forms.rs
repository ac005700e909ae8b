//! Moves, strip reduction and canonical forms on a concrete group.

use toroidal_orbifold::moves::{move_group_order, strip_reduce, Move};
use toroidal_orbifold::report::literal::GroupLiteral;
use toroidal_orbifold::{canonical_form, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    let n = CurveOrder::Three;
    let g = GroupLiteral::admissible_group(n, "1,2,0;0,0,1 | 2,0,1;1,1,0 | 0,0,0;1,0,0")?;
    println!("G          = {}  (order {})", g.literal(), g.order());
    for mv in Move::generators(n) {
        println!("{mv:?}: {}", mv.apply(&g)?.literal());
    }
    println!("stripped   = {}", strip_reduce(&g)?.literal());
    println!("canonical  = {}", canonical_form(&g)?.literal());
    println!("move group order for n = 3: {}", move_group_order(n));
    Ok(())
}
