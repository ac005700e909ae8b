//! Counts admissible subgroups of V_n by order and rank.

use std::collections::BTreeMap;

use toroidal_orbifold::{enumerate_admissible, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    for n in CurveOrder::ALL {
        let groups = enumerate_admissible(n);
        let mut by_shape: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for g in &groups {
            *by_shape.entry((g.order(), g.group_rank()?)).or_default() += 1;
        }
        println!(
            "n = {n}: |V_n| = {}, {} admissible subgroups",
            n.vafa_witten_order(),
            groups.len()
        );
        for ((order, rank), count) in by_shape {
            println!("  order {order:>3}, rank {rank}: {count}");
        }
    }
    Ok(())
}
