//! Homeomorphism classes for one n (default 3): `cargo run --example classify -- 4`.

use toroidal_orbifold::{classify, CurveOrder};

fn main() -> toroidal_orbifold::Result<()> {
    let n: u8 = std::env::args()
        .nth(1)
        .map_or(Ok(3), |s| s.parse())
        .expect("n must be 3, 4 or 6");
    let c = classify(CurveOrder::try_from(n)?)?;
    println!(
        "{} admissible groups, {} classes",
        c.enumerated,
        c.classes.len()
    );
    for r in &c.classes {
        let (h11, h12) = r.hodge();
        println!(
            "{:<7} order {:>3} rank {}  ({h11},{h12})  pi1 {}  members {:>4}  {}",
            r.class_id,
            r.order,
            r.rank,
            r.pi1,
            r.members,
            r.representative.literal()
        );
    }
    for m in &c.merges {
        println!(
            "merge {} {:?} into {} {:?}: {:?}",
            m.candidate_id, m.candidate_hodge, m.target_id, m.target_hodge, m.outcome
        );
    }
    Ok(())
}
