//! The order-n automorphism of E_n as an integer matrix, and its fixed points.

use toroidal_orbifold::exact_torus::{
    solve_twisted_fixed_points, torsion_translation, zeta_matrix,
};
use toroidal_orbifold::CurveOrder;

fn main() -> toroidal_orbifold::Result<()> {
    for n in CurveOrder::ALL {
        let z = zeta_matrix(n, 1)?;
        println!(
            "n = {n}: zeta = {:?}, det(zeta - 1) = {}",
            z.rows,
            z.minus_identity().det()
        );
        if n != CurveOrder::Six {
            println!("  torsion translation t = {}", torsion_translation(n)?);
        }
        for m in 1..n.n() {
            let fixed = solve_twisted_fixed_points(n, m, 0)?;
            let shown: Vec<String> = fixed.iter().map(|p| p.to_string()).collect();
            println!(
                "  zeta^{m}: {} fixed points {}",
                fixed.len(),
                shown.join(" ")
            );
        }
    }
    Ok(())
}
