//! Recomputes the stored tables and prints the failing checks and dispute verdicts.

use toroidal_orbifold::report::golden::GoldenData;
use toroidal_orbifold::report::verify::verify_paper;

fn main() -> toroidal_orbifold::Result<()> {
    let report = verify_paper(&GoldenData::embedded()?, None, false)?;
    println!(
        "{} checks, {} failing",
        report.checks.len(),
        report.failures().len()
    );
    for c in report.failures() {
        println!(
            "  {} {}: expected {}, computed {}",
            c.scope, c.what, c.expected, c.computed
        );
    }
    for d in &report.disputes {
        println!("{}: computed {:?}, {}", d.case_id, d.computed, d.verdict());
    }
    Ok(())
}
