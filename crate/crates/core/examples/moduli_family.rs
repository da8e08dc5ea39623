// Usage: cargo run --example moduli_family [-- <f in a, b, c>]
//
// The v4 family on V^4, where f takes the three minors q1, q2, q3. Prints the
// JSON report; the component count is not computed for this family.

use ga_quotients::pipeline::{run_battery, Family, FamilySpec, ReportDocument};
use ga_quotients::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = std::env::args().nth(1).unwrap_or_else(|| "a".to_string());
    let spec = FamilySpec::parse(Family::V4, &f, 0)?;
    let report = run_battery(&spec, &Caps::default())?;
    print!("{}", ReportDocument::new(&report).to_json());
    Ok(())
}
