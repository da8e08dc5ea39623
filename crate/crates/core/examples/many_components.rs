// Usage: cargo run --example many_components
//
// The boundary has one component per root of f + 1, and K0 of the
// quotient's closure grows with it.

use ga_quotients::pipeline::{run_battery, Family, FamilySpec};
use ga_quotients::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    let cases = [
        ("s", 0),
        ("(1+s)*(1+2*s) - 1", 0),
        ("(1+s)*(1+2*s)*(1+3*s) - 1", 0),
        ("s^4 + s", 0),
        ("s", 2),
    ];
    println!("{:<28} {:>3} {:>14} {:>3} {:>12}", "f", "r", "dims", "m", "K0 ranks");
    for (f, trivial) in cases {
        let report = run_battery(&FamilySpec::parse(Family::V3, f, trivial)?, &caps)?;
        let d = report.dims;
        let k = report.k0_ranks.expect("v3 reports ranks");
        println!(
            "{:<28} {:>3} {:>14} {:>3} {:>12} {}",
            f,
            trivial,
            format!("({}, {}, {}, {})", d.x, d.quotient, d.ybar, d.b),
            report.m.unwrap_or(0),
            format!("({}, {}, {})", k.rank_z, k.rank_closure, k.rank_quotient),
            if report.pass { "pass" } else { "FAIL" }
        );
    }

    match FamilySpec::parse(Family::V3, "(1+s)^2 - 1", 0) {
        Err(e) => println!("(1+s)^2 - 1: {e}"),
        Ok(_) => println!("(1+s)^2 - 1 unexpectedly accepted"),
    }
    Ok(())
}
