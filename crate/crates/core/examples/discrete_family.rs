// Usage: cargo run --example discrete_family [-- <f in s> [trivial summands]]
//
// Runs the full battery on one member of the v3 family. Default f = s.

use ga_quotients::pipeline::{run_battery, Family, FamilySpec};
use ga_quotients::Caps;

fn main() {
    let mut args = std::env::args().skip(1);
    let f = args.next().unwrap_or_else(|| "s".to_string());
    let trivial = args.next().map_or(0, |t| t.parse().expect("trivial summands must be a number"));

    let spec = match FamilySpec::parse(Family::V3, &f, trivial) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("rejected: {e}");
            std::process::exit(3);
        }
    };
    match run_battery(&spec, &Caps::default()) {
        Ok(report) => println!("{report}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(4);
        }
    }
}
