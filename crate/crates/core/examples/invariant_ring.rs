// Usage: cargo run --example invariant_ring
//
// Invariants of the lower triangular action on V^3 by two methods, then the
// invariant ring of X = {w1 = 1 + q1} as a quadric hypersurface in A^5.

use ga_quotients::groebner::SubalgebraOracle;
use ga_quotients::lnd::{kernel_linear, kernel_saturation, Derivation, SliceData};
use ga_quotients::pipeline::{build_family, invariant_presentation, verify_presentation, Family, FamilySpec};
use ga_quotients::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    let d = Derivation::lower_triangular(3, 0)?;

    let linear = kernel_linear(&d, 2, &caps)?;
    println!("degree <= 2 solve:");
    for g in &linear {
        println!("  {g}");
    }

    let slice = SliceData::find(&d)?;
    let sat = kernel_saturation(&d, &slice, caps.max_rounds, &caps)?;
    println!("slice {} (a = {}), {} rounds:", slice.variable, slice.a, sat.rounds);
    for g in &sat.generators {
        println!("  {g}");
    }
    let oracle = SubalgebraOracle::new(d.ring(), &sat.generators, &caps)?;
    let covered = linear.iter().try_fold(true, |acc, g| oracle.contains(g).map(|c| acc && c))?;
    println!("slice generators cover the linear ones: {covered}");

    let art = build_family(&FamilySpec::parse(Family::V3, "s", 0)?)?;
    let pres = invariant_presentation(&art, &linear, &caps)?;
    println!("invariants of X:");
    for (k, g) in pres.generators.iter().enumerate() {
        println!("  {} = {g}", pres.tags.name(k));
    }
    for r in &pres.relations {
        println!("relation: {r} = 0");
    }
    println!("relations vanish on X: {}", verify_presentation(&art, &pres, &caps)?);
    Ok(())
}
