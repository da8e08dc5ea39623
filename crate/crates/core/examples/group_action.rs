// Usage: cargo run --example group_action
//
// The additive group acting on three copies of V = k^2 by lower triangular
// matrices, seen through its derivation D and recovered by exponentiation.

use ga_quotients::lnd::Derivation;
use ga_quotients::poly::Polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = Derivation::lower_triangular(3, 0)?;
    let r = d.ring().clone();
    for name in r.names() {
        println!("D({name}) = {}", d.image(name)?);
    }
    println!("nilpotency index: {}", d.nilpotency_index(10)?);
    println!("fixed points: {}", d.fixed_point_ideal());

    for text in ["w2", "w2^2", "w1*w4 - w2*w3", "w1 - 1 - (w3*w6 - w4*w5)"] {
        let f = Polynomial::parse(text, &r)?;
        println!(
            "{text:<26} D = {:<8} exp(tD) = {:<30} invariant: {}",
            d.apply(&f)?.to_string(),
            d.exp_action(&f)?.to_string(),
            d.is_invariant(&f)?
        );
    }
    Ok(())
}
