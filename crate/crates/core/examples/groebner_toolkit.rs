// Usage: cargo run --example groebner_toolkit

use ga_quotients::groebner::{
    buchberger, eliminate, is_unit_ideal, krull_dimension, saturate, subalgebra_membership, Ideal, TermOrder,
};
use ga_quotients::poly::{Polynomial, VarSet};
use ga_quotients::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();

    let r = VarSet::new(["a", "b", "c"])?;
    let cyclic = Ideal::parse(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"])?;
    for order in [TermOrder::Grevlex, TermOrder::Lex] {
        let gb = buchberger(&cyclic, order, &caps)?;
        let shown: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        println!("cyclic-3 under {order}: [{}]", shown.join(", "));
    }

    // implicitize the parabola t -> (t, t^2)
    let r = VarSet::new(["t", "x", "y"])?;
    let param = Ideal::parse(&r, &["x - t", "y - t^2"])?;
    println!("eliminate t: {}", eliminate(&param, 1, &caps)?);

    let r = VarSet::new(["x", "y"])?;
    let i = Ideal::parse(&r, &["x*y", "y^2"])?;
    let y = Polynomial::var(&r, "y")?;
    println!("(xy, y^2) : y^inf = {}", saturate(&i, &y, &caps)?);
    println!("dim (xy, y^2) = {}", krull_dimension(&i, &caps)?);

    // X for f = s misses the non-stable locus
    let w = VarSet::new(["w1", "w2", "w3", "w4", "w5", "w6"])?;
    let stab = Ideal::parse(&w, &["w1 - 1 - (w3*w6 - w4*w5)", "w1", "w3", "w5"])?;
    println!("X meets {{w1 = w3 = w5 = 0}}: {}", !is_unit_ideal(&stab, &caps)?);

    let gens: Vec<Polynomial> = ["w1", "w3", "w1*w4 - w2*w3"]
        .iter()
        .map(|t| Polynomial::parse(t, &w))
        .collect::<Result<_, _>>()?;
    let f = Polynomial::parse("w1^2*w4 - w1*w2*w3 + w3^2", &w)?;
    let m = subalgebra_membership(&f, &gens, &caps)?;
    println!("{f} in k[w1, w3, w1*w4 - w2*w3]: {} via {}", m.member, m.witness.unwrap());
    Ok(())
}
