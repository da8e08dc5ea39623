// Usage: cargo run --example polynomial_basics

use std::collections::HashMap;

use ga_quotients::poly::{is_squarefree, jacobian, Polynomial, VarSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = VarSet::new(["w1", "w2", "w3", "w4", "w5", "w6"])?;
    let q = Polynomial::parse("w3*w6 - w4*w5", &ring)?;
    let x = Polynomial::parse("w1 - 1 - (w3*w6 - w4*w5)", &ring)?;
    println!("q        = {q}");
    println!("X        = {x}");
    println!("q^2      = {}", q.pow(2));
    println!("dX/dw6   = {}", x.partial("w6")?);

    let jac = jacobian(std::slice::from_ref(&x), &["w1", "w3", "w4"])?;
    let row: Vec<String> = jac[0].iter().map(|p| p.to_string()).collect();
    println!("jacobian = [{}]", row.join(", "));

    // compose f(s) = s^2 + s with q
    let s_ring = VarSet::new(["s"])?;
    let f = Polynomial::parse("s^2 + s", &s_ring)?;
    let f_of_q = f.substitute(&ring, &HashMap::from([("s".to_string(), q.clone())]))?;
    println!("f(q)     = {f_of_q}");

    for text in ["s^2 + s + 1", "(1+s)^2", "(1+s)*(1+2*s)*(1+3*s)"] {
        let g = Polynomial::parse(text, &s_ring)?;
        println!("{text:<24} squarefree: {}", is_squarefree(&g)?);
    }

    match Polynomial::parse("2s", &s_ring) {
        Err(e) => println!("\"2s\" rejected: {e}"),
        Ok(p) => println!("unexpected: {p}"),
    }
    Ok(())
}
