//! Converts ∇ values into the Alexander polynomials they determine.
//!
//! For a knot, ∇ has a single denominator factor `t − t⁻¹`; multiplying it
//! away and halving the exponents gives Δ(t) up to the usual unit. For a
//! link of several components ∇ is already polynomial and only the halving
//! step remains (which may leave genuine half-integer exponents).
//!
//! Run with: cargo run --example alexander_polynomials

use cpf::{conway_potential, to_alexander, ColoredBraid};

fn show(name: &str, strands: usize, word: &str, colors: &[&str]) {
    let cb = ColoredBraid::parse(strands, word, colors).expect("valid presentation");
    let v = conway_potential(&cb).expect("closable by construction");
    let alex = to_alexander(&v);
    println!("{name}:");
    println!("  ∇ = {}", v.render());
    println!("  Δ = {}", alex.render());
}

fn main() {
    show("trefoil", 2, "1 1 1", &["a"; 2]);
    show("figure-eight knot", 3, "1 -2 1 -2", &["a"; 3]);
    show("(2,5) torus knot", 2, "1 1 1 1 1", &["a"; 2]);
    show("a four-strand knot closure", 4, "1 1 2 -1 -3 2 -3", &["a"; 4]);
    show("positive Hopf link, two colors", 2, "1 1", &["a", "b"]);
    show("(2,4) torus link, two colors", 2, "1 1 1 1", &["a", "b"]);
}
