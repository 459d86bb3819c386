//! Identifying colors after the fact.
//!
//! ∇ behaves functorially under color identification: merging two color
//! variables in a computed value gives the same answer as recoloring the
//! braid and recomputing, and merging everything reproduces the
//! one-variable specialization `rho`.
//!
//! Run with: cargo run --example color_merging

use cpf::{conway_potential, merge_colors, ColoredBraid};

fn main() {
    // A three-component link whose components can carry three distinct
    // colors: the closure of σ₁²σ₂² (a chain of three rings).
    let chain3 = ColoredBraid::parse(3, "1 1 2 2", &["a", "b", "c"]).unwrap();
    let v3 = conway_potential(&chain3).unwrap();
    println!("three colors:   ∇ = {}", v3.render());

    // Identify color c with a (map sends indices 0,1,2 -> 0,1,0).
    let merged = merge_colors(&v3, &[0, 1, 0]);
    println!("merge c into a: ∇ = {}", merged.render());

    // Recompute with the identified coloring and compare.
    let recolored = ColoredBraid::parse(3, "1 1 2 2", &["a", "b", "a"]).unwrap();
    let v2 = conway_potential(&recolored).unwrap();
    println!("recolored run:  ∇ = {}", v2.render());
    assert_eq!(merged.value, v2.value, "merging commutes with evaluation");

    // Merging everything equals the one-variable specialization.
    let all = merge_colors(&v3, &[0, 0, 0]);
    let rho = v3.rho();
    println!("single color:   ∇ = {}", all.render());
    println!("rho:            ∇ = {}", rho.render());
    assert_eq!(all.value, rho.value, "total merge equals rho");

    println!("all equalities hold exactly");
}
