//! Computes the Conway potential function of the classic small links and
//! prints each value next to the braid it came from.
//!
//! Run with: cargo run --example anchor_links

use cpf::{conway_potential, ColoredBraid};

fn main() {
    let table: &[(&str, usize, &str, &[&str])] = &[
        ("unknot", 1, "", &["a"]),
        ("two-component unlink", 2, "", &["a", "b"]),
        ("positive Hopf link", 2, "1 1", &["a", "b"]),
        ("negative Hopf link", 2, "-1 -1", &["a", "b"]),
        ("(2,4) torus link", 2, "1 1 1 1", &["a", "b"]),
        ("trefoil", 2, "1 1 1", &["a", "a"]),
        ("figure-eight knot", 3, "1 -2 1 -2", &["a", "a", "a"]),
        ("three-component chain", 3, "1 1 2 2", &["a", "b", "c"]),
    ];

    for (name, strands, word, colors) in table {
        let cb = ColoredBraid::parse(*strands, word, colors).expect("valid presentation");
        let v = conway_potential(&cb).expect("closable by construction");
        println!(
            "{name:24} closure of {word:12} on {strands} strand(s), colors {colors:?}",
            word = if word.is_empty() { "(empty)" } else { word }
        );
        println!("{:24} ∇ = {}", "", v.render());
    }
}
