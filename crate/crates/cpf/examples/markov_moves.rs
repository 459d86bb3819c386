//! ∇ is an invariant of the closure, not of the braid word.
//!
//! Two braid words with isotopic closures are related by Markov moves:
//! conjugation, stabilization (add a strand and a crossing around it), and
//! the braid relations themselves. This example perturbs a presentation of
//! the figure-eight knot through a chain of such moves and shows that the
//! computed ∇ never changes.
//!
//! Run with: cargo run --example markov_moves

use cpf::{conway_potential, BraidWord, ColoredBraid};

fn show(stage: &str, cb: &ColoredBraid) -> cpf::Fraction {
    let v = conway_potential(cb).expect("Markov moves preserve closability");
    println!(
        "{stage:32} {} strand(s), word {:16} ∇ = {}",
        cb.word.strands(),
        cb.word.to_text(),
        v.rho().render()
    );
    v.rho().value
}

fn main() {
    let base = ColoredBraid::parse(3, "1 -2 1 -2", &["a", "a", "a"]).unwrap();
    let reference = show("figure-eight, base word", &base);

    let conj = base.conjugate(&BraidWord::parse(3, "2 -1").unwrap());
    assert_eq!(show("conjugated by s2·s1^-1", &conj), reference);

    let stab = conj.stabilize(true);
    assert_eq!(show("stabilized (new strand, +s3)", &stab), reference);

    let stab2 = stab.stabilize(false);
    assert_eq!(show("stabilized again (-s4)", &stab2), reference);

    let destab = stab2.destabilize().expect("last letter is the top generator");
    assert_eq!(show("destabilized back", &destab), reference);

    // A free insertion g·g⁻¹ in the middle of the word.
    let mut letters = destab.word.letters().to_vec();
    letters.splice(2..2, [3, -3]);
    let inserted = ColoredBraid::new(
        BraidWord::new(destab.word.strands(), letters).unwrap(),
        destab.colors.clone(),
        destab.names.clone(),
    )
    .unwrap();
    assert_eq!(show("free insertion s3·s3^-1", &inserted), reference);

    println!("∇ unchanged across all moves");
}
