//! Exact computation of the Conway potential function of colored links.
//!
//! A colored link is presented as a closed colored braid: a braid word in
//! `B_n` together with one color label per strand, such that each component
//! of the closure carries a single color. The potential function `∇` is a
//! rational fraction in one variable `t_c` per color; for one color it equals
//! `Δ(t²)/(t − t⁻¹)` and for several colors it equals `Δ(t₁², …)`, where `Δ`
//! is the (suitably normalized) Alexander polynomial.
//!
//! The crate computes `∇` two independent ways:
//!
//! * **Skein engine** ([`conway_potential`]): rewrites the braid inside a
//!   twisted group algebra of `B_n` using two-bridge and three-bridge skein
//!   relators until only braids of the form `α·σ_{n−1}^k·γ` with
//!   `k ∈ {0, ±1, 2}` and `α, γ ∈ B_{n−1}` remain, then eliminates the last
//!   strand (split term, ring term, or Markov destabilization) and recurses.
//!   All arithmetic is exact: arbitrary-precision integers, sparse Laurent
//!   polynomials, and fractions with factored denominators.
//! * **Determinant oracle** ([`hartley::oracle_invariant`]): builds a
//!   Wirtinger presentation of the closure, takes the colored Fox-calculus
//!   Jacobian, and evaluates a reduced determinant. This pins the value up to
//!   a sign and a monomial and is used to cross-validate the engine.
//!
//! Module map:
//!
//! * [`laurent`] — sparse multivariate Laurent polynomials over `BigInt`.
//! * [`fraction`] — fractions with factored denominators `t_a − t_a⁻¹`,
//!   `t_a + t_a⁻¹`, `t_a t_b − t_a⁻¹ t_b⁻¹`.
//! * [`perm`], [`braid`], [`garside`] — braid words, colored braids, Markov
//!   moves, and left-greedy Garside normal form (exact word problem).
//! * [`twisted`] — the twisted group algebra `P_n B_n` and the skein
//!   relators, with machine checks of the identities relating them.
//! * [`skein`] — the reduction engine (power normalization, the nine
//!   bridge-triple rewrite cases, and the top-strand reduction).
//! * [`cpf`] — the recursive `∇` computation, color merging, and the
//!   Alexander polynomial view.
//! * [`hartley`] — the Fox-calculus determinant oracle.
//! * [`suites`] — seeded verification suites (axioms, invariance, oracle
//!   agreement, …) shared by the CLI and the acceptance tests.
//!
//! ```
//! use cpf::{ColoredBraid, conway_potential};
//!
//! // Positive Hopf link: closure of σ₁² with colors a, b.
//! let hopf = ColoredBraid::parse(2, "1 1", &["a", "b"]).unwrap();
//! let nabla = conway_potential(&hopf).unwrap();
//! assert_eq!(nabla.render(), "1");
//! ```

pub mod braid;
pub mod cli;
pub mod cpf;
pub mod fraction;
pub mod garside;
pub mod hartley;
pub mod jsonio;
pub mod laurent;
pub mod perm;
pub mod skein;
pub mod suites;
pub mod twisted;

pub use braid::{BraidWord, ColoredBraid};
pub use cpf::{conway_potential, merge_colors, to_alexander, AlexanderView, CpfValue, Engine};
pub use fraction::{DenomFactor, Fraction};
pub use garside::GarsideNf;
pub use hartley::{oracle_invariant, verify_table1, OracleValue};
pub use laurent::LaurentPoly;
pub use perm::Perm;

/// Errors surfaced to callers of the public API.
///
/// Logic errors inside the engine (a division that the theory guarantees to
/// be exact failing, a rewrite leaving the permutation class, …) are bugs and
/// panic instead of returning a variant.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("braid is not closable with the given coloring: {0}")]
    NotClosable(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
