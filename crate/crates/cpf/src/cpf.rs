//! The potential function `∇` of a closed colored braid.
//!
//! Strand-count induction: the reducer brings the word to a combination of
//! `α·σ_{n−1}^k·γ` with `k ∈ {0, ±1, 2}`; a `k = 0` term closes to a split
//! link (value 0), a `k = ±1` term destabilizes to `γα` on one fewer strand,
//! and a `k = 2` term closes to the closure of `αγ` with an unknotted ring
//! attached to the strand passing through it, contributing the factor
//! `t_c − t_c⁻¹` in the color `c` of that strand (the ring's own color
//! disappears — its only trace is in the coefficients the reducer emitted).
//! The base case is the one-strand braid: an unknot of color `c`, with value
//! `1/(t_c − t_c⁻¹)`.

use std::collections::HashMap;
use std::sync::{Mutex, RwLock};

use crate::braid::{BraidWord, ColoredBraid};
use crate::fraction::{DenomFactor, Fraction};
use crate::garside::GarsideNf;
use crate::laurent::LaurentPoly;
use crate::skein::{ctx_after, Reducer};

/// The invariant of one colored link: an exact fraction in the color
/// variables, plus the bookkeeping needed to interpret it.
#[derive(Clone, Debug, PartialEq)]
pub struct CpfValue {
    /// `∇` as a fraction in `names.len()` variables.
    pub value: Fraction,
    /// Display name per color index.
    pub names: Vec<String>,
    /// Sorted distinct color indices actually carried by some component.
    pub used_colors: Vec<usize>,
    /// Number of link components `μ`.
    pub components: usize,
}

impl CpfValue {
    pub fn render(&self) -> String {
        self.value.render(&self.names)
    }

    /// All colors identified: the one-variable (uncolored) specialization.
    pub fn rho(&self) -> CpfValue {
        CpfValue {
            value: self.value.rho(),
            names: vec!["t".to_string()],
            used_colors: vec![0],
            components: self.components,
        }
    }
}

/// `t_c − t_c⁻¹`.
fn minus_poly(nvars: usize, c: usize) -> LaurentPoly {
    LaurentPoly::var_pow(nvars, c, 1).sub(&LaurentPoly::var_pow(nvars, c, -1))
}

/// The evaluator. Holds the reduction engine and a memo table keyed by
/// `(strand count, braid class, color context)`; the table may be shared by
/// many closure evaluations (batches, verification suites) and supports
/// concurrent readers.
pub struct Engine {
    ncolors: usize,
    reducer: Mutex<Reducer>,
    memo: RwLock<HashMap<(usize, GarsideNf, Vec<usize>), Fraction>>,
    trace: Option<Mutex<Vec<usize>>>,
}

impl Engine {
    pub fn new(ncolors: usize) -> Self {
        Engine {
            ncolors,
            reducer: Mutex::new(Reducer::new(ncolors)),
            memo: RwLock::new(HashMap::new()),
            trace: None,
        }
    }

    /// Like [`Engine::new`], but records the component count of every
    /// closure evaluated along the recursion (the top call included).
    pub fn new_traced(ncolors: usize) -> Self {
        Engine { trace: Some(Mutex::new(Vec::new())), ..Engine::new(ncolors) }
    }

    pub fn ncolors(&self) -> usize {
        self.ncolors
    }

    /// Component counts recorded so far by a traced engine.
    pub fn trace(&self) -> Vec<usize> {
        match &self.trace {
            Some(t) => t.lock().unwrap().clone(),
            None => Vec::new(),
        }
    }

    /// Checks the coloring and evaluates the closure.
    pub fn evaluate(&self, cb: &ColoredBraid) -> crate::Result<CpfValue> {
        assert_eq!(cb.num_colors(), self.ncolors, "engine built for another color set");
        cb.ensure_closable()?;
        let value = self.eval(cb.strands(), cb.word.letters(), &cb.colors);
        assert!(value.is_persistent(), "potential function lost persistence");
        let components = cb.num_components();
        if components >= 2 {
            assert!(
                value.is_polynomial(),
                "multi-component value failed to clear its denominator: {}",
                value.render(&cb.names)
            );
        }
        let mut used: Vec<usize> = cb.colors.clone();
        used.sort_unstable();
        used.dedup();
        Ok(CpfValue { value, names: cb.names.clone(), used_colors: used, components })
    }

    /// The raw recursion: `∇` of the closure of `letters ∈ B_n` with top
    /// colors `ctx`. The coloring is assumed closable.
    pub fn eval(&self, n: usize, letters: &[i16], ctx: &[usize]) -> Fraction {
        assert_eq!(ctx.len(), n);
        let word = BraidWord::new(n, letters.to_vec())
            .expect("letters within strand range")
            .free_reduce();
        if let Some(t) = &self.trace {
            t.lock().unwrap().push(word.permutation().cycles().len());
        }
        if n == 1 {
            return Fraction::one(self.ncolors).div_by_factor(DenomFactor::Minus(ctx[0]));
        }
        let key = (n, GarsideNf::of_word(&word), ctx.to_vec());
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let terms = { self.reducer.lock().unwrap().reduce_top(n, word.letters(), ctx) };
        let mut parts = Vec::with_capacity(terms.len());
        let top = (n - 1) as i16;
        for t in terms {
            let contribution = match t.power {
                // A strand that crosses nothing closes to a free circle.
                0 => continue,
                s @ (1 | -1) => {
                    // closure(α σ^s γ) = closure(γα σ^s): destabilize, colors
                    // following the strands through α σ^s.
                    let mut sub = t.gamma.clone();
                    sub.extend_from_slice(&t.alpha);
                    let mut through = t.alpha.clone();
                    through.push(if s > 0 { top } else { -top });
                    let cc = ctx_after(ctx, &through);
                    self.eval(n - 1, &sub, &cc[..n - 1])
                }
                2 => {
                    // Ring attached to the strand at the α/γ interface.
                    let c = ctx_after(ctx, &t.alpha)[n - 2];
                    let mut sub = t.alpha.clone();
                    sub.extend_from_slice(&t.gamma);
                    self.eval(n - 1, &sub, &ctx[..n - 1]).mul_poly(&minus_poly(self.ncolors, c))
                }
                other => unreachable!("reduced power {other} outside {{0, ±1, 2}}"),
            };
            parts.push(t.coef.mul(&contribution));
        }
        let acc = Fraction::sum(self.ncolors, parts);
        self.memo.write().unwrap().insert(key, acc.clone());
        acc
    }
}

/// `∇` of the closure of a colored braid. One-shot entry point; batch
/// callers should share an [`Engine`] to reuse its memo table.
pub fn conway_potential(cb: &ColoredBraid) -> crate::Result<CpfValue> {
    Engine::new(cb.num_colors()).evaluate(cb)
}

/// Identifies color variables: color `i` becomes `map[i]` (an index into the
/// same color list). Unused colors are dropped and the remaining ones are
/// re-indexed densely, preserving their original order.
pub fn merge_colors(v: &CpfValue, map: &[usize]) -> CpfValue {
    let m = v.names.len();
    assert_eq!(map.len(), m, "identification must cover every color");
    assert!(map.iter().all(|&c| c < m), "identification target out of range");
    let mut targets: Vec<usize> = v.used_colors.iter().map(|&c| map[c]).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut dense = vec![usize::MAX; m];
    for (k, &c) in targets.iter().enumerate() {
        dense[c] = k;
    }
    // Colors absent from every component may map anywhere; send them to 0 so
    // the substitution stays total.
    let full: Vec<usize> =
        (0..m).map(|c| if dense[map[c]] == usize::MAX { 0 } else { dense[map[c]] }).collect();
    CpfValue {
        value: v.value.subst_vars(&full, targets.len()),
        names: targets.iter().map(|&c| v.names[c].clone()).collect(),
        used_colors: (0..targets.len()).collect(),
        components: v.components,
    }
}

/// The Alexander-polynomial view of a value: `poly` holds exponents in the
/// color variables, to be read as halves (`exp_den = 2`), so that the
/// substitution `t_c² ↦ t_c` has somewhere to live when `∇` carries
/// odd exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct AlexanderView {
    pub poly: LaurentPoly,
    pub exp_den: i32,
    pub names: Vec<String>,
}

impl AlexanderView {
    pub fn render(&self) -> String {
        self.poly.render(&self.names, self.exp_den)
    }
}

/// Converts `∇` to the Alexander polynomial it determines: for one color
/// multiply by `t_c − t_c⁻¹` first, then halve all exponents; for several
/// colors halve directly. Halving can produce half-integer exponents, which
/// the view keeps explicit.
pub fn to_alexander(v: &CpfValue) -> AlexanderView {
    let value = if v.used_colors.len() == 1 {
        v.value.mul_poly(&minus_poly(v.value.nvars(), v.used_colors[0]))
    } else {
        v.value.clone()
    };
    assert!(
        value.is_polynomial(),
        "Alexander view of a non-polynomial value: {}",
        value.render(&v.names)
    );
    AlexanderView { poly: value.numerator().clone(), exp_den: 2, names: v.names.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nabla(n: usize, word: &str, colors: &[&str]) -> CpfValue {
        let cb = ColoredBraid::parse(n, word, colors).unwrap();
        conway_potential(&cb).unwrap()
    }

    fn names(v: &CpfValue) -> Vec<String> {
        v.names.clone()
    }

    #[test]
    fn unknot_is_inverse_minus() {
        let v = nabla(1, "", &["a"]);
        assert_eq!(v.render(), "(1)/(a - a^-1)");
        assert_eq!(v.components, 1);
        // Also reachable by destabilization from two strands.
        let w = nabla(2, "1", &["a", "a"]);
        assert_eq!(w.value.rho(), v.value.rho());
    }

    #[test]
    fn hopf_links_normalize() {
        let v = nabla(2, "1 1", &["a", "b"]);
        assert_eq!(v.render(), "1");
        assert_eq!(v.components, 2);
        let m = nabla(2, "-1 -1", &["a", "b"]);
        assert_eq!(m.render(), "-1");
        // Same-color Hopf links behave identically.
        assert_eq!(nabla(2, "1 1", &["a", "a"]).render(), "1");
    }

    #[test]
    fn split_links_vanish() {
        assert_eq!(nabla(2, "", &["a", "b"]).render(), "0");
        assert_eq!(nabla(3, "1 1", &["a", "a", "b"]).render(), "0");
        assert_eq!(nabla(2, "1 -1", &["a", "b"]).render(), "0");
    }

    #[test]
    fn torus_link_and_trefoil() {
        let v = nabla(2, "1 1 1 1", &["a", "b"]);
        assert_eq!(v.render(), "a*b + a^-1*b^-1");
        let t = nabla(2, "1 1 1", &["a", "a"]);
        assert_eq!(t.render(), "(a^2 - 1 + a^-2)/(a - a^-1)");
        assert_eq!(t.components, 1);
    }

    #[test]
    fn figure_eight_knot() {
        let v = nabla(3, "1 -2 1 -2", &["a", "a", "a"]);
        assert_eq!(v.render(), "(-a^2 + 3 - a^-2)/(a - a^-1)");
    }

    #[test]
    fn chain_of_three_rings_sees_middle_color() {
        let v = nabla(3, "1 1 2 2", &["a", "b", "c"]);
        assert_eq!(v.render(), "b - b^-1");
        // The same link conjugated by σ₂, which also permutes the colors
        // (and the name-interning order, so compare the rendered form).
        let w = nabla(3, "2 1 1 2", &["a", "c", "b"]);
        assert_eq!(w.render(), "b - b^-1");
    }

    #[test]
    fn merging_colors_matches_direct_computation() {
        let two = nabla(2, "1 1 1 1", &["a", "b"]);
        let merged = merge_colors(&two, &[0, 0]);
        assert_eq!(names(&merged), vec!["a".to_string()]);
        let direct = nabla(2, "1 1 1 1", &["a", "a"]);
        assert_eq!(merged.value, direct.value);
        // Identity map is a no-op.
        let same = merge_colors(&two, &[0, 1]);
        assert_eq!(same.value, two.value);
        // Full merge equals the one-variable specialization.
        assert_eq!(merged.value, two.rho().value);
    }

    #[test]
    fn alexander_views() {
        let t = nabla(2, "1 1 1", &["a", "a"]);
        assert_eq!(to_alexander(&t).render(), "a - 1 + a^-1");
        let hopf = nabla(2, "1 1", &["a", "b"]);
        assert_eq!(to_alexander(&hopf).render(), "1");
        let torus = nabla(2, "1 1 1 1", &["a", "b"]);
        assert_eq!(to_alexander(&torus).render(), "a^(1/2)*b^(1/2) + a^(-1/2)*b^(-1/2)");
    }

    #[test]
    fn non_closable_coloring_is_rejected() {
        let cb = ColoredBraid::parse(2, "1", &["a", "b"]).unwrap();
        assert!(conway_potential(&cb).is_err());
    }

    #[test]
    fn traced_engine_sees_single_components_for_knots() {
        let cb = ColoredBraid::parse(3, "1 -2 1 -2", &["a", "a", "a"]).unwrap();
        let engine = Engine::new_traced(1);
        engine.evaluate(&cb).unwrap();
        let trace = engine.trace();
        assert!(!trace.is_empty());
        assert!(trace.iter().all(|&c| c == 1));
    }

    #[test]
    fn engine_memo_is_shared_across_evaluations() {
        let engine = Engine::new(1);
        let cb = ColoredBraid::parse(2, "1 1 1", &["a", "a"]).unwrap();
        let first = engine.evaluate(&cb).unwrap();
        let second = engine.evaluate(&cb).unwrap();
        assert_eq!(first, second);
    }
}
