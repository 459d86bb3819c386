//! Left-greedy Garside normal form for braid words.
//!
//! Every braid is written canonically as `Δ^p · A₁ ⋯ A_r` where `Δ` is the
//! half twist, each `Aᵢ` is a permutation braid (every pair of strands
//! crosses at most once, positively) other than `e` and `Δ`, and each
//! adjacent pair is left-weighted: `S(Aᵢ₊₁) ⊆ F(Aᵢ)`. Structural equality of
//! the normal form solves the word problem; the form is also the hash key
//! for term merging and memoization throughout the engine.

use crate::braid::BraidWord;
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GarsideNf {
    n: usize,
    inf: i32,
    /// Canonical factors as permutation image tables.
    factors: Vec<Vec<u8>>,
}

/// Starting set of a permutation braid: `{i : A = σᵢ·A'}`, the descents of
/// its permutation (0-based crossing positions).
fn starting_set(p: &Perm) -> Vec<usize> {
    p.descents()
}

/// Finishing set: `{i : A = A'·σᵢ}`, the descents of the inverse.
fn finishing_contains(p: &Perm, i: usize) -> bool {
    let inv = p.inverse();
    inv.apply(i) > inv.apply(i + 1)
}

/// A positive word realizing the permutation braid of `p`, of length equal
/// to the inversion count (letters are 1-based generator indices).
pub fn word_of_simple(p: &Perm) -> Vec<i16> {
    let mut letters = Vec::with_capacity(p.num_inversions());
    let mut cur = p.clone();
    while !cur.is_identity() {
        // Peel a letter from the bottom: any finishing-set position works;
        // take the smallest for determinism.
        let inv = cur.inverse();
        let i = inv
            .descents()
            .first()
            .copied()
            .expect("non-identity permutation has a descent");
        letters.push((i + 1) as i16);
        cur = cur.then(&Perm::adjacent(cur.len(), i));
    }
    letters.reverse();
    letters
}

impl GarsideNf {
    /// Computes the left-greedy normal form of a braid word.
    pub fn of_word(w: &BraidWord) -> GarsideNf {
        let n = w.strands();
        let w0 = Perm::reversal(n);
        let tau = |p: &Perm| w0.then(p).then(&w0);
        let mut inf: i32 = 0;
        let mut factors: Vec<Perm> = Vec::new();
        for &l in w.letters() {
            let i = (l.unsigned_abs() as usize) - 1;
            let s = Perm::adjacent(n, i);
            if l > 0 {
                factors.push(s);
            } else {
                // σᵢ⁻¹ = Δ⁻¹·(Δσᵢ⁻¹); moving Δ⁻¹ to the front conjugates the
                // accumulated factors by Δ (an involution on permutations).
                inf -= 1;
                for f in factors.iter_mut() {
                    *f = tau(f);
                }
                factors.push(w0.then(&s));
            }
        }
        // Left-weighting sweeps: slide head letters of each factor into its
        // left neighbor while the neighbor stays a permutation braid.
        loop {
            let mut changed = false;
            let mut j = 0;
            while j + 1 < factors.len() {
                loop {
                    let movable = starting_set(&factors[j + 1])
                        .into_iter()
                        .find(|&i| !finishing_contains(&factors[j], i));
                    match movable {
                        Some(i) => {
                            let s = Perm::adjacent(n, i);
                            factors[j] = factors[j].then(&s);
                            factors[j + 1] = s.then(&factors[j + 1]);
                            changed = true;
                        }
                        None => break,
                    }
                }
                j += 1;
            }
            if !changed {
                break;
            }
        }
        factors.retain(|f| !f.is_identity());
        while factors.first().map_or(false, |f| *f == w0) {
            factors.remove(0);
            inf += 1;
        }
        GarsideNf {
            n,
            inf,
            factors: factors
                .iter()
                .map(|f| f.images().iter().map(|&x| x as u8).collect())
                .collect(),
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i32 {
        self.inf
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity_braid(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Underlying permutation (top position ↦ bottom position).
    pub fn permutation(&self) -> Perm {
        let mut p = if self.inf.rem_euclid(2) == 0 {
            Perm::identity(self.n)
        } else {
            Perm::reversal(self.n)
        };
        for f in &self.factors {
            p = p.then(&Perm::from_images(f.iter().map(|&x| x as usize).collect()));
        }
        p
    }

    /// Reconstructs a representative word `Δ^inf · A₁ ⋯ A_r`.
    pub fn to_word(&self) -> BraidWord {
        let n = self.n;
        let delta = word_of_simple(&Perm::reversal(n));
        let mut letters: Vec<i16> = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend_from_slice(&delta);
            }
        } else {
            let delta_inv: Vec<i16> = delta.iter().rev().map(|&l| -l).collect();
            for _ in 0..(-self.inf) {
                letters.extend_from_slice(&delta_inv);
            }
        }
        for f in &self.factors {
            let p = Perm::from_images(f.iter().map(|&x| x as usize).collect());
            letters.extend_from_slice(&word_of_simple(&p));
        }
        BraidWord::new(n, letters).expect("normal-form letters are in range")
    }
}

impl std::fmt::Debug for GarsideNf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Δ^{}·{:?}", self.inf, self.factors)
    }
}

/// Braid-word equality via normal forms.
pub fn words_equal(a: &BraidWord, b: &BraidWord) -> bool {
    assert_eq!(a.strands(), b.strands());
    GarsideNf::of_word(a) == GarsideNf::of_word(b)
}
