//! Sparse multivariate Laurent polynomials with `BigInt` coefficients.
//!
//! A polynomial is a map from exponent vectors (one signed entry per
//! variable) to nonzero coefficients. The variable set is fixed per value
//! (`nvars`); mixing arities is a logic error. `BTreeMap` keeps iteration
//! deterministic, which makes printing and hashing reproducible.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, one entry per variable.
pub type Exps = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exps, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, &vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// `c · t₀^{e₀} ⋯`; drops the term when `c == 0`.
    pub fn monomial(nvars: usize, exps: &[i32], c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector arity mismatch");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.to_vec(), c);
        }
        LaurentPoly { nvars, terms }
    }

    /// `t_v^{e}` as a polynomial.
    pub fn var_pow(nvars: usize, v: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = e;
        Self::monomial(nvars, &exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.nvars])
                .map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    /// The single `(exps, coef)` pair if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Exps, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_term(terms: &mut BTreeMap<Exps, BigInt>, exps: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, e, ca * cb);
            }
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c·t^shift`.
    pub fn mul_monomial(&self, shift: &[i32], c: &BigInt) -> Self {
        assert_eq!(shift.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(shift).map(|(x, s)| x + s).collect(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Remaps each exponent vector through `f`; merges collisions.
    fn map_exps(&self, nvars: usize, f: impl Fn(&Exps) -> Exps) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let ne = f(e);
            assert_eq!(ne.len(), nvars);
            Self::insert_term(&mut terms, ne, c.clone());
        }
        LaurentPoly { nvars, terms }
    }

    /// Left braid action on coefficients: under a braid with underlying
    /// permutation `π` (0-based images), each variable `t_i` becomes `t_j`
    /// where `π(j) = i`; on exponent vectors, `new[j] = old[π(j)]`.
    pub fn braid_twist(&self, images: &[usize]) -> Self {
        assert_eq!(images.len(), self.nvars);
        self.map_exps(self.nvars, |e| images.iter().map(|&i| e[i]).collect())
    }

    /// Substitutes variable `i` by variable `map[i]` in a `new_nvars`-variable
    /// ring. Distinct variables may merge (exponents add).
    pub fn subst_vars(&self, map: &[usize], new_nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        self.map_exps(new_nvars, |e| {
            let mut ne = vec![0; new_nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            ne
        })
    }

    /// Identifies all variables with the single variable `t` (the uncolored
    /// reduction); exponents add up.
    pub fn rho(&self) -> Self {
        self.map_exps(1, |e| vec![e.iter().sum()])
    }

    /// `t_i ↦ t_i²` for every variable (doubles every exponent).
    pub fn square_vars(&self) -> Self {
        self.map_exps(self.nvars, |e| e.iter().map(|x| 2 * x).collect())
    }

    /// Minimum exponent per variable over the support (zero vector if empty).
    pub fn min_exps(&self) -> Exps {
        let mut m = vec![0i32; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                m.copy_from_slice(e);
                first = false;
            } else {
                for (mi, &ei) in m.iter_mut().zip(e) {
                    *mi = (*mi).min(ei);
                }
            }
        }
        m
    }

    /// Lexicographically largest exponent vector and its coefficient.
    fn leading(&self) -> (&Exps, &BigInt) {
        self.terms.iter().next_back().expect("leading term of zero")
    }

    /// Exact division: `Some(q)` with `self == q·d`, or `None` when `d` does
    /// not divide `self`. Works in the Laurent ring: both operands are first
    /// shifted to ordinary polynomials with zero minimum exponents, where
    /// lexicographic division terminates.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let sa = self.min_exps();
        let sd = d.min_exps();
        let neg = |v: &Exps| v.iter().map(|x| -x).collect::<Exps>();
        let p = self.mul_monomial(&neg(&sa), &BigInt::one());
        let q = d.mul_monomial(&neg(&sd), &BigInt::one());
        let (qlm, qlc) = {
            let (e, c) = q.leading();
            (e.clone(), c.clone())
        };
        let mut rem = p;
        let mut quo = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (rlm, rlc) = {
                let (e, c) = rem.leading();
                (e.clone(), c.clone())
            };
            let mut diff = Vec::with_capacity(self.nvars);
            for (r, qq) in rlm.iter().zip(&qlm) {
                if r < qq {
                    return None;
                }
                diff.push(r - qq);
            }
            use num_integer::Integer;
            let (co, r) = rlc.div_rem(&qlc);
            if !r.is_zero() {
                return None;
            }
            let t = Self::monomial(self.nvars, &diff, co);
            rem = rem.sub(&t.mul(&q));
            quo = quo.add(&t);
        }
        let back: Exps = sa.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Some(quo.mul_monomial(&back, &BigInt::one()))
    }

    /// Renders with the given variable display names. Variables are ordered
    /// by name; terms by the (reordered) exponent vectors, lexicographically
    /// descending. `exp_den` of 2 renders halved exponents (`^(1/2)`).
    pub fn render(&self, names: &[String], exp_den: i32) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut order: Vec<usize> = (0..self.nvars).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut rows: Vec<(Exps, &BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (order.iter().map(|&v| e[v]).collect::<Exps>(), c))
            .collect();
        rows.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out = String::new();
        for (i, (e, c)) in rows.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, &ex) in e.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                let name = &names[order[k]];
                if ex == exp_den {
                    factors.push(name.clone());
                } else if ex % exp_den == 0 {
                    factors.push(format!("{}^{}", name, ex / exp_den));
                } else {
                    factors.push(format!("{}^({}/{})", name, ex, exp_den));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("t{}", i)).collect();
        write!(f, "{}", self.render(&names, 1))
    }
}
