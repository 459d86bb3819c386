//! Independent cross-check of the closed-braid invariant by classical
//! Alexander machinery: read a Wirtinger presentation off the closure
//! diagram, take Fox derivatives, abelianize through the coloring, and
//! extract a first minor of the resulting Jacobian. This route shares no
//! code with the skein-algebra engine, which is the point: the two agree
//! only if both are right.
//!
//! The minor determinant carries the classical ±monomial ambiguity, so
//! [`OracleValue`] compares values as equivalence classes (exactly, by
//! cross-multiplication). The engine owns exact normalization; the oracle
//! only certifies the class. `verify_table1` recomputes a frozen set of six
//! small Jacobian blocks together with all 120 Laplace coefficients of
//! their first minors and a 6-term linear relation between those minors,
//! and reports every comparison individually.

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::ColoredBraid;
use crate::fraction::Fraction;
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// A relator as a word in arc generators: `(arc index, ±1)` per letter.
pub type RelatorWord = Vec<(usize, i8)>;

// ---------------------------------------------------------------------------
// determinants
// ---------------------------------------------------------------------------

/// Determinant over the Laurent ring by fraction-free (Bareiss) elimination
/// with row pivoting. Every division in the schedule is exact, so no
/// rational arithmetic is ever needed. The empty matrix has determinant 1.
pub fn det_laurent(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    for row in &m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

// ---------------------------------------------------------------------------
// Fox calculus
// ---------------------------------------------------------------------------

/// Arc-to-color assignment of a diagram, used to abelianize Fox derivatives:
/// the generator of arc `a` is sent to the variable `t_{theta[a]}`.
#[derive(Clone, Debug)]
pub struct ColoringMap {
    pub theta: Vec<usize>,
    pub ncolors: usize,
}

/// The abelianized Fox derivative row of one relator word: entry `b` is the
/// image of `∂R/∂u_b` under the coloring.
pub fn fox_row(word: &[(usize, i8)], coloring: &ColoringMap) -> Vec<LaurentPoly> {
    let narcs = coloring.theta.len();
    let nc = coloring.ncolors;
    let mut row = vec![LaurentPoly::zero(nc); narcs];
    // The running prefix image is always a single monomial.
    let mut prefix = LaurentPoly::one(nc);
    for &(arc, e) in word {
        assert!(arc < narcs, "relator mentions arc {arc} of {narcs}");
        assert!(e == 1 || e == -1, "relator exponents must be ±1");
        let step = LaurentPoly::var_pow(nc, coloring.theta[arc], e as i32);
        if e == 1 {
            row[arc] = row[arc].add(&prefix);
            prefix = prefix.mul(&step);
        } else {
            prefix = prefix.mul(&step);
            row[arc] = row[arc].sub(&prefix);
        }
    }
    row
}

/// Colored Jacobian of a relator list: `entries[a][b] = (∂R_a/∂u_b)^θ`.
pub struct AlexanderMatrix {
    pub entries: Vec<Vec<LaurentPoly>>,
    pub ncolors: usize,
}

pub fn fox_jacobian(relators: &[RelatorWord], coloring: &ColoringMap) -> AlexanderMatrix {
    let entries: Vec<Vec<LaurentPoly>> = relators
        .iter()
        .map(|r| {
            let row = fox_row(r, coloring);
            debug_assert!(
                row.iter().filter(|p| !p.is_zero()).count() <= 3,
                "a conjugation relator touches at most three arcs"
            );
            row
        })
        .collect();
    AlexanderMatrix { entries, ncolors: coloring.ncolors }
}

impl AlexanderMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Determinant after deleting row `a` and column `b`.
    pub fn minor_det(&self, a: usize, b: usize) -> LaurentPoly {
        let n = self.size();
        assert!(a < n && b < n, "minor indices out of range");
        let sub: Vec<Vec<LaurentPoly>> = (0..n)
            .filter(|&i| i != a)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != b)
                    .map(|j| self.entries[i][j].clone())
                    .collect()
            })
            .collect();
        det_laurent(sub, self.ncolors)
    }
}

// ---------------------------------------------------------------------------
// closure diagrams
// ---------------------------------------------------------------------------

/// One crossing of the closure diagram. `under_in` enters beneath `over` and
/// leaves as `under_out`; all three are arc indices (not distinct in kinks).
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub sign: i8,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// Planar diagram of a closed braid, cut into arcs at the undercrossings.
/// Arcs are numbered so that arc `a` is the one exiting beneath crossing
/// `a`; this makes rows and columns of the Jacobian share an index space.
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// Color per arc (constant along each link component).
    pub arc_color: Vec<usize>,
    /// Component per arc, numbered by the braid's permutation cycles.
    pub arc_component: Vec<usize>,
    pub ncolors: usize,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Wirtinger relator per crossing: with `x` the outgoing under-arc, `y`
    /// the incoming one and `z` the over-arc, a positive crossing imposes
    /// `x z y⁻¹ z⁻¹` and a negative one `x z⁻¹ y⁻¹ z`.
    pub fn relators(&self) -> Vec<RelatorWord> {
        self.crossings
            .iter()
            .map(|c| {
                if c.sign > 0 {
                    vec![(c.under_out, 1), (c.over, 1), (c.under_in, -1), (c.over, -1)]
                } else {
                    vec![(c.under_out, 1), (c.over, -1), (c.under_in, -1), (c.over, 1)]
                }
            })
            .collect()
    }
}

/// Which position dives under at a crossing: the right strand for a
/// positive letter, the left for a negative one.
fn under_position(letter: i16, i: usize) -> usize {
    if letter > 0 {
        i + 1
    } else {
        i
    }
}

/// Extends the word with cancelling generator pairs until every component
/// of the closure passes under at least one crossing, which is what the
/// diagram construction needs to cut each component into arcs. A 1-strand
/// braid is stabilized first. The closure is unchanged.
pub fn pad_closure(cb: &ColoredBraid) -> ColoredBraid {
    let mut cb = cb.clone();
    if cb.strands() == 1 {
        cb = cb.stabilize(true);
    }
    loop {
        let n = cb.strands();
        // `at[p]` is the top position of the strand currently at position p.
        let mut at: Vec<usize> = (0..n).collect();
        let mut dives = vec![false; n];
        for &l in cb.word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            dives[at[under_position(l, i)]] = true;
            at.swap(i, i + 1);
        }
        let missing = cb
            .components()
            .into_iter()
            .find(|(cyc, _)| cyc.iter().all(|&p| !dives[p]));
        let Some((cyc, _)) = missing else { return cb };
        let p = *cyc.iter().min().unwrap();
        if p <= n - 2 {
            cb.word.push(-((p + 1) as i16));
            cb.word.push((p + 1) as i16);
        } else {
            cb.word.push((n - 1) as i16);
            cb.word.push(-((n - 1) as i16));
        }
    }
}

/// Reads a Wirtinger presentation off the closure of a colored braid: one
/// crossing per letter, one generating arc per crossing, one conjugation
/// relator per crossing. Fails if some component never passes under a
/// crossing (an empty-word component being the extreme case); apply
/// [`pad_closure`] first to avoid that.
pub fn wirtinger_from_closure(
    cb: &ColoredBraid,
) -> Result<(Diagram, ColoringMap, Vec<RelatorWord>)> {
    cb.ensure_closable()?;
    let n = cb.strands();
    let letters = cb.word.letters();

    let component_of = {
        let mut map = vec![usize::MAX; n];
        for (idx, (cyc, _)) in cb.components().into_iter().enumerate() {
            for p in cyc {
                map[p] = idx;
            }
        }
        map
    };

    // Sweep the braid, cutting strands into segments at undercrossings.
    let mut seg: Vec<usize> = (0..n).collect();
    let mut seg_color: Vec<usize> = cb.colors.clone();
    let mut seg_component: Vec<usize> = component_of.clone();
    let mut raw: Vec<Crossing> = Vec::with_capacity(letters.len());
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        assert!(i + 1 < n, "letter out of range for the strand count");
        let under_pos = under_position(l, i);
        let over_pos = if l > 0 { i } else { i + 1 };
        let over = seg[over_pos];
        let under_in = seg[under_pos];
        let under_out = seg_color.len();
        seg_color.push(seg_color[under_in]);
        seg_component.push(seg_component[under_in]);
        raw.push(Crossing {
            sign: if l > 0 { 1 } else { -1 },
            over,
            under_in,
            under_out,
        });
        if l > 0 {
            seg[i] = under_out;
            seg[i + 1] = over;
        } else {
            seg[i] = over;
            seg[i + 1] = under_out;
        }
    }

    // Close up: the segment leaving the bottom at position p is the segment
    // entering the top at position p.
    let nseg = seg_color.len();
    let mut parent: Vec<usize> = (0..nseg).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in 0..n {
        let a = find(&mut parent, seg[p]);
        let b = find(&mut parent, p);
        parent[a] = b;
    }

    // Number arcs by the crossing they exit from underneath. Every arc must
    // exit exactly one crossing, which is precisely the precondition that
    // every component dives somewhere.
    let m = raw.len();
    let mut arc_of_root: Vec<Option<usize>> = vec![None; nseg];
    for (a, c) in raw.iter().enumerate() {
        let root = find(&mut parent, c.under_out);
        if arc_of_root[root].is_some() {
            // Two crossings exiting into the same arc would mean a segment
            // class with two cut points, which the sweep cannot produce.
            unreachable!("segment class exits two crossings");
        }
        arc_of_root[root] = Some(a);
    }
    let mut arc_color = vec![usize::MAX; m];
    let mut arc_component = vec![usize::MAX; m];
    for s in 0..nseg {
        let root = find(&mut parent, s);
        let Some(arc) = arc_of_root[root] else {
            return Err(Error::Usage(
                "a closure component never passes under a crossing; \
                 pad the word before building the diagram"
                    .into(),
            ));
        };
        if arc_color[arc] == usize::MAX {
            arc_color[arc] = seg_color[s];
            arc_component[arc] = seg_component[s];
        }
        debug_assert_eq!(arc_color[arc], seg_color[s], "arc color is constant");
        debug_assert_eq!(arc_component[arc], seg_component[s]);
    }

    let arc = |s: usize, parent: &mut Vec<usize>| -> usize {
        arc_of_root[find(parent, s)].expect("segment belongs to a cut class")
    };
    let crossings: Vec<Crossing> = raw
        .iter()
        .map(|c| Crossing {
            sign: c.sign,
            over: arc(c.over, &mut parent),
            under_in: arc(c.under_in, &mut parent),
            under_out: arc(c.under_out, &mut parent),
        })
        .collect();

    let diagram = Diagram {
        crossings,
        arc_color: arc_color.clone(),
        arc_component,
        ncolors: cb.num_colors(),
    };
    let coloring = ColoringMap { theta: arc_color, ncolors: cb.num_colors() };
    let relators = diagram.relators();
    Ok((diagram, coloring, relators))
}

// ---------------------------------------------------------------------------
// the oracle proper
// ---------------------------------------------------------------------------

/// Oracle output: a fraction of Laurent polynomials, declared only up to
/// multiplication by ±(monomial). All comparisons cross-multiply and are
/// exact.
#[derive(Clone, Debug)]
pub struct OracleValue {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// The ±monomial `u` with `a·u == b`, when it exists.
fn unit_between(a: &LaurentPoly, b: &LaurentPoly) -> Option<(BigInt, Vec<i32>)> {
    let nv = a.nvars();
    if a.is_zero() && b.is_zero() {
        return Some((BigInt::one(), vec![0; nv]));
    }
    if a.is_zero() || b.is_zero() || a.num_terms() != b.num_terms() {
        return None;
    }
    // A monomial shift preserves the term order, so the least terms of the
    // two polynomials must correspond.
    let (ea, ca) = a.terms().next().unwrap();
    let (eb, cb) = b.terms().next().unwrap();
    let sign = if ca == cb {
        BigInt::one()
    } else if *ca == -cb {
        -BigInt::one()
    } else {
        return None;
    };
    let shift: Vec<i32> = eb.iter().zip(ea.iter()).map(|(x, y)| x - y).collect();
    if a.mul_monomial(&shift, &sign) == *b {
        Some((sign, shift))
    } else {
        None
    }
}

impl OracleValue {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The unit `u` with `engine = u · (num/den)`, if the two values agree
    /// up to ±monomial.
    pub fn unit_vs(&self, engine: &Fraction) -> Option<(BigInt, Vec<i32>)> {
        let lhs = self.num.mul(&engine.den_poly());
        let rhs = engine.numerator().mul(&self.den);
        unit_between(&lhs, &rhs)
    }

    pub fn matches(&self, engine: &Fraction) -> bool {
        self.unit_vs(engine).is_some()
    }

    /// Class equality of two oracle outputs.
    pub fn matches_oracle(&self, other: &OracleValue) -> bool {
        unit_between(&self.num.mul(&other.den), &other.num.mul(&self.den)).is_some()
    }
}

/// The invariant of the closure, up to ±monomial, from the `(a,b)` first
/// minor of the colored Fox Jacobian: `(−1)^{a+b} det(M^{(ab)}) / (t_c − 1)`
/// with `c` the color of arc `b`, followed by doubling every exponent.
pub fn oracle_invariant_at(cb: &ColoredBraid, a: usize, b: usize) -> Result<OracleValue> {
    let padded = pad_closure(cb);
    let (diagram, coloring, relators) = wirtinger_from_closure(&padded)?;
    let jac = fox_jacobian(&relators, &coloring);
    let m = jac.size();
    assert!(a < m && b < m, "minor indices exceed the crossing count");
    let det = jac.minor_det(a, b);
    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
    let nc = diagram.ncolors;
    let num = det.square_vars().mul_scalar(&BigInt::from(sign));
    let den = LaurentPoly::var_pow(nc, diagram.arc_color[b], 2).sub(&LaurentPoly::one(nc));
    Ok(OracleValue { num, den })
}

/// [`oracle_invariant_at`] with the default first-minor choice.
pub fn oracle_invariant(cb: &ColoredBraid) -> Result<OracleValue> {
    oracle_invariant_at(cb, 0, 0)
}

// ---------------------------------------------------------------------------
// winding data (optional normalization hooks)
// ---------------------------------------------------------------------------

/// Raw winding counts of a closed-braid diagram, per color: `kappa` counts
/// strands (one full turn each), `nu_prime` positive and `nu_doubleprime`
/// negative crossings by over-arc color. The exact normalization of the
/// minor determinant is a calibration question; these counts are the data a
/// calibration multiplies into a monomial `t^μ`, they are not asserted to
/// equal any particular convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureCounts {
    pub kappa: Vec<i32>,
    pub nu_prime: Vec<i32>,
    pub nu_doubleprime: Vec<i32>,
}

impl CurvatureCounts {
    pub fn mu(&self) -> Vec<i32> {
        self.kappa
            .iter()
            .zip(&self.nu_prime)
            .zip(&self.nu_doubleprime)
            .map(|((k, p), q)| k - p - q)
            .collect()
    }
}

pub fn curvature_counts(cb: &ColoredBraid, diagram: &Diagram) -> CurvatureCounts {
    let nc = diagram.ncolors;
    let mut kappa = vec![0; nc];
    for &c in &cb.colors {
        kappa[c] += 1;
    }
    let mut nu_prime = vec![0; nc];
    let mut nu_doubleprime = vec![0; nc];
    for c in &diagram.crossings {
        let col = diagram.arc_color[c.over];
        if c.sign > 0 {
            nu_prime[col] += 1;
        } else {
            nu_doubleprime[col] += 1;
        }
    }
    CurvatureCounts { kappa, nu_prime, nu_doubleprime }
}

impl OracleValue {
    /// Multiplies the class representative by `t^μ`. The class is unchanged;
    /// this is the hook a calibrated normalization would use.
    pub fn apply_mu(&self, mu: &[i32]) -> OracleValue {
        OracleValue {
            num: self.num.mul_monomial(mu, &BigInt::one()),
            den: self.den.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// frozen three-color cross-check data
// ---------------------------------------------------------------------------

/// Parses the compact entry syntax of the frozen tables: an optional sign,
/// a monomial in `I`, `J`, `K` (each optionally squared), and an optional
/// binomial factor `(X-1)` or `(1-X)`. Examples: `0`, `-1`, `I^2J`,
/// `JK(I-1)`, `(1-K)`.
fn table_entry(s: &str) -> LaurentPoly {
    if s == "0" {
        return LaurentPoly::zero(3);
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1i64, r),
        None => (1i64, s),
    };
    let var = |c: u8| match c {
        b'I' => 0usize,
        b'J' => 1,
        b'K' => 2,
        _ => panic!("bad variable in table entry {s:?}"),
    };
    let bytes = rest.as_bytes();
    let mut exps = [0i32; 3];
    let mut pos = 0;
    while pos < bytes.len() {
        match bytes[pos] {
            b'I' | b'J' | b'K' => {
                let v = var(bytes[pos]);
                pos += 1;
                if bytes[pos..].starts_with(b"^2") {
                    exps[v] += 2;
                    pos += 2;
                } else {
                    exps[v] += 1;
                }
            }
            b'1' => pos += 1,
            b'(' => break,
            _ => panic!("bad character in table entry {s:?}"),
        }
    }
    let mut p = LaurentPoly::monomial(3, &exps, sign);
    if pos < bytes.len() {
        let inner = rest[pos..]
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or_else(|| panic!("bad factor in table entry {s:?}"));
        let v = |x: usize| LaurentPoly::var_pow(3, x, 1);
        let one = LaurentPoly::one(3);
        let factor = match inner {
            "I-1" => v(0).sub(&one),
            "J-1" => v(1).sub(&one),
            "K-1" => v(2).sub(&one),
            "1-I" => one.sub(&v(0)),
            "1-J" => one.sub(&v(1)),
            "1-K" => one.sub(&v(2)),
            _ => panic!("bad factor in table entry {s:?}"),
        };
        p = p.mul(&factor);
    }
    p
}

fn parse_row(row: &str) -> Vec<LaurentPoly> {
    row.split_whitespace().map(table_entry).collect()
}

/// The six frozen 4×7 Jacobian blocks, as relators plus arc coloring, and
/// the rows they must produce. Arcs 1..6 always carry colors (i, j, k, i,
/// j, k); arc 0 carries j, i, k, j, i, k for the six links in turn.
struct FrozenBlock {
    relators: [RelatorWord; 4],
    arc0_color: usize,
    rows: [&'static str; 4],
}

fn frozen_blocks() -> Vec<FrozenBlock> {
    let w = |letters: &[(usize, i8)]| letters.to_vec();
    vec![
        FrozenBlock {
            relators: [
                w(&[(0, 1), (4, 1), (5, -1), (4, -1)]),
                w(&[(1, 1), (4, -1)]),
                w(&[(3, 1), (2, 1), (3, -1), (0, -1)]),
                w(&[(3, 1), (1, 1), (6, -1), (1, -1)]),
            ],
            arc0_color: 1,
            rows: [
                "1 0 0 0 (J-1) -I 0",
                "0 1 0 0 -1 0 0",
                "-1 0 K (1-J) 0 0 0",
                "0 (K-1) 0 1 0 0 -I",
            ],
        },
        FrozenBlock {
            relators: [
                w(&[(5, 1), (0, 1), (5, -1), (4, -1)]),
                w(&[(6, 1), (1, 1), (6, -1), (0, -1)]),
                w(&[(2, 1), (5, -1)]),
                w(&[(3, 1), (2, 1), (6, -1), (2, -1)]),
            ],
            arc0_color: 0,
            rows: [
                "J 0 0 0 -1 (1-I) 0",
                "-1 K 0 0 0 0 (1-I)",
                "0 0 1 0 0 -1 0",
                "0 0 (K-1) 1 0 0 -J",
            ],
        },
        FrozenBlock {
            relators: [
                w(&[(0, 1), (1, 1), (6, -1), (1, -1)]),
                w(&[(5, 1), (1, 1), (5, -1), (4, -1)]),
                w(&[(2, 1), (5, -1)]),
                w(&[(3, 1), (2, 1), (0, -1), (2, -1)]),
            ],
            arc0_color: 2,
            rows: [
                "1 (K-1) 0 0 0 0 -I",
                "0 J 0 0 -1 (1-I) 0",
                "0 0 1 0 0 -1 0",
                "-J 0 (K-1) 1 0 0 0",
            ],
        },
        FrozenBlock {
            relators: [
                w(&[(0, 1), (4, 1), (5, -1), (4, -1)]),
                w(&[(6, 1), (1, 1), (6, -1), (4, -1)]),
                w(&[(3, 1), (2, 1), (3, -1), (0, -1)]),
                w(&[(3, 1), (6, -1)]),
            ],
            arc0_color: 1,
            rows: [
                "1 0 0 0 (J-1) -I 0",
                "0 K 0 0 -1 0 (1-I)",
                "-1 0 K (1-J) 0 0 0",
                "0 0 0 1 0 0 -1",
            ],
        },
        FrozenBlock {
            relators: [
                w(&[(5, 1), (0, 1), (5, -1), (4, -1)]),
                w(&[(6, 1), (1, 1), (6, -1), (0, -1)]),
                w(&[(3, 1), (2, 1), (3, -1), (5, -1)]),
                w(&[(3, 1), (6, -1)]),
            ],
            arc0_color: 0,
            rows: [
                "J 0 0 0 -1 (1-I) 0",
                "-1 K 0 0 0 0 (1-I)",
                "0 0 K (1-J) 0 -1 0",
                "0 0 0 1 0 0 -1",
            ],
        },
        FrozenBlock {
            relators: [
                w(&[(0, 1), (1, 1), (6, -1), (1, -1)]),
                w(&[(1, 1), (4, -1)]),
                w(&[(2, 1), (4, 1), (5, -1), (4, -1)]),
                w(&[(3, 1), (2, 1), (0, -1), (2, -1)]),
            ],
            arc0_color: 2,
            rows: [
                "1 (K-1) 0 0 0 0 -I",
                "0 1 0 0 -1 0 0",
                "0 0 1 0 (J-1) -I 0",
                "-J 0 (K-1) 1 0 0 0",
            ],
        },
    ]
}

/// Frozen minor coefficients: row per column triple `S_{αβγ}` (lex order),
/// one entry per block.
const MINOR_TABLE: [(&str, &str); 20] = [
    ("S123", "I^2 J IJ I 1 I^2J"),
    ("S124", "0 J(1-I) 0 I(1-I) (1-I) 0"),
    ("S125", "I(1-J) 0 0 I(1-J) (1-J) 0"),
    ("S126", "I 1 1 I 1 I"),
    ("S134", "0 JK(I-1) IJ(I-1) 0 K(I-1) 0"),
    ("S135", "-IK -J -IJ -K -K -IJ"),
    ("S136", "0 (1-K) (1-K) 0 0 I(1-K)"),
    ("S145", "0 J(I-1) 0 K(I-1) JK(I-1) 0"),
    ("S146", "0 (1-I) (1-I) 0 K(1-I) 0"),
    ("S156", "K 1 1 K K 1"),
    ("S234", "I^2 J^2K IJ^2 IK JK I^2J"),
    ("S235", "I(J-1) 0 0 K(J-1) 0 IJ(J-1)"),
    ("S236", "I(K-1) 0 J(K-1) 0 0 IJ(K-1)"),
    ("S245", "I(J-1) 0 0 K(J-1) JK(J-1) 0"),
    ("S246", "-I -JK -J -IK -JK -I"),
    ("S256", "K(1-J) 0 0 K(1-J) 0 (1-J)"),
    ("S345", "IK J^2K IJ^2 K^2 JK^2 IJ"),
    ("S346", "0 JK(K-1) IJ(K-1) 0 0 I(K-1)"),
    ("S356", "K(1-K) 0 J(1-K) 0 0 (1-K)"),
    ("S456", "K JK J K^2 JK^2 1"),
];

/// Outcome of every individual comparison in [`verify_table1`].
pub struct Table1Report {
    /// 24 rows: each frozen Jacobian row against its Fox recomputation.
    pub block_rows: Vec<(String, bool)>,
    /// 120 entries: each signed 4×4 minor against the frozen table.
    pub coefficients: Vec<(String, bool)>,
    /// 20 rows: the 6-term linear relation between the table columns.
    pub zero_rows: Vec<(String, bool)>,
}

impl Table1Report {
    pub fn total(&self) -> usize {
        self.block_rows.len() + self.coefficients.len() + self.zero_rows.len()
    }

    pub fn failed(&self) -> usize {
        self.block_rows
            .iter()
            .chain(&self.coefficients)
            .chain(&self.zero_rows)
            .filter(|(_, ok)| !ok)
            .count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

/// Recomputes the frozen cross-check data from scratch: builds the six
/// Jacobian blocks by Fox calculus from their relators, expands each first
/// minor along the deleted-column block (signed 4×4 minors through column
/// 0), compares all 120 coefficients against the frozen table, and checks
/// that the fixed 6-term combination of the minors vanishes row by row.
pub fn verify_table1() -> Table1Report {
    let blocks = frozen_blocks();
    let mut block_rows = Vec::new();
    let mut computed: Vec<Vec<Vec<LaurentPoly>>> = Vec::new();
    for (r, blk) in blocks.iter().enumerate() {
        let mut theta = vec![0usize; 7];
        theta[0] = blk.arc0_color;
        for a in 1..7 {
            theta[a] = (a - 1) % 3;
        }
        let coloring = ColoringMap { theta, ncolors: 3 };
        let rows: Vec<Vec<LaurentPoly>> = blk
            .relators
            .iter()
            .map(|w| fox_row(w, &coloring))
            .collect();
        for (i, row) in rows.iter().enumerate() {
            let expect = parse_row(blk.rows[i]);
            block_rows.push((format!("K{} row {}", r + 1, i), *row == expect));
        }
        computed.push(rows);
    }

    // Column triples in lexicographic order, matching the frozen table.
    let mut triples = Vec::new();
    for a in 1..=6usize {
        for b in a + 1..=6 {
            for g in b + 1..=6 {
                triples.push((a, b, g));
            }
        }
    }
    assert_eq!(triples.len(), MINOR_TABLE.len());

    let mut coefficients = Vec::new();
    let mut table: Vec<Vec<LaurentPoly>> = Vec::new();
    for (row_idx, &(name, row)) in MINOR_TABLE.iter().enumerate() {
        let expect = parse_row(row);
        assert_eq!(expect.len(), 6, "six blocks per table row");
        let (a, b, g) = triples[row_idx];
        let cols: Vec<usize> = std::iter::once(0)
            .chain((1..=6).filter(|c| *c != a && *c != b && *c != g))
            .collect();
        for (r, rows) in computed.iter().enumerate() {
            let sub: Vec<Vec<LaurentPoly>> = rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            let mut minor = det_laurent(sub, 3);
            if (a + b + g + 1) % 2 == 1 {
                minor = minor.neg();
            }
            coefficients.push((format!("{name} block {}", r + 1), minor == expect[r]));
        }
        table.push(expect);
    }

    // The fixed combination annihilating all six minors at once.
    let v = |x: usize, e: i32| LaurentPoly::var_pow(3, x, e);
    let one = LaurentPoly::one(3);
    let lambda = [
        v(1, 1).sub(&v(0, -1)),
        v(0, 1).sub(&v(1, -1)),
        v(1, -1).sub(&v(2, 1)),
        v(2, -1).sub(&v(1, 1)),
        one.sub(&v(0, 1).mul(&v(2, -1))),
        v(0, -1).mul(&v(2, 1)).sub(&one),
    ];
    let mut zero_rows = Vec::new();
    for (row_idx, &(name, _)) in MINOR_TABLE.iter().enumerate() {
        let mut acc = LaurentPoly::zero(3);
        for r in 0..6 {
            acc = acc.add(&lambda[r].mul(&table[row_idx][r]));
        }
        zero_rows.push((format!("{name} combination"), acc.is_zero()));
    }

    Table1Report { block_rows, coefficients, zero_rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::cpf::conway_potential;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn braid(n: usize, word: &str, colors: &[&str]) -> ColoredBraid {
        ColoredBraid::parse(n, word, colors).unwrap()
    }

    fn random_closable(rng: &mut ChaCha8Rng, n: usize, len: usize) -> ColoredBraid {
        let letters: Vec<i16> = (0..len)
            .map(|_| {
                let v = rng.gen_range(1..n as i16);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let word = BraidWord::new(n, letters).unwrap();
        let cycles = word.permutation().cycles();
        let mut colors = vec![usize::MAX; n];
        for cyc in &cycles {
            let c = rng.gen_range(0..cycles.len());
            for &p in cyc {
                colors[p] = c;
            }
        }
        // Densify color indices in order of first appearance.
        let mut dense: Vec<usize> = Vec::new();
        let colors: Vec<usize> = colors
            .into_iter()
            .map(|c| match dense.iter().position(|&d| d == c) {
                Some(i) => i,
                None => {
                    dense.push(c);
                    dense.len() - 1
                }
            })
            .collect();
        let names = (0..dense.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        ColoredBraid::new(word, colors, names).unwrap()
    }

    #[test]
    fn fox_rows_match_the_displayed_examples() {
        // Kink relator u1·u4⁻¹ with both arcs colored i.
        let coloring = ColoringMap { theta: vec![1, 0, 1, 2, 0, 1, 2], ncolors: 3 };
        let row = fox_row(&[(1, 1), (4, -1)], &coloring);
        assert_eq!(row, parse_row("0 1 0 0 -1 0 0"));

        // Conjugation relator u0·u4·u5⁻¹·u4⁻¹ with θ(u0)=θ(u5)=j, θ(u4)=i.
        let row = fox_row(&[(0, 1), (4, 1), (5, -1), (4, -1)], &coloring);
        assert_eq!(row, parse_row("1 0 0 0 (J-1) -I 0"));

        // Conjugation relator u3·u2·u3⁻¹·u0⁻¹ with θ(u3)=k, θ(u2)=θ(u0)=j.
        let row = fox_row(&[(3, 1), (2, 1), (3, -1), (0, -1)], &coloring);
        assert_eq!(row, parse_row("-1 0 K (1-J) 0 0 0"));
    }

    #[test]
    fn frozen_table_checks_all_pass() {
        let report = verify_table1();
        assert_eq!(report.block_rows.len(), 24);
        assert_eq!(report.coefficients.len(), 120);
        assert_eq!(report.zero_rows.len(), 20);
        let failures: Vec<&str> = report
            .block_rows
            .iter()
            .chain(&report.coefficients)
            .chain(&report.zero_rows)
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        assert!(failures.is_empty(), "failed checks: {failures:?}");
    }

    #[test]
    fn diagram_structure_counts() {
        let (d, _, rel) = wirtinger_from_closure(&braid(2, "1 1", &["a", "b"])).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.arc_color.len(), 2);
        assert_eq!(rel.len(), 2);

        let (d, _, rel) = wirtinger_from_closure(&braid(2, "1 1 1", &["a", "a"])).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_color.len(), 3);
        assert_eq!(rel.len(), 3);
        assert!(d.arc_component.iter().all(|&c| c == 0));
    }

    #[test]
    fn unengaged_components_are_rejected_until_padded() {
        // An empty 2-strand word has two components and no crossings.
        let cb = braid(2, "", &["a", "b"]);
        assert!(wirtinger_from_closure(&cb).is_err());

        // A third strand not touched by the word is just as bad.
        let cb3 = braid(3, "1 1", &["a", "b", "c"]);
        assert!(wirtinger_from_closure(&cb3).is_err());

        for cb in [cb, cb3] {
            let padded = pad_closure(&cb);
            let (d, _, _) = wirtinger_from_closure(&padded).unwrap();
            assert_eq!(d.crossing_count(), d.arc_color.len());
        }
    }

    #[test]
    fn oracle_matches_engine_on_anchors() {
        let cases = [
            braid(1, "", &["a"]),
            braid(2, "1 1", &["a", "b"]),
            braid(2, "-1 -1", &["a", "b"]),
            braid(2, "1 1 1 1", &["a", "b"]),
            braid(2, "1 1 1", &["a", "a"]),
            braid(3, "1 -2 1 -2", &["a", "a", "a"]),
            braid(3, "1 1 2 2", &["a", "b", "c"]),
        ];
        for cb in &cases {
            let engine = conway_potential(cb).unwrap();
            let oracle = oracle_invariant(cb).unwrap();
            assert!(
                oracle.matches(&engine.value),
                "oracle disagrees on {:?}: {} vs {}/{}",
                cb.word.to_text(),
                engine.render(),
                oracle.num.render(&engine.names, 1),
                oracle.den.render(&engine.names, 1),
            );
        }
    }

    #[test]
    fn split_links_report_zero() {
        let cb = braid(2, "", &["a", "b"]);
        let oracle = oracle_invariant(&cb).unwrap();
        assert!(oracle.is_zero());
        let engine = conway_potential(&cb).unwrap();
        assert!(oracle.matches(&engine.value));

        let far = braid(3, "1 1", &["a", "b", "c"]);
        assert!(oracle_invariant(&far).unwrap().is_zero());
    }

    #[test]
    fn minor_choice_does_not_change_the_class() {
        for cb in [
            braid(2, "1 1 1", &["a", "a"]),
            braid(2, "1 1", &["a", "b"]),
            braid(3, "1 -2 1 -2", &["a", "a", "a"]),
        ] {
            let engine = conway_potential(&cb).unwrap();
            let reference = oracle_invariant(&cb).unwrap();
            let padded = pad_closure(&cb);
            let (d, _, _) = wirtinger_from_closure(&padded).unwrap();
            let m = d.crossing_count();
            let mut units = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    let v = oracle_invariant_at(&cb, a, b).unwrap();
                    assert!(
                        v.matches_oracle(&reference),
                        "minor ({a},{b}) leaves the class"
                    );
                    if a == 0 {
                        units.push(v.unit_vs(&engine.value).unwrap());
                    }
                }
            }
            // With the deleted row fixed, the resolved unit is stable.
            assert!(units.windows(2).all(|w| w[0] == w[1]), "unstable unit");
        }
    }

    #[test]
    fn relator_rows_satisfy_the_abelianized_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0F0C);
        for _ in 0..40 {
            let n = rng.gen_range(2..=4);
            let len = rng.gen_range(0..=8);
            let cb = random_closable(&mut rng, n, len);
            let padded = pad_closure(&cb);
            let (d, coloring, relators) = wirtinger_from_closure(&padded).unwrap();
            let jac = fox_jacobian(&relators, &coloring);
            let nc = coloring.ncolors;
            for row in &jac.entries {
                // The augmentation of a relator row vanishes identically …
                let mut acc = LaurentPoly::zero(nc);
                for (b, entry) in row.iter().enumerate() {
                    let ub = LaurentPoly::var_pow(nc, d.arc_color[b], 1)
                        .sub(&LaurentPoly::one(nc));
                    acc = acc.add(&entry.mul(&ub));
                }
                assert!(acc.is_zero(), "augmentation identity fails");
                // … so in particular the row sums to zero at all colors = 1.
                let folded: LaurentPoly = row
                    .iter()
                    .fold(LaurentPoly::zero(nc), |a, p| a.add(p))
                    .subst_vars(&vec![0; nc], 1);
                let coeff_sum: BigInt = folded.terms().map(|(_, c)| c.clone()).sum();
                assert_eq!(coeff_sum, BigInt::from(0));
            }
        }
    }

    #[test]
    fn random_corpus_agrees_with_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
        for _ in 0..15 {
            let n = rng.gen_range(2..=3);
            let len = rng.gen_range(0..=6);
            let cb = random_closable(&mut rng, n, len);
            let engine = conway_potential(&cb).unwrap();
            let oracle = oracle_invariant(&cb).unwrap();
            assert!(
                oracle.matches(&engine.value),
                "disagreement on word {:?} colors {:?}",
                cb.word.to_text(),
                cb.colors,
            );
        }
    }

    #[test]
    fn curvature_counts_follow_the_diagram() {
        let cb = braid(2, "1 1", &["a", "b"]);
        let padded = pad_closure(&cb);
        let (d, _, _) = wirtinger_from_closure(&padded).unwrap();
        let counts = curvature_counts(&padded, &d);
        assert_eq!(counts.kappa, vec![1, 1]);
        assert_eq!(
            counts.nu_prime.iter().sum::<i32>()
                + counts.nu_doubleprime.iter().sum::<i32>(),
            d.crossing_count() as i32
        );
        let mu = counts.mu();
        for (i, m) in mu.iter().enumerate() {
            assert_eq!(
                *m,
                counts.kappa[i] - counts.nu_prime[i] - counts.nu_doubleprime[i]
            );
        }
        // Applying the monomial hook never leaves the class.
        let oracle = oracle_invariant(&cb).unwrap();
        assert!(oracle.apply_mu(&mu).matches_oracle(&oracle));
    }

    #[test]
    fn bareiss_determinant_on_known_matrices() {
        let v = |x: usize| LaurentPoly::var_pow(2, x, 1);
        let one = LaurentPoly::one(2);
        let zero = LaurentPoly::zero(2);
        // det [[t0, 1], [1, t1]] = t0·t1 − 1.
        let d = det_laurent(
            vec![vec![v(0), one.clone()], vec![one.clone(), v(1)]],
            2,
        );
        assert_eq!(d, v(0).mul(&v(1)).sub(&one));
        // A singular matrix, needing a pivot swap on the way.
        let d = det_laurent(
            vec![
                vec![zero.clone(), v(0)],
                vec![zero.clone(), one.clone()],
            ],
            2,
        );
        assert!(d.is_zero());
        // Row swap with nonzero result: det [[0,1],[t0,0]] = −t0.
        let d = det_laurent(
            vec![vec![zero.clone(), one.clone()], vec![v(0), zero.clone()]],
            2,
        );
        assert_eq!(d, v(0).neg());
        // Empty matrix.
        assert!(det_laurent(Vec::new(), 2).is_one());
    }
}
