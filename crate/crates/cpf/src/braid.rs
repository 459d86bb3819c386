//! Braid words and colored braids, with the Markov moves used by the engine.
//!
//! Letters are signed 1-based generator indices: `+i` is σᵢ (the strand at
//! position `i` crosses **over** the strand at position `i+1`), `−i` its
//! inverse. Strand positions in the public API are 1-based to match the
//! generator indexing; colors are dense indices into a display-name table.

use crate::perm::Perm;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i16>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i16>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(Error::Parse(format!(
                    "letter {} out of range for {} strands (want 1 ≤ |letter| ≤ {})",
                    l,
                    n,
                    n - 1
                )));
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses whitespace-separated signed generator indices, e.g. `"1 -2 1"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let l: i16 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad braid letter {:?}", tok)))?;
            letters.push(l);
        }
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn permutation(&self) -> Perm {
        let mut p = Perm::identity(self.n);
        for &l in &self.letters {
            p = p.then(&Perm::adjacent(self.n, (l.unsigned_abs() as usize) - 1));
        }
        p
    }

    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    pub fn push(&mut self, letter: i16) {
        assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.n);
        self.letters.push(letter);
    }

    /// σᵢᵏ as a word.
    pub fn power(n: usize, i: usize, k: i32) -> Self {
        assert!(i >= 1 && i < n);
        let letter = if k >= 0 { i as i16 } else { -(i as i16) };
        BraidWord { n, letters: vec![letter; k.unsigned_abs() as usize] }
    }

    /// Cancels adjacent `σᵢ σᵢ⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<i16> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord { n: self.n, letters: stack }
    }

    /// Reinterprets a word of `B_m` inside `B_n` (`m ≤ n`, strands appended
    /// on the right).
    pub fn embed(&self, n: usize) -> Self {
        assert!(n >= self.n);
        BraidWord { n, letters: self.letters.clone() }
    }

    /// Renders as whitespace-separated letters (the parse format).
    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B{}[{}]", self.n, self.to_text())
    }
}

/// A braid word plus one color per strand (read at the top of the braid),
/// with a display name per color index.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredBraid {
    pub word: BraidWord,
    /// `colors[i]` is the color index of the strand entering top position
    /// `i+1`; indices are dense (`0..num_colors`).
    pub colors: Vec<usize>,
    /// Display name per color index.
    pub names: Vec<String>,
}

impl ColoredBraid {
    pub fn new(word: BraidWord, colors: Vec<usize>, names: Vec<String>) -> Result<Self> {
        if colors.len() != word.strands() {
            return Err(Error::Parse(format!(
                "{} colors for {} strands",
                colors.len(),
                word.strands()
            )));
        }
        let m = names.len();
        if colors.iter().any(|&c| c >= m) {
            return Err(Error::Parse("color index out of range".into()));
        }
        let mut used = vec![false; m];
        for &c in &colors {
            used[c] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Parse("unused color name".into()));
        }
        Ok(ColoredBraid { word, colors, names })
    }

    /// Parses a word and a list of per-strand color names; names are interned
    /// in order of first appearance.
    pub fn parse(n: usize, word_text: &str, color_names: &[&str]) -> Result<Self> {
        let word = BraidWord::parse(n, word_text)?;
        if color_names.len() != n {
            return Err(Error::Parse(format!(
                "{} colors for {} strands",
                color_names.len(),
                n
            )));
        }
        let mut names: Vec<String> = Vec::new();
        let mut colors = Vec::with_capacity(n);
        for &c in color_names {
            let idx = match names.iter().position(|x| x == c) {
                Some(i) => i,
                None => {
                    names.push(c.to_string());
                    names.len() - 1
                }
            };
            colors.push(idx);
        }
        ColoredBraid::new(word, colors, names)
    }

    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    pub fn num_colors(&self) -> usize {
        self.names.len()
    }

    /// A closed colored braid must carry one color per link component: the
    /// color sequence is constant along each permutation orbit.
    pub fn is_closable(&self) -> bool {
        let p = self.word.permutation();
        (0..self.strands()).all(|i| self.colors[i] == self.colors[p.apply(i)])
    }

    pub fn ensure_closable(&self) -> Result<()> {
        if self.is_closable() {
            Ok(())
        } else {
            let p = self.word.permutation();
            let bad = (0..self.strands())
                .find(|&i| self.colors[i] != self.colors[p.apply(i)])
                .unwrap();
            Err(Error::NotClosable(format!(
                "strand {} (color {}) returns to position {} (color {})",
                bad + 1,
                self.names[self.colors[bad]],
                p.apply(bad) + 1,
                self.names[self.colors[p.apply(bad)]]
            )))
        }
    }

    /// Components of the closure: permutation orbits with their color.
    pub fn components(&self) -> Vec<(Vec<usize>, usize)> {
        self.word
            .permutation()
            .cycles()
            .into_iter()
            .map(|c| {
                let color = self.colors[c[0]];
                debug_assert!(c.iter().all(|&i| self.colors[i] == color));
                (c, color)
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.word.permutation().cycles().len()
    }

    /// Conjugation `w ↦ a·w·a⁻¹`; the closure is unchanged, colors follow the
    /// strands: the strand entering position `i` of the conjugate is the one
    /// that entered position `iᵃ` before.
    pub fn conjugate(&self, a: &BraidWord) -> Self {
        assert_eq!(a.strands(), self.strands());
        let pa = a.permutation();
        let colors = (0..self.strands()).map(|i| self.colors[pa.apply(i)]).collect();
        ColoredBraid {
            word: a.concat(&self.word).concat(&a.inverse()),
            colors,
            names: self.names.clone(),
        }
    }

    /// Markov stabilization `w ↦ w·σ_n^{±1}` on one more strand; the new
    /// strand joins the component of the strand at top position `n`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands();
        let mut word = self.word.embed(n + 1);
        word.push(if positive { n as i16 } else { -(n as i16) });
        let mut colors = self.colors.clone();
        colors.push(self.colors[n - 1]);
        ColoredBraid { word, colors, names: self.names.clone() }
    }

    /// Markov destabilization: the word must be `β·σ_{n−1}^{±1}` with `β` not
    /// touching the last strand, and the last two top colors must agree.
    pub fn destabilize(&self) -> Result<Self> {
        let n = self.strands();
        if n < 2 {
            return Err(Error::Usage("cannot destabilize a 1-strand braid".into()));
        }
        let top = (n - 1) as i16;
        let letters = self.word.letters();
        match letters.last() {
            Some(&l) if l.abs() == top => {}
            _ => return Err(Error::Usage("word does not end with the top generator".into())),
        }
        if letters[..letters.len() - 1].iter().any(|l| l.abs() == top) {
            return Err(Error::Usage("top generator occurs before the final letter".into()));
        }
        if self.colors[n - 1] != self.colors[n - 2] {
            return Err(Error::Usage("last two strands carry different colors".into()));
        }
        let word = BraidWord::new(n - 1, letters[..letters.len() - 1].to_vec())?;
        let mut colors = self.colors.clone();
        colors.pop();
        // Color indices may no longer be dense; re-intern.
        let mut names = Vec::new();
        let mut remap = vec![usize::MAX; self.names.len()];
        for c in colors.iter_mut() {
            if remap[*c] == usize::MAX {
                remap[*c] = names.len();
                names.push(self.names[*c].clone());
            }
            *c = remap[*c];
        }
        ColoredBraid::new(word, colors, names)
    }
}

impl std::fmt::Debug for ColoredBraid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<&str> = self.colors.iter().map(|&c| self.names[c].as_str()).collect();
        write!(f, "{:?} colors {:?}", self.word, cs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_permutation() {
        let w = BraidWord::parse(3, "1 -2 1").unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        // Signs do not affect the underlying permutation.
        assert_eq!(w.permutation().images(), &[2usize, 1, 0][..]);
        assert!(BraidWord::parse(2, "2").is_err());
        assert!(BraidWord::parse(2, "x").is_err());
    }

    #[test]
    fn permutation_of_simple_words() {
        // σ₁ swaps positions 1,2.
        let w = BraidWord::parse(3, "1").unwrap();
        assert_eq!(w.permutation().images(), &[1usize, 0, 2][..]);
        // σ₁σ₂ sends 1→2→3? Position 0 strand: crosses to 1, then to 2.
        let w = BraidWord::parse(3, "1 2").unwrap();
        assert_eq!(w.permutation().images(), &[2usize, 0, 1][..]);
    }

    #[test]
    fn free_reduction_cancels() {
        let w = BraidWord::parse(3, "1 2 -2 -1 1").unwrap();
        assert_eq!(w.free_reduce().letters(), &[1]);
    }

    #[test]
    fn closability_follows_orbits() {
        // σ₁ closure is a knot: both strands one component.
        let cb = ColoredBraid::parse(2, "1", &["a", "a"]).unwrap();
        assert!(cb.is_closable());
        assert_eq!(cb.num_components(), 1);
        let cb = ColoredBraid::parse(2, "1", &["a", "b"]).unwrap();
        assert!(!cb.is_closable());
        // σ₁² closure is a two-component link; any colors work.
        let cb = ColoredBraid::parse(2, "1 1", &["a", "b"]).unwrap();
        assert!(cb.is_closable());
        assert_eq!(cb.num_components(), 2);
    }

    #[test]
    fn conjugation_preserves_closability() {
        let cb = ColoredBraid::parse(3, "1 1 2", &["a", "a", "a"]).unwrap();
        let a = BraidWord::parse(3, "2 -1").unwrap();
        let conj = cb.conjugate(&a);
        assert!(conj.is_closable());
        assert_eq!(conj.num_components(), cb.num_components());
    }

    #[test]
    fn stabilize_then_destabilize_roundtrips() {
        let cb = ColoredBraid::parse(2, "1 1", &["a", "b"]).unwrap();
        let st = cb.stabilize(true);
        assert!(st.is_closable());
        assert_eq!(st.strands(), 3);
        let back = st.destabilize().unwrap();
        assert_eq!(back.word.letters(), cb.word.letters());
        assert_eq!(back.colors, cb.colors);
        // Guard: destabilization needs the top generator last and only there.
        assert!(ColoredBraid::parse(3, "2 1", &["a", "a", "a"]).unwrap().destabilize().is_err());
        assert!(ColoredBraid::parse(3, "2 1 2", &["a", "a", "a"]).unwrap().destabilize().is_err());
    }
}
