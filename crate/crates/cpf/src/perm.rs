//! Permutations of strand positions, 0-based internally.
//!
//! `images[i]` is the bottom position reached by the strand entering at top
//! position `i`. Composition follows braid stacking order: `a.then(b)` is
//! "apply `a`, then `b`".

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Perm { images }
    }

    /// The adjacent transposition swapping 0-based positions `i` and `i+1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Perm { images }
    }

    /// The order-reversing permutation (underlying the half twist).
    pub fn reversal(n: usize) -> Self {
        Perm { images: (0..n).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn num_inversions(&self) -> usize {
        let mut k = 0;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.images[i] > self.images[j] {
                    k += 1;
                }
            }
        }
        k
    }

    /// Positions `i` with `images[i] > images[i+1]`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.images[i] > self.images[i + 1])
            .collect()
    }

    /// Orbits of the permutation, each sorted by smallest element first.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let s0 = Perm::adjacent(3, 0);
        let s1 = Perm::adjacent(3, 1);
        let p = s0.then(&s1); // 0→1→1? no: 0↦1 then 1↦2
        assert_eq!(p.images(), &[2, 0, 1]);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.num_inversions(), 2);
        assert_eq!(Perm::reversal(4).num_inversions(), 6);
    }

    #[test]
    fn cycles_partition_positions() {
        let p = Perm::from_images(vec![1, 0, 3, 4, 2]);
        assert_eq!(p.cycles(), vec![vec![0, 1], vec![2, 3, 4]]);
    }
}
