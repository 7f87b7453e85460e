//! Index-subset and partition bookkeeping shared by every cone generator:
//! subsets of `[ℓ]`, the maps `A ↦ A^o` (reflection), `A ↦ A^c` (complement),
//! `A ↦ μ(A)` and subset sums `|x|_A`.

use std::fmt;

use num::Zero;

use crate::{Error, Result};

/// A strictly increasing subset of `[ℓ] = {1, …, ℓ}`, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset {
    ambient: usize,
    elems: Vec<usize>,
}

impl IndexSubset {
    /// Builds a subset from 1-indexed elements, which must be strictly
    /// increasing and lie in `[ambient]`.
    pub fn new(ambient: usize, elems: Vec<usize>) -> Result<Self> {
        for (i, &e) in elems.iter().enumerate() {
            if e < 1 || e > ambient {
                return Err(Error::InvalidRange(format!(
                    "element {e} outside [1, {ambient}]"
                )));
            }
            if i > 0 && elems[i - 1] >= e {
                return Err(Error::InvalidRange(format!(
                    "elements not strictly increasing at position {i}"
                )));
            }
        }
        Ok(Self { ambient, elems })
    }

    pub fn empty(ambient: usize) -> Self {
        Self { ambient, elems: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, elems: (1..=ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// The reflection `A^o = {ℓ+1−a : a ∈ A}`. Involutive.
    pub fn reflect(&self) -> Self {
        let mut elems: Vec<usize> = self.elems.iter().map(|&a| self.ambient + 1 - a).collect();
        elems.reverse();
        Self { ambient: self.ambient, elems }
    }

    /// The complement `A^c = [ℓ] ∖ A`. Involutive.
    pub fn complement(&self) -> Self {
        let elems = (1..=self.ambient).filter(|e| !self.contains(*e)).collect();
        Self { ambient: self.ambient, elems }
    }

    /// The partition `μ(A) = (a_r − r ≥ … ≥ a_1 − 1 ≥ 0)` attached to a
    /// nonempty subset `A = {a_1 < … < a_r}`.
    pub fn mu(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.mu_or_empty())
    }

    /// Same as [`mu`](Self::mu) but maps the empty subset to the empty
    /// partition, which is what the triple generators need.
    pub fn mu_or_empty(&self) -> Partition {
        let parts: Vec<u32> = self
            .elems
            .iter()
            .enumerate()
            .rev()
            .map(|(i, &a)| (a - (i + 1)) as u32)
            .collect();
        Partition::new(parts).expect("mu yields a weakly decreasing sequence")
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All cardinality-`r` subsets of `[ℓ]` in lexicographic order of their
/// element lists.
pub fn subsets(ambient: usize, r: usize) -> Result<Subsets> {
    if r > ambient {
        return Err(Error::InvalidRange(format!(
            "cannot draw {r}-subsets from [{ambient}]"
        )));
    }
    Ok(Subsets { ambient, r, state: None, done: false })
}

/// Lexicographic stream over `r`-subsets, see [`subsets`].
pub struct Subsets {
    ambient: usize,
    r: usize,
    state: Option<Vec<usize>>,
    done: bool,
}

impl Iterator for Subsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        if self.done {
            return None;
        }
        match &mut self.state {
            None => {
                let first: Vec<usize> = (1..=self.r).collect();
                self.state = Some(first.clone());
                if self.r == 0 {
                    self.done = true;
                    return Some(IndexSubset::empty(self.ambient));
                }
                Some(IndexSubset { ambient: self.ambient, elems: first })
            }
            Some(cur) => {
                // Advance the rightmost element that can still move.
                let mut i = self.r;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    if cur[i] < self.ambient - (self.r - 1 - i) {
                        cur[i] += 1;
                        for j in i + 1..self.r {
                            cur[j] = cur[j - 1] + 1;
                        }
                        break;
                    }
                }
                Some(IndexSubset { ambient: self.ambient, elems: cur.clone() })
            }
        }
    }
}

/// The subset sum `|x|_A = Σ_{a∈A} x_a`.
pub fn subset_sum<T>(x: &[T], a: &IndexSubset) -> Result<T>
where
    T: Clone + Zero + std::ops::Add<Output = T>,
{
    if x.len() != a.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against subset of [{}]",
            x.len(),
            a.ambient()
        )));
    }
    Ok(a.elems()
        .iter()
        .fold(T::zero(), |acc, &i| acc + x[i - 1].clone()))
}

/// A partition: weakly decreasing non-negative integers, stored without
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Normalizes by stripping trailing zeros; rejects increasing input.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::NotSorted(format!("partition parts {:?}", parts)));
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part, 0-indexed, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The weight `|λ|`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Containment of Young diagrams: `self ⊆ other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, &p)| p <= other.part(i))
    }

    /// Whether the diagram fits inside a `rows × cols` box.
    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(ambient: usize, elems: &[usize]) -> IndexSubset {
        IndexSubset::new(ambient, elems.to_vec()).unwrap()
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<_> = subsets(2, 1).unwrap().collect();
        assert_eq!(all, vec![sub(2, &[1]), sub(2, &[2])]);

        let all: Vec<_> = subsets(3, 2).unwrap().collect();
        assert_eq!(all, vec![sub(3, &[1, 2]), sub(3, &[1, 3]), sub(3, &[2, 3])]);

        let all: Vec<_> = subsets(4, 0).unwrap().collect();
        assert_eq!(all, vec![IndexSubset::empty(4)]);

        assert!(subsets(3, 4).is_err());
    }

    #[test]
    fn subsets_counts_match_binomials() {
        for n in 0..=8usize {
            for r in 0..=n {
                let count = subsets(n, r).unwrap().count();
                let binom = (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(count, binom, "C({n},{r})");
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(sub(4, &[1, 2]).mu().unwrap(), Partition::empty());
        assert_eq!(sub(4, &[2, 4]).mu().unwrap(), Partition::new([2, 1]).unwrap());
        assert_eq!(sub(7, &[1]).mu().unwrap(), Partition::empty());
        assert_eq!(IndexSubset::empty(3).mu(), Err(Error::EmptySubset));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(sub(4, &[1, 3]).reflect(), sub(4, &[2, 4]));
        assert_eq!(sub(5, &[1]).reflect(), sub(5, &[5]));
        assert_eq!(IndexSubset::full(6).reflect(), IndexSubset::full(6));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(sub(4, &[1, 3]).complement(), sub(4, &[2, 4]));
        assert_eq!(IndexSubset::empty(3).complement(), IndexSubset::full(3));
        assert_eq!(sub(2, &[2]).complement(), sub(2, &[1]));
    }

    #[test]
    fn involutions_commute() {
        for n in 1..=7usize {
            for r in 0..=n {
                for a in subsets(n, r).unwrap() {
                    assert_eq!(a.reflect().reflect(), a);
                    assert_eq!(a.complement().complement(), a);
                    assert_eq!(a.reflect().complement(), a.complement().reflect());
                }
            }
        }
    }

    #[test]
    fn mu_reflection_is_complement_in_rectangle() {
        // μ(A)_i + μ(A^o)_{r+1−i} = n − r for A of size r in [n].
        for n in 1..=8usize {
            for r in 1..=n {
                for a in subsets(n, r).unwrap() {
                    let mu = a.mu().unwrap();
                    let muo = a.reflect().mu().unwrap();
                    for i in 0..r {
                        assert_eq!(
                            mu.part(i) + muo.part(r - 1 - i),
                            (n - r) as u32,
                            "A = {a} in [{n}]"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subset_sum_examples() {
        let x = [3i64, 1, -2];
        assert_eq!(subset_sum(&x, &sub(3, &[1, 3])).unwrap(), 1);
        assert_eq!(subset_sum(&x, &IndexSubset::empty(3)).unwrap(), 0);
        let y = [1i64, 1, 1, 1];
        assert_eq!(subset_sum(&y, &sub(4, &[2, 4])).unwrap(), 2);
        assert!(subset_sum(&x, &sub(4, &[2, 4])).is_err());
    }

    #[test]
    fn subset_sum_splits_over_complement() {
        let x = [5i64, -3, 2, 7, 0, -1];
        for r in 0..=6 {
            for a in subsets(6, r).unwrap() {
                let total: i64 = x.iter().sum();
                let s = subset_sum(&x, &a).unwrap() + subset_sum(&x, &a.complement()).unwrap();
                assert_eq!(s, total);
            }
        }
    }

    #[test]
    fn partition_normalization() {
        let p = Partition::new([3, 2, 0, 0]).unwrap();
        assert_eq!(p.parts(), &[3, 2]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.weight(), 5);
        assert!(Partition::new([1, 2]).is_err());
        assert_eq!(Partition::new([0, 0]).unwrap(), Partition::empty());
    }
}
