//! The Horn cone of eigenvalue triples `(e(X), e(Y), e(X+Y))`.
//!
//! Its inequality list `|x|_I + |y|_J ≥ |z|_K` runs over triples of
//! `r`-subsets whose attached partitions have a non-vanishing
//! Littlewood-Richardson coefficient `c^{μ(K)}_{μ(I),μ(J)}`; by saturation
//! this bottoms out the recursive definition without ever solving a smaller
//! membership problem.

use num::BigRational;

use crate::combinat::{subsets, IndexSubset, Partition};
use crate::exec::{map_collect, ExecMode};
use crate::ineq::{Block, BlockKind, ConeDescription, MembershipReport};
use crate::lr::{lr_equals_one, lr_nonzero};
use crate::{Error, Result};

/// One admissible subset triple of cardinality `r` inside `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornTriple {
    pub n: usize,
    pub r: usize,
    pub i: IndexSubset,
    pub j: IndexSubset,
    pub k: IndexSubset,
}

impl HornTriple {
    pub fn provenance(&self) -> String {
        format!("r={} I={} J={} K={}", self.r, self.i, self.j, self.k)
    }

    /// The dual triple `((I^o)^c, (J^o)^c, (K^o)^c)` of cardinality `n − r`.
    pub fn dual(&self) -> HornTriple {
        HornTriple {
            n: self.n,
            r: self.n - self.r,
            i: self.i.reflect().complement(),
            j: self.j.reflect().complement(),
            k: self.k.reflect().complement(),
        }
    }
}

/// All subsets of `[n]` of size `r` with their attached partition, bucketed
/// by partition weight.
pub(crate) fn subsets_by_weight(n: usize, r: usize) -> Vec<(IndexSubset, Partition, u64)> {
    subsets(n, r)
        .expect("r <= n")
        .map(|a| {
            let mu = a.mu_or_empty();
            let w = mu.weight();
            (a, mu, w)
        })
        .collect()
}

/// Enumerates the admissible triples of cardinality `r` in lexicographic
/// order of `(I, J, K)`.
pub fn horn_triples(n: usize, r: usize, c1_only: bool) -> Result<Vec<HornTriple>> {
    horn_triples_mode(n, r, c1_only, ExecMode::auto())
}

/// Same as [`horn_triples`] with an explicit execution strategy; the output
/// does not depend on the mode.
pub fn horn_triples_mode(
    n: usize,
    r: usize,
    c1_only: bool,
    mode: ExecMode,
) -> Result<Vec<HornTriple>> {
    if r == 0 || r >= n {
        return Err(Error::InvalidRange(format!(
            "cardinality r={r} must satisfy 1 <= r < n={n}"
        )));
    }
    Ok(triples_of_cardinality(n, r, c1_only, mode))
}

/// Enumeration core, valid for the full range `1 ≤ r ≤ n` (the `r = n` case
/// holds the single full-set triple and is what the off-diagonal generators
/// need).
pub(crate) fn triples_of_cardinality(
    n: usize,
    r: usize,
    c1_only: bool,
    mode: ExecMode,
) -> Vec<HornTriple> {
    let all = subsets_by_weight(n, r);
    // Bucket candidate K by weight: the trace condition |μ(I)|+|μ(J)|=|μ(K)|
    // prunes before any LR computation.
    let mut by_weight: std::collections::HashMap<u64, Vec<usize>> = std::collections::HashMap::new();
    for (idx, (_, _, w)) in all.iter().enumerate() {
        by_weight.entry(*w).or_default().push(idx);
    }
    let pairs: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
        .collect();
    let nested = map_collect(mode, pairs, |(ii, jj)| {
        let (i_set, i_mu, i_w) = &all[ii];
        let (j_set, j_mu, j_w) = &all[jj];
        let mut found = Vec::new();
        if let Some(ks) = by_weight.get(&(i_w + j_w)) {
            for &kk in ks {
                let (k_set, k_mu, _) = &all[kk];
                let ok = if c1_only {
                    lr_equals_one(k_mu, i_mu, j_mu)
                } else {
                    lr_nonzero(k_mu, i_mu, j_mu)
                };
                if ok {
                    found.push(HornTriple {
                        n,
                        r,
                        i: i_set.clone(),
                        j: j_set.clone(),
                        k: k_set.clone(),
                    });
                }
            }
        }
        found
    });
    nested.into_iter().flatten().collect()
}

/// Options controlling description generation.
#[derive(Debug, Clone, Copy, Default)]
pub struct HornOptions {
    /// Keep only triples with coefficient exactly one (the minimal list).
    pub c1_only: bool,
    /// Append the chamber rows of the three blocks.
    pub chamber: bool,
}

fn horn_blocks(n: usize) -> Vec<Block> {
    vec![
        Block::new("x", n, BlockKind::Decreasing),
        Block::new("y", n, BlockKind::Decreasing),
        Block::new("z", n, BlockKind::Decreasing),
    ]
}

/// The inequality description of the Horn cone over blocks `(x, y, z)`:
/// one trace equality plus one row per admissible triple, `r = 1 .. n−1`.
pub fn horn_description(n: usize, opts: HornOptions) -> Result<ConeDescription> {
    if n == 0 {
        return Err(Error::InvalidRange("n must be positive".into()));
    }
    let mut desc = ConeDescription::new(format!("Horn({n})"), horn_blocks(n));
    desc.left_blocks = 2;
    let mut eq = vec![1i64; 2 * n];
    eq.extend(std::iter::repeat(-1i64).take(n));
    desc.push_eq(eq, Some("trace".to_string()));
    for r in 1..n {
        for t in horn_triples(n, r, opts.c1_only)? {
            desc.push_ge(triple_row(n, &t), Some(t.provenance()));
        }
    }
    desc.dedup_rows();
    if opts.chamber {
        desc.append_chamber();
    }
    Ok(desc)
}

fn triple_row(n: usize, t: &HornTriple) -> Vec<i64> {
    let mut row = vec![0i64; 3 * n];
    for &a in t.i.elems() {
        row[a - 1] = 1;
    }
    for &a in t.j.elems() {
        row[n + a - 1] = 1;
    }
    for &a in t.k.elems() {
        row[2 * n + a - 1] = -1;
    }
    row
}

/// The Horn cone with a cached full description, for repeated membership
/// queries.
#[derive(Debug, Clone)]
pub struct HornCone {
    n: usize,
    desc: ConeDescription,
}

impl HornCone {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            desc: horn_description(n, HornOptions::default())?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn description(&self) -> &ConeDescription {
        &self.desc
    }

    pub fn member_exact(
        &self,
        x: &[BigRational],
        y: &[BigRational],
        z: &[BigRational],
    ) -> Result<MembershipReport> {
        self.desc
            .evaluate_exact(&[x.to_vec(), y.to_vec(), z.to_vec()])
    }

    pub fn member_float(&self, x: &[f64], y: &[f64], z: &[f64], tol: f64) -> Result<MembershipReport> {
        self.desc
            .evaluate_float(&[x.to_vec(), y.to_vec(), z.to_vec()], tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple_sets(n: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        horn_triples(n, r, false)
            .unwrap()
            .into_iter()
            .map(|t| (t.i.elems().to_vec(), t.j.elems().to_vec(), t.k.elems().to_vec()))
            .collect()
    }

    #[test]
    fn triples_n2_r1() {
        assert_eq!(
            triple_sets(2, 1),
            vec![
                (vec![1], vec![1], vec![1]),
                (vec![1], vec![2], vec![2]),
                (vec![2], vec![1], vec![2]),
            ]
        );
    }

    #[test]
    fn triples_n3() {
        assert_eq!(
            triple_sets(3, 1),
            vec![
                (vec![1], vec![1], vec![1]),
                (vec![1], vec![2], vec![2]),
                (vec![1], vec![3], vec![3]),
                (vec![2], vec![1], vec![2]),
                (vec![2], vec![2], vec![3]),
                (vec![3], vec![1], vec![3]),
            ]
        );
        assert_eq!(triple_sets(3, 2).len(), 6);
        assert!(horn_triples(3, 3, false).is_err());
        assert!(horn_triples(3, 0, false).is_err());
    }

    #[test]
    fn duality_closure() {
        // Cardinality-r triples map bijectively onto cardinality-(n−r)
        // triples under the reflect-complement involution.
        for n in 2..=6usize {
            for r in 1..n {
                let mut fwd: Vec<_> = horn_triples(n, r, false)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.dual())
                    .map(|t| (t.i, t.j, t.k))
                    .collect();
                fwd.sort();
                let mut back: Vec<_> = horn_triples(n, n - r, false)
                    .unwrap()
                    .into_iter()
                    .map(|t| (t.i, t.j, t.k))
                    .collect();
                back.sort();
                assert_eq!(fwd, back, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn c1_subset_of_full() {
        for n in 2..=5usize {
            for r in 1..n {
                let full = triple_sets(n, r);
                for t in horn_triples(n, r, true).unwrap() {
                    let key = (t.i.elems().to_vec(), t.j.elems().to_vec(), t.k.elems().to_vec());
                    assert!(full.contains(&key));
                }
            }
        }
    }

    #[test]
    fn description_small() {
        let d1 = horn_description(1, HornOptions::default()).unwrap();
        assert_eq!(d1.equalities.len(), 1);
        assert!(d1.inequalities.is_empty());

        let d2 = horn_description(2, HornOptions::default()).unwrap();
        assert_eq!(d2.equalities.len(), 1);
        assert_eq!(d2.inequalities.len(), 3);
        assert_eq!(d2.render_row(&d2.equalities[0]), "x1 + x2 + y1 + y2 = z1 + z2");
        assert_eq!(d2.render_row(&d2.inequalities[0]), "x1 + y1 ≥ z1");
    }

    #[test]
    fn known_triple_counts_with_c1() {
        // Minimal-list sizes for small Horn cones.
        let count = |n: usize| -> usize {
            (1..n)
                .map(|r| horn_triples(n, r, true).unwrap().len())
                .sum()
        };
        assert_eq!(count(2), 3);
        assert_eq!(count(3), 12);
        assert_eq!(count(4), 41);
    }

    #[test]
    fn membership_examples() {
        let cone = HornCone::new(2).unwrap();
        let r = cone
            .member_float(&[1.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], 1e-12)
            .unwrap();
        assert!(r.member);
        let r = cone
            .member_float(&[1.0, 0.0], &[1.0, 0.0], &[2.0, 0.0], 1e-12)
            .unwrap();
        assert!(r.member);
        let r = cone
            .member_float(&[2.0, 0.0], &[1.0, 1.0], &[4.0, 0.0], 1e-12)
            .unwrap();
        assert!(!r.member);
        assert!(r
            .violations
            .iter()
            .any(|v| v.rendered == "x1 + y1 ≥ z1"));
    }

    #[test]
    fn modes_agree() {
        let seq = horn_triples_mode(5, 2, false, ExecMode::Sequential).unwrap();
        let par = horn_triples_mode(5, 2, false, ExecMode::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
