//! The block-spectrum cone: triples `(e(M), e(M_I), e(M_II))` formed by a
//! Hermitian matrix of size `m+n` and its two diagonal blocks.
//!
//! Beyond the trace equality and the interlacing bounds, one inequality
//! `|x|_A ≥ |y|_B + |z|_C` appears for every triple of subsets with
//! non-vanishing `c^{μ(A)}_{μ(B),μ(C)}`. The generator defaults to the
//! duality-reduced form, which enumerates only levels `#A ≤ (m+n)/2` and
//! emits the reflected companion row alongside each primary row.

use std::collections::HashMap;

use num::BigRational;

use crate::combinat::{subsets, IndexSubset};
use crate::exec::{map_collect, ExecMode};
use crate::horn::subsets_by_weight;
use crate::ineq::{Block, BlockKind, ConeDescription, MembershipReport};
use crate::lr::{lr_equals_one, lr_nonzero};
use crate::{Error, Result};

/// A qualifying subset triple: `B ⊊ [m]`, `C ⊊ [n]`, `A ⊂ [m+n]` with
/// `#A = #B + #C` and `c^{μ(A)}_{μ(B),μ(C)} ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrmnTriple {
    pub a: IndexSubset,
    pub b: IndexSubset,
    pub c: IndexSubset,
}

impl LrmnTriple {
    pub fn provenance(&self) -> String {
        format!("A={} B={} C={}", self.a, self.b, self.c)
    }
}

/// Enumerates qualifying triples. `half_only` restricts to levels
/// `#A ≤ (m+n)/2`, the duality-reduced family.
pub fn lrmn_triples(m: usize, n: usize, c1_only: bool, half_only: bool) -> Result<Vec<LrmnTriple>> {
    lrmn_triples_mode(m, n, c1_only, half_only, ExecMode::auto())
}

pub fn lrmn_triples_mode(
    m: usize,
    n: usize,
    c1_only: bool,
    half_only: bool,
    mode: ExecMode,
) -> Result<Vec<LrmnTriple>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidRange("block sizes must be positive".into()));
    }
    let max_level = if half_only {
        (m + n) / 2
    } else {
        (m - 1) + (n - 1)
    };
    let mut out = Vec::new();
    for level in 1..=max_level {
        // Subsets of [m+n] at this level, bucketed by partition weight.
        let ambient = subsets_by_weight(m + n, level);
        let mut by_weight: HashMap<u64, Vec<usize>> = HashMap::new();
        for (idx, (_, _, w)) in ambient.iter().enumerate() {
            by_weight.entry(*w).or_default().push(idx);
        }
        let mut pairs: Vec<(IndexSubset, IndexSubset)> = Vec::new();
        for b_size in 0..=level.min(m.saturating_sub(1)) {
            let c_size = level - b_size;
            if c_size > n.saturating_sub(1) {
                continue;
            }
            for b in subsets(m, b_size)? {
                for c in subsets(n, c_size)? {
                    pairs.push((b.clone(), c));
                }
            }
        }
        let nested = map_collect(mode, pairs, |(b, c)| {
            let mu_b = b.mu_or_empty();
            let mu_c = c.mu_or_empty();
            let w = mu_b.weight() + mu_c.weight();
            let mut found = Vec::new();
            if let Some(cands) = by_weight.get(&w) {
                for &idx in cands {
                    let (a, mu_a, _) = &ambient[idx];
                    let ok = if c1_only {
                        lr_equals_one(mu_a, &mu_b, &mu_c)
                    } else {
                        lr_nonzero(mu_a, &mu_b, &mu_c)
                    };
                    if ok {
                        found.push(LrmnTriple { a: a.clone(), b: b.clone(), c: c.clone() });
                    }
                }
            }
            found
        });
        out.extend(nested.into_iter().flatten());
    }
    // Canonical order: by level, then lexicographically.
    out.sort_by(|s, t| {
        (s.a.len(), &s.a, &s.b, &s.c).cmp(&(t.a.len(), &t.a, &t.b, &t.c))
    });
    Ok(out)
}

/// Which inequality family the generator emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TripleForm {
    /// Levels `#A ≤ (m+n)/2` with the reflected companion of each row.
    #[default]
    Half,
    /// One row per qualifying triple over every level.
    Full,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LrmnOptions {
    pub c1_only: bool,
    pub form: TripleForm,
    pub chamber: bool,
}

fn lrmn_blocks(m: usize, n: usize) -> Vec<Block> {
    vec![
        Block::new("x", m + n, BlockKind::Decreasing),
        Block::new("y", m, BlockKind::Decreasing),
        Block::new("z", n, BlockKind::Decreasing),
    ]
}

/// Description over blocks `(x: m+n, y: m, z: n)`: trace equality,
/// `2(m+n)` interlacing rows, and the triple rows.
pub fn lrmn_description(m: usize, n: usize, opts: LrmnOptions) -> Result<ConeDescription> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidRange("block sizes must be positive".into()));
    }
    let total = m + n;
    let mut desc = ConeDescription::new(format!("LR({m},{n})"), lrmn_blocks(m, n));

    let mut eq = vec![1i64; total];
    eq.extend(std::iter::repeat(-1i64).take(m + n));
    desc.push_eq(eq, Some("trace".to_string()));

    // Interlacing: x_{n+k} ≤ y_k ≤ x_k and x_{m+l} ≤ z_l ≤ x_l.
    for k in 1..=m {
        let mut upper = vec![0i64; 2 * total];
        upper[k - 1] = 1;
        upper[total + k - 1] = -1;
        desc.push_ge(upper, Some(format!("interlace y{k}<=x{k}")));
        let mut lower = vec![0i64; 2 * total];
        lower[total + k - 1] = 1;
        lower[n + k - 1] = -1;
        desc.push_ge(lower, Some(format!("interlace x{}<=y{k}", n + k)));
    }
    for l in 1..=n {
        let mut upper = vec![0i64; 2 * total];
        upper[l - 1] = 1;
        upper[total + m + l - 1] = -1;
        desc.push_ge(upper, Some(format!("interlace z{l}<=x{l}")));
        let mut lower = vec![0i64; 2 * total];
        lower[total + m + l - 1] = 1;
        lower[m + l - 1] = -1;
        desc.push_ge(lower, Some(format!("interlace x{}<=z{l}", m + l)));
    }

    let half = matches!(opts.form, TripleForm::Half);
    let triples = lrmn_triples(m, n, opts.c1_only, half)?;
    for t in &triples {
        desc.push_ge(primary_row(m, n, t), Some(t.provenance()));
        if half && 2 * t.a.len() < total {
            desc.push_ge(dual_row(m, n, t), Some(format!("{} dual", t.provenance())));
        }
    }
    desc.dedup_rows();
    if opts.chamber {
        desc.append_chamber();
    }
    Ok(desc)
}

/// `|x|_A − |y|_B − |z|_C ≥ 0`.
fn primary_row(m: usize, n: usize, t: &LrmnTriple) -> Vec<i64> {
    let total = m + n;
    let mut row = vec![0i64; 2 * total];
    for &a in t.a.elems() {
        row[a - 1] = 1;
    }
    for &b in t.b.elems() {
        row[total + b - 1] = -1;
    }
    for &c in t.c.elems() {
        row[total + m + c - 1] = -1;
    }
    row
}

/// The reflected companion `|y|_{B^o} + |z|_{C^o} − |x|_{A^o} ≥ 0`.
fn dual_row(m: usize, n: usize, t: &LrmnTriple) -> Vec<i64> {
    let total = m + n;
    let mut row = vec![0i64; 2 * total];
    for &a in t.a.reflect().elems() {
        row[a - 1] = -1;
    }
    for &b in t.b.reflect().elems() {
        row[total + b - 1] = 1;
    }
    for &c in t.c.reflect().elems() {
        row[total + m + c - 1] = 1;
    }
    row
}

/// The cone with a cached description for repeated membership queries.
#[derive(Debug, Clone)]
pub struct LrmnCone {
    m: usize,
    n: usize,
    desc: ConeDescription,
}

impl LrmnCone {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Ok(Self {
            m,
            n,
            desc: lrmn_description(m, n, LrmnOptions::default())?,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
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
