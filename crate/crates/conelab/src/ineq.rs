//! Block-structured homogeneous linear inequalities and cone descriptions.
//!
//! Every cone in this crate lives in a product of coordinate blocks (for
//! example `(λ: n, s: q)`), each block constrained to its chamber: weakly
//! decreasing, optionally with a non-negative tail. A [`ConeDescription`]
//! collects one set of equalities and one set of inequalities over those
//! blocks, all homogeneous (right-hand side zero).

use std::collections::HashSet;
use std::fmt::Write as _;

use num::BigRational;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Chamber constraint satisfied by a coordinate block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// Weakly decreasing real coordinates.
    Decreasing,
    /// Weakly decreasing with last coordinate ≥ 0 (singular-value blocks).
    DecreasingNonneg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub dim: usize,
    pub kind: BlockKind,
}

impl Block {
    pub fn new(name: &str, dim: usize, kind: BlockKind) -> Self {
        Self { name: name.to_string(), dim, kind }
    }

    /// Display symbol used by the text renderer.
    fn symbol(&self) -> &str {
        match self.name.as_str() {
            "lambda" => "λ",
            "gamma" => "γ",
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `coeffs · x ≥ 0`
    Ge,
    /// `coeffs · x = 0`
    Eq,
}

/// A homogeneous row over the concatenated blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearInequality {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    /// Structural origin of the row (triple indices, interlacing, chamber…).
    pub provenance: Option<String>,
}

impl LinearInequality {
    pub fn ge(coeffs: Vec<i64>, provenance: impl Into<Option<String>>) -> Self {
        Self { coeffs, relation: Relation::Ge, provenance: provenance.into() }
    }

    pub fn eq(coeffs: Vec<i64>, provenance: impl Into<Option<String>>) -> Self {
        Self { coeffs, relation: Relation::Eq, provenance: provenance.into() }
    }

    /// Divides by the gcd of the coefficients; equalities additionally get a
    /// canonical sign. Returns `None` for the zero row.
    pub fn canonicalized(mut self) -> Option<Self> {
        let mut g: i64 = 0;
        for &c in &self.coeffs {
            g = gcd(g, c.abs());
        }
        if g == 0 {
            return None;
        }
        for c in &mut self.coeffs {
            *c /= g;
        }
        if self.relation == Relation::Eq {
            if let Some(first) = self.coeffs.iter().find(|c| **c != 0) {
                if *first < 0 {
                    for c in &mut self.coeffs {
                        *c = -*c;
                    }
                }
            }
        }
        Some(self)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Outcome of a membership evaluation.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    pub violations: Vec<Violation>,
    /// Minimum slack over inequality rows, as a float for reporting.
    pub min_slack: Option<f64>,
    /// Largest |residual| over equality rows.
    pub max_eq_residual: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub relation: Relation,
    /// Index into the corresponding row list.
    pub index: usize,
    pub rendered: String,
    pub provenance: Option<String>,
    pub amount: f64,
}

/// A named cone given by homogeneous equalities and inequalities over
/// coordinate blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeDescription {
    pub name: String,
    pub blocks: Vec<Block>,
    pub equalities: Vec<LinearInequality>,
    pub inequalities: Vec<LinearInequality>,
    /// How many leading blocks the text renderer keeps on the left-hand side.
    pub left_blocks: usize,
}

impl ConeDescription {
    pub fn new(name: impl Into<String>, blocks: Vec<Block>) -> Self {
        Self {
            name: name.into(),
            blocks,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            left_blocks: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// Offset of each block inside the concatenated coordinate vector.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            offs.push(acc);
            acc += b.dim;
        }
        offs
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn push_eq(&mut self, coeffs: Vec<i64>, provenance: impl Into<Option<String>>) {
        debug_assert_eq!(coeffs.len(), self.dim());
        if let Some(row) = LinearInequality::eq(coeffs, provenance).canonicalized() {
            self.equalities.push(row);
        }
    }

    pub fn push_ge(&mut self, coeffs: Vec<i64>, provenance: impl Into<Option<String>>) {
        debug_assert_eq!(coeffs.len(), self.dim());
        if let Some(row) = LinearInequality::ge(coeffs, provenance).canonicalized() {
            self.inequalities.push(row);
        }
    }

    /// Removes duplicate rows (first occurrence wins), comparing canonical
    /// coefficient vectors.
    pub fn dedup_rows(&mut self) {
        let mut seen: HashSet<(Relation, Vec<i64>)> = HashSet::new();
        self.equalities
            .retain(|r| seen.insert((r.relation, r.coeffs.clone())));
        self.inequalities
            .retain(|r| seen.insert((r.relation, r.coeffs.clone())));
    }

    /// The chamber rows of the blocks: differences `v_i − v_{i+1} ≥ 0` plus
    /// `v_k ≥ 0` for non-negative blocks.
    pub fn chamber_rows(&self) -> Vec<LinearInequality> {
        let dim = self.dim();
        let offsets = self.block_offsets();
        let mut rows = Vec::new();
        for (b, &off) in self.blocks.iter().zip(&offsets) {
            for i in 0..b.dim.saturating_sub(1) {
                let mut c = vec![0i64; dim];
                c[off + i] = 1;
                c[off + i + 1] = -1;
                rows.push(LinearInequality::ge(
                    c,
                    Some(format!("chamber {}{}>={}{}", b.name, i + 1, b.name, i + 2)),
                ));
            }
            if b.kind == BlockKind::DecreasingNonneg && b.dim > 0 {
                let mut c = vec![0i64; dim];
                c[off + b.dim - 1] = 1;
                rows.push(LinearInequality::ge(
                    c,
                    Some(format!("chamber {}{}>=0", b.name, b.dim)),
                ));
            }
        }
        rows
    }

    /// Appends chamber rows (deduplicated against existing rows).
    pub fn append_chamber(&mut self) {
        for row in self.chamber_rows() {
            self.inequalities.push(row);
        }
        self.dedup_rows();
    }

    /// Whether a `≥` row is a non-negative combination of chamber rows.
    ///
    /// Chamber rows do not mix blocks, so the test decomposes per block:
    /// all prefix sums of the block coefficients must be non-negative, and
    /// the block total must vanish unless the block has a non-negative tail.
    pub fn is_chamber_trivial(&self, row: &LinearInequality) -> bool {
        if row.relation != Relation::Ge {
            return false;
        }
        let offsets = self.block_offsets();
        for (b, &off) in self.blocks.iter().zip(&offsets) {
            let mut prefix: i64 = 0;
            for i in 0..b.dim {
                prefix += row.coeffs[off + i];
                if prefix < 0 {
                    return false;
                }
            }
            if b.kind == BlockKind::Decreasing && prefix != 0 {
                return false;
            }
        }
        true
    }

    /// Drops inequality rows implied by the chamber alone.
    pub fn drop_chamber_trivial(&mut self) {
        let keep: Vec<bool> = self
            .inequalities
            .iter()
            .map(|r| !self.is_chamber_trivial(r))
            .collect();
        let mut it = keep.iter();
        self.inequalities.retain(|_| *it.next().unwrap());
    }

    fn check_shape<T>(&self, blocks: &[Vec<T>]) -> Result<()> {
        if blocks.len() != self.blocks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks supplied, {} expected",
                blocks.len(),
                self.blocks.len()
            )));
        }
        for (b, values) in self.blocks.iter().zip(blocks) {
            if values.len() != b.dim {
                return Err(Error::DimensionMismatch(format!(
                    "block {} has length {}, expected {}",
                    b.name,
                    values.len(),
                    b.dim
                )));
            }
        }
        Ok(())
    }

    /// Exact membership for a rational point, given per block.
    pub fn evaluate_exact(&self, blocks: &[Vec<BigRational>]) -> Result<MembershipReport> {
        self.check_shape(blocks)?;
        for (b, values) in self.blocks.iter().zip(blocks) {
            for w in values.windows(2) {
                if w[0] < w[1] {
                    return Err(Error::NotSorted(format!("block {}", b.name)));
                }
            }
            if b.kind == BlockKind::DecreasingNonneg {
                if let Some(last) = values.last() {
                    if last.is_negative() {
                        return Err(Error::NegativeEntry(format!("block {}", b.name)));
                    }
                }
            }
        }
        let flat: Vec<&BigRational> = blocks.iter().flatten().collect();
        let value = |row: &LinearInequality| -> BigRational {
            let mut acc = BigRational::zero();
            for (c, x) in row.coeffs.iter().zip(&flat) {
                if *c != 0 {
                    acc += BigRational::from_integer((*c).into()) * *x;
                }
            }
            acc
        };
        let mut report = MembershipReport {
            member: true,
            violations: Vec::new(),
            min_slack: None,
            max_eq_residual: None,
        };
        for (idx, row) in self.equalities.iter().enumerate() {
            let v = value(row);
            let vf = rat_to_f64(&v);
            track_max(&mut report.max_eq_residual, vf.abs());
            if !v.is_zero() {
                report.member = false;
                report.violations.push(self.violation(Relation::Eq, idx, row, vf));
            }
        }
        for (idx, row) in self.inequalities.iter().enumerate() {
            let v = value(row);
            let vf = rat_to_f64(&v);
            track_min(&mut report.min_slack, vf);
            if v.is_negative() {
                report.member = false;
                report.violations.push(self.violation(Relation::Ge, idx, row, vf));
            }
        }
        Ok(report)
    }

    /// Floating membership with one absolute tolerance applied per row.
    pub fn evaluate_float(&self, blocks: &[Vec<f64>], tol: f64) -> Result<MembershipReport> {
        self.check_shape(blocks)?;
        for (b, values) in self.blocks.iter().zip(blocks) {
            for w in values.windows(2) {
                if w[0] < w[1] - tol {
                    return Err(Error::NotSorted(format!("block {}", b.name)));
                }
            }
            if b.kind == BlockKind::DecreasingNonneg {
                if let Some(last) = values.last() {
                    if *last < -tol {
                        return Err(Error::NegativeEntry(format!("block {}", b.name)));
                    }
                }
            }
        }
        let flat: Vec<f64> = blocks.iter().flatten().copied().collect();
        let value = |row: &LinearInequality| -> f64 {
            row.coeffs
                .iter()
                .zip(&flat)
                .map(|(c, x)| *c as f64 * x)
                .sum()
        };
        let mut report = MembershipReport {
            member: true,
            violations: Vec::new(),
            min_slack: None,
            max_eq_residual: None,
        };
        for (idx, row) in self.equalities.iter().enumerate() {
            let v = value(row);
            track_max(&mut report.max_eq_residual, v.abs());
            if v.abs() > tol {
                report.member = false;
                report.violations.push(self.violation(Relation::Eq, idx, row, v));
            }
        }
        for (idx, row) in self.inequalities.iter().enumerate() {
            let v = value(row);
            track_min(&mut report.min_slack, v);
            if v < -tol {
                report.member = false;
                report.violations.push(self.violation(Relation::Ge, idx, row, v));
            }
        }
        Ok(report)
    }

    fn violation(
        &self,
        relation: Relation,
        index: usize,
        row: &LinearInequality,
        amount: f64,
    ) -> Violation {
        Violation {
            relation,
            index,
            rendered: self.render_row(row),
            provenance: row.provenance.clone(),
            amount,
        }
    }

    /// Renders one row in the display style of the inequality lists: the
    /// leading `left_blocks` blocks on the left, the rest negated on the
    /// right, e.g. `λ1 + λ2 - λ3 - λ4 ≥ 2s1 + 2s2`. When every displayed
    /// term on both sides is negative the sides are swapped and negated,
    /// so `γ3 ≤ s1` shows as `s1 ≥ γ3` rather than `-γ3 ≥ -s1`.
    pub fn render_row(&self, row: &LinearInequality) -> String {
        let offsets = self.block_offsets();
        let mut left: Vec<(i64, String)> = Vec::new();
        let mut right: Vec<(i64, String)> = Vec::new();
        for (bi, (b, &off)) in self.blocks.iter().zip(&offsets).enumerate() {
            for i in 0..b.dim {
                let c = row.coeffs[off + i];
                if c == 0 {
                    continue;
                }
                let var = format!("{}{}", b.symbol(), i + 1);
                if bi < self.left_blocks {
                    left.push((c, var));
                } else {
                    right.push((-c, var));
                }
            }
        }
        let all_neg =
            |terms: &[(i64, String)]| !terms.is_empty() && terms.iter().all(|(c, _)| *c < 0);
        if all_neg(&left) && all_neg(&right) {
            std::mem::swap(&mut left, &mut right);
            for (c, _) in left.iter_mut().chain(right.iter_mut()) {
                *c = -*c;
            }
        }
        let side = |terms: &[(i64, String)]| -> String {
            let mut buf = String::new();
            for (c, var) in terms {
                if buf.is_empty() {
                    if *c < 0 {
                        buf.push('-');
                    }
                } else if *c < 0 {
                    buf.push_str(" - ");
                } else {
                    buf.push_str(" + ");
                }
                let mag = c.abs();
                if mag != 1 {
                    let _ = write!(buf, "{mag}");
                }
                buf.push_str(var);
            }
            if buf.is_empty() {
                buf.push('0');
            }
            buf
        };
        let rel = match row.relation {
            Relation::Ge => "≥",
            Relation::Eq => "=",
        };
        format!("{} {rel} {}", side(&left), side(&right))
    }
}

fn track_min(slot: &mut Option<f64>, v: f64) {
    match slot {
        Some(cur) => {
            if v < *cur {
                *cur = v;
            }
        }
        None => *slot = Some(v),
    }
}

fn track_max(slot: &mut Option<f64>, v: f64) {
    match slot {
        Some(cur) => {
            if v > *cur {
                *cur = v;
            }
        }
        None => *slot = Some(v),
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for reporting; exact verdicts never go through here.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_block_desc() -> ConeDescription {
        ConeDescription::new(
            "test",
            vec![
                Block::new("lambda", 3, BlockKind::Decreasing),
                Block::new("s", 2, BlockKind::DecreasingNonneg),
            ],
        )
    }

    #[test]
    fn canonicalization_divides_by_gcd() {
        let row = LinearInequality::ge(vec![2, -4, 6, 0, 0], None).canonicalized().unwrap();
        assert_eq!(row.coeffs, vec![1, -2, 3, 0, 0]);
        assert!(LinearInequality::ge(vec![0, 0], None).canonicalized().is_none());
        let eq = LinearInequality::eq(vec![0, -2, 2], None).canonicalized().unwrap();
        assert_eq!(eq.coeffs, vec![0, 1, -1]);
    }

    #[test]
    fn dedup_keeps_first() {
        let mut d = two_block_desc();
        d.push_ge(vec![1, 0, -1, 0, 0], Some("a".into()));
        d.push_ge(vec![2, 0, -2, 0, 0], Some("b".into()));
        d.push_ge(vec![0, 1, 0, -1, 0], None);
        d.dedup_rows();
        assert_eq!(d.inequalities.len(), 2);
        assert_eq!(d.inequalities[0].provenance.as_deref(), Some("a"));
    }

    #[test]
    fn chamber_trivial_filter() {
        let d = two_block_desc();
        // s1 + s2 ≥ 0 follows from the chamber of a non-negative block.
        let triv = LinearInequality::ge(vec![0, 0, 0, 1, 1], None);
        assert!(d.is_chamber_trivial(&triv));
        // λ1 + λ2 ≥ 0 does not: the λ block may be negative.
        let non = LinearInequality::ge(vec![1, 1, 0, 0, 0], None);
        assert!(!d.is_chamber_trivial(&non));
        // λ1 − λ3 ≥ 0 is a chamber consequence.
        let diff = LinearInequality::ge(vec![1, 0, -1, 0, 0], None);
        assert!(d.is_chamber_trivial(&diff));
        // λ1 − λ2 − s1 ≥ 0 is not.
        let mixed = LinearInequality::ge(vec![1, -1, 0, -1, 0], None);
        assert!(!d.is_chamber_trivial(&mixed));
    }

    #[test]
    fn chamber_rows_shape() {
        let d = two_block_desc();
        let rows = d.chamber_rows();
        // λ: 2 differences; s: 1 difference + tail.
        assert_eq!(rows.len(), 4);
    }

    #[test]
    fn render_matches_display_style() {
        let d = two_block_desc();
        let row = LinearInequality::ge(vec![1, 1, -1, -2, -2], None);
        assert_eq!(d.render_row(&row), "λ1 + λ2 - λ3 ≥ 2s1 + 2s2");
        let row = LinearInequality::ge(vec![0, 0, 0, 1, -1], None);
        assert_eq!(d.render_row(&row), "0 ≥ -s1 + s2");
    }

    #[test]
    fn float_evaluation_flags_violations() {
        let mut d = two_block_desc();
        d.push_ge(vec![1, 0, -1, -2, 0], Some("r".into()));
        let ok = d
            .evaluate_float(&[vec![3.0, 1.0, 0.0], vec![1.0, 0.0]], 1e-9)
            .unwrap();
        assert!(ok.member);
        assert_eq!(ok.min_slack, Some(1.0));
        let bad = d
            .evaluate_float(&[vec![1.0, 0.5, 0.0], vec![1.0, 0.0]], 1e-9)
            .unwrap();
        assert!(!bad.member);
        assert_eq!(bad.violations.len(), 1);
        assert!(d
            .evaluate_float(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0]], 1e-9)
            .is_err());
    }
}
