//! The three off-diagonal / diagonal block cones.
//!
//! * `A(p,q)` — `(e(X), s(X₁₂))` for Hermitian `X`; described either through
//!   the compact list over subset triples of `[q]` (`fflp`) or by pulling the
//!   Horn description back along `(λ, λ*, 2ŝ^{p,q})` (`embed`).
//! * `S(p,q)` — `(s(X), s(X₁₂), s(X₂₁))` for complex `X`; the block-spectrum
//!   description of `LR(n,n)` pulled back along `(γ̂, ŝ^{p,q}, t̂^{p,q})`.
//! * `T(p,q)` — `(s(X), s(X₁₁), s(X₂₂))`; same pullback from `LR(2p,2q)`
//!   along `(γ̂, ŝ^{p,p}, t̂^{q,q})`.
//!
//! All hatted coordinates are signed re-indexings, so every pulled-back row
//! stays integral. Rows that collapse to chamber consequences are dropped.

use std::ops::Neg;
use std::sync::OnceLock;

use num::{BigRational, Zero};

use crate::exec::ExecMode;
use crate::horn::{triples_of_cardinality, HornCone, HornTriple};
use crate::ineq::{Block, BlockKind, ConeDescription, MembershipReport};
use crate::lrmn::{lrmn_triples, LrmnCone, LrmnTriple};
use crate::{Error, Result};

/// The symmetric zero-padded extension
/// `ŝ^{p,q} = (s_1, …, s_q, 0, …, 0, −s_q, …, −s_1)` of length `p+q`.
pub fn hat_pq<T>(s: &[T], p: usize, q: usize) -> Result<Vec<T>>
where
    T: Clone + Zero + PartialOrd + Neg<Output = T>,
{
    if p < q {
        return Err(Error::InvalidRange(format!("p={p} < q={q}")));
    }
    if s.len() != q {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for q={q}",
            s.len()
        )));
    }
    for w in s.windows(2) {
        if w[0] < w[1] {
            return Err(Error::NotSorted("hat input".into()));
        }
    }
    if s.last().is_some_and(|v| *v < T::zero()) {
        return Err(Error::NegativeEntry("hat input".into()));
    }
    let mut out = Vec::with_capacity(p + q);
    out.extend(s.iter().cloned());
    out.extend(std::iter::repeat_with(T::zero).take(p - q));
    out.extend(s.iter().rev().map(|v| -v.clone()));
    Ok(out)
}

/// `λ* = (−λ_n, …, −λ_1)`, the spectrum of `−X`. Involutive.
pub fn star<T>(v: &[T]) -> Vec<T>
where
    T: Clone + Neg<Output = T>,
{
    v.iter().rev().map(|x| -x.clone()).collect()
}

/// Signed position of one hatted coordinate inside the source vector.
#[derive(Debug, Clone, Copy)]
enum HatCoord {
    Plus(usize),
    Minus(usize),
    Pad,
}

/// Coordinate map of `ŝ^{p,q}` over a source of length `q` (0-indexed).
fn hat_coords(p: usize, q: usize) -> Vec<HatCoord> {
    let n = p + q;
    (0..n)
        .map(|i| {
            if i < q {
                HatCoord::Plus(i)
            } else if i < p {
                HatCoord::Pad
            } else {
                HatCoord::Minus(n - 1 - i)
            }
        })
        .collect()
}

/// Accumulates `scale` on the source coordinate behind a hatted one.
fn pull_back(acc: &mut [i64], coords: &[HatCoord], target_index: usize, scale: i64) {
    match coords[target_index] {
        HatCoord::Plus(i) => acc[i] += scale,
        HatCoord::Minus(i) => acc[i] -= scale,
        HatCoord::Pad => {}
    }
}

/// Generation method for the `A(p,q)` description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AMethod {
    /// Rows `|λ|_I − |λ|_{J^o} ≥ 2|s|_K` over subset triples of `[q]`.
    #[default]
    Fflp,
    /// Horn rows pulled back along `(λ, λ*, 2ŝ^{p,q})`.
    Embed,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OffdiagOptions {
    pub c1_only: bool,
    pub chamber: bool,
}

fn check_pq(p: usize, q: usize) -> Result<()> {
    if q == 0 || p < q {
        return Err(Error::InvalidRange(format!(
            "block sizes must satisfy p >= q >= 1, got ({p},{q})"
        )));
    }
    Ok(())
}

fn a_blocks(p: usize, q: usize) -> Vec<Block> {
    vec![
        Block::new("lambda", p + q, BlockKind::Decreasing),
        Block::new("s", q, BlockKind::DecreasingNonneg),
    ]
}

/// Admissible triples of `[q]` for the compact `A(p,q)` list, including the
/// full-set triple at cardinality `q`.
fn fflp_triples(q: usize, c1_only: bool) -> Vec<HornTriple> {
    (1..=q)
        .flat_map(|r| triples_of_cardinality(q, r, c1_only, ExecMode::auto()))
        .collect()
}

pub fn a_description(
    p: usize,
    q: usize,
    method: AMethod,
    opts: OffdiagOptions,
) -> Result<ConeDescription> {
    check_pq(p, q)?;
    let n = p + q;
    let mut desc = ConeDescription::new(format!("A({p},{q})"), a_blocks(p, q));
    match method {
        AMethod::Fflp => {
            for t in fflp_triples(q, opts.c1_only) {
                let mut row = vec![0i64; n + q];
                for &i in t.i.elems() {
                    row[i - 1] += 1;
                }
                for &j in t.j.elems() {
                    // J^o taken inside [n].
                    row[n - j] -= 1;
                }
                for &k in t.k.elems() {
                    row[n + k - 1] -= 2;
                }
                desc.push_ge(row, Some(t.provenance()));
            }
        }
        AMethod::Embed => {
            let s_hat = hat_coords(p, q);
            for r in 1..n {
                for t in triples_of_cardinality(n, r, opts.c1_only, ExecMode::auto()) {
                    let mut row = vec![0i64; n + q];
                    for &i in t.i.elems() {
                        row[i - 1] += 1; // x = λ
                    }
                    for &j in t.j.elems() {
                        row[n - j] -= 1; // y = λ*: y_j = −λ_{n+1−j}
                    }
                    let s_acc = &mut row[n..];
                    for &k in t.k.elems() {
                        pull_back(s_acc, &s_hat, k - 1, -2); // z = 2ŝ
                    }
                    desc.push_ge(row, Some(t.provenance()));
                }
            }
        }
    }
    desc.drop_chamber_trivial();
    desc.dedup_rows();
    if opts.chamber {
        desc.append_chamber();
    }
    Ok(desc)
}

/// `A(p,q)` with cached machinery for both membership routes.
pub struct ACone {
    p: usize,
    q: usize,
    fflp: ConeDescription,
    horn: OnceLock<HornCone>,
}

impl ACone {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        check_pq(p, q)?;
        Ok(Self {
            p,
            q,
            fflp: a_description(p, q, AMethod::Fflp, OffdiagOptions::default())?,
            horn: OnceLock::new(),
        })
    }

    pub fn description(&self) -> &ConeDescription {
        &self.fflp
    }

    fn horn_cone(&self) -> &HornCone {
        self.horn
            .get_or_init(|| HornCone::new(self.p + self.q).expect("n >= 2"))
    }

    pub fn member_float(
        &self,
        lambda: &[f64],
        s: &[f64],
        method: AMethod,
        tol: f64,
    ) -> Result<MembershipReport> {
        match method {
            AMethod::Fflp => self
                .fflp
                .evaluate_float(&[lambda.to_vec(), s.to_vec()], tol),
            AMethod::Embed => {
                let twice: Vec<f64> = hat_pq(s, self.p, self.q)?
                    .into_iter()
                    .map(|v| 2.0 * v)
                    .collect();
                self.horn_cone()
                    .member_float(lambda, &star(lambda), &twice, tol)
            }
        }
    }

    pub fn member_exact(
        &self,
        lambda: &[BigRational],
        s: &[BigRational],
        method: AMethod,
    ) -> Result<MembershipReport> {
        match method {
            AMethod::Fflp => self.fflp.evaluate_exact(&[lambda.to_vec(), s.to_vec()]),
            AMethod::Embed => {
                let two = BigRational::from_integer(2.into());
                let twice: Vec<BigRational> = hat_pq(s, self.p, self.q)?
                    .into_iter()
                    .map(|v| &two * v)
                    .collect();
                self.horn_cone().member_exact(lambda, &star(lambda), &twice)
            }
        }
    }
}

fn s_blocks(p: usize, q: usize) -> Vec<Block> {
    vec![
        Block::new("gamma", p + q, BlockKind::DecreasingNonneg),
        Block::new("s", q, BlockKind::DecreasingNonneg),
        Block::new("t", q, BlockKind::DecreasingNonneg),
    ]
}

/// Description of `S(p,q)` over `(γ: n, s: q, t: q)`: the bounds
/// `γ_k ≥ s_k`, `γ_k ≥ t_k` plus one pulled-back row per qualifying triple
/// of `LR(n,n)` at levels `#A ≤ n`.
pub fn s_description(p: usize, q: usize, opts: OffdiagOptions) -> Result<ConeDescription> {
    check_pq(p, q)?;
    let n = p + q;
    let mut desc = ConeDescription::new(format!("S({p},{q})"), s_blocks(p, q));
    for k in 1..=q {
        let mut row = vec![0i64; n + 2 * q];
        row[k - 1] = 1;
        row[n + k - 1] = -1;
        desc.push_ge(row, Some(format!("bound gamma{k}>=s{k}")));
        let mut row = vec![0i64; n + 2 * q];
        row[k - 1] = 1;
        row[n + q + k - 1] = -1;
        desc.push_ge(row, Some(format!("bound gamma{k}>=t{k}")));
    }
    let gamma_hat = hat_coords(n, n);
    let sv_hat = hat_coords(p, q);
    for t in lrmn_triples(n, n, opts.c1_only, true)? {
        let row = pulled_triple_row(&t, n, q, q, &gamma_hat, &sv_hat, &sv_hat);
        desc.push_ge(row, Some(t.provenance()));
    }
    desc.drop_chamber_trivial();
    desc.dedup_rows();
    if opts.chamber {
        desc.append_chamber();
    }
    Ok(desc)
}

fn t_blocks(p: usize, q: usize) -> Vec<Block> {
    vec![
        Block::new("gamma", p + q, BlockKind::DecreasingNonneg),
        Block::new("s", p, BlockKind::DecreasingNonneg),
        Block::new("t", q, BlockKind::DecreasingNonneg),
    ]
}

/// Description of `T(p,q)` over `(γ: n, s: p, t: q)`: bounds `γ_k ≥ s_k`,
/// `γ_j ≥ t_j`, `γ_{2q+l} ≤ s_l`, plus pulled-back rows of `LR(2p,2q)` at
/// levels `#A ≤ n`.
pub fn t_description(p: usize, q: usize, opts: OffdiagOptions) -> Result<ConeDescription> {
    check_pq(p, q)?;
    let n = p + q;
    let dim = n + p + q;
    let mut desc = ConeDescription::new(format!("T({p},{q})"), t_blocks(p, q));
    for k in 1..=p {
        let mut row = vec![0i64; dim];
        row[k - 1] = 1;
        row[n + k - 1] = -1;
        desc.push_ge(row, Some(format!("bound gamma{k}>=s{k}")));
    }
    for j in 1..=q {
        let mut row = vec![0i64; dim];
        row[j - 1] = 1;
        row[n + p + j - 1] = -1;
        desc.push_ge(row, Some(format!("bound gamma{j}>=t{j}")));
    }
    for l in 1..=p - q {
        let mut row = vec![0i64; dim];
        row[n + l - 1] = 1;
        row[2 * q + l - 1] = -1;
        desc.push_ge(row, Some(format!("bound gamma{}<=s{l}", 2 * q + l)));
    }
    let gamma_hat = hat_coords(n, n);
    let s_hat = hat_coords(p, p);
    let t_hat = hat_coords(q, q);
    for t in lrmn_triples(2 * p, 2 * q, opts.c1_only, true)? {
        let row = pulled_triple_row(&t, n, p, q, &gamma_hat, &s_hat, &t_hat);
        desc.push_ge(row, Some(t.provenance()));
    }
    desc.drop_chamber_trivial();
    desc.dedup_rows();
    if opts.chamber {
        desc.append_chamber();
    }
    Ok(desc)
}

/// Pulls `|x|_A − |y|_B − |z|_C ≥ 0` back along the three hat maps into a
/// row over `(γ: n, s: ds, t: dt)`.
fn pulled_triple_row(
    t: &LrmnTriple,
    n: usize,
    ds: usize,
    dt: usize,
    gamma_hat: &[HatCoord],
    s_hat: &[HatCoord],
    t_hat: &[HatCoord],
) -> Vec<i64> {
    let mut row = vec![0i64; n + ds + dt];
    {
        let g = &mut row[..n];
        for &a in t.a.elems() {
            pull_back(g, gamma_hat, a - 1, 1);
        }
    }
    {
        let s = &mut row[n..n + ds];
        for &b in t.b.elems() {
            pull_back(s, s_hat, b - 1, -1);
        }
    }
    {
        let tt = &mut row[n + ds..];
        for &c in t.c.elems() {
            pull_back(tt, t_hat, c - 1, -1);
        }
    }
    row
}

/// Membership route for the `S` and `T` cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StMethod {
    /// Evaluate the pulled-back rows over `(γ, s, t)` directly.
    #[default]
    Direct,
    /// Hat the point and test it against the ambient block-spectrum cone.
    Pullback,
}

/// `(p_arg, q_arg)` pairs fed to [`hat_pq`] for the `s` and `t` parts.
type HatSpec = fn(usize, usize) -> (usize, usize);

macro_rules! st_cone {
    ($(#[$doc:meta])* $name:ident, $desc_fn:ident, $ambient:expr, $s_spec:expr, $t_spec:expr) => {
        $(#[$doc])*
        pub struct $name {
            p: usize,
            q: usize,
            desc: ConeDescription,
            ambient: OnceLock<LrmnCone>,
        }

        impl $name {
            pub fn new(p: usize, q: usize) -> Result<Self> {
                Ok(Self {
                    p,
                    q,
                    desc: $desc_fn(p, q, OffdiagOptions::default())?,
                    ambient: OnceLock::new(),
                })
            }

            pub fn description(&self) -> &ConeDescription {
                &self.desc
            }

            fn ambient_cone(&self) -> &LrmnCone {
                let (p, q) = (self.p, self.q);
                self.ambient.get_or_init(|| {
                    let (m, n) = ($ambient)(p, q);
                    LrmnCone::new(m, n).expect("valid block sizes")
                })
            }

            fn hat_point<T>(&self, gamma: &[T], s: &[T], t: &[T]) -> Result<(Vec<T>, Vec<T>, Vec<T>)>
            where
                T: Clone + Zero + PartialOrd + Neg<Output = T>,
            {
                let n = self.p + self.q;
                let (sp, sq) = ($s_spec as HatSpec)(self.p, self.q);
                let (tp, tq) = ($t_spec as HatSpec)(self.p, self.q);
                Ok((
                    hat_pq(gamma, n, n)?,
                    hat_pq(s, sp, sq)?,
                    hat_pq(t, tp, tq)?,
                ))
            }

            pub fn member_float(
                &self,
                gamma: &[f64],
                s: &[f64],
                t: &[f64],
                method: StMethod,
                tol: f64,
            ) -> Result<MembershipReport> {
                match method {
                    StMethod::Direct => self
                        .desc
                        .evaluate_float(&[gamma.to_vec(), s.to_vec(), t.to_vec()], tol),
                    StMethod::Pullback => {
                        let (gh, sh, th) = self.hat_point(gamma, s, t)?;
                        self.ambient_cone().member_float(&gh, &sh, &th, tol)
                    }
                }
            }

            pub fn member_exact(
                &self,
                gamma: &[BigRational],
                s: &[BigRational],
                t: &[BigRational],
                method: StMethod,
            ) -> Result<MembershipReport> {
                match method {
                    StMethod::Direct => self
                        .desc
                        .evaluate_exact(&[gamma.to_vec(), s.to_vec(), t.to_vec()]),
                    StMethod::Pullback => {
                        let (gh, sh, th) = self.hat_point(gamma, s, t)?;
                        self.ambient_cone().member_exact(&gh, &sh, &th)
                    }
                }
            }
        }
    };
}

st_cone!(
    /// `S(p,q)` with its direct description and the `LR(n,n)` pullback route.
    SCone,
    s_description,
    |p: usize, q: usize| (p + q, p + q),
    |p, q| (p, q),
    |p, q| (p, q)
);

st_cone!(
    /// `T(p,q)` with its direct description and the `LR(2p,2q)` pullback route.
    TCone,
    t_description,
    |p: usize, q: usize| (2 * p, 2 * q),
    |p, _q| (p, p),
    |_p, q| (q, q)
);

/// Interlacing rows between the singular values of a `(p+1)`-square matrix
/// and of a submatrix with one row and one column deleted:
/// `s_j ≤ γ_j` for `j ≤ p` and `γ_{j+2} ≤ s_j` for `j ≤ p−1`.
pub fn thompson_rows(p: usize) -> Result<ConeDescription> {
    if p == 0 {
        return Err(Error::InvalidRange("p must be positive".into()));
    }
    let blocks = vec![
        Block::new("gamma", p + 1, BlockKind::DecreasingNonneg),
        Block::new("s", p, BlockKind::DecreasingNonneg),
    ];
    let dim = 2 * p + 1;
    let mut desc = ConeDescription::new(format!("Thompson({p})"), blocks);
    for j in 1..=p {
        let mut row = vec![0i64; dim];
        row[j - 1] = 1;
        row[p + 1 + j - 1] = -1;
        desc.push_ge(row, Some(format!("s{j}<=gamma{j}")));
    }
    for j in 1..=p - 1 {
        let mut row = vec![0i64; dim];
        row[p + 1 + j - 1] = 1;
        row[j + 1] = -1;
        desc.push_ge(row, Some(format!("gamma{}<=s{j}", j + 2)));
    }
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_examples() {
        assert_eq!(
            hat_pq(&[3.0, 1.0], 3, 2).unwrap(),
            vec![3.0, 1.0, 0.0, -1.0, -3.0]
        );
        assert_eq!(hat_pq(&[0.0, 0.0], 2, 2).unwrap(), vec![0.0, 0.0, 0.0, 0.0]);
        assert_eq!(hat_pq(&[2.0], 1, 1).unwrap(), vec![2.0, -2.0]);
        assert!(hat_pq(&[1.0], 0, 1).is_err());
        assert!(hat_pq(&[-1.0], 1, 1).is_err());
        assert!(hat_pq(&[1.0, 2.0], 2, 2).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&[2.0, 1.0, -3.0]), vec![3.0, -1.0, -2.0]);
        assert_eq!(star(&[0.0, 0.0]), vec![0.0, 0.0]);
        assert_eq!(star(&[1.0, 1.0]), vec![-1.0, -1.0]);
        let v = [4.0, 1.5, -2.0];
        assert_eq!(star(&star(&v)), v.to_vec());
    }

    fn rendered(desc: &ConeDescription) -> Vec<String> {
        desc.inequalities
            .iter()
            .map(|r| desc.render_row(r))
            .collect()
    }

    #[test]
    fn a_2_2_compact_list() {
        let d = a_description(2, 2, AMethod::Fflp, OffdiagOptions::default()).unwrap();
        let mut rows = rendered(&d);
        rows.sort();
        let mut expect = vec![
            "λ1 - λ4 ≥ 2s1".to_string(),
            "λ2 - λ4 ≥ 2s2".to_string(),
            "λ1 - λ3 ≥ 2s2".to_string(),
            "λ1 + λ2 - λ3 - λ4 ≥ 2s1 + 2s2".to_string(),
        ];
        expect.sort();
        assert_eq!(rows, expect);
    }

    #[test]
    fn a_1_1_single_row() {
        let d = a_description(1, 1, AMethod::Fflp, OffdiagOptions::default()).unwrap();
        assert_eq!(rendered(&d), vec!["λ1 - λ2 ≥ 2s1".to_string()]);
    }

    #[test]
    fn a_membership_examples() {
        let cone = ACone::new(2, 2).unwrap();
        for method in [AMethod::Fflp, AMethod::Embed] {
            let ok = cone
                .member_float(&[1.0, 0.0, 0.0, -1.0], &[1.0, 0.0], method, 1e-9)
                .unwrap();
            assert!(ok.member, "{method:?}");
            let bad = cone
                .member_float(&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0], method, 1e-9)
                .unwrap();
            assert!(!bad.member, "{method:?}");
        }
        let bad = cone
            .member_float(&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0], AMethod::Fflp, 1e-9)
            .unwrap();
        assert!(bad.violations.iter().any(|v| v.rendered == "λ1 - λ4 ≥ 2s1"));
    }

    #[test]
    fn s_1_1_rows() {
        let d = s_description(1, 1, OffdiagOptions::default()).unwrap();
        let rows = rendered(&d);
        for expected in [
            "γ1 + γ2 ≥ s1 + t1",
            "γ1 - γ2 ≥ s1 - t1",
            "γ1 - γ2 ≥ -s1 + t1",
        ] {
            assert!(
                rows.iter().any(|r| r == expected),
                "missing {expected}: {rows:?}"
            );
        }
    }

    #[test]
    fn s_membership_examples() {
        let cone = SCone::new(1, 1).unwrap();
        for method in [StMethod::Direct, StMethod::Pullback] {
            let ok = cone
                .member_float(&[2.0, 1.0], &[2.0], &[1.0], method, 1e-9)
                .unwrap();
            assert!(ok.member, "{method:?}");
            let bad = cone
                .member_float(&[2.0, 1.0], &[2.0], &[0.0], method, 1e-9)
                .unwrap();
            assert!(!bad.member, "{method:?}");
        }
    }

    #[test]
    fn t_membership_examples() {
        let cone = TCone::new(1, 1).unwrap();
        for method in [StMethod::Direct, StMethod::Pullback] {
            let ok = cone
                .member_float(&[1.0, 1.0], &[1.0], &[1.0], method, 1e-9)
                .unwrap();
            assert!(ok.member, "{method:?}");
            let bad = cone
                .member_float(&[1.0, 1.0], &[1.0], &[0.0], method, 1e-9)
                .unwrap();
            assert!(!bad.member, "{method:?}");
        }
    }

    #[test]
    fn t_2_1_has_paper_rows() {
        let d = t_description(2, 1, OffdiagOptions::default()).unwrap();
        let rows = rendered(&d);
        for expected in [
            "γ1 ≥ s1",
            "γ2 ≥ s2",
            "γ1 ≥ t1",
            "s1 ≥ γ3",
            "γ1 + γ2 ≥ s1 + t1",
            "γ1 + γ3 ≥ s2 + t1",
            "γ1 - γ3 ≥ s2 - t1",
            "γ1 - γ3 ≥ -s2 + t1",
            "γ1 - γ2 ≥ -s1 + t1",
            "γ1 + γ2 + γ3 ≥ s1 + s2 + t1",
            "γ1 + γ2 - γ3 ≥ s1 - s2 + t1",
            "γ1 + γ2 - γ3 ≥ s1 + s2 - t1",
            "γ1 - γ2 + γ3 ≥ -s1 + s2 + t1",
            "γ1 - γ2 - γ3 ≥ -s1 + s2 - t1",
            "γ1 - γ2 - γ3 ≥ -s1 - s2 + t1",
        ] {
            assert!(
                rows.iter().any(|r| r == expected),
                "missing {expected} in {rows:#?}"
            );
        }
    }

    #[test]
    fn thompson_patterns() {
        let d2 = thompson_rows(2).unwrap();
        assert_eq!(rendered(&d2), vec!["γ1 ≥ s1", "γ2 ≥ s2", "s1 ≥ γ3"]);
        let d3 = thompson_rows(3).unwrap();
        assert_eq!(
            rendered(&d3),
            vec!["γ1 ≥ s1", "γ2 ≥ s2", "γ3 ≥ s3", "s1 ≥ γ3", "s2 ≥ γ4"]
        );
    }
}
