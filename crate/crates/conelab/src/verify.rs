//! Random-matrix necessity harness: sample matrices, compute the spectral
//! tuple of a cone and check membership at a tolerance. Every theorem in
//! scope says the tuple must pass; the harness reports the worst slack seen.

use crate::exec::{map_indexed, ExecMode};
use crate::horn::HornCone;
use crate::lrmn::LrmnCone;
use crate::matrix::{eigenvalues, sample_ginibre, sample_gue, singular_values};
use crate::offdiag::{ACone, AMethod, SCone, StMethod, TCone};
use crate::{Error, Result};

/// Which cone the harness exercises, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeId {
    Horn { n: usize },
    Lrmn { m: usize, n: usize },
    A { p: usize, q: usize },
    S { p: usize, q: usize },
    T { p: usize, q: usize },
}

impl std::fmt::Display for ConeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConeId::Horn { n } => write!(f, "Horn({n})"),
            ConeId::Lrmn { m, n } => write!(f, "LR({m},{n})"),
            ConeId::A { p, q } => write!(f, "A({p},{q})"),
            ConeId::S { p, q } => write!(f, "S({p},{q})"),
            ConeId::T { p, q } => write!(f, "T({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub cone: ConeId,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub mode: ExecMode,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub cone: String,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest inequality slack over all samples and rows.
    pub min_slack: f64,
    /// Largest equality residual over all samples.
    pub max_eq_residual: f64,
    /// Sample indices that failed, capped at a handful for reporting.
    pub failures: Vec<usize>,
}

enum Checker {
    Horn(HornCone),
    Lrmn(LrmnCone, usize, usize),
    A(ACone, usize, usize),
    S(SCone, usize, usize),
    T(TCone, usize, usize),
}

struct SampleOutcome {
    member: bool,
    min_slack: f64,
    max_eq_residual: f64,
}

impl Checker {
    fn new(cone: ConeId) -> Result<Self> {
        match cone {
            ConeId::Horn { n } => Ok(Checker::Horn(HornCone::new(n)?)),
            ConeId::Lrmn { m, n } => Ok(Checker::Lrmn(LrmnCone::new(m, n)?, m, n)),
            ConeId::A { p, q } => Ok(Checker::A(ACone::new(p, q)?, p, q)),
            ConeId::S { p, q } => Ok(Checker::S(SCone::new(p, q)?, p, q)),
            ConeId::T { p, q } => Ok(Checker::T(TCone::new(p, q)?, p, q)),
        }
    }

    fn run_sample(&self, seed: u64, index: usize, tol: f64) -> Result<SampleOutcome> {
        let report = match self {
            Checker::Horn(cone) => {
                let n = cone.n();
                let x = sample_gue(n, seed, 2 * index as u64);
                let y = sample_gue(n, seed, 2 * index as u64 + 1);
                let ex = eigenvalues(&x)?;
                let ey = eigenvalues(&y)?;
                let exy = eigenvalues(&x.add(&y)?)?;
                cone.member_float(&ex, &ey, &exy, tol)?
            }
            Checker::Lrmn(cone, m, n) => {
                let h = sample_gue(m + n, seed, index as u64);
                let (hi, hii) = h.diagonal_blocks(*m, *n)?;
                cone.member_float(
                    &eigenvalues(&h)?,
                    &eigenvalues(&hi)?,
                    &eigenvalues(&hii)?,
                    tol,
                )?
            }
            Checker::A(cone, p, q) => {
                let h = sample_gue(p + q, seed, index as u64);
                let (_, x12, _, _) = h.as_matrix().blocks(*p, *q)?;
                cone.member_float(
                    &eigenvalues(&h)?,
                    &singular_values(&x12)?,
                    AMethod::Fflp,
                    tol,
                )?
            }
            Checker::S(cone, p, q) => {
                let n = p + q;
                let x = sample_ginibre(n, n, seed, index as u64);
                let (_, x12, x21, _) = x.blocks(*p, *q)?;
                cone.member_float(
                    &singular_values(&x)?,
                    &singular_values(&x12)?,
                    &singular_values(&x21)?,
                    StMethod::Direct,
                    tol,
                )?
            }
            Checker::T(cone, p, q) => {
                let n = p + q;
                let x = sample_ginibre(n, n, seed, index as u64);
                let (x11, _, _, x22) = x.blocks(*p, *q)?;
                cone.member_float(
                    &singular_values(&x)?,
                    &singular_values(&x11)?,
                    &singular_values(&x22)?,
                    StMethod::Direct,
                    tol,
                )?
            }
        };
        Ok(SampleOutcome {
            member: report.member,
            min_slack: report.min_slack.unwrap_or(f64::INFINITY),
            max_eq_residual: report.max_eq_residual.unwrap_or(0.0),
        })
    }
}

/// Runs the harness; deterministic in `(cone, samples, seed, tol)`,
/// regardless of execution mode.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::InvalidRange("need at least one sample".into()));
    }
    let checker = Checker::new(cfg.cone)?;
    let outcomes = map_indexed(cfg.mode, cfg.samples, |i| {
        checker.run_sample(cfg.seed, i, cfg.tol)
    });
    let mut report = VerifyReport {
        cone: cfg.cone.to_string(),
        samples: cfg.samples,
        passed: 0,
        failed: 0,
        min_slack: f64::INFINITY,
        max_eq_residual: 0.0,
        failures: Vec::new(),
    };
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let o = outcome?;
        if o.member {
            report.passed += 1;
        } else {
            report.failed += 1;
            if report.failures.len() < 8 {
                report.failures.push(i);
            }
        }
        report.min_slack = report.min_slack.min(o.min_slack);
        report.max_eq_residual = report.max_eq_residual.max(o.max_eq_residual);
    }
    Ok(report)
}
