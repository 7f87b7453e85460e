//! Exact rational linear programming and redundancy analysis.
//!
//! A dense two-phase simplex over `BigRational` with Bland's anti-cycling
//! rule; termination is guaranteed and every verdict is exact. On top of it:
//! per-row redundancy tests, greedy minimization of a cone description, and
//! mutual-implication equality of two descriptions. Homogeneous cones are
//! normalized with the box `−1 ≤ x_i ≤ 1`, which keeps every LP bounded
//! without cutting the cone near the origin.

use num::{BigRational, Signed, Zero};

use crate::ineq::{ConeDescription, LinearInequality};
use crate::{Error, Result};

pub type Rat = BigRational;

fn rat(i: i64) -> Rat {
    Rat::from_integer(i.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintRel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub coeffs: Vec<Rat>,
    pub rel: ConstraintRel,
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub struct RationalLp {
    pub goal: Goal,
    pub objective: Vec<Rat>,
    pub constraints: Vec<LpConstraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
    Infeasible,
}

const MAX_PIVOTS: usize = 2_000_000;
const MAX_CELLS: usize = 16_000_000;

struct Tableau {
    ncols: usize,
    rows: Vec<Vec<Rat>>, // each of length ncols + 1, last entry is the rhs
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize, cost_rows: &mut [Vec<Rat>]) -> Result<()> {
        self.pivots += 1;
        if self.pivots > MAX_PIVOTS {
            return Err(Error::SizeLimit(format!("more than {MAX_PIVOTS} pivots")));
        }
        let piv = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][j].clone();
            if factor.is_zero() {
                continue;
            }
            for k in 0..=self.ncols {
                let delta = &factor * &self.rows[r][k];
                self.rows[i][k] -= delta;
            }
        }
        for cost in cost_rows.iter_mut() {
            let factor = cost[j].clone();
            if factor.is_zero() {
                continue;
            }
            for k in 0..=self.ncols {
                let delta = &factor * &self.rows[r][k];
                cost[k] -= delta;
            }
        }
        self.basis[r] = j;
        Ok(())
    }

    /// One simplex phase minimizing the reduced-cost row `cost`, restricted
    /// to entering columns `< allowed`. Returns false on unboundedness.
    fn run(&mut self, cost_index: usize, costs: &mut [Vec<Rat>], allowed: usize) -> Result<bool> {
        loop {
            // Bland: smallest improving column.
            let entering = (0..allowed).find(|&j| costs[cost_index][j].is_negative());
            let Some(j) = entering else {
                return Ok(true);
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = &self.rows[i][self.ncols] / a;
                    let better = match &leave {
                        None => true,
                        Some((cur, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*cur])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, j, costs)?;
        }
    }
}

/// Exact two-phase simplex. Free variables are split into differences of
/// non-negative ones internally.
pub fn lp_solve(lp: &RationalLp) -> Result<LpOutcome> {
    let nvars = lp.objective.len();
    for c in &lp.constraints {
        if c.coeffs.len() != nvars {
            return Err(Error::DimensionMismatch(
                "constraint length differs from objective".into(),
            ));
        }
    }
    let m = lp.constraints.len();
    let n_ineq = lp
        .constraints
        .iter()
        .filter(|c| c.rel != ConstraintRel::Eq)
        .count();
    let ncols = 2 * nvars + n_ineq + m; // structural split + slack/surplus + artificials
    if (m + 2) * (ncols + 1) > MAX_CELLS {
        return Err(Error::SizeLimit(format!(
            "tableau of {} x {} cells",
            m + 2,
            ncols + 1
        )));
    }

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    let mut slack_cursor = 2 * nvars;
    let art_base = 2 * nvars + n_ineq;
    let mut art_rows: Vec<usize> = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        let flip = c.rhs.is_negative();
        let sign = if flip { -rat(1) } else { rat(1) };
        for (k, a) in c.coeffs.iter().enumerate() {
            let v = &sign * a;
            row[k] = v.clone();
            row[nvars + k] = -v;
        }
        row[ncols] = &sign * &c.rhs;
        let rel = match (c.rel, flip) {
            (ConstraintRel::Eq, _) => ConstraintRel::Eq,
            (ConstraintRel::Le, false) | (ConstraintRel::Ge, true) => ConstraintRel::Le,
            (ConstraintRel::Ge, false) | (ConstraintRel::Le, true) => ConstraintRel::Ge,
        };
        match rel {
            ConstraintRel::Le => {
                row[slack_cursor] = rat(1);
                basis[i] = slack_cursor;
                slack_cursor += 1;
            }
            ConstraintRel::Ge => {
                row[slack_cursor] = -rat(1);
                slack_cursor += 1;
                row[art_base + i] = rat(1);
                basis[i] = art_base + i;
                art_rows.push(i);
            }
            ConstraintRel::Eq => {
                row[art_base + i] = rat(1);
                basis[i] = art_base + i;
                art_rows.push(i);
            }
        }
        rows.push(row);
    }

    let mut tab = Tableau { ncols, rows, basis, pivots: 0 };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rat::zero(); ncols + 1];
    for j in art_base..art_base + m {
        phase1[j] = rat(1);
    }
    // Phase 2 cost in minimization form.
    let mut phase2 = vec![Rat::zero(); ncols + 1];
    for (k, c) in lp.objective.iter().enumerate() {
        let v = match lp.goal {
            Goal::Minimize => c.clone(),
            Goal::Maximize => -c.clone(),
        };
        phase2[k] = v.clone();
        phase2[nvars + k] = -v;
    }
    // Reduce both cost rows against the initial basis.
    for &r in &art_rows {
        let row = tab.rows[r].clone();
        for k in 0..=ncols {
            let d = &row[k];
            phase1[k] -= d;
        }
    }
    let mut costs = vec![phase1, phase2];
    if !tab.run(0, &mut costs, ncols)? {
        // Phase-1 objective is bounded below by zero.
        unreachable!("phase 1 cannot be unbounded");
    }
    let phase1_value = -costs[0][ncols].clone();
    if phase1_value.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive remaining artificials out of the basis or drop their rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= art_base {
            let pivot_col = (0..art_base).find(|&j| !tab.rows[r][j].is_zero());
            match pivot_col {
                Some(j) => tab.pivot(r, j, &mut costs)?,
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    if !tab.run(1, &mut costs, art_base)? {
        return Ok(LpOutcome::Unbounded);
    }
    let min_value = -costs[1][tab.ncols].clone();
    let value = match lp.goal {
        Goal::Minimize => min_value,
        Goal::Maximize => -min_value,
    };
    let mut split = vec![Rat::zero(); 2 * nvars];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < 2 * nvars {
            split[b] = tab.rows[i][tab.ncols].clone();
        }
    }
    let point: Vec<Rat> = (0..nvars)
        .map(|k| &split[k] - &split[nvars + k])
        .collect();
    Ok(LpOutcome::Optimal { value, point })
}

/// Constraint system of a description plus the normalization box.
fn cone_system(desc: &ConeDescription, skip_inequality: Option<usize>) -> (usize, Vec<LpConstraint>) {
    let dim = desc.dim();
    let mut sys = Vec::new();
    for (i, row) in desc.inequalities.iter().enumerate() {
        if Some(i) == skip_inequality {
            continue;
        }
        sys.push(LpConstraint {
            coeffs: row.coeffs.iter().map(|&c| rat(c)).collect(),
            rel: ConstraintRel::Ge,
            rhs: Rat::zero(),
        });
    }
    for row in &desc.equalities {
        sys.push(LpConstraint {
            coeffs: row.coeffs.iter().map(|&c| rat(c)).collect(),
            rel: ConstraintRel::Eq,
            rhs: Rat::zero(),
        });
    }
    for k in 0..dim {
        let mut up = vec![Rat::zero(); dim];
        up[k] = rat(1);
        sys.push(LpConstraint { coeffs: up.clone(), rel: ConstraintRel::Le, rhs: rat(1) });
        up[k] = rat(1);
        sys.push(LpConstraint { coeffs: up, rel: ConstraintRel::Ge, rhs: -rat(1) });
    }
    (dim, sys)
}

/// Proof attached to a redundancy verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum RedundancyCertificate {
    /// The row's minimum over the remaining system (non-negative: implied).
    ImpliedWithMargin { min_value: Rat },
    /// A point of the remaining system where the row goes negative.
    Witness { point: Vec<Rat>, value: Rat },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyVerdict {
    pub redundant: bool,
    pub certificate: RedundancyCertificate,
}

/// Whether inequality `index` is implied by the rest of the description.
pub fn is_redundant(desc: &ConeDescription, index: usize) -> Result<RedundancyVerdict> {
    if index >= desc.inequalities.len() {
        return Err(Error::InvalidRange(format!(
            "row {index} out of {}",
            desc.inequalities.len()
        )));
    }
    let (dim, sys) = cone_system(desc, Some(index));
    let objective: Vec<Rat> = desc.inequalities[index]
        .coeffs
        .iter()
        .map(|&c| rat(c))
        .collect();
    debug_assert_eq!(objective.len(), dim);
    let outcome = lp_solve(&RationalLp {
        goal: Goal::Minimize,
        objective,
        constraints: sys,
    })?;
    match outcome {
        LpOutcome::Optimal { value, point } => {
            if value.is_negative() {
                Ok(RedundancyVerdict {
                    redundant: false,
                    certificate: RedundancyCertificate::Witness { point, value },
                })
            } else {
                Ok(RedundancyVerdict {
                    redundant: true,
                    certificate: RedundancyCertificate::ImpliedWithMargin { min_value: value },
                })
            }
        }
        // The origin is feasible and the box bounds everything.
        _ => unreachable!("boxed cone LP is feasible and bounded"),
    }
}

#[derive(Debug, Clone)]
pub struct MinimizationReport {
    /// Indices into the original inequality list that survived.
    pub kept: Vec<usize>,
    /// Dropped indices with their certificates.
    pub dropped: Vec<(usize, RedundancyCertificate)>,
}

/// Greedy sequential removal with re-testing; the output keeps the original
/// row order and is irredundant.
pub fn minimize_description(desc: &ConeDescription) -> Result<(ConeDescription, MinimizationReport)> {
    let mut current = desc.clone();
    let mut alive: Vec<usize> = (0..desc.inequalities.len()).collect();
    let mut report = MinimizationReport { kept: Vec::new(), dropped: Vec::new() };
    let mut i = 0;
    while i < current.inequalities.len() {
        let verdict = is_redundant(&current, i)?;
        if verdict.redundant {
            report.dropped.push((alive[i], verdict.certificate));
            current.inequalities.remove(i);
            alive.remove(i);
        } else {
            i += 1;
        }
    }
    report.kept = alive;
    Ok((current, report))
}

/// Result of comparing two descriptions.
#[derive(Debug, Clone, PartialEq)]
pub enum ConesEqualOutcome {
    Equal,
    /// A rational point inside one cone violating a row of the other.
    Unequal {
        witness: Vec<Rat>,
        violated_row: String,
        /// True when the witness lies in the first cone.
        witness_in_first: bool,
    },
}

fn contained_in(
    inner: &ConeDescription,
    outer: &ConeDescription,
    inner_is_first: bool,
) -> Result<Option<ConesEqualOutcome>> {
    let (_, sys) = cone_system(inner, None);
    let mut rows: Vec<(Vec<Rat>, String)> = Vec::new();
    for row in &outer.inequalities {
        rows.push((
            row.coeffs.iter().map(|&c| rat(c)).collect(),
            outer.render_row(row),
        ));
    }
    for row in &outer.equalities {
        let coeffs: Vec<Rat> = row.coeffs.iter().map(|&c| rat(c)).collect();
        let negated: Vec<Rat> = coeffs.iter().map(|c| -c.clone()).collect();
        rows.push((coeffs, outer.render_row(row)));
        rows.push((negated, outer.render_row(row)));
    }
    for (objective, label) in rows {
        let outcome = lp_solve(&RationalLp {
            goal: Goal::Minimize,
            objective,
            constraints: sys.clone(),
        })?;
        match outcome {
            LpOutcome::Optimal { value, point } => {
                if value.is_negative() {
                    return Ok(Some(ConesEqualOutcome::Unequal {
                        witness: point,
                        violated_row: label,
                        witness_in_first: inner_is_first,
                    }));
                }
            }
            _ => unreachable!("boxed cone LP is feasible and bounded"),
        }
    }
    Ok(None)
}

/// Mutual implication of two descriptions over the same block dimensions.
pub fn cones_equal(d1: &ConeDescription, d2: &ConeDescription) -> Result<ConesEqualOutcome> {
    if d1.block_dims() != d2.block_dims() {
        return Err(Error::DimensionMismatch(format!(
            "block dims {:?} vs {:?}",
            d1.block_dims(),
            d2.block_dims()
        )));
    }
    if let Some(out) = contained_in(d1, d2, true)? {
        return Ok(out);
    }
    if let Some(out) = contained_in(d2, d1, false)? {
        return Ok(out);
    }
    Ok(ConesEqualOutcome::Equal)
}

/// Samples vertices of the boxed cone by maximizing random objectives.
pub fn sample_cone_points(desc: &ConeDescription, objectives: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let (_, sys) = cone_system(desc, None);
    let mut out = Vec::new();
    for obj in objectives {
        let outcome = lp_solve(&RationalLp {
            goal: Goal::Maximize,
            objective: obj.iter().map(|&c| rat(c)).collect(),
            constraints: sys.clone(),
        })?;
        if let LpOutcome::Optimal { point, .. } = outcome {
            out.push(point);
        }
    }
    Ok(out)
}

/// Evaluates one description row at a rational point.
pub fn row_value(row: &LinearInequality, point: &[Rat]) -> Rat {
    row.coeffs
        .iter()
        .zip(point)
        .map(|(&c, x)| rat(c) * x)
        .fold(Rat::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ineq::{Block, BlockKind};

    fn c(v: &[i64], rel: ConstraintRel, rhs: i64) -> LpConstraint {
        LpConstraint {
            coeffs: v.iter().map(|&x| rat(x)).collect(),
            rel,
            rhs: rat(rhs),
        }
    }

    #[test]
    fn solve_bounded() {
        let lp = RationalLp {
            goal: Goal::Maximize,
            objective: vec![rat(1)],
            constraints: vec![c(&[1], ConstraintRel::Le, 1), c(&[1], ConstraintRel::Ge, 0)],
        };
        match lp_solve(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(1));
                assert_eq!(point, vec![rat(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_unbounded() {
        let lp = RationalLp {
            goal: Goal::Maximize,
            objective: vec![rat(1)],
            constraints: vec![c(&[1], ConstraintRel::Ge, 0)],
        };
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn solve_infeasible() {
        let lp = RationalLp {
            goal: Goal::Maximize,
            objective: vec![rat(1)],
            constraints: vec![c(&[1], ConstraintRel::Ge, 1), c(&[1], ConstraintRel::Le, 0)],
        };
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn solve_2d_vertex() {
        // max x + y st x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), 14/5
        let lp = RationalLp {
            goal: Goal::Maximize,
            objective: vec![rat(1), rat(1)],
            constraints: vec![
                c(&[1, 2], ConstraintRel::Le, 4),
                c(&[3, 1], ConstraintRel::Le, 6),
                c(&[1, 0], ConstraintRel::Ge, 0),
                c(&[0, 1], ConstraintRel::Ge, 0),
            ],
        };
        match lp_solve(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, Rat::new(14.into(), 5.into()));
                assert_eq!(point[0], Rat::new(8.into(), 5.into()));
                assert_eq!(point[1], Rat::new(6.into(), 5.into()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn optimal_point_satisfies_constraints_exactly() {
        let lp = RationalLp {
            goal: Goal::Minimize,
            objective: vec![rat(3), rat(-2), rat(1)],
            constraints: vec![
                c(&[1, 1, 1], ConstraintRel::Eq, 2),
                c(&[1, -1, 0], ConstraintRel::Ge, -1),
                c(&[0, 1, 2], ConstraintRel::Le, 3),
                c(&[1, 0, 0], ConstraintRel::Ge, -2),
                c(&[0, 1, 0], ConstraintRel::Le, 2),
                c(&[0, 1, 0], ConstraintRel::Ge, -2),
                c(&[0, 0, 1], ConstraintRel::Le, 2),
                c(&[0, 0, 1], ConstraintRel::Ge, -2),
                c(&[1, 0, 0], ConstraintRel::Le, 2),
            ],
        };
        let LpOutcome::Optimal { value, point } = lp_solve(&lp).unwrap() else {
            panic!("expected optimum");
        };
        for cst in &lp.constraints {
            let lhs: Rat = cst
                .coeffs
                .iter()
                .zip(&point)
                .map(|(a, x)| a * x)
                .fold(Rat::zero(), |a, b| a + b);
            match cst.rel {
                ConstraintRel::Le => assert!(lhs <= cst.rhs),
                ConstraintRel::Ge => assert!(lhs >= cst.rhs),
                ConstraintRel::Eq => assert_eq!(lhs, cst.rhs),
            }
        }
        let obj: Rat = lp
            .objective
            .iter()
            .zip(&point)
            .map(|(a, x)| a * x)
            .fold(Rat::zero(), |a, b| a + b);
        assert_eq!(obj, value);
    }

    fn plane_desc(rows: &[Vec<i64>]) -> ConeDescription {
        let dim = rows[0].len();
        let mut d = ConeDescription::new(
            "test",
            vec![Block::new("x", dim, BlockKind::Decreasing)],
        );
        for r in rows {
            d.push_ge(r.clone(), None);
        }
        d
    }

    #[test]
    fn redundancy_examples() {
        // {x ≥ 0, y ≥ 0, x + y ≥ 0}: the third row is implied.
        let d = plane_desc(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(is_redundant(&d, 2).unwrap().redundant);
        assert!(!is_redundant(&d, 0).unwrap().redundant);
        let v = is_redundant(&d, 0).unwrap();
        match v.certificate {
            RedundancyCertificate::Witness { ref point, ref value } => {
                assert!(value.is_negative());
                assert!(point[0].is_negative());
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn minimize_drops_duplicates_once() {
        let d = plane_desc(&[vec![1, 0], vec![1, 0], vec![0, 1]]);
        let (min, report) = minimize_description(&d).unwrap();
        assert_eq!(min.inequalities.len(), 2);
        assert_eq!(report.dropped.len(), 1);
        assert_eq!(report.dropped[0].0, 0);
        assert_eq!(report.kept, vec![1, 2]);
    }

    #[test]
    fn minimize_keeps_already_minimal() {
        let d = plane_desc(&[vec![1, 0], vec![0, 1]]);
        let (_, report) = minimize_description(&d).unwrap();
        assert!(report.dropped.is_empty());
    }

    #[test]
    fn cones_equal_basic() {
        let d1 = plane_desc(&[vec![1, 0], vec![0, 1]]);
        let d2 = plane_desc(&[vec![1, 0], vec![0, 1], vec![2, 3]]);
        assert_eq!(cones_equal(&d1, &d1).unwrap(), ConesEqualOutcome::Equal);
        assert_eq!(cones_equal(&d1, &d2).unwrap(), ConesEqualOutcome::Equal);
        let d3 = plane_desc(&[vec![1, 0]]);
        match cones_equal(&d1, &d3).unwrap() {
            ConesEqualOutcome::Unequal { witness, witness_in_first, .. } => {
                // d3 is larger: the witness lives in d3 and violates a d1 row.
                assert!(!witness_in_first);
                assert!(witness[1].is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimization_order_independent_cone() {
        let rows = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![1, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![2, 1, 0],
        ];
        let d1 = plane_desc(&rows);
        let mut rev = rows.clone();
        rev.reverse();
        let d2 = plane_desc(&rev);
        let (m1, _) = minimize_description(&d1).unwrap();
        let (m2, _) = minimize_description(&d2).unwrap();
        assert_eq!(cones_equal(&m1, &m2).unwrap(), ConesEqualOutcome::Equal);
    }

    #[test]
    fn dropped_rows_hold_on_sampled_points() {
        let rows = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 2, 3],
            vec![1, 1, 0],
        ];
        let d = plane_desc(&rows);
        let (min, report) = minimize_description(&d).unwrap();
        let objectives: Vec<Vec<i64>> = vec![
            vec![1, 1, 1],
            vec![-1, 2, 0],
            vec![3, -1, 2],
            vec![0, 0, -1],
            vec![5, 1, -2],
        ];
        let points = sample_cone_points(&min, &objectives).unwrap();
        assert!(!points.is_empty());
        for p in &points {
            for (idx, _) in &report.dropped {
                let v = row_value(&d.inequalities[*idx], p);
                assert!(!v.is_negative(), "dropped row {idx} negative at {p:?}");
            }
        }
    }
}
