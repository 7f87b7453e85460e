//! Littlewood-Richardson coefficients.
//!
//! `c^λ_{μν}` is computed by counting skew semistandard tableaux of shape
//! `λ/μ` and content `ν` whose reverse reading word is a lattice word. Cells
//! are filled in reverse reading order (each row right-to-left, rows top to
//! bottom) so the lattice condition prunes prefixes as early as possible.
//!
//! [`schur_product_oracle`] re-derives the same coefficients along a fully
//! independent route — monomial expansion of `s_μ · s_ν` followed by
//! triangular elimination against dominance order — and exists purely so the
//! two implementations can be tested against each other.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use crate::combinat::Partition;
use crate::{Error, Result};

/// A memoization key; partitions are stored normalized so the key is
/// canonical.
type Key = (Vec<u32>, Vec<u32>, Vec<u32>);

fn cache() -> &'static RwLock<HashMap<Key, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The Littlewood-Richardson coefficient `c^λ_{μν}`.
///
/// Returns 0 whenever `|λ| ≠ |μ| + |ν|` or `μ ⊄ λ`; no error cases.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() != mu.weight() + nu.weight() || !mu.contained_in(lambda) {
        return 0;
    }
    if nu.is_empty() {
        // λ/μ has no cells left to fill.
        return 1;
    }
    let key: Key = (
        lambda.parts().to_vec(),
        mu.parts().to_vec(),
        nu.parts().to_vec(),
    );
    if let Some(&v) = cache().read().unwrap().get(&key) {
        return v;
    }
    let v = count_lr_tableaux(lambda, mu, nu);
    cache().write().unwrap().insert(key, v);
    v
}

pub fn lr_nonzero(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    lr_coefficient(lambda, mu, nu) != 0
}

pub fn lr_equals_one(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    lr_coefficient(lambda, mu, nu) == 1
}

/// One cell of the skew shape in reverse reading order, with the indices of
/// the already-filled neighbours that constrain it.
struct Cell {
    /// Index into the fill buffer of the cell directly to the right, if any.
    right: Option<usize>,
    /// Index of the cell directly above, if it belongs to the skew shape.
    above: Option<usize>,
}

fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let nrows = lambda.len();
    let nvals = nu.len();

    // Lay out cells in reverse reading order and record neighbour indices.
    let mut cells: Vec<Cell> = Vec::new();
    let mut index_of = HashMap::new(); // (row, col) -> cell index
    for r in 0..nrows {
        let lo = mu.part(r) as usize;
        let hi = lambda.part(r) as usize;
        for c in (lo..hi).rev() {
            let right = if c + 1 < hi { index_of.get(&(r, c + 1)).copied() } else { None };
            let above = if r > 0 && c >= mu.part(r - 1) as usize && c < lambda.part(r - 1) as usize
            {
                index_of.get(&(r - 1, c)).copied()
            } else {
                None
            };
            index_of.insert((r, c), cells.len());
            cells.push(Cell { right, above });
        }
    }

    let mut fill = vec![0u32; cells.len()];
    let mut counts = vec![0u32; nvals + 1];
    let mut total = 0u64;
    backtrack(&cells, nu, 0, &mut fill, &mut counts, &mut total);
    total
}

fn backtrack(
    cells: &[Cell],
    nu: &Partition,
    pos: usize,
    fill: &mut [u32],
    counts: &mut [u32],
    total: &mut u64,
) {
    if pos == cells.len() {
        *total += 1;
        return;
    }
    let cell = &cells[pos];
    let min_v = match cell.above {
        Some(i) => fill[i] + 1,
        None => 1,
    };
    let max_v = match cell.right {
        Some(i) => fill[i],
        None => nu.len() as u32,
    };
    for v in min_v..=max_v {
        let vi = v as usize;
        // Content bound and the lattice condition on the prefix read so far.
        if counts[vi] >= nu.part(vi - 1) {
            continue;
        }
        if v > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        fill[pos] = v;
        backtrack(cells, nu, pos + 1, fill, counts, total);
        counts[vi] -= 1;
    }
}

/// Upper bound on the number of distinct monomials the oracle will hold at
/// any point of an expansion.
pub const DEFAULT_MONOMIAL_LIMIT: usize = 4_000_000;

type Monomials = HashMap<Vec<u32>, i64>;

fn schur_expansion_cache() -> &'static RwLock<HashMap<(Vec<u32>, usize), Monomials>> {
    static CACHE: OnceLock<RwLock<HashMap<(Vec<u32>, usize), Monomials>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Monomial expansion of the Schur polynomial `s_λ(x_1..x_k)` via
/// enumeration of semistandard tableaux of shape `λ` with entries `≤ k`.
fn expand_schur(lambda: &Partition, nvars: usize, limit: usize) -> Result<Monomials> {
    let key = (lambda.parts().to_vec(), nvars);
    if let Some(m) = schur_expansion_cache().read().unwrap().get(&key) {
        return Ok(m.clone());
    }
    if lambda.len() > nvars {
        return Ok(Monomials::new()); // s_λ vanishes in fewer variables
    }
    let mut out = Monomials::new();
    let nrows = lambda.len();
    // Fill row by row, left to right: rows weakly increase, columns strictly.
    let mut rows: Vec<Vec<u32>> = (0..nrows)
        .map(|r| vec![0u32; lambda.part(r) as usize])
        .collect();
    fn rec(
        rows: &mut Vec<Vec<u32>>,
        lambda: &Partition,
        nvars: usize,
        r: usize,
        c: usize,
        out: &mut Monomials,
        limit: usize,
    ) -> Result<()> {
        if r == rows.len() {
            let mut expo = vec![0u32; nvars];
            for row in rows.iter() {
                for &v in row {
                    expo[(v - 1) as usize] += 1;
                }
            }
            *out.entry(expo).or_insert(0) += 1;
            if out.len() > limit {
                return Err(Error::ResourceLimit(limit));
            }
            return Ok(());
        }
        if c == lambda.part(r) as usize {
            return rec(rows, lambda, nvars, r + 1, 0, out, limit);
        }
        let lo = {
            let mut lo = 1u32;
            if c > 0 {
                lo = lo.max(rows[r][c - 1]);
            }
            if r > 0 && c < lambda.part(r - 1) as usize {
                lo = lo.max(rows[r - 1][c] + 1);
            }
            lo
        };
        for v in lo..=nvars as u32 {
            rows[r][c] = v;
            rec(rows, lambda, nvars, r, c + 1, out, limit)?;
        }
        Ok(())
    }
    rec(&mut rows, lambda, nvars, 0, 0, &mut out, limit)?;
    schur_expansion_cache()
        .write()
        .unwrap()
        .insert(key, out.clone());
    Ok(out)
}

fn checked_mul_add(acc: i64, a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or(Error::Overflow("schur product"))
}

/// Expands `s_μ · s_ν` in `num_vars` variables and recovers the coefficient
/// of every `s_λ` by subtracting leading terms in dominance/lex order.
///
/// Independent of [`lr_coefficient`] by construction; their agreement is a
/// test obligation.
pub fn schur_product_oracle(
    mu: &Partition,
    nu: &Partition,
    num_vars: usize,
    limit: usize,
) -> Result<BTreeMap<Partition, i64>> {
    if num_vars < mu.len() + nu.len() {
        return Err(Error::InvalidRange(format!(
            "need at least {} variables to expand the product faithfully",
            mu.len() + nu.len()
        )));
    }
    let pm = expand_schur(mu, num_vars, limit)?;
    let pn = expand_schur(nu, num_vars, limit)?;
    let mut product = Monomials::new();
    for (em, cm) in &pm {
        for (en, cn) in &pn {
            let expo: Vec<u32> = em.iter().zip(en).map(|(a, b)| a + b).collect();
            let slot = product.entry(expo).or_insert(0);
            *slot = checked_mul_add(*slot, *cm, *cn)?;
            if product.len() > limit {
                return Err(Error::ResourceLimit(limit));
            }
        }
    }
    product.retain(|_, c| *c != 0);

    let mut result = BTreeMap::new();
    while !product.is_empty() {
        // For a symmetric polynomial the lex-greatest exponent is weakly
        // decreasing, and no other partition in the support dominates it.
        let lead = product.keys().max().cloned().expect("nonempty");
        let coeff = product[&lead];
        let lambda = Partition::new(lead)?;
        let sl = expand_schur(&lambda, num_vars, limit)?;
        for (e, c) in &sl {
            let slot = product.entry(e.clone()).or_insert(0);
            *slot = checked_mul_add(*slot, -coeff, *c)?;
        }
        product.retain(|_, c| *c != 0);
        result.insert(lambda, coeff);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pieri_rule_cases() {
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[5]), &p(&[1]), &p(&[1])), 0);
    }

    #[test]
    fn coefficient_two() {
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert!(lr_nonzero(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])));
        assert!(!lr_equals_one(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])));
    }

    #[test]
    fn empty_nu_is_kronecker_delta() {
        assert_eq!(lr_coefficient(&p(&[3, 1]), &p(&[3, 1]), &Partition::empty()), 1);
        assert_eq!(lr_coefficient(&p(&[3, 1]), &Partition::empty(), &p(&[3, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[4]), &p(&[3, 1]), &Partition::empty()), 0);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[3, 1]), &Partition::empty()), 0);
    }

    #[test]
    fn oracle_small_products() {
        let r = schur_product_oracle(&p(&[1]), &p(&[1]), 2, DEFAULT_MONOMIAL_LIMIT).unwrap();
        let mut expect = BTreeMap::new();
        expect.insert(p(&[2]), 1);
        expect.insert(p(&[1, 1]), 1);
        assert_eq!(r, expect);

        let r = schur_product_oracle(&p(&[2, 1]), &p(&[2, 1]), 6, DEFAULT_MONOMIAL_LIMIT).unwrap();
        assert_eq!(r[&p(&[3, 2, 1])], 2);

        let lam = p(&[3, 1]);
        let r = schur_product_oracle(&Partition::empty(), &lam, 4, DEFAULT_MONOMIAL_LIMIT).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&lam], 1);
    }

    #[test]
    fn oracle_rejects_too_few_variables() {
        assert!(matches!(
            schur_product_oracle(&p(&[2, 1]), &p(&[1, 1]), 3, DEFAULT_MONOMIAL_LIMIT),
            Err(Error::InvalidRange(_))
        ));
    }

    /// All partitions fitting in a `rows × cols` box, in some fixed order.
    fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        let mut stack = vec![Vec::<u32>::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == rows {
                continue;
            }
            let hi = if cur.is_empty() { cols } else { *cur.last().unwrap() };
            for v in 1..=hi {
                let mut next = cur.clone();
                next.push(v);
                out.push(Partition::new(next.clone()).unwrap());
                stack.push(next);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn tableau_rule_matches_oracle_in_3x3_box() {
        let shapes = partitions_in_box(3, 3);
        assert_eq!(shapes.len(), 20);
        for mu in &shapes {
            for nu in &shapes {
                let nvars = mu.len() + nu.len();
                let prod =
                    schur_product_oracle(mu, nu, nvars.max(1), DEFAULT_MONOMIAL_LIMIT).unwrap();
                // Every λ in the support matches, and every λ off the support
                // has vanishing tableau count.
                for (lam, &c) in &prod {
                    assert!(c > 0);
                    assert_eq!(
                        lr_coefficient(lam, mu, nu),
                        c as u64,
                        "λ={lam} μ={mu} ν={nu}"
                    );
                }
                for lam in partitions_in_box(6, 6) {
                    if lam.weight() == mu.weight() + nu.weight() && !prod.contains_key(&lam) {
                        assert_eq!(lr_coefficient(&lam, mu, nu), 0, "λ={lam} μ={mu} ν={nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_in_mu_nu() {
        // Exhaustive over small weights: c^λ_{μν} = c^λ_{νμ}.
        let shapes = partitions_in_box(4, 4);
        for lam in &shapes {
            for mu in &shapes {
                for nu in &shapes {
                    if mu.weight() + nu.weight() != lam.weight() {
                        continue;
                    }
                    assert_eq!(
                        lr_coefficient(lam, mu, nu),
                        lr_coefficient(lam, nu, mu),
                        "λ={lam} μ={mu} ν={nu}"
                    );
                }
            }
        }
    }
}
