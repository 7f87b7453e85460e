//! Dense complex linear algebra for the verification harness: Hermitian
//! eigenvalues via cyclic Jacobi, singular values through the Gram matrix,
//! seedable Gaussian ensembles, block extraction and the augmentation /
//! permutation constructions the cones are built from.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::Parse(format!("non-finite entry at ({i},{j})")));
                }
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, by: f64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= by;
        }
        out
    }

    /// Contiguous sub-block of size `h × w` with top-left corner `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Result<Self> {
        if r0 + h > self.rows || c0 + w > self.cols {
            return Err(Error::DimensionMismatch("submatrix out of range".into()));
        }
        ComplexMatrix::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Copy with row `i` and column `j` removed (0-indexed).
    pub fn delete_row_col(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::DimensionMismatch("delete index out of range".into()));
        }
        ComplexMatrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self[(rr, cc)]
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The four blocks of a square matrix split as `p + q`.
    pub fn blocks(&self, p: usize, q: usize) -> Result<(Self, Self, Self, Self)> {
        if self.rows != self.cols || p + q != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "split {p}+{q} of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((
            self.submatrix(0, 0, p, p)?,
            self.submatrix(0, p, p, q)?,
            self.submatrix(p, 0, q, p)?,
            self.submatrix(p, p, q, q)?,
        ))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Hermitian matrix; the constructor symmetrizes so the stored entries
/// satisfy `a_ij = conj(a_ji)` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Builds `(A + A*)/2` from an arbitrary square matrix.
    pub fn symmetrize(a: &ComplexMatrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch("hermitian from non-square".into()));
        }
        let n = a.rows();
        let mut inner = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            inner[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
            for j in i + 1..n {
                let v = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
                inner[(i, j)] = v;
                inner[(j, i)] = v.conj();
            }
        }
        Ok(Self { inner })
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let mut inner = ComplexMatrix::zeros(n, n);
        for (i, &v) in d.iter().enumerate() {
            inner[(i, i)] = Complex64::new(v, 0.0);
        }
        Self { inner }
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.add(&other.inner)? })
    }

    /// Leading `m × m` and trailing `n × n` diagonal blocks.
    pub fn diagonal_blocks(&self, m: usize, n: usize) -> Result<(Self, Self)> {
        if m + n != self.n() {
            return Err(Error::DimensionMismatch("diagonal block split".into()));
        }
        Ok((
            Self { inner: self.inner.submatrix(0, 0, m, m)? },
            Self { inner: self.inner.submatrix(m, m, n, n)? },
        ))
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and a unitary matrix of column eigenvectors,
/// computed by cyclic Jacobi with complex rotations. Convergence: the
/// off-diagonal Frobenius norm drops below `1e-13 · ‖H‖_F`.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.n();
    let mut b = h.inner.clone();
    let mut v = ComplexMatrix::identity(n);
    if n <= 1 {
        let vals = (0..n).map(|i| b[(i, i)].re).collect();
        return Ok((vals, v));
    }
    let norm = b.frobenius_norm();
    let target = 1e-13 * norm;
    let mut converged = norm == 0.0;
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let z = b[(p, q)];
                if z.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = z / z.norm();
                let tau = (b[(q, q)].re - b[(p, p)].re) / (2.0 * z.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = [[c, s], [−s·conj(phase), c·conj(phase)]] on (p,q).
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                for i in 0..n {
                    let bip = b[(i, p)];
                    let biq = b[(i, q)];
                    b[(i, p)] = bip * c + biq * jqp;
                    b[(i, q)] = bip * s + biq * jqq;
                }
                for j in 0..n {
                    let bpj = b[(p, j)];
                    let bqj = b[(q, j)];
                    b[(p, j)] = bpj * c + bqj * jqp.conj();
                    b[(q, j)] = bpj * s + bqj * jqq.conj();
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * jqp;
                    v[(i, q)] = vip * s + viq * jqq;
                }
            }
        }
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += b[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= target {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| b[(i, i)].re).collect();
    order.sort_by(|&a, &bb| vals[bb].partial_cmp(&vals[a]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let sorted_vecs = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])])?;
    Ok((sorted_vals, sorted_vecs))
}

/// Eigenvalues only, descending.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(eig_hermitian(h)?.0)
}

/// Singular values of a rectangular matrix, descending, length `min(m,n)`:
/// square roots of the eigenvalues of `X·X*`, clamped at zero.
pub fn singular_values(x: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = HermitianMatrix::symmetrize(&x.mul(&x.conj_transpose())?)?;
    let vals = eigenvalues(&gram)?;
    let l = x.rows().min(x.cols());
    Ok(vals.into_iter().take(l).map(|v| v.max(0.0).sqrt()).collect())
}

/// The augmented Hermitian matrix `[[0, Y], [Y*, 0]]` of size `p+q`.
pub fn augment(y: &ComplexMatrix) -> HermitianMatrix {
    let (p, q) = (y.rows(), y.cols());
    let n = p + q;
    let mut inner = ComplexMatrix::zeros(n, n);
    for i in 0..p {
        for j in 0..q {
            inner[(i, p + j)] = y[(i, j)];
            inner[(p + j, i)] = y[(i, j)].conj();
        }
    }
    HermitianMatrix { inner }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One standard normal via Box-Muller; two uniforms per call keep the
/// stream layout independent of platform libm quirks.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // in (0, 1]
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re = standard_normal(rng) / std::f64::consts::SQRT_2;
    let im = standard_normal(rng) / std::f64::consts::SQRT_2;
    Complex64::new(re, im)
}

/// Ginibre sample: iid standard complex Gaussian entries, deterministic in
/// `(seed, stream)`.
pub fn sample_ginibre(m: usize, n: usize, seed: u64, stream: u64) -> ComplexMatrix {
    let mut rng = rng_for(seed, stream);
    let mut out = ComplexMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            out[(i, j)] = standard_complex(&mut rng);
        }
    }
    out
}

/// GUE sample `(G + G*)/2` with `G` Ginibre.
pub fn sample_gue(n: usize, seed: u64, stream: u64) -> HermitianMatrix {
    let g = sample_ginibre(n, n, seed, stream);
    HermitianMatrix::symmetrize(&g).expect("square by construction")
}

/// A Haar-ish random unitary from modified Gram-Schmidt on a Ginibre sample.
pub fn random_unitary(n: usize, seed: u64, stream: u64) -> ComplexMatrix {
    let g = sample_ginibre(n, n, seed, stream);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let dot: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let d = dot * cols[k][i];
                cols[j][i] -= d;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            out[(i, j)] = cols[j][i];
        }
    }
    out
}

/// The block-swap permutation on `[2n]` used to align an augmented matrix
/// with its off-diagonal blocks: fixes `1..p`, shifts `p+1..n+p` up by `q`,
/// and wraps the tail down by `n`. Returned as 1-indexed images `τ(k)`.
pub fn tau_permutation(p: usize, q: usize) -> Result<Vec<usize>> {
    if q == 0 || p < q {
        return Err(Error::InvalidRange(format!("need p >= q >= 1, got ({p},{q})")));
    }
    let n = p + q;
    let tau = (1..=2 * n)
        .map(|k| {
            if k <= p {
                k
            } else if k <= n + p {
                k + q
            } else {
                k - n
            }
        })
        .collect();
    Ok(tau)
}

/// Permutation matrix `P` with `(P x)_{τ(k)} = x_k`.
pub fn permutation_matrix(tau: &[usize]) -> ComplexMatrix {
    let n = tau.len();
    let mut p = ComplexMatrix::zeros(n, n);
    for (k, &img) in tau.iter().enumerate() {
        p[(img - 1, k)] = Complex64::new(1.0, 0.0);
    }
    p
}

/// Hermitian fixture with `Diag(t)` in the off corners and zeros elsewhere;
/// its spectrum is the hatted extension of `t`.
pub fn corner_diag_matrix(t: &[f64], p: usize, q: usize) -> Result<HermitianMatrix> {
    if p < q || t.len() != q {
        return Err(Error::InvalidRange("corner fixture needs p >= q = len(t)".into()));
    }
    let n = p + q;
    let mut inner = ComplexMatrix::zeros(n, n);
    for (i, &v) in t.iter().enumerate() {
        inner[(i, p + i)] = Complex64::new(v, 0.0);
        inner[(p + i, i)] = Complex64::new(v, 0.0);
    }
    Ok(HermitianMatrix { inner })
}
