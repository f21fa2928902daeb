//! Dense linear algebra kernel.
//!
//! Everything here works on small, dense, real matrices (a few hundred rows
//! at most). The symmetric eigensolver is cyclic Jacobi, singular values and
//! kernels come from one-sided (Hestenes) Jacobi, and rank-one eigenvalue
//! updates have two independent routes: a direct eigensolve of `A + v vᵗ`
//! and the secular equation built from the spectrum of `A`.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights of the secular function below this value are treated as zero.
pub const ZERO_WEIGHT: f64 = 1e-14;
/// Relative singular-value cutoff used for every numerical rank decision.
pub const RANK_TOL: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Row-major dense real matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "matrix must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::Validation(format!(
                "entry ({}, {}) is not finite",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows have unequal lengths".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from a function of `(row, col)`.
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot subtract {:?} from {:?}",
                other.shape(),
                self.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// `AᵗA`, computed on the upper triangle and mirrored so the result is
    /// exactly symmetric.
    pub fn gram(&self) -> Self {
        let cols: Vec<Vec<f64>> = (0..self.cols).map(|j| self.column(j)).collect();
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = dot(&cols[i], &cols[j]);
                g.data[i * n + j] = v;
                g.data[j * n + i] = v;
            }
        }
        g
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        assert!(!idx.is_empty(), "column selection must be nonempty");
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        assert!(!idx.is_empty(), "row selection must be nonempty");
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        norm2(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_symmetric(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let tol = 1e-12 * self.max_abs();
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if (self[(i, j)] - self[(j, i)]).abs() > tol {
                    return Err(Error::Shape(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm1(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Eigendecomposition of a symmetric matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: DenseMatrix,
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps all `(p, q)` pairs until the off-diagonal Frobenius norm drops to
/// `1e-12·‖A‖_F`.
pub fn sym_eig(a: &DenseMatrix) -> Result<SymEig> {
    a.check_symmetric()?;
    let n = a.rows;
    let mut m = a.clone();
    let mut v = DenseMatrix::identity(n);
    let target = JACOBI_TOL * a.frobenius();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * kp - s * kq;
                    m[(k, q)] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * pk - s * qk;
                    m[(q, k)] = s * pk + c * qk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let (kp, kq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * kp - s * kq;
                    v[(k, q)] = s * kp + c * kq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    Ok(SymEig {
        eigenvalues: order.iter().map(|&i| m[(i, i)]).collect(),
        eigenvectors: DenseMatrix::from_fn(n, n, |i, j| v[(i, order[j])]),
    })
}

fn off_diagonal_norm(m: &DenseMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// One-sided Jacobi on the columns of `a`: returns the column norms of `a·V`
/// (one "singular value" per column, descending) and the orthogonal `V`.
fn hestenes(a: &DenseMatrix) -> (Vec<f64>, DenseMatrix) {
    let n = a.cols;
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = dot(&u[i], &u[i]);
                let beta = dot(&u[j], &u[j]);
                let gamma = dot(&u[i], &u[j]);
                if alpha == 0.0 || beta == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                rotate_pair(&mut u, i, j, c, s);
                rotate_pair(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = u.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let sorted = order.iter().map(|&k| sigma[k]).collect();
    let vmat = DenseMatrix::from_fn(n, n, |r, c| v[order[c]][r]);
    (sorted, vmat)
}

fn rotate_pair(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(j);
    let (ci, cj) = (&mut left[i], &mut right[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Singular values `σ₁ ≥ … ≥ σ_min(rows, cols) ≥ 0`.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    if a.rows >= a.cols {
        hestenes(a).0
    } else {
        hestenes(&a.transpose()).0
    }
}

/// Operator (spectral) norm `σ_max(A)`.
pub fn op_norm(a: &DenseMatrix) -> f64 {
    singular_values(a)[0]
}

/// Numerical rank with cutoff `σ_k > 1e-10·σ_max`.
pub fn rank(a: &DenseMatrix) -> usize {
    let sv = singular_values(a);
    let cutoff = RANK_TOL * sv[0];
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis of `{h : A h = 0}` as the columns of a `cols × d`
/// matrix, or `None` when the kernel is trivial.
pub fn kernel_basis(a: &DenseMatrix) -> Option<DenseMatrix> {
    let (sigma, v) = hestenes(a);
    let cutoff = RANK_TOL * sigma[0];
    let kernel: Vec<usize> = (0..a.cols).filter(|&k| sigma[k] <= cutoff).collect();
    if kernel.is_empty() {
        None
    } else {
        Some(v.select_columns(&kernel))
    }
}

/// Spectrum of `A + v vᵗ` by direct eigensolve, descending.
pub fn rank_one_update_eig(a: &DenseMatrix, v: &[f64]) -> Result<Vec<f64>> {
    a.check_symmetric()?;
    if v.len() != a.rows {
        return Err(Error::Shape(format!(
            "update vector has length {} but the matrix is {}x{}",
            v.len(),
            a.rows,
            a.cols
        )));
    }
    let n = a.rows;
    let updated = DenseMatrix::from_fn(n, n, |i, j| {
        if i <= j {
            a[(i, j)] + v[i] * v[j]
        } else {
            a[(j, i)] + v[j] * v[i]
        }
    });
    Ok(sym_eig(&updated)?.eigenvalues)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() || b.len() != a.rows {
        return Err(Error::Shape(format!(
            "cannot solve {}x{} system with rhs of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs()))
            .unwrap();
        if m[(piv, k)].abs() <= 1e-14 * scale {
            return Err(Error::Degenerate("singular linear system".into()));
        }
        if piv != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            x.swap(k, piv);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[(k, j)] * x[j]).sum();
        x[k] = (x[k] - s) / m[(k, k)];
    }
    Ok(x)
}

/// `f(x) = 1 − Σ wᵢ / (x − λᵢ)`, the characteristic ratio of a rank-one
/// update `A + v vᵗ` with `λᵢ` the eigenvalues of `A` and `wᵢ = ⟨v, uᵢ⟩²`.
///
/// Poles within `1e-12` (relative) of each other are merged and their weights
/// summed; the multiplicity of every merged pole is kept so the full updated
/// spectrum can be reconstructed.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularFunction {
    poles: Vec<f64>,
    weights: Vec<f64>,
    multiplicity: Vec<usize>,
}

impl SecularFunction {
    pub fn new(poles: &[f64], weights: &[f64]) -> Result<Self> {
        if poles.len() != weights.len() {
            return Err(Error::Shape(format!(
                "{} poles but {} weights",
                poles.len(),
                weights.len()
            )));
        }
        if poles.is_empty() {
            return Err(Error::Degenerate("secular function has no poles".into()));
        }
        if poles.iter().chain(weights).any(|x| !x.is_finite()) {
            return Err(Error::Validation("poles and weights must be finite".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 0.0) {
            return Err(Error::Validation(format!("negative weight {w}")));
        }

        let mut pairs: Vec<(f64, f64)> = poles.iter().copied().zip(weights.iter().copied()).collect();
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

        let mut out = Self {
            poles: Vec::new(),
            weights: Vec::new(),
            multiplicity: Vec::new(),
        };
        for (lam, w) in pairs {
            match out.poles.last() {
                Some(&last) if last - lam <= 1e-12 * last.abs().max(1.0) => {
                    *out.weights.last_mut().unwrap() += w;
                    *out.multiplicity.last_mut().unwrap() += 1;
                }
                _ => {
                    out.poles.push(lam);
                    out.weights.push(w);
                    out.multiplicity.push(1);
                }
            }
        }
        for w in &mut out.weights {
            if *w < ZERO_WEIGHT {
                *w = 0.0;
            }
        }
        Ok(out)
    }

    /// The secular function of `A + v vᵗ`, built from the eigendecomposition
    /// of `A`.
    pub fn from_update(a: &DenseMatrix, v: &[f64]) -> Result<Self> {
        if v.len() != a.rows() {
            return Err(Error::Shape(format!(
                "update vector has length {} but the matrix has {} rows",
                v.len(),
                a.rows()
            )));
        }
        let eig = sym_eig(a)?;
        let weights: Vec<f64> = (0..a.rows())
            .map(|k| dot(&eig.eigenvectors.column(k), v).powi(2))
            .collect();
        Self::new(&eig.eigenvalues, &weights)
    }

    /// Distinct poles, strictly decreasing.
    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if let Some(&pole) = self.poles.iter().find(|&&p| (x - p).abs() <= 1e-14) {
            return Err(Error::PoleEvaluation { x, pole });
        }
        Ok(1.0
            - self
                .poles
                .iter()
                .zip(&self.weights)
                .map(|(p, w)| w / (x - p))
                .sum::<f64>())
    }

    fn active(&self) -> Vec<(f64, f64)> {
        self.poles
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(&p, &w)| (p, w))
            .collect()
    }

    /// Roots of `f`, descending: one above the largest active pole and one
    /// in each gap between consecutive active poles.
    pub fn roots(&self) -> Result<Vec<f64>> {
        let active = self.active();
        if active.is_empty() {
            return Err(Error::Degenerate(
                "all secular weights are zero; the update leaves the spectrum unchanged".into(),
            ));
        }
        let total: f64 = active.iter().map(|(_, w)| w).sum();
        let mut roots = Vec::with_capacity(active.len());
        roots.push(bisect_shifted(&active, 0, 0.0, total));
        for k in 0..active.len() - 1 {
            let (hi, lo) = (active[k].0, active[k + 1].0);
            let mid = 0.5 * (hi + lo);
            let fm = 1.0 - active.iter().map(|(p, w)| w / (mid - p)).sum::<f64>();
            let root = if fm >= 0.0 {
                bisect_shifted(&active, k + 1, 0.0, mid - lo)
            } else {
                bisect_shifted(&active, k, mid - hi, 0.0)
            };
            roots.push(root);
        }
        Ok(roots)
    }

    /// Full spectrum of the updated matrix: the roots together with every
    /// pole that survives the update (zero-weight poles and the extra copies
    /// of repeated poles), descending.
    pub fn updated_spectrum(&self) -> Result<Vec<f64>> {
        let mut spec = self.roots()?;
        for ((&p, &w), &m) in self.poles.iter().zip(&self.weights).zip(&self.multiplicity) {
            let keep = if w > 0.0 { m - 1 } else { m };
            spec.extend(std::iter::repeat_n(p, keep));
        }
        spec.sort_by(|a, b| b.total_cmp(a));
        Ok(spec)
    }
}

/// Bisection for the root of `f(origin + t)` with `t` in `(lo, hi)`, where
/// `origin` is the active pole at `anchor`. Differences to the other poles
/// are formed as `(origin − λᵢ) + t` so roots hugging a pole keep their
/// relative accuracy.
fn bisect_shifted(active: &[(f64, f64)], anchor: usize, mut lo: f64, mut hi: f64) -> f64 {
    let origin = active[anchor].0;
    let shifted = |t: f64| {
        1.0 - active
            .iter()
            .enumerate()
            .map(|(i, &(p, w))| {
                let gap = if i == anchor { 0.0 } else { origin - p };
                w / (gap + t)
            })
            .sum::<f64>()
    };
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = shifted(mid);
        if f == 0.0 {
            return origin + mid;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    origin + 0.5 * (lo + hi)
}

/// Evaluates the secular function at `x`.
pub fn secular_eval(f: &SecularFunction, x: f64) -> Result<f64> {
    f.eval(x)
}

/// Roots of the secular function (see [`SecularFunction::roots`]).
pub fn secular_roots(f: &SecularFunction) -> Result<Vec<f64>> {
    f.roots()
}
