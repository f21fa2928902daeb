//! Basis pursuit on a dense two-phase simplex.
//!
//! `min ‖b‖₁ s.t. Xb = y` is solved as the standard-form LP
//! `min 1ᵗ(u+v) s.t. X(u−v) = y, u, v ≥ 0`. The simplex uses Bland's rule
//! (lowest eligible index enters, lowest basic index breaks ratio ties), so
//! identical inputs always end on the identical vertex.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{DesignMatrix, SupportSet};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm1, norm2, norm_inf, rank, solve, DenseMatrix};
use crate::rng;

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-9;

/// `min cᵗx s.t. Ax = b, x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    c: Vec<f64>,
    a: DenseMatrix,
    b: Vec<f64>,
}

impl LpProblem {
    pub fn new(c: Vec<f64>, a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if c.len() != a.cols() || b.len() != a.rows() {
            return Err(Error::Shape(format!(
                "LP with {}x{} constraints, {} costs and {} right-hand sides",
                a.rows(),
                a.cols(),
                c.len(),
                b.len()
            )));
        }
        if c.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::Validation("LP data must be finite".into()));
        }
        Ok(Self { c, a, b })
    }

    pub fn objective(&self) -> &[f64] {
        &self.c
    }

    pub fn constraints(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Final basic solution; zeros unless `status` is optimal.
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// Column indices of the final basis, one per retained row.
    pub basis: Vec<usize>,
    /// Dual values for the retained rows (optimal only).
    pub duals: Option<Vec<f64>>,
    /// `|cᵗx − bᵗy|` reconstructed from the final basis (optimal only).
    pub duality_gap: Option<f64>,
}

struct Tableau {
    rows: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    reduced: Vec<f64>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.width + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.t[i * (self.width + 1) + self.width]
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let w = self.width + 1;
        let pv = self.at(r, s);
        for v in &mut self.t[r * w..(r + 1) * w] {
            *v /= pv;
        }
        let prow: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + s];
            if f != 0.0 {
                for (v, p) in self.t[i * w..(i + 1) * w].iter_mut().zip(&prow) {
                    *v -= f * p;
                }
            }
        }
        let f = self.reduced[s];
        if f != 0.0 {
            for (v, p) in self.reduced.iter_mut().zip(&prow) {
                *v -= f * p;
            }
        }
        self.basis[r] = s;
    }

    fn set_costs(&mut self, cost: &[f64]) {
        let mut d = cost.to_vec();
        d.push(0.0);
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..=self.width {
                    d[j] -= cb * self.at(i, j);
                }
            }
        }
        self.reduced = d;
    }

    /// Bland's rule over columns `< allowed`; `Ok` at optimality.
    fn iterate(&mut self, allowed: usize, budget: &mut usize) -> std::result::Result<(), LpStatus> {
        loop {
            let Some(s) = (0..allowed).find(|&j| self.reduced[j] < -COST_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, s);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            let tie = (ratio - best).abs() <= 1e-12 * best.abs().max(1.0);
                            if ratio < best && !tie || tie && self.basis[i] < self.basis[k] {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(LpStatus::Unbounded);
            };
            if *budget == 0 {
                return Err(LpStatus::IterationLimit);
            }
            *budget -= 1;
            self.pivot(r, s);
        }
    }
}

/// Greedy row selection: keeps each row that raises the rank of the rows
/// kept so far.
fn independent_rows(a: &DenseMatrix) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        if a.row(i).iter().all(|v| *v == 0.0) {
            continue;
        }
        let mut trial = kept.clone();
        trial.push(i);
        if rank(&a.select_rows(&trial)) == trial.len() {
            kept = trial;
        }
    }
    kept
}

fn failed(status: LpStatus, n: usize, iterations: usize) -> LpSolution {
    LpSolution {
        status,
        x: vec![0.0; n],
        objective: 0.0,
        iterations,
        basis: Vec::new(),
        duals: None,
        duality_gap: None,
    }
}

pub fn lp_solve(prob: &LpProblem) -> LpSolution {
    let (m_all, n) = prob.a.shape();
    let keep = independent_rows(&prob.a);
    let m = keep.len();
    let mut budget = 50 * (m_all + n);
    let cap = budget;

    if m == 0 {
        if prob.b.iter().any(|v| v.abs() > FEAS_TOL) {
            return failed(LpStatus::Infeasible, n, 0);
        }
        if prob.c.iter().any(|&c| c < -COST_TOL) {
            return failed(LpStatus::Unbounded, n, 0);
        }
        return LpSolution {
            status: LpStatus::Optimal,
            x: vec![0.0; n],
            objective: 0.0,
            iterations: 0,
            basis: Vec::new(),
            duals: Some(Vec::new()),
            duality_gap: Some(0.0),
        };
    }

    // standard form with b ≥ 0 and one artificial per row
    let width = n + m;
    let mut sign = vec![1.0; m];
    let mut t = vec![0.0; m * (width + 1)];
    for (k, &i) in keep.iter().enumerate() {
        sign[k] = if prob.b[i] < 0.0 { -1.0 } else { 1.0 };
        let row = &mut t[k * (width + 1)..(k + 1) * (width + 1)];
        for (j, v) in prob.a.row(i).iter().enumerate() {
            row[j] = sign[k] * v;
        }
        row[n + k] = 1.0;
        row[width] = sign[k] * prob.b[i];
    }
    let mut tab = Tableau {
        rows: m,
        width,
        t,
        basis: (n..n + m).collect(),
        reduced: Vec::new(),
    };

    let mut phase1 = vec![0.0; width];
    phase1[n..].iter_mut().for_each(|v| *v = 1.0);
    tab.set_costs(&phase1);
    if let Err(status) = tab.iterate(width, &mut budget) {
        // phase 1 is bounded below by zero
        return failed(status, n, cap - budget);
    }
    let infeasibility: f64 = (0..m).filter(|&i| tab.basis[i] >= n).map(|i| tab.rhs(i)).sum();
    let b_scale = norm1(&prob.b).max(1.0);
    if infeasibility > FEAS_TOL * b_scale {
        return failed(LpStatus::Infeasible, n, cap - budget);
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.at(i, j).abs() > PIVOT_TOL) {
                tab.pivot(i, j);
            }
        }
    }

    let mut phase2 = prob.c.clone();
    phase2.extend(std::iter::repeat_n(0.0, m));
    tab.set_costs(&phase2);
    if let Err(status) = tab.iterate(n, &mut budget) {
        return failed(status, n, cap - budget);
    }

    // refine the basic values and recover duals from the basis matrix
    let basis = tab.basis.clone();
    let col = |j: usize, k: usize| -> f64 {
        if j < n {
            sign[k] * prob.a[(keep[k], j)]
        } else if j - n == k {
            1.0
        } else {
            0.0
        }
    };
    let bmat = DenseMatrix::from_fn(m, m, |k, l| col(basis[l], k));
    let rhs: Vec<f64> = (0..m).map(|k| sign[k] * prob.b[keep[k]]).collect();
    let mut x = vec![0.0; n];
    let xb = solve(&bmat, &rhs).unwrap_or_else(|_| (0..m).map(|i| tab.rhs(i)).collect());
    for (l, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = if xb[l].abs() <= FEAS_TOL { 0.0 } else { xb[l] };
        }
    }
    let objective = dot(&prob.c, &x);
    let cb: Vec<f64> = basis.iter().map(|&j| phase2[j]).collect();
    let duals = solve(&bmat.transpose(), &cb).ok().map(|y| {
        (0..m).map(|k| sign[k] * y[k]).collect::<Vec<f64>>()
    });
    let duality_gap = duals.as_ref().map(|y| {
        let by: f64 = keep.iter().zip(y).map(|(&i, yk)| prob.b[i] * yk).sum();
        (objective - by).abs()
    });

    // rows dropped as redundant must still be satisfied
    let ax = prob.a.mat_vec(&x).expect("shape");
    let resid: Vec<f64> = ax.iter().zip(&prob.b).map(|(a, b)| a - b).collect();
    if norm_inf(&resid) > 1e-8 * norm_inf(&prob.b).max(1.0) {
        return failed(LpStatus::Infeasible, n, cap - budget);
    }

    LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        iterations: cap - budget,
        basis,
        duals,
        duality_gap,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryResult {
    /// Zero vector unless `status` is optimal.
    pub beta_hat: Vec<f64>,
    pub objective_value: f64,
    pub status: LpStatus,
    pub residual_norm: f64,
    pub iterations: usize,
}

pub fn basis_pursuit(x: &DesignMatrix, y: &[f64]) -> Result<RecoveryResult> {
    if y.len() != x.n() {
        return Err(Error::Shape(format!(
            "observation of length {} for a design with {} rows",
            y.len(),
            x.n()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation("observation must be finite".into()));
    }
    let (n, p) = (x.n(), x.p());
    let a = DenseMatrix::from_fn(n, 2 * p, |i, j| {
        if j < p {
            x.data()[(i, j)]
        } else {
            -x.data()[(i, j - p)]
        }
    });
    let sol = lp_solve(&LpProblem::new(vec![1.0; 2 * p], a, y.to_vec())?);
    let beta_hat: Vec<f64> = (0..p).map(|j| sol.x[j] - sol.x[j + p]).collect();
    let fit = x.data().mat_vec(&beta_hat)?;
    let resid: Vec<f64> = fit.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok(RecoveryResult {
        objective_value: norm1(&beta_hat),
        beta_hat,
        status: sol.status,
        residual_norm: norm2(&resid),
        iterations: sol.iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub support: SupportSet,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    /// Trials whose ℓ1 minimiser is not unique: solving again with the
    /// columns in reverse order lands on a different, equally cheap point.
    pub ambiguous: usize,
    pub failures: usize,
    pub success_rate: f64,
    pub max_linf_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Success,
    Ambiguous,
    Failure,
}

fn reversed(x: &DesignMatrix) -> Result<DesignMatrix> {
    let m = x.data();
    let p = x.p();
    DesignMatrix::from_raw(DenseMatrix::from_fn(m.rows(), p, |i, j| m[(i, p - 1 - j)]), false)
}

/// Draws `β` supported on `T₀` with standard-normal nonzeros (trial `i`
/// seeded by `derive_seed(seed, i)`), observes `y = Xβ` and checks that
/// basis pursuit returns `β` to `1e-6·max(1, ‖β‖_∞)`.
pub fn recovery_experiment(x: &DesignMatrix, t0: &SupportSet, trials: usize, seed: u64) -> Result<RecoveryReport> {
    if t0.p() != x.p() {
        return Err(Error::Shape(format!(
            "support over {} indices used with a design of {} columns",
            t0.p(),
            x.p()
        )));
    }
    if t0.len() > x.n() {
        return Err(Error::Validation(format!(
            "support size {} exceeds the number of rows {}",
            t0.len(),
            x.n()
        )));
    }
    if trials == 0 {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    let flipped = reversed(x)?;
    let p = x.p();
    let results = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<(Outcome, f64)> {
            let mut r = rng::seeded(rng::derive_seed(seed, i));
            let mut beta = vec![0.0; p];
            for &j in t0.indices() {
                beta[j] = StandardNormal.sample(&mut r);
            }
            let y = x.data().mat_vec(&beta)?;
            let fit = basis_pursuit(x, &y)?;
            if fit.status != LpStatus::Optimal {
                return Ok((Outcome::Failure, f64::INFINITY));
            }
            let err = norm_inf(&fit.beta_hat.iter().zip(&beta).map(|(a, b)| a - b).collect::<Vec<_>>());
            let tol = 1e-6 * norm_inf(&beta).max(1.0);

            let alt = basis_pursuit(&flipped, &y)?;
            let ambiguous = alt.status == LpStatus::Optimal && {
                let other: Vec<f64> = (0..p).map(|j| alt.beta_hat[p - 1 - j]).collect();
                let gap = norm_inf(&other.iter().zip(&fit.beta_hat).map(|(a, b)| a - b).collect::<Vec<_>>());
                let cost_tie = (alt.objective_value - fit.objective_value).abs()
                    <= 1e-9 * fit.objective_value.max(1.0);
                gap > tol && cost_tie
            };
            let outcome = if ambiguous {
                Outcome::Ambiguous
            } else if err <= tol {
                Outcome::Success
            } else {
                Outcome::Failure
            };
            Ok((outcome, err))
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |o: Outcome| results.iter().filter(|(k, _)| *k == o).count();
    let successes = count(Outcome::Success);
    Ok(RecoveryReport {
        support: t0.clone(),
        trials,
        seed,
        successes,
        ambiguous: count(Outcome::Ambiguous),
        failures: count(Outcome::Failure),
        success_rate: successes as f64 / trials as f64,
        max_linf_error: results.iter().map(|(_, e)| *e).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[f64], rows: &[Vec<f64>], b: &[f64]) -> LpProblem {
        LpProblem::new(c.to_vec(), DenseMatrix::from_rows(rows).unwrap(), b.to_vec()).unwrap()
    }

    #[test]
    fn trivial_programs() {
        let s = lp_solve(&lp(&[1.0], &[vec![1.0]], &[1.0]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-15);

        let s = lp_solve(&lp(&[1.0, 1.0], &[vec![1.0, 1.0]], &[2.0]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 2.0).abs() < 1e-12);
        assert!(s.duality_gap.unwrap() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let s = lp_solve(&lp(&[1.0], &[vec![1.0]], &[-1.0]));
        assert_eq!(s.status, LpStatus::Infeasible);
        let s = lp_solve(&lp(&[-1.0, 0.0], &[vec![1.0, -1.0]], &[0.0]));
        assert_eq!(s.status, LpStatus::Unbounded);
        // inconsistent duplicate rows
        let s = lp_solve(&lp(&[1.0, 1.0], &[vec![1.0, 1.0], vec![1.0, 1.0]], &[1.0, 2.0]));
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let s = lp_solve(&lp(
            &[1.0, 2.0, 0.0],
            &[vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0], vec![1.0, 0.0, 0.0]],
            &[3.0, 6.0, 1.0],
        ));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-12);
        assert_eq!(s.basis.len(), 2);
    }

    #[test]
    fn basis_pursuit_examples() {
        let id = DesignMatrix::from_raw(DenseMatrix::identity(3), false).unwrap();
        let r = basis_pursuit(&id, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.beta_hat, vec![1.0, 0.0, 0.0]);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = DenseMatrix::from_rows(&[vec![1.0, 0.0, h], vec![0.0, 1.0, h]]).unwrap();
        let x = DesignMatrix::from_raw(m, false).unwrap();
        let r = basis_pursuit(&x, &[1.0, 0.0]).unwrap();
        assert_eq!(r.status, LpStatus::Optimal);
        for (a, b) in r.beta_hat.iter().zip([1.0, 0.0, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((r.objective_value - 1.0).abs() < 1e-12);

        let m = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let x = DesignMatrix::from_raw(m, false).unwrap();
        let r = basis_pursuit(&x, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r.status, LpStatus::Infeasible);
        assert!(basis_pursuit(&x, &[1.0]).is_err());
    }

    #[test]
    fn experiment_on_identity() {
        let id = DesignMatrix::from_raw(DenseMatrix::identity(4), false).unwrap();
        let t0 = SupportSet::from_one_based(4, &[1, 3]).unwrap();
        let rep = recovery_experiment(&id, &t0, 20, 9).unwrap();
        assert_eq!(rep.success_rate, 1.0);
        assert_eq!(rep.ambiguous, 0);
    }

    #[test]
    fn experiment_flags_ties() {
        let x = DesignMatrix::from_raw(DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap(), false).unwrap();
        let t0 = SupportSet::from_one_based(2, &[1]).unwrap();
        let rep = recovery_experiment(&x, &t0, 10, 4).unwrap();
        assert_eq!(rep.ambiguous, 10);
        assert!(rep.success_rate < 1.0);
    }

    #[test]
    fn simplex_is_deterministic() {
        let rows = vec![vec![1.0, 2.0, 1.0, 0.0], vec![0.0, 1.0, 3.0, 1.0]];
        let a = lp_solve(&lp(&[1.0, 1.0, 1.0, 1.0], &rows, &[2.0, 3.0]));
        let b = lp_solve(&lp(&[1.0, 1.0, 1.0, 1.0], &rows, &[2.0, 3.0]));
        assert_eq!(a, b);
    }
}
