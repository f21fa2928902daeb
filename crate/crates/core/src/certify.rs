//! Weak-RIP and weak-NSP certification.
//!
//! Two kinds of objects live here. The first are closed-form constants: the
//! admissibility conditions and failure probability of the coherence-based
//! weak-RIP theorem, and the constants of the coherence ⇒ weak-NSP theorem,
//! each with the alternative readings of its displayed formulas computed
//! side by side. The second are empirical certificates measured on an actual
//! matrix: the proportion of random supports whose Gram matrix leaves the
//! window `‖X_TᵗX_T − I‖ < r`, and the null-space ratio
//!
//! ```text
//! R(T₀) = max { ‖h_{T₀}‖₂ : h ∈ Ker X, ‖h_{T₀ᶜ}‖₁ = 1 }
//! ```
//!
//! computed exactly by vertex enumeration over the kernel or bounded from
//! below by sampling kernel directions.

use std::f64::consts::E;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::design::{all_supports, binomial, gram_deviation, sample_support, DesignMatrix, SupportSet};
use crate::error::{regime, Error, Result};
use crate::linalg::{kernel_basis, norm1, norm2, rank, DenseMatrix};
use crate::perturbation::{corollary_mu_thresholds, DENOM_GUARD};
use crate::rng;

/// Numerator of the weak-RIP failure probability bound `1944 / p^α`.
pub const RIP_FAILURE_CONSTANT: f64 = 1944.0;
/// The eigenvalue window `[3/4, 5/4]` that an admissible random support
/// lands in with probability at least `π`.
pub const SPECTRAL_WINDOW: (f64, f64) = (0.75, 1.25);
/// Default cap on the kernel dimension for exact NSP verification.
pub const DEFAULT_D_MAX: usize = 5;
/// Largest support count for which exhaustive enumeration is offered.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

fn serialize_extended<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Admissibility of the coherence-based weak-RIP bound for one `(s₀, r, α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdsplConditions {
    pub mu_ok: bool,
    pub s0_ok: bool,
    /// `r / ((1+α) log p)`
    pub mu_threshold: f64,
    /// `r² p / ((1+α) e² ‖X‖² log p)`
    pub s0_threshold: f64,
    /// `min(1, 1944 / p^α)`
    pub bound: f64,
    pub bound_unclamped: f64,
    /// The unclamped bound is at least one, so it says nothing.
    pub vacuous: bool,
}

pub fn rip_failure_bound(p: usize, alpha: f64) -> (f64, f64) {
    let raw = RIP_FAILURE_CONSTANT / (p as f64).powf(alpha);
    (raw.min(1.0), raw)
}

pub fn cdspl_conditions_from(
    mu: f64,
    opnorm: f64,
    p: usize,
    s0: usize,
    r: f64,
    alpha: f64,
) -> Result<CdsplConditions> {
    if p < 2 {
        return Err(Error::Validation(format!("need p >= 2 so that log p > 0, got p = {p}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Validation(format!("r = {r} must lie in (0, 1)")));
    }
    if !(alpha >= 1.0) {
        return Err(Error::Validation(format!("alpha = {alpha} must be at least 1")));
    }
    let logp = (p as f64).ln();
    let mu_threshold = r / ((1.0 + alpha) * logp);
    let s0_threshold = r * r / ((1.0 + alpha) * E * E) * p as f64 / (opnorm * opnorm * logp);
    let (bound, raw) = rip_failure_bound(p, alpha);
    Ok(CdsplConditions {
        mu_ok: mu <= mu_threshold,
        s0_ok: s0 as f64 <= s0_threshold,
        mu_threshold,
        s0_threshold,
        bound,
        bound_unclamped: raw,
        vacuous: raw >= 1.0,
    })
}

pub fn cdspl_conditions(x: &DesignMatrix, s0: usize, r: f64, alpha: f64) -> Result<CdsplConditions> {
    let mu = x.coherence().map_err(|_| {
        Error::Validation(format!("need p >= 2 so that log p > 0, got p = {}", x.p()))
    })?;
    cdspl_conditions_from(mu, x.opnorm(), x.p(), s0, r, alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakRipReport {
    pub s0: usize,
    pub r: f64,
    pub alpha: f64,
    pub trials: usize,
    pub failures: usize,
    pub empirical_failure_rate: f64,
    pub theoretical_bound: f64,
    pub bound_vacuous: bool,
    pub mu_condition_ok: bool,
    pub s0_condition_ok: bool,
    pub mu_threshold: f64,
    pub s0_threshold: f64,
    pub seed: u64,
}

/// `‖X_TᵗX_T − I‖` for `trials` uniform supports of size `s0`; trial `i`
/// draws its support from seed `seed ⊕ i`.
pub fn support_deviations(x: &DesignMatrix, s0: usize, trials: usize, seed: u64) -> Result<Vec<f64>> {
    if s0 == 0 || s0 > x.p() {
        return Err(Error::Validation(format!("s0 = {s0} must lie in 1..={}", x.p())));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| gram_deviation(x, &sample_support(x.p(), s0, seed ^ i as u64)?))
        .collect()
}

/// Builds the report for one window radius from precomputed deviations.
pub fn weak_rip_from_deviations(
    x: &DesignMatrix,
    deviations: &[f64],
    s0: usize,
    r: f64,
    alpha: f64,
    seed: u64,
) -> Result<WeakRipReport> {
    if deviations.is_empty() {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    let conds = cdspl_conditions(x, s0, r, alpha)?;
    let failures = deviations.iter().filter(|&&d| d >= r).count();
    Ok(WeakRipReport {
        s0,
        r,
        alpha,
        trials: deviations.len(),
        failures,
        empirical_failure_rate: failures as f64 / deviations.len() as f64,
        theoretical_bound: conds.bound,
        bound_vacuous: conds.vacuous,
        mu_condition_ok: conds.mu_ok,
        s0_condition_ok: conds.s0_ok,
        mu_threshold: conds.mu_threshold,
        s0_threshold: conds.s0_threshold,
        seed,
    })
}

/// Monte-Carlo estimate of `P(‖X_{T₀}ᵗX_{T₀} − I‖ ≥ r)` over uniform
/// supports, next to the theoretical bound and its admissibility.
pub fn weak_rip_estimate(
    x: &DesignMatrix,
    s0: usize,
    r: f64,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<WeakRipReport> {
    if trials == 0 {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    let dev = support_deviations(x, s0, trials, seed)?;
    weak_rip_from_deviations(x, &dev, s0, r, alpha, seed)
}

/// `√2 (1+δ)/(1−δ)`, the NSP constant implied by RIP(2s₀, δ).
pub fn rip_to_nsp_constant(delta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::Validation(format!("delta = {delta} must lie in [0, 1)")));
    }
    Ok(std::f64::consts::SQRT_2 * (1.0 + delta) / (1.0 - delta))
}

/// Inputs of the coherence ⇒ weak-NSP theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremInputs {
    pub s0: usize,
    pub mu: f64,
    pub alpha: f64,
    pub p: usize,
    /// `‖X‖`, only used by the sparsity condition.
    pub opnorm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainTheoremConstants {
    pub s0: usize,
    pub mu: f64,
    pub alpha: f64,
    pub p: usize,
    /// `(¼ s₀³μ² + s₀^{3/2}μ) / (3 − 4 s₀μ²)`
    pub eps_min: f64,
    /// `144 s₀³μ² + 72 s₀^{3/2}μ`
    pub eps_max: f64,
    /// Corollary form at `λ̃_{s₀} = 3/4` window: denominator `2 − 4 s₀μ²`.
    pub eps_min_corollary: Option<f64>,
    /// Corollary form at `λ̃₁ = 5/4`: `144 s₀⁴μ² + 72 s₀^{3/2}μ`.
    pub eps_max_corollary: f64,
    /// `(1 + 3s₀(ε_max+ε_min)) / (λ₁ − 3s₀ε_min)` at `λ₁ = 3/4`.
    pub c_stated: f64,
    /// The same expression at `λ₁ = 5/4`.
    pub c_stated_upper_window: Option<f64>,
    /// `(λ₁ − λ_{s₀} + 3s₀(ε_max+ε_min)) / (λ_{s₀} − 3s₀ε_min)` at
    /// `λ₁ = 5/4`, `λ_{s₀} = 3/4`.
    pub c_proof: f64,
    /// `c_proof` evaluated with the corollary ε's.
    pub c_proof_corollary: Option<f64>,
    /// `max(0, 1 − 1944/p^α)`
    pub pi: f64,
    pub pi_vacuous: bool,
    pub mu_thresholds: [f64; 3],
    pub mu_admissible: bool,
    /// `p / (16 (1+α) e² ‖X‖² log p)`
    pub s0_threshold: f64,
    pub s0_admissible: bool,
    pub spectral_window: (f64, f64),
}

pub fn main_theorem_constants(x: &DesignMatrix, s0: usize, alpha: f64) -> Result<MainTheoremConstants> {
    let mu = x.coherence().map_err(|_| {
        Error::Validation(format!("need p >= 2 so that log p > 0, got p = {}", x.p()))
    })?;
    theorem_constants(&TheoremInputs {
        s0,
        mu,
        alpha,
        p: x.p(),
        opnorm: x.opnorm(),
    })
}

fn proof_constant(s: f64, lam1: f64, lam_s0: f64, eps_min: f64, eps_max: f64) -> Option<f64> {
    let den = lam_s0 - 3.0 * s * eps_min;
    (den > DENOM_GUARD).then(|| (lam1 - lam_s0 + 3.0 * s * (eps_max + eps_min)) / den)
}

pub fn theorem_constants(input: &TheoremInputs) -> Result<MainTheoremConstants> {
    let TheoremInputs { s0, mu, alpha, p, opnorm } = *input;
    if s0 == 0 {
        return Err(Error::Validation("s0 must be at least 1".into()));
    }
    if p < 2 {
        return Err(Error::Validation(format!("need p >= 2 so that log p > 0, got p = {p}")));
    }
    if !(alpha > 0.0) {
        return Err(Error::Validation(format!("alpha = {alpha} must be positive")));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Validation(format!("coherence {mu} outside [0, 1]")));
    }
    if !(opnorm > 0.0) {
        return Err(Error::Validation(format!("operator norm {opnorm} must be positive")));
    }
    let s = s0 as f64;
    let logp = (p as f64).ln();
    let (lo, hi) = SPECTRAL_WINDOW;

    let den = 3.0 - 4.0 * s * mu * mu;
    if den <= DENOM_GUARD {
        return Err(regime("3 > 4*s0*mu^2", 3.0, 4.0 * s * mu * mu));
    }
    let num_min = 0.25 * s.powi(3) * mu * mu + s.powf(1.5) * mu;
    let eps_min = num_min / den;
    let eps_max = 144.0 * s.powi(3) * mu * mu + 72.0 * s.powf(1.5) * mu;

    let c_den = lo - 3.0 * s * eps_min;
    if c_den <= DENOM_GUARD {
        return Err(regime("3/4 > 3*s0*eps_min", lo, 3.0 * s * eps_min));
    }
    let spread = 3.0 * s * (eps_max + eps_min);
    let c_stated = (1.0 + spread) / c_den;
    let up_den = hi - 3.0 * s * eps_min;
    let c_stated_upper_window = (up_den > DENOM_GUARD).then(|| (1.0 + spread) / up_den);
    let c_proof = proof_constant(s, hi, lo, eps_min, eps_max).expect("denominator checked above");

    let cor_den = 2.0 - 4.0 * s * mu * mu;
    let eps_min_corollary = (cor_den > DENOM_GUARD).then(|| num_min / cor_den);
    let eps_max_corollary = 144.0 * s.powi(4) * mu * mu + 72.0 * s.powf(1.5) * mu;
    let c_proof_corollary =
        eps_min_corollary.and_then(|em| proof_constant(s, hi, lo, em, eps_max_corollary));

    let [t1, t2] = corollary_mu_thresholds(s0);
    let t3 = 1.0 / (4.0 * (1.0 + alpha) * logp);
    let s0_threshold = p as f64 / (16.0 * (1.0 + alpha) * E * E * opnorm * opnorm * logp);
    let (_, raw) = rip_failure_bound(p, alpha);

    Ok(MainTheoremConstants {
        s0,
        mu,
        alpha,
        p,
        eps_min,
        eps_max,
        eps_min_corollary,
        eps_max_corollary,
        c_stated,
        c_stated_upper_window,
        c_proof,
        c_proof_corollary,
        pi: (1.0 - raw).max(0.0),
        pi_vacuous: raw >= 1.0,
        mu_thresholds: [t1, t2, t3],
        mu_admissible: mu <= t1.min(t2).min(t3),
        s0_threshold,
        s0_admissible: s <= s0_threshold,
        spectral_window: SPECTRAL_WINDOW,
    })
}

/// Constants of the `μ ≤ c₀ / s₀^{5/2}` restatement, evaluated verbatim as
/// displayed. Experimental: the displayed expressions are not reconciled
/// with the main form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct C0Variant {
    pub s0: usize,
    pub c0: f64,
    pub lam1: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub c: f64,
    pub experimental: bool,
}

pub fn c0_variant(s0: usize, c0: f64, lam1: f64) -> Result<C0Variant> {
    if s0 == 0 || !(c0 > 0.0) {
        return Err(Error::Validation("c0 variant needs s0 >= 1 and c0 > 0".into()));
    }
    let s = s0 as f64;
    let den = 0.5 - c0 * c0 / s.powi(4);
    if den <= DENOM_GUARD {
        return Err(regime("1/2 > c0^2 s0^-4", 0.5, c0 * c0 / s.powi(4)));
    }
    let gap = lam1 - 1.0;
    if gap <= DENOM_GUARD {
        return Err(regime("lam1 > 1", lam1, 1.0));
    }
    let eps_min = 0.25 * (c0 * c0 / (s * s) / 4.0 + c0 / s) / den;
    let eps_max = 0.25 * (144.0 * c0 * c0 / s + 72.0 * c0 / (s * s)) / gap;
    let a = (c0 * c0 / s / 4.0 + c0) / den;
    let b = (144.0 * c0 * c0 + 72.0 * c0 / s) / gap;
    let c_den = 1.0 - 0.75 * a;
    if c_den <= DENOM_GUARD {
        return Err(regime("1 > (3/4)(c0^2/(4 s0) + c0)/(1/2 - c0^2 s0^-4)", 1.0, 0.75 * a));
    }
    Ok(C0Variant {
        s0,
        c0,
        lam1,
        eps_min,
        eps_max,
        c: (1.0 + 0.75 * (a + b)) / c_den,
        experimental: true,
    })
}

/// Splits `T₀ᶜ` into consecutive blocks of the `s0` largest remaining
/// entries of `|h|`; ties go to the lower index. The last block may be
/// short.
pub fn block_decompose(h: &[f64], t0: &SupportSet, s0: usize) -> Result<Vec<SupportSet>> {
    if t0.is_empty() {
        return Err(Error::EmptySupport);
    }
    if s0 == 0 {
        return Err(Error::Validation("block size s0 must be at least 1".into()));
    }
    if h.len() != t0.p() {
        return Err(Error::Shape(format!(
            "vector of length {} used with supports over {} indices",
            h.len(),
            t0.p()
        )));
    }
    let mut rest = t0.complement();
    rest.sort_by(|&a, &b| h[b].abs().total_cmp(&h[a].abs()).then(a.cmp(&b)));
    rest.chunks(s0)
        .map(|c| SupportSet::new(t0.p(), c.to_vec()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EkCheck {
    /// `Σ_{j≥2} ‖h_{T_j}‖₂`
    pub lhs: f64,
    /// `‖h_{T₀ᶜ}‖₁ / √s₀`
    pub rhs: f64,
    pub holds: bool,
}

/// The shelling inequality `Σ_{j≥2} ‖h_{T_j}‖₂ ≤ ‖h_{T₀ᶜ}‖₁/√s₀` over the
/// blocks of [`block_decompose`], with tolerance `1e-12·max(1, rhs)`.
pub fn ek_inequality_check(h: &[f64], t0: &SupportSet, s0: usize) -> Result<EkCheck> {
    let blocks = block_decompose(h, t0, s0)?;
    let restrict = |t: &SupportSet| t.indices().iter().map(|&i| h[i]).collect::<Vec<f64>>();
    let lhs: f64 = blocks.iter().skip(1).map(|b| norm2(&restrict(b))).sum();
    let tail: Vec<f64> = t0.complement().iter().map(|&i| h[i]).collect();
    let rhs = norm1(&tail) / (s0 as f64).sqrt();
    Ok(EkCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12 * rhs.max(1.0),
    })
}

/// Kernel basis of a design, computed once and shared by the NSP routines.
#[derive(Debug, Clone)]
pub struct Kernel {
    basis: Option<DenseMatrix>,
    p: usize,
}

impl Kernel {
    pub fn of(x: &DesignMatrix) -> Self {
        Self {
            basis: kernel_basis(x.data()),
            p: x.p(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.as_ref().map_or(0, DenseMatrix::cols)
    }

    pub fn basis(&self) -> Option<&DenseMatrix> {
        self.basis.as_ref()
    }

    fn check(&self, t0: &SupportSet) -> Result<()> {
        if t0.is_empty() {
            return Err(Error::EmptySupport);
        }
        if t0.p() != self.p {
            return Err(Error::Shape(format!(
                "support over {} indices used with a design of {} columns",
                t0.p(),
                self.p
            )));
        }
        Ok(())
    }

    /// Exact `R(T₀)` by enumerating the vertices of `{z : ‖(Kz)_{T₀ᶜ}‖₁ ≤ 1}`.
    ///
    /// A vertex is pinned down by `d − 1` independent rows of `K_{T₀ᶜ}` that
    /// vanish on it plus the sign-linearised normalisation
    /// `Σ sign(b_iᵗz) b_iᵗz = 1`. The convex objective `‖K_{T₀} z‖₂` peaks at
    /// one of them.
    pub fn ratio_exact(&self, t0: &SupportSet, d_max: usize) -> Result<f64> {
        Ok(self.exact_with_vertices(t0, d_max)?.0)
    }

    /// As [`Self::ratio_exact`], also returning the number of distinct vertices.
    pub fn exact_with_vertices(&self, t0: &SupportSet, d_max: usize) -> Result<(f64, usize)> {
        self.check(t0)?;
        let Some(k) = &self.basis else {
            return Ok((0.0, 0));
        };
        let d = k.cols();
        if d > d_max {
            return Err(Error::Capacity { dim: d, d_max });
        }
        let outside = t0.complement();
        if outside.len() < d {
            return Ok((f64::INFINITY, 0));
        }
        let b = k.select_rows(&outside);
        let q = k.select_rows(t0.indices());
        if rank(&b) < d {
            return Ok((f64::INFINITY, 0));
        }

        let mut vertices: Vec<Vec<f64>> = Vec::new();
        let mut best: f64 = 0.0;
        let mut visit = |w: Vec<f64>| {
            let scale = norm1(&b.mat_vec(&w).expect("shape"));
            let mut z: Vec<f64> = w.iter().map(|v| v / scale).collect();
            if let Some(first) = z.iter().find(|v| v.abs() > 1e-12) {
                if *first < 0.0 {
                    z.iter_mut().for_each(|v| *v = -*v);
                }
            }
            if vertices
                .iter()
                .any(|u| u.iter().zip(&z).all(|(a, c)| (a - c).abs() <= 1e-8))
            {
                return;
            }
            best = best.max(norm2(&q.mat_vec(&z).expect("shape")));
            vertices.push(z);
        };

        if d == 1 {
            visit(vec![1.0]);
        } else {
            for rows in all_supports(outside.len(), d - 1) {
                let active = b.select_rows(rows.indices());
                if let Some(null) = kernel_basis(&active) {
                    if null.cols() == 1 {
                        visit(null.column(0));
                    }
                }
            }
        }
        Ok((best, vertices.len()))
    }

    /// Lower bound on `R(T₀)`: the best ratio over the `d` basis directions
    /// and `samples` directions uniform on the kernel's unit sphere.
    pub fn ratio_sampled(&self, t0: &SupportSet, samples: usize, seed: u64) -> Result<f64> {
        self.check(t0)?;
        let Some(k) = &self.basis else {
            return Ok(0.0);
        };
        let d = k.cols();
        let outside = t0.complement();
        let ratio = |z: &[f64]| {
            let h = k.mat_vec(z).expect("shape");
            let top = norm2(&t0.indices().iter().map(|&i| h[i]).collect::<Vec<_>>());
            let tail = norm1(&outside.iter().map(|&i| h[i]).collect::<Vec<_>>());
            if tail == 0.0 {
                if top == 0.0 { 0.0 } else { f64::INFINITY }
            } else {
                top / tail
            }
        };
        let mut best: f64 = 0.0;
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            best = best.max(ratio(&e));
        }
        let mut r = rng::seeded(seed);
        for _ in 0..samples {
            let z: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut r)).collect();
            best = best.max(ratio(&z));
        }
        Ok(best)
    }
}

pub fn nsp_worst_ratio_exact(x: &DesignMatrix, t0: &SupportSet) -> Result<f64> {
    nsp_worst_ratio_exact_with(x, t0, DEFAULT_D_MAX)
}

pub fn nsp_worst_ratio_exact_with(x: &DesignMatrix, t0: &SupportSet, d_max: usize) -> Result<f64> {
    Kernel::of(x).ratio_exact(t0, d_max)
}

pub fn nsp_worst_ratio_sampled(x: &DesignMatrix, t0: &SupportSet, samples: usize, seed: u64) -> Result<f64> {
    Kernel::of(x).ratio_sampled(t0, samples, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NspMethod {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NspOptions {
    pub method: NspMethod,
    /// Random kernel directions per support (sampled method only).
    pub samples: usize,
    pub d_max: usize,
}

impl Default for NspOptions {
    fn default() -> Self {
        Self {
            method: NspMethod::Exact,
            samples: 10_000,
            d_max: DEFAULT_D_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NspCertificate {
    pub support: SupportSet,
    #[serde(serialize_with = "serialize_extended")]
    pub worst_ratio: f64,
    /// `C / √s₀`
    pub threshold: f64,
    pub holds: bool,
    pub method: NspMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// A sampled ratio only bounds `R(T₀)` from below, so a passing sampled
    /// certificate is evidence rather than proof.
    pub upper_confidence_only: bool,
}

pub fn certify_support(
    kernel: &Kernel,
    t0: &SupportSet,
    c: f64,
    opts: &NspOptions,
    seed: u64,
) -> Result<NspCertificate> {
    let threshold = c / (t0.len() as f64).sqrt();
    let (worst_ratio, samples) = match opts.method {
        NspMethod::Exact => (kernel.ratio_exact(t0, opts.d_max)?, None),
        NspMethod::Sampled => (kernel.ratio_sampled(t0, opts.samples, seed)?, Some(opts.samples)),
    };
    let holds = worst_ratio <= threshold;
    Ok(NspCertificate {
        support: t0.clone(),
        worst_ratio,
        threshold,
        holds,
        method: opts.method,
        samples,
        upper_confidence_only: opts.method == NspMethod::Sampled && holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakNspReport {
    pub s0: usize,
    pub c: f64,
    pub seed: u64,
    pub exhaustive: bool,
    pub kernel_dim: usize,
    pub supports: usize,
    pub passes: usize,
    pub pass_rate: f64,
    pub certificates: Vec<NspCertificate>,
}

fn validate_nsp(x: &DesignMatrix, s0: usize, c: f64, kernel: &Kernel, opts: &NspOptions) -> Result<()> {
    if s0 == 0 || s0 > x.p() {
        return Err(Error::Validation(format!("s0 = {s0} must lie in 1..={}", x.p())));
    }
    if !(c > 0.0) {
        return Err(Error::Validation(format!("C = {c} must be positive")));
    }
    if opts.method == NspMethod::Exact && kernel.dim() > opts.d_max {
        return Err(Error::Capacity {
            dim: kernel.dim(),
            d_max: opts.d_max,
        });
    }
    Ok(())
}

fn report(s0: usize, c: f64, seed: u64, exhaustive: bool, kernel: &Kernel, certificates: Vec<NspCertificate>) -> WeakNspReport {
    let passes = certificates.iter().filter(|c| c.holds).count();
    WeakNspReport {
        s0,
        c,
        seed,
        exhaustive,
        kernel_dim: kernel.dim(),
        supports: certificates.len(),
        passes,
        pass_rate: passes as f64 / certificates.len() as f64,
        certificates,
    }
}

/// Proportion of `trials` uniform supports (trial `i` seeded by `seed ⊕ i`)
/// that satisfy `R(T₀) ≤ C/√s₀`.
pub fn weak_nsp_certify(
    x: &DesignMatrix,
    s0: usize,
    c: f64,
    trials: usize,
    seed: u64,
    opts: &NspOptions,
) -> Result<WeakNspReport> {
    if trials == 0 {
        return Err(Error::Validation("at least one trial is required".into()));
    }
    let kernel = Kernel::of(x);
    validate_nsp(x, s0, c, &kernel, opts)?;
    let certificates = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let t0 = sample_support(x.p(), s0, seed ^ i)?;
            certify_support(&kernel, &t0, c, opts, rng::derive_seed(seed, i))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(s0, c, seed, false, &kernel, certificates))
}

/// Certifies every size-`s0` support; refused beyond
/// [`EXHAUSTIVE_LIMIT`] supports.
pub fn weak_nsp_certify_exhaustive(
    x: &DesignMatrix,
    s0: usize,
    c: f64,
    seed: u64,
    opts: &NspOptions,
) -> Result<WeakNspReport> {
    let kernel = Kernel::of(x);
    validate_nsp(x, s0, c, &kernel, opts)?;
    let count = binomial(x.p(), s0);
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::Validation(format!(
            "C({}, {s0}) = {count} supports exceeds the exhaustive limit {EXHAUSTIVE_LIMIT}",
            x.p()
        )));
    }
    let supports: Vec<SupportSet> = all_supports(x.p(), s0).collect();
    let certificates = supports
        .par_iter()
        .enumerate()
        .map(|(i, t0)| certify_support(&kernel, t0, c, opts, rng::derive_seed(seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(report(s0, c, seed, true, &kernel, certificates))
}
