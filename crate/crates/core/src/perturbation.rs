//! Eigenvalue bounds for Gram matrices grown by appending columns.
//!
//! Appending a unit column `X_j` to `X_{T₀}` is a rank-one update of
//! `X_{T₀}X_{T₀}ᵗ`: the new spectrum is given by the roots of a secular
//! function whose poles are the old eigenvalues. Replacing the true weights
//! `⟨X_j, uᵢ⟩²` by a common upper bound `γ`, and the poles by one-sided
//! surrogates `λ̃`, yields a quadratic whose extreme roots bound the smallest
//! nonzero and the largest eigenvalue of the grown matrix. Linearising the
//! square root (`√(1+a) ≤ 1 + a/2`) gives the closed-form slacks
//! `ε_{s₀,min}` and `ε_{s₀,max}`; repeating the step `s₁` times gives the
//! successive-perturbation bounds.
//!
//! Every bound here has an empirical counterpart in
//! [`verify_append_bounds`], which checks the chain
//! `exact ≥ quadratic ≥ ε-form` (or `≤` for the top eigenvalue) against the
//! exact eigenvalues.

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{sample_support_with, DesignMatrix, SupportSet};
use crate::error::{regime, ConditionCheck, Error, Result};
use crate::linalg::{op_norm, rank_one_update_eig, sym_eig, DenseMatrix};
use crate::rng;

/// Smallest admissible magnitude of any denominator in these formulas.
pub const DENOM_GUARD: f64 = 1e-12;
/// Tolerance used when checking the bound chain against exact eigenvalues.
pub const CHAIN_TOL: f64 = 1e-9;

/// How the weight bound `γ` is formed from `√s₀ μ ‖X_{T₀}‖`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaConvention {
    /// `γ = √s₀ μ ‖X_{T₀}‖`, the form the ε formulas are written in.
    #[default]
    Unsquared,
    /// `γ = s₀ μ² ‖X_{T₀}‖²`, for sensitivity analysis only.
    Squared,
}

/// One-sided surrogates for the extreme eigenvalues of `X_{T₀}X_{T₀}ᵗ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralWindow {
    /// `λ̃₁ ≥ λ₁`
    pub lam1_tilde: f64,
    /// `λ̃_{s₀} ≤ λ_{s₀}`
    pub lam_s0_tilde: f64,
    pub s0: usize,
    pub mu: f64,
    /// `‖X_{T₀}‖`
    pub norm_xt0: f64,
}

impl SpectralWindow {
    pub fn new(lam1_tilde: f64, lam_s0_tilde: f64, s0: usize, mu: f64, norm_xt0: f64) -> Result<Self> {
        if s0 == 0 {
            return Err(Error::Validation("s0 must be at least 1".into()));
        }
        if !(lam1_tilde >= lam_s0_tilde && lam_s0_tilde >= 0.0) {
            return Err(Error::Validation(format!(
                "window needs lam1_tilde >= lam_s0_tilde >= 0, got ({lam1_tilde}, {lam_s0_tilde})"
            )));
        }
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::Validation(format!("coherence {mu} outside [0, 1]")));
        }
        if !(norm_xt0 >= 1.0) {
            return Err(Error::Validation(format!(
                "||X_T0|| = {norm_xt0} is below 1, impossible for unit columns"
            )));
        }
        Ok(Self {
            lam1_tilde,
            lam_s0_tilde,
            s0,
            mu,
            norm_xt0,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationBounds {
    pub eps_min: f64,
    pub eps_max: f64,
    pub eta: f64,
    pub s1: usize,
    /// Lower bound on `λ_{s₀+s₁}` of the grown Gram matrix.
    pub lower: f64,
    /// Upper bound on `λ₁` of the grown Gram matrix.
    pub upper: f64,
    pub preconditions_ok: bool,
    pub conditions: Vec<ConditionCheck>,
    /// ε_max obtained by substituting `s₁ = 3s₀`, `η = ½` directly into the
    /// successive-perturbation formula (`144 s₀³μ²` leading term). Only set by
    /// [`corollary_constants`], whose own ε_max carries `144 s₀⁴μ²`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_max_substituted: Option<f64>,
}

fn s0f(s0: usize) -> f64 {
    s0 as f64
}

pub fn gamma_bound(s0: usize, mu: f64, norm_xt0: f64) -> f64 {
    s0f(s0).sqrt() * mu * norm_xt0
}

pub fn gamma_bound_with(convention: GammaConvention, s0: usize, mu: f64, norm_xt0: f64) -> f64 {
    let g = gamma_bound(s0, mu, norm_xt0);
    match convention {
        GammaConvention::Unsquared => g,
        GammaConvention::Squared => g * g,
    }
}

fn min_gap(s0: usize, mu: f64, lam_s0_tilde: f64) -> Result<f64> {
    let c = 1.0 - s0f(s0) * mu * mu;
    let gap = c - lam_s0_tilde;
    if gap > DENOM_GUARD {
        Ok(gap)
    } else {
        Err(regime("1 - s0*mu^2 > lam_s0_tilde", c, lam_s0_tilde))
    }
}

fn max_gap(lam1_tilde: f64) -> Result<f64> {
    let gap = lam1_tilde - 1.0;
    if gap > DENOM_GUARD {
        Ok(gap)
    } else {
        Err(regime("lam1_tilde > 1", lam1_tilde, 1.0))
    }
}

/// Smallest positive root of `1 − s₀γ/(x − λ̃_{s₀}) − (1 − s₀μ²)/x`, a lower
/// bound on the smallest nonzero eigenvalue after appending one column.
pub fn rho_min_quadratic(s0: usize, mu: f64, gamma: f64, lam_s0_tilde: f64) -> Result<f64> {
    let gap = min_gap(s0, mu, lam_s0_tilde)?;
    let s = s0f(s0);
    let c = 1.0 - s * mu * mu;
    let disc = s * s * gamma * gamma + 2.0 * s * gamma * (lam_s0_tilde + c) + gap * gap;
    Ok(0.5 * (s * (gamma - mu * mu) + lam_s0_tilde + 1.0 - disc.sqrt()))
}

/// `ε_{s₀,min}` for a given weight bound `γ`.
pub fn eps_min_from_gamma(s0: usize, mu: f64, gamma: f64, lam_s0_tilde: f64) -> Result<f64> {
    let gap = min_gap(s0, mu, lam_s0_tilde)?;
    let s = s0f(s0);
    Ok(0.5 * (s * s * gamma * gamma + 4.0 * s * gamma * lam_s0_tilde) / (2.0 * gap))
}

/// `ε_{s₀,min} = ½ (s₀³μ²‖X_{T₀}‖² + 4 s₀^{3/2} μ ‖X_{T₀}‖ λ̃_{s₀}) / (2(1 − s₀μ² − λ̃_{s₀}))`.
pub fn eps_min_append(s0: usize, mu: f64, norm_xt0: f64, lam_s0_tilde: f64) -> Result<f64> {
    let gamma = gamma_bound(s0, mu, norm_xt0);
    let eps = eps_min_from_gamma(s0, mu, gamma, lam_s0_tilde)?;
    debug_assert!(
        lam_s0_tilde - eps <= rho_min_quadratic(s0, mu, gamma, lam_s0_tilde)? + 1e-12 * (1.0 + eps)
    );
    Ok(eps)
}

/// Largest root of `1 − s₀γ/(x − λ̃₁) − 1/x`, an upper bound on the largest
/// eigenvalue after appending one column.
pub fn rho_max_quadratic(s0: usize, gamma: f64, lam1_tilde: f64) -> Result<f64> {
    let gap = max_gap(lam1_tilde)?;
    let s = s0f(s0);
    let disc = s * s * gamma * gamma + 2.0 * s * gamma * (lam1_tilde + 1.0) + gap * gap;
    Ok(0.5 * (s * gamma + lam1_tilde + 1.0 + disc.sqrt()))
}

pub fn eps_max_from_gamma(s0: usize, gamma: f64, lam1_tilde: f64) -> Result<f64> {
    let gap = max_gap(lam1_tilde)?;
    let s = s0f(s0);
    Ok(0.5 * (s * s * gamma * gamma + 4.0 * s * gamma * lam1_tilde) / (2.0 * gap))
}

/// `ε_{s₀,max} = ½ (s₀³μ²‖X_{T₀}‖² + 4 s₀^{3/2} μ ‖X_{T₀}‖ λ̃₁) / (2(λ̃₁ − 1))`.
pub fn eps_max_append(s0: usize, mu: f64, norm_xt0: f64, lam1_tilde: f64) -> Result<f64> {
    let gamma = gamma_bound(s0, mu, norm_xt0);
    let eps = eps_max_from_gamma(s0, gamma, lam1_tilde)?;
    debug_assert!(lam1_tilde + eps >= rho_max_quadratic(s0, gamma, lam1_tilde)? - 1e-12 * (1.0 + eps));
    Ok(eps)
}

/// Per-step slacks `(ε_min, ε_max)` of the successive-perturbation bound.
///
/// ```text
/// ε_min = ¼ (s₀³μ²η² + 4 s₀^{3/2} μ η²) / (1 − s₀μ² − η)
/// ε_max = ¼ ((s₀+s₁)³μ²(2−η)² + 4 (s₀+s₁)^{3/2} μ (2−η)²) / (λ̃₁ − 1)
/// ```
pub fn successive_epsilons(win: &SpectralWindow, s1: usize, eta: f64) -> Result<(f64, f64)> {
    let s = s0f(win.s0);
    let mu = win.mu;
    let d_min = 1.0 - s * mu * mu - eta;
    if d_min <= DENOM_GUARD {
        return Err(regime("1 - s0*mu^2 > eta", 1.0 - s * mu * mu, eta));
    }
    let d_max = max_gap(win.lam1_tilde)?;
    let eta2 = eta * eta;
    let eps_min = 0.25 * (s.powi(3) * mu * mu * eta2 + 4.0 * s.powf(1.5) * mu * eta2) / d_min;
    let big = s + s1 as f64;
    let w = (2.0 - eta).powi(2);
    let eps_max = 0.25 * (big.powi(3) * mu * mu * w + 4.0 * big.powf(1.5) * mu * w) / d_max;
    Ok((eps_min, eps_max))
}

fn successive_conditions(
    win: &SpectralWindow,
    s1: usize,
    eta: f64,
    eps: Option<(f64, f64)>,
) -> Vec<ConditionCheck> {
    let big = (win.s0 + s1) as f64;
    let lam = win.lam_s0_tilde;
    let lam1 = win.lam1_tilde;
    let room = eps.map_or(f64::NAN, |(e_min, e_max)| {
        ((lam - eta) / e_min).min((2.0 - eta - lam1) / e_max)
    });
    let mut checks = vec![
        ConditionCheck::greater("1a", "1 - (s0+s1)*mu > lam_s0_tilde", 1.0 - big * win.mu, lam),
        ConditionCheck::greater("1b", "lam_s0_tilde > eta", lam, eta),
        ConditionCheck::greater("2a", "lam1_tilde > 1", lam1, 1.0),
        ConditionCheck::greater("2b", "2 - eta > lam1_tilde", 2.0 - eta, lam1),
        ConditionCheck::greater(
            "3",
            "min((lam_s0_tilde - eta)/eps_min, (2 - eta - lam1_tilde)/eps_max) > s1",
            room,
            s1 as f64,
        ),
    ];
    // a zero slack leaves unlimited room
    if let Some((0.0, 0.0)) = eps {
        checks[4].holds = true;
    }
    checks
}

/// Bounds after appending `s₁` columns one at a time:
/// `λ_{s₀+s₁} ≥ λ̃_{s₀} − s₁ε_min` and `λ₁ ≤ λ̃₁ + s₁ε_max`.
///
/// Every violated precondition is reported in the error; no bound is
/// produced unless all of them hold.
pub fn successive_bounds(win: &SpectralWindow, s1: usize, eta: f64) -> Result<PerturbationBounds> {
    let eps = successive_epsilons(win, s1, eta).ok();
    let conditions = successive_conditions(win, s1, eta, eps);
    let failed: Vec<ConditionCheck> = conditions.iter().filter(|c| !c.holds).cloned().collect();
    if !failed.is_empty() {
        return Err(Error::Preconditions(failed));
    }
    let (eps_min, eps_max) = eps.expect("conditions imply valid denominators");
    Ok(PerturbationBounds {
        eps_min,
        eps_max,
        eta,
        s1,
        lower: win.lam_s0_tilde - s1 as f64 * eps_min,
        upper: win.lam1_tilde + s1 as f64 * eps_max,
        preconditions_ok: true,
        conditions,
        eps_max_substituted: None,
    })
}

/// The two coherence thresholds the corollary requires `μ` to stay below:
/// `1/√(288 s₀^{5/2}(2 s₀^{3/2} + 1))` and `1/√(3/2 s₀⁴ + 6 s₀^{5/2} + 2 s₀)`.
pub fn corollary_mu_thresholds(s0: usize) -> [f64; 2] {
    let s = s0f(s0);
    [
        1.0 / (288.0 * s.powf(2.5) * (2.0 * s.powf(1.5) + 1.0)).sqrt(),
        1.0 / (1.5 * s.powi(4) + 6.0 * s.powf(2.5) + 2.0 * s).sqrt(),
    ]
}

/// The successive bounds specialised to `η = ½`, `s₁ = 3s₀`, with the
/// corollary's own ε expressions:
///
/// ```text
/// ε_min = ¼ (s₀³μ²/4 + s₀^{3/2}μ) / (1 − s₀μ² − ½)
/// ε_max = ¼ (144 s₀⁴μ² + 32 s₀^{3/2}μ (3/2)²) / (λ̃₁ − 1)
/// ```
///
/// An inadmissible `μ` is an error. Failing window conditions are reported
/// through `preconditions_ok` / `conditions`; the ε values and the formal
/// `lower`/`upper` are still filled in so they can be inspected.
pub fn corollary_constants(
    s0: usize,
    mu: f64,
    lam1_tilde: f64,
    lam_s0_tilde: f64,
) -> Result<PerturbationBounds> {
    if s0 == 0 {
        return Err(Error::Validation("s0 must be at least 1".into()));
    }
    let thresholds = corollary_mu_thresholds(s0);
    if !(mu >= 0.0 && mu <= thresholds[0].min(thresholds[1])) {
        return Err(Error::Admissibility {
            mu,
            thresholds: thresholds.to_vec(),
        });
    }
    let s = s0f(s0);
    let eta = 0.5;
    let s1 = 3 * s0;
    let d_min = 1.0 - s * mu * mu - eta;
    if d_min <= DENOM_GUARD {
        return Err(regime("1 - s0*mu^2 > 1/2", 1.0 - s * mu * mu, eta));
    }
    let d_max = max_gap(lam1_tilde)?;
    let eps_min = 0.25 * (s.powi(3) * mu * mu / 4.0 + s.powf(1.5) * mu) / d_min;
    let eps_max = 0.25 * (144.0 * s.powi(4) * mu * mu + 32.0 * s.powf(1.5) * mu * 2.25) / d_max;
    let eps_max_substituted = 0.25 * (144.0 * s.powi(3) * mu * mu + 72.0 * s.powf(1.5) * mu) / d_max;

    let win = SpectralWindow {
        lam1_tilde,
        lam_s0_tilde,
        s0,
        mu,
        norm_xt0: 1.0,
    };
    let conditions = successive_conditions(&win, s1, eta, Some((eps_min, eps_max)));
    Ok(PerturbationBounds {
        eps_min,
        eps_max,
        eta,
        s1,
        lower: lam_s0_tilde - 3.0 * s * eps_min,
        upper: lam1_tilde + 3.0 * s * eps_max,
        preconditions_ok: conditions.iter().all(|c| c.holds),
        conditions,
        eps_max_substituted: Some(eps_max_substituted),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarProductVariant {
    /// `λ₁ + 3s₀ ε_max`
    Stated,
    /// `λ₁ − λ_{s₀} + 3s₀(ε_max + ε_min)`
    Proof,
}

/// Coefficient `K` in `|⟨X_T g_T, X_{T'} h_{T'}⟩| ≤ K ‖g_T‖₂ ‖h_{T'}‖₂`.
pub fn scalar_product_bound(
    s0: usize,
    lam1: f64,
    lam_s0: f64,
    eps_max: f64,
    eps_min: f64,
    variant: ScalarProductVariant,
) -> f64 {
    let s = s0f(s0);
    match variant {
        ScalarProductVariant::Stated => lam1 + 3.0 * s * eps_max,
        ScalarProductVariant::Proof => lam1 - lam_s0 + 3.0 * s * (eps_max + eps_min),
    }
}

/// Outcome of checking one lemma on one `(T₀, j)` instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LemmaCheck {
    Checked {
        exact: f64,
        quadratic: f64,
        simplified: f64,
        holds: bool,
    },
    Skipped {
        reason: String,
    },
}

impl LemmaCheck {
    pub fn is_checked(&self) -> bool {
        matches!(self, Self::Checked { .. })
    }

    pub fn violated(&self) -> bool {
        matches!(self, Self::Checked { holds: false, .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendVerification {
    pub support: SupportSet,
    /// One-based index of the appended column.
    pub appended: usize,
    pub s0: usize,
    pub mu: f64,
    pub norm_xt0: f64,
    pub lam1: f64,
    pub lam_s0: f64,
    /// Smallest-nonzero-eigenvalue chain: exact ≥ quadratic ≥ λ̃ − ε.
    pub min_bound: LemmaCheck,
    /// Largest-eigenvalue chain: exact ≤ quadratic ≤ λ̃ + ε.
    pub max_bound: LemmaCheck,
}

pub fn verify_append_bounds(x: &DesignMatrix, t0: &SupportSet, j: usize) -> Result<AppendVerification> {
    verify_append_bounds_with(x, t0, j, GammaConvention::Unsquared)
}

/// Checks both one-column lemmas with `λ̃` set to the exact eigenvalues of
/// `X_{T₀}X_{T₀}ᵗ`. `j` is zero-based.
pub fn verify_append_bounds_with(
    x: &DesignMatrix,
    t0: &SupportSet,
    j: usize,
    convention: GammaConvention,
) -> Result<AppendVerification> {
    if t0.is_empty() {
        return Err(Error::EmptySupport);
    }
    if j >= x.p() || t0.contains(j) {
        return Err(Error::Validation(format!(
            "appended column {} must lie outside the support {t0}",
            j + 1
        )));
    }
    let n = x.n();
    let s0 = t0.len();
    let mu = x.coherence()?;
    let xt0 = x.columns(t0);
    let a = DenseMatrix::from_fn(n, n, |r, c| {
        let (r, c) = if r <= c { (r, c) } else { (c, r) };
        (0..s0).map(|k| xt0[(r, k)] * xt0[(c, k)]).sum()
    });
    let before = sym_eig(&a)?.eigenvalues;
    let lam1 = before[0];
    let lam_s0 = if s0 <= n { before[s0 - 1] } else { 0.0 };
    let norm_xt0 = op_norm(&xt0);
    let gamma = gamma_bound_with(convention, s0, mu, norm_xt0);
    let after = rank_one_update_eig(&a, &x.column(j))?;

    let min_bound = if s0 >= n {
        LemmaCheck::Skipped {
            reason: format!("s0 + 1 = {} exceeds n = {n}", s0 + 1),
        }
    } else {
        match (
            rho_min_quadratic(s0, mu, gamma, lam_s0),
            eps_min_from_gamma(s0, mu, gamma, lam_s0),
        ) {
            (Ok(quadratic), Ok(eps)) => {
                let exact = after[s0];
                let simplified = lam_s0 - eps;
                LemmaCheck::Checked {
                    exact,
                    quadratic,
                    simplified,
                    holds: exact >= quadratic - CHAIN_TOL && quadratic >= simplified - CHAIN_TOL,
                }
            }
            (Err(e), _) | (_, Err(e)) => LemmaCheck::Skipped {
                reason: e.to_string(),
            },
        }
    };

    let max_bound = match (
        rho_max_quadratic(s0, gamma, lam1),
        eps_max_from_gamma(s0, gamma, lam1),
    ) {
        (Ok(quadratic), Ok(eps)) => {
            let exact = after[0];
            let simplified = lam1 + eps;
            LemmaCheck::Checked {
                exact,
                quadratic,
                simplified,
                holds: exact <= quadratic + CHAIN_TOL && quadratic <= simplified + CHAIN_TOL,
            }
        }
        (Err(e), _) | (_, Err(e)) => LemmaCheck::Skipped {
            reason: e.to_string(),
        },
    };

    Ok(AppendVerification {
        support: t0.clone(),
        appended: j + 1,
        s0,
        mu,
        norm_xt0,
        lam1,
        lam_s0,
        min_bound,
        max_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendSweepSummary {
    pub cases: usize,
    pub min_checked: usize,
    pub min_skipped: usize,
    pub max_checked: usize,
    pub max_skipped: usize,
    pub violations: usize,
    /// Smallest `exact − quadratic` over checked min-lemma cases.
    pub min_lemma_tightest_margin: Option<f64>,
    /// Smallest `quadratic − exact` over checked max-lemma cases.
    pub max_lemma_tightest_margin: Option<f64>,
}

/// Random `(T₀, j)` cases: case `i` uses sparsity `s0_values[i % len]`, a
/// uniform support and a uniform column outside it, all drawn from a
/// generator seeded by `derive_seed(seed, i)`.
pub fn append_sweep(
    x: &DesignMatrix,
    s0_values: &[usize],
    cases: usize,
    seed: u64,
) -> Result<(AppendSweepSummary, Vec<AppendVerification>)> {
    if s0_values.is_empty() || s0_values.iter().any(|&s| s == 0 || s >= x.p()) {
        return Err(Error::Validation(format!(
            "every s0 must lie in 1..{} for a sweep",
            x.p()
        )));
    }
    let records = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::seeded(rng::derive_seed(seed, i as u64));
            let s0 = s0_values[i % s0_values.len()];
            let grown = sample_support_with(&mut r, x.p(), s0 + 1)?;
            // the last drawn index of a fresh shuffle is as uniform as any
            let pick = rand::Rng::random_range(&mut r, 0..=s0);
            let j = grown.indices()[pick];
            let rest: Vec<usize> = grown.indices().iter().copied().filter(|&k| k != j).collect();
            let t0 = SupportSet::new(x.p(), rest)?;
            verify_append_bounds(x, &t0, j)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((summarize(&records), records))
}

pub fn summarize(records: &[AppendVerification]) -> AppendSweepSummary {
    let mut s = AppendSweepSummary {
        cases: records.len(),
        min_checked: 0,
        min_skipped: 0,
        max_checked: 0,
        max_skipped: 0,
        violations: 0,
        min_lemma_tightest_margin: None,
        max_lemma_tightest_margin: None,
    };
    let fold = |acc: Option<f64>, v: f64| Some(acc.map_or(v, |a: f64| a.min(v)));
    for r in records {
        match &r.min_bound {
            LemmaCheck::Checked { exact, quadratic, holds, .. } => {
                s.min_checked += 1;
                s.violations += usize::from(!holds);
                s.min_lemma_tightest_margin = fold(s.min_lemma_tightest_margin, exact - quadratic);
            }
            LemmaCheck::Skipped { .. } => s.min_skipped += 1,
        }
        match &r.max_bound {
            LemmaCheck::Checked { exact, quadratic, holds, .. } => {
                s.max_checked += 1;
                s.violations += usize::from(!holds);
                s.max_lemma_tightest_margin = fold(s.max_lemma_tightest_margin, quadratic - exact);
            }
            LemmaCheck::Skipped { .. } => s.max_skipped += 1,
        }
    }
    s
}
