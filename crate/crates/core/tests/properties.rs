mod common;

use common::{gaussian_design, gaussian_matrix, random_symmetric};
use cscert::certify::{
    block_decompose, ek_inequality_check, rip_failure_bound, theorem_constants, weak_rip_estimate,
    Kernel, TheoremInputs,
};
use cscert::design::{
    all_supports, binomial, gershgorin_check, gram, parse_csv, sample_support, to_csv, DesignMatrix,
    SupportSet,
};
use cscert::linalg::{kernel_basis, rank, solve, sym_eig, DenseMatrix, SecularFunction};
use cscert::perturbation::{eps_max_append, eps_min_append};
use cscert::recovery::{basis_pursuit, lp_solve, LpProblem, LpStatus};
use cscert::rng;
use proptest::prelude::*;
use rand::Rng as _;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn design(n: usize, p: usize, seed: u64) -> DesignMatrix {
    gaussian_design(n, p, seed)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn coherence_ignores_column_order_and_signs(seed in any::<u64>(), n in 2usize..6, p in 2usize..9) {
        let x = design(n, p, seed);
        let mut r = rng::seeded(seed ^ 1);
        let mut perm: Vec<usize> = (0..p).collect();
        for i in (1..p).rev() {
            perm.swap(i, r.random_range(0..=i));
        }
        let signs: Vec<f64> = (0..p).map(|_| if r.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
        let m = DenseMatrix::from_fn(n, p, |i, j| signs[j] * x.data()[(i, perm[j])]);
        let y = DesignMatrix::from_raw(m, false).unwrap();
        prop_assert!((x.coherence().unwrap() - y.coherence().unwrap()).abs() <= 1e-15);
    }

    #[test]
    fn gram_is_symmetric_psd_with_unit_diagonal(seed in any::<u64>(), s in 1usize..6) {
        let x = design(4, 8, seed);
        let t = sample_support(8, s, seed).unwrap();
        let g = gram(&x, &t).unwrap();
        for i in 0..s {
            prop_assert!((g[(i, i)] - 1.0).abs() <= 1e-14);
            for j in 0..s {
                prop_assert_eq!(g[(i, j)], g[(j, i)]);
            }
        }
        prop_assert!(sym_eig(&g).unwrap().eigenvalues.iter().all(|&l| l >= -1e-12));
    }

    #[test]
    fn gershgorin_dominates(seed in any::<u64>(), s in 1usize..7) {
        let x = design(5, 10, seed);
        let t = sample_support(10, s, seed ^ 7).unwrap();
        prop_assert!(gershgorin_check(&x, &t).unwrap().holds);
    }

    #[test]
    fn rank_one_update_interlaces(seed in any::<u64>(), dim in 1usize..9) {
        let mut r = rng::seeded(seed);
        let a = random_symmetric(dim, &mut r);
        let v: Vec<f64> = (0..dim).map(|_| r.random_range(-1.0..1.0)).collect();
        let before = sym_eig(&a).unwrap().eigenvalues;
        let b = DenseMatrix::from_fn(dim, dim, |i, j| a[(i, j)] + v[i] * v[j]);
        let after = sym_eig(&b).unwrap().eigenvalues;
        for i in 0..dim {
            prop_assert!(after[i] >= before[i] - 1e-9);
            if i > 0 {
                prop_assert!(after[i] <= before[i - 1] + 1e-9);
            }
        }
        let sec = SecularFunction::from_update(&a, &v).unwrap().updated_spectrum().unwrap();
        for (s, e) in sec.iter().zip(&after) {
            prop_assert!((s - e).abs() <= 1e-8, "secular {} vs eig {}", s, e);
        }
    }

    #[test]
    fn append_epsilons_grow_with_coherence(s0 in 1usize..8, mu in 0.0f64..0.05, d in 0.0f64..0.05) {
        let (lo, hi) = (mu, mu + d);
        let nx = 1.1;
        if let (Ok(a), Ok(b)) = (eps_min_append(s0, lo, nx, 0.5), eps_min_append(s0, hi, nx, 0.5)) {
            prop_assert!(a <= b);
        }
        prop_assert!(eps_max_append(s0, lo, nx, 1.2).unwrap() <= eps_max_append(s0, hi, nx, 1.2).unwrap());
        let t = |mu| theorem_constants(&TheoremInputs { s0, mu, alpha: 2.0, p: 1000, opnorm: 1.0 });
        if let (Ok(a), Ok(b)) = (t(lo), t(hi)) {
            prop_assert!(a.eps_min <= b.eps_min && a.eps_max <= b.eps_max);
            prop_assert!(a.c_proof <= b.c_proof && a.c_stated <= b.c_stated);
        }
    }

    #[test]
    fn blocks_partition_and_decrease(
        h in prop::collection::vec(prop_oneof![Just(0.0), Just(1.5), Just(-1.5), -10.0f64..10.0], 2..30),
        s0 in 1usize..6,
        seed in any::<u64>(),
    ) {
        let p = h.len();
        let t0 = sample_support(p, 1 + (seed as usize) % (p - 1), seed).unwrap();
        let blocks = block_decompose(&h, &t0, s0).unwrap();
        let mut seen: Vec<usize> = blocks.iter().flat_map(|b| b.indices().to_vec()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, t0.complement());
        for b in &blocks[..blocks.len().saturating_sub(1)] {
            prop_assert_eq!(b.len(), s0);
        }
        for w in blocks.windows(2) {
            let low = w[0].indices().iter().map(|&i| h[i].abs()).fold(f64::INFINITY, f64::min);
            let high = w[1].indices().iter().map(|&i| h[i].abs()).fold(0.0, f64::max);
            prop_assert!(low >= high);
        }
        prop_assert!(ek_inequality_check(&h, &t0, s0).unwrap().holds);
    }

    #[test]
    fn csv_round_trips(seed in any::<u64>(), n in 1usize..6, p in 1usize..6) {
        let m = gaussian_matrix(n, p, seed).scale(1e3);
        prop_assert_eq!(parse_csv(&to_csv(&m)).unwrap(), m);
    }

    #[test]
    fn kernel_basis_is_orthonormal_null_space(seed in any::<u64>(), n in 1usize..6, extra in 0usize..4) {
        let p = n + extra;
        let a = gaussian_matrix(n, p, seed);
        let d = p - rank(&a);
        match kernel_basis(&a) {
            None => prop_assert_eq!(d, 0),
            Some(k) => {
                prop_assert_eq!(k.cols(), d);
                let ak = a.matmul(&k).unwrap();
                prop_assert!(ak.max_abs() <= 1e-10 * a.max_abs().max(1.0));
                let ktk = k.transpose().matmul(&k).unwrap();
                prop_assert!(ktk.sub(&DenseMatrix::identity(d)).unwrap().max_abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn sampled_ratio_never_exceeds_exact(seed in any::<u64>(), n in 3usize..8, d in 1usize..4, s in 1usize..3) {
        let p = n + d;
        let x = design(n, p, seed);
        let kernel = Kernel::of(&x);
        let t0 = sample_support(p, s, seed ^ 3).unwrap();
        let exact = kernel.ratio_exact(&t0, 5).unwrap();
        let sampled = kernel.ratio_sampled(&t0, 500, seed).unwrap();
        prop_assert!(sampled <= exact + 1e-9, "sampled {} exact {}", sampled, exact);
    }

    #[test]
    fn simplex_matches_vertex_enumeration(seed in any::<u64>(), m in 1usize..4, extra in 1usize..6) {
        let nv = m + extra;
        let mut r = rng::seeded(seed);
        let a = DenseMatrix::from_fn(m, nv, |_, _| r.random_range(-2.0..2.0));
        let x0: Vec<f64> = (0..nv).map(|_| r.random_range(0.0..1.0)).collect();
        let b = a.mat_vec(&x0).unwrap();
        let c: Vec<f64> = (0..nv).map(|_| r.random_range(0.0..3.0)).collect();
        let sol = lp_solve(&LpProblem::new(c.clone(), a.clone(), b.clone()).unwrap());
        prop_assert_eq!(sol.status, LpStatus::Optimal);

        let mut best = f64::INFINITY;
        for cols in all_supports(nv, m) {
            let bm = a.select_columns(cols.indices());
            if let Ok(xb) = solve(&bm, &b) {
                if xb.iter().all(|&v| v >= -1e-12) {
                    let obj: f64 = cols.indices().iter().zip(&xb).map(|(&j, v)| c[j] * v).sum();
                    best = best.min(obj);
                }
            }
        }
        prop_assert!((sol.objective - best).abs() <= 1e-8 * best.abs().max(1.0), "{} vs {}", sol.objective, best);
        prop_assert!(sol.duality_gap.unwrap() <= 1e-8);
    }

    #[test]
    fn basis_pursuit_never_beaten_by_truth(seed in any::<u64>(), n in 2usize..6, extra in 1usize..6, s in 1usize..3) {
        let p = n + extra;
        let x = design(n, p, seed);
        let mut r = rng::seeded(seed ^ 9);
        let t = sample_support(p, s.min(n), seed).unwrap();
        let mut beta = vec![0.0; p];
        for &j in t.indices() {
            beta[j] = r.random_range(-3.0..3.0);
        }
        let y = x.data().mat_vec(&beta).unwrap();
        let fit = basis_pursuit(&x, &y).unwrap();
        prop_assert_eq!(fit.status, LpStatus::Optimal);
        let l1: f64 = beta.iter().map(|v| v.abs()).sum();
        prop_assert!(fit.objective_value <= l1 + 1e-8);
        let scale = y.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
        prop_assert!(fit.residual_norm <= 1e-8 * scale);
    }

    #[test]
    fn pi_and_bound_formula(p in 2usize..5000, alpha in 1.0f64..4.0) {
        let raw = 1944.0 / (p as f64).powf(alpha);
        let (bound, unclamped) = rip_failure_bound(p, alpha);
        prop_assert_eq!(unclamped, raw);
        prop_assert_eq!(bound, raw.min(1.0));
        let k = theorem_constants(&TheoremInputs { s0: 1, mu: 0.0, alpha, p, opnorm: 1.0 }).unwrap();
        prop_assert_eq!(k.pi, (1.0 - raw).max(0.0));
    }
}

#[test]
fn gershgorin_window_forces_zero_failures() {
    for seed in 0..5 {
        let x = common::perturbed_identity(40, 0.01, seed);
        let mu = x.coherence().unwrap();
        for s0 in 2..5 {
            let r = mu * (s0 - 1) as f64 * 1.0001 + 1e-12;
            if r < 1.0 {
                let rep = weak_rip_estimate(&x, s0, r, 1.0, 300, seed).unwrap();
                assert_eq!(rep.failures, 0, "seed {seed} s0 {s0}");
            }
        }
    }
}

/// Pearson chi-square over all 15 supports of size 2 in 6; the 0.999
/// quantile of chi-square with 14 degrees of freedom is 36.12.
#[test]
fn support_sampler_is_uniform() {
    let (p, s, draws) = (6, 2, 30_000);
    let all: Vec<SupportSet> = all_supports(p, s).collect();
    assert_eq!(all.len() as u64, binomial(p, s));
    let mut counts = vec![0usize; all.len()];
    for i in 0..draws {
        let t = sample_support(p, s, i).unwrap();
        counts[all.iter().position(|u| *u == t).unwrap()] += 1;
    }
    let expect = draws as f64 / all.len() as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    assert!(chi2 < 36.12, "chi2 = {chi2}, counts {counts:?}");
}
