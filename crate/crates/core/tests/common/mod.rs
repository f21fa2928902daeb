#![allow(dead_code)]

pub mod oracle;

use cscert::design::DesignMatrix;
use cscert::linalg::DenseMatrix;
use cscert::rng;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

pub fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    if want == 0.0 {
        got.abs() <= tol
    } else {
        ((got - want) / want).abs() <= tol
    }
}

pub fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut r = rng::seeded(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut r))
}

/// Column-normalised `I + eps·G`: a square design with coherence of order `eps`.
pub fn perturbed_identity(n: usize, eps: f64, seed: u64) -> DesignMatrix {
    let g = gaussian_matrix(n, n, seed);
    let m = DenseMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)) + eps * g[(i, j)]);
    DesignMatrix::from_raw(m, true).unwrap()
}

/// Normalised design `n × p` whose kernel has dimension exactly `p − n`
/// with probability one.
pub fn gaussian_design(n: usize, p: usize, seed: u64) -> DesignMatrix {
    DesignMatrix::from_raw(gaussian_matrix(n, p, seed), true).unwrap()
}

pub fn random_symmetric(dim: usize, r: &mut rng::Rng) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v: f64 = r.random_range(-1.0..1.0);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

/// Brute-force `R(T₀)` on a 2-dimensional kernel: the ratio is homogeneous,
/// so sweeping the unit circle of coefficients covers every direction.
pub fn grid_ratio_d2(k: &DenseMatrix, t0: &[usize], points: usize) -> f64 {
    let mut best: f64 = 0.0;
    for s in 0..points {
        let th = std::f64::consts::PI * s as f64 / points as f64;
        let (c, sn) = (th.cos(), th.sin());
        let mut top = 0.0;
        let mut tail = 0.0;
        for i in 0..k.rows() {
            let h = c * k[(i, 0)] + sn * k[(i, 1)];
            if t0.contains(&i) {
                top += h * h;
            } else {
                tail += h.abs();
            }
        }
        if tail > 0.0 {
            best = best.max(top.sqrt() / tail);
        }
    }
    best
}
