//! Helpers shared by the integration tests: random states and rates, and
//! an independent Stinespring construction of MAD channels.

#![allow(dead_code)]

use madcap::linalg::{ComplexMatrix, C64};
use madcap::{DensityMatrix, RateMatrix, RateVector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `G G^dagger / Tr` for a complex Gaussian-ish `G`.
pub fn random_state(r: &mut impl Rng, d: usize) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    });
    let m = &g * g.adjoint();
    let t = m.trace();
    DensityMatrix::new(m / t).expect("valid state")
}

pub fn random_unitary_diag(r: &mut impl Rng, d: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        u[(k, k)] = C64::from_polar(1.0, r.gen_range(0.0..std::f64::consts::TAU));
    }
    u
}

/// Unitary from the QR factor of a random complex matrix.
pub fn random_unitary(r: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    });
    g.qr().q()
}

pub fn random_rates3(r: &mut impl Rng) -> RateVector3 {
    let g1 = r.gen_range(0.0..=1.0);
    let g2: f64 = r.gen_range(0.0..=1.0);
    let g3 = r.gen_range(0.0..=1.0 - g2);
    RateVector3::new(g1, g2, g3).unwrap()
}

/// Valid rates for dimension `d`: each level loses at most all of its
/// population.
pub fn random_rates(r: &mut impl Rng, d: usize) -> RateMatrix {
    let mut entries = Vec::new();
    for j in 1..d {
        let mut budget: f64 = r.gen_range(0.0..=1.0);
        for i in (0..j).rev() {
            let g = r.gen_range(0.0..=budget);
            budget -= g;
            entries.push(((j, i), g));
        }
    }
    RateMatrix::new(d, &entries).unwrap()
}

/// Kraus operators written directly from the rate definition: the no-jump
/// operator, then jumps by source level ascending and target descending.
pub fn reference_kraus(d: usize, rate: impl Fn(usize, usize) -> f64) -> Vec<ComplexMatrix> {
    let mut k0 = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let lost: f64 = (0..j).map(|i| rate(j, i)).sum();
        k0[(j, j)] = C64::new((1.0 - lost).max(0.0).sqrt(), 0.0);
    }
    let mut ops = vec![k0];
    for j in 1..d {
        for i in (0..j).rev() {
            let mut k = ComplexMatrix::zeros(d, d);
            k[(i, j)] = C64::new(rate(j, i).sqrt(), 0.0);
            ops.push(k);
        }
    }
    ops
}

/// Output and environment states from `V rho V^dagger` with
/// `V = sum_k K_k (x) |k>`, traced by explicit index sums.
pub fn stinespring(ops: &[ComplexMatrix], rho: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let d = rho.nrows();
    let n = ops.len();
    let v = ComplexMatrix::from_fn(d * n, d, |row, col| ops[row % n][(row / n, col)]);
    let big = &v * rho * v.adjoint();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut env = ComplexMatrix::zeros(n, n);
    for a in 0..d {
        for b in 0..d {
            for k in 0..n {
                out[(a, b)] += big[(a * n + k, b * n + k)];
            }
        }
    }
    for k in 0..n {
        for l in 0..n {
            for a in 0..d {
                env[(k, l)] += big[(a * n + k, a * n + l)];
            }
        }
    }
    (out, env)
}

pub fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
