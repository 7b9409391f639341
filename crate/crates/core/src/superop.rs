//! Channels as matrices on row-major vectorized operators, their Choi
//! matrices, CPTP certification, and the analytic inverse of MAD channels.

use serde::Serialize;

use crate::channel::{kraus_set, KrausSet, RateMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    c, devectorize, eig_hermitian, hermiticity_residual, max_abs_diff, partial_trace, rank,
    vectorize, ComplexMatrix, Subsystem,
};

/// Below this survival probability `1 - xi_j` a MAD channel counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Linear map `vec(rho) -> vec(Phi(rho))`, a `d_out^2 x d_in^2` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperoperatorMatrix {
    m: ComplexMatrix,
    d_in: usize,
    d_out: usize,
}

impl SuperoperatorMatrix {
    pub fn new(m: ComplexMatrix, d_in: usize, d_out: usize) -> Result<Self> {
        if m.shape() != (d_out * d_out, d_in * d_in) {
            return Err(Error::DimensionMismatch {
                expected: d_out * d_out * d_in * d_in,
                found: m.nrows() * m.ncols(),
            });
        }
        Ok(Self { m, d_in, d_out })
    }

    /// `sum_k K_k (x) conj(K_k)`.
    pub fn from_kraus(k: &KrausSet) -> Self {
        let (d_in, d_out) = (k.d_in(), k.d_out());
        let mut m = ComplexMatrix::zeros(d_out * d_out, d_in * d_in);
        for op in k.ops() {
            m += op.kronecker(&op.map(|z| z.conj()));
        }
        Self { m, d_in, d_out }
    }

    /// Matrix of the complementary channel `rho -> [Tr K_i rho K_j^dagger]_{ij}`.
    pub fn complement_from_kraus(k: &KrausSet) -> Self {
        let (d_in, n) = (k.d_in(), k.len());
        let ops = k.ops();
        let m = ComplexMatrix::from_fn(n * n, d_in * d_in, |row, col| {
            let (i, j) = (row / n, row % n);
            let (a, b) = (col / d_in, col % d_in);
            (0..k.d_out())
                .map(|r| ops[i][(r, a)] * ops[j][(r, b)].conj())
                .sum()
        });
        Self { m, d_in, d_out: n }
    }

    pub fn of_rates(rates: &RateMatrix) -> Self {
        Self::from_kraus(&kraus_set(rates, false))
    }

    pub fn complement_of_rates(rates: &RateMatrix, minimal: bool) -> Self {
        Self::complement_from_kraus(&kraus_set(rates, minimal))
    }

    pub fn identity(d: usize) -> Self {
        Self {
            m: ComplexMatrix::identity(d * d, d * d),
            d_in: d,
            d_out: d,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                found: x.nrows(),
            });
        }
        Ok(devectorize(&(&self.m * vectorize(x)), self.d_out, self.d_out))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SuperoperatorMatrix) -> Result<Self> {
        if first.d_out != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                found: first.d_out,
            });
        }
        Ok(Self {
            m: &self.m * &first.m,
            d_in: first.d_in,
            d_out: self.d_out,
        })
    }

    pub fn max_abs_diff(&self, other: &SuperoperatorMatrix) -> f64 {
        if self.m.shape() != other.m.shape() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.m, &other.m)
    }

    /// `max_col sum |m_ij|`.
    pub fn norm1(&self) -> f64 {
        norm1(&self.m)
    }

    pub fn choi(&self) -> ChoiMatrix {
        choi_of_superop(self)
    }
}

fn norm1(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Unnormalized Choi matrix `sum_{ij} |i><j| (x) Phi(|i><j|)`, input factor
/// first. For a trace-preserving map its output partial trace is `1_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    m: ComplexMatrix,
    d_in: usize,
    d_out: usize,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Partial trace over the output factor.
    pub fn input_marginal(&self) -> ComplexMatrix {
        partial_trace(&self.m, Subsystem::A, (self.d_in, self.d_out))
            .expect("Choi dimensions are consistent")
    }

    /// Number of Kraus operators in a minimal representation.
    pub fn rank(&self, tol: f64) -> usize {
        rank(&self.m, tol)
    }
}

pub fn choi_of_superop(s: &SuperoperatorMatrix) -> ChoiMatrix {
    let (d_in, d_out) = (s.d_in, s.d_out);
    let m = ComplexMatrix::from_fn(d_in * d_out, d_in * d_out, |row, col| {
        let (i, a) = (row / d_out, row % d_out);
        let (j, b) = (col / d_out, col % d_out);
        s.m[(a * d_out + b, i * d_in + j)]
    });
    ChoiMatrix { m, d_in, d_out }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CptpReport {
    pub cptp: bool,
    pub min_choi_eigenvalue: f64,
    pub trace_residual: f64,
    pub hermiticity_residual: f64,
}

/// Complete positivity via the Choi spectrum and trace preservation via its
/// input marginal, both at tolerance `tol`.
pub fn is_cptp_superop(s: &SuperoperatorMatrix, tol: f64) -> CptpReport {
    let choi = choi_of_superop(s);
    let herm = hermiticity_residual(&choi.m);
    let trace_residual = max_abs_diff(
        &choi.input_marginal(),
        &ComplexMatrix::identity(s.d_in, s.d_in),
    );
    let min_eig = if herm <= tol {
        eig_hermitian(&choi.m).map(|sp| sp.min()).unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };
    CptpReport {
        cptp: herm <= tol && trace_residual <= tol && min_eig >= -tol,
        min_choi_eigenvalue: min_eig,
        trace_residual,
        hermiticity_residual: herm,
    }
}

/// Inverse of a MAD superoperator together with its 1-norm condition number.
#[derive(Debug, Clone)]
pub struct SuperopInverse {
    pub inverse: SuperoperatorMatrix,
    pub condition_number: f64,
}

/// Analytic inverse of a MAD channel. Populations evolve under an upper
/// triangular stochastic matrix, inverted by back substitution; each
/// coherence `|a><b|` is rescaled by `s_a s_b` and inverted as a scalar.
pub fn superop_inverse(rates: &RateMatrix) -> Result<SuperopInverse> {
    let d = rates.dim();
    for j in 1..d {
        let keep = 1.0 - rates.xi(j);
        if keep < SINGULAR_TOL {
            return Err(Error::NotInvertible(format!(
                "level {j} keeps probability {keep:.3e}"
            )));
        }
    }
    // T[i][j]: probability of j -> i
    let mut t = vec![vec![0.0; d]; d];
    for j in 0..d {
        t[j][j] = 1.0 - rates.xi(j);
        for i in 0..j {
            t[i][j] = rates.rate(j, i);
        }
    }
    // Upper triangular inverse, column by column.
    let mut tinv = vec![vec![0.0; d]; d];
    for col in 0..d {
        for i in (0..=col).rev() {
            let rhs = if i == col { 1.0 } else { 0.0 };
            let acc: f64 = (i + 1..=col).map(|k| t[i][k] * tinv[k][col]).sum();
            tinv[i][col] = (rhs - acc) / t[i][i];
        }
    }
    let s: Vec<f64> = (0..d).map(|j| rates.survival(j)).collect();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            if a == b {
                for j in 0..d {
                    m[(a * d + a, j * d + j)] = c(tinv[a][j]);
                }
            } else {
                m[(a * d + b, a * d + b)] = c(1.0 / (s[a] * s[b]));
            }
        }
    }
    let inverse = SuperoperatorMatrix { m, d_in: d, d_out: d };
    let condition_number = SuperoperatorMatrix::of_rates(rates).norm1() * inverse.norm1();
    Ok(SuperopInverse {
        inverse,
        condition_number,
    })
}

/// True when `ker a ⊆ ker b`, i.e. stacking `b` under `a` adds no rank.
pub fn kernel_contained(a: &SuperoperatorMatrix, b: &SuperoperatorMatrix, tol: f64) -> bool {
    assert_eq!(a.d_in, b.d_in, "maps must share their input space");
    let (ra, rb) = (a.m.nrows(), b.m.nrows());
    let stacked = ComplexMatrix::from_fn(ra + rb, a.m.ncols(), |i, j| {
        if i < ra {
            a.m[(i, j)]
        } else {
            b.m[(i - ra, j)]
        }
    });
    rank(&stacked, tol) == rank(&a.m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply, complement, RateMatrix};
    use crate::linalg::{DensityMatrix, C64};

    fn sample_state() -> DensityMatrix {
        let psi = [C64::new(0.3, 0.2), C64::new(0.5, -0.1), C64::new(0.4, 0.3)];
        let pure = DensityMatrix::pure(&psi).unwrap();
        let mixed = pure.matrix().scale(0.7) + DensityMatrix::maximally_mixed(3).matrix().scale(0.3);
        DensityMatrix::new(mixed).unwrap()
    }

    #[test]
    fn identity_channel_superop_is_identity() {
        let s = SuperoperatorMatrix::of_rates(&RateMatrix::identity(3));
        assert_eq!(s, SuperoperatorMatrix::identity(3));
    }

    #[test]
    fn full_decay_column() {
        let s = SuperoperatorMatrix::of_rates(&RateMatrix::qutrit(1.0, 0.0, 0.0).unwrap());
        // column of |1><1| (index 4) lands on |0><0| (index 0)
        assert!((s.matrix()[(0, 4)].re - 1.0).abs() < 1e-15);
        let others: f64 = (1..9).map(|r| s.matrix()[(r, 4)].norm()).sum();
        assert!(others < 1e-15);
    }

    #[test]
    fn superop_and_complement_match_direct_application() {
        let g = RateMatrix::qutrit(0.3, 0.2, 0.4).unwrap();
        let rho = sample_state();
        let s = SuperoperatorMatrix::of_rates(&g);
        let out = s.apply(rho.matrix()).unwrap();
        assert!(max_abs_diff(&out, apply(&g, &rho).unwrap().matrix()) < 1e-14);
        let sc = SuperoperatorMatrix::complement_of_rates(&g, false);
        let env = sc.apply(rho.matrix()).unwrap();
        assert!(max_abs_diff(&env, complement(&g, &rho).unwrap().matrix()) < 1e-14);
    }

    #[test]
    fn inverse_examples() {
        let inv = superop_inverse(&RateMatrix::identity(3)).unwrap();
        assert_eq!(inv.inverse, SuperoperatorMatrix::identity(3));
        assert!(matches!(
            superop_inverse(&RateMatrix::qutrit(1.0, 0.0, 0.0).unwrap()),
            Err(Error::NotInvertible(_))
        ));
        assert!(superop_inverse(&RateMatrix::qutrit(0.2, 0.5, 0.5).unwrap()).is_err());
        let g = RateMatrix::qutrit(0.3, 0.2, 0.1).unwrap();
        let inv = superop_inverse(&g).unwrap();
        let prod = inv.inverse.compose(&SuperoperatorMatrix::of_rates(&g)).unwrap();
        assert!(prod.max_abs_diff(&SuperoperatorMatrix::identity(3)) < 1e-12);
        assert!(inv.condition_number >= 1.0);
    }

    #[test]
    fn inverse_condition_grows_near_singularity() {
        let a = superop_inverse(&RateMatrix::qutrit(0.5, 0.0, 0.0).unwrap()).unwrap();
        let b = superop_inverse(&RateMatrix::qutrit(0.999, 0.0, 0.0).unwrap()).unwrap();
        assert!(b.condition_number > 10.0 * a.condition_number);
    }

    #[test]
    fn choi_examples() {
        let choi = choi_of_superop(&SuperoperatorMatrix::identity(2));
        let mut bell = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(i, j)] = c(1.0);
        }
        assert_eq!(choi.matrix(), &bell);
        assert_eq!(choi.rank(1e-10), 1);

        // replace every input by |0><0|
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = c(1.0);
        m[(0, 3)] = c(1.0);
        let reset = SuperoperatorMatrix::new(m, 2, 2).unwrap();
        let choi = choi_of_superop(&reset);
        let mut expect = ComplexMatrix::zeros(4, 4);
        expect[(0, 0)] = c(1.0);
        expect[(2, 2)] = c(1.0);
        assert_eq!(choi.matrix(), &expect);
        assert!(is_cptp_superop(&reset, 1e-9).cptp);

        let interior = SuperoperatorMatrix::of_rates(&RateMatrix::qutrit(0.2, 0.3, 0.4).unwrap());
        assert_eq!(interior.choi().rank(1e-10), 4);
    }

    #[test]
    fn mad_channels_are_cptp() {
        for g in [(0.0, 0.0, 0.0), (1.0, 1.0, 0.0), (0.3, 0.2, 0.5), (0.9, 0.0, 1.0)] {
            let s = SuperoperatorMatrix::of_rates(&RateMatrix::qutrit(g.0, g.1, g.2).unwrap());
            let r = is_cptp_superop(&s, 1e-9);
            assert!(r.cptp, "{g:?}: {r:?}");
        }
    }

    #[test]
    fn transpose_is_not_cp() {
        let mut m = ComplexMatrix::zeros(4, 4);
        // vec(rho^T): (a,b) <- (b,a)
        for a in 0..2 {
            for b in 0..2 {
                m[(a * 2 + b, b * 2 + a)] = c(1.0);
            }
        }
        let t = SuperoperatorMatrix::new(m, 2, 2).unwrap();
        let r = is_cptp_superop(&t, 1e-9);
        assert!(!r.cptp);
        assert!((r.min_choi_eigenvalue + 1.0).abs() < 1e-12);
        assert!(r.trace_residual < 1e-15);
    }

    #[test]
    fn kernel_inclusion() {
        let full = SuperoperatorMatrix::of_rates(&RateMatrix::qutrit(1.0, 0.2, 0.3).unwrap());
        let env = SuperoperatorMatrix::complement_of_rates(&RateMatrix::qutrit(1.0, 0.2, 0.3).unwrap(), true);
        assert!(!kernel_contained(&full, &env, 1e-10));
        let id = SuperoperatorMatrix::identity(3);
        assert!(kernel_contained(&id, &full, 1e-10));
    }
}
