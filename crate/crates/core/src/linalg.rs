//! Dense complex linear algebra on small matrices: Hermitian spectra,
//! von Neumann entropy, positivity, Kronecker products and partial traces.
//!
//! All matrices are `nalgebra::DMatrix<Complex64>`; dimensions in this crate
//! never exceed 16x16, so everything is dense.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Max-norm residual accepted for `H == H^dagger`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Trace deviation accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-NEG_EIGEN_TOL, 0)` are rounding noise and clip to zero.
pub const NEG_EIGEN_TOL: f64 = 1e-12;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

fn require_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn symmetrized(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix. Returns the spectrum (descending)
/// and the matching unitary whose columns are eigenvectors.
pub fn eigh(h: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    let n = require_square(h)?;
    let residual = hermiticity_residual(h);
    if residual > HERMITIAN_TOL * max_abs(h).max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    if n == 0 {
        return Ok((Spectrum { eigenvalues: vec![] }, ComplexMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::new(symmetrized(h));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    Ok((Spectrum { eigenvalues }, vectors))
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<Spectrum> {
    eigh(h).map(|(s, _)| s)
}

/// `-x log2 x` with the `0 log 0 = 0` convention. Negative inputs are treated
/// as zero; callers are responsible for rejecting genuinely negative weights.
pub fn neg_xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a list of nonnegative weights.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    weights.iter().copied().map(neg_xlog2x).sum()
}

/// Entropy of a spectrum, clipping rounding negatives. Fails on eigenvalues
/// below `-NEG_EIGEN_TOL`.
pub fn spectrum_entropy(spectrum: &Spectrum) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in spectrum.eigenvalues() {
        if lambda < -NEG_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {lambda:.3e}"
            )));
        }
        s += neg_xlog2x(lambda.clamp(0.0, 1.0));
    }
    Ok(s)
}

/// Von Neumann entropy in bits.
pub fn entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&eig_hermitian(rho.matrix())?)
}

pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    require_square(m)?;
    if m.nrows() == 0 {
        return Ok(true);
    }
    let spectrum = eig_hermitian(m)?;
    Ok(spectrum.min() >= -tol)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on `A (x) B` with the first factor being A.
/// `keep` names the subsystem that survives.
pub fn partial_trace(
    m: &ComplexMatrix,
    keep: Subsystem,
    dims: (usize, usize),
) -> Result<ComplexMatrix> {
    let n = require_square(m)?;
    let (da, db) = dims;
    if da * db != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: da * db,
        });
    }
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |i, j| {
            (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()
        }),
    })
}

/// Row-major vectorization `|i><j| -> |i>|j>`.
pub fn vectorize(m: &ComplexMatrix) -> nalgebra::DVector<C64> {
    let (r, cols) = m.shape();
    nalgebra::DVector::from_fn(r * cols, |k, _| m[(k / cols, k % cols)])
}

pub fn devectorize(v: &nalgebra::DVector<C64>, rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    ComplexMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Numerical rank: singular values above `tol * max(1, sigma_max)`.
pub fn rank(m: &ComplexMatrix, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let scale = sv.iter().copied().fold(0.0, f64::max).max(1.0);
    sv.iter().filter(|&&s| s > tol * scale).count()
}

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite up to `NEG_EIGEN_TOL`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let d = require_square(&matrix)?;
        if d == 0 {
            return Err(Error::InvalidDensity("empty matrix".into()));
        }
        let residual = hermiticity_residual(&matrix);
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!(
                "trace is {:.12} + {:.3e}i",
                trace.re, trace.im
            )));
        }
        let matrix = symmetrized(&matrix);
        let spectrum = eig_hermitian(&matrix)?;
        if spectrum.min() < -NEG_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                spectrum.min()
            )));
        }
        Ok(Self { matrix })
    }

    /// Wraps the output of a CPTP map applied to a valid state. Only the
    /// Hermitian part is kept; positivity is inherited from the map.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix) -> Self {
        Self {
            matrix: symmetrized(&matrix),
        }
    }

    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let d = populations.len();
        Self::new(ComplexMatrix::from_fn(d, d, |i, j| {
            if i == j {
                c(populations[i])
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::from_channel_output(ComplexMatrix::identity(d, d).scale(1.0 / d as f64))
    }

    pub fn basis(d: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(k, k)] = c(1.0);
        Self::from_channel_output(m)
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let d = psi.len();
        Ok(Self::from_channel_output(ComplexMatrix::from_fn(d, d, |i, j| {
            psi[i] * psi[j].conj() / norm2
        })))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn entropy(&self) -> Result<f64> {
        entropy(self)
    }

    /// Conjugation `U rho U^dagger`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Self {
        Self::from_channel_output(u * &self.matrix * u.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_diag(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(v.len(), v.len(), |i, j| if i == j { c(v[i]) } else { c(0.0) })
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let s = eig_hermitian(&ComplexMatrix::identity(3, 3)).unwrap();
        assert_eq!(s.eigenvalues().len(), 3);
        for &l in s.eigenvalues() {
            assert!((l - 1.0).abs() < 1e-14);
        }
        let s = eig_hermitian(&real_diag(&[0.25, 0.5, 0.25])).unwrap();
        let ev = s.eigenvalues();
        assert!((ev[0] - 0.5).abs() < 1e-14);
        assert!((ev[1] - 0.25).abs() < 1e-14);
        assert!((ev[2] - 0.25).abs() < 1e-14);
    }

    #[test]
    fn eig_scaled_pauli_x() {
        // [[0, sqrt(g) r01], [sqrt(g) r01*, 0]] with g = 1, r01 = 1/2
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.0), c(0.5), c(0.5), c(0.0)]);
        let ev = eig_hermitian(&m).unwrap();
        assert!((ev.eigenvalues()[0] - 0.5).abs() < 1e-14);
        assert!((ev.eigenvalues()[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_bad_input() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&rect), Err(Error::NotSquare { .. })));
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn entropy_examples() {
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!((entropy(&mixed).unwrap() - 3f64.log2()).abs() < 1e-12);
        assert!(entropy(&DensityMatrix::basis(3, 0)).unwrap().abs() < 1e-12);
        let d = DensityMatrix::diagonal(&[0.5, 0.25, 0.25]).unwrap();
        assert!((entropy(&d).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn spectrum_entropy_clips_rounding_only() {
        let s = Spectrum {
            eigenvalues: vec![1.0, -5e-13],
        };
        assert_eq!(spectrum_entropy(&s).unwrap(), 0.0);
        let s = Spectrum {
            eigenvalues: vec![1.0, -1e-6],
        };
        assert!(spectrum_entropy(&s).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&real_diag(&[1.0, 0.0, 0.0]), 1e-9).unwrap());
        assert!(!is_psd(&real_diag(&[1.0, -0.01]), 1e-9).unwrap());
        assert!(is_psd(&ComplexMatrix::zeros(3, 3), 1e-9).unwrap());
        assert!(is_psd(&ComplexMatrix::zeros(2, 3), 1e-9).is_err());
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2, 2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4, 4));
        let k = kron(&real_diag(&[2.0, 3.0]), &real_diag(&[5.0, 7.0]));
        assert_eq!(k, real_diag(&[10.0, 14.0, 15.0, 21.0]));
    }

    #[test]
    fn kron_mixed_product_rule() {
        let a = ComplexMatrix::from_fn(2, 3, |i, j| C64::new(i as f64 + 0.5, j as f64));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(j as f64 - i as f64, 1.0));
        let cm = ComplexMatrix::from_fn(3, 2, |i, j| C64::new((i * j) as f64, 0.3));
        let d = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(1.0, (i + j) as f64));
        let lhs = kron(&a, &b) * kron(&cm, &d);
        let rhs = kron(&(&a * &cm), &(&b * &d));
        assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_and_bell() {
        let rho = real_diag(&[0.7, 0.3]);
        let sigma = real_diag(&[0.2, 0.5, 0.3]).scale(2.0);
        let prod = kron(&rho, &sigma);
        let a = partial_trace(&prod, Subsystem::A, (2, 3)).unwrap();
        assert!(max_abs_diff(&a, &rho.scale(2.0)) < 1e-14);
        let b = partial_trace(&prod, Subsystem::B, (2, 3)).unwrap();
        assert!(max_abs_diff(&b, &sigma) < 1e-14);

        let s = 0.5f64;
        let bell = ComplexMatrix::from_fn(4, 4, |i, j| {
            if (i == 0 || i == 3) && (j == 0 || j == 3) {
                c(s)
            } else {
                c(0.0)
            }
        });
        let red = partial_trace(&bell, Subsystem::A, (2, 2)).unwrap();
        assert!(max_abs_diff(&red, &ComplexMatrix::identity(2, 2).scale(0.5)) < 1e-15);
        assert!(partial_trace(&bell, Subsystem::A, (3, 2)).is_err());
    }

    #[test]
    fn vectorize_round_trip() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| C64::new(i as f64, j as f64));
        let v = vectorize(&m);
        assert_eq!(v[1], m[(0, 1)]);
        assert_eq!(devectorize(&v, 2, 3), m);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.1, -0.1]).is_err());
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0.5), c(0.5), c(0.4), c(0.5)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian { .. })));
        let plus = DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap();
        assert!((plus.entry(0, 1).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rank_counts_singular_values() {
        assert_eq!(rank(&real_diag(&[1.0, 1e-3, 0.0]), 1e-10), 2);
    }
}
