//! Coherent and mutual information of MAD channels, their maxima over
//! diagonal inputs, and the quantum, private and entanglement-assisted
//! capacities in every regime where they are known exactly.

use serde::Serialize;

use crate::channel::{kraus_set, RateMatrix, RateVector3, RATE_TOL};
use crate::degradability::{check_degradable, CHOI_TOL};
use crate::error::{Error, Result};
use crate::linalg::{entropy, shannon_entropy, DensityMatrix};
use crate::simplex::{
    maximize_interval, maximize_simplex, maximize_simplex_multistart, SimplexPoint, DEFAULT_TOL,
};

/// Number of coarse-grid starts for objectives that may not be concave.
pub const MULTISTART: usize = 16;
/// Interval bounds closer than this are reported as exact.
pub const EXACT_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Exact,
    Zero,
    LowerBound,
    Interval,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "Exact",
            Status::Zero => "Zero",
            Status::LowerBound => "LowerBound",
            Status::Interval => "Interval",
        }
    }
}

/// Which argument produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Diagonal maximum of a degradable channel.
    DiagonalDegradable,
    /// Diagonal maximum of a channel not known to be degradable.
    DiagonalLowerBound,
    SingleDecay,
    /// Monotonicity squeeze between the noiseless qubit and the value 1 at 1/2.
    SingleDecayPlateau,
    /// Effective qubit map on the `g1 = 1` plane.
    Gamma1One,
    Gamma1OneAntidegradable,
    Gamma2Zero,
    Gamma2ZeroAntidegradable,
    /// Constancy of the `g2 = 0` surface beyond the degradability border.
    Gamma2ZeroSeam,
    Gamma1Zero,
    Gamma1ZeroPlateau,
    /// `g2 + g3 = 1` reduces to a qubit amplitude damping channel.
    SumOneQubitAdc,
    QubitAdc,
    QubitAdcAntidegradable,
    /// `g1, g3 >= 1/2`: bottleneck through an antidegradable factor.
    ZeroRegion,
    /// Diagonal lower bound against factorization upper bounds.
    BottleneckInterval,
    EntanglementAssisted,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::DiagonalDegradable => "diagonal-degradable",
            Method::DiagonalLowerBound => "diagonal-lower-bound",
            Method::SingleDecay => "single-decay",
            Method::SingleDecayPlateau => "single-decay-plateau",
            Method::Gamma1One => "gamma1-one",
            Method::Gamma1OneAntidegradable => "gamma1-one-antidegradable",
            Method::Gamma2Zero => "gamma2-zero",
            Method::Gamma2ZeroAntidegradable => "gamma2-zero-antidegradable",
            Method::Gamma2ZeroSeam => "gamma2-zero-seam",
            Method::Gamma1Zero => "gamma1-zero",
            Method::Gamma1ZeroPlateau => "gamma1-zero-plateau",
            Method::SumOneQubitAdc => "sum-one-qubit-adc",
            Method::QubitAdc => "qubit-adc",
            Method::QubitAdcAntidegradable => "qubit-adc-antidegradable",
            Method::ZeroRegion => "zero-region",
            Method::BottleneckInterval => "bottleneck-interval",
            Method::EntanglementAssisted => "entanglement-assisted",
        }
    }
}

/// A capacity value with its status. `upper` is `None` only for lower bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityEstimate {
    pub lower: f64,
    pub upper: Option<f64>,
    pub status: Status,
    pub method: Method,
    pub argmax: Option<SimplexPoint>,
    pub caveat: Option<String>,
}

impl CapacityEstimate {
    pub fn exact(value: f64, method: Method, argmax: Option<SimplexPoint>) -> Self {
        let value = value.max(0.0);
        Self {
            lower: value,
            upper: Some(value),
            status: Status::Exact,
            method,
            argmax,
            caveat: None,
        }
    }

    pub fn zero(method: Method) -> Self {
        Self {
            lower: 0.0,
            upper: Some(0.0),
            status: Status::Zero,
            method,
            argmax: Some(SimplexPoint::vertex(0)),
            caveat: None,
        }
    }

    pub fn lower_bound(value: f64, method: Method, argmax: Option<SimplexPoint>) -> Self {
        Self {
            lower: value.max(0.0),
            upper: None,
            status: Status::LowerBound,
            method,
            argmax,
            caveat: None,
        }
    }

    /// The value for exact and zero estimates.
    pub fn value(&self) -> Option<f64> {
        match self.status {
            Status::Exact | Status::Zero => Some(self.lower),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.status, Status::Exact | Status::Zero)
    }
}

fn neg_f(x: f64) -> f64 {
    // -x log2 x
    crate::linalg::neg_xlog2x(x)
}

fn f(x: f64) -> f64 {
    -neg_f(x)
}

fn h2(x: f64) -> f64 {
    neg_f(x) + neg_f(1.0 - x)
}

/// Closed-form coherent and mutual information on diagonal inputs, one per
/// solvable regime, written with `f(x) = x log2 x`.
pub mod brackets {
    use super::{f, h2, neg_f};
    use crate::simplex::SimplexPoint;

    /// Single decay 1 -> 0 with rate `g1`.
    pub fn single_decay(g1: f64, p: &SimplexPoint) -> f64 {
        let (p0, p1, p2) = (p.p0, p.p1, p.p2);
        -f(p0 + g1 * p1) - f((1.0 - g1) * p1) - f(p2) + f(1.0 - g1 * p1) + f(g1 * p1)
    }

    /// `g1 = 1` plane; `p` is the population of level 2, level 1 empty.
    pub fn gamma1_one(g2: f64, g3: f64, p: f64) -> f64 {
        -f(1.0 - (1.0 - g3) * p) - f((1.0 - g2 - g3) * p) + f(1.0 - (g2 + g3) * p) + f(g3 * p)
    }

    /// `g2 = 0` plane.
    pub fn gamma2_zero(g1: f64, g3: f64, p: &SimplexPoint) -> f64 {
        let (p1, p2) = (p.p1, p.p2);
        -f(1.0 - (1.0 - g1) * p1 - (1.0 - g3) * p2) - f((1.0 - g1) * p1) - f((1.0 - g3) * p2)
            + f(1.0 - g1 * p1 - g3 * p2)
            + f(g1 * p1)
            + f(g3 * p2)
    }

    /// `g1 = 0` plane.
    pub fn gamma1_zero(g2: f64, g3: f64, p: &SimplexPoint) -> f64 {
        let (p0, p1, p2) = (p.p0, p.p1, p.p2);
        -f(p0 + g3 * p2) - f(p1 + g2 * p2) - f((1.0 - g2 - g3) * p2)
            + f(1.0 - (g2 + g3) * p2)
            + f(g2 * p2)
            + f(g3 * p2)
    }

    /// Mutual information of the single decay channel.
    pub fn single_decay_mutual(g1: f64, p: &SimplexPoint) -> f64 {
        neg_f(p.p0) + neg_f(p.p1) + neg_f(p.p2) + single_decay(g1, p)
    }

    /// Qubit amplitude damping with excited population `p`.
    pub fn qubit_adc(g: f64, p: f64) -> f64 {
        h2((1.0 - g) * p) - h2(g * p)
    }
}

/// `S(D(rho)) - S(D~(rho))`.
pub fn coherent_info(rates: &RateMatrix, rho: &DensityMatrix) -> Result<f64> {
    let k = kraus_set(rates, false);
    Ok(entropy(&k.apply(rho)?)? - entropy(&k.complement(rho)?)?)
}

/// `S(rho) + S(D(rho)) - S(D~(rho))`.
pub fn mutual_info(rates: &RateMatrix, rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy(rho)? + coherent_info(rates, rho)?)
}

/// Qutrit output populations for a diagonal input.
fn qutrit_output(g: &RateVector3, p: &SimplexPoint) -> [f64; 3] {
    let (g1, g2, g3) = (g.g1(), g.g2(), g.g3());
    [
        p.p0 + g1 * p.p1 + g3 * p.p2,
        (1.0 - g1) * p.p1 + g2 * p.p2,
        (1.0 - g2 - g3) * p.p2,
    ]
}

/// Qutrit environment populations in Kraus order (K0, K01, K12, K03).
fn qutrit_env(g: &RateVector3, p: &SimplexPoint) -> [f64; 4] {
    let (g1, g2, g3) = (g.g1(), g.g2(), g.g3());
    [
        p.p0 + (1.0 - g1) * p.p1 + (1.0 - g2 - g3) * p.p2,
        g1 * p.p1,
        g2 * p.p2,
        g3 * p.p2,
    ]
}

/// Coherent information of a diagonal qutrit input.
pub fn diag_coherent_info(g: &RateVector3, p: &SimplexPoint) -> f64 {
    shannon_entropy(&qutrit_output(g, p)) - shannon_entropy(&qutrit_env(g, p))
}

/// Mutual information of a diagonal qutrit input.
pub fn diag_mutual_info(g: &RateVector3, p: &SimplexPoint) -> f64 {
    shannon_entropy(&p.as_array()) + diag_coherent_info(g, p)
}

/// Maximum coherent information over diagonal inputs. Exact when the channel
/// is degradable, a lower bound otherwise.
pub fn max_diag_coherent_info(g: &RateVector3) -> CapacityEstimate {
    let degradable = check_degradable(&g.to_rate_matrix(), CHOI_TOL).verdict.is_yes();
    let objective = |p: &SimplexPoint| diag_coherent_info(g, p);
    if degradable {
        let (p, v) = maximize_simplex(objective, DEFAULT_TOL);
        CapacityEstimate::exact(v, Method::DiagonalDegradable, Some(p))
    } else {
        let (p, v) = maximize_simplex_multistart(objective, DEFAULT_TOL, MULTISTART);
        CapacityEstimate::lower_bound(v, Method::DiagonalLowerBound, Some(p))
    }
}

/// Diagonal maximum without the degradability test, searched from several
/// starts.
pub fn max_diag_coherent_info_value(g: &RateVector3) -> f64 {
    maximize_simplex_multistart(|p| diag_coherent_info(g, p), DEFAULT_TOL, MULTISTART).1
}

/// Maximum mutual information over diagonal inputs; concave, so a single
/// start suffices.
pub fn max_diag_mutual_info(g: &RateVector3) -> (SimplexPoint, f64) {
    if g.g2() <= RATE_TOL && g.g3() <= RATE_TOL {
        let g1 = g.g1();
        maximize_simplex(|p| brackets::single_decay_mutual(g1, p), DEFAULT_TOL)
    } else {
        maximize_simplex(|p| diag_mutual_info(g, p), DEFAULT_TOL)
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || value < -RATE_TOL || value > 1.0 + RATE_TOL {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

const HALF: f64 = 0.5;

fn at_least_half(x: f64) -> bool {
    x >= HALF - RATE_TOL
}

/// `Q = C_p` of `D(g1, 0, 0)`.
pub fn q_single_decay(g1: f64) -> Result<CapacityEstimate> {
    let g1 = check_unit("γ1", g1)?;
    if at_least_half(g1) {
        return Ok(CapacityEstimate::exact(
            1.0,
            Method::SingleDecayPlateau,
            Some(SimplexPoint::new(0.5, 0.0, 0.5)?),
        ));
    }
    let (p, v) = maximize_simplex(|p| brackets::single_decay(g1, p), DEFAULT_TOL);
    Ok(CapacityEstimate::exact(v, Method::SingleDecay, Some(p)))
}

/// `Q = C_p` of `D(1, g2, g3)`.
pub fn q_gamma1_one(g2: f64, g3: f64) -> Result<CapacityEstimate> {
    let g = RateVector3::new(1.0, g2, g3)?;
    let (g2, g3) = (g.g2(), g.g3());
    if g3 >= (1.0 - g2) / 2.0 - RATE_TOL {
        return Ok(CapacityEstimate::zero(Method::Gamma1OneAntidegradable));
    }
    let (p, v) = maximize_interval(|p| brackets::gamma1_one(g2, g3, p), 0.0, 1.0);
    Ok(CapacityEstimate::exact(
        v,
        Method::Gamma1One,
        Some(SimplexPoint::new(1.0 - p, 0.0, p)?),
    ))
}

/// `Q = C_p` of `D(g1, 0, g3)` on the whole square.
pub fn q_plane_gamma2_zero(g1: f64, g3: f64) -> Result<CapacityEstimate> {
    let g = RateVector3::new(g1, 0.0, g3)?;
    let swapped = g.g1() > g.g3();
    let (lo, hi) = if swapped {
        (g.g3(), g.g1())
    } else {
        (g.g1(), g.g3())
    };
    if at_least_half(lo) {
        return Ok(CapacityEstimate::zero(Method::Gamma2ZeroAntidegradable));
    }
    let (method, hi) = if at_least_half(hi) {
        (Method::Gamma2ZeroSeam, HALF)
    } else {
        (Method::Gamma2Zero, hi)
    };
    let (p, v) = maximize_simplex(|p| brackets::gamma2_zero(lo, hi, p), DEFAULT_TOL);
    let p = if swapped { p.swapped(1, 2) } else { p };
    Ok(CapacityEstimate::exact(v, method, Some(p)))
}

/// `Q = C_p` of `D(0, g2, g3)`.
pub fn q_plane_gamma1_zero(g2: f64, g3: f64) -> Result<CapacityEstimate> {
    let g = RateVector3::new(0.0, g2, g3)?;
    if g.g2() + g.g3() > HALF + RATE_TOL {
        return Ok(CapacityEstimate::exact(
            1.0,
            Method::Gamma1ZeroPlateau,
            Some(SimplexPoint::new(0.5, 0.5, 0.0)?),
        ));
    }
    let swapped = g.g2() > g.g3();
    let (lo, hi) = if swapped {
        (g.g3(), g.g2())
    } else {
        (g.g2(), g.g3())
    };
    let (p, v) = maximize_simplex(|p| brackets::gamma1_zero(lo, hi, p), DEFAULT_TOL);
    let p = if swapped { p.swapped(0, 1) } else { p };
    Ok(CapacityEstimate::exact(v, Method::Gamma1Zero, Some(p)))
}

/// Quantum capacity of the qubit amplitude damping channel.
pub fn qubit_adc_capacity(gamma: f64) -> Result<CapacityEstimate> {
    let gamma = check_unit("γ", gamma)?;
    if at_least_half(gamma) {
        return Ok(CapacityEstimate::zero(Method::QubitAdcAntidegradable));
    }
    let (p, v) = maximize_interval(|p| brackets::qubit_adc(gamma, p), 0.0, 1.0);
    Ok(CapacityEstimate::exact(
        v,
        Method::QubitAdc,
        Some(SimplexPoint::new(1.0 - p, p, 0.0)?),
    ))
}

/// `Q = C_p` of `D(g1, g2, 1 - g2)`, independent of `g2`.
pub fn q_plane_sum_one(g1: f64) -> Result<CapacityEstimate> {
    let mut est = qubit_adc_capacity(check_unit("γ1", g1)?)?;
    est.method = if est.status == Status::Zero {
        Method::QubitAdcAntidegradable
    } else {
        Method::SumOneQubitAdc
    };
    // the qubit lives on span{|0>, |1>}
    Ok(est)
}

fn is_zero(x: f64) -> bool {
    x <= RATE_TOL
}

fn is_one(x: f64) -> bool {
    x >= 1.0 - RATE_TOL
}

/// The regime op that covers `g` exactly, if any.
fn regime_estimate(g: &RateVector3) -> Option<CapacityEstimate> {
    let (g1, g2, g3) = (g.g1(), g.g2(), g.g3());
    let est = if is_zero(g2) && is_zero(g3) {
        q_single_decay(g1)
    } else if is_zero(g2) {
        q_plane_gamma2_zero(g1, g3)
    } else if is_zero(g1) {
        q_plane_gamma1_zero(g2, g3)
    } else if is_one(g1) {
        q_gamma1_one(g2, g3)
    } else if is_one(g2 + g3) {
        q_plane_sum_one(g1)
    } else if at_least_half(g1) && at_least_half(g3) {
        Ok(CapacityEstimate::zero(Method::ZeroRegion))
    } else {
        return None;
    };
    Some(est.expect("rates already validated"))
}

fn upper_value(e: Result<CapacityEstimate>) -> f64 {
    e.expect("derived rates are valid").lower
}

/// Data-processing upper bound from the three factorizations of `g`.
pub fn bottleneck_upper(g: &RateVector3) -> f64 {
    let (g1, g2, g3) = (g.g1(), g.g2(), g.g3());
    let a = upper_value(q_plane_gamma1_zero(g2, g3)).min(upper_value(q_single_decay(g1)));
    let b = upper_value(q_single_decay(g.bar_g2())).min(upper_value(q_plane_gamma2_zero(g1, g3)));
    let c = upper_value(q_single_decay(g.bar_g3()));
    a.min(b).min(c)
}

/// Best available statement about `Q(D_g)`.
pub fn q_bounds(g: &RateVector3) -> CapacityEstimate {
    if let Some(est) = regime_estimate(g) {
        return est;
    }
    let lower = max_diag_coherent_info(g);
    if lower.status == Status::Exact {
        return lower;
    }
    let upper = bottleneck_upper(g).max(lower.lower);
    if upper - lower.lower <= EXACT_GAP {
        let mut est = CapacityEstimate::exact(lower.lower, Method::BottleneckInterval, lower.argmax);
        est.upper = Some(lower.lower);
        return est;
    }
    CapacityEstimate {
        lower: lower.lower,
        upper: Some(upper),
        status: Status::Interval,
        method: Method::BottleneckInterval,
        argmax: lower.argmax,
        caveat: None,
    }
}

/// Private classical capacity: equal to `Q` wherever `Q` is exact; otherwise
/// the same bracket.
pub fn cp(g: &RateVector3) -> CapacityEstimate {
    let mut est = q_bounds(g);
    if !est.is_exact() {
        est.caveat = Some(
            "C_p >= Q; the lower end is the diagonal coherent information, the upper end is the factorization bound".into(),
        );
    }
    est
}

/// Entanglement-assisted quantum capacity, half the maximal mutual
/// information over diagonal inputs.
pub fn qe(g: &RateVector3) -> CapacityEstimate {
    let (p, v) = max_diag_mutual_info(g);
    CapacityEstimate::exact(0.5 * v, Method::EntanglementAssisted, Some(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Q,
    Cp,
    Qe,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Q => "q",
            Quantity::Cp => "cp",
            Quantity::Qe => "qe",
        }
    }
}

pub fn capacity(g: &RateVector3, quantity: Quantity) -> CapacityEstimate {
    match quantity {
        Quantity::Q => q_bounds(g),
        Quantity::Cp => cp(g),
        Quantity::Qe => qe(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: f64, b: f64, c: f64) -> RateVector3 {
        RateVector3::new(a, b, c).unwrap()
    }

    const LOG3: f64 = 1.584_962_500_721_156_3;

    #[test]
    fn coherent_info_examples() {
        let id = RateMatrix::identity(3);
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!((coherent_info(&id, &mixed).unwrap() - LOG3).abs() < 1e-12);
        let psi = DensityMatrix::pure(&[
            crate::linalg::c(0.6),
            crate::linalg::c(0.0),
            crate::linalg::c(0.8),
        ])
        .unwrap();
        let r = RateMatrix::qutrit(0.3, 0.2, 0.4).unwrap();
        assert!(coherent_info(&r, &psi).unwrap().abs() < 1e-9);
        let rho = DensityMatrix::diagonal(&[0.2, 0.5, 0.3]).unwrap();
        let r = RateMatrix::qutrit(0.5, 0.0, 0.0).unwrap();
        let p = SimplexPoint::new(0.2, 0.5, 0.3).unwrap();
        assert!((coherent_info(&r, &rho).unwrap() - brackets::single_decay(0.5, &p)).abs() < 1e-10);
    }

    #[test]
    fn mutual_info_examples() {
        let id = RateMatrix::identity(3);
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!((mutual_info(&id, &mixed).unwrap() - 2.0 * LOG3).abs() < 1e-12);
        let r = RateMatrix::qutrit(0.3, 0.2, 0.4).unwrap();
        assert!(mutual_info(&r, &DensityMatrix::basis(3, 0)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn brackets_match_general_diagonal_form() {
        let p = SimplexPoint::new(0.25, 0.35, 0.4).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-13;
        assert!(close(brackets::single_decay(0.3, &p), diag_coherent_info(&g(0.3, 0.0, 0.0), &p)));
        assert!(close(brackets::gamma2_zero(0.3, 0.2, &p), diag_coherent_info(&g(0.3, 0.0, 0.2), &p)));
        assert!(close(brackets::gamma1_zero(0.1, 0.3, &p), diag_coherent_info(&g(0.0, 0.1, 0.3), &p)));
        let q = SimplexPoint::new(0.6, 0.0, 0.4).unwrap();
        assert!(close(brackets::gamma1_one(0.2, 0.1, 0.4), diag_coherent_info(&g(1.0, 0.2, 0.1), &q)));
        assert!(close(
            brackets::single_decay_mutual(0.3, &p),
            diag_mutual_info(&g(0.3, 0.0, 0.0), &p)
        ));
    }

    #[test]
    fn single_decay_values() {
        assert!((q_single_decay(0.0).unwrap().lower - LOG3).abs() < 1e-9);
        for x in [0.5, 0.6, 0.8, 1.0] {
            let e = q_single_decay(x).unwrap();
            assert_eq!(e.value(), Some(1.0));
            assert_eq!(e.method, Method::SingleDecayPlateau);
        }
        assert!((q_single_decay(0.5 - 1e-5).unwrap().lower - 1.0).abs() < 1e-4);
        assert!(q_single_decay(1.2).is_err());
    }

    #[test]
    fn gamma1_one_values() {
        assert!((q_gamma1_one(0.0, 0.0).unwrap().lower - 1.0).abs() < 1e-9);
        assert_eq!(q_gamma1_one(0.3, 0.5).unwrap().status, Status::Zero);
        let a = q_gamma1_one(0.0, 0.2).unwrap().lower;
        let b = qubit_adc_capacity(0.2).unwrap().lower;
        assert!((a - b).abs() < 1e-9);
        assert!(q_gamma1_one(0.6, 0.6).is_err());
    }

    #[test]
    fn gamma2_zero_values() {
        assert_eq!(q_plane_gamma2_zero(0.6, 0.6).unwrap().status, Status::Zero);
        let a = q_plane_gamma2_zero(0.3, 0.9).unwrap().lower;
        let b = q_plane_gamma2_zero(0.3, 0.5).unwrap().lower;
        assert!((a - b).abs() < 1e-12);
        let a = q_plane_gamma2_zero(0.0, 0.3).unwrap().lower;
        let b = q_single_decay(0.3).unwrap().lower;
        assert!((a - b).abs() < 1e-9);
        let a = q_plane_gamma2_zero(0.2, 0.35).unwrap().lower;
        let b = q_plane_gamma2_zero(0.35, 0.2).unwrap().lower;
        assert_eq!(a, b);
    }

    #[test]
    fn gamma1_zero_values() {
        assert!((q_plane_gamma1_zero(0.0, 0.0).unwrap().lower - LOG3).abs() < 1e-9);
        assert_eq!(q_plane_gamma1_zero(0.3, 0.3).unwrap().value(), Some(1.0));
        let a = q_plane_gamma1_zero(0.2, 0.1).unwrap().lower;
        let b = q_plane_gamma1_zero(0.1, 0.2).unwrap().lower;
        assert_eq!(a, b);
        assert!(a >= 1.0);
    }

    #[test]
    fn sum_one_values() {
        assert!((q_plane_sum_one(0.0).unwrap().lower - 1.0).abs() < 1e-9);
        assert_eq!(q_plane_sum_one(0.5).unwrap().status, Status::Zero);
        assert_eq!(q_plane_sum_one(0.7).unwrap().status, Status::Zero);
    }

    #[test]
    fn bounds_dispatch() {
        let e = q_bounds(&g(0.6, 0.1, 0.55));
        assert_eq!(e.status, Status::Zero);
        assert_eq!(e.method, Method::ZeroRegion);
        let e = q_bounds(&g(0.3, 0.0, 0.2));
        assert_eq!(e.method, Method::Gamma2Zero);
        let e = q_bounds(&g(0.2, 0.2, 0.2));
        assert!(e.lower <= e.upper.unwrap());
        assert!(matches!(e.status, Status::Interval | Status::Exact));
        let e = cp(&g(0.3, 0.3, 0.0));
        assert_eq!(e.status, Status::Interval);
        assert!(e.caveat.is_some());
    }

    #[test]
    fn qe_examples() {
        let e = qe(&RateVector3::identity());
        assert!((e.lower - LOG3).abs() < 1e-9);
        let q = q_bounds(&g(0.3, 0.2, 0.1));
        assert!(qe(&g(0.3, 0.2, 0.1)).lower >= q.lower - 1e-9);
    }

    #[test]
    fn lower_bound_status_off_degradable_set() {
        let e = max_diag_coherent_info(&g(0.3, 0.3, 0.0));
        assert_eq!(e.status, Status::LowerBound);
        assert!(e.upper.is_none());
        let e = max_diag_coherent_info(&RateVector3::identity());
        assert_eq!(e.status, Status::Exact);
    }
}
