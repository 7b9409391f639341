//! Multi-level amplitude damping channels: rates, Kraus sets, action on
//! states and on the environment, the qutrit composition law, and the
//! auxiliary maps used to factor qutrit channels.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_diff, ComplexMatrix, DensityMatrix};

/// Tolerance on rate constraints; rates below it count as zero when building
/// minimal Kraus sets.
pub const RATE_TOL: f64 = 1e-12;
/// Completeness residual accepted for a Kraus set.
pub const KRAUS_TOL: f64 = 1e-10;

/// Index of the rate `gamma_{ji}` (decay `j -> i`) in Kraus order:
/// `j` ascending, then `i` descending from `j - 1` to 0.
pub fn pair_index(j: usize, i: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + (j - 1 - i)
}

/// All decay pairs `(j, i)` of a d-level system in Kraus order.
pub fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..d).flat_map(|j| (0..j).rev().map(move |i| (j, i)))
}

fn rate_name(d: usize, j: usize, i: usize) -> String {
    if d == 3 {
        match (j, i) {
            (1, 0) => return "γ1".into(),
            (2, 1) => return "γ2".into(),
            (2, 0) => return "γ3".into(),
            _ => {}
        }
    }
    format!("γ_{{{j},{i}}}")
}

/// Every constraint violated by a candidate rate assignment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateViolations(pub Vec<String>);

impl RateViolations {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn messages(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Display for RateViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("; "))
    }
}

/// Checks `0 <= gamma_{ji} <= 1` and `xi_j = sum_i gamma_{ji} <= 1` for a
/// d-level channel. Pairs not listed are zero.
pub fn validate_rates(
    d: usize,
    entries: &[((usize, usize), f64)],
) -> std::result::Result<(), RateViolations> {
    let mut v = Vec::new();
    if d < 2 {
        v.push(format!("dimension {d} < 2"));
        return Err(RateViolations(v));
    }
    let mut seen = vec![false; d * (d - 1) / 2];
    let mut rates = vec![0.0; d * (d - 1) / 2];
    for &((j, i), g) in entries {
        if j >= d || i >= j {
            v.push(format!("pair ({j},{i}) is not a decay j -> i with i < j < {d}"));
            continue;
        }
        let k = pair_index(j, i);
        if seen[k] {
            v.push(format!("{} given twice", rate_name(d, j, i)));
        }
        seen[k] = true;
        let name = rate_name(d, j, i);
        if !g.is_finite() {
            v.push(format!("{name} = {g} is not finite"));
        } else if g < -RATE_TOL {
            v.push(format!("{name} = {g} < 0"));
        } else if g > 1.0 + RATE_TOL {
            v.push(format!("{name} = {g} > 1"));
        }
        rates[k] = g;
    }
    for j in 2..d {
        let xi: f64 = (0..j).map(|i| rates[pair_index(j, i)]).sum();
        if xi.is_finite() && xi > 1.0 + RATE_TOL {
            let names: Vec<String> = (0..j).rev().map(|i| rate_name(d, j, i)).collect();
            let sum = names.join("+");
            v.push(format!("{sum} = {} > 1 ({sum} ≤ 1 violated)", fmt_short(xi)));
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(RateViolations(v))
    }
}

fn fmt_short(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Damping rates of a d-level channel, stored in Kraus order.
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix {
    d: usize,
    rates: Vec<f64>,
}

impl RateMatrix {
    pub fn new(d: usize, entries: &[((usize, usize), f64)]) -> Result<Self> {
        validate_rates(d, entries).map_err(Error::InvalidRates)?;
        let mut rates = vec![0.0; d * (d - 1) / 2];
        for &((j, i), g) in entries {
            rates[pair_index(j, i)] = g.clamp(0.0, 1.0);
        }
        Ok(Self { d, rates })
    }

    pub fn identity(d: usize) -> Self {
        assert!(d >= 2, "dimension must be at least 2");
        Self {
            d,
            rates: vec![0.0; d * (d - 1) / 2],
        }
    }

    pub fn qubit(gamma: f64) -> Result<Self> {
        Self::new(2, &[((1, 0), gamma)])
    }

    pub fn qutrit(g1: f64, g2: f64, g3: f64) -> Result<Self> {
        Self::new(3, &[((1, 0), g1), ((2, 1), g2), ((2, 0), g3)])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rate(&self, j: usize, i: usize) -> f64 {
        self.rates[pair_index(j, i)]
    }

    /// Rates in Kraus order.
    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// Total decay probability out of level `j`.
    pub fn xi(&self, j: usize) -> f64 {
        (0..j).map(|i| self.rate(j, i)).sum()
    }

    /// Survival amplitude `sqrt(1 - xi_j)` of level `j`.
    pub fn survival(&self, j: usize) -> f64 {
        // sequential subtraction recovers an exact zero from rates summing to 1
        (0..j)
            .rev()
            .fold(1.0, |keep, i| keep - self.rate(j, i))
            .max(0.0)
            .sqrt()
    }

    pub fn entries(&self) -> Vec<((usize, usize), f64)> {
        pairs(self.d).zip(self.rates.iter().copied()).collect()
    }
}

/// Qutrit rates: `g1` for 1 -> 0, `g2` for 2 -> 1, `g3` for 2 -> 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateVector3 {
    g1: f64,
    g2: f64,
    g3: f64,
}

impl RateVector3 {
    pub fn new(g1: f64, g2: f64, g3: f64) -> Result<Self> {
        validate_rates(3, &[((1, 0), g1), ((2, 1), g2), ((2, 0), g3)])
            .map_err(Error::InvalidRates)?;
        let g1 = g1.clamp(0.0, 1.0);
        let g2 = g2.clamp(0.0, 1.0);
        let g3 = g3.clamp(0.0, 1.0 - g2);
        Ok(Self { g1, g2, g3 })
    }

    pub fn identity() -> Self {
        Self {
            g1: 0.0,
            g2: 0.0,
            g3: 0.0,
        }
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn g3(&self) -> f64 {
        self.g3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.g1, self.g2, self.g3]
    }

    /// `g2 / (1 - g3)`, zero when `g3 = 1` (which forces `g2 = 0`).
    pub fn bar_g2(&self) -> f64 {
        bar(self.g2, self.keep2())
    }

    /// `g3 / (1 - g2)`, zero when `g2 = 1`.
    pub fn bar_g3(&self) -> f64 {
        bar(self.g3, self.keep2())
    }

    /// `1 - g2 - g3`, evaluated as the channel evaluates it.
    fn keep2(&self) -> f64 {
        ((1.0 - self.g2) - self.g3).max(0.0)
    }

    pub fn to_rate_matrix(&self) -> RateMatrix {
        RateMatrix {
            d: 3,
            rates: vec![self.g1, self.g2, self.g3],
        }
    }
}

/// `a / (a + keep)`; the denominator is `1 - (other rate)` written so that a
/// fully damped level gives exactly 1.
fn bar(a: f64, keep: f64) -> f64 {
    let den = a + keep;
    if den <= RATE_TOL {
        0.0
    } else {
        (a / den).clamp(0.0, 1.0)
    }
}

impl From<RateVector3> for RateMatrix {
    fn from(g: RateVector3) -> Self {
        g.to_rate_matrix()
    }
}

impl fmt::Display for RateVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.g1, self.g2, self.g3)
    }
}

/// Ordered Kraus operators of a map from `d_in` to `d_out` dimensions.
#[derive(Debug, Clone)]
pub struct KrausSet {
    ops: Vec<ComplexMatrix>,
    labels: Vec<String>,
    d_in: usize,
    d_out: usize,
}

impl KrausSet {
    pub fn new(ops: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::InvalidKraus("empty Kraus set".into()))?;
        let (d_out, d_in) = first.shape();
        if labels.len() != ops.len() {
            return Err(Error::InvalidKraus("one label per operator required".into()));
        }
        for k in &ops {
            if k.shape() != (d_out, d_in) {
                return Err(Error::InvalidKraus(format!(
                    "operator shape {:?} differs from {:?}",
                    k.shape(),
                    (d_out, d_in)
                )));
            }
        }
        let set = Self {
            ops,
            labels,
            d_in,
            d_out,
        };
        let residual = set.completeness_residual();
        if residual > KRAUS_TOL {
            return Err(Error::InvalidKraus(format!(
                "sum K^dagger K deviates from identity by {residual:.3e}"
            )));
        }
        Ok(set)
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn env_dim(&self) -> usize {
        self.ops.len()
    }

    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.d_in, self.d_in);
        for k in &self.ops {
            sum += k.adjoint() * k;
        }
        max_abs_diff(&sum, &ComplexMatrix::identity(self.d_in, self.d_in))
    }

    fn check_input(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                found: rho.dim(),
            });
        }
        Ok(())
    }

    /// `sum_k K_k rho K_k^dagger`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        Ok(DensityMatrix::from_channel_output(self.apply_matrix(rho.matrix())))
    }

    /// Action on an arbitrary operator (no validation of the argument).
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d_out, self.d_out);
        for k in &self.ops {
            out += k * x * k.adjoint();
        }
        out
    }

    /// Environment state `sum_{ij} Tr[K_i rho K_j^dagger] |i><j|`.
    pub fn complement(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        Ok(DensityMatrix::from_channel_output(
            self.complement_matrix(rho.matrix()),
        ))
    }

    pub fn complement_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = self.ops.len();
        let applied: Vec<ComplexMatrix> = self.ops.iter().map(|k| k * x).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            // Tr[A B^dagger] = sum_{rs} A_rs conj(B_rs)
            applied[i]
                .iter()
                .zip(self.ops[j].iter())
                .map(|(a, b)| a * b.conj())
                .sum()
        })
    }

    /// Kraus set of `self ∘ first` (`first` applied first).
    pub fn compose(&self, first: &KrausSet) -> Result<KrausSet> {
        if first.d_out != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                found: first.d_out,
            });
        }
        let mut ops = Vec::with_capacity(self.len() * first.len());
        let mut labels = Vec::with_capacity(ops.capacity());
        for (a, la) in self.ops.iter().zip(&self.labels) {
            for (b, lb) in first.ops.iter().zip(&first.labels) {
                ops.push(a * b);
                labels.push(format!("{la}*{lb}"));
            }
        }
        KrausSet::new(ops, labels)
    }
}

fn ket_bra(d_out: usize, d_in: usize, i: usize, j: usize, amp: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d_out, d_in);
    m[(i, j)] = c(amp);
    m
}

/// Kraus operators `K0, K_{ij}` with `K_{ij} = sqrt(gamma_{ji}) |i><j|` in
/// the fixed order. With `minimal`, operators whose rate is below
/// `RATE_TOL` are dropped.
pub fn kraus_set(rates: &RateMatrix, minimal: bool) -> KrausSet {
    let d = rates.dim();
    let mut k0 = ComplexMatrix::zeros(d, d);
    k0[(0, 0)] = c(1.0);
    for j in 1..d {
        k0[(j, j)] = c(rates.survival(j));
    }
    let mut ops = vec![k0];
    let mut labels = vec!["K0".to_string()];
    for ((j, i), g) in pairs(d).zip(rates.rates().iter().copied()) {
        if minimal && g < RATE_TOL {
            continue;
        }
        ops.push(ket_bra(d, d, i, j, g.sqrt()));
        labels.push(format!("K{i}{j}"));
    }
    if d == 3 {
        // qutrit convention names the 2 -> 0 operator K03
        for l in labels.iter_mut() {
            if l == "K02" {
                *l = "K03".into();
            }
        }
    }
    KrausSet {
        ops,
        labels,
        d_in: d,
        d_out: d,
    }
}

pub fn apply(rates: &RateMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    kraus_set(rates, false).apply(rho)
}

/// Environment output with the full Kraus set (dimension `1 + d(d-1)/2`).
pub fn complement(rates: &RateMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    kraus_set(rates, false).complement(rho)
}

/// Environment output with vanishing-rate operators removed.
pub fn complement_minimal(rates: &RateMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    kraus_set(rates, true).complement(rho)
}

/// Closed-form rates of `D_{gp} ∘ D_{gpp}` (`gpp` applied first).
pub fn compose_rates(gp: &RateVector3, gpp: &RateVector3) -> Result<RateVector3> {
    let (a1, a2, a3) = (gp.g1, gp.g2, gp.g3);
    let (b1, b2, b3) = (gpp.g1, gpp.g2, gpp.g3);
    // Survival probabilities multiply. When they are small the rates are
    // taken from the product so that a fully damped level stays exactly
    // damped; otherwise the direct forms keep small rates accurate.
    let keep1 = (1.0 - a1) * (1.0 - b1);
    let keep2 = ((1.0 - a2) - a3) * ((1.0 - b2) - b3);
    let g1 = if keep1 < 0.5 {
        1.0 - keep1
    } else {
        b1 + a1 - a1 * b1
    };
    let g2 = b2 * (1.0 - a1 - a2) + a2 * (1.0 - b3);
    let g3 = if keep2 < 0.5 {
        ((1.0 - g2) - keep2).max(0.0)
    } else {
        b3 + b2 * (a1 - a3) + a3 * (1.0 - b3)
    };
    RateVector3::new(g1, g2, g3)
}

/// Kraus set of the qubit-to-qutrit map acting on `span{|0>, |2>}` that
/// remains of `D_(1, g2, g3)` once level 1 is erased.
pub fn effective_qubit_kraus(g2: f64, g3: f64) -> Result<KrausSet> {
    RateVector3::new(0.0, g2, g3)?;
    let s = (1.0 - g2 - g3).max(0.0).sqrt();
    let mut l0 = ket_bra(3, 2, 0, 0, 1.0);
    l0[(2, 1)] = c(s);
    KrausSet::new(
        vec![
            l0,
            ket_bra(3, 2, 1, 1, g2.sqrt()),
            ket_bra(3, 2, 0, 1, g3.sqrt()),
        ],
        vec!["L0".into(), "L12".into(), "L02".into()],
    )
}

/// Output and environment of the effective qubit map on `tau`, a state on
/// `span{|0>, |2>}` written in that ordered basis.
pub fn effective_qubit_map(
    g2: f64,
    g3: f64,
    tau: &DensityMatrix,
) -> Result<(DensityMatrix, DensityMatrix)> {
    let k = effective_qubit_kraus(g2, g3)?;
    Ok((k.apply(tau)?, k.complement(tau)?))
}

/// Kraus set of the map that moves level 1 into level 0 and keeps
/// `span{|0>, |2>}` as a qubit.
pub fn erase_level1_kraus() -> KrausSet {
    let mut e0 = ket_bra(2, 3, 0, 0, 1.0);
    e0[(1, 2)] = c(1.0);
    KrausSet::new(
        vec![e0, ket_bra(2, 3, 0, 1, 1.0)],
        vec!["A0".into(), "A1".into()],
    )
    .expect("erasure map is trace preserving")
}

pub fn erase_level1(rho: &DensityMatrix) -> Result<DensityMatrix> {
    erase_level1_kraus().apply(rho)
}

/// Kraus set of the map emptying level 2: a fraction `g2` goes to level 1,
/// the rest to level 0.
pub fn erase_level2_kraus(g2: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&g2) {
        return Err(Error::OutOfRange {
            name: "γ2",
            value: g2,
        });
    }
    let mut c0 = ket_bra(2, 3, 0, 0, 1.0);
    c0[(1, 1)] = c(1.0);
    KrausSet::new(
        vec![
            c0,
            ket_bra(2, 3, 1, 2, g2.sqrt()),
            ket_bra(2, 3, 0, 2, (1.0 - g2).sqrt()),
        ],
        vec!["C0".into(), "C12".into(), "C02".into()],
    )
}

pub fn erase_level2(g2: f64, rho: &DensityMatrix) -> Result<DensityMatrix> {
    erase_level2_kraus(g2)?.apply(rho)
}

pub fn qubit_adc_kraus(gamma: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::OutOfRange {
            name: "γ",
            value: gamma,
        });
    }
    Ok(kraus_set(&RateMatrix::qubit(gamma)?, false))
}

pub fn qubit_adc(gamma: f64, tau: &DensityMatrix) -> Result<DensityMatrix> {
    qubit_adc_kraus(gamma)?.apply(tau)
}

/// Output populations for a diagonal input `p`:
/// `q_i = (1 - xi_i) p_i + sum_{j > i} gamma_{ji} p_j`.
pub fn output_populations(rates: &RateMatrix, p: &[f64]) -> Vec<f64> {
    let d = rates.dim();
    assert_eq!(p.len(), d, "population vector has wrong length");
    let mut q: Vec<f64> = (0..d).map(|i| (1.0 - rates.xi(i)) * p[i]).collect();
    for (j, i) in pairs(d) {
        q[i] += rates.rate(j, i) * p[j];
    }
    q
}

/// Environment populations for a diagonal input, in full Kraus order. The
/// environment state is diagonal too, since distinct Kraus operators map a
/// diagonal input to orthogonal ranges or commute with it.
pub fn environment_populations(rates: &RateMatrix, p: &[f64]) -> Vec<f64> {
    let d = rates.dim();
    assert_eq!(p.len(), d, "population vector has wrong length");
    let mut e = Vec::with_capacity(1 + d * (d - 1) / 2);
    e.push((0..d).map(|j| (1.0 - rates.xi(j)) * p[j]).sum());
    for (j, i) in pairs(d) {
        e.push(rates.rate(j, i) * p[j]);
    }
    e
}
