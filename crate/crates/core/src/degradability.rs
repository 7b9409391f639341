//! Degradability and antidegradability of MAD channels.
//!
//! Degradability is settled by the inversion test: when the channel is
//! invertible the only possible degrading map is `M_env M^-1`, which is then
//! checked for complete positivity. Antidegradability is certified by
//! explicit factorizations through the environment, refuted by kernel
//! inclusion or positive coherent information, and left unknown otherwise.

use serde::Serialize;

use crate::capacity::max_diag_coherent_info_value;
use crate::channel::{compose_rates, kraus_set, KrausSet, RateMatrix, RateVector3, RATE_TOL};
use crate::error::Result;
use crate::linalg::{c, ComplexMatrix};
use crate::superop::{
    is_cptp_superop, kernel_contained, superop_inverse, CptpReport, SuperoperatorMatrix,
};

/// Eigenvalue tolerance for Choi positivity; boundaries are inclusive.
pub const CHOI_TOL: f64 = 1e-9;
const RANK_TOL: f64 = 1e-10;
const WITNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriVerdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl TriVerdict {
    pub fn is_yes(self) -> bool {
        self == TriVerdict::Yes
    }
}

/// `M_env M^-1` with the environment taken from the (minimal) Kraus set.
pub fn degrading_candidate(rates: &RateMatrix, minimal: bool) -> Result<SuperoperatorMatrix> {
    let inv = superop_inverse(rates)?;
    SuperoperatorMatrix::complement_of_rates(rates, minimal).compose(&inv.inverse)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegradingWitness {
    /// Dimension of the environment the candidate maps into.
    pub env_dim: usize,
    pub min_choi_eigenvalue: f64,
    pub trace_residual: f64,
    pub condition_number: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegradabilityCheck {
    pub verdict: Verdict,
    pub reason: String,
    pub candidate: Option<DegradingWitness>,
}

/// Inversion test with the structural shortcuts in front of it.
pub fn check_degradable(rates: &RateMatrix, tol: f64) -> DegradabilityCheck {
    let d = rates.dim();
    let channel = SuperoperatorMatrix::of_rates(rates);
    let env = SuperoperatorMatrix::complement_of_rates(rates, true);
    if !kernel_contained(&channel, &env, RANK_TOL) {
        return DegradabilityCheck {
            verdict: Verdict::No,
            reason: "the environment sees inputs the channel erases (kernel inclusion fails)".into(),
            candidate: None,
        };
    }
    let choi_rank = kraus_set(rates, true).len();
    if choi_rank > d {
        return DegradabilityCheck {
            verdict: Verdict::No,
            reason: format!("Choi rank {choi_rank} exceeds the output dimension {d}"),
            candidate: None,
        };
    }
    let inv = match superop_inverse(rates) {
        Ok(inv) => inv,
        Err(e) => {
            return DegradabilityCheck {
                verdict: Verdict::No,
                reason: e.to_string(),
                candidate: None,
            }
        }
    };
    let candidate = env.compose(&inv.inverse).expect("dimensions agree");
    let report = is_cptp_superop(&candidate, tol);
    let witness = DegradingWitness {
        env_dim: env.d_out(),
        min_choi_eigenvalue: report.min_choi_eigenvalue,
        trace_residual: report.trace_residual,
        condition_number: inv.condition_number,
    };
    let (verdict, reason) = if report.cptp {
        (Verdict::Yes, "complement ∘ inverse is CPTP".to_string())
    } else {
        (
            Verdict::No,
            format!(
                "complement ∘ inverse is not CPTP (min Choi eigenvalue {:.3e})",
                report.min_choi_eigenvalue
            ),
        )
    };
    DegradabilityCheck {
        verdict,
        reason,
        candidate: Some(witness),
    }
}

/// An explicit map `N` with `channel = N ∘ complement`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntidegradingWitness {
    pub form: String,
    /// Rate vectors of the MAD factors of `N`, outermost first.
    pub factors: Vec<[f64; 3]>,
    /// Max-norm distance between `N ∘ complement` and the channel.
    pub residual: f64,
}

fn superop_of(g: &RateVector3) -> SuperoperatorMatrix {
    SuperoperatorMatrix::of_rates(&g.to_rate_matrix())
}

fn kraus_superop(ops: Vec<ComplexMatrix>) -> SuperoperatorMatrix {
    let labels = (0..ops.len()).map(|k| format!("R{k}")).collect();
    SuperoperatorMatrix::from_kraus(&KrausSet::new(ops, labels).expect("isometric relabeling"))
}

fn unit(d_out: usize, d_in: usize, entries: &[(usize, usize)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d_out, d_in);
    for &(i, j) in entries {
        m[(i, j)] = c(1.0);
    }
    m
}

/// Zero-region witness for `g1, g3 >= 1/2`: the channel factors as
/// `D(0, g2/(1-g3), 0) ∘ D(g1, 0, g3)`, the environment of the second factor
/// is a coarse-graining `P` of the full environment, and
/// `D(g1, 0, g3) = D(a, 0, b) ∘ D(1-g1, 0, 1-g3)` with
/// `a = (2 g1 - 1)/g1`, `b = (2 g3 - 1)/g3`.
fn zero_region_witness(g: &RateVector3) -> Option<AntidegradingWitness> {
    let half = 0.5 - RATE_TOL;
    if g.g1() < half || g.g3() < half {
        return None;
    }
    let a = ((2.0 * g.g1() - 1.0) / g.g1()).clamp(0.0, 1.0);
    let b = ((2.0 * g.g3() - 1.0) / g.g3()).clamp(0.0, 1.0);
    let post = RateVector3::new(0.0, g.bar_g2(), 0.0).ok()?;
    let inner = RateVector3::new(a, 0.0, b).ok()?;
    // environment order (K0, K01, K12, K03); K12 folds into K0
    let p = kraus_superop(vec![
        unit(3, 4, &[(0, 0), (1, 1), (2, 3)]),
        unit(3, 4, &[(0, 2)]),
    ]);
    let env = SuperoperatorMatrix::complement_of_rates(&g.to_rate_matrix(), false);
    let n = superop_of(&post).compose(&superop_of(&inner)).ok()?.compose(&p).ok()?;
    let residual = n.compose(&env).ok()?.max_abs_diff(&superop_of(g));
    Some(AntidegradingWitness {
        form: "D(0,γ̄2,0) ∘ D(a,0,b) ∘ P ∘ complement".into(),
        factors: vec![post.as_array(), inner.as_array()],
        residual,
    })
}

/// Witness on the `g1 = 1` plane for `g3 >= (1 - g2)/2`: the environment
/// relabeled by `R` is the complement of the effective qubit map, which is
/// degraded into the channel by `D(0, 0, x)`, `x = (2 g3 - 1 + g2)/g3`.
fn gamma1_one_witness(g: &RateVector3) -> Option<AntidegradingWitness> {
    if g.g1() < 1.0 - RATE_TOL || g.g3() < (1.0 - g.g2()) / 2.0 - RATE_TOL {
        return None;
    }
    let x = if g.g3() <= RATE_TOL {
        0.0
    } else {
        ((2.0 * g.g3() - 1.0 + g.g2()) / g.g3()).clamp(0.0, 1.0)
    };
    let post = RateVector3::new(0.0, 0.0, x).ok()?;
    let r = kraus_superop(vec![
        unit(3, 4, &[(0, 0), (1, 2), (2, 3)]),
        unit(3, 4, &[(0, 1)]),
    ]);
    let env = SuperoperatorMatrix::complement_of_rates(&g.to_rate_matrix(), false);
    let n = superop_of(&post).compose(&r).ok()?;
    let residual = n.compose(&env).ok()?.max_abs_diff(&superop_of(g));
    Some(AntidegradingWitness {
        form: "D(0,0,x) ∘ R ∘ complement".into(),
        factors: vec![post.as_array()],
        residual,
    })
}

/// Degradability and antidegradability of a qutrit MAD channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub g: [f64; 3],
    pub degradable: Verdict,
    pub antidegradable: TriVerdict,
    pub witness: Witness,
    pub reasons: Vec<String>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrading: Option<DegradingWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antidegrading: Option<AntidegradingWitness>,
}

/// Positive coherent information below this is treated as zero.
const POSITIVE_J_TOL: f64 = 1e-9;

pub fn classify(g: &RateVector3, tol: f64) -> ClassificationResult {
    let rates = g.to_rate_matrix();
    let mut reasons = Vec::new();
    let deg = check_degradable(&rates, tol);
    reasons.push(format!("degradable: {}", deg.reason));
    let mut witness = Witness {
        degrading: deg.candidate.clone().filter(|_| deg.verdict.is_yes()),
        antidegrading: None,
    };

    let structural = zero_region_witness(g)
        .or_else(|| gamma1_one_witness(g))
        .filter(|w| w.residual <= WITNESS_TOL);
    let antidegradable = if let Some(w) = structural {
        reasons.push(format!("antidegradable: channel = {}", w.form));
        witness.antidegrading = Some(w);
        TriVerdict::Yes
    } else {
        let channel = SuperoperatorMatrix::of_rates(&rates);
        let env = SuperoperatorMatrix::complement_of_rates(&rates, true);
        if !kernel_contained(&env, &channel, RANK_TOL) {
            reasons.push(
                "not antidegradable: the channel sees inputs the environment erases".into(),
            );
            TriVerdict::No
        } else {
            let j = max_diag_coherent_info_value(g);
            if j > POSITIVE_J_TOL {
                reasons.push(format!(
                    "not antidegradable: coherent information {j:.6} > 0 on a diagonal input"
                ));
                TriVerdict::No
            } else {
                reasons.push("antidegradability not settled".into());
                TriVerdict::Unknown
            }
        }
    };
    ClassificationResult {
        g: g.as_array(),
        degradable: deg.verdict,
        antidegradable,
        witness,
        reasons,
        tol,
    }
}

/// CPTP report of the degrading candidate, for callers that want the
/// certificate itself.
pub fn certify_candidate(rates: &RateMatrix, tol: f64) -> Result<CptpReport> {
    Ok(is_cptp_superop(&degrading_candidate(rates, true)?, tol))
}

/// The map that degrades `D(g1, 0, g3)` when `g1, g3 <= 1/2`.
pub fn gamma2_zero_degrading_rates(g1: f64, g3: f64) -> Result<RateVector3> {
    let f = |g: f64| {
        if g >= 1.0 {
            0.0
        } else {
            (1.0 - 2.0 * g) / (1.0 - g)
        }
    };
    RateVector3::new(f(g1), 0.0, f(g3))
}

/// `D(a, 0, b)` composed after the flipped channel, for checking the
/// zero-region identity at the rate-vector level.
pub fn flipped_composition(g1: f64, g3: f64) -> Result<RateVector3> {
    let a = (2.0 * g1 - 1.0) / g1;
    let b = (2.0 * g3 - 1.0) / g3;
    compose_rates(
        &RateVector3::new(a, 0.0, b)?,
        &RateVector3::new(1.0 - g1, 0.0, 1.0 - g3)?,
    )
}
