//! Coefficient sequences, three-index coefficient tensors, the power-function
//! Phi class, and the series / lambda-sequence certificates built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Builtin closed-form families plus tabulated lists. Terms are 1-indexed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SeqFamily {
    /// a_n = q * rho^n
    Geometric { q: f64, rho: f64 },
    /// a_n = (c / (1 + 2^n))^2
    InvSqShifted { c: f64 },
    /// a_n = 1 / n
    Harmonic,
    /// a_n = value
    Constant { value: f64 },
    Tabulated { values: Vec<f64> },
}

/// A positive coefficient sequence evaluable for 1 <= n <= horizon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSeq {
    family: SeqFamily,
    horizon: usize,
}

impl CoefficientSeq {
    pub fn new(family: SeqFamily, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::HorizonTooSmall { got: 0, min: 1 });
        }
        match &family {
            SeqFamily::Geometric { q, rho } => {
                if !(q.is_finite() && *q > 0.0 && rho.is_finite() && *rho > 0.0) {
                    return Err(Error::InvalidCoefficient(format!(
                        "geometric family needs q > 0 and rho > 0, got q = {q}, rho = {rho}"
                    )));
                }
            }
            SeqFamily::InvSqShifted { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidCoefficient(format!(
                        "inv-sq-shifted family needs c > 0, got {c}"
                    )));
                }
            }
            SeqFamily::Constant { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(Error::InvalidCoefficient(format!(
                        "constant family needs a positive value, got {value}"
                    )));
                }
            }
            SeqFamily::Harmonic => {}
            SeqFamily::Tabulated { values } => {
                if values.is_empty() {
                    return Err(Error::InvalidCoefficient("empty tabulated sequence".into()));
                }
                if values.len() < horizon {
                    return Err(Error::InvalidCoefficient(format!(
                        "tabulated sequence has {} terms but horizon is {horizon}",
                        values.len()
                    )));
                }
                for (i, v) in values.iter().enumerate() {
                    if !(v.is_finite() && *v > 0.0) {
                        return Err(Error::NonPositiveTerm {
                            index: i + 1,
                            value: *v,
                        });
                    }
                }
            }
        }
        Ok(CoefficientSeq { family, horizon })
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let horizon = values.len();
        CoefficientSeq::new(SeqFamily::Tabulated { values }, horizon)
    }

    /// The inverse-square shifted coefficients a_n = (1/(1+2^n))^2.
    pub fn inv_sq_shifted(horizon: usize) -> Self {
        CoefficientSeq::new(SeqFamily::InvSqShifted { c: 1.0 }, horizon).unwrap()
    }

    /// a_n = 2^-n, the canonical halving example.
    pub fn halving(horizon: usize) -> Self {
        CoefficientSeq::new(SeqFamily::Geometric { q: 1.0, rho: 0.5 }, horizon).unwrap()
    }

    pub fn family(&self) -> &SeqFamily {
        &self.family
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// The n-th term, 1-indexed. Closed forms are validated at evaluation
    /// time: extreme indices can underflow to zero, which is reported as a
    /// nonpositive term.
    pub fn term(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.horizon {
            return Err(Error::InvalidParam {
                name: "n",
                value: n as f64,
                expected: "1 <= n <= horizon",
            });
        }
        let v = match &self.family {
            SeqFamily::Geometric { q, rho } => q * rho.powi(n as i32),
            SeqFamily::InvSqShifted { c } => {
                let d = c / (1.0 + 2f64.powi(n as i32));
                d * d
            }
            SeqFamily::Harmonic => 1.0 / n as f64,
            SeqFamily::Constant { value } => *value,
            SeqFamily::Tabulated { values } => values[n - 1],
        };
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonPositiveTerm { index: n, value: v });
        }
        Ok(v)
    }

    /// All terms 1..=horizon.
    pub fn terms(&self) -> Result<Vec<f64>> {
        (1..=self.horizon).map(|n| self.term(n)).collect()
    }
}

/// A power function F(x) = c * x^s with 0 < s <= 1 and c > 0. This family is
/// continuous, non-decreasing, subadditive, homogeneous of degree s, and
/// vanishes only at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiFunction {
    s: f64,
    c: f64,
}

impl PhiFunction {
    pub fn new(s: f64, c: f64) -> Result<Self> {
        if s.is_finite() && s > 0.0 && s <= 1.0 && c.is_finite() && c > 0.0 {
            Ok(PhiFunction { s, c })
        } else {
            Err(Error::InvalidPhi { s, c })
        }
    }

    pub fn identity() -> Self {
        PhiFunction { s: 1.0, c: 1.0 }
    }

    pub fn sqrt() -> Self {
        PhiFunction { s: 0.5, c: 1.0 }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_identity(&self) -> bool {
        self.s == 1.0 && self.c == 1.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        let p = if self.s == 1.0 {
            x
        } else if self.s == 0.5 {
            x.sqrt()
        } else {
            x.powf(self.s)
        };
        self.c * p
    }

    /// The inverse power map y -> (y/c)^(1/s), used to convert F-domain
    /// bounds back to G-units.
    pub fn invert(&self, y: f64) -> f64 {
        debug_assert!(y >= 0.0);
        let base = y / self.c;
        if self.s == 1.0 {
            base
        } else if self.s == 0.5 {
            base * base
        } else {
            base.powf(1.0 / self.s)
        }
    }
}

/// Series classification outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convergence {
    CertifiedConvergent,
    CertifiedDivergent,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub verdict: Convergence,
    /// Sum of the terms up to the horizon.
    pub partial_sum: f64,
    /// Worst tail ratio when a ratio test was used.
    pub tail_ratio: Option<f64>,
    pub detail: String,
}

/// Classify a convergent/divergent/undecided verdict for Sum a_n.
///
/// Closed-form families are classified analytically; tabulated sequences get
/// a geometric-ratio tail test over the last half of the horizon.
pub fn series_converges(seq: &CoefficientSeq) -> Result<SeriesReport> {
    if seq.horizon() < 8 {
        return Err(Error::HorizonTooSmall {
            got: seq.horizon(),
            min: 8,
        });
    }
    let terms = seq.terms()?;
    let partial_sum: f64 = terms.iter().sum();
    let report = |verdict, tail_ratio, detail: String| SeriesReport {
        verdict,
        partial_sum,
        tail_ratio,
        detail,
    };
    Ok(match seq.family() {
        SeqFamily::Geometric { q: _, rho } => {
            if *rho < 1.0 {
                report(
                    Convergence::CertifiedConvergent,
                    Some(*rho),
                    format!("geometric with ratio {rho} < 1"),
                )
            } else {
                report(
                    Convergence::CertifiedDivergent,
                    Some(*rho),
                    format!("geometric with ratio {rho} >= 1"),
                )
            }
        }
        SeqFamily::InvSqShifted { c } => report(
            Convergence::CertifiedConvergent,
            None,
            format!("(c/(1+2^n))^2 <= ({c}/n)^2, dominated by a convergent p-series"),
        ),
        SeqFamily::Harmonic => report(
            Convergence::CertifiedDivergent,
            None,
            "harmonic series".into(),
        ),
        SeqFamily::Constant { value } => report(
            Convergence::CertifiedDivergent,
            Some(1.0),
            format!("constant positive term {value}"),
        ),
        SeqFamily::Tabulated { .. } => {
            let mut r = classify_tail(&terms);
            r.partial_sum = partial_sum;
            r
        }
    })
}

/// Geometric-ratio tail test over the last half of a non-negative list.
/// Shared by the tabulated branch of [`series_converges`] and by callers that
/// classify lists allowed to contain exact zeros (iterated Lipschitz
/// constants of eventually-constant maps, partial products).
pub fn classify_tail(values: &[f64]) -> SeriesReport {
    let h = values.len();
    let partial_sum: f64 = values.iter().sum();
    let window_start = h / 2; // zero-based; the window is the last half
    let window = &values[window_start..];
    if window.iter().all(|&v| v == 0.0) {
        return SeriesReport {
            verdict: Convergence::CertifiedConvergent,
            partial_sum,
            tail_ratio: Some(0.0),
            detail: "tail is identically zero".into(),
        };
    }
    if window.contains(&0.0) {
        return SeriesReport {
            verdict: Convergence::Undecided,
            partial_sum,
            tail_ratio: None,
            detail: "tail mixes zero and positive terms".into(),
        };
    }
    let mut max_ratio = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    for w in window.windows(2) {
        let r = w[1] / w[0];
        max_ratio = max_ratio.max(r);
        min_ratio = min_ratio.min(r);
    }
    if window.len() < 2 {
        max_ratio = 1.0;
        min_ratio = 1.0;
    }
    if max_ratio < 1.0 {
        SeriesReport {
            verdict: Convergence::CertifiedConvergent,
            partial_sum,
            tail_ratio: Some(max_ratio),
            detail: format!("tail ratio test: every ratio <= {max_ratio} < 1"),
        }
    } else if min_ratio >= 1.0 {
        SeriesReport {
            verdict: Convergence::CertifiedDivergent,
            partial_sum,
            tail_ratio: Some(min_ratio),
            detail: "tail terms are non-decreasing and positive".into(),
        }
    } else {
        SeriesReport {
            verdict: Convergence::Undecided,
            partial_sum,
            tail_ratio: Some(max_ratio),
            detail: "tail ratios straddle 1".into(),
        }
    }
}

/// True when the tail certifies values -> 0: either the tail is identically
/// zero or every tail ratio stays below 1.
pub fn certifies_vanishing(values: &[f64]) -> bool {
    let r = classify_tail(values);
    match r.verdict {
        Convergence::CertifiedConvergent => true,
        _ => values[values.len() / 2..].iter().all(|&v| v == 0.0),
    }
}

/// A lambda-sequence certificate under the max metric m(x,y) = max{x,y}:
/// for every L with n_lambda + 1 <= L <= horizon the prefix link sums satisfy
/// Sum_{i=1}^{L-1} max(r_i, r_{i+1}) <= lambda * L, and every Cesaro mean
/// (1/k) Sum_{i=1}^{k} r_i with n_lambda <= k <= horizon stays <= lambda
/// (the arithmetic-mean bound the proofs rely on).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaCertificate {
    pub lambda: f64,
    pub n_lambda: usize,
    pub horizon: usize,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LambdaViolation {
    LinkSum { l: usize, sum: f64, bound: f64 },
    CesaroMean { k: usize, mean: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaRejection {
    pub at_lambda: f64,
    pub at_n: usize,
    pub violation: LambdaViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum LambdaOutcome {
    Certified(LambdaCertificate),
    Rejected(LambdaRejection),
}

impl LambdaOutcome {
    pub fn certificate(&self) -> Option<&LambdaCertificate> {
        match self {
            LambdaOutcome::Certified(c) => Some(c),
            LambdaOutcome::Rejected(_) => None,
        }
    }
}

const LAMBDA_GRID_STEPS: usize = 19; // lambda = j/20 for j in 1..=19

/// Search the canonical certificate for a non-negative term list.
///
/// The scan minimizes n(lambda) first and then takes the smallest grid
/// lambda in {0.05, 0.10, ..., 0.95} feasible at that n, with n(lambda)
/// capped at horizon/2, so certificates are reproducible. Comparisons are
/// non-strict, matching the definition.
pub fn lambda_scan(values: &[f64]) -> Result<LambdaOutcome> {
    let h = values.len();
    if h < 4 {
        return Err(Error::HorizonTooSmall { got: h, min: 4 });
    }
    if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidCoefficient(
            "lambda scan needs finite non-negative terms".into(),
        ));
    }

    // link_sums[l] = Sum_{i=1}^{l-1} max(r_i, r_{i+1}) for prefix length l.
    let mut link_sums = vec![0.0f64; h + 1];
    for l in 2..=h {
        link_sums[l] = link_sums[l - 1] + values[l - 2].max(values[l - 1]);
    }
    // cesaro[k] = (1/k) Sum_{i=1}^{k} r_i.
    let mut prefix = 0.0f64;
    let mut cesaro = vec![0.0f64; h + 1];
    for k in 1..=h {
        prefix += values[k - 1];
        cesaro[k] = prefix / k as f64;
    }

    let n_max = h / 2;
    let feasible = |lambda: f64, n: usize| -> Option<LambdaViolation> {
        if let Some((l, &sum)) = link_sums
            .iter()
            .enumerate()
            .skip(n + 1)
            .find(|(l, &sum)| sum > lambda * *l as f64)
        {
            return Some(LambdaViolation::LinkSum {
                l,
                sum,
                bound: lambda * l as f64,
            });
        }
        if let Some((k, &mean)) = cesaro
            .iter()
            .enumerate()
            .skip(n.max(1))
            .find(|(_, &mean)| mean > lambda)
        {
            return Some(LambdaViolation::CesaroMean { k, mean });
        }
        None
    };

    for n in 1..=n_max {
        for j in 1..=LAMBDA_GRID_STEPS {
            let lambda = j as f64 / 20.0;
            if feasible(lambda, n).is_none() {
                return Ok(LambdaOutcome::Certified(LambdaCertificate {
                    lambda,
                    n_lambda: n,
                    horizon: h,
                    sampled: false,
                }));
            }
        }
    }
    // Most permissive point of the grid for a canonical rejection witness.
    let at_lambda = LAMBDA_GRID_STEPS as f64 / 20.0;
    let at_n = n_max;
    let violation = feasible(at_lambda, at_n).expect("infeasible grid point has a witness");
    Ok(LambdaOutcome::Rejected(LambdaRejection {
        at_lambda,
        at_n,
        violation,
    }))
}

/// Certificate search for a coefficient sequence interpreted as a sequence of
/// non-negative reals under the max metric.
pub fn lambda_sequence_check(r: &CoefficientSeq) -> Result<LambdaOutcome> {
    if r.horizon() < 4 {
        return Err(Error::HorizonTooSmall {
            got: r.horizon(),
            min: 4,
        });
    }
    lambda_scan(&r.terms()?)
}

/// Term-by-term replay of the certificate invariant; used to cross-check
/// certificates independently of the scan.
pub fn replay_lambda_certificate(values: &[f64], cert: &LambdaCertificate) -> bool {
    let h = values.len().min(cert.horizon);
    for l in (cert.n_lambda + 1)..=h {
        let mut sum = 0.0;
        for i in 1..l {
            sum += values[i - 1].max(values[i]);
        }
        if sum > cert.lambda * l as f64 {
            return false;
        }
    }
    for k in cert.n_lambda.max(1)..=h {
        let mean = values[..k].iter().sum::<f64>() / k as f64;
        if mean > cert.lambda {
            return false;
        }
    }
    true
}

/// Report for Sum C_n with C_n = prod_{i<=n} r_i.
#[derive(Debug, Clone, Serialize)]
pub struct ProductSeriesReport {
    pub series: SeriesReport,
    /// C_1..C_horizon.
    pub products: Vec<f64>,
    /// sup of the last half of r, the finite-horizon limsup surrogate.
    pub limsup_surrogate: f64,
}

/// Convergence check for the series of partial products of `r`, plus the
/// tail-sup limsup report. The ratio of consecutive products is exactly the
/// next term of `r`, so the tail ratio test is taken on `r` itself; this also
/// keeps the verdict meaningful when the products underflow.
pub fn product_series_check(r: &CoefficientSeq) -> Result<ProductSeriesReport> {
    if r.horizon() < 8 {
        return Err(Error::HorizonTooSmall {
            got: r.horizon(),
            min: 8,
        });
    }
    let values = r.terms()?;
    product_series_scan(&values)
}

/// Slice-based core of [`product_series_check`]; accepts zeros.
pub fn product_series_scan(values: &[f64]) -> Result<ProductSeriesReport> {
    if values.len() < 8 {
        return Err(Error::HorizonTooSmall {
            got: values.len(),
            min: 8,
        });
    }
    if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidCoefficient(
            "product series needs finite non-negative terms".into(),
        ));
    }
    let mut products = Vec::with_capacity(values.len());
    let mut acc = 1.0f64;
    for &v in values {
        acc *= v;
        products.push(acc);
    }
    let partial_sum: f64 = products.iter().sum();

    let h = values.len();
    let window = &values[h / 2..];
    let max_ratio = window.iter().cloned().fold(0.0f64, f64::max);
    let min_ratio = window.iter().cloned().fold(f64::INFINITY, f64::min);
    let verdict = if max_ratio < 1.0 {
        SeriesReport {
            verdict: Convergence::CertifiedConvergent,
            partial_sum,
            tail_ratio: Some(max_ratio),
            detail: format!("product ratios C_(n+1)/C_n = r_(n+1) <= {max_ratio} < 1 on the tail"),
        }
    } else if min_ratio >= 1.0 {
        SeriesReport {
            verdict: Convergence::CertifiedDivergent,
            partial_sum,
            tail_ratio: Some(min_ratio),
            detail: "tail products are non-decreasing".into(),
        }
    } else {
        SeriesReport {
            verdict: Convergence::Undecided,
            partial_sum,
            tail_ratio: Some(max_ratio),
            detail: "tail product ratios straddle 1".into(),
        }
    };
    Ok(ProductSeriesReport {
        series: verdict,
        products,
        limsup_surrogate: max_ratio,
    })
}

/// Three-index coefficient family (i,j,k) -> value in [0,1), symmetric under
/// index permutation (the values stand for ternary distances of a sequence,
/// hence totally symmetric).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TensorFamily {
    Constant { value: f64 },
    Tabulated {
        /// Canonical 1-based entries [i, j, k, value] with i <= j <= k.
        entries: Vec<(usize, usize, usize, f64)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    family: TensorFamily,
    table: Option<BTreeMap<(usize, usize, usize), f64>>,
    horizon: usize,
}

impl CoefficientTensor {
    pub fn new(family: TensorFamily, horizon: usize) -> Result<Self> {
        let table = match &family {
            TensorFamily::Constant { value } => {
                if !(value.is_finite() && (0.0..1.0).contains(value)) {
                    return Err(Error::InvalidTensor(format!(
                        "constant tensor value {value} must lie in [0, 1)"
                    )));
                }
                None
            }
            TensorFamily::Tabulated { entries } => {
                let mut map = BTreeMap::new();
                for &(i, j, k, v) in entries {
                    if i == 0 || !(i <= j && j <= k) {
                        return Err(Error::InvalidTensor(format!(
                            "tensor entry ({i}, {j}, {k}) must be canonical with 1-based indices"
                        )));
                    }
                    if !(v.is_finite() && (0.0..1.0).contains(&v)) {
                        return Err(Error::InvalidTensor(format!(
                            "tensor value {v} at ({i}, {j}, {k}) must lie in [0, 1)"
                        )));
                    }
                    if map.insert((i, j, k), v).is_some() {
                        return Err(Error::InvalidTensor(format!(
                            "duplicate tensor entry ({i}, {j}, {k})"
                        )));
                    }
                }
                Some(map)
            }
        };
        Ok(CoefficientTensor {
            family,
            table,
            horizon,
        })
    }

    pub fn constant(value: f64, horizon: usize) -> Result<Self> {
        CoefficientTensor::new(TensorFamily::Constant { value }, horizon)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn family(&self) -> &TensorFamily {
        &self.family
    }

    /// Value at a 1-based index triple in any order.
    pub fn value(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        if idx[0] == 0 {
            return Err(Error::InvalidParam {
                name: "tensor index",
                value: 0.0,
                expected: "indices are 1-based",
            });
        }
        match (&self.family, &self.table) {
            (TensorFamily::Constant { value }, _) => Ok(*value),
            (TensorFamily::Tabulated { .. }, Some(map)) => map
                .get(&(idx[0], idx[1], idx[2]))
                .copied()
                .ok_or(Error::MissingTensorEntry(idx[0], idx[1], idx[2])),
            _ => unreachable!("tabulated tensors always carry a table"),
        }
    }
}

/// Report of the combined-tensor bound, the derived ratio sequence and its
/// lambda certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CommonCoefficientReport {
    pub bound_holds: bool,
    /// First index triple with Delta + 3 Theta + 4 Lambda >= 1/2.
    pub bound_counterexample: Option<(usize, usize, usize, f64)>,
    /// r_i = (Delta + 2 Theta + 3 Lambda) / (1 - Theta - Lambda) at
    /// (i, i+1, i+2).
    pub r_values: Vec<f64>,
    pub r_nonincreasing: bool,
    /// Present when the bound holds.
    pub lambda: Option<LambdaOutcome>,
}

/// Verify 0 <= Delta + 3 Theta + 4 Lambda < 1/2 over all index triples up to
/// the horizon, derive the ratio sequence, and feed it to the lambda scan.
pub fn common_coefficient_check(
    delta: &CoefficientTensor,
    theta: &CoefficientTensor,
    lam: &CoefficientTensor,
    horizon: usize,
) -> Result<CommonCoefficientReport> {
    common_coefficient_check_powered(delta, theta, lam, horizon, 1.0)
}

/// Variant with all tensor values raised to the power `s` (the homogeneity
/// degree of the Phi function in play); `s = 1` recovers the plain check.
pub fn common_coefficient_check_powered(
    delta: &CoefficientTensor,
    theta: &CoefficientTensor,
    lam: &CoefficientTensor,
    horizon: usize,
    s: f64,
) -> Result<CommonCoefficientReport> {
    if horizon < 6 {
        return Err(Error::HorizonTooSmall {
            got: horizon,
            min: 6,
        });
    }
    let pow = |v: f64| if s == 1.0 { v } else { v.powf(s) };

    let mut bound_holds = true;
    let mut bound_counterexample = None;
    'outer: for i in 1..=horizon {
        for j in i..=horizon {
            for k in j..=horizon {
                let v = pow(delta.value(i, j, k)?)
                    + 3.0 * pow(theta.value(i, j, k)?)
                    + 4.0 * pow(lam.value(i, j, k)?);
                if v >= 0.5 {
                    bound_holds = false;
                    bound_counterexample = Some((i, j, k, v));
                    break 'outer;
                }
            }
        }
    }

    let mut r_values = Vec::with_capacity(horizon.saturating_sub(2));
    for i in 1..=horizon - 2 {
        let d = pow(delta.value(i, i + 1, i + 2)?);
        let t = pow(theta.value(i, i + 1, i + 2)?);
        let l = pow(lam.value(i, i + 1, i + 2)?);
        let den = 1.0 - t - l;
        if den <= 0.0 {
            return Err(Error::DenominatorVanishes(den, i, i + 1, i + 2));
        }
        r_values.push((d + 2.0 * t + 3.0 * l) / den);
    }
    let r_nonincreasing = r_values.windows(2).all(|w| w[1] <= w[0] + 1e-15);

    let lambda = if bound_holds {
        if r_values.iter().all(|&v| v == 0.0) {
            Some(LambdaOutcome::Certified(LambdaCertificate {
                lambda: 0.05,
                n_lambda: 1,
                horizon: r_values.len(),
                sampled: false,
            }))
        } else {
            Some(lambda_scan(&r_values)?)
        }
    } else {
        None
    };

    Ok(CommonCoefficientReport {
        bound_holds,
        bound_counterexample,
        r_values,
        r_nonincreasing,
        lambda,
    })
}

/// On-disk bundle of named tensors for the multi-tensor theorems.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorBundleFile {
    #[serde(default)]
    pub delta: Option<TensorFamily>,
    #[serde(default)]
    pub gamma: Option<TensorFamily>,
    #[serde(default)]
    pub theta: Option<TensorFamily>,
    #[serde(default)]
    pub lambda: Option<TensorFamily>,
}
