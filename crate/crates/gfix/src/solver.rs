//! Picard and round-robin iteration, theorem certificates assembled from the
//! analysis and chain checkers, and the explicit a-priori error bounds
//! evaluated along traces.

use serde::Serialize;

use crate::analysis::{
    certifies_vanishing, check_combined_tensor_condition, check_family_condition,
    check_local_contractive, check_phi_condition, check_sequential_condition, check_split_tensor_condition,
    classify_tail, iterated_lipschitz, lambda_scan, product_series_scan, series_converges,
    tensor_half_range_violation, tensor_tail_sup_below_one, CheckVerdict, CoefficientSeq,
    CoefficientTensor, Convergence, LambdaOutcome, PhiFunction,
};
use crate::chains::{find_chain, is_chainable};
use crate::error::{Error, Result};
use crate::gspace::{derived_metric, FiniteGSpace, GMetricSpace, GValue};
use crate::map::{MapFamily, SelfMap};

/// Identifiers for the certified theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// Unique fixed point when Sum Lip(T^n) converges.
    LipSeries,
    /// Fixed point iff some orbit is bounded, under (G5') and Lip(T^n) -> 0.
    LipBoundedOrbit,
    /// Sequential a_n-condition with convergent Sum a_n.
    SeqAn,
    /// Sequential a_n-condition, bounded-orbit variant.
    SeqAnBoundedOrbit,
    /// Phi-wrapped a_n-condition with convergent Sum a_n.
    PhiAn,
    /// Phi-wrapped a_n-condition, bounded-orbit variant.
    PhiAnBoundedOrbit,
    /// (eps, lambda)-uniformly locally contractive on an eps/2-chainable space.
    UlcChainable,
    /// Two-tensor indexed condition with a lambda-sequence of ratios.
    LambdaSeq,
    /// Single-tensor corollary of the lambda-sequence theorem.
    LambdaCor,
    /// Variant hypotheses: limsup bounds and summable partial products.
    LambdaVarSum,
    /// Common fixed point of a map family under the three-tensor condition.
    Common,
    /// Phi-wrapped common fixed point variant.
    CommonPhi,
}

pub const ALL_THEOREMS: [TheoremId; 12] = [
    TheoremId::LipSeries,
    TheoremId::LipBoundedOrbit,
    TheoremId::SeqAn,
    TheoremId::SeqAnBoundedOrbit,
    TheoremId::PhiAn,
    TheoremId::PhiAnBoundedOrbit,
    TheoremId::UlcChainable,
    TheoremId::LambdaSeq,
    TheoremId::LambdaCor,
    TheoremId::LambdaVarSum,
    TheoremId::Common,
    TheoremId::CommonPhi,
];

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::LipSeries => "LIP_SERIES",
            TheoremId::LipBoundedOrbit => "LIP_BOUNDED_ORBIT",
            TheoremId::SeqAn => "SEQ_AN",
            TheoremId::SeqAnBoundedOrbit => "SEQ_AN_BOUNDED_ORBIT",
            TheoremId::PhiAn => "PHI_AN",
            TheoremId::PhiAnBoundedOrbit => "PHI_AN_BOUNDED_ORBIT",
            TheoremId::UlcChainable => "ULC_CHAINABLE",
            TheoremId::LambdaSeq => "LAMBDA_SEQ",
            TheoremId::LambdaCor => "LAMBDA_COR",
            TheoremId::LambdaVarSum => "LAMBDA_VAR_SUM",
            TheoremId::Common => "COMMON",
            TheoremId::CommonPhi => "COMMON_PHI",
        }
    }

    /// True for the family theorems that need [`certify_family`].
    pub fn needs_family(&self) -> bool {
        matches!(self, TheoremId::Common | TheoremId::CommonPhi)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_THEOREMS
            .iter()
            .find(|t| t.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Serializable a-priori bound on G(x_m, x*, x*) as a function of the
/// iteration index m >= 1. Every variant is non-increasing in m.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundFn {
    /// No bound (hypotheses failed or the theorem provides none).
    Unavailable,
    /// The start point is already fixed.
    Zero,
    /// scale * amplifier * Sum_{i >= m} coeffs[i].
    TailSum {
        coeffs: Vec<f64>,
        amplifier: f64,
        scale: f64,
    },
    /// F-domain tail, inverted through the power map: coeffs are already in
    /// F-domain (a_i^s or partial products).
    TailSumPhi {
        coeffs: Vec<f64>,
        amplifier: f64,
        fg0: f64,
        s: f64,
        c: f64,
    },
    /// scale * max_{i >= m} values[i].
    SuffixMax { values: Vec<f64>, scale: f64 },
    /// F-domain suffix max, inverted.
    SuffixMaxPhi {
        values: Vec<f64>,
        fg0: f64,
        s: f64,
        c: f64,
    },
    /// scale * lam^m / (1 - lam).
    Geometric { lam: f64, scale: f64 },
    /// F-domain geometric, inverted.
    GeometricPhi { lam: f64, scale: f64, s: f64, c: f64 },
    /// scale * min_{i <= m} values[i].
    RunningMin { values: Vec<f64>, scale: f64 },
}

impl BoundFn {
    /// Evaluate at iteration index m >= 1; `None` when no bound is available.
    pub fn eval(&self, m: usize) -> Option<GValue> {
        if m == 0 {
            return None;
        }
        let invert = |y: f64, s: f64, c: f64| PhiFunction::new(s, c).ok().map(|f| f.invert(y));
        let v = match self {
            BoundFn::Unavailable => return None,
            BoundFn::Zero => 0.0,
            BoundFn::TailSum {
                coeffs,
                amplifier,
                scale,
            } => {
                let tail: f64 = coeffs.iter().skip(m - 1).sum();
                scale * amplifier * tail
            }
            BoundFn::TailSumPhi {
                coeffs,
                amplifier,
                fg0,
                s,
                c,
            } => {
                let tail: f64 = coeffs.iter().skip(m - 1).sum();
                invert(amplifier * fg0 * tail, *s, *c)?
            }
            BoundFn::SuffixMax { values, scale } => {
                let tail = values.iter().skip(m - 1).cloned().fold(0.0f64, f64::max);
                scale * tail
            }
            BoundFn::SuffixMaxPhi { values, fg0, s, c } => {
                let tail = values.iter().skip(m - 1).cloned().fold(0.0f64, f64::max);
                invert(fg0 * tail, *s, *c)?
            }
            BoundFn::Geometric { lam, scale } => {
                if *lam == 0.0 {
                    0.0
                } else {
                    scale * lam.powi(m as i32) / (1.0 - lam)
                }
            }
            BoundFn::GeometricPhi { lam, scale, s, c } => {
                let y = if *lam == 0.0 {
                    0.0
                } else {
                    scale * lam.powi(m as i32) / (1.0 - lam)
                };
                invert(y, *s, *c)?
            }
            BoundFn::RunningMin { values, scale } => {
                let upto = values.iter().take(m).cloned().fold(f64::INFINITY, f64::min);
                if upto.is_finite() {
                    scale * upto
                } else {
                    return None;
                }
            }
        };
        GValue::new(v.max(0.0)).ok()
    }
}

/// One named theorem hypothesis with its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    /// Declared by configuration rather than verified (analytic spaces).
    pub assumed: bool,
    pub sampled: bool,
    /// Present when the check was truncated at a finite horizon.
    pub finite_horizon: Option<usize>,
    pub detail: String,
}

impl Hypothesis {
    fn verified(name: &str, holds: bool, detail: String) -> Self {
        Hypothesis {
            name: name.into(),
            holds,
            assumed: false,
            sampled: false,
            finite_horizon: None,
            detail,
        }
    }

    fn from_check(name: &str, v: &CheckVerdict) -> Self {
        let detail = match &v.counterexample {
            Some(ce) => format!(
                "violated at points {:?} indices {:?}: {} > {}",
                ce.points, ce.indices, ce.lhs, ce.rhs
            ),
            None => {
                let notes = v.notes.join("; ");
                if notes.is_empty() {
                    "holds on every checked instance".into()
                } else {
                    notes
                }
            }
        };
        Hypothesis {
            name: name.into(),
            holds: v.holds,
            assumed: false,
            sampled: v.sampled,
            finite_horizon: if v.checked_n > 0 { Some(v.checked_n) } else { None },
            detail,
        }
    }

    fn horizon(mut self, h: usize) -> Self {
        self.finite_horizon = Some(h);
        self
    }
}

/// A theorem certificate: named hypothesis verdicts, overall validity, and
/// the theorem's a-priori bound function. `valid` holds only when every
/// hypothesis verdict holds; assumed hypotheses are recorded as such.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub theorem: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub valid: bool,
    pub sampled: bool,
    pub bound: BoundFn,
    pub notes: Vec<String>,
}

impl Certificate {
    fn assemble(
        theorem: TheoremId,
        hypotheses: Vec<Hypothesis>,
        sampled: bool,
        bound: BoundFn,
        notes: Vec<String>,
    ) -> Self {
        let valid = hypotheses.iter().all(|h| h.holds);
        Certificate {
            theorem: theorem.as_str(),
            hypotheses,
            valid,
            sampled,
            bound: if valid { bound } else { BoundFn::Unavailable },
            notes,
        }
    }

    pub fn bound_at(&self, m: usize) -> Option<GValue> {
        self.bound.eval(m)
    }
}

/// Inputs shared by the certify entry points. Missing per-theorem parameters
/// are reported as errors, not as failed hypotheses.
#[derive(Debug, Clone)]
pub struct CertifyOptions<P> {
    pub seq: Option<CoefficientSeq>,
    pub phi: Option<PhiFunction>,
    pub delta: Option<CoefficientTensor>,
    pub gamma: Option<CoefficientTensor>,
    pub theta: Option<CoefficientTensor>,
    pub lam_tensor: Option<CoefficientTensor>,
    /// epsilon for the locally-contractive theorem.
    pub eps: Option<f64>,
    /// lambda for the locally-contractive theorem.
    pub lambda: Option<f64>,
    /// Coefficient / tensor index horizon.
    pub horizon: usize,
    /// N for the per-iterate conditions.
    pub condition_n: usize,
    /// Index bound for the tensor conditions.
    pub idx_n: usize,
    /// Orbit window for bounded-orbit hypotheses.
    pub orbit_window: usize,
    pub x0: Option<P>,
    /// Replace series convergence by the footnote relaxation a_n -> 0.
    pub relaxed_series: bool,
    /// Declared completeness / continuity on analytic spaces.
    pub assume_complete: bool,
    pub assume_continuous: bool,
}

impl<P> Default for CertifyOptions<P> {
    fn default() -> Self {
        CertifyOptions {
            seq: None,
            phi: None,
            delta: None,
            gamma: None,
            theta: None,
            lam_tensor: None,
            eps: None,
            lambda: None,
            horizon: 16,
            condition_n: 8,
            idx_n: 4,
            orbit_window: 64,
            x0: None,
            relaxed_series: false,
            assume_complete: true,
            assume_continuous: true,
        }
    }
}

/// A Picard orbit with per-step derived-metric distances.
#[derive(Debug, Clone, Serialize)]
pub struct IterationTrace<P: Serialize> {
    pub points: Vec<P>,
    /// d_G(x_n, x_{n+1}) for each computed step, including the stopping one.
    pub steps: Vec<GValue>,
    /// G(x*, T x*, T x*) at the stopping point.
    pub residual: GValue,
    pub converged: bool,
    pub iterations: usize,
}

/// Iterate x_{n+1} = T(x_n) until d_G(x_n, x_{n+1}) <= tol or `max_iter`
/// advancing applications. Non-convergence is a trace with
/// `converged = false`, not an error.
pub fn picard<S, M>(
    space: &S,
    map: &M,
    x0: S::Point,
    tol: GValue,
    max_iter: usize,
) -> Result<IterationTrace<S::Point>>
where
    S: GMetricSpace,
    S::Point: Serialize,
    M: SelfMap<S::Point>,
{
    if tol.get() <= 0.0 {
        return Err(Error::InvalidParam {
            name: "tol",
            value: tol.get(),
            expected: "strictly positive",
        });
    }
    if max_iter < 1 {
        return Err(Error::InvalidParam {
            name: "max_iter",
            value: 0.0,
            expected: "at least 1",
        });
    }
    space.check_point(&x0)?;

    let mut points = vec![x0];
    let mut steps = Vec::new();
    let mut hit_tol = false;
    loop {
        let cur = points.last().unwrap().clone();
        let next = map.apply(&cur);
        let step = derived_metric(space, &cur, &next)?;
        steps.push(step);
        if step.get() <= tol.get() {
            hit_tol = true;
            break;
        }
        if points.len() > max_iter {
            break;
        }
        points.push(next);
    }
    let last = points.last().unwrap().clone();
    let image = map.apply(&last);
    let residual = GValue::new(space.g_raw(&last, &image, &image))?;
    let converged = hit_tol && residual.get() <= tol.get();
    Ok(IterationTrace {
        iterations: points.len() - 1,
        points,
        steps,
        residual,
        converged,
    })
}

/// Round-robin orbit x_n = T_n(x_{n-1}) for an indexed family, with the
/// candidate limit verified against every distinct map of the family.
#[derive(Debug, Clone, Serialize)]
pub struct CommonFixedPointRun<P: Serialize> {
    pub trace: IterationTrace<P>,
    pub fixed_point: Option<P>,
    /// (1-based map index, G(u, T_k u, T_k u)) at the final point.
    pub residuals: Vec<(usize, f64)>,
}

pub fn common_fixed_point<S, M>(
    space: &S,
    maps: &MapFamily<M>,
    x0: S::Point,
    tol: GValue,
    max_iter: usize,
) -> Result<CommonFixedPointRun<S::Point>>
where
    S: GMetricSpace,
    S::Point: Serialize,
    M: SelfMap<S::Point>,
{
    if tol.get() <= 0.0 {
        return Err(Error::InvalidParam {
            name: "tol",
            value: tol.get(),
            expected: "strictly positive",
        });
    }
    space.check_point(&x0)?;

    let family_residuals = |u: &S::Point| -> Vec<(usize, f64)> {
        (1..=maps.len())
            .map(|k| {
                let img = maps.at(k).apply(u);
                (k, space.g_raw(u, &img, &img))
            })
            .collect()
    };

    let mut points = vec![x0];
    let mut steps = Vec::new();
    let mut converged = false;
    loop {
        let cur = points.last().unwrap().clone();
        let residuals = family_residuals(&cur);
        if residuals.iter().all(|(_, r)| *r <= tol.get()) {
            converged = true;
            break;
        }
        let n = points.len(); // next 1-based map index
        if n > max_iter {
            break;
        }
        let next = maps.at(n).apply(&cur);
        steps.push(derived_metric(space, &cur, &next)?);
        points.push(next);
    }
    let last = points.last().unwrap().clone();
    let residuals = family_residuals(&last);
    let worst = residuals.iter().map(|(_, r)| *r).fold(0.0f64, f64::max);
    let trace = IterationTrace {
        iterations: points.len() - 1,
        points,
        steps,
        residual: GValue::new(worst)?,
        converged,
    };
    Ok(CommonFixedPointRun {
        fixed_point: if converged { Some(last) } else { None },
        trace,
        residuals,
    })
}

// ---------------------------------------------------------------------------
// The printed a-priori bound expressions.
// ---------------------------------------------------------------------------

/// Tail bound for the sequential condition:
/// (a_n + ... + a_{n+m-1}) * (1 + 2 a_1 / (1 - 2 a_1)) * G0.
pub fn bound_seq_an(seq: &CoefficientSeq, g0: GValue, n: usize, m: usize) -> Result<GValue> {
    let a1 = seq.term(1)?;
    if a1 >= 0.5 {
        return Err(Error::InvalidParam {
            name: "a_1",
            value: a1,
            expected: "a_1 < 1/2",
        });
    }
    let mut sum = 0.0;
    for i in n..n + m {
        sum += seq.term(i)?;
    }
    let amp = 1.0 + 2.0 * a1 / (1.0 - 2.0 * a1);
    GValue::new(sum * amp * g0.get())
}

/// F-domain tail bound:
/// (a_n^s + ... + a_{n+m-1}^s) * (1 + (2 a_1)^s / (1 - (2 a_1)^s)) * F(G0).
/// Callers invert the power map to compare in G-units.
pub fn bound_phi_an(
    seq: &CoefficientSeq,
    phi: &PhiFunction,
    fg0: GValue,
    n: usize,
    m: usize,
) -> Result<GValue> {
    let a1 = seq.term(1)?;
    let s = phi.s();
    let t = (2.0 * a1).powf(s);
    if t >= 1.0 {
        return Err(Error::InvalidParam {
            name: "(2 a_1)^s",
            value: t,
            expected: "below 1",
        });
    }
    let mut sum = 0.0;
    for i in n..n + m {
        sum += seq.term(i)?.powf(s);
    }
    let amp = 1.0 + t / (1.0 - t);
    GValue::new(sum * amp * fg0.get())
}

/// lambda^m / (1 - lambda) * K^2 * n_deg * eps / 2.
pub fn bound_ulc(lam: f64, k: f64, n_deg: usize, eps: GValue, m: usize) -> Result<GValue> {
    if !(lam.is_finite() && (0.0..1.0).contains(&lam)) {
        return Err(Error::InvalidParam {
            name: "lambda",
            value: lam,
            expected: "lambda in [0, 1)",
        });
    }
    if n_deg < 1 {
        return Err(Error::InvalidParam {
            name: "n_deg",
            value: n_deg as f64,
            expected: "chain degree >= 1",
        });
    }
    if m < 1 {
        return Err(Error::InvalidParam {
            name: "m",
            value: m as f64,
            expected: "iteration index >= 1",
        });
    }
    let geo = if lam == 0.0 {
        0.0
    } else {
        lam.powi(m as i32) / (1.0 - lam)
    };
    GValue::new(geo * k * k * n_deg as f64 * eps.get() / 2.0)
}

/// F-domain geometric bound K^s * lambda^n / (1 - lambda) * F(G(x0, x1, x1)).
pub fn bound_lambda_seq(lam: f64, n: usize, k: f64, s: f64, fg0: GValue) -> Result<GValue> {
    if !(lam.is_finite() && lam > 0.0 && lam < 1.0) {
        return Err(Error::InvalidParam {
            name: "lambda",
            value: lam,
            expected: "lambda in (0, 1)",
        });
    }
    GValue::new(k.powf(s) * lam.powi(n as i32) / (1.0 - lam) * fg0.get())
}

// ---------------------------------------------------------------------------
// Certification.
// ---------------------------------------------------------------------------

fn completeness_hypothesis<S: GMetricSpace>(space: &S, name: &str, assumed_ok: bool) -> Hypothesis {
    if space.sampled() {
        Hypothesis {
            name: name.into(),
            holds: assumed_ok,
            assumed: true,
            sampled: true,
            finite_horizon: None,
            detail: if assumed_ok {
                "declared by configuration; not mechanically checkable on an analytic space".into()
            } else {
                "declared false by configuration".into()
            },
        }
    } else {
        Hypothesis::verified(
            name,
            true,
            "finite spaces: G-Cauchy sequences are eventually constant".into(),
        )
    }
}

fn continuity_hypothesis<S: GMetricSpace>(space: &S, name: &str, assumed_ok: bool) -> Hypothesis {
    if space.sampled() {
        Hypothesis {
            name: name.into(),
            holds: assumed_ok,
            assumed: true,
            sampled: true,
            finite_horizon: None,
            detail: if assumed_ok {
                "declared by configuration".into()
            } else {
                "declared false by configuration".into()
            },
        }
    } else {
        Hypothesis::verified(
            name,
            true,
            "on a finite space every self-map is sequentially and orbitally continuous".into(),
        )
    }
}

fn start_point<S: GMetricSpace>(space: &S, opts: &CertifyOptions<S::Point>) -> Result<S::Point> {
    if let Some(p) = &opts.x0 {
        space.check_point(p)?;
        return Ok(p.clone());
    }
    space
        .sample_points()
        .first()
        .cloned()
        .ok_or(Error::EmptySpace)
}

/// Sup of G over triples of the distinct points of the orbit window.
fn orbit_sup<S, M>(space: &S, map: &M, x0: &S::Point, window: usize) -> (f64, usize)
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let mut distinct: Vec<S::Point> = vec![x0.clone()];
    let mut cur = x0.clone();
    for _ in 0..window {
        cur = map.apply(&cur);
        if !distinct.contains(&cur) {
            distinct.push(cur.clone());
        }
    }
    let p = distinct.len();
    let mut sup = 0.0f64;
    for i in 0..p {
        for j in i..p {
            for k in j..p {
                sup = sup.max(space.g_raw(&distinct[i], &distinct[j], &distinct[k]));
            }
        }
    }
    (sup, p)
}

/// Exhaustive (G5') check on non-sampled spaces; declared on sampled ones.
fn g5_prime_hypothesis<S: GMetricSpace>(space: &S) -> Hypothesis {
    if space.sampled() {
        return Hypothesis {
            name: "two-term relaxed polygon inequality (G5')".into(),
            holds: true,
            assumed: true,
            sampled: true,
            finite_horizon: None,
            detail: "assumed for the builtin analytic families".into(),
        };
    }
    let pts = space.sample_points();
    let k = space.relaxation();
    let n = pts.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = space.g_raw(&pts[x], &pts[y], &pts[z]);
                for z1 in 0..n {
                    let rhs = k
                        * (space.g_raw(&pts[x], &pts[z1], &pts[z1])
                            + space.g_raw(&pts[z1], &pts[y], &pts[z]));
                    if lhs > rhs + crate::gspace::AXIOM_TOL {
                        return Hypothesis::verified(
                            "two-term relaxed polygon inequality (G5')",
                            false,
                            format!(
                                "violated at ({}, {}, {}) through {}",
                                space.point_label(&pts[x]),
                                space.point_label(&pts[y]),
                                space.point_label(&pts[z]),
                                space.point_label(&pts[z1])
                            ),
                        );
                    }
                }
            }
        }
    }
    Hypothesis::verified(
        "two-term relaxed polygon inequality (G5')",
        true,
        "checked exhaustively over all single intermediates".into(),
    )
}

fn require<T: Clone>(opt: &Option<T>, theorem: TheoremId, what: &'static str) -> Result<T> {
    opt.clone()
        .ok_or(Error::MissingTheoremParam(theorem.as_str(), what))
}

/// Certify a single-map theorem on any space representation. The
/// locally-contractive theorem needs chain machinery and is finite-only; use
/// [`certify`] for it.
pub fn certify_generic<S, M>(
    space: &S,
    map: &M,
    theorem: TheoremId,
    opts: &CertifyOptions<S::Point>,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    match theorem {
        TheoremId::UlcChainable => Err(Error::UnsupportedSpace {
            op: "certify(ULC_CHAINABLE)",
            why: "chain machinery needs a finite table; materialize the grid first",
        }),
        TheoremId::Common | TheoremId::CommonPhi => Err(Error::MissingTheoremParam(
            theorem.as_str(),
            "a map family (use certify_family)",
        )),
        TheoremId::LipSeries => certify_lip(space, map, opts, false),
        TheoremId::LipBoundedOrbit => certify_lip(space, map, opts, true),
        TheoremId::SeqAn => certify_seq(space, map, opts, theorem, None, false),
        TheoremId::SeqAnBoundedOrbit => certify_seq(space, map, opts, theorem, None, true),
        TheoremId::PhiAn => {
            let phi = require(&opts.phi, theorem, "phi function")?;
            certify_seq(space, map, opts, theorem, Some(phi), false)
        }
        TheoremId::PhiAnBoundedOrbit => {
            let phi = require(&opts.phi, theorem, "phi function")?;
            certify_seq(space, map, opts, theorem, Some(phi), true)
        }
        TheoremId::LambdaSeq => certify_lambda(space, map, opts, theorem),
        TheoremId::LambdaCor => certify_lambda(space, map, opts, theorem),
        TheoremId::LambdaVarSum => certify_lambda_var(space, map, opts),
    }
}

fn certify_lip<S, M>(
    space: &S,
    map: &M,
    opts: &CertifyOptions<S::Point>,
    bounded_orbit: bool,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let theorem = if bounded_orbit {
        TheoremId::LipBoundedOrbit
    } else {
        TheoremId::LipSeries
    };
    let x0 = start_point(space, opts)?;
    let tx0 = map.apply(&x0);
    let g0 = space.g_raw(&x0, &tx0, &tx0);
    let k = space.relaxation();
    let h = opts.horizon;
    let mut notes = vec![format!(
        "start point {}, G(x0, Tx0, Tx0) = {g0}",
        space.point_label(&x0)
    )];

    let mut hyps = Vec::new();
    if bounded_orbit {
        hyps.push(g5_prime_hypothesis(space));
        hyps.push(completeness_hypothesis(
            space,
            "orbit completeness",
            opts.assume_complete,
        ));
        hyps.push(continuity_hypothesis(
            space,
            "orbital continuity",
            opts.assume_continuous,
        ));
    } else {
        hyps.push(completeness_hypothesis(
            space,
            "space completeness",
            opts.assume_complete,
        ));
    }

    let lips = match iterated_lipschitz(space, map, h) {
        Ok(l) => {
            hyps.push(
                Hypothesis::verified(
                    "every iterate is Lipschitzian",
                    true,
                    format!("Lip(T^1..T^{h}) all finite"),
                )
                .horizon(h),
            );
            l.iter().map(|v| v.get()).collect::<Vec<f64>>()
        }
        Err(Error::UnboundedLipschitz(a, b, c)) => {
            hyps.push(Hypothesis::verified(
                "every iterate is Lipschitzian",
                false,
                format!("no finite constant: G({a}, {b}, {c}) = 0 with a positive image"),
            ));
            return Ok(Certificate::assemble(
                theorem,
                hyps,
                space.sampled(),
                BoundFn::Unavailable,
                notes,
            ));
        }
        Err(e) => return Err(e),
    };

    let bound = if bounded_orbit {
        let vanish = certifies_vanishing(&lips);
        hyps.push(
            Hypothesis::verified(
                "iterated Lipschitz constants tend to zero",
                vanish,
                format!("tail of Lip(T^n): {:?}", &lips[lips.len() / 2..]),
            )
            .horizon(h),
        );
        let (alpha, orbit_len) = orbit_sup(space, map, &x0, opts.orbit_window);
        notes.push(format!(
            "orbit window {} points ({} distinct), sup G over orbit triples = {alpha}",
            opts.orbit_window, orbit_len
        ));
        hyps.push(
            Hypothesis::verified(
                "orbit bounded over the checked window",
                true,
                format!("sup G over orbit triples = {alpha} (finite-horizon evidence)"),
            )
            .horizon(opts.orbit_window),
        );
        if g0 == 0.0 {
            BoundFn::Zero
        } else {
            BoundFn::RunningMin {
                values: lips.clone(),
                scale: k * alpha,
            }
        }
    } else {
        // Sum over n >= 0 includes Lip(T^0) = 1, which cannot change the
        // verdict of the tail test.
        let mut with_id = vec![1.0];
        with_id.extend_from_slice(&lips);
        let series = classify_tail(&with_id);
        hyps.push(
            Hypothesis::verified(
                "sum of iterated Lipschitz constants converges",
                series.verdict == Convergence::CertifiedConvergent,
                format!("{}; partial sum {}", series.detail, series.partial_sum),
            )
            .horizon(h),
        );
        if g0 == 0.0 {
            BoundFn::Zero
        } else {
            BoundFn::TailSum {
                coeffs: lips.clone(),
                amplifier: k * k,
                scale: g0,
            }
        }
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

fn certify_seq<S, M>(
    space: &S,
    map: &M,
    opts: &CertifyOptions<S::Point>,
    theorem: TheoremId,
    phi: Option<PhiFunction>,
    bounded_orbit: bool,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let seq = require(&opts.seq, theorem, "coefficient sequence")?;
    let terms = seq.terms()?;
    let a1 = terms[0];
    let x0 = start_point(space, opts)?;
    let tx0 = map.apply(&x0);
    let g0 = space.g_raw(&x0, &tx0, &tx0);
    let k = space.relaxation();
    let mut notes = vec![
        format!("start point {}, G(x0, Tx0, Tx0) = {g0}", space.point_label(&x0)),
        format!("a_1 = {a1}"),
    ];

    let mut hyps = Vec::new();
    hyps.push(completeness_hypothesis(
        space,
        if bounded_orbit {
            "orbit completeness"
        } else {
            "space completeness"
        },
        opts.assume_complete,
    ));
    hyps.push(continuity_hypothesis(
        space,
        if bounded_orbit {
            "orbital continuity"
        } else {
            "sequential continuity"
        },
        opts.assume_continuous,
    ));
    hyps.push(
        Hypothesis::verified(
            "coefficients positive",
            true,
            format!("a_1..a_{} all positive", seq.horizon()),
        )
        .horizon(seq.horizon()),
    );
    match &phi {
        None => hyps.push(Hypothesis::verified(
            "first coefficient below one half",
            a1 < 0.5,
            format!("a_1 = {a1}"),
        )),
        Some(f) => {
            let t = (2.0 * a1).powf(f.s());
            hyps.push(Hypothesis::verified(
                "first coefficient below one half",
                a1 < 0.5,
                format!("a_1 = {a1}, (2 a_1)^s = {t}"),
            ));
        }
    }

    let cond = match &phi {
        None => check_sequential_condition(space, map, &seq, opts.condition_n)?,
        Some(f) => check_phi_condition(space, map, &seq, f, opts.condition_n)?,
    };
    hyps.push(Hypothesis::from_check(
        match &phi {
            None => "iterate contraction inequality",
            Some(_) => "phi-wrapped iterate contraction inequality",
        },
        &cond,
    ));

    if bounded_orbit {
        let vanish = certifies_vanishing(&terms);
        hyps.push(
            Hypothesis::verified(
                "coefficients tend to zero",
                vanish,
                format!("tail: {:?}", &terms[terms.len() / 2..]),
            )
            .horizon(seq.horizon()),
        );
        let (alpha, orbit_len) = orbit_sup(space, map, &x0, opts.orbit_window);
        notes.push(format!(
            "orbit window {} points ({} distinct), sup G over orbit triples = {alpha}",
            opts.orbit_window, orbit_len
        ));
        hyps.push(
            Hypothesis::verified(
                "orbit bounded over the checked window",
                true,
                format!("sup G over orbit triples = {alpha} (finite-horizon evidence)"),
            )
            .horizon(opts.orbit_window),
        );
    } else if opts.relaxed_series {
        let vanish = certifies_vanishing(&terms);
        hyps.push(
            Hypothesis::verified(
                "coefficients tend to zero (relaxed mode)",
                vanish,
                format!("tail: {:?}", &terms[terms.len() / 2..]),
            )
            .horizon(seq.horizon()),
        );
    } else {
        let series = series_converges(&seq)?;
        hyps.push(
            Hypothesis::verified(
                "coefficient series converges",
                series.verdict == Convergence::CertifiedConvergent,
                format!("{}; partial sum {}", series.detail, series.partial_sum),
            )
            .horizon(seq.horizon()),
        );
    }

    let bound = if g0 == 0.0 {
        BoundFn::Zero
    } else {
        match (&phi, bounded_orbit, a1 < 0.5) {
            (_, _, false) => BoundFn::Unavailable,
            (None, false, true) => BoundFn::TailSum {
                coeffs: terms.clone(),
                amplifier: k * (1.0 + 2.0 * a1 / (1.0 - 2.0 * a1)),
                scale: g0,
            },
            (None, true, true) => BoundFn::SuffixMax {
                values: terms.clone(),
                scale: g0,
            },
            (Some(f), false, true) => {
                let s = f.s();
                let t = (2.0 * a1).powf(s);
                BoundFn::TailSumPhi {
                    coeffs: terms.iter().map(|a| a.powf(s)).collect(),
                    amplifier: k.powf(s) * (1.0 + t / (1.0 - t)),
                    fg0: f.eval(g0),
                    s,
                    c: f.c(),
                }
            }
            (Some(f), true, true) => BoundFn::SuffixMaxPhi {
                values: terms.iter().map(|a| a.powf(f.s())).collect(),
                fg0: f.eval(g0),
                s: f.s(),
                c: f.c(),
            },
        }
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

/// Ratio sequence of the two-tensor (or corollary) condition at the sliding
/// index triples (i, i+1, i+1).
fn lambda_ratio_sequence(
    delta: &CoefficientTensor,
    gamma: Option<&CoefficientTensor>,
    s: f64,
    horizon: usize,
) -> Result<Vec<f64>> {
    let mut r = Vec::with_capacity(horizon.saturating_sub(1));
    for i in 1..horizon {
        let d = delta.value(i, i + 1, i + 1)?;
        let den = 1.0 - (2.0 * d).powf(s);
        if den <= 0.0 {
            return Err(Error::DenominatorVanishes(den, i, i + 1, i + 1));
        }
        let num = match gamma {
            Some(g) => d.powf(s) + g.value(i, i + 1, i + 1)?.powf(s),
            None => (2.0 * d).powf(s),
        };
        r.push(num / den);
    }
    Ok(r)
}

fn lambda_hypotheses(r: &[f64]) -> (Vec<Hypothesis>, Option<f64>) {
    let mut hyps = Vec::new();
    let nonincreasing = r.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    hyps.push(Hypothesis::verified(
        "ratio sequence non-increasing",
        nonincreasing,
        format!("r_1 = {:?} .. r_{} = {:?}", r.first(), r.len(), r.last()),
    ));
    let (ok, lam, detail) = match lambda_scan(r) {
        Ok(LambdaOutcome::Certified(c)) => (
            true,
            Some(c.lambda),
            format!("lambda = {}, n(lambda) = {}, horizon {}", c.lambda, c.n_lambda, c.horizon),
        ),
        Ok(LambdaOutcome::Rejected(rej)) => {
            (false, None, format!("rejected: {:?}", rej.violation))
        }
        Err(e) => (false, None, format!("scan failed: {e}")),
    };
    hyps.push(Hypothesis::verified(
        "ratio sequence is a lambda sequence",
        ok,
        detail,
    ));
    (hyps, lam)
}

fn certify_lambda<S, M>(
    space: &S,
    map: &M,
    opts: &CertifyOptions<S::Point>,
    theorem: TheoremId,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let phi = require(&opts.phi, theorem, "phi function")?;
    let delta = require(&opts.delta, theorem, "delta tensor")?;
    let gamma = match theorem {
        TheoremId::LambdaSeq => Some(require(&opts.gamma, theorem, "gamma tensor")?),
        _ => None,
    };
    let s = phi.s();
    let h = opts.horizon;
    let x0 = start_point(space, opts)?;
    let x1 = map.apply(&x0);
    let g01 = space.g_raw(&x0, &x1, &x1);
    let k = space.relaxation();
    let notes = vec![format!(
        "start point {}, G(x0, x1, x1) = {g01}",
        space.point_label(&x0)
    )];

    let mut hyps = Vec::new();
    hyps.push(completeness_hypothesis(
        space,
        "space completeness",
        opts.assume_complete,
    ));
    hyps.push(continuity_hypothesis(
        space,
        "sequential continuity",
        opts.assume_continuous,
    ));

    let mut range_ok = true;
    for (name, t) in [("delta", Some(&delta)), ("gamma", gamma.as_ref())] {
        if let Some(t) = t {
            let viol = tensor_half_range_violation(t, h)?;
            range_ok &= viol.is_none();
            hyps.push(
                Hypothesis::verified(
                    &format!("{name} tensor values within [0, 1/2)"),
                    viol.is_none(),
                    match viol {
                        None => "all checked values below 1/2".into(),
                        Some((i, j, k, v)) => format!("value {v} at ({i}, {j}, {k})"),
                    },
                )
                .horizon(h),
            );
        }
    }

    let cond = match &gamma {
        Some(g) => check_split_tensor_condition(space, map, &delta, g, &phi, opts.idx_n)?,
        None => check_combined_tensor_condition(space, map, &delta, &phi, opts.idx_n)?,
    };
    hyps.push(Hypothesis::from_check(
        "indexed contraction inequality",
        &cond,
    ));

    let mut lam_value = None;
    if range_ok {
        let r = lambda_ratio_sequence(&delta, gamma.as_ref(), s, h)?;
        let (mut lh, lam) = lambda_hypotheses(&r);
        hyps.append(&mut lh);
        lam_value = lam;
    } else {
        hyps.push(Hypothesis::verified(
            "ratio sequence is a lambda sequence",
            false,
            "not evaluated: tensor range hypothesis failed".into(),
        ));
    }

    let bound = match (lam_value, g01 == 0.0) {
        (_, true) => BoundFn::Zero,
        (Some(lam), false) => BoundFn::GeometricPhi {
            lam,
            scale: k.powf(s) * phi.eval(g01),
            s,
            c: phi.c(),
        },
        (None, false) => BoundFn::Unavailable,
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

fn certify_lambda_var<S, M>(
    space: &S,
    map: &M,
    opts: &CertifyOptions<S::Point>,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let theorem = TheoremId::LambdaVarSum;
    let phi = require(&opts.phi, theorem, "phi function")?;
    let delta = require(&opts.delta, theorem, "delta tensor")?;
    let gamma = require(&opts.gamma, theorem, "gamma tensor")?;
    let s = phi.s();
    let h = opts.horizon;
    let x0 = start_point(space, opts)?;
    let x1 = map.apply(&x0);
    let g01 = space.g_raw(&x0, &x1, &x1);
    let k = space.relaxation();
    let notes = vec![format!(
        "start point {}, G(x0, x1, x1) = {g01}",
        space.point_label(&x0)
    )];

    let mut hyps = Vec::new();
    hyps.push(completeness_hypothesis(
        space,
        "space completeness",
        opts.assume_complete,
    ));
    hyps.push(continuity_hypothesis(
        space,
        "sequential continuity",
        opts.assume_continuous,
    ));

    let mut range_ok = true;
    for (name, t) in [("delta", &delta), ("gamma", &gamma)] {
        let viol = tensor_half_range_violation(t, h)?;
        range_ok &= viol.is_none();
        hyps.push(
            Hypothesis::verified(
                &format!("{name} tensor values within [0, 1/2)"),
                viol.is_none(),
                match viol {
                    None => "all checked values below 1/2".into(),
                    Some((i, j, kk, v)) => format!("value {v} at ({i}, {j}, {kk})"),
                },
            )
            .horizon(h),
        );
    }

    for (name, t) in [("delta", &delta), ("gamma", &gamma)] {
        let sup = tensor_tail_sup_below_one(t, h, s)?;
        hyps.push(Hypothesis::from_check(
            &format!("tail sup of {name}^s below one"),
            &sup,
        ));
    }

    let cond = check_split_tensor_condition(space, map, &delta, &gamma, &phi, opts.idx_n)?;
    hyps.push(Hypothesis::from_check(
        "indexed contraction inequality",
        &cond,
    ));

    let mut products = Vec::new();
    if range_ok {
        let r = lambda_ratio_sequence(&delta, Some(&gamma), s, h)?;
        let rep = product_series_scan(&r)?;
        hyps.push(
            Hypothesis::verified(
                "partial-product series converges",
                rep.series.verdict == Convergence::CertifiedConvergent,
                format!("{}; partial sum {}", rep.series.detail, rep.series.partial_sum),
            )
            .horizon(h),
        );
        products = rep.products;
    } else {
        hyps.push(Hypothesis::verified(
            "partial-product series converges",
            false,
            "not evaluated: tensor range hypothesis failed".into(),
        ));
    }

    let bound = if g01 == 0.0 {
        BoundFn::Zero
    } else if products.is_empty() {
        BoundFn::Unavailable
    } else {
        BoundFn::TailSumPhi {
            coeffs: products,
            amplifier: k.powf(s),
            fg0: phi.eval(g01),
            s,
            c: phi.c(),
        }
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

/// Certify on a finite space; this is the full-menu entry point, including
/// the locally-contractive theorem.
pub fn certify<M: SelfMap<usize>>(
    space: &FiniteGSpace,
    map: &M,
    theorem: TheoremId,
    opts: &CertifyOptions<usize>,
) -> Result<Certificate> {
    match theorem {
        TheoremId::UlcChainable => {
            let eps = require(&opts.eps, theorem, "eps")?;
            let lam = require(&opts.lambda, theorem, "lambda")?;
            certify_ulc(space, map, eps, lam, opts)
        }
        _ => certify_generic(space, map, theorem, opts),
    }
}

fn certify_ulc<M: SelfMap<usize>>(
    space: &FiniteGSpace,
    map: &M,
    eps: f64,
    lam: f64,
    opts: &CertifyOptions<usize>,
) -> Result<Certificate> {
    let theorem = TheoremId::UlcChainable;
    let eps = GValue::new(eps)?;
    if !(lam.is_finite() && (0.0..1.0).contains(&lam)) {
        return Err(Error::InvalidParam {
            name: "lambda",
            value: lam,
            expected: "lambda in [0, 1)",
        });
    }
    let half = GValue::new(eps.get() / 2.0)?;
    let x0 = start_point(space, opts)?;
    let tx0 = map.apply(&x0);
    let k = space.relaxation();
    let mut notes = vec![format!("start point {}", space.point_label(&x0))];

    let mut hyps = Vec::new();
    let chain_verdict = is_chainable(space, half)?;
    hyps.push(Hypothesis {
        name: "space chainable at eps/2".into(),
        holds: chain_verdict.chainable,
        assumed: false,
        sampled: space.sampled(),
        finite_horizon: None,
        detail: match chain_verdict.blocking_pair {
            None => format!(
                "every ordered pair has a witness chain; max degree {}",
                chain_verdict.max_degree
            ),
            Some((a, b)) => format!(
                "no chain from {} to {} at eps/2 = {}",
                space.point_label(&a),
                space.point_label(&b),
                half
            ),
        },
    });

    let local = check_local_contractive(space, map, eps, lam)?;
    hyps.push(Hypothesis::from_check(
        "uniformly locally contractive at (eps, lambda)",
        &local,
    ));
    hyps.push(completeness_hypothesis(
        space,
        "orbit completeness",
        opts.assume_complete,
    ));
    hyps.push(continuity_hypothesis(
        space,
        "orbital continuity",
        opts.assume_continuous,
    ));

    let bound = if tx0 == x0 {
        notes.push("start point is already fixed".into());
        BoundFn::Zero
    } else {
        match find_chain(space, x0, tx0, half)? {
            Some(chain) => {
                let n_deg = chain.degree().max(1);
                notes.push(format!(
                    "chain degree from x0 to T x0 at eps/2: {n_deg}"
                ));
                BoundFn::Geometric {
                    lam,
                    scale: k * k * n_deg as f64 * eps.get() / 2.0,
                }
            }
            None => BoundFn::Unavailable,
        }
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

/// Certify the common-fixed-point theorems for an indexed map family.
pub fn certify_family<S, M>(
    space: &S,
    family: &MapFamily<M>,
    theorem: TheoremId,
    opts: &CertifyOptions<S::Point>,
) -> Result<Certificate>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if !theorem.needs_family() {
        return Err(Error::MissingTheoremParam(
            theorem.as_str(),
            "a single map (use certify)",
        ));
    }
    let delta = require(&opts.delta, theorem, "delta tensor")?;
    let theta = require(&opts.theta, theorem, "theta tensor")?;
    let lam_t = require(&opts.lam_tensor, theorem, "lambda tensor")?;
    let phi = match theorem {
        TheoremId::CommonPhi => Some(require(&opts.phi, theorem, "phi function")?),
        _ => None,
    };
    let s = phi.as_ref().map(|f| f.s()).unwrap_or(1.0);
    let h = opts.horizon;
    let k = space.relaxation();

    let x0 = start_point(space, opts)?;
    let x1 = family.at(1).apply(&x0);
    let x2 = family.at(2).apply(&x1);
    let g012 = space.g_raw(&x0, &x1, &x2);
    let notes = vec![format!(
        "start point {}, G(x0, x1, x2) = {g012}",
        space.point_label(&x0)
    )];

    let mut hyps = Vec::new();
    hyps.push(completeness_hypothesis(
        space,
        "space completeness",
        opts.assume_complete,
    ));

    let rep = crate::analysis::common_coefficient_check_powered(&delta, &theta, &lam_t, h, s)?;
    hyps.push(
        Hypothesis::verified(
            "combined tensor bound below one half",
            rep.bound_holds,
            match rep.bound_counterexample {
                None => "delta + 3 theta + 4 lambda < 1/2 on every checked index triple".into(),
                Some((i, j, kk, v)) => format!("value {v} at ({i}, {j}, {kk})"),
            },
        )
        .horizon(h),
    );

    let cond = check_family_condition(space, family, &delta, &theta, &lam_t, phi.as_ref(), opts.idx_n)?;
    hyps.push(Hypothesis::from_check(
        "family contraction inequality",
        &cond,
    ));

    let mut lam_value = None;
    if rep.bound_holds {
        hyps.push(Hypothesis::verified(
            "ratio sequence non-increasing",
            rep.r_nonincreasing,
            format!("r_1 = {:?} .. = {:?}", rep.r_values.first(), rep.r_values.last()),
        ));
        match rep.lambda.as_ref() {
            Some(LambdaOutcome::Certified(c)) => {
                lam_value = Some(c.lambda);
                hyps.push(Hypothesis::verified(
                    "ratio sequence is a lambda sequence",
                    true,
                    format!("lambda = {}, n(lambda) = {}", c.lambda, c.n_lambda),
                ));
            }
            Some(LambdaOutcome::Rejected(rej)) => {
                hyps.push(Hypothesis::verified(
                    "ratio sequence is a lambda sequence",
                    false,
                    format!("rejected: {:?}", rej.violation),
                ));
            }
            None => unreachable!("lambda outcome present when the bound holds"),
        }
    } else {
        hyps.push(Hypothesis::verified(
            "ratio sequence is a lambda sequence",
            false,
            "not evaluated: tensor bound failed".into(),
        ));
    }

    let bound = match (lam_value, g012 == 0.0) {
        (_, true) => BoundFn::Zero,
        (Some(lam), false) => match &phi {
            None => BoundFn::Geometric {
                lam,
                scale: k * g012,
            },
            Some(f) => BoundFn::GeometricPhi {
                lam,
                scale: k.powf(s) * f.eval(g012),
                s,
                c: f.c(),
            },
        },
        (None, false) => BoundFn::Unavailable,
    };
    Ok(Certificate::assemble(
        theorem,
        hyps,
        space.sampled(),
        bound,
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspace::AnalyticGSpace;
    use crate::map::{AffineMap, TabulatedMap};

    fn gv(v: f64) -> GValue {
        GValue::new(v).unwrap()
    }

    #[test]
    fn picard_on_interval_example_converges_in_eleven() {
        let s = AnalyticGSpace::interval_maxval();
        let t = AffineMap::sixteenth();
        let trace = picard(&s, &t, 1.0, gv(1e-12), 1000).unwrap();
        assert!(trace.converged);
        assert!(trace.iterations <= 11, "iterations = {}", trace.iterations);
        let limit = *trace.points.last().unwrap();
        assert!(limit.abs() <= 1e-12, "limit = {limit}");
    }

    #[test]
    fn picard_one_step_on_two_point() {
        let s = FiniteGSpace::two_point();
        let t = TabulatedMap::constant(2, 0).unwrap();
        let trace = picard(&s, &t, 1, gv(1e-12), 10).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations, 1);
        assert_eq!(*trace.points.last().unwrap(), 0);
    }

    #[test]
    fn picard_zero_iterations_when_fixed() {
        let s = FiniteGSpace::two_point();
        let t = TabulatedMap::constant(2, 0).unwrap();
        let trace = picard(&s, &t, 0, gv(1e-12), 10).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations, 0);
        assert_eq!(trace.points, vec![0]);
    }

    #[test]
    fn picard_reports_non_convergence() {
        let s = FiniteGSpace::two_point();
        let swap = TabulatedMap::new(vec![1, 0], "swap").unwrap();
        let trace = picard(&s, &swap, 0, gv(1e-12), 5).unwrap();
        assert!(!trace.converged);
        assert_eq!(trace.iterations, 5);
    }

    #[test]
    fn trace_consistency() {
        let s = FiniteGSpace::three_point();
        let t = TabulatedMap::three_point_example_map();
        let trace = picard(&s, &t, 2, gv(1e-12), 10).unwrap();
        for w in trace.points.windows(2) {
            assert_eq!(t.apply(&w[0]), w[1]);
        }
    }

    #[test]
    fn bound_seq_an_frozen_value() {
        // a_1 = 1/9: (1/9) * (1 + (2/9)/(7/9)) = (1/9)*(9/7) = 1/7.
        let seq = CoefficientSeq::inv_sq_shifted(8);
        let b = bound_seq_an(&seq, gv(1.0), 1, 1).unwrap();
        assert!((b.get() - 1.0 / 7.0).abs() < 1e-15);
        assert_eq!(bound_seq_an(&seq, gv(0.0), 3, 4).unwrap().get(), 0.0);
        // Non-decreasing in m, bounded by the full tail.
        let b1 = bound_seq_an(&seq, gv(1.0), 2, 1).unwrap();
        let b2 = bound_seq_an(&seq, gv(1.0), 2, 3).unwrap();
        let b3 = bound_seq_an(&seq, gv(1.0), 2, 6).unwrap();
        assert!(b1 <= b2 && b2 <= b3);
    }

    #[test]
    fn bound_phi_an_frozen_value_and_reduction() {
        let seq = CoefficientSeq::inv_sq_shifted(8);
        let phi = PhiFunction::sqrt();
        // Direct evaluation of the printed expression at s = 1/2, n = m = 1.
        let t = (2.0f64 / 9.0).sqrt();
        let expect = (1.0f64 / 3.0) * (1.0 + t / (1.0 - t));
        let b = bound_phi_an(&seq, &phi, gv(1.0), 1, 1).unwrap();
        assert!((b.get() - expect).abs() < 1e-15);
        assert_eq!(bound_phi_an(&seq, &phi, gv(0.0), 1, 4).unwrap().get(), 0.0);

        // s = 1 reduces exactly to the plain bound.
        let id = PhiFunction::identity();
        for (n, m) in [(1, 1), (2, 3), (1, 6)] {
            let plain = bound_seq_an(&seq, gv(0.7), n, m).unwrap();
            let wrapped = bound_phi_an(&seq, &id, gv(0.7), n, m).unwrap();
            assert!((plain.get() - wrapped.get()).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_ulc_frozen_values() {
        let b = bound_ulc(0.5, 1.0, 1, gv(4.0), 3).unwrap();
        assert_eq!(b.get(), 0.5);
        assert_eq!(bound_ulc(0.0, 1.0, 2, gv(4.0), 5).unwrap().get(), 0.0);
        // Geometric decay in m.
        let mut prev = f64::INFINITY;
        for m in 1..24 {
            let v = bound_ulc(0.5, 1.0, 1, gv(4.0), m).unwrap().get();
            assert!(v < prev);
            prev = v;
        }
        assert!(bound_ulc(1.0, 1.0, 1, gv(4.0), 1).is_err());
    }

    #[test]
    fn bound_lambda_seq_frozen_value() {
        let b = bound_lambda_seq(0.5, 4, 1.0, 0.5, gv(1.0)).unwrap();
        assert_eq!(b.get(), 0.125);
        let b_next = bound_lambda_seq(0.5, 5, 1.0, 0.5, gv(1.0)).unwrap();
        assert_eq!(b_next.get(), b.get() / 2.0);
        assert_eq!(bound_lambda_seq(0.5, 4, 1.0, 0.5, gv(0.0)).unwrap().get(), 0.0);
        assert!(bound_lambda_seq(0.0, 1, 1.0, 0.5, gv(1.0)).is_err());
        assert!(bound_lambda_seq(1.0, 1, 1.0, 0.5, gv(1.0)).is_err());
    }

    #[test]
    fn ulc_certificates_on_builtin_examples() {
        let opts = CertifyOptions {
            eps: Some(4.0),
            lambda: Some(0.5),
            x0: Some(1),
            ..CertifyOptions::default()
        };

        let two = FiniteGSpace::two_point();
        let zero = TabulatedMap::constant(2, 0).unwrap();
        let cert = certify(&two, &zero, TheoremId::UlcChainable, &opts).unwrap();
        assert!(cert.valid, "{cert:?}");
        assert!(!cert.sampled);

        let three = FiniteGSpace::three_point();
        let map = TabulatedMap::three_point_example_map();
        let mut opts3 = opts.clone();
        opts3.x0 = Some(2);
        let cert = certify(&three, &map, TheoremId::UlcChainable, &opts3).unwrap();
        assert!(cert.valid, "{cert:?}");
        // Bound evaluates and decreases.
        let b1 = cert.bound_at(1).unwrap();
        let b5 = cert.bound_at(5).unwrap();
        assert!(b5 < b1);
    }

    #[test]
    fn phi_certificate_on_interval_example() {
        let s = AnalyticGSpace::interval_maxval().with_grid(33).unwrap();
        let t = AffineMap::sixteenth();
        let opts = CertifyOptions {
            seq: Some(CoefficientSeq::inv_sq_shifted(16)),
            phi: Some(PhiFunction::sqrt()),
            condition_n: 6,
            x0: Some(1.0),
            ..CertifyOptions::default()
        };
        let cert = certify_generic(&s, &t, TheoremId::PhiAn, &opts).unwrap();
        assert!(cert.valid, "{cert:?}");
        assert!(cert.sampled);
        assert!(cert.notes.iter().any(|n| n.contains("a_1 = 0.1111111111111111")));
    }

    #[test]
    fn seq_certificate_fails_for_identity() {
        let s = FiniteGSpace::two_point();
        let id = TabulatedMap::identity(2);
        let opts = CertifyOptions {
            seq: Some(CoefficientSeq::inv_sq_shifted(16)),
            ..CertifyOptions::default()
        };
        let cert = certify(&s, &id, TheoremId::SeqAn, &opts).unwrap();
        assert!(!cert.valid);
        assert!(cert
            .hypotheses
            .iter()
            .any(|h| !h.holds && h.detail.contains("violated")));
        assert!(matches!(cert.bound, BoundFn::Unavailable));
    }

    #[test]
    fn missing_params_are_errors() {
        let s = FiniteGSpace::two_point();
        let id = TabulatedMap::identity(2);
        let opts = CertifyOptions::default();
        assert!(matches!(
            certify(&s, &id, TheoremId::SeqAn, &opts),
            Err(Error::MissingTheoremParam("SEQ_AN", _))
        ));
        assert!(matches!(
            certify(&s, &id, TheoremId::UlcChainable, &opts),
            Err(Error::MissingTheoremParam("ULC_CHAINABLE", _))
        ));
        assert!(matches!(
            certify(&s, &id, TheoremId::Common, &opts),
            Err(Error::MissingTheoremParam("COMMON", _))
        ));
    }

    #[test]
    fn common_fixed_point_runs() {
        let two = FiniteGSpace::two_point();
        let zeros = MapFamily::new(
            vec![TabulatedMap::constant(2, 0).unwrap()],
            "zero",
        )
        .unwrap();
        let run = common_fixed_point(&two, &zeros, 1, gv(1e-12), 50).unwrap();
        assert_eq!(run.fixed_point, Some(0));
        assert!(run.trace.converged);

        // Identity on a singleton: zero iterations.
        let single = FiniteGSpace::new(vec!["p".into()], 1.0, &[(0, 0, 0, 0.0)]).unwrap();
        let ids = MapFamily::new(vec![TabulatedMap::identity(1)], "id").unwrap();
        let run = common_fixed_point(&single, &ids, 0, gv(1e-12), 10).unwrap();
        assert_eq!(run.trace.iterations, 0);
        assert_eq!(run.fixed_point, Some(0));

        // Alternating family between the constant-zero map and the
        // three-point map settles at their shared fixed point 0.
        let three = FiniteGSpace::three_point();
        let fam = MapFamily::new(
            vec![
                TabulatedMap::constant(3, 0).unwrap(),
                TabulatedMap::three_point_example_map(),
            ],
            "alt",
        )
        .unwrap();
        let run = common_fixed_point(&three, &fam, 2, gv(1e-12), 50).unwrap();
        assert_eq!(run.fixed_point, Some(0));
    }

    #[test]
    fn common_certificate_valid_for_constant_family() {
        let two = FiniteGSpace::two_point();
        let fam = MapFamily::new(
            vec![
                TabulatedMap::constant(2, 0).unwrap(),
                TabulatedMap::constant(2, 0).unwrap(),
            ],
            "zeros",
        )
        .unwrap();
        let opts = CertifyOptions {
            delta: Some(CoefficientTensor::constant(0.1, 16).unwrap()),
            theta: Some(CoefficientTensor::constant(0.05, 16).unwrap()),
            lam_tensor: Some(CoefficientTensor::constant(0.05, 16).unwrap()),
            x0: Some(1),
            ..CertifyOptions::default()
        };
        let cert = certify_family(&two, &fam, TheoremId::Common, &opts).unwrap();
        assert!(cert.valid, "{cert:?}");
        let b = cert.bound_at(3).unwrap();
        assert!(b.get() > 0.0);
    }

    #[test]
    fn bounds_are_non_increasing_and_vanishing() {
        let bounds = [
            BoundFn::TailSum {
                coeffs: vec![0.5, 0.25, 0.125, 0.0625],
                amplifier: 2.0,
                scale: 1.5,
            },
            BoundFn::SuffixMax {
                values: vec![0.5, 0.7, 0.25, 0.1],
                scale: 1.0,
            },
            BoundFn::Geometric {
                lam: 0.5,
                scale: 2.0,
            },
            BoundFn::GeometricPhi {
                lam: 0.5,
                scale: 2.0,
                s: 0.5,
                c: 1.0,
            },
            BoundFn::RunningMin {
                values: vec![1.0, 0.6, 0.9, 0.2, 1e-8],
                scale: 3.0,
            },
        ];
        for b in &bounds {
            let mut prev = f64::INFINITY;
            for m in 1..=40 {
                let v = b.eval(m).unwrap().get();
                assert!(v <= prev + 1e-15, "{b:?} increased at m = {m}");
                prev = v;
            }
            let v1 = b.eval(1).unwrap().get();
            let v_far = b.eval(200).unwrap().get();
            assert!(v_far <= 1e-6 * (v1 + 1.0), "{b:?} does not vanish");
        }
    }
}
