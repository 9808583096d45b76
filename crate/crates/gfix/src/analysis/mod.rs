//! Hypothesis checkers for the contractivity and coefficient conditions of
//! the fixed-point theorems: Lipschitz constants, local contractivity on
//! balls, the sequential and Phi-wrapped coefficient conditions, and the
//! indexed tensor conditions.
//!
//! Checks are exhaustive on finite spaces and grid-sampled on analytic ones;
//! sampled verdicts carry a flag. Failures return the first violation found
//! by a deterministic scan, never an error.

mod coeffs;

pub use coeffs::{
    certifies_vanishing, classify_tail, common_coefficient_check,
    common_coefficient_check_powered, lambda_scan, lambda_sequence_check, product_series_check,
    product_series_scan, replay_lambda_certificate, series_converges, CoefficientSeq,
    CoefficientTensor, CommonCoefficientReport, Convergence, LambdaCertificate, LambdaOutcome,
    LambdaRejection, LambdaViolation, PhiFunction, ProductSeriesReport, SeqFamily, SeriesReport,
    TensorBundleFile, TensorFamily,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gspace::{GMetricSpace, GValue, AXIOM_TOL};
use crate::map::{MapFamily, SelfMap};

/// A concrete violation of a checked inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    /// Point labels in the role order of the condition.
    pub points: Vec<String>,
    /// Iteration / tensor indices involved, if any.
    pub indices: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a hypothesis check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// Largest iteration / index bound actually verified.
    pub checked_n: usize,
    pub sampled: bool,
    pub notes: Vec<String>,
}

impl CheckVerdict {
    fn pass(checked_n: usize, sampled: bool) -> Self {
        CheckVerdict {
            holds: true,
            counterexample: None,
            checked_n,
            sampled,
            notes: Vec::new(),
        }
    }

    fn fail(ce: Counterexample, checked_n: usize, sampled: bool) -> Self {
        CheckVerdict {
            holds: false,
            counterexample: Some(ce),
            checked_n,
            sampled,
            notes: Vec::new(),
        }
    }
}

fn ratio_max_over_triples<S: GMetricSpace>(
    space: &S,
    pts: &[S::Point],
    mapped: &[S::Point],
) -> Result<GValue> {
    let p = pts.len();
    let mut best = 0.0f64;
    for i in 0..p {
        for j in i..p {
            for k in j..p {
                let g = space.g_raw(&pts[i], &pts[j], &pts[k]);
                let gi = space.g_raw(&mapped[i], &mapped[j], &mapped[k]);
                if g > 0.0 {
                    let r = gi / g;
                    if r > best {
                        best = r;
                    }
                } else if gi > AXIOM_TOL {
                    return Err(Error::UnboundedLipschitz(
                        space.point_label(&pts[i]),
                        space.point_label(&pts[j]),
                        space.point_label(&pts[k]),
                    ));
                }
            }
        }
    }
    GValue::new(best)
}

/// The smallest k with G(Tx,Ty,Tz) <= k G(x,y,z) over all triples with
/// positive distance: exhaustive on finite spaces, grid-sampled on analytic
/// ones. A zero-distance triple with a positive image distance has no finite
/// constant and is reported as unbounded.
pub fn lipschitz_constant<S, M>(space: &S, map: &M) -> Result<GValue>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let pts = space.sample_points();
    let mapped: Vec<S::Point> = pts.iter().map(|p| map.apply(p)).collect();
    ratio_max_over_triples(space, &pts, &mapped)
}

/// [Lip(T^1), ..., Lip(T^N)].
pub fn iterated_lipschitz<S, M>(space: &S, map: &M, n: usize) -> Result<Vec<GValue>>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if n < 1 {
        return Err(Error::InvalidParam {
            name: "N",
            value: 0.0,
            expected: "N >= 1",
        });
    }
    let pts = space.sample_points();
    let mut mapped = pts.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 1..=n {
        mapped = mapped.iter().map(|p| map.apply(p)).collect();
        out.push(ratio_max_over_triples(space, &pts, &mapped)?);
    }
    Ok(out)
}

fn ball_of<S: GMetricSpace>(space: &S, pts: &[S::Point], center: usize, eps: f64) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| space.g_raw(&pts[center], &pts[i], &pts[i]) <= eps)
        .collect()
}

/// Verify G(Tu,Tv,Tp) <= lambda G(u,v,p) for every center x and every triple
/// u,v,p inside the ball C_G(x, eps) = { y : G(x,y,y) <= eps }. The first
/// violation of the deterministic scan is returned as (x, u, v, p).
pub fn check_local_contractive<S, M>(
    space: &S,
    map: &M,
    eps: GValue,
    lam: f64,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if !(lam.is_finite() && (0.0..1.0).contains(&lam)) {
        return Err(Error::InvalidParam {
            name: "lambda",
            value: lam,
            expected: "lambda in [0, 1)",
        });
    }
    let pts = space.sample_points();
    let mapped: Vec<S::Point> = pts.iter().map(|p| map.apply(p)).collect();
    for x in 0..pts.len() {
        let ball = ball_of(space, &pts, x, eps.get());
        for &u in &ball {
            for &v in &ball {
                for &p in &ball {
                    let lhs = space.g_raw(&mapped[u], &mapped[v], &mapped[p]);
                    let rhs = lam * space.g_raw(&pts[u], &pts[v], &pts[p]);
                    if lhs > rhs + AXIOM_TOL {
                        return Ok(CheckVerdict::fail(
                            Counterexample {
                                points: vec![
                                    space.point_label(&pts[x]),
                                    space.point_label(&pts[u]),
                                    space.point_label(&pts[v]),
                                    space.point_label(&pts[p]),
                                ],
                                indices: vec![],
                                lhs,
                                rhs,
                            },
                            0,
                            space.sampled(),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckVerdict::pass(0, space.sampled()))
}

/// The smallest lambda making [`check_local_contractive`] pass, or `None`
/// when a constant of at least 1 would be required. On finite spaces this is
/// the maximum of finitely many ratios.
pub fn minimal_uniform_lambda<S, M>(space: &S, map: &M, eps: GValue) -> Result<Option<f64>>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let pts = space.sample_points();
    let mapped: Vec<S::Point> = pts.iter().map(|p| map.apply(p)).collect();
    let mut best = 0.0f64;
    for x in 0..pts.len() {
        let ball = ball_of(space, &pts, x, eps.get());
        for (a, &u) in ball.iter().enumerate() {
            for (b, &v) in ball.iter().enumerate().skip(a) {
                for &p in ball.iter().skip(b) {
                    let g = space.g_raw(&pts[u], &pts[v], &pts[p]);
                    let gi = space.g_raw(&mapped[u], &mapped[v], &mapped[p]);
                    if g > 0.0 {
                        best = best.max(gi / g);
                    } else if gi > AXIOM_TOL {
                        return Ok(None);
                    }
                }
            }
        }
    }
    if best >= 1.0 {
        Ok(None)
    } else {
        Ok(Some(best))
    }
}

fn seq_condition_impl<S, M>(
    space: &S,
    map: &M,
    seq: &CoefficientSeq,
    phi: Option<&PhiFunction>,
    n_max: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if n_max < 1 {
        return Err(Error::InvalidParam {
            name: "N",
            value: 0.0,
            expected: "N >= 1",
        });
    }
    let a1 = seq.term(1)?;
    let mut notes = vec![format!(
        "a_1 = {a1} ({} 1/2)",
        if a1 < 0.5 { "below" } else { "NOT below" }
    )];
    if let Some(f) = phi {
        notes.push(format!("phi: x -> {} * x^{}", f.c(), f.s()));
    }

    let pts = space.sample_points();
    let p = pts.len();
    // w[i] = G(x_i, T x_i, T x_i).
    let first: Vec<S::Point> = pts.iter().map(|q| map.apply(q)).collect();
    let w: Vec<f64> = (0..p)
        .map(|i| space.g_raw(&pts[i], &first[i], &first[i]))
        .collect();

    let mut mapped = pts.clone();
    for n in 1..=n_max {
        mapped = mapped.iter().map(|q| map.apply(q)).collect();
        let a_n = seq.term(n)?;
        for i in 0..p {
            for j in i..p {
                for k in j..p {
                    let g_img = space.g_raw(&mapped[i], &mapped[j], &mapped[k]);
                    let body = a_n * (w[i] + w[j] + w[k]);
                    let (lhs, rhs) = match phi {
                        None => (g_img, body),
                        Some(f) => (f.eval(g_img), f.eval(body)),
                    };
                    if lhs > rhs + AXIOM_TOL {
                        let mut v = CheckVerdict::fail(
                            Counterexample {
                                points: vec![
                                    space.point_label(&pts[i]),
                                    space.point_label(&pts[j]),
                                    space.point_label(&pts[k]),
                                ],
                                indices: vec![n],
                                lhs,
                                rhs,
                            },
                            n,
                            space.sampled(),
                        );
                        v.notes = notes;
                        return Ok(v);
                    }
                }
            }
        }
    }
    let mut v = CheckVerdict::pass(n_max, space.sampled());
    v.notes = notes;
    Ok(v)
}

/// Verify G(T^n x, T^n y, T^n z) <= a_n [G(x,Tx,Tx) + G(y,Ty,Ty) + G(z,Tz,Tz)]
/// for all triples and every n <= N. Both sides are invariant under argument
/// permutation, so canonical triples suffice.
pub fn check_sequential_condition<S, M>(
    space: &S,
    map: &M,
    seq: &CoefficientSeq,
    n_max: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    seq_condition_impl(space, map, seq, None, n_max)
}

/// The F-wrapped variant: F(G(T^n x, ...)) <= F(a_n [ ... ]). With F the
/// identity this is exactly [`check_sequential_condition`].
pub fn check_phi_condition<S, M>(
    space: &S,
    map: &M,
    seq: &CoefficientSeq,
    phi: &PhiFunction,
    n_max: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    seq_condition_impl(space, map, seq, Some(phi), n_max)
}

/// First index triple (sorted, 1-based) where the tensor leaves [0, 1/2).
pub fn tensor_half_range_violation(
    tensor: &CoefficientTensor,
    horizon: usize,
) -> Result<Option<(usize, usize, usize, f64)>> {
    for i in 1..=horizon {
        for j in i..=horizon {
            for k in j..=horizon {
                let v = tensor.value(i, j, k)?;
                if v >= 0.5 {
                    return Ok(Some((i, j, k, v)));
                }
            }
        }
    }
    Ok(None)
}

/// Finite-horizon limsup surrogate: for each (j,k) up to the horizon, the sup
/// of tensor^s over the tail i in (horizon/2, horizon]. All below 1 is a
/// pass.
pub fn tensor_tail_sup_below_one(
    tensor: &CoefficientTensor,
    horizon: usize,
    s: f64,
) -> Result<CheckVerdict> {
    let mut worst = 0.0f64;
    for j in 1..=horizon {
        for k in 1..=horizon {
            for i in (horizon / 2 + 1)..=horizon {
                let v = tensor.value(i, j, k)?.powf(s);
                worst = worst.max(v);
                if v >= 1.0 {
                    return Ok(CheckVerdict::fail(
                        Counterexample {
                            points: vec![],
                            indices: vec![i, j, k],
                            lhs: v,
                            rhs: 1.0,
                        },
                        horizon,
                        false,
                    ));
                }
            }
        }
    }
    let mut v = CheckVerdict::pass(horizon, false);
    v.notes.push(format!("tail sup of tensor^s = {worst} < 1"));
    Ok(v)
}

fn mapped_powers<S, M>(space: &S, map: &M, n_max: usize) -> (Vec<S::Point>, Vec<Vec<S::Point>>)
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    let pts = space.sample_points();
    let mut powers: Vec<Vec<S::Point>> = Vec::with_capacity(n_max + 1);
    powers.push(pts.clone());
    for n in 1..=n_max {
        let next = powers[n - 1].iter().map(|q| map.apply(q)).collect();
        powers.push(next);
    }
    (pts, powers)
}

/// Indexed two-tensor condition: for x != y and indices i,j,k up to `idx_n`,
/// F(G(T^i x, T^j y, T^k z)) <=
///   F(Delta_{ijk} [G(x,T^i x,T^i x) + G(y,T^j y,T^j y) + G(z,T^k z,T^k z)])
///   + F(Gamma_{ijk} G(x,y,z)).
pub fn check_split_tensor_condition<S, M>(
    space: &S,
    map: &M,
    delta: &CoefficientTensor,
    gamma: &CoefficientTensor,
    phi: &PhiFunction,
    idx_n: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if idx_n < 1 {
        return Err(Error::InvalidParam {
            name: "idx_n",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let (pts, powers) = mapped_powers(space, map, idx_n);
    let p = pts.len();
    // orbit_gap[n][q] = G(x_q, T^n x_q, T^n x_q).
    let orbit_gap: Vec<Vec<f64>> = (0..=idx_n)
        .map(|n| {
            (0..p)
                .map(|q| space.g_raw(&pts[q], &powers[n][q], &powers[n][q]))
                .collect()
        })
        .collect();

    for i in 1..=idx_n {
        for j in 1..=idx_n {
            for k in 1..=idx_n {
                let d = delta.value(i, j, k)?;
                let gm = gamma.value(i, j, k)?;
                for x in 0..p {
                    for y in 0..p {
                        if pts[x] == pts[y] {
                            continue;
                        }
                        for z in 0..p {
                            let g_img =
                                space.g_raw(&powers[i][x], &powers[j][y], &powers[k][z]);
                            let lhs = phi.eval(g_img);
                            let body = d * (orbit_gap[i][x] + orbit_gap[j][y] + orbit_gap[k][z]);
                            let rhs = phi.eval(body)
                                + phi.eval(gm * space.g_raw(&pts[x], &pts[y], &pts[z]));
                            if lhs > rhs + AXIOM_TOL {
                                return Ok(CheckVerdict::fail(
                                    Counterexample {
                                        points: vec![
                                            space.point_label(&pts[x]),
                                            space.point_label(&pts[y]),
                                            space.point_label(&pts[z]),
                                        ],
                                        indices: vec![i, j, k],
                                        lhs,
                                        rhs,
                                    },
                                    idx_n,
                                    space.sampled(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CheckVerdict::pass(idx_n, space.sampled()))
}

/// Single-tensor variant: F(G(T^i x, T^j y, T^k z)) <=
/// F(Delta_{ijk} [G(x,T^i x,T^i x) + G(y,T^j y,T^j y) + G(z,T^k z,T^k z)
///                + G(x,y,z)]).
pub fn check_combined_tensor_condition<S, M>(
    space: &S,
    map: &M,
    delta: &CoefficientTensor,
    phi: &PhiFunction,
    idx_n: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if idx_n < 1 {
        return Err(Error::InvalidParam {
            name: "idx_n",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let (pts, powers) = mapped_powers(space, map, idx_n);
    let p = pts.len();
    let orbit_gap: Vec<Vec<f64>> = (0..=idx_n)
        .map(|n| {
            (0..p)
                .map(|q| space.g_raw(&pts[q], &powers[n][q], &powers[n][q]))
                .collect()
        })
        .collect();

    for i in 1..=idx_n {
        for j in 1..=idx_n {
            for k in 1..=idx_n {
                let d = delta.value(i, j, k)?;
                for x in 0..p {
                    for y in 0..p {
                        if pts[x] == pts[y] {
                            continue;
                        }
                        for z in 0..p {
                            let g_img =
                                space.g_raw(&powers[i][x], &powers[j][y], &powers[k][z]);
                            let lhs = phi.eval(g_img);
                            let body = d
                                * (orbit_gap[i][x]
                                    + orbit_gap[j][y]
                                    + orbit_gap[k][z]
                                    + space.g_raw(&pts[x], &pts[y], &pts[z]));
                            let rhs = phi.eval(body);
                            if lhs > rhs + AXIOM_TOL {
                                return Ok(CheckVerdict::fail(
                                    Counterexample {
                                        points: vec![
                                            space.point_label(&pts[x]),
                                            space.point_label(&pts[y]),
                                            space.point_label(&pts[z]),
                                        ],
                                        indices: vec![i, j, k],
                                        lhs,
                                        rhs,
                                    },
                                    idx_n,
                                    space.sampled(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CheckVerdict::pass(idx_n, space.sampled()))
}

/// Three-tensor family condition over map indices i,j,k up to `idx_n`:
/// [F](G(T_i x, T_j y, T_k z)) <= [F](Delta G(x,y,z)
///   + Theta [G(T_i x,x,x) + G(y,T_j y,y) + G(z,z,T_k z)]
///   + Lambda [G(T_i x,y,z) + G(x,T_j y,z) + G(x,y,T_k z)]).
pub fn check_family_condition<S, M>(
    space: &S,
    family: &MapFamily<M>,
    delta: &CoefficientTensor,
    theta: &CoefficientTensor,
    lam: &CoefficientTensor,
    phi: Option<&PhiFunction>,
    idx_n: usize,
) -> Result<CheckVerdict>
where
    S: GMetricSpace,
    M: SelfMap<S::Point>,
{
    if idx_n < 1 {
        return Err(Error::InvalidParam {
            name: "idx_n",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let pts = space.sample_points();
    let p = pts.len();
    // images[n][q] = T_n(x_q) for 1-based map index n.
    let images: Vec<Vec<S::Point>> = (1..=idx_n)
        .map(|n| pts.iter().map(|q| family.at(n).apply(q)).collect())
        .collect();

    for i in 1..=idx_n {
        for j in 1..=idx_n {
            for k in 1..=idx_n {
                let d = delta.value(i, j, k)?;
                let th = theta.value(i, j, k)?;
                let lm = lam.value(i, j, k)?;
                for x in 0..p {
                    for y in 0..p {
                        for z in 0..p {
                            let tx = &images[i - 1][x];
                            let ty = &images[j - 1][y];
                            let tz = &images[k - 1][z];
                            let raw_lhs = space.g_raw(tx, ty, tz);
                            let raw_rhs = d * space.g_raw(&pts[x], &pts[y], &pts[z])
                                + th * (space.g_raw(tx, &pts[x], &pts[x])
                                    + space.g_raw(&pts[y], ty, &pts[y])
                                    + space.g_raw(&pts[z], &pts[z], tz))
                                + lm * (space.g_raw(tx, &pts[y], &pts[z])
                                    + space.g_raw(&pts[x], ty, &pts[z])
                                    + space.g_raw(&pts[x], &pts[y], tz));
                            let (lhs, rhs) = match phi {
                                None => (raw_lhs, raw_rhs),
                                Some(f) => (f.eval(raw_lhs), f.eval(raw_rhs)),
                            };
                            if lhs > rhs + AXIOM_TOL {
                                return Ok(CheckVerdict::fail(
                                    Counterexample {
                                        points: vec![
                                            space.point_label(&pts[x]),
                                            space.point_label(&pts[y]),
                                            space.point_label(&pts[z]),
                                        ],
                                        indices: vec![i, j, k],
                                        lhs,
                                        rhs,
                                    },
                                    idx_n,
                                    space.sampled(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CheckVerdict::pass(idx_n, space.sampled()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspace::{AnalyticGSpace, FiniteGSpace};
    use crate::map::{AffineMap, TabulatedMap};

    fn gv(v: f64) -> GValue {
        GValue::new(v).unwrap()
    }

    #[test]
    fn lipschitz_of_constant_map_is_zero() {
        let s = FiniteGSpace::two_point();
        let t = TabulatedMap::constant(2, 0).unwrap();
        assert_eq!(lipschitz_constant(&s, &t).unwrap().get(), 0.0);
    }

    #[test]
    fn lipschitz_of_three_point_map_is_half() {
        let s = FiniteGSpace::three_point();
        let t = TabulatedMap::three_point_example_map();
        assert_eq!(lipschitz_constant(&s, &t).unwrap().get(), 0.5);
    }

    #[test]
    fn lipschitz_of_interval_scaling() {
        // An affine x -> x/16 scales every pairwise difference by exactly
        // 1/16 (division by 16 is an exponent shift).
        let s = AnalyticGSpace::interval_maxdiff();
        let t = AffineMap::sixteenth();
        assert_eq!(lipschitz_constant(&s, &t).unwrap().get(), 1.0 / 16.0);
    }

    #[test]
    fn lipschitz_unbounded_is_reported() {
        // G identically zero on a two-point "space" would violate G2, but the
        // table is constructible; a non-diagonal image then has no constant.
        let s = FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (0, 0, 1, 0.0),
                (0, 1, 1, 0.0),
                (1, 1, 1, 0.0),
            ],
        )
        .unwrap();
        // Identity has image triples equal to the originals: all zero, fine.
        assert_eq!(
            lipschitz_constant(&s, &TabulatedMap::identity(2)).unwrap().get(),
            0.0
        );
        // A swap with an asymmetric zero table cannot be unbounded here since
        // all values are zero; force one via a genuinely mixed table.
        let s2 = FiniteGSpace::new(
            vec!["0".into(), "1".into(), "2".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (1, 1, 1, 0.0),
                (2, 2, 2, 0.0),
                (0, 0, 1, 0.0),
                (0, 1, 1, 0.0),
                (0, 0, 2, 1.0),
                (0, 2, 2, 1.0),
                (1, 1, 2, 1.0),
                (1, 2, 2, 1.0),
                (0, 1, 2, 1.0),
            ],
        )
        .unwrap();
        // (0,0,1) has G = 0 but maps onto (0,0,2) with G = 1.
        let t = TabulatedMap::new(vec![0, 2, 2], "push").unwrap();
        assert!(matches!(
            lipschitz_constant(&s2, &t),
            Err(Error::UnboundedLipschitz(..))
        ));
    }

    #[test]
    fn iterated_lipschitz_examples() {
        let s = FiniteGSpace::two_point();
        let id = TabulatedMap::identity(2);
        let lips = iterated_lipschitz(&s, &id, 3).unwrap();
        assert_eq!(lips.iter().map(|v| v.get()).collect::<Vec<_>>(), vec![1.0, 1.0, 1.0]);

        let zero = TabulatedMap::constant(2, 0).unwrap();
        let lips = iterated_lipschitz(&s, &zero, 3).unwrap();
        assert_eq!(lips.iter().map(|v| v.get()).collect::<Vec<_>>(), vec![0.0, 0.0, 0.0]);

        let a = AnalyticGSpace::interval_maxdiff();
        let t = AffineMap::sixteenth();
        let lips = iterated_lipschitz(&a, &t, 2).unwrap();
        assert_eq!(lips[0].get(), 1.0 / 16.0);
        assert_eq!(lips[1].get(), 1.0 / 256.0);
    }

    #[test]
    fn local_contractive_builtin_examples() {
        let two = FiniteGSpace::two_point();
        let zero = TabulatedMap::constant(2, 0).unwrap();
        assert!(check_local_contractive(&two, &zero, gv(4.0), 0.5)
            .unwrap()
            .holds);

        let three = FiniteGSpace::three_point();
        let t = TabulatedMap::three_point_example_map();
        assert!(check_local_contractive(&three, &t, gv(4.0), 0.5)
            .unwrap()
            .holds);

        // At lambda = 0.4 the ratio 1/2 violates; the deterministic scan
        // first hits center 0 with triple (0,0,2): G image = 1 > 0.4 * 2.
        let v = check_local_contractive(&three, &t, gv(4.0), 0.4).unwrap();
        assert!(!v.holds);
        let ce = v.counterexample.unwrap();
        assert_eq!(ce.points, vec!["0", "0", "0", "2"]);
        assert_eq!(ce.lhs, 1.0);
        assert_eq!(ce.rhs, 0.4 * 2.0);
    }

    #[test]
    fn minimal_lambda_examples() {
        let two = FiniteGSpace::two_point();
        let zero = TabulatedMap::constant(2, 0).unwrap();
        assert_eq!(
            minimal_uniform_lambda(&two, &zero, gv(4.0)).unwrap(),
            Some(0.0)
        );

        let three = FiniteGSpace::three_point();
        let t = TabulatedMap::three_point_example_map();
        let lam = minimal_uniform_lambda(&three, &t, gv(4.0)).unwrap().unwrap();
        assert!((lam - 0.5).abs() < 1e-12);

        // Independent max-ratio sweep over all in-ball triples.
        let mut brute = 0.0f64;
        for u in 0..3usize {
            for v in 0..3usize {
                for p in 0..3usize {
                    let g = three.g_idx(u, v, p).get();
                    if g > 0.0 {
                        let img = three.g_idx(t.apply(&u), t.apply(&v), t.apply(&p)).get();
                        brute = brute.max(img / g);
                    }
                }
            }
        }
        assert_eq!(lam, brute);

        let id = TabulatedMap::identity(3);
        assert_eq!(
            minimal_uniform_lambda(&three, &id, gv(2.0)).unwrap(),
            None
        );
    }

    #[test]
    fn sequential_condition_on_interval_example() {
        let s = AnalyticGSpace::interval_maxval().with_grid(33).unwrap();
        let t = AffineMap::sixteenth();
        let a = CoefficientSeq::inv_sq_shifted(8);
        let v = check_sequential_condition(&s, &t, &a, 6).unwrap();
        assert!(v.holds);
        assert!(v.sampled);
    }

    #[test]
    fn sequential_condition_fails_for_identity() {
        let s = FiniteGSpace::two_point();
        let id = TabulatedMap::identity(2);
        let a = CoefficientSeq::inv_sq_shifted(8);
        let v = check_sequential_condition(&s, &id, &a, 1).unwrap();
        assert!(!v.holds);
        let ce = v.counterexample.unwrap();
        // Identity leaves the left side positive while the right side
        // vanishes; the scan hits (0,0,1) first.
        assert_eq!(ce.points, vec!["0", "0", "1"]);
        assert_eq!(ce.indices, vec![1]);
        assert_eq!(ce.rhs, 0.0);
    }

    #[test]
    fn sequential_condition_holds_for_constant_map() {
        let s = FiniteGSpace::three_point();
        let zero = TabulatedMap::constant(3, 0).unwrap();
        let a = CoefficientSeq::halving(8);
        assert!(check_sequential_condition(&s, &zero, &a, 3).unwrap().holds);
    }

    #[test]
    fn phi_condition_holds_on_interval_example_and_reduces_to_plain() {
        let s = AnalyticGSpace::interval_maxval().with_grid(33).unwrap();
        let t = AffineMap::sixteenth();
        let a = CoefficientSeq::inv_sq_shifted(8);
        assert!(check_phi_condition(&s, &t, &a, &PhiFunction::sqrt(), 6)
            .unwrap()
            .holds);

        // F = identity reduces exactly to the plain condition.
        let fin = FiniteGSpace::three_point();
        let id_phi = PhiFunction::identity();
        for map in [
            TabulatedMap::identity(3),
            TabulatedMap::constant(3, 0).unwrap(),
            TabulatedMap::three_point_example_map(),
        ] {
            let plain = check_sequential_condition(&fin, &map, &a, 4).unwrap();
            let wrapped = check_phi_condition(&fin, &map, &a, &id_phi, 4).unwrap();
            assert_eq!(plain.holds, wrapped.holds);
            assert_eq!(plain.counterexample, wrapped.counterexample);
        }
    }

    #[test]
    fn split_tensor_condition_fails_on_two_fixed_points() {
        // Identity on the two-point space keeps distinct fixed points, which
        // the contraction condition cannot allow.
        let s = FiniteGSpace::two_point();
        let id = TabulatedMap::identity(2);
        let d = CoefficientTensor::constant(0.2, 8).unwrap();
        let g = CoefficientTensor::constant(0.2, 8).unwrap();
        let v = check_split_tensor_condition(&s, &id, &d, &g, &PhiFunction::sqrt(), 3).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn combined_tensor_condition_holds_for_constant_map() {
        let s = FiniteGSpace::two_point();
        let zero = TabulatedMap::constant(2, 0).unwrap();
        let d = CoefficientTensor::constant(0.3, 8).unwrap();
        // G(T^i x, T^j y, T^k z) = 0 always; right side is non-negative.
        let v =
            check_combined_tensor_condition(&s, &zero, &d, &PhiFunction::identity(), 3).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn family_condition_detects_disagreeing_fixed_points() {
        use crate::map::MapFamily;
        // T_1 fixes 0, T_2 fixes 1: no common fixed point, and the condition
        // fails at small indices.
        let s = FiniteGSpace::two_point();
        let fam = MapFamily::new(
            vec![
                TabulatedMap::constant(2, 0).unwrap(),
                TabulatedMap::constant(2, 1).unwrap(),
            ],
            "disagree",
        )
        .unwrap();
        let d = CoefficientTensor::constant(0.05, 8).unwrap();
        let t = CoefficientTensor::constant(0.05, 8).unwrap();
        let l = CoefficientTensor::constant(0.05, 8).unwrap();
        let v = check_family_condition(&s, &fam, &d, &t, &l, None, 3).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn tensor_range_helpers() {
        let ok = CoefficientTensor::constant(0.49, 8).unwrap();
        assert!(tensor_half_range_violation(&ok, 8).unwrap().is_none());
        let bad = CoefficientTensor::constant(0.5, 8).unwrap();
        let (i, j, k, v) = tensor_half_range_violation(&bad, 8).unwrap().unwrap();
        assert_eq!((i, j, k), (1, 1, 1));
        assert_eq!(v, 0.5);
        assert!(tensor_tail_sup_below_one(&ok, 8, 0.5).unwrap().holds);
    }
}
