//! Independent brute-force ground truth on finite spaces: fixed points,
//! common fixed points, Cauchy verification, and a structurally different
//! Lipschitz enumeration.
//!
//! This module deliberately shares nothing with the analysis checkers beyond
//! the space and map data contracts; its enumerations are the reference the
//! rest of the toolkit is validated against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gspace::{FiniteGSpace, GMetricSpace, GValue};
use crate::map::{MapFamily, SelfMap};

/// Exhaustive fixed-point enumeration result.
#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    /// Labels of the fixed points in point order.
    pub fixed_points: Vec<String>,
    pub unique: bool,
    pub method: &'static str,
}

/// Every point with map(p) = p, by direct evaluation.
pub fn brute_fixed_points<M: SelfMap<usize>>(
    space: &FiniteGSpace,
    map: &M,
) -> Result<OracleResult> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let fixed: Vec<usize> = (0..space.len()).filter(|p| map.apply(p) == *p).collect();
    Ok(OracleResult {
        fixed_points: fixed.iter().map(|p| space.point_label(p)).collect(),
        unique: fixed.len() == 1,
        method: "exhaustive",
    })
}

/// Indices (not labels) of the fixed points; handy for cross-checks.
pub fn fixed_point_indices<M: SelfMap<usize>>(space: &FiniteGSpace, map: &M) -> Vec<usize> {
    (0..space.len()).filter(|p| map.apply(p) == *p).collect()
}

/// Intersection of the per-map fixed-point sets over indices 1..=horizon.
pub fn brute_common_fixed_points<M: SelfMap<usize>>(
    space: &FiniteGSpace,
    maps: &MapFamily<M>,
    horizon: usize,
) -> Result<OracleResult> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    if horizon < 1 {
        return Err(Error::InvalidParam {
            name: "horizon",
            value: 0.0,
            expected: "at least 1",
        });
    }
    let mut common: Vec<usize> = (0..space.len()).collect();
    for n in 1..=horizon {
        let map = maps.at(n);
        common.retain(|p| map.apply(p) == *p);
        if common.is_empty() {
            break;
        }
    }
    Ok(OracleResult {
        fixed_points: common.iter().map(|p| space.point_label(p)).collect(),
        unique: common.len() == 1,
        method: "exhaustive",
    })
}

/// For each epsilon, the least N such that G(x_n, x_m, x_m) < epsilon for all
/// trace indices m, n >= N, or `None` when no such N exists within the trace.
#[derive(Debug, Clone, Serialize)]
pub struct CauchyVerdict {
    pub thresholds: Vec<(f64, Option<usize>)>,
}

pub fn verify_cauchy<S: GMetricSpace>(
    space: &S,
    trace_points: &[S::Point],
    eps_grid: &[GValue],
) -> Result<CauchyVerdict> {
    if trace_points.is_empty() {
        return Err(Error::EmptySpace);
    }
    for e in eps_grid {
        if e.get() <= 0.0 {
            return Err(Error::InvalidParam {
                name: "eps",
                value: e.get(),
                expected: "strictly positive",
            });
        }
    }
    let t = trace_points.len();
    // suffix_max[n] = max over m, l >= n of G(x_l, x_m, x_m).
    let mut suffix_max = vec![0.0f64; t + 1];
    for n in (0..t).rev() {
        let mut worst = suffix_max[n + 1];
        for m in n..t {
            worst = worst.max(space.g_raw(&trace_points[n], &trace_points[m], &trace_points[m]));
            worst = worst.max(space.g_raw(&trace_points[m], &trace_points[n], &trace_points[n]));
        }
        suffix_max[n] = worst;
    }
    // A window of a single index is vacuous (G(x,x,x) = 0 certifies
    // nothing), so a valid N must keep at least two trace points in scope;
    // otherwise the trace horizon is reported as failure.
    let thresholds = eps_grid
        .iter()
        .map(|e| {
            let n = (0..t.saturating_sub(1)).find(|&n| suffix_max[n] < e.get());
            (e.get(), n)
        })
        .collect();
    Ok(CauchyVerdict { thresholds })
}

/// Second, structurally different Lipschitz enumeration: collect every ratio
/// into a list, sort it, and take the last entry. Used to cross-check the
/// running-max fold in the analysis module.
pub fn lipschitz_by_sorted_ratios<M: SelfMap<usize>>(
    space: &FiniteGSpace,
    map: &M,
) -> Result<GValue> {
    let n = space.len();
    let mut ratios = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let g = space.g_idx(x, y, z).get();
                let gi = space
                    .g_idx(map.apply(&x), map.apply(&y), map.apply(&z))
                    .get();
                if g > 0.0 {
                    ratios.push(gi / g);
                } else if gi > 0.0 {
                    return Err(Error::UnboundedLipschitz(
                        space.point_label(&x),
                        space.point_label(&y),
                        space.point_label(&z),
                    ));
                }
            }
        }
    }
    ratios.sort_by(f64::total_cmp);
    GValue::new(ratios.last().copied().unwrap_or(0.0))
}
