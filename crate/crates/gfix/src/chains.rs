//! Epsilon-chainability: witness paths, chainability verdicts and minimal
//! chain thresholds on finite spaces.
//!
//! A path from x to y is a finite sequence of distinct points starting at x
//! and ending at y; its degree is the number of links. The space is
//! epsilon-chainable when every ordered pair of distinct points is joined by
//! a path whose links satisfy G(x_i, x_{i+1}, x_{i+1}) <= epsilon. Links are
//! directed: G(u,v,v) and G(v,u,u) may differ even under total symmetry.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gspace::{FiniteGSpace, GMetricSpace, GValue};

/// A witness path whose links all stay within `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    /// Pairwise-distinct point indices from source to target.
    pub nodes: Vec<usize>,
    pub epsilon: GValue,
}

impl Chain {
    /// Number of links; every point alone is a path of degree 0.
    pub fn degree(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// Re-check the chain invariant through table lookups.
    pub fn verify(&self, space: &FiniteGSpace) -> bool {
        let distinct = {
            let mut seen = vec![false; space.len()];
            self.nodes.iter().all(|&p| {
                if p >= space.len() || seen[p] {
                    false
                } else {
                    seen[p] = true;
                    true
                }
            })
        };
        distinct
            && self
                .nodes
                .windows(2)
                .all(|w| space.g_idx(w[0], w[1], w[1]) <= self.epsilon)
    }
}

/// Outcome of an exhaustive chainability search at a fixed epsilon.
#[derive(Debug, Clone, Serialize)]
pub struct ChainabilityVerdict {
    pub chainable: bool,
    pub epsilon: GValue,
    /// Shortest witness per ordered pair of distinct points, on success.
    pub witness_chains: BTreeMap<(usize, usize), Chain>,
    /// First ordered pair with no chain at this epsilon, on failure.
    pub blocking_pair: Option<(usize, usize)>,
    pub max_degree: usize,
}

/// Shortest chain (fewest links) from `x` to `y` under the directed edge
/// relation u -> v iff G(u,v,v) <= eps, or `None` when unreachable. Ties are
/// broken towards the lexicographically smallest successor index, so
/// witnesses are deterministic.
pub fn find_chain(
    space: &FiniteGSpace,
    x: usize,
    y: usize,
    eps: GValue,
) -> Result<Option<Chain>> {
    space.check_point(&x)?;
    space.check_point(&y)?;
    if x == y {
        return Err(Error::DegeneratePath(space.point_label(&x)));
    }
    let n = space.len();
    let edge = |u: usize, v: usize| u != v && space.g_idx(u, v, v) <= eps;

    // Distance-to-target over reversed edges.
    let mut dist = vec![usize::MAX; n];
    dist[y] = 0;
    let mut queue = std::collections::VecDeque::from([y]);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if dist[u] == usize::MAX && edge(u, v) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    if dist[x] == usize::MAX {
        return Ok(None);
    }

    // Greedy walk: always the smallest successor that still shortens the
    // distance to the target. Shortest paths are automatically simple.
    let mut nodes = vec![x];
    let mut cur = x;
    while cur != y {
        let next = (0..n)
            .find(|&v| edge(cur, v) && dist[v] + 1 == dist[cur])
            .expect("reachable node has a descending successor");
        nodes.push(next);
        cur = next;
    }
    Ok(Some(Chain { nodes, epsilon: eps }))
}

/// Exhaustive chainability check over every ordered pair of distinct points.
pub fn is_chainable(space: &FiniteGSpace, eps: GValue) -> Result<ChainabilityVerdict> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let n = space.len();
    let mut witness_chains = BTreeMap::new();
    let mut max_degree = 0usize;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            match find_chain(space, x, y, eps)? {
                Some(chain) => {
                    max_degree = max_degree.max(chain.degree());
                    witness_chains.insert((x, y), chain);
                }
                None => {
                    return Ok(ChainabilityVerdict {
                        chainable: false,
                        epsilon: eps,
                        witness_chains: BTreeMap::new(),
                        blocking_pair: Some((x, y)),
                        max_degree: 0,
                    });
                }
            }
        }
    }
    Ok(ChainabilityVerdict {
        chainable: true,
        epsilon: eps,
        witness_chains,
        blocking_pair: None,
        max_degree,
    })
}

/// The minimal epsilon at which the space is chainable: the maximum over
/// ordered pairs of the bottleneck (minimax) path cost with link cost
/// G(u,v,v). Computed by binary search over the sorted distinct link values,
/// with a reachability check per candidate, so the result is an exact table
/// value.
pub fn chainability_threshold(space: &FiniteGSpace) -> Result<GValue> {
    let n = space.len();
    if n < 2 {
        return Err(Error::SpaceTooSmall(2));
    }
    let mut candidates: Vec<GValue> = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            if u != v {
                candidates.push(space.g_idx(u, v, v));
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    // At the largest link value the graph is complete, so a feasible
    // candidate always exists; binary search for the smallest one.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if all_pairs_reachable(space, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

fn all_pairs_reachable(space: &FiniteGSpace, eps: GValue) -> bool {
    let n = space.len();
    for x in 0..n {
        // Forward BFS from x must reach every other point.
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut queue = std::collections::VecDeque::from([x]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in (0..n).filter(|&v| v != u) {
                if !seen[v] && space.g_idx(u, v, v) <= eps {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        if count < n {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspace::diameter;

    fn gv(v: f64) -> GValue {
        GValue::new(v).unwrap()
    }

    #[test]
    fn discrete_is_one_chainable_but_not_half() {
        let s = FiniteGSpace::discrete(3);
        let c = find_chain(&s, 0, 1, gv(1.0)).unwrap().unwrap();
        assert_eq!(c.nodes, vec![0, 1]);
        assert!(find_chain(&s, 0, 1, gv(0.5)).unwrap().is_none());
    }

    #[test]
    fn two_point_direct_chain() {
        // G(0,1,1) = 2 <= 2 from the table.
        let s = FiniteGSpace::two_point();
        let c = find_chain(&s, 0, 1, gv(2.0)).unwrap().unwrap();
        assert_eq!(c.nodes, vec![0, 1]);
        assert_eq!(c.degree(), 1);
        assert!(c.verify(&s));
    }

    #[test]
    fn degenerate_pair_is_rejected() {
        let s = FiniteGSpace::two_point();
        assert!(matches!(
            find_chain(&s, 1, 1, gv(1.0)),
            Err(Error::DegeneratePath(_))
        ));
    }

    #[test]
    fn two_point_chainable_at_two() {
        let s = FiniteGSpace::two_point();
        let v = is_chainable(&s, gv(2.0)).unwrap();
        assert!(v.chainable);
        assert_eq!(v.max_degree, 1);
        assert_eq!(v.witness_chains.len(), 2);
    }

    #[test]
    fn discrete_four_blocks_below_one() {
        let s = FiniteGSpace::discrete(4);
        let v = is_chainable(&s, gv(0.5)).unwrap();
        assert!(!v.chainable);
        assert_eq!(v.blocking_pair, Some((0, 1)));
    }

    #[test]
    fn singleton_is_vacuously_chainable() {
        let s = FiniteGSpace::new(vec!["p".into()], 1.0, &[(0, 0, 0, 0.0)]).unwrap();
        let v = is_chainable(&s, gv(0.0)).unwrap();
        assert!(v.chainable);
        assert_eq!(v.max_degree, 0);
    }

    // Independent all-paths bottleneck search used to freeze thresholds.
    fn brute_threshold(space: &FiniteGSpace) -> f64 {
        fn paths(space: &FiniteGSpace, cur: usize, target: usize, used: &mut Vec<usize>, best: &mut f64) {
            if cur == target {
                let mut bottleneck = 0.0f64;
                for w in used.windows(2) {
                    bottleneck = bottleneck.max(space.g_idx(w[0], w[1], w[1]).get());
                }
                *best = best.min(bottleneck);
                return;
            }
            for next in 0..space.len() {
                if !used.contains(&next) {
                    used.push(next);
                    paths(space, next, target, used, best);
                    used.pop();
                }
            }
        }
        let n = space.len();
        let mut worst = 0.0f64;
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let mut best = f64::INFINITY;
                let mut used = vec![x];
                paths(space, x, y, &mut used, &mut best);
                worst = worst.max(best);
            }
        }
        worst
    }

    #[test]
    fn thresholds_match_exhaustive_bottleneck() {
        for (s, expect) in [
            (FiniteGSpace::discrete(2), 1.0),
            (FiniteGSpace::discrete(5), 1.0),
            (FiniteGSpace::two_point(), 2.0),
            (FiniteGSpace::three_point(), 2.0),
        ] {
            assert_eq!(brute_threshold(&s), expect);
            assert_eq!(chainability_threshold(&s).unwrap().get(), expect);
        }
    }

    #[test]
    fn threshold_is_minimal_and_below_diameter() {
        for s in [
            FiniteGSpace::discrete(4),
            FiniteGSpace::two_point(),
            FiniteGSpace::three_point(),
        ] {
            let t = chainability_threshold(&s).unwrap();
            assert!(is_chainable(&s, t).unwrap().chainable);
            let below = GValue::new(t.get() - 1e-9).unwrap();
            assert!(!is_chainable(&s, below).unwrap().chainable);
            assert!(t <= diameter(&s).unwrap());
        }
    }

    #[test]
    fn threshold_needs_two_points() {
        let s = FiniteGSpace::new(vec!["p".into()], 1.0, &[(0, 0, 0, 0.0)]).unwrap();
        assert!(matches!(
            chainability_threshold(&s),
            Err(Error::SpaceTooSmall(2))
        ));
    }

    #[test]
    fn witnesses_survive_reverification() {
        let s = FiniteGSpace::three_point();
        let v = is_chainable(&s, gv(2.0)).unwrap();
        assert!(v.chainable);
        for ((x, y), chain) in &v.witness_chains {
            assert_eq!(chain.nodes.first(), Some(x));
            assert_eq!(chain.nodes.last(), Some(y));
            assert!(chain.verify(&s));
            assert!(chain.degree() < s.len());
        }
    }
}
