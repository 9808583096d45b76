//! G-metric type spaces: a point set with a ternary distance `G` and a
//! relaxation constant `K >= 1`.
//!
//! Two representations are provided. [`FiniteGSpace`] tabulates `G` over
//! canonical sorted index triples, which makes the total-symmetry axiom (G4)
//! structural instead of checked data. [`AnalyticGSpace`] carries one of the
//! builtin interval families and is checked on a uniform sample grid; every
//! verdict derived from a sampled space is flagged as such.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for real comparisons in axiom checks. Tabulated inputs
/// are exact but analytic grids accumulate rounding.
pub const AXIOM_TOL: f64 = 1e-12;

/// A non-negative finite distance value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct GValue(f64);

impl GValue {
    pub const ZERO: GValue = GValue(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(GValue(value))
        } else {
            Err(Error::InvalidGValue(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

// GValue is finite and non-NaN by construction, so total order is sound.
impl Eq for GValue {}

impl Ord for GValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for GValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for GValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(de)?;
        GValue::new(v).map_err(serde::de::Error::custom)
    }
}

/// Common interface over finite and analytic spaces.
///
/// `g_raw` is total over valid points; the membership check lives in
/// [`g_eval`], which is the checked public evaluation.
pub trait GMetricSpace {
    type Point: Clone + PartialEq + fmt::Debug;

    /// The relaxation constant K of the polygon inequality (G5).
    fn relaxation(&self) -> f64;

    fn check_point(&self, p: &Self::Point) -> Result<()>;

    /// Evaluate G on points already known to belong to the space.
    fn g_raw(&self, x: &Self::Point, y: &Self::Point, z: &Self::Point) -> f64;

    /// Every point of a finite space; a uniform grid for analytic spaces.
    fn sample_points(&self) -> Vec<Self::Point>;

    /// True when verdicts over this space rest on a sample grid rather than
    /// an exhaustive point set.
    fn sampled(&self) -> bool;

    /// Human-readable point name used in reports and witnesses.
    fn point_label(&self, p: &Self::Point) -> String;
}

/// Checked evaluation of the ternary distance. Identical under all six
/// argument permutations.
pub fn g_eval<S: GMetricSpace>(
    space: &S,
    x: &S::Point,
    y: &S::Point,
    z: &S::Point,
) -> Result<GValue> {
    space.check_point(x)?;
    space.check_point(y)?;
    space.check_point(z)?;
    GValue::new(space.g_raw(x, y, z))
}

/// The induced metric type d_G(x, y) = G(x,y,y) + G(x,x,y).
pub fn derived_metric<S: GMetricSpace>(space: &S, x: &S::Point, y: &S::Point) -> Result<GValue> {
    space.check_point(x)?;
    space.check_point(y)?;
    GValue::new(space.g_raw(x, y, y) + space.g_raw(x, x, y))
}

// Canonical triple ranking for 0 <= i <= j <= k: triples are stored in a flat
// vector at rank tet(k) + tri(j) + i.
fn tet(k: usize) -> usize {
    k * (k + 1) * (k + 2) / 6
}

fn tri(j: usize) -> usize {
    j * (j + 1) / 2
}

fn rank(mut i: usize, mut j: usize, mut k: usize) -> usize {
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    if j > k {
        std::mem::swap(&mut j, &mut k);
    }
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    tet(k) + tri(j) + i
}

/// A finite G-metric type space with a fully tabulated ternary distance.
///
/// The table is keyed by the sorted index triple, so lookups agree for every
/// permutation of the arguments by construction. Construction requires full
/// coverage of all multisets, finite non-negative values and `K >= 1`; it does
/// not require the axioms to hold — that is what [`validate_axioms`] reports.
#[derive(Debug, Clone)]
pub struct FiniteGSpace {
    labels: Vec<String>,
    k: f64,
    table: Vec<f64>,
    sampled: bool,
}

impl FiniteGSpace {
    pub fn new(labels: Vec<String>, k: f64, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        if !(k.is_finite() && k >= 1.0) {
            return Err(Error::InvalidRelaxation(k));
        }
        let n = labels.len();
        let mut table = vec![f64::NAN; tet(n)];
        for &(i, j, kk, v) in entries {
            if !(i <= j && j <= kk) {
                return Err(Error::NonCanonicalTriple(i, j, kk));
            }
            if kk >= n {
                return Err(Error::TripleOutOfRange(i, j, kk, n));
            }
            GValue::new(v)?;
            let r = rank(i, j, kk);
            if !table[r].is_nan() {
                return Err(Error::DuplicateTriple(i, j, kk));
            }
            table[r] = v;
        }
        for i in 0..n {
            for j in i..n {
                for kk in j..n {
                    if table[rank(i, j, kk)].is_nan() {
                        return Err(Error::MissingTriple(i, j, kk));
                    }
                }
            }
        }
        Ok(FiniteGSpace {
            labels,
            k,
            table,
            sampled: false,
        })
    }

    /// Build a space by evaluating `g` on every canonical index triple.
    pub fn from_fn(
        labels: Vec<String>,
        k: f64,
        g: impl Fn(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let n = labels.len();
        let mut entries = Vec::with_capacity(tet(n));
        for i in 0..n {
            for j in i..n {
                for kk in j..n {
                    entries.push((i, j, kk, g(i, j, kk)));
                }
            }
        }
        FiniteGSpace::new(labels, k, &entries)
    }

    /// The discrete space: G = 0 on the diagonal and 1 otherwise.
    pub fn discrete(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteGSpace::from_fn(labels, 1.0, |i, j, k| {
            if i == j && j == k {
                0.0
            } else {
                1.0
            }
        })
        .expect("discrete table is total")
    }

    /// The two-point space {0,1} with G(0,0,1)=1 and G(0,1,1)=2.
    pub fn two_point() -> Self {
        FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (0, 0, 1, 1.0),
                (0, 1, 1, 2.0),
                (1, 1, 1, 0.0),
            ],
        )
        .expect("two-point table is total")
    }

    /// The three-point space {0,1,2} with G(0,0,1)=G(0,1,1)=1 and all triples
    /// touching 2 equal to 2.
    pub fn three_point() -> Self {
        FiniteGSpace::new(
            vec!["0".into(), "1".into(), "2".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (1, 1, 1, 0.0),
                (2, 2, 2, 0.0),
                (0, 0, 1, 1.0),
                (0, 1, 1, 1.0),
                (0, 0, 2, 2.0),
                (1, 1, 2, 2.0),
                (0, 2, 2, 2.0),
                (1, 2, 2, 2.0),
                (0, 1, 2, 2.0),
            ],
        )
        .expect("three-point table is total")
    }

    /// Materialize the sample grid of an analytic space as a finite space.
    /// The result carries the `sampled` flag so downstream verdicts stay
    /// honest about their evidence.
    pub fn sample_analytic(a: &AnalyticGSpace) -> Self {
        let pts = a.sample_points();
        let labels = pts.iter().map(|p| format!("{p}")).collect();
        let mut s = FiniteGSpace::from_fn(labels, a.relaxation(), |i, j, k| {
            a.g_raw(&pts[i], &pts[j], &pts[k])
        })
        .expect("grid table is total");
        s.sampled = true;
        s
    }

    /// Like [`sample_analytic`](Self::sample_analytic) but with the grid
    /// capped at `max_grid` points.
    pub fn sample_analytic_capped(a: &AnalyticGSpace, max_grid: usize) -> Result<Self> {
        let g = a.grid_n().min(max_grid);
        let coarse = AnalyticGSpace::new(a.family(), a.lo(), a.hi(), g.max(2))?;
        Ok(FiniteGSpace::sample_analytic(&coarse))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Table lookup for in-range indices in any order.
    pub fn g_idx(&self, i: usize, j: usize, k: usize) -> GValue {
        GValue(self.table[rank(i, j, k)])
    }

    pub fn table_entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::with_capacity(tet(n));
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push((i, j, k, self.table[rank(i, j, k)]));
                }
            }
        }
        out
    }
}

impl GMetricSpace for FiniteGSpace {
    type Point = usize;

    fn relaxation(&self) -> f64 {
        self.k
    }

    fn check_point(&self, p: &usize) -> Result<()> {
        if *p < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("#{p}")))
        }
    }

    fn g_raw(&self, x: &usize, y: &usize, z: &usize) -> f64 {
        self.table[rank(*x, *y, *z)]
    }

    fn sample_points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    fn sampled(&self) -> bool {
        self.sampled
    }

    fn point_label(&self, p: &usize) -> String {
        self.labels[*p].clone()
    }
}

/// Builtin analytic families on a real interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnalyticFamily {
    /// G(x,y,z) = max{x,y,z}. Faithful to the max-of-values interval family; note that it
    /// violates (G1) for x > 0, which strict validation reports.
    #[serde(rename = "interval-maxval")]
    IntervalMaxval,
    /// G(x,y,z) = max{|x-y|, |y-z|, |z-x|}; satisfies all axioms with K = 1.
    #[serde(rename = "interval-maxdiff")]
    IntervalMaxdiff,
}

impl fmt::Display for AnalyticFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticFamily::IntervalMaxval => write!(f, "interval-maxval"),
            AnalyticFamily::IntervalMaxdiff => write!(f, "interval-maxdiff"),
        }
    }
}

/// An interval carrying one of the builtin analytic G families, checked on a
/// uniform grid of `grid_n` points (endpoints included).
#[derive(Debug, Clone)]
pub struct AnalyticGSpace {
    family: AnalyticFamily,
    lo: f64,
    hi: f64,
    grid_n: usize,
}

impl AnalyticGSpace {
    pub fn new(family: AnalyticFamily, lo: f64, hi: f64, grid_n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        if grid_n < 2 {
            return Err(Error::InvalidGrid(grid_n));
        }
        Ok(AnalyticGSpace {
            family,
            lo,
            hi,
            grid_n,
        })
    }

    /// The max-of-values interval space: [0,1] with G = max of values, 257 samples.
    pub fn interval_maxval() -> Self {
        AnalyticGSpace::new(AnalyticFamily::IntervalMaxval, 0.0, 1.0, 257).unwrap()
    }

    /// Axiom-clean interval space: [0,1] with G = max pairwise difference.
    pub fn interval_maxdiff() -> Self {
        AnalyticGSpace::new(AnalyticFamily::IntervalMaxdiff, 0.0, 1.0, 257).unwrap()
    }

    pub fn family(&self) -> AnalyticFamily {
        self.family
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn with_grid(&self, grid_n: usize) -> Result<Self> {
        AnalyticGSpace::new(self.family, self.lo, self.hi, grid_n)
    }
}

impl GMetricSpace for AnalyticGSpace {
    type Point = f64;

    fn relaxation(&self) -> f64 {
        1.0
    }

    fn check_point(&self, p: &f64) -> Result<()> {
        if p.is_finite() && *p >= self.lo - 1e-9 && *p <= self.hi + 1e-9 {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("{p}")))
        }
    }

    fn g_raw(&self, x: &f64, y: &f64, z: &f64) -> f64 {
        match self.family {
            AnalyticFamily::IntervalMaxval => x.max(*y).max(*z),
            AnalyticFamily::IntervalMaxdiff => {
                (x - y).abs().max((y - z).abs()).max((z - x).abs())
            }
        }
    }

    fn sample_points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.grid_n - 1) as f64;
        (0..self.grid_n)
            .map(|i| {
                if i + 1 == self.grid_n {
                    self.hi
                } else {
                    (self.lo + i as f64 * step).clamp(self.lo, self.hi)
                }
            })
            .collect()
    }

    fn sampled(&self) -> bool {
        true
    }

    fn point_label(&self, p: &f64) -> String {
        format!("{p}")
    }
}

/// Either space representation; used where the choice is made at run time.
#[derive(Debug, Clone)]
pub enum AnySpace {
    Finite(FiniteGSpace),
    Analytic(AnalyticGSpace),
}

impl AnySpace {
    pub fn sampled(&self) -> bool {
        match self {
            AnySpace::Finite(s) => s.sampled(),
            AnySpace::Analytic(_) => true,
        }
    }

    pub fn relaxation(&self) -> f64 {
        match self {
            AnySpace::Finite(s) => s.relaxation(),
            AnySpace::Analytic(s) => s.relaxation(),
        }
    }
}

/// Names of the builtin example spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleSpace {
    Discrete(usize),
    TwoPoint,
    ThreePoint,
    IntervalMaxval,
    IntervalMaxdiff,
}

impl std::str::FromStr for ExampleSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t
            .strip_prefix("discrete(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::UnknownExample(s.to_string()))?;
            if n == 0 {
                return Err(Error::UnknownExample(s.to_string()));
            }
            return Ok(ExampleSpace::Discrete(n));
        }
        match t {
            "two_point" => Ok(ExampleSpace::TwoPoint),
            "three_point" => Ok(ExampleSpace::ThreePoint),
            "interval_maxval" => Ok(ExampleSpace::IntervalMaxval),
            "interval_maxdiff" => Ok(ExampleSpace::IntervalMaxdiff),
            _ => Err(Error::UnknownExample(s.to_string())),
        }
    }
}

/// Construct one of the builtin example spaces.
pub fn make_example(which: ExampleSpace) -> AnySpace {
    match which {
        ExampleSpace::Discrete(n) => AnySpace::Finite(FiniteGSpace::discrete(n)),
        ExampleSpace::TwoPoint => AnySpace::Finite(FiniteGSpace::two_point()),
        ExampleSpace::ThreePoint => AnySpace::Finite(FiniteGSpace::three_point()),
        ExampleSpace::IntervalMaxval => AnySpace::Analytic(AnalyticGSpace::interval_maxval()),
        ExampleSpace::IntervalMaxdiff => AnySpace::Analytic(AnalyticGSpace::interval_maxdiff()),
    }
}

/// A concrete witness for a failed axiom, reproducible through [`g_eval`].
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCounterexample {
    /// Point labels in the role order of the axiom statement.
    pub points: Vec<String>,
    /// Intermediate chain for (G5)/(G5') failures.
    pub chain: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub holds: bool,
    pub counterexample: Option<AxiomCounterexample>,
    pub note: Option<String>,
}

/// Per-axiom verdicts for (G1)-(G5) and the two-term variant (G5').
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomVerdict>,
    pub g5_chain_cutoff: usize,
    pub sampled: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

/// Exhaustively check (G1)-(G4) and (G5'); check (G5) over all chains of
/// pairwise-distinct intermediate points of length at most `g5_chain_cutoff`.
/// Axiom failures are report content with a concrete counterexample, never
/// errors.
pub fn validate_axioms(space: &FiniteGSpace, g5_chain_cutoff: usize) -> Result<AxiomReport> {
    let n = space.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if g5_chain_cutoff > n {
        return Err(Error::InvalidParam {
            name: "g5_chain_cutoff",
            value: g5_chain_cutoff as f64,
            expected: "at most the number of points",
        });
    }
    let lbl = |i: usize| space.point_label(&i);
    let g = |i, j, k| space.g_idx(i, j, k).get();
    let kk = space.relaxation();

    let mut axioms = Vec::with_capacity(6);

    // (G1): G(x,x,x) = 0.
    let mut g1 = AxiomVerdict {
        axiom: "G1".into(),
        holds: true,
        counterexample: None,
        note: None,
    };
    for i in 0..n {
        let v = g(i, i, i);
        if v.abs() > AXIOM_TOL {
            g1.holds = false;
            g1.counterexample = Some(AxiomCounterexample {
                points: vec![lbl(i), lbl(i), lbl(i)],
                chain: vec![],
                lhs: v,
                rhs: 0.0,
            });
            break;
        }
    }
    axioms.push(g1);

    // (G2): G(x,x,y) > 0 for x != y.
    let mut g2 = AxiomVerdict {
        axiom: "G2".into(),
        holds: true,
        counterexample: None,
        note: None,
    };
    'g2: for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = g(i, i, j);
            if v <= AXIOM_TOL {
                g2.holds = false;
                g2.counterexample = Some(AxiomCounterexample {
                    points: vec![lbl(i), lbl(i), lbl(j)],
                    chain: vec![],
                    lhs: v,
                    rhs: 0.0,
                });
                break 'g2;
            }
        }
    }
    axioms.push(g2);

    // (G3): G(x,x,y) <= G(x,y,z) for z != y.
    let mut g3 = AxiomVerdict {
        axiom: "G3".into(),
        holds: true,
        counterexample: None,
        note: None,
    };
    'g3: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if z == y {
                    continue;
                }
                let lhs = g(x, x, y);
                let rhs = g(x, y, z);
                if lhs > rhs + AXIOM_TOL {
                    g3.holds = false;
                    g3.counterexample = Some(AxiomCounterexample {
                        points: vec![lbl(x), lbl(y), lbl(z)],
                        chain: vec![],
                        lhs,
                        rhs,
                    });
                    break 'g3;
                }
            }
        }
    }
    axioms.push(g3);

    // (G4) is structural: the table is keyed by the sorted triple, so every
    // permutation reads the same entry.
    axioms.push(AxiomVerdict {
        axiom: "G4".into(),
        holds: true,
        counterexample: None,
        note: Some("holds structurally: storage is keyed by the sorted index triple".into()),
    });

    // (G5): G(x,y,z) <= K [G(x,z1,z1) + G(z1,z2,z2) + ... + G(zm,y,z)] for
    // every chain of intermediates.
    let mut g5 = AxiomVerdict {
        axiom: "G5".into(),
        holds: true,
        counterexample: None,
        note: None,
    };
    'g5: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let target = g(x, y, z);
                // Depth-first over ordered chains of distinct intermediates.
                let mut chain: Vec<usize> = Vec::with_capacity(g5_chain_cutoff);
                let mut used = vec![false; n];
                if !g5_search(
                    space,
                    x,
                    y,
                    z,
                    target,
                    kk,
                    g5_chain_cutoff,
                    &mut chain,
                    &mut used,
                    &mut g5,
                ) {
                    break 'g5;
                }
            }
        }
    }
    axioms.push(g5);

    // (G5'): the two-term variant over a single intermediate.
    let mut g5p = AxiomVerdict {
        axiom: "G5'".into(),
        holds: true,
        counterexample: None,
        note: None,
    };
    'g5p: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = g(x, y, z);
                for z1 in 0..n {
                    let rhs = kk * (g(x, z1, z1) + g(z1, y, z));
                    if lhs > rhs + AXIOM_TOL {
                        g5p.holds = false;
                        g5p.counterexample = Some(AxiomCounterexample {
                            points: vec![lbl(x), lbl(y), lbl(z)],
                            chain: vec![lbl(z1)],
                            lhs,
                            rhs,
                        });
                        break 'g5p;
                    }
                }
            }
        }
    }
    axioms.push(g5p);

    Ok(AxiomReport {
        axioms,
        g5_chain_cutoff,
        sampled: space.sampled(),
    })
}

/// Returns false once a (G5) counterexample has been recorded.
#[allow(clippy::too_many_arguments)]
fn g5_search(
    space: &FiniteGSpace,
    x: usize,
    y: usize,
    z: usize,
    target: f64,
    kk: f64,
    cutoff: usize,
    chain: &mut Vec<usize>,
    used: &mut [bool],
    verdict: &mut AxiomVerdict,
) -> bool {
    let n = space.len();
    for c in 0..n {
        if used[c] {
            continue;
        }
        chain.push(c);
        used[c] = true;
        // Sum of the chain links for the current chain z1..zm.
        let mut sum = space.g_idx(x, chain[0], chain[0]).get();
        for w in chain.windows(2) {
            sum += space.g_idx(w[0], w[1], w[1]).get();
        }
        sum += space.g_idx(*chain.last().unwrap(), y, z).get();
        if target > kk * sum + AXIOM_TOL {
            verdict.holds = false;
            verdict.counterexample = Some(AxiomCounterexample {
                points: vec![
                    space.point_label(&x),
                    space.point_label(&y),
                    space.point_label(&z),
                ],
                chain: chain.iter().map(|c| space.point_label(c)).collect(),
                lhs: target,
                rhs: kk * sum,
            });
            chain.pop();
            used[c] = false;
            return false;
        }
        if chain.len() < cutoff
            && !g5_search(space, x, y, z, target, kk, cutoff, chain, used, verdict)
        {
            chain.pop();
            used[c] = false;
            return false;
        }
        chain.pop();
        used[c] = false;
    }
    true
}

/// The largest tabulated distance; the space is chainable at this threshold.
pub fn diameter(space: &FiniteGSpace) -> Result<GValue> {
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let n = space.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                best = best.max(space.g_idx(i, j, k).get());
            }
        }
    }
    GValue::new(best)
}

/// On-disk description of a space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceFile {
    Finite {
        points: Vec<String>,
        #[serde(rename = "K")]
        k: f64,
        /// Canonical entries [i, j, k, value] with i <= j <= k. Unlisted
        /// triples are an error, not an implicit zero.
        triples: Vec<(usize, usize, usize, f64)>,
    },
    Analytic {
        family: AnalyticFamily,
        lo: f64,
        hi: f64,
        grid_n: usize,
    },
}

impl SpaceFile {
    pub fn build(&self) -> Result<AnySpace> {
        match self {
            SpaceFile::Finite { points, k, triples } => Ok(AnySpace::Finite(FiniteGSpace::new(
                points.clone(),
                *k,
                triples,
            )?)),
            SpaceFile::Analytic {
                family,
                lo,
                hi,
                grid_n,
            } => Ok(AnySpace::Analytic(AnalyticGSpace::new(
                *family, *lo, *hi, *grid_n,
            )?)),
        }
    }

    pub fn from_space(space: &AnySpace) -> SpaceFile {
        match space {
            AnySpace::Finite(s) => SpaceFile::Finite {
                points: s.labels().to_vec(),
                k: s.relaxation(),
                triples: s.table_entries(),
            },
            AnySpace::Analytic(s) => SpaceFile::Analytic {
                family: s.family(),
                lo: s.lo(),
                hi: s.hi(),
                grid_n: s.grid_n(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_eval_diagonal_is_zero_on_discrete() {
        let s = FiniteGSpace::discrete(3);
        assert_eq!(g_eval(&s, &0, &0, &0).unwrap().get(), 0.0);
    }

    #[test]
    fn g_eval_three_point_table_values() {
        let s = FiniteGSpace::three_point();
        assert_eq!(g_eval(&s, &0, &1, &1).unwrap().get(), 1.0);
        assert_eq!(g_eval(&s, &0, &1, &2).unwrap().get(), 2.0);
    }

    #[test]
    fn g_eval_agrees_on_all_permutations() {
        let s = FiniteGSpace::three_point();
        let base = g_eval(&s, &0, &1, &2).unwrap();
        for (x, y, z) in [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            assert_eq!(g_eval(&s, &x, &y, &z).unwrap(), base);
        }
    }

    #[test]
    fn g_eval_rejects_unknown_point() {
        let s = FiniteGSpace::two_point();
        assert!(g_eval(&s, &0, &1, &7).is_err());
    }

    #[test]
    fn derived_metric_values() {
        let s = FiniteGSpace::two_point();
        assert_eq!(derived_metric(&s, &0, &0).unwrap().get(), 0.0);
        // Sum of the two table entries G(0,1,1) = 2 and G(0,0,1) = 1.
        assert_eq!(derived_metric(&s, &0, &1).unwrap().get(), 3.0);
        assert_eq!(derived_metric(&s, &1, &0).unwrap().get(), 3.0);

        let d = FiniteGSpace::discrete(4);
        assert_eq!(derived_metric(&d, &1, &3).unwrap().get(), 2.0);
    }

    #[test]
    fn builtin_example_spaces_pass_all_axioms() {
        for s in [
            FiniteGSpace::discrete(2),
            FiniteGSpace::discrete(5),
            FiniteGSpace::two_point(),
            FiniteGSpace::three_point(),
        ] {
            let cutoff = s.len() - 1;
            let report = validate_axioms(&s, cutoff.max(1)).unwrap();
            assert!(report.all_hold(), "axioms failed: {report:?}");
            assert!(!report.sampled);
        }
    }

    #[test]
    fn cutoff_may_reach_the_point_count() {
        let s = FiniteGSpace::three_point();
        let report = validate_axioms(&s, 3).unwrap();
        assert!(report.all_hold());
        assert!(validate_axioms(&s, 4).is_err());
    }

    #[test]
    fn g2_failure_is_witnessed() {
        // Two distinct points with G(0,0,1) = 0.
        let s = FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (0, 0, 1, 0.0),
                (0, 1, 1, 2.0),
                (1, 1, 1, 0.0),
            ],
        )
        .unwrap();
        let report = validate_axioms(&s, 1).unwrap();
        let g2 = report.verdict("G2").unwrap();
        assert!(!g2.holds);
        let w = g2.counterexample.as_ref().unwrap();
        assert_eq!(w.points, vec!["0", "0", "1"]);
    }

    #[test]
    fn g3_failure_on_lowered_three_point_table() {
        // Re-check of all G3 instances on the edited table: lowering
        // G(0,1,2) to 0.5 leaves G(0,0,1) = 1 above it.
        let mut entries = FiniteGSpace::three_point().table_entries();
        for e in &mut entries {
            if (e.0, e.1, e.2) == (0, 1, 2) {
                e.3 = 0.5;
            }
        }
        let s = FiniteGSpace::new(
            vec!["0".into(), "1".into(), "2".into()],
            1.0,
            &entries,
        )
        .unwrap();
        let report = validate_axioms(&s, 2).unwrap();
        let g3 = report.verdict("G3").unwrap();
        assert!(!g3.holds);
        let w = g3.counterexample.as_ref().unwrap();
        assert_eq!(w.points, vec!["0", "1", "2"]);
        assert_eq!(w.lhs, 1.0);
        assert_eq!(w.rhs, 0.5);
    }

    #[test]
    fn construction_rejects_k_below_one() {
        let err = FiniteGSpace::new(vec!["0".into()], 0.5, &[(0, 0, 0, 0.0)]);
        assert!(matches!(err, Err(Error::InvalidRelaxation(_))));
    }

    #[test]
    fn construction_rejects_missing_and_duplicate_triples() {
        let missing = FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[(0, 0, 0, 0.0), (0, 0, 1, 1.0), (1, 1, 1, 0.0)],
        );
        assert!(matches!(missing, Err(Error::MissingTriple(0, 1, 1))));

        let dup = FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (0, 0, 1, 1.0),
                (0, 0, 1, 2.0),
                (0, 1, 1, 2.0),
                (1, 1, 1, 0.0),
            ],
        );
        assert!(matches!(dup, Err(Error::DuplicateTriple(0, 0, 1))));

        let noncanon = FiniteGSpace::new(
            vec!["0".into(), "1".into()],
            1.0,
            &[
                (0, 0, 0, 0.0),
                (1, 0, 1, 1.0),
                (0, 1, 1, 2.0),
                (1, 1, 1, 0.0),
            ],
        );
        assert!(matches!(noncanon, Err(Error::NonCanonicalTriple(1, 0, 1))));
    }

    #[test]
    fn diameter_values() {
        let single = FiniteGSpace::new(vec!["p".into()], 1.0, &[(0, 0, 0, 0.0)]).unwrap();
        assert_eq!(diameter(&single).unwrap().get(), 0.0);
        assert_eq!(diameter(&FiniteGSpace::two_point()).unwrap().get(), 2.0);
        assert_eq!(diameter(&FiniteGSpace::three_point()).unwrap().get(), 2.0);
    }

    #[test]
    fn make_example_names() {
        let d: ExampleSpace = "discrete(2)".parse().unwrap();
        match make_example(d) {
            AnySpace::Finite(s) => {
                assert_eq!(s.len(), 2);
                assert_eq!(s.g_idx(0, 0, 1).get(), 1.0);
                assert_eq!(s.g_idx(0, 1, 1).get(), 1.0);
            }
            _ => panic!("discrete is finite"),
        }
        match make_example("two_point".parse().unwrap()) {
            AnySpace::Finite(s) => {
                assert_eq!(s.g_idx(0, 0, 1).get(), 1.0);
                assert_eq!(s.g_idx(0, 1, 1).get(), 2.0);
            }
            _ => panic!("two_point is finite"),
        }
        match make_example("interval_maxval".parse().unwrap()) {
            AnySpace::Analytic(s) => {
                assert_eq!(s.family(), AnalyticFamily::IntervalMaxval);
                assert_eq!((s.lo(), s.hi()), (0.0, 1.0));
                assert_eq!(s.g_raw(&0.25, &0.5, &0.125), 0.5);
            }
            _ => panic!("interval example is analytic"),
        }
        assert!("no_such_space".parse::<ExampleSpace>().is_err());
    }

    #[test]
    fn sampled_maxval_grid_fails_g1() {
        let a = AnalyticGSpace::new(AnalyticFamily::IntervalMaxval, 0.0, 1.0, 9).unwrap();
        let s = FiniteGSpace::sample_analytic(&a);
        assert!(s.sampled());
        let report = validate_axioms(&s, 1).unwrap();
        assert!(report.sampled);
        let g1 = report.verdict("G1").unwrap();
        assert!(!g1.holds, "max-of-values family has G(x,x,x) = x > 0");
    }

    #[test]
    fn sampled_maxdiff_grid_passes_axioms() {
        let a = AnalyticGSpace::new(AnalyticFamily::IntervalMaxdiff, 0.0, 1.0, 9).unwrap();
        let s = FiniteGSpace::sample_analytic(&a);
        let report = validate_axioms(&s, 2).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn grid_includes_exact_endpoints() {
        let a = AnalyticGSpace::new(AnalyticFamily::IntervalMaxdiff, 0.25, 0.75, 7).unwrap();
        let pts = a.sample_points();
        assert_eq!(pts[0], 0.25);
        assert_eq!(*pts.last().unwrap(), 0.75);
        assert_eq!(pts.len(), 7);
    }

    #[test]
    fn space_file_round_trip() {
        let s = FiniteGSpace::three_point();
        let file = SpaceFile::from_space(&AnySpace::Finite(s.clone()));
        let json = serde_json::to_string(&file).unwrap();
        let parsed: SpaceFile = serde_json::from_str(&json).unwrap();
        match parsed.build().unwrap() {
            AnySpace::Finite(t) => {
                assert_eq!(t.labels(), s.labels());
                assert_eq!(t.table_entries(), s.table_entries());
            }
            _ => panic!("expected finite space"),
        }
    }
}
