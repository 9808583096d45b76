//! Self-mappings of a space: tabulated maps on finite spaces, affine maps on
//! interval spaces, iterates, and indexed families for common-fixed-point
//! iteration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gspace::{AnalyticGSpace, FiniteGSpace};

/// A self-mapping T : X -> X over points of type `P`.
pub trait SelfMap<P> {
    fn apply(&self, p: &P) -> P;

    fn label(&self) -> &str {
        ""
    }

    /// n-fold application; `apply_n(p, 0)` is the identity.
    fn apply_n(&self, p: &P, n: usize) -> P
    where
        P: Clone,
    {
        let mut cur = p.clone();
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }
}

/// A map given by its image index at every point of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedMap {
    images: Vec<usize>,
    label: String,
}

impl TabulatedMap {
    pub fn new(images: Vec<usize>, label: impl Into<String>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&im| im >= n) {
            return Err(Error::InvalidMap(format!(
                "image index {bad} is out of range for {n} points"
            )));
        }
        Ok(TabulatedMap {
            images,
            label: label.into(),
        })
    }

    /// The constant map onto `target`.
    pub fn constant(n: usize, target: usize) -> Result<Self> {
        if target >= n {
            return Err(Error::InvalidMap(format!(
                "constant target {target} is out of range for {n} points"
            )));
        }
        TabulatedMap::new(vec![target; n], format!("const->{target}"))
    }

    pub fn identity(n: usize) -> Self {
        TabulatedMap::new((0..n).collect(), "identity").expect("identity is total")
    }

    /// The map on the three-point example space: 0,1 -> 0 and 2 -> 1.
    pub fn three_point_example_map() -> Self {
        TabulatedMap::new(vec![0, 0, 1], "three-point-map").expect("total on 3 points")
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Totality on the given space.
    pub fn check_against(&self, space: &FiniteGSpace) -> Result<()> {
        if self.images.len() != space.len() {
            return Err(Error::InvalidMap(format!(
                "map is defined on {} points but the space has {}",
                self.images.len(),
                space.len()
            )));
        }
        Ok(())
    }
}

impl SelfMap<usize> for TabulatedMap {
    fn apply(&self, p: &usize) -> usize {
        self.images[*p]
    }

    fn label(&self) -> &str {
        &self.label
    }
}

/// x -> alpha * x + beta on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    alpha: f64,
    beta: f64,
    label: String,
}

impl AffineMap {
    pub fn new(alpha: f64, beta: f64, label: impl Into<String>) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidMap("affine coefficients must be finite".into()));
        }
        Ok(AffineMap {
            alpha,
            beta,
            label: label.into(),
        })
    }

    /// The one-sixteenth scaling map T(x) = x/16.
    pub fn sixteenth() -> Self {
        AffineMap::new(1.0 / 16.0, 0.0, "x/16").unwrap()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// An affine image of an interval is the interval spanned by the endpoint
    /// images, so checking the endpoints checks totality.
    pub fn check_against(&self, space: &AnalyticGSpace) -> Result<()> {
        let (lo, hi) = (space.lo(), space.hi());
        for e in [self.apply(&lo), self.apply(&hi)] {
            if !(e >= lo - 1e-12 && e <= hi + 1e-12) {
                return Err(Error::InvalidMap(format!(
                    "affine map sends {e} outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

impl SelfMap<f64> for AffineMap {
    fn apply(&self, p: &f64) -> f64 {
        self.alpha * p + self.beta
    }

    fn label(&self) -> &str {
        &self.label
    }
}

/// The n-th iterate of a base map, viewed as a map itself.
pub struct IteratedMap<'a, M> {
    base: &'a M,
    power: usize,
    label: String,
}

impl<'a, M> IteratedMap<'a, M> {
    pub fn new(base: &'a M, power: usize) -> Self
    where
        M: SelfMapLabel,
    {
        let label = format!("{}^{power}", base.label_str());
        IteratedMap { base, power, label }
    }
}

/// Helper so iterates can borrow a label without knowing the point type.
pub trait SelfMapLabel {
    fn label_str(&self) -> &str;
}

impl SelfMapLabel for TabulatedMap {
    fn label_str(&self) -> &str {
        &self.label
    }
}

impl SelfMapLabel for AffineMap {
    fn label_str(&self) -> &str {
        &self.label
    }
}

impl<P: Clone, M: SelfMap<P>> SelfMap<P> for IteratedMap<'_, M> {
    fn apply(&self, p: &P) -> P {
        self.base.apply_n(p, self.power)
    }

    fn label(&self) -> &str {
        &self.label
    }
}

/// An indexed family {T_n, n >= 1}; a finite list applied cyclically.
#[derive(Debug, Clone)]
pub struct MapFamily<M> {
    maps: Vec<M>,
    label: String,
}

impl<M> MapFamily<M> {
    pub fn new(maps: Vec<M>, label: impl Into<String>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(MapFamily {
            maps,
            label: label.into(),
        })
    }

    /// The map for 1-based index n.
    pub fn at(&self, n: usize) -> &M {
        debug_assert!(n >= 1);
        &self.maps[(n - 1) % self.maps.len()]
    }

    pub fn distinct(&self) -> &[M] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// On-disk description of a map or a cyclic map family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapFile {
    Tabulated {
        images: Vec<usize>,
        #[serde(default)]
        label: String,
    },
    Affine {
        alpha: f64,
        beta: f64,
        #[serde(default)]
        label: String,
    },
    Family {
        maps: Vec<MapFile>,
        #[serde(default)]
        label: String,
    },
}

/// A parsed map, dispatched by the space kind it applies to.
#[derive(Debug, Clone)]
pub enum AnyMap {
    Tabulated(TabulatedMap),
    Affine(AffineMap),
    TabulatedFamily(MapFamily<TabulatedMap>),
    AffineFamily(MapFamily<AffineMap>),
}

impl MapFile {
    pub fn build(&self) -> Result<AnyMap> {
        match self {
            MapFile::Tabulated { images, label } => {
                Ok(AnyMap::Tabulated(TabulatedMap::new(images.clone(), label.clone())?))
            }
            MapFile::Affine { alpha, beta, label } => {
                Ok(AnyMap::Affine(AffineMap::new(*alpha, *beta, label.clone())?))
            }
            MapFile::Family { maps, label } => {
                let mut tab = Vec::new();
                let mut aff = Vec::new();
                for m in maps {
                    match m.build()? {
                        AnyMap::Tabulated(t) => tab.push(t),
                        AnyMap::Affine(a) => aff.push(a),
                        _ => {
                            return Err(Error::InvalidMap(
                                "nested map families are not supported".into(),
                            ))
                        }
                    }
                }
                match (tab.is_empty(), aff.is_empty()) {
                    (false, true) => Ok(AnyMap::TabulatedFamily(MapFamily::new(tab, label.clone())?)),
                    (true, false) => Ok(AnyMap::AffineFamily(MapFamily::new(aff, label.clone())?)),
                    (true, true) => Err(Error::EmptyFamily),
                    _ => Err(Error::InvalidMap(
                        "a family must be all tabulated or all affine".into(),
                    )),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_rejects_out_of_range_image() {
        assert!(TabulatedMap::new(vec![0, 3], "bad").is_err());
    }

    #[test]
    fn iterate_composes() {
        let t = TabulatedMap::three_point_example_map();
        assert_eq!(t.apply_n(&2, 0), 2);
        assert_eq!(t.apply_n(&2, 1), 1);
        assert_eq!(t.apply_n(&2, 2), 0);
        let t2 = IteratedMap::new(&t, 2);
        assert_eq!(t2.apply(&2), 0);
    }

    #[test]
    fn affine_totality_check() {
        let space = AnalyticGSpace::interval_maxval();
        assert!(AffineMap::sixteenth().check_against(&space).is_ok());
        let out = AffineMap::new(2.0, 0.0, "2x").unwrap();
        assert!(out.check_against(&space).is_err());
    }

    #[test]
    fn family_cycles_one_based() {
        let f = MapFamily::new(
            vec![TabulatedMap::constant(2, 0).unwrap(), TabulatedMap::identity(2)],
            "alt",
        )
        .unwrap();
        assert_eq!(f.at(1).apply(&1), 0);
        assert_eq!(f.at(2).apply(&1), 1);
        assert_eq!(f.at(3).apply(&1), 0);
    }

    #[test]
    fn map_file_round_trip() {
        let json = r#"{"kind":"family","maps":[{"kind":"tabulated","images":[0,0]},{"kind":"tabulated","images":[0,1]}],"label":"alt"}"#;
        let parsed: MapFile = serde_json::from_str(json).unwrap();
        match parsed.build().unwrap() {
            AnyMap::TabulatedFamily(f) => assert_eq!(f.len(), 2),
            _ => panic!("expected a tabulated family"),
        }
    }
}
