use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Complex, ComplexDoc};
use crate::error::{Error, Result};
use crate::linalg::{Mat, MatDoc, Rational};

/// A degree-preserving map of complexes commuting with the differentials.
///
/// Components are stored for exactly the degrees where source and target are
/// both nonzero; anything else is an empty block.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapDoc", into = "MapDoc")]
pub struct ChainMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    comps: BTreeMap<i64, Mat>,
}

impl ChainMap {
    /// Shape-checked construction without the commutation check.
    pub fn unchecked(
        source: impl Into<Arc<Complex>>,
        target: impl Into<Arc<Complex>>,
        comps: BTreeMap<i64, Mat>,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        for (&n, m) in &comps {
            let expected = (target.dim(n), source.dim(n));
            if m.shape() != expected {
                return Err(Error::InvalidChainMap(format!(
                    "component in degree {n} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        let mut comps = comps;
        let mut normalized = BTreeMap::new();
        for n in source.degrees() {
            if target.dim(n) > 0 {
                let m = comps
                    .remove(&n)
                    .unwrap_or_else(|| Mat::zeros(target.dim(n), source.dim(n)));
                normalized.insert(n, m);
            }
        }
        Ok(ChainMap { source, target, comps: normalized })
    }

    /// Shape- and commutation-checked construction.
    pub fn new(
        source: impl Into<Arc<Complex>>,
        target: impl Into<Arc<Complex>>,
        comps: BTreeMap<i64, Mat>,
    ) -> Result<Self> {
        let f = Self::unchecked(source, target, comps)?;
        if let Some(n) = f.commutation_failure() {
            return Err(Error::InvalidChainMap(format!(
                "d * f != f * d out of degree {n}"
            )));
        }
        Ok(f)
    }

    /// First degree `n` where `d(n) f(n) != f(n-1) d(n)`.
    pub fn commutation_failure(&self) -> Option<i64> {
        for n in self.source.degrees() {
            if self.target.dim(n - 1) == 0 {
                continue;
            }
            let lhs = self.target.d(n).dot(&self.comp(n));
            let rhs = self.comp(n - 1).dot(&self.source.d(n));
            if lhs != rhs {
                return Some(n);
            }
        }
        None
    }

    pub fn identity(x: impl Into<Arc<Complex>>) -> Self {
        let x = x.into();
        let comps = x.dims().iter().map(|(&n, &d)| (n, Mat::identity(d))).collect();
        ChainMap { source: x.clone(), target: x, comps }
    }

    pub fn zero(source: impl Into<Arc<Complex>>, target: impl Into<Arc<Complex>>) -> Self {
        Self::unchecked(source, target, BTreeMap::new()).expect("empty components always fit")
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn comp(&self, n: i64) -> Cow<'_, Mat> {
        match self.comps.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Mat::zeros(self.target.dim(n), self.source.dim(n))),
        }
    }

    pub fn comps(&self) -> &BTreeMap<i64, Mat> {
        &self.comps
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target() != self.source() {
            return Err(Error::NotComposable(format!(
                "target {:?} != source {:?}",
                first.target().dims(),
                self.source().dims()
            )));
        }
        let comps = first
            .source
            .degrees()
            .filter(|&n| self.target.dim(n) > 0)
            .map(|n| (n, self.comp(n).dot(&first.comp(n))))
            .collect();
        Ok(ChainMap { source: first.source.clone(), target: self.target.clone(), comps })
    }

    fn zip_with(&self, other: &ChainMap, f: impl Fn(&Mat, &Mat) -> Mat) -> Result<ChainMap> {
        if self.source() != other.source() || self.target() != other.target() {
            return Err(Error::ShapeMismatch("maps have different source or target".into()));
        }
        let comps = self.comps.iter().map(|(&n, m)| (n, f(m, &other.comps[&n]))).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip_with(other, |a, b| a.add(b).expect("same shapes"))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip_with(other, |a, b| a.sub(b).expect("same shapes"))
    }

    pub fn scale(&self, c: &Rational) -> ChainMap {
        let comps = self.comps.iter().map(|(&n, m)| (n, m.scale(c))).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.comps.values().all(Mat::is_identity)
    }

    /// Degreewise injective: a cofibration of the chain instance.
    pub fn is_injective(&self) -> bool {
        self.source.dims().iter().all(|(&n, &d)| self.comp(n).rank() == d)
    }

    /// Degreewise surjective: a fibration of the chain instance.
    pub fn is_surjective(&self) -> bool {
        self.target.dims().iter().all(|(&n, &d)| self.comp(n).rank() == d)
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("comps", &self.comps)
            .finish()
    }
}

/// Document form of a chain map. Zero components may be omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    #[serde(default)]
    pub comps: BTreeMap<i64, MatDoc>,
}

impl TryFrom<MapDoc> for ChainMap {
    type Error = Error;

    fn try_from(doc: MapDoc) -> Result<Self> {
        let source = Complex::try_from(doc.source)?;
        let target = Complex::try_from(doc.target)?;
        let mut comps = BTreeMap::new();
        for (n, m) in doc.comps {
            let m = m
                .into_mat(target.dim(n), source.dim(n))
                .map_err(|e| Error::Parse(format!("component in degree {n}: {e}")))?;
            comps.insert(n, m);
        }
        ChainMap::new(source, target, comps)
    }
}

impl From<ChainMap> for MapDoc {
    fn from(f: ChainMap) -> Self {
        MapDoc {
            source: ComplexDoc::from((*f.source).clone()),
            target: ComplexDoc::from((*f.target).clone()),
            comps: f
                .comps
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(n, m)| (n, MatDoc::from_mat(&m)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let x = Complex::disc(3);
        let id = ChainMap::identity(x.clone());
        assert!(id.is_identity() && id.is_injective() && id.is_surjective());
        let z = ChainMap::zero(Complex::zero(), x.clone());
        assert!(z.is_injective() && !z.is_surjective());
        assert_eq!(id.after(&z).unwrap(), z);
    }

    #[test]
    fn non_chain_map_rejected() {
        // D(1) -> S(0), identity in degree 0: f d = 1 but d f = 0.
        let f = ChainMap::new(
            Complex::disc(1),
            Complex::sphere(0),
            BTreeMap::from([(0, Mat::identity(1))]),
        );
        assert!(matches!(f, Err(Error::InvalidChainMap(_))));
    }

    #[test]
    fn composition_checks_objects() {
        let a = ChainMap::identity(Complex::sphere(0));
        let b = ChainMap::identity(Complex::sphere(1));
        assert!(matches!(a.after(&b), Err(Error::NotComposable(_))));
    }

    #[test]
    fn document_round_trip() {
        let f = ChainMap::new(
            Complex::sphere(0),
            Complex::disc(1),
            BTreeMap::from([(0, Mat::from_int_rows(1, &[&[3]]))]),
        )
        .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: ChainMap = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
