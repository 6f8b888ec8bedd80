use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat, MatDoc};

/// A finitely supported, homologically graded complex of finite-dimensional
/// rational vector spaces. `d(n)` maps degree `n` to degree `n - 1`.
///
/// Stored form is normalized: `dims` holds only positive dimensions and `diff`
/// holds a block exactly for the degrees `n` where both `n` and `n - 1` are
/// nonzero, so structural equality is equality of complexes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexDoc", into = "ComplexDoc")]
pub struct Complex {
    dims: BTreeMap<i64, usize>,
    diff: BTreeMap<i64, Mat>,
}

/// Why a complex failed validation, localized to a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// `d(degree - 1) * d(degree)` is nonzero.
    SquareNonzero,
    Shape { expected: (usize, usize), found: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::SquareNonzero => {
                write!(f, "d({}) * d({}) != 0", self.degree - 1, self.degree)
            }
            ViolationKind::Shape { expected, found } => write!(
                f,
                "differential in degree {} has shape {}x{}, expected {}x{}",
                self.degree, found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

impl Complex {
    /// Shape-checked construction without the `d^2 = 0` check; see [`Complex::validate`].
    pub fn unchecked(dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Mat>) -> Result<Self> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        for (&n, m) in &diff {
            let expected = (dim(n - 1), dim(n));
            if m.shape() != expected {
                return Err(Error::InvalidComplex(Violation {
                    degree: n,
                    kind: ViolationKind::Shape { expected, found: m.shape() },
                }));
            }
        }
        let mut diff = diff;
        let mut normalized = BTreeMap::new();
        for &n in dims.keys() {
            if dim(n - 1) > 0 {
                let m = diff.remove(&n).unwrap_or_else(|| Mat::zeros(dim(n - 1), dim(n)));
                normalized.insert(n, m);
            }
        }
        Ok(Complex { dims, diff: normalized })
    }

    /// Shape-checked and `d^2 = 0`-checked construction.
    pub fn new(dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Mat>) -> Result<Self> {
        let c = Self::unchecked(dims, diff)?;
        c.validate().map_err(Error::InvalidComplex)?;
        Ok(c)
    }

    /// Confirms `d^2 = 0`, reporting the lowest failing degree.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for &n in self.diff.keys() {
            if let Some(lower) = self.diff.get(&(n - 1)) {
                if !lower.dot(&self.diff[&n]).is_zero() {
                    return Err(Violation { degree: n, kind: ViolationKind::SquareNonzero });
                }
            }
        }
        Ok(())
    }

    pub fn zero() -> Self {
        Complex { dims: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// `Q` concentrated in degree `n`.
    pub fn sphere(n: i64) -> Self {
        Complex { dims: BTreeMap::from([(n, 1)]), diff: BTreeMap::new() }
    }

    /// `Q` in degrees `n` and `n - 1` joined by the identity; acyclic.
    pub fn disc(n: i64) -> Self {
        Complex {
            dims: BTreeMap::from([(n - 1, 1), (n, 1)]),
            diff: BTreeMap::from([(n, Mat::identity(1))]),
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Differential out of degree `n`, shape `dim(n-1) x dim(n)`.
    pub fn d(&self, n: i64) -> Cow<'_, Mat> {
        match self.diff.get(&n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Mat::zeros(self.dim(n - 1), self.dim(n))),
        }
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    /// Smallest and largest degree of nonzero dimension.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Degrees at which anything derived from `self` and `others` can be nonzero.
    pub(crate) fn degree_union<'a>(items: impl IntoIterator<Item = &'a Complex>) -> Vec<i64> {
        let mut all: Vec<i64> = items.into_iter().flat_map(|c| c.degrees()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex").field("dims", &self.dims).field("d", &self.diff).finish()
    }
}

/// Document form of a complex. Zero differential blocks may be omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub dims: BTreeMap<i64, usize>,
    #[serde(default)]
    pub d: BTreeMap<i64, MatDoc>,
}

impl TryFrom<ComplexDoc> for Complex {
    type Error = Error;

    fn try_from(doc: ComplexDoc) -> Result<Self> {
        let dim = |n: i64| doc.dims.get(&n).copied().unwrap_or(0);
        let mut diff = BTreeMap::new();
        for (n, m) in doc.d.clone() {
            let (r, c) = (dim(n - 1), dim(n));
            let m = m.into_mat(r, c).map_err(|e| {
                Error::Parse(format!("differential in degree {n}: {e}"))
            })?;
            diff.insert(n, m);
        }
        Complex::new(doc.dims, diff)
    }
}

impl From<Complex> for ComplexDoc {
    fn from(c: Complex) -> Self {
        ComplexDoc {
            dims: c.dims,
            d: c
                .diff
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(n, m)| (n, MatDoc::from_mat(&m)))
                .collect(),
        }
    }
}
