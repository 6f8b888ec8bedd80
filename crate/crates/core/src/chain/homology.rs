//! Homology over a field: graded dimensions, induced ranks, cycle
//! representatives, and the zigzag through homology that certifies weak
//! equivalence.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ChainMap, Complex};
use crate::linalg::Mat;

/// Finitely supported graded dimensions; zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        GradedDims(dims.into_iter().filter(|&(_, d)| d > 0).collect())
    }

    pub fn get(&self, n: i64) -> usize {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&n, &d)| (n, d))
    }

    /// Alternating sum of dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(n, d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// Degreewise `self >= other`.
    pub fn dominates(&self, other: &GradedDims) -> bool {
        other.iter().all(|(n, d)| self.get(n) >= d)
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{d}")?;
        }
        write!(f, "}}")
    }
}

/// Dimensions of the chain groups of `x` (not its homology).
pub fn chain_dims(x: &Complex) -> GradedDims {
    GradedDims::new(x.dims().iter().map(|(&n, &d)| (n, d)))
}

/// `dim H_n = dim ker d_n - rank d_{n+1}`.
pub fn homology_dims(x: &Complex) -> GradedDims {
    GradedDims::new(x.degrees().map(|n| {
        let cycles = x.dim(n) - x.d(n).rank();
        (n, cycles - x.d(n + 1).rank())
    }))
}

pub fn is_acyclic(x: &Complex) -> bool {
    homology_dims(x).is_zero()
}

/// Rank of `H_n(f)`: `rank [f Z_n(X) | B_n(Y)] - rank B_n(Y)`.
pub fn induced_rank(f: &ChainMap, n: i64) -> usize {
    let cycles = f.source().d(n).kernel_basis();
    let image = f.comp(n).dot(&cycles);
    let boundaries = f.target().d(n + 1);
    let joint = image.hstack(&boundaries).expect("both live in the target");
    joint.rank() - boundaries.rank()
}

/// Induced map on homology is an isomorphism in every degree.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let (hx, hy) = (homology_dims(f.source()), homology_dims(f.target()));
    hx == hy && hy.iter().all(|(n, d)| induced_rank(f, n) == d)
}

/// Induced map on homology is surjective in every degree.
pub fn is_homology_surjective(f: &ChainMap) -> bool {
    homology_dims(f.target()).iter().all(|(n, d)| induced_rank(f, n) == d)
}

/// Columns: cycles in degree `n` whose classes form a basis of `H_n`.
pub fn cycle_representatives(x: &Complex, n: i64) -> Mat {
    let cycles = x.d(n).kernel_basis();
    let boundaries = x.d(n + 1);
    let picked = cycles.independent_columns_modulo(&boundaries).expect("same ambient space");
    cycles.select_columns(&picked)
}

/// The complex with zero differential and the homology dimensions of `x`.
pub fn homology_complex(x: &Complex) -> Complex {
    let dims = homology_dims(x);
    Complex::new(dims.iter().collect(), BTreeMap::new()).expect("zero differential")
}

/// Inclusion `H(X) -> X` sending basis classes to their cycle representatives.
pub fn homology_inclusion(x: &Complex) -> ChainMap {
    let h = homology_complex(x);
    let comps = h.degrees().map(|n| (n, cycle_representatives(x, n))).collect();
    ChainMap::new(h, x.clone(), comps).expect("cycles commute with a zero differential")
}

/// Projection `X -> H(X)` that is a left inverse of [`homology_inclusion`].
///
/// Degree `n` is split as boundaries ⊕ representatives ⊕ a complement of the
/// cycles; the projection reads off the representative coordinates.
pub fn homology_projection(x: &Complex) -> ChainMap {
    let h = homology_complex(x);
    let mut comps = BTreeMap::new();
    for n in h.degrees() {
        let dim = x.dim(n);
        let d_in = x.d(n + 1);
        let b_cols = d_in.independent_columns_modulo(&Mat::zeros(dim, 0)).expect("same rows");
        let boundaries = d_in.select_columns(&b_cols);
        let reps = cycle_representatives(x, n);
        let partial = boundaries.hstack(&reps).expect("same rows");
        let cycles_span = partial.hstack(&x.d(n).kernel_basis()).expect("same rows");
        let units = Mat::identity(dim);
        let extra = units.independent_columns_modulo(&cycles_span).expect("same rows");
        let basis = partial.hstack(&units.select_columns(&extra)).expect("same rows");
        let inv = basis.inverse().expect("boundaries, reps and complement span the space");
        let rows: Vec<usize> = (boundaries.cols()..boundaries.cols() + reps.cols()).collect();
        comps.insert(n, inv.select_rows(&rows));
    }
    ChainMap::new(x.clone(), h, comps).expect("projection kills boundaries")
}

/// A span `X <- H -> Y` of quasi-isomorphisms exhibiting weak equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zigzag {
    pub middle: Complex,
    pub to_left: ChainMap,
    pub to_right: ChainMap,
}

impl Zigzag {
    /// Both legs are quasi-isomorphisms out of the shared middle.
    pub fn is_valid(&self) -> bool {
        self.to_left.source() == &self.middle
            && self.to_right.source() == &self.middle
            && is_quasi_iso(&self.to_left)
            && is_quasi_iso(&self.to_right)
    }
}

/// Over a field equal graded homology suffices; the returned zigzag through
/// the common homology complex certifies it.
pub fn are_weakly_equivalent(x: &Complex, y: &Complex) -> Option<Zigzag> {
    if homology_dims(x) != homology_dims(y) {
        return None;
    }
    let to_left = homology_inclusion(x);
    let mut to_right = homology_inclusion(y);
    // Both inclusions have source H; make the middle literally shared.
    let middle = to_left.source().clone();
    to_right = ChainMap::new(middle.clone(), y.clone(), to_right.comps().clone())
        .expect("identical homology complexes");
    Some(Zigzag { middle, to_left, to_right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::direct_sum;

    #[test]
    fn homology_examples() {
        assert_eq!(homology_dims(&Complex::sphere(2)), GradedDims::new([(2, 1)]));
        assert!(homology_dims(&Complex::disc(1)).is_zero());
        let x = direct_sum(&Complex::sphere(0), &Complex::disc(3));
        assert_eq!(homology_dims(&x), GradedDims::new([(0, 1)]));
    }

    #[test]
    fn quasi_iso_examples() {
        let x = direct_sum(&Complex::sphere(1), &Complex::disc(2));
        assert!(is_quasi_iso(&ChainMap::identity(x)));
        assert!(is_quasi_iso(&ChainMap::zero(Complex::zero(), Complex::disc(1))));
        assert!(!is_quasi_iso(&ChainMap::zero(Complex::zero(), Complex::sphere(2))));
    }

    #[test]
    fn projection_inverts_inclusion() {
        let x = direct_sum(&direct_sum(&Complex::sphere(1), &Complex::disc(2)), &Complex::sphere(1));
        let i = homology_inclusion(&x);
        let p = homology_projection(&x);
        assert!(p.after(&i).unwrap().is_identity());
        assert!(is_quasi_iso(&i) && is_quasi_iso(&p));
    }

    #[test]
    fn zigzag_examples() {
        let s2 = Complex::sphere(2);
        assert!(are_weakly_equivalent(&s2, &s2).unwrap().is_valid());
        let thick = direct_sum(&Complex::disc(1), &s2);
        assert!(are_weakly_equivalent(&s2, &thick).unwrap().is_valid());
        assert!(are_weakly_equivalent(&s2, &Complex::sphere(3)).is_none());
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(GradedDims::new([(0, 2), (1, 1), (-1, 3)]).euler_characteristic(), -2);
    }
}
