//! Seeded random complexes and maps, and the audit sampler built on them.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ChainInstance;
use crate::chain::{direct_sum, hom_space, ChainMap, Complex, HomSystem};
use crate::jcat::{LiftingSquare, Sampler};
use crate::linalg::{Mat, Rational};

/// Shape of the random complexes: support `[lo, hi]`, at most `max_dim` per
/// degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomComplexes {
    pub lo: i64,
    pub hi: i64,
    pub max_dim: usize,
}

impl Default for RandomComplexes {
    fn default() -> Self {
        RandomComplexes { lo: -3, hi: 5, max_dim: 3 }
    }
}

fn small_entry(rng: &mut impl Rng) -> Rational {
    Rational::from_int(rng.gen_range(-2..=2))
}

/// Unitriangular change of basis and its inverse.
fn random_unitriangular(rng: &mut impl Rng, n: usize) -> (Mat, Mat) {
    let mut p = Mat::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                p[(i, j)] = small_entry(rng);
            }
        }
    }
    let inv = p.inverse().expect("unitriangular");
    (p, inv)
}

impl RandomComplexes {
    pub fn narrow(lo: i64, hi: i64, max_dim: usize) -> Self {
        RandomComplexes { lo, hi, max_dim }
    }

    /// A random complex. One draw in three is built from discs only (so is
    /// acyclic), one from spheres and discs, and one has generic random
    /// differentials; the structured ones are hidden by a change of basis.
    pub fn complex(&self, rng: &mut impl Rng) -> Complex {
        match rng.gen_range(0..3) {
            0 => self.acyclic(rng),
            1 => {
                let x = self.cells(rng, true);
                self.disguise(rng, &x)
            }
            _ => self.generic(rng),
        }
    }

    /// An acyclic complex within the support.
    pub fn acyclic(&self, rng: &mut impl Rng) -> Complex {
        let x = self.cells(rng, false);
        self.disguise(rng, &x)
    }

    fn cells(&self, rng: &mut impl Rng, spheres: bool) -> Complex {
        let mut out = Complex::zero();
        let budget = rng.gen_range(0..=((self.hi - self.lo + 1) as usize));
        for _ in 0..budget {
            let n = rng.gen_range(self.lo..=self.hi);
            let cell = if spheres && rng.gen_bool(0.5) {
                Complex::sphere(n)
            } else if n > self.lo {
                Complex::disc(n)
            } else {
                continue;
            };
            let fits = cell.dims().iter().all(|(&k, &d)| out.dim(k) + d <= self.max_dim);
            if fits {
                out = direct_sum(&out, &cell);
            }
        }
        out
    }

    fn disguise(&self, rng: &mut impl Rng, x: &Complex) -> Complex {
        let bases: BTreeMap<i64, (Mat, Mat)> =
            x.dims().iter().map(|(&n, &d)| (n, random_unitriangular(rng, d))).collect();
        let diff = x
            .degrees()
            .filter(|n| bases.contains_key(&(n - 1)))
            .map(|n| (n, bases[&(n - 1)].0.dot(&x.d(n)).dot(&bases[&n].1)))
            .collect();
        Complex::new(x.dims().clone(), diff).expect("conjugate of a complex")
    }

    fn generic(&self, rng: &mut impl Rng) -> Complex {
        let dims: BTreeMap<i64, usize> =
            (self.lo..=self.hi).map(|n| (n, rng.gen_range(0..=self.max_dim))).collect();
        let mut diff: BTreeMap<i64, Mat> = BTreeMap::new();
        for n in self.lo + 1..=self.hi {
            let (rows, cols) = (dims[&(n - 1)], dims[&n]);
            let below = diff.get(&(n - 1)).cloned().unwrap_or_else(|| Mat::zeros(dims.get(&(n - 2)).copied().unwrap_or(0), rows));
            let cycles = below.kernel_basis();
            // Occasionally drop rank to leave homology behind.
            let k = if rng.gen_bool(0.3) { cycles.cols().saturating_sub(1) } else { cycles.cols() };
            let mut r = Mat::zeros(cycles.cols(), cols);
            for i in 0..k {
                for j in 0..cols {
                    r[(i, j)] = small_entry(rng);
                }
            }
            debug_assert_eq!(cycles.rows(), rows);
            diff.insert(n, cycles.dot(&r));
        }
        Complex::new(dims, diff).expect("image lies in the cycles")
    }

    /// A random chain map `x -> y` with small coordinates over a basis of
    /// all chain maps.
    pub fn map(&self, rng: &mut impl Rng, x: &Complex, y: &Complex) -> ChainMap {
        hom_space(x, y).sample(rng, 1)
    }

    /// `x ⊕ (random acyclic)`.
    pub fn thicken(&self, rng: &mut impl Rng, x: &Complex) -> Complex {
        direct_sum(x, &self.acyclic(rng))
    }

    /// A quasi-isomorphism `x -> x ⊕ D` with a random component into the
    /// acyclic `D`.
    pub fn weq_from(&self, rng: &mut impl Rng, x: &Complex) -> ChainMap {
        let d = self.acyclic(rng);
        let h = self.map(rng, x, &d);
        let target = direct_sum(x, &d);
        let comps = x
            .degrees()
            .map(|n| {
                let id = Mat::identity(x.dim(n));
                (n, id.vstack(&h.comp(n)).expect("same columns"))
            })
            .collect();
        ChainMap::new(x.clone(), target, comps).expect("graph of a chain map")
    }

    /// A quasi-isomorphism `y ⊕ D -> y` with a random component out of `D`.
    pub fn weq_to(&self, rng: &mut impl Rng, y: &Complex) -> ChainMap {
        let d = self.acyclic(rng);
        let h = self.map(rng, &d, y);
        let source = direct_sum(y, &d);
        let comps = y
            .degrees()
            .map(|n| {
                let id = Mat::identity(y.dim(n));
                (n, id.hstack(&h.comp(n)).expect("same rows"))
            })
            .collect();
        ChainMap::new(source, y.clone(), comps).expect("sum of chain maps")
    }

    /// A nonzero scalar multiple of the identity.
    pub fn automorphism(&self, rng: &mut impl Rng, x: &Complex) -> ChainMap {
        let c = [Rational::from_int(-1), Rational::from_int(2), Rational::new(1, 2), Rational::one()]
            [rng.gen_range(0..4)]
        .clone();
        ChainMap::identity(x.clone()).scale(&c)
    }
}

/// The audit sampler for [`ChainInstance`].
#[derive(Debug, Clone, Default)]
pub struct ChainSampler {
    pub shape: RandomComplexes,
}

impl Sampler<ChainInstance> for ChainSampler {
    fn object(&self, rng: &mut ChaCha8Rng) -> Complex {
        self.shape.complex(rng)
    }

    fn morphism(&self, rng: &mut ChaCha8Rng, source: &Complex, target: &Complex) -> ChainMap {
        self.shape.map(rng, source, target)
    }

    fn automorphism(&self, rng: &mut ChaCha8Rng, x: &Complex) -> ChainMap {
        self.shape.automorphism(rng, x)
    }

    fn weak_equivalence_from(&self, rng: &mut ChaCha8Rng, x: &Complex) -> ChainMap {
        self.shape.weq_from(rng, x)
    }

    fn weak_equivalence_to(&self, rng: &mut ChaCha8Rng, y: &Complex) -> ChainMap {
        self.shape.weq_to(rng, y)
    }

    /// Tries a random top and extends along `left`; failing that, a random
    /// bottom and lifts through `right`.
    fn lifting_square(
        &self,
        rng: &mut ChaCha8Rng,
        left: &ChainMap,
        right: &ChainMap,
    ) -> Option<LiftingSquare<ChainMap>> {
        let top = self.shape.map(rng, left.source(), right.source());
        let rt = right.after(&top).ok()?;
        let mut sys = HomSystem::new(left.target(), right.target());
        sys.pre(left, &rt).ok()?;
        if let Some(space) = sys.solve_space() {
            let bottom = space.sample(rng, 1);
            return Some(LiftingSquare { left: left.clone(), right: right.clone(), top, bottom });
        }
        let bottom = self.shape.map(rng, left.target(), right.target());
        let bl = bottom.after(left).ok()?;
        let mut sys = HomSystem::new(left.source(), right.source());
        sys.post(right, &bl).ok()?;
        let top = sys.solve_space()?.sample(rng, 1);
        Some(LiftingSquare { left: left.clone(), right: right.clone(), top, bottom })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology::{is_acyclic, is_quasi_iso};
    use rand::SeedableRng;

    #[test]
    fn generators_respect_shape() {
        let shape = RandomComplexes::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut acyclic, mut not) = (0, 0);
        for _ in 0..60 {
            let x = shape.complex(&mut rng);
            assert!(x.validate().is_ok());
            if let Some((lo, hi)) = x.support() {
                assert!(lo >= shape.lo && hi <= shape.hi);
            }
            assert!(x.dims().values().all(|&d| d <= shape.max_dim));
            if is_acyclic(&x) {
                acyclic += 1;
            } else {
                not += 1;
            }
        }
        assert!(acyclic > 5 && not > 5, "{acyclic} acyclic, {not} not");
    }

    #[test]
    fn weak_equivalences_are_quasi_isos() {
        let shape = RandomComplexes::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = shape.complex(&mut rng);
            assert!(is_quasi_iso(&shape.weq_from(&mut rng, &x)));
            assert!(is_quasi_iso(&shape.weq_to(&mut rng, &x)));
            assert!(is_quasi_iso(&shape.automorphism(&mut rng, &x)));
        }
    }
}
