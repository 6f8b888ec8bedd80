//! Rational chain complexes as a [`StructuredCategory`].
//!
//! Fibrations are degreewise surjections, cofibrations degreewise injections,
//! weak equivalences quasi-isomorphisms, and the zero object is the empty
//! complex. Every object is both fibrant and cofibrant.

pub mod oracle;
pub mod random;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::{
    self, cocylinder_factor, cocylinder_map, cylinder_factor, cylinder_map, hom_space,
    homology::{homology_inclusion, homology_projection, is_quasi_iso},
    homology_dims, ChainMap, Complex, HomSpace,
};
use crate::engine;
use crate::error::{Error, Result};
use crate::jcat::{
    Dualizing, Factorization, LiftingSquare, PullbackSquare, PushoutSquare, Replacement,
    StructuredCategory,
};
use crate::linalg::{Mat, Rational};

pub use oracle::{cat_oracle, domination_oracle, weak_section_oracle};
pub use random::{ChainSampler, RandomComplexes};

pub type ChainFactorization = Factorization<Complex, ChainMap>;
pub type ChainReplacement = Replacement<Complex, ChainMap>;
pub type ChainCertificate = engine::IndcatCertificate<Complex, ChainMap>;
pub type ChainDomination = engine::DominationWitness<Complex, ChainMap>;
pub type ChainJoin = engine::JoinDiagram<Complex, ChainMap>;
pub type ChainTower = engine::GaneaTower<Complex, ChainMap>;
pub type ChainSynthesis = engine::SectionSynthesis<Complex, ChainMap>;
pub type ChainWeakLifting = engine::WeakLifting<Complex, ChainMap>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ReplacementMode {
    /// `QX = RX = X` with identity maps.
    #[default]
    Identity,
    /// `QX` from a C-factorization of `0 -> X`, `RX` from an F-factorization
    /// of `X -> 0`.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FactorizationStrategy {
    /// Mapping cocylinder for F, mapping cylinder for C.
    #[default]
    Standard,
    /// F: first include into the cylinder of the identity, then take the
    /// cocylinder. C: first include the target into the cocylinder of its
    /// identity, then take the cylinder.
    Detour,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainInstance {
    pub replacement: ReplacementMode,
    pub strategy: FactorizationStrategy,
    /// Largest absolute degree any constructed object may occupy.
    pub support_guard: i64,
    /// Test fixture: classify every morphism as a fibration.
    #[doc(hidden)]
    pub corrupt_fibrations: bool,
}

impl Default for ChainInstance {
    fn default() -> Self {
        ChainInstance {
            replacement: ReplacementMode::Identity,
            strategy: FactorizationStrategy::Standard,
            support_guard: 32,
            corrupt_fibrations: false,
        }
    }
}

impl ChainInstance {
    pub fn with_strategy(mut self, strategy: FactorizationStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_replacement(mut self, replacement: ReplacementMode) -> Self {
        self.replacement = replacement;
        self
    }

    pub fn with_support_guard(mut self, guard: i64) -> Self {
        self.support_guard = guard;
        self
    }

    pub fn check_support(&self, x: &Complex) -> Result<()> {
        match x.support() {
            Some((lo, _)) if lo < -self.support_guard => {
                Err(Error::SupportGuard { degree: lo, limit: self.support_guard })
            }
            Some((_, hi)) if hi > self.support_guard => {
                Err(Error::SupportGuard { degree: hi, limit: self.support_guard })
            }
            _ => Ok(()),
        }
    }

    fn guarded(&self, f: ChainFactorization) -> Result<ChainFactorization> {
        self.check_support(&f.middle)?;
        Ok(f)
    }
}

fn detour_f(f: &ChainMap) -> Result<ChainFactorization> {
    let cyl = cylinder_factor(&ChainMap::identity(f.source().clone()))?;
    let through = f.after(&cyl.second)?;
    let path = cocylinder_factor(&through)?;
    Ok(Factorization { first: path.first.after(&cyl.first)?, ..path })
}

fn detour_f_map(f: &ChainMap, g: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<ChainMap> {
    let (idx, idy) = (ChainMap::identity(f.source().clone()), ChainMap::identity(g.source().clone()));
    let cyl = cylinder_map(&idx, &idy, top, top)?;
    let sf = f.after(&cylinder_factor(&idx)?.second)?;
    let sg = g.after(&cylinder_factor(&idy)?.second)?;
    cocylinder_map(&sf, &sg, &cyl, bottom)
}

fn detour_c(f: &ChainMap) -> Result<ChainFactorization> {
    let path = cocylinder_factor(&ChainMap::identity(f.target().clone()))?;
    let into = path.first.after(f)?;
    let cyl = cylinder_factor(&into)?;
    Ok(Factorization { second: path.second.after(&cyl.second)?, ..cyl })
}

fn detour_c_map(f: &ChainMap, g: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<ChainMap> {
    let (idx, idy) = (ChainMap::identity(f.target().clone()), ChainMap::identity(g.target().clone()));
    let path = cocylinder_map(&idx, &idy, bottom, bottom)?;
    let kf = cocylinder_factor(&idx)?.first.after(f)?;
    let kg = cocylinder_factor(&idy)?.first.after(g)?;
    cylinder_map(&kf, &kg, top, &path)
}

/// Coordinate map `H(X) -> H(Y)` keeping the first `min` basis classes.
fn truncation(hx: &Complex, hy: &Complex) -> ChainMap {
    let comps = hx
        .degrees()
        .filter(|&n| hy.dim(n) > 0)
        .map(|n| {
            let mut m = Mat::zeros(hy.dim(n), hx.dim(n));
            for k in 0..hx.dim(n).min(hy.dim(n)) {
                m[(k, k)] = Rational::one();
            }
            (n, m)
        })
        .collect();
    ChainMap::new(hx.clone(), hy.clone(), comps).expect("zero differentials")
}

/// Chain maps `QX -> RY` whose coordinates over a basis of the hom space lie
/// in `{-1, 0, 1}`, enumerated in base-3 counting order.
struct SmallCombinations {
    generators: Vec<ChainMap>,
    zero: ChainMap,
    counter: Vec<u8>,
    done: bool,
}

impl SmallCombinations {
    fn new(space: &HomSpace) -> Self {
        let generators: Vec<ChainMap> = space.generators().collect();
        SmallCombinations {
            counter: vec![0; generators.len()],
            zero: space.particular(),
            generators,
            done: false,
        }
    }
}

impl Iterator for SmallCombinations {
    type Item = ChainMap;

    fn next(&mut self) -> Option<ChainMap> {
        if self.done {
            return None;
        }
        let mut out = self.zero.clone();
        for (g, &c) in self.generators.iter().zip(&self.counter) {
            let coeff = match c {
                0 => continue,
                1 => Rational::one(),
                _ => -Rational::one(),
            };
            out = out.add(&g.scale(&coeff)).expect("same hom space");
        }
        // Advance the base-3 counter.
        self.done = true;
        for digit in self.counter.iter_mut() {
            if *digit < 2 {
                *digit += 1;
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(out)
    }
}

impl StructuredCategory for ChainInstance {
    type Object = Complex;
    type Morphism = ChainMap;

    fn zero_object(&self) -> Complex {
        Complex::zero()
    }

    fn source(&self, m: &ChainMap) -> Complex {
        m.source().clone()
    }

    fn target(&self, m: &ChainMap) -> Complex {
        m.target().clone()
    }

    fn compose(&self, g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        g.after(f)
    }

    fn identity(&self, x: &Complex) -> ChainMap {
        ChainMap::identity(x.clone())
    }

    fn zero_morphism(&self, x: &Complex, y: &Complex) -> ChainMap {
        ChainMap::zero(x.clone(), y.clone())
    }

    fn is_fibration(&self, m: &ChainMap) -> bool {
        self.corrupt_fibrations || m.is_surjective()
    }

    fn is_cofibration(&self, m: &ChainMap) -> bool {
        m.is_injective()
    }

    fn is_weq(&self, m: &ChainMap) -> bool {
        is_quasi_iso(m)
    }

    fn f_factorize(&self, m: &ChainMap) -> Result<ChainFactorization> {
        let f = match self.strategy {
            FactorizationStrategy::Standard => cocylinder_factor(m)?,
            FactorizationStrategy::Detour => detour_f(m)?,
        };
        debug_assert!(f.second.is_surjective() && f.first.is_injective());
        self.guarded(f)
    }

    fn c_factorize(&self, m: &ChainMap) -> Result<ChainFactorization> {
        let f = match self.strategy {
            FactorizationStrategy::Standard => cylinder_factor(m)?,
            FactorizationStrategy::Detour => detour_c(m)?,
        };
        debug_assert!(f.first.is_injective() && f.second.is_surjective());
        self.guarded(f)
    }

    fn f_factorization_map(
        &self,
        f: &ChainMap,
        g: &ChainMap,
        top: &ChainMap,
        bottom: &ChainMap,
    ) -> Result<ChainMap> {
        match self.strategy {
            FactorizationStrategy::Standard => cocylinder_map(f, g, top, bottom),
            FactorizationStrategy::Detour => detour_f_map(f, g, top, bottom),
        }
    }

    fn c_factorization_map(
        &self,
        f: &ChainMap,
        g: &ChainMap,
        top: &ChainMap,
        bottom: &ChainMap,
    ) -> Result<ChainMap> {
        match self.strategy {
            FactorizationStrategy::Standard => cylinder_map(f, g, top, bottom),
            FactorizationStrategy::Detour => detour_c_map(f, g, top, bottom),
        }
    }

    fn pullback(&self, f: &ChainMap, p: &ChainMap) -> Result<PullbackSquare<Complex, ChainMap>> {
        let pb = chain::pullback(f, p)?;
        self.check_support(&pb.object)?;
        Ok(pb)
    }

    fn pullback_mediator(
        &self,
        square: &PullbackSquare<Complex, ChainMap>,
        u: &ChainMap,
        v: &ChainMap,
    ) -> Result<Option<ChainMap>> {
        chain::pullback_mediator(square, u, v)
    }

    fn pushout(&self, i: &ChainMap, g: &ChainMap) -> Result<PushoutSquare<Complex, ChainMap>> {
        let po = chain::pushout(i, g)?;
        self.check_support(&po.object)?;
        Ok(po)
    }

    fn pushout_mediator(
        &self,
        square: &PushoutSquare<Complex, ChainMap>,
        u: &ChainMap,
        v: &ChainMap,
    ) -> Result<Option<ChainMap>> {
        chain::pushout_mediator(square, u, v)
    }

    fn lift(&self, sq: &LiftingSquare<ChainMap>) -> Result<Option<ChainMap>> {
        chain::fill_square(&sq.left, &sq.right, &sq.top, &sq.bottom)
    }

    fn lift_through(&self, f: &ChainMap, p: &ChainMap) -> Result<Option<ChainMap>> {
        chain::lift_through(f, p)
    }

    fn cofibrant_replace(&self, x: &Complex) -> Result<ChainReplacement> {
        match self.replacement {
            ReplacementMode::Identity => {
                Ok(Replacement { object: x.clone(), map: ChainMap::identity(x.clone()) })
            }
            ReplacementMode::Generic => {
                let f = self.c_factorize(&ChainMap::zero(Complex::zero(), x.clone()))?;
                Ok(Replacement { object: f.middle, map: f.second })
            }
        }
    }

    fn fibrant_replace(&self, x: &Complex) -> Result<ChainReplacement> {
        match self.replacement {
            ReplacementMode::Identity => {
                Ok(Replacement { object: x.clone(), map: ChainMap::identity(x.clone()) })
            }
            ReplacementMode::Generic => {
                let f = self.f_factorize(&ChainMap::zero(x.clone(), Complex::zero()))?;
                Ok(Replacement { object: f.middle, map: f.first })
            }
        }
    }

    fn replace_map_cofibrant(&self, f: &ChainMap) -> Result<ChainMap> {
        match self.replacement {
            ReplacementMode::Identity => Ok(f.clone()),
            ReplacementMode::Generic => {
                let zero = ChainMap::identity(Complex::zero());
                let from = ChainMap::zero(Complex::zero(), f.source().clone());
                let to = ChainMap::zero(Complex::zero(), f.target().clone());
                self.c_factorization_map(&from, &to, &zero, f)
            }
        }
    }

    fn replace_map_fibrant(&self, f: &ChainMap) -> Result<ChainMap> {
        match self.replacement {
            ReplacementMode::Identity => Ok(f.clone()),
            ReplacementMode::Generic => {
                let zero = ChainMap::identity(Complex::zero());
                let from = ChainMap::zero(f.source().clone(), Complex::zero());
                let to = ChainMap::zero(f.target().clone(), Complex::zero());
                self.f_factorization_map(&from, &to, f, &zero)
            }
        }
    }

    /// The composite `QX -> X -> RX` when `X = Y`; then the homology route
    /// `QX -> X -> H(X) -> H(Y) -> Y -> RY`; then small combinations over a
    /// basis of all chain maps `QX -> RY`.
    fn domination_candidates<'a>(
        &'a self,
        qx: &ChainReplacement,
        ry: &ChainReplacement,
    ) -> Box<dyn Iterator<Item = ChainMap> + 'a> {
        let (x, y) = (qx.map.target().clone(), ry.map.source().clone());
        let (px, iy) = (qx.map.clone(), ry.map.clone());
        let reflexive = (x == y).then(|| iy.after(&px).expect("composable"));
        let via_homology = {
            let (pi, iota) = (homology_projection(&x), homology_inclusion(&y));
            let rho = truncation(pi.target(), iota.source());
            iy.after(&iota.after(&rho.after(&pi.after(&px).expect("composable")).expect("composable")).expect("composable"))
                .expect("composable")
        };
        let (src, tgt) = (qx.object.clone(), ry.object.clone());
        let search = std::iter::once(()).flat_map(move |_| SmallCombinations::new(&hom_space(&src, &tgt)));
        Box::new(reflexive.into_iter().chain(std::iter::once(via_homology)).chain(search))
    }

    fn objects_weakly_equivalent(&self, x: &Complex, y: &Complex) -> Option<bool> {
        Some(homology_dims(x) == homology_dims(y))
    }
}

impl Dualizing for ChainInstance {
    fn dual_object(&self, x: &Complex) -> Complex {
        chain::dualize(x)
    }

    fn dual_morphism(&self, m: &ChainMap) -> ChainMap {
        chain::dualize_map(m)
    }
}

/// Per-degree summary used by reports: `(chain dims, homology dims)`.
pub fn summary(x: &Complex) -> BTreeMap<i64, (usize, usize)> {
    let h = homology_dims(x);
    x.degrees().map(|n| (n, (x.dim(n), h.get(n)))).collect()
}
