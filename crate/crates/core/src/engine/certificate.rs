use serde::{Deserialize, Serialize};

use super::{CofibreSequence, DominationWitness, Engine, GaneaTower, WeakLifting};
use crate::error::{Error, Result};
use crate::jcat::{Dualizing, StructuredCategory};

/// Where a step's cofibre sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// The level-`k` join of a Ganea tower.
    GaneaLevel(usize),
    Supplied,
}

/// Proof that `indcat(target) <= value()`.
///
/// A base case is a weak section of `0 -> target`. A step is a cofibre
/// sequence `A -> Y -> C` with `C ≫ target` and a certificate for `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndcatCertificate<O, M> {
    Base {
        target: O,
        witness: WeakLifting<O, M>,
    },
    Step {
        target: O,
        origin: Origin,
        cofibre: CofibreSequence<O, M>,
        domination: DominationWitness<O, M>,
        inner: Box<IndcatCertificate<O, M>>,
    },
}

type Cert<C> = IndcatCertificate<<C as StructuredCategory>::Object, <C as StructuredCategory>::Morphism>;
type LevelCofibre<C> =
    (CofibreSequence<<C as StructuredCategory>::Object, <C as StructuredCategory>::Morphism>, <C as StructuredCategory>::Morphism);

impl<O, M> IndcatCertificate<O, M> {
    pub fn value(&self) -> usize {
        match self {
            IndcatCertificate::Base { .. } => 0,
            IndcatCertificate::Step { inner, .. } => inner.value() + 1,
        }
    }

    pub fn target(&self) -> &O {
        match self {
            IndcatCertificate::Base { target, .. } | IndcatCertificate::Step { target, .. } => target,
        }
    }
}

/// The first equation a certificate fails, with the path to the failing node
/// (`step`s from the outside in, then `base`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub path: String,
    pub equation: String,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.equation)
    }
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    /// A certificate of value `cat(x)`, built from the Ganea tower.
    pub fn canonical_certificate(&self, x: &C::Object) -> Result<Cert<C>> {
        let cat = self.cat_of(x)?;
        let n = cat.value.ok_or(Error::CatExceeded(self.config.max_n))?;
        self.certificate_from_tower(&cat.tower, n)
    }

    /// A certificate of value `k` for `x`; needs a weak section of the level-`k`
    /// Ganea map, so it exists for every `k >= cat(x)`.
    pub fn certificate_at_level(&self, x: &C::Object, k: usize) -> Result<Cert<C>> {
        let tower = self.ganea_tower(x, k)?;
        self.certificate_from_tower(&tower, k)
    }

    fn certificate_from_tower(
        &self,
        tower: &GaneaTower<C::Object, C::Morphism>,
        n: usize,
    ) -> Result<Cert<C>> {
        let c = self.cat;
        let x = &tower.base;
        if n == 0 {
            return self.base(x);
        }
        let (cofibre, to_level) = self.level_cofibre(tower, n)?;
        let map = c.compose(&tower.levels[n].map, &to_level)?;
        let ws = self
            .weak_section(&map)?
            .ok_or_else(|| Error::Precondition(format!("level {n} of the Ganea tower has no weak section")))?;
        let domination = self.domination_from_weak_section(&map, &ws)?;
        let inner = self.inner_certificate(tower, n - 1, &c.target(&cofibre.f))?;
        Ok(IndcatCertificate::Step { target: x.clone(), origin: Origin::GaneaLevel(n), cofibre, domination, inner: Box::new(inner) })
    }

    /// Certificate of value `j` for the object `Z_{j+1}` of the level-`j+1`
    /// join; each step dominates through the level-`j` cofibre.
    fn inner_certificate(
        &self,
        tower: &GaneaTower<C::Object, C::Morphism>,
        j: usize,
        target: &C::Object,
    ) -> Result<Cert<C>> {
        if j == 0 {
            return self.base(target);
        }
        let (cofibre, _) = self.level_cofibre(tower, j)?;
        let domination = self
            .dominates(cofibre.object(), target)?
            .ok_or_else(|| Error::Precondition(format!("no domination found at level {j}")))?;
        let inner = self.inner_certificate(tower, j - 1, &self.cat.target(&cofibre.f))?;
        Ok(IndcatCertificate::Step { target: target.clone(), origin: Origin::GaneaLevel(j), cofibre, domination, inner: Box::new(inner) })
    }

    /// Cofibre of `i: E' -> Z` at level `j` and its comparison map into `G_j`.
    fn level_cofibre(
        &self,
        tower: &GaneaTower<C::Object, C::Morphism>,
        j: usize,
    ) -> Result<LevelCofibre<C>> {
        let c = self.cat;
        let join = tower.levels[j].join.as_ref().expect("level >= 1");
        let cofibre = self.cofibre_sequence(&join.f_bar_factorization.first)?;
        let zero = c.zero_morphism(cofibre.cone_object(), join.object());
        let to_level = c
            .pushout_mediator(&cofibre.pushout, &zero, &join.pushout.in_i)?
            .ok_or_else(|| Error::Precondition("fibre does not vanish in the join".into()))?;
        Ok((cofibre, to_level))
    }

    fn base(&self, x: &C::Object) -> Result<Cert<C>> {
        let zero = self.cat.zero_morphism(&self.cat.zero_object(), x);
        let witness = self
            .weak_section(&zero)?
            .ok_or_else(|| Error::Precondition("0 -> X has no weak section".into()))?;
        Ok(IndcatCertificate::Base { target: x.clone(), witness })
    }

    /// Re-checks every equation, class condition and construction.
    pub fn verify_certificate_detailed(
        &self,
        cert: &Cert<C>,
        x: &C::Object,
    ) -> std::result::Result<(), VerifyFailure> {
        self.verify_at(cert, x, String::new())
    }

    pub fn verify_certificate(&self, cert: &Cert<C>, x: &C::Object) -> bool {
        self.verify_certificate_detailed(cert, x).is_ok()
    }

    fn verify_at(
        &self,
        cert: &Cert<C>,
        x: &C::Object,
        prefix: String,
    ) -> std::result::Result<(), VerifyFailure> {
        let c = self.cat;
        let name = if matches!(cert, IndcatCertificate::Base { .. }) { "base" } else { "step" };
        let path = if prefix.is_empty() { name.to_string() } else { format!("{prefix} > {name}") };
        let fail = |equation: String| VerifyFailure { path: path.clone(), equation };
        if cert.target() != x {
            return Err(fail("certificate is for a different object".into()));
        }
        match cert {
            IndcatCertificate::Base { witness, .. } => {
                if witness.g != c.zero_morphism(&c.zero_object(), x) {
                    return Err(fail("g = 0 -> X".into()));
                }
                if witness.f != c.identity(x) {
                    return Err(fail("f = id_X".into()));
                }
                self.check_weak_lifting(witness).map_err(fail)
            }
            IndcatCertificate::Step { cofibre, domination, inner, .. } => {
                let rebuilt = self.cofibre_sequence(&cofibre.f).map_err(|e| fail(e.to_string()))?;
                if rebuilt.cone != cofibre.cone {
                    return Err(fail("cone factorization of A -> 0".into()));
                }
                if rebuilt.pushout != cofibre.pushout {
                    return Err(fail("C is the pushout of k and f".into()));
                }
                self.check_domination(domination, cofibre.object(), x).map_err(fail)?;
                self.verify_at(inner, &c.target(&cofibre.f), path.clone())
            }
        }
    }

    /// `cat(x)` bounded by a verified canonical certificate.
    pub fn indcat_of(&self, x: &C::Object) -> Result<(usize, Cert<C>)> {
        let cert = self.canonical_certificate(x)?;
        self.verify_certificate_detailed(&cert, x).map_err(|f| Error::InvalidWitness(f.to_string()))?;
        Ok((cert.value(), cert))
    }
}

impl<'c, C: Dualizing> Engine<'c, C> {
    pub fn cocat_of(&self, x: &C::Object) -> Result<Option<usize>> {
        Ok(self.cat_of(&self.cat.dual_object(x))?.value)
    }

    pub fn indcocat_of(&self, x: &C::Object) -> Result<(usize, Cert<C>)> {
        self.indcat_of(&self.cat.dual_object(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{direct_sum, Complex};
    use crate::instance::ChainInstance;

    #[test]
    fn canonical_certificates() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        for (x, v) in [(Complex::zero(), 0), (Complex::disc(2), 0), (Complex::sphere(1), 1)] {
            let (value, cert) = e.indcat_of(&x).unwrap();
            assert_eq!(value, v);
            assert!(e.verify_certificate(&cert, &x));
        }
    }

    #[test]
    fn higher_levels_verify() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let x = direct_sum(&Complex::sphere(0), &Complex::sphere(1));
        let cert = e.certificate_at_level(&x, 2).unwrap();
        assert_eq!(cert.value(), 2);
        assert_eq!(e.verify_certificate_detailed(&cert, &x), Ok(()));
        assert!(!e.verify_certificate(&cert, &Complex::sphere(0)));
    }

    #[test]
    fn tampering_is_caught() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let x = Complex::sphere(0);
        let mut cert = e.canonical_certificate(&x).unwrap();
        if let IndcatCertificate::Step { domination, .. } = &mut cert {
            domination.s = domination.s.scale(&crate::linalg::Rational::from_int(2));
        }
        let failure = e.verify_certificate_detailed(&cert, &x).unwrap_err();
        assert_eq!(failure.path, "step");
        assert_eq!(failure.equation, "p ∘ s = i_Y");
    }

    #[test]
    fn cocat_of_spheres() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        assert_eq!(e.cocat_of(&Complex::sphere(3)).unwrap(), Some(1));
        assert_eq!(e.indcocat_of(&Complex::disc(3)).unwrap().0, 0);
    }
}
