use serde::{Deserialize, Serialize};

use super::{CofibreSequence, Engine, GaneaMaps, IndcatCertificate, WeakLifting};
use crate::error::{Error, Result};
use crate::jcat::{Factorization, LiftingSquare, PullbackSquare, PushoutSquare, StructuredCategory};

/// A strict section `σ` of a map `p_n: G -> C` out of a model `G` of the
/// level-`n` Ganea object of the cofibre `C`, built from a cofibre sequence
/// `A -f-> Y -p-> C` and a weak section of the level-`(n-1)` Ganea map of `Y`.
///
/// `fibre` is the pullback of `f̄: CA -> C` along the fibration `E_C -> C`;
/// `g_n` is the pushout of the cofibration `ε: F -> ĈA` with `F -> E_C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSynthesis<O, M> {
    pub n: usize,
    pub cofibre: CofibreSequence<O, M>,
    pub section_y: WeakLifting<O, M>,
    pub ganea_p: GaneaMaps<O, M>,
    pub e_c: Factorization<O, M>,
    pub e_map: M,
    pub fibre: PullbackSquare<O, M>,
    pub epsilon: Factorization<O, M>,
    pub g_n: PushoutSquare<O, M>,
    pub p_n: M,
    pub lambda: M,
    pub q_prime: M,
    pub sigma: M,
    /// The canonical level-`n` Ganea object of `C`.
    pub canonical: O,
    /// Whether `g_n.object` and `canonical` are weakly equivalent, when the
    /// instance can tell.
    pub matches_canonical: Option<bool>,
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    /// `section_y` must be a weak section of the level-`(n-1)` Ganea map of
    /// `Y`, factored the way the instance factors it.
    pub fn synthesize_section(
        &self,
        cofibre: &CofibreSequence<C::Object, C::Morphism>,
        section_y: &WeakLifting<C::Object, C::Morphism>,
        n: usize,
    ) -> Result<SectionSynthesis<C::Object, C::Morphism>> {
        let c = self.cat;
        if n == 0 {
            return Err(Error::Precondition("synthesis starts at level 1".into()));
        }
        let (f, k, f_bar, p) = (&cofibre.f, cofibre.k(), cofibre.f_bar(), cofibre.p());
        let ganea_p = self.ganea_maps(p, n - 1)?;
        let p_y = &ganea_p.source.levels[n - 1].map;
        let p_c = &ganea_p.target.levels[n - 1].map;
        if section_y.g != *p_y || section_y.f != c.identity(&c.target(p_y)) {
            return Err(Error::InvalidWitness(format!("not a weak section of the level-{} Ganea map of Y", n - 1)));
        }
        self.check_weak_lifting(section_y).map_err(Error::InvalidWitness)?;
        if section_y.factorization != c.f_factorize(p_y)? {
            return Err(Error::InvalidWitness("section uses a foreign factorization".into()));
        }
        let e_c = c.f_factorize(p_c)?;
        let e_map = c.f_factorization_map(p_y, p_c, &ganea_p.maps[n - 1], p)?;
        let fibre = c.pullback(f_bar, &e_c.second)?;
        let epsilon = c.c_factorize(&fibre.pr_f)?;
        let g_n = c.pushout(&epsilon.first, &fibre.pr_p)?;
        let fq = c.compose(f_bar, &epsilon.second)?;
        let p_n = c
            .pushout_mediator(&g_n, &fq, &e_c.second)?
            .ok_or_else(|| Error::Precondition("fibre square does not commute".into()))?;

        let gs = c.compose(&e_map, &section_y.s)?;
        let gsf = c.compose(&gs, f)?;
        let lambda = c
            .pullback_mediator(&fibre, k, &gsf)?
            .ok_or_else(|| Error::Precondition("A -> CA and A -> E_C disagree over C".into()))?;
        let top = c.compose(&epsilon.first, &lambda)?;
        let square = LiftingSquare { left: k.clone(), right: epsilon.second.clone(), top, bottom: c.identity(cofibre.cone_object()) };
        let q_prime = c.lift(&square)?.ok_or_else(|| Error::LiftFailure("cone does not lift to ĈA".into()))?;
        let u = c.compose(&g_n.in_i, &q_prime)?;
        let v = c.compose(&g_n.in_g, &gs)?;
        let sigma = c
            .pushout_mediator(&cofibre.pushout, &u, &v)?
            .ok_or_else(|| Error::Precondition("section legs disagree on A".into()))?;
        if c.compose(&p_n, &sigma)? != c.identity(cofibre.object()) {
            return Err(Error::InvalidWitness("p_n ∘ σ = id_C".into()));
        }
        let canonical = self.ganea_tower(cofibre.object(), n)?.levels[n].object.clone();
        let matches_canonical = c.objects_weakly_equivalent(&g_n.object, &canonical);
        Ok(SectionSynthesis {
            n,
            cofibre: cofibre.clone(),
            section_y: section_y.clone(),
            ganea_p,
            e_c,
            e_map,
            fibre,
            epsilon,
            g_n,
            p_n,
            lambda,
            q_prime,
            sigma,
            canonical,
            matches_canonical,
        })
    }

    /// Synthesis for the cofibre of `f: A -> Y`, computing the weak section of
    /// the level-`(n-1)` Ganea map of `Y` itself.
    pub fn synthesize_for(&self, f: &C::Morphism, n: usize) -> Result<SectionSynthesis<C::Object, C::Morphism>> {
        if n == 0 {
            return Err(Error::Precondition("synthesis starts at level 1".into()));
        }
        let cofibre = self.cofibre_sequence(f)?;
        let section = self.section_below(&self.cat.target(f), n)?;
        self.synthesize_section(&cofibre, &section, n)
    }

    fn section_below(&self, y: &C::Object, n: usize) -> Result<WeakLifting<C::Object, C::Morphism>> {
        let tower = self.ganea_tower(y, n - 1)?;
        self.weak_section(&tower.levels[n - 1].map)?
            .ok_or_else(|| Error::Precondition(format!("Y has no weak section at level {}", n - 1)))
    }

    /// Synthesis at the outer step of a certificate: its cofibre sequence,
    /// a computed weak section for the inner object and level `value()`.
    pub fn synthesize_from_certificate(
        &self,
        cert: &IndcatCertificate<C::Object, C::Morphism>,
    ) -> Result<SectionSynthesis<C::Object, C::Morphism>> {
        let IndcatCertificate::Step { cofibre, .. } = cert else {
            return Err(Error::Precondition("a base certificate has no cofibre sequence".into()));
        };
        let n = cert.value();
        let section = self.section_below(&self.cat.target(&cofibre.f), n)?;
        self.synthesize_section(cofibre, &section, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainMap, Complex};
    use crate::instance::ChainInstance;

    #[test]
    fn sphere_into_disc() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let f = ChainMap::zero(Complex::sphere(1), Complex::disc(3));
        let s = e.synthesize_for(&f, 1).unwrap();
        assert_eq!(s.matches_canonical, Some(true));
        assert!(s.p_n.after(&s.sigma).unwrap().is_identity());
    }

    #[test]
    fn level_two() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let f = ChainMap::identity(Complex::sphere(0));
        let s = e.synthesize_for(&f, 2).unwrap();
        assert_eq!(s.matches_canonical, Some(true));
    }

    #[test]
    fn level_zero_rejected() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let f = ChainMap::identity(Complex::sphere(0));
        assert!(matches!(e.synthesize_for(&f, 0), Err(Error::Precondition(_))));
    }
}
