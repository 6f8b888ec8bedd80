//! Joins, Ganea towers, category, domination, cofibre sequences, inductive
//! category certificates and the section synthesizer, generic over any
//! [`StructuredCategory`].
//!
//! Every diagram the engine builds commutes on the nose; nothing here knows
//! about homotopies between morphisms.

mod certificate;
mod cofibre;
mod domination;
mod ganea;
mod synthesis;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jcat::{Factorization, FactorizationKind, StructuredCategory};

pub use certificate::{IndcatCertificate, Origin, VerifyFailure};
pub use cofibre::{CofibreSequence, Leg, WeakPushout};
pub use domination::DominationWitness;
pub use ganea::{CatResult, GaneaLevel, GaneaMaps, GaneaTower, JoinDiagram};
pub use synthesis::SectionSynthesis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Ganea levels tried before giving up on `cat`.
    pub max_n: usize,
    /// Candidates tried by [`Engine::dominates`] before reporting absence.
    pub domination_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_n: 4, domination_budget: 32 }
    }
}

pub struct Engine<'c, C: StructuredCategory> {
    pub cat: &'c C,
    pub config: EngineConfig,
}

/// `s` with `p ∘ s = f` for the F-factorization `g = p ∘ τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakLifting<O, M> {
    pub f: M,
    pub g: M,
    pub factorization: Factorization<O, M>,
    pub s: M,
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    pub fn new(cat: &'c C) -> Self {
        Engine { cat, config: EngineConfig::default() }
    }

    pub fn with_config(cat: &'c C, config: EngineConfig) -> Self {
        Engine { cat, config }
    }

    pub(crate) fn compose(&self, ms: &[&C::Morphism]) -> Result<C::Morphism> {
        let (last, rest) = ms.split_last().expect("at least one morphism");
        rest.iter().rev().try_fold((*last).clone(), |acc, m| self.cat.compose(m, &acc))
    }

    /// Weak lifting of `f` along `g`.
    pub fn weak_lifting(
        &self,
        f: &C::Morphism,
        g: &C::Morphism,
    ) -> Result<Option<WeakLifting<C::Object, C::Morphism>>> {
        if self.cat.target(f) != self.cat.target(g) {
            return Err(Error::TargetMismatch("weak lifting needs a common target".into()));
        }
        let factorization = self.cat.f_factorize(g)?;
        Ok(self.cat.lift_through(f, &factorization.second)?.map(|s| WeakLifting {
            f: f.clone(),
            g: g.clone(),
            factorization,
            s,
        }))
    }

    pub fn weak_section(
        &self,
        g: &C::Morphism,
    ) -> Result<Option<WeakLifting<C::Object, C::Morphism>>> {
        self.weak_lifting(&self.cat.identity(&self.cat.target(g)), g)
    }

    /// Checks every equation of a weak lifting; names the first that fails.
    pub fn check_weak_lifting(
        &self,
        w: &WeakLifting<C::Object, C::Morphism>,
    ) -> std::result::Result<(), String> {
        let c = self.cat;
        let fact = &w.factorization;
        if fact.kind != FactorizationKind::F {
            return Err("factorization is not of F-type".into());
        }
        let composite = c.compose(&fact.second, &fact.first).map_err(|e| e.to_string())?;
        if composite != w.g {
            return Err("p ∘ τ = g".into());
        }
        if !c.is_weq(&fact.first) {
            return Err("τ is a weak equivalence".into());
        }
        if !c.is_fibration(&fact.second) {
            return Err("p is a fibration".into());
        }
        let ps = c.compose(&fact.second, &w.s).map_err(|e| e.to_string())?;
        if ps != w.f {
            return Err("p ∘ s = f".into());
        }
        Ok(())
    }
}
