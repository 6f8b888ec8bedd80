use serde::{Deserialize, Serialize};

use super::{Engine, WeakLifting};
use crate::error::{Error, Result};
use crate::jcat::{Factorization, FactorizationKind, Replacement, StructuredCategory};

/// `X ≫ Y`: a map `α: QX -> RY`, its F-factorization `α = p ∘ τ` and
/// `s: Y -> E` with `p ∘ s = i_Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationWitness<O, M> {
    pub source: O,
    pub target: O,
    pub qx: Replacement<O, M>,
    pub ry: Replacement<O, M>,
    pub alpha: M,
    pub factorization: Factorization<O, M>,
    pub s: M,
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    /// Searches the instance's candidates up to the configured budget.
    /// `None` means no candidate within budget worked, not a proof of absence.
    pub fn dominates(
        &self,
        x: &C::Object,
        y: &C::Object,
    ) -> Result<Option<DominationWitness<C::Object, C::Morphism>>> {
        let c = self.cat;
        let qx = c.cofibrant_replace(x)?;
        let ry = c.fibrant_replace(y)?;
        for alpha in c.domination_candidates(&qx, &ry).take(self.config.domination_budget) {
            let factorization = c.f_factorize(&alpha)?;
            if let Some(s) = c.lift_through(&ry.map, &factorization.second)? {
                return Ok(Some(DominationWitness {
                    source: x.clone(),
                    target: y.clone(),
                    qx,
                    ry,
                    alpha,
                    factorization,
                    s,
                }));
            }
        }
        Ok(None)
    }

    /// `X ≫ Y` from a weak section of `f: X -> Y`.
    pub fn domination_from_weak_section(
        &self,
        f: &C::Morphism,
        w: &WeakLifting<C::Object, C::Morphism>,
    ) -> Result<DominationWitness<C::Object, C::Morphism>> {
        let c = self.cat;
        let (x, y) = (c.source(f), c.target(f));
        if w.g != *f || w.f != c.identity(&y) {
            return Err(Error::InvalidWitness("not a weak section of the given map".into()));
        }
        self.check_weak_lifting(w).map_err(Error::InvalidWitness)?;
        let qx = c.cofibrant_replace(&x)?;
        let ry = c.fibrant_replace(&y)?;
        let iq = c.compose(&ry.map, &w.factorization.second)?;
        let hg = c.f_factorize(&iq)?;
        let alpha = self.compose(&[&ry.map, f, &qx.map])?;
        let tau = self.compose(&[&hg.first, &w.factorization.first, &qx.map])?;
        let s = c.compose(&hg.first, &w.s)?;
        Ok(DominationWitness {
            source: x,
            target: y,
            qx,
            ry,
            alpha,
            factorization: Factorization { kind: FactorizationKind::F, first: tau, middle: hg.middle, second: hg.second },
            s,
        })
    }

    /// Checks every equation and class condition of a domination witness for
    /// `x ≫ y`; names the first that fails.
    pub fn check_domination(
        &self,
        w: &DominationWitness<C::Object, C::Morphism>,
        x: &C::Object,
        y: &C::Object,
    ) -> std::result::Result<(), String> {
        let c = self.cat;
        let err = |e: Error| e.to_string();
        if w.source != *x || w.target != *y {
            return Err("witness is for a different pair".into());
        }
        let (qx, ry, fact) = (&w.qx, &w.ry, &w.factorization);
        if c.target(&qx.map) != *x || c.source(&qx.map) != qx.object {
            return Err("p_X: QX -> X".into());
        }
        if !c.is_weq(&qx.map) || !c.is_fibration(&qx.map) {
            return Err("p_X is a trivial fibration".into());
        }
        if c.source(&ry.map) != *y || c.target(&ry.map) != ry.object {
            return Err("i_Y: Y -> RY".into());
        }
        if !c.is_weq(&ry.map) || !c.is_cofibration(&ry.map) {
            return Err("i_Y is a trivial cofibration".into());
        }
        if c.source(&w.alpha) != qx.object || c.target(&w.alpha) != ry.object {
            return Err("α: QX -> RY".into());
        }
        if fact.kind != FactorizationKind::F {
            return Err("factorization is not of F-type".into());
        }
        if c.compose(&fact.second, &fact.first).map_err(err)? != w.alpha {
            return Err("p ∘ τ = α".into());
        }
        if !c.is_weq(&fact.first) {
            return Err("τ is a weak equivalence".into());
        }
        if !c.is_fibration(&fact.second) {
            return Err("p is a fibration".into());
        }
        if c.compose(&fact.second, &w.s).map_err(err)? != ry.map {
            return Err("p ∘ s = i_Y".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{direct_sum, ChainMap, Complex};
    use crate::instance::{ChainInstance, FactorizationStrategy, ReplacementMode};

    #[test]
    fn domination_examples() {
        for inst in [
            ChainInstance::default(),
            ChainInstance::default().with_replacement(ReplacementMode::Generic),
        ] {
            let e = Engine::new(&inst);
            let x = direct_sum(&Complex::sphere(1), &Complex::sphere(2));
            let w = e.dominates(&x, &Complex::sphere(2)).unwrap().unwrap();
            assert_eq!(e.check_domination(&w, &x, &Complex::sphere(2)), Ok(()));
            assert!(e.dominates(&Complex::sphere(1), &Complex::sphere(2)).unwrap().is_none());
            assert!(e.dominates(&Complex::zero(), &Complex::disc(2)).unwrap().is_some());
            let w = e.dominates(&x, &x).unwrap().unwrap();
            assert_eq!(e.check_domination(&w, &x, &x), Ok(()));
        }
    }

    #[test]
    fn from_weak_section() {
        let inst = ChainInstance::default()
            .with_replacement(ReplacementMode::Generic)
            .with_strategy(FactorizationStrategy::Detour);
        let e = Engine::new(&inst);
        let x = direct_sum(&Complex::sphere(0), &Complex::sphere(0));
        let y = Complex::sphere(0);
        let f = ChainMap::new(x.clone(), y.clone(), [(0, crate::linalg::Mat::from_int_rows(2, &[&[1, 1]]))].into())
            .unwrap();
        let ws = e.weak_section(&f).unwrap().unwrap();
        let w = e.domination_from_weak_section(&f, &ws).unwrap();
        assert_eq!(e.check_domination(&w, &x, &y), Ok(()));
        let other = e.weak_section(&ChainMap::identity(y.clone())).unwrap().unwrap();
        assert!(matches!(e.domination_from_weak_section(&f, &other), Err(Error::InvalidWitness(_))));
    }
}
