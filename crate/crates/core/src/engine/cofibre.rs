use serde::{Deserialize, Serialize};

use super::Engine;
use crate::error::{Error, Result};
use crate::jcat::{CommutingSquare, Factorization, PushoutSquare, StructuredCategory};

/// `A -f-> Y -p-> C` with `C` the pushout of `f` and the cone inclusion
/// `k: A -> CA`. `pushout.in_i` is `f̄: CA -> C`, `pushout.in_g` is `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofibreSequence<O, M> {
    pub f: M,
    pub cone: Factorization<O, M>,
    pub pushout: PushoutSquare<O, M>,
}

impl<O, M> CofibreSequence<O, M> {
    pub fn object(&self) -> &O {
        &self.pushout.object
    }

    pub fn p(&self) -> &M {
        &self.pushout.in_g
    }

    pub fn f_bar(&self) -> &M {
        &self.pushout.in_i
    }

    pub fn k(&self) -> &M {
        &self.cone.first
    }

    pub fn cone_object(&self) -> &O {
        &self.cone.middle
    }
}

/// Pushout of `a: W -> A` along the cofibration of a C-factorization of
/// `f': W -> X`. `pushout.in_i: X' -> B`, `pushout.in_g: A -> B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakPushout<O, M> {
    pub factorization: Factorization<O, M>,
    pub pushout: PushoutSquare<O, M>,
}

/// Which leg of a square gets replaced when testing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Leg {
    Top,
    Left,
    Right,
    Bottom,
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    pub fn weak_pushout(
        &self,
        f_prime: &C::Morphism,
        a: &C::Morphism,
    ) -> Result<WeakPushout<C::Object, C::Morphism>> {
        let factorization = self.cat.c_factorize(f_prime)?;
        let pushout = self.cat.pushout(&factorization.first, a)?;
        Ok(WeakPushout { factorization, pushout })
    }

    pub fn cofibre_sequence(&self, f: &C::Morphism) -> Result<CofibreSequence<C::Object, C::Morphism>> {
        let c = self.cat;
        let to_zero = c.zero_morphism(&c.source(f), &c.zero_object());
        let cone = c.c_factorize(&to_zero)?;
        let pushout = c.pushout(&cone.first, f)?;
        Ok(CofibreSequence { f: f.clone(), cone, pushout })
    }

    fn check_commutes(&self, sq: &CommutingSquare<C::Morphism>) -> Result<()> {
        let c = self.cat;
        if c.compose(&sq.right, &sq.top)? != c.compose(&sq.bottom, &sq.left)? {
            return Err(Error::Precondition("square does not commute".into()));
        }
        Ok(())
    }

    /// Replaces `leg` (right or bottom) by a fibration and asks whether the
    /// comparison map into the strict pullback is a weak equivalence.
    pub fn is_homotopy_pullback(&self, sq: &CommutingSquare<C::Morphism>, leg: Leg) -> Result<bool> {
        self.check_commutes(sq)?;
        let c = self.cat;
        let cmp = match leg {
            Leg::Right => {
                let fact = c.f_factorize(&sq.right)?;
                let pb = c.pullback(&sq.bottom, &fact.second)?;
                c.pullback_mediator(&pb, &sq.left, &c.compose(&fact.first, &sq.top)?)?
            }
            Leg::Bottom => {
                let fact = c.f_factorize(&sq.bottom)?;
                let pb = c.pullback(&sq.right, &fact.second)?;
                c.pullback_mediator(&pb, &sq.top, &c.compose(&fact.first, &sq.left)?)?
            }
            _ => return Err(Error::Precondition("pullback test replaces the right or bottom leg".into())),
        };
        let cmp = cmp.ok_or_else(|| Error::Precondition("comparison map does not exist".into()))?;
        Ok(c.is_weq(&cmp))
    }

    /// Replaces `leg` (left or top) by a cofibration and asks whether the
    /// comparison map out of the strict pushout is a weak equivalence.
    pub fn is_homotopy_pushout(&self, sq: &CommutingSquare<C::Morphism>, leg: Leg) -> Result<bool> {
        self.check_commutes(sq)?;
        let c = self.cat;
        let cmp = match leg {
            Leg::Left => {
                let fact = c.c_factorize(&sq.left)?;
                let po = c.pushout(&fact.first, &sq.top)?;
                c.pushout_mediator(&po, &c.compose(&sq.bottom, &fact.second)?, &sq.right)?
            }
            Leg::Top => {
                let fact = c.c_factorize(&sq.top)?;
                let po = c.pushout(&fact.first, &sq.left)?;
                c.pushout_mediator(&po, &c.compose(&sq.right, &fact.second)?, &sq.bottom)?
            }
            _ => return Err(Error::Precondition("pushout test replaces the left or top leg".into())),
        };
        let cmp = cmp.ok_or_else(|| Error::Precondition("comparison map does not exist".into()))?;
        Ok(c.is_weq(&cmp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology::{homology_dims, GradedDims};
    use crate::chain::{ChainMap, Complex};
    use crate::instance::ChainInstance;

    #[test]
    fn cofibre_of_sphere_to_zero() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let f = ChainMap::zero(Complex::sphere(1), Complex::zero());
        let cs = e.cofibre_sequence(&f).unwrap();
        assert_eq!(homology_dims(cs.object()), GradedDims::new([(2, 1)]));
        assert!(inst.is_cofibration(cs.k()));
    }

    #[test]
    fn squares() {
        let inst = ChainInstance::default();
        let e = Engine::new(&inst);
        let s = Complex::sphere(0);
        let z = Complex::zero();
        let id = ChainMap::identity(s.clone());
        let sq = CommutingSquare { top: id.clone(), left: id.clone(), right: id.clone(), bottom: id.clone() };
        for leg in [Leg::Right, Leg::Bottom] {
            assert!(e.is_homotopy_pullback(&sq, leg).unwrap());
        }
        for leg in [Leg::Left, Leg::Top] {
            assert!(e.is_homotopy_pushout(&sq, leg).unwrap());
        }
        let sq = CommutingSquare {
            top: ChainMap::zero(z.clone(), z.clone()),
            left: ChainMap::zero(z.clone(), s.clone()),
            right: ChainMap::zero(z.clone(), s.clone()),
            bottom: id.clone(),
        };
        assert!(e.is_homotopy_pushout(&sq, Leg::Left).unwrap());
        let sq = CommutingSquare {
            top: ChainMap::zero(s.clone(), z.clone()),
            left: ChainMap::zero(s.clone(), z.clone()),
            right: ChainMap::zero(z.clone(), z.clone()),
            bottom: ChainMap::zero(z.clone(), z.clone()),
        };
        // 0 ← S → 0 has homotopy pushout the suspension of S.
        assert!(!e.is_homotopy_pushout(&sq, Leg::Left).unwrap());
        assert!(matches!(e.is_homotopy_pushout(&sq, Leg::Right), Err(Error::Precondition(_))));
    }
}
