use serde::{Deserialize, Serialize};

use super::{Engine, WeakLifting};
use crate::error::{Error, Result};
use crate::jcat::{Factorization, PullbackSquare, PushoutSquare, StructuredCategory};

/// The join of `f: A -> B` and `g: C -> B`.
///
/// ```text
///   E' --f̄--> E <--τ-- C
///   | \       |
///   p̄  i      p
///   |   Z -σ->E
///   v   |
///   A --> A *_B C --> B
/// ```
/// `pullback.pr_f` is `p̄: E' -> A` and `pullback.pr_p` is `f̄: E' -> E`; the
/// pushout is of `i` and `p̄`, so `pushout.in_i: Z -> A *_B C` and
/// `pushout.in_g: A -> A *_B C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinDiagram<O, M> {
    pub f: M,
    pub g: M,
    pub g_factorization: Factorization<O, M>,
    pub pullback: PullbackSquare<O, M>,
    pub f_bar_factorization: Factorization<O, M>,
    pub pushout: PushoutSquare<O, M>,
    pub join_map: M,
}

impl<O, M> JoinDiagram<O, M> {
    pub fn object(&self) -> &O {
        &self.pushout.object
    }

    /// The homotopy fibre `E'`.
    pub fn fibre(&self) -> &O {
        &self.pullback.object
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaneaLevel<O, M> {
    pub object: O,
    pub map: M,
    /// Absent at level zero.
    pub join: Option<JoinDiagram<O, M>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaneaTower<O, M> {
    pub base: O,
    pub levels: Vec<GaneaLevel<O, M>>,
}

impl<O, M> GaneaTower<O, M> {
    pub fn level(&self, n: usize) -> &GaneaLevel<O, M> {
        &self.levels[n]
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Towers over both ends of `φ: B -> B'` and the induced maps
/// `G_k(φ): G_k B -> G_k B'` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaneaMaps<O, M> {
    pub phi: M,
    pub source: GaneaTower<O, M>,
    pub target: GaneaTower<O, M>,
    pub maps: Vec<M>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatResult<O, M> {
    /// `None` when no level up to `max_n` admits a weak section.
    pub value: Option<usize>,
    /// Weak section of the Ganea map at level `value`.
    pub witness: Option<WeakLifting<O, M>>,
    pub tower: GaneaTower<O, M>,
}

impl<'c, C: StructuredCategory> Engine<'c, C> {
    pub fn join(&self, f: &C::Morphism, g: &C::Morphism) -> Result<JoinDiagram<C::Object, C::Morphism>> {
        let c = self.cat;
        if c.target(f) != c.target(g) {
            return Err(Error::TargetMismatch("join needs a common target".into()));
        }
        let g_factorization = c.f_factorize(g)?;
        let pullback = c.pullback(f, &g_factorization.second)?;
        let f_bar_factorization = c.c_factorize(&pullback.pr_p)?;
        let pushout = c.pushout(&f_bar_factorization.first, &pullback.pr_f)?;
        let through_z = c.compose(&g_factorization.second, &f_bar_factorization.second)?;
        let join_map = c
            .pushout_mediator(&pushout, &through_z, f)?
            .ok_or_else(|| Error::Precondition("join legs do not agree on E'".into()))?;
        Ok(JoinDiagram { f: f.clone(), g: g.clone(), g_factorization, pullback, f_bar_factorization, pushout, join_map })
    }

    /// The map between join objects induced by `a: A -> A'`, `cc: C -> C'`,
    /// `b: B -> B'` with `f' a = b f` and `g' cc = b g`.
    pub fn join_map_between(
        &self,
        from: &JoinDiagram<C::Object, C::Morphism>,
        to: &JoinDiagram<C::Object, C::Morphism>,
        a: &C::Morphism,
        cc: &C::Morphism,
        b: &C::Morphism,
    ) -> Result<C::Morphism> {
        let c = self.cat;
        let e = c.f_factorization_map(&from.g, &to.g, cc, b)?;
        let u = c.compose(a, &from.pullback.pr_f)?;
        let v = c.compose(&e, &from.pullback.pr_p)?;
        let e_prime = c
            .pullback_mediator(&to.pullback, &u, &v)?
            .ok_or_else(|| Error::NonFunctorial("induced map misses the target pullback".into()))?;
        let z = c.c_factorization_map(&from.pullback.pr_p, &to.pullback.pr_p, &e_prime, &e)?;
        let u = c.compose(&to.pushout.in_i, &z)?;
        let v = c.compose(&to.pushout.in_g, a)?;
        c.pushout_mediator(&from.pushout, &u, &v)?
            .ok_or_else(|| Error::NonFunctorial("induced maps do not agree on E'".into()))
    }

    pub fn ganea_tower(&self, b: &C::Object, n: usize) -> Result<GaneaTower<C::Object, C::Morphism>> {
        let mut tower = self.ganea_base(b);
        for _ in 0..n {
            self.extend(&mut tower)?;
        }
        Ok(tower)
    }

    fn ganea_base(&self, b: &C::Object) -> GaneaTower<C::Object, C::Morphism> {
        let zero = self.cat.zero_object();
        let map = self.cat.zero_morphism(&zero, b);
        GaneaTower { base: b.clone(), levels: vec![GaneaLevel { object: zero, map, join: None }] }
    }

    fn extend(&self, tower: &mut GaneaTower<C::Object, C::Morphism>) -> Result<()> {
        let zero = self.cat.zero_morphism(&self.cat.zero_object(), &tower.base);
        let join = self.join(&zero, &tower.levels[tower.top()].map)?;
        tower.levels.push(GaneaLevel { object: join.object().clone(), map: join.join_map.clone(), join: Some(join) });
        Ok(())
    }

    /// `G_k(φ)` for `k = 0..=n`, each with `p_k^{B'} G_k(φ) = φ p_k^B`.
    pub fn ganea_maps(&self, phi: &C::Morphism, n: usize) -> Result<GaneaMaps<C::Object, C::Morphism>> {
        let c = self.cat;
        let source = self.ganea_tower(&c.source(phi), n)?;
        let target = self.ganea_tower(&c.target(phi), n)?;
        let zero = c.zero_object();
        let id0 = c.identity(&zero);
        let mut maps = vec![id0.clone()];
        for k in 1..=n {
            let (from, to) = (source.levels[k].join.as_ref(), target.levels[k].join.as_ref());
            let m = self.join_map_between(from.expect("level >= 1"), to.expect("level >= 1"), &id0, &maps[k - 1], phi)?;
            maps.push(m);
        }
        Ok(GaneaMaps { phi: phi.clone(), source, target, maps })
    }

    pub fn ganea_map(&self, phi: &C::Morphism, n: usize) -> Result<C::Morphism> {
        Ok(self.ganea_maps(phi, n)?.maps.pop().expect("level zero always present"))
    }

    /// Smallest `n <= max_n` whose Ganea map admits a weak section.
    pub fn cat_of(&self, b: &C::Object) -> Result<CatResult<C::Object, C::Morphism>> {
        let mut tower = self.ganea_base(b);
        loop {
            let n = tower.top();
            if let Some(w) = self.weak_section(&tower.levels[n].map)? {
                return Ok(CatResult { value: Some(n), witness: Some(w), tower });
            }
            if n >= self.config.max_n {
                return Ok(CatResult { value: None, witness: None, tower });
            }
            self.extend(&mut tower)?;
        }
    }
}
