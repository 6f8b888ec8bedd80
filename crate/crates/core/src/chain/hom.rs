//! Chain-map existence questions as affine systems.
//!
//! A [`HomSystem`] has one unknown block per degree where source and target
//! are both nonzero, the commutation equations `d h = h d`, and any number of
//! extra equations `p ∘ h = v` or `h ∘ i = u`.

use std::collections::BTreeMap;

use rand::Rng;

use super::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{AffineSystem, Constraint, Mat, SolutionSpace, Term};

pub struct HomSystem {
    source: Complex,
    target: Complex,
    blocks: BTreeMap<i64, usize>,
    system: AffineSystem,
}

/// Every chain map satisfying a [`HomSystem`], as particular plus span.
pub struct HomSpace {
    source: Complex,
    target: Complex,
    degrees: Vec<i64>,
    space: SolutionSpace,
}

impl HomSystem {
    pub fn new(source: &Complex, target: &Complex) -> Self {
        let mut system = AffineSystem::new();
        let mut blocks = BTreeMap::new();
        for n in source.degrees() {
            if target.dim(n) > 0 {
                blocks.insert(n, system.unknown(target.dim(n), source.dim(n)));
            }
        }
        let mut hs = HomSystem { source: source.clone(), target: target.clone(), blocks, system };
        hs.add_commutation();
        hs
    }

    fn add_commutation(&mut self) {
        let (x, y) = (&self.source, &self.target);
        for n in x.degrees() {
            let (rows, cols) = (y.dim(n - 1), x.dim(n));
            if rows == 0 {
                continue;
            }
            let mut terms = Vec::new();
            if let Some(&b) = self.blocks.get(&n) {
                terms.push(Term::new(y.d(n).into_owned(), b, Mat::identity(cols)));
            }
            if let Some(&b) = self.blocks.get(&(n - 1)) {
                terms.push(Term::new(Mat::identity(rows).neg(), b, x.d(n).into_owned()));
            }
            if !terms.is_empty() {
                self.system
                    .constrain(Constraint::new(terms, Mat::zeros(rows, cols)))
                    .expect("shapes follow from the complexes");
            }
        }
    }

    /// Requires `p ∘ h = v`.
    pub fn post(&mut self, p: &ChainMap, v: &ChainMap) -> Result<&mut Self> {
        if p.source() != &self.target || v.source() != &self.source || v.target() != p.target() {
            return Err(Error::ShapeMismatch("post-composition constraint does not fit".into()));
        }
        for n in self.source.degrees() {
            let rows = p.target().dim(n);
            if rows == 0 {
                continue;
            }
            let terms = match self.blocks.get(&n) {
                Some(&b) => vec![Term::new(p.comp(n).into_owned(), b, Mat::identity(self.source.dim(n)))],
                None => vec![],
            };
            self.system.constrain(Constraint::new(terms, v.comp(n).into_owned()))?;
        }
        Ok(self)
    }

    /// Requires `h ∘ i = u`.
    pub fn pre(&mut self, i: &ChainMap, u: &ChainMap) -> Result<&mut Self> {
        if i.target() != &self.source || u.target() != &self.target || u.source() != i.source() {
            return Err(Error::ShapeMismatch("pre-composition constraint does not fit".into()));
        }
        for n in i.source().degrees() {
            let rows = self.target.dim(n);
            if rows == 0 {
                continue;
            }
            let terms = match self.blocks.get(&n) {
                Some(&b) => vec![Term::new(Mat::identity(rows), b, i.comp(n).into_owned())],
                None => vec![],
            };
            self.system.constrain(Constraint::new(terms, u.comp(n).into_owned()))?;
        }
        Ok(self)
    }

    fn assemble(&self, blocks: Vec<Mat>) -> ChainMap {
        let comps = self.blocks.keys().copied().zip(blocks).collect();
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
            .expect("solutions satisfy the commutation equations")
    }

    pub fn solve(&self) -> Option<ChainMap> {
        self.system.solve().map(|b| self.assemble(b))
    }

    pub fn solve_space(&self) -> Option<HomSpace> {
        let space = self.system.solve_space()?;
        Some(HomSpace {
            source: self.source.clone(),
            target: self.target.clone(),
            degrees: self.blocks.keys().copied().collect(),
            space,
        })
    }
}

impl HomSpace {
    fn build(&self, blocks: Vec<Mat>) -> ChainMap {
        let comps = self.degrees.iter().copied().zip(blocks).collect();
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
            .expect("solutions satisfy the commutation equations")
    }

    pub fn particular(&self) -> ChainMap {
        self.build(self.space.particular.clone())
    }

    /// Dimension of the homogeneous part.
    pub fn dimension(&self) -> usize {
        self.space.homogeneous.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = ChainMap> + '_ {
        self.space.homogeneous.iter().map(|g| self.build(g.clone()))
    }

    /// Particular solution plus random integer combination of generators.
    pub fn sample(&self, rng: &mut impl Rng, range: i64) -> ChainMap {
        self.build(self.space.sample(rng, range))
    }
}

/// Some `s` with `p ∘ s = f`, if one exists.
pub fn lift_through(f: &ChainMap, p: &ChainMap) -> Result<Option<ChainMap>> {
    if f.target() != p.target() {
        return Err(Error::TargetMismatch("lift through a map with a different target".into()));
    }
    let mut sys = HomSystem::new(f.source(), p.source());
    sys.post(p, f)?;
    Ok(sys.solve())
}

/// Some `h` with `h ∘ i = u` and `p ∘ h = v`, if one exists.
pub fn fill_square(
    i: &ChainMap,
    p: &ChainMap,
    u: &ChainMap,
    v: &ChainMap,
) -> Result<Option<ChainMap>> {
    let mut sys = HomSystem::new(i.target(), p.source());
    sys.pre(i, u)?.post(p, v)?;
    Ok(sys.solve())
}

/// All chain maps `x -> y`.
pub fn hom_space(x: &Complex, y: &Complex) -> HomSpace {
    HomSystem::new(x, y).solve_space().expect("the zero map is always a solution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cocylinder_factor, cylinder_factor};

    #[test]
    fn hom_dimensions() {
        assert_eq!(hom_space(&Complex::sphere(0), &Complex::sphere(0)).dimension(), 1);
        assert_eq!(hom_space(&Complex::sphere(0), &Complex::sphere(1)).dimension(), 0);
        // S(0) -> D(1): must land in cycles of degree 0, which is all of Q.
        assert_eq!(hom_space(&Complex::sphere(0), &Complex::disc(1)).dimension(), 1);
        // D(1) -> S(0): f d = 0 forces the degree 0 block to vanish.
        assert_eq!(hom_space(&Complex::disc(1), &Complex::sphere(0)).dimension(), 0);
        assert_eq!(hom_space(&Complex::disc(1), &Complex::sphere(1)).dimension(), 1);
    }

    #[test]
    fn sections() {
        let s0 = Complex::sphere(0);
        let id = ChainMap::identity(s0.clone());
        let fact = cocylinder_factor(&id).unwrap();
        let s = lift_through(&id, &fact.second).unwrap().unwrap();
        assert!(fact.second.after(&s).unwrap().is_identity());
        let zero = ChainMap::zero(Complex::zero(), s0.clone());
        let fact = cocylinder_factor(&zero).unwrap();
        assert!(lift_through(&id, &fact.second).unwrap().is_none());
    }

    #[test]
    fn square_filler() {
        // 0 >-> S(0) against the trivial fibration Cyl(id) ->> S(0).
        let s0 = Complex::sphere(0);
        let fact = cylinder_factor(&ChainMap::identity(s0.clone())).unwrap();
        let i = ChainMap::zero(Complex::zero(), s0.clone());
        let u = ChainMap::zero(Complex::zero(), fact.middle.clone());
        let v = ChainMap::identity(s0);
        let h = fill_square(&i, &fact.second, &u, &v).unwrap().unwrap();
        assert!(fact.second.after(&h).unwrap().is_identity());
    }
}
