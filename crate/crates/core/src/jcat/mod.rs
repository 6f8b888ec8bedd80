//! The contract for a pointed category with fibrations, cofibrations and weak
//! equivalences satisfying (J1), (J2), (M1) and (M2), plus a sampled audit of
//! those axioms.
//!
//! Everything in [`crate::engine`] is written against [`StructuredCategory`]
//! only; the chain complex instance lives in [`crate::instance`].

mod audit;

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use audit::{
    check_j1, check_j2, check_m1m2, replay, Axiom, AxiomFailure, AxiomReport, Sampler,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorizationKind {
    /// Weak equivalence (also a cofibration) followed by a fibration.
    F,
    /// Cofibration followed by a trivial fibration.
    C,
}

/// `second ∘ first`, factored through `middle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization<O, M> {
    pub kind: FactorizationKind,
    pub first: M,
    pub middle: O,
    pub second: M,
}

/// Strict pullback of `f: A -> B` and `p: E -> B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackSquare<O, M> {
    pub object: O,
    /// To `A`; the base extension of `p`.
    pub pr_f: M,
    /// To `E`; the base extension of `f`.
    pub pr_p: M,
}

/// Strict pushout of `i: A -> X` and `g: A -> Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutSquare<O, M> {
    pub object: O,
    /// From `X`; the cobase extension of `g`.
    pub in_i: M,
    /// From `Y`; the cobase extension of `i`.
    pub in_g: M,
}

/// ```text
///   A --top--> E
///   |          |
///  left      right
///   v          v
///   B -bottom> X
/// ```
/// A filler is `h: B -> E` with `h ∘ left = top` and `right ∘ h = bottom`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingSquare<M> {
    pub left: M,
    pub right: M,
    pub top: M,
    pub bottom: M,
}

/// A commuting square `right ∘ top = bottom ∘ left` out of the corner `D`.
///
/// ```text
///   D --top--> C
///   |          |
///  left      right
///   v          v
///   A -bottom> B
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingSquare<M> {
    pub top: M,
    pub left: M,
    pub right: M,
    pub bottom: M,
}

/// A cofibrant model `p_X: QX -> X` (trivial fibration) or a fibrant model
/// `i_X: X -> RX` (trivial cofibration), kept with its object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement<O, M> {
    pub object: O,
    pub map: M,
}

pub trait StructuredCategory: Sync {
    type Object: Clone + PartialEq + Debug + Send + Sync;
    type Morphism: Clone + PartialEq + Debug + Send + Sync;

    fn zero_object(&self) -> Self::Object;
    fn source(&self, m: &Self::Morphism) -> Self::Object;
    fn target(&self, m: &Self::Morphism) -> Self::Object;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    fn zero_morphism(&self, x: &Self::Object, y: &Self::Object) -> Self::Morphism;

    fn is_fibration(&self, m: &Self::Morphism) -> bool;
    fn is_cofibration(&self, m: &Self::Morphism) -> bool;
    fn is_weq(&self, m: &Self::Morphism) -> bool;

    fn f_factorize(&self, m: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>>;
    fn c_factorize(&self, m: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>>;

    /// For a commuting square `g ∘ top = bottom ∘ f`, the induced map between
    /// the middles of the F-factorizations of `f` and `g`, compatible with
    /// both legs.
    fn f_factorization_map(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        top: &Self::Morphism,
        bottom: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    /// As [`StructuredCategory::f_factorization_map`] for C-factorizations.
    fn c_factorization_map(
        &self,
        f: &Self::Morphism,
        g: &Self::Morphism,
        top: &Self::Morphism,
        bottom: &Self::Morphism,
    ) -> Result<Self::Morphism>;

    fn pullback(
        &self,
        f: &Self::Morphism,
        p: &Self::Morphism,
    ) -> Result<PullbackSquare<Self::Object, Self::Morphism>>;

    /// The unique `m` with `pr_f m = u` and `pr_p m = v`; `None` when `(u, v)`
    /// does not form a cone.
    fn pullback_mediator(
        &self,
        square: &PullbackSquare<Self::Object, Self::Morphism>,
        u: &Self::Morphism,
        v: &Self::Morphism,
    ) -> Result<Option<Self::Morphism>>;

    fn pushout(
        &self,
        i: &Self::Morphism,
        g: &Self::Morphism,
    ) -> Result<PushoutSquare<Self::Object, Self::Morphism>>;

    /// The unique `h` with `h in_i = u` and `h in_g = v`.
    fn pushout_mediator(
        &self,
        square: &PushoutSquare<Self::Object, Self::Morphism>,
        u: &Self::Morphism,
        v: &Self::Morphism,
    ) -> Result<Option<Self::Morphism>>;

    /// A filler for the square, if one exists. Existence is only promised for
    /// a cofibration against a fibration with one of them trivial.
    fn lift(&self, square: &LiftingSquare<Self::Morphism>) -> Result<Option<Self::Morphism>>;

    /// Some `s` with `p ∘ s = f`, if one exists.
    fn lift_through(
        &self,
        f: &Self::Morphism,
        p: &Self::Morphism,
    ) -> Result<Option<Self::Morphism>>;

    /// `p_X: QX -> X`.
    fn cofibrant_replace(&self, x: &Self::Object) -> Result<Replacement<Self::Object, Self::Morphism>>;
    /// `i_X: X -> RX`.
    fn fibrant_replace(&self, x: &Self::Object) -> Result<Replacement<Self::Object, Self::Morphism>>;
    /// `Qf` with `f ∘ p_X = p_Y ∘ Qf`.
    fn replace_map_cofibrant(&self, f: &Self::Morphism) -> Result<Self::Morphism>;
    /// `Rf` with `Rf ∘ i_X = i_Y ∘ f`.
    fn replace_map_fibrant(&self, f: &Self::Morphism) -> Result<Self::Morphism>;

    /// Candidate morphisms `QX -> RY` for a domination of `y` by `x`, most
    /// promising first. The engine stops after its search budget.
    fn domination_candidates<'a>(
        &'a self,
        _qx: &Replacement<Self::Object, Self::Morphism>,
        _ry: &Replacement<Self::Object, Self::Morphism>,
    ) -> Box<dyn Iterator<Item = Self::Morphism> + 'a> {
        Box::new(std::iter::empty())
    }

    /// Instance knowledge of weak equivalence between objects, when cheap.
    fn objects_weakly_equivalent(&self, _x: &Self::Object, _y: &Self::Object) -> Option<bool> {
        None
    }
}

/// Instances whose opposite category is realized concretely, so dual notions
/// can be computed by running the engine on duals.
pub trait Dualizing: StructuredCategory {
    fn dual_object(&self, x: &Self::Object) -> Self::Object;
    fn dual_morphism(&self, m: &Self::Morphism) -> Self::Morphism;
}
