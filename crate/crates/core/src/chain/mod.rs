//! Chain complexes over the rationals and the constructions on them.

mod complex;
mod constructions;
mod hom;
pub mod homology;
mod map;

pub use complex::{Complex, ComplexDoc, Violation, ViolationKind};
pub use constructions::{
    cocylinder_factor, cocylinder_map, cone, cylinder_factor, cylinder_map, direct_sum,
    direct_sum_map, direct_sum_with_maps, dualize, dualize_map, pullback, pullback_mediator,
    pushout, pushout_mediator, shift, Cone, DirectSum, Pullback, Pushout,
};
pub use hom::{fill_square, hom_space, lift_through, HomSpace, HomSystem};
pub use homology::{homology_dims, is_acyclic, is_quasi_iso, GradedDims, Zigzag};
pub use map::{ChainMap, MapDoc};
