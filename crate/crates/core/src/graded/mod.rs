//! Finite-dimensional Γ-graded algebras, graded modules and homogeneous
//! maps with the left-module Koszul sign rule, together with the abelian
//! operations and the projective-resolution Ext oracle.

mod algebra;
mod hom;
mod map;
mod module;
mod resolve;

pub use algebra::{GradedAlgebra, Tensor3};
pub use hom::{hom_graded, hom_graded_dim, map_coordinates, map_from_vec, map_vec, map_vec_len};
pub use map::{cokernel, cokernel_with_section, image, kernel, pullback, pushout, GradedMap};
pub use module::GradedModule;
pub use resolve::{dual_map, is_projective, ext_dim, ext_dim_alt, free_cover, free_cover_rev, generated_submodule, injective_cover, proj_resolution, ProjResolution};
