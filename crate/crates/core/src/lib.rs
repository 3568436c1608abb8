//! Exact computational topology for compact 3-manifolds: semi-simplicial
//! triangulations, normal surface enumeration, and a certification pipeline
//! for showing that a closed orientable irreducible 3-manifold contains no
//! closed embedded two-sided incompressible surface.
//!
//! Everything is integer-exact; no floating point appears anywhere in the
//! decision paths.

pub mod data;
pub mod dehydrate;
pub mod enumerate;
pub mod homology;
pub mod linalg;
pub mod normal;
pub mod perm;
pub mod sig;
pub mod simplify;
pub mod skeleton;
pub mod tri;
