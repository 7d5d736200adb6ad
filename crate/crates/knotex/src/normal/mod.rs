//! Normal surfaces carried by a handle structure.
//!
//! A surface in normal position meets every 0-handle in discs of finitely
//! many types, every 1-handle in sheets parallel to the core, and every
//! 2-handle in cross-discs.  This module enumerates the disc types
//! ([`census`]), expresses compatibility as integer matching equations
//! ([`system`]), realizes coordinate vectors as explicit cell complexes with
//! computed topology ([`realize`]), searches for all admissible vectors
//! under a weight bound ([`enumerate`]), and cuts the ambient structure
//! along a realized surface into a piece complex ([`cut`]).

pub mod census;
pub mod cut;
pub mod enumerate;
pub mod realize;
pub mod system;

pub use census::{
    enumerate_disc_types, sheet_families, zero_boundary_disc_types, zero_disc_types,
    BoundaryDiscType, DiscKind, DiscType, SheetFamily,
};
pub use cut::{cut_along, CellShape, CutComplex, CutComponent, CutError, Interface, Piece, SCell};
pub use enumerate::{enumerate_admissible, enumerate_admissible_with_limit, EnumError, EnumLimits};
pub use realize::{realize_surface, NormalSurface, RealizeError, SurfEdge, SurfFace};
pub use system::{
    bottom_sphere, matching_equations, peripheral_torus, solve, top_sphere, DerivedLevels,
    MatchingSystem, NormalCoordinates, SolveError,
};
