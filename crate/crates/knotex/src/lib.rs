//! Handle decompositions of knot exteriors.
//!
//! The pipeline runs from a planar knot diagram to an integer upper bound:
//!
//! 1. [`diagram`] — planar diagrams (PD tuples), validation, Gauss import,
//!    writhe and kink moves.
//! 2. [`handles`] — a handle structure on the knot exterior in which every
//!    0-handle meets the rest of the decomposition in a fixed pattern.
//! 3. [`normal`] — normal surfaces carried by that structure: disc-type
//!    enumeration, matching equations, realization, and cutting.
//! 4. [`bundles`] — parallelity pieces of the cut-open manifold, their
//!    I-bundle assembly, and the simplification moves that shrink them.
//! 5. [`affine`] — exact rational affine models for every handle and disc,
//!    and a symbolically perturbed projection that counts crossings.
//! 6. [`ledger`] — the arithmetic that turns the counts into explicit
//!    integer bounds, packaged as replayable certificates.

pub mod affine;
pub mod bundles;
pub mod diagram;
pub mod geom;
pub mod handles;
pub mod ledger;
pub mod normal;
pub mod sample;

pub use diagram::Diagram;
