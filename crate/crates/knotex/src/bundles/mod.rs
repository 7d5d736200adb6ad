//! Parallelity bundles in the cut-open manifold.
//!
//! After cutting along a normal surface, some pieces are products between
//! two parallel surface cells.  This module finds them
//! ([`find_parallelity_handles`]), glues them into interval bundles over
//! identified base surfaces ([`assemble_bundle`], [`verify_gpb`]), and
//! simplifies them: annulus bundles pleated against the boundary are removed
//! ([`find_annular_move`], [`apply_annular_move`]) and disc bundles collapse
//! to single thickened discs ([`replace_disc_bundles`]).  It also hosts the
//! two boundary operations the simplification loop relies on: gluing a solid
//! torus back onto the knot boundary ([`attach_solid_torus`]) and putting
//! boundary curves into standard position ([`straighten_boundary_curve`]).

pub mod assemble;
pub mod attach;
pub mod flags;
pub mod moves;
pub mod straighten;
pub mod synth;

pub use assemble::{
    assemble_bundle, verify_gpb, BaseKind, BundleComponent, BundleError, ClauseCheck, GpbReport,
    ParallelityBundle,
};
pub use attach::{attach_solid_torus, AttachError};
pub use flags::find_parallelity_handles;
pub use moves::{
    apply_annular_move, find_annular_move, replace_disc_bundles, AnnularMove, MoveError,
    ReplaceError,
};
pub use straighten::{same_class, straighten_boundary_curve, StraightenError};
