//! Exact affine models and crossing-counting projection.
//!
//! Every handle gets a concrete rational solid: 0-handles are translated
//! copies of one star-shaped corner block, 1-handles are straight prisms.
//! Normal discs become families of flat polygons hanging from boundary
//! curves, nested copies staying disjoint by construction, and straight-arc
//! families through the solids get exact projected crossing counts.

pub mod assign;
pub mod disc;
pub mod polyhedron;
pub mod project;

pub use assign::{
    assign_affine, trefoil_grid, AffineAssignment, AssignError, GridEmbedding, Prism, PrismError,
};
pub use disc::{
    disc_boundary, polygons_disjoint, realize_disc, CurveArc, DiscBoundary, DiscError, FlatDisc,
    SurfaceCurve,
};
pub use polyhedron::{corner_block, AffinePolyhedron, CornerBlock, FaceRole, PolyhedronError};
pub use project::{
    project_and_count, CrossingReport, HandleTag, PathSegment, ProjectError, StraightArcPath,
};
