//! Enhanced level graphs indexing the boundary strata of a generalized
//! stratum.
//!
//! * [`LevelGraph`] is the graph itself (vertices with genus, ambient
//!   component and depth, labelled legs, downward edges with enhancements);
//!   depth `i` stands for level `-i`.
//! * [`LevelGraph::canonical`] relabels vertices and edges into a canonical
//!   form; legs are never permuted since marked points are labelled.
//! * [`ProngData`] collects the lcm/product/twist-index integers of a graph.
//! * [`LevelStratum`] is the generalized stratum of one level, including the
//!   residue conditions induced through the auxiliary-graph construction.
//! * [`Realizability`] is the swappable predicate deciding which candidate
//!   graphs bound the stratum; [`ResidueRealizability`] is the default.
//! * [`enumerate_lg1`] and [`BoundaryCache`] produce two-level and
//!   multi-level graphs, deduplicated by canonical form.

mod cache;
mod enumerate;
mod error;
mod graph;
mod levels;
mod ops;
mod prong;
mod realize;

pub use cache::{BoundaryCache, GraphInfo, GraphList, Lg1};
pub use enumerate::{enumerate_lg1, enumerate_lg1_with};
pub use error::GraphError;
pub use graph::{Canonical, Edge, Leg, LevelGraph, Vertex};
pub use levels::{HalfEdge, LevelStratum, PointSource};
pub use ops::Glued;
pub use prong::ProngData;
pub use realize::{residue_obstructions, Realizability, Rejection, ResidueRealizability};
