//! Markovian (Szegedy-variant) quantum walks on finite graphs.
//!
//! The walk lives in the space of directed arcs: each undirected edge
//! contributes two oppositely oriented arcs, each vertex `j` a unit state
//! `psi_j` spreading amplitude `sqrt(1/deg(j))` over its outgoing arcs. One
//! step reflects through the span of all `psi_j` and then swaps arc
//! orientation. The operator is real orthogonal, so states stay real and
//! sparse throughout.
//!
//! The crate provides:
//!
//! - [`graph`]: validated graphs, the standard generators (paths, cycles,
//!   hypercubes, stars, graph products), exact rational transition
//!   probabilities, and the edge-list text format;
//! - [`arcspace`]: sparse arc states and the walk step, applied in time
//!   proportional to the state's support;
//! - [`analytic`]: closed-form propagated states on paths and cycles, and
//!   per-vertex probability profiles;
//! - [`pst`]: exhaustive perfect-state-transfer / periodicity detection and
//!   a verdicted claim suite over graph families;
//! - [`oracle`]: a dense matrix built independently from the operator's
//!   definition, used to cross-check the sparse path.
//!
//! Everything is generic over the [`Scalar`] amplitude type; the `f64`
//! aliases below are the working precision all shipped tolerances assume.
//!
//! ```
//! use markovpst::{Graph, WalkStep64};
//!
//! // A walker starting at one end of a 6-vertex path arrives exactly at
//! // the other end after 5 steps.
//! let g = Graph::path(6).unwrap();
//! let walk = WalkStep64::new(&g).unwrap();
//! let arrived = walk.evolve(&walk.psi(0).unwrap(), 5);
//! assert!((arrived.overlap(&walk.psi(5).unwrap()).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod analytic;
pub mod arcspace;
pub mod graph;
pub mod numfmt;
pub mod oracle;
pub mod pst;
pub mod scalar;

pub use arcspace::{ArcState, StateError, WalkStep};
pub use graph::{Graph, GraphError, ProductKind};
pub use scalar::Scalar;

/// Arc state at the default working precision.
pub type ArcState64 = arcspace::ArcState<f64>;
/// Single-precision arc state, for quick scans where 1e-5-level accuracy
/// suffices.
pub type ArcState32 = arcspace::ArcState<f32>;
/// Walk step at the default working precision.
pub type WalkStep64<'g> = arcspace::WalkStep<'g, f64>;
/// Closed-form propagated state at the default working precision.
pub type PropagatedState64 = analytic::PropagatedState<f64>;
/// Probability profile at the default working precision.
pub type ProbabilityProfile64 = analytic::ProbabilityProfile<f64>;
/// Transfer event at the default working precision.
pub type TransferEvent64 = pst::TransferEvent<f64>;
