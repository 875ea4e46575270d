//! Line complexes (Speiser graphs), triangulated Aleksandrov surfaces, and
//! machine-checkable hyperbolicity certificates.
//!
//! The crate has five subsystems:
//!
//! * [`line_complex`] — labeled bipartite degree-q graphs, face tracing from
//!   the derived rotation system, exact vertex excess and mean-excess balls;
//! * [`partitioner`] — connected-subgraph splitting, bounded-piece partitions,
//!   and the excess-sum certificate checkers;
//! * [`tiling`] — triangle tilings with total angles and angular curvature,
//!   the tiling condition checkers, the combinatorial Euler identity and the
//!   isoperimetric constant ledger;
//! * [`spherical`] — model-triangle formulas on the unit sphere and plane;
//! * [`example_factory`] — the staged branched-covering construction of the
//!   parabolic counterexample, with exact symbolic growth records.
//!
//! All excess arithmetic is exact (`num_rational::BigRational`); geometric
//! checks are `f64` with documented tolerances.

pub mod exact;
pub mod example_factory;
pub mod line_complex;
pub mod partitioner;
pub mod spherical;
pub mod tiling;

pub use exact::PiRational;
