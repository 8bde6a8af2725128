//! Verification laboratory for exact edge-colorings of complete bipartite
//! graphs.
//!
//! The library is organised around a single data model, [`ColoredBigraph`]:
//! an exact k-edge-coloring of K_{a,b} stored as a color matrix. On top of it
//! sit
//!
//! * [`patterns`] — rainbow-pattern and monochromatic-target detectors plus an
//!   analytic containment calculus for complete bipartite hosts,
//! * [`structure`] — classifiers mapping rainbow-free colorings to the cases
//!   of the P4/P5/K13 structure theorems, with checkable witnesses,
//! * [`constructions`] — generators for the extremal lower-bound colorings,
//! * [`catalog`] — closed-form bipartite Gallai-Ramsey values, bipartition
//!   statistics and bound machinery,
//! * [`search`] — canonical forms, symmetry-reduced enumeration, avoidance
//!   search and the machine-check harness for the structure theorems.

pub mod bigraph;
pub mod catalog;
pub mod certificate;
pub mod constructions;
pub mod patterns;
pub mod search;
pub mod structure;
pub mod target;

pub use bigraph::{ColorSet, ColoredBigraph, Side, Vertex};
pub use certificate::{Certificate, Claim};
pub use target::{Component, RainbowPattern, TargetGraph};
