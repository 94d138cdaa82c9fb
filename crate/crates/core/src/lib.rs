//! Quandle cohomology invariants of knot and link diagrams.

pub mod cli;
pub mod cohomology;
pub mod coloring;
pub mod diagram;
pub mod fuzz;
pub mod invariants;
pub mod linalg;
pub mod moves;
pub mod quandle;
