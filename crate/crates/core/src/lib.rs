//! Arithmetical structures on paths with one doubled edge.
//!
//! A structure assigns positive integer labels to the vertices of the graph
//! `DPath(m, n)` (two paths of lengths m and n joined by a doubled edge) so
//! that every label divides the sum of its neighbors' labels and the labels
//! are globally coprime. This crate validates such labelings, reduces them to
//! their unique smooth ancestors, enumerates them exhaustively, counts them
//! in closed form for arm lengths up to 3, and computes the critical group of
//! each structure — with every closed form cross-checked against an
//! independent brute-force route.
//!
//! All arithmetic is exact: big integers for labels and counts, big rationals
//! for asymptotic constants. The heavy enumeration loops are data parallel
//! via rayon when the (default) `parallel` feature is enabled; disabling it
//! leaves byte-identical results, just computed sequentially.

pub mod ballot;
pub mod counting;
pub mod critical;
pub mod enumeration;
pub mod residue;
pub mod smoothing;
pub mod structure;

pub use counting::{CountEntry, CountTable, ExactRational, Provenance};
pub use structure::{ArithStructure, DVector, Shape, StructureError, Vertex};
