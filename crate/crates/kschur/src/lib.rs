//! Exact combinatorics of k-Schur functions with a t parameter.
//!
//! The crate builds the following tower, all over exact integer arithmetic:
//!
//! * [`partition`] — partitions, cells, hooks, dominance (French convention);
//! * [`cores`] — p-cores, degree, residues, and the bijection with
//!   k-bounded partitions;
//! * [`strong`] — strong (Bruhat) covers on cores, ribbon decompositions,
//!   and bottom strong strips with their unique chains;
//! * [`abc`] — affine Bruhat counter-tableaux, their extensions, reading
//!   words, offsets, and the k-charge statistic;
//! * [`charge`] — the classical charge statistic, semistandard tableaux,
//!   and the Kostka-Foulkes polynomials as an independent oracle;
//! * [`tpoly`] — integer-coefficient polynomials in t and unitriangular
//!   matrix inversion;
//! * [`symfunc`] — monomial/homogeneous/Schur/Hall-Littlewood expansions,
//!   the k-Kostka matrix K^(k)(t), and the k-Schur functions with
//!   parameter t defined through its inverse;
//! * [`verify`] — pinned worked examples and exhaustive desk-scale checks.
//!
//! Values are immutable and every operation is a pure function, so
//! everything can be called freely from concurrent contexts.

pub mod abc;
pub mod charge;
pub mod cli;
pub mod cores;
pub mod error;
pub mod partition;
pub mod strong;
pub mod symfunc;
pub mod tpoly;
pub mod verify;

pub use error::{Anomaly, Error, Result};
pub use partition::{Cell, Partition};
