//! Exact spectral and length-spectral computations for compact flat manifolds.
//!
//! A manifold is given by a Bieberbach group (`bieberbach`). From it the crate
//! computes p-form Laplace multiplicities (`spectrum`), closed geodesic classes
//! with their holonomy (`geodesics`) and the heat trace on both sides of
//! Poisson summation (`zeta`). All lattice and group arithmetic is exact
//! (`exact`); only the heat trace is evaluated in floating point, with
//! certified tails.

pub mod bieberbach;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod geodesics;
pub mod group_file;
pub mod krawtchouk;
pub mod spectrum;
pub mod verdict;
pub mod zeta;

pub use error::{Error, Result};
