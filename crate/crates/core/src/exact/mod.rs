//! Exact arithmetic: rationals, dense matrices, Smith normal form,
//! characteristic polynomials and lattice point enumeration.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod snf;

pub use lattice::{enumerate_ball, enumerate_shell, LatticePoint, QuadraticForm};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use poly::{char_poly, Polynomial};
pub use rational::{int, parse_rational, rat, Rational};
pub use snf::{smith_normal_form, SmithForm};
