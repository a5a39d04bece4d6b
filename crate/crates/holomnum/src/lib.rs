//! Rigorous multiple-precision evaluation of D-finite functions.
//!
//! A D-finite (holonomic) function is a solution of a linear ODE with
//! polynomial coefficients. This crate evaluates such functions anywhere in
//! the complex plane by validated numerical analytic continuation:
//!
//! - exact differential-operator arithmetic over the rationals (with
//!   Gaussian-rational and algebraic expansion points),
//! - local series solutions at ordinary and regular singular points
//!   (Frobenius method, logarithms and rational exponents included),
//! - rigorous summation of those series with certified tail bounds, by
//!   naive ball iteration or exact binary splitting,
//! - transition matrices along paths, composed from validated steps, with
//!   an automatic precision-retry loop.
//!
//! Every numerical result is a mid-rad interval (ball) guaranteed to
//! contain the exact value.
//!
//! The two entry points mirror the classical interface for this problem
//! class: [`path::numerical_solution`] evaluates one solution fixed by
//! initial conditions, and [`path::numerical_transition_matrix`] computes
//! the full change-of-basis matrix along a path, including regular singular
//! endpoints.

pub mod ball;
pub mod error;
pub mod exact;
pub mod local;
pub mod operator;
pub mod path;
pub mod summation;

pub use ball::{ArgBranch, BallMatrix, ComplexBall, RealBall};
pub use error::{Error, Result};
pub use exact::{ConstantExpr, Exact, ExactPoint};
pub use local::{BasisLabel, LocalBasisStructure, LogSeries};
pub use operator::{DiffOperator, PointKind, ThetaFormRecurrence};
pub use path::{
    numerical_solution, numerical_transition_matrix, EvalOptions, Path, TransitionMatrix,
};
pub use summation::Algorithm;

/// Rationals and integers are re-exported so downstream crates do not need
/// a direct `rug` dependency for basic plumbing.
pub use rug::{Integer, Rational};
