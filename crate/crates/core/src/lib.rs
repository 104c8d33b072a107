//! Exact decision procedures for the truncated moment problem on discrete,
//! bounded-below grids such as the nonnegative integers.
//!
//! All arithmetic is over arbitrary-precision rationals; no decision depends
//! on floating point.

pub mod error;
pub mod grid;
pub mod hankel;
pub mod measure;
pub mod moments;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod solver;
pub mod stieltjes;
pub mod sufficiency;

pub use error::{Error, Result};
pub use grid::{pattern_check, polynomial_pattern_check, GridSpec, RootPattern};
pub use hankel::{hankel, psd_classify, PositivityClass, SymmetricRationalMatrix};
pub use measure::{AtomicMeasure, StieltjesMeasure};
pub use moments::MomentVector;
pub use oracle::{fixture, realizable_on_NN, verify_certificate, ConditionReport, FixtureCase};
pub use poly::{lform_eval, RationalPolynomial};
pub use rational::Rational;
pub use roots::{grid_bracket, isolate_roots, sturm_chain, AlgebraicNumber, GridBracket};
pub use solver::{
    classify, classify_with, min_poly, minimal_extension, BoundaryCertificate, MinPolyCertificate,
    NegativityWitness, SolverConfig, Strategy, Verdict,
};
pub use stieltjes::{minimal_stieltjes_extension, stieltjes_classify, support_polynomial, StieltjesVerdict};
pub use sufficiency::{d_matrix, shift_matrix, sufficient_check};
