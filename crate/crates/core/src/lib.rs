//! Exact symbolic construction and verification of DGLA models of cells up to
//! dimension three: the interval, the bi-gon, the n-faceted banana and
//! polyhedral 3-cells such as the cube.
//!
//! * [`lie`]: free graded Lie algebras, associative expansion, Bernoulli numbers.
//! * [`series_calc`]: BCH, adjoint exponentials, flows, universal averages, operator polynomials.
//! * [`model`]: models as data, Leibniz extension of ∂, twists, morphisms and axiom checkers.
//! * [`cells`]: builders for the concrete cell models.
//! * [`cli`]: the `dgla` command-line front end.

pub mod cells;
pub mod cli;
pub mod error;
pub mod json;
pub mod lie;
pub mod model;
pub mod rational;
pub mod series_calc;

pub use error::{DglaError, Result};
pub use lie::{BracketTree, Generator, LieElement};
pub use rational::Rational;
