//! Decision procedures for word-hyperbolic groups given by finite
//! presentations.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: letters, words, parsing and printing;
//! * [`presentation`]: presentations and their word-problem backend;
//! * [`kernel`]: word and conjugacy problems inside a [`HyperbolicContext`];
//! * [`geometry`]: Cayley balls, δ estimation and the explicit search bounds;
//! * [`creduction`]: C-reduced conjugates of powers;
//! * [`decisions`]: torsion, generalized word problems, malnormality,
//!   centralizers, roots and the center;
//! * [`oracle`]: naive ball-based ground truth used by the test suites.
//!
//! Hyperbolicity constants are generic over [`Scalar`]; the crate works with
//! exact rationals through the [`Rational`] and [`Constants`] aliases.

pub mod abelian;
pub mod creduction;
pub mod decisions;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod oracle;
pub mod presentation;
pub mod quotient;
pub mod scalar;
pub mod words;

pub use error::{Error, ErrorClass, Result};
pub use kernel::{BuildOptions, ConjugacyWitness, DeltaSource, HyperbolicConstants, HyperbolicContext, KProvider};
pub use presentation::{load_presentation, Backend, Presentation};
pub use scalar::Scalar;
pub use words::{Alphabet, Letter, Word};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::Ratio<i64>;

/// Hyperbolicity constants over exact rationals.
pub type Constants = HyperbolicConstants<Rational>;

/// Hyperbolicity constants in floating point, for quick estimates.
pub type ConstantsF64 = HyperbolicConstants<f64>;
