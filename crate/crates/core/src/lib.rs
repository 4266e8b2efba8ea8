//! Exact computation of quantum cluster algebra structures on iterated Ore
//! extensions: PBW arithmetic, sequences of prime elements, toric frames,
//! exchange matrices and seed mutation, with quantum matrices and quantum
//! Schubert cell combinatorics as built-in instances.
//!
//! Coefficients are rational functions in a fractional power of `q`. The
//! polynomial layer is generic over any `num-traits` field; the aliases below
//! fix it to exact big rationals.

pub mod bicharacter;
pub mod cli;
pub mod error;
pub mod exchangesolver;
pub mod mutation;
pub mod orealgebra;
pub mod primeseq;
pub mod qtorus;
pub mod scalarfield;
pub mod schubertdata;
pub mod verify;
pub mod xicombinatorics;

pub use bicharacter::{ExpMatrix, IntMatrix, RatMatrix};
pub use error::{Error, Result};
pub use mutation::{ExchangeMatrix, Seed, Sign};
pub use orealgebra::{Mono, PBWElement, Presentation, PresentationData};
pub use primeseq::{EtaData, IntervalPrimes, PrimeSequence};
pub use qtorus::{Ambient, ToricFrame, Torus, TorusElement};
pub use scalarfield::{Coeff, ScalarExp};
pub use xicombinatorics::TauFrame;

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// Polynomials in `q^{1/d}` over the exact rationals.
pub type QPoly = scalarfield::Poly<Rational>;
/// A seed whose cluster variables live in the PBW algebra.
pub type PbwSeed = Seed<PBWElement>;
/// A seed whose cluster variables live in a based quantum torus.
pub type TorusSeed = Seed<TorusElement>;
