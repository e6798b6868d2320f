//! Radial positive definite and conditionally negative definite functions
//! on free groups.
//!
//! A radial function on the free group `F_r` depends only on word length and
//! is stored as its value table `φ̇(0), φ̇(1), ...`. The crate evaluates the
//! spherical functions `φ_s` and the family `ψ_s`, builds radial functions
//! from atomic measures on `[-1, 1]`, and decides from a finite value table
//! whether such a representation can exist. Brute-force Gram matrices on
//! Cayley balls serve as an independent check.

pub mod classify;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod oracle;
pub mod scalar;
pub mod spherical;
pub mod words;

pub use error::{Error, ErrorClass, Result};
pub use moments::{AtomicMeasure, MomentSequence, RadialFunction, Role};
pub use scalar::{Rational, Scalar};
pub use words::{Rank, Word};
