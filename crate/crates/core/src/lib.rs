//! Exact computation of weight, interweight and triangle distributions of
//! equitable partitions of the n-cube, the three-variable Krawtchouk
//! polynomials that generate them, and nonexistence screening of candidate
//! quotient matrices.

pub mod cli;
pub mod error;
pub mod io;
pub mod krawtchouk;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quotient;
pub mod recursion;
pub mod screen;

pub use error::{Error, Result};
pub use linalg::{Rational, TensorVector};
