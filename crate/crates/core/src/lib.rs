pub mod error;
pub mod ball;
pub mod cli;
pub mod exterior;
pub mod galerkin;
pub mod harmonic;
pub mod linalg;
pub mod moments;
pub mod poly;
pub mod radial;

pub use error::{Error, Result};
pub use exterior::PForm;
pub use poly::{MultiIndex, Poly, Rational};
