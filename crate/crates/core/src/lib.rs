//! Exact local algebra for indices of 1-forms on isolated complete
//! intersection singularities.
//!
//! Everything is computed over the rationals: polynomial arithmetic in
//! [`poly`], standard bases in the localization at the origin in [`local`],
//! the index ideal in [`index`], Hessian identities in [`hessian`], quadratic
//! forms and signatures in [`quadform`] and the plane-curve fiber solver in
//! [`fiber`].

pub mod error;
pub mod fiber;
pub mod hessian;
pub mod index;
pub mod local;
pub mod poly;
pub mod quadform;

pub use error::{Error, Result};
