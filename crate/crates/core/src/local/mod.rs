//! Standard bases and quotients in the localization of the polynomial ring
//! at the origin.
//!
//! Computing in the localization rather than in convergent power series is
//! harmless here: for polynomial generators of finite colength both rings
//! give the same quotient.

mod order;
mod quotient;
mod stdbasis;

pub use order::LocalOrder;
pub use quotient::{quotient_algebra, QuotAlg};
pub use stdbasis::{
    is_local_unit, standard_basis, standard_basis_with_cap, Colength, StdBasis, DEFAULT_DEGREE_CAP,
};
