//! Permutation arrays from fractional polynomials over finite fields and
//! from permutation groups, with exhaustive and sampled minimum-distance
//! verification.

pub mod error;
pub mod field;
pub mod fracpoly;
pub mod groups;
pub mod pa;
pub mod pam;
pub mod poly;
pub mod sfp;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use fracpoly::{FracPoly, ValueProfile};
pub use groups::{GroupFacts, PermGroup};
pub use pa::{PermArray, Permutation, VerifyMode, VerifyReport};
pub use poly::{Degree, Poly};
pub use sfp::{SfpQuery, SfpResult, Variant};
