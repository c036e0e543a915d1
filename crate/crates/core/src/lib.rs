//! Exact construction of skew Hecke algebras `H_R(G, H, A, α)` of finite
//! groups, together with executable versions of their standard
//! isomorphisms and a verifier for algebra maps.

pub mod error;
pub mod scalars;
pub mod element;
pub mod linalg;
pub mod groups;
pub mod literal;
pub mod algebras;
pub mod skewgroup;
pub mod hecke;
pub mod isomorphisms;

pub use error::{Error, Result};
pub use element::{Element, Label, Monomial};
pub use scalars::{Scalar, ScalarField};
