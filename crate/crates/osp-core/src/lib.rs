//! Exact polynomial representations of orthosymplectic Lie superalgebras.
//!
//! The crate covers supercommutative polynomial arithmetic
//! ([`superpoly`]), the `osp(m|2n)` structure data and its realizations
//! ([`rep`]), exact slice analysis ([`slice`]), explicit polynomial families
//! ([`closed_forms`]) and verification reports ([`report`]).

pub mod closed_forms;
pub mod error;
pub mod linalg;
pub mod props;
pub mod rep;
pub mod report;
pub mod slice;
pub mod superpoly;
pub mod verify;
pub mod weights;

pub use error::{OspError, Result};
