//! Exact combinatorics of ℓ-alcove blocks, affine Weyl group actions, cells and
//! GKM graphs of affine Spaltenstein fibers, the rank-one quiver algebra and
//! closed-form dimension counts checked against brute-force oracles.

pub mod affweyl;
pub mod blocks;
pub mod error;
pub mod formulas;
pub mod gkm;
pub mod linalg;
pub mod rankone;
pub mod rootdata;
pub mod springer;

pub use error::{Error, Result};
