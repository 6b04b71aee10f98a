//! Exact integer and rational linear algebra used by the combinatorial modules.

mod elimination;
mod intmat;
mod smith;

pub use elimination::{nullspace, rank, sparse_from_dense, Echelon, SparseRow};
pub use intmat::IntMatrix;
pub use smith::{hermite_normal_form, smith_normal_form, SmithForm};
