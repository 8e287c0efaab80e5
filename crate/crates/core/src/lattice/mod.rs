//! Exact integer and rational linear algebra.

pub mod affine;
pub mod lp;
pub mod matrix;
pub mod normal_form;
pub mod solve;

pub use affine::{affine_lattice_basis, AffineLatticeBasis};
pub use matrix::{
    abs_det_rows, cofactor_normal, content, det_of_rows, dot, exact_det, ivec, primitive_part, IntMatrix,
    IntVector, Matrix, RatMatrix, RatVector,
};
pub use normal_form::{elementary_divisors, hermite_rows, integer_kernel, smith_normal_form, SmithForm};
pub use solve::{solve_rational, Solution};
