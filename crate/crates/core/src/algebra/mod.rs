//! Exact scalar and oracle-ring arithmetic, plus Smith/Euclidean reduction.

pub mod free;
pub mod kadic;
pub mod matrix;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod scalar;
pub mod smith;

pub use free::{alphabet, free_mul, Alphabet, FreeAlgebra, FreeAlgebraElement, Word};
pub use kadic::{kadic_normalize, KadicFraction, KadicRing};
pub use matrix::{int_det, mat_mul, IntMatrix, Matrix};
pub use poly::{poly_mul, PolyRing, PolynomialElement};
pub use presentation::{Presentation, Reduced};
pub use ring::{BaseRing, EuclideanRing, IntegerRing, Ring, ScalarRing};
pub use scalar::{int, parse_scalar, ratio, scalar_arith, Scalar, ScalarOp};
pub use smith::{
    cokernel_invariants, euclidean_reduce, in_row_span, row_span_solve, smith_normal_form, Smith,
};

#[cfg(test)]
mod props;
