pub mod algebra;
pub mod error;
pub mod family;
pub mod fraction;
pub mod matrix_loc;
pub mod module_loc;
pub mod report;
pub mod suite;
pub mod triangular;
pub mod tring;

pub use error::{Error, Result};
pub use family::{BimElement, Family, FamilyDescriptor, RingElement};
pub use fraction::{check_central, verify_shift, CentralPair, Factorization, Fraction};
pub use matrix_loc::{verify_sigma_inverting, M2Op, Matrix2, MatrixRing, DEFAULT_SEED};
pub use module_loc::{build_l, l_invariants, localize_module, verify_alpha_beta, GSign, LocalizedModule};
pub use report::Report;
pub use tring::{parse_expr, Equality, Expr, OracleElement, OracleRing, TElement, TRing};
pub use triangular::{TriElement, TriangularRing, TripleModule};
