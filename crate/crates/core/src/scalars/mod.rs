//! Exact coefficients: cyclotomic numbers, sparse polynomials and the
//! parameter field `Q(zeta_N)(t, c_1, .., c_k)`.

pub mod cyclotomic;
pub mod literal;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, q, q_frac, CycNum, Q};
pub use literal::{parse_cyclotomic, parse_expr, parse_scalar, Evaluator, Expr};
pub use poly::{binom, gcd, MPoly, Monomial};
pub use ring::Ring;
pub use scalar::Scalar;
