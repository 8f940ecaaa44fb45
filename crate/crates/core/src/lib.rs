//! Galois-invariant non-special divisors on Kummer curves `y^m = a prod (x - alpha_i)^lambda_i`
//! over finite fields, and linear complementary pairs of algebraic geometry
//! codes built from them.

pub(crate) mod arith;
pub mod codes;
pub mod curve;
pub mod error;
pub mod ffield;
pub mod instances;
pub mod linalg;
pub mod nonspecial;

pub use codes::{build_code, lcp_build_general, lcp_build_regime, lcp_verify, rr_basis, LcpPair, LinearCode, Regime};
pub use curve::{make_abstract_curve, make_curve, CurveSpec, Divisor, InvariantTuple, KummerCurve, Place};
pub use error::{Error, Result};
pub use ffield::{make_field, Field, FieldElement, Poly};
pub use nonspecial::{criterion_check, enumerate_nonspecial, Mode};
