//! Exact computations around a non-elementary computable real and certified
//! volume approximations of semi-algebraic domains.
//!
//! * [`elem_expr`]: elementary-function expressions and metered evaluation.
//! * [`enumeration`]: the pairing-code enumeration `e -> f_e` and `g_e`.
//! * [`cauchy`]: enforcement of fast Cauchy sequences and the reals `β_e`.
//! * [`diagonal`]: the diagonal real `α`, its bits and decimal digits.
//! * [`semialg`]: grid cubes, Bernstein certificates and Riemann volumes.
//!
//! Every number crossing the public API is an exact integer or rational.

pub mod cauchy;
pub mod cli;
pub mod diagonal;
pub mod elem_expr;
pub mod enumeration;
pub mod error;
pub mod exact;
pub mod io;
pub mod pairing;
pub mod semialg;

pub use cauchy::{beta, beta_radius, enforce, FastSeq, RealApprox};
pub use diagonal::{Diagonal, DiagonalState};
pub use elem_expr::{builtin, Budget, Builtin, ElemExpr, Nat, Op, ZeroPow};
pub use enumeration::{Case, Code, Decoder, Enumeration, Rat};
pub use error::{Error, Resource, Result};
pub use pairing::{pair, unpair};
