//! Exact arithmetic: base fields, polynomials, rational functions,
//! binomials and truncated series.

pub mod binom;
pub mod factored;
pub mod field;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod syntax;

pub use binom::{binom_general, binom_i64, binom_in_field, lucas};
pub use factored::{frf_arith, FactoredRatFunc, FrfOp};
pub use field::{BaseField, Fe};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::TruncatedSeries;
