//! Exact multivariate polynomial arithmetic over the rationals.

pub mod coeff;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use coeff::Coeff;
pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::Ring;
