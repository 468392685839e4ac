//! Exact sparse polynomial algebra over the rationals, in `X, Y` and in the
//! deformation parameter `t`.

pub mod json;
mod poly;
pub mod rational;
mod tpoly;

pub use poly::{bipoly, BiPoly, Bivariate, Coefficient, Exponent, ParamPoly, PolyError, Var};
pub use rational::{format_rational, int, parse_rational, rat, Rational, Sign};
pub use tpoly::TPoly;
