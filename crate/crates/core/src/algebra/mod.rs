//! Exact algebra: rational polynomials, truncated series and small linear systems.

pub mod linalg;
pub mod poly;
pub mod series;

pub use poly::{int, parse_poly_text, parse_rational, rat, Grading, Monomial, MultiPoly, PolyJson, Positivity, TermJson, Vars};
pub use series::{compositional_inverse, fixed_point, lagrange_coeff, TruncSeries};
