//! Exact arithmetic substrate: rationals, places, Hilbert symbols and
//! truncated power series.

pub mod place;
pub mod rational;
pub mod series;
pub mod symbols;

pub use place::{Place, Sign};
pub use rational::{fmt_rational, int, is_prime, parse_rational, rat, Rational};
pub use series::TruncatedSeries;
pub use symbols::{
    hilbert, is_local_square, least_nonresidue, legendre, reciprocity_product, relevant_places,
    same_square_class, square_class_representatives, valuation, valuation_and_unit,
};
