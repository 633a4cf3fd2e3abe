//! Exact truncated power series over the rationals, polynomials, avoider
//! count sequences and their shared JSON form.

mod count;
mod json;
mod poly;
mod truncated;

pub use count::CountSeries;
pub use json::{SeriesDocument, SeriesKind};
pub use poly::{rational_to_series, Poly};
pub use truncated::TruncatedSeries;
