//! Generic exact algebra: polynomials, dense matrices, truncated series,
//! modular arithmetic, factorization over `Q` and Smith normal form.

pub mod factor;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod series;
pub mod snf;

pub use matrix::Matrix;
pub use poly::Poly;
pub use series::Series;
