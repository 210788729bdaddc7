//! Exact and certified arithmetic: dyadics, balls, polynomials, roots, factorisation.

pub mod ball;
pub mod complex;
pub mod decimal;
pub mod dyadic;
pub mod factor;
pub mod linalg;
pub mod poly;
pub mod roots;

pub use ball::Ball;
pub use complex::CBall;
pub use dyadic::Dyadic;
pub use factor::{factor_integer_poly, Factorization};
pub use poly::Polynomial;
pub use roots::{isolate_real_roots, refine_root, IsolatedRoot};
