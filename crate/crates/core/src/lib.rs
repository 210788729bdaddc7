//! Tile counts and discrepancies of substitutions on the infinite alphabet
//! `[0], [1], [2], ...` given by `[0] -> [0]^{a_0} [1]` and `[i] -> [0]^{a_i} [i-1][i+1]`
//! for an eventually constant sequence `a`.
//!
//! Everything is exact or certified: big integers and rationals for counts and
//! algebra, dyadic balls ([`HPReal`]) for irrational quantities.
//!
//! ```
//! use infsubst::{spectral_data, EventuallyConstantSeq};
//!
//! let seq = EventuallyConstantSeq::all_ones();
//! let sd = spectral_data(&seq, 128).unwrap();
//! assert_eq!(sd.lambda_exact().unwrap().to_string(), "5/2");
//! assert_eq!(sd.density_exact().unwrap().to_string(), "3/4");
//! ```

pub mod catalan;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod scalar;
pub mod sequence;
pub mod spectral;
pub mod stabilizing;
pub mod twist;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use catalan::{catalan, discrepancy_series, exact_pairing, verify_catalan_identity, CheckReport, DiscrepancySeries};
pub use error::{Error, Result};
pub use numerics::{Ball, CBall, Dyadic, Polynomial};
pub use scalar::{Field, Scalar};
pub use sequence::{supertile, tile_count, CountVector, EventuallyConstantSeq, LetterWord};
pub use spectral::{classify_roots, min_poly_lambda, spectral_data, RootClass, RootInfo, SpectralData};
pub use stabilizing::StabilizingVector;
pub use twist::{catalan_combo, find_g, find_r, growth_exponent, verify_twist_recurrence, CatalanCombo};

/// Certified real enclosure.
pub type HPReal = Ball;
pub type ComplexBall = CBall;
pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<BigRational>;
pub type RationalVector = StabilizingVector<BigRational>;
pub type IntegerVector = StabilizingVector<BigInt>;
