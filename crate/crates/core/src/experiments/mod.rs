//! Numerical experiments on the discrepancy: residual series, coefficient estimates,
//! exponent fits, approximate eigenvectors, figure data and the bounded-distance report.

mod bde;
mod eigen;
mod figures;
mod fit;
mod residual;

pub use bde::{bde_report, BdeReport};
pub use eigen::{approx_eigen_residual, approx_eigenvector, ApproxEigenResidual};
pub use figures::{emit_figure_csv, figure_series, figure_specs, render_csv, FigureKind, FigureSpec};
pub use fit::{fit_exponent, fit_exponent_with_base, least_squares, FitResult, Parity};
pub use residual::{
    estimate_coefficient, estimate_coefficient_at_two, estimate_leading_coefficient, residual_series,
    residual_bits, CoefficientEstimate, ResidualSeries, Term,
};
