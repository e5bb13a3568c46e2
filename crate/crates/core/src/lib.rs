//! Spectral toolkit for periodic homogenization of divergence-form elliptic
//! operators of order `2m` with periodic coefficients.
//!
//! The pipeline runs in three stages:
//!
//! 1. **Cell stage** ([`cell`]): solve the periodic cell problems on the unit
//!    cube, assemble the homogenized tensor, the oscillating residual tensors
//!    and their skew-symmetric matrix potentials, then the second-order cell
//!    data (higher cell solutions and the first-order tensor correction).
//! 2. **Macro stage** ([`homogenized`], [`fine`]): solve the
//!    constant-coefficient homogenized problem (optionally with its
//!    `eps`-perturbation of order `2m+1`) exactly in Fourier space, and the
//!    oscillating-coefficient fine problem on the torus with a preconditioned
//!    Krylov iteration.
//! 3. **Comparison stage** ([`approx`], [`study`]): assemble two-scale
//!    corrector approximations with Steklov smoothing, measure errors in
//!    `L^2` and `H^m`, and fit convergence rates over an `eps` sweep.
//!
//! All fields are real, periodic, and sampled on uniform grids; derivatives
//! and smoothing act as exact Fourier multipliers, products are formed on the
//! grid (collocation).

pub mod approx;
pub mod bundle;
pub mod cell;
pub mod error;
mod fft;
pub mod field;
pub mod fine;
pub mod grid;
pub mod homogenized;
pub mod krylov;
pub mod multiindex;
pub mod smoothing;
pub mod study;
pub mod verify;

pub use approx::{build_approximations, error_report, ApproxOptions, ApproximationBundle, ErrorRecord};
pub use cell::{
    apply_cell_operator, check_ellipticity, compute_homogenized_data, homogenized_coefficients,
    skew_potential, solve_first_cell, solve_second_cell, CoefficientTensor, HomogenizedData,
};
pub use error::{HomogError, Result};
pub use field::{FrequencyMultiplier, PeriodicField};
pub use fine::{apply_fine_operator, solve_fine, FineOperator};
pub use grid::Grid;
pub use homogenized::{check_elliptic_estimate, solve_perturbed, HomogenizedSymbol};
pub use krylov::{LinearOperator, SolveStats, SolverConfig};
pub use multiindex::{leibniz_coefficient, MultiIndex};
pub use smoothing::{iterated_steklov, smooth_with_kernel, steklov, SmoothingKernel};
pub use study::{fit_rate, run_study, RateReport, StudyConfig};
