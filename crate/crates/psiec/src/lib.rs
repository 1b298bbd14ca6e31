//! Polar differential-form wavelets and a spectral exterior calculus in
//! `R^2` and `R^3`.
//!
//! The crate builds tight frames of differential r-form wavelets from polar
//! frequency windows (a radial dyadic window times an angular localization
//! window), together with the operators acting on them: exterior derivative,
//! codifferential, Hodge dual, Laplace-de Rham and its Galerkin projection,
//! fiber integration, and the weak Stokes pairing against characteristic
//! forms of simple shapes.
//!
//! Layout:
//! - [`specfun`]: Bessel/spherical Bessel functions, spherical harmonics,
//!   Gaunt coefficients, Hankel transforms of radial windows.
//! - [`windows`]: radial and angular localization windows plus admissibility
//!   checks (Calderon condition, orientation-matrix diagonality).
//! - [`exterior`]: a small exact symbolic exterior algebra with the Fourier
//!   transform of forms and its frequency-domain operators.
//! - [`polarlet`]: scalar polar wavelets (frequency/spatial evaluation and
//!   the scalar tight-frame transform on periodic grids).
//! - [`wavelets`]: the differential r-form wavelet table and the per-atom
//!   operators.
//! - [`transforms`]: analysis/synthesis of sampled form fields, fiber
//!   integration, characteristic-form coefficients, Stokes residuals.
//! - [`apps`]: resonant-cavity eigenproblem and circulation study.

pub mod apps;
pub mod exterior;
pub mod fftn;
pub mod grid;
pub mod oracle;
pub mod par;
pub mod polarlet;
pub mod specfun;
pub mod transforms;
pub mod wavelets;
pub mod windows;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("radius {radius:.3} exceeds cached extent {max:.3}")]
    CacheRadiusExceeded { radius: f64, max: f64 },
    #[error("singular radial weight: power {power} with a window supported at zero")]
    SingularWeight { power: i32 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("window system not admissible: {0}")]
    NotAdmissible(String),
    #[error("frequency table construction failed: {0}")]
    TableConstruction(String),
    #[error("spectral leakage {fraction:.3e} exceeds tolerance {tol:.3e}")]
    SpectralLeakage { fraction: f64, tol: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
