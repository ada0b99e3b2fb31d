//! Exceptional points of the complex Kac–Murdock–Szegő matrix
//! `K_n(rho) = [rho^|j-k|]`.
//!
//! The crate locates the parameter values `rho_c` at which two eigenvalues
//! coalesce into the double eigenvalue `-n`, computes the leading Puiseux
//! coefficients of the splitting pair, and derives the local level curves,
//! cusp bisectors and eigenvalue trajectories that follow from them. The
//! purely imaginary family of critical points has its own specialised
//! module with large-`n` asymptotics.
//!
//! Everything formula-based is checked against [`oracle`], a dense complex
//! eigensolver that knows nothing about the structure of `K_n`.

pub mod chebyshev;
pub mod critical;
pub mod error;
pub mod geometry;
pub mod imaginary;
pub mod kms;
pub mod linalg;
pub mod oracle;
pub mod puiseux;

pub use num_complex::Complex64;

pub use chebyshev::ChebDegree;
pub use critical::CriticalPoint;
pub use error::{KmsError, Result};
pub use geometry::{CurveSample, CurveSamples, TrajectoryPoint};
pub use imaginary::ImagAxisParams;
pub use kms::{EigType, KmsMatrix, MuPoint};
pub use linalg::CMatrix;
pub use oracle::Spectrum;
pub use puiseux::{DerivativeBundle, PuiseuxParams};

/// Reduce an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::PI;
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}
