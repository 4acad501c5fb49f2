//! Grayscale image registration by focussed mutual information.
//!
//! A *focus* is a probability distribution over the reference image that
//! weights each pixel's contribution to the joint gray-value histogram.
//! With a uniform focus the criteria reduce to ordinary mutual information
//! (MI), normalized mutual information (NMI) and the entropy correlation
//! coefficient (ECC); a focus concentrated on one anatomical structure
//! aligns that structure even when the rest of the scene moved.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for callers that do not care.
//!
//! ```
//! use focusreg::{evaluate_criterion, AffineTransform, BinningScheme, Criterion, Image};
//!
//! let img = Image::from_fn(16, 16, |x, y| ((x * 3 + y * 5) % 16) as f64 / 15.0).unwrap();
//! let nmi = evaluate_criterion(
//!     &img, &img, &AffineTransform::identity(), &BinningScheme::default(), None, Criterion::Nmi,
//! ).unwrap();
//! assert_eq!(nmi, 2.0);
//! ```

pub mod entropy;
pub mod error;
pub mod focus;
pub mod imaging;
pub mod io;
pub mod phantom;
pub mod registration;
pub mod scalar;

pub use entropy::{
    accumulate_joint, criteria_from_histogram, evaluate_all, evaluate_criterion, shannon_entropy, Criterion,
};
pub use error::{Error, ErrorKind, Result};
pub use focus::{BinaryMask, GaussianComponent, PresetParams};
pub use imaging::{fit_affine_least_squares, subtract, BinningScheme};
pub use registration::{multiresolution_register, register};
pub use scalar::Real;

pub type Image = imaging::Image<f64>;
pub type ImageF32 = imaging::Image<f32>;
pub type AffineTransform = imaging::AffineTransform<f64>;
pub type AffineTransformF32 = imaging::AffineTransform<f32>;
pub type FocusMap = focus::FocusMap<f64>;
pub type FocusMapF32 = focus::FocusMap<f32>;
pub type JointHistogram = entropy::JointHistogram<f64>;
pub type JointHistogramF32 = entropy::JointHistogram<f32>;
pub type CriterionValues = entropy::CriterionValues<f64>;
pub type SearchSpec = registration::SearchSpec<f64>;
pub type RegistrationResult = registration::RegistrationResult<f64>;
pub type SubtractionImage = imaging::SubtractionImage<f64>;
pub type SplineCurve = focus::SplineCurve<f64>;
