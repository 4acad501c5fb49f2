//! Image representation, gray-value binning, affine geometry, bilinear
//! sampling and subtraction images.

mod binning;
pub(crate) mod image;
mod landmarks;
mod subtraction;
mod transform;

pub use binning::{BinningScheme, DEFAULT_BINS};
pub use image::{Image, MAX_PIXELS};
pub(crate) use image::{check_dims, sample_grid};
pub use landmarks::fit_affine_least_squares;
pub use subtraction::{encode_difference, subtract, SubtractionImage};
pub use transform::{corners, AffineTransform, MIN_DETERMINANT};
