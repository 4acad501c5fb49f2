//! Maximization of the registration criterion over affine transforms in a
//! box around an initial guess.

mod halton;
mod nelder_mead;
mod pyramid;
mod search;

pub use pyramid::{downsample, multiresolution_register, to_coarse, to_fine};
pub use search::{
    deparameterize, parameterize, register, RegistrationResult, SearchSpec, TraceEntry,
    MIN_OVERLAP_FRACTION,
};
