//! Construction of focus distributions from prior knowledge: Gaussian
//! mixtures, edge maps, threshold/morphology patches and spline contours,
//! plus the preset pipelines for restorations, implants and bone.

mod filters;
mod map;
mod mixture;
mod morphology;
mod presets;
mod spline;
mod threshold;

pub use filters::{gaussian_convolve, gaussian_kernel, gradient_modulus, median_filter, SOBEL_SCALE};
pub use map::{BinaryMask, FocusMap};
pub use mixture::{gaussian_mixture_focus, GaussianComponent};
pub use morphology::{complement, disk_offsets, mask_multiply, morph_close, morph_dilate, morph_erode};
pub use presets::{
    edge_map, preset_bone_focus, preset_implant_focus, preset_restoration_focus, threshold_patch,
    PresetParams,
};
pub use spline::{rasterize_curves, spline_focus, SplineCurve, DEFAULT_SPLINE_SIGMA};
pub use threshold::{otsu_threshold, threshold_mask};
