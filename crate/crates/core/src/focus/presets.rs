use serde::{Deserialize, Serialize};

use super::filters::{gaussian_convolve, gradient_modulus, median_filter};
use super::map::{BinaryMask, FocusMap};
use super::morphology::{complement, mask_multiply, morph_close, morph_dilate};
use super::threshold::{otsu_threshold, threshold_mask};
use crate::error::Result;
use crate::imaging::{BinningScheme, Image};
use crate::scalar::Real;

/// Kernel sizes and threshold for the edge/patch focus pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PresetParams {
    pub median_radius: usize,
    pub sigma_edge: f64,
    /// Manual threshold; Otsu over `bins` gray bins when absent.
    pub threshold: Option<f64>,
    pub close_radius: usize,
    pub dilate_radius: usize,
    pub bins: usize,
}

impl Default for PresetParams {
    fn default() -> Self {
        Self {
            median_radius: 1,
            sigma_edge: 2.0,
            threshold: None,
            close_radius: 2,
            dilate_radius: 4,
            bins: crate::imaging::DEFAULT_BINS,
        }
    }
}

/// Edge distribution: median filter, Sobel modulus, Gaussian blur.
pub fn edge_map<T: Real>(reference: &Image<T>, params: &PresetParams) -> Result<Image<T>> {
    let denoised = median_filter(reference, params.median_radius)?;
    let grad = gradient_modulus(&denoised)?;
    gaussian_convolve(&grad, T::lit(params.sigma_edge))
}

/// Patch around the radio-opaque object: threshold, closing, dilation.
pub fn threshold_patch<T: Real>(reference: &Image<T>, params: &PresetParams) -> Result<BinaryMask> {
    let t = match params.threshold {
        Some(t) => T::lit(t),
        None => otsu_threshold(reference, &BinningScheme::new(params.bins)?)?,
    };
    let raw = threshold_mask(reference, t)?;
    morph_dilate(&morph_close(&raw, params.close_radius)?, params.dilate_radius)
}

/// Edges restricted to the patch around a restoration.
///
/// Edges are computed on the full reference before masking, so the patch
/// border never shows up as an edge.
pub fn preset_restoration_focus<T: Real>(reference: &Image<T>, params: &PresetParams) -> Result<FocusMap<T>> {
    let edges = edge_map(reference, params)?;
    let patch = threshold_patch(reference, params)?;
    mask_multiply(&edges, &patch)
}

/// Edges restricted to the patch covering an implant.
pub fn preset_implant_focus<T: Real>(reference: &Image<T>, params: &PresetParams) -> Result<FocusMap<T>> {
    preset_restoration_focus(reference, params)
}

/// Edges outside the patch covering an implant, i.e. the surrounding bone.
pub fn preset_bone_focus<T: Real>(reference: &Image<T>, params: &PresetParams) -> Result<FocusMap<T>> {
    let edges = edge_map(reference, params)?;
    let patch = threshold_patch(reference, params)?;
    mask_multiply(&edges, &complement(&patch))
}
