//! File formats: 8-bit PGM/PNG images, transform records, focus maps,
//! landmark tables and curve documents.

mod pgm;
mod text;

use std::fs;
use std::path::Path;

use image::ImageEncoder as _;

pub use pgm::{decode_pgm, encode_pgm};
pub use text::{
    curve_document_to_toml, focus_to_text, parse_curve_document, parse_focus_text, parse_points,
    parse_transform, parse_transform_record, parse_transform_toml, points_to_text, transform_to_record,
    transform_to_toml, CurveDocument, NamedCurve, FOCUS_MAGIC,
};

use crate::error::{Error, Result};
use crate::imaging::Image;

const PNG_SIGNATURE: [u8; 8] = [0x89, b'P', b'N', b'G', 0x0d, 0x0a, 0x1a, 0x0a];

/// Intensity `b / 255` for every byte.
pub fn image_from_gray8(width: usize, height: usize, data: &[u8]) -> Result<Image> {
    Image::new(width, height, data.iter().map(|&b| b as f64 / 255.0).collect())
}

/// Nearest 8-bit level of every intensity.
pub fn image_to_gray8(img: &Image) -> Vec<u8> {
    img.values()
        .iter()
        .map(|v| (v * 255.0).round().clamp(0.0, 255.0) as u8)
        .collect()
}

/// Decodes PGM (P5) or 8-bit grayscale PNG, detected by content.
pub fn decode_image(bytes: &[u8]) -> Result<Image> {
    if bytes.starts_with(&PNG_SIGNATURE) {
        let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
            .map_err(|e| Error::Parse(format!("PNG: {e}")))?;
        if decoded.color() != image::ColorType::L8 {
            return Err(Error::Parse(format!(
                "PNG must be 8-bit grayscale, got {:?}",
                decoded.color()
            )));
        }
        let gray = decoded.into_luma8();
        let (w, h) = gray.dimensions();
        image_from_gray8(w as usize, h as usize, gray.as_raw())
    } else {
        let (w, h, data) = decode_pgm(bytes)?;
        image_from_gray8(w, h, &data)
    }
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Image> {
    decode_image(&fs::read(path)?)
}

fn is_png(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

/// Encodes a gray8 raster as PNG when `png` is set, PGM otherwise.
pub fn encode_gray8(width: usize, height: usize, data: &[u8], png: bool) -> Result<Vec<u8>> {
    if !png {
        return Ok(encode_pgm(width, height, data));
    }
    let mut out = Vec::new();
    image::codecs::png::PngEncoder::new(&mut out)
        .write_image(data, width as u32, height as u32, image::ExtendedColorType::L8)
        .map_err(|e| Error::Internal(format!("PNG encoding: {e}")))?;
    Ok(out)
}

/// Writes a gray8 raster; `.png` paths get PNG, anything else binary PGM.
pub fn write_gray8(path: impl AsRef<Path>, width: usize, height: usize, data: &[u8]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_gray8(width, height, data, is_png(path))?)?;
    Ok(())
}

pub fn write_image(path: impl AsRef<Path>, img: &Image) -> Result<()> {
    write_gray8(path, img.width(), img.height(), &image_to_gray8(img))
}
