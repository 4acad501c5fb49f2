use super::map::{BinaryMask, FocusMap};
use crate::error::{Error, Result};
use crate::imaging::Image;
use crate::scalar::Real;

/// Offsets of the discrete disk `{(dx, dy) : dx² + dy² <= r²}`.
pub fn disk_offsets(radius: usize) -> Vec<(isize, isize)> {
    let r = radius as isize;
    let mut out = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r * r {
                out.push((dx, dy));
            }
        }
    }
    out
}

fn check_radius(radius: usize) -> Result<()> {
    if radius == 0 {
        return Err(Error::InvalidParameter(
            "structuring element radius must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Dilation by a disk; pixels outside the raster count as false.
pub fn morph_dilate(mask: &BinaryMask, radius: usize) -> Result<BinaryMask> {
    check_radius(radius)?;
    Ok(dilate_raw(mask, &disk_offsets(radius)))
}

/// Erosion by a disk; pixels outside the raster count as false.
pub fn morph_erode(mask: &BinaryMask, radius: usize) -> Result<BinaryMask> {
    check_radius(radius)?;
    Ok(erode_raw(mask, &disk_offsets(radius)))
}

/// Closing (dilate, then erode) by a disk.
///
/// Computed on a canvas padded by `radius` so the dilation is never clipped;
/// this keeps the operation extensive and idempotent up to the borders.
pub fn morph_close(mask: &BinaryMask, radius: usize) -> Result<BinaryMask> {
    check_radius(radius)?;
    let (w, h) = mask.dims();
    let (pw, ph) = (w + 2 * radius, h + 2 * radius);
    let padded = BinaryMask::from_fn(pw, ph, |x, y| {
        mask.get_or_false(x as isize - radius as isize, y as isize - radius as isize)
    })?;
    let disk = disk_offsets(radius);
    let closed = erode_raw(&dilate_raw(&padded, &disk), &disk);
    BinaryMask::from_fn(w, h, |x, y| closed.get(x + radius, y + radius))
}

fn dilate_raw(mask: &BinaryMask, disk: &[(isize, isize)]) -> BinaryMask {
    let (w, h) = mask.dims();
    let mut flags = vec![false; w * h];
    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            for &(dx, dy) in disk {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx >= 0 && ny >= 0 && (nx as usize) < w && (ny as usize) < h {
                    flags[ny as usize * w + nx as usize] = true;
                }
            }
        }
    }
    BinaryMask::new(w, h, flags).expect("dimensions preserved")
}

fn erode_raw(mask: &BinaryMask, disk: &[(isize, isize)]) -> BinaryMask {
    let (w, h) = mask.dims();
    BinaryMask::from_fn(w, h, |x, y| {
        disk.iter()
            .all(|&(dx, dy)| mask.get_or_false(x as isize + dx, y as isize + dy))
    })
    .expect("dimensions preserved")
}

/// Flag-wise negation.
pub fn complement(mask: &BinaryMask) -> BinaryMask {
    BinaryMask::new(
        mask.width(),
        mask.height(),
        mask.flags().iter().map(|f| !f).collect(),
    )
    .expect("dimensions preserved")
}

/// Pointwise product of weights and a patch indicator, normalized into a focus map.
pub fn mask_multiply<T: Real>(weights: &Image<T>, mask: &BinaryMask) -> Result<FocusMap<T>> {
    if weights.dims() != mask.dims() {
        return Err(Error::DimensionMismatch {
            expected: weights.dims(),
            actual: mask.dims(),
        });
    }
    let product: Vec<T> = weights
        .values()
        .iter()
        .zip(mask.flags())
        .map(|(&w, &m)| if m { w } else { T::zero() })
        .collect();
    FocusMap::new(weights.width(), weights.height(), product)
}
