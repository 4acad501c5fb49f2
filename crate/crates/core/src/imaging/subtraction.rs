use crate::error::{Error, Result};
use crate::imaging::{AffineTransform, Image};
use crate::scalar::Real;

/// Signed difference `reference(T(p)) - test(p)` over the test raster.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtractionImage<T: Real = f64> {
    width: usize,
    height: usize,
    values: Vec<T>,
    mask: Vec<bool>,
}

impl<T: Real> SubtractionImage<T> {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Differences in `[-1, 1]`; zero where the mask is false.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn get(&self, x: usize, y: usize) -> Option<T> {
        let i = y * self.width + x;
        self.mask[i].then(|| self.values[i])
    }

    pub fn overlap_count(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }

    /// Root-mean-square difference over the overlap pixels selected by `region`.
    pub fn rms_where(&self, region: impl Fn(usize, usize) -> bool) -> Option<T> {
        let mut sum = T::zero();
        let mut n = 0usize;
        for y in 0..self.height {
            for x in 0..self.width {
                let i = y * self.width + x;
                if self.mask[i] && region(x, y) {
                    sum = sum + self.values[i] * self.values[i];
                    n += 1;
                }
            }
        }
        (n > 0).then(|| (sum / T::from_usize_lossy(n)).sqrt())
    }

    /// 8-bit rendering: difference `d` maps to `clamp(round(128 + 128 d), 0, 255)`,
    /// pixels outside the overlap to 0.
    pub fn to_gray8(&self) -> Vec<u8> {
        self.values
            .iter()
            .zip(&self.mask)
            .map(|(&d, &m)| if m { encode_difference(d) } else { 0 })
            .collect()
    }
}

/// Mid-gray encoding of a signed difference.
pub fn encode_difference<T: Real>(d: T) -> u8 {
    let v = (T::lit(128.0) + T::lit(128.0) * d).round();
    v.max(T::zero()).min(T::lit(255.0)).to_u8().unwrap_or(0)
}

/// Digital subtraction of the reference, resampled through `transform`, minus the test image.
pub fn subtract<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    transform: &AffineTransform<T>,
) -> Result<SubtractionImage<T>> {
    let (w, h) = test.dims();
    let mut values = vec![T::zero(); w * h];
    let mut mask = vec![false; w * h];
    let mut any = false;
    for y in 0..h {
        for x in 0..w {
            let (rx, ry) = transform.apply(T::from_usize_lossy(x), T::from_usize_lossy(y));
            if let Some(s) = reference.bilinear_sample(rx, ry) {
                let i = y * w + x;
                values[i] = s - test.get(x, y);
                mask[i] = true;
                any = true;
            }
        }
    }
    if !any {
        return Err(Error::EmptyOverlap);
    }
    Ok(SubtractionImage {
        width: w,
        height: h,
        values,
        mask,
    })
}
