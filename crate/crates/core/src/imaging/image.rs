use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest raster accepted anywhere in the toolkit (16 megapixels).
pub const MAX_PIXELS: usize = 16 * 1024 * 1024;

/// Row-major grayscale raster with intensities in `[0, 1]`.
///
/// Pixel `(x, y)` has its center at real coordinates `(x, y)`: origin at the
/// top-left, `x` along the row (column index), `y` downward (row index).
#[derive(Debug, Clone, PartialEq)]
pub struct Image<T: Real = f64> {
    width: usize,
    height: usize,
    values: Vec<T>,
}

pub(crate) fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidImage(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    match width.checked_mul(height) {
        Some(n) if n <= MAX_PIXELS => Ok(()),
        _ => Err(Error::InvalidImage(format!(
            "{width}x{height} exceeds the {MAX_PIXELS} pixel limit"
        ))),
    }
}

impl<T: Real> Image<T> {
    pub fn new(width: usize, height: usize, values: Vec<T>) -> Result<Self> {
        check_dims(width, height)?;
        if values.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "expected {} values for {width}x{height}, got {}",
                width * height,
                values.len()
            )));
        }
        if let Some(bad) = values
            .iter()
            .find(|v| !(**v >= T::zero() && **v <= T::one()))
        {
            return Err(Error::Domain {
                value: bad.as_f64(),
                domain: "[0, 1] intensity",
            });
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// Builds an image from `f(x, y)`; values are clamped into `[0, 1]`, NaN becomes 0.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        check_dims(width, height)?;
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(clamp_unit(f(x, y)));
            }
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn constant(width: usize, height: usize, value: T) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Constructor for already-validated data produced inside the crate.
    pub(crate) fn from_raw(width: usize, height: usize, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), width * height);
        Self {
            width,
            height,
            values,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.values[y * self.width + x]
    }

    /// Pixel access with coordinates clamped to the raster (replicate border).
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> T {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    pub fn min_max(&self) -> (T, T) {
        self.values
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Bilinear interpolation at real coordinates.
    ///
    /// Returns `None` outside the closed convex hull of the pixel centers,
    /// i.e. unless `0 <= x <= width-1` and `0 <= y <= height-1`.
    #[inline]
    pub fn bilinear_sample(&self, x: T, y: T) -> Option<T> {
        sample_grid(&self.values, self.width, self.height, x, y)
    }

    /// Same image with every value converted to another scalar type.
    pub fn cast<U: Real>(&self) -> Image<U> {
        Image {
            width: self.width,
            height: self.height,
            values: self
                .values
                .iter()
                .map(|v| U::lit(v.as_f64()))
                .collect(),
        }
    }

    /// Rectangular sub-image `[x0, x0+w) x [y0, y0+h)`.
    pub fn crop(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<Self> {
        if w == 0 || h == 0 || x0 + w > self.width || y0 + h > self.height {
            return Err(Error::InvalidParameter(format!(
                "crop {w}x{h}+{x0}+{y0} outside {}x{}",
                self.width, self.height
            )));
        }
        let mut values = Vec::with_capacity(w * h);
        for y in y0..y0 + h {
            values.extend_from_slice(&self.values[y * self.width + x0..y * self.width + x0 + w]);
        }
        Ok(Self::from_raw(w, h, values))
    }
}

#[inline]
pub(crate) fn clamp_unit<T: Real>(v: T) -> T {
    if v.is_nan() {
        T::zero()
    } else {
        v.max(T::zero()).min(T::one())
    }
}

/// Bilinear interpolation on a raw row-major grid; shared by images and focus maps.
#[inline]
pub(crate) fn sample_grid<T: Real>(values: &[T], width: usize, height: usize, x: T, y: T) -> Option<T> {
    let max_x = T::from_usize_lossy(width - 1);
    let max_y = T::from_usize_lossy(height - 1);
    if !(x >= T::zero() && x <= max_x && y >= T::zero() && y <= max_y) {
        return None;
    }
    let (x0, fx) = cell(x, width);
    let (y0, fy) = cell(y, height);
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    let v00 = values[y0 * width + x0];
    let v10 = values[y0 * width + x1];
    let v01 = values[y1 * width + x0];
    let v11 = values[y1 * width + x1];
    let one = T::one();
    Some(
        (one - fx) * (one - fy) * v00
            + fx * (one - fy) * v10
            + (one - fx) * fy * v01
            + fx * fy * v11,
    )
}

/// Lower cell index and fractional offset of an in-range coordinate.
#[inline]
fn cell<T: Real>(c: T, n: usize) -> (usize, T) {
    if n == 1 {
        return (0, T::zero());
    }
    // c >= 0 here, so truncation is floor
    let i = c.floor_index().min(n - 2);
    (i, c - T::from_usize_lossy(i))
}
