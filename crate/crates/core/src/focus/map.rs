use crate::error::{Error, Result};
use crate::imaging::{check_dims, sample_grid, Image};
use crate::scalar::Real;

/// Nonnegative weight field over the reference domain, normalized to sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusMap<T: Real = f64> {
    width: usize,
    height: usize,
    weights: Vec<T>,
}

impl<T: Real> FocusMap<T> {
    /// Normalizes `weights` to unit sum. Fails with [`Error::EmptyFocus`] when all vanish.
    pub fn new(width: usize, height: usize, weights: Vec<T>) -> Result<Self> {
        check_dims(width, height)?;
        if weights.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "focus needs {} weights, got {}",
                width * height,
                weights.len()
            )));
        }
        if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w >= T::zero())) {
            return Err(Error::Domain {
                value: bad.as_f64(),
                domain: "nonnegative finite focus weight",
            });
        }
        let total: T = weights.iter().copied().sum();
        if !(total > T::zero()) {
            return Err(Error::EmptyFocus);
        }
        let weights = weights.into_iter().map(|w| w / total).collect();
        Ok(Self {
            width,
            height,
            weights,
        })
    }

    /// Weights that already sum to 1 (within 1e-9) are kept bit for bit.
    pub fn from_normalized(width: usize, height: usize, weights: Vec<T>) -> Result<Self> {
        let f = Self::new(width, height, weights.clone())?;
        let total: T = weights.iter().copied().sum();
        if (total - T::one()).abs() > T::lit(1e-9) {
            return Err(Error::InvalidParameter(format!(
                "focus declared sum-normalized but sums to {total}"
            )));
        }
        Ok(Self { weights, ..f })
    }

    pub fn uniform(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![T::one(); width * height])
    }

    pub fn from_image(img: &Image<T>) -> Result<Self> {
        Self::new(img.width(), img.height(), img.values().to_vec())
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        check_dims(width, height)?;
        let mut w = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                w.push(f(x, y));
            }
        }
        Self::new(width, height, w)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.weights[y * self.width + x]
    }

    /// Bilinear interpolation of the weights; `None` outside the pixel-center hull.
    #[inline]
    pub fn sample(&self, x: T, y: T) -> Option<T> {
        sample_grid(&self.weights, self.width, self.height, x, y)
    }

    pub fn total(&self) -> T {
        self.weights.iter().copied().sum()
    }

    pub fn max_weight(&self) -> T {
        self.weights.iter().copied().fold(T::zero(), T::max)
    }

    pub fn support_len(&self) -> usize {
        self.weights.iter().filter(|w| **w > T::zero()).count()
    }

    /// 8-bit visualization with the maximal weight mapped to 255.
    pub fn to_gray8(&self) -> Vec<u8> {
        let max = self.max_weight();
        self.weights
            .iter()
            .map(|&w| {
                (w / max * T::lit(255.0))
                    .round()
                    .max(T::zero())
                    .min(T::lit(255.0))
                    .to_u8()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Fraction of the total mass on pixels selected by `region`.
    pub fn mass_where(&self, region: impl Fn(usize, usize) -> bool) -> T {
        let mut s = T::zero();
        for y in 0..self.height {
            for x in 0..self.width {
                if region(x, y) {
                    s = s + self.get(x, y);
                }
            }
        }
        s
    }
}

/// Boolean raster, e.g. a patch indicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    flags: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, flags: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if flags.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "mask needs {} flags, got {}",
                width * height,
                flags.len()
            )));
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_dims(width, height)?;
        let mut flags = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                flags.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.flags[y * self.width + x]
    }

    /// Out-of-raster coordinates read as false.
    #[inline]
    pub fn get_or_false(&self, x: isize, y: isize) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.width
            && (y as usize) < self.height
            && self.get(x as usize, y as usize)
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|f| **f).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// True when every set flag of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.dims() == other.dims() && self.flags.iter().zip(&other.flags).all(|(a, b)| !a || *b)
    }
}
