use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_BINS: usize = 64;

/// Uniform partition of `[0, 1]` into `bins` half-open intervals, with 1.0 in the last bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinningScheme {
    bins: usize,
}

impl Default for BinningScheme {
    fn default() -> Self {
        Self { bins: DEFAULT_BINS }
    }
}

impl BinningScheme {
    pub fn new(bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 gray bins, got {bins}"
            )));
        }
        Ok(Self { bins })
    }

    #[inline]
    pub fn bins(&self) -> usize {
        self.bins
    }

    /// One-based bin label `k = floor(x*K) + 1`, clamped to `K`.
    pub fn bin<T: Real>(&self, x: T) -> Result<usize> {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(Error::Domain {
                value: x.as_f64(),
                domain: "[0, 1] intensity",
            });
        }
        Ok(self.index(x) + 1)
    }

    /// Zero-based bin index of an intensity already known to lie in `[0, 1]`.
    #[inline]
    pub fn index<T: Real>(&self, x: T) -> usize {
        // truncation equals floor for nonnegative input
        (x * T::from_usize_lossy(self.bins)).floor_index().min(self.bins - 1)
    }

    /// Lower edge of the zero-based bin `index`.
    pub fn lower_edge<T: Real>(&self, index: usize) -> T {
        T::from_usize_lossy(index) / T::from_usize_lossy(self.bins)
    }
}
