use std::fmt::Write as _;
use std::ops::Range;

use super::shannon::sorted_sum;
use crate::error::{Error, Result};
use crate::focus::FocusMap;
use crate::imaging::{AffineTransform, BinningScheme, Image};
use crate::scalar::Real;

/// `K x K` table of (weighted) gray-pair masses. Row index is the reference
/// bin, column index the test bin, both zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct JointHistogram<T: Real = f64> {
    bins: usize,
    mass: Vec<T>,
    total: T,
    row_marginal: Vec<T>,
    col_marginal: Vec<T>,
    overlap_count: usize,
}

impl<T: Real> JointHistogram<T> {
    /// Histogram from an explicit row-major mass grid.
    pub fn from_mass(bins: usize, mass: Vec<T>, overlap_count: usize) -> Result<Self> {
        if bins < 2 || mass.len() != bins * bins {
            return Err(Error::InvalidParameter(format!(
                "mass grid of {} cells does not match {bins} bins",
                mass.len()
            )));
        }
        if mass.iter().any(|m| !(m.is_finite() && *m >= T::zero())) {
            return Err(Error::InvalidParameter(
                "histogram masses must be nonnegative and finite".into(),
            ));
        }
        Ok(Self::from_parts(bins, mass, overlap_count))
    }

    fn from_parts(bins: usize, mass: Vec<T>, overlap_count: usize) -> Self {
        // order-independent sums keep every derived quantity invariant under
        // relabeling of either image's bins
        let row_marginal = mass.chunks_exact(bins).map(|row| sorted_sum(row.iter().copied())).collect();
        let col_marginal = (0..bins)
            .map(|l| sorted_sum(mass[l..].iter().step_by(bins).copied()))
            .collect();
        let total = sorted_sum(mass.iter().copied());
        Self {
            bins,
            mass,
            total,
            row_marginal,
            col_marginal,
            overlap_count,
        }
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Row-major mass grid.
    pub fn mass(&self) -> &[T] {
        &self.mass
    }

    #[inline]
    pub fn cell(&self, reference_bin: usize, test_bin: usize) -> T {
        self.mass[reference_bin * self.bins + test_bin]
    }

    pub fn total(&self) -> T {
        self.total
    }

    /// Marginal linked to the reference image (row sums).
    pub fn row_marginal(&self) -> &[T] {
        &self.row_marginal
    }

    /// Marginal linked to the test image (column sums).
    pub fn col_marginal(&self) -> &[T] {
        &self.col_marginal
    }

    pub fn overlap_count(&self) -> usize {
        self.overlap_count
    }

    /// Joint probabilities `mass / total`.
    pub fn probabilities(&self) -> Vec<T> {
        self.mass.iter().map(|&m| m / self.total).collect()
    }

    pub fn occupied_cells(&self) -> usize {
        self.mass.iter().filter(|m| **m > T::zero()).count()
    }

    /// Cell-wise sum with another partial histogram over a disjoint pixel set.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.bins != other.bins {
            return Err(Error::InvalidParameter(format!(
                "cannot merge {}-bin and {}-bin histograms",
                self.bins, other.bins
            )));
        }
        let mass = self
            .mass
            .iter()
            .zip(&other.mass)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self::from_parts(
            self.bins,
            mass,
            self.overlap_count + other.overlap_count,
        ))
    }

    /// Text matrix: `K` lines of `K` space-separated masses, row = reference bin.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.mass.chunks_exact(self.bins) {
            let line: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Focus-weighted joint histogram of `reference ∘ transform` against `test`.
///
/// Each test pixel `(m, n)` whose image `T(m, n)` falls inside the reference
/// domain contributes to cell `(bin(û(T(m,n))), bin(v(m,n)))` with weight 1
/// (`focus = None`) or the focus bilinearly sampled at `T(m, n)`.
pub fn accumulate_joint<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    transform: &AffineTransform<T>,
    scheme: &BinningScheme,
    focus: Option<&FocusMap<T>>,
) -> Result<JointHistogram<T>> {
    let h = accumulate_joint_rows(reference, test, transform, scheme, focus, 0..test.height())?;
    if h.overlap_count == 0 || !(h.total > T::zero()) {
        return Err(Error::EmptyOverlap);
    }
    Ok(h)
}

/// Partial histogram over the test rows in `rows`; may be empty.
pub fn accumulate_joint_rows<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    transform: &AffineTransform<T>,
    scheme: &BinningScheme,
    focus: Option<&FocusMap<T>>,
    rows: Range<usize>,
) -> Result<JointHistogram<T>> {
    accumulate_with_test_bins(reference, test.dims(), |i| scheme.index(test.values()[i]), transform, scheme, focus, rows)
}

/// Test-image gray bins, computed once for repeated accumulation against one test image.
pub(crate) fn test_bins<T: Real>(test: &Image<T>, scheme: &BinningScheme) -> Vec<u32> {
    test.values().iter().map(|&v| scheme.index(v) as u32).collect()
}

/// Accumulation core; `test_bin(i)` yields the bin of test pixel `i` (row-major).
pub(crate) fn accumulate_with_test_bins<T: Real>(
    reference: &Image<T>,
    (width, height): (usize, usize),
    test_bin: impl Fn(usize) -> usize,
    transform: &AffineTransform<T>,
    scheme: &BinningScheme,
    focus: Option<&FocusMap<T>>,
    rows: Range<usize>,
) -> Result<JointHistogram<T>> {
    if let Some(f) = focus {
        if f.dims() != reference.dims() {
            return Err(Error::DimensionMismatch {
                expected: reference.dims(),
                actual: f.dims(),
            });
        }
    }
    let k = scheme.bins();
    let mut mass = vec![T::zero(); k * k];
    let rows = rows.start.min(height)..rows.end.min(height);
    let mut count = 0usize;
    for y in rows {
        let yf = T::from_usize_lossy(y);
        for x in 0..width {
            let (rx, ry) = transform.apply(T::from_usize_lossy(x), yf);
            let Some(u) = reference.bilinear_sample(rx, ry) else {
                continue;
            };
            let w = match focus {
                None => T::one(),
                Some(f) => f.sample(rx, ry).unwrap_or(T::zero()),
            };
            let cell = scheme.index(u) * k + test_bin(y * width + x);
            mass[cell] = mass[cell] + w;
            count += 1;
        }
    }
    Ok(JointHistogram::from_parts(k, mass, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> Image {
        Image::new(2, 1, vec![0.1, 0.9]).unwrap()
    }

    #[test]
    fn unweighted_diagonal_counts() {
        let img = pair();
        let s = BinningScheme::new(4).unwrap();
        let h = accumulate_joint(&img, &img, &AffineTransform::identity(), &s, None).unwrap();
        assert_eq!(h.cell(0, 0), 1.0);
        assert_eq!(h.cell(3, 3), 1.0);
        assert_eq!(h.total(), 2.0);
        assert_eq!(h.overlap_count(), 2);
        assert_eq!(h.occupied_cells(), 2);
    }

    #[test]
    fn weighted_diagonal_masses() {
        let img = pair();
        let s = BinningScheme::new(4).unwrap();
        let f = FocusMap::new(2, 1, vec![0.75, 0.25]).unwrap();
        let h = accumulate_joint(&img, &img, &AffineTransform::identity(), &s, Some(&f)).unwrap();
        assert_eq!(h.cell(0, 0), 0.75);
        assert_eq!(h.cell(3, 3), 0.25);
        assert_eq!(h.row_marginal(), &[0.75, 0.0, 0.0, 0.25]);
        assert_eq!(h.col_marginal(), &[0.75, 0.0, 0.0, 0.25]);
    }

    #[test]
    fn empty_overlap_and_vanishing_focus() {
        let img = Image::from_fn(4, 4, |x, _| x as f64 / 3.0).unwrap();
        let s = BinningScheme::new(4).unwrap();
        assert!(matches!(
            accumulate_joint(&img, &img, &AffineTransform::translation(10.0, 0.0), &s, None),
            Err(Error::EmptyOverlap)
        ));
        // focus lives on column 0 only, overlap covers columns >= 2
        let f = FocusMap::from_fn(4, 4, |x, _| if x == 0 { 1.0 } else { 0.0 }).unwrap();
        assert!(matches!(
            accumulate_joint(&img, &img, &AffineTransform::translation(2.0, 0.0), &s, Some(&f)),
            Err(Error::EmptyOverlap)
        ));
    }

    #[test]
    fn focus_dimension_checked() {
        let img = pair();
        let f = FocusMap::<f64>::uniform(3, 1).unwrap();
        let s = BinningScheme::new(4).unwrap();
        assert!(matches!(
            accumulate_joint(&img, &img, &AffineTransform::identity(), &s, Some(&f)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn text_export_shape() {
        let img = pair();
        let s = BinningScheme::new(3).unwrap();
        let h = accumulate_joint(&img, &img, &AffineTransform::identity(), &s, None).unwrap();
        assert_eq!(h.to_text(), "1 0 0\n0 0 0\n0 0 1\n");
    }
}
