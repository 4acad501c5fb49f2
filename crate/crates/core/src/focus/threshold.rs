use super::map::BinaryMask;
use crate::error::{Error, Result};
use crate::imaging::{BinningScheme, Image};
use crate::scalar::Real;

/// `flag = value >= t`.
pub fn threshold_mask<T: Real>(img: &Image<T>, t: T) -> Result<BinaryMask> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::Domain {
            value: t.as_f64(),
            domain: "[0, 1] threshold",
        });
    }
    BinaryMask::new(
        img.width(),
        img.height(),
        img.values().iter().map(|&v| v >= t).collect(),
    )
}

/// Otsu threshold over the `K` gray bins of `scheme`.
///
/// Candidate `k` splits the bins into `[0, k)` and `[k, K)`; the returned
/// intensity is the lower edge `k / K` of the upper class. Ties in
/// between-class variance resolve to the smallest `k`.
pub fn otsu_threshold<T: Real>(img: &Image<T>, scheme: &BinningScheme) -> Result<T> {
    let k = scheme.bins();
    let mut counts = vec![0usize; k];
    for &v in img.values() {
        counts[scheme.index(v)] += 1;
    }
    if counts.iter().filter(|c| **c > 0).count() < 2 {
        return Err(Error::NoThreshold);
    }
    let n = img.len() as f64;
    let total_moment: f64 = counts.iter().enumerate().map(|(i, &c)| i as f64 * c as f64).sum();
    let mut best: Option<(usize, f64)> = None;
    let (mut w0, mut m0) = (0.0f64, 0.0f64);
    for split in 1..k {
        w0 += counts[split - 1] as f64;
        m0 += (split - 1) as f64 * counts[split - 1] as f64;
        let w1 = n - w0;
        if w0 == 0.0 || w1 == 0.0 {
            continue;
        }
        let mu0 = m0 / w0;
        let mu1 = (total_moment - m0) / w1;
        let between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if best.map_or(true, |(_, b)| between > b) {
            best = Some((split, between));
        }
    }
    let (split, _) = best.ok_or(Error::NoThreshold)?;
    Ok(scheme.lower_edge(split))
}
