use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance on `Σ p = 1` accepted by [`shannon_entropy`].
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-9;

/// Shannon entropy `-Σ p ln p` in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &[T]) -> Result<T> {
    if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v >= T::zero())) {
        return Err(Error::InvalidDistribution(format!(
            "entry {bad} is negative or not finite"
        )));
    }
    let sum: T = p.iter().copied().sum();
    if (sum - T::one()).abs() > T::lit(DISTRIBUTION_TOLERANCE) {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {sum}, expected 1"
        )));
    }
    Ok(entropy_unchecked(p.iter().copied()))
}

/// `-Σ p ln p` over an iterator of probabilities, skipping zeros.
#[inline]
pub(crate) fn entropy_unchecked<T: Real>(p: impl Iterator<Item = T>) -> T {
    sorted_sum(p.filter(|v| *v > T::zero()).map(|v| -(v * v.ln())))
}

/// Sum of the nonzero terms in ascending order, so the result depends only
/// on the multiset of terms and not on their arrangement.
pub(crate) fn sorted_sum<T: Real>(terms: impl Iterator<Item = T>) -> T {
    let mut buf: Vec<T> = terms.filter(|v| *v != T::zero()).collect();
    buf.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    buf.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// Entropy of the distribution `masses / total`, summed in slice order.
#[inline]
pub(crate) fn entropy_of_masses<T: Real>(masses: &[T], total: T) -> T {
    entropy_unchecked(masses.iter().map(|&m| m / total))
}
