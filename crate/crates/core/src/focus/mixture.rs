use serde::{Deserialize, Serialize};

use super::map::FocusMap;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// One term `a · exp(-|p - c|² / 2σ²)` of a Gaussian mixture focus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent<T: Real = f64> {
    pub weight: T,
    pub center: (T, T),
    pub sigma: T,
}

/// Convex combination of isotropic Gaussians, normalized over the raster.
pub fn gaussian_mixture_focus<T: Real>(
    width: usize,
    height: usize,
    components: &[GaussianComponent<T>],
) -> Result<FocusMap<T>> {
    if components.is_empty() {
        return Err(Error::InvalidParameter(
            "gaussian mixture needs at least one component".into(),
        ));
    }
    for c in components {
        if !(c.weight > T::zero()) || !(c.sigma > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "component weight {} and sigma {} must be positive",
                c.weight, c.sigma
            )));
        }
    }
    let sum: T = components.iter().map(|c| c.weight).sum();
    if (sum - T::one()).abs() > T::lit(1e-9) {
        return Err(Error::InvalidParameter(format!(
            "mixture weights sum to {sum}, expected 1"
        )));
    }
    FocusMap::from_fn(width, height, |x, y| {
        let (xf, yf) = (T::from_usize_lossy(x), T::from_usize_lossy(y));
        components
            .iter()
            .map(|c| {
                let d2 = (xf - c.center.0).powi(2) + (yf - c.center.1).powi(2);
                c.weight * (-d2 / (T::lit(2.0) * c.sigma * c.sigma)).exp()
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(weight: f64, x: f64, y: f64, sigma: f64) -> GaussianComponent {
        GaussianComponent {
            weight,
            center: (x, y),
            sigma,
        }
    }

    #[test]
    fn centered_component_peaks_at_center() {
        let f = gaussian_mixture_focus(21, 15, &[comp(1.0, 10.0, 7.0, 3.0)]).unwrap();
        let max = f.max_weight();
        assert_eq!(f.get(10, 7), max);
        let peaks = f.weights().iter().filter(|w| **w == max).count();
        assert_eq!(peaks, 1);
        assert!((f.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_components_symmetric_weights() {
        let f = gaussian_mixture_focus(
            21,
            11,
            &[comp(0.5, 6.0, 5.0, 2.0), comp(0.5, 14.0, 5.0, 2.0)],
        )
        .unwrap();
        for y in 0..11 {
            for x in 0..21 {
                assert!((f.get(x, y) - f.get(20 - x, y)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn invalid_mixtures() {
        assert!(gaussian_mixture_focus::<f64>(5, 5, &[]).is_err());
        assert!(gaussian_mixture_focus(5, 5, &[comp(0.7, 1.0, 1.0, 1.0)]).is_err());
        assert!(gaussian_mixture_focus(5, 5, &[comp(1.0, 1.0, 1.0, 0.0)]).is_err());
        assert!(gaussian_mixture_focus(5, 5, &[comp(1.5, 1.0, 1.0, 1.0), comp(-0.5, 2.0, 2.0, 1.0)]).is_err());
    }
}
