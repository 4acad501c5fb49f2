use super::filters::gaussian_convolve;
use super::map::FocusMap;
use crate::error::{Error, Result};
use crate::imaging::Image;
use crate::scalar::Real;

pub const DEFAULT_SPLINE_SIGMA: f64 = 3.0;

/// Maximal spacing between consecutive raster samples, in pixels.
const MAX_SAMPLE_GAP: f64 = 0.5;

/// Clamped uniform cubic B-spline in reference pixel coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineCurve<T: Real = f64> {
    control_points: Vec<(T, T)>,
    knots: Vec<T>,
}

impl<T: Real> SplineCurve<T> {
    pub const DEGREE: usize = 3;

    pub fn new(control_points: Vec<(T, T)>) -> Result<Self> {
        let n = control_points.len();
        if n < 4 {
            return Err(Error::InvalidParameter(format!(
                "cubic spline needs at least 4 control points, got {n}"
            )));
        }
        if control_points
            .iter()
            .any(|(x, y)| !(x.is_finite() && y.is_finite()))
        {
            return Err(Error::InvalidParameter("non-finite control point".into()));
        }
        let segments = T::from_usize_lossy(n - 3);
        let mut knots = vec![T::zero(); 4];
        knots.extend((1..n - 3).map(|i| T::from_usize_lossy(i) / segments));
        knots.extend([T::one(); 4]);
        Ok(Self {
            control_points,
            knots,
        })
    }

    pub fn control_points(&self) -> &[(T, T)] {
        &self.control_points
    }

    /// Curve point at parameter `u`, clamped into `[0, 1]` (de Boor).
    pub fn eval(&self, u: T) -> (T, T) {
        let p = Self::DEGREE;
        let n = self.control_points.len();
        let u = u.max(T::zero()).min(T::one());
        let mut span = p;
        while span < n - 1 && u >= self.knots[span + 1] {
            span += 1;
        }
        let mut d: Vec<(T, T)> = (0..=p).map(|j| self.control_points[j + span - p]).collect();
        for r in 1..=p {
            for j in (r..=p).rev() {
                let i = j + span - p;
                let denom = self.knots[i + p + 1 - r] - self.knots[i];
                let alpha = if denom > T::zero() {
                    (u - self.knots[i]) / denom
                } else {
                    T::zero()
                };
                d[j] = (
                    (T::one() - alpha) * d[j - 1].0 + alpha * d[j].0,
                    (T::one() - alpha) * d[j - 1].1 + alpha * d[j].1,
                );
            }
        }
        d[p]
    }

    fn polygon_length(&self) -> T {
        self.control_points
            .windows(2)
            .map(|w| ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt())
            .sum()
    }

    /// Uniform parameter samples with consecutive points less than half a pixel apart.
    pub fn sample_points(&self) -> Vec<(T, T)> {
        let gap = T::lit(MAX_SAMPLE_GAP);
        let mut count = (self.polygon_length() * T::lit(4.0))
            .ceil()
            .to_usize()
            .unwrap_or(0)
            .max(16);
        loop {
            let pts: Vec<(T, T)> = (0..=count)
                .map(|i| self.eval(T::from_usize_lossy(i) / T::from_usize_lossy(count)))
                .collect();
            let max_gap = pts
                .windows(2)
                .map(|w| ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt())
                .fold(T::zero(), T::max);
            if max_gap < gap || count > 1 << 24 {
                return pts;
            }
            count *= 2;
        }
    }
}

/// Binary image with value 1 on every pixel hit by a curve sample.
pub fn rasterize_curves<T: Real>(
    curves: &[SplineCurve<T>],
    width: usize,
    height: usize,
) -> Result<Image<T>> {
    let mut values = vec![T::zero(); width * height];
    let mut hits = 0usize;
    let half = T::lit(0.5);
    for curve in curves {
        for (x, y) in curve.sample_points() {
            let (px, py) = ((x + half).floor(), (y + half).floor());
            if px < T::zero() || py < T::zero() {
                continue;
            }
            let (Some(px), Some(py)) = (px.to_usize(), py.to_usize()) else {
                continue;
            };
            if px < width && py < height {
                values[py * width + px] = T::one();
                hits += 1;
            }
        }
    }
    if hits == 0 {
        return Err(Error::EmptyFocus);
    }
    Image::new(width, height, values)
}

/// Rasterized splines blurred by a Gaussian of width `sigma`, normalized.
pub fn spline_focus<T: Real>(
    curves: &[SplineCurve<T>],
    width: usize,
    height: usize,
    sigma: T,
) -> Result<FocusMap<T>> {
    if curves.is_empty() {
        return Err(Error::EmptyFocus);
    }
    let raster = rasterize_curves(curves, width, height)?;
    FocusMap::from_image(&gaussian_convolve(&raster, sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn clamped_ends_interpolate() {
        let c = SplineCurve::new(vec![(1.0, 2.0), (5.0, 9.0), (12.0, 3.0), (20.0, 8.0), (25.0, 1.0)]).unwrap();
        let (x0, y0) = c.eval(0.0);
        let (x1, y1) = c.eval(1.0);
        assert_abs_diff_eq!(x0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y0, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x1, 25.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y1, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn four_points_is_bezier() {
        let pts = vec![(0.0, 0.0), (3.0, 6.0), (9.0, 6.0), (12.0, 0.0)];
        let c = SplineCurve::new(pts.clone()).unwrap();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let b = [(1.0 - t).powi(3), 3.0 * t * (1.0 - t).powi(2), 3.0 * t * t * (1.0 - t), t.powi(3)];
            let ex: f64 = b.iter().zip(&pts).map(|(w, p)| w * p.0).sum();
            let ey: f64 = b.iter().zip(&pts).map(|(w, p)| w * p.1).sum();
            let (x, y) = c.eval(t);
            assert_abs_diff_eq!(x, ex, epsilon = 1e-12);
            assert_abs_diff_eq!(y, ey, epsilon = 1e-12);
        }
    }

    #[test]
    fn collinear_points_rasterize_on_line() {
        let c = SplineCurve::new(vec![(2.0, 2.0), (8.0, 5.0), (14.0, 8.0), (20.0, 11.0)]).unwrap();
        let img = rasterize_curves(&[c], 24, 16).unwrap();
        for y in 0..16 {
            for x in 0..24 {
                if img.get(x, y) > 0.0 {
                    // distance to the line y = 2 + (x - 2)/2
                    let d = ((x as f64 - 2.0) * 0.5 - (y as f64 - 2.0)).abs() / (1.25f64).sqrt();
                    assert!(d <= 1.0, "pixel ({x},{y}) off the line by {d}");
                    assert!((2..=20).contains(&x));
                }
            }
        }
    }

    #[test]
    fn samples_are_dense() {
        let c: SplineCurve = SplineCurve::new(vec![(0.0, 0.0), (100.0, 0.0), (100.0, 100.0), (0.0, 100.0), (0.0, 0.0)]).unwrap();
        let pts = c.sample_points();
        for w in pts.windows(2) {
            let d = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
            assert!(d < 0.5);
        }
    }

    #[test]
    fn invalid_curves() {
        assert!(SplineCurve::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).is_err());
        let outside = SplineCurve::new(vec![(-50.0, -50.0), (-40.0, -45.0), (-30.0, -50.0), (-20.0, -45.0)]).unwrap();
        assert!(matches!(spline_focus(&[outside], 10, 10, 2.0), Err(Error::EmptyFocus)));
        assert!(matches!(spline_focus::<f64>(&[], 10, 10, 2.0), Err(Error::EmptyFocus)));
    }
}
