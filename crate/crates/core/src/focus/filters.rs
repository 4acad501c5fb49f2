use crate::error::{Error, Result};
use crate::imaging::Image;
use crate::scalar::Real;

/// Upper bound of the raw Sobel modulus for intensities in `[0, 1]` (`4√2`).
pub const SOBEL_SCALE: f64 = 5.656854249492381;

/// Median over the `(2r+1)²` window, clipped at the borders.
///
/// Windows with an even number of pixels take the mean of the two middle values.
pub fn median_filter<T: Real>(img: &Image<T>, radius: usize) -> Result<Image<T>> {
    if radius == 0 {
        return Err(Error::InvalidParameter("median radius must be >= 1".into()));
    }
    let (w, h) = img.dims();
    let mut out = Vec::with_capacity(w * h);
    let mut window = Vec::with_capacity((2 * radius + 1).pow(2));
    for y in 0..h {
        let (y0, y1) = (y.saturating_sub(radius), (y + radius).min(h - 1));
        for x in 0..w {
            let (x0, x1) = (x.saturating_sub(radius), (x + radius).min(w - 1));
            window.clear();
            for yy in y0..=y1 {
                window.extend_from_slice(&img.values()[yy * w + x0..=yy * w + x1]);
            }
            window.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite intensities"));
            let n = window.len();
            let med = if n % 2 == 1 {
                window[n / 2]
            } else {
                (window[n / 2 - 1] + window[n / 2]) / T::lit(2.0)
            };
            out.push(med);
        }
    }
    Ok(Image::from_raw(w, h, out))
}

/// Sobel gradient modulus with replicate borders, divided by [`SOBEL_SCALE`].
pub fn gradient_modulus<T: Real>(img: &Image<T>) -> Result<Image<T>> {
    let (w, h) = img.dims();
    if w < 3 || h < 3 {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            min: 3,
        });
    }
    let two = T::lit(2.0);
    let scale = T::lit(SOBEL_SCALE);
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let p = |dx: isize, dy: isize| img.get_clamped(x + dx, y + dy);
            let gx = (p(1, -1) + two * p(1, 0) + p(1, 1)) - (p(-1, -1) + two * p(-1, 0) + p(-1, 1));
            let gy = (p(-1, 1) + two * p(0, 1) + p(1, 1)) - (p(-1, -1) + two * p(0, -1) + p(1, -1));
            out.push(((gx * gx + gy * gy).sqrt() / scale).min(T::one()));
        }
    }
    Ok(Image::from_raw(w, h, out))
}

/// Normalized 1-D Gaussian truncated at `ceil(3σ)`.
pub fn gaussian_kernel<T: Real>(sigma: T) -> Result<Vec<T>> {
    if !(sigma > T::zero() && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gaussian sigma must be positive, got {sigma}"
        )));
    }
    let radius = (T::lit(3.0) * sigma).ceil().to_usize().unwrap_or(0);
    let denom = T::lit(2.0) * sigma * sigma;
    let raw: Vec<T> = (0..=2 * radius)
        .map(|i| {
            let d = T::from_usize_lossy(i) - T::from_usize_lossy(radius);
            (-(d * d) / denom).exp()
        })
        .collect();
    let sum: T = raw.iter().copied().sum();
    Ok(raw.into_iter().map(|k| k / sum).collect())
}

/// Separable Gaussian blur with replicate borders.
pub fn gaussian_convolve<T: Real>(img: &Image<T>, sigma: T) -> Result<Image<T>> {
    let kernel = gaussian_kernel(sigma)?;
    let (w, h) = img.dims();
    let r = (kernel.len() / 2) as isize;
    let mut tmp = vec![T::zero(); w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (i, &k) in kernel.iter().enumerate() {
                acc = acc + k * img.get_clamped(x as isize + i as isize - r, y as isize);
            }
            tmp[y * w + x] = acc;
        }
    }
    let mut out = vec![T::zero(); w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (i, &k) in kernel.iter().enumerate() {
                let yy = (y as isize + i as isize - r).clamp(0, h as isize - 1) as usize;
                acc = acc + k * tmp[yy * w + x];
            }
            out[y * w + x] = acc;
        }
    }
    let (_, max) = img.min_max();
    // rounding can push a sum a hair past the input range
    for v in &mut out {
        *v = v.max(T::zero()).min(max);
    }
    Ok(Image::from_raw(w, h, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn median_keeps_constant() {
        let img = Image::constant(6, 5, 0.4).unwrap();
        assert_eq!(median_filter(&img, 1).unwrap(), img);
        assert!(median_filter(&img, 0).is_err());
    }

    #[test]
    fn median_removes_impulse() {
        let img = Image::from_fn(5, 5, |x, y| if (x, y) == (2, 2) { 1.0 } else { 0.0 }).unwrap();
        let out = median_filter(&img, 1).unwrap();
        assert!(out.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn median_center_of_ramp() {
        let img = Image::from_fn(3, 3, |x, y| (y * 3 + x + 1) as f64 / 9.0).unwrap();
        let out = median_filter(&img, 1).unwrap();
        assert_abs_diff_eq!(out.get(1, 1), 5.0 / 9.0, epsilon = 1e-15);
        // corner window {1,2,4,5}/9 -> (2+4)/2 / 9
        assert_abs_diff_eq!(out.get(0, 0), 3.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn gradient_constant_and_small() {
        let img = Image::constant(5, 5, 0.7).unwrap();
        assert!(gradient_modulus(&img).unwrap().values().iter().all(|v| *v == 0.0));
        let tiny = Image::constant(2, 5, 0.7).unwrap();
        assert!(matches!(gradient_modulus(&tiny), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn gradient_step_edge() {
        let img = Image::from_fn(10, 6, |x, _| if x < 5 { 0.0 } else { 1.0 }).unwrap();
        let g = gradient_modulus(&img).unwrap();
        for y in 0..6 {
            for x in 0..10 {
                let expected = if x == 4 || x == 5 { 4.0 / SOBEL_SCALE } else { 0.0 };
                assert_abs_diff_eq!(g.get(x, y), expected, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn gradient_ramp_interior_constant() {
        // Gx = 8/(w-1), Gy = 0 in the interior
        let w = 11;
        let img = Image::from_fn(w, 7, |x, _| x as f64 / (w - 1) as f64).unwrap();
        let g = gradient_modulus(&img).unwrap();
        let expected = 8.0 / (w - 1) as f64 / SOBEL_SCALE;
        for y in 0..7 {
            for x in 1..w - 1 {
                assert_abs_diff_eq!(g.get(x, y), expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn kernel_normalized() {
        let k = gaussian_kernel(1.0).unwrap();
        assert_eq!(k.len(), 7);
        assert_abs_diff_eq!(k.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        assert!(gaussian_kernel(0.0).is_err());
        assert_eq!(gaussian_kernel(2.1).unwrap().len(), 2 * 7 + 1);
    }

    #[test]
    fn gaussian_constant_unchanged() {
        let img = Image::constant(9, 7, 0.35).unwrap();
        let out = gaussian_convolve(&img, 1.7).unwrap();
        for v in out.values() {
            assert_abs_diff_eq!(*v, 0.35, epsilon = 1e-12);
        }
    }
}
