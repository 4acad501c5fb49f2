use super::search::{register, RegistrationResult, SearchSpec};
use crate::error::{Error, Result};
use crate::focus::FocusMap;
use crate::imaging::{AffineTransform, BinningScheme, Image};
use crate::scalar::Real;

/// Coarse levels stop before either side drops below this many pixels.
const MIN_LEVEL_SIDE: usize = 8;

/// 2x2 box average; an odd trailing row/column is dropped.
pub fn downsample<T: Real>(img: &Image<T>) -> Result<Image<T>> {
    let (w, h) = (img.width() / 2, img.height() / 2);
    if w == 0 || h == 0 {
        return Err(Error::TooSmall {
            width: img.width(),
            height: img.height(),
            min: 2,
        });
    }
    let quarter = T::lit(0.25);
    Image::from_fn(w, h, |x, y| {
        (img.get(2 * x, 2 * y) + img.get(2 * x + 1, 2 * y) + img.get(2 * x, 2 * y + 1) + img.get(2 * x + 1, 2 * y + 1))
            * quarter
    })
}

fn downsample_focus<T: Real>(f: &FocusMap<T>) -> Result<FocusMap<T>> {
    let (w, h) = (f.width() / 2, f.height() / 2);
    FocusMap::from_fn(w, h, |x, y| {
        f.get(2 * x, 2 * y) + f.get(2 * x + 1, 2 * y) + f.get(2 * x, 2 * y + 1) + f.get(2 * x + 1, 2 * y + 1)
    })
}

/// Expresses a fine-level transform on the next coarser level.
///
/// Coarse pixel `q` covers fine pixels around `2q + 1/2`, so
/// `T_c(q) = (T_f(2q + 1/2) - 1/2) / 2`: the matrix is unchanged and the
/// translation roughly halves.
pub fn to_coarse<T: Real>(t: &AffineTransform<T>) -> AffineTransform<T> {
    let half = T::lit(0.5);
    let (cx, cy) = t.apply(half, half);
    AffineTransform {
        tx: (cx - half) * half,
        ty: (cy - half) * half,
        ..*t
    }
}

/// Inverse of [`to_coarse`].
pub fn to_fine<T: Real>(t: &AffineTransform<T>) -> AffineTransform<T> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    AffineTransform {
        tx: two * t.tx + half - (t.a11 + t.a12) * half,
        ty: two * t.ty + half - (t.a21 + t.a22) * half,
        ..*t
    }
}

/// Coarse-to-fine registration over `levels` dyadic pyramid levels.
///
/// Translation half-widths are read in pixels of each level, so the physical
/// translation box halves at every finer level. Restarts run on the
/// coarsest level only; each finer level starts from the propagated
/// estimate. With `levels == 1` this is exactly [`register`].
pub fn multiresolution_register<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    focus: Option<&FocusMap<T>>,
    spec: &SearchSpec<T>,
    scheme: &BinningScheme,
    levels: usize,
) -> Result<RegistrationResult<T>> {
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be >= 1".into()));
    }
    spec.validate()?;
    let mut refs = vec![reference.clone()];
    let mut tests = vec![test.clone()];
    let mut foci = vec![focus.cloned()];
    while refs.len() < levels {
        let (r, t) = (refs.last().unwrap(), tests.last().unwrap());
        let side = r.width().min(r.height()).min(t.width()).min(t.height());
        if side / 2 < MIN_LEVEL_SIDE {
            break;
        }
        let next_focus = match foci.last().unwrap() {
            Some(f) => Some(downsample_focus(f)?),
            None => None,
        };
        refs.push(downsample(r)?);
        tests.push(downsample(t)?);
        foci.push(next_focus);
    }
    let coarsest = refs.len() - 1;
    let mut initial = spec.initial;
    for _ in 0..coarsest {
        initial = to_coarse(&initial);
    }

    let mut evaluations = 0;
    let mut result = None;
    for level in (0..=coarsest).rev() {
        let level_spec = SearchSpec {
            initial,
            restarts: if level == coarsest { spec.restarts } else { 0 },
            ..spec.clone()
        };
        let r = register(&refs[level], &tests[level], foci[level].as_ref(), &level_spec, scheme)?;
        evaluations += r.evaluations;
        if level > 0 {
            initial = to_fine(&r.best);
        }
        result = Some(r);
    }
    let mut result = result.expect("at least one level");
    result.evaluations = evaluations;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_fine_round_trip() {
        let t: AffineTransform = AffineTransform::new(1.03, -0.02, 0.05, 0.98, 7.5, -3.0).unwrap();
        let back = to_fine(&to_coarse(&t));
        for (a, b) in back.to_params().iter().zip(t.to_params()) {
            assert!((a - b).abs() < 1e-12);
        }
        // translation by 4 fine pixels is 2 coarse pixels
        let c = to_coarse(&AffineTransform::<f64>::translation(4.0, -6.0));
        assert_eq!((c.tx, c.ty), (2.0, -3.0));
    }

    #[test]
    fn coarse_transform_consistent_with_sampling() {
        // fine point 2q + 1/2 maps under T_f to 2 T_c(q) + 1/2
        let t: AffineTransform = AffineTransform::new(0.97, 0.04, -0.03, 1.02, 5.0, 2.0).unwrap();
        let c = to_coarse(&t);
        let (qx, qy) = (3.0, 7.0);
        let (fx, fy) = t.apply(2.0 * qx + 0.5, 2.0 * qy + 0.5);
        let (cx, cy) = c.apply(qx, qy);
        assert!((2.0 * cx + 0.5 - fx).abs() < 1e-12);
        assert!((2.0 * cy + 0.5 - fy).abs() < 1e-12);
    }

    #[test]
    fn downsample_averages() {
        let img = Image::from_fn(5, 4, |x, y| (x + 5 * y) as f64 / 19.0).unwrap();
        let d = downsample(&img).unwrap();
        assert_eq!(d.dims(), (2, 2));
        assert!((d.get(0, 0) - (0.0 + 1.0 + 5.0 + 6.0) / 4.0 / 19.0).abs() < 1e-15);
        assert!(downsample(&Image::constant(1, 4, 0.5).unwrap()).is_err());
    }
}
