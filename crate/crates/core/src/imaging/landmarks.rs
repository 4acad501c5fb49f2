use crate::error::{Error, Result};
use crate::imaging::AffineTransform;
use crate::scalar::Real;

/// Least-squares affine map `T` with `T(test[i]) ≈ reference[i]`.
///
/// Solved per output coordinate on centered coordinates, which keeps the
/// 2x2 normal equations well conditioned for pixel-scale inputs.
pub fn fit_affine_least_squares<T: Real>(
    reference: &[(T, T)],
    test: &[(T, T)],
) -> Result<AffineTransform<T>> {
    let n = reference.len();
    if n != test.len() {
        return Err(Error::DegenerateLandmarks(format!(
            "point lists differ in length ({} vs {})",
            n,
            test.len()
        )));
    }
    if n < 3 {
        return Err(Error::DegenerateLandmarks(format!(
            "need at least 3 point pairs, got {n}"
        )));
    }
    check_spread(reference, "reference")?;
    check_spread(test, "test")?;

    let nf = T::from_usize_lossy(n);
    let mean = |pts: &[(T, T)]| {
        let (sx, sy) = pts
            .iter()
            .fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x, b + y));
        (sx / nf, sy / nf)
    };
    let (mx, my) = mean(test);
    let (rx, ry) = mean(reference);

    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    let (mut sx_u, mut sy_u, mut sx_v, mut sy_v) = (T::zero(), T::zero(), T::zero(), T::zero());
    for (&(x, y), &(u, v)) in test.iter().zip(reference) {
        let (dx, dy, du, dv) = (x - mx, y - my, u - rx, v - ry);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
        sx_u = sx_u + dx * du;
        sy_u = sy_u + dy * du;
        sx_v = sx_v + dx * dv;
        sy_v = sy_v + dy * dv;
    }
    let det = sxx * syy - sxy * sxy;
    let a11 = (sx_u * syy - sy_u * sxy) / det;
    let a12 = (sy_u * sxx - sx_u * sxy) / det;
    let a21 = (sx_v * syy - sy_v * sxy) / det;
    let a22 = (sy_v * sxx - sx_v * sxy) / det;
    let tx = rx - a11 * mx - a12 * my;
    let ty = ry - a21 * mx - a22 * my;
    AffineTransform::new(a11, a12, a21, a22, tx, ty).map_err(|e| match e {
        Error::SingularTransform { det } => {
            Error::DegenerateLandmarks(format!("fitted transform is singular (det = {det:e})"))
        }
        other => other,
    })
}

/// Rejects point sets that are (numerically) collinear.
fn check_spread<T: Real>(pts: &[(T, T)], which: &str) -> Result<()> {
    let nf = T::from_usize_lossy(pts.len());
    let (sx, sy) = pts
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / nf, sy / nf);
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for &(x, y) in pts {
        let (dx, dy) = (x - mx, y - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    let trace = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    if !(trace > T::zero()) || det <= T::lit(1e-10) * trace * trace {
        return Err(Error::DegenerateLandmarks(format!(
            "{which} points are collinear or coincident"
        )));
    }
    Ok(())
}
