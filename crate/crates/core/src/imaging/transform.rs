use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest determinant magnitude accepted for an invertible transform.
pub const MIN_DETERMINANT: f64 = 1e-12;

/// Planar affine map `p -> A p + t`, mapping test-image coordinates into
/// reference-image coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTransform<T: Real = f64> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
    pub tx: T,
    pub ty: T,
}

impl<T: Real> AffineTransform<T> {
    /// Validating constructor; rejects `|det| <= 1e-12` and non-finite entries.
    pub fn new(a11: T, a12: T, a21: T, a22: T, tx: T, ty: T) -> Result<Self> {
        let t = Self {
            a11,
            a12,
            a21,
            a22,
            tx,
            ty,
        };
        if !t.to_params().iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter(
                "affine transform has non-finite entries".into(),
            ));
        }
        let det = t.determinant();
        if det.abs() <= T::lit(MIN_DETERMINANT) {
            return Err(Error::SingularTransform { det: det.as_f64() });
        }
        Ok(t)
    }

    pub fn identity() -> Self {
        Self {
            a11: T::one(),
            a12: T::zero(),
            a21: T::zero(),
            a22: T::one(),
            tx: T::zero(),
            ty: T::zero(),
        }
    }

    pub fn translation(tx: T, ty: T) -> Self {
        Self {
            tx,
            ty,
            ..Self::identity()
        }
    }

    /// Rotation by `angle` radians (counter-clockwise in x-right/y-up terms),
    /// uniform `scale`, then translation.
    pub fn similarity(angle: T, scale: T, tx: T, ty: T) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        Self::new(scale * c, -scale * s, scale * s, scale * c, tx, ty)
    }

    #[inline]
    pub fn determinant(&self) -> T {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    #[inline]
    pub fn apply(&self, x: T, y: T) -> (T, T) {
        (
            self.a11 * x + self.a12 * y + self.tx,
            self.a21 * x + self.a22 * y + self.ty,
        )
    }

    /// `self ∘ inner`: applying the result equals applying `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a11: self.a11 * inner.a11 + self.a12 * inner.a21,
            a12: self.a11 * inner.a12 + self.a12 * inner.a22,
            a21: self.a21 * inner.a11 + self.a22 * inner.a21,
            a22: self.a21 * inner.a12 + self.a22 * inner.a22,
            tx: self.a11 * inner.tx + self.a12 * inner.ty + self.tx,
            ty: self.a21 * inner.tx + self.a22 * inner.ty + self.ty,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if det.abs() <= T::lit(MIN_DETERMINANT) {
            return Err(Error::SingularTransform { det: det.as_f64() });
        }
        let a11 = self.a22 / det;
        let a12 = -self.a12 / det;
        let a21 = -self.a21 / det;
        let a22 = self.a11 / det;
        Ok(Self {
            a11,
            a12,
            a21,
            a22,
            tx: -(a11 * self.tx + a12 * self.ty),
            ty: -(a21 * self.tx + a22 * self.ty),
        })
    }

    /// Parameter vector in the order `(a11, a12, a21, a22, tx, ty)`.
    #[inline]
    pub fn to_params(&self) -> [T; 6] {
        [self.a11, self.a12, self.a21, self.a22, self.tx, self.ty]
    }

    pub fn from_params(p: [T; 6]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3], p[4], p[5])
    }

    pub fn cast<U: Real>(&self) -> AffineTransform<U> {
        let p = self.to_params();
        AffineTransform {
            a11: U::lit(p[0].as_f64()),
            a12: U::lit(p[1].as_f64()),
            a21: U::lit(p[2].as_f64()),
            a22: U::lit(p[3].as_f64()),
            tx: U::lit(p[4].as_f64()),
            ty: U::lit(p[5].as_f64()),
        }
    }

    /// Mean Euclidean distance between the images of `points` under two transforms.
    pub fn mean_displacement(&self, other: &Self, points: &[(T, T)]) -> T {
        if points.is_empty() {
            return T::zero();
        }
        let total: T = points
            .iter()
            .map(|&(x, y)| {
                let (ax, ay) = self.apply(x, y);
                let (bx, by) = other.apply(x, y);
                ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt()
            })
            .sum();
        total / T::from_usize_lossy(points.len())
    }
}

impl<T: Real> Default for AffineTransform<T> {
    fn default() -> Self {
        Self::identity()
    }
}

/// The four corner pixel centers of a `width x height` raster.
pub fn corners<T: Real>(width: usize, height: usize) -> [(T, T); 4] {
    let w = T::from_usize_lossy(width - 1);
    let h = T::from_usize_lossy(height - 1);
    [(T::zero(), T::zero()), (w, T::zero()), (T::zero(), h), (w, h)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn apply_examples() {
        let id = AffineTransform::<f64>::identity();
        assert_eq!(id.apply(3.0, 5.0), (3.0, 5.0));
        let t = AffineTransform::translation(2.0, -1.0);
        assert_eq!(t.apply(0.0, 0.0), (2.0, -1.0));
        let rot = AffineTransform::new(0.0, -1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(rot.apply(1.0, 0.0), (0.0, 1.0));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            AffineTransform::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0),
            Err(Error::SingularTransform { .. })
        ));
        assert!(AffineTransform::new(1.0, 0.0, 0.0, 1.0, f64::NAN, 0.0).is_err());
    }

    fn arb_affine() -> impl Strategy<Value = AffineTransform<f64>> {
        (
            0.5f64..2.0,
            -0.5f64..0.5,
            -0.5f64..0.5,
            0.5f64..2.0,
            -50.0f64..50.0,
            -50.0f64..50.0,
        )
            .prop_map(|(a, b, c, d, e, f)| AffineTransform::new(a, b, c, d, e, f).unwrap())
    }

    proptest! {
        #[test]
        fn compose_matches_sequential_application(
            s in arb_affine(), t in arb_affine(), x in -100.0f64..100.0, y in -100.0f64..100.0
        ) {
            let st = s.compose(&t);
            let (ax, ay) = st.apply(x, y);
            let (tx, ty) = t.apply(x, y);
            let (bx, by) = s.apply(tx, ty);
            prop_assert!((ax - bx).abs() < 1e-9 && (ay - by).abs() < 1e-9);
        }

        #[test]
        fn inverse_composes_to_identity(t in arb_affine()) {
            let id = t.compose(&t.inverse().unwrap());
            for (p, q) in id.to_params().iter().zip(AffineTransform::<f64>::identity().to_params()) {
                prop_assert!((p - q).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn similarity_rotates() {
        let t = AffineTransform::similarity(std::f64::consts::FRAC_PI_2, 1.0, 0.0, 0.0).unwrap();
        let (x, y) = t.apply(1.0, 0.0);
        assert_abs_diff_eq!(x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y, 1.0, epsilon = 1e-15);
    }
}
