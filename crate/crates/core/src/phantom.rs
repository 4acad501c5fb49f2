//! Synthetic scenes standing in for radiographs: smooth-edged shapes with
//! optional random texture, rendered through an affine transform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::imaging::{AffineTransform, Image};

/// Width of the logistic edge transition, in pixels.
const EDGE_SOFTNESS: f64 = 0.6;

/// Smooth random field: a sum of isotropic Gaussian bumps, roughly in `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct Texture {
    bumps: Vec<(f64, f64, f64, f64)>,
}

impl Texture {
    /// `count` bumps with centers in `[-margin, width+margin] x [-margin, height+margin]`
    /// and widths in `sigma_range`.
    pub fn random(seed: u64, width: f64, height: f64, count: usize, sigma_range: (f64, f64)) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let margin = sigma_range.1 * 2.0;
        let bumps = (0..count)
            .map(|_| {
                (
                    rng.gen_range(-margin..width + margin),
                    rng.gen_range(-margin..height + margin),
                    rng.gen_range(sigma_range.0..sigma_range.1),
                    rng.gen_range(-1.0..1.0),
                )
            })
            .collect();
        Self { bumps }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let v: f64 = self
            .bumps
            .iter()
            .map(|&(cx, cy, s, a)| a * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * s * s)).exp())
            .sum();
        v.tanh()
    }
}

/// Region with a soft boundary.
#[derive(Debug, Clone, Copy)]
pub enum Shape {
    Ellipse { cx: f64, cy: f64, rx: f64, ry: f64 },
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
    /// Annulus between two concentric ellipses of the given half-thickness.
    Ring { cx: f64, cy: f64, rx: f64, ry: f64, half_width: f64 },
}

fn logistic(d: f64) -> f64 {
    1.0 / (1.0 + (-d / EDGE_SOFTNESS).exp())
}

impl Shape {
    /// Approximate signed distance to the boundary, positive inside.
    pub fn signed_distance(&self, x: f64, y: f64) -> f64 {
        match *self {
            Shape::Ellipse { cx, cy, rx, ry } => {
                let rho = (((x - cx) / rx).powi(2) + ((y - cy) / ry).powi(2)).sqrt();
                (1.0 - rho) * rx.min(ry)
            }
            Shape::Rect { x0, y0, x1, y1 } => (x - x0).min(x1 - x).min(y - y0).min(y1 - y),
            Shape::Ring { cx, cy, rx, ry, half_width } => {
                let rho = (((x - cx) / rx).powi(2) + ((y - cy) / ry).powi(2)).sqrt();
                half_width - ((rho - 1.0) * rx.min(ry)).abs()
            }
        }
    }

    pub fn coverage(&self, x: f64, y: f64) -> f64 {
        logistic(self.signed_distance(x, y))
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.signed_distance(x, y) >= 0.0
    }
}

/// Shape with an intensity increment, optional texture and a rigid offset.
#[derive(Debug, Clone)]
pub struct Layer {
    pub shape: Shape,
    pub level: f64,
    pub texture: Option<(Texture, f64)>,
    /// The layer content appears displaced by this vector.
    pub offset: (f64, f64),
}

impl Layer {
    pub fn flat(shape: Shape, level: f64) -> Self {
        Self {
            shape,
            level,
            texture: None,
            offset: (0.0, 0.0),
        }
    }

    pub fn textured(shape: Shape, level: f64, texture: Texture, amplitude: f64) -> Self {
        Self {
            shape,
            level,
            texture: Some((texture, amplitude)),
            offset: (0.0, 0.0),
        }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let (x, y) = (x - self.offset.0, y - self.offset.1);
        let c = self.shape.coverage(x, y);
        if c < 1e-12 {
            return 0.0;
        }
        let tex = self.texture.as_ref().map_or(0.0, |(t, a)| a * t.eval(x, y));
        c * (self.level + tex)
    }
}

/// Background plus additive layers, evaluated at continuous coordinates.
#[derive(Debug, Clone)]
pub struct Scene {
    pub background: f64,
    pub background_texture: Option<(Texture, f64)>,
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let base = self.background
            + self
                .background_texture
                .as_ref()
                .map_or(0.0, |(t, a)| a * t.eval(x, y));
        let v = base + self.layers.iter().map(|l| l.eval(x, y)).sum::<f64>();
        v.clamp(0.0, 1.0)
    }

    /// Image with `v(p) = scene(T(p))`, so `T` is the transform registering it to [`Scene::render`].
    pub fn render_warped(&self, width: usize, height: usize, t: &AffineTransform) -> Result<Image> {
        Image::from_fn(width, height, |x, y| {
            let (sx, sy) = t.apply(x as f64, y as f64);
            self.eval(sx, sy)
        })
    }

    pub fn render(&self, width: usize, height: usize) -> Result<Image> {
        self.render_warped(width, height, &AffineTransform::identity())
    }
}

/// Smooth random texture filling the whole frame.
pub fn textured_scene(seed: u64, width: usize, height: usize) -> Scene {
    let (w, h) = (width as f64, height as f64);
    Scene {
        background: 0.5,
        background_texture: Some((Texture::random(seed, w, h, (w * h / 120.0) as usize + 8, (3.0, 9.0)), 0.42)),
        layers: Vec::new(),
    }
}

/// Tooth (mid-gray ellipse) carrying a bright restoration, over dark textured tissue.
pub struct RestorationPhantom {
    pub scene: Scene,
    pub restoration: Shape,
    pub tooth: Shape,
}

pub fn restoration_phantom(width: usize, height: usize) -> RestorationPhantom {
    let (w, h) = (width as f64, height as f64);
    let tooth = Shape::Ellipse {
        cx: 0.5 * w,
        cy: 0.55 * h,
        rx: 0.24 * w,
        ry: 0.33 * h,
    };
    let restoration = Shape::Ellipse {
        cx: 0.5 * w,
        cy: 0.4 * h,
        rx: 0.16 * w,
        ry: 0.12 * h,
    };
    let scene = Scene {
        background: 0.25,
        background_texture: Some((Texture::random(11, w, h, 40, (3.0, 8.0)), 0.06)),
        layers: vec![
            Layer::textured(tooth, 0.2, Texture::random(12, w, h, 30, (2.0, 6.0)), 0.05),
            Layer::flat(restoration, 0.45),
        ],
    };
    RestorationPhantom {
        scene,
        restoration,
        tooth,
    }
}

/// Textured bone band with a bright screw-like implant.
pub struct ImplantPhantom {
    pub scene: Scene,
    pub implant: Shape,
    pub bone: Shape,
}

pub fn implant_phantom(width: usize, height: usize) -> ImplantPhantom {
    let (w, h) = (width as f64, height as f64);
    let bone = Shape::Rect {
        x0: 0.12 * w,
        y0: 0.3 * h,
        x1: 0.88 * w,
        y1: 0.95 * h,
    };
    let implant = Shape::Rect {
        x0: 0.4 * w,
        y0: 0.12 * h,
        x1: 0.6 * w,
        y1: 0.7 * h,
    };
    let scene = Scene {
        background: 0.2,
        background_texture: None,
        layers: vec![
            Layer::textured(bone, 0.22, Texture::random(21, w, h, 60, (2.0, 6.0)), 0.12),
            Layer::flat(implant, 0.75),
        ],
    };
    ImplantPhantom {
        scene,
        implant,
        bone,
    }
}

/// Skull outline and jaw contour, with landmark points on both.
pub struct CephaloPhantom {
    pub scene: Scene,
    pub skull: Shape,
    pub jaw: Shape,
    /// Points along the skull outline (reference coordinates).
    pub skull_points: Vec<(f64, f64)>,
    pub jaw_points: Vec<(f64, f64)>,
}

pub fn cephalo_phantom(width: usize, height: usize) -> CephaloPhantom {
    let (w, h) = (width as f64, height as f64);
    let (cx, cy, rx, ry) = (0.48 * w, 0.42 * h, 0.34 * w, 0.3 * h);
    let skull = Shape::Ring {
        cx,
        cy,
        rx,
        ry,
        half_width: 2.5,
    };
    let (jx, jy, jrx, jry) = (0.55 * w, 0.72 * h, 0.22 * w, 0.12 * h);
    let jaw = Shape::Ring {
        cx: jx,
        cy: jy,
        rx: jrx,
        ry: jry,
        half_width: 2.0,
    };
    let on_ellipse = |cx: f64, cy: f64, rx: f64, ry: f64, a0: f64, a1: f64, n: usize| -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let a = a0 + (a1 - a0) * i as f64 / (n - 1) as f64;
                (cx + rx * a.cos(), cy + ry * a.sin())
            })
            .collect()
    };
    use std::f64::consts::PI;
    let skull_points = on_ellipse(cx, cy, rx, ry, 0.8 * PI, 2.2 * PI, 10);
    let jaw_points = on_ellipse(jx, jy, jrx, jry, 0.1 * PI, 0.9 * PI, 5);
    let scene = Scene {
        background: 0.3,
        background_texture: Some((Texture::random(31, w, h, 50, (3.0, 8.0)), 0.1)),
        layers: vec![Layer::flat(skull, 0.5), Layer::flat(jaw, 0.4)],
    };
    CephaloPhantom {
        scene,
        skull,
        jaw,
        skull_points,
        jaw_points,
    }
}

/// Large structure `a` and smaller structure `b`, each with its own texture.
pub struct TwoStructurePhantom {
    pub reference: Scene,
    /// Same scene with `a` displaced by `shift`.
    pub moved: Scene,
    pub a: Shape,
    pub b: Shape,
}

pub fn two_structure_phantom(width: usize, height: usize, shift: (f64, f64)) -> TwoStructurePhantom {
    let (w, h) = (width as f64, height as f64);
    let a = Shape::Rect {
        x0: 0.08 * w,
        y0: 0.1 * h,
        x1: 0.6 * w,
        y1: 0.9 * h,
    };
    let b = Shape::Ellipse {
        cx: 0.78 * w,
        cy: 0.5 * h,
        rx: 0.13 * w,
        ry: 0.16 * h,
    };
    let layer_a = Layer::textured(a, 0.2, Texture::random(41, w, h, 90, (2.5, 6.0)), 0.3);
    let layer_b = Layer::textured(b, 0.15, Texture::random(42, w, h, 40, (2.0, 5.0)), 0.3);
    let reference = Scene {
        background: 0.3,
        background_texture: None,
        layers: vec![layer_a.clone(), layer_b.clone()],
    };
    let moved = Scene {
        layers: vec![
            Layer {
                offset: shift,
                ..layer_a
            },
            layer_b,
        ],
        ..reference.clone()
    };
    TwoStructurePhantom {
        reference,
        moved,
        a,
        b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn texture_is_deterministic() {
        let a = Texture::random(5, 64.0, 64.0, 20, (2.0, 5.0));
        let b = Texture::random(5, 64.0, 64.0, 20, (2.0, 5.0));
        assert_eq!(a.eval(10.3, 20.7), b.eval(10.3, 20.7));
    }

    #[test]
    fn render_warped_matches_scene() {
        let s = textured_scene(3, 32, 32);
        let t = AffineTransform::translation(1.5, -2.0);
        let img = s.render_warped(32, 32, &t).unwrap();
        assert_eq!(img.get(4, 7), s.eval(5.5, 5.0));
    }

    #[test]
    fn shapes_contain_centers() {
        let p = restoration_phantom(96, 96);
        assert!(p.restoration.contains(48.0, 38.4));
        assert!(!p.restoration.contains(2.0, 2.0));
    }
}
