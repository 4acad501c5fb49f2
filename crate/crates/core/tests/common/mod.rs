//! Brute-force reference implementations used as test oracles.
#![allow(dead_code)]

use focusreg::{AffineTransform, FocusMap, Image};
use rand::Rng;

/// Plain bilinear interpolation on the pixel-center grid, `None` outside the hull.
pub fn naive_bilinear(values: &[f64], w: usize, h: usize, x: f64, y: f64) -> Option<f64> {
    if x < 0.0 || y < 0.0 || x > (w - 1) as f64 || y > (h - 1) as f64 || x.is_nan() || y.is_nan() {
        return None;
    }
    let x0 = if w == 1 { 0 } else { (x.floor() as usize).min(w - 2) };
    let y0 = if h == 1 { 0 } else { (y.floor() as usize).min(h - 2) };
    let fx = if w == 1 { 0.0 } else { x - x0 as f64 };
    let fy = if h == 1 { 0.0 } else { y - y0 as f64 };
    let x1 = (x0 + 1).min(w - 1);
    let y1 = (y0 + 1).min(h - 1);
    let at = |i: usize, j: usize| values[j * w + i];
    Some(
        (1.0 - fx) * (1.0 - fy) * at(x0, y0)
            + fx * (1.0 - fy) * at(x1, y0)
            + (1.0 - fx) * fy * at(x0, y1)
            + fx * fy * at(x1, y1),
    )
}

pub fn naive_bin(v: f64, k: usize) -> usize {
    ((v * k as f64).floor() as usize).min(k - 1)
}

/// Row-major `k x k` masses and overlap count, pixel by pixel.
pub fn naive_histogram(
    reference: &Image,
    test: &Image,
    t: &AffineTransform,
    k: usize,
    focus: Option<&FocusMap>,
) -> (Vec<f64>, usize) {
    let (w, h) = test.dims();
    let (rw, rh) = reference.dims();
    let mut mass = vec![0.0; k * k];
    let mut count = 0;
    for n in 0..h {
        for m in 0..w {
            let (x, y) = (m as f64, n as f64);
            let rx = t.a11 * x + t.a12 * y + t.tx;
            let ry = t.a21 * x + t.a22 * y + t.ty;
            let Some(u) = naive_bilinear(reference.values(), rw, rh, rx, ry) else {
                continue;
            };
            let weight = match focus {
                None => 1.0,
                Some(f) => naive_bilinear(f.weights(), rw, rh, rx, ry).unwrap(),
            };
            mass[naive_bin(u, k) * k + naive_bin(test.get(m, n), k)] += weight;
            count += 1;
        }
    }
    (mass, count)
}

/// Entropy in nats of the masses normalized by `total`.
pub fn naive_entropy(masses: impl IntoIterator<Item = f64>, total: f64) -> f64 {
    masses
        .into_iter()
        .filter(|&m| m > 0.0)
        .map(|m| {
            let p = m / total;
            -p * p.ln()
        })
        .sum()
}

/// (MI, NMI, ECC) straight from a mass grid.
pub fn naive_criteria(mass: &[f64], k: usize) -> (f64, f64, f64) {
    let total: f64 = mass.iter().sum();
    let rows: Vec<f64> = (0..k).map(|i| (0..k).map(|j| mass[i * k + j]).sum()).collect();
    let cols: Vec<f64> = (0..k).map(|j| (0..k).map(|i| mass[i * k + j]).sum()).collect();
    let hr = naive_entropy(rows, total);
    let ht = naive_entropy(cols, total);
    let hj = naive_entropy(mass.iter().copied(), total);
    let mi = hr + ht - hj;
    (mi, (hr + ht) / hj, 2.0 * mi / (hr + ht))
}

pub fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> Image {
    Image::new(w, h, (0..w * h).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap()
}

/// Random affine with each parameter inside `matrix`/`translation` of identity.
pub fn random_affine(rng: &mut impl Rng, matrix: f64, translation: f64) -> AffineTransform {
    AffineTransform::new(
        1.0 + rng.gen_range(-matrix..=matrix),
        rng.gen_range(-matrix..=matrix),
        rng.gen_range(-matrix..=matrix),
        1.0 + rng.gen_range(-matrix..=matrix),
        rng.gen_range(-translation..=translation),
        rng.gen_range(-translation..=translation),
    )
    .unwrap()
}

pub fn random_focus(rng: &mut impl Rng, w: usize, h: usize) -> FocusMap {
    FocusMap::new(w, h, (0..w * h).map(|_| rng.gen_range(0.0..1.0)).collect()).unwrap()
}
