//! Box-clamped Nelder–Mead minimizer over `[-1, 1]^d`.

use crate::scalar::Real;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
/// Fresh simplices built around the incumbent after a converged run.
const MAX_REINITS: usize = 8;

#[derive(Debug, Clone)]
pub(crate) struct Minimum<T: Real> {
    pub point: Vec<T>,
    pub value: T,
    pub evaluations: usize,
}

#[derive(Clone)]
struct Vertex<T: Real> {
    point: Vec<T>,
    value: T,
    /// Evaluation sequence number; ties in value favour the earlier point.
    seq: usize,
}

struct Budgeted<'a, T: Real, F: FnMut(&[T]) -> T> {
    f: &'a mut F,
    evals: usize,
    max_evals: usize,
    _scalar: std::marker::PhantomData<fn() -> T>,
}

impl<T: Real, F: FnMut(&[T]) -> T> Budgeted<'_, T, F> {
    fn exhausted(&self) -> bool {
        self.evals >= self.max_evals
    }

    fn eval(&mut self, point: Vec<T>) -> Vertex<T> {
        let value = (self.f)(&point);
        let v = Vertex {
            point,
            value: if value.is_nan() { T::infinity() } else { value },
            seq: self.evals,
        };
        self.evals += 1;
        v
    }
}

fn clamp_box<T: Real>(p: &mut [T]) {
    for v in p {
        *v = v.max(-T::one()).min(T::one());
    }
}

fn better<T: Real>(a: &Vertex<T>, b: &Vertex<T>) -> bool {
    a.value < b.value || (a.value == b.value && a.seq < b.seq)
}

fn sort<T: Real>(s: &mut [Vertex<T>]) {
    s.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.seq.cmp(&b.seq))
    });
}

/// `a + coeff * (a - b)`, clamped into the box.
fn affine_step<T: Real>(a: &[T], b: &[T], coeff: f64) -> Vec<T> {
    let c = T::lit(coeff);
    let mut p: Vec<T> = a.iter().zip(b).map(|(&x, &y)| x + c * (x - y)).collect();
    clamp_box(&mut p);
    p
}

/// Minimizes `f` from `start`; `steps[i]` is the initial simplex edge along axis `i`.
///
/// `f` returns `+inf` for infeasible points. A run ends when the spread of
/// simplex values drops to `tolerance`; the simplex is then rebuilt around
/// the incumbent, and the search stops once a rebuilt simplex no longer
/// improves by more than `tolerance` or the evaluation budget runs out.
pub(crate) fn minimize<T: Real, F: FnMut(&[T]) -> T>(
    f: &mut F,
    start: &[T],
    steps: &[T],
    tolerance: T,
    max_evals: usize,
) -> Minimum<T> {
    let dim = start.len();
    let mut b = Budgeted {
        f,
        evals: 0,
        max_evals: max_evals.max(1),
        _scalar: std::marker::PhantomData,
    };
    let mut origin = start.to_vec();
    clamp_box(&mut origin);
    let mut best = b.eval(origin);
    if dim == 0 {
        return Minimum {
            point: best.point,
            value: best.value,
            evaluations: b.evals,
        };
    }

    for _ in 0..MAX_REINITS {
        if b.exhausted() {
            break;
        }
        let before = best.value;
        let mut simplex = vec![best.clone()];
        for i in 0..dim {
            if b.exhausted() {
                break;
            }
            let mut p = best.point.clone();
            p[i] = if p[i] + steps[i] <= T::one() {
                p[i] + steps[i]
            } else {
                p[i] - steps[i]
            };
            simplex.push(b.eval(p));
        }
        if simplex.len() == dim + 1 {
            run_simplex(&mut b, &mut simplex, tolerance);
        }
        for v in &simplex {
            if better(v, &best) {
                best = v.clone();
            }
        }
        let improved = before.is_infinite() && best.value.is_finite()
            || before - best.value > tolerance;
        if !improved {
            break;
        }
    }
    Minimum {
        point: best.point,
        value: best.value,
        evaluations: b.evals,
    }
}

fn run_simplex<T: Real, F: FnMut(&[T]) -> T>(
    b: &mut Budgeted<'_, T, F>,
    s: &mut Vec<Vertex<T>>,
    tolerance: T,
) {
    let n = s.len() - 1;
    loop {
        sort(s);
        let spread = s[n].value - s[0].value;
        if (s[0].value.is_finite() && s[n].value.is_finite() && spread <= tolerance) || b.exhausted() {
            return;
        }
        if diameter(s) < T::lit(1e-10) {
            return;
        }
        let centroid: Vec<T> = (0..s[0].point.len())
            .map(|d| s[..n].iter().map(|v| v.point[d]).sum::<T>() / T::from_usize_lossy(n))
            .collect();

        let reflected = b.eval(affine_step(&centroid, &s[n].point, REFLECT));
        if reflected.value < s[0].value {
            if b.exhausted() {
                s[n] = reflected;
                continue;
            }
            let expanded = b.eval(affine_step(&centroid, &s[n].point, EXPAND));
            s[n] = if expanded.value < reflected.value { expanded } else { reflected };
            continue;
        }
        if reflected.value < s[n - 1].value {
            s[n] = reflected;
            continue;
        }
        if b.exhausted() {
            return;
        }
        // contraction: outside if the reflection beat the worst vertex, inside otherwise
        let (contracted, reference) = if reflected.value < s[n].value {
            (b.eval(affine_step(&centroid, &reflected.point, -CONTRACT)), reflected.value)
        } else {
            (b.eval(affine_step(&centroid, &s[n].point, -CONTRACT)), s[n].value)
        };
        if contracted.value < reference {
            s[n] = contracted;
            continue;
        }
        if reflected.value < s[n].value {
            s[n] = reflected;
        }
        // shrink toward the best vertex
        let best = s[0].point.clone();
        for v in s.iter_mut().skip(1) {
            if b.exhausted() {
                return;
            }
            let p = affine_step(&best, &v.point, -SHRINK);
            *v = b.eval(p);
        }
    }
}

fn diameter<T: Real>(s: &[Vertex<T>]) -> T {
    let mut d = T::zero();
    for v in &s[1..] {
        for (a, b) in v.point.iter().zip(&s[0].point) {
            d = d.max((*a - *b).abs());
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let target = [0.3, -0.2, 0.5];
        let mut f = |p: &[f64]| p.iter().zip(&target).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        let m = minimize(&mut f, &[0.0; 3], &[0.1; 3], 1e-14, 5000);
        for (a, b) in m.point.iter().zip(&target) {
            assert!((a - b).abs() < 1e-5, "{:?}", m.point);
        }
    }

    #[test]
    fn respects_box() {
        // unconstrained minimum at 3, box edge at 1
        let mut f = |p: &[f64]| (p[0] - 3.0).powi(2) + p[1] * p[1];
        let m = minimize(&mut f, &[0.0, 0.5], &[0.1, 0.1], 1e-12, 2000);
        assert!((m.point[0] - 1.0).abs() < 1e-6);
        assert!(m.point.iter().all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn budget_respected() {
        let mut calls = 0;
        let mut f = |p: &[f64]| {
            calls += 1;
            (p[0] - 0.3).powi(2) + (p[1] + 0.2).powi(2)
        };
        let m = minimize(&mut f, &[0.0, 0.0], &[0.1, 0.1], 1e-30, 17);
        assert_eq!(m.evaluations, 17);
        assert_eq!(calls, 17);
    }

    #[test]
    fn escapes_infeasible_region() {
        // infeasible for x < 0.2
        let mut f = |p: &[f64]| if p[0] < 0.2 { f64::INFINITY } else { (p[0] - 0.6).powi(2) };
        let m = minimize(&mut f, &[0.25], &[0.1], 1e-12, 500);
        assert!((m.point[0] - 0.6).abs() < 1e-4);
    }
}
