use std::fmt::Write as _;

use rayon::prelude::*;

use super::halton::halton_point;
use super::nelder_mead::minimize;
use crate::entropy::histogram::{accumulate_with_test_bins, test_bins};
use crate::entropy::{criteria_from_histogram, Criterion};
use crate::error::{Error, Result};
use crate::focus::FocusMap;
use crate::imaging::{AffineTransform, BinningScheme, Image};
use crate::scalar::Real;

/// Trials covering less than this share of the test pixels are rejected.
pub const MIN_OVERLAP_FRACTION: f64 = 0.01;

/// Parameter vector `(a11, a12, a21, a22, tx, ty)`.
pub fn parameterize<T: Real>(t: &AffineTransform<T>) -> [T; 6] {
    t.to_params()
}

/// Inverse of [`parameterize`]; rejects `|det| <= 1e-12`.
pub fn deparameterize<T: Real>(v: [T; 6]) -> Result<AffineTransform<T>> {
    AffineTransform::from_params(v)
}

/// Search region and optimizer settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec<T: Real = f64> {
    /// Center of the search box (initial guess).
    pub initial: AffineTransform<T>,
    /// Symmetric half-widths per parameter, same order as [`parameterize`].
    pub half_widths: [T; 6],
    pub criterion: Criterion,
    /// Extra starts at low-discrepancy points inside the box.
    pub restarts: usize,
    /// Restart `j` uses Halton point `restart_offset + j`; changing it picks
    /// a different, still deterministic, set of starts.
    pub restart_offset: u64,
    /// Evaluation budget of each start.
    pub max_evals: usize,
    /// Convergence threshold on the criterion spread of the simplex.
    pub tolerance: T,
}

impl<T: Real> Default for SearchSpec<T> {
    fn default() -> Self {
        let m = T::lit(0.15);
        let t = T::lit(20.0);
        Self {
            initial: AffineTransform::identity(),
            half_widths: [m, m, m, m, t, t],
            criterion: Criterion::Nmi,
            restarts: 3,
            restart_offset: 0,
            max_evals: 2000,
            tolerance: T::lit(1e-6),
        }
    }
}

impl<T: Real> SearchSpec<T> {
    pub fn with_box(mut self, matrix: T, translation: T) -> Self {
        self.half_widths = [matrix, matrix, matrix, matrix, translation, translation];
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.half_widths.iter().any(|h| !(h.is_finite() && *h >= T::zero())) {
            return Err(Error::InvalidParameter(
                "search half-widths must be finite and nonnegative".into(),
            ));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidParameter("max_evals must be >= 1".into()));
        }
        if !(self.tolerance > T::zero()) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        AffineTransform::from_params(self.initial.to_params())?;
        Ok(())
    }

    /// True when `t` lies in the closed search box (with slack `eps`).
    pub fn contains(&self, t: &AffineTransform<T>, eps: T) -> bool {
        let c = self.initial.to_params();
        t.to_params()
            .iter()
            .zip(c)
            .zip(self.half_widths)
            .all(|((p, c), h)| (*p - c).abs() <= h + eps)
    }
}

/// One evaluated trial point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry<T: Real = f64> {
    pub params: [T; 6],
    /// Criterion value, `-inf` for rejected trials.
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistrationResult<T: Real = f64> {
    pub best: AffineTransform<T>,
    pub best_value: T,
    pub evaluations: usize,
    pub trace: Vec<TraceEntry<T>>,
    pub overlap_fraction: T,
}

impl<T: Real> RegistrationResult<T> {
    /// Trace as text: `iteration a11 a12 a21 a22 tx ty value` per line.
    pub fn trace_table(&self) -> String {
        let mut out = String::from("# iteration a11 a12 a21 a22 tx ty value\n");
        for (i, e) in self.trace.iter().enumerate() {
            let _ = write!(out, "{i}");
            for p in e.params {
                let _ = write!(out, " {p}");
            }
            let _ = writeln!(out, " {}", e.value);
        }
        out
    }
}

/// Criterion evaluation with the invalid-trial policy of the search.
pub(crate) struct Objective<'a, T: Real> {
    pub reference: &'a Image<T>,
    pub test: &'a Image<T>,
    pub focus: Option<&'a FocusMap<T>>,
    pub scheme: &'a BinningScheme,
    pub criterion: Criterion,
    test_bins: Vec<u32>,
}

impl<'a, T: Real> Objective<'a, T> {
    pub fn new(
        reference: &'a Image<T>,
        test: &'a Image<T>,
        focus: Option<&'a FocusMap<T>>,
        scheme: &'a BinningScheme,
        criterion: Criterion,
    ) -> Self {
        Self {
            reference,
            test,
            focus,
            scheme,
            criterion,
            test_bins: test_bins(test, scheme),
        }
    }

    /// `Ok(None)` for rejected trials (singular, empty or tiny overlap, degenerate histogram).
    pub fn eval(&self, params: [T; 6]) -> Result<Option<(T, T)>> {
        let Ok(t) = AffineTransform::from_params(params) else {
            return Ok(None);
        };
        let hist = accumulate_with_test_bins(
            self.reference,
            self.test.dims(),
            |i| self.test_bins[i] as usize,
            &t,
            self.scheme,
            self.focus,
            0..self.test.height(),
        )?;
        if hist.overlap_count() == 0 || !(hist.total() > T::zero()) {
            return Ok(None);
        }
        let fraction = T::from_usize_lossy(hist.overlap_count()) / T::from_usize_lossy(self.test.len());
        if fraction < T::lit(MIN_OVERLAP_FRACTION) {
            return Ok(None);
        }
        match criteria_from_histogram(&hist) {
            Ok(v) => Ok(Some((self.criterion.select(&v), fraction))),
            Err(Error::DegenerateHistogram { .. }) | Err(Error::EmptyOverlap) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

struct StartOutcome<T: Real> {
    trace: Vec<TraceEntry<T>>,
    best: Option<(usize, T)>,
    error: Option<Error>,
}

/// Maximizes the selected criterion over affine transforms in the search box.
///
/// Nelder–Mead runs in box-normalized coordinates from the initial guess and
/// from `restarts` Halton points; trial points are clamped into the box and
/// rejected trials score `-inf`. Starts are independent and may run in
/// parallel; the result does not depend on scheduling.
pub fn register<T: Real>(
    reference: &Image<T>,
    test: &Image<T>,
    focus: Option<&FocusMap<T>>,
    spec: &SearchSpec<T>,
    scheme: &BinningScheme,
) -> Result<RegistrationResult<T>> {
    spec.validate()?;
    if let Some(f) = focus {
        if f.dims() != reference.dims() {
            return Err(Error::DimensionMismatch {
                expected: reference.dims(),
                actual: f.dims(),
            });
        }
    }
    let objective = Objective::new(reference, test, focus, scheme, spec.criterion);
    let center = spec.initial.to_params();
    let free: Vec<usize> = (0..6).filter(|&i| spec.half_widths[i] > T::zero()).collect();
    let to_params = |z: &[T]| {
        let mut p = center;
        for (k, &i) in free.iter().enumerate() {
            p[i] = center[i] + z[k] * spec.half_widths[i];
        }
        p
    };
    let steps: Vec<T> = free
        .iter()
        .map(|&i| {
            let h = spec.half_widths[i];
            (T::lit(0.1) * h).max(T::lit(1e-3)).min(h) / h
        })
        .collect();

    let starts: Vec<Vec<T>> = std::iter::once(vec![T::zero(); free.len()])
        .chain((1..=spec.restarts as u64).map(|j| {
            halton_point(spec.restart_offset.saturating_add(j), free.len())
                .into_iter()
                .map(T::lit)
                .collect()
        }))
        .collect();

    let outcomes: Vec<StartOutcome<T>> = starts
        .par_iter()
        .map(|z0| {
            let mut trace = Vec::new();
            let mut error = None;
            let mut f = |z: &[T]| {
                let params = to_params(z);
                let value = if error.is_some() {
                    None
                } else {
                    match objective.eval(params) {
                        Ok(v) => v.map(|(v, _)| v),
                        Err(e) => {
                            error = Some(e);
                            None
                        }
                    }
                };
                let value = value.unwrap_or(T::neg_infinity());
                trace.push(TraceEntry { params, value });
                -value
            };
            let minimum = minimize(&mut f, z0, &steps, spec.tolerance, spec.max_evals);
            debug_assert_eq!(minimum.evaluations, trace.len());
            debug_assert_eq!(minimum.point.len(), free.len());
            let best = trace
                .iter()
                .enumerate()
                .filter(|(_, e)| e.value.is_finite())
                .fold(None, |acc: Option<(usize, T)>, (i, e)| match acc {
                    Some((_, b)) if b >= e.value => acc,
                    _ => Some((i, e.value)),
                });
            debug_assert!(error.is_some() || best.map_or(minimum.value.is_infinite(), |(_, v)| v == -minimum.value));
            StartOutcome { trace, best, error }
        })
        .collect();

    let mut trace = Vec::new();
    let mut best: Option<(usize, T)> = None;
    for outcome in outcomes {
        if let Some(e) = outcome.error {
            return Err(e);
        }
        let offset = trace.len();
        if let Some((i, v)) = outcome.best {
            if best.map_or(true, |(_, b)| v > b) {
                best = Some((offset + i, v));
            }
        }
        trace.extend(outcome.trace);
    }
    let (index, best_value) = best.ok_or_else(|| {
        Error::RegistrationFailed("no trial transform produced a valid overlap".into())
    })?;
    let params = trace[index].params;
    let best_transform = AffineTransform::from_params(params)?;
    let (value, overlap_fraction) = objective
        .eval(params)?
        .ok_or_else(|| Error::Internal("best trial became invalid on re-evaluation".into()))?;
    if !value.is_finite() || value != best_value {
        return Err(Error::Internal("criterion is not reproducible".into()));
    }
    Ok(RegistrationResult {
        best: best_transform,
        best_value,
        evaluations: trace.len(),
        trace,
        overlap_fraction,
    })
}
