//! Closed-form least-squares fitters for the FI, ABG and CI families.
//!
//! The shadow fading estimate is defined as the RMS fit residual,
//! `sigma_sf_db = sqrt(SSE / N)` — no degrees-of-freedom correction.
//!
//! Fitters are deterministic and permutation invariant: samples are brought
//! into a canonical internal order and all sums use Neumaier-compensated
//! accumulation, so reordering the input cannot change a single output bit.
//!
//! [`brute_force_fit`] is a verification oracle: it minimizes the same SSE
//! by exhaustive grid search, sharing nothing with the closed-form solve
//! path. It exists for tests and stays out of production call paths.

use thiserror::Error;

use crate::models::{self, AbgParams, CiParams, FiParams, ModelError};
use crate::sample::PathLossSample;

/// Singular-value ratio below which the centered regressor matrix is
/// declared rank deficient.
const RANK_SV_RATIO: f64 = 1e-10;
/// Ratio below which a fit is still performed but flagged ill-conditioned.
const CONDITION_WARN_RATIO: f64 = 1e-8;

/// Regressor (degree of freedom) that collapsed in a rank-deficient fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapsedRegressor {
    Distance,
    Frequency,
    /// Distance and frequency regressors are linearly dependent.
    Collinear,
}

impl std::fmt::Display for CollapsedRegressor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CollapsedRegressor::Distance => "distance",
            CollapsedRegressor::Frequency => "frequency",
            CollapsedRegressor::Collinear => "distance/frequency (collinear)",
        })
    }
}

/// Errors raised by the fitters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("empty input: no samples to fit")]
    Empty,
    #[error("need at least {needed} samples, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("sample {index}: {reason}")]
    InvalidSample { index: usize, reason: String },
    #[error("rank-deficient fit: the {regressor} regressor has no usable spread; {detail}")]
    RankDeficient {
        regressor: CollapsedRegressor,
        detail: String,
    },
    #[error("invalid brute-force search grid: {0}")]
    InvalidSearchGrid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Quality metadata attached to every successful fit.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FitDiagnostics {
    pub n_samples: usize,
    /// Sum of squared residuals in dB².
    pub sse_db2: f64,
    pub rank_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_warning: Option<String>,
}

/// Neumaier-compensated accumulator; order-stable and far more accurate
/// than a bare running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Accumulator::default();
    for t in terms {
        acc.add(t);
    }
    acc.total()
}

/// Validated rows in canonical (distance, frequency, path loss) order.
/// Sorting here is what makes the fitters permutation invariant.
fn canonical_rows(samples: &[PathLossSample]) -> Result<Vec<(f64, f64, f64)>, FitError> {
    if samples.is_empty() {
        return Err(FitError::Empty);
    }
    let mut rows = Vec::with_capacity(samples.len());
    for (index, s) in samples.iter().enumerate() {
        s.validate()
            .map_err(|reason| FitError::InvalidSample { index, reason })?;
        rows.push((s.distance_m, s.frequency_ghz, s.path_loss_db));
    }
    rows.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    Ok(rows)
}

fn count_distinct(mut values: Vec<f64>) -> usize {
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| a == b);
    values.len()
}

fn mean(values: &[f64]) -> f64 {
    compensated_sum(values.iter().copied()) / values.len() as f64
}

/// Fits the floating-intercept model `PL = a + 10·b·log10(d)`.
///
/// Frequency values are ignored; grouping single-frequency subsets is the
/// caller's job.
pub fn fit_fi(samples: &[PathLossSample]) -> Result<(FiParams, FitDiagnostics), FitError> {
    let rows = canonical_rows(samples)?;
    let n = rows.len();
    if n < 2 {
        return Err(FitError::TooFew { needed: 2, got: n });
    }
    if count_distinct(rows.iter().map(|r| r.0).collect()) < 2 {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Distance,
            detail: "all samples share a single distance; an intercept-plus-slope line \
                     needs at least 2 distinct distances"
                .to_string(),
        });
    }

    let x: Vec<f64> = rows.iter().map(|r| 10.0 * r.0.log10()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let x_mean = mean(&x);
    let y_mean = mean(&y);

    let sxx = compensated_sum(x.iter().map(|&xi| (xi - x_mean) * (xi - x_mean)));
    let sxy = compensated_sum(
        x.iter()
            .zip(&y)
            .map(|(&xi, &yi)| (xi - x_mean) * (yi - y_mean)),
    );
    // singular-value ratio of the centered column against its raw norm
    let x_norm2 = sxx + n as f64 * x_mean * x_mean;
    if sxx <= RANK_SV_RATIO * RANK_SV_RATIO * x_norm2 {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Distance,
            detail: "distance values are numerically indistinguishable".to_string(),
        });
    }

    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let sse = compensated_sum(x.iter().zip(&y).map(|(&xi, &yi)| {
        let r = yi - intercept - slope * xi;
        r * r
    }));
    let condition_warning = (sxx < CONDITION_WARN_RATIO * CONDITION_WARN_RATIO * x_norm2)
        .then(|| "distance regressor spread is tiny; the fit is ill-conditioned".to_string());

    Ok((
        FiParams::new(intercept, slope, (sse.max(0.0) / n as f64).sqrt()),
        FitDiagnostics {
            n_samples: n,
            sse_db2: sse.max(0.0),
            rank_ok: true,
            condition_warning,
        },
    ))
}

/// Fits the alpha-beta-gamma model
/// `PL = β + 10·α·log10(d) + 10·γ·log10(f)`.
///
/// Requires spread in both regressors. A single distinct frequency is a hard
/// error, never a silent γ pin — single-frequency data belongs in [`fit_fi`].
pub fn fit_abg(samples: &[PathLossSample]) -> Result<(AbgParams, FitDiagnostics), FitError> {
    let rows = canonical_rows(samples)?;
    let n = rows.len();
    if n < 3 {
        return Err(FitError::TooFew { needed: 3, got: n });
    }
    if count_distinct(rows.iter().map(|r| r.0).collect()) < 2 {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Distance,
            detail: "all samples share a single distance".to_string(),
        });
    }
    if count_distinct(rows.iter().map(|r| r.1).collect()) < 2 {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Frequency,
            detail: "single distinct frequency; the frequency exponent is unidentifiable \
                     (fit the single-frequency FI model instead)"
                .to_string(),
        });
    }

    let x1: Vec<f64> = rows.iter().map(|r| 10.0 * r.0.log10()).collect();
    let x2: Vec<f64> = rows.iter().map(|r| 10.0 * r.1.log10()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let m1 = mean(&x1);
    let m2 = mean(&x2);
    let my = mean(&y);

    let s11 = compensated_sum(x1.iter().map(|&v| (v - m1) * (v - m1)));
    let s22 = compensated_sum(x2.iter().map(|&v| (v - m2) * (v - m2)));
    let s12 = compensated_sum(x1.iter().zip(&x2).map(|(&a, &b)| (a - m1) * (b - m2)));
    let s1y = compensated_sum(x1.iter().zip(&y).map(|(&a, &b)| (a - m1) * (b - my)));
    let s2y = compensated_sum(x2.iter().zip(&y).map(|(&a, &b)| (a - m2) * (b - my)));

    // eigenvalues of the 2x2 Gram matrix give the squared singular values
    let trace = s11 + s22;
    let det = s11 * s22 - s12 * s12;
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let lambda_max = 0.5 * (trace + disc);
    let lambda_min = (0.5 * (trace - disc)).max(0.0);
    let sv_ratio = if lambda_max > 0.0 {
        (lambda_min / lambda_max).sqrt()
    } else {
        0.0
    };
    if sv_ratio < RANK_SV_RATIO {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Collinear,
            detail: format!(
                "log-distance and log-frequency regressors are collinear \
                 (singular value ratio {sv_ratio:.2e})"
            ),
        });
    }

    let alpha = (s1y * s22 - s2y * s12) / det;
    let gamma = (s2y * s11 - s1y * s12) / det;
    let beta = my - alpha * m1 - gamma * m2;

    let sse = compensated_sum(x1.iter().zip(&x2).zip(&y).map(|((&a, &b), &yi)| {
        let r = yi - beta - alpha * a - gamma * b;
        r * r
    }));
    let condition_warning = (sv_ratio < CONDITION_WARN_RATIO).then(|| {
        format!("regressor matrix is ill-conditioned (singular value ratio {sv_ratio:.2e})")
    });

    Ok((
        AbgParams::new(alpha, beta, gamma, (sse.max(0.0) / n as f64).sqrt()),
        FitDiagnostics {
            n_samples: n,
            sse_db2: sse.max(0.0),
            rank_ok: true,
            condition_warning,
        },
    ))
}

/// Fits the close-in model `PL = FSPL(1 m, f) + 10·n·log10(d)`.
///
/// Single-parameter least squares on the excess over the free-space anchor.
/// Samples at exactly the 1 m reference contribute nothing to the slope
/// estimate; they are kept for the residual and flagged in the diagnostics.
pub fn fit_ci(samples: &[PathLossSample]) -> Result<(CiParams, FitDiagnostics), FitError> {
    let rows = canonical_rows(samples)?;
    let n = rows.len();

    let x: Vec<f64> = rows.iter().map(|r| 10.0 * r.0.log10()).collect();
    let excess: Vec<f64> = rows
        .iter()
        .map(|r| Ok(r.2 - models::fspl_at_1m(r.1)?))
        .collect::<Result<_, ModelError>>()?;

    let at_reference = x.iter().filter(|&&xi| xi == 0.0).count();
    if at_reference == n {
        return Err(FitError::RankDeficient {
            regressor: CollapsedRegressor::Distance,
            detail: "every sample sits at the 1 m reference distance; the path loss \
                     exponent is unidentifiable"
                .to_string(),
        });
    }

    let sxx = compensated_sum(x.iter().map(|&xi| xi * xi));
    let sxa = compensated_sum(x.iter().zip(&excess).map(|(&xi, &ai)| xi * ai));
    let exponent = sxa / sxx;

    let sse = compensated_sum(x.iter().zip(&excess).map(|(&xi, &ai)| {
        let r = ai - exponent * xi;
        r * r
    }));
    let condition_warning = (at_reference > 0).then(|| {
        format!(
            "{at_reference} sample(s) at the 1 m reference distance contribute \
             only to the residual"
        )
    });

    Ok((
        CiParams::new(exponent, (sse.max(0.0) / n as f64).sqrt()),
        FitDiagnostics {
            n_samples: n,
            sse_db2: sse.max(0.0),
            rank_ok: true,
            condition_warning,
        },
    ))
}

/// Model family selector for the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForceFamily {
    /// Two parameters: (intercept_db, distance_exponent).
    Fi,
    /// Three parameters: (distance_exponent, offset_db, frequency_exponent).
    Abg,
}

/// Outcome of a brute-force grid minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceFit {
    /// Best grid point, in the family's parameter order.
    pub params: Vec<f64>,
    pub sse_db2: f64,
    /// True when the optimum landed on the search-box boundary, i.e. the box
    /// probably does not contain the true optimum.
    pub on_boundary: bool,
    pub grid_points: usize,
}

/// Hard cap on the brute-force grid size.
pub const BRUTE_FORCE_MAX_POINTS: usize = 10_000_000;

/// Exhaustive SSE minimization over a parameter grid.
///
/// `search_box` gives inclusive (lo, hi) per parameter in the family's
/// order; `grid_step` is the spacing applied to every axis. This routine is
/// the verification oracle for the closed-form fitters: it evaluates the
/// model equations point by point and never touches the normal equations.
pub fn brute_force_fit(
    samples: &[PathLossSample],
    family: BruteForceFamily,
    search_box: &[(f64, f64)],
    grid_step: f64,
) -> Result<BruteForceFit, FitError> {
    let rows = canonical_rows(samples)?;
    let dims = match family {
        BruteForceFamily::Fi => 2,
        BruteForceFamily::Abg => 3,
    };
    if search_box.len() != dims {
        return Err(FitError::InvalidSearchGrid(format!(
            "expected {dims} (lo, hi) ranges, got {}",
            search_box.len()
        )));
    }
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(FitError::InvalidSearchGrid(format!(
            "grid step must be > 0, got {grid_step}"
        )));
    }
    let mut counts = Vec::with_capacity(dims);
    let mut total: usize = 1;
    for &(lo, hi) in search_box {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FitError::InvalidSearchGrid(format!(
                "range ({lo}, {hi}) is not an increasing finite interval"
            )));
        }
        let steps = ((hi - lo) / grid_step + 1e-9).floor() as usize + 1;
        counts.push(steps);
        total = total.saturating_mul(steps);
    }
    if total > BRUTE_FORCE_MAX_POINTS {
        return Err(FitError::InvalidSearchGrid(format!(
            "{total} grid points exceed the {BRUTE_FORCE_MAX_POINTS} cap"
        )));
    }

    let log_d: Vec<f64> = rows.iter().map(|r| 10.0 * r.0.log10()).collect();
    let log_f: Vec<f64> = rows.iter().map(|r| 10.0 * r.1.log10()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.2).collect();

    let sse_at = |params: &[f64]| -> f64 {
        match family {
            BruteForceFamily::Fi => compensated_sum(log_d.iter().zip(&y).map(|(&ld, &yi)| {
                let r = yi - params[0] - params[1] * ld;
                r * r
            })),
            BruteForceFamily::Abg => {
                compensated_sum(log_d.iter().zip(&log_f).zip(&y).map(|((&ld, &lf), &yi)| {
                    let r = yi - params[1] - params[0] * ld - params[2] * lf;
                    r * r
                }))
            }
        }
    };

    let mut best_sse = f64::INFINITY;
    let mut best_idx = vec![0usize; dims];
    let mut idx = vec![0usize; dims];
    let mut point = vec![0.0f64; dims];
    loop {
        for k in 0..dims {
            point[k] = search_box[k].0 + idx[k] as f64 * grid_step;
        }
        let sse = sse_at(&point);
        if sse < best_sse {
            best_sse = sse;
            best_idx.copy_from_slice(&idx);
        }
        // odometer increment over the grid
        let mut k = dims;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < counts[k] {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                let params: Vec<f64> = best_idx
                    .iter()
                    .zip(search_box)
                    .map(|(&i, &(lo, _))| lo + i as f64 * grid_step)
                    .collect();
                let on_boundary = best_idx
                    .iter()
                    .zip(&counts)
                    .any(|(&i, &c)| i == 0 || i + 1 == c);
                return Ok(BruteForceFit {
                    params,
                    sse_db2: best_sse,
                    on_boundary,
                    grid_points: total,
                });
            }
        }
    }
}
