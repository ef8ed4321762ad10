//! Convergence bookkeeping: (t, error) tables, log-log rate fits, and the
//! report record consumed by the verification suites.

use serde::Serialize;

/// Least-squares slope of log(error) against log(t).
///
/// Zero errors are clamped to 1e-300 so that exact limits do not poison the
/// fit; rows with t <= 0 are ignored.
pub fn fit_order(rows: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(t, _)| *t > 0.0)
        .map(|(t, e)| (t.ln(), e.max(1e-300).ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

pub fn strictly_decreasing(rows: &[(f64, f64)]) -> bool {
    rows.windows(2).all(|w| w[1].1 < w[0].1)
}

/// One row of a convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRow {
    pub t: f64,
    pub error: f64,
}

/// Tolerance policy for one verified statement.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerance {
    /// Absolute bound checked on the last row, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_error: Option<f64>,
    /// Admissible band for the fitted order, if rates are asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_band: Option<(f64, f64)>,
    /// Whether the rows must be strictly decreasing in error.
    pub monotone: bool,
}

/// Result of one lemma-keyed convergence check.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub label: String,
    pub rows: Vec<ErrorRow>,
    pub fitted_order: f64,
    pub tolerance: Tolerance,
    pub pass: bool,
}

impl ConvergenceReport {
    /// Assemble a report from raw rows, evaluating the pass flag against the
    /// given policy. Rows must arrive sorted by decreasing t.
    pub fn evaluate(label: &str, rows: Vec<(f64, f64)>, tolerance: Tolerance) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[1].0 < w[0].0));
        let fitted_order = fit_order(&rows);
        let mut pass = true;
        if tolerance.monotone && !strictly_decreasing(&rows) {
            pass = false;
        }
        if let Some(bound) = tolerance.final_error {
            if let Some(last) = rows.last() {
                if last.1 > bound {
                    pass = false;
                }
            }
        }
        if let Some((lo, hi)) = tolerance.order_band {
            if fitted_order < lo || fitted_order > hi {
                pass = false;
            }
        }
        ConvergenceReport {
            label: label.to_string(),
            rows: rows.into_iter().map(|(t, error)| ErrorRow { t, error }).collect(),
            fitted_order,
            tolerance,
            pass,
        }
    }
}
