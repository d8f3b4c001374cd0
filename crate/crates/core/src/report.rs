//! Machine-readable verification reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::ComplexMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    /// Maximum absolute residual over all samples and index combinations.
    pub max_abs: f64,
    pub tol: f64,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.max_abs < self.tol
    }
}

/// Outcome of one check. `pass` is `None` for informational probes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub group: String,
    pub params: serde_json::Value,
    pub residuals: Vec<Residual>,
    pub samples_used: usize,
    pub samples_discarded: usize,
    /// Worst group-membership defect over the samples, when the check samples a group.
    pub max_sample_defect: Option<f64>,
    pub pass: Option<bool>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.max_abs)
    }

    /// Largest residual over all named identities.
    pub fn worst(&self) -> f64 {
        self.residuals
            .iter()
            .map(|r| r.max_abs)
            .fold(0.0, nan_max)
    }

    /// Copy with the wall-clock field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

pub struct ReportBuilder {
    check: String,
    group: String,
    params: serde_json::Map<String, serde_json::Value>,
    residuals: Vec<Residual>,
    samples_used: usize,
    samples_discarded: usize,
    max_sample_defect: Option<f64>,
    informational: bool,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, group: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            group: group.into(),
            params: serde_json::Map::new(),
            residuals: Vec::new(),
            samples_used: 0,
            samples_discarded: 0,
            max_sample_defect: None,
            informational: false,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(serde_json::Value::Null),
        );
        self
    }

    pub fn residual(mut self, name: impl Into<String>, max_abs: f64, tol: f64) -> Self {
        self.residuals.push(Residual {
            name: name.into(),
            max_abs,
            tol,
        });
        self
    }

    pub fn residuals<'a>(
        mut self,
        names: impl IntoIterator<Item = &'a str>,
        values: &[f64],
        tol: f64,
    ) -> Self {
        for (name, &v) in names.into_iter().zip(values) {
            self = self.residual(name, v, tol);
        }
        self
    }

    pub fn samples(mut self, used: usize, discarded: usize) -> Self {
        self.samples_used = used;
        self.samples_discarded = discarded;
        self
    }

    pub fn sample_defect(mut self, defect: f64) -> Self {
        self.max_sample_defect = Some(defect);
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn finish(self) -> VerificationReport {
        let pass = (!self.informational).then(|| self.residuals.iter().all(Residual::passes));
        VerificationReport {
            check: self.check,
            group: self.group,
            params: serde_json::Value::Object(self.params),
            residuals: self.residuals,
            samples_used: self.samples_used,
            samples_discarded: self.samples_discarded,
            max_sample_defect: self.max_sample_defect,
            pass,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// `max` that keeps NaN sticky so a NaN residual can never pass.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Evaluates `per_sample` on every sample (in parallel) and reduces each
/// residual component by max, in sample order.
pub fn max_over_samples<F>(samples: &[ComplexMatrix], width: usize, per_sample: F) -> Result<Vec<f64>>
where
    F: Fn(&ComplexMatrix) -> Result<Vec<f64>> + Sync,
{
    let rows: Vec<Result<Vec<f64>>> = samples.par_iter().map(&per_sample).collect();
    let mut acc = vec![0.0; width];
    for row in rows {
        let row = row?;
        debug_assert_eq!(row.len(), width);
        for (a, v) in acc.iter_mut().zip(row) {
            *a = nan_max(*a, v);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_every_residual_below_tol() {
        let r = ReportBuilder::new("c", "g")
            .residual("a", 1e-12, 1e-8)
            .residual("b", 2e-8, 1e-8)
            .finish();
        assert_eq!(r.pass, Some(false));
        let r = ReportBuilder::new("c", "g").residual("a", 1e-12, 1e-8).finish();
        assert!(r.passed());
    }

    #[test]
    fn nan_never_passes() {
        let r = ReportBuilder::new("c", "g").residual("a", f64::NAN, 1.0).finish();
        assert!(!r.passed());
        assert!(nan_max(0.0, f64::NAN).is_nan());
        assert!(nan_max(f64::NAN, 1.0).is_nan());
    }

    #[test]
    fn informational_reports_have_no_verdict() {
        let r = ReportBuilder::new("c", "g").residual("a", 5.0, 1.0).informational().finish();
        assert_eq!(r.pass, None);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["pass"].is_null());
    }

    #[test]
    fn max_over_samples_is_ordered_max() {
        let samples: Vec<_> = (0..50).map(|k| ComplexMatrix::identity(1).scale_real(k as f64)).collect();
        let m = max_over_samples(&samples, 2, |x| Ok(vec![x[(0, 0)].re, -x[(0, 0)].re])).unwrap();
        assert_eq!(m, vec![49.0, 0.0]);
    }
}
