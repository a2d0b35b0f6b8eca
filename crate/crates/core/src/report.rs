//! Residual bookkeeping for relation checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::operator::GradedOperator;

/// Scale-free residual of `lhs - rhs`:
/// `max|lhs - rhs| / max(1, max|lhs|, max|rhs|)` over the admitted columns.
///
/// When `exact` is false the basis is a truncation and only columns of
/// degree `<= cutoff - reach` are admitted, `reach` being the larger of the
/// two sides' excursions.
pub fn residual(lhs: &GradedOperator, rhs: &GradedOperator, exact: bool) -> f64 {
    let limit = admitted_columns(lhs, rhs, exact);
    let diff = lhs - rhs;
    let scale = 1f64
        .max(lhs.matrix().max_abs_in_cols(limit))
        .max(rhs.matrix().max_abs_in_cols(limit));
    diff.matrix().max_abs_in_cols(limit) / scale
}

/// Number of leading basis columns on which `lhs` and `rhs` are exact.
pub fn admitted_columns(lhs: &GradedOperator, rhs: &GradedOperator, exact: bool) -> usize {
    let basis = lhs.basis();
    if exact {
        return basis.len();
    }
    let reach = lhs.reach().max(rhs.reach()).max(0) as usize;
    match basis.cutoff().checked_sub(reach) {
        Some(d) => basis.prefix_len(d),
        None => 0,
    }
}

/// Residuals keyed by relation instance, plus the names of conditional
/// branches (indicator terms) that were exercised with a nonzero value.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RelationReport {
    pub tolerance: f64,
    pub residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "BTreeSet::is_empty")]
    pub branches: BTreeSet<String>,
}

impl RelationReport {
    pub fn new(tolerance: f64) -> Self {
        Self { tolerance, ..Default::default() }
    }

    pub fn record(&mut self, key: impl Into<String>, value: f64) {
        let key = key.into();
        let slot = self.residuals.entry(key).or_insert(0.0);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
    }

    pub fn record_pair(&mut self, key: impl Into<String>, lhs: &GradedOperator, rhs: &GradedOperator, exact: bool) {
        self.record(key, residual(lhs, rhs, exact));
    }

    pub fn hit_branch(&mut self, name: impl Into<String>) {
        self.branches.insert(name.into());
    }

    pub fn merge(&mut self, prefix: &str, other: RelationReport) {
        for (k, v) in other.residuals {
            self.record(format!("{prefix}{k}"), v);
        }
        self.branches.extend(other.branches.into_iter().map(|b| format!("{prefix}{b}")));
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn failures(&self) -> Vec<(&str, f64)> {
        self.residuals
            .iter()
            .filter(|(_, &v)| v.is_nan() || v > self.tolerance)
            .map(|(k, &v)| (k.as_str(), v))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn len(&self) -> usize {
        self.residuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }
}
