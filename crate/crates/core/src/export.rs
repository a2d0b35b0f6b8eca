//! Machine-readable matrix dumps.

use std::fmt::Write;

use serde::Serialize;

use crate::operator::GradedOperator;

/// `{"rows":R,"cols":C,"parity":0|1,"entries":[[r,c,re,im],…]}` with
/// entries sorted by `(r, c)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixExport {
    pub rows: usize,
    pub cols: usize,
    pub parity: u8,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

// folds -0.0 into 0.0 so dumps do not depend on how a zero imaginary part
// was produced
fn clean(x: f64) -> f64 {
    x + 0.0
}

impl MatrixExport {
    pub fn from_operator(op: &GradedOperator) -> Self {
        let m = op.matrix();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            parity: op.parity().bit(),
            entries: m.iter().map(|(r, c, v)| (r, c, clean(v.re), clean(v.im))).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// `r,c,re,im` header followed by one line per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,c,re,im\n");
        for (r, c, re, im) in &self.entries {
            writeln!(out, "{r},{c},{re},{im}").expect("writing to a String");
        }
        out
    }
}
