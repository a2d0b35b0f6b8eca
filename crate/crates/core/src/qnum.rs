//! q-numbers, q-factorials and powers of the deformation parameter.
//!
//! `q` is a fixed complex number. Three modes are supported: a generic
//! complex value, a pure phase `q = e^{iφ}` (the unitary regime) and the
//! classical point `q = 1`, where every q-bracket degenerates to its
//! argument.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for residuals of matrix identities.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QMode {
    Generic(Complex64),
    Phase(f64),
    Classical,
}

/// The deformation parameter together with the residual tolerance used by
/// every check that runs against it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParameter {
    mode: QMode,
    tolerance: f64,
}

impl QParameter {
    pub fn generic(value: Complex64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::InvalidQ(format!("q = {value} is not finite")));
        }
        if value.norm() < 1e-300 {
            return Err(Error::InvalidQ("q = 0".into()));
        }
        if (value * value - 1.0).norm() < 1e-12 {
            return Err(Error::InvalidQ(format!(
                "q = {value} gives q - 1/q = 0; use the classical mode for q = 1"
            )));
        }
        Ok(Self { mode: QMode::Generic(value), tolerance: DEFAULT_TOLERANCE })
    }

    pub fn phase(phi: f64) -> Result<Self> {
        if !phi.is_finite() || phi <= -PI || phi >= PI {
            return Err(Error::InvalidQ(format!("phase {phi} outside (-pi, pi)")));
        }
        if phi == 0.0 {
            return Err(Error::InvalidQ("phase 0 is q = 1; use the classical mode".into()));
        }
        Ok(Self { mode: QMode::Phase(phi), tolerance: DEFAULT_TOLERANCE })
    }

    pub fn classical() -> Self {
        Self { mode: QMode::Classical, tolerance: DEFAULT_TOLERANCE }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance < 0.0 || !tolerance.is_finite() {
            return Err(Error::Domain(format!("tolerance {tolerance} must be a nonnegative real")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.mode, QMode::Classical)
    }

    pub fn phase_angle(&self) -> Option<f64> {
        match self.mode {
            QMode::Phase(phi) => Some(phi),
            _ => None,
        }
    }

    /// The complex number `q`.
    pub fn value(&self) -> Complex64 {
        match self.mode {
            QMode::Generic(q) => q,
            QMode::Phase(phi) => Complex64::from_polar(1.0, phi),
            QMode::Classical => Complex64::new(1.0, 0.0),
        }
    }

    /// `q - q^{-1}` (zero in the classical mode).
    pub fn q_minus_qinv(&self) -> Complex64 {
        match self.mode {
            QMode::Generic(q) => q - q.inv(),
            QMode::Phase(phi) => Complex64::new(0.0, 2.0 * phi.sin()),
            QMode::Classical => Complex64::new(0.0, 0.0),
        }
    }

    /// `q^k` for integer `k`.
    pub fn int_pow(&self, k: i64) -> Complex64 {
        match self.mode {
            QMode::Generic(q) => {
                if k >= 0 {
                    q.powi(k as i32)
                } else {
                    q.inv().powi((-k) as i32)
                }
            }
            QMode::Phase(phi) => Complex64::from_polar(1.0, k as f64 * phi),
            QMode::Classical => Complex64::new(1.0, 0.0),
        }
    }

    /// `q^x` for complex `x` on the principal branch. Integer-valued `x`
    /// goes through [`QParameter::int_pow`].
    pub fn pow(&self, x: Complex64) -> Complex64 {
        if let Some(k) = as_integer(x) {
            return self.int_pow(k);
        }
        match self.mode {
            QMode::Generic(q) => (x * q.ln()).exp(),
            QMode::Phase(phi) => (Complex64::i() * phi * x).exp(),
            QMode::Classical => Complex64::new(1.0, 0.0),
        }
    }

    /// The q-bracket `[x] = (q^x - q^{-x}) / (q - q^{-1})`.
    pub fn bracket(&self, x: Complex64) -> Complex64 {
        match self.mode {
            QMode::Classical => x,
            QMode::Phase(phi) => {
                if x.im == 0.0 {
                    Complex64::new((x.re * phi).sin() / phi.sin(), 0.0)
                } else {
                    (x * phi).sin() / phi.sin()
                }
            }
            QMode::Generic(_) => {
                if x == Complex64::new(0.0, 0.0) {
                    return x;
                }
                (self.pow(x) - self.pow(-x)) / self.q_minus_qinv()
            }
        }
    }

    pub fn bracket_real(&self, x: f64) -> Complex64 {
        self.bracket(Complex64::new(x, 0.0))
    }

    /// `[k]! = [1][2]...[k]`, with `[0]! = 1`.
    pub fn factorial(&self, k: u32) -> Complex64 {
        (1..=k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * self.bracket_real(j as f64))
    }

    /// `(q^{2r} - 1)/(q^2 - 1)` written as the finite sum `1 + q^2 + ... + q^{2(r-1)}`,
    /// which stays well defined at `q = 1`.
    pub fn geometric_even(&self, r: u32) -> Complex64 {
        (0..r as i64).map(|k| self.int_pow(2 * k)).sum()
    }

    /// Same as [`QParameter::geometric_even`] with `q` replaced by `q^{-1}`.
    pub fn geometric_even_inv(&self, r: u32) -> Complex64 {
        (0..r as i64).map(|k| self.int_pow(-2 * k)).sum()
    }
}

impl Default for QParameter {
    fn default() -> Self {
        Self::classical()
    }
}

impl fmt::Display for QParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            QMode::Classical => write!(f, "classical"),
            QMode::Phase(phi) => write!(f, "phase:{phi}"),
            QMode::Generic(q) => {
                if q.im < 0.0 {
                    write!(f, "{}{}i", q.re, q.im)
                } else {
                    write!(f, "{}+{}i", q.re, q.im)
                }
            }
        }
    }
}

/// Parses `classical`, `phase:<radians>`, `re+imi` / `re-imi`, or a plain real.
impl FromStr for QParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("classical") {
            return Ok(Self::classical());
        }
        if let Some(rest) = s.strip_prefix("phase:") {
            let phi: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad phase angle in q spec '{s}'")))?;
            return Self::phase(phi);
        }
        Self::generic(parse_complex(s)?)
    }
}

/// Parses a complex literal of the form `a`, `a+bi`, `a-bi`, `bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse complex number '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn as_integer(x: Complex64) -> Option<i64> {
    if x.im == 0.0 && x.re.fract() == 0.0 && x.re.abs() < 1e15 {
        Some(x.re as i64)
    } else {
        None
    }
}

/// `[x]` for a real argument.
pub fn q_bracket(x: f64, q: &QParameter) -> Complex64 {
    q.bracket_real(x)
}

/// `[k]!`.
pub fn q_factorial(k: u32, q: &QParameter) -> Complex64 {
    q.factorial(k)
}

/// `q^k` for integer `k`.
pub fn q_int_power(q: &QParameter, k: i64) -> Complex64 {
    q.int_pow(k)
}
