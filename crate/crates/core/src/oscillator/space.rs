//! Boson-fermion oscillators `c_i^±` on a truncated Fock space.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, ModeSignature, OccupationVector};
use crate::operator::{GradedOperator, Parity};
use crate::qnum::QParameter;
use crate::rep::real_sqrt;
use crate::sparse::SparseMatrix;

/// How the occupation states `|l>` are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscNormalization {
    /// `(c_1^+)^{l_1} … (c_{n+m}^+)^{l_{n+m}} |0>`.
    Monomial,
    /// Monomials divided by `sqrt(l_1! … l_{n+m}!)`.
    Normalized,
}

/// One oscillator operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oscillator {
    Create(usize),
    Annihilate(usize),
    Number(usize),
    Total,
}

/// Branch used for square roots of eigenvalue functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtBranch {
    /// Arguments must be nonnegative reals; anything else is an error.
    Real,
    /// Principal branch of the complex square root.
    Principal,
}

impl SqrtBranch {
    pub(crate) fn apply(self, z: Complex64, tol: f64, context: impl FnOnce() -> String) -> Result<Complex64> {
        match self {
            SqrtBranch::Real => real_sqrt(z, tol, context),
            SqrtBranch::Principal => Ok(z.sqrt()),
        }
    }
}

/// The Fock space `F(n|m)` truncated to total occupation `<= cutoff`.
#[derive(Debug, Clone)]
pub struct OscFockSpace {
    signature: ModeSignature,
    basis: Arc<FockBasis>,
    normalization: OscNormalization,
}

/// `[k]/k` with the value at `k = 0` set to zero. Every caller places the
/// function on the image side of a ladder operator, so `k = 0` rows are
/// never reached.
pub(crate) fn bracket_ratio(q: &QParameter, k: u32) -> Complex64 {
    if k == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        q.bracket_real(f64::from(k)) / f64::from(k)
    }
}

impl OscFockSpace {
    /// The module label carried by the basis is unused here and set to 0.
    pub fn new(signature: ModeSignature, cutoff: usize, normalization: OscNormalization) -> Self {
        let basis = Arc::new(FockBasis::enumerate(signature, Complex64::new(0.0, 0.0), cutoff));
        Self { signature, basis, normalization }
    }

    pub fn signature(&self) -> ModeSignature {
        self.signature
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn normalization(&self) -> OscNormalization {
        self.normalization
    }

    /// Diagonal operator `f(l)` on the basis.
    pub fn diagonal(&self, label: impl Into<String>, f: impl Fn(&OccupationVector) -> Complex64) -> GradedOperator {
        let values: Vec<_> = self.basis.vectors().iter().map(f).collect();
        GradedOperator::diagonal(&self.basis, label, &values)
    }

    /// Diagonal operator `f(l)` where `f` may fail.
    pub fn try_diagonal(
        &self,
        label: impl Into<String>,
        f: impl Fn(&OccupationVector) -> Result<Complex64>,
    ) -> Result<GradedOperator> {
        let values = self.basis.vectors().iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(GradedOperator::diagonal(&self.basis, label, &values))
    }

    pub fn osc_matrix(&self, which: Oscillator) -> Result<GradedOperator> {
        let sig = self.signature;
        let b = &self.basis;
        let normalized = self.normalization == OscNormalization::Normalized;
        match which {
            Oscillator::Number(i) => {
                sig.check_mode(i)?;
                Ok(self.diagonal(format!("N{i}"), |l| Complex64::new(f64::from(l.get(i)), 0.0)))
            }
            Oscillator::Total => Ok(self.diagonal("N", |l| Complex64::new(f64::from(l.degree()), 0.0))),
            Oscillator::Annihilate(i) => {
                sig.check_mode(i)?;
                let mut triplets = Vec::new();
                for (col, l) in b.vectors().iter().enumerate() {
                    let li = l.get(i);
                    if li == 0 {
                        continue;
                    }
                    let amp = if normalized { f64::from(li).sqrt() } else { f64::from(li) };
                    let row = b.rank(&l.shifted(i, -1).expect("occupied")).expect("lower state in basis");
                    triplets.push((row, col, Complex64::new(l.prefix_sign(&sig, i) * amp, 0.0)));
                }
                let m = SparseMatrix::from_triplets(b.len(), b.len(), triplets);
                Ok(GradedOperator::new(b.clone(), m, Parity::from_bit(sig.theta(i)), format!("c{i}-"), -1))
            }
            Oscillator::Create(i) => {
                sig.check_mode(i)?;
                let mut triplets = Vec::new();
                for (col, l) in b.vectors().iter().enumerate() {
                    let li = l.get(i);
                    if sig.is_fermionic(i) && li == 1 {
                        continue;
                    }
                    let Some(row) = b.rank(&l.shifted(i, 1).expect("raising")) else { continue };
                    let amp = if normalized { f64::from(li + 1).sqrt() } else { 1.0 };
                    triplets.push((row, col, Complex64::new(l.prefix_sign(&sig, i) * amp, 0.0)));
                }
                let m = SparseMatrix::from_triplets(b.len(), b.len(), triplets);
                Ok(GradedOperator::new(b.clone(), m, Parity::from_bit(sig.theta(i)), format!("c{i}+"), 1))
            }
        }
    }

    /// Deformed oscillators: `c̃_i^- = sqrt([N_i+1]/(N_i+1)) c_i^-` and
    /// `c̃_i^+ = sqrt([N_i]/N_i) c_i^+`, the root evaluated on the image
    /// state. Roots must be real.
    pub fn deformed_osc_matrix(&self, which: Oscillator, q: &QParameter) -> Result<GradedOperator> {
        self.deformed_with_branch(which, q, SqrtBranch::Real)
    }

    pub(crate) fn deformed_with_branch(&self, which: Oscillator, q: &QParameter, branch: SqrtBranch) -> Result<GradedOperator> {
        if self.normalization != OscNormalization::Normalized {
            return Err(Error::Domain("deformed oscillators are defined on the normalized Fock space".into()));
        }
        let tol = q.tolerance();
        match which {
            Oscillator::Annihilate(i) => {
                let c = self.osc_matrix(which)?;
                let f = self.try_diagonal(format!("sqrt([N{i}+1]/(N{i}+1))"), |l| {
                    branch.apply(bracket_ratio(q, l.get(i) + 1), tol, || format!("[N{i}+1]/(N{i}+1) on {l}"))
                })?;
                Ok((&f * &c).with_label(format!("c~{i}-")))
            }
            Oscillator::Create(i) => {
                let c = self.osc_matrix(which)?;
                let f = self.try_diagonal(format!("sqrt([N{i}]/N{i})"), |l| {
                    branch.apply(bracket_ratio(q, l.get(i)), tol, || format!("[N{i}]/N{i} on {l}"))
                })?;
                Ok((&f * &c).with_label(format!("c~{i}+")))
            }
            Oscillator::Number(_) | Oscillator::Total => self.osc_matrix(which),
        }
    }
}
