//! Z2-graded operators on a Fock basis and the (q-deformed) supercommutator.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockBasis;
use crate::sparse::SparseMatrix;

/// Z2 degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn times(self, k: u32) -> Self {
        Self::from_bit(((self.bit() as u32 * k) % 2) as u8)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// A sparse matrix on a [`FockBasis`] carrying its Z2 degree.
///
/// Two extra integers describe how the operator moves total degree:
/// `rise` bounds the net degree change of the output and `reach` bounds
/// the highest degree, above the input column, touched while evaluating
/// the operator as a product of generators. Truncated bases are exact on
/// columns of degree `<= cutoff - reach`.
#[derive(Debug, Clone)]
pub struct GradedOperator {
    matrix: SparseMatrix,
    parity: Parity,
    basis: Arc<FockBasis>,
    label: String,
    rise: i32,
    reach: i32,
}

impl GradedOperator {
    pub fn new(
        basis: Arc<FockBasis>,
        matrix: SparseMatrix,
        parity: Parity,
        label: impl Into<String>,
        rise: i32,
    ) -> Self {
        assert_eq!(matrix.rows(), basis.len());
        assert_eq!(matrix.cols(), basis.len());
        Self { matrix, parity, basis, label: label.into(), rise, reach: rise.max(0) }
    }

    pub fn identity(basis: &Arc<FockBasis>) -> Self {
        Self::new(basis.clone(), SparseMatrix::identity(basis.len()), Parity::Even, "1", 0)
    }

    pub fn zero(basis: &Arc<FockBasis>) -> Self {
        Self::new(basis.clone(), SparseMatrix::zeros(basis.len(), basis.len()), Parity::Even, "0", 0)
    }

    /// Diagonal operator from per-basis-vector values.
    pub fn diagonal(basis: &Arc<FockBasis>, label: impl Into<String>, values: &[Complex64]) -> Self {
        Self::new(basis.clone(), SparseMatrix::from_diagonal(values), Parity::Even, label, 0)
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rise(&self) -> i32 {
        self.rise
    }

    pub fn reach(&self) -> i32 {
        self.reach
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn same_basis(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self { matrix: self.matrix.scale(alpha), label: format!("{alpha}*{}", self.label), ..self.clone() }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            label: format!("({})^dagger", self.label),
            rise: -self.rise,
            reach: (-self.rise).max(0).max(self.reach - self.rise),
            ..self.clone()
        }
    }

    /// `self^k`; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(&self.basis);
        for _ in 0..k {
            out = &out * self;
        }
        out.with_label(format!("({})^{k}", self.label))
    }

    /// Maps the diagonal entries through `f`; off-diagonal entries are dropped.
    pub fn map_diagonal(&self, label: impl Into<String>, f: impl Fn(Complex64) -> Complex64) -> Self {
        let values: Vec<_> = self.matrix.diagonal().into_iter().map(f).collect();
        Self::diagonal(&self.basis, label, &values)
    }

    /// Product checked for basis compatibility.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_basis(other) {
            return Err(Error::BasisMismatch);
        }
        Ok(self * other)
    }
}

impl Mul for &GradedOperator {
    type Output = GradedOperator;
    fn mul(self, rhs: &GradedOperator) -> GradedOperator {
        assert!(self.same_basis(rhs), "operator product across different bases");
        GradedOperator {
            matrix: self.matrix.matmul(&rhs.matrix),
            parity: self.parity + rhs.parity,
            basis: self.basis.clone(),
            label: format!("{}*{}", self.label, rhs.label),
            rise: self.rise + rhs.rise,
            reach: rhs.reach.max(rhs.rise + self.reach),
        }
    }
}

fn combine(a: &GradedOperator, alpha: Complex64, b: &GradedOperator, beta: Complex64, op: &str) -> GradedOperator {
    assert!(a.same_basis(b), "operator sum across different bases");
    GradedOperator {
        matrix: a.matrix.axpby(alpha, &b.matrix, beta),
        parity: a.parity,
        basis: a.basis.clone(),
        label: format!("{}{op}{}", a.label, b.label),
        rise: a.rise.max(b.rise),
        reach: a.reach.max(b.reach),
    }
}

impl Add for &GradedOperator {
    type Output = GradedOperator;
    fn add(self, rhs: &GradedOperator) -> GradedOperator {
        let one = Complex64::new(1.0, 0.0);
        combine(self, one, rhs, one, "+")
    }
}

impl Sub for &GradedOperator {
    type Output = GradedOperator;
    fn sub(self, rhs: &GradedOperator) -> GradedOperator {
        let one = Complex64::new(1.0, 0.0);
        combine(self, one, rhs, -one, "-")
    }
}

impl Neg for &GradedOperator {
    type Output = GradedOperator;
    fn neg(self) -> GradedOperator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<&GradedOperator> for Complex64 {
    type Output = GradedOperator;
    fn mul(self, rhs: &GradedOperator) -> GradedOperator {
        rhs.scale(self)
    }
}

/// `[[A, B]]_x = AB - (-1)^{deg A deg B} x BA`.
pub fn supercommutator(a: &GradedOperator, b: &GradedOperator, x: Complex64) -> Result<GradedOperator> {
    if !a.same_basis(b) {
        return Err(Error::BasisMismatch);
    }
    Ok(scomm(a, b, x))
}

pub(crate) fn scomm(a: &GradedOperator, b: &GradedOperator, x: Complex64) -> GradedOperator {
    let sign = if a.parity.bit() * b.parity.bit() == 1 { -1.0 } else { 1.0 };
    let ab = a * b;
    let ba = b * a;
    let one = Complex64::new(1.0, 0.0);
    let mut out = combine(&ab, one, &ba, -sign * x, "-");
    out.parity = a.parity + b.parity;
    out.label = format!("[[{},{}]]", a.label, b.label);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockBasis, ModeSignature};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn basis() -> Arc<FockBasis> {
        Arc::new(FockBasis::enumerate(ModeSignature::new(0, 1).unwrap(), c(1.0), 1))
    }

    fn fermion_pair(b: &Arc<FockBasis>) -> (GradedOperator, GradedOperator) {
        let up = GradedOperator::new(b.clone(), SparseMatrix::from_triplets(2, 2, [(1, 0, c(1.0))]), Parity::Odd, "f+", 1);
        let down = GradedOperator::new(b.clone(), SparseMatrix::from_triplets(2, 2, [(0, 1, c(1.0))]), Parity::Odd, "f-", -1);
        (up, down)
    }

    #[test]
    fn odd_odd_bracket_is_anticommutator() {
        let b = basis();
        let (up, down) = fermion_pair(&b);
        let anti = supercommutator(&down, &up, c(1.0)).unwrap();
        assert_eq!(anti.matrix(), GradedOperator::identity(&b).matrix());
        assert_eq!(anti.parity(), Parity::Even);
        assert_eq!(supercommutator(&up, &up, c(1.0)).unwrap().matrix().nnz(), 0);
    }

    #[test]
    fn reach_tracks_excursion() {
        let b = basis();
        let (up, down) = fermion_pair(&b);
        let word = &down * &up; // raise first then lower
        assert_eq!((word.rise(), word.reach()), (0, 1));
        let word = &up * &down;
        assert_eq!((word.rise(), word.reach()), (0, 0));
    }

    #[test]
    fn basis_mismatch_is_reported() {
        let b1 = basis();
        let b2 = Arc::new(FockBasis::enumerate(ModeSignature::new(1, 0).unwrap(), c(1.0), 1));
        let a = GradedOperator::identity(&b1);
        let z = GradedOperator::identity(&b2);
        assert_eq!(supercommutator(&a, &z, c(1.0)).unwrap_err(), Error::BasisMismatch);
        assert!(a.try_mul(&z).is_err());
    }
}
