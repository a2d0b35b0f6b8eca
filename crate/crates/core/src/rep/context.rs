use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, ModeSignature, OccupationVector};
use crate::operator::{scomm, GradedOperator, Parity};
use crate::qnum::QParameter;
use crate::sparse::SparseMatrix;

/// Which basis of the Fock module the matrices are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Monomials `(a_1^+)^{r_1} ... (a_{n+m}^+)^{r_{n+m}} |0>`.
    Unnormalized,
    /// Monomials rescaled to unit norm; needs an integer label `p`.
    Orthonormal,
}

/// A Jacobson generator `H_i`, `a_i^+` or `a_i^-` (1-based mode index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Jacobson {
    Cartan(usize),
    Raising(usize),
    Lowering(usize),
}

/// Returns `Some(k)` when `p` is a nonnegative integer.
pub fn as_nonnegative_integer(p: Complex64) -> Option<u32> {
    let k = p.re.round();
    if p.im.abs() <= 1e-12 && (p.re - k).abs() <= 1e-12 && k >= 0.0 && k < u32::MAX as f64 {
        Some(k as u32)
    } else {
        None
    }
}

/// Default truncation: `p` for integer `p`, otherwise `max(6, ceil|p| + 3)`.
pub fn default_cutoff(p: Complex64) -> usize {
    match as_nonnegative_integer(p) {
        Some(k) => k as usize,
        None => 6usize.max(p.norm().ceil() as usize + 3),
    }
}

/// `sqrt(z)` for `z` that must be a nonnegative real up to `tol`.
pub(crate) fn real_sqrt(z: Complex64, tol: f64, context: impl FnOnce() -> String) -> Result<Complex64> {
    let slack = tol * (1.0 + z.norm());
    if z.im.abs() > slack || z.re < -slack {
        return Err(Error::UnitarityDomain { value: format!("{z}"), context: context() });
    }
    Ok(Complex64::new(z.re.max(0.0).sqrt(), 0.0))
}

/// Everything needed to write down the Fock module `W_p` (or a truncation
/// of `W̄_p`) as matrices.
#[derive(Debug, Clone)]
pub struct RepContext {
    signature: ModeSignature,
    p: Complex64,
    q: QParameter,
    basis: Arc<FockBasis>,
    normalization: Normalization,
}

impl RepContext {
    /// `cutoff = None` picks [`default_cutoff`].
    pub fn new(
        signature: ModeSignature,
        p: Complex64,
        q: QParameter,
        cutoff: Option<usize>,
        normalization: Normalization,
    ) -> Result<Self> {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::Domain(format!("module label p = {p} is not finite")));
        }
        let cutoff = cutoff.unwrap_or_else(|| default_cutoff(p));
        if normalization == Normalization::Orthonormal {
            let Some(pi) = as_nonnegative_integer(p) else {
                return Err(Error::Domain(format!(
                    "orthonormal basis needs a nonnegative integer p, got {p}"
                )));
            };
            if cutoff > pi as usize {
                return Err(Error::Domain(format!(
                    "orthonormal basis only exists up to degree p = {pi}, cutoff {cutoff} requested"
                )));
            }
        }
        let basis = Arc::new(FockBasis::enumerate(signature, p, cutoff));
        Ok(Self { signature, p, q, basis, normalization })
    }

    /// The irreducible quotient `W_p` for integer `p` (cutoff = p).
    pub fn fock_module(signature: ModeSignature, p: u32, q: QParameter, normalization: Normalization) -> Result<Self> {
        Self::new(signature, Complex64::new(p as f64, 0.0), q, Some(p as usize), normalization)
    }

    pub fn with_normalization(&self, normalization: Normalization) -> Result<Self> {
        Self::new(self.signature, self.p, self.q, Some(self.basis.cutoff()), normalization)
    }

    pub fn signature(&self) -> ModeSignature {
        self.signature
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn q(&self) -> &QParameter {
        &self.q
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn integer_p(&self) -> Option<u32> {
        as_nonnegative_integer(self.p)
    }

    /// True when the matrices represent the finite module `W_p` exactly,
    /// i.e. `p` is a nonnegative integer and the cutoff equals `p`.
    pub fn is_exact(&self) -> bool {
        self.integer_p().map(|k| k as usize) == Some(self.cutoff())
    }

    fn column_data(&self, r: &OccupationVector, i: usize) -> (f64, u32, Complex64) {
        let sign = r.prefix_sign(&self.signature, i);
        let d = r.prefix_degree(i);
        let big_r = Complex64::new(r.degree() as f64, 0.0);
        (sign, d, big_r)
    }

    /// Eigenvalue of `H_i` on `|p; r>`: `p - (-1)^{θ_i} r_i - Σ r_j`.
    pub fn cartan_eigenvalue(&self, r: &OccupationVector, i: usize) -> Complex64 {
        let ri = r.get(i) as f64;
        self.p - self.signature.sign(i) * ri - r.degree() as f64
    }

    /// Matrix of a Jacobson generator.
    pub fn jg_matrix(&self, gen: Jacobson) -> Result<GradedOperator> {
        let sig = self.signature;
        let q = &self.q;
        let b = &self.basis;
        let ortho = self.normalization == Normalization::Orthonormal;
        let tol = q.tolerance();
        match gen {
            Jacobson::Cartan(i) => {
                sig.check_mode(i)?;
                let values: Vec<_> = b.vectors().iter().map(|r| self.cartan_eigenvalue(r, i)).collect();
                Ok(GradedOperator::diagonal(b, format!("H{i}"), &values))
            }
            Jacobson::Lowering(i) => {
                sig.check_mode(i)?;
                let mut triplets = Vec::new();
                for (col, r) in b.vectors().iter().enumerate() {
                    let ri = r.get(i);
                    if ri == 0 {
                        continue;
                    }
                    let (sign, d, big_r) = self.column_data(r, i);
                    let factor = q.bracket_real(ri as f64) * q.bracket(self.p - big_r + 1.0);
                    let amp = if ortho {
                        real_sqrt(factor, tol, || format!("a{i}- on {r}: [r_i][p-R+1]"))?
                    } else {
                        factor
                    };
                    let target = r.shifted(i, -1).expect("r_i > 0");
                    let row = b.rank(&target).expect("lowered vector stays in basis");
                    triplets.push((row, col, sign * q.int_pow(d as i64) * amp));
                }
                let m = SparseMatrix::from_triplets(b.len(), b.len(), triplets);
                Ok(GradedOperator::new(b.clone(), m, Parity::from_bit(sig.theta(i)), format!("a{i}-"), -1))
            }
            Jacobson::Raising(i) => {
                sig.check_mode(i)?;
                let mut triplets = Vec::new();
                for (col, r) in b.vectors().iter().enumerate() {
                    let ri = r.get(i);
                    if sig.is_fermionic(i) && ri == 1 {
                        continue;
                    }
                    let target = r.shifted(i, 1).expect("raising never underflows");
                    // images beyond the cutoff are projected out
                    let Some(row) = b.rank(&target) else { continue };
                    let (sign, d, big_r) = self.column_data(r, i);
                    let amp = if ortho {
                        let factor = q.bracket_real(ri as f64 + 1.0) * q.bracket(self.p - big_r);
                        real_sqrt(factor, tol, || format!("a{i}+ on {r}: [r_i+1][p-R]"))?
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    triplets.push((row, col, sign * q.int_pow(-(d as i64)) * amp));
                }
                let m = SparseMatrix::from_triplets(b.len(), b.len(), triplets);
                Ok(GradedOperator::new(b.clone(), m, Parity::from_bit(sig.theta(i)), format!("a{i}+"), 1))
            }
        }
    }

    /// Matrix of the Cartan-Weyl element `e_{ab}`, `a, b ∈ [0; n+m]`, on the
    /// gl-extended module: `e_{0i} = a_i^-`, `e_{i0} = a_i^+`, `e_{00}`
    /// and `e_{ii}` diagonal.
    pub fn cw_matrix(&self, a: usize, b: usize) -> Result<GradedOperator> {
        let sig = self.signature;
        sig.check_index(a)?;
        sig.check_index(b)?;
        let basis = &self.basis;
        let label = format!("e{a}{b}");
        match (a, b) {
            (0, 0) => {
                let values: Vec<_> =
                    basis.vectors().iter().map(|r| self.p - r.degree() as f64).collect();
                Ok(GradedOperator::diagonal(basis, label, &values))
            }
            (0, i) => Ok(self.jg_matrix(Jacobson::Lowering(i))?.with_label(label)),
            (i, 0) => Ok(self.jg_matrix(Jacobson::Raising(i))?.with_label(label)),
            (i, j) if i == j => {
                let values: Vec<_> =
                    basis.vectors().iter().map(|r| Complex64::new(r.get(i) as f64, 0.0)).collect();
                Ok(GradedOperator::diagonal(basis, label, &values))
            }
            (j, i) => match self.normalization {
                Normalization::Unnormalized => self.transition_from_bracket(j, i),
                Normalization::Orthonormal => self.transition_closed_form(j, i),
            },
        }
    }

    /// `e_{ji}` solved from `[[a_i^-, a_j^+]]`:
    /// `e_{ji} = -(-1)^{θ_i} L_i^{-1} [[a_i^-, a_j^+]]` for `i < j` and
    /// `e_{ji} = -(-1)^{θ_j} [[a_i^-, a_j^+]] L_j` for `i > j`.
    ///
    /// The bracket is formed on a basis one degree larger and restricted
    /// back, so the result is exact on every column of a truncated basis.
    pub fn transition_from_bracket(&self, j: usize, i: usize) -> Result<GradedOperator> {
        let sig = self.signature;
        sig.check_mode(i)?;
        sig.check_mode(j)?;
        if i == j {
            return Err(Error::Domain("e_ji from the bracket needs i != j".into()));
        }
        let wide = RepContext::new(sig, self.p, self.q, Some(self.cutoff() + 1), Normalization::Unnormalized)?;
        let lower = wide.jg_matrix(Jacobson::Lowering(i))?;
        let raise = wide.jg_matrix(Jacobson::Raising(j))?;
        let bracket = scomm(&lower, &raise, Complex64::new(1.0, 0.0));
        let q = self.q;
        let full = if i < j {
            let l_inv = wide.jg_matrix(Jacobson::Cartan(i))?.map_diagonal("Li^-1", |h| q.pow(-h));
            (&l_inv * &bracket).scale(Complex64::new(-sig.sign(i), 0.0))
        } else {
            let l = wide.jg_matrix(Jacobson::Cartan(j))?.map_diagonal("Lj", |h| q.pow(h));
            (&bracket * &l).scale(Complex64::new(-sig.sign(j), 0.0))
        };
        let dim = self.basis.len();
        let m = full.matrix().leading_block(dim, dim);
        let parity = Parity::from_bit(sig.theta(i) + sig.theta(j));
        let op = GradedOperator::new(self.basis.clone(), m, parity, format!("e{j}{i}"), 0);
        match self.normalization {
            Normalization::Unnormalized => Ok(op),
            Normalization::Orthonormal => self.to_orthonormal(&op),
        }
    }

    /// Rewrites an operator given in the monomial basis in the orthonormal
    /// basis `|p;r) = |p;r> / sqrt((|p;r>, |p;r>))`.
    pub fn to_orthonormal(&self, op: &GradedOperator) -> Result<GradedOperator> {
        let norms = self.norm_squared_diagonal()?;
        let tol = self.q.tolerance();
        let roots = norms
            .iter()
            .zip(self.basis.vectors())
            .map(|(&n, r)| real_sqrt(n, tol, || format!("norm of {r}")))
            .collect::<Result<Vec<_>>>()?;
        let m = SparseMatrix::from_triplets(
            op.matrix().rows(),
            op.matrix().cols(),
            op.matrix().iter().map(|(row, col, v)| (row, col, v * roots[row] / roots[col])),
        );
        Ok(GradedOperator::new(self.basis.clone(), m, op.parity(), op.label(), op.rise()))
    }

    /// `e_{ji}` in the orthonormal basis from the closed-form actions.
    fn transition_closed_form(&self, j: usize, i: usize) -> Result<GradedOperator> {
        let sig = self.signature;
        let q = &self.q;
        let b = &self.basis;
        let th = |k: usize| sig.theta(k) as i64;
        let mut triplets = Vec::new();
        for (col, r) in b.vectors().iter().enumerate() {
            let ri = r.get(i) as i64;
            let rj = r.get(j) as i64;
            if ri == 0 || (sig.is_fermionic(j) && rj == 1) {
                continue;
            }
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            let between: i64 = (lo + 1..hi).map(|k| r.get(k) as i64).sum();
            let odd_between: i64 = (lo + 1..hi).map(|k| th(k) * r.get(k) as i64).sum();
            let (sign_exp, qexp) = if i < j {
                // (-1)^{θ_i(r_i+1) + Σ θ_k r_k}, qbar^{Σ r_k - 2θ_i(1-r_i)}
                (th(i) * (ri + 1) + odd_between, -(between - 2 * th(i) * (1 - ri)))
            } else {
                // (-1)^{θ_j r_j + Σ θ_k r_k}, q^{2θ_j r_j + Σ r_k}
                (th(j) * rj + odd_between, 2 * th(j) * rj + between)
            };
            let sign = if sign_exp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let factor = q.bracket_real(ri as f64) * q.bracket_real(rj as f64 + 1.0);
            let amp = real_sqrt(factor, q.tolerance(), || format!("e{j}{i} on {r}: [r_i][r_j+1]"))?;
            let target = r.shifted(i, -1).and_then(|t| t.shifted(j, 1)).expect("valid transition");
            let row = b.rank(&target).expect("degree-preserving image stays in basis");
            triplets.push((row, col, sign * q.int_pow(qexp) * amp));
        }
        let m = SparseMatrix::from_triplets(b.len(), b.len(), triplets);
        let parity = Parity::from_bit(sig.theta(i) + sig.theta(j));
        Ok(GradedOperator::new(b.clone(), m, parity, format!("e{j}{i}"), 0))
    }

    /// `(|p;r>, |p;r>)` for every basis vector, computed from the closed
    /// norm formula.
    pub fn norm_squared_diagonal(&self) -> Result<Vec<Complex64>> {
        let pi = self.integer_p().ok_or_else(|| Error::Domain("norms need integer p".into()))?;
        let q = &self.q;
        Ok(self
            .basis
            .vectors()
            .iter()
            .map(|r| {
                let big_r = r.degree();
                let falling: Complex64 =
                    (0..big_r).fold(Complex64::new(1.0, 0.0), |acc, k| acc * q.bracket_real(pi as f64 - k as f64));
                let modes = (1..=self.signature.n()).fold(Complex64::new(1.0, 0.0), |acc, k| acc * q.factorial(r.get(k)));
                falling * modes
            })
            .collect())
    }
}
