//! Matrix representations of the Jacobson generators and Cartan-Weyl
//! elements on Fock modules, and the relation checkers that run on them.

mod context;
mod lemmas;
mod relations;
mod unitarity;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{FockBasis, ModeSignature};
use crate::operator::GradedOperator;
use crate::qnum::QParameter;

pub(crate) use context::real_sqrt;
pub use context::{as_nonnegative_integer, default_cutoff, Jacobson, Normalization, RepContext};
pub use lemmas::check_lemma_identities;
pub use relations::{check_gl_relations, check_theorem1, transition_consistency};
pub use unitarity::{
    gram_check, gram_matrix, norm_squared, unitarity_check, unitary_scan, zero_norm_vectors, ScanRow,
    UnitarityReport,
};

/// Anything that supplies matrices for the Jacobson generators (and the
/// remaining Cartan-Weyl elements) on a common basis. Implemented by the
/// Fock modules and by the oscillator realizations, so one set of relation
/// checkers serves both.
pub trait GeneratorFamily {
    fn signature(&self) -> ModeSignature;
    fn q(&self) -> &QParameter;
    fn basis(&self) -> &Arc<FockBasis>;
    /// Whether products of matrices are free of truncation artifacts.
    fn is_exact(&self) -> bool;
    fn cartan(&self, i: usize) -> Result<GradedOperator>;
    fn raising(&self, i: usize) -> Result<GradedOperator>;
    fn lowering(&self, i: usize) -> Result<GradedOperator>;
    /// `e_{ab}` for `a, b ∈ [0; n+m]`.
    fn cartan_weyl(&self, a: usize, b: usize) -> Result<GradedOperator>;

    /// `L_i^k = q^{k H_i}` as an exact diagonal; `L_0 = 1`.
    fn l_power(&self, i: usize, k: i64) -> Result<GradedOperator> {
        if i == 0 {
            return Ok(GradedOperator::identity(self.basis()));
        }
        let q = *self.q();
        let kk = Complex64::new(k as f64, 0.0);
        Ok(self.cartan(i)?.map_diagonal(format!("L{i}^{k}"), move |h| q.pow(kk * h)))
    }
}

impl GeneratorFamily for RepContext {
    fn signature(&self) -> ModeSignature {
        RepContext::signature(self)
    }

    fn q(&self) -> &QParameter {
        RepContext::q(self)
    }

    fn basis(&self) -> &Arc<FockBasis> {
        RepContext::basis(self)
    }

    fn is_exact(&self) -> bool {
        RepContext::is_exact(self)
    }

    fn cartan(&self, i: usize) -> Result<GradedOperator> {
        self.jg_matrix(Jacobson::Cartan(i))
    }

    fn raising(&self, i: usize) -> Result<GradedOperator> {
        self.jg_matrix(Jacobson::Raising(i))
    }

    fn lowering(&self, i: usize) -> Result<GradedOperator> {
        self.jg_matrix(Jacobson::Lowering(i))
    }

    fn cartan_weyl(&self, a: usize, b: usize) -> Result<GradedOperator> {
        self.cw_matrix(a, b)
    }
}
