//! Dyson and Holstein-Primakoff realizations of the Jacobson generators
//! and the Cartan-Weyl elements as oscillator-space operators.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, ModeSignature, OccupationVector};
use crate::operator::GradedOperator;
use crate::qnum::QParameter;
use crate::rep::{as_nonnegative_integer, default_cutoff, GeneratorFamily, Jacobson};

use super::space::{bracket_ratio, OscFockSpace, OscNormalization, Oscillator, SqrtBranch};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationKind {
    /// Polynomial coefficients; matches the monomial module basis.
    Dyson,
    /// Square-root coefficients built from `c_i^±`.
    HolsteinPrimakoff,
    /// The same map written with the deformed oscillators `c̃_i^±`.
    HolsteinPrimakoffDeformed,
}

/// Any generator that can be realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Jacobson(Jacobson),
    /// `e_{ab}`, `a, b ∈ [0; n+m]`.
    CartanWeyl(usize, usize),
}

#[derive(Debug, Clone)]
pub struct RealizationMap {
    kind: RealizationKind,
    p: Complex64,
    q: QParameter,
    space: OscFockSpace,
    branch: SqrtBranch,
}

impl RealizationMap {
    /// Square roots use the strict real branch on the finite quotient
    /// (integer `p`, cutoff `<= p`) and the principal branch otherwise.
    pub fn new(kind: RealizationKind, p: Complex64, q: QParameter, space: OscFockSpace) -> Result<Self> {
        if kind == RealizationKind::HolsteinPrimakoffDeformed && space.normalization() != OscNormalization::Normalized {
            return Err(Error::Domain("the deformed realization lives on the normalized Fock space".into()));
        }
        let branch = match as_nonnegative_integer(p) {
            Some(k) if space.cutoff() <= k as usize => SqrtBranch::Real,
            _ => SqrtBranch::Principal,
        };
        Ok(Self { kind, p, q, space, branch })
    }

    /// Dyson map on the monomial Fock space.
    pub fn dyson(sig: ModeSignature, p: Complex64, q: QParameter, cutoff: Option<usize>) -> Result<Self> {
        let cutoff = cutoff.unwrap_or_else(|| default_cutoff(p));
        Self::new(RealizationKind::Dyson, p, q, OscFockSpace::new(sig, cutoff, OscNormalization::Monomial))
    }

    /// Holstein-Primakoff map (plain or deformed form) on the normalized
    /// Fock space.
    pub fn holstein_primakoff(
        sig: ModeSignature,
        p: Complex64,
        q: QParameter,
        cutoff: Option<usize>,
        deformed: bool,
    ) -> Result<Self> {
        let cutoff = cutoff.unwrap_or_else(|| default_cutoff(p));
        let kind = if deformed {
            RealizationKind::HolsteinPrimakoffDeformed
        } else {
            RealizationKind::HolsteinPrimakoff
        };
        Self::new(kind, p, q, OscFockSpace::new(sig, cutoff, OscNormalization::Normalized))
    }

    pub fn kind(&self) -> RealizationKind {
        self.kind
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn space(&self) -> &OscFockSpace {
        &self.space
    }

    pub fn sqrt_branch(&self) -> SqrtBranch {
        self.branch
    }

    pub fn realize(&self, gen: Generator) -> Result<GradedOperator> {
        match gen {
            Generator::Jacobson(Jacobson::Cartan(i)) => self.cartan(i),
            Generator::Jacobson(Jacobson::Raising(i)) => self.raising(i),
            Generator::Jacobson(Jacobson::Lowering(i)) => self.lowering(i),
            Generator::CartanWeyl(a, b) => self.cartan_weyl(a, b),
        }
    }

    fn prefix(l: &OccupationVector, i: usize) -> i64 {
        i64::from(l.prefix_degree(i))
    }

    fn bracket_p(&self, l: &OccupationVector, shift: f64) -> Complex64 {
        self.q.bracket(self.p - f64::from(l.degree()) + shift)
    }

    fn root(&self, z: Complex64, what: impl FnOnce() -> String) -> Result<Complex64> {
        self.branch.apply(z, self.q.tolerance(), what)
    }

    fn osc(&self, w: Oscillator) -> Result<GradedOperator> {
        self.space.osc_matrix(w)
    }

    fn deformed(&self, w: Oscillator) -> Result<GradedOperator> {
        self.space.deformed_with_branch(w, &self.q, self.branch)
    }

    fn realize_lowering(&self, i: usize) -> Result<GradedOperator> {
        let q = self.q;
        let label = format!("rho(a{i}-)");
        let sp = &self.space;
        let op = match self.kind {
            RealizationKind::Dyson => {
                let f = sp.diagonal("f", |l| {
                    q.int_pow(Self::prefix(l, i)) * bracket_ratio(&q, l.get(i) + 1) * self.bracket_p(l, 0.0)
                });
                &f * &self.osc(Oscillator::Annihilate(i))?
            }
            RealizationKind::HolsteinPrimakoff => {
                let f = sp.try_diagonal("f", |l| {
                    let arg = bracket_ratio(&q, l.get(i) + 1) * self.bracket_p(l, 0.0);
                    Ok(q.int_pow(Self::prefix(l, i)) * self.root(arg, || format!("a{i}- image {l}"))?)
                })?;
                &f * &self.osc(Oscillator::Annihilate(i))?
            }
            RealizationKind::HolsteinPrimakoffDeformed => {
                let f = sp.try_diagonal("f", |l| {
                    Ok(q.int_pow(Self::prefix(l, i)) * self.root(self.bracket_p(l, 0.0), || format!("[p-N] on {l}"))?)
                })?;
                &f * &self.deformed(Oscillator::Annihilate(i))?
            }
        };
        Ok(op.with_label(label))
    }

    fn realize_raising(&self, i: usize) -> Result<GradedOperator> {
        let q = self.q;
        let label = format!("rho(a{i}+)");
        let sp = &self.space;
        let op = match self.kind {
            RealizationKind::Dyson => {
                let f = sp.diagonal("f", |l| q.int_pow(-Self::prefix(l, i)));
                &f * &self.osc(Oscillator::Create(i))?
            }
            RealizationKind::HolsteinPrimakoff => {
                let f = sp.try_diagonal("f", |l| {
                    let arg = bracket_ratio(&q, l.get(i)) * self.bracket_p(l, 1.0);
                    Ok(q.int_pow(-Self::prefix(l, i)) * self.root(arg, || format!("a{i}+ image {l}"))?)
                })?;
                &f * &self.osc(Oscillator::Create(i))?
            }
            RealizationKind::HolsteinPrimakoffDeformed => {
                let f = sp.try_diagonal("f", |l| {
                    Ok(q.int_pow(-Self::prefix(l, i)) * self.root(self.bracket_p(l, 1.0), || format!("[p-N+1] on {l}"))?)
                })?;
                &f * &self.deformed(Oscillator::Create(i))?
            }
        };
        Ok(op.with_label(label))
    }

    /// `e_{ji}` for `i != j` in `[1; n+m]`.
    fn realize_transition(&self, j: usize, i: usize) -> Result<GradedOperator> {
        let q = self.q;
        let sig = self.space.signature();
        let th = |k: usize| i64::from(sig.theta(k));
        let (lo, hi) = if j < i { (j, i) } else { (i, j) };
        // q-power on the image state; the between-sum is empty when the
        // indices are adjacent
        let power = move |l: &OccupationVector| -> Complex64 {
            let between: i64 = (lo + 1..hi).map(|k| i64::from(l.get(k))).sum();
            if j < i {
                q.int_pow(2 * th(j) * (i64::from(l.get(j)) - 1) + between)
            } else {
                q.int_pow(-(2 * th(i) * i64::from(l.get(i)) + between))
            }
        };
        let sp = &self.space;
        let op = match self.kind {
            RealizationKind::Dyson => {
                let f = sp.diagonal("f", |l| power(l) * bracket_ratio(&q, l.get(i) + 1));
                &(&f * &self.osc(Oscillator::Create(j))?) * &self.osc(Oscillator::Annihilate(i))?
            }
            RealizationKind::HolsteinPrimakoff => {
                let f = sp.try_diagonal("f", |l| {
                    let arg = bracket_ratio(&q, l.get(j)) * bracket_ratio(&q, l.get(i) + 1);
                    Ok(power(l) * self.root(arg, || format!("e{j}{i} image {l}"))?)
                })?;
                &(&f * &self.osc(Oscillator::Create(j))?) * &self.osc(Oscillator::Annihilate(i))?
            }
            RealizationKind::HolsteinPrimakoffDeformed => {
                let f = sp.diagonal("f", power);
                &(&f * &self.deformed(Oscillator::Create(j))?) * &self.deformed(Oscillator::Annihilate(i))?
            }
        };
        Ok(op.with_label(format!("rho(e{j}{i})")))
    }
}

impl GeneratorFamily for RealizationMap {
    fn signature(&self) -> ModeSignature {
        self.space.signature()
    }

    fn q(&self) -> &QParameter {
        &self.q
    }

    fn basis(&self) -> &Arc<FockBasis> {
        self.space.basis()
    }

    fn is_exact(&self) -> bool {
        as_nonnegative_integer(self.p).map(|k| k as usize) == Some(self.space.cutoff())
    }

    fn cartan(&self, i: usize) -> Result<GradedOperator> {
        let sig = self.space.signature();
        sig.check_mode(i)?;
        Ok(self.space.diagonal(format!("rho(H{i})"), |l| {
            self.p - sig.sign(i) * f64::from(l.get(i)) - f64::from(l.degree())
        }))
    }

    fn raising(&self, i: usize) -> Result<GradedOperator> {
        self.space.signature().check_mode(i)?;
        self.realize_raising(i)
    }

    fn lowering(&self, i: usize) -> Result<GradedOperator> {
        self.space.signature().check_mode(i)?;
        self.realize_lowering(i)
    }

    fn cartan_weyl(&self, a: usize, b: usize) -> Result<GradedOperator> {
        let sig = self.space.signature();
        sig.check_index(a)?;
        sig.check_index(b)?;
        let label = format!("rho(e{a}{b})");
        match (a, b) {
            (0, 0) => Ok(self.space.diagonal(label, |l| self.p - f64::from(l.degree()))),
            (0, i) => Ok(self.lowering(i)?.with_label(label)),
            (i, 0) => Ok(self.raising(i)?.with_label(label)),
            (i, k) if i == k => Ok(self.space.osc_matrix(Oscillator::Number(i))?.with_label(label)),
            (j, i) => self.realize_transition(j, i),
        }
    }
}
