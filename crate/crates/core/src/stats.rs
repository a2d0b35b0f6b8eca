//! Thermal sums over `W_p` for the diagonal Hamiltonian `Σ ε_i e_ii`, and
//! the large-`p` limit of the rescaled ladder operators.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{ModeSignature, OccupationVector, Occupations};
use crate::operator::{scomm, GradedOperator};
use crate::qnum::QParameter;
use crate::rep::{GeneratorFamily, Normalization, RepContext};
use crate::report::residual;

/// Orbital energies and inverse temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    eps: Vec<f64>,
    beta: f64,
}

impl SpectrumConfig {
    pub fn new(sig: &ModeSignature, eps: Vec<f64>, beta: f64) -> Result<Self> {
        if eps.len() != sig.modes() {
            return Err(Error::ShapeMismatch(format!("{} energies for {} modes", eps.len(), sig.modes())));
        }
        if eps.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("orbital energies must be finite".into()));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!("inverse temperature must be positive, got {beta}")));
        }
        Ok(Self { eps, beta })
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `Σ ε_i r_i`.
    pub fn energy(&self, r: &OccupationVector) -> f64 {
        self.eps.iter().zip(r.as_slice()).map(|(e, &k)| e * f64::from(k)).sum()
    }

    /// Boltzmann factor `exp(-β Σ ε_i r_i)`.
    pub fn weight(&self, r: &OccupationVector) -> f64 {
        (-self.beta * self.energy(r)).exp()
    }
}

fn check(sig: &ModeSignature, cfg: &SpectrumConfig) -> Result<()> {
    if cfg.eps.len() != sig.modes() {
        return Err(Error::ShapeMismatch(format!("{} energies for {} modes", cfg.eps.len(), sig.modes())));
    }
    Ok(())
}

/// `Z = Σ_{Σr <= p} exp(-β Σ ε_i r_i)`, summed in the canonical basis order.
pub fn partition_function(sig: ModeSignature, p: u32, cfg: &SpectrumConfig) -> Result<f64> {
    check(&sig, cfg)?;
    Ok(Occupations::new(sig, p).map(|r| cfg.weight(&r)).sum())
}

/// Thermal averages `<r_i>`.
pub fn mean_occupations(sig: ModeSignature, p: u32, cfg: &SpectrumConfig) -> Result<Vec<f64>> {
    check(&sig, cfg)?;
    let mut z = 0.0;
    let mut acc = vec![0.0; sig.modes()];
    for r in Occupations::new(sig, p) {
        let w = cfg.weight(&r);
        z += w;
        for (slot, &k) in acc.iter_mut().zip(r.as_slice()) {
            *slot += f64::from(k) * w;
        }
    }
    Ok(acc.into_iter().map(|a| a / z).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub p: u32,
    pub relation: String,
    pub residual: f64,
}

/// For each `p` (paired with a `q`, classical by default) builds the
/// orthonormal `W_p` up to degree `window + 1`, rescales
/// `A_i^± = a_i^± / sqrt(p)` and reports the residual of
/// `[[A_i^-, A_i^+]] = 1` on states of degree `<= window`.
pub fn canonical_limit_check(
    sig: ModeSignature,
    p_list: &[u32],
    q_list: Option<&[QParameter]>,
    window: u32,
) -> Result<Vec<LimitRow>> {
    if let Some(qs) = q_list {
        if qs.len() != p_list.len() {
            return Err(Error::ShapeMismatch(format!("{} q values for {} p values", qs.len(), p_list.len())));
        }
    }
    let mut rows = Vec::new();
    for (k, &p) in p_list.iter().enumerate() {
        if p == 0 {
            return Err(Error::Domain("the rescaling needs p >= 1".into()));
        }
        let q = q_list.map_or_else(QParameter::classical, |qs| qs[k]);
        let cutoff = p.min(window + 1) as usize;
        let ctx = RepContext::new(sig, Complex64::new(f64::from(p), 0.0), q, Some(cutoff), Normalization::Orthonormal)?;
        let scale = Complex64::new(1.0 / f64::from(p).sqrt(), 0.0);
        let id = GradedOperator::identity(ctx.basis());
        for i in 1..=sig.modes() {
            let down = ctx.lowering(i)?.scale(scale);
            let up = ctx.raising(i)?.scale(scale);
            let lhs = scomm(&down, &up, Complex64::new(1.0, 0.0));
            let relation = if sig.is_fermionic(i) { format!("{{A{i}-,A{i}+}}") } else { format!("[A{i}-,A{i}+]") };
            rows.push(LimitRow { p, relation, residual: residual(&lhs, &id, ctx.is_exact()) });
        }
    }
    Ok(rows)
}

/// True when, for every relation, residuals do not grow along the rows
/// (beyond `slack`).
pub fn limit_is_monotone(rows: &[LimitRow], slack: f64) -> bool {
    let mut names: Vec<&str> = rows.iter().map(|r| r.relation.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    names.into_iter().all(|name| {
        let seq: Vec<f64> = rows.iter().filter(|r| r.relation == name).map(|r| r.residual).collect();
        seq.windows(2).all(|w| w[1] <= w[0] + slack)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, m: usize) -> ModeSignature {
        ModeSignature::new(n, m).unwrap()
    }

    #[test]
    fn small_partition_functions() {
        let (e, b) = (0.7, 1.3);
        let cfg = SpectrumConfig::new(&sig(1, 0), vec![e], b).unwrap();
        assert!((partition_function(sig(1, 0), 1, &cfg).unwrap() - (1.0 + (-b * e).exp())).abs() < 1e-15);

        let (e1, e2) = (0.4, -0.9);
        let cfg = SpectrumConfig::new(&sig(0, 2), vec![e1, e2], b).unwrap();
        let expect = 1.0 + (-b * e1).exp() + (-b * e2).exp() + (-b * (e1 + e2)).exp();
        assert!((partition_function(sig(0, 2), 2, &cfg).unwrap() - expect).abs() < 1e-14);

        let cfg = SpectrumConfig::new(&sig(1, 1), vec![e1, e2], b).unwrap();
        let expect = 1.0 + (-b * e1).exp() + (-b * e2).exp();
        assert!((partition_function(sig(1, 1), 1, &cfg).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn mean_occupation_examples() {
        let (e, b) = (0.5, 2.0);
        let cfg = SpectrumConfig::new(&sig(1, 0), vec![e], b).unwrap();
        let x = (-b * e).exp();
        assert!((mean_occupations(sig(1, 0), 1, &cfg).unwrap()[0] - x / (1.0 + x)).abs() < 1e-15);

        let cfg = SpectrumConfig::new(&sig(3, 1), vec![1.0; 4], 50.0).unwrap();
        let occ = mean_occupations(sig(3, 1), 4, &cfg).unwrap();
        assert!(occ.iter().all(|&o| o < 1e-20));

        let cfg = SpectrumConfig::new(&sig(3, 1), vec![0.2; 4], 0.5).unwrap();
        let occ = mean_occupations(sig(3, 1), 4, &cfg).unwrap();
        assert!((occ[0] - occ[1]).abs() < 1e-14 && (occ[1] - occ[2]).abs() < 1e-14);
        assert!(occ[3] <= 1.0 && occ.iter().sum::<f64>() <= 4.0);
    }

    #[test]
    fn config_validation() {
        assert!(SpectrumConfig::new(&sig(1, 1), vec![1.0], 1.0).is_err());
        assert!(SpectrumConfig::new(&sig(1, 1), vec![1.0, 2.0], 0.0).is_err());
        assert!(SpectrumConfig::new(&sig(1, 1), vec![f64::NAN, 2.0], 1.0).is_err());
    }

    #[test]
    fn limit_residual_follows_two_window_over_p() {
        let rows = canonical_limit_check(sig(1, 0), &[10, 100, 1000], None, 3).unwrap();
        for row in &rows {
            assert!((row.residual - 6.0 / f64::from(row.p)).abs() < 1e-12, "{row:?}");
        }
        assert!(limit_is_monotone(&rows, 0.0));
    }

    #[test]
    fn fermionic_vacuum_limit_is_exact() {
        let rows = canonical_limit_check(sig(0, 1), &[5, 50], None, 0).unwrap();
        assert!(rows.iter().all(|r| r.residual == 0.0));
    }

    #[test]
    fn phase_sequence_towards_one() {
        // pφ must vanish as well, otherwise [p]/p stays away from 1
        let qs: Vec<_> = [1e-2, 1e-4, 1e-6].iter().map(|&phi| QParameter::phase(phi).unwrap()).collect();
        let rows = canonical_limit_check(sig(1, 1), &[10, 100, 1000], Some(&qs), 3).unwrap();
        assert!(limit_is_monotone(&rows, 1e-12));
        assert!(rows.iter().filter(|r| r.p == 1000).all(|r| r.residual < 0.01));
    }
}
