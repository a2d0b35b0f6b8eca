//! Power identities for the ladder generators and the vacuum-chain
//! identity used to derive the lowering action.

use num_complex::Complex64;

use crate::error::Result;
use crate::operator::{scomm, GradedOperator};
use crate::sparse::SparseMatrix;
use crate::report::RelationReport;

use super::{GeneratorFamily, Normalization, RepContext};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Checks the identities for `[[a_i^-, (a_j^+)^r]]`, `[[a_i^-, (a_i^+)^r]]`
/// and the two triple-power forms for every admissible index choice and
/// `1 <= r <= r_max`, plus the vacuum-chain identity for
/// `[[a_i^-, a_1^+]]` on vectors with `r_1 = 0`.
///
/// Powers of a fermionic raising operator vanish for `r >= 2`; those
/// cases are skipped.
pub fn check_lemma_identities(ctx: &RepContext, r_max: u32) -> Result<RelationReport> {
    let sig = ctx.signature();
    let q = *ctx.q();
    let exact = ctx.is_exact();
    let modes = sig.modes();
    let mut rep = RelationReport::new(q.tolerance());

    let up: Vec<GradedOperator> = (1..=modes).map(|i| ctx.raising(i)).collect::<Result<_>>()?;
    let down: Vec<GradedOperator> = (1..=modes).map(|i| ctx.lowering(i)).collect::<Result<_>>()?;
    let max_power = |j: usize| if sig.is_fermionic(j) { r_max.min(1) } else { r_max };

    for i in 1..=modes {
        for j in 1..=modes {
            let am = &down[i - 1];
            let ap = &up[j - 1];
            let bracket = scomm(am, ap, one());
            for r in 1..=max_power(j) {
                let power = ap.pow(r);
                let lower = ap.pow(r - 1);
                let lhs = scomm(am, &power, one());
                if i != j {
                    let coeff = if i < j { q.geometric_even_inv(r) } else { q.geometric_even(r) };
                    let rhs = (&lower * &bracket).scale(coeff);
                    rep.record_pair(format!("lower-power i={i} j={j} r={r}"), &lhs, &rhs, exact);
                } else {
                    let hi = ctx.cartan(i)?;
                    let rf = f64::from(r);
                    let diag = if q.is_classical() {
                        hi.map_diagonal("f(H)", |h| Complex64::new(rf, 0.0) * (h - rf + 1.0))
                    } else {
                        let (gi, g, qq) = (q.geometric_even_inv(r), q.geometric_even(r), q.q_minus_qinv());
                        hi.map_diagonal("f(H)", |h| (gi * q.pow(h) - g * q.pow(-h)) / qq)
                    };
                    let rhs = &lower * &diag;
                    rep.record_pair(format!("lower-own-power i={i} r={r}"), &lhs, &rhs, exact);
                }
            }

            if i > j {
                let lbar = ctx.l_power(i, -1)?;
                let own = &up[i - 1];
                for r in 1..=max_power(i) {
                    let x = q.int_pow(i64::from(r));
                    let lhs = scomm(&bracket, &own.pow(r), x);
                    let coeff = -sig.sign(j) * q.geometric_even_inv(r);
                    let rhs = (&(&lbar * ap) * &own.pow(r - 1)).scale(coeff);
                    rep.record_pair(format!("triple-own-power i={i} j={j} r={r}"), &lhs, &rhs, exact);
                }
                for k in j + 1..i {
                    let ak = &up[k - 1];
                    let inner = scomm(am, ak, one());
                    for r in 1..=max_power(k) {
                        let x = q.int_pow(i64::from(r));
                        let lhs = scomm(&bracket, &ak.pow(r), x);
                        let coeff = (q.int_pow(2 * i64::from(r)) - 1.0) * sig.sign(j);
                        let rhs = (&(ap * &ak.pow(r - 1)) * &inner).scale(coeff);
                        rep.record_pair(format!("triple-cross-power i={i} k={k} j={j} r={r}"), &lhs, &rhs, exact);
                    }
                }
            }
        }
    }

    let twin = ctx.with_normalization(Normalization::Unnormalized)?;
    check_vacuum_chain(&twin, &mut rep)?;
    Ok(rep)
}

/// `[[a_i^-, a_1^+]] |p;0,r_2,…)` written back in the monomial basis.
fn check_vacuum_chain(ctx: &RepContext, rep: &mut RelationReport) -> Result<()> {
    let sig = ctx.signature();
    let q = *ctx.q();
    let basis = ctx.basis().clone();
    let p = ctx.p();
    let dim = basis.len();
    let a1 = ctx.raising(1)?;
    let keep: Vec<Complex64> = basis
        .vectors()
        .iter()
        .map(|v| if v.get(1) == 0 { one() } else { Complex64::new(0.0, 0.0) })
        .collect();
    let project = GradedOperator::diagonal(&basis, "r1=0", &keep);

    for i in 2..=sig.modes() {
        let lhs = &scomm(&ctx.lowering(i)?, &a1, one()) * &project;
        let mut triplets = Vec::new();
        for (col, v) in basis.vectors().iter().enumerate() {
            if v.get(1) != 0 || v.get(i) == 0 {
                continue;
            }
            let Some(target) = v.shifted(i, -1).and_then(|t| t.shifted(1, 1)) else { continue };
            let Some(row) = basis.rank(&target) else { continue };
            let theta_sum: u32 = u32::from(sig.theta(1))
                + (2..i).map(|k| u32::from(sig.theta(k)) * v.get(k)).sum::<u32>();
            let sign = if theta_sum.is_multiple_of(2) { -1.0 } else { 1.0 };
            let expo: u32 = (2..i).map(|k| 2 * v.get(k)).sum::<u32>() + (i..=sig.modes()).map(|k| v.get(k)).sum::<u32>();
            let coeff = q.pow(Complex64::new(f64::from(expo), 0.0) - p) * q.bracket_real(f64::from(v.get(i))) * sign;
            triplets.push((row, col, coeff));
        }
        let rhs = GradedOperator::new(
            basis.clone(),
            SparseMatrix::from_triplets(dim, dim, triplets),
            lhs.parity(),
            "vacuum-chain rhs",
            0,
        );
        rep.record_pair(format!("vacuum-chain i={i}"), &lhs, &rhs, ctx.is_exact());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeSignature;
    use crate::qnum::QParameter;

    fn run(n: usize, m: usize, p: f64, q: QParameter, norm: Normalization) -> RelationReport {
        let ctx = RepContext::new(ModeSignature::new(n, m).unwrap(), Complex64::new(p, 0.0), q, None, norm).unwrap();
        check_lemma_identities(&ctx, 3).unwrap()
    }

    #[test]
    fn two_bosons_p3() {
        let rep = run(2, 0, 3.0, QParameter::generic(Complex64::new(0.7, 0.0)).unwrap(), Normalization::Unnormalized);
        assert!(rep.passed(), "{:?}", rep.failures());
        assert!(rep.residuals.contains_key("lower-power i=1 j=2 r=2"));
        assert!(rep.residuals.contains_key("vacuum-chain i=2"));
    }

    #[test]
    fn all_q_modes_mixed_signature() {
        for q in [
            QParameter::generic(Complex64::new(1.1, 0.3)).unwrap(),
            QParameter::phase(0.3).unwrap(),
            QParameter::classical(),
        ] {
            let rep = run(2, 1, 4.0, q, Normalization::Unnormalized);
            assert!(rep.passed(), "{q}: {:?}", rep.failures());
        }
    }

    #[test]
    fn generic_p_truncated_and_orthonormal() {
        let rep = run(2, 1, 2.6, QParameter::generic(Complex64::new(0.8, 0.1)).unwrap(), Normalization::Unnormalized);
        assert!(rep.passed(), "{:?}", rep.failures());
        let rep = run(1, 2, 3.0, QParameter::phase(0.4).unwrap(), Normalization::Orthonormal);
        assert!(rep.passed(), "{:?}", rep.failures());
    }
}
