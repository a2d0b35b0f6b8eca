//! Cross-checks between realizations, the Fock modules and the oscillator
//! algebra.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{scomm, GradedOperator};
use crate::qnum::QParameter;
use crate::rep::{as_nonnegative_integer, check_theorem1, GeneratorFamily, Normalization, RepContext};
use crate::report::{residual, RelationReport};

use super::realization::{RealizationKind, RealizationMap};
use super::space::{OscFockSpace, OscNormalization, Oscillator};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Every generator image: `H_i`, `a_i^±` and all `e_{ab}`.
fn all_generators<F: GeneratorFamily + ?Sized>(f: &F) -> Result<Vec<(String, GradedOperator)>> {
    let top = f.signature().modes();
    let mut out = Vec::new();
    for i in 1..=top {
        out.push((format!("H{i}"), f.cartan(i)?));
        out.push((format!("a{i}+"), f.raising(i)?));
        out.push((format!("a{i}-"), f.lowering(i)?));
    }
    for a in 0..=top {
        for b in 0..=top {
            out.push((format!("e{a}{b}"), f.cartan_weyl(a, b)?));
        }
    }
    Ok(out)
}

fn max_gap<A, B>(a: &A, b: &B) -> Result<f64>
where
    A: GeneratorFamily + ?Sized,
    B: GeneratorFamily + ?Sized,
{
    let left = all_generators(a)?;
    let right = all_generators(b)?;
    let mut worst = 0f64;
    for ((name, x), (_, y)) in left.iter().zip(&right) {
        if x.matrix().rows() != y.matrix().rows() {
            return Err(Error::ShapeMismatch(format!("{name}: {} vs {} rows", x.matrix().rows(), y.matrix().rows())));
        }
        let diff = x.matrix().axpby(one(), y.matrix(), -one());
        worst = worst.max(diff.max_abs());
    }
    Ok(worst)
}

/// Jacobson-generator relations with every generator replaced by its image.
pub fn check_homomorphism(map: &RealizationMap) -> Result<RelationReport> {
    check_theorem1(map)
}

/// Largest entrywise deviation between the realized matrices and the module
/// matrices under `|l> ≡ |p;l>`. Dyson pairs with the monomial basis, the
/// Holstein-Primakoff forms with the orthonormal one.
pub fn check_equivalence(map: &RealizationMap, ctx: &RepContext) -> Result<f64> {
    let want = match map.kind() {
        RealizationKind::Dyson => (OscNormalization::Monomial, Normalization::Unnormalized),
        _ => (OscNormalization::Normalized, Normalization::Orthonormal),
    };
    if (map.space().normalization(), ctx.normalization()) != want {
        return Err(Error::ShapeMismatch(format!(
            "{:?} realization on a {:?} space cannot be compared with a {:?} module",
            map.kind(),
            map.space().normalization(),
            ctx.normalization()
        )));
    }
    if map.signature() != ctx.signature() || map.space().cutoff() != ctx.cutoff() || map.p() != ctx.p() {
        return Err(Error::ShapeMismatch("signature, p or cutoff differ".into()));
    }
    max_gap(map, ctx)
}

/// Largest entrywise gap between two realizations on equal spaces.
pub fn compare_realizations(a: &RealizationMap, b: &RealizationMap) -> Result<f64> {
    if a.signature() != b.signature() || a.space().cutoff() != b.space().cutoff() {
        return Err(Error::ShapeMismatch("realizations live on different spaces".into()));
    }
    max_gap(a, b)
}

/// True iff no realized generator has an entry from a column with
/// `Σl > p` to a row with `Σl <= p`.
pub fn invariant_subspace_check(map: &RealizationMap) -> Result<bool> {
    let p = as_nonnegative_integer(map.p())
        .ok_or_else(|| Error::Domain(format!("invariance needs a nonnegative integer p, got {}", map.p())))?;
    let basis = map.basis();
    let high = |k: usize| basis.degree(k) > p;
    for (_, op) in all_generators(map)? {
        if op.matrix().iter().any(|(row, col, _)| high(col) && !high(row)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reducibility probe: true when the nonzero pattern of the Jacobson
/// generator images connects every basis state to every other one, i.e.
/// no coordinate subspace is invariant below the cutoff. This is a
/// structural statement about the truncation only.
pub fn structurally_connected<F: GeneratorFamily + ?Sized>(f: &F) -> Result<bool> {
    let dim = f.basis().len();
    let mut adj = vec![Vec::new(); dim];
    let mut rev = vec![Vec::new(); dim];
    for i in 1..=f.signature().modes() {
        for op in [f.raising(i)?, f.lowering(i)?] {
            for (row, col, _) in op.matrix().iter() {
                adj[col].push(row);
                rev[row].push(col);
            }
        }
    }
    let reach_all = |graph: &[Vec<usize>]| {
        let mut seen = vec![false; dim];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &graph[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    Ok(reach_all(&adj) && reach_all(&rev))
}

/// Realized `e_{ji}` against the operator solved from the realized bracket
/// `[[a_i^-, a_j^+]]` and `L`.
pub fn transition_consistency(map: &RealizationMap) -> Result<RelationReport> {
    let q = *map.q();
    let top = map.signature().modes();
    let sig = map.signature();
    let mut rep = RelationReport::new(q.tolerance());
    for j in 1..=top {
        for i in 1..=top {
            if i == j {
                continue;
            }
            let bracket = scomm(&map.lowering(i)?, &map.raising(j)?, one());
            let solved = if i < j {
                (&map.l_power(i, -1)? * &bracket).scale(Complex64::new(-sig.sign(i), 0.0))
            } else {
                (&bracket * &map.l_power(j, 1)?).scale(Complex64::new(-sig.sign(j), 0.0))
            };
            rep.record_pair(format!("e{j}{i}"), &map.cartan_weyl(j, i)?, &solved, map.is_exact());
        }
    }
    Ok(rep)
}

/// Largest adjointness defect `rho(a_i^+)^† - rho(a_i^-)`.
pub fn adjoint_deviation(map: &RealizationMap) -> Result<f64> {
    let mut worst = 0f64;
    for i in 1..=map.signature().modes() {
        worst = worst.max(residual(&map.raising(i)?.adjoint(), &map.lowering(i)?, true));
    }
    Ok(worst)
}

/// The canonical relations among `c_i^±` on the truncation interior.
pub fn check_oscillator_relations(space: &OscFockSpace) -> Result<RelationReport> {
    let top = space.signature().modes();
    let mut rep = RelationReport::new(crate::qnum::DEFAULT_TOLERANCE);
    let id = GradedOperator::identity(space.basis());
    let zero = GradedOperator::zero(space.basis());
    for i in 1..=top {
        let ci = space.osc_matrix(Oscillator::Annihilate(i))?;
        let ui = space.osc_matrix(Oscillator::Create(i))?;
        let ni = space.osc_matrix(Oscillator::Number(i))?;
        rep.record_pair(format!("N{i}=c+c-"), &(&ui * &ci), &ni, true);
        for j in 1..=top {
            let cj = space.osc_matrix(Oscillator::Annihilate(j))?;
            let uj = space.osc_matrix(Oscillator::Create(j))?;
            let delta = if i == j { &id } else { &zero };
            rep.record_pair(format!("[[c{i}-,c{j}+]]"), &scomm(&ci, &uj, one()), delta, false);
            rep.record_pair(format!("[[c{i}+,c{j}+]]"), &scomm(&ui, &uj, one()), &zero, false);
            rep.record_pair(format!("[[c{i}-,c{j}-]]"), &scomm(&ci, &cj, one()), &zero, false);
        }
    }
    Ok(rep)
}

/// Relations of the deformed oscillators on the truncation interior.
pub fn check_deformed_relations(space: &OscFockSpace, q: &QParameter) -> Result<RelationReport> {
    let sig = space.signature();
    let top = sig.modes();
    let mut rep = RelationReport::new(q.tolerance());
    let zero = GradedOperator::zero(space.basis());
    let load = |w| space.deformed_osc_matrix(w, q);
    let down: Vec<_> = (1..=top).map(|i| load(Oscillator::Annihilate(i))).collect::<Result<_>>()?;
    let up: Vec<_> = (1..=top).map(|i| load(Oscillator::Create(i))).collect::<Result<_>>()?;
    let num: Vec<_> = (1..=top).map(|i| space.osc_matrix(Oscillator::Number(i))).collect::<Result<_>>()?;
    for i in 1..=top {
        for j in 1..=top {
            let (x, rhs) = if i == j {
                let s = sig.sign(i) as i64;
                let rhs = space.diagonal("qbar^N", |l| q.int_pow(-s * i64::from(l.get(i))));
                (q.value(), rhs)
            } else {
                (one(), zero.clone())
            };
            let lhs = scomm(&down[i - 1], &up[j - 1], x);
            rep.record_pair(format!("[[c~{i}-,c~{j}+]]_q^d"), &lhs, &rhs, false);
            for (tag, c, sign) in [("+", &up[j - 1], 1.0), ("-", &down[j - 1], -1.0)] {
                let lhs = scomm(&num[i - 1], c, one());
                let rhs = if i == j { c.scale(Complex64::new(sign, 0.0)) } else { zero.clone() };
                rep.record_pair(format!("[N{i},c~{j}{tag}]"), &lhs, &rhs, false);
            }
            rep.record_pair(format!("[[c~{i}+,c~{j}+]]"), &scomm(&up[i - 1], &up[j - 1], one()), &zero, false);
            rep.record_pair(format!("[[c~{i}-,c~{j}-]]"), &scomm(&down[i - 1], &down[j - 1], one()), &zero, false);
            rep.record_pair(format!("[N{i},N{j}]"), &scomm(&num[i - 1], &num[j - 1], one()), &zero, false);
        }
    }
    Ok(rep)
}

/// `q^{N_i} = 1 - N_i + q N_i` for the fermionic modes, with `N_i` built as
/// `c_i^+ c_i^-`; returns the largest residual.
pub fn fermionic_exponential_residual(space: &OscFockSpace, q: &QParameter) -> Result<f64> {
    let sig = space.signature();
    let id = GradedOperator::identity(space.basis());
    let mut worst = 0f64;
    for i in sig.n() + 1..=sig.modes() {
        let n = &space.osc_matrix(Oscillator::Create(i))? * &space.osc_matrix(Oscillator::Annihilate(i))?;
        let power = space.diagonal("q^N", |l| q.int_pow(i64::from(l.get(i))));
        let linear = &(&id - &n) + &n.scale(q.value());
        worst = worst.max(residual(&power, &linear, true));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeSignature;
    use crate::rep::check_gl_relations;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn show(rep: &RelationReport) -> String {
        format!("{:?}", rep.failures().into_iter().take(6).collect::<Vec<_>>())
    }

    #[test]
    fn dyson_generic_p_is_a_homomorphism() {
        let q = QParameter::generic(c(0.8)).unwrap();
        let map = RealizationMap::dyson(ModeSignature::new(1, 1).unwrap(), c(2.5), q, Some(6)).unwrap();
        let rep = check_homomorphism(&map).unwrap();
        assert!(rep.passed(), "{}", show(&rep));
        assert_eq!(rep.residuals["aa (a2+)^2"], 0.0);
    }

    #[test]
    fn hp_integer_p_is_a_homomorphism() {
        let q = QParameter::phase(0.3).unwrap();
        let map = RealizationMap::holstein_primakoff(ModeSignature::new(2, 1).unwrap(), c(4.0), q, Some(4), false).unwrap();
        let rep = check_homomorphism(&map).unwrap();
        assert!(rep.passed(), "{}", show(&rep));
        let rep = check_gl_relations(&map).unwrap();
        assert!(rep.passed(), "{}", show(&rep));
    }

    #[test]
    fn dyson_matches_monomial_module() {
        let sig = ModeSignature::new(2, 1).unwrap();
        let q = QParameter::generic(Complex64::new(1.1, 0.3)).unwrap();
        let map = RealizationMap::dyson(sig, c(2.3), q, Some(5)).unwrap();
        let ctx = RepContext::new(sig, c(2.3), q, Some(5), Normalization::Unnormalized).unwrap();
        assert!(check_equivalence(&map, &ctx).unwrap() < 1e-12);
    }

    #[test]
    fn hp_matches_orthonormal_module_and_deformed_form() {
        let sig = ModeSignature::new(1, 2).unwrap();
        let q = QParameter::phase(0.5).unwrap();
        let hp = RealizationMap::holstein_primakoff(sig, c(3.0), q, None, false).unwrap();
        let hpd = RealizationMap::holstein_primakoff(sig, c(3.0), q, None, true).unwrap();
        let ctx = RepContext::fock_module(sig, 3, q, Normalization::Orthonormal).unwrap();
        assert!(check_equivalence(&hp, &ctx).unwrap() < 1e-12);
        assert!(compare_realizations(&hp, &hpd).unwrap() < 1e-12);
        assert!(adjoint_deviation(&hp).unwrap() < 1e-12);
    }

    #[test]
    fn mismatched_pairing_is_rejected() {
        let sig = ModeSignature::new(1, 1).unwrap();
        let q = QParameter::phase(0.5).unwrap();
        let hp = RealizationMap::holstein_primakoff(sig, c(2.0), q, None, false).unwrap();
        let ctx = RepContext::fock_module(sig, 2, q, Normalization::Unnormalized).unwrap();
        assert!(matches!(check_equivalence(&hp, &ctx), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn quotient_is_invariant() {
        let sig = ModeSignature::new(2, 1).unwrap();
        let q = QParameter::phase(0.3).unwrap();
        for p in [0u32, 1, 2] {
            let pc = c(f64::from(p));
            let d = RealizationMap::dyson(sig, pc, q, Some(p as usize + 3)).unwrap();
            let h = RealizationMap::holstein_primakoff(sig, pc, q, Some(p as usize + 3), false).unwrap();
            assert!(invariant_subspace_check(&d).unwrap());
            assert!(invariant_subspace_check(&h).unwrap());
            assert!(!structurally_connected(&d).unwrap());
        }
        let generic = RealizationMap::dyson(sig, c(2.5), q, Some(5)).unwrap();
        assert!(structurally_connected(&generic).unwrap());
        assert!(invariant_subspace_check(&generic).is_err());
    }

    #[test]
    fn p_zero_ladders_vanish_on_quotient() {
        let sig = ModeSignature::new(1, 1).unwrap();
        let map = RealizationMap::dyson(sig, c(0.0), QParameter::phase(0.3).unwrap(), Some(0)).unwrap();
        assert_eq!(map.basis().len(), 1);
        for i in 1..=2 {
            assert_eq!(map.raising(i).unwrap().matrix().nnz(), 0);
            assert_eq!(map.lowering(i).unwrap().matrix().nnz(), 0);
        }
    }

    #[test]
    fn realized_transitions_solve_the_mixed_bracket() {
        let sig = ModeSignature::new(2, 2).unwrap();
        let q = QParameter::generic(c(0.7)).unwrap();
        for map in [
            RealizationMap::dyson(sig, c(1.7), q, Some(5)).unwrap(),
            RealizationMap::holstein_primakoff(sig, c(3.0), QParameter::phase(0.4).unwrap(), None, false).unwrap(),
            RealizationMap::holstein_primakoff(sig, c(3.0), QParameter::phase(0.4).unwrap(), None, true).unwrap(),
        ] {
            let rep = transition_consistency(&map).unwrap();
            assert!(rep.passed(), "{:?}: {}", map.kind(), show(&rep));
        }
    }

    #[test]
    fn oscillator_and_deformed_relations() {
        let sig = ModeSignature::new(2, 2).unwrap();
        for norm in [OscNormalization::Monomial, OscNormalization::Normalized] {
            let rep = check_oscillator_relations(&OscFockSpace::new(sig, 4, norm)).unwrap();
            assert!(rep.passed(), "{}", show(&rep));
        }
        let sp = OscFockSpace::new(sig, 4, OscNormalization::Normalized);
        for q in [QParameter::phase(0.4).unwrap(), QParameter::generic(c(1.3)).unwrap(), QParameter::classical()] {
            let rep = check_deformed_relations(&sp, &q).unwrap();
            assert!(rep.passed(), "{q}: {}", show(&rep));
            assert!(fermionic_exponential_residual(&sp, &q).unwrap() < 1e-15);
        }
    }
}
