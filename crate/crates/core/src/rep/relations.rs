//! Defining relations of the Jacobson generators and the full Cartan-Weyl
//! relation set, evaluated as matrix identities on any [`GeneratorFamily`].

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::Result;
use crate::operator::{scomm, GradedOperator};
use crate::report::{residual, RelationReport};

use super::{GeneratorFamily, Normalization, RepContext};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn one() -> Complex64 {
    c(1.0)
}

/// `θ(i_1 > i_2 > ... > i_r)`.
fn chain(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] > w[1])
}

/// `ε(j,k,i)`: 1 if `j>k>i`, -1 if `j<k<i`, else 0.
fn epsilon(j: usize, k: usize, i: usize) -> f64 {
    if j > k && k > i {
        1.0
    } else if j < k && k < i {
        -1.0
    } else {
        0.0
    }
}

fn pm(eta: i32) -> &'static str {
    if eta > 0 {
        "+"
    } else {
        "-"
    }
}

struct Jacobsons {
    h: Vec<GradedOperator>,
    up: Vec<GradedOperator>,
    down: Vec<GradedOperator>,
}

impl Jacobsons {
    fn load<F: GeneratorFamily + ?Sized>(f: &F) -> Result<Self> {
        let modes = f.signature().modes();
        Ok(Self {
            h: (1..=modes).map(|i| f.cartan(i)).collect::<Result<_>>()?,
            up: (1..=modes).map(|i| f.raising(i)).collect::<Result<_>>()?,
            down: (1..=modes).map(|i| f.lowering(i)).collect::<Result<_>>()?,
        })
    }

    fn a(&self, eta: i32, i: usize) -> &GradedOperator {
        if eta > 0 {
            &self.up[i - 1]
        } else {
            &self.down[i - 1]
        }
    }
}

/// Evaluates every instance of the Jacobson-generator relations: the Cartan
/// relations, `[[a_i^-, a_i^+]] = (L_i - L̄_i)/(q - q̄)`, the q-commutation
/// of like ladder operators, fermionic nilpotency, and both printed
/// right-hand sides of the triple relation.
pub fn check_theorem1<F: GeneratorFamily + ?Sized>(f: &F) -> Result<RelationReport> {
    let sig = f.signature();
    let q = *f.q();
    let exact = f.is_exact();
    let modes = sig.modes();
    let g = Jacobsons::load(f)?;
    let mut rep = RelationReport::new(q.tolerance());
    let qq = q.q_minus_qinv();
    let basis = f.basis();
    let zero = GradedOperator::zero(basis);

    for i in 1..=modes {
        for j in 1..=modes {
            let hh = scomm(&g.h[i - 1], &g.h[j - 1], one());
            rep.record_pair(format!("LL [H{i},H{j}]"), &hh, &zero, exact);
            for eta in [1, -1] {
                let lhs = scomm(&g.h[i - 1], g.a(eta, j), one());
                let coeff = -(eta as f64) * (1.0 + if i == j { sig.sign(i) } else { 0.0 });
                let rhs = g.a(eta, j).scale(c(coeff));
                rep.record_pair(format!("LL [H{i},a{j}{}]", pm(eta)), &lhs, &rhs, exact);
            }
        }
    }

    for i in 1..=modes {
        let lhs = scomm(&g.down[i - 1], &g.up[i - 1], one());
        let rhs = g.h[i - 1].map_diagonal("[H]", |h| q.bracket(h));
        rep.record_pair(format!("a-a+ [[a{i}-,a{i}+]]"), &lhs, &rhs, exact);
    }

    for i in 1..=modes {
        for j in i + 1..=modes {
            for eta in [1, -1] {
                let lhs = scomm(g.a(eta, i), g.a(eta, j), q.value());
                rep.record_pair(format!("aa [[a{i}{e},a{j}{e}]]_q", e = pm(eta)), &lhs, &zero, exact);
            }
        }
        if sig.is_fermionic(i) {
            for eta in [1, -1] {
                let sq = g.a(eta, i) * g.a(eta, i);
                rep.record_pair(format!("aa (a{i}{})^2", pm(eta)), &sq, &zero, exact);
            }
        }
    }

    for i in 1..=modes {
        for j in 1..=modes {
            if i == j {
                continue;
            }
            let xi: i32 = if j > i { 1 } else { -1 };
            for k in 1..=modes {
                for eta in [1, -1] {
                    let ai = g.a(eta, i);
                    let inner = scomm(ai, g.a(-eta, j), one());
                    let boost = 1 + if i == k { sig.sign(i) as i64 } else { 0 };
                    let x = q.int_pow(xi as i64 * boost);
                    let lhs = scomm(&inner, g.a(eta, k), x);

                    let mut rhs1 = GradedOperator::zero(basis);
                    if j == k {
                        let eta_pow = if eta < 0 && sig.is_fermionic(j) { -1.0 } else { 1.0 };
                        let l = f.l_power(k, -(xi * eta) as i64)?;
                        rhs1 = (&l * ai).scale(c(eta_pow));
                    }
                    let mut rhs2 = rhs1.clone();
                    let eps = epsilon(j, k, i);
                    if eps != 0.0 {
                        rep.hit_branch(format!("aaa eps(j,k,i)={eps}"));
                        let kj = scomm(g.a(eta, k), g.a(-eta, j), one());
                        let s1 = sig.sign(k) * eps;
                        rhs1 = &rhs1 + &(&kj * ai).scale(qq * s1);
                        let s2 = if sig.is_fermionic(k) && sig.is_fermionic(j) { -eps } else { eps };
                        rhs2 = &rhs2 + &(ai * &kj).scale(qq * q.int_pow(xi as i64) * s2);
                    }
                    let key = format!("aaa i={i} j={j} k={k} eta={}", pm(eta));
                    rep.record_pair(format!("{key} rhs1"), &lhs, &rhs1, exact);
                    rep.record_pair(format!("{key} rhs2"), &lhs, &rhs2, exact);
                }
            }
        }
    }
    Ok(rep)
}

struct CartanWeyl {
    e: HashMap<(usize, usize), GradedOperator>,
    /// Eigenvalues of `e_aa` and of `H_a` (`H_0 = 0`) per basis vector.
    e_diag: Vec<Vec<Complex64>>,
    h_diag: Vec<Vec<Complex64>>,
}

impl CartanWeyl {
    fn load<F: GeneratorFamily + ?Sized>(f: &F) -> Result<Self> {
        let top = f.signature().modes();
        let mut e = HashMap::new();
        for a in 0..=top {
            for b in 0..=top {
                e.insert((a, b), f.cartan_weyl(a, b)?);
            }
        }
        let e_diag = (0..=top).map(|a| e[&(a, a)].matrix().diagonal()).collect();
        let mut h_diag = vec![vec![Complex64::new(0.0, 0.0); f.basis().len()]];
        for i in 1..=top {
            h_diag.push(f.cartan(i)?.matrix().diagonal());
        }
        Ok(Self { e, e_diag, h_diag })
    }

    fn get(&self, a: usize, b: usize) -> &GradedOperator {
        &self.e[&(a, b)]
    }
}

fn diag_from(f: &(impl GeneratorFamily + ?Sized), label: &str, values: Vec<Complex64>) -> GradedOperator {
    GradedOperator::diagonal(f.basis(), label, &values)
}

/// Evaluates the complete relation set of the Cartan-Weyl elements of the
/// gl-extended module (indices `[0; n+m]`), together with the sl forms
/// written with `H_i` and `L_i`.
pub fn check_gl_relations<F: GeneratorFamily + ?Sized>(f: &F) -> Result<RelationReport> {
    let sig = f.signature();
    let q = *f.q();
    let exact = f.is_exact();
    let top = sig.modes();
    let cw = CartanWeyl::load(f)?;
    let basis = f.basis();
    let zero = GradedOperator::zero(basis);
    let qq = q.q_minus_qinv();
    let s = |a: usize| sig.sign(a);
    let th = |a: usize| sig.theta(a) as u32;
    let sgn = |bits: u32| if bits.is_multiple_of(2) { 1.0 } else { -1.0 };
    let delta = |a: usize, b: usize| a == b;
    let mut rep = RelationReport::new(q.tolerance());
    let dim = basis.len();

    // q^{α e_aa + β e_bb} as a diagonal
    let qdiag = |terms: &[(f64, usize)]| -> GradedOperator {
        let vals = (0..dim)
            .map(|k| q.pow(terms.iter().map(|&(w, a)| cw.e_diag[a][k] * w).sum()))
            .collect();
        diag_from(f, "q^e", vals)
    };
    let ldiag = |terms: &[(f64, usize)]| -> GradedOperator {
        let vals = (0..dim)
            .map(|k| q.pow(terms.iter().map(|&(w, a)| cw.h_diag[a][k] * w).sum()))
            .collect();
        diag_from(f, "L", vals)
    };

    for i in 0..=top {
        for j in 0..=top {
            let lhs = scomm(cw.get(i, i), cw.get(j, j), one());
            rep.record_pair(format!("eii-ejj [e{i}{i},e{j}{j}]"), &lhs, &zero, exact);
            for k in 0..=top {
                if j == k {
                    continue;
                }
                let lhs = scomm(cw.get(i, i), cw.get(j, k), one());
                let coeff = f64::from(u8::from(delta(i, j))) - f64::from(u8::from(delta(i, k)));
                let rhs = cw.get(j, k).scale(c(coeff));
                rep.record_pair(format!("eii-ejk [e{i}{i},e{j}{k}]"), &lhs, &rhs, exact);
            }
        }
    }

    for i in 0..=top {
        for j in 0..=top {
            if i != j && (th(i) + th(j)) % 2 == 1 {
                let sq = cw.get(i, j) * cw.get(i, j);
                rep.record_pair(format!("eij^2 e{i}{j}"), &sq, &zero, exact);
            }
        }
    }

    let positive: Vec<(usize, usize)> =
        (0..=top).flat_map(|i| (i + 1..=top).map(move |j| (i, j))).collect();
    let negative: Vec<(usize, usize)> = positive.iter().map(|&(i, j)| (j, i)).collect();

    // two positive root vectors e_ij < e_kl
    for (x, &(i, j)) in positive.iter().enumerate() {
        for &(k, l) in &positive[x + 1..] {
            let expo = s(j) * f64::from(u8::from(delta(j, l))) - s(j) * f64::from(u8::from(delta(j, k)))
                + s(i) * f64::from(u8::from(delta(i, k)));
            let lhs = scomm(cw.get(i, j), cw.get(k, l), q.int_pow(expo as i64));
            let mut rhs = if delta(j, k) { cw.get(i, l).clone() } else { zero.clone() };
            if chain(&[l, j, k, i]) {
                rep.hit_branch("prv theta(l>j>k>i)");
                rhs = &rhs + &(cw.get(k, j) * cw.get(i, l)).scale(qq * sgn(th(k)));
            }
            rep.record_pair(format!("prv [[e{i}{j},e{k}{l}]]"), &lhs, &rhs, exact);
        }
    }

    // two negative root vectors e_ij > e_kl
    let mut neg_sorted = negative.clone();
    neg_sorted.sort();
    for (x, &(k, l)) in neg_sorted.iter().enumerate() {
        for &(i, j) in &neg_sorted[x + 1..] {
            let expo = -s(j) * f64::from(u8::from(delta(j, l))) + s(j) * f64::from(u8::from(delta(j, k)))
                - s(i) * f64::from(u8::from(delta(i, k)));
            let lhs = scomm(cw.get(i, j), cw.get(k, l), q.int_pow(expo as i64));
            let mut rhs = if delta(j, k) { cw.get(i, l).clone() } else { zero.clone() };
            if chain(&[i, k, j, l]) {
                rep.hit_branch("nrv theta(i>k>j>l)");
                rhs = &rhs - &(cw.get(k, j) * cw.get(i, l)).scale(qq * sgn(th(k)));
            }
            rep.record_pair(format!("nrv [[e{i}{j},e{k}{l}]]"), &lhs, &rhs, exact);
        }
    }

    // positive e_ij against negative e_kl, in the gl form (q^{e}) and the
    // sl form (L_i)
    for &(i, j) in &positive {
        for &(k, l) in &negative {
            let lhs = scomm(cw.get(i, j), cw.get(k, l), one());

            let mut left = zero.clone();
            if chain(&[j, k, i, l]) {
                rep.hit_branch("mix theta(j>k>i>l)");
                left = &left + &(cw.get(k, j) * cw.get(i, l)).scale(qq * sgn(th(k)));
            }
            if delta(i, l) && chain(&[j, k]) {
                rep.hit_branch("mix delta_il theta(j>k)");
                left = &left - &cw.get(k, j).scale(c(sgn(th(k) + th(l))));
            }
            if delta(j, k) && chain(&[i, l]) {
                rep.hit_branch("mix delta_jk theta(i>l)");
                left = &left + cw.get(i, l);
            }
            let mut right = zero.clone();
            if chain(&[k, j, l, i]) {
                rep.hit_branch("mix theta(k>j>l>i)");
                right = &right - &(cw.get(i, l) * cw.get(k, j)).scale(qq * sgn(th(j)));
            }
            if delta(i, l) && chain(&[k, j]) {
                rep.hit_branch("mix delta_il theta(k>j)");
                right = &right - &cw.get(k, j).scale(c(sgn(th(i) + th(j))));
            }
            if delta(j, k) && chain(&[l, i]) {
                rep.hit_branch("mix delta_jk theta(l>i)");
                right = &right + cw.get(i, l);
            }

            let cartan_gl = if delta(i, l) && delta(j, k) {
                let sij = sgn(th(i) + th(j));
                let vals = (0..dim).map(|t| q.bracket(cw.e_diag[i][t] - cw.e_diag[j][t] * sij)).collect();
                diag_from(f, "[e]", vals)
            } else {
                zero.clone()
            };
            let gl_rhs = &(&cartan_gl + &(&left * &qdiag(&[(s(k), k), (-s(i), i)])))
                + &(&qdiag(&[(s(l), l), (-s(j), j)]) * &right);
            rep.record_pair(format!("prv-nrv [[e{i}{j},e{k}{l}]]"), &lhs, &gl_rhs, exact);

            let cartan_sl = if delta(i, l) && delta(j, k) {
                let vals = (0..dim)
                    .map(|t| q.bracket((cw.h_diag[j][t] - cw.h_diag[i][t]) * s(i)))
                    .collect();
                diag_from(f, "[H]", vals)
            } else {
                zero.clone()
            };
            let sl_rhs = &(&cartan_sl + &(&left * &ldiag(&[(1.0, i), (-1.0, k)])))
                + &(&ldiag(&[(1.0, j), (-1.0, l)]) * &right);
            rep.record_pair(format!("final-rel [[e{i}{j},e{k}{l}]]"), &lhs, &sl_rhs, exact);
        }
    }

    // sl Cartan relations
    for i in 1..=top {
        let hi = f.cartan(i)?;
        for j in 1..=top {
            let lhs = scomm(&hi, &f.cartan(j)?, one());
            rep.record_pair(format!("Hi-Hj [H{i},H{j}]"), &lhs, &zero, exact);
        }
        for j in 0..=top {
            for k in 0..=top {
                if j == k {
                    continue;
                }
                let lhs = scomm(&hi, cw.get(j, k), one());
                let d = |a: usize, b: usize| f64::from(u8::from(a == b));
                let coeff = d(0, j) - d(0, k) - s(i) * (d(i, j) - d(i, k));
                rep.record_pair(format!("Hi-ejk [H{i},e{j}{k}]"), &lhs, &cw.get(j, k).scale(c(coeff)), exact);
            }
        }
    }
    Ok(rep)
}

/// Largest entrywise gap between `e_{ji}` from the closed orthonormal
/// formulas and the bracket-derived matrix conjugated into the orthonormal
/// basis.
pub fn transition_consistency(ctx: &RepContext) -> Result<f64> {
    let ortho = ctx.with_normalization(Normalization::Orthonormal)?;
    let unnorm = ctx.with_normalization(Normalization::Unnormalized)?;
    let modes = ctx.signature().modes();
    let mut worst = 0f64;
    for j in 1..=modes {
        for i in 1..=modes {
            if i == j {
                continue;
            }
            let closed = ortho.cw_matrix(j, i)?;
            let derived = ortho.to_orthonormal(&unnorm.transition_from_bracket(j, i)?)?;
            worst = worst.max(residual(&closed, &derived, true));
        }
    }
    Ok(worst)
}
