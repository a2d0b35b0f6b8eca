//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use qsl_core::fock::Occupations;
use qsl_core::oscillator::{
    adjoint_deviation, check_deformed_relations, check_equivalence, check_homomorphism, compare_realizations,
    invariant_subspace_check, transition_consistency, OscFockSpace, OscNormalization, RealizationMap,
};
use qsl_core::rep::{
    check_gl_relations, check_lemma_identities, check_theorem1, gram_check, gram_matrix, norm_squared,
    unitarity_check, unitary_scan, zero_norm_vectors,
};
use qsl_core::stats::{canonical_limit_check, partition_function, SpectrumConfig};
use qsl_core::{
    dimension, enumerate_basis, Complex64, GeneratorFamily, ModeSignature, Normalization, OccupationVector,
    QParameter, RelationReport, RepContext,
};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sig(n: usize, m: usize) -> ModeSignature {
    ModeSignature::new(n, m).unwrap()
}

fn q_modes() -> Vec<QParameter> {
    vec![
        QParameter::generic(c(0.7)).unwrap(),
        QParameter::generic(Complex64::new(1.1, 0.3)).unwrap(),
        QParameter::phase(0.3).unwrap(),
        QParameter::classical(),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worst(rep: &RelationReport, what: &str) -> Result<f64, String> {
    let fails = rep.failures();
    ensure(fails.is_empty(), || format!("{what}: {} failing instances, e.g. {:?}", fails.len(), &fails[..fails.len().min(3)]))?;
    ensure(!rep.is_empty(), || format!("{what}: no relation instances evaluated"))?;
    Ok(rep.max_residual())
}

fn with_tol(q: QParameter) -> QParameter {
    q.with_tolerance(TOL).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut contexts, mut instances, mut max) = (0, 0, 0f64);
    for (n, m) in [(1, 1), (2, 1), (1, 2), (3, 0), (0, 2)] {
        for p in 1..=4 {
            for q in q_modes() {
                let ctx = RepContext::fock_module(sig(n, m), p, with_tol(q), Normalization::Unnormalized).unwrap();
                let rep = check_theorem1(&ctx).unwrap();
                max = max.max(worst(&rep, &format!("({n},{m}) p={p} q={q}"))?);
                // both right-hand sides of the triple relation are recorded
                ensure(rep.residuals.keys().any(|k| k.ends_with("rhs2")), || "missing rhs2 instances".into())?;
                contexts += 1;
                instances += rep.len();
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("runtime {secs:.1} s exceeds 60 s"))?;
    Ok(format!("{contexts} modules, {instances} relation instances, max residual {max:.1e}, {secs:.2} s"))
}

const GL_BRANCHES: [&str; 8] = [
    "prv theta(l>j>k>i)",
    "nrv theta(i>k>j>l)",
    "mix theta(j>k>i>l)",
    "mix delta_il theta(j>k)",
    "mix delta_jk theta(i>l)",
    "mix theta(k>j>l>i)",
    "mix delta_il theta(k>j)",
    "mix delta_jk theta(l>i)",
];

fn criterion_2() -> Outcome {
    let mut max = 0f64;
    let mut runs = 0;
    for (n, m, p) in [(2, 1, 3), (1, 2, 2)] {
        for q in q_modes() {
            let mut norms = vec![Normalization::Unnormalized];
            if !matches!(q.mode(), qsl_core::QMode::Generic(_)) {
                norms.push(Normalization::Orthonormal);
            }
            for norm in norms {
                let ctx = RepContext::fock_module(sig(n, m), p, with_tol(q), norm).unwrap();
                let rep = check_gl_relations(&ctx).unwrap();
                max = max.max(worst(&rep, &format!("({n},{m},{p}) q={q} {norm:?}"))?);
                for b in GL_BRANCHES {
                    ensure(rep.branches.contains(b), || format!("({n},{m},{p}) q={q}: branch {b} never exercised"))?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs, all 8 indicator branches exercised, max residual {max:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut max = 0f64;
    let mut n_inst = 0;
    for q in q_modes() {
        let ctx = RepContext::fock_module(sig(2, 1), 4, with_tol(q), Normalization::Unnormalized).unwrap();
        let rep = check_lemma_identities(&ctx, 3).unwrap();
        max = max.max(worst(&rep, &format!("q={q}"))?);
        for family in ["lower-power", "lower-own-power", "triple-own-power", "triple-cross-power", "vacuum-chain"] {
            ensure(rep.residuals.keys().any(|k| k.starts_with(family)), || format!("no {family} instances"))?;
        }
        n_inst += rep.len();
    }
    Ok(format!("{n_inst} identity instances over 4 q values, max residual {max:.1e}"))
}

fn criterion_4() -> Outcome {
    let q = with_tol(QParameter::phase(0.3).unwrap());
    let s = sig(2, 2);
    let p = 3;
    let ctx = RepContext::fock_module(s, p, q, Normalization::Unnormalized).unwrap();
    let dev = gram_check(&ctx).unwrap();
    ensure(dev <= TOL, || format!("Gram deviation {dev:e}"))?;
    let expect = (q.bracket_real(3.0) * q.bracket_real(2.0)).re;
    let gram = gram_matrix(&ctx).unwrap();
    let mut pairs = 0;
    for i in 1..=4 {
        for j in i + 1..=4 {
            // a_i^+ a_j^+ |0> is the basis vector e_i + e_j with coefficient 1
            let up_i = ctx.raising(i).unwrap();
            let up_j = ctx.raising(j).unwrap();
            let prod = &up_i * &up_j;
            let mut r = vec![0; 4];
            r[i - 1] = 1;
            r[j - 1] = 1;
            let v = OccupationVector::new(&s, r).unwrap();
            let row = ctx.basis().rank(&v).unwrap();
            ensure(prod.matrix().get(row, 0) == c(1.0), || format!("a{i}+a{j}+|0> coefficient"))?;
            let formula = norm_squared(&ctx, &v).unwrap();
            ensure(formula == expect, || format!("norm formula {formula} != [p][p-1] = {expect}"))?;
            ensure(gram[row][row] == c(expect), || format!("Gram value {} != {expect}", gram[row][row]))?;
            pairs += 1;
        }
    }
    Ok(format!("Gram deviation {dev:.1e}; [p][p-1] = {expect} reproduced bitwise for {pairs} pairs"))
}

fn flip_points(rows: &[(f64, bool)]) -> Vec<f64> {
    rows.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| 0.5 * (w[0].0 + w[1].0)).collect()
}

fn criterion_5() -> Outcome {
    let step = 1e-3;
    let grid: Vec<f64> = (1..).map(|k| -PI + k as f64 * step).take_while(|&x| x < PI).collect();
    let mut notes = Vec::new();
    for p in [2u32, 3, 5] {
        let rows = unitary_scan(sig(1, 1), p, &grid).unwrap();
        let flags: Vec<(f64, bool)> = rows.iter().map(|r| (r.phi, r.unitary)).collect();
        let flips = flip_points(&flags);
        let edge = PI / f64::from(p);
        // the zero angle is excluded from the grid, so the window is one run
        ensure(flips.len() == 2, || format!("p={p}: expected two flips, got {flips:?}"))?;
        for (f, target) in flips.iter().zip([-edge, edge]) {
            ensure((f - target).abs() <= step, || format!("p={p}: flip at {f}, expected {target}"))?;
        }
        for r in &rows {
            let inside = r.phi.abs() < edge;
            ensure(r.unitary == inside || (r.phi.abs() - edge).abs() < step, || format!("p={p} phi={} flag {}", r.phi, r.unitary))?;
        }
        // adjointness inside the window, on a coarser subgrid
        for r in rows.iter().filter(|r| r.unitary).step_by(50) {
            let ctx = RepContext::fock_module(sig(2, 1), p, with_tol(QParameter::phase(r.phi).unwrap()), Normalization::Orthonormal)
                .unwrap();
            let rep = unitarity_check(&ctx).unwrap();
            let dev = rep.max_adjoint_deviation.unwrap_or(f64::INFINITY);
            ensure(rep.unitary && dev <= TOL, || format!("p={p} phi={}: adjoint deviation {dev:e}", r.phi))?;
        }
        notes.push(format!("p={p} flips at ±{:.4}", flips[1]));
    }
    // root of unity q = e^{iπ/4} inside the p = 3 window
    let q = with_tol(QParameter::phase(PI / 4.0).unwrap());
    for (n, m) in [(1, 1), (2, 1), (1, 2)] {
        let ctx = RepContext::fock_module(sig(n, m), 3, q, Normalization::Orthonormal).unwrap();
        ensure(zero_norm_vectors(&ctx).unwrap().is_empty(), || format!("({n},{m}): zero-norm vector at root of unity"))?;
        ensure(gram_check(&ctx).unwrap() <= TOL, || "Gram check at root of unity".into())?;
        let rep = unitarity_check(&ctx).unwrap();
        ensure(rep.unitary, || format!("({n},{m}): not unitary at φ = π/4"))?;
        worst(&check_theorem1(&ctx).unwrap(), "root of unity relations")?;
        worst(&check_gl_relations(&ctx).unwrap(), "root of unity gl relations")?;
    }
    notes.push("root of unity π/4 at p=3 clean".into());
    Ok(notes.join("; "))
}

/// Independent count: walk the full box of occupations and keep those
/// with total at most `p`.
fn brute_count(n: usize, m: usize, p: u32) -> u64 {
    let modes = n + m;
    let mut count = 0;
    let mut r = vec![0u32; modes];
    loop {
        if r.iter().sum::<u32>() <= p {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == modes {
                return count;
            }
            let cap = if k < n { p } else { 1 };
            if r[k] < cap {
                r[k] += 1;
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut cases = 0;
    for n in 0..=3 {
        for m in 0..=3 {
            if n + m == 0 {
                continue;
            }
            for p in 0..=6u32 {
                let s = sig(n, m);
                let formula = dimension(&s, p);
                let listed = enumerate_basis(s, c(f64::from(p)), p as usize).len() as u64;
                let brute = brute_count(n, m, p);
                ensure(formula == listed && listed == brute, || {
                    format!("({n},{m},{p}): formula {formula}, enumeration {listed}, brute force {brute}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n,m,p) cases agree exactly"))
}

fn criterion_7() -> Outcome {
    let s = sig(2, 1);
    let p = c(2.3);
    let mut max_dev = 0f64;
    let mut max_hom = 0f64;
    for q in q_modes() {
        let q = with_tol(q);
        let map = RealizationMap::dyson(s, p, q, Some(6)).unwrap();
        let ctx = RepContext::new(s, p, q, Some(6), Normalization::Unnormalized).unwrap();
        let dev = check_equivalence(&map, &ctx).unwrap();
        ensure(dev <= TOL, || format!("q={q}: deviation {dev:e}"))?;
        max_dev = max_dev.max(dev);
        max_hom = max_hom.max(worst(&check_homomorphism(&map).unwrap(), &format!("homomorphism q={q}"))?);
        worst(&transition_consistency(&map).unwrap(), "realized e_ji")?;
    }
    Ok(format!("max deviation {max_dev:.1e}, max homomorphism residual {max_hom:.1e}"))
}

fn criterion_8() -> Outcome {
    let s = sig(1, 2);
    let q = with_tol(QParameter::phase(0.4).unwrap());
    let hp = RealizationMap::holstein_primakoff(s, c(3.0), q, Some(3), false).unwrap();
    let hpd = RealizationMap::holstein_primakoff(s, c(3.0), q, Some(3), true).unwrap();
    let ctx = RepContext::fock_module(s, 3, q, Normalization::Orthonormal).unwrap();
    let dev = check_equivalence(&hp, &ctx).unwrap();
    ensure(dev <= TOL, || format!("HP vs orthonormal module: {dev:e}"))?;
    let dev_d = check_equivalence(&hpd, &ctx).unwrap();
    ensure(dev_d <= TOL, || format!("deformed HP vs orthonormal module: {dev_d:e}"))?;
    let adj = adjoint_deviation(&hp).unwrap();
    ensure(adj <= TOL, || format!("adjoint deviation {adj:e}"))?;
    let gap = compare_realizations(&hp, &hpd).unwrap();
    ensure(gap <= 1e-12, || format!("HP vs deformed HP: {gap:e}"))?;
    let hom = worst(&check_homomorphism(&hp).unwrap(), "HP homomorphism")?;
    let mut def = 0f64;
    for cutoff in [3, 6] {
        let space = OscFockSpace::new(s, cutoff, OscNormalization::Normalized);
        def = def.max(worst(&check_deformed_relations(&space, &q).unwrap(), "deformed oscillators")?);
    }
    Ok(format!(
        "deviation {dev:.1e}, adjoint {adj:.1e}, HP/deformed gap {gap:.1e}, homomorphism {hom:.1e}, deformed relations {def:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for p in [1u32, 2] {
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            for q in [QParameter::phase(0.3).unwrap(), QParameter::generic(c(0.7)).unwrap()] {
                let cutoff = Some(p as usize + 3);
                let pc = c(f64::from(p));
                let dyson = RealizationMap::dyson(sig(n, m), pc, q, cutoff).unwrap();
                let hp = RealizationMap::holstein_primakoff(sig(n, m), pc, q, cutoff, false).unwrap();
                for (name, map) in [("Dyson", &dyson), ("HP", &hp)] {
                    ensure(invariant_subspace_check(map).unwrap(), || format!("{name} p={p} ({n},{m}) q={q}: leak into Σl <= p"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} realization/size combinations keep span{{Σl > p}} invariant"))
}

fn criterion_10() -> Outcome {
    let mut cases = 0;
    for (n, m, p) in [(1, 0, 1), (0, 2, 2), (1, 1, 1), (2, 1, 3), (2, 2, 4), (3, 1, 5)] {
        let s = sig(n, m);
        let eps: Vec<f64> = (0..n + m).map(|k| 0.3 + 0.45 * k as f64 - 0.2 * (k % 2) as f64).collect();
        let cfg = SpectrumConfig::new(&s, eps, 1.7).unwrap();
        let z = partition_function(s, p, &cfg).unwrap();
        let basis = enumerate_basis(s, c(f64::from(p)), p as usize);
        let walk: f64 = basis.vectors().iter().map(|r| cfg.weight(r)).sum();
        ensure(z == walk, || format!("({n},{m},{p}): closed {z} vs basis walk {walk}"))?;
        ensure(Occupations::new(s, p).count() == basis.len(), || "state counts differ".into())?;
        cases += 1;
    }
    // hard core: p = 1 admits the vacuum and single occupations only
    let (b, e1, e2) = (0.9, 0.4, 1.3);
    let cfg = SpectrumConfig::new(&sig(1, 1), vec![e1, e2], b).unwrap();
    let z = partition_function(sig(1, 1), 1, &cfg).unwrap();
    let three = 1.0 + (-b * e1).exp() + (-b * e2).exp();
    ensure((z - three).abs() <= 1e-15 * three, || format!("hard-core Z {z} vs {three}"))?;

    let mut rates = Vec::new();
    for (n, m) in [(1, 0), (1, 1), (2, 1)] {
        let rows = canonical_limit_check(sig(n, m), &[10, 100, 1000], None, 3).unwrap();
        let names: std::collections::BTreeSet<_> = rows.iter().map(|r| r.relation.clone()).collect();
        for name in names {
            let seq: Vec<f64> = rows.iter().filter(|r| r.relation == name).map(|r| r.residual).collect();
            if seq.iter().all(|&v| v == 0.0) {
                continue;
            }
            for w in seq.windows(2) {
                let ratio = w[0] / w[1];
                ensure((5.0..=20.0).contains(&ratio), || format!("({n},{m}) {name}: decade ratio {ratio}"))?;
                rates.push(ratio);
            }
        }
    }
    let lo = rates.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = rates.iter().copied().fold(0.0, f64::max);
    Ok(format!("{cases} partition sums bitwise equal; hard-core Z ok; limit decade ratios in [{lo:.2}, {hi:.2}]"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("ladder relations over sizes and q modes", criterion_1),
        ("gl Cartan-Weyl relations with all indicator branches", criterion_2),
        ("power identities and vacuum chain, r <= 3", criterion_3),
        ("norm formula against Gram recursion", criterion_4),
        ("unitarity boundary at |phi| = pi/p and root of unity", criterion_5),
        ("dimension formula against enumeration", criterion_6),
        ("Dyson realization equals monomial module", criterion_7),
        ("Holstein-Primakoff equivalence, unitarity, deformed form", criterion_8),
        ("invariant subspace above p", criterion_9),
        ("partition sums, hard core, canonical limit rate", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({detail})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
