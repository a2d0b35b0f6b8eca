//! Norms, the Hermitian form, and unitarity of the finite Fock modules.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{ModeSignature, OccupationVector};
use crate::qnum::{QMode, QParameter};
use crate::report::residual;

use super::{Jacobson, Normalization, RepContext};

/// `(|p;r>, |p;r>) = [p]!/[p-R]! · Π_{i<=n} [r_i]!`.
pub fn norm_squared(ctx: &RepContext, r: &OccupationVector) -> Result<f64> {
    let p = ctx
        .integer_p()
        .ok_or_else(|| Error::Domain(format!("norm formula needs a nonnegative integer p, got {}", ctx.p())))?;
    if r.as_slice().len() != ctx.signature().modes() {
        return Err(Error::ShapeMismatch(format!("{r} does not fit {}", ctx.signature())));
    }
    if r.degree() > p {
        return Err(Error::Domain(format!("{r} has degree above p = {p}")));
    }
    let q = ctx.q();
    let mut value = Complex64::new(1.0, 0.0);
    for k in 0..r.degree() {
        value *= q.bracket_real(f64::from(p - k));
    }
    for i in 1..=ctx.signature().n() {
        value *= q.factorial(r.get(i));
    }
    if value.im.abs() > q.tolerance() * value.norm().max(1.0) {
        return Err(Error::Domain(format!("norm of {r} is not real: {value}")));
    }
    Ok(value.re)
}

fn require_real_form(q: &QParameter) -> Result<()> {
    match q.mode() {
        QMode::Phase(_) | QMode::Classical => Ok(()),
        QMode::Generic(_) => Err(Error::Domain(format!(
            "the Hermitian form only exists for q a phase, got {q}"
        ))),
    }
}

/// Gram matrix of the monomial basis obtained purely from `(|0>,|0>) = 1`,
/// `(a_k^+ v, w) = (v, a_k^- w)` and the lowering action: for the first
/// occupied mode `k` of `r`, `|r> = a_k^+ |r - e_k>`.
pub fn gram_matrix(ctx: &RepContext) -> Result<Vec<Vec<Complex64>>> {
    require_real_form(ctx.q())?;
    if !ctx.is_exact() {
        return Err(Error::Domain("the Gram recursion needs the finite module (integer p, cutoff p)".into()));
    }
    let twin = ctx.with_normalization(Normalization::Unnormalized)?;
    let basis = twin.basis().clone();
    let dim = basis.len();
    let modes = twin.signature().modes();
    let lowering = (1..=modes)
        .map(|k| twin.jg_matrix(Jacobson::Lowering(k)).map(|op| op.matrix().to_dense()))
        .collect::<Result<Vec<_>>>()?;

    let mut gram = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    gram[0][0] = Complex64::new(1.0, 0.0);
    for row in 1..dim {
        let r = &basis.vectors()[row];
        let k = (1..=modes).find(|&k| r.get(k) > 0).expect("non-vacuum vector");
        let parent = basis.rank(&r.shifted(k, -1).expect("occupied")).expect("parent in basis");
        let low = &lowering[k - 1];
        for col in 0..dim {
            // degrees must match, the lowering image of col has degree deg(col) - 1
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, line) in low.iter().enumerate() {
                let a = line[col];
                if a != Complex64::new(0.0, 0.0) {
                    acc += a * gram[parent][t];
                }
            }
            gram[row][col] = acc;
        }
    }
    Ok(gram)
}

/// Largest deviation of the recursive Gram matrix from `diag(norm_squared)`,
/// off-diagonal entries included, scaled by `max(1, |norm|)` per row.
pub fn gram_check(ctx: &RepContext) -> Result<f64> {
    let gram = gram_matrix(ctx)?;
    let mut worst = 0f64;
    for (row, r) in ctx.basis().vectors().iter().enumerate() {
        let expected = norm_squared(ctx, r)?;
        let scale = expected.abs().max(1.0);
        for (col, g) in gram[row].iter().enumerate() {
            let target = if row == col { expected } else { 0.0 };
            worst = worst.max((g - target).norm() / scale);
        }
    }
    Ok(worst)
}

/// Basis vectors whose squared norm vanishes to tolerance.
pub fn zero_norm_vectors(ctx: &RepContext) -> Result<Vec<OccupationVector>> {
    let tol = ctx.q().tolerance();
    let mut out = Vec::new();
    for r in ctx.basis().vectors() {
        if norm_squared(ctx, r)?.abs() <= tol {
            out.push(r.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitarityReport {
    pub unitary: bool,
    /// `None` when the orthonormal basis could not be built.
    pub max_adjoint_deviation: Option<f64>,
    /// First `k ∈ [1; p]` with `[k]` not strictly positive.
    pub offending_bracket: Option<u32>,
}

/// Positivity of `[1], …, [p]`, adjointness of `a_i^±` in the orthonormal
/// basis, and reality of the diagonal `H_i`.
pub fn unitarity_check(ctx: &RepContext) -> Result<UnitarityReport> {
    let p = ctx
        .integer_p()
        .ok_or_else(|| Error::Domain(format!("unitarity needs a nonnegative integer p, got {}", ctx.p())))?;
    let q = ctx.q();
    let tol = q.tolerance();
    for k in 1..=p {
        let b = q.bracket_real(f64::from(k));
        if b.im.abs() > tol || b.re <= tol {
            return Ok(UnitarityReport { unitary: false, max_adjoint_deviation: None, offending_bracket: Some(k) });
        }
    }
    let ortho = RepContext::fock_module(ctx.signature(), p, *q, Normalization::Orthonormal)?;
    let mut worst = 0f64;
    let mut cartan_real = true;
    for i in 1..=ctx.signature().modes() {
        let up = ortho.jg_matrix(Jacobson::Raising(i))?;
        let down = ortho.jg_matrix(Jacobson::Lowering(i))?;
        worst = worst.max(residual(&up.adjoint(), &down, true));
        worst = worst.max(residual(&down.adjoint(), &up, true));
        let h = ortho.jg_matrix(Jacobson::Cartan(i))?;
        cartan_real &= h.matrix().is_diagonal() && h.matrix().iter().all(|(_, _, v)| v.im.abs() <= tol);
    }
    Ok(UnitarityReport {
        unitary: worst <= tol && cartan_real,
        max_adjoint_deviation: Some(worst),
        offending_bracket: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub phi: f64,
    pub min_bracket: f64,
    pub unitary: bool,
}

/// Runs [`unitarity_check`] for `q = e^{iφ}` over a grid. Grid points that
/// are not valid phases (`φ = 0` or `|φ| >= π`) are skipped.
pub fn unitary_scan(sig: ModeSignature, p: u32, grid: &[f64]) -> Result<Vec<ScanRow>> {
    if p == 0 {
        return Err(Error::Domain("unitary scan needs p >= 1".into()));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &phi in grid {
        let Ok(q) = QParameter::phase(phi) else { continue };
        let min_bracket = (1..=p).map(|k| q.bracket_real(f64::from(k)).re).fold(f64::INFINITY, f64::min);
        let ctx = RepContext::fock_module(sig, p, q, Normalization::Orthonormal)?;
        let unitary = unitarity_check(&ctx)?.unitary;
        rows.push(ScanRow { phi, min_bracket, unitary });
    }
    Ok(rows)
}
