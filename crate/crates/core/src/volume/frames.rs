//! Character eigenspaces of K_inf^n and G-stable A-lattices stored per character.

use crate::algebra::{linalg, Field, FiniteField, FqElem, Laurent, LaurentRing, MatOps, Matrix, Poly, Ring, EXACT};
use crate::error::{Error, Result};
use crate::fields::ExtensionData;
use crate::grpring::{GrLaurent, GroupAlgebra};

/// e_chi K_inf^n for one F_q-valued character chi.
///
/// Coordinates of K_inf^n are indexed k * d + i (copy k, basis element w_i). Since G acts on
/// the w_i by constant matrices, e_chi is an F_q-projector on these coordinates.
#[derive(Clone, Debug)]
pub struct CharFrame {
    pub class: usize,
    pub proj: Matrix<FqElem>,
    /// Columns b_1..b_m spanning the image of `proj`.
    pub basis: Matrix<FqElem>,
    rows: Vec<usize>,
    rows_inv: Matrix<FqElem>,
}

impl CharFrame {
    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    /// Coordinates in b_1..b_m of a vector lying in e_chi K_inf^n.
    pub fn coords(&self, lr: &LaurentRing<FiniteField>, v: &[Laurent<FqElem>]) -> Vec<Laurent<FqElem>> {
        (0..self.dim())
            .map(|a| {
                let mut acc = lr.zero();
                for (b, &r) in self.rows.iter().enumerate() {
                    let c = self.rows_inv.get(a, b);
                    if c.0 != 0 {
                        acc = lr.add(&acc, &lr.scale(&v[r], c));
                    }
                }
                acc
            })
            .collect()
    }

    /// Applies the projector to a vector of F_q-coordinates.
    pub fn project(&self, fq: &FiniteField, v: &[FqElem]) -> Vec<FqElem> {
        MatOps::new(fq.clone()).mul_vec(&self.proj, v)
    }
}

/// One frame per character class. Needs tame G, F_q-valued characters and constant G-matrices.
pub fn char_frames(alg: &GroupAlgebra, x: &ExtensionData, n: usize) -> Result<Vec<CharFrame>> {
    if !alg.is_tame() || !alg.characters_rational() || alg.ext.order() != alg.fq.order() {
        return Err(Error::Unsupported(
            "lattice indices are computed per character: need p not dividing |G| and F_q-valued characters".into(),
        ));
    }
    if !x.g_action_constant() {
        return Err(Error::Unsupported("G must act on the w_i by constant matrices".into()));
    }
    if alg.gr.size() != x.group.size() {
        return Err(Error::Invalid("group algebra and extension have different groups".into()));
    }
    let fq = &alg.fq;
    let d = x.d;
    let dim = n * d;
    let mut frames = Vec::with_capacity(alg.classes.len());
    let mut total = 0;
    for c in 0..alg.classes.len() {
        let e = alg.idempotent(c);
        let mut proj = Matrix::filled(dim, dim, FqElem(0));
        for (g, coef) in e.iter().enumerate() {
            if coef.0 == 0 {
                continue;
            }
            let m = &x.gaction[g];
            for k in 0..n {
                for i in 0..d {
                    for i2 in 0..d {
                        let entry = m.get(i2, i).coeffs.first().copied().unwrap_or(FqElem(0));
                        let (r, s) = (k * d + i2, k * d + i);
                        let v = fq.add(proj.get(r, s), &fq.mul(coef, &entry));
                        proj.set(r, s, v);
                    }
                }
            }
        }
        let cols = linalg::independent_columns(fq, &proj);
        let all: Vec<usize> = (0..dim).collect();
        let basis = proj.submatrix(&all, &cols);
        let rows = linalg::independent_columns(fq, &basis.transpose());
        let square = basis.submatrix(&rows, &(0..cols.len()).collect::<Vec<_>>());
        let rows_inv = linalg::inverse(fq, &square).ok_or_else(|| Error::Invalid("degenerate frame".into()))?;
        total += cols.len();
        frames.push(CharFrame { class: c, proj, basis, rows, rows_inv });
    }
    if total != dim {
        return Err(Error::Invalid(format!("character frames span {total} of {dim} coordinates")));
    }
    Ok(frames)
}

/// A G-stable A-lattice in K_inf^n, given per character by an A-basis in frame coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GLattice {
    pub comps: Vec<Matrix<Laurent<FqElem>>>,
}

impl GLattice {
    /// Lie(O_K) = O_K^n: each frame basis is already an A-basis of its part.
    pub fn standard(fq: &FiniteField, frames: &[CharFrame]) -> Self {
        let ops = MatOps::new(LaurentRing::new(fq.clone(), EXACT));
        GLattice { comps: frames.iter().map(|f| ops.identity(f.dim())).collect() }
    }

    /// c * L for a scalar c of k_inf.
    pub fn scaled(&self, fq: &FiniteField, c: &Laurent<FqElem>) -> Self {
        let lr = LaurentRing::new(fq.clone(), EXACT);
        GLattice { comps: self.comps.iter().map(|m| m.map(|x| lr.mul(x, c))).collect() }
    }
}

/// Divides by the leading coefficient, so the expansion starts 1 * u^val.
pub fn monic_scalar(lr: &LaurentRing<FiniteField>, x: &Laurent<FqElem>) -> Result<Laurent<FqElem>> {
    let lead = x
        .leading()
        .ok_or_else(|| Error::InsufficientPrecision("value vanishes at working precision".into()))?;
    Ok(lr.scale(x, &lr.base.inv(lead)))
}

/// Assembles F_q-valued component values into k_inf[G].
pub fn combine(alg: &GroupAlgebra, comps: &[Laurent<FqElem>]) -> Result<GrLaurent> {
    let local: Vec<GrLaurent> = comps
        .iter()
        .map(|c| Laurent { val: c.val, coeffs: c.coeffs.iter().map(|a| alg.local_scalar(*a)).collect(), prec: c.prec })
        .collect();
    alg.psi_inv_laurent(&local)
}

/// Component values of an element of k_inf[G] under F_q-valued characters.
pub fn components(alg: &GroupAlgebra, x: &GrLaurent) -> Vec<Laurent<FqElem>> {
    alg.psi_laurent(x)
        .into_iter()
        .map(|c| Laurent { val: c.val, coeffs: c.coeffs.iter().map(|a| a[0]).collect(), prec: c.prec })
        .collect()
}

/// Truncates to relative precision n + 1 and fails if that much is not known.
pub fn to_relative(lr: &LaurentRing<FiniteField>, x: &Laurent<FqElem>, n: usize) -> Result<Laurent<FqElem>> {
    let v = x.valuation().ok_or_else(|| Error::InsufficientPrecision("value vanishes at working precision".into()))?;
    let want = v + n as i64 + 1;
    if x.prec < want {
        return Err(Error::InsufficientPrecision(format!(
            "value known to relative precision {} but {} requested",
            x.prec - v,
            n + 1
        )));
    }
    Ok(lr.truncate(x, want))
}

/// [L1 : L2]_G = det(X)^+ with L2 = L1 X, per character, at relative precision n + 1.
pub fn index_components(fq: &FiniteField, l1: &GLattice, l2: &GLattice, n: usize) -> Result<Vec<Laurent<FqElem>>> {
    if l1.comps.len() != l2.comps.len() {
        return Err(Error::Invalid("lattices have different character decompositions".into()));
    }
    let lr = LaurentRing::new(fq.clone(), EXACT);
    let ops = MatOps::new(lr.clone());
    let mut out = Vec::with_capacity(l1.comps.len());
    for (b1, b2) in l1.comps.iter().zip(&l2.comps) {
        if b1.rows != b2.rows || !b1.is_square() || !b2.is_square() {
            return Err(Error::Invalid("lattices of different or non-full rank".into()));
        }
        let d1 = monic_scalar(&lr, &ops.det(b1)?)?;
        let d2 = monic_scalar(&lr, &ops.det(b2)?)?;
        let r = lr.mul(&d2, &inverse_rel(&lr, &d1, n)?);
        out.push(to_relative(&lr, &r, n)?);
    }
    Ok(out)
}

pub fn g_index(alg: &GroupAlgebra, l1: &GLattice, l2: &GLattice, n: usize) -> Result<GrLaurent> {
    combine(alg, &index_components(&alg.fq, l1, l2, n)?)
}

/// True when every basis vector of `inner` is an A-combination of the basis of `outer`.
pub fn contains(fq: &FiniteField, outer: &GLattice, inner: &GLattice) -> Result<bool> {
    let lr = LaurentRing::new(fq.clone(), EXACT);
    let ops = MatOps::new(lr.clone());
    for (bo, bi) in outer.comps.iter().zip(&inner.comps) {
        let m = bo.rows;
        let det = ops.det(bo)?;
        let dinv = inverse_rel(&lr, &det, 2 * m + 8)?;
        for j in 0..bi.cols {
            for i in 0..m {
                // Cramer's rule: replace column i of the outer basis by column j of the inner one
                let mut rep = bo.clone();
                for r in 0..m {
                    rep.set(r, i, bi.get(r, j).clone());
                }
                let x = lr.mul(&ops.det(&rep)?, &dinv);
                if x.prec <= 0 {
                    return Err(Error::InsufficientPrecision("containment test lost all precision".into()));
                }
                if !lr.frac_part(&x).coeffs.is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Inverse of a nonzero series with enough relative precision for n + 1 terms of a product.
pub fn inverse_rel(lr: &LaurentRing<FiniteField>, x: &Laurent<FqElem>, n: usize) -> Result<Laurent<FqElem>> {
    let v = x.valuation().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
    let rel = if x.is_exact() { n as i64 + 1 } else { (x.prec - v).max(n as i64 + 1) };
    lr.inverse_to(x, rel - v)
}

/// The F_q-valued characteristic polynomials of t on the eigenparts, as an exact element of k_inf[G].
pub fn combine_polys(alg: &GroupAlgebra, polys: &[Poly<FqElem>]) -> Result<GrLaurent> {
    let lr = LaurentRing::new(alg.fq.clone(), EXACT);
    let comps: Vec<Laurent<FqElem>> = polys.iter().map(|p| lr.from_poly_t(p)).collect();
    combine(alg, &comps)
}
