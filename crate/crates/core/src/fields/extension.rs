//! Explicit rings of integers O_K over A with a G-action.

use crate::algebra::{APoly, ARing, FiniteField, Laurent, LaurentRing, MatOps, Matrix, PolyRing, RatFuncField, Ring, EXACT};
use crate::error::{Error, Result};
use crate::grpring::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtKind {
    Trivial,
    /// Carlitz P-torsion field for deg P = 1: O_K = A[lambda], lambda^{q-1} = -P.
    CarlitzCyclotomic { p: APoly },
    Explicit,
}

/// A place above infinity: ramification e, residue degree f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitePlace {
    pub e: u32,
    pub f: u32,
}

/// O_K = A w_1 + ... + A w_d with w_1 = 1.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub kind: ExtKind,
    pub fq: FiniteField,
    pub d: usize,
    pub group: GroupSpec,
    /// w_i w_j = sum_k mult[i][j][k] w_k.
    pub mult: Vec<Vec<Vec<APoly>>>,
    /// For each group element g (index order), the matrix of g: column j = coordinates of g(w_j).
    pub gaction: Vec<Matrix<APoly>>,
    pub infinite: Vec<InfinitePlace>,
}

/// Coordinates in the basis w_1..w_d.
pub type OkElem = Vec<APoly>;

impl ExtensionData {
    pub fn a(&self) -> ARing {
        PolyRing::new(self.fq.clone())
    }

    pub fn one(&self) -> OkElem {
        let a = self.a();
        let mut v = vec![a.zero(); self.d];
        v[0] = a.one();
        v
    }

    pub fn basis(&self, i: usize) -> OkElem {
        let a = self.a();
        let mut v = vec![a.zero(); self.d];
        v[i] = a.one();
        v
    }

    pub fn from_a(&self, c: APoly) -> OkElem {
        let mut v = vec![self.a().zero(); self.d];
        v[0] = c;
        v
    }

    pub fn add(&self, x: &OkElem, y: &OkElem) -> OkElem {
        let a = self.a();
        x.iter().zip(y).map(|(p, q)| a.add(p, q)).collect()
    }

    pub fn scale(&self, x: &OkElem, c: &APoly) -> OkElem {
        let a = self.a();
        x.iter().map(|p| a.mul(p, c)).collect()
    }

    pub fn mul(&self, x: &OkElem, y: &OkElem) -> OkElem {
        let a = self.a();
        let mut out = vec![a.zero(); self.d];
        for i in 0..self.d {
            if x[i].is_empty() {
                continue;
            }
            for j in 0..self.d {
                if y[j].is_empty() {
                    continue;
                }
                let c = a.mul(&x[i], &y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let m = &self.mult[i][j][k];
                    if !m.is_empty() {
                        *o = a.add(o, &a.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &OkElem, mut e: u64) -> OkElem {
        let mut acc = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Applies group element g.
    pub fn act(&self, g: usize, x: &OkElem) -> OkElem {
        MatOps::new(self.a()).mul_vec(&self.gaction[g], x)
    }

    /// True when every G-matrix has constant entries (then U_s filtrations are G-stable).
    pub fn g_action_constant(&self) -> bool {
        self.gaction.iter().all(|m| m.data.iter().all(|p| p.len() <= 1))
    }

    /// Checks the ring and group axioms on basis elements.
    pub fn validate(&self) -> Result<()> {
        let d = self.d;
        if self.mult.len() != d || self.mult.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::Invalid("multiplication table must be d x d x d".into()));
        }
        if self.gaction.len() != self.group.size() {
            return Err(Error::Invalid(format!(
                "expected {} G-action matrices, got {}",
                self.group.size(),
                self.gaction.len()
            )));
        }
        if self.gaction.iter().any(|m| m.rows != d || m.cols != d) {
            return Err(Error::Invalid("G-action matrices must be d x d".into()));
        }
        if self.group.size() != d {
            return Err(Error::Invalid(format!("[K:k] = {d} differs from |G| = {}", self.group.size())));
        }
        let ef: u32 = self.infinite.iter().map(|p| p.e * p.f).sum();
        if ef as usize != d {
            return Err(Error::Invalid(format!("sum of e*f over infinite places is {ef}, expected {d}")));
        }
        let b: Vec<OkElem> = (0..d).map(|i| self.basis(i)).collect();
        for i in 0..d {
            if self.mul(&b[0], &b[i]) != b[i] {
                return Err(Error::Invalid("w_1 must be the identity".into()));
            }
            for j in 0..d {
                if self.mul(&b[i], &b[j]) != self.mul(&b[j], &b[i]) {
                    return Err(Error::Invalid(format!("multiplication not commutative on (w{}, w{})", i + 1, j + 1)));
                }
                for k in 0..d {
                    let l = self.mul(&self.mul(&b[i], &b[j]), &b[k]);
                    let r = self.mul(&b[i], &self.mul(&b[j], &b[k]));
                    if l != r {
                        return Err(Error::Invalid("multiplication not associative".into()));
                    }
                }
            }
        }
        if self.act(0, &b[0]) != b[0] || (0..d).any(|i| self.act(0, &b[i]) != b[i]) {
            return Err(Error::Invalid("identity of G must act trivially".into()));
        }
        for g in 0..self.group.size() {
            if self.act(g, &b[0]) != b[0] {
                return Err(Error::Invalid("G must fix 1".into()));
            }
            for h in 0..self.group.size() {
                let gh = self.group.op(g, h);
                for x in &b {
                    if self.act(g, &self.act(h, x)) != self.act(gh, x) {
                        return Err(Error::Invalid("G-action matrices do not form a representation".into()));
                    }
                }
            }
            for i in 0..d {
                for j in 0..d {
                    let l = self.act(g, &self.mul(&b[i], &b[j]));
                    let r = self.mul(&self.act(g, &b[i]), &self.act(g, &b[j]));
                    if l != r {
                        return Err(Error::Invalid("G does not act by ring automorphisms".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// An element whose G-conjugates are k-linearly independent (a normal basis generator).
    pub fn normal_basis_element(&self) -> Option<OkElem> {
        let k = RatFuncField::new(self.fq.clone());
        let a = self.a();
        let mut cands: Vec<OkElem> = (0..self.d).map(|i| self.basis(i)).collect();
        let all_ones: OkElem = vec![a.one(); self.d];
        cands.insert(0, all_ones);
        cands.into_iter().find(|x| {
            let cols: Vec<Vec<_>> = (0..self.group.size())
                .map(|g| self.act(g, x).into_iter().map(|p| k.from_poly(p)).collect())
                .collect();
            let m = Matrix::from_cols(cols);
            !k.is_zero(&MatOps::new(k.clone()).det(&m).unwrap_or_else(|_| k.zero()))
        })
    }

    /// Embedding into F_q((pi)) for the built-in extensions (one place, f = 1), exact.
    pub fn embed(&self, x: &OkElem) -> Result<Laurent<crate::algebra::FqElem>> {
        let lr = LaurentRing::new(self.fq.clone(), EXACT);
        match &self.kind {
            ExtKind::Trivial => Ok(lr.from_poly_t(&x[0])),
            ExtKind::CarlitzCyclotomic { p } => {
                // lambda = pi^{-1}, t = -pi^{-(q-1)} - c with P = t + c
                let q = self.fq.order() as i64;
                let c = p.coeffs[0];
                let tt = lr.sub(&lr.neg(&lr.monomial(self.fq.one(), -(q - 1))), &lr.scalar(c));
                let mut acc = lr.zero();
                for (i, ci) in x.iter().enumerate() {
                    let mut val = lr.zero();
                    for cj in ci.coeffs.iter().rev() {
                        val = lr.add(&lr.mul(&val, &tt), &lr.scalar(*cj));
                    }
                    acc = lr.add(&acc, &lr.mul(&val, &lr.monomial(self.fq.one(), -(i as i64))));
                }
                Ok(acc)
            }
            ExtKind::Explicit => Err(Error::Unsupported("embedding at infinity for explicit extensions".into())),
        }
    }

    pub fn describe(&self) -> String {
        let a = self.a();
        match &self.kind {
            ExtKind::Trivial => "trivial".into(),
            ExtKind::CarlitzCyclotomic { p } => format!("carlitz_cyclotomic(P={})", a.fmt_poly(p)),
            ExtKind::Explicit => format!("explicit(d={}, G={})", self.d, self.group.describe()),
        }
    }
}

/// K = k, G = 1.
pub fn trivial_extension(fq: &FiniteField) -> ExtensionData {
    let a = PolyRing::new(fq.clone());
    ExtensionData {
        kind: ExtKind::Trivial,
        fq: fq.clone(),
        d: 1,
        group: GroupSpec::trivial(),
        mult: vec![vec![vec![a.one()]]],
        gaction: vec![Matrix::from_rows(vec![vec![a.one()]])],
        infinite: vec![InfinitePlace { e: 1, f: 1 }],
    }
}

/// Carlitz P-torsion field, deg P = 1, q >= 3: basis lambda^i, G = F_q^x acting by lambda -> c lambda.
pub fn carlitz_cyclotomic_deg1(fq: &FiniteField, p: &APoly) -> Result<ExtensionData> {
    let a = PolyRing::new(fq.clone());
    if p.degree() != Some(1) || !a.is_monic(p) {
        return Err(Error::Invalid("carlitz_cyclotomic needs a monic prime of degree 1".into()));
    }
    let q = fq.order() as usize;
    if q < 3 {
        return Err(Error::Invalid("carlitz_cyclotomic needs q >= 3".into()));
    }
    let d = q - 1;
    let mut mult = vec![vec![vec![a.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            if i + j < d {
                mult[i][j][i + j] = a.one();
            } else {
                mult[i][j][i + j - d] = a.neg(p);
            }
        }
    }
    let g = fq.primitive();
    let mut gaction = Vec::with_capacity(d);
    for e in 0..d {
        let c = fq.pow(&g, e as u64);
        let mut m = Matrix::filled(d, d, a.zero());
        for i in 0..d {
            m.set(i, i, a.constant(fq.pow(&c, i as u64)));
        }
        gaction.push(m);
    }
    let x = ExtensionData {
        kind: ExtKind::CarlitzCyclotomic { p: p.clone() },
        fq: fq.clone(),
        d,
        group: GroupSpec::cyclic(d as u32),
        mult,
        gaction,
        infinite: vec![InfinitePlace { e: d as u32, f: 1 }],
    };
    x.validate()?;
    Ok(x)
}
