//! Group rings F[G] over a finite field F.

use std::sync::Arc;

use super::group::GroupSpec;
use crate::algebra::linalg;
use crate::algebra::matrix::Matrix;
use crate::algebra::{FiniteField, FqElem, Ring};

struct Inner {
    field: FiniteField,
    group: GroupSpec,
    table: Vec<u32>,
    p_group: bool,
}

/// F[G]; elements are dense coefficient vectors indexed by group element.
#[derive(Clone)]
pub struct GroupRing(Arc<Inner>);

pub type GrElem = Vec<FqElem>;

impl std::fmt::Debug for GroupRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})[{}]", self.0.field.order(), self.0.group.describe())
    }
}

impl GroupRing {
    pub fn new(field: FiniteField, group: GroupSpec) -> Self {
        let n = group.size();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = group.op(a, b) as u32;
            }
        }
        let p = field.char_p() as usize;
        let mut m = n;
        while m > 1 && m % p == 0 {
            m /= p;
        }
        let p_group = m == 1;
        GroupRing(Arc::new(Inner { field, group, table, p_group }))
    }

    pub fn field(&self) -> &FiniteField {
        &self.0.field
    }

    pub fn group(&self) -> &GroupSpec {
        &self.0.group
    }

    pub fn size(&self) -> usize {
        self.0.group.size()
    }

    /// True when |G| is a power of the characteristic (F[G] is then local).
    pub fn is_local(&self) -> bool {
        self.0.p_group
    }

    pub fn scalar(&self, c: FqElem) -> GrElem {
        let mut v = vec![FqElem(0); self.size()];
        v[0] = c;
        v
    }

    /// The basis element of group element `g`.
    pub fn basis(&self, g: usize) -> GrElem {
        let mut v = vec![FqElem(0); self.size()];
        v[g] = self.0.field.one();
        v
    }

    pub fn augmentation(&self, x: &GrElem) -> FqElem {
        self.0.field.sum(x.iter())
    }

    pub fn scale(&self, x: &GrElem, c: &FqElem) -> GrElem {
        x.iter().map(|a| self.0.field.mul(a, c)).collect()
    }

    /// The automorphism g -> g^{-1}.
    pub fn involution(&self, x: &GrElem) -> GrElem {
        let mut v = vec![FqElem(0); self.size()];
        for (g, c) in x.iter().enumerate() {
            v[self.0.group.inverse(g)] = *c;
        }
        v
    }

    /// Applies a field map to every coefficient.
    pub fn map_coeffs<F: Fn(&FqElem) -> FqElem>(&self, x: &GrElem, f: F) -> GrElem {
        x.iter().map(f).collect()
    }

    /// Matrix of multiplication by `x` in the basis of group elements (columns = images).
    pub fn regular_matrix(&self, x: &GrElem) -> Matrix<FqElem> {
        let n = self.size();
        let mut m = Matrix::filled(n, n, FqElem(0));
        for h in 0..n {
            for g in 0..n {
                let c = x[g];
                if c.0 == 0 {
                    continue;
                }
                let gh = self.0.table[g * n + h] as usize;
                let v = self.0.field.add(m.get(gh, h), &c);
                m.set(gh, h, v);
            }
        }
        m
    }

    /// Degree of nilpotency bound: I^L = 0 for the augmentation ideal when local.
    pub fn nilpotency_bound(&self) -> usize {
        self.size()
    }

    /// Group-element indices with nonzero coefficient.
    pub fn support(&self, x: &GrElem) -> Vec<usize> {
        (0..x.len()).filter(|&g| x[g].0 != 0).collect()
    }
}

impl Ring for GroupRing {
    type Elem = GrElem;

    fn zero(&self) -> GrElem {
        vec![FqElem(0); self.size()]
    }

    fn one(&self) -> GrElem {
        self.scalar(self.0.field.one())
    }

    fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        a.iter().zip(b).map(|(x, y)| self.0.field.add(x, y)).collect()
    }

    fn neg(&self, a: &GrElem) -> GrElem {
        a.iter().map(|x| self.0.field.neg(x)).collect()
    }

    fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let n = self.size();
        if n == 1 {
            return vec![self.0.field.mul(&a[0], &b[0])];
        }
        let f = &self.0.field;
        let mut v = vec![FqElem(0); n];
        for g in 0..n {
            if a[g].0 == 0 {
                continue;
            }
            for h in 0..n {
                if b[h].0 == 0 {
                    continue;
                }
                let k = self.0.table[g * n + h] as usize;
                v[k] = f.add(&v[k], &f.mul(&a[g], &b[h]));
            }
        }
        v
    }

    fn is_zero(&self, a: &GrElem) -> bool {
        a.iter().all(|x| x.0 == 0)
    }

    fn try_inv(&self, a: &GrElem) -> Option<GrElem> {
        let f = &self.0.field;
        if self.size() == 1 {
            return f.try_inv(&a[0]).map(|c| vec![c]);
        }
        if self.0.p_group {
            // a = c (1 + n) with n in the nilpotent augmentation ideal
            let c = f.try_inv(&self.augmentation(a))?;
            let n = self.sub(&self.scale(a, &c), &self.one());
            let mut term = self.one();
            let mut acc = self.one();
            let neg_n = self.neg(&n);
            for _ in 0..self.size() {
                term = self.mul(&term, &neg_n);
                if self.is_zero(&term) {
                    break;
                }
                acc = self.add(&acc, &term);
            }
            return Some(self.scale(&acc, &c));
        }
        let m = self.regular_matrix(a);
        let x = linalg::solve(f, &m, &self.one())?;
        Some(x)
    }

    fn fmt_elem(&self, a: &GrElem) -> String {
        if self.size() == 1 {
            return self.0.field.fmt_elem_str(&a[0]);
        }
        let terms: Vec<String> = (0..a.len())
            .filter(|&g| a[g].0 != 0)
            .map(|g| {
                let c = self.0.field.fmt_elem_str(&a[g]);
                let c = if c.contains('+') { format!("({c})") } else { c };
                format!("{c}*{}", self.0.group.fmt_elem(g))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn brute_force_unit(r: &GroupRing, x: &GrElem) -> bool {
        // exhaustive search over all elements
        let q = r.field().order() as usize;
        let n = r.size();
        let total = q.pow(n as u32);
        (0..total).any(|mut idx| {
            let y: GrElem = (0..n)
                .map(|_| {
                    let c = FqElem((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect();
            r.is_one(&r.mul(x, &y))
        })
    }

    #[test]
    fn units_match_exhaustive_search() {
        for (p, orders) in [(2u32, vec![2u32]), (3, vec![2]), (3, vec![3]), (2, vec![4]), (2, vec![2, 2]), (3, vec![4])] {
            let f = FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap();
            let r = GroupRing::new(f, GroupSpec::new(orders).unwrap());
            let q = r.field().order() as usize;
            let n = r.size();
            if q * n > 64 && q.pow(n as u32) > 100_000 {
                continue;
            }
            for idx in 0..q.pow(n as u32) {
                let mut k = idx;
                let x: GrElem = (0..n)
                    .map(|_| {
                        let c = FqElem((k % q) as u32);
                        k /= q;
                        c
                    })
                    .collect();
                let inv = r.try_inv(&x);
                assert_eq!(inv.is_some(), brute_force_unit(&r, &x), "{x:?}");
                if let Some(y) = inv {
                    assert!(r.is_one(&r.mul(&x, &y)));
                }
            }
        }
    }

    #[test]
    fn one_minus_sigma_not_unit_in_char_2() {
        let f = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        let r = GroupRing::new(f, GroupSpec::cyclic(2));
        let x = r.sub(&r.one(), &r.basis(1));
        assert!(!r.is_unit(&x));
        assert!(r.is_unit(&r.one()));
        assert_eq!(r.fmt_elem(&x), "1*g(0) + 1*g(1)");
    }
}
