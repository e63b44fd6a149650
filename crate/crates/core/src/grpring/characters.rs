//! Sylow splitting G = P x Delta and the character decomposition of F_q[G].

use super::group::{gcd, GroupSpec};
use super::ring::{GrElem, GroupRing};
use crate::algebra::{enumerate_monic_irreducibles, FiniteField, FqElem, PolyRing, Ring};
use crate::error::{Error, Result};

/// G = P x Delta with |P| a power of p and |Delta| prime to p.
#[derive(Clone, Debug)]
pub struct SylowSplit {
    pub p_part: GroupSpec,
    pub delta: GroupSpec,
    /// g -> (index in P, index in Delta)
    to_pd: Vec<(usize, usize)>,
    /// (pi * |Delta| + delta) -> g
    from_pd: Vec<usize>,
}

impl SylowSplit {
    pub fn new(g: &GroupSpec, p: u32) -> Self {
        let mut p_orders = Vec::new();
        let mut d_orders = Vec::new();
        for &n in &g.orders {
            let mut pa = 1;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                pa *= p;
            }
            p_orders.push(pa);
            d_orders.push(m);
        }
        let p_full = p_orders.clone();
        let d_full = d_orders.clone();
        let p_part = GroupSpec::new(p_orders).expect("valid orders");
        let delta = GroupSpec::new(d_orders).expect("valid orders");
        let n = g.size();
        let mut to_pd = Vec::with_capacity(n);
        let mut from_pd = vec![0usize; n];
        for idx in 0..n {
            let v = g.to_vec(idx);
            let pv: Vec<u32> = v.iter().zip(&p_full).filter(|(_, &o)| o > 1).map(|(&a, &o)| a % o).collect();
            let dv: Vec<u32> = v.iter().zip(&d_full).filter(|(_, &o)| o > 1).map(|(&a, &o)| a % o).collect();
            let pi = p_part.to_index(&pv);
            let di = delta.to_index(&dv);
            to_pd.push((pi, di));
            from_pd[pi * delta.size() + di] = idx;
        }
        SylowSplit { p_part, delta, to_pd, from_pd }
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        self.to_pd[g]
    }

    pub fn join(&self, pi: usize, delta: usize) -> usize {
        self.from_pd[pi * self.delta.size() + delta]
    }
}

/// A Galois orbit of characters of Delta with values in GF(q^M).
#[derive(Clone, Debug)]
pub struct CharacterClass {
    /// Exponent vector of the representative (generator i maps to zeta_i^{k_i}).
    pub rep: Vec<u32>,
    pub orbit: Vec<Vec<u32>>,
    /// Values of the representative on Delta, indexed by element of Delta.
    pub values: Vec<FqElem>,
}

impl CharacterClass {
    /// Degree of the value field F_q(chi) over F_q.
    pub fn degree(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.iter().all(|&k| k == 0)
    }
}

/// F_q[G] together with its decomposition into local components GF(q^M)[P].
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub fq: FiniteField,
    pub gr: GroupRing,
    pub split: SylowSplit,
    /// Field containing all character values.
    pub ext: FiniteField,
    /// GF(q^M)[P].
    pub local: GroupRing,
    pub classes: Vec<CharacterClass>,
    delta_inv: FqElem,
}

impl GroupAlgebra {
    pub fn new(fq: FiniteField, group: GroupSpec) -> Result<Self> {
        let p = fq.char_p();
        let q = fq.order() as u64;
        let split = SylowSplit::new(&group, p);
        let e = split.delta.exponent();
        let mut m = 1u32;
        if e > 1 {
            let mut x = q % e;
            while x != 1 {
                x = x * q % e;
                m += 1;
            }
        }
        let ext = if m == 1 {
            fq.clone()
        } else {
            let a = PolyRing::new(fq.clone());
            let modulus = enumerate_monic_irreducibles(&a, m as usize)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Invalid("no irreducible for character field".into()))?;
            FiniteField::extension(&fq, &modulus.coeffs)?
        };
        let delta = &split.delta;
        let zetas: Vec<FqElem> = delta
            .orders
            .iter()
            .map(|&n| ext.root_of_unity(n as u64).expect("q^M - 1 divisible by exponent"))
            .collect();
        let value = |k: &[u32], d: usize| -> FqElem {
            let dv = delta.to_vec(d);
            let mut acc = ext.one();
            for i in 0..k.len() {
                acc = ext.mul(&acc, &ext.pow(&zetas[i], k[i] as u64 * dv[i] as u64));
            }
            acc
        };
        let mut seen = vec![false; delta.size()];
        let mut classes = Vec::new();
        for idx in 0..delta.size() {
            if seen[idx] {
                continue;
            }
            let rep = delta.to_vec(idx);
            let mut orbit = Vec::new();
            let mut k = rep.clone();
            loop {
                let j = delta.to_index(&k);
                if seen[j] {
                    break;
                }
                seen[j] = true;
                orbit.push(k.clone());
                k = k
                    .iter()
                    .zip(&delta.orders)
                    .map(|(&a, &n)| ((a as u64 * q) % n as u64) as u32)
                    .collect();
            }
            let values = (0..delta.size()).map(|d| value(&rep, d)).collect();
            classes.push(CharacterClass { rep, orbit, values });
        }
        let dsize = delta.size() as i64;
        let delta_inv = fq
            .try_inv(&fq.from_int(dsize))
            .ok_or_else(|| Error::Invalid("|Delta| divisible by p".into()))?;
        debug_assert_eq!(gcd(delta.size() as u64, p as u64), 1);
        let local = GroupRing::new(ext.clone(), split.p_part.clone());
        let gr = GroupRing::new(fq.clone(), group);
        Ok(GroupAlgebra { fq, gr, split, ext, local, classes, delta_inv })
    }

    pub fn group(&self) -> &GroupSpec {
        self.gr.group()
    }

    /// True when p does not divide |G|.
    pub fn is_tame(&self) -> bool {
        self.split.p_part.is_trivial()
    }

    /// True when every character takes values in F_q.
    pub fn characters_rational(&self) -> bool {
        self.classes.iter().all(|c| c.degree() == 1)
    }

    fn frob(&self, a: &FqElem, j: usize) -> FqElem {
        let q = self.fq.order() as u64;
        self.ext.pow(a, q.pow(j as u32))
    }

    /// Value chi^{q^j}(delta) for the class representative chi.
    fn conj_value(&self, class: &CharacterClass, j: usize, d: usize) -> FqElem {
        self.frob(&class.values[d], j)
    }

    /// Component of x in class `c`: sum_g x_g chi(delta(g)) pi(g).
    pub fn psi_component(&self, x: &GrElem, c: usize) -> GrElem {
        let class = &self.classes[c];
        let mut out = self.local.zero();
        for (g, coeff) in x.iter().enumerate() {
            if coeff.0 == 0 {
                continue;
            }
            let (pi, d) = self.split.split(g);
            // base field elements embed into ext with the same index
            let term = self.ext.mul(coeff, &class.values[d]);
            out[pi] = self.ext.add(&out[pi], &term);
        }
        out
    }

    pub fn psi(&self, x: &GrElem) -> Vec<GrElem> {
        (0..self.classes.len()).map(|c| self.psi_component(x, c)).collect()
    }

    /// Inverse of `psi` via the idempotent reconstruction over all characters.
    pub fn psi_inv(&self, comps: &[GrElem]) -> Result<GrElem> {
        let delta = &self.split.delta;
        let n = self.gr.size();
        let mut out = vec![FqElem(0); n];
        for g in 0..n {
            let (pi, d) = self.split.split(g);
            let dinv = delta.inverse(d);
            let mut acc = self.ext.zero();
            for (c, class) in self.classes.iter().enumerate() {
                let comp = comps[c][pi];
                for j in 0..class.degree() {
                    let v = self.ext.mul(&self.conj_value(class, j, dinv), &self.frob(&comp, j));
                    acc = self.ext.add(&acc, &v);
                }
            }
            if !self.ext.in_digit_field(&acc) && self.ext.order() != self.fq.order() {
                return Err(Error::Invalid("components are not Galois-compatible".into()));
            }
            out[g] = self.fq.mul(&acc, &self.delta_inv);
        }
        Ok(out)
    }

    /// The primitive idempotent of F_q[Delta] attached to class `c`, inside F_q[G].
    pub fn idempotent(&self, c: usize) -> GrElem {
        let class = &self.classes[c];
        let delta = &self.split.delta;
        let mut out = vec![FqElem(0); self.gr.size()];
        for d in 0..delta.size() {
            let dinv = delta.inverse(d);
            let mut acc = self.ext.zero();
            for j in 0..class.degree() {
                acc = self.ext.add(&acc, &self.conj_value(class, j, dinv));
            }
            debug_assert!(self.ext.in_digit_field(&acc) || self.ext.order() == self.fq.order());
            out[self.split.join(0, d)] = self.fq.mul(&acc, &self.delta_inv);
        }
        out
    }

    /// Label of a class for reports, e.g. `chi(0)` or `chi(1,2)`.
    pub fn class_label(&self, c: usize) -> String {
        let r: Vec<String> = self.classes[c].rep.iter().map(|k| k.to_string()).collect();
        format!("chi({})", r.join(","))
    }
}

impl GroupAlgebra {
    /// Embeds an F_q scalar of the local ring.
    pub fn local_scalar(&self, c: FqElem) -> GrElem {
        self.local.scalar(c)
    }

    /// Inverse in F_q[G] computed componentwise (units of the local rings invert by series).
    pub fn inv_componentwise(&self, x: &GrElem) -> Option<GrElem> {
        let comps: Option<Vec<GrElem>> = self.psi(x).iter().map(|y| self.local.try_inv(y)).collect();
        self.psi_inv(&comps?).ok()
    }

    /// A field-valued unit test that avoids a linear solve.
    pub fn is_unit(&self, x: &GrElem) -> bool {
        self.psi(x).iter().all(|y| !self.ext.is_zero(&self.local.augmentation(y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn alg(p: u32, orders: Vec<u32>) -> GroupAlgebra {
        let fq = FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap();
        GroupAlgebra::new(fq, GroupSpec::new(orders).unwrap()).unwrap()
    }

    #[test]
    fn sign_character_on_generator() {
        let a = alg(3, vec![2]);
        let sigma = a.gr.basis(1);
        let comps = a.psi(&sigma);
        assert_eq!(comps.len(), 2);
        assert!(a.classes[0].is_trivial());
        assert_eq!(comps[0], vec![a.fq.one()]);
        assert_eq!(comps[1], vec![a.fq.neg(&a.fq.one())]);
    }

    #[test]
    fn class_degrees_sum_to_delta() {
        for (p, orders) in [(3u32, vec![4u32]), (2, vec![3]), (2, vec![5]), (3, vec![2, 2]), (2, vec![6]), (3, vec![3])] {
            let a = alg(p, orders);
            let s: usize = a.classes.iter().map(|c| c.degree()).sum();
            assert_eq!(s, a.split.delta.size());
        }
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        for (p, orders) in [(3u32, vec![4u32]), (2, vec![3]), (2, vec![5]), (3, vec![2, 2]), (2, vec![6])] {
            let a = alg(p, orders);
            let r = &a.gr;
            let mut total = r.zero();
            for i in 0..a.classes.len() {
                let ei = a.idempotent(i);
                assert_eq!(r.mul(&ei, &ei), ei);
                for j in 0..i {
                    assert!(r.is_zero(&r.mul(&ei, &a.idempotent(j))));
                }
                total = r.add(&total, &ei);
            }
            assert!(r.is_one(&total));
        }
    }
}
