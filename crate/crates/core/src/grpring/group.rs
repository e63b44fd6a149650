//! Finite abelian groups as products of cyclic groups.

use crate::error::{Error, Result};

/// G = Z/n_1 x ... x Z/n_k; elements are exponent vectors, indexed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::Invalid("cyclic factor of order 0".into()));
        }
        // factors of order 1 carry no information
        let orders: Vec<u32> = orders.into_iter().filter(|&n| n > 1).collect();
        let size: u64 = orders.iter().map(|&n| n as u64).product();
        if size > 4096 {
            return Err(Error::Unsupported(format!("group of order {size} too large")));
        }
        Ok(GroupSpec { orders })
    }

    pub fn trivial() -> Self {
        GroupSpec { orders: vec![] }
    }

    pub fn cyclic(n: u32) -> Self {
        GroupSpec::new(vec![n]).expect("valid cyclic order")
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| lcm(acc, n as u64))
    }

    pub fn to_vec(&self, mut idx: usize) -> Vec<u32> {
        let mut v = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            v[i] = (idx % n) as u32;
            idx /= n;
        }
        v
    }

    pub fn to_index(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&a, &n)| acc * n as usize + (a % n) as usize)
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let va = self.to_vec(a);
        let vb = self.to_vec(b);
        let v: Vec<u32> = va.iter().zip(&vb).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.to_index(&v)
    }

    pub fn inverse(&self, a: usize) -> usize {
        let v: Vec<u32> = self.to_vec(a).iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.to_index(&v)
    }

    /// Generator of the i-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        let mut v = vec![0; self.orders.len()];
        v[i] = 1;
        self.to_index(&v)
    }

    pub fn fmt_elem(&self, idx: usize) -> String {
        let v = self.to_vec(idx);
        if v.is_empty() {
            return "g()".into();
        }
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("g({})", s.join(","))
    }

    pub fn describe(&self) -> String {
        if self.is_trivial() {
            "1".into()
        } else {
            let s: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
            s.join(" x ")
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(g.size(), 6);
        for i in 0..6 {
            assert_eq!(g.to_index(&g.to_vec(i)), i);
            assert_eq!(g.op(i, g.inverse(i)), 0);
        }
        assert_eq!(g.fmt_elem(g.generator(1)), "g(0,1)");
        assert_eq!(g.exponent(), 6);
    }
}
