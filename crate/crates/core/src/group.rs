//! Finite abelian grading groups in invariant-factor form
//! Z_{m_1} x ... x Z_{m_r}. Elements are addressed by their mixed-radix
//! index in lexicographic component order (first component most significant).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&m| m == 0) {
            return Err(Error::InvalidTable(
                "cyclic orders must be nonempty and >= 1".into(),
            ));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(m: u32) -> Self {
        AbelianGroup { orders: vec![m] }
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: vec![1] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&m| m as u64).product()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn decompose(&self, mut idx: usize) -> Vec<u32> {
        let mut comps = vec![0u32; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let m = self.orders[i] as usize;
            comps[i] = (idx % m) as u32;
            idx /= m;
        }
        comps
    }

    pub fn compose(&self, comps: &[u32]) -> usize {
        debug_assert_eq!(comps.len(), self.orders.len());
        let mut idx = 0usize;
        for (i, &c) in comps.iter().enumerate() {
            idx = idx * self.orders[i] as usize + (c % self.orders[i]) as usize;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let ca = self.decompose(a);
        let cb = self.decompose(b);
        let sum: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        self.compose(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let ca = self.decompose(a);
        let n: Vec<u32> = ca
            .iter()
            .zip(&self.orders)
            .map(|(&x, &m)| (m - x % m) % m)
            .collect();
        self.compose(&n)
    }

    pub fn sum(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &e| self.add(acc, e))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order() as usize
    }

    /// Stable rendering of an element: plain integer for rank 1, a component
    /// tuple otherwise.
    pub fn display(&self, idx: usize) -> String {
        if self.rank() == 1 {
            format!("{idx}")
        } else {
            let comps = self.decompose(idx);
            let inner: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.decompose(3), vec![1, 1]);
        assert_eq!(g.add(1, 3), 2); // (0,1)+(1,1) = (1,0)
        assert_eq!(g.neg(3), 3);
        assert_eq!(g.display(2), "(1,0)");
    }

    #[test]
    fn cyclic_six() {
        let g = AbelianGroup::cyclic(6);
        assert_eq!(g.add(4, 5), 3);
        assert_eq!(g.neg(2), 4);
        assert_eq!(g.sum(&[1, 2, 3]), 0);
    }
}
