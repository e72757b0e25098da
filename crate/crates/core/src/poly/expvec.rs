use std::ops::Index;

use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(SmallVec<[u16; 16]>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = ExpVec::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn from_slice(v: &[u16]) -> Self {
        ExpVec(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&k| k as u32).sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u16> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [u16] {
        &mut self.0
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ExpVec(out))
    }

    pub fn divides(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends a variable with exponent `k`.
    pub fn extended(&self, k: u16) -> ExpVec {
        let mut v = self.0.clone();
        v.push(k);
        ExpVec(v)
    }
}

impl Index<usize> for ExpVec {
    type Output = u16;
    fn index(&self, i: usize) -> &u16 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = ExpVec::from_slice(&[1, 0, 2]);
        let b = ExpVec::from_slice(&[2, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.checked_sub(&a), Some(ExpVec::from_slice(&[1, 1, 0])));
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(a.lcm(&ExpVec::from_slice(&[0, 3, 1])), ExpVec::from_slice(&[1, 3, 2]));
        assert!(ExpVec::from_slice(&[1, 0, 0]).coprime(&ExpVec::from_slice(&[0, 2, 1])));
        assert_eq!(b.degree(), 5);
    }
}
