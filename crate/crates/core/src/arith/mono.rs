use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial, one slot per variable of the ambient profile.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(SmallVec<[u32; 16]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn from_slice(e: &[u32]) -> Self {
        Mono(SmallVec::from_slice(e))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::one(nvars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn deg(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Sum of exponents over the given variable indices.
    pub fn deg_in(&self, idx: &[usize]) -> u64 {
        idx.iter().map(|&i| self.0[i] as u64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.len(), other.len());
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison over all slots.
    pub fn cmp_degrevlex(&self, other: &Mono) -> Ordering {
        match self.deg().cmp(&other.deg()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<Vec<u32>> for Mono {
    fn from(v: Vec<u32>) -> Self {
        Mono(SmallVec::from_vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let xy = Mono::from_slice(&[1, 1, 0]);
        let x2 = Mono::from_slice(&[2, 0, 0]);
        let z2 = Mono::from_slice(&[0, 0, 2]);
        let xz = Mono::from_slice(&[1, 0, 1]);
        assert_eq!(x2.cmp_degrevlex(&xy), Ordering::Greater);
        assert_eq!(xy.cmp_degrevlex(&xz), Ordering::Greater);
        assert_eq!(xz.cmp_degrevlex(&z2), Ordering::Greater);
        assert_eq!(Mono::var(3, 0).cmp_degrevlex(&x2), Ordering::Less);
    }

    #[test]
    fn divisibility() {
        let a = Mono::from_slice(&[1, 2]);
        let b = Mono::from_slice(&[3, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Mono::from_slice(&[2, 0]));
        assert_eq!(a.lcm(&Mono::from_slice(&[0, 5])), Mono::from_slice(&[1, 5]));
    }
}
