use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^a = x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// Builds a monomial from signed exponents, rejecting negative entries.
    pub fn try_from_signed(exps: &[i64]) -> Result<Self> {
        let mut v = SmallVec::with_capacity(exps.len());
        for &e in exps {
            if e < 0 {
                return Err(Error::Input(format!("negative exponent {e}")));
            }
            v.push(u32::try_from(e).map_err(|_| Error::Input(format!("exponent {e} too large")))?);
        }
        Ok(Monomial(v))
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    #[inline]
    pub fn weighted_degree(&self, w: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(w)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    /// Number of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        let mut v = self.0.clone();
        for (a, &b) in v.iter_mut().zip(other.0.iter()) {
            *a = a
                .checked_add(b)
                .ok_or_else(|| Error::Input("exponent overflow".into()))?;
        }
        Ok(Monomial(v))
    }

    /// `self / other`, failing when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        let mut v = self.0.clone();
        for (a, &b) in v.iter_mut().zip(other.0.iter()) {
            *a = a
                .checked_sub(b)
                .ok_or_else(|| Error::Input("negative exponent in quotient".into()))?;
        }
        Ok(Monomial(v))
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Input(format!(
                "exponent vectors of different lengths ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Product, for callers that already hold a degree bound.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        for (a, &b) in v.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial(v)
    }

    /// Quotient, for callers that checked divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        for (a, &b) in v.iter_mut().zip(other.0.iter()) {
            debug_assert!(*a >= b);
            *a -= b;
        }
        Monomial(v)
    }

    /// Does `self` divide `other`?
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i mod 64` is set when variable `i` occurs. A necessary condition
    /// for `a | b` is `mask(a) & !mask(b) == 0`.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// `A · a` for a grading matrix given by its columns.
    pub fn multidegree(&self, columns: &[Vec<i64>]) -> Result<Vec<i64>> {
        if columns.len() != self.len() {
            return Err(Error::Input(format!(
                "grading matrix has {} columns, monomial has {} variables",
                columns.len(),
                self.len()
            )));
        }
        let d = columns.first().map_or(0, |c| c.len());
        let mut out = vec![0i64; d];
        for (&e, col) in self.0.iter().zip(columns) {
            if col.len() != d {
                return Err(Error::Input("ragged grading matrix".into()));
            }
            for (o, &c) in out.iter_mut().zip(col) {
                *o += e as i64 * c;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multidegree_examples() {
        let a = vec![vec![1, 0], vec![1, 2]];
        assert_eq!(
            Monomial::from_exps(&[1, 1]).multidegree(&a).unwrap(),
            vec![2, 2]
        );
        assert_eq!(Monomial::one(2).multidegree(&a).unwrap(), vec![0, 0]);
        let a3 = vec![vec![1, 0], vec![1, 1], vec![1, 3]];
        assert_eq!(
            Monomial::from_exps(&[0, 2, 0]).multidegree(&a3).unwrap(),
            vec![2, 2]
        );
        assert!(Monomial::one(3).multidegree(&a).is_err());
    }

    #[test]
    fn checked_ops() {
        let x = Monomial::from_exps(&[1, 0]);
        let y = Monomial::from_exps(&[0, 1]);
        assert!(x.checked_div(&y).is_err());
        assert!(Monomial::from_exps(&[u32::MAX])
            .checked_mul(&Monomial::from_exps(&[1]))
            .is_err());
        assert!(x.checked_mul(&Monomial::one(3)).is_err());
        assert!(Monomial::try_from_signed(&[1, -1]).is_err());
        assert_eq!(x.lcm(&y), Monomial::from_exps(&[1, 1]));
        assert!(x.is_coprime(&y));
    }
}
