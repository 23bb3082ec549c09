//! Degree-capped polynomials over a prime field.
//!
//! A `GradedPoly` is a coefficient vector together with a hard degree cap
//! (`bound`). The zero polynomial has degree `None`, and degree arithmetic
//! saturates around it. Coefficients are stored trimmed (no trailing zeros),
//! so semantic equality and hashing are just coefficient equality; the
//! fixed-width wire encoding used for hashing group elements is produced
//! separately by [`GradedPoly::write_fixed_width`].

use serde::{Deserialize, Serialize};

use super::fp::PrimeField;
use crate::error::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedPoly {
    /// Trimmed coefficients, `coeffs[i]` multiplying `X^i`.
    coeffs: Vec<u64>,
    /// Hard cap: every representable degree is `<= bound`.
    bound: usize,
}

impl GradedPoly {
    pub fn zero(bound: usize) -> Self {
        GradedPoly { coeffs: Vec::new(), bound }
    }

    pub fn one(bound: usize) -> Self {
        GradedPoly { coeffs: vec![1], bound }
    }

    /// Monomial `c * X^k`.
    pub fn monomial(field: &PrimeField, c: u64, k: usize, bound: usize) -> Result<Self, AlgebraError> {
        let c = field.reduce(c);
        if c == 0 {
            return Ok(Self::zero(bound));
        }
        if k > bound {
            return Err(AlgebraError::BoundViolation { degree: k as isize, bound });
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Ok(GradedPoly { coeffs, bound })
    }

    pub fn from_coeffs(field: &PrimeField, coeffs: &[u64], bound: usize) -> Result<Self, AlgebraError> {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| field.reduce(c)).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        if v.len() > bound + 1 {
            return Err(AlgebraError::BoundViolation { degree: v.len() as isize - 1, bound });
        }
        Ok(GradedPoly { coeffs: v, bound })
    }

    #[inline]
    pub fn bound(&self) -> usize {
        self.bound
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` encodes deg(0) = -infinity.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Same polynomial under a different (still valid) cap.
    pub fn with_bound(&self, bound: usize) -> Result<Self, AlgebraError> {
        if let Some(d) = self.degree() {
            if d > bound {
                return Err(AlgebraError::BoundViolation { degree: d as isize, bound });
            }
        }
        Ok(GradedPoly { coeffs: self.coeffs.clone(), bound })
    }

    pub fn add(&self, field: &PrimeField, other: &GradedPoly) -> Result<Self, AlgebraError> {
        let bound = self.bound.max(other.bound);
        let mut coeffs = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = field.add(self.coeff(i), other.coeff(i));
        }
        Self::from_coeffs(field, &coeffs, bound)
    }

    pub fn sub(&self, field: &PrimeField, other: &GradedPoly) -> Result<Self, AlgebraError> {
        let bound = self.bound.max(other.bound);
        let mut coeffs = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = field.sub(self.coeff(i), other.coeff(i));
        }
        Self::from_coeffs(field, &coeffs, bound)
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        let coeffs: Vec<u64> = self.coeffs.iter().map(|&c| field.neg(c)).collect();
        GradedPoly { coeffs, bound: self.bound }
    }

    pub fn scale(&self, field: &PrimeField, c: u64) -> Self {
        let c = field.reduce(c);
        if c == 0 {
            return Self::zero(self.bound);
        }
        let coeffs: Vec<u64> = self.coeffs.iter().map(|&a| field.mul(a, c)).collect();
        GradedPoly { coeffs, bound: self.bound }
    }

    /// Exact product with a fresh cap. Errors if the true product degree
    /// exceeds `new_bound`.
    pub fn mul(&self, field: &PrimeField, other: &GradedPoly, new_bound: usize) -> Result<Self, AlgebraError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(new_bound));
        }
        let da = self.coeffs.len() - 1;
        let db = other.coeffs.len() - 1;
        let mut coeffs = vec![0u64; da + db + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b));
            }
        }
        Self::from_coeffs(field, &coeffs, new_bound)
    }

    /// Shift by `X^k`, raising the cap by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero(self.bound + k);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + k];
        coeffs[k..].copy_from_slice(&self.coeffs);
        GradedPoly { coeffs, bound: self.bound + k }
    }

    /// Quotient by `X^k` (floor division), with the given cap.
    pub fn shift_down(&self, k: usize, bound: usize) -> Result<Self, AlgebraError> {
        let coeffs: Vec<u64> = self.coeffs.iter().skip(k).copied().collect();
        if coeffs.len() > bound + 1 {
            return Err(AlgebraError::BoundViolation { degree: coeffs.len() as isize - 1, bound });
        }
        Ok(GradedPoly { coeffs, bound })
    }

    /// The slice of terms with degree in `[lo, hi)`, divided by `X^lo`.
    pub fn window(&self, lo: usize, hi: usize, bound: usize) -> Result<Self, AlgebraError> {
        let coeffs: Vec<u64> = (lo..hi).map(|k| self.coeff(k)).collect();
        let mut v = coeffs;
        while v.last() == Some(&0) {
            v.pop();
        }
        if v.len() > bound + 1 {
            return Err(AlgebraError::BoundViolation { degree: v.len() as isize - 1, bound });
        }
        Ok(GradedPoly { coeffs: v, bound })
    }

    /// Fixed-width little-endian coefficient dump (`bound + 1` entries),
    /// the canonical wire form for hashing group elements byte-exactly.
    pub fn write_fixed_width(&self, out: &mut Vec<u8>) {
        for k in 0..=self.bound {
            out.extend_from_slice(&self.coeff(k).to_le_bytes());
        }
    }
}

impl std::fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "X")?,
                1 => write!(f, "{c}X")?,
                _ if c == 1 => write!(f, "X^{k}")?,
                _ => write!(f, "{c}X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn monomial_product() {
        let f = f2();
        let x = GradedPoly::monomial(&f, 1, 1, 1).unwrap();
        let x2 = x.mul(&f, &x, 2).unwrap();
        assert_eq!(x2.coeffs(), &[0, 0, 1]);
    }

    #[test]
    fn zero_absorbs() {
        let f = f2();
        let z = GradedPoly::zero(3);
        let g = GradedPoly::from_coeffs(&f, &[1, 1, 0, 1], 3).unwrap();
        assert!(z.mul(&f, &g, 6).unwrap().is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn schoolbook_mod2() {
        // (1+X)^2 = 1+X^2 over F_2
        let f = f2();
        let g = GradedPoly::from_coeffs(&f, &[1, 1], 1).unwrap();
        let sq = g.mul(&f, &g, 2).unwrap();
        assert_eq!(sq.coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn bound_violation_detected() {
        let f = f2();
        let g = GradedPoly::from_coeffs(&f, &[0, 1], 1).unwrap();
        assert!(g.mul(&f, &g, 1).is_err());
        assert!(g.mul(&f, &g, 2).is_ok());
    }
}
