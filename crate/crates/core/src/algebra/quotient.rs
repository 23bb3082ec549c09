//! The quotient ring `F_p[X]/(q)` for `q = X^s` or a designated irreducible.
//!
//! Elements are represented by their unique degree `< s` representative.
//! With the `X^s` modulus, multiplication is plain truncation; with an
//! irreducible modulus the ring is the field `F_{p^s}`.

use serde::{Deserialize, Serialize};

use super::fp::PrimeField;
use super::poly::GradedPoly;
use crate::error::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    /// `X^s`: multiplication truncates at degree `s`.
    PowerOfX { s: usize },
    /// A monic irreducible of degree `s` (validated on construction).
    Irreducible { coeffs: Vec<u64> },
}

impl Modulus {
    pub fn degree(&self) -> usize {
        match self {
            Modulus::PowerOfX { s } => *s,
            Modulus::Irreducible { coeffs } => coeffs.len() - 1,
        }
    }
}

/// The ring context: prime field plus modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientRing {
    pub field: PrimeField,
    pub modulus: Modulus,
}

impl QuotientRing {
    pub fn power_of_x(field: PrimeField, s: usize) -> Result<Self, AlgebraError> {
        if s == 0 {
            return Err(AlgebraError::DegenerateModulus);
        }
        Ok(QuotientRing { field, modulus: Modulus::PowerOfX { s } })
    }

    pub fn irreducible(field: PrimeField, coeffs: Vec<u64>) -> Result<Self, AlgebraError> {
        let coeffs: Vec<u64> = coeffs.iter().map(|&c| field.reduce(c)).collect();
        let s = coeffs.len().checked_sub(1).ok_or(AlgebraError::DegenerateModulus)?;
        if s == 0 || coeffs[s] != 1 {
            return Err(AlgebraError::DegenerateModulus);
        }
        if !is_irreducible(&field, &coeffs) {
            return Err(AlgebraError::NotIrreducible);
        }
        Ok(QuotientRing { field, modulus: Modulus::Irreducible { coeffs } })
    }

    /// Search the lexicographically first monic irreducible of degree `s`.
    pub fn find_irreducible(field: PrimeField, s: usize) -> Result<Self, AlgebraError> {
        if s == 0 {
            return Err(AlgebraError::DegenerateModulus);
        }
        let p = field.prime();
        let n_lower = p.pow(s as u32);
        for code in 0..n_lower {
            let mut coeffs = vec![0u64; s + 1];
            let mut c = code;
            for slot in coeffs.iter_mut().take(s) {
                *slot = c % p;
                c /= p;
            }
            coeffs[s] = 1;
            if is_irreducible(&field, &coeffs) {
                return Ok(QuotientRing { field, modulus: Modulus::Irreducible { coeffs } });
            }
        }
        Err(AlgebraError::NotIrreducible)
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn size(&self) -> u64 {
        self.field.prime().pow(self.degree() as u32)
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: Vec::new() }
    }

    pub fn one(&self) -> RingElement {
        RingElement { coeffs: vec![1] }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> RingElement {
        let s = self.degree();
        let mut v: Vec<u64> = coeffs.iter().take(s).map(|&c| self.field.reduce(c)).collect();
        // Coefficients at degree >= s must be folded in by the caller via mul;
        // here we only accept representatives.
        debug_assert!(coeffs.iter().skip(s).all(|&c| self.field.reduce(c) == 0));
        while v.last() == Some(&0) {
            v.pop();
        }
        RingElement { coeffs: v }
    }

    pub fn embed_poly(&self, p: &GradedPoly) -> Result<RingElement, AlgebraError> {
        if let Some(d) = p.degree() {
            if d >= self.degree() {
                return Err(AlgebraError::BoundViolation { degree: d as isize, bound: self.degree() - 1 });
            }
        }
        Ok(RingElement { coeffs: p.coeffs().to_vec() })
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut coeffs = vec![0u64; a.coeffs.len().max(b.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.field.add(a.coeff(i), b.coeff(i));
        }
        trim(coeffs)
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut coeffs = vec![0u64; a.coeffs.len().max(b.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.field.sub(a.coeff(i), b.coeff(i));
        }
        trim(coeffs)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        trim(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut prod = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = self.field.add(prod[i + j], self.field.mul(x, y));
            }
        }
        self.reduce_vec(prod)
    }

    fn reduce_vec(&self, mut prod: Vec<u64>) -> RingElement {
        let s = self.degree();
        match &self.modulus {
            Modulus::PowerOfX { .. } => {
                prod.truncate(s);
                trim(prod)
            }
            Modulus::Irreducible { coeffs: q } => {
                // long division by the monic q
                while prod.len() > s {
                    let lead = *prod.last().unwrap();
                    let top = prod.len() - 1;
                    if lead != 0 {
                        for (i, &qc) in q.iter().enumerate().take(s) {
                            let idx = top - s + i;
                            prod[idx] = self.field.sub(prod[idx], self.field.mul(lead, qc));
                        }
                    }
                    prod.pop();
                }
                trim(prod)
            }
        }
    }

    /// All ring elements in a deterministic order.
    pub fn enumerate(&self) -> Vec<RingElement> {
        let p = self.field.prime();
        let s = self.degree();
        let total = p.pow(s as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut coeffs = vec![0u64; s];
            let mut c = code;
            for slot in coeffs.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            out.push(trim(coeffs));
        }
        out
    }
}

/// Residue-class representative of degree `< s`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    #[inline]
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

fn trim(mut v: Vec<u64>) -> RingElement {
    while v.last() == Some(&0) {
        v.pop();
    }
    RingElement { coeffs: v }
}

fn is_irreducible(field: &PrimeField, q: &[u64]) -> bool {
    // Brute trial division by all lower-degree monic polynomials; moduli in
    // this workbench have degree <= 4 over tiny primes.
    let s = q.len() - 1;
    if s == 1 {
        return true;
    }
    let p = field.prime();
    for d in 1..=s / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut c = code;
            for slot in div.iter_mut().take(d) {
                *slot = c % p;
                c /= p;
            }
            div[d] = 1;
            if divides(field, &div, q) {
                return false;
            }
        }
    }
    true
}

fn divides(field: &PrimeField, div: &[u64], q: &[u64]) -> bool {
    let mut rem: Vec<u64> = q.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (i, &dc) in div.iter().enumerate().take(d) {
                let idx = top - d + i;
                rem[idx] = field.sub(rem[idx], field.mul(lead, dc));
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_multiplication() {
        let f = PrimeField::new(2).unwrap();
        let r = QuotientRing::power_of_x(f, 2).unwrap();
        let x = r.from_coeffs(&[0, 1]);
        assert!(r.mul(&x, &x).is_zero()); // X^2 = 0 mod X^2
    }

    #[test]
    fn gf4_is_a_field() {
        let f = PrimeField::new(2).unwrap();
        let r = QuotientRing::find_irreducible(f, 2).unwrap();
        assert_eq!(r.size(), 4);
        // X * (X+1) = X^2 + X = 1 mod X^2+X+1
        let x = r.from_coeffs(&[0, 1]);
        let x1 = r.from_coeffs(&[1, 1]);
        assert_eq!(r.mul(&x, &x1), r.one());
    }

    #[test]
    fn rejects_reducible() {
        let f = PrimeField::new(2).unwrap();
        assert!(QuotientRing::irreducible(f, vec![1, 0, 1]).is_err()); // X^2+1 = (X+1)^2
        assert!(QuotientRing::irreducible(f, vec![1, 1, 1]).is_ok());
    }
}
