//! Graded triangular and rectangular matrix sets over `F_p[X]`.
//!
//! `TriMatrix` holds the strict upper part of a unit upper-triangular block
//! on a contiguous wire interval, entry `(i, j)` capped at degree
//! `kappa * (j - i)`. `RectMatrix` holds an off-diagonal block between two
//! ordered intervals with the same grading. Closure of these sets under the
//! products used here (tri*tri strict part, tri*rect, rect*rect) is what
//! keeps every construction inside the graded group.

use serde::{Deserialize, Serialize};

use super::fp::PrimeField;
use super::poly::GradedPoly;
use crate::error::AlgebraError;

/// Contiguous wire interval `[lo, hi]`, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self, AlgebraError> {
        if lo > hi {
            return Err(AlgebraError::NotAnInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    /// `self` entirely before `other` (`max self < min other`).
    #[inline]
    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}

/// Strict upper-triangular graded block on an interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriMatrix {
    pub field: PrimeField,
    pub kappa: usize,
    pub interval: Interval,
    /// Row-major strict upper entries: `(i, j)` for `lo <= i < j <= hi`,
    /// ordered by `i` then `j`.
    entries: Vec<GradedPoly>,
}

fn tri_index(interval: &Interval, i: usize, j: usize) -> usize {
    debug_assert!(interval.contains(i) && interval.contains(j) && i < j);
    let w = interval.len();
    let r = i - interval.lo;
    let c = j - interval.lo;
    // offset of row r = sum_{t<r} (w-1-t)
    r * (w - 1) - r * (r.wrapping_sub(1)) / 2 + (c - r - 1)
}

impl TriMatrix {
    pub fn zero(field: PrimeField, kappa: usize, interval: Interval) -> Self {
        let w = interval.len();
        let n_entries = w * (w - 1) / 2;
        let mut entries = Vec::with_capacity(n_entries);
        for i in interval.lo..=interval.hi {
            for j in (i + 1)..=interval.hi {
                entries.push(GradedPoly::zero(kappa * (j - i)));
            }
        }
        TriMatrix { field, kappa, interval, entries }
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[tri_index(&self.interval, i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: GradedPoly) -> Result<(), AlgebraError> {
        let cap = self.kappa * (j - i);
        if let Some(d) = value.degree() {
            if d > cap {
                return Err(AlgebraError::BoundViolation { degree: d as isize, bound: cap });
            }
        }
        let idx = tri_index(&self.interval, i, j);
        self.entries[idx] = value.with_bound(cap)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Strict part of `(I + self)(I + other)`, i.e. `self*other + self + other`.
    pub fn tri_product(&self, other: &TriMatrix) -> Result<TriMatrix, AlgebraError> {
        if self.interval != other.interval {
            return Err(AlgebraError::IntervalMismatch);
        }
        let f = self.field;
        let mut out = TriMatrix::zero(f, self.kappa, self.interval);
        for i in self.interval.lo..=self.interval.hi {
            for j in (i + 1)..=self.interval.hi {
                let cap = self.kappa * (j - i);
                let mut acc = self.entry(i, j).add(&f, other.entry(i, j))?;
                for k in (i + 1)..j {
                    let term = self.entry(i, k).mul(&f, other.entry(k, j), cap)?;
                    acc = acc.add(&f, &term)?;
                }
                out.set_entry(i, j, acc.with_bound(cap)?)?;
            }
        }
        Ok(out)
    }

    /// The unique `A'` with `A A' + A + A' = 0`, i.e. `(I+A)(I+A') = I`.
    pub fn dagger(&self) -> TriMatrix {
        let f = self.field;
        let mut out = TriMatrix::zero(f, self.kappa, self.interval);
        // Solve column by column in increasing height: A'_{i,j} = -A_{i,j} - sum_k A_{i,k} A'_{k,j}.
        for h in 1..self.interval.len() {
            for i in self.interval.lo..=(self.interval.hi - h) {
                let j = i + h;
                let cap = self.kappa * h;
                let mut acc = self.entry(i, j).neg(&f);
                for k in (i + 1)..j {
                    let term = self.entry(i, k).mul(&f, out.entry(k, j), cap).expect("graded closure");
                    acc = acc.sub(&f, &term).expect("graded closure");
                }
                out.set_entry(i, j, acc).expect("graded closure");
            }
        }
        out
    }

    pub fn add(&self, other: &TriMatrix) -> Result<TriMatrix, AlgebraError> {
        if self.interval != other.interval {
            return Err(AlgebraError::IntervalMismatch);
        }
        let mut out = TriMatrix::zero(self.field, self.kappa, self.interval);
        for i in self.interval.lo..=self.interval.hi {
            for j in (i + 1)..=self.interval.hi {
                out.set_entry(i, j, self.entry(i, j).add(&self.field, other.entry(i, j))?)?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> TriMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg(&self.field);
        }
        out
    }
}

/// Graded rectangular block between ordered intervals `rows` < `cols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectMatrix {
    pub field: PrimeField,
    pub kappa: usize,
    pub rows: Interval,
    pub cols: Interval,
    /// Row-major entries `(i, j)` for `i` in `rows`, `j` in `cols`.
    entries: Vec<GradedPoly>,
}

impl RectMatrix {
    pub fn zero(field: PrimeField, kappa: usize, rows: Interval, cols: Interval) -> Result<Self, AlgebraError> {
        if !rows.precedes(&cols) {
            return Err(AlgebraError::IntervalMismatch);
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.lo..=rows.hi {
            for j in cols.lo..=cols.hi {
                entries.push(GradedPoly::zero(kappa * (j - i)));
            }
        }
        Ok(RectMatrix { field, kappa, rows, cols, entries })
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(self.rows.contains(i) && self.cols.contains(j));
        (i - self.rows.lo) * self.cols.len() + (j - self.cols.lo)
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[self.index(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: GradedPoly) -> Result<(), AlgebraError> {
        let cap = self.kappa * (j - i);
        if let Some(d) = value.degree() {
            if d > cap {
                return Err(AlgebraError::BoundViolation { degree: d as isize, bound: cap });
            }
        }
        let idx = self.index(i, j);
        self.entries[idx] = value.with_bound(cap)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &RectMatrix) -> Result<RectMatrix, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::IntervalMismatch);
        }
        let mut out = RectMatrix::zero(self.field, self.kappa, self.rows, self.cols)?;
        for i in self.rows.lo..=self.rows.hi {
            for j in self.cols.lo..=self.cols.hi {
                out.set_entry(i, j, self.entry(i, j).add(&self.field, other.entry(i, j))?)?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RectMatrix) -> Result<RectMatrix, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RectMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg(&self.field);
        }
        out
    }

    /// `F * G` for `rows(F) < cols(F) = rows(G) < cols(G)`.
    pub fn rect_mul(&self, other: &RectMatrix) -> Result<RectMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::IntervalMismatch);
        }
        let f = self.field;
        let mut out = RectMatrix::zero(f, self.kappa, self.rows, other.cols)?;
        for i in self.rows.lo..=self.rows.hi {
            for j in other.cols.lo..=other.cols.hi {
                let cap = self.kappa * (j - i);
                let mut acc = GradedPoly::zero(cap);
                for k in self.cols.lo..=self.cols.hi {
                    let term = self.entry(i, k).mul(&f, other.entry(k, j), cap)?;
                    acc = acc.add(&f, &term)?;
                }
                out.set_entry(i, j, acc.with_bound(cap)?)?;
            }
        }
        Ok(out)
    }

    /// `A * F` for triangular `A` on `rows(F)`; returns the graded rectangle.
    pub fn tri_left_mul(&self, a: &TriMatrix) -> Result<RectMatrix, AlgebraError> {
        if a.interval != self.rows {
            return Err(AlgebraError::IntervalMismatch);
        }
        let f = self.field;
        let mut out = RectMatrix::zero(f, self.kappa, self.rows, self.cols)?;
        for i in self.rows.lo..=self.rows.hi {
            for j in self.cols.lo..=self.cols.hi {
                let cap = self.kappa * (j - i);
                let mut acc = GradedPoly::zero(cap);
                for k in (i + 1)..=self.rows.hi {
                    let term = a.entry(i, k).mul(&f, self.entry(k, j), cap)?;
                    acc = acc.add(&f, &term)?;
                }
                out.set_entry(i, j, acc.with_bound(cap)?)?;
            }
        }
        Ok(out)
    }

    /// `F * B` for triangular `B` on `cols(F)`.
    pub fn tri_right_mul(&self, b: &TriMatrix) -> Result<RectMatrix, AlgebraError> {
        if b.interval != self.cols {
            return Err(AlgebraError::IntervalMismatch);
        }
        let f = self.field;
        let mut out = RectMatrix::zero(f, self.kappa, self.rows, self.cols)?;
        for i in self.rows.lo..=self.rows.hi {
            for j in self.cols.lo..=self.cols.hi {
                let cap = self.kappa * (j - i);
                let mut acc = GradedPoly::zero(cap);
                for k in self.cols.lo..j {
                    let term = self.entry(i, k).mul(&f, b.entry(k, j), cap)?;
                    acc = acc.add(&f, &term)?;
                }
                out.set_entry(i, j, acc.with_bound(cap)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale_monomial(&self, c: u64, k: usize) -> Result<RectMatrix, AlgebraError> {
        let f = self.field;
        let mut out = RectMatrix::zero(f, self.kappa, self.rows, self.cols)?;
        for i in self.rows.lo..=self.rows.hi {
            for j in self.cols.lo..=self.cols.hi {
                let cap = self.kappa * (j - i);
                let shifted = self.entry(i, j).scale(&f, c).shift_up(k);
                out.set_entry(i, j, shifted.with_bound(cap)?)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> (PrimeField, usize) {
        (PrimeField::new(3).unwrap(), 1)
    }

    #[test]
    fn tri_product_identity() {
        let (f, k) = ctx();
        let iv = Interval::new(0, 2).unwrap();
        let z = TriMatrix::zero(f, k, iv);
        assert!(z.tri_product(&z).unwrap().is_zero());
    }

    #[test]
    fn two_wire_sum() {
        // single-entry triangles compose additively
        let (f, k) = ctx();
        let iv = Interval::new(0, 1).unwrap();
        let mut a = TriMatrix::zero(f, k, iv);
        a.set_entry(0, 1, GradedPoly::from_coeffs(&f, &[1, 2], 1).unwrap()).unwrap();
        let mut b = TriMatrix::zero(f, k, iv);
        b.set_entry(0, 1, GradedPoly::from_coeffs(&f, &[2, 2], 1).unwrap()).unwrap();
        let c = a.tri_product(&b).unwrap();
        assert_eq!(c.entry(0, 1).coeffs(), &[0, 1]);
    }

    #[test]
    fn order_matters_on_three_wires() {
        let (f, k) = ctx();
        let iv = Interval::new(0, 2).unwrap();
        let fpoly = GradedPoly::from_coeffs(&f, &[1], 1).unwrap();
        let gpoly = GradedPoly::from_coeffs(&f, &[0, 1], 1).unwrap();
        let mut a = TriMatrix::zero(f, k, iv);
        a.set_entry(0, 1, fpoly.clone()).unwrap();
        let mut b = TriMatrix::zero(f, k, iv);
        b.set_entry(1, 2, gpoly.clone()).unwrap();
        let ab = a.tri_product(&b).unwrap();
        let ba = b.tri_product(&a).unwrap();
        // the (0,2) entries differ by f*g
        let fg = fpoly.mul(&f, &gpoly, 2).unwrap();
        assert_eq!(ab.entry(0, 2), &fg);
        assert!(ba.entry(0, 2).is_zero());
    }

    #[test]
    fn dagger_inverts() {
        let (f, k) = ctx();
        let iv = Interval::new(0, 2).unwrap();
        let mut a = TriMatrix::zero(f, k, iv);
        a.set_entry(0, 1, GradedPoly::from_coeffs(&f, &[1, 1], 1).unwrap()).unwrap();
        a.set_entry(1, 2, GradedPoly::from_coeffs(&f, &[2], 1).unwrap()).unwrap();
        a.set_entry(0, 2, GradedPoly::from_coeffs(&f, &[0, 1, 1], 2).unwrap()).unwrap();
        let d = a.dagger();
        assert!(a.tri_product(&d).unwrap().is_zero());
        assert!(d.tri_product(&a).unwrap().is_zero());
    }

    #[test]
    fn three_wire_dagger_closed_form() {
        // (f, g, h) -> (-f, -g, fg - h)
        let (f, k) = ctx();
        let iv = Interval::new(0, 2).unwrap();
        let fp = GradedPoly::from_coeffs(&f, &[2, 1], 1).unwrap();
        let gp = GradedPoly::from_coeffs(&f, &[1, 1], 1).unwrap();
        let hp = GradedPoly::from_coeffs(&f, &[1, 0, 2], 2).unwrap();
        let mut a = TriMatrix::zero(f, k, iv);
        a.set_entry(0, 1, fp.clone()).unwrap();
        a.set_entry(1, 2, gp.clone()).unwrap();
        a.set_entry(0, 2, hp.clone()).unwrap();
        let d = a.dagger();
        assert_eq!(d.entry(0, 1), &fp.neg(&f));
        assert_eq!(d.entry(1, 2), &gp.neg(&f));
        let expect = fp.mul(&f, &gp, 2).unwrap().sub(&f, &hp).unwrap();
        assert_eq!(d.entry(0, 2), &expect);
    }

    #[test]
    fn rect_product_grading() {
        let (f, k) = ctx();
        let i0 = Interval::new(0, 1).unwrap();
        let i1 = Interval::new(2, 3).unwrap();
        let i2 = Interval::new(4, 5).unwrap();
        let mut fm = RectMatrix::zero(f, k, i0, i1).unwrap();
        fm.set_entry(0, 2, GradedPoly::from_coeffs(&f, &[0, 0, 1], 2).unwrap()).unwrap();
        fm.set_entry(1, 3, GradedPoly::from_coeffs(&f, &[1, 1], 2).unwrap()).unwrap();
        let mut gm = RectMatrix::zero(f, k, i1, i2).unwrap();
        gm.set_entry(2, 4, GradedPoly::from_coeffs(&f, &[0, 1], 2).unwrap()).unwrap();
        gm.set_entry(3, 5, GradedPoly::from_coeffs(&f, &[2], 2).unwrap()).unwrap();
        let p = fm.rect_mul(&gm).unwrap();
        // (0,4) = f(0,2)*g(2,4) with cap 4
        let expect = fm.entry(0, 2).mul(&f, gm.entry(2, 4), 4).unwrap();
        assert_eq!(p.entry(0, 4), &expect);
    }
}
