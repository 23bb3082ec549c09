//! Unit upper-triangular matrices over `F_p[X]` with the degree grading
//! `deg(entry(i, j)) <= kappa * (j - i)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedPoly, Interval, PrimeField, RectMatrix, TriMatrix};
use crate::error::GroupError;

/// Parameters of one graded unipotent group: `n + 1` wires, grading
/// constant `kappa`, field prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupCtx {
    pub n: usize,
    pub kappa: usize,
    field: PrimeField,
}

impl GroupCtx {
    pub fn new(n: usize, kappa: usize, p: u64) -> Result<Self, GroupError> {
        if n < 1 {
            return Err(GroupError::BadIndices { i: 0, j: 0, n });
        }
        if kappa < 1 {
            return Err(GroupError::DegreeTooHigh { degree: 0, cap: 0 });
        }
        Ok(GroupCtx { n, kappa, field: PrimeField::new(p)? })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.field.prime()
    }

    #[inline]
    pub fn wires(&self) -> usize {
        self.n + 1
    }

    #[inline]
    pub fn cap(&self, i: usize, j: usize) -> usize {
        self.kappa * (j - i)
    }

    pub fn full_interval(&self) -> Interval {
        Interval::new(0, self.n).expect("n >= 1")
    }

    pub fn identity(&self) -> UnipotentElement {
        let mut entries = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..=self.n {
                entries.push(GradedPoly::zero(self.cap(i, j)));
            }
        }
        UnipotentElement { ctx: *self, entries }
    }

    /// The graded transvection `e_{i,j}(f)`: identity plus `f` at `(i, j)`.
    pub fn generator(&self, i: usize, j: usize, f: GradedPoly) -> Result<UnipotentElement, GroupError> {
        if i >= j || j > self.n {
            return Err(GroupError::BadIndices { i, j, n: self.n });
        }
        if let Some(d) = f.degree() {
            if d > self.cap(i, j) {
                return Err(GroupError::DegreeTooHigh { degree: d, cap: self.cap(i, j) });
            }
        }
        let mut g = self.identity();
        g.set_entry(i, j, f)?;
        Ok(g)
    }
}

/// A group element, stored as its strict upper part in `(i, j)`-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnipotentElement {
    ctx: GroupCtx,
    entries: Vec<GradedPoly>,
}

#[inline]
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j <= n);
    i * n - i * (i.wrapping_sub(1)) / 2 + (j - i - 1)
}

impl UnipotentElement {
    #[inline]
    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[upper_index(self.ctx.n, i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, f: GradedPoly) -> Result<(), GroupError> {
        let cap = self.ctx.cap(i, j);
        if let Some(d) = f.degree() {
            if d > cap {
                return Err(GroupError::DegreeTooHigh { degree: d, cap });
            }
        }
        let n = self.ctx.n;
        self.entries[upper_index(n, i, j)] = f.with_bound(cap)?;
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact matrix product. Grading of the result is guaranteed by closure
    /// of the graded sets; violations indicate internal corruption.
    pub fn mul(&self, other: &UnipotentElement) -> Result<UnipotentElement, GroupError> {
        if self.ctx != other.ctx {
            return Err(GroupError::CtxMismatch);
        }
        let f = self.ctx.field;
        let n = self.ctx.n;
        let mut out = self.ctx.identity();
        for i in 0..n {
            for j in (i + 1)..=n {
                let cap = self.ctx.cap(i, j);
                let mut acc = self.entry(i, j).add(&f, other.entry(i, j)).map_err(GroupError::Algebra)?;
                for k in (i + 1)..j {
                    if self.entry(i, k).is_zero() || other.entry(k, j).is_zero() {
                        continue;
                    }
                    let term = self.entry(i, k).mul(&f, other.entry(k, j), cap).map_err(GroupError::Algebra)?;
                    acc = acc.add(&f, &term).map_err(GroupError::Algebra)?;
                }
                out.set_entry(i, j, acc)?;
            }
        }
        Ok(out)
    }

    pub fn inv(&self) -> UnipotentElement {
        let f = self.ctx.field;
        let n = self.ctx.n;
        let mut out = self.ctx.identity();
        // height induction: B_{i,j} = -A_{i,j} - sum_{i<k<j} A_{i,k} B_{k,j}
        for h in 1..=n {
            for i in 0..=(n - h) {
                let j = i + h;
                let cap = self.ctx.cap(i, j);
                let mut acc = self.entry(i, j).neg(&f);
                for k in (i + 1)..j {
                    if self.entry(i, k).is_zero() || out.entry(k, j).is_zero() {
                        continue;
                    }
                    let term = self
                        .entry(i, k)
                        .mul(&f, out.entry(k, j), cap)
                        .expect("graded closure");
                    acc = acc.sub(&f, &term).expect("graded closure");
                }
                out.set_entry(i, j, acc).expect("graded closure");
            }
        }
        out
    }

    pub fn commutator(&self, other: &UnipotentElement) -> Result<UnipotentElement, GroupError> {
        // [g, h] = g h g^-1 h^-1, so that gh = [g,h] hg.
        self.mul(other)?.mul(&self.inv())?.mul(&other.inv())
    }

    /// Support test: the set of `(i, j)` with nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let n = self.ctx.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..=n {
                if !self.entry(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Canonical byte encoding: fixed-width coefficient dumps in
    /// `(i, j)`-lex order. Equal elements encode identically.
    pub fn encode_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for e in &self.entries {
            e.write_fixed_width(&mut out);
        }
        out
    }

    pub fn encode_hex(&self) -> String {
        hex::encode(self.encode_bytes())
    }

    /// Embed `I + A` for a triangular block `A` (identity outside).
    pub fn from_tri(ctx: &GroupCtx, a: &TriMatrix) -> Result<UnipotentElement, GroupError> {
        let mut g = ctx.identity();
        for i in a.interval.lo..=a.interval.hi {
            for j in (i + 1)..=a.interval.hi {
                g.set_entry(i, j, a.entry(i, j).clone())?;
            }
        }
        Ok(g)
    }

    /// Embed `I + F` for a rectangular block `F`.
    pub fn from_rect(ctx: &GroupCtx, f: &RectMatrix) -> Result<UnipotentElement, GroupError> {
        let mut g = ctx.identity();
        for i in f.rows.lo..=f.rows.hi {
            for j in f.cols.lo..=f.cols.hi {
                g.set_entry(i, j, f.entry(i, j).clone())?;
            }
        }
        Ok(g)
    }

    /// Extract the triangular block supported on `iv` (other entries ignored).
    pub fn tri_block(&self, iv: Interval) -> TriMatrix {
        let mut a = TriMatrix::zero(self.ctx.field, self.ctx.kappa, iv);
        for i in iv.lo..=iv.hi {
            for j in (i + 1)..=iv.hi {
                a.set_entry(i, j, self.entry(i, j).clone()).expect("grading preserved");
            }
        }
        a
    }

    /// Extract the rectangular block on `rows x cols`.
    pub fn rect_block(&self, rows: Interval, cols: Interval) -> RectMatrix {
        let mut f = RectMatrix::zero(self.ctx.field, self.ctx.kappa, rows, cols).expect("ordered intervals");
        for i in rows.lo..=rows.hi {
            for j in cols.lo..=cols.hi {
                f.set_entry(i, j, self.entry(i, j).clone()).expect("grading preserved");
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedPoly;

    fn ctx() -> GroupCtx {
        GroupCtx::new(2, 1, 3).unwrap()
    }

    #[test]
    fn generator_bounds() {
        let c = GroupCtx::new(3, 1, 2).unwrap();
        let f = c.field();
        let x2 = GradedPoly::from_coeffs(&f, &[0, 0, 1], 2).unwrap();
        assert!(c.generator(0, 2, x2.clone()).is_ok()); // cap 2
        assert!(matches!(c.generator(0, 1, x2), Err(GroupError::DegreeTooHigh { .. })));
        assert!(c.generator(1, 1, GradedPoly::zero(0)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let c = ctx();
        let f = c.field();
        let g = c
            .generator(0, 1, GradedPoly::from_coeffs(&f, &[1, 2], 1).unwrap())
            .unwrap()
            .mul(&c.generator(1, 2, GradedPoly::from_coeffs(&f, &[2, 1], 1).unwrap()).unwrap())
            .unwrap()
            .mul(&c.generator(0, 2, GradedPoly::from_coeffs(&f, &[0, 1, 1], 2).unwrap()).unwrap())
            .unwrap();
        assert!(g.mul(&g.inv()).unwrap().is_identity());
        assert!(g.inv().mul(&g).unwrap().is_identity());
    }

    #[test]
    fn nontrivial_commutator() {
        // [e01(X), e12(X)] = e02(X^2) over F_3, kappa = 1
        let c = ctx();
        let f = c.field();
        let x = GradedPoly::from_coeffs(&f, &[0, 1], 1).unwrap();
        let a = c.generator(0, 1, x.clone()).unwrap();
        let b = c.generator(1, 2, x.clone()).unwrap();
        let comm = a.commutator(&b).unwrap();
        let x2 = GradedPoly::from_coeffs(&f, &[0, 0, 1], 2).unwrap();
        assert_eq!(comm, c.generator(0, 2, x2).unwrap());
    }

    #[test]
    fn linearity_relation() {
        let c = ctx();
        let f = c.field();
        let f1 = GradedPoly::from_coeffs(&f, &[1, 1], 1).unwrap();
        let f2 = GradedPoly::from_coeffs(&f, &[2, 2], 1).unwrap();
        let lhs = c.generator(0, 1, f1.clone()).unwrap().mul(&c.generator(0, 1, f2.clone()).unwrap()).unwrap();
        let rhs = c.generator(0, 1, f1.add(&f, &f2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn encoding_is_injective_on_small_group() {
        let c = GroupCtx::new(2, 1, 2).unwrap();
        let all = crate::unipotent::enumerate_staircase(&c, &crate::unipotent::MoatSet::empty(c.n));
        let mut seen = std::collections::HashSet::new();
        for g in &all {
            assert!(seen.insert(g.encode_bytes()));
        }
        assert_eq!(seen.len(), 128);
    }
}
