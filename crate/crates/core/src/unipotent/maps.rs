//! Retractions onto triangular subgroups, interval shift isomorphisms, and
//! the padding homomorphism built from them.

use crate::algebra::Interval;
use crate::error::GroupError;

use super::element::{GroupCtx, UnipotentElement};
use super::staircase::MoatSet;

/// Retraction of the full group onto the triangular subgroup of `iv`:
/// keep the principal `iv x iv` block, identity elsewhere. For contiguous
/// intervals this matrix operation is the unique homomorphism fixing the
/// subgroup and killing every generator with a leg outside `iv`.
pub fn retract(g: &UnipotentElement, iv: Interval) -> Result<UnipotentElement, GroupError> {
    let ctx = g.ctx();
    if iv.hi > ctx.n {
        return Err(GroupError::NotAnInterval { lo: iv.lo, hi: iv.hi, n: ctx.n });
    }
    let mut out = ctx.identity();
    for i in iv.lo..=iv.hi {
        for j in (i + 1)..=iv.hi {
            out.set_entry(i, j, g.entry(i, j).clone())?;
        }
    }
    Ok(out)
}

/// Index-translation isomorphism from the triangular subgroup of `iv` onto
/// the graded unipotent group on `|iv| - 1`. Errors if `g` has support
/// outside `iv`.
pub fn isom_shift(g: &UnipotentElement, iv: Interval) -> Result<UnipotentElement, GroupError> {
    let ctx = g.ctx();
    if iv.hi > ctx.n || iv.len() < 2 {
        return Err(GroupError::NotAnInterval { lo: iv.lo, hi: iv.hi, n: ctx.n });
    }
    for (i, j) in g.support() {
        if !(iv.contains(i) && iv.contains(j)) {
            return Err(GroupError::SupportOutsideInterval);
        }
    }
    let small = GroupCtx::new(iv.len() - 1, ctx.kappa, ctx.prime())?;
    let mut out = small.identity();
    for i in iv.lo..=iv.hi {
        for j in (i + 1)..=iv.hi {
            out.set_entry(i - iv.lo, j - iv.lo, g.entry(i, j).clone())?;
        }
    }
    Ok(out)
}

/// Inverse of [`isom_shift`]: re-embed an element of the small group at
/// offset `iv.lo` inside the big context.
pub fn unshift(small: &UnipotentElement, big: &GroupCtx, iv: Interval) -> Result<UnipotentElement, GroupError> {
    if iv.hi > big.n || iv.len() != small.ctx().n + 1 {
        return Err(GroupError::NotAnInterval { lo: iv.lo, hi: iv.hi, n: big.n });
    }
    let mut out = big.identity();
    for i in 0..small.ctx().n {
        for j in (i + 1)..=small.ctx().n {
            out.set_entry(i + iv.lo, j + iv.lo, small.entry(i, j).clone())?;
        }
    }
    Ok(out)
}

/// The padding homomorphism: retract onto a window of `n + 1` wires, then
/// shift indices down. It is surjective and carries the staircase subgroup
/// of moat `lo + a` onto the staircase subgroup of moat `a`.
#[derive(Debug, Clone)]
pub struct PaddingHom {
    pub big: GroupCtx,
    pub small: GroupCtx,
    pub window: Interval,
}

pub fn padding_homomorphism(big: &GroupCtx, window: Interval) -> Result<PaddingHom, GroupError> {
    if window.hi > big.n || window.len() < 2 {
        return Err(GroupError::NotAnInterval { lo: window.lo, hi: window.hi, n: big.n });
    }
    let small = GroupCtx::new(window.len() - 1, big.kappa, big.prime())?;
    Ok(PaddingHom { big: *big, small, window })
}

impl PaddingHom {
    pub fn apply(&self, g: &UnipotentElement) -> Result<UnipotentElement, GroupError> {
        let r = retract(g, self.window)?;
        isom_shift(&r, self.window)
    }

    /// Image of the moat index, if it lands strictly inside the window.
    pub fn map_moat(&self, moat: usize) -> Option<usize> {
        (moat > self.window.lo && moat <= self.window.hi).then(|| moat - self.window.lo)
    }

    pub fn map_moat_set(&self, w: &MoatSet) -> MoatSet {
        let mapped: Vec<usize> = w.moats().iter().filter_map(|&m| self.map_moat(m)).collect();
        MoatSet::new(self.small.n, &mapped).expect("mapped moats valid")
    }
}
