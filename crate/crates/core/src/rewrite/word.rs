//! Words over an indexed family of staircase subgroups.
//!
//! A letter is a group element together with the index of the subgroup that
//! claims it; the same element may appear under different tags. Letters are
//! cheap to clone (the matrix is shared), so words are plain vectors.

use std::sync::Arc;

use crate::error::RewriteError;
use crate::unipotent::{staircase_member, GroupCtx, MoatSet, UnipotentElement};

/// An indexed subgroup family: subgroup `i` is the staircase subgroup of
/// the single moat `moats[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoatFamily {
    pub ctx: GroupCtx,
    moat_sets: Vec<MoatSet>,
}

impl MoatFamily {
    pub fn new(ctx: GroupCtx, moats: &[usize]) -> Result<Self, RewriteError> {
        let mut moat_sets = Vec::with_capacity(moats.len());
        for &m in moats {
            moat_sets.push(MoatSet::new(ctx.n, &[m]).map_err(RewriteError::Group)?);
        }
        Ok(MoatFamily { ctx, moat_sets })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.moat_sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.moat_sets.is_empty()
    }

    pub fn moat(&self, tag: usize) -> Option<usize> {
        self.moat_sets.get(tag).map(|m| m.moats()[0])
    }

    pub fn member(&self, tag: usize, g: &UnipotentElement) -> Result<bool, RewriteError> {
        let set = self
            .moat_sets
            .get(tag)
            .ok_or(RewriteError::UnknownTag { tag, count: self.moat_sets.len() })?;
        Ok(staircase_member(g, set))
    }

    /// Construct a validated letter.
    pub fn letter(&self, tag: usize, element: UnipotentElement) -> Result<Letter, RewriteError> {
        if element.ctx() != &self.ctx {
            return Err(RewriteError::CtxMismatch);
        }
        if !self.member(tag, &element)? {
            return Err(RewriteError::NotInSubgroup { tag });
        }
        Ok(Letter { element: Arc::new(element), tag })
    }

    pub fn identity_letter(&self, tag: usize) -> Letter {
        Letter { element: Arc::new(self.ctx.identity()), tag }
    }
}

#[derive(Debug, Clone)]
pub struct Letter {
    pub element: Arc<UnipotentElement>,
    pub tag: usize,
}

impl PartialEq for Letter {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.element == other.element
    }
}
impl Eq for Letter {}

impl Letter {
    pub fn inverse(&self) -> Letter {
        Letter { element: Arc::new(self.element.inv()), tag: self.tag }
    }

    pub fn is_identity(&self) -> bool {
        self.element.is_identity()
    }

    /// Same element under a different claimed subgroup.
    pub fn retagged(&self, tag: usize) -> Letter {
        Letter { element: Arc::clone(&self.element), tag }
    }
}

pub type Word = Vec<Letter>;

/// The ordered product of the letters.
pub fn eval(ctx: &GroupCtx, word: &[Letter]) -> Result<UnipotentElement, RewriteError> {
    let mut acc = ctx.identity();
    for l in word {
        if l.element.ctx() != ctx {
            return Err(RewriteError::CtxMismatch);
        }
        acc = acc.mul(&l.element).map_err(RewriteError::Group)?;
    }
    Ok(acc)
}

pub fn is_relator(ctx: &GroupCtx, word: &[Letter]) -> Result<bool, RewriteError> {
    Ok(eval(ctx, word)?.is_identity())
}

/// The inverse word: reversed letters, each inverted (tags kept).
pub fn invert_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}
