//! Verified construction of derivations.
//!
//! `RewriteBuilder` turns a word into another by counted in-subgroup steps,
//! validating each step as it is recorded; the result is an `EquationCert`
//! (a reusable proof that `lhs ≡ rhs`). Sub-proofs embed positionally, so
//! every equation built here is rotation-free and can be replayed inside
//! any enclosing word.

use super::cert::{DerivationCertificate, Step};
use super::word::{eval, invert_word, Letter, MoatFamily, Word};
use crate::error::RewriteError;

/// A verified rewrite `lhs ≡ rhs` consisting of Apply steps only.
#[derive(Debug, Clone)]
pub struct EquationCert {
    pub lhs: Word,
    pub rhs: Word,
    pub steps: Vec<Step>,
}

impl EquationCert {
    pub fn count(&self) -> u64 {
        self.steps.len() as u64
    }

    /// The reverse rewrite `rhs ≡ lhs`.
    pub fn reversed(&self) -> EquationCert {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::Apply { pos, remove, insert, tag } => Step::Apply {
                    pos: *pos,
                    remove: insert.clone(),
                    insert: remove.clone(),
                    tag: *tag,
                },
                _ => unreachable!("equation certs contain Apply steps only"),
            })
            .collect();
        EquationCert { lhs: self.rhs.clone(), rhs: self.lhs.clone(), steps }
    }

    /// Compose with a rewrite whose `lhs` matches this one's `rhs`.
    pub fn then(&self, other: &EquationCert) -> Result<EquationCert, RewriteError> {
        if self.rhs.len() != other.lhs.len()
            || self.rhs.iter().zip(&other.lhs).any(|(a, b)| a.element != b.element)
        {
            return Err(RewriteError::BadRewrite { pos: 0, reason: "composition mismatch".into() });
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(EquationCert { lhs: self.lhs.clone(), rhs: other.rhs.clone(), steps })
    }

    /// The rewrite conjugated by word inversion: proves
    /// `invert(lhs) ≡ invert(rhs)` by mirrored steps.
    pub fn inverted(&self) -> EquationCert {
        let mut len = self.lhs.len();
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Apply { pos, remove, insert, tag } => {
                    let mirrored = Step::Apply {
                        pos: len - pos - remove.len(),
                        remove: invert_word(remove),
                        insert: invert_word(insert),
                        tag: *tag,
                    };
                    len = len - remove.len() + insert.len();
                    mirrored
                }
                _ => unreachable!("equation certs contain Apply steps only"),
            })
            .collect();
        EquationCert { lhs: invert_word(&self.lhs), rhs: invert_word(&self.rhs), steps }
    }

    /// Certificate for the relator `lhs . rhs^-1 => empty`.
    pub fn into_certificate(self, family: &MoatFamily) -> Result<DerivationCertificate, RewriteError> {
        let initial: Word = {
            let mut w = self.lhs.clone();
            w.extend(invert_word(&self.rhs));
            w
        };
        let mut b = RewriteBuilder::new(family, initial.clone());
        b.embed(0, &self)?;
        // now rhs . rhs^-1: cancel from the middle out
        let mut mid = self.rhs.len();
        while mid > 0 {
            b.delete_pair(mid - 1)?;
            mid -= 1;
        }
        if !b.is_empty() {
            return Err(RewriteError::BadRewrite { pos: 0, reason: "residue after cancellation".into() });
        }
        Ok(DerivationCertificate { family: family.clone(), initial, steps: b.steps, declared_budget: None })
    }
}

/// Incremental, verified rewriting of a working word.
#[derive(Debug, Clone)]
pub struct RewriteBuilder {
    pub family: MoatFamily,
    lhs: Word,
    word: Word,
    pub(crate) steps: Vec<Step>,
}

impl RewriteBuilder {
    pub fn new(family: &MoatFamily, lhs: Word) -> Self {
        RewriteBuilder { family: family.clone(), word: lhs.clone(), lhs, steps: Vec::new() }
    }

    #[inline]
    pub fn word(&self) -> &Word {
        &self.word
    }

    #[inline]
    pub fn letter(&self, pos: usize) -> &Letter {
        &self.word[pos]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps.len() as u64
    }

    pub fn finish(self) -> EquationCert {
        EquationCert { lhs: self.lhs, rhs: self.word, steps: self.steps }
    }

    pub fn into_certificate(self) -> Result<DerivationCertificate, RewriteError> {
        if !self.word.is_empty() {
            return Err(RewriteError::BadRewrite { pos: 0, reason: "word not reduced to empty".into() });
        }
        Ok(DerivationCertificate {
            family: self.family.clone(),
            initial: self.lhs,
            steps: self.steps,
            declared_budget: None,
        })
    }

    /// Core verified step: replace `remove_len` letters at `pos` by `insert`,
    /// claiming subgroup `tag` for everything touched.
    pub fn apply(
        &mut self,
        pos: usize,
        remove_len: usize,
        insert: Word,
        tag: usize,
    ) -> Result<(), RewriteError> {
        let ctx = self.family.ctx;
        if pos + remove_len > self.word.len() {
            return Err(RewriteError::BadRewrite { pos, reason: "out of range".into() });
        }
        if remove_len + insert.len() > 3 {
            return Err(RewriteError::BadRewrite {
                pos,
                reason: format!("|u| + |v| = {} > 3", remove_len + insert.len()),
            });
        }
        let remove: Word = self.word[pos..pos + remove_len].to_vec();
        for l in remove.iter().chain(insert.iter()) {
            if !self.family.member(tag, &l.element)? {
                return Err(RewriteError::NotInSubgroup { tag });
            }
        }
        for l in &insert {
            if !self.family.member(l.tag, &l.element)? {
                return Err(RewriteError::NotInSubgroup { tag: l.tag });
            }
        }
        let eu = eval(&ctx, &remove)?;
        let ev = eval(&ctx, &insert)?;
        if eu != ev {
            return Err(RewriteError::BadRewrite { pos, reason: "eval mismatch".into() });
        }
        self.word.splice(pos..pos + remove_len, insert.iter().cloned());
        self.steps.push(Step::Apply { pos, remove, insert, tag });
        Ok(())
    }

    /// Rewrite `word[pos .. pos+len]` into `target` entirely inside subgroup
    /// `tag`: merge the source down to one letter, then split out the target.
    /// Every intermediate letter is a product of `H_tag` elements, hence
    /// stays in `H_tag`. Cost: at most `len + |target|` steps.
    pub fn in_subgroup_eq(
        &mut self,
        pos: usize,
        len: usize,
        target: Word,
        tag: usize,
    ) -> Result<(), RewriteError> {
        let ctx = self.family.ctx;
        if pos + len > self.word.len() {
            return Err(RewriteError::BadRewrite { pos, reason: "out of range".into() });
        }
        if self.word[pos..pos + len]
            .iter()
            .map(|l| &l.element)
            .eq(target.iter().map(|l| &l.element))
        {
            // element-identical: refresh the tag annotations without a step
            self.word.splice(pos..pos + len, target.iter().cloned());
            return Ok(());
        }
        let source_eval = eval(&ctx, &self.word[pos..pos + len])?;
        let target_eval = eval(&ctx, &target)?;
        if source_eval != target_eval {
            return Err(RewriteError::BadRewrite { pos, reason: "in-subgroup eval mismatch".into() });
        }
        // collapse the source to a single letter
        let mut remaining = len;
        if remaining == 0 {
            let id = self.family.identity_letter(tag);
            self.apply(pos, 0, vec![id], tag)?;
            remaining = 1;
        }
        while remaining > 1 {
            let merged = self.word[pos]
                .element
                .mul(&self.word[pos + 1].element)
                .map_err(RewriteError::Group)?;
            let letter = self.family.letter(tag, merged)?;
            self.apply(pos, 2, vec![letter], tag)?;
            remaining -= 1;
        }
        // expand into the target
        if target.is_empty() {
            return self.apply(pos, 1, Vec::new(), tag);
        }
        let mut residue = source_eval;
        for (k, t) in target.iter().enumerate() {
            if k + 1 == target.len() {
                if self.word[pos + k].element == t.element {
                    self.word[pos + k] = t.clone();
                } else {
                    self.apply(pos + k, 1, vec![t.clone()], tag)?;
                }
            } else {
                let rest = t.element.inv().mul(&residue).map_err(RewriteError::Group)?;
                let rest_letter = self.family.letter(tag, rest.clone())?;
                self.apply(pos + k, 1, vec![t.clone(), rest_letter], tag)?;
                residue = rest;
            }
        }
        Ok(())
    }

    /// Swap two adjacent letters that commute and share the subgroup `tag`.
    pub fn swap_in_subgroup(&mut self, pos: usize, tag: usize) -> Result<(), RewriteError> {
        let a = self.word[pos].clone();
        let b = self.word[pos + 1].clone();
        self.in_subgroup_eq(pos, 2, vec![b, a], tag)
    }

    /// `[g][g^-1] -> e` in one step (claimed by `g`'s stored tag).
    pub fn delete_pair(&mut self, pos: usize) -> Result<(), RewriteError> {
        let tag = self.word[pos].tag;
        self.apply(pos, 2, Vec::new(), tag)
    }

    /// `e -> [g][g^-1]` in one step.
    pub fn insert_pair(&mut self, pos: usize, letter: Letter) -> Result<(), RewriteError> {
        let inv = letter.inverse();
        let tag = letter.tag;
        self.apply(pos, 0, vec![letter, inv], tag)
    }

    /// `e -> [g^-1][g]` in one step.
    pub fn insert_pair_inv_first(&mut self, pos: usize, letter: Letter) -> Result<(), RewriteError> {
        let inv = letter.inverse();
        let tag = letter.tag;
        self.apply(pos, 0, vec![inv, letter], tag)
    }

    pub fn delete_identity(&mut self, pos: usize) -> Result<(), RewriteError> {
        let tag = self.word[pos].tag;
        self.apply(pos, 1, Vec::new(), tag)
    }

    /// Replay a previously-built equation at `pos` (matching by element).
    pub fn embed(&mut self, pos: usize, eq: &EquationCert) -> Result<(), RewriteError> {
        if pos + eq.lhs.len() > self.word.len() {
            return Err(RewriteError::BadRewrite { pos, reason: "embed out of range".into() });
        }
        for (k, l) in eq.lhs.iter().enumerate() {
            if self.word[pos + k].element != l.element {
                return Err(RewriteError::BadRewrite {
                    pos,
                    reason: format!("embed lhs mismatch at offset {k}"),
                });
            }
        }
        for s in &eq.steps {
            match s {
                Step::Apply { pos: p, remove, insert, tag } => {
                    self.apply(pos + p, remove.len(), insert.clone(), *tag)?;
                }
                _ => {
                    return Err(RewriteError::BadRewrite {
                        pos,
                        reason: "cannot embed a certificate with free moves".into(),
                    })
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::cert::{check_certificate, Verdict};
    use crate::unipotent::GroupCtx;

    fn family() -> MoatFamily {
        let ctx = GroupCtx::new(3, 1, 2).unwrap();
        MoatFamily::new(ctx, &[1, 2, 3]).unwrap()
    }

    fn gen(f: &MoatFamily, tag: usize, i: usize, j: usize, coeffs: &[u64]) -> Letter {
        let fld = f.ctx.field();
        let poly = crate::algebra::GradedPoly::from_coeffs(&fld, coeffs, f.ctx.cap(i, j)).unwrap();
        f.letter(tag, f.ctx.generator(i, j, poly).unwrap()).unwrap()
    }

    #[test]
    fn single_cancellation_certificate() {
        let fam = family();
        let g = gen(&fam, 0, 1, 2, &[1, 1]);
        let word = vec![g.clone(), g.inverse()];
        let mut b = RewriteBuilder::new(&fam, word);
        b.delete_pair(0).unwrap();
        let cert = b.into_certificate().unwrap();
        assert_eq!(check_certificate(&cert), Verdict::Valid { steps: 1 });
    }

    #[test]
    fn in_subgroup_merge_split_roundtrip() {
        let fam = family();
        let a = gen(&fam, 0, 1, 2, &[1]);
        let b = gen(&fam, 0, 2, 3, &[0, 1]);
        // a and b do not commute; rewrite [a][b] into the merged single letter
        let merged = fam.letter(0, a.element.mul(&b.element).unwrap()).unwrap();
        let mut rb = RewriteBuilder::new(&fam, vec![a.clone(), b.clone()]);
        rb.in_subgroup_eq(0, 2, vec![merged.clone()], 0).unwrap();
        assert_eq!(rb.word().len(), 1);
        // and split back
        rb.in_subgroup_eq(0, 1, vec![a.clone(), b.clone()], 0).unwrap();
        let eq = rb.finish();
        assert_eq!(eq.rhs, vec![a, b]);
    }

    #[test]
    fn swap_commuting_letters() {
        let fam = family();
        // e_{0,1} and e_{2,3} commute, both avoid moat 2 (tag 1)
        let a = gen(&fam, 1, 0, 1, &[1, 1]);
        let b = gen(&fam, 1, 2, 3, &[1]);
        let mut rb = RewriteBuilder::new(&fam, vec![a.clone(), b.clone()]);
        rb.swap_in_subgroup(0, 1).unwrap();
        assert_eq!(rb.word()[0].element, b.element);
        assert_eq!(rb.word()[1].element, a.element);
        assert_eq!(rb.steps_taken(), 2);
    }

    #[test]
    fn equation_into_certificate_checks() {
        let fam = family();
        let a = gen(&fam, 0, 1, 2, &[1]);
        let b = gen(&fam, 0, 1, 3, &[1, 0, 1]);
        let merged = fam.letter(0, a.element.mul(&b.element).unwrap()).unwrap();
        let mut rb = RewriteBuilder::new(&fam, vec![a, b]);
        rb.in_subgroup_eq(0, 2, vec![merged], 0).unwrap();
        let eq = rb.finish();
        let cert = eq.into_certificate(&fam).unwrap();
        assert!(check_certificate(&cert).is_valid());
    }

    #[test]
    fn tampered_certificate_rejected() {
        let fam = family();
        let g = gen(&fam, 0, 1, 2, &[1, 1]);
        let h = gen(&fam, 0, 1, 2, &[1]);
        let word = vec![g.clone(), g.inverse()];
        let mut b = RewriteBuilder::new(&fam, word);
        b.delete_pair(0).unwrap();
        let mut cert = b.into_certificate().unwrap();
        // corrupt: claim a different removal
        if let Step::Apply { insert, .. } = &mut cert.steps[0] {
            insert.push(h);
        }
        assert!(!check_certificate(&cert).is_valid());
    }
}
