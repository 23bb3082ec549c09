//! Derivation certificates and their replay checker.
//!
//! A certificate reduces a relator to the empty word. Counted steps replace
//! a contiguous subword `u` by `v` where all elements of `u` and `v` lie in
//! the single subgroup named by the step, `eval(u) = eval(v)`, and
//! `|u| + |v| <= 3` (the implied relator `u v^-1` is an in-subgroup relator
//! of length at most 3). Rotation and inversion are free moves and are not
//! counted. Matching of `u` against the current word compares elements; the
//! step's tag is the membership claim for the letters it touches.

use serde::{Deserialize, Serialize};

use super::word::{eval, invert_word, Letter, MoatFamily, Word};
use crate::error::RewriteError;
use crate::unipotent::{GroupCtx, UnipotentElement};

#[derive(Debug, Clone)]
pub enum Step {
    /// Replace `remove` at `pos` by `insert`; all letters claimed by `tag`.
    Apply { pos: usize, remove: Word, insert: Word, tag: usize },
    /// Rotate the word left by `offset` (`u v ~ v u`).
    Rotate { offset: usize },
    /// Replace the word by its inverse (`x ~ x^-1`).
    Invert,
}

#[derive(Debug, Clone)]
pub struct DerivationCertificate {
    pub family: MoatFamily,
    pub initial: Word,
    pub steps: Vec<Step>,
    /// Claimed upper bound on counted steps, if any.
    pub declared_budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid { steps: u64 },
    Invalid { step_index: usize, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

pub fn count_applies(steps: &[Step]) -> u64 {
    steps.iter().filter(|s| matches!(s, Step::Apply { .. })).count() as u64
}

/// Replay a certificate. Never panics on malformed input; all failures are
/// reported in the verdict.
pub fn check_certificate(cert: &DerivationCertificate) -> Verdict {
    let ctx = &cert.family.ctx;
    // Initial word letters must respect their claimed subgroups.
    for (k, l) in cert.initial.iter().enumerate() {
        match cert.family.member(l.tag, &l.element) {
            Ok(true) => {}
            _ => {
                return Verdict::Invalid {
                    step_index: 0,
                    reason: format!("initial letter {k} not in its claimed subgroup (tag {})", l.tag),
                }
            }
        }
    }
    match eval(ctx, &cert.initial) {
        Ok(e) if e.is_identity() => {}
        Ok(_) => {
            return Verdict::Invalid { step_index: 0, reason: "initial word is not a relator".into() }
        }
        Err(e) => return Verdict::Invalid { step_index: 0, reason: e.to_string() },
    }

    let mut word: Word = cert.initial.clone();
    let mut counted = 0u64;
    for (idx, step) in cert.steps.iter().enumerate() {
        match step {
            Step::Rotate { offset } => {
                if word.is_empty() {
                    continue;
                }
                let k = offset % word.len();
                word.rotate_left(k);
            }
            Step::Invert => {
                word = invert_word(&word);
            }
            Step::Apply { pos, remove, insert, tag } => {
                counted += 1;
                if let Err(reason) = apply_step(&cert.family, &mut word, *pos, remove, insert, *tag) {
                    return Verdict::Invalid { step_index: idx, reason };
                }
            }
        }
    }
    if !word.is_empty() {
        return Verdict::Invalid {
            step_index: cert.steps.len(),
            reason: format!("final word has {} letters, expected empty", word.len()),
        };
    }
    if let Some(budget) = cert.declared_budget {
        if counted > budget {
            return Verdict::Invalid {
                step_index: cert.steps.len(),
                reason: format!("counted {counted} steps exceeds declared budget {budget}"),
            };
        }
    }
    Verdict::Valid { steps: counted }
}

fn apply_step(
    family: &MoatFamily,
    word: &mut Word,
    pos: usize,
    remove: &[Letter],
    insert: &[Letter],
    tag: usize,
) -> Result<(), String> {
    let ctx = &family.ctx;
    if remove.len() + insert.len() > 3 {
        return Err(format!("relator too long: |u| + |v| = {}", remove.len() + insert.len()));
    }
    if pos + remove.len() > word.len() {
        return Err(format!("position {pos} out of range for word of length {}", word.len()));
    }
    // match by element
    for (k, r) in remove.iter().enumerate() {
        if word[pos + k].element != r.element {
            return Err(format!("removed subword mismatch at offset {k}"));
        }
    }
    // every touched element must lie in the claimed subgroup
    for l in remove.iter().chain(insert.iter()) {
        match family.member(tag, &l.element) {
            Ok(true) => {}
            Ok(false) => return Err(format!("letter not in subgroup tag {tag}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    // inserted letters must also satisfy their own stored claims
    for l in insert {
        match family.member(l.tag, &l.element) {
            Ok(true) => {}
            _ => return Err(format!("inserted letter invalid under its stored tag {}", l.tag)),
        }
    }
    let eu = eval(ctx, remove).map_err(|e| e.to_string())?;
    let ev = eval(ctx, insert).map_err(|e| e.to_string())?;
    if eu != ev {
        return Err("eval(u) != eval(v)".into());
    }
    word.splice(pos..pos + remove.len(), insert.iter().cloned());
    Ok(())
}

/// Evaluate the implied relator of an equation certificate: `lhs . rhs^-1`.
pub fn equation_relator(lhs: &[Letter], rhs: &[Letter]) -> Word {
    let mut w = lhs.to_vec();
    w.extend(invert_word(rhs));
    w
}

/// Quick structural summary used by reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertStats {
    pub initial_len: usize,
    pub steps: u64,
    pub free_moves: u64,
}

pub fn cert_stats(cert: &DerivationCertificate) -> CertStats {
    CertStats {
        initial_len: cert.initial.len(),
        steps: count_applies(&cert.steps),
        free_moves: cert.steps.len() as u64 - count_applies(&cert.steps),
    }
}

/// Serializable certificate file (schema `cert/1`): element blobs are hex
/// encodings of the canonical byte form, deduplicated in a table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    pub n: usize,
    pub kappa: usize,
    pub p: u64,
    pub moats: Vec<usize>,
    pub elements: Vec<String>,
    pub initial: Vec<(usize, usize)>,
    pub steps: Vec<StepFile>,
    pub declared_budget: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum StepFile {
    Apply { pos: usize, remove: Vec<(usize, usize)>, insert: Vec<(usize, usize)>, tag: usize },
    Rotate { offset: usize },
    Invert,
}

impl CertificateFile {
    pub fn from_certificate(cert: &DerivationCertificate) -> Self {
        let mut elements: Vec<String> = Vec::new();
        let mut index: std::collections::HashMap<Vec<u8>, usize> = std::collections::HashMap::new();
        let mut encode = |l: &Letter| -> (usize, usize) {
            let bytes = l.element.encode_bytes();
            let id = *index.entry(bytes.clone()).or_insert_with(|| {
                elements.push(hex::encode(&bytes));
                elements.len() - 1
            });
            (id, l.tag)
        };
        let initial: Vec<_> = cert.initial.iter().map(&mut encode).collect();
        let steps: Vec<StepFile> = cert
            .steps
            .iter()
            .map(|s| match s {
                Step::Apply { pos, remove, insert, tag } => StepFile::Apply {
                    pos: *pos,
                    remove: remove.iter().map(&mut encode).collect(),
                    insert: insert.iter().map(&mut encode).collect(),
                    tag: *tag,
                },
                Step::Rotate { offset } => StepFile::Rotate { offset: *offset },
                Step::Invert => StepFile::Invert,
            })
            .collect();
        let moats: Vec<usize> = (0..cert.family.len()).map(|t| cert.family.moat(t).unwrap()).collect();
        CertificateFile {
            schema: "cert/1".into(),
            n: cert.family.ctx.n,
            kappa: cert.family.ctx.kappa,
            p: cert.family.ctx.prime(),
            moats,
            elements,
            initial,
            steps,
            declared_budget: cert.declared_budget,
        }
    }

    pub fn to_certificate(&self) -> Result<DerivationCertificate, RewriteError> {
        let ctx = GroupCtx::new(self.n, self.kappa, self.p).map_err(RewriteError::Group)?;
        let family = MoatFamily::new(ctx, &self.moats)?;
        let mut decoded: Vec<UnipotentElement> = Vec::with_capacity(self.elements.len());
        for h in &self.elements {
            let bytes = hex::decode(h)
                .map_err(|e| RewriteError::BadRewrite { pos: 0, reason: format!("bad hex: {e}") })?;
            decoded.push(decode_element(&ctx, &bytes)?);
        }
        let fetch = |(id, tag): &(usize, usize)| -> Result<Letter, RewriteError> {
            let element = decoded
                .get(*id)
                .cloned()
                .ok_or(RewriteError::BadRewrite { pos: *id, reason: "element id out of range".into() })?;
            Ok(Letter { element: std::sync::Arc::new(element), tag: *tag })
        };
        let initial: Result<Word, _> = self.initial.iter().map(fetch).collect();
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            steps.push(match s {
                StepFile::Apply { pos, remove, insert, tag } => Step::Apply {
                    pos: *pos,
                    remove: remove.iter().map(fetch).collect::<Result<_, _>>()?,
                    insert: insert.iter().map(fetch).collect::<Result<_, _>>()?,
                    tag: *tag,
                },
                StepFile::Rotate { offset } => Step::Rotate { offset: *offset },
                StepFile::Invert => Step::Invert,
            });
        }
        Ok(DerivationCertificate {
            family,
            initial: initial?,
            steps,
            declared_budget: self.declared_budget,
        })
    }
}

/// Inverse of [`UnipotentElement::encode_bytes`].
pub fn decode_element(ctx: &GroupCtx, bytes: &[u8]) -> Result<UnipotentElement, RewriteError> {
    let mut g = ctx.identity();
    let mut off = 0usize;
    let f = ctx.field();
    for i in 0..ctx.n {
        for j in (i + 1)..=ctx.n {
            let width = ctx.cap(i, j) + 1;
            let mut coeffs = Vec::with_capacity(width);
            for _ in 0..width {
                if off + 8 > bytes.len() {
                    return Err(RewriteError::BadRewrite { pos: off, reason: "element blob truncated".into() });
                }
                coeffs.push(u64::from_le_bytes(bytes[off..off + 8].try_into().unwrap()));
                off += 8;
            }
            let poly = crate::algebra::GradedPoly::from_coeffs(&f, &coeffs, ctx.cap(i, j))
                .map_err(|e| RewriteError::BadRewrite { pos: off, reason: e.to_string() })?;
            g.set_entry(i, j, poly).map_err(RewriteError::Group)?;
        }
    }
    if off != bytes.len() {
        return Err(RewriteError::BadRewrite { pos: off, reason: "element blob has trailing bytes".into() });
    }
    Ok(g)
}
