//! Transport of derivation certificates along homomorphisms.
//!
//! Mapping every letter of a valid certificate through a homomorphism that
//! carries each source subgroup into the target subgroup of the same index
//! yields a valid certificate with the same step count. The homomorphism
//! property is spot-checked on products drawn from the certificate.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::cert::{DerivationCertificate, Step};
use super::word::{Letter, MoatFamily, Word};
use crate::error::RewriteError;
use crate::unipotent::{GroupCtx, PaddingHom, UnipotentElement};

/// Map a certificate letterwise through `psi`. Step counts are preserved.
/// `spot_checks` random letter pairs are verified for the homomorphism
/// property; a failure aborts with `HomomorphismViolation`.
pub fn transport(
    cert: &DerivationCertificate,
    target: &MoatFamily,
    psi: &dyn Fn(&UnipotentElement) -> Result<UnipotentElement, RewriteError>,
    spot_checks: usize,
    seed: u64,
) -> Result<DerivationCertificate, RewriteError> {
    let map_letter = |l: &Letter| -> Result<Letter, RewriteError> {
        let image = psi(&l.element)?;
        target.letter(l.tag, image)
    };
    let map_word = |w: &Word| -> Result<Word, RewriteError> { w.iter().map(map_letter).collect() };

    // homomorphism spot-check on products of letters appearing anywhere
    let mut pool: Vec<&Letter> = cert.initial.iter().collect();
    for s in &cert.steps {
        if let Step::Apply { remove, insert, .. } = s {
            pool.extend(remove.iter());
            pool.extend(insert.iter());
        }
    }
    if pool.len() >= 2 && spot_checks > 0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..spot_checks {
            let a = pool.choose(&mut rng).unwrap();
            let bl = pool.choose(&mut rng).unwrap();
            let prod = a.element.mul(&bl.element).map_err(RewriteError::Group)?;
            let lhs = psi(&prod)?;
            let rhs = psi(&a.element)?.mul(&psi(&bl.element)?).map_err(RewriteError::Group)?;
            if lhs != rhs {
                return Err(RewriteError::HomomorphismViolation);
            }
        }
    }

    let steps: Result<Vec<Step>, RewriteError> = cert
        .steps
        .iter()
        .map(|s| {
            Ok(match s {
                Step::Apply { pos, remove, insert, tag } => Step::Apply {
                    pos: *pos,
                    remove: map_word(remove)?,
                    insert: map_word(insert)?,
                    tag: *tag,
                },
                Step::Rotate { offset } => Step::Rotate { offset: *offset },
                Step::Invert => Step::Invert,
            })
        })
        .collect();
    Ok(DerivationCertificate {
        family: target.clone(),
        initial: map_word(&cert.initial)?,
        steps: steps?,
        declared_budget: cert.declared_budget,
    })
}

/// Convenience: transport through a padding homomorphism whose window
/// carries each moat of the source family onto the same-index moat of the
/// target family (window must contain all source moats).
pub fn transport_through_padding(
    cert: &DerivationCertificate,
    pad: &PaddingHom,
) -> Result<DerivationCertificate, RewriteError> {
    let source = &cert.family;
    let mut mapped_moats = Vec::with_capacity(source.len());
    for t in 0..source.len() {
        let m = source.moat(t).unwrap();
        let mapped = pad
            .map_moat(m)
            .ok_or_else(|| RewriteError::OracleFailure(format!("moat {m} not inside the window")))?;
        mapped_moats.push(mapped);
    }
    let target = MoatFamily::new(pad.small, &mapped_moats)?;
    transport(cert, &target, &|g| pad.apply(g).map_err(RewriteError::Group), 32, 0x9e3779b9)
}

/// Keep `GroupCtx` in the public signature for callers building targets.
pub fn target_ctx(pad: &PaddingHom) -> GroupCtx {
    pad.small
}
