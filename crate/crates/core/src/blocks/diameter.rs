//! The diameter word: a short word over the two staircase subgroups
//! evaluating to an arbitrary group element.
//!
//! The element splits into band blocks; everything but the type-P part is
//! two letters, and the type-P part becomes commutators of basic F- and
//! G-blocks through a fresh middle anchor. The recorded length depends only
//! on the block structure, never on the field.

use super::bands::band_decompose;
use super::blockmat::{decompose_rect, express_p_as_fg, BlockType};
use super::cfg::MoatConfig;
use crate::error::BlockError;
use crate::rewrite::{eval, Letter, MoatFamily, Word};
use crate::unipotent::UnipotentElement;

/// Tags into the two-subgroup family: tag 0 avoids the first moat, tag 1
/// the second.
const TAG_GU_A: usize = 0;
const TAG_GU_B: usize = 1;

/// Build a word over `{GU_A, GU_B}` evaluating to `g`. Evaluation is
/// verified before returning.
pub fn diameter_word(
    cfg: &MoatConfig,
    family: &MoatFamily,
    g: &UnipotentElement,
) -> Result<Word, BlockError> {
    if cfg.is_three_moat() {
        return Err(BlockError::CfgViolation("diameter words use the two-moat layout".into()));
    }
    let ctx = family.ctx;
    let bands = band_decompose(cfg, &ctx, g)?;
    let mut word: Word = Vec::new();

    // |A| |B| |C| |F| collapses into one GU_B letter
    let mut left = UnipotentElement::from_tri(&ctx, &bands.a).map_err(BlockError::Group)?;
    for tri in [&bands.b, &bands.c] {
        left = left
            .mul(&UnipotentElement::from_tri(&ctx, tri).map_err(BlockError::Group)?)
            .map_err(BlockError::Group)?;
    }
    left = left
        .mul(&UnipotentElement::from_rect(&ctx, &bands.f).map_err(BlockError::Group)?)
        .map_err(BlockError::Group)?;
    if !left.is_identity() {
        word.push(family.letter(TAG_GU_B, left).map_err(BlockError::Rewrite)?);
    }

    // |G| is one GU_A letter
    if !bands.g.is_zero() {
        let gel = UnipotentElement::from_rect(&ctx, &bands.g).map_err(BlockError::Group)?;
        word.push(family.letter(TAG_GU_A, gel).map_err(BlockError::Rewrite)?);
    }

    // |P| expands into commutators of basic blocks
    for p_block in decompose_rect(cfg, BlockType::P, &bands.p)? {
        let (f_spec, g_spec) = express_p_as_fg(cfg, &p_block)?;
        // sanity: the block product must reproduce the P block exactly
        let prod = f_spec
            .block_mul(&g_spec, cfg)?
            .ok_or_else(|| BlockError::ConstructionGap("F * G vanished".into()))?;
        if prod.to_rect(cfg)? != p_block.to_rect(cfg)? {
            return Err(BlockError::ConstructionGap("F * G != P".into()));
        }
        let fe = f_spec.to_element(cfg, &ctx)?;
        let ge = g_spec.to_element(cfg, &ctx)?;
        word.push(family.letter(TAG_GU_B, fe.clone()).map_err(BlockError::Rewrite)?);
        word.push(family.letter(TAG_GU_A, ge.clone()).map_err(BlockError::Rewrite)?);
        word.push(family.letter(TAG_GU_B, fe.inv()).map_err(BlockError::Rewrite)?);
        word.push(family.letter(TAG_GU_A, ge.inv()).map_err(BlockError::Rewrite)?);
    }

    let value = eval(&ctx, &word).map_err(BlockError::Rewrite)?;
    if &value != g {
        return Err(BlockError::ConstructionGap("diameter word does not evaluate to g".into()));
    }
    Ok(word)
}

/// The structural length of a diameter word, a function of the block
/// pattern only; used to assert field-obliviousness.
pub fn word_length(word: &[Letter]) -> usize {
    word.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedPoly;
    use crate::unipotent::GroupCtx;
    use rand::{Rng, SeedableRng};

    fn random_element(ctx: &GroupCtx, rng: &mut impl Rng) -> UnipotentElement {
        let f = ctx.field();
        let mut g = ctx.identity();
        for i in 0..ctx.n {
            for j in (i + 1)..=ctx.n {
                let cap = ctx.cap(i, j);
                let coeffs: Vec<u64> = (0..=cap).map(|_| rng.gen_range(0..ctx.prime())).collect();
                g.set_entry(i, j, GradedPoly::from_coeffs(&f, &coeffs, cap).unwrap()).unwrap();
            }
        }
        g
    }

    #[test]
    fn identity_gives_empty_word() {
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        let family = cfg.family(1, 2).unwrap();
        let w = diameter_word(&cfg, &family, &family.ctx.identity()).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn subgroup_member_gives_single_letter() {
        // an element of GU_A decomposes without F or P parts
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        let family = cfg.family(1, 2).unwrap();
        let ctx = family.ctx;
        let f = ctx.field();
        let g = ctx
            .generator(3, 5, GradedPoly::from_coeffs(&f, &[1, 1], 2).unwrap())
            .unwrap()
            .mul(&ctx.generator(0, 1, GradedPoly::from_coeffs(&f, &[1], 1).unwrap()).unwrap())
            .unwrap();
        let w = diameter_word(&cfg, &family, &g).unwrap();
        assert!(w.len() <= 2);
    }

    #[test]
    fn random_elements_evaluate_and_lengths_are_field_oblivious() {
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        let mut lengths: Option<Vec<usize>> = None;
        for p in [2u64, 3, 5] {
            let family = cfg.family(1, p).unwrap();
            let ctx = family.ctx;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
            let mut ls = Vec::new();
            for _ in 0..10 {
                // force full-support elements so the block pattern is maximal
                let mut g = random_element(&ctx, &mut rng);
                for i in 0..ctx.n {
                    for j in (i + 1)..=ctx.n {
                        if g.entry(i, j).is_zero() {
                            g.set_entry(i, j, GradedPoly::one(ctx.cap(i, j))).unwrap();
                        }
                    }
                }
                let w = diameter_word(&cfg, &family, &g).unwrap();
                ls.push(w.len());
            }
            match &lengths {
                None => lengths = Some(ls),
                Some(prev) => assert_eq!(prev, &ls, "lengths differ at p = {p}"),
            }
        }
    }
}
