//! Band decomposition of group elements.
//!
//! Every element factors uniquely as the ordered product of its band
//! blocks: diagonal triangles first (A, B, C, D), then the off-diagonal
//! rectangles by increasing reach (F, G, H, P, Q, Z). The extraction
//! inverts that product shape exactly and is verified by reconstruction.

use super::cfg::MoatConfig;
use crate::algebra::{RectMatrix, TriMatrix};
use crate::error::BlockError;
use crate::unipotent::{GroupCtx, UnipotentElement};

/// The ten blocks of the three-moat shape (F..Z unused bands stay `None`
/// in the two-moat shape).
#[derive(Debug, Clone)]
pub struct BandDecomposition {
    pub a: TriMatrix,
    pub b: TriMatrix,
    pub c: TriMatrix,
    pub d: Option<TriMatrix>,
    pub f: RectMatrix,
    pub g: RectMatrix,
    pub h: Option<RectMatrix>,
    pub p: RectMatrix,
    pub q: Option<RectMatrix>,
    pub z: Option<RectMatrix>,
}

fn with_dagger_applied(tri: &TriMatrix, rect: &RectMatrix) -> Result<RectMatrix, BlockError> {
    // (I + tri^dagger) * rect = rect + tri^dagger * rect
    let dag = tri.dagger();
    rect.tri_left_mul(&dag).and_then(|t| t.add(rect)).map_err(BlockError::Algebra)
}

/// Extract the band blocks of `g` with respect to `cfg`.
pub fn band_decompose(
    cfg: &MoatConfig,
    ctx: &GroupCtx,
    g: &UnipotentElement,
) -> Result<BandDecomposition, BlockError> {
    let ia = cfg.band_a();
    let ib = cfg.band_b();
    let ic = cfg.band_c();
    let a = g.tri_block(ia);
    let b = g.tri_block(ib);
    let c = g.tri_block(ic);
    let f = with_dagger_applied(&a, &g.rect_block(ia, ib))?;
    let g_blk = with_dagger_applied(&b, &g.rect_block(ib, ic))?;
    let fg = f.rect_mul(&g_blk).map_err(BlockError::Algebra)?;
    let p = with_dagger_applied(&a, &g.rect_block(ia, ic))?.sub(&fg).map_err(BlockError::Algebra)?;

    let out = if let Some(id_band) = cfg.band_d() {
        let d = g.tri_block(id_band);
        let h = with_dagger_applied(&c, &g.rect_block(ic, id_band))?;
        let gh = g_blk.rect_mul(&h).map_err(BlockError::Algebra)?;
        let q = with_dagger_applied(&b, &g.rect_block(ib, id_band))?
            .sub(&gh)
            .map_err(BlockError::Algebra)?;
        let fq = f.rect_mul(&q).map_err(BlockError::Algebra)?;
        let fgh = fg.rect_mul(&h).map_err(BlockError::Algebra)?;
        let z = with_dagger_applied(&a, &g.rect_block(ia, id_band))?
            .sub(&fq)
            .map_err(BlockError::Algebra)?
            .sub(&fgh)
            .map_err(BlockError::Algebra)?;
        BandDecomposition { a, b, c, d: Some(d), f, g: g_blk, h: Some(h), p, q: Some(q), z: Some(z) }
    } else {
        BandDecomposition { a, b, c, d: None, f, g: g_blk, h: None, p, q: None, z: None }
    };

    debug_assert_eq!(&recompose_bands(ctx, &out)?, g, "band extraction must reconstruct");
    Ok(out)
}

/// The ordered product `|A| |B| |C| |D| |F| |G| |H| |P| |Q| |Z|`.
pub fn recompose_bands(ctx: &GroupCtx, d: &BandDecomposition) -> Result<UnipotentElement, BlockError> {
    let mut acc = UnipotentElement::from_tri(ctx, &d.a).map_err(BlockError::Group)?;
    let mut mul_tri = |acc: UnipotentElement, t: &TriMatrix| -> Result<UnipotentElement, BlockError> {
        acc.mul(&UnipotentElement::from_tri(ctx, t).map_err(BlockError::Group)?).map_err(BlockError::Group)
    };
    acc = mul_tri(acc, &d.b)?;
    acc = mul_tri(acc, &d.c)?;
    if let Some(t) = &d.d {
        acc = mul_tri(acc, t)?;
    }
    let mut mul_rect = |acc: UnipotentElement, r: &RectMatrix| -> Result<UnipotentElement, BlockError> {
        acc.mul(&UnipotentElement::from_rect(ctx, r).map_err(BlockError::Group)?).map_err(BlockError::Group)
    };
    acc = mul_rect(acc, &d.f)?;
    acc = mul_rect(acc, &d.g)?;
    if let Some(r) = &d.h {
        acc = mul_rect(acc, r)?;
    }
    acc = mul_rect(acc, &d.p)?;
    if let Some(r) = &d.q {
        acc = mul_rect(acc, r)?;
    }
    if let Some(r) = &d.z {
        acc = mul_rect(acc, r)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedPoly;
    use rand::{Rng, SeedableRng};

    fn random_element(ctx: &GroupCtx, seed: u64) -> UnipotentElement {
        let f = ctx.field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
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
    fn two_moat_roundtrip() {
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        let ctx = cfg.group_ctx(1, 3).unwrap();
        for seed in 0..16 {
            let g = random_element(&ctx, seed);
            let d = band_decompose(&cfg, &ctx, &g).unwrap();
            assert_eq!(recompose_bands(&ctx, &d).unwrap(), g);
        }
    }

    #[test]
    fn three_moat_roundtrip() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        let ctx = cfg.group_ctx(1, 2).unwrap();
        for seed in 0..8 {
            let g = random_element(&ctx, seed);
            let d = band_decompose(&cfg, &ctx, &g).unwrap();
            assert_eq!(recompose_bands(&ctx, &d).unwrap(), g);
        }
    }

    #[test]
    fn staircase_members_have_empty_crossing_blocks() {
        use crate::unipotent::{enumerate_staircase, MoatSet};
        let cfg = MoatConfig::two_moat(1, 4, 1, 1).unwrap();
        let ctx = cfg.group_ctx(1, 2).unwrap();
        // members of GU_A (avoid the first moat) have no F, P parts
        let w = MoatSet::new(ctx.n, &[cfg.moats()[0], 2, 3, 4, cfg.moats()[1]]).unwrap();
        for g in enumerate_staircase(&ctx, &w).into_iter().take(64) {
            let d = band_decompose(&cfg, &ctx, &g).unwrap();
            assert!(d.f.is_zero() && d.p.is_zero());
        }
    }
}
