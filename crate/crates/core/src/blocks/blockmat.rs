//! Basic block matrices: an `m x m` basic payload placed at band anchors
//! with a monomial exponent shift, and the decompositions of full band
//! matrices into such blocks.

use serde::{Deserialize, Serialize};

use super::basic::{decompose_basic, BasicMatrix};
use super::cfg::MoatConfig;
use crate::algebra::{Interval, RectMatrix};
use crate::error::BlockError;
use crate::unipotent::{GroupCtx, UnipotentElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockType {
    F,
    G,
    H,
    P,
    Q,
    Z,
}

impl BlockType {
    /// (row band, column band) as band letters `0..=3` = A..D.
    pub fn bands(&self) -> (usize, usize) {
        match self {
            BlockType::F => (0, 1),
            BlockType::G => (1, 2),
            BlockType::H => (2, 3),
            BlockType::P => (0, 2),
            BlockType::Q => (1, 3),
            BlockType::Z => (0, 3),
        }
    }
}

fn band_interval(cfg: &MoatConfig, band: usize) -> Result<Interval, BlockError> {
    match band {
        0 => Ok(cfg.band_a()),
        1 => Ok(cfg.band_b()),
        2 => Ok(cfg.band_c()),
        3 => cfg.band_d().ok_or(BlockError::CfgViolation("band D needs the three-moat layout".into())),
        _ => Err(BlockError::CfgViolation("unknown band".into())),
    }
}

fn band_anchors(cfg: &MoatConfig, band: usize) -> Result<(usize, usize), BlockError> {
    match band {
        0 => Ok(cfg.anchors_a()),
        1 => Ok(cfg.anchors_b()),
        2 => Ok(cfg.anchors_c()),
        3 => cfg.anchors_d().ok_or(BlockError::CfgViolation("band D needs the three-moat layout".into())),
        _ => Err(BlockError::CfgViolation("unknown band".into())),
    }
}

/// A typed basic block: `X^(kappa*t) * M` placed at `(row_anchor, col_anchor)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub btype: BlockType,
    pub row_anchor: usize,
    pub col_anchor: usize,
    pub t: usize,
    pub basic: BasicMatrix,
}

impl BlockSpec {
    /// Validates anchors against the bands and the exponent range
    /// `t <= col_anchor - row_anchor - s`.
    pub fn new(
        cfg: &MoatConfig,
        btype: BlockType,
        row_anchor: usize,
        col_anchor: usize,
        t: usize,
        basic: BasicMatrix,
    ) -> Result<Self, BlockError> {
        if basic.m != cfg.m {
            return Err(BlockError::GradingViolation);
        }
        let (rb, cb) = btype.bands();
        let (rlo, rhi) = band_anchors(cfg, rb)?;
        let (clo, chi) = band_anchors(cfg, cb)?;
        if row_anchor < rlo || row_anchor > rhi || col_anchor < clo || col_anchor > chi {
            return Err(BlockError::NoRoom(format!(
                "anchors ({row_anchor}, {col_anchor}) outside the {btype:?} anchor sets"
            )));
        }
        if col_anchor < row_anchor + basic.s || t > col_anchor - row_anchor - basic.s {
            return Err(BlockError::NoRoom(format!(
                "exponent {t} outside [0, {col_anchor} - {row_anchor} - {}]",
                basic.s
            )));
        }
        Ok(BlockSpec { btype, row_anchor, col_anchor, t, basic })
    }

    pub fn is_zero(&self) -> bool {
        self.basic.is_zero()
    }

    pub fn negated(&self) -> BlockSpec {
        BlockSpec { basic: self.basic.neg(), ..self.clone() }
    }

    /// Materialize as a full graded rectangle on the two bands.
    pub fn to_rect(&self, cfg: &MoatConfig) -> Result<RectMatrix, BlockError> {
        let (rb, cb) = self.btype.bands();
        let rows = band_interval(cfg, rb)?;
        let cols = band_interval(cfg, cb)?;
        let field = self.basic.field;
        let mut out = RectMatrix::zero(field, self.basic.kappa, rows, cols).map_err(BlockError::Algebra)?;
        for i in 0..cfg.m {
            for j in 0..cfg.m {
                let e = self.basic.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let shifted = e.shift_up(self.basic.kappa * self.t);
                let (gi, gj) = (self.row_anchor + i, self.col_anchor + j);
                let cap = self.basic.kappa * (gj - gi);
                out.set_entry(gi, gj, shifted.with_bound(cap).map_err(BlockError::Algebra)?)
                    .map_err(BlockError::Algebra)?;
            }
        }
        Ok(out)
    }

    /// The group element `I + X^(kappa*t) M` at the anchors.
    pub fn to_element(&self, cfg: &MoatConfig, ctx: &GroupCtx) -> Result<UnipotentElement, BlockError> {
        let rect = self.to_rect(cfg)?;
        UnipotentElement::from_rect(ctx, &rect).map_err(BlockError::Group)
    }

    /// Block product: `(F at (a,b)) * (G at (b,c))` is a block at `(a,c)`
    /// with exponent sum and basic product; zero if the anchors mismatch.
    pub fn block_mul(&self, other: &BlockSpec, cfg: &MoatConfig) -> Result<Option<BlockSpec>, BlockError> {
        if self.col_anchor != other.row_anchor {
            // disjoint or misaligned inner blocks multiply to zero
            let a = self.col_anchor;
            let b = other.row_anchor;
            if a + cfg.m <= b || b + cfg.m <= a {
                return Ok(None);
            }
            return Err(BlockError::GradingViolation);
        }
        let btype = match (self.btype, other.btype) {
            (BlockType::F, BlockType::G) => BlockType::P,
            (BlockType::G, BlockType::H) => BlockType::Q,
            (BlockType::F, BlockType::Q) => BlockType::Z,
            (BlockType::P, BlockType::H) => BlockType::Z,
            _ => return Err(BlockError::GradingViolation),
        };
        let basic = self.basic.mul(&other.basic)?;
        Ok(Some(BlockSpec::new(
            cfg,
            btype,
            self.row_anchor,
            other.col_anchor,
            self.t + other.t,
            basic,
        )?))
    }
}

/// Decompose a full band rectangle of the given type into basic blocks,
/// following the canonical partitions of both bands and budget `2m` (or a
/// single `m`-bounded block when the piece gap is exactly `m`). Zero blocks
/// are dropped; the blocks sum exactly to the input.
pub fn decompose_rect(
    cfg: &MoatConfig,
    btype: BlockType,
    rect: &RectMatrix,
) -> Result<Vec<BlockSpec>, BlockError> {
    let m = cfg.m;
    let kappa = rect.kappa;
    let (rb, cb) = btype.bands();
    let rows = band_interval(cfg, rb)?;
    let cols = band_interval(cfg, cb)?;
    if rect.rows != rows || rect.cols != cols {
        return Err(BlockError::GradingViolation);
    }
    let row_anchors = partition_for(cfg, rb)?;
    let col_anchors = partition_for(cfg, cb)?;
    let mut out = Vec::new();
    for &ra in dedup(&row_anchors).iter() {
        for &ca in dedup(&col_anchors).iter() {
            // piece supported on wires assigned to (ra, ca)
            let mut piece = BasicMatrix::zero(rect.field, kappa, m, ca - ra);
            let mut nonzero = false;
            for i in 0..m {
                for j in 0..m {
                    let (gi, gj) = (ra + i, ca + j);
                    if MoatConfig::assign_block(&row_anchors, gi) != ra
                        || MoatConfig::assign_block(&col_anchors, gj) != ca
                    {
                        continue;
                    }
                    let e = rect.entry(gi, gj);
                    if e.is_zero() {
                        continue;
                    }
                    piece.set(i, j, e.with_bound(kappa * (ca - ra + j).saturating_sub(kappa * i)).map_err(BlockError::Algebra)?)?;
                    nonzero = true;
                }
            }
            if !nonzero {
                continue;
            }
            // type-Z pieces split on a 2m grid into 4m-budget blocks (they
            // feed the alias machinery); all others use the m grid and 2m.
            let step = if btype == BlockType::Z { 2 * m } else { m };
            let gap = ca - ra;
            if gap < 2 * step {
                // corner piece: already a narrow block with t = 0
                let narrowed = rebudget(&piece, gap)?;
                out.push(BlockSpec::new(cfg, btype, ra, ca, 0, narrowed)?);
            } else {
                let delta = gap - 2 * step;
                for comp in decompose_basic(&piece, delta, step)? {
                    out.push(BlockSpec::new(cfg, btype, ra, ca, comp.shift, comp.matrix)?);
                }
            }
        }
    }
    Ok(out)
}

fn rebudget(mat: &BasicMatrix, s: usize) -> Result<BasicMatrix, BlockError> {
    let mut out = BasicMatrix::zero(mat.field, mat.kappa, mat.m, s);
    for i in 0..mat.m {
        for j in 0..mat.m {
            out.set(i, j, mat.get(i, j).clone())?;
        }
    }
    Ok(out)
}

fn dedup(v: &[usize]) -> Vec<usize> {
    let mut out = v.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

fn partition_for(cfg: &MoatConfig, band: usize) -> Result<Vec<usize>, BlockError> {
    match band {
        0 => Ok(cfg.partition_a()),
        1 => Ok(cfg.partition_b()),
        2 => Ok(cfg.partition_c()),
        3 => cfg.partition_d().ok_or(BlockError::CfgViolation("band D needs three moats".into())),
        _ => Err(BlockError::CfgViolation("unknown band".into())),
    }
}

/// Sum a list of blocks back into the full rectangle (test oracle).
pub fn sum_blocks(
    cfg: &MoatConfig,
    btype: BlockType,
    blocks: &[BlockSpec],
) -> Result<RectMatrix, BlockError> {
    let (rb, cb) = btype.bands();
    let rows = band_interval(cfg, rb)?;
    let cols = band_interval(cfg, cb)?;
    let field = blocks.first().map(|b| b.basic.field).unwrap_or_else(|| {
        crate::algebra::PrimeField::new(2).unwrap()
    });
    let kappa = blocks.first().map(|b| b.basic.kappa).unwrap_or(1);
    let mut acc = RectMatrix::zero(field, kappa, rows, cols).map_err(BlockError::Algebra)?;
    for b in blocks {
        acc = acc.add(&b.to_rect(cfg)?).map_err(BlockError::Algebra)?;
    }
    Ok(acc)
}

/// Express a type-P basic block as a product `F * G` through a fresh middle
/// anchor: `F` carries the payload, `G` carries the identity, exponents
/// packed greedily. Returns `(F, G)` with `F.block_mul(G) == P`.
pub fn express_p_as_fg(cfg: &MoatConfig, p: &BlockSpec) -> Result<(BlockSpec, BlockSpec), BlockError> {
    if p.btype != BlockType::P {
        return Err(BlockError::BadArgs("express_p_as_fg needs a type-P block".into()));
    }
    let s = p.basic.s;
    let (blo, bhi) = cfg.anchors_b();
    // smallest admissible middle anchor: need b - row >= s and col - b >= 0
    let b = (p.row_anchor + s).max(blo);
    if b > bhi || b > p.col_anchor {
        return Err(BlockError::NoRoom("no middle anchor for the F-G split".into()));
    }
    let (tf, tg) = super::basic::pack(p.t as u64, (b - p.row_anchor - s) as u64, (p.col_anchor - b) as u64)?;
    let f = BlockSpec::new(cfg, BlockType::F, p.row_anchor, b, tf as usize, p.basic.clone())?;
    let ident = BasicMatrix::identity(p.basic.field, p.basic.kappa, cfg.m, 0);
    let g = BlockSpec::new(cfg, BlockType::G, b, p.col_anchor, tg as usize, ident)?;
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GradedPoly, PrimeField};
    use rand::{Rng, SeedableRng};

    fn random_rect(
        cfg: &MoatConfig,
        btype: BlockType,
        kappa: usize,
        p: u64,
        seed: u64,
    ) -> RectMatrix {
        let field = PrimeField::new(p).unwrap();
        let (rb, cb) = btype.bands();
        let rows = band_interval(cfg, rb).unwrap();
        let cols = band_interval(cfg, cb).unwrap();
        let mut rect = RectMatrix::zero(field, kappa, rows, cols).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for i in rows.lo..=rows.hi {
            for j in cols.lo..=cols.hi {
                let cap = kappa * (j - i);
                let coeffs: Vec<u64> = (0..=cap).map(|_| rng.gen_range(0..p)).collect();
                rect.set_entry(i, j, GradedPoly::from_coeffs(&field, &coeffs, cap).unwrap()).unwrap();
            }
        }
        rect
    }

    #[test]
    fn block_to_rect_respects_grading() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        let field = PrimeField::new(3).unwrap();
        let mut basic = BasicMatrix::zero(field, 1, 2, 4);
        basic.set(0, 0, GradedPoly::from_coeffs(&field, &[1, 2, 0, 1], 4).unwrap()).unwrap();
        basic.set(1, 0, GradedPoly::from_coeffs(&field, &[2, 1, 1], 3).unwrap()).unwrap();
        let spec = BlockSpec::new(&cfg, BlockType::P, 0, 12, 3, basic).unwrap();
        let rect = spec.to_rect(&cfg).unwrap();
        assert_eq!(rect.entry(0, 12).coeff(3), 1);
        assert!(BlockSpec::new(
            &cfg,
            BlockType::P,
            0,
            12,
            9,
            BasicMatrix::identity(field, 1, 2, 4)
        )
        .is_err()); // t > c - a - s
    }

    #[test]
    fn decompose_p_reconstructs() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        for (ty, seed) in [
            (BlockType::P, 5u64),
            (BlockType::Q, 7),
            (BlockType::F, 9),
            (BlockType::H, 11),
            (BlockType::Z, 13),
        ] {
            let rect = random_rect(&cfg, ty, 1, 3, seed);
            let blocks = decompose_rect(&cfg, ty, &rect).unwrap();
            let back = sum_blocks(&cfg, ty, &blocks).unwrap();
            assert_eq!(back, rect, "type {ty:?}");
            let widest = if ty == BlockType::Z { 4 * cfg.m } else { 2 * cfg.m };
            for b in &blocks {
                assert!(b.basic.s <= widest);
            }
        }
    }

    #[test]
    fn decompose_zero_is_empty() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        let field = PrimeField::new(2).unwrap();
        let rect = RectMatrix::zero(field, 1, cfg.band_a(), cfg.band_c()).unwrap();
        assert!(decompose_rect(&cfg, BlockType::P, &rect).unwrap().is_empty());
    }

    #[test]
    fn single_low_degree_block_stays_single() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        let field = PrimeField::new(2).unwrap();
        let mut rect = RectMatrix::zero(field, 1, cfg.band_a(), cfg.band_c()).unwrap();
        rect.set_entry(0, 10, GradedPoly::from_coeffs(&field, &[1, 1], 10).unwrap()).unwrap();
        rect.set_entry(1, 11, GradedPoly::from_coeffs(&field, &[1], 10).unwrap()).unwrap();
        let blocks = decompose_rect(&cfg, BlockType::P, &rect).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].t, 0);
    }

    #[test]
    fn p_as_fg_product_identity() {
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        let field = PrimeField::new(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..32 {
            // random 2m-bounded P block at the unique anchors, random exponent
            let s = 2 * cfg.m;
            let (a, c) = (0usize, 10usize);
            let t = rng.gen_range(0..=(c - a - s));
            let mut basic = BasicMatrix::zero(field, 1, cfg.m, s);
            for i in 0..cfg.m {
                for j in 0..cfg.m {
                    let cap = 1 * (s + j - i);
                    let coeffs: Vec<u64> = (0..=cap).map(|_| rng.gen_range(0..3)).collect();
                    basic.set(i, j, GradedPoly::from_coeffs(&field, &coeffs, cap).unwrap()).unwrap();
                }
            }
            let p = BlockSpec::new(&cfg, BlockType::P, a, c, t, basic).unwrap();
            let (f, g) = express_p_as_fg(&cfg, &p).unwrap();
            let prod = f.block_mul(&g, &cfg).unwrap().expect("anchors meet");
            assert_eq!(prod.to_rect(&cfg).unwrap(), p.to_rect(&cfg).unwrap(), "trial {trial}");
        }
    }
}
