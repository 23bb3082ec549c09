//! Moat configurations: band widths, moat positions, block anchors.
//!
//! A two-moat configuration cuts the wires into bands A | B | C and is the
//! setting for the diameter construction; a three-moat configuration cuts
//! them into A | B | C | D and is the setting for the area construction.
//! Anchor sets hold the admissible top-left wire of an `m`-wide block
//! within each band.

use serde::{Deserialize, Serialize};

use crate::algebra::Interval;
use crate::error::BlockError;
use crate::rewrite::MoatFamily;
use crate::unipotent::GroupCtx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoatConfig {
    pub n_a: usize,
    pub n_b: usize,
    pub n_c: usize,
    /// `None` selects the two-moat (diameter) layout.
    pub n_d: Option<usize>,
    pub m: usize,
}

impl MoatConfig {
    pub fn two_moat(n_a: usize, n_b: usize, n_c: usize, m: usize) -> Result<Self, BlockError> {
        let cfg = MoatConfig { n_a, n_b, n_c, n_d: None, m };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn three_moat(
        n_a: usize,
        n_b: usize,
        n_c: usize,
        n_d: usize,
        m: usize,
    ) -> Result<Self, BlockError> {
        let cfg = MoatConfig { n_a, n_b, n_c, n_d: Some(n_d), m };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), BlockError> {
        let m = self.m;
        if m < 1 {
            return Err(BlockError::CfgViolation("m >= 1 required".into()));
        }
        if self.n_a == 0 || self.n_a % m != 0 {
            return Err(BlockError::CfgViolation("n_a must be a positive multiple of m".into()));
        }
        if self.n_b < 4 * m {
            return Err(BlockError::CfgViolation("n_b >= 4m required".into()));
        }
        match self.n_d {
            None => {
                if self.n_c == 0 || self.n_c % m != 0 {
                    return Err(BlockError::CfgViolation(
                        "n_c must be a positive multiple of m in the two-moat layout".into(),
                    ));
                }
            }
            Some(n_d) => {
                if self.n_c < 4 * m {
                    return Err(BlockError::CfgViolation("n_c >= 4m required".into()));
                }
                if n_d == 0 || n_d % m != 0 {
                    return Err(BlockError::CfgViolation("n_d must be a positive multiple of m".into()));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn is_three_moat(&self) -> bool {
        self.n_d.is_some()
    }

    /// Total wires minus one.
    pub fn n(&self) -> usize {
        self.n_a + self.n_b + self.n_c + self.n_d.unwrap_or(0) - 1
    }

    pub fn moats(&self) -> Vec<usize> {
        let l1 = self.n_a;
        let l2 = self.n_a + self.n_b;
        match self.n_d {
            None => vec![l1, l2],
            Some(_) => vec![l1, l2, self.n_a + self.n_b + self.n_c],
        }
    }

    pub fn rho(&self) -> f64 {
        self.n() as f64 / self.m as f64
    }

    pub fn band_a(&self) -> Interval {
        Interval::new(0, self.n_a - 1).unwrap()
    }

    pub fn band_b(&self) -> Interval {
        Interval::new(self.n_a, self.n_a + self.n_b - 1).unwrap()
    }

    pub fn band_c(&self) -> Interval {
        Interval::new(self.n_a + self.n_b, self.n_a + self.n_b + self.n_c - 1).unwrap()
    }

    pub fn band_d(&self) -> Option<Interval> {
        self.n_d.map(|d| {
            let lo = self.n_a + self.n_b + self.n_c;
            Interval::new(lo, lo + d - 1).unwrap()
        })
    }

    /// Anchor range for band A: `[0, n_a - m]`.
    pub fn anchors_a(&self) -> (usize, usize) {
        (0, self.n_a - self.m)
    }

    pub fn anchors_b(&self) -> (usize, usize) {
        (self.n_a, self.n_a + self.n_b - self.m)
    }

    pub fn anchors_c(&self) -> (usize, usize) {
        (self.n_a + self.n_b, self.n_a + self.n_b + self.n_c - self.m)
    }

    pub fn anchors_d(&self) -> Option<(usize, usize)> {
        self.n_d.map(|d| {
            let lo = self.n_a + self.n_b + self.n_c;
            (lo, lo + d - self.m)
        })
    }

    /// The `m` wires `[anchor, anchor + m)`.
    pub fn block_at(&self, anchor: usize) -> Interval {
        Interval::new(anchor, anchor + self.m - 1).unwrap()
    }

    /// Canonical partition anchors for band A (multiples of `m`).
    pub fn partition_a(&self) -> Vec<usize> {
        (0..self.n_a / self.m).map(|k| k * self.m).collect()
    }

    pub fn partition_d(&self) -> Option<Vec<usize>> {
        self.n_d.map(|d| {
            let lo = self.n_a + self.n_b + self.n_c;
            (0..d / self.m).map(|k| lo + k * self.m).collect()
        })
    }

    /// Cover anchors for band B: `m`-steps from the left plus the flush-right
    /// block; the last two coincide when `m` divides `n_b`.
    pub fn partition_b(&self) -> Vec<usize> {
        let lo = self.n_a;
        let q = self.n_b / self.m;
        let mut v: Vec<usize> = (0..q).map(|k| lo + k * self.m).collect();
        v.push(lo + self.n_b - self.m);
        v
    }

    /// Cover anchors for band C: the flush-left block plus `m`-steps ending
    /// flush right; the first two coincide when `m` divides `n_c`.
    pub fn partition_c(&self) -> Vec<usize> {
        let lo = self.n_a + self.n_b;
        let q = self.n_c / self.m;
        let mut v = vec![lo];
        let offset = self.n_c - q * self.m;
        for k in 0..q {
            v.push(lo + offset + k * self.m);
        }
        v
    }

    /// Assign a wire to the unique covering block of a partition anchor list
    /// (the largest anchor `<=` the wire).
    pub fn assign_block(anchors: &[usize], wire: usize) -> usize {
        let mut best = anchors[0];
        for &a in anchors {
            if a <= wire {
                best = best.max(a);
            }
        }
        debug_assert!(wire >= best);
        best
    }

    pub fn group_ctx(&self, kappa: usize, p: u64) -> Result<GroupCtx, BlockError> {
        GroupCtx::new(self.n(), kappa, p).map_err(BlockError::Group)
    }

    /// The staircase family of this configuration's moats: tag order matches
    /// `moats()` (tag 0 avoids the first moat, and so on).
    pub fn family(&self, kappa: usize, p: u64) -> Result<MoatFamily, BlockError> {
        let ctx = self.group_ctx(kappa, p)?;
        MoatFamily::new(ctx, &self.moats()).map_err(BlockError::Rewrite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_moat_shape() {
        let cfg = MoatConfig::two_moat(2, 8, 2, 2).unwrap();
        assert_eq!(cfg.n(), 11);
        assert_eq!(cfg.moats(), vec![2, 10]);
        assert_eq!(cfg.band_b(), Interval::new(2, 9).unwrap());
        assert_eq!(cfg.anchors_b(), (2, 8));
        assert_eq!(cfg.partition_a(), vec![0]);
    }

    #[test]
    fn three_moat_shape() {
        let cfg = MoatConfig::three_moat(2, 8, 8, 2, 2).unwrap();
        assert_eq!(cfg.n(), 19);
        assert_eq!(cfg.moats(), vec![2, 10, 18]);
        assert_eq!(cfg.partition_b(), vec![2, 4, 6, 8, 8]);
        assert_eq!(cfg.partition_c(), vec![10, 10, 12, 14, 16]);
        assert_eq!(cfg.partition_d(), Some(vec![18]));
    }

    #[test]
    fn rejects_bad_bands() {
        assert!(MoatConfig::two_moat(2, 7, 2, 2).is_err()); // n_b < 4m
        assert!(MoatConfig::two_moat(3, 8, 2, 2).is_err()); // n_a not multiple
        assert!(MoatConfig::three_moat(2, 8, 7, 2, 2).is_err()); // n_c < 4m
    }
}
