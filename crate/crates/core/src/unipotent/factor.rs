//! Unique factorization of group elements into ordered generator products.
//!
//! For any ordering of the admissible pairs `Phi_W` there is exactly one
//! coefficient tuple whose ordered generator product equals a given element
//! of the staircase subgroup. The solver exploits that in any such product
//! the `(i, j)` entry equals `f_{i,j}` plus a polynomial in coefficients of
//! strictly smaller height, so coefficients can be recovered by height
//! induction regardless of the ordering.

use serde::{Deserialize, Serialize};

use super::element::{GroupCtx, UnipotentElement};
use super::staircase::{admissible_pairs, MoatSet};
use crate::algebra::GradedPoly;
use crate::error::GroupError;

/// One factor `e_{i,j}(f)` of a factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTerm {
    pub i: usize,
    pub j: usize,
    pub poly: GradedPoly,
}

/// The default ordering of `Phi_W`: `j` ascending, `i` descending within `j`.
pub fn default_ordering(n: usize, w: &MoatSet) -> Vec<(usize, usize)> {
    admissible_pairs(n, w)
}

fn eval_terms(ctx: &GroupCtx, ordering: &[(usize, usize)], coeffs: &[GradedPoly]) -> UnipotentElement {
    let mut g = ctx.identity();
    for (&(i, j), poly) in ordering.iter().zip(coeffs) {
        if poly.is_zero() {
            continue;
        }
        let gen = ctx.generator(i, j, poly.clone()).expect("coefficient within cap");
        g = g.mul(&gen).expect("same ctx");
    }
    g
}

/// Factor `g` as the ordered product of generators over `ordering`, which
/// must be a permutation of `Phi_W` for a moat set `W` containing `g`'s
/// support constraints. Returns the factors in `ordering` order.
pub fn canonical_factorization(
    g: &UnipotentElement,
    ordering: &[(usize, usize)],
) -> Result<Vec<GeneratorTerm>, GroupError> {
    let ctx = *g.ctx();
    let n = ctx.n;
    // sanity: ordering must consist of distinct valid pairs covering g's support
    let mut seen = std::collections::HashSet::new();
    for &(i, j) in ordering {
        if i >= j || j > n || !seen.insert((i, j)) {
            return Err(GroupError::BadIndices { i, j, n });
        }
    }
    for (i, j) in g.support() {
        if !seen.contains(&(i, j)) {
            return Err(GroupError::SupportOutsideInterval);
        }
    }

    let f = ctx.field();
    let mut coeffs: Vec<GradedPoly> =
        ordering.iter().map(|&(i, j)| GradedPoly::zero(ctx.cap(i, j))).collect();
    for h in 1..=n {
        // product with all heights < h filled in
        let partial = eval_terms(&ctx, ordering, &coeffs);
        for (idx, &(i, j)) in ordering.iter().enumerate() {
            if j - i == h {
                coeffs[idx] = g
                    .entry(i, j)
                    .sub(&f, partial.entry(i, j))
                    .map_err(GroupError::Algebra)?
                    .with_bound(ctx.cap(i, j))
                    .map_err(GroupError::Algebra)?;
            }
        }
    }
    debug_assert_eq!(&eval_terms(&ctx, ordering, &coeffs), g);
    Ok(ordering
        .iter()
        .zip(coeffs)
        .map(|(&(i, j), poly)| GeneratorTerm { i, j, poly })
        .collect())
}

/// Rebuild the ordered product of a factorization (test oracle).
pub fn eval_factorization(ctx: &GroupCtx, terms: &[GeneratorTerm]) -> UnipotentElement {
    let mut g = ctx.identity();
    for t in terms {
        if t.poly.is_zero() {
            continue;
        }
        let gen = ctx.generator(t.i, t.j, t.poly.clone()).expect("valid term");
        g = g.mul(&gen).expect("same ctx");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipotent::enumerate_staircase;

    #[test]
    fn identity_factors_to_zero() {
        let ctx = GroupCtx::new(3, 1, 2).unwrap();
        let ordering = default_ordering(3, &MoatSet::empty(3));
        let terms = canonical_factorization(&ctx.identity(), &ordering).unwrap();
        assert!(terms.iter().all(|t| t.poly.is_zero()));
    }

    #[test]
    fn reconstructs_under_three_orderings() {
        let ctx = GroupCtx::new(2, 1, 2).unwrap();
        let w = MoatSet::empty(2);
        let o1 = default_ordering(2, &w);
        let mut o2 = o1.clone();
        o2.reverse();
        let o3 = vec![(0, 2), (0, 1), (1, 2)];
        let all = enumerate_staircase(&ctx, &w);
        assert_eq!(all.len(), 128);
        for ordering in [&o1, &o2, &o3] {
            let mut images = std::collections::HashSet::new();
            for g in &all {
                let terms = canonical_factorization(g, ordering).unwrap();
                assert_eq!(&eval_factorization(&ctx, &terms), g);
                let key: Vec<_> = terms.iter().map(|t| t.poly.clone()).collect();
                assert!(images.insert(format!("{key:?}")));
            }
            // injective on 128 elements => bijective onto the tuple space
            assert_eq!(images.len(), 128);
        }
    }
}
