//! Exhaustive minimal-area search on tiny instances.
//!
//! Breadth-first search over equivalence classes of words (free rotation and
//! inversion), where one move is a single in-subgroup relator application of
//! total length at most 3. Used as the ground-truth oracle against which
//! constructed certificates are compared; caps keep it on toy instances.

use std::collections::{HashMap, VecDeque};

use super::word::{Letter, MoatFamily, Word};
use crate::unipotent::{enumerate_staircase, MoatSet, UnipotentElement};

#[derive(Debug, Clone, Copy)]
pub struct BfsCaps {
    /// Maximum number of distinct word classes to expand.
    pub max_states: usize,
    /// Words longer than this are not generated.
    pub max_len: usize,
    /// Give up beyond this many counted steps.
    pub max_depth: u64,
}

impl Default for BfsCaps {
    fn default() -> Self {
        BfsCaps { max_states: 2_000_000, max_len: 8, max_depth: 12 }
    }
}

/// Exact minimal number of counted steps reducing `w` to the empty word,
/// or `None` if a cap was exceeded before the search completed.
pub fn bfs_min_area(family: &MoatFamily, w: &Word, caps: BfsCaps) -> Option<u64> {
    let ctx = family.ctx;
    // enumerate each subgroup once
    let subgroups: Vec<Vec<UnipotentElement>> = (0..family.len())
        .map(|t| {
            let moat = family.moat(t).unwrap();
            enumerate_staircase(&ctx, &MoatSet::new(ctx.n, &[moat]).expect("valid moat"))
        })
        .collect();

    let start = canonical_key(&word_elements(w));
    if start.is_empty() {
        return Some(0);
    }
    let mut dist: HashMap<Vec<u8>, u64> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue: VecDeque<Vec<UnipotentElement>> = VecDeque::new();
    queue.push_back(word_elements(w));

    while let Some(current) = queue.pop_front() {
        let key = canonical_key(&current);
        let d = dist[&key];
        if d >= caps.max_depth {
            return None;
        }
        if dist.len() > caps.max_states {
            return None;
        }
        // all single-step rewrites from every rotation of the word and its inverse
        for variant in class_variants(&current) {
            for next in neighbors(family, &subgroups, &variant, caps.max_len) {
                if next.is_empty() {
                    return Some(d + 1);
                }
                let nk = canonical_key(&next);
                if !dist.contains_key(&nk) {
                    dist.insert(nk, d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    // queue exhausted without reaching the empty word within the caps
    None
}

fn word_elements(w: &Word) -> Vec<UnipotentElement> {
    w.iter().map(|l| (*l.element).clone()).collect()
}

fn class_variants(word: &[UnipotentElement]) -> Vec<Vec<UnipotentElement>> {
    let mut out = Vec::new();
    let n = word.len();
    let inv: Vec<UnipotentElement> = word.iter().rev().map(|g| g.inv()).collect();
    for r in 0..n.max(1) {
        let mut a = word.to_vec();
        a.rotate_left(r % n.max(1));
        out.push(a);
        let mut b = inv.clone();
        b.rotate_left(r % n.max(1));
        out.push(b);
    }
    out
}

fn canonical_key(word: &[UnipotentElement]) -> Vec<u8> {
    if word.is_empty() {
        return Vec::new();
    }
    class_variants(word)
        .into_iter()
        .map(|v| {
            let mut bytes = Vec::new();
            for g in &v {
                bytes.extend(g.encode_bytes());
            }
            bytes
        })
        .min()
        .unwrap()
}

fn neighbors(
    family: &MoatFamily,
    subgroups: &[Vec<UnipotentElement>],
    word: &[UnipotentElement],
    max_len: usize,
) -> Vec<Vec<UnipotentElement>> {
    let mut out = Vec::new();
    let n = word.len();
    let moats: Vec<MoatSet> = (0..family.len())
        .map(|t| MoatSet::new(family.ctx.n, &[family.moat(t).unwrap()]).unwrap())
        .collect();
    for pos in 0..=n {
        for u_len in 0..=3usize.min(n - pos) {
            let seg = &word[pos..pos + u_len];
            let seg_eval = match seg.iter().try_fold(family.ctx.identity(), |acc, g| acc.mul(g)) {
                Ok(e) => e,
                Err(_) => continue,
            };
            for (tag, elems) in subgroups.iter().enumerate() {
                let moat = &moats[tag];
                if !seg.iter().all(|g| crate::unipotent::staircase_member(g, moat)) {
                    continue;
                }
                let fits = |v_len: usize| n - u_len + v_len <= max_len && u_len + v_len <= 3;
                // v empty: removal of an identity-evaluating segment
                if u_len > 0 && seg_eval.is_identity() {
                    out.push(splice(word, pos, u_len, &[]));
                }
                // v of length 1
                if fits(1)
                    && crate::unipotent::staircase_member(&seg_eval, moat)
                    && !(u_len == 1 && word[pos] == seg_eval)
                    && !(u_len == 0 && !seg_eval.is_identity())
                {
                    out.push(splice(word, pos, u_len, &[seg_eval.clone()]));
                }
                // v of length 2: all (a, a^-1 * eval(u)) inside the subgroup
                if fits(2) {
                    for a in elems {
                        let b = a.inv().mul(&seg_eval).expect("same ctx");
                        if crate::unipotent::staircase_member(&b, moat) {
                            out.push(splice(word, pos, u_len, &[a.clone(), b]));
                        }
                    }
                }
                // v of length 3 (insertions only): (a, b, (ab)^-1 eval(u))
                if u_len == 0 && fits(3) {
                    for a in elems {
                        for b in elems {
                            let c = b.inv().mul(&a.inv()).and_then(|x| x.mul(&seg_eval)).expect("same ctx");
                            if crate::unipotent::staircase_member(&c, moat) {
                                out.push(splice(word, pos, 0, &[a.clone(), b.clone(), c]));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn splice(
    word: &[UnipotentElement],
    pos: usize,
    remove: usize,
    insert: &[UnipotentElement],
) -> Vec<UnipotentElement> {
    let mut out = Vec::with_capacity(word.len() - remove + insert.len());
    out.extend_from_slice(&word[..pos]);
    out.extend_from_slice(insert);
    out.extend_from_slice(&word[pos + remove..]);
    out
}

/// Helper for oracle tests: a word from raw letters.
pub fn letters_to_word(letters: &[Letter]) -> Word {
    letters.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipotent::GroupCtx;

    fn family() -> MoatFamily {
        let ctx = GroupCtx::new(2, 1, 2).unwrap();
        MoatFamily::new(ctx, &[1, 2]).unwrap()
    }

    #[test]
    fn empty_word_has_area_zero() {
        let fam = family();
        assert_eq!(bfs_min_area(&fam, &Vec::new(), BfsCaps::default()), Some(0));
    }

    #[test]
    fn cancelling_pair_has_area_one() {
        let fam = family();
        let f = fam.ctx.field();
        let g = fam
            .letter(0, fam.ctx.generator(1, 2, crate::algebra::GradedPoly::from_coeffs(&f, &[1, 1], 1).unwrap()).unwrap())
            .unwrap();
        let w = vec![g.clone(), g.inverse()];
        let caps = BfsCaps { max_states: 100_000, max_len: 4, max_depth: 4 };
        assert_eq!(bfs_min_area(&fam, &w, caps), Some(1));
    }
}
