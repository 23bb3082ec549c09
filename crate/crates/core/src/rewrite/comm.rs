//! Commutator rearrangement: dragging a word across a product, and
//! collecting commutators of products into products of commutators.
//!
//! Commutators follow `[x, y] = x y x^-1 y^-1`, so `x y = [x, y] y x`.

use super::builder::{EquationCert, RewriteBuilder};
use super::word::{concat, invert_word, Letter, MoatFamily, Word};
use crate::error::RewriteError;

/// The concatenated commutator word `u v u^-1 v^-1`.
pub fn commutator_word(u: &[Letter], v: &[Letter]) -> Word {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    w.extend(invert_word(u));
    w.extend(invert_word(v));
    w
}

/// Nested cancelling-pair insertion: turn `... | rest` into
/// `... u^-1 v^-1 v u | rest` at `pos`, one counted step per letter.
fn insert_commutator_tail(
    b: &mut RewriteBuilder,
    pos: usize,
    u: &[Letter],
    v: &[Letter],
) -> Result<(), RewriteError> {
    // outermost pairs come from u, innermost from v
    let mut inner = pos;
    for l in u.iter().rev() {
        b.insert_pair_inv_first(inner, l.clone())?;
        inner += 1;
    }
    for l in v.iter().rev() {
        b.insert_pair_inv_first(inner, l.clone())?;
        inner += 1;
    }
    Ok(())
}

fn words_match(lhs: &[Letter], expected: &[Letter]) -> bool {
    lhs.len() == expected.len() && lhs.iter().zip(expected).all(|(a, b)| a.element == b.element)
}

/// Certified rearrangement `u v_1 ... v_l  ≡  C_1 v_1 C_2 v_2 ... C_l v_l u`
/// where `C_j` is the literal commutator word `u v_j u^-1 v_j^-1`. The
/// counted insertion cost is exactly `l |u| + sum |v_j|`. If `rewrites` are
/// supplied, each `C_j` is additionally rewritten by the matching equation
/// (whose `lhs` must equal `C_j`); failures surface as `OracleFailure`.
pub fn drag(
    family: &MoatFamily,
    u: &[Letter],
    vs: &[Word],
    rewrites: Option<&[EquationCert]>,
) -> Result<EquationCert, RewriteError> {
    if let Some(r) = rewrites {
        if r.len() != vs.len() {
            return Err(RewriteError::OracleFailure("one rewrite per factor required".into()));
        }
    }
    let mut lhs: Word = u.to_vec();
    for v in vs {
        lhs.extend_from_slice(v);
    }
    let mut b = RewriteBuilder::new(family, lhs);
    // cursor marks the start of the still-unprocessed `u v_j ... v_l` block
    let mut cursor = 0usize;
    for (j, v) in vs.iter().enumerate() {
        let after_uv = cursor + u.len() + v.len();
        insert_commutator_tail(&mut b, after_uv, u, v)?;
        // layout now: [cursor: u v_j u^-1 v_j^-1] [v_j] [u] [v_{j+1} ...]
        match rewrites {
            Some(rw) => {
                let eq = &rw[j];
                if !words_match(&eq.lhs, &commutator_word(u, v)) {
                    return Err(RewriteError::OracleFailure(format!(
                        "rewrite {j} does not match the commutator word"
                    )));
                }
                b.embed(cursor, eq)
                    .map_err(|e| RewriteError::OracleFailure(format!("rewrite {j} failed: {e}")))?;
                cursor += eq.rhs.len() + v.len();
            }
            None => {
                cursor = after_uv + u.len() + 2 * v.len();
            }
        }
    }
    Ok(b.finish())
}

/// Oracles for [`collect_commutators`].
pub struct CollectOracles<'a> {
    /// `pairwise(i, j)`: equation with lhs the literal commutator word
    /// `u_i v_j u_i^-1 v_j^-1` and rhs the collected word `w_ij`.
    pub pairwise: &'a dyn Fn(usize, usize) -> Result<EquationCert, RewriteError>,
    /// `swap_u(i2, i, j)`: equation `[u_i2 ++ w_ij] ≡ [w_ij ++ u_i2]`
    /// (vanishing of the triple commutator `[u_i2, [u_i, v_j]]`).
    pub swap_u: &'a dyn Fn(usize, usize, usize) -> Result<EquationCert, RewriteError>,
    /// `swap_v(j2, i, j)`: equation `[v_j2 ++ w_ij] ≡ [w_ij ++ v_j2]`.
    pub swap_v: &'a dyn Fn(usize, usize, usize) -> Result<EquationCert, RewriteError>,
}

/// Certified collection
/// `[u_1 .. u_k, v_1 .. v_l] ≡ prod_{i=k..1} prod_{j=1..l} w_ij`,
/// starting from the literal commutator word of the two products. Also
/// returns the collected per-pair words in emission order (`i` descending,
/// `j` ascending).
pub fn collect_commutators(
    family: &MoatFamily,
    us: &[Word],
    vs: &[Word],
    oracles: &CollectOracles<'_>,
) -> Result<(EquationCert, Vec<Word>), RewriteError> {
    let u_all: Word = us.iter().flatten().cloned().collect();
    let v_all: Word = vs.iter().flatten().cloned().collect();
    let v_total = v_all.len();
    let lhs = commutator_word(&u_all, &v_all);
    let mut b = RewriteBuilder::new(family, lhs);

    // collected blocks in emission order, shadowing their layout order
    let mut emitted: Vec<Word> = Vec::new();
    let mut u_prefix_len: usize = us.iter().map(|w| w.len()).sum();

    for i in (0..us.len()).rev() {
        let u_i = &us[i];
        if u_i.is_empty() {
            for _ in vs {
                emitted.push(Vec::new());
            }
            continue;
        }
        u_prefix_len -= u_i.len();
        let mut pos = u_prefix_len;
        // 1. swap u_i right past all previously collected blocks
        for (idx, w) in emitted.iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            let i2 = us.len() - 1 - idx / vs.len();
            let j2 = idx % vs.len();
            let eq = (oracles.swap_u)(i, i2, j2)?;
            check_swap_shape(&eq, u_i, w)?;
            b.embed(pos, &eq)
                .map_err(|e| RewriteError::OracleFailure(format!("swap_u({i},{i2},{j2}): {e}")))?;
            pos += w.len();
        }
        // 2. drag u_i through V with pairwise rewrites
        let mut pair_certs = Vec::with_capacity(vs.len());
        for j in 0..vs.len() {
            let eq = (oracles.pairwise)(i, j)?;
            if !words_match(&eq.lhs, &commutator_word(u_i, &vs[j])) {
                return Err(RewriteError::OracleFailure(format!("pairwise({i},{j}) lhs mismatch")));
            }
            pair_certs.push(eq);
        }
        let mut cursor = pos;
        for (j, v) in vs.iter().enumerate() {
            let after_uv = cursor + u_i.len() + v.len();
            insert_commutator_tail(&mut b, after_uv, u_i, v)?;
            b.embed(cursor, &pair_certs[j])
                .map_err(|e| RewriteError::OracleFailure(format!("pairwise({i},{j}): {e}")))?;
            cursor += pair_certs[j].rhs.len() + v.len();
        }
        // word: ... [w_i1 v_1 ... w_il v_l] [u_i] [u_i^-1] ... ; cancel u_i
        for q in (0..u_i.len()).rev() {
            b.delete_pair(cursor + q)?;
        }
        // 3. uninterleave: move each w_ij left past v_1 .. v_{j-1}
        if vs.is_empty() {
            continue;
        }
        let mut fixed = pos + pair_certs[0].rhs.len();
        let mut v_seen = vs[0].len();
        for j in 1..vs.len() {
            let w_len = pair_certs[j].rhs.len();
            if w_len > 0 {
                let mut at = fixed + v_seen;
                for j2 in (0..j).rev() {
                    let v2 = &vs[j2];
                    if v2.is_empty() {
                        continue;
                    }
                    let eq = (oracles.swap_v)(j2, i, j)?;
                    check_swap_shape(&eq, v2, &pair_certs[j].rhs)?;
                    at -= v2.len();
                    b.embed(at, &eq)
                        .map_err(|e| RewriteError::OracleFailure(format!("swap_v({j2},{i},{j}): {e}")))?;
                }
            }
            fixed += w_len;
            v_seen += vs[j].len();
        }
        for eq in pair_certs {
            emitted.push(eq.rhs);
        }
    }
    // word now: [all blocks] V V^-1 ; cancel from inside out
    let blocks_total: usize = emitted.iter().map(|w| w.len()).sum();
    for q in (0..v_total).rev() {
        b.delete_pair(blocks_total + q)?;
    }
    Ok((b.finish(), emitted))
}

fn check_swap_shape(eq: &EquationCert, left: &[Letter], right: &[Letter]) -> Result<(), RewriteError> {
    if words_match(&eq.lhs, &concat(left, right)) && words_match(&eq.rhs, &concat(right, left)) {
        Ok(())
    } else {
        Err(RewriteError::OracleFailure("swap certificate has the wrong shape".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::word::eval;
    use crate::unipotent::GroupCtx;

    fn family() -> MoatFamily {
        let ctx = GroupCtx::new(3, 1, 3).unwrap();
        MoatFamily::new(ctx, &[1, 2, 3]).unwrap()
    }

    fn gen(f: &MoatFamily, tag: usize, i: usize, j: usize, coeffs: &[u64]) -> Letter {
        let fld = f.ctx.field();
        let poly = crate::algebra::GradedPoly::from_coeffs(&fld, coeffs, f.ctx.cap(i, j)).unwrap();
        f.letter(tag, f.ctx.generator(i, j, poly).unwrap()).unwrap()
    }

    #[test]
    fn drag_zero_factors_is_tautology() {
        let fam = family();
        let u = vec![gen(&fam, 0, 1, 2, &[1])];
        let eq = drag(&fam, &u, &[], None).unwrap();
        assert_eq!(eq.count(), 0);
        assert_eq!(eq.lhs, eq.rhs);
    }

    #[test]
    fn drag_single_pair_budget_and_eval() {
        let fam = family();
        let u = vec![gen(&fam, 1, 0, 1, &[1])];
        let v = vec![gen(&fam, 0, 2, 3, &[2])];
        let eq = drag(&fam, &u, &[v.clone()], None).unwrap();
        assert_eq!(eq.count(), (u.len() + v.len()) as u64);
        let ctx = fam.ctx;
        assert_eq!(eval(&ctx, &eq.lhs).unwrap(), eval(&ctx, &eq.rhs).unwrap());
        assert_eq!(eq.rhs.last().unwrap().element, u[0].element);
    }

    #[test]
    fn drag_respects_paper_budget() {
        let fam = family();
        let u = vec![gen(&fam, 0, 1, 2, &[1]), gen(&fam, 0, 2, 3, &[1, 1])];
        let vs: Vec<Word> = vec![
            vec![gen(&fam, 1, 0, 1, &[1])],
            Vec::new(),
            vec![gen(&fam, 1, 0, 1, &[2]), gen(&fam, 1, 2, 3, &[1])],
        ];
        let eq = drag(&fam, &u, &vs, None).unwrap();
        let bound = (vs.len() * u.len() + vs.iter().map(|v| v.len()).sum::<usize>()) as u64;
        assert!(eq.count() <= bound, "count {} > bound {}", eq.count(), bound);
        let ctx = fam.ctx;
        assert_eq!(eval(&ctx, &eq.lhs).unwrap(), eval(&ctx, &eq.rhs).unwrap());
    }
}
