//! Invariance under `A_i -> eps^i A_i` for `eps` an `n`-th root of unity.
//!
//! The substitution multiplies a monomial of `A`-weight `w = sum i*e_i` by
//! `eps^w`. Grouping `Q = sum_r Q_r` by `w mod n` gives
//! `Q(eps . A) = sum_r eps^r Q_r`, and since the characters `eps -> eps^r`
//! for `r = 0..n-1` are linearly independent on `U_n`, `Q` is invariant
//! exactly when `Q_r = 0` for `r != 0`. The same grouping turns the product
//! over `U_n` into `prod_{z^n = 1} q(z) = Res_z(z^n - 1, q)` with
//! `q(z) = sum_r Q_r z^r`. `C` variables carry weight zero.

use crate::algebra::{Coeff, Monomial, MultiPoly, Var};
use crate::error::Result;
use crate::resultants::resultant;

/// `sum i * e_i` over the `A_i` factors of `m`.
pub fn a_weight(m: &Monomial) -> u64 {
    m.iter()
        .filter_map(|(v, e)| v.a_index().map(|i| i as u64 * e as u64))
        .sum()
}

/// `A`-degree of `m`, counting only `A` variables.
pub fn a_degree(m: &Monomial) -> u32 {
    m.iter().filter(|(v, _)| matches!(v, Var::A(_))).map(|(_, e)| e).sum()
}

/// `Q_r` for `r = 0..n`, the parts of `Q` with `A`-weight `r` mod `n`.
pub fn residue_parts<K: Coeff>(q: &MultiPoly<K>, n: u32) -> Vec<MultiPoly<K>> {
    let mut parts = vec![MultiPoly::zero(); n as usize];
    for (m, c) in q.terms() {
        parts[(a_weight(m) % n as u64) as usize].add_term(m.clone(), c);
    }
    parts
}

pub fn is_un_invariant<K: Coeff>(q: &MultiPoly<K>, n: u32) -> bool {
    q.terms().all(|(m, _)| a_weight(m).is_multiple_of(n as u64))
}

/// `prod_{eps in U_n} Q(eps^i A_i)`, normalized so that an invariant `Q`
/// maps to `Q^n`.
pub fn symmetrize<K: Coeff>(q: &MultiPoly<K>, n: u32) -> Result<MultiPoly<K>> {
    if q.is_zero() {
        return Ok(MultiPoly::zero());
    }
    if is_un_invariant(q, n) {
        return Ok(q.pow(n));
    }
    let parts = residue_parts(q, n);
    let k = parts.iter().rposition(|p| !p.is_zero()).expect("q is nonzero");
    let mut g = vec![MultiPoly::zero(); n as usize + 1];
    g[0] = MultiPoly::one().neg();
    g[n as usize] = MultiPoly::one();
    resultant(&g, n as usize, &parts[..=k], k)
}
