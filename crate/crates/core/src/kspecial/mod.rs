//! k-bad index sequences and k-special sequences.
//!
//! A sequence is k-special when no index list `i_1 .. i_2r` exists with
//!
//! * (a) `s_(i_1) .. s_(i_2r)` a square,
//! * (b) `i_1 > .. > i_m < i_(m+1) < .. < i_2r` for some `1 < m <= 2r`,
//! * (c) consecutive indices at most `k` apart,
//! * (d) `i_(m+1) < i_m + k` when `m < 2r`.
//!
//! These are exactly the index patterns read off a path in the k-ary tree
//! coloring derived from the sequence (see [`crate::trees::derived_coloring`]).

mod search;
mod witness;

pub use search::{search_fk, FkOptions, FkReport};
pub use witness::KBadEngine;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{block_expand, thue_aba_bab_free, thue_squarefree, Sequence, Symbol};

/// A k-bad index sequence: 1-based `indices` and the 1-based valley `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KBadWitness {
    pub indices: Vec<usize>,
    pub valley: usize,
}

impl KBadWitness {
    /// Builds a witness from 1-based indices, deriving the valley.
    pub fn from_indices(indices: Vec<usize>) -> Self {
        let valley = witness::valley_of(&indices);
        KBadWitness { indices, valley }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroK)
    } else {
        Ok(())
    }
}

/// The shortest k-bad index sequence of `seq`, ties broken lexicographically.
pub fn find_k_bad(seq: &Sequence, k: usize) -> Result<Option<KBadWitness>> {
    check_k(k)?;
    let raw = KBadEngine::new().minimal_witness(seq.symbols(), k);
    Ok(raw.map(|idx| KBadWitness::from_indices(idx.into_iter().map(|i| i + 1).collect())))
}

pub fn is_k_special(seq: &Sequence, k: usize) -> Result<bool> {
    check_k(k)?;
    Ok(!KBadEngine::new().has_witness(seq.symbols(), k))
}

/// Re-checks conditions (a)-(d) for `w` directly.
pub fn check_witness(seq: &Sequence, w: &KBadWitness, k: usize) -> Result<bool> {
    let s = seq.symbols();
    for &i in &w.indices {
        if i == 0 || i > s.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: s.len(),
            });
        }
    }
    let idx = &w.indices;
    let n = idx.len();
    let m = w.valley;
    if n < 2 || n % 2 == 1 || m < 2 || m > n {
        return Ok(false);
    }
    let r = n / 2;
    let sym = |j: usize| s[idx[j] - 1];
    // (a)
    if (0..r).any(|j| sym(j) != sym(j + r)) {
        return Ok(false);
    }
    // (b), with m 1-based: strictly down through position m, then up
    let down = idx[..m].windows(2).all(|p| p[0] > p[1]);
    let up = idx[m - 1..].windows(2).all(|p| p[0] < p[1]);
    if !(down && up) {
        return Ok(false);
    }
    // (c)
    if idx.windows(2).any(|p| p[0].abs_diff(p[1]) > k) {
        return Ok(false);
    }
    // (d)
    if m < n && idx[m] >= idx[m - 1] + k {
        return Ok(false);
    }
    Ok(true)
}

/// Positions `i < j < i + 2k` (1-based) holding equal symbols, least `i`
/// first.
pub fn min_distance_criterion(seq: &Sequence, k: usize) -> Result<Option<(usize, usize)>> {
    check_k(k)?;
    let s = seq.symbols();
    for i in 0..s.len() {
        for j in i + 1..(i + 2 * k).min(s.len()) {
            if s[i] == s[j] {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// `1, 2, .., n, 1, 2, .., c`.
pub fn s_n_c(n: usize, c: usize) -> Result<Sequence> {
    if c >= n {
        return Err(Error::InvalidParameter(format!(
            "S_(n,c) needs n > c, got n={n}, c={c}"
        )));
    }
    let symbols = (0..n).chain(0..c).map(|x| x as Symbol).collect();
    Sequence::new(symbols, n as u32)
}

/// A k-special sequence on `3k + 1` symbols: the aba/bab-free word with every
/// `c` replaced by the block `c0 .. ck` and every `a`, `b` by `a1 .. ak`,
/// `b1 .. bk`.
///
/// Symbols: `c_u = u`, `a_u = k + u`, `b_u = 2k + u`.
pub fn construct_3k_plus_1(k: usize, target_length: usize) -> Result<Sequence> {
    check_k(k)?;
    let base = thue_aba_bab_free(target_length / k + 1);
    let k32 = k as Symbol;
    let mut out = Vec::with_capacity(target_length + k + 1);
    for &t in base.symbols() {
        if out.len() >= target_length {
            break;
        }
        match t {
            2 => out.extend(0..=k32),
            0 => out.extend(k32 + 1..=2 * k32),
            _ => out.extend(2 * k32 + 1..=3 * k32),
        }
    }
    out.truncate(target_length);
    Sequence::new(out, 3 * k32 + 1)
}

/// The block expansion `S^(k+1)` of the square-free Thue word, on `3(k+1)`
/// symbols.
pub fn corollary_3k3_sequence(k: usize, target_length: usize) -> Result<Sequence> {
    check_k(k)?;
    let base = thue_squarefree(target_length.div_ceil(k + 1));
    Ok(block_expand(&base, k + 1)?.prefix(target_length))
}
