//! Explicit nonrepetitive colorings.

use super::{derived_coloring, find_repetitive_path, EdgeColoring, TreeShape};
use crate::error::{Error, Result};
use crate::kspecial::{construct_3k_plus_1, find_k_bad, s_n_c};
use crate::sequences::Sequence;

fn fixed(k: usize, h: usize, palette: u32, colors: &[u32]) -> EdgeColoring {
    let shape = TreeShape::new(k, h).expect("small fixed shape");
    EdgeColoring::new(shape, palette, colors).expect("fixed coloring fits its shape")
}

/// The diagonal 4-coloring of `T_(2,2)`, derived from `1, 2, 3, 4`.
pub fn figure1_type_i() -> EdgeColoring {
    fixed(2, 2, 4, &[1, 2, 2, 3, 3, 4])
}

/// The level-by-level 4-coloring of `T_(2,2)`.
pub fn figure1_type_ii() -> EdgeColoring {
    fixed(2, 2, 4, &[1, 2, 3, 4, 3, 4])
}

/// The 4-coloring of `T_(2,3)` extending the type I coloring.
pub fn figure2() -> EdgeColoring {
    fixed(2, 3, 4, &[1, 2, 2, 3, 3, 4, 3, 4, 4, 1, 4, 1, 1, 2])
}

/// The 5-coloring of `T_(2,4)` extending [`figure2`]: below each of the
/// vertices `8 ..= 15` the left edge gets the new color 5 and the right edge
/// gets `1, 1, 3, 4, 2, 3, 2, 3` in order.
pub fn extend_t24_example() -> EdgeColoring {
    const RIGHT: [u32; 8] = [1, 1, 3, 4, 2, 3, 2, 3];
    let mut colors = figure2().edge_colors().to_vec();
    colors.extend(RIGHT.iter().flat_map(|&c| [5, c]));
    fixed(2, 4, 5, &colors)
}

/// The coloring of `T_(k,2)` on `floor(3k/2) + 1` colors: level-one edges
/// get `0 .. k`, and below the edge colored `i` come the `floor(k/2) + 1`
/// colors `k, k+1, ..` followed by `i+1, .., i+m (mod k)` with
/// `m = ceil(k/2) - 1`. Colors are shifted to 1-based.
pub fn sv_coloring_h2(k: usize) -> Result<EdgeColoring> {
    let shape = TreeShape::new(k, 2)?;
    let high = k / 2 + 1;
    let m = k.div_ceil(2) - 1;
    let palette = (k + high) as u32;
    let mut colors: Vec<u32> = (0..k as u32).collect();
    for i in 0..k {
        colors.extend((k..k + high).map(|c| c as u32));
        colors.extend((1..=m).map(|j| ((i + j) % k) as u32));
    }
    colors.iter_mut().for_each(|c| *c += 1);
    EdgeColoring::new(shape, palette, &colors)
}

/// Colorings for `h >= 3` on at most `ceil((h+1)k/2)` colors: derived from
/// `S_(2k,k)` when `h = 3`, else from `S_(n,n-k)` with
/// `n = ceil((h+1)k/2)`.
pub fn corollary_small_h(k: usize, h: usize) -> Result<EdgeColoring> {
    if h < 3 {
        return Err(Error::InvalidParameter(format!("needs h >= 3, got h={h}")));
    }
    let shape = TreeShape::new(k, h)?;
    let seq = if h == 3 {
        s_n_c(2 * k, k)?
    } else {
        let n = ((h + 1) * k).div_ceil(2);
        s_n_c(n, n - k)?
    };
    derived_coloring(shape, &seq)
}

/// The coloring of `T_(k,h)` on `3k + 1` colors derived from a k-special
/// sequence.
pub fn theorem3_coloring(k: usize, h: usize) -> Result<EdgeColoring> {
    let shape = TreeShape::new(k, h)?;
    derived_coloring(shape, &construct_3k_plus_1(k, k * h)?)
}

/// Checks one direction of the equivalence between k-special sequences and
/// nonrepetitive derived colorings: a repetitive path in the coloring of
/// `T_(k,h)` derived from `seq` implies a k-bad index sequence in `seq`.
pub fn verify_theorem2_forward(seq: &Sequence, k: usize, h: usize) -> Result<bool> {
    let coloring = derived_coloring(TreeShape::new(k, h)?, seq)?;
    let repetitive = find_repetitive_path(&coloring)?.is_some();
    Ok(!repetitive || find_k_bad(seq, k)?.is_some())
}
