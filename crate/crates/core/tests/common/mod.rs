//! Independent brute-force oracles shared by the integration suites. Nothing
//! here calls into the search engines it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Parent of `v` in the BFS-labeled complete k-ary tree, computed by walking
/// levels rather than by the closed formula used in the library.
pub fn parent_by_levels(k: usize, v: usize) -> usize {
    assert!(v >= 2);
    // level d holds labels start_d .. start_d + k^d - 1
    let (mut start, mut width) = (1usize, 1usize);
    loop {
        let next = start + width;
        if v < next + width * k {
            let offset = v - next;
            return start + offset / k;
        }
        start = next;
        width *= k;
    }
}

pub fn vertex_count(k: usize, h: usize) -> usize {
    (0..=h).map(|d| k.pow(d as u32)).sum()
}

fn ancestors(k: usize, mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while v > 1 {
        v = parent_by_levels(k, v);
        out.push(v);
    }
    out
}

/// Colors along the path from `u` to `v`; `colors[x]` colors the edge above `x`.
pub fn naive_path_word(k: usize, colors: &[u32], u: usize, v: usize) -> Vec<u32> {
    let au = ancestors(k, u);
    let av = ancestors(k, v);
    let lca = *au.iter().find(|x| av.contains(x)).unwrap();
    let mut word: Vec<u32> = au
        .iter()
        .take_while(|&&x| x != lca)
        .map(|&x| colors[x])
        .collect();
    let down: Vec<u32> = av
        .iter()
        .take_while(|&&x| x != lca)
        .map(|&x| colors[x])
        .collect();
    word.extend(down.into_iter().rev());
    word
}

pub fn is_square(w: &[u32]) -> bool {
    !w.is_empty() && w.len().is_multiple_of(2) && w[..w.len() / 2] == w[w.len() / 2..]
}

/// First `(u, v)` with `u < v`, ordered by `v` then `u`, whose path is a square.
pub fn naive_first_repetitive(k: usize, colors: &[u32], n: usize) -> Option<(usize, usize)> {
    (2..=n).find_map(|v| {
        (1..v)
            .find(|&u| is_square(&naive_path_word(k, colors, u, v)))
            .map(|u| (u, v))
    })
}

/// Least-start, then shortest, square factor as `(start, half)`.
pub fn naive_find_square(w: &[u32]) -> Option<(usize, usize)> {
    for start in 0..w.len() {
        for half in 1..=(w.len() - start) / 2 {
            if is_square(&w[start..start + 2 * half]) {
                return Some((start, half));
            }
        }
    }
    None
}

/// Conditions (a)-(d) of a k-bad index sequence, 0-based indices, `m` the
/// 1-based valley.
pub fn is_k_bad(s: &[u32], idx: &[usize], m: usize, k: usize) -> bool {
    let n = idx.len();
    if n < 2 || n % 2 == 1 || m < 2 || m > n {
        return false;
    }
    let r = n / 2;
    (0..r).all(|j| s[idx[j]] == s[idx[j + r]])
        && (0..m - 1).all(|j| idx[j] > idx[j + 1])
        && (m - 1..n - 1).all(|j| idx[j] < idx[j + 1])
        && idx.windows(2).all(|p| p[0].abs_diff(p[1]) <= k)
        && (m == n || idx[m] < idx[m - 1] + k)
}

/// Every k-bad index sequence of `s` (0-based) with at most `max_len`
/// indices, by enumerating all down-then-up index walks.
pub fn all_k_bad(s: &[u32], k: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn walk(
        s: &[u32],
        k: usize,
        max_len: usize,
        idx: &mut Vec<usize>,
        m: Option<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let len = idx.len();
        // m = None: still descending, so the valley is the last index
        let valley = m.unwrap_or(len);
        if len >= 2 && len.is_multiple_of(2) && is_k_bad(s, idx, valley, k) {
            out.push(idx.clone());
        }
        if len == max_len {
            return;
        }
        let last = idx[len - 1];
        if m.is_none() {
            for step in 1..=k.min(last) {
                idx.push(last - step);
                walk(s, k, max_len, idx, None, out);
                idx.pop();
            }
        }
        if len >= 2 {
            let limit = if m.is_none() { k - 1 } else { k };
            for step in 1..=limit {
                if last + step < s.len() {
                    idx.push(last + step);
                    walk(s, k, max_len, idx, Some(valley), out);
                    idx.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..s.len() {
        walk(s, k, max_len, &mut vec![start], None, &mut out);
    }
    out
}

/// Shortest k-bad index sequence (1-based), ties broken lexicographically.
pub fn naive_min_k_bad(s: &[u32], k: usize) -> Option<Vec<usize>> {
    all_k_bad(s, k, 2 * s.len())
        .into_iter()
        .map(|w| w.into_iter().map(|i| i + 1).collect::<Vec<_>>())
        .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
}

/// Every nonrepetitive coloring of `T_(k,h)` on `q` colors (no symmetry
/// breaking), found by coloring edges in label order and checking every path
/// that ends at the new edge.
pub fn all_nonrepetitive(k: usize, h: usize, q: u32, limit: usize) -> Vec<Vec<u32>> {
    let n = vertex_count(k, h);
    let mut colors = vec![0u32; n + 1];
    let mut out = Vec::new();
    fn go(
        k: usize,
        n: usize,
        q: u32,
        v: usize,
        colors: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if v > n {
            out.push(colors[2..].to_vec());
            return;
        }
        for c in 1..=q {
            colors[v] = c;
            if (1..v).all(|u| !is_square(&naive_path_word(k, colors, u, v))) {
                go(k, n, q, v + 1, colors, out, limit);
            }
        }
        colors[v] = 0;
    }
    go(k, n, q, 2, &mut colors, &mut out, limit);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every automorphism of `T_(k,h)` as a vertex map (index 0 unused).
pub fn automorphisms(k: usize, h: usize) -> Vec<Vec<usize>> {
    let n = vertex_count(k, h);
    let internal = vertex_count(k, h - 1);
    let perms = permutations(k);
    let children = |v: usize| (k * (v - 1) + 2..=k * v + 1).collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut choice = vec![0usize; internal + 1];
    loop {
        let mut map = vec![0usize; n + 1];
        map[1] = 1;
        for x in 1..=internal {
            let (from, to) = (children(x), children(map[x]));
            for (j, &c) in from.iter().enumerate() {
                map[c] = to[perms[choice[x]][j]];
            }
        }
        out.push(map);
        // odometer over the per-vertex permutation choices
        let mut x = 1;
        while x <= internal {
            choice[x] += 1;
            if choice[x] < perms.len() {
                break;
            }
            choice[x] = 0;
            x += 1;
        }
        if x > internal {
            return out;
        }
    }
}

pub fn relabel_first_use(word: &[u32]) -> Vec<u32> {
    let mut seen: Vec<u32> = Vec::new();
    word.iter()
        .map(|c| match seen.iter().position(|s| s == c) {
            Some(p) => p as u32 + 1,
            None => {
                seen.push(*c);
                seen.len() as u32
            }
        })
        .collect()
}

/// Number of orbits of `colorings` (edge color words) under tree
/// automorphisms combined with color permutations.
pub fn orbit_count(k: usize, h: usize, colorings: &[Vec<u32>]) -> usize {
    let autos = automorphisms(k, h);
    let n = vertex_count(k, h);
    let mut reps = BTreeSet::new();
    for c in colorings {
        let mut best: Option<Vec<u32>> = None;
        for map in &autos {
            let mut image = vec![0u32; n + 1];
            for v in 2..=n {
                image[map[v]] = c[v - 2];
            }
            let word = relabel_first_use(&image[2..]);
            if best.as_ref().is_none_or(|b| word < *b) {
                best = Some(word);
            }
        }
        reps.insert(best.unwrap());
    }
    reps.len()
}

/// Normalizes by first use, as the longest-sequence search does.
pub fn is_first_use_normalized(w: &[u32]) -> bool {
    relabel_first_use(w) == w
}

/// The longest k-special words on `3k` symbols have this shape:
/// `1..2k, 1, 2k+1..3k, x1, k+2..2k, 1, x2..xk, x1, 2k+1` for each
/// arrangement `x` of `2..=k+1`.
pub fn fk_3k_template(k: usize) -> BTreeSet<Vec<u32>> {
    let k32 = k as u32;
    permutations(k)
        .into_iter()
        .map(|p| {
            let x: Vec<u32> = p.iter().map(|&i| i as u32 + 2).collect();
            let mut w: Vec<u32> = (1..=2 * k32).collect();
            w.push(1);
            w.extend(2 * k32 + 1..=3 * k32);
            w.push(x[0]);
            w.extend(k32 + 2..=2 * k32);
            w.push(1);
            w.extend(&x[1..]);
            w.push(x[0]);
            w.push(2 * k32 + 1);
            w
        })
        .collect()
}
