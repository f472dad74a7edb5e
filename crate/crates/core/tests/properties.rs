mod common;

use common::*;
use nonrep::kspecial::{
    check_witness, construct_3k_plus_1, find_k_bad, is_k_special, min_distance_criterion,
    search_fk, FkOptions,
};
use nonrep::sequences::{block_expand, find_square, thue_squarefree, Sequence};
use nonrep::trees::{
    chromatic_index_exact, derived_coloring, find_repetitive_path, is_nonrepetitive,
    theorem3_coloring, verify_theorem2_forward, EdgeColoring, PiOptions, SearchMode, TreeShape,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn seq(symbols: &[u32]) -> Sequence {
    Sequence::from_symbols(symbols.to_vec())
}

fn word(max_len: usize, alphabet: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..alphabet, 0..=max_len)
}

/// A random sequence in which every `2k` consecutive symbols are distinct, so
/// that a fair share of samples is k-special.
fn spread_sequence(rng: &mut StdRng, k: usize, len: usize) -> Sequence {
    let alphabet = rng.gen_range(2 * k as u32..=4 * k as u32 + 2);
    let mut s: Vec<u32> = Vec::with_capacity(len);
    while s.len() < len {
        let recent = &s[s.len().saturating_sub(2 * k - 1)..];
        let c = rng.gen_range(0..alphabet);
        if !recent.contains(&c) {
            s.push(c);
        }
    }
    Sequence::new(s, alphabet).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn find_square_matches_naive(w in word(40, 3)) {
        let got = find_square(&seq(&w)).map(|s| (s.start, s.half_length));
        prop_assert_eq!(got, naive_find_square(&w));
    }

    #[test]
    fn one_special_iff_square_free(w in word(30, 3)) {
        prop_assert_eq!(is_k_special(&seq(&w), 1).unwrap(), naive_find_square(&w).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn find_k_bad_matches_brute_force(w in word(9, 4), k in 1usize..=3) {
        let s = seq(&w);
        let got = find_k_bad(&s, k).unwrap();
        prop_assert_eq!(got.as_ref().map(|g| g.indices.clone()), naive_min_k_bad(&w, k));
        if let Some(g) = got {
            prop_assert!(check_witness(&s, &g, k).unwrap());
            let zero: Vec<usize> = g.indices.iter().map(|i| i - 1).collect();
            prop_assert!(is_k_bad(&w, &zero, g.valley, k));
        }
    }

    #[test]
    fn block_expansion_shape(w in word(30, 3), width in 1usize..=5) {
        let e = block_expand(&seq(&w), width).unwrap();
        prop_assert_eq!(e.len(), w.len() * width);
        for (i, &x) in e.symbols().iter().enumerate() {
            prop_assert_eq!(x / width as u32, w[i / width]);
            prop_assert_eq!(x % width as u32, (i % width) as u32);
        }
    }

    #[test]
    fn derived_color_is_symbol_at_path_index(k in 1usize..=3, h in 1usize..=4, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s: Vec<u32> = (0..k * h).map(|_| rng.gen_range(0..5)).collect();
        let c = derived_coloring(TreeShape::new(k, h).unwrap(), &seq(&s)).unwrap();
        for v in 2..=vertex_count(k, h) {
            // index = sum of 1-based child positions from the root down
            let (mut x, mut index) = (v, 0);
            while x > 1 {
                let p = parent_by_levels(k, x);
                index += x - (k * (p - 1) + 2) + 1;
                x = p;
            }
            prop_assert_eq!(c.color(v), s[index - 1] + 1);
        }
    }
}

/// Minimum distance criterion: equal symbols fewer than `2k` apart exist
/// exactly when there is a k-bad index sequence with at most 4 indices and
/// valley at most 3, and then the word is not k-special. Checked on every
/// word of length at most 8 over at most 4 symbols.
#[test]
fn min_distance_criterion_by_enumeration() {
    for k in 1..=2 {
        for len in 0..=8u32 {
            for code in 0..4usize.pow(len) {
                let w: Vec<u32> = (0..len)
                    .map(|i| (code / 4usize.pow(i) % 4) as u32)
                    .collect();
                let s = seq(&w);
                let close = min_distance_criterion(&s, k).unwrap().is_some();
                let short = all_k_bad(&w, k, 4).iter().any(|idx| {
                    let m = (1..idx.len())
                        .find(|&j| idx[j] > idx[j - 1])
                        .unwrap_or(idx.len());
                    m <= 3
                });
                assert_eq!(close, short, "k={k} w={w:?}");
                if close {
                    assert!(!is_k_special(&s, k).unwrap(), "k={k} w={w:?}");
                }
            }
        }
    }
}

/// A repetitive path in a derived coloring yields a k-bad index sequence,
/// and so derived colorings of k-special sequences are nonrepetitive.
#[test]
fn derived_colorings_of_special_sequences_are_nonrepetitive() {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 1..=3 {
        for h in 2..=3 {
            let mut special = 0;
            for _ in 0..500 {
                let s = spread_sequence(&mut rng, k, k * h);
                assert!(
                    verify_theorem2_forward(&s, k, h).unwrap(),
                    "k={k} h={h} {s}"
                );
                if is_k_special(&s, k).unwrap() {
                    special += 1;
                    let c = derived_coloring(TreeShape::new(k, h).unwrap(), &s).unwrap();
                    assert!(is_nonrepetitive(&c).unwrap(), "k={k} h={h} {s}");
                }
            }
            assert!(
                special > 50,
                "too few special samples for k={k} h={h}: {special}"
            );
        }
    }
}

fn random_coloring(rng: &mut StdRng, shape: TreeShape, palette: u32, proper: bool) -> Vec<u32> {
    let n = shape.vertex_count();
    let mut colors = vec![0u32; n + 1];
    for v in 2..=n {
        loop {
            let c = rng.gen_range(1..=palette);
            let p = shape.parent(v);
            let clash = proper
                && ((p > 1 && colors[p] == c)
                    || shape.children(p).any(|s| s < v && colors[s] == c));
            if !clash {
                colors[v] = c;
                break;
            }
        }
    }
    colors
}

#[test]
fn verifier_matches_naive_path_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for (k, h) in [(2, 3), (3, 2), (2, 4), (1, 7)] {
        let shape = TreeShape::new(k, h).unwrap();
        for i in 0..200 {
            let palette = rng.gen_range(k as u32 + 1..=k as u32 + 3);
            let colors = random_coloring(&mut rng, shape, palette, i % 2 == 0);
            let c = EdgeColoring::new(shape, palette, &colors[2..]).unwrap();
            let got = find_repetitive_path(&c).unwrap();
            let want = naive_first_repetitive(k, &colors, shape.vertex_count());
            assert_eq!(got.as_ref().map(|w| (w.u, w.v)), want, "{colors:?}");
            if let Some(w) = got {
                assert_eq!(w.color_word, naive_path_word(k, &colors, w.u, w.v));
                assert!(is_square(&w.color_word));
            }
        }
    }
}

#[test]
fn longest_special_witnesses_are_prefix_closed() {
    for (k, ns) in [(1, 2..=2), (2, 3..=6), (3, 6..=8)] {
        for n in ns {
            let r = search_fk(k, n, &FkOptions::default()).unwrap();
            assert!(r.exhaustive);
            assert!(!r.witnesses.is_empty());
            for w in &r.witnesses {
                assert_eq!(w.len(), r.max_length);
                assert!(is_first_use_normalized(w), "{w:?}");
                let s = Sequence::from_one_based(w).unwrap();
                for len in 1..=w.len() {
                    assert!(
                        is_k_special(&s.prefix(len), k).unwrap(),
                        "k={k} n={n} {w:?}[..{len}]"
                    );
                }
            }
        }
    }
}

#[test]
fn labeling_round_trip() {
    for (k, h) in [(2, 15), (3, 10), (4, 8), (5, 7), (1, 1000), (315, 2)] {
        let shape = TreeShape::new(k, h).unwrap();
        assert_eq!(shape.vertex_count(), vertex_count(k, h));
        assert!(shape.vertex_count() <= 100_000);
        for v in 2..=shape.vertex_count() {
            let p = shape.parent(v);
            assert_eq!(p, parent_by_levels(k, v));
            assert!(shape.children(p).contains(&v));
            assert_eq!(shape.depth(v), shape.depth(p) + 1);
            assert_eq!(shape.child_position(v), v - shape.children(p).start() + 1);
        }
    }
}

fn exists(k: usize, h: usize, q: u32) -> bool {
    let r = chromatic_index_exact(
        TreeShape::new(k, h).unwrap(),
        q,
        SearchMode::Exists,
        &PiOptions::default(),
    )
    .unwrap();
    assert!(r.exhaustive);
    if let Some(w) = &r.witness_coloring {
        assert!(is_nonrepetitive(w).unwrap());
        assert!(w.is_proper());
        assert!(w.colors_used() as u32 <= q);
    }
    r.witness_coloring.is_some()
}

/// The symmetry-broken search agrees with a plain search over all colorings.
#[test]
fn exact_search_matches_brute_force() {
    for (k, h, q) in [
        (2, 2, 3),
        (2, 2, 4),
        (2, 3, 3),
        (2, 3, 4),
        (3, 2, 4),
        (3, 2, 5),
        (1, 4, 2),
        (1, 4, 3),
        (2, 4, 4),
        (2, 4, 5),
    ] {
        let brute = !all_nonrepetitive(k, h, q, 1).is_empty();
        assert_eq!(exists(k, h, q), brute, "T({k},{h}) on {q} colors");
    }
}

#[test]
fn class_counts_match_orbit_enumeration() {
    for (h, classes) in [(2, 2), (3, 6)] {
        let all = all_nonrepetitive(2, h, 4, usize::MAX);
        assert_eq!(orbit_count(2, h, &all), classes);
        let r = chromatic_index_exact(
            TreeShape::new(2, h).unwrap(),
            4,
            SearchMode::CountClasses,
            &PiOptions::default(),
        )
        .unwrap();
        assert_eq!(r.class_count, Some(classes as u64));
    }
}

#[test]
fn existence_is_monotone_in_palette() {
    for (k, h) in [(2, 2), (2, 3), (3, 2), (1, 5), (2, 4)] {
        let found: Vec<bool> = (1..=7).map(|q| exists(k, h, q)).collect();
        assert!(
            found.windows(2).all(|p| !p[0] || p[1]),
            "T({k},{h}): {found:?}"
        );
        assert!(found[6]);
    }
}

#[test]
fn special_sequence_colorings_end_to_end() {
    for k in 1..=3 {
        for h in 3..=5 {
            let c = theorem3_coloring(k, h).unwrap();
            assert!(is_nonrepetitive(&c).unwrap(), "k={k} h={h}");
            assert!(c.colors_used() <= 3 * k + 1);
            assert!(is_k_special(&construct_3k_plus_1(k, k * h).unwrap(), k).unwrap());
        }
    }
}

#[test]
fn block_expanded_thue_is_special() {
    for k in 1..=4 {
        let s = block_expand(&thue_squarefree(40), k + 1)
            .unwrap()
            .prefix(40 * k);
        assert!(is_k_special(&s, k).unwrap(), "k={k}");
    }
}
