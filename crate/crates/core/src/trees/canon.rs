//! Canonical forms of colorings up to tree automorphisms and color
//! permutations.
//!
//! An automorphism of a complete k-ary tree permutes the children of every
//! vertex independently. The canonical form is the lexicographically least
//! breadth-first color word over all automorphisms and all relabelings of the
//! colors. It is built position by position: each target vertex takes one of
//! the unused children of its parent's source, and colors are relabeled in
//! order of first appearance. Only children tying for the least next color
//! are branched on, and a branch dies as soon as it exceeds the best word.

use super::{EdgeColoring, TreeShape};

struct Canon<'a> {
    shape: TreeShape,
    colors: &'a [u32],
    best: Vec<u32>,
    /// `best` is the identity image, still unbeaten.
    identity_best: bool,
    stop_on_improvement: bool,
    improved: bool,
    src: Vec<usize>,
    word: Vec<u32>,
    map: Vec<u32>,
}

impl Canon<'_> {
    /// Fills target vertex `p`. `tied` says whether `word` so far equals
    /// the prefix of `best`.
    fn fill(&mut self, p: usize, next_label: u32, tied: bool) {
        if self.improved && self.stop_on_improvement {
            return;
        }
        let n = self.shape.vertex_count();
        if p > n {
            if !tied {
                self.best.copy_from_slice(&self.word);
                self.improved = true;
                self.identity_best = false;
            }
            return;
        }
        let tp = self.shape.parent(p);
        let sp = self.src[tp];
        let first_sibling = self.shape.children(tp).next().expect("p is a child");
        let value_of = |c: &Self, w: usize| {
            let m = c.map[c.colors[w] as usize];
            if m == 0 {
                next_label
            } else {
                m
            }
        };
        let candidates: Vec<usize> = self
            .shape
            .children(sp)
            .filter(|w| !(first_sibling..p).any(|q| self.src[q] == *w))
            .collect();
        let least = candidates
            .iter()
            .map(|&w| value_of(self, w))
            .min()
            .expect("a free child");
        let slot = p - 2;
        let tied_here = tied && least == self.best[slot];
        if tied && least > self.best[slot] {
            return;
        }
        for w in candidates {
            if value_of(self, w) != least {
                continue;
            }
            let c = self.colors[w] as usize;
            let fresh = self.map[c] == 0;
            if fresh {
                self.map[c] = next_label;
            }
            self.src[p] = w;
            self.word[slot] = least;
            self.fill(p + 1, next_label + fresh as u32, tied_here);
            if fresh {
                self.map[c] = 0;
            }
            if self.improved && self.stop_on_improvement {
                return;
            }
        }
    }
}

fn relabel_by_first_use(colors: &[u32], palette: usize) -> Vec<u32> {
    let mut map = vec![0u32; palette + 1];
    let mut next = 1;
    colors
        .iter()
        .map(|&c| {
            let m = &mut map[c as usize];
            if *m == 0 {
                *m = next;
                next += 1;
            }
            *m
        })
        .collect()
}

fn run(coloring: &EdgeColoring, stop_on_improvement: bool) -> (Vec<u32>, bool) {
    let shape = coloring.shape();
    let n = shape.vertex_count();
    let palette = coloring
        .edge_colors()
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(coloring.palette()) as usize;
    let identity = relabel_by_first_use(coloring.edge_colors(), palette);
    let mut src = vec![0; n + 1];
    src[1] = 1;
    let mut c = Canon {
        shape,
        colors: &coloring.colors,
        best: identity,
        identity_best: true,
        stop_on_improvement,
        improved: false,
        src,
        word: vec![0; n - 1],
        map: vec![0; palette + 1],
    };
    c.fill(2, 1, true);
    (c.best, c.identity_best)
}

/// The least breadth-first color word of any coloring isomorphic to
/// `coloring`, with colors numbered from 1 in order of first use.
pub fn canonical_form(coloring: &EdgeColoring) -> Vec<u32> {
    run(coloring, false).0
}

/// Whether the coloring, relabeled by first use, is its own canonical form.
pub fn is_canonical(coloring: &EdgeColoring) -> bool {
    run(coloring, true).1
}
