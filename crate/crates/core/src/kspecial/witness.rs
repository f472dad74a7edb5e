//! Search for k-bad index sequences.
//!
//! A k-bad sequence `i_1 .. i_2r` is read as two walks advanced in lockstep:
//! the first half `i_1 .. i_r` and the second half `i_(r+1) .. i_2r`, paired
//! position by position so that the square condition becomes "both walks sit
//! on equal symbols". The only coupling the pairing misses is the link step
//! `i_r -> i_(r+1)`, so the search is run once per value of `i_(r+1)` and the
//! link is checked when the first walk stops.
//!
//! Where the valley of the index sequence falls (inside the first half, on
//! the link, inside the second half, or nowhere) fixes which steps of each
//! walk go down and which go up; [`Phase`] tracks that, so a state is just
//! `(i_j, i_(j+r), phase)` and reachability over it decides k-specialness in
//! polynomial time.

use std::collections::HashMap;

use crate::sequences::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    // valley inside the first half
    FirstStart,
    FirstDown,
    FirstUp,
    // valley on the link step
    LinkStart,
    LinkDown,
    // valley inside the second half
    SecondDown,
    SecondUp,
    // no valley: the whole index sequence descends
    Descent,
}

const PHASE_COUNT: usize = 8;
const START_PHASES: [Phase; 4] = [
    Phase::FirstStart,
    Phase::LinkStart,
    Phase::SecondDown,
    Phase::Descent,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    a: usize,
    b: usize,
    phase: Phase,
}

#[derive(Clone, Copy)]
enum Step {
    Down,
    Up,
    /// the first step after the valley: `i_(m+1) < i_m + k`
    UpStrict,
}

impl Step {
    fn targets(self, from: usize, k: usize, len: usize) -> std::ops::Range<usize> {
        match self {
            Step::Down => from.saturating_sub(k)..from,
            Step::Up => (from + 1)..(from + k + 1).min(len),
            Step::UpStrict => (from + 1)..(from + k).min(len),
        }
    }
}

impl Phase {
    /// `(first-walk step, second-walk step, next phase)` moves from a phase.
    fn moves(self) -> &'static [(Step, Step, Phase)] {
        use Phase::*;
        use Step::*;
        match self {
            FirstStart => &[(Down, Up, FirstDown)],
            FirstDown => &[(Down, Up, FirstDown), (UpStrict, Up, FirstUp)],
            FirstUp => &[(Up, Up, FirstUp)],
            LinkStart | LinkDown => &[(Down, Up, LinkDown)],
            SecondDown => &[(Down, Down, SecondDown), (Down, UpStrict, SecondUp)],
            SecondUp => &[(Down, Up, SecondUp)],
            Descent => &[(Down, Down, Descent)],
        }
    }

    /// Whether the link from `a = i_r` to `b_start = i_(r+1)` closes a witness.
    fn closes(self, a: usize, b_start: usize, k: usize) -> bool {
        match self {
            Phase::FirstUp => b_start > a && b_start - a <= k,
            Phase::LinkDown => b_start > a && b_start - a < k,
            Phase::SecondUp | Phase::Descent => a > b_start && a - b_start <= k,
            _ => false,
        }
    }
}

/// Reusable search buffers. One engine per thread.
#[derive(Debug, Default)]
pub struct KBadEngine {
    stamps: Vec<u32>,
    stamp: u32,
    cap: usize,
    frontier: Vec<State>,
    next: Vec<State>,
}

/// A witness as 0-based indices; the valley is derived from their shape.
pub(crate) type RawWitness = Vec<usize>;

impl KBadEngine {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, len: usize) {
        if len > self.cap {
            self.cap = len.next_power_of_two();
            self.stamps = vec![0; self.cap * self.cap * PHASE_COUNT];
            self.stamp = 0;
        }
        if self.stamp == u32::MAX {
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
    }

    fn visit(&mut self, st: State) -> bool {
        let slot = (st.a * self.cap + st.b) * PHASE_COUNT + st.phase as usize;
        if self.stamps[slot] == self.stamp {
            false
        } else {
            self.stamps[slot] = self.stamp;
            true
        }
    }

    /// Breadth-first search from every start with `i_(r+1) = b_start`.
    /// Returns the least `r` for which a witness exists, exploring at most
    /// `max_r` layers.
    fn shortest_from(
        &mut self,
        s: &[Symbol],
        k: usize,
        b_start: usize,
        max_r: usize,
    ) -> Option<usize> {
        let len = s.len();
        self.reset(len);
        let mut frontier = std::mem::take(&mut self.frontier);
        let mut next = std::mem::take(&mut self.next);
        frontier.clear();
        for a in (0..len).filter(|&a| s[a] == s[b_start]) {
            for phase in START_PHASES {
                let st = State {
                    a,
                    b: b_start,
                    phase,
                };
                if self.visit(st) {
                    frontier.push(st);
                }
            }
        }
        let mut found = None;
        let mut r = 1;
        'layers: while !frontier.is_empty() && r <= max_r {
            if frontier.iter().any(|st| st.phase.closes(st.a, b_start, k)) {
                found = Some(r);
                break;
            }
            if r == max_r {
                break;
            }
            next.clear();
            for &st in &frontier {
                for &(sa, sb, phase) in st.phase.moves() {
                    for a in sa.targets(st.a, k, len) {
                        let sym = s[a];
                        for b in sb.targets(st.b, k, len) {
                            if s[b] == sym {
                                let nst = State { a, b, phase };
                                if self.visit(nst) {
                                    if phase.closes(a, b_start, k) {
                                        found = Some(r + 1);
                                        break 'layers;
                                    }
                                    next.push(nst);
                                }
                            }
                        }
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            r += 1;
        }
        self.frontier = frontier;
        self.next = next;
        found
    }

    /// Whether `s` has any k-bad index sequence.
    pub fn has_witness(&mut self, s: &[Symbol], k: usize) -> bool {
        assert!(k >= 1);
        if has_close_repeat(s, k) {
            return true;
        }
        (0..s.len()).any(|b| self.shortest_from(s, k, b, usize::MAX).is_some())
    }

    /// Same answer as [`Self::has_witness`] when `s` minus its last symbol is
    /// already known to be k-special: the close-repeat test only needs to
    /// look at the last symbol.
    pub fn has_witness_extending(&mut self, s: &[Symbol], k: usize) -> bool {
        assert!(k >= 1);
        let Some(&last) = s.last() else {
            return false;
        };
        let p = s.len() - 1;
        if s[p.saturating_sub(2 * k - 1)..p].contains(&last) {
            return true;
        }
        (0..s.len()).any(|b| self.shortest_from(s, k, b, usize::MAX).is_some())
    }

    /// The witness with the fewest indices, ties broken by the
    /// lexicographically least index list.
    pub(crate) fn minimal_witness(&mut self, s: &[Symbol], k: usize) -> Option<RawWitness> {
        assert!(k >= 1);
        let mut best_r = usize::MAX;
        for b in 0..s.len() {
            if let Some(r) = self.shortest_from(s, k, b, best_r) {
                best_r = best_r.min(r);
            }
        }
        (best_r != usize::MAX).then(|| lex_least(s, k, best_r))
    }
}

/// Equal symbols fewer than 2k apart, which always give a short witness.
fn has_close_repeat(s: &[Symbol], k: usize) -> bool {
    let span = 2 * k - 1;
    (1..s.len()).any(|j| s[j.saturating_sub(span)..j].contains(&s[j]))
}

fn successors(s: &[Symbol], k: usize, st: State) -> impl Iterator<Item = State> + '_ {
    let len = s.len();
    st.phase.moves().iter().flat_map(move |&(sa, sb, phase)| {
        sa.targets(st.a, k, len).flat_map(move |a| {
            sb.targets(st.b, k, len)
                .filter(move |&b| s[a] == s[b])
                .map(move |b| State { a, b, phase })
        })
    })
}

type Tagged = (usize, State);

struct Feasibility<'a> {
    s: &'a [Symbol],
    k: usize,
    r: usize,
    memo: HashMap<(usize, usize, State), bool>,
}

impl Feasibility<'_> {
    /// Can `st`, reached after `t` pairs, close a witness of exactly `r` pairs?
    fn check(&mut self, b_start: usize, t: usize, st: State) -> bool {
        if t == self.r {
            return st.phase.closes(st.a, b_start, self.k);
        }
        if let Some(&v) = self.memo.get(&(b_start, t, st)) {
            return v;
        }
        let succ: Vec<State> = successors(self.s, self.k, st).collect();
        let v = succ.into_iter().any(|n| self.check(b_start, t + 1, n));
        self.memo.insert((b_start, t, st), v);
        v
    }
}

fn lex_least(s: &[Symbol], k: usize, r: usize) -> RawWitness {
    let mut feas = Feasibility {
        s,
        k,
        r,
        memo: HashMap::new(),
    };

    // First half: greedily take the least feasible i_j, keeping every
    // (b_start, state) pair consistent with the choice.
    let mut layer: Vec<Tagged> = Vec::new();
    for b in 0..s.len() {
        for a in (0..s.len()).filter(|&a| s[a] == s[b]) {
            for phase in START_PHASES {
                let st = State { a, b, phase };
                if feas.check(b, 1, st) {
                    layer.push((b, st));
                }
            }
        }
    }
    let mut layers: Vec<Vec<Tagged>> = Vec::with_capacity(r);
    let mut first_half = Vec::with_capacity(2 * r);
    for t in 1..=r {
        if t > 1 {
            let mut next: Vec<Tagged> = Vec::new();
            for &(b0, st) in &layer {
                for n in successors(s, k, st) {
                    if feas.check(b0, t, n) {
                        next.push((b0, n));
                    }
                }
            }
            next.sort_by_key(|&(b0, st)| (b0, st.a, st.b, st.phase as u8));
            next.dedup();
            layer = next;
        }
        let a = layer
            .iter()
            .map(|(_, st)| st.a)
            .min()
            .expect("feasible layer");
        layer.retain(|(_, st)| st.a == a);
        first_half.push(a);
        layers.push(layer.clone());
    }

    // Prune to states that continue along the chosen first half.
    for t in (0..r - 1).rev() {
        let (head, tail) = layers.split_at_mut(t + 1);
        let after = &tail[0];
        head[t].retain(|&(b0, st)| successors(s, k, st).any(|n| after.contains(&(b0, n))));
    }

    // Second half: greedily take the least i_(r+j) along surviving paths.
    let mut second_half = Vec::with_capacity(r);
    let mut cur: Vec<Tagged> = Vec::new();
    for t in 0..r {
        let candidates: Vec<Tagged> = if t == 0 {
            layers[0].clone()
        } else {
            layers[t]
                .iter()
                .copied()
                .filter(|&(b0, n)| {
                    cur.iter()
                        .any(|&(c0, st)| c0 == b0 && successors(s, k, st).any(|x| x == n))
                })
                .collect()
        };
        let b = candidates
            .iter()
            .map(|(_, st)| st.b)
            .min()
            .expect("surviving path");
        cur = candidates.into_iter().filter(|(_, st)| st.b == b).collect();
        second_half.push(b);
    }

    first_half.extend(second_half);
    first_half
}

/// Valley position (1-based `m`) of a V-shaped index list.
pub(crate) fn valley_of(indices: &[usize]) -> usize {
    indices
        .windows(2)
        .position(|w| w[0] < w[1])
        .map_or(indices.len(), |j| j + 1)
}
