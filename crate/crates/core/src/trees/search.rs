//! Exact search for nonrepetitive colorings of small trees.
//!
//! Edges are colored in breadth-first order and each new color is rejected
//! as soon as a path ending at the new vertex reads a square. Two rules cut
//! the search down to one representative per isomorphism class (the least
//! breadth-first word, see [`super::canonical_form`]): colors are introduced
//! in increasing order, and sibling edges carry increasing colors. Both hold
//! for every canonical coloring, so `exists` loses nothing, and
//! `count_classes` keeps only the colorings that are their own canonical
//! form.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{is_canonical, EdgeColoring, PathScratch, TreeShape};
use crate::checkpoint::CheckpointLog;
use crate::control::{SearchControl, POLL_INTERVAL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exists,
    CountClasses,
}

#[derive(Debug, Clone, Default)]
pub struct PiOptions {
    pub control: SearchControl,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticReport {
    pub k: usize,
    pub h: usize,
    /// Palette of the last search run.
    pub palette: u32,
    pub mode: SearchMode,
    pub pi_prime: Option<u32>,
    /// No nonrepetitive coloring uses fewer colors.
    pub lower_bound: u32,
    pub upper_bound: Option<u32>,
    pub witness_coloring: Option<EdgeColoring>,
    /// Nonrepetitive colorings on `palette` colors up to isomorphism.
    pub class_count: Option<u64>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// The maximum degree, which any proper coloring needs.
pub fn trivial_lower_bound(shape: TreeShape) -> u32 {
    if shape.h() == 1 {
        shape.k() as u32
    } else {
        shape.k() as u32 + 1
    }
}

const FRONTIER_TARGET: usize = 256;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct BranchResult {
    witness: Option<Vec<u32>>,
    classes: u64,
    nodes: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct BranchFrame {
    index: usize,
    prefix: Vec<u32>,
    result: BranchResult,
}

struct Colorer<'a> {
    shape: TreeShape,
    palette: u32,
    mode: SearchMode,
    control: &'a SearchControl,
    colors: Vec<u32>,
    // largest color among the edges to 2..=v
    max_used: Vec<u32>,
    scratch: PathScratch,
    out: BranchResult,
    stopped: bool,
    done: bool,
    cutoff: Option<(&'a AtomicUsize, usize)>,
}

impl<'a> Colorer<'a> {
    fn new(
        shape: TreeShape,
        palette: u32,
        mode: SearchMode,
        control: &'a SearchControl,
        prefix: &[u32],
    ) -> Self {
        let n = shape.vertex_count();
        let mut c = Colorer {
            shape,
            palette,
            mode,
            control,
            colors: vec![0; n + 1],
            max_used: vec![0; n + 1],
            scratch: PathScratch::default(),
            out: BranchResult::default(),
            stopped: false,
            done: false,
            cutoff: None,
        };
        for (i, &col) in prefix.iter().enumerate() {
            let v = i + 2;
            c.colors[v] = col;
            c.max_used[v] = c.max_used[v - 1].max(col);
        }
        c
    }

    /// Colors allowed at `v` by the ordering rules and properness.
    fn candidates(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        let p = self.shape.parent(v);
        let first = self.shape.children(p).next() == Some(v);
        let lo = if first { 1 } else { self.colors[v - 1] + 1 };
        let hi = self.palette.min(self.max_used[v - 1] + 1);
        let parent_color = if p > 1 { self.colors[p] } else { 0 };
        (lo..=hi).filter(move |&c| c != parent_color)
    }

    fn try_color(&mut self, v: usize, c: u32) -> bool {
        self.colors[v] = c;
        self.max_used[v] = self.max_used[v - 1].max(c);
        let ok = self
            .scratch
            .square_closing_at(&self.shape, &self.colors, v)
            .is_none();
        if !ok {
            self.colors[v] = 0;
        }
        ok
    }

    fn leaf(&mut self) {
        let colors = &self.colors[2..];
        match self.mode {
            SearchMode::Exists => {
                self.out.witness = Some(colors.to_vec());
                self.done = true;
            }
            SearchMode::CountClasses => {
                let coloring = EdgeColoring::new(self.shape, self.palette, colors)
                    .expect("colors within palette");
                if is_canonical(&coloring) {
                    self.out.classes += 1;
                    if self.out.witness.is_none() {
                        self.out.witness = Some(colors.to_vec());
                    }
                }
            }
        }
    }

    fn dfs(&mut self, v: usize) {
        if v > self.shape.vertex_count() {
            self.leaf();
            return;
        }
        self.out.nodes += 1;
        if (self.out.nodes - 1).is_multiple_of(POLL_INTERVAL) && self.control.should_stop() {
            self.stopped = true;
        }
        if let Some((best, me)) = self.cutoff {
            if best.load(Ordering::Relaxed) < me {
                self.stopped = true;
            }
        }
        if self.stopped {
            return;
        }
        let cands: Vec<u32> = self.candidates(v).collect();
        for c in cands {
            if self.try_color(v, c) {
                self.dfs(v + 1);
                self.colors[v] = 0;
            }
            if self.stopped || self.done {
                return;
            }
        }
    }
}

/// Prefixes of valid colorings, breadth first, until there are enough to
/// share out or the tree is fully colored.
fn frontier(shape: TreeShape, palette: u32, control: &SearchControl) -> (Vec<Vec<u32>>, u64) {
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    let mut nodes = 0;
    while layer.len() < FRONTIER_TARGET && layer[0].len() < shape.edge_count() {
        let mut next = Vec::new();
        for prefix in &layer {
            let v = prefix.len() + 2;
            let mut c = Colorer::new(shape, palette, SearchMode::Exists, control, prefix);
            nodes += 1;
            let cands: Vec<u32> = c.candidates(v).collect();
            for col in cands {
                if c.try_color(v, col) {
                    let mut p = prefix.clone();
                    p.push(col);
                    next.push(p);
                    c.colors[v] = 0;
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    (layer, nodes)
}

/// Searches for nonrepetitive colorings of `shape` on `palette` colors.
///
/// In `Exists` mode the witness is the first coloring in search order,
/// independent of the number of threads. In `CountClasses` mode every
/// canonical coloring is counted.
pub fn chromatic_index_exact(
    shape: TreeShape,
    palette: u32,
    mode: SearchMode,
    opts: &PiOptions,
) -> Result<ChromaticReport> {
    if palette == 0 {
        return Err(Error::InvalidParameter("palette must be at least 1".into()));
    }
    let control = &opts.control;
    let (branches, mut nodes) = frontier(shape, palette, control);
    let split = branches.first().map_or(0, Vec::len);
    let header = json!({
        "search": "pi",
        "k": shape.k(),
        "h": shape.h(),
        "palette": palette,
        "mode": mode,
        "split": split,
        "branches": branches.len(),
    });
    let (log, done) = match &opts.checkpoint {
        Some(path) => {
            let (log, frames) = CheckpointLog::open::<BranchFrame>(path, &header)?;
            (Some(log), frames)
        }
        None => (None, Vec::new()),
    };
    let mut results: Vec<Option<BranchResult>> = vec![None; branches.len()];
    for f in done {
        if branches.get(f.index) == Some(&f.prefix) {
            results[f.index] = Some(f.result);
        }
    }
    let best = AtomicUsize::new(
        results
            .iter()
            .position(|r| r.as_ref().is_some_and(|r| r.witness.is_some()))
            .unwrap_or(usize::MAX),
    );
    let leaves = split == shape.edge_count();
    let fresh: Vec<Result<(usize, Option<BranchResult>)>> = (0..branches.len())
        .into_par_iter()
        .filter(|&i| results[i].is_none())
        .map(|i| {
            if mode == SearchMode::Exists && best.load(Ordering::Relaxed) < i {
                return Ok((i, None));
            }
            let mut c = Colorer::new(shape, palette, mode, control, &branches[i]);
            if mode == SearchMode::Exists {
                c.cutoff = Some((&best, i));
            }
            if leaves {
                c.leaf();
            } else {
                c.dfs(split + 2);
            }
            if c.stopped {
                return Ok((i, None));
            }
            if c.out.witness.is_some() && mode == SearchMode::Exists {
                best.fetch_min(i, Ordering::Relaxed);
            }
            if let Some(log) = &log {
                log.record(&BranchFrame {
                    index: i,
                    prefix: branches[i].clone(),
                    result: c.out.clone(),
                })?;
            }
            Ok((i, Some(c.out)))
        })
        .collect();
    for r in fresh {
        let (i, res) = r?;
        if let Some(res) = res {
            results[i] = Some(res);
        }
    }

    nodes += results.iter().flatten().map(|r| r.nodes).sum::<u64>();
    let first_hit = results
        .iter()
        .position(|r| r.as_ref().is_some_and(|r| r.witness.is_some()));
    let (witness, exhaustive, class_count) = match mode {
        SearchMode::Exists => {
            let upto = first_hit.unwrap_or(results.len());
            let complete = results[..upto].iter().all(Option::is_some);
            (
                first_hit.and_then(|i| results[i].clone()?.witness),
                complete,
                None,
            )
        }
        SearchMode::CountClasses => {
            let complete = results.iter().all(Option::is_some);
            let classes = results.iter().flatten().map(|r| r.classes).sum();
            let witness = first_hit.and_then(|i| results[i].clone()?.witness);
            (witness, complete, Some(classes))
        }
    };
    // a witness found in a later branch still bounds from above
    let witness = witness.or_else(|| {
        (!exhaustive)
            .then(|| results.iter().flatten().find_map(|r| r.witness.clone()))
            .flatten()
    });
    let witness_coloring = witness
        .map(|w| EdgeColoring::new(shape, palette, &w))
        .transpose()?;
    let trivial = trivial_lower_bound(shape);
    let empty = exhaustive && witness_coloring.is_none();
    let lower_bound = if empty {
        trivial.max(palette + 1)
    } else {
        trivial
    };
    let upper_bound = witness_coloring.as_ref().map(|_| palette);
    let pi_prime = upper_bound.filter(|&u| u <= trivial);
    Ok(ChromaticReport {
        k: shape.k(),
        h: shape.h(),
        palette,
        mode,
        pi_prime,
        lower_bound,
        upper_bound,
        witness_coloring,
        class_count: if exhaustive { class_count } else { None },
        nodes_explored: nodes,
        exhaustive,
    })
}

fn palette_checkpoint(base: &Path, palette: u32) -> PathBuf {
    let mut name = base.as_os_str().to_owned();
    name.push(format!(".p{palette}"));
    PathBuf::from(name)
}

/// The Thue chromatic index of `shape`: palettes are tried upwards from the
/// maximum degree until a nonrepetitive coloring appears. With a checkpoint
/// path `P`, the search on `q` colors logs to `P.pq`.
pub fn thue_chromatic_index(shape: TreeShape, opts: &PiOptions) -> Result<ChromaticReport> {
    let mut q = trivial_lower_bound(shape);
    let mut nodes = 0;
    loop {
        let sub = PiOptions {
            control: opts.control.clone(),
            checkpoint: opts.checkpoint.as_deref().map(|p| palette_checkpoint(p, q)),
        };
        let mut r = chromatic_index_exact(shape, q, SearchMode::Exists, &sub)?;
        nodes += r.nodes_explored;
        r.nodes_explored = nodes;
        r.lower_bound = r.lower_bound.max(q);
        if r.witness_coloring.is_some() {
            r.exhaustive = true;
            r.pi_prime = Some(q);
            return Ok(r);
        }
        if !r.exhaustive {
            return Ok(r);
        }
        q += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{figure1_type_i, is_nonrepetitive};

    fn shape(k: usize, h: usize) -> TreeShape {
        TreeShape::new(k, h).unwrap()
    }

    fn exists(k: usize, h: usize, q: u32) -> ChromaticReport {
        chromatic_index_exact(shape(k, h), q, SearchMode::Exists, &PiOptions::default()).unwrap()
    }

    fn classes(k: usize, h: usize, q: u32) -> u64 {
        let r = chromatic_index_exact(
            shape(k, h),
            q,
            SearchMode::CountClasses,
            &PiOptions::default(),
        )
        .unwrap();
        assert!(r.exhaustive);
        r.class_count.unwrap()
    }

    #[test]
    fn t22_needs_four_colors() {
        let r = exists(2, 2, 3);
        assert!(r.exhaustive && r.witness_coloring.is_none());
        assert_eq!(r.lower_bound, 4);
        let r = exists(2, 2, 4);
        let w = r.witness_coloring.unwrap();
        assert!(is_nonrepetitive(&w).unwrap());
        assert_eq!(w.edge_colors(), figure1_type_i().edge_colors());
    }

    #[test]
    fn class_counts() {
        assert_eq!(classes(2, 2, 4), 2);
        assert_eq!(classes(2, 3, 4), 6);
        assert_eq!(classes(2, 2, 3), 0);
    }

    #[test]
    fn paths() {
        for (h, want) in [(1, 1), (2, 2), (3, 2), (4, 3), (5, 3), (8, 3)] {
            let r = thue_chromatic_index(shape(1, h), &PiOptions::default()).unwrap();
            assert_eq!(r.pi_prime, Some(want), "h={h}");
        }
    }

    #[test]
    fn stars() {
        for k in 1..=4 {
            let r = thue_chromatic_index(shape(k, 1), &PiOptions::default()).unwrap();
            assert_eq!(r.pi_prime, Some(k as u32));
        }
    }

    #[test]
    fn cancelled_search_is_partial() {
        let opts = PiOptions::default();
        opts.control.cancel();
        let r = chromatic_index_exact(shape(3, 4), 6, SearchMode::Exists, &opts).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.lower_bound, 4);
        assert_eq!(r.class_count, None);
    }

    #[test]
    fn zero_palette() {
        assert!(
            chromatic_index_exact(shape(2, 2), 0, SearchMode::Exists, &PiOptions::default())
                .is_err()
        );
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let opts = PiOptions {
            checkpoint: Some(dir.path().join("pi.ndjson")),
            ..Default::default()
        };
        let a = chromatic_index_exact(shape(2, 3), 4, SearchMode::CountClasses, &opts).unwrap();
        let b = chromatic_index_exact(shape(2, 3), 4, SearchMode::CountClasses, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.class_count, Some(6));
    }
}
