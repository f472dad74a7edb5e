//! Exhaustive search for the longest k-special sequences on `n` symbols.
//!
//! Sequences are generated in normal form: each symbol's first occurrence
//! introduces the smallest unused label. Since every k-special sequence is
//! prefix-closed, the tree of normalized k-special words is searched depth
//! first and each extension only has to be checked for witnesses that use the
//! new last position.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::witness::KBadEngine;
use crate::checkpoint::CheckpointLog;
use crate::control::{SearchControl, POLL_INTERVAL};
use crate::error::{Error, Result};
use crate::sequences::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FkReport {
    pub k: usize,
    pub n: usize,
    /// Longest k-special length reached; a lower bound unless `exhaustive`.
    pub max_length: usize,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    /// Every normalized sequence of length `max_length` found, 1-based,
    /// in lexicographic order.
    pub witnesses: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Default)]
pub struct FkOptions {
    /// Stop extending at this length. Defaults to `8k + 8`.
    pub length_cap: Option<usize>,
    pub control: SearchControl,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct Partial {
    best: usize,
    witnesses: Vec<Vec<Symbol>>,
    nodes: u64,
    capped: bool,
}

impl Partial {
    fn offer(&mut self, seq: &[Symbol]) {
        if seq.len() > self.best {
            self.best = seq.len();
            self.witnesses.clear();
        }
        if seq.len() == self.best {
            self.witnesses.push(seq.to_vec());
        }
    }

    fn merge(&mut self, other: Partial) {
        self.nodes += other.nodes;
        self.capped |= other.capped;
        if other.best > self.best {
            self.best = other.best;
            self.witnesses = other.witnesses;
        } else if other.best == self.best {
            self.witnesses.extend(other.witnesses);
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct BranchFrame {
    prefix: Vec<Symbol>,
    result: Partial,
}

struct Dfs<'a> {
    k: usize,
    n: usize,
    cap: usize,
    control: &'a SearchControl,
    engine: KBadEngine,
    seq: Vec<Symbol>,
    out: Partial,
    stopped: bool,
}

impl<'a> Dfs<'a> {
    fn new(k: usize, n: usize, cap: usize, control: &'a SearchControl, prefix: &[Symbol]) -> Self {
        Dfs {
            k,
            n,
            cap,
            control,
            engine: KBadEngine::new(),
            seq: prefix.to_vec(),
            out: Partial::default(),
            stopped: false,
        }
    }

    /// Symbols that may follow the current sequence: at most one fresh
    /// label, nothing repeated within the last `2k - 1` positions.
    fn candidates(&self) -> Vec<Symbol> {
        let fresh = self.seq.iter().max().map_or(0, |&m| m + 1);
        let limit = fresh.min(self.n as Symbol - 1);
        let recent = &self.seq[self.seq.len().saturating_sub(2 * self.k - 1)..];
        (0..=limit).filter(|c| !recent.contains(c)).collect()
    }

    /// Explores the subtree below the current sequence. Sequences of length
    /// `split` are handed to `frontier` instead of being expanded.
    fn explore(&mut self, split: Option<usize>, frontier: &mut Vec<Vec<Symbol>>) {
        if let Some(d) = split {
            if self.seq.len() == d {
                frontier.push(self.seq.clone());
                return;
            }
        }
        self.out.nodes += 1;
        if (self.out.nodes - 1).is_multiple_of(POLL_INTERVAL) && self.control.should_stop() {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        self.out.offer(&self.seq);
        if self.seq.len() >= self.cap {
            self.out.capped = true;
            return;
        }
        for c in self.candidates() {
            self.seq.push(c);
            if !self.engine.has_witness_extending(&self.seq, self.k) {
                self.explore(split, frontier);
            }
            self.seq.pop();
            if self.stopped {
                return;
            }
        }
    }
}

pub fn search_fk(k: usize, n: usize, opts: &FkOptions) -> Result<FkReport> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let cap = opts.length_cap.unwrap_or(8 * k + 8);
    let control = &opts.control;
    let split = (n.min(2 * k) + 2).min(cap);

    let mut root = Dfs::new(k, n, cap, control, &[]);
    let mut frontier = Vec::new();
    root.explore(Some(split), &mut frontier);
    let mut total = root.out;
    let mut complete = !root.stopped;

    let header = json!({"search": "fk", "k": k, "n": n, "length_cap": cap, "split": split});
    let (log, done) = match &opts.checkpoint {
        Some(path) => {
            let (log, frames) = CheckpointLog::open::<BranchFrame>(path, &header)?;
            (Some(log), frames)
        }
        None => (None, Vec::new()),
    };
    let todo: Vec<&Vec<Symbol>> = frontier
        .iter()
        .filter(|p| !done.iter().any(|f| &f.prefix == *p))
        .collect();

    let results: Vec<Result<(Partial, bool)>> = todo
        .par_iter()
        .map(|prefix| {
            let mut dfs = Dfs::new(k, n, cap, control, prefix);
            dfs.explore(None, &mut Vec::new());
            if !dfs.stopped {
                if let Some(log) = &log {
                    log.record(&BranchFrame {
                        prefix: prefix.to_vec(),
                        result: dfs.out.clone(),
                    })?;
                }
            }
            Ok((dfs.out, !dfs.stopped))
        })
        .collect();

    for frame in done.into_iter().filter(|f| frontier.contains(&f.prefix)) {
        total.merge(frame.result);
    }
    for r in results {
        let (part, finished) = r?;
        complete &= finished;
        total.merge(part);
    }

    let mut witnesses: Vec<Vec<u32>> = total
        .witnesses
        .into_iter()
        .map(|w| w.into_iter().map(|s| s + 1).collect())
        .collect();
    witnesses.sort();
    witnesses.dedup();
    Ok(FkReport {
        k,
        n,
        max_length: total.best,
        exhaustive: complete && !total.capped,
        nodes_explored: total.nodes,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(k: usize, n: usize) -> FkReport {
        search_fk(k, n, &FkOptions::default()).unwrap()
    }

    #[test]
    fn below_2k_only_the_identity_survives() {
        let r = run(2, 3);
        assert_eq!(r.max_length, 3);
        assert_eq!(r.witnesses, vec![vec![1, 2, 3]]);
        assert!(r.exhaustive);
    }

    #[test]
    fn at_2k_the_unique_maximum_is_s2k1() {
        let r = run(2, 4);
        assert_eq!(r.max_length, 5);
        assert_eq!(r.witnesses, vec![vec![1, 2, 3, 4, 1]]);
    }

    #[test]
    fn k1_is_square_free_ternary() {
        // binary square-free words have length at most 3
        assert_eq!(run(1, 2).max_length, 3);
        let r = search_fk(
            1,
            3,
            &FkOptions {
                length_cap: Some(12),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.max_length, 12);
        assert!(!r.exhaustive);
    }

    #[test]
    fn cancelled_search_is_not_exhaustive() {
        let opts = FkOptions::default();
        opts.control.cancel();
        let r = search_fk(2, 6, &opts).unwrap();
        assert!(!r.exhaustive);
    }

    #[test]
    fn bad_parameters() {
        assert!(search_fk(0, 3, &FkOptions::default()).is_err());
        assert!(search_fk(1, 0, &FkOptions::default()).is_err());
    }

    #[test]
    fn checkpoint_resume_gives_the_same_report() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fk.ndjson");
        let opts = FkOptions {
            checkpoint: Some(path.clone()),
            ..Default::default()
        };
        let first = search_fk(2, 5, &opts).unwrap();
        let frames = std::fs::read_to_string(&path).unwrap().lines().count();
        assert!(frames > 1);
        let again = search_fk(2, 5, &opts).unwrap();
        assert_eq!(first.max_length, again.max_length);
        assert_eq!(first.witnesses, again.witnesses);
        assert_eq!(first.nodes_explored, again.nodes_explored);
        assert_eq!(again.max_length, 8);
    }
}
