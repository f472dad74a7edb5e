//! Bounds on the Thue chromatic index of `T_(k,h)` over a grid of cells.
//!
//! Each cell starts from the best verified construction and the known lower
//! bounds, tightens both by monotonicity (a tree contains every smaller
//! tree), and then, within a time budget, runs the exact search one palette
//! at a time from the lower bound upward.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::control::SearchControl;
use crate::error::Result;
use crate::kspecial::{construct_3k_plus_1, is_k_special, s_n_c};
use crate::sequences::thue_squarefree;
use crate::trees::{
    chromatic_index_exact, corollary_small_h, derived_coloring, find_repetitive_path,
    sv_coloring_h2, theorem3_coloring, trivial_lower_bound, EdgeColoring, PiOptions, SearchMode,
    TreeShape,
};

/// Colorings on trees up to this size are verified path by path; larger ones
/// through the k-specialness of the sequence they are derived from.
const DIRECT_VERIFY_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub k: usize,
    pub h: usize,
    pub lower: u32,
    pub upper: u32,
    pub lower_source: String,
    pub upper_source: String,
}

impl TableCell {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// `v` when exact, `lo,hi` otherwise.
    pub fn value(&self) -> String {
        if self.is_exact() {
            self.lower.to_string()
        } else {
            format!("{},{}", self.lower, self.upper)
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub max_k: usize,
    pub max_h: usize,
    /// Search time per cell; `Some(0)` disables the search.
    pub budget: Option<Duration>,
    pub control: SearchControl,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            max_k: 5,
            max_h: 6,
            budget: Some(Duration::from_secs(60)),
            control: SearchControl::new(),
        }
    }
}

/// `floor(phi * k)` with `phi` the golden ratio: the largest `m` with
/// `m^2 - k m - k^2 <= 0`.
fn floor_golden(k: usize) -> u32 {
    let k = k as i128;
    let mut m = k;
    while (m + 1) * (m + 1) - k * (m + 1) - k * k <= 0 {
        m += 1;
    }
    m as u32
}

fn verified(c: &EdgeColoring) -> bool {
    matches!(find_repetitive_path(c), Ok(None))
}

/// Best verified upper bound among the constructions.
fn construction_bound(k: usize, h: usize) -> Option<(u32, String)> {
    let shape = TreeShape::new(k, h).ok()?;
    let small = shape.vertex_count() <= DIRECT_VERIFY_LIMIT;
    let mut options: Vec<(u32, &str)> = Vec::new();
    if h == 1 {
        options.push((k as u32, "star"));
    }
    if h == 2 && small && sv_coloring_h2(k).is_ok_and(|c| verified(&c)) {
        options.push(((3 * k / 2 + 1) as u32, "sv-construction"));
    }
    if h >= 3 {
        let n = ((h + 1) * k).div_ceil(2);
        let ok = if small {
            corollary_small_h(k, h).is_ok_and(|c| verified(&c))
        } else {
            h > 3 && s_n_c(n, n - k).is_ok_and(|s| is_k_special(&s, k).unwrap_or(false))
        };
        if ok {
            options.push((n as u32, "small-h"));
        }
    }
    let ok = if small {
        theorem3_coloring(k, h).is_ok_and(|c| verified(&c))
    } else {
        construct_3k_plus_1(k, k * h).is_ok_and(|s| is_k_special(&s, k).unwrap_or(false))
    };
    if ok {
        options.push((3 * k as u32 + 1, "3k+1"));
    }
    if k == 1 && derived_coloring(shape, &thue_squarefree(h)).is_ok_and(|c| verified(&c)) {
        options.push((3, "thue"));
    }
    options
        .into_iter()
        .min_by_key(|o| o.0)
        .map(|(b, s)| (b, s.to_string()))
}

fn initial_cell(k: usize, h: usize) -> TableCell {
    let shape = TreeShape::new(k, h).ok();
    let mut lower = shape.map_or(k as u32 + 1, trivial_lower_bound);
    let mut lower_source = "degree".to_string();
    let cited = match h {
        1 => None,
        2 => Some(((3 * k / 2 + 1) as u32, "sv-bound")),
        _ => Some((floor_golden(k) + 1, "golden-bound")),
    };
    if let Some((b, s)) = cited.filter(|c| c.0 > lower) {
        lower = b;
        lower_source = s.to_string();
    }
    let (upper, upper_source) = construction_bound(k, h).unwrap_or((u32::MAX, "none".into()));
    TableCell {
        k,
        h,
        lower,
        upper,
        lower_source,
        upper_source,
    }
}

struct Grid {
    max_k: usize,
    max_h: usize,
    cells: Vec<TableCell>,
}

impl Grid {
    fn at(&self, k: usize, h: usize) -> &TableCell {
        &self.cells[(k - 1) * self.max_h + (h - 1)]
    }

    /// Lower bounds grow with `k` and `h`, upper bounds shrink towards
    /// smaller trees.
    fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for k in 1..=self.max_k {
                for h in 1..=self.max_h {
                    let mut cell = self.at(k, h).clone();
                    for (a, b) in [(k.wrapping_sub(1), h), (k, h.wrapping_sub(1))] {
                        if a >= 1 && b >= 1 && self.at(a, b).lower > cell.lower {
                            cell.lower = self.at(a, b).lower;
                            cell.lower_source = format!("monotone({a},{b})");
                            changed = true;
                        }
                    }
                    for (a, b) in [(k + 1, h), (k, h + 1)] {
                        if a <= self.max_k && b <= self.max_h && self.at(a, b).upper < cell.upper {
                            cell.upper = self.at(a, b).upper;
                            cell.upper_source = format!("monotone({a},{b})");
                            changed = true;
                        }
                    }
                    self.cells[(k - 1) * self.max_h + (h - 1)] = cell;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Runs the exact search on one cell until it closes or the budget is spent.
fn search_cell(cell: &mut TableCell, control: &SearchControl) -> Result<()> {
    let Ok(shape) = TreeShape::new(cell.k, cell.h) else {
        return Ok(());
    };
    let opts = PiOptions {
        control: control.clone(),
        checkpoint: None,
    };
    while cell.lower < cell.upper {
        let r = chromatic_index_exact(shape, cell.lower, SearchMode::Exists, &opts)?;
        if r.witness_coloring.is_some() {
            cell.upper = cell.lower;
            cell.upper_source = "search".into();
        } else if r.exhaustive {
            cell.lower += 1;
            cell.lower_source = "search".into();
        } else {
            break;
        }
    }
    Ok(())
}

pub fn pi_table(opts: &TableOptions) -> Result<Vec<TableCell>> {
    let mut grid = Grid {
        max_k: opts.max_k,
        max_h: opts.max_h,
        cells: Vec::new(),
    };
    for k in 1..=opts.max_k {
        for h in 1..=opts.max_h {
            grid.cells.push(initial_cell(k, h));
        }
    }
    grid.propagate();
    let searching = opts.budget != Some(Duration::ZERO);
    if searching {
        'cells: for h in 1..=opts.max_h {
            for k in 1..=opts.max_k {
                if opts.control.should_stop() {
                    break 'cells;
                }
                let idx = (k - 1) * opts.max_h + (h - 1);
                let mut cell = grid.cells[idx].clone();
                search_cell(&mut cell, &opts.control.sub_budget(opts.budget))?;
                grid.cells[idx] = cell;
                grid.propagate();
            }
        }
    }
    Ok(grid.cells)
}

/// Tab-separated rows `k h cell status provenance` with a header line.
pub fn table_tsv(cells: &[TableCell]) -> String {
    let mut out = String::from("k\th\tcell\tstatus\tprovenance\n");
    for c in cells {
        let status = if c.is_exact() { "exact" } else { "bounds" };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\tlower={} upper={}",
            c.k,
            c.h,
            c.value(),
            status,
            c.lower_source,
            c.upper_source
        );
    }
    out
}
