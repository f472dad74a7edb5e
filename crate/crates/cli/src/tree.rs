use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use nonrep::control::SearchControl;
use nonrep::format::{coloring_to_json, coloring_to_text, parse_coloring, parse_sequence};
use nonrep::trees::{
    chromatic_index_exact, corollary_small_h, derived_coloring, extend_t24_example, figure1_type_i,
    figure1_type_ii, figure2, find_repetitive_path, sv_coloring_h2, theorem3_coloring,
    thue_chromatic_index, ChromaticReport, EdgeColoring, PiOptions, SearchMode, TreeShape,
};
use serde_json::json;

use crate::output::{read_input, Format, Output};
use crate::{Budget, CliError, Exit};

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Coloring of T(k,h) derived from a sequence
    Derive {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        /// Sequence file; stdin when `-`
        #[arg(long)]
        seq: PathBuf,
    },
    /// Check a coloring file (text or JSON) for repetitively colored paths
    Verify {
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact Thue chromatic index, or a search on a fixed palette
    Pi(PiArgs),
    /// The floor(3k/2)+1 coloring of T(k,2)
    Sv {
        #[arg(long)]
        k: usize,
    },
    /// The 5-coloring of T(2,4)
    T24,
    /// The ceil((h+1)k/2) coloring of T(k,h) for h >= 3
    SmallH {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
    },
    /// The 3k+1 coloring of T(k,h)
    Special {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
    },
    /// The small example colorings of T(2,2) and T(2,3)
    Figure {
        #[arg(value_enum)]
        name: Figure,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    TypeI,
    TypeII,
    T23,
}

#[derive(Debug, Args)]
pub struct PiArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    h: usize,
    /// Search this palette only
    #[arg(long)]
    palette: Option<u32>,
    /// Count nonrepetitive colorings up to isomorphism
    #[arg(long)]
    count_classes: bool,
    /// Seconds, or `long` for no limit
    #[arg(long, default_value = "60")]
    budget: Budget,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Also write the witness coloring here (JSON if the name ends in .json)
    #[arg(long)]
    witness: Option<PathBuf>,
}

fn emit_coloring(c: &EdgeColoring, out: &Output) -> Result<Exit, CliError> {
    match out.format {
        Format::Text => out.emit(&coloring_to_text(c))?,
        Format::Json => out.emit(&coloring_to_json(c))?,
    }
    Ok(Exit::Ok)
}

fn write_coloring_file(c: &EdgeColoring, path: &Path) -> Result<(), CliError> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        coloring_to_json(c) + "\n"
    } else {
        coloring_to_text(c)
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn run(cmd: &TreeCommand, out: &Output, control: &SearchControl) -> Result<Exit, CliError> {
    match cmd {
        TreeCommand::Derive { k, h, seq } => {
            let seq = parse_sequence(&read_input(Some(seq))?)?;
            emit_coloring(&derived_coloring(TreeShape::new(*k, *h)?, &seq)?, out)
        }
        TreeCommand::Verify { coloring } => {
            let c = parse_coloring(&read_input(Some(coloring))?)?;
            let w = find_repetitive_path(&c)?;
            let text = || match &w {
                None => "nonrepetitive".to_string(),
                Some(w) => {
                    let word: Vec<String> = w.color_word.iter().map(u32::to_string).collect();
                    format!(
                        "repetitive: path {} .. {} reads {}",
                        w.u,
                        w.v,
                        word.join(" ")
                    )
                }
            };
            out.report(text, &json!({"nonrepetitive": w.is_none(), "witness": w}))?;
            Ok(if w.is_some() {
                Exit::Violation
            } else {
                Exit::Ok
            })
        }
        TreeCommand::Pi(a) => pi(a, out, control),
        TreeCommand::Sv { k } => emit_coloring(&sv_coloring_h2(*k)?, out),
        TreeCommand::T24 => emit_coloring(&extend_t24_example(), out),
        TreeCommand::SmallH { k, h } => emit_coloring(&corollary_small_h(*k, *h)?, out),
        TreeCommand::Special { k, h } => emit_coloring(&theorem3_coloring(*k, *h)?, out),
        TreeCommand::Figure { name } => emit_coloring(
            &match name {
                Figure::TypeI => figure1_type_i(),
                Figure::TypeII => figure1_type_ii(),
                Figure::T23 => figure2(),
            },
            out,
        ),
    }
}

fn pi(a: &PiArgs, out: &Output, control: &SearchControl) -> Result<Exit, CliError> {
    let shape = TreeShape::new(a.k, a.h)?;
    let opts = PiOptions {
        control: control.sub_budget(a.budget.duration()),
        checkpoint: a.checkpoint.clone(),
    };
    let mode = if a.count_classes {
        SearchMode::CountClasses
    } else {
        SearchMode::Exists
    };
    let report = match a.palette {
        Some(q) => chromatic_index_exact(shape, q, mode, &opts)?,
        None => {
            let r = thue_chromatic_index(shape, &opts)?;
            match (mode, r.pi_prime) {
                (SearchMode::CountClasses, Some(q)) => {
                    let mut counted = chromatic_index_exact(shape, q, mode, &opts)?;
                    counted.pi_prime = Some(q);
                    counted.lower_bound = q;
                    counted.nodes_explored += r.nodes_explored;
                    counted
                }
                _ => r,
            }
        }
    };
    if let (Some(path), Some(w)) = (&a.witness, &report.witness_coloring) {
        write_coloring_file(w, path)?;
    }
    out.report(
        || pi_text(&report),
        &serde_json::to_value(&report).expect("report serializes"),
    )?;
    Ok(if report.exhaustive {
        Exit::Ok
    } else {
        Exit::Budget
    })
}

fn pi_text(r: &ChromaticReport) -> String {
    let mut s = format!("tree: T({},{})\n", r.k, r.h);
    match r.pi_prime {
        Some(p) => s += &format!("pi': {p}\n"),
        None => {
            let hi = r.upper_bound.map_or("?".to_string(), |u| u.to_string());
            s += &format!("pi': between {} and {hi}\n", r.lower_bound);
        }
    }
    s += &format!("palette searched: {}\n", r.palette);
    s += &format!(
        "coloring on {} colors: {}\n",
        r.palette,
        match (&r.witness_coloring, r.exhaustive) {
            (Some(_), _) => "found",
            (None, true) => "none exists",
            (None, false) => "not found within budget",
        }
    );
    if let Some(c) = r.class_count {
        s += &format!("classes up to isomorphism: {c}\n");
    }
    s += &format!(
        "exhaustive: {}\nnodes: {}\n",
        r.exhaustive, r.nodes_explored
    );
    if let Some(w) = &r.witness_coloring {
        s += "witness:\n";
        s += &coloring_to_text(w);
    }
    s
}
