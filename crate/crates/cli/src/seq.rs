use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use nonrep::format::parse_sequence;
use nonrep::kspecial::{
    construct_3k_plus_1, corollary_3k3_sequence, find_k_bad, s_n_c, search_fk, FkOptions,
};
use nonrep::sequences::{
    block_expand, find_palindrome, find_square, palindrome_free_thue, thue_aba_bab_free,
    thue_squarefree, Sequence,
};
use serde_json::json;

use crate::output::{read_input, Output};
use crate::{Budget, CliError, Exit};

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// Generate a sequence
    Gen(GenArgs),
    /// Check a sequence for squares, palindromes or k-bad index sequences
    Check(CheckArgs),
    /// Longest k-special sequences on n symbols, by exhaustive search
    Fk(FkArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// square-free word on 3 symbols
    Squarefree,
    /// square-free and palindrome-free word on 4 symbols
    Palfree,
    /// square-free word on 3 symbols avoiding aba and bab
    Ababab,
    /// k-special sequence on 3k+1 symbols
    #[value(name = "3k1")]
    ThreeK1,
    /// block expansion of the square-free word by k+1
    #[value(name = "3k3")]
    ThreeK3,
    /// 1, 2, .., n, 1, 2, .., c
    Snc,
    /// block expansion of the square-free word by w
    Expand,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Sequence file; stdin when omitted or `-`
    input: Option<PathBuf>,
    #[arg(long)]
    squares: bool,
    #[arg(long)]
    palindromes: bool,
    /// Look for a k-bad index sequence
    #[arg(long, value_name = "K")]
    kspecial: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Longest sequence to try; default 8k+8
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value = "60")]
    budget: Budget,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

fn need(v: Option<usize>, flag: &str, variant: Variant) -> Result<usize, CliError> {
    let name = variant.to_possible_value().expect("no skipped variants");
    v.ok_or_else(|| CliError::Usage(format!("--variant {} needs --{flag}", name.get_name())))
}

fn generate(a: &GenArgs) -> Result<Sequence, CliError> {
    let len = || need(a.length, "length", a.variant);
    let seq = match a.variant {
        Variant::Squarefree => thue_squarefree(len()?),
        Variant::Palfree => palindrome_free_thue(len()?),
        Variant::Ababab => thue_aba_bab_free(len()?),
        Variant::ThreeK1 => construct_3k_plus_1(need(a.k, "k", a.variant)?, len()?)?,
        Variant::ThreeK3 => corollary_3k3_sequence(need(a.k, "k", a.variant)?, len()?)?,
        Variant::Snc => {
            let s = s_n_c(need(a.n, "n", a.variant)?, need(a.c, "c", a.variant)?)?;
            match a.length {
                Some(l) => s.prefix(l),
                None => s,
            }
        }
        Variant::Expand => {
            let w = need(a.w, "w", a.variant)?;
            let l = len()?;
            block_expand(&thue_squarefree(l.div_ceil(w.max(1))), w)?.prefix(l)
        }
    };
    Ok(seq)
}

pub fn run(
    cmd: &SeqCommand,
    out: &Output,
    control: &nonrep::control::SearchControl,
) -> Result<Exit, CliError> {
    match cmd {
        SeqCommand::Gen(a) => {
            let seq = generate(a)?;
            out.report(
                || seq.to_string(),
                &json!({"sequence": seq.to_one_based(), "alphabet_size": seq.alphabet_size()}),
            )?;
            Ok(Exit::Ok)
        }
        SeqCommand::Check(a) => check(a, out),
        SeqCommand::Fk(a) => {
            let opts = FkOptions {
                length_cap: a.cap,
                control: control.sub_budget(a.budget.duration()),
                checkpoint: a.checkpoint.clone(),
            };
            let r = search_fk(a.k, a.n, &opts)?;
            let text = || {
                let rel = if r.exhaustive { "=" } else { ">=" };
                let mut s = format!(
                    "f_{}({}) {rel} {}\nexhaustive: {}\nnodes: {}\nwitnesses: {}\n",
                    r.k,
                    r.n,
                    r.max_length,
                    r.exhaustive,
                    r.nodes_explored,
                    r.witnesses.len()
                );
                for w in &r.witnesses {
                    let line: Vec<String> = w.iter().map(u32::to_string).collect();
                    s.push_str(&line.join(" "));
                    s.push('\n');
                }
                s
            };
            out.report(text, &serde_json::to_value(&r).expect("report serializes"))?;
            Ok(if r.exhaustive { Exit::Ok } else { Exit::Budget })
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn check(a: &CheckArgs, out: &Output) -> Result<Exit, CliError> {
    if !a.squares && !a.palindromes && a.kspecial.is_none() {
        return Err(CliError::Usage(
            "choose at least one of --squares, --palindromes, --kspecial K".into(),
        ));
    }
    let text = read_input(a.input.as_deref())?;
    let seq = parse_sequence(&text)?;
    let one = seq.to_one_based();
    let mut lines = Vec::new();
    let mut report = serde_json::Map::new();
    let mut violation = false;

    if a.squares {
        let sq = find_square(&seq);
        lines.push(match sq {
            None => "squares: none".to_string(),
            Some(s) => format!(
                "squares: square at position {} with half length {}: {}",
                s.start + 1,
                s.half_length,
                join(&one[s.start..s.start + 2 * s.half_length])
            ),
        });
        violation |= sq.is_some();
        report.insert(
            "square".into(),
            json!(sq.map(|s| json!({"start": s.start + 1, "half_length": s.half_length}))),
        );
    }
    if a.palindromes {
        let p = find_palindrome(&seq);
        lines.push(match p {
            None => "palindromes: none".to_string(),
            Some((start, len)) => format!(
                "palindromes: palindrome at position {} with length {len}: {}",
                start + 1,
                join(&one[start..start + len])
            ),
        });
        violation |= p.is_some();
        report.insert(
            "palindrome".into(),
            json!(p.map(|(s, l)| json!({"start": s + 1, "length": l}))),
        );
    }
    if let Some(k) = a.kspecial {
        let w = find_k_bad(&seq, k)?;
        lines.push(match &w {
            None => format!("{k}-special: yes"),
            Some(w) => {
                let idx: Vec<String> = w.indices.iter().map(usize::to_string).collect();
                format!(
                    "{k}-special: no, {k}-bad indices {} (valley at {})",
                    idx.join(" "),
                    w.valley
                )
            }
        });
        violation |= w.is_some();
        report.insert("k".into(), json!(k));
        report.insert("k_bad".into(), json!(w));
    }
    out.report(|| lines.join("\n"), &serde_json::Value::Object(report))?;
    Ok(if violation { Exit::Violation } else { Exit::Ok })
}
