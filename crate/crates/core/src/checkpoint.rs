//! Resumable search logs.
//!
//! A checkpoint is newline-delimited JSON: the first line is a header naming
//! the search and its parameters, every further line is one frame describing a
//! completed top-level branch. A torn final line (from a killed process) is
//! ignored on load.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::Mutex;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Parses checkpoint text into its header and frames.
pub fn parse_checkpoint<T: DeserializeOwned>(text: &str) -> Result<(Value, Vec<T>)> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(first, header)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            message: "empty checkpoint".into(),
        });
    };
    let header: Value = serde_json::from_str(header).map_err(|e| Error::Parse {
        line: first,
        message: format!("bad header: {e}"),
    })?;
    let mut frames = Vec::new();
    let last = lines.len() - 1;
    for (i, &(line, body)) in lines.iter().enumerate().skip(1) {
        match serde_json::from_str(body) {
            Ok(frame) => frames.push(frame),
            Err(_) if i == last && !text.ends_with('\n') => break,
            Err(e) => {
                return Err(Error::Parse {
                    line,
                    message: format!("bad frame: {e}"),
                })
            }
        }
    }
    Ok((header, frames))
}

/// Append-only writer for a checkpoint file. Safe to share between workers;
/// each frame is written and flushed under a lock.
pub struct CheckpointLog {
    out: Mutex<BufWriter<File>>,
}

impl CheckpointLog {
    /// Opens `path`, returning the frames already recorded. A missing or empty
    /// file is started fresh with `header`; an existing file must carry the
    /// same header.
    pub fn open<T: DeserializeOwned>(path: &Path, header: &Value) -> Result<(Self, Vec<T>)> {
        let existing = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut frames = Vec::new();
        let fresh = existing.trim().is_empty();
        if !fresh {
            let (found, recorded) = parse_checkpoint(&existing)?;
            if &found != header {
                return Err(Error::CheckpointMismatch(format!(
                    "file has {found}, search is {header}"
                )));
            }
            frames = recorded;
        }
        let file = if fresh {
            File::create(path)?
        } else {
            // drop a torn tail so new frames start on a fresh line
            let keep = existing.rfind('\n').map_or(0, |i| i + 1);
            let f = OpenOptions::new().append(true).open(path)?;
            f.set_len(keep as u64)?;
            f
        };
        let mut out = BufWriter::new(file);
        if fresh {
            writeln!(out, "{header}")?;
            out.flush()?;
        }
        Ok((
            CheckpointLog {
                out: Mutex::new(out),
            },
            frames,
        ))
    }

    pub fn record<T: Serialize>(&self, frame: &T) -> Result<()> {
        let line = serde_json::to_string(frame).map_err(|e| Error::Io(e.to_string()))?;
        let mut out = self.out.lock().unwrap_or_else(|p| p.into_inner());
        writeln!(out, "{line}")?;
        out.flush()?;
        Ok(())
    }
}
