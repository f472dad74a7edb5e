use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where a command's report goes: stdout, a file, or both with `--tee`.
pub struct Output {
    pub format: Format,
    pub path: Option<PathBuf>,
    pub tee: bool,
}

impl Output {
    pub fn emit(&self, text: &str) -> io::Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        if let Some(path) = &self.path {
            fs::write(path, &text)?;
        }
        if self.path.is_none() || self.tee {
            io::stdout().write_all(text.as_bytes())?;
        }
        Ok(())
    }

    /// Emits the text form or pretty JSON, depending on `--format`.
    pub fn report(
        &self,
        text: impl FnOnce() -> String,
        json: &serde_json::Value,
    ) -> io::Result<()> {
        match self.format {
            Format::Text => self.emit(&text()),
            Format::Json => {
                self.emit(&serde_json::to_string_pretty(json).expect("json values serialize"))
            }
        }
    }
}

/// Reads a file, or stdin for `-` or no path.
pub fn read_input(path: Option<&Path>) -> io::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}
