//! CSV assembly and file plumbing.
//!
//! Every document is comment metadata, one header row, then data rows, with
//! an optional comment trailer for derived summaries. Numbers are printed
//! with the shortest round-trip representation, so a document is a pure
//! function of the resolved config and the output is byte-stable across
//! runs and worker counts.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct CsvDoc {
    meta: Vec<String>,
    header: String,
    rows: Vec<String>,
    trailer: Vec<String>,
}

impl CsvDoc {
    pub fn new(command: &str, config_echo: &str, tolerances: &str, header: &str) -> Self {
        Self {
            meta: vec![
                format!("# svlab {VERSION} {command}"),
                format!("# config: {config_echo}"),
                format!("# tolerances: {tolerances}"),
            ],
            header: header.to_string(),
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn push_row(&mut self, fields: &[String]) {
        self.rows.push(fields.join(","));
    }

    pub fn push_trailer(&mut self, line: &str) {
        self.trailer.push(format!("# {line}"));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.meta {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        for line in &self.trailer {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Shortest representation that parses back to the same f64.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).context("writing stdout")?;
        }
    }
    Ok(())
}

/// Companion plot script path: the CSV path with a .gp extension.
pub fn gnuplot_path(csv: &Path) -> PathBuf {
    csv.with_extension("gp")
}

/// Emit a ready-to-run plot script next to the CSV when requested.
pub fn maybe_gnuplot(out: Option<&Path>, gnuplot: bool, body: &str) -> Result<()> {
    if !gnuplot {
        return Ok(());
    }
    let Some(csv) = out else {
        anyhow::bail!("--gnuplot needs --out so the script can name its data file");
    };
    let path = gnuplot_path(csv);
    let data = csv
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv.display().to_string());
    let script = format!(
        "#!/usr/bin/env gnuplot\nset datafile commentschars '#'\nset datafile separator ','\ndata = '{data}'\n{body}\n"
    );
    std::fs::write(&path, script).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
