use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub const SAMPLES_HEADER: &str = "sample_id,nu,rk,I_delta,I,core_v,core_e";

/// Observables of one Monte Carlo sample. Empty options are written as
/// empty CSV fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub sample_id: u64,
    pub nu: Option<u64>,
    pub rk: Option<u64>,
    /// Steps until at most `delta n` edges remain; `None` if that never
    /// happened before the leaves ran out, or no threshold was requested.
    pub i_delta: Option<u64>,
    /// Steps until no leaf remains.
    pub i: u64,
    pub core_v: u64,
    pub core_e: u64,
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn samples_csv(rows: &[SampleRecord]) -> String {
    let mut out = String::from(SAMPLES_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.sample_id,
            opt(r.nu),
            opt(r.rk),
            opt(r.i_delta),
            r.i,
            r.core_v,
            r.core_e
        );
    }
    out
}

pub fn parse_samples(text: &str) -> Result<Vec<SampleRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == SAMPLES_HEADER => {}
        _ => return Err(Error::parse(1, format!("expected header '{SAMPLES_HEADER}'"))),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::parse(i + 1, format!("expected 7 fields, found {}", f.len())));
        }
        let req = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::parse(i + 1, format!("bad integer '{s}'")))
        };
        let opt = |s: &str| -> Result<Option<u64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                req(s).map(Some)
            }
        };
        rows.push(SampleRecord {
            sample_id: req(f[0])?,
            nu: opt(f[1])?,
            rk: opt(f[2])?,
            i_delta: opt(f[3])?,
            i: req(f[4])?,
            core_v: req(f[5])?,
            core_e: req(f[6])?,
        });
    }
    Ok(rows)
}

pub fn write_samples(path: &Path, rows: &[SampleRecord]) -> Result<()> {
    std::fs::write(path, samples_csv(rows)).map_err(|e| Error::io(path, e))
}

pub fn read_samples(path: &Path) -> Result<Vec<SampleRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_samples(&text)
}
