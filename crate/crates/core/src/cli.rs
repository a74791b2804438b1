//! The `weightforge` command line.
//!
//! Exit codes: 0 success, 1 failed expectation, 2 usage or parse error,
//! 3 enumeration cap exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codefile::{parse_code, write_code};
use crate::construct::{
    binary_weight_count_code, lemma3_extend, lemma4_extend, mws_construct_with, reachable_counts,
    simplex, ConstructionTrace, DEFAULT_SAMPLES,
};
use crate::error::Error;
use crate::linalg::LinearCode;
use crate::report::CodeReport;
use crate::spectrum::{mws_bound, set_enum_cap, spectrum};

pub const CAP_ENV: &str = "WEIGHTFORGE_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXPECTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weightforge",
    version,
    about = "Build and verify linear codes with prescribed weight counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Simplex code of dimension k over GF(q)
    Simplex,
    /// Code with the maximum number of distinct weights
    Mws,
    /// Binary code of dimension k with s distinct nonzero weights
    Weights,
    /// One more dimension and one more weight than --input
    Lemma3,
    /// One more dimension and q^k more weights than --input
    Lemma4,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a code and write it with a JSON report
    Construct {
        kind: Kind,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        /// Input code file (lemma3, lemma4)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the JSON report; stdout when absent
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the weight spectrum of a code file and check expectations
    Verify {
        file: PathBuf,
        #[arg(long)]
        expect_distinct: Option<usize>,
        #[arg(long)]
        expect_nonzero: Option<usize>,
        #[arg(long)]
        expect_mws: bool,
    },
    /// List nonzero-weight counts reachable by the +1 / +q^j closure
    Reachable {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::EnumerationCapExceeded { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn require<T>(v: Option<T>, name: &str, kind: Kind) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--{name} is required for {kind:?}").to_lowercase()))
}

fn read_code(path: &PathBuf) -> Result<LinearCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Runs a parsed command, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Ok(raw) = std::env::var(CAP_ENV) {
        match raw.trim().parse::<u64>() {
            Ok(cap) => set_enum_cap(cap),
            Err(_) => {
                let _ = writeln!(
                    err,
                    "error: {CAP_ENV} must be a decimal integer, got {raw:?}"
                );
                return EXIT_USAGE;
            }
        }
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Construct {
            kind,
            q,
            k,
            s,
            seed,
            samples,
            input,
            out: out_path,
            report,
        } => {
            let (code, trace) = construct(kind, q, k, s, seed, samples, input.as_ref())?;
            let json = CodeReport::new(&code, trace)?.to_json();
            write_file(&out_path, &write_code(&code))?;
            match report {
                Some(path) => write_file(&path, &json)?,
                None => out
                    .write_all(json.as_bytes())
                    .map_err(|e| usage(e.to_string()))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            file,
            expect_distinct,
            expect_nonzero,
            expect_mws,
        } => verify(&file, expect_distinct, expect_nonzero, expect_mws, out),
        Command::Reachable { q, k } => reachable(q, k, out),
    }
}

fn construct(
    kind: Kind,
    q: Option<u64>,
    k: Option<usize>,
    s: Option<u64>,
    seed: u64,
    samples: u64,
    input: Option<&PathBuf>,
) -> Result<(LinearCode, Option<ConstructionTrace>), Failure> {
    Ok(match kind {
        Kind::Simplex => {
            let q = require(q, "q", kind)?;
            let k = require(k, "k", kind)?;
            (simplex(q, k)?, None)
        }
        Kind::Mws => {
            let q = require(q, "q", kind)?;
            let k = require(k, "k", kind)?;
            let (c, t) = mws_construct_with(q, k, seed, samples)?;
            (c, Some(t))
        }
        Kind::Weights => {
            if q.is_some_and(|q| q != 2) {
                return Err(usage("weights codes are binary; --q must be 2 or omitted"));
            }
            let k = require(k, "k", kind)?;
            let s = require(s, "s", kind)?;
            let (c, t) = binary_weight_count_code(k, s, seed)?;
            (c, Some(t))
        }
        Kind::Lemma3 => {
            let code = read_code(require(input, "input", kind)?)?;
            (lemma3_extend(&code)?, None)
        }
        Kind::Lemma4 => {
            let code = read_code(require(input, "input", kind)?)?;
            let (c, t) = lemma4_extend(&code, seed)?;
            (c, Some(t))
        }
    })
}

fn verify(
    file: &PathBuf,
    expect_distinct: Option<usize>,
    expect_nonzero: Option<usize>,
    expect_mws: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let code = read_code(file)?;
    let s = spectrum(&code)?;
    let bound = mws_bound(code.q(), code.k())?;
    let is_mws = s.distinct_total() as u64 == bound;
    let mut text = format!(
        "q={} k={} n={}\nspectrum: {s}\n",
        code.q(),
        code.k(),
        code.n()
    );
    text += "weight  multiplicity\n";
    for (w, c) in s.entries() {
        text += &format!("{w:>6}  {c}\n");
    }
    text += &format!(
        "distinct_total={} distinct_nonzero={} bound={bound} is_mws={is_mws}\n",
        s.distinct_total(),
        s.distinct_nonzero()
    );
    let mut failed = Vec::new();
    if let Some(d) = expect_distinct.filter(|&d| d != s.distinct_total()) {
        failed.push(format!(
            "expected {d} distinct weights, found {}",
            s.distinct_total()
        ));
    }
    if let Some(d) = expect_nonzero.filter(|&d| d != s.distinct_nonzero()) {
        failed.push(format!(
            "expected {d} nonzero weights, found {}",
            s.distinct_nonzero()
        ));
    }
    if expect_mws && !is_mws {
        failed.push(format!("expected an MWS code ({bound} distinct weights)"));
    }
    for f in &failed {
        text += &format!("FAILED: {f}\n");
    }
    out.write_all(text.as_bytes())
        .map_err(|e| usage(e.to_string()))?;
    Ok(if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_EXPECTATION
    })
}

/// Maximal runs of consecutive values in a sorted set, as `(first, last)`.
pub fn runs(values: &[u64]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == v => *hi = v,
            _ => out.push((v, v)),
        }
    }
    out
}

/// The runs of `1..=max` not covered by `runs`.
fn gaps(runs: &[(u64, u64)], max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut next = 1;
    for &(lo, hi) in runs {
        if lo > next {
            out.push((next, lo - 1));
        }
        next = hi + 1;
    }
    if next <= max {
        out.push((next, max));
    }
    out
}

/// `1..4, 7, 9..10` style listing.
pub fn format_runs(runs: &[(u64, u64)]) -> String {
    if runs.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = runs
        .iter()
        .map(|&(lo, hi)| {
            if lo == hi {
                lo.to_string()
            } else {
                format!("{lo}..{hi}")
            }
        })
        .collect();
    parts.join(", ")
}

fn reachable(q: u64, k: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let set = reachable_counts(q, k)?;
    let max = mws_bound(q, k)? - 1;
    let covered = runs(&set);
    let text = format!(
        "q={q} k={k} max_nonzero={max}\nreachable: {}\ngaps: {}\n",
        format_runs(&covered),
        format_runs(&gaps(&covered, max))
    );
    out.write_all(text.as_bytes())
        .map_err(|e| usage(e.to_string()))?;
    Ok(EXIT_OK)
}
