//! Argument handling and subcommands for the `ylattice` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ylattice_core::chains::{
    chains_from_matching, chains_from_phi, closed_form_chain_l3, render, render_svg_document, tableau_of_chain,
    validate_full, ChainDecomposition, DecompositionKind, RenderFormat, ValidationReport,
};
use ylattice_core::greedy::{ga_full, ga_level, ga_level_down};
use ylattice_core::oracle::{certify_matching, certify_profile, max_level_matching, sperner_witness};
use ylattice_core::phi::{boundary_sets, phi_table, phi_trace};
use ylattice_core::poset::{make_partition, rank_profile, BoxShape, RankProfile};
use ylattice_core::recursive::{iterated_smn, iterated_udec, knead};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ylattice", version, about = "Order matchings and Sperner chain decompositions of L(m,n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Iterate φ from each start (m = 3 only).
    Phi,
    /// Closed-form chains from each start (m = 3 only).
    Closed,
    /// Thread the greedy order matching.
    Greedy,
    /// Knead the recursively built U-decomposition.
    Recud,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level sizes of L(m,n).
    Ranks { m: usize, n: usize },
    /// The map φ on L(3,n), or the chain it traces from one partition.
    Phi {
        n: usize,
        /// Comma-separated partition, e.g. 2,1,0.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Greedy order matching, all levels or just one.
    Greedy {
        m: usize,
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Chain decomposition as JSON.
    Chains {
        m: usize,
        n: usize,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// One tableau per chain, in order of starting partition.
    Tableau {
        m: usize,
        n: usize,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profile, matching and decomposition checks.
    Verify {
        m: usize,
        n: usize,
        /// Also compute maximum matchings between all adjacent levels.
        #[arg(long)]
        oracle: bool,
    },
    /// Starting set by the recursion from one-row boxes.
    Smn { m: usize, n: usize },
    /// U-decomposition by the recursion from one-row boxes.
    Udec { m: usize, n: usize },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn shape(m: usize, n: usize) -> Result<BoxShape, Failure> {
    BoxShape::new(m, n).map_err(|e| usage(e.to_string()))
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let text = serde_json::to_string(value).map_err(|e| Failure::Invalid(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::Invalid(e.to_string()))
}

/// Runs the tool on `args` (program name first). Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "validation failed: {msg}");
            EXIT_INVALID
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Ranks { m, n } => ranks(shape(m, n)?, out),
        Command::Phi { n, trace } => phi_cmd(n, trace.as_deref(), out),
        Command::Greedy { m, n, rank } => greedy(shape(m, n)?, rank, out),
        Command::Chains { m, n, method } => {
            let d = decomposition(shape(m, n)?, method)?;
            emit(out, &d)?;
            check(&validate_full(&d))
        }
        Command::Tableau { m, n, method, format, out: path } => tableau(shape(m, n)?, method, format, path, out),
        Command::Verify { m, n, oracle } => verify(shape(m, n)?, oracle, out),
        Command::Smn { m, n } => smn(shape(m, n)?, out),
        Command::Udec { m, n } => udec(shape(m, n)?, out),
    }
}

#[derive(Serialize)]
struct RanksOut<'a> {
    #[serde(rename = "box")]
    shape: BoxShape,
    #[serde(flatten)]
    profile: &'a RankProfile,
    symmetric: bool,
    unimodal: bool,
}

fn ranks(s: BoxShape, out: &mut dyn Write) -> Outcome {
    let profile = rank_profile(s);
    emit(
        out,
        &RanksOut { shape: s, profile: &profile, symmetric: profile.is_symmetric(), unimodal: profile.is_unimodal() },
    )
}

fn phi_cmd(n: usize, trace: Option<&str>, out: &mut dyn Write) -> Outcome {
    let s = shape(3, n)?;
    match trace {
        Some(text) => {
            let start = parse_partition(text, s)?;
            let trace = phi_trace(&start, n).map_err(|e| usage(e.to_string()))?;
            emit(out, &json!({ "n": n, "start": start, "trace": trace }))
        }
        None => {
            let pairs = phi_table(n).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit(out, &json!({ "n": n, "pairs": pairs }))
        }
    }
}

fn parse_partition(text: &str, s: BoxShape) -> Result<ylattice_core::Partition, Failure> {
    let parts = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("not an integer: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    make_partition(&parts, s).map_err(|e| usage(e.to_string()))
}

fn greedy(s: BoxShape, rank: Option<usize>, out: &mut dyn Write) -> Outcome {
    match rank {
        None => emit(out, &ga_full(s)),
        Some(i) => {
            let level = if i < s.middle_rank() || i == 0 { ga_level(s, i) } else { ga_level_down(s, i) };
            emit(out, &level.map_err(|e| usage(e.to_string()))?)
        }
    }
}

fn decomposition(s: BoxShape, method: Method) -> Result<ChainDecomposition, Failure> {
    let need_three_rows = || usage(format!("method {method:?} needs m = 3, got m = {}", s.m()).to_lowercase());
    match method {
        Method::Phi => {
            if s.m() != 3 {
                return Err(need_three_rows());
            }
            chains_from_phi(s.n()).map_err(|e| Failure::Invalid(e.to_string()))
        }
        Method::Closed => {
            if s.m() != 3 {
                return Err(need_three_rows());
            }
            let chains = boundary_sets(s.n())
                .starts
                .iter()
                .map(|mu| closed_form_chain_l3(mu, s.n()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Invalid(e.to_string()))?;
            Ok(ChainDecomposition::new(s, DecompositionKind::Sperner, chains))
        }
        Method::Greedy => Ok(chains_from_matching(&ga_full(s))),
        Method::Recud => {
            let u = iterated_udec(s).map_err(|e| Failure::Invalid(e.to_string()))?;
            knead(&u).map_err(|e| Failure::Invalid(e.to_string()))
        }
    }
}

fn check(report: &ValidationReport) -> Outcome {
    match &report.violation {
        None => Ok(()),
        Some(v) => Err(Failure::Invalid(serde_json::to_string(v).unwrap_or_default())),
    }
}

fn tableau(s: BoxShape, method: Method, format: Format, path: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    let d = decomposition(s, method)?;
    check(&validate_full(&d))?;
    let tableaux = d
        .chains
        .iter()
        .map(|c| tableau_of_chain(c, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let text = match format {
        Format::Ascii => {
            let blocks: Vec<String> = tableaux.iter().map(|t| render(t, RenderFormat::Ascii)).collect();
            blocks.join("\n")
        }
        Format::Svg => render_svg_document(&tableaux),
        Format::Json => {
            let items: Vec<String> = tableaux.iter().map(|t| render(t, RenderFormat::Json)).collect();
            format!("[{}]\n", items.join(","))
        }
    };
    match path {
        Some(p) => std::fs::write(&p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Invalid(e.to_string())),
    }
}

#[derive(Serialize)]
struct GreedySummary {
    complete: bool,
    incomplete_ranks: Vec<usize>,
}

#[derive(Serialize)]
struct DecompositionCheck {
    method: String,
    required: bool,
    report: Option<ValidationReport>,
}

fn verify(s: BoxShape, oracle: bool, out: &mut dyn Write) -> Outcome {
    let profile = certify_profile(s);
    let ga = ga_full(s);
    let greedy = GreedySummary {
        complete: ga.is_complete(),
        incomplete_ranks: ga.incomplete_levels().map(|l| l.from_rank).collect(),
    };
    let (method, witness) = sperner_witness(s);
    // The constructions cover up to four rows; beyond that the witness is
    // informational.
    let required = s.m() <= 4;
    let decomposition = DecompositionCheck { method, required, report: witness.as_ref().map(validate_full) };

    let mut failures = Vec::new();
    if !profile.symmetric || !profile.unimodal {
        failures.push("rank profile is not symmetric and unimodal".to_string());
    }
    if required && !profile.sperner_certified {
        failures.push("no Sperner decomposition with middle-level many chains".to_string());
    }

    let mut body = json!({
        "box": s,
        "profile": profile,
        "greedy": greedy,
        "decomposition": decomposition,
    });
    if oracle {
        let levels: Vec<_> = (0..s.area()).map(|i| max_level_matching(s, i)).collect();
        if let Some(bad) = levels.iter().find(|c| !c.full) {
            failures.push(format!("levels {} and {} have no full matching", bad.rank, bad.rank + 1));
        }
        let greedy_cert = certify_matching(&ga);
        body["oracle"] = json!({
            "levels": levels,
            "greedy_certified": greedy_cert.certified,
            "greedy_levels": greedy_cert.levels,
        });
    }
    body["ok"] = json!(failures.is_empty());
    emit(out, &body)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(failures.join("; ")))
    }
}

fn smn(s: BoxShape, out: &mut dyn Write) -> Outcome {
    match iterated_smn(s) {
        Ok(starts) => emit(out, &json!({ "box": s, "starts": starts })),
        Err(e) => {
            emit(out, &json!({ "box": s, "error": "rec_smn_failure", "missing": e.missing }))?;
            Err(Failure::Invalid(e.to_string()))
        }
    }
}

fn udec(s: BoxShape, out: &mut dyn Write) -> Outcome {
    let u = match iterated_udec(s) {
        Ok(u) => u,
        Err(e) => {
            if let ylattice_core::recursive::RecUdError::Failure { alpha } = &e {
                emit(out, &json!({ "box": s, "error": "rec_ud_failure", "alpha": alpha }))?;
            }
            return Err(Failure::Invalid(e.to_string()));
        }
    };
    emit(out, &u)?;
    check(&u.validate())
}
