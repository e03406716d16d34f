//! The `geb` command line.
//!
//! Exit codes: 0 clean, 1 violations or counterexamples found, 2 usage or
//! I/O error. Flags take precedence over `GEB_*` environment variables,
//! which take precedence over built-in defaults.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{bound_report, BoundName, BoundReport};
use crate::enumeration::{enumerate_all, enumerate_connected};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, stream_corpus, write_graph6};
use crate::harness::{
    run_generated, run_stream, Check, CorpusSummary, Settings, Source, DEFAULT_EQUALITY_EPS, DEFAULT_TOL,
    EQUALITY_BOUNDS,
};
use crate::spectral::DEFAULT_ZERO_TOL;

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Column order of the CSV report.
pub const CSV_COLUMNS: [&str; 24] = [
    "graph6",
    "n",
    "m",
    "energy",
    "lambda1",
    "t",
    "t_nz",
    "rank",
    "det",
    "mcclelland_lower",
    "caporossi",
    "main",
    "cor_nice",
    "amgm",
    "rank_bound",
    "mcclelland_upper",
    "conj1",
    "conj2",
    "epsilon",
    "beta",
    "is_connected",
    "is_regular",
    "is_triangle_free",
    "sound",
];

#[derive(Debug, Parser)]
#[command(name = "geb", version, about = "Graph energy, its spectral bounds, and exhaustive checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every bound for one graph (or each graph of a corpus).
    Report(ReportArgs),
    /// Check every proven bound on a corpus; exit 1 on any violation.
    Verify(VerifyArgs),
    /// Check the two conjectured bounds on the connected graphs of a corpus.
    Conjectures(ConjectureArgs),
    /// List graphs on which a bound is attained.
    Equality(EqualityArgs),
    /// Write one graph6 line per isomorphism class on n vertices.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// graph6 string.
    #[arg(conflicts_with_all = ["edges", "corpus"], required_unless_present_any = ["edges", "corpus"])]
    pub graph6: Option<String>,
    /// Edge-list file: first line n, then one `u v` pair per line; `#` starts a comment.
    #[arg(long, value_name = "FILE", conflicts_with = "corpus")]
    pub edges: Option<PathBuf>,
    /// graph6 file; one report per line (JSON lines or CSV).
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, env = "GEB_ZERO_TOL", default_value_t = DEFAULT_ZERO_TOL)]
    pub zero_tol: f64,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// graph6 corpus file, one graph per line.
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Use the built-in enumeration of connected graphs on N vertices (N <= 7).
    #[arg(long, value_name = "N")]
    pub enumerate: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, env = "GEB_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, env = "GEB_ZERO_TOL", default_value_t = DEFAULT_ZERO_TOL)]
    pub zero_tol: f64,
    /// Continue past undecodable corpus lines.
    #[arg(long)]
    pub skip_bad: bool,
    /// Worker threads (default: all cores).
    #[arg(long, env = "GEB_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Restrict checks to these bounds (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub bounds: Option<Vec<BoundName>>,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct EqualityArgs {
    #[arg(long)]
    pub bound: BoundName,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = DEFAULT_EQUALITY_EPS)]
    pub eps: f64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Connected graphs only.
    #[arg(long)]
    pub connected: bool,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_CLEAN };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

type CliResult = Result<i32, Box<dyn std::error::Error + Send + Sync>>;

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Report(a) => cmd_report(a, out),
        Command::Verify(a) => {
            let check = Check::Verify { bounds: a.bounds };
            let summary = run_source(&a.source, &check, &a.common)?;
            emit_summary(&summary, out, err)
        }
        Command::Conjectures(a) => {
            let summary = run_source(&a.source, &Check::Conjectures, &a.common)?;
            emit_summary(&summary, out, err)
        }
        Command::Equality(a) => {
            if !EQUALITY_BOUNDS.contains(&a.bound) {
                let allowed: Vec<_> = EQUALITY_BOUNDS.iter().map(|b| b.as_str()).collect();
                return Err(format!("--bound must be one of {}", allowed.join(", ")).into());
            }
            let check = Check::Equality { bound: a.bound, eps: a.eps };
            let summary = run_source(&a.source, &check, &a.common)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
            Ok(EXIT_CLEAN)
        }
        Command::Enumerate(a) => cmd_enumerate(a, out),
    }
}

fn run_source(source: &SourceArgs, check: &Check, common: &CommonArgs) -> Result<CorpusSummary, Box<dyn std::error::Error + Send + Sync>> {
    let settings = Settings { tol: common.tol, zero_tol: positive_zero_tol(common.zero_tol)? };
    let summary = match (&source.corpus, source.enumerate) {
        (Some(path), _) => {
            let reader = open(path)?;
            run_stream(reader, check, &settings, common.jobs, common.skip_bad)?
        }
        (None, Some(n)) => run_generated(&Source::Enumerate(n), check, &settings, common.jobs)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    Ok(summary)
}

fn positive_zero_tol(v: f64) -> Result<f64, String> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("zero tolerance must be positive, got {v}"))
    }
}

fn open(path: &Path) -> io::Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn emit_summary(summary: &CorpusSummary, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    for v in &summary.violations {
        writeln!(err, "violation: {}", serde_json::to_string(v)?)?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(summary)?)?;
    Ok(if summary.is_clean() { EXIT_CLEAN } else { EXIT_FINDINGS })
}

fn cmd_report(a: ReportArgs, out: &mut dyn Write) -> CliResult {
    let zero_tol = positive_zero_tol(a.zero_tol)?;
    let graphs: Vec<Graph> = if let Some(g6) = &a.graph6 {
        vec![parse_graph6(g6)?]
    } else if let Some(path) = &a.edges {
        vec![parse_edge_list(open(path)?)?]
    } else {
        let path = a.corpus.as_ref().expect("clap requires a graph source");
        stream_corpus(open(path)?).map(|r| r.map(|(_, g)| g)).collect::<Result<_, _>>()?
    };

    let mut csv = (a.format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(w) = csv.as_mut() {
        w.write_record(CSV_COLUMNS)?;
    }
    for g in &graphs {
        let report: BoundReport<f64> = bound_report(g, zero_tol)?;
        match (a.format, csv.as_mut()) {
            (Format::Csv, Some(w)) => w.write_record(csv_row(&report))?,
            (Format::Table, _) => write_table(&report, out)?,
            _ if graphs.len() == 1 => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
            _ => writeln!(out, "{}", serde_json::to_string(&report)?)?,
        }
    }
    if let Some(w) = csv {
        out.write_all(&w.into_inner().map_err(|e| e.to_string())?)?;
    }
    Ok(EXIT_CLEAN)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &BoundReport<f64>) -> Vec<String> {
    let conj = r.conjectural.as_ref();
    vec![
        r.graph6.clone().unwrap_or_default(),
        r.n.to_string(),
        r.m.to_string(),
        r.energy.to_string(),
        r.lambda1.to_string(),
        r.t.to_string(),
        opt(r.t_nz),
        r.rank.to_string(),
        r.det.to_string(),
        r.lower.mcclelland_lower.to_string(),
        r.lower.caporossi.to_string(),
        opt(r.lower.main),
        opt(r.lower.cor_nice),
        opt(r.lower.amgm),
        opt(r.lower.rank_bound),
        r.mcclelland_upper.to_string(),
        opt(conj.map(|c| c.conj1)),
        opt(conj.map(|c| c.conj2)),
        opt(r.irregularity.map(|i| i.epsilon)),
        opt(r.irregularity.map(|i| i.beta)),
        r.flags.is_connected.to_string(),
        r.flags.is_regular.to_string(),
        r.flags.is_triangle_free.to_string(),
        r.sound.to_string(),
    ]
}

fn write_table(r: &BoundReport<f64>, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "graph6   {}", r.graph6.as_deref().unwrap_or("-"))?;
    writeln!(out, "n = {}, m = {}, rank = {}, det = {}", r.n, r.m, r.rank, r.det)?;
    let spectrum: Vec<String> = r.spectrum.iter().map(|v| format!("{v:.6}")).collect();
    writeln!(out, "spectrum [{}]", spectrum.join(", "))?;
    writeln!(out, "energy   {:.9}", r.energy)?;
    writeln!(out, "{:<18} {:>14} {:>14}", "bound", "value", "slack")?;
    for b in BoundName::ALL {
        let value = r.value(b).map_or("-".to_string(), |v| format!("{v:.9}"));
        let slack = r.slack_of(b).map_or("-".to_string(), |v| format!("{v:.3e}"));
        let label = if b.is_conjectural() { format!("{b} (conj)") } else { b.to_string() };
        writeln!(out, "{label:<18} {value:>14} {slack:>14}")?;
    }
    if let Some(irr) = r.irregularity {
        writeln!(out, "epsilon = {:.9}, beta = {:.9}", irr.epsilon, irr.beta)?;
    }
    writeln!(
        out,
        "connected = {}, regular = {}, triangle-free = {}, sound = {}",
        r.flags.is_connected, r.flags.is_regular, r.flags.is_triangle_free, r.sound
    )
}

/// Reads an edge list: the first data line holds `n`, each further line a
/// pair `u v` of 0-based vertices.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, Box<dyn std::error::Error + Send + Sync>> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let data = line.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let fields: Vec<&str> = data.split_whitespace().collect();
        let bad = || format!("edge list line {}: cannot parse `{data}`", idx + 1);
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(count.parse().map_err(|_| bad())?),
            (Some(_), [u, v]) => edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?)),
            _ => return Err(bad().into()),
        }
    }
    let n = n.ok_or("edge list is empty")?;
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> CliResult {
    let graphs = if a.connected { enumerate_connected(a.n)? } else { enumerate_all(a.n)? };
    let mut text = String::new();
    for g in &graphs {
        text.push_str(&write_graph6(g)?);
        text.push('\n');
    }
    std::fs::write(&a.out, text).map_err(|e| format!("{}: {e}", a.out.display()))?;
    writeln!(out, "{}", graphs.len())?;
    Ok(EXIT_CLEAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("geb").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# petersen-ish\n3\n0 1\n1 2 # path\n";
        assert_eq!(parse_edge_list(text.as_bytes()).unwrap(), Graph::path(3).unwrap());
        assert!(parse_edge_list("".as_bytes()).is_err());
        assert!(parse_edge_list("3\n0 x\n".as_bytes()).is_err());
        assert!(parse_edge_list("3\n0 3\n".as_bytes()).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["verify"]).0, EXIT_ERROR);
        assert_eq!(call(&["verify", "--enumerate", "3", "--corpus", "x"]).0, EXIT_ERROR);
        assert_eq!(call(&["equality", "--bound", "amgm", "--enumerate", "3"]).0, EXIT_ERROR);
        assert_eq!(call(&["equality", "--bound", "bogus", "--enumerate", "3"]).0, EXIT_ERROR);
        assert_eq!(call(&["verify", "--enumerate", "8"]).0, EXIT_ERROR);
        assert_eq!(call(&["verify", "--corpus", "/nonexistent/file.g6"]).0, EXIT_ERROR);
        assert_eq!(call(&["report", "B!"]).0, EXIT_ERROR);
        assert_eq!(call(&["report", "Bw", "--zero-tol", "0"]).0, EXIT_ERROR);
    }

    #[test]
    fn help_exits_clean() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_CLEAN);
        assert!(out.contains("conjectures"));
    }

    #[test]
    fn report_formats() {
        let (code, out, _) = call(&["report", "Bw", "--format", "table"]);
        assert_eq!(code, 0);
        assert!(out.contains("energy   4.000000000"));
        let (_, out, _) = call(&["report", "A_", "--format", "csv"]);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        assert!(lines.next().unwrap().starts_with("A_,2,1,2"));
    }
}
