//! Command-line front end.
//!
//! Exit status: 0 success, 1 usage or input error, 2 invalid endomorphism,
//! 3 theorem-consistency violation or internal inconsistency.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::analysis::{
    self, count_least_period, count_periodic, mixing_gap, spectral_decomposition,
};
use crate::code::{parse_code_with_warnings, SlidingBlockCode};
use crate::decision::{goe_verdict, DecisionReport};
use crate::dynamics::{parse_pseudo_orbit, shadow, MetricValue};
use crate::error::Error;
use crate::harness::{builtin, builtins, scan_theorems, ScanConfig, ScanResult, DEFAULT_CAP};
use crate::report::{indexed, Report};
use crate::shift::{EpConfig, Shift};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_CODE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Number of periodic-point counts in an analysis report.
const PERIODIC_COUNTS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Canonical,
}

#[derive(Debug, Parser)]
#[command(
    name = "sft-goe",
    version,
    about = "Garden of Eden decisions for shifts of finite type"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads for scans. Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structure of a shift: irreducibility, mixing, entropy, periodic points.
    Analyze { shift: PathBuf },
    /// Injectivity, surjectivity and pre-injectivity of a code, with witnesses.
    Decide { shift: PathBuf, code: PathBuf },
    /// Decides every code up to the given window and checks the theorems.
    Scan {
        shift: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_memory: usize,
        #[arg(long, default_value_t = 1)]
        max_anticipation: usize,
        /// Bound on memory + anticipation + 1.
        #[arg(long)]
        max_window: Option<usize>,
        /// Largest number of candidate rule tables.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Largest power k for the check "τ^k pre-injective ⟹ τ pre-injective".
        #[arg(long, default_value_t = 3)]
        power_check: usize,
    },
    /// Finds a true orbit tracing a pseudo-orbit.
    Trace {
        shift: PathBuf,
        orbit: PathBuf,
        /// Tracing bound `2^-k`; defaults to twice the pseudo-orbit's delta.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Lists the built-in examples, or shows one.
    Examples {
        name: Option<String>,
        /// Writes the example's files into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::NotEndomorphism { .. }) => EXIT_INVALID_CODE,
            Failure::Lib(Error::Internal(_)) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Usage(m) => m.clone(),
        }
    }
}

struct Output {
    report: Report,
    /// Extra human-readable text printed after the report.
    appendix: String,
    status: i32,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return status;
        }
    };
    let format = cli.format;
    match execute(cli, err) {
        Ok(o) => {
            let text = match format {
                Format::Canonical => o.report.to_canonical(),
                Format::Human => o.report.to_human() + &o.appendix,
            };
            let _ = write!(out, "{text}");
            o.status
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn record_input(r: &mut Report, role: &str, path: &Path, text: &str) {
    r.insert(format!("input.{role}.file"), file_name(path));
    r.insert(format!("input.{role}.sha256"), sha256_hex(text));
}

fn load_shift(r: &mut Report, path: &Path) -> Result<std::sync::Arc<Shift>, Failure> {
    let text = read(path)?;
    record_input(r, "shift", path, &text);
    Ok(Shift::parse(&text)?)
}

fn execute(cli: Cli, err: &mut dyn Write) -> Result<Output, Failure> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let mut r = Report::new();
    let mut appendix = String::new();
    let mut status = EXIT_OK;
    match cli.command {
        Command::Analyze { shift } => {
            r.insert("command", "analyze");
            let s = load_shift(&mut r, &shift)?;
            analysis_fields(&mut r, &s)?;
        }
        Command::Decide { shift, code } => {
            r.insert("command", "decide");
            let s = load_shift(&mut r, &shift)?;
            let text = read(&code)?;
            record_input(&mut r, "code", &code, &text);
            let parsed = parse_code_with_warnings(&text, &s)?;
            for w in &parsed.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            parsed.code.validate()?;
            let report = goe_verdict(&parsed.code)?;
            r.insert("code.memory", parsed.code.memory());
            r.insert("code.anticipation", parsed.code.anticipation());
            r.insert("code.warnings", parsed.warnings.len());
            decision_fields(&mut r, &parsed.code, &report);
            if !report.violations.is_empty() {
                status = EXIT_VIOLATION;
            }
        }
        Command::Scan {
            shift,
            max_memory,
            max_anticipation,
            max_window,
            cap,
            power_check,
        } => {
            r.insert("command", "scan");
            let s = load_shift(&mut r, &shift)?;
            let mut cfg = ScanConfig::new(s, max_memory, max_anticipation).with_workers(workers);
            cfg.max_window = max_window;
            cfg.cap = cap;
            cfg.power_check = power_check;
            r.insert("scan.max_memory", max_memory);
            r.insert("scan.max_anticipation", max_anticipation);
            r.insert(
                "scan.max_window",
                max_window.map_or("none".to_string(), |w| w.to_string()),
            );
            let result = scan_theorems(&cfg)?;
            scan_fields(&mut r, &result);
            if !result.violations.is_empty() {
                status = EXIT_VIOLATION;
            }
        }
        Command::Trace {
            shift,
            orbit,
            epsilon,
        } => {
            r.insert("command", "trace");
            let s = load_shift(&mut r, &shift)?;
            let text = read(&orbit)?;
            record_input(&mut r, "orbit", &orbit, &text);
            let po = parse_pseudo_orbit(&text, s.alphabet())?;
            let eps = match epsilon {
                Some(t) => MetricValue::parse(&t)?,
                None => po.delta.doubled(),
            };
            let k = match eps {
                MetricValue::Pow(k) => k,
                MetricValue::Zero => {
                    return Err(Failure::Usage("epsilon must be positive".into()));
                }
            };
            let t = shadow(&s, &po, k)?;
            r.insert("trace.delta", po.delta);
            r.insert("trace.epsilon", t.epsilon);
            r.insert("trace.points", po.points.len());
            r.insert("trace.point", t.point.to_ep_text(s.alphabet()));
            let width = digits(po.points.len());
            for (i, d) in t.distances.iter().enumerate() {
                r.insert(indexed("trace.distance", i as u128, width), d);
            }
            r.insert(
                "trace.verified",
                t.distances.iter().all(|&d| d <= t.epsilon),
            );
        }
        Command::Examples { name: None, write } => {
            if write.is_some() {
                return Err(Failure::Usage("--write needs an example name".into()));
            }
            r.insert("command", "examples");
            for b in builtins() {
                r.insert(format!("example.{}", b.name), b.summary);
            }
        }
        Command::Examples {
            name: Some(name),
            write,
        } => {
            r.insert("command", "examples");
            let b = builtin(&name)?;
            r.insert("example.name", b.name);
            r.insert("example.summary", b.summary);
            r.insert("file.shift", b.shift_file);
            let mut files = vec![(b.shift_file, b.shift_text)];
            if let (Some(f), Some(t)) = (b.code_file, b.code_text) {
                r.insert("file.code", f);
                files.push((f, t));
            }
            let e = b.expected;
            for (key, v) in [
                ("expected.injective", e.injective),
                ("expected.surjective", e.surjective),
                ("expected.pre_injective", e.pre_injective),
            ] {
                if let Some(v) = v {
                    r.insert(key, v);
                }
            }
            for (f, t) in &files {
                appendix.push_str(&format!("\n# {f}\n{t}"));
            }
            if let Some(dir) = write {
                fs::create_dir_all(&dir).map_err(|e| Failure::Io(dir.clone(), e))?;
                for (f, t) in &files {
                    let path = dir.join(f);
                    fs::write(&path, t).map_err(|e| Failure::Io(path.clone(), e))?;
                }
                r.insert("written", files.len());
            }
        }
    }
    Ok(Output {
        report: r,
        appendix,
        status,
    })
}

fn digits(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Structural fields of a shift.
pub fn analysis_fields(r: &mut Report, s: &Shift) -> Result<(), Error> {
    let p = s.presentation();
    r.insert("shift.symbols", s.alphabet().len());
    r.insert("shift.step", s.spec().step());
    r.insert("shift.vertices", p.vertex_count());
    r.insert("shift.edges", p.edges().len());
    r.insert("shift.empty", yes(p.is_empty()));
    if p.is_empty() {
        return Ok(());
    }
    let irreducible = analysis::is_irreducible(p)?;
    let nonwandering = analysis::is_nonwandering(p);
    let mixing = analysis::is_mixing(p);
    r.insert("irreducible", yes(irreducible));
    r.insert("nonwandering", yes(nonwandering));
    r.insert("mixing", yes(mixing));
    r.insert("wandering_edges", analysis::wandering_edges(p).len());
    if irreducible {
        r.insert("period", analysis::period(p)?);
    }
    if mixing {
        r.insert("mixing_gap", mixing_gap(p)?);
    }
    let radius = analysis::spectral_radius(p)?;
    r.insert("entropy", format!("{:.10}", radius.midpoint().ln()));
    r.insert("spectral_radius", format!("{:.10}", radius.midpoint()));
    for n in 1..=PERIODIC_COUNTS {
        r.insert(indexed("per", n, 2), count_periodic(p, n));
        r.insert(indexed("least_period", n, 2), count_least_period(p, n));
    }
    if nonwandering {
        let d = spectral_decomposition(p)?;
        r.insert("components", d.components.len());
        for (i, c) in d.components.iter().enumerate() {
            let key = indexed("component", i as u128, 2);
            r.insert(format!("{key}.vertices"), c.vertices.len());
            r.insert(format!("{key}.period"), c.period);
            let sizes: Vec<String> = c.classes.iter().map(|k| k.len().to_string()).collect();
            r.insert(format!("{key}.class_sizes"), sizes.join(","));
        }
    }
    Ok(())
}

fn pair_fields(r: &mut Report, key: &str, code: &SlidingBlockCode, (x, y): &(EpConfig, EpConfig)) {
    let a = code.shift().alphabet();
    r.insert(format!("{key}.x"), x.to_ep_text(a));
    r.insert(format!("{key}.y"), y.to_ep_text(a));
    if let Some(d) = x.differences(y) {
        let coords: Vec<String> = d.iter().map(i64::to_string).collect();
        r.insert(format!("{key}.differences"), coords.join(","));
    }
}

/// Verdicts, witnesses and consistency flags of a decision.
pub fn decision_fields(r: &mut Report, code: &SlidingBlockCode, d: &DecisionReport) {
    r.insert("ambient.irreducible", yes(d.irreducible));
    r.insert("ambient.nonwandering", yes(d.nonwandering));
    r.insert("verdict.injective", yes(d.injective));
    r.insert("verdict.surjective", yes(d.surjective));
    r.insert("verdict.pre_injective", yes(d.pre_injective));
    r.insert("flag.moore_consistent", yes(d.moore_consistent()));
    r.insert("flag.myhill_consistent", yes(d.myhill_consistent()));
    r.insert(
        "flag.surjunctive_consistent",
        yes(d.surjunctive_consistent()),
    );
    if let Some(w) = &d.non_surjective_witness {
        r.insert(
            "witness.non_surjective",
            code.shift().alphabet().format_word(w),
        );
    }
    if let Some(p) = &d.non_injective_witness {
        pair_fields(r, "witness.non_injective", code, p);
    }
    if let Some(p) = &d.non_pre_injective_witness {
        pair_fields(r, "witness.non_pre_injective", code, p);
    }
    if let Some(e) = d.entropy {
        r.insert("entropy.source", format!("{:.10}", e.source));
        r.insert("entropy.image", format!("{:.10}", e.image));
        r.insert("entropy.agrees", yes(e.agrees));
    }
    r.insert("violations", d.violations.len());
    for (i, v) in d.violations.iter().enumerate() {
        r.insert(indexed("violation", i as u128, 2), v);
    }
}

/// One-line form of `.sbc` text: lines joined by `; `.
pub fn sbc_one_line(sbc: &str) -> String {
    sbc.lines().collect::<Vec<_>>().join("; ")
}

/// Totals, violations and the first Myhill-failure example of a scan.
pub fn scan_fields(r: &mut Report, s: &ScanResult) {
    r.insert("ambient.irreducible", yes(s.irreducible));
    r.insert("ambient.nonwandering", yes(s.nonwandering));
    r.insert("scan.candidates", s.candidates);
    r.insert("scan.valid", s.valid);
    r.insert("scan.injective", s.injective);
    r.insert("scan.surjective", s.surjective);
    r.insert("scan.pre_injective", s.pre_injective);
    r.insert("scan.not_surjunctive", s.not_surjunctive);
    r.insert("scan.moore_failures", s.moore_failures);
    r.insert("scan.myhill_failures", s.myhill_failures);
    r.insert("scan.oracle_checks", s.oracle_checks);
    r.insert("scan.oracle_disagreements", s.oracle_disagreements);
    r.insert("scan.power_checks", s.power_checks);
    r.insert("scan.component_checks", s.component_checks);
    r.insert("violations", s.violations.len());
    for (i, v) in s.violations.iter().enumerate() {
        let key = indexed("violation", i as u128, 6);
        r.insert(format!("{key}.index"), v.index);
        r.insert(format!("{key}.kind"), v.kind);
        r.insert(format!("{key}.sbc"), sbc_one_line(&v.sbc));
    }
    if let Some(e) = &s.myhill_example {
        r.insert("myhill_example.index", e.index);
        r.insert("myhill_example.sbc", sbc_one_line(&e.sbc));
        r.insert("myhill_example.witness", &e.witness);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["sft-goe"];
        full.extend_from_slice(args);
        let status = run(full, &mut out, &mut err);
        (
            status,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn analyze_golden_mean() {
        let (status, out, _) =
            call(&["--format", "canonical", "analyze", &data("golden_mean.sft")]);
        assert_eq!(status, 0);
        let r = Report::parse_canonical(&out).unwrap();
        assert_eq!(r.get("entropy"), Some("0.4812118251"));
        assert_eq!(r.get("mixing"), Some("true"));
        assert_eq!(r.get("mixing_gap"), Some("2"));
        assert_eq!(r.get("per.01"), Some("1"));
        assert_eq!(r.to_canonical(), out);
    }

    #[test]
    fn decide_weiss_tau() {
        let (status, out, _) = call(&[
            "--format",
            "canonical",
            "decide",
            &data("weiss.sft"),
            &data("weiss_tau.sbc"),
        ]);
        assert_eq!(status, 0);
        let r = Report::parse_canonical(&out).unwrap();
        assert_eq!(r.get("verdict.injective"), Some("true"));
        assert_eq!(r.get("verdict.surjective"), Some("false"));
        assert_eq!(r.get("witness.non_surjective"), Some("0.1.2"));
    }

    #[test]
    fn usage_and_help_statuses() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        let (status, out, _) = call(&["--help"]);
        assert_eq!(status, EXIT_OK);
        assert!(out.contains("decide"));
        assert_eq!(call(&["--version"]).0, EXIT_OK);
        assert_eq!(call(&["analyze", "/nonexistent/file.sft"]).0, EXIT_USAGE);
        assert_eq!(call(&["--workers", "0", "examples"]).0, EXIT_USAGE);
    }

    #[test]
    fn examples_listing() {
        let (status, out, _) = call(&["--format", "canonical", "examples"]);
        assert_eq!(status, 0);
        assert!(out.contains("example.weiss_tau "));
        let (status, out, _) = call(&["examples", "collapse"]);
        assert_eq!(status, 0);
        assert!(out.contains("# collapse.sbc"));
        assert_eq!(call(&["examples", "nope"]).0, EXIT_USAGE);
    }
}
