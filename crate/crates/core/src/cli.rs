//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code:
//!
//! * `0`: success, or verification passed;
//! * `1`: verification found a violation;
//! * `2`: invalid arguments or a domain error (message on stderr).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::bipolar::{bipolar_lawson_record, bipolar_otsuki_record};
use crate::bounds::{bound_for, SupLowerBound};
use crate::clifford::clifford_records;
use crate::geodesic::{geodesic_length, trace_geodesic, DEFAULT_STEP_TOL};
use crate::lawson::{lawson_lambda, LawsonParameter};
use crate::otsuki::{enumerate_parameters, otsuki_lambda, solve_parameter, OtsukiParameter};
use crate::record::{ExtremalRecord, Topology};
use crate::verify::{self, Limits, Verdict, VerificationReport, DEFAULT_WARN_BELOW};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Surface {
    Torus,
    Klein,
}

#[derive(Parser, Debug)]
#[command(
    name = "extremal",
    version,
    about = "Extremal metrics for Laplace eigenvalues on tori and Klein bottles"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Decimal places for printed numbers.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Otsuki torus O_{p/q}, or all of them up to a given q.
    Otsuki(OtsukiArgs),
    /// Lawson surface tau_{m,k}.
    Lawson {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Bipolar surfaces.
    #[command(subcommand)]
    Bipolar(BipolarCommand),
    /// Clifford torus records for every representable r^2 up to a limit.
    Clifford {
        #[arg(long = "max-r2")]
        max_r2: u64,
    },
    /// Lower bound for sup Lambda_n on a torus or Klein bottle.
    Bounds {
        #[arg(long, value_enum)]
        surface: Surface,
        #[arg(long)]
        n: u64,
    },
    /// Trace the closed geodesic of O_{p/q} in the reduced metric and write it as CSV.
    Geodesic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
        /// Relative convergence tolerance of the arc quadrature.
        #[arg(long = "step-tol", default_value_t = DEFAULT_STEP_TOL)]
        step_tol: f64,
    },
    /// Check every family and inequality within the given limits.
    Verify {
        #[arg(long = "max-q")]
        max_q: u64,
        #[arg(long = "max-m")]
        max_m: u64,
        #[arg(long = "max-r2")]
        max_r2: u64,
        /// Positive margins below this produce a warning.
        #[arg(long, default_value_t = DEFAULT_WARN_BELOW)]
        tol: f64,
        /// Points per grid in the property sweeps.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct OtsukiArgs {
    #[command(subcommand)]
    command: Option<OtsukiCommand>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum OtsukiCommand {
    /// Every admissible p/q with q up to a limit.
    Enumerate {
        #[arg(long = "max-q")]
        max_q: u64,
    },
}

#[derive(Subcommand, Debug)]
enum BipolarCommand {
    /// Bipolar surface to the Lawson surface tau_{m,k}.
    Lawson {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Bipolar surface to the Otsuki torus O_{p/q} (value is an upper bound).
    Otsuki {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().ansi().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let fmt = Formatter {
        format: cli.format,
        precision: cli.precision,
    };
    match execute(cli.command, &fmt, out, err) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum Failure {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(
    command: Command,
    fmt: &Formatter,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Otsuki(args) => match (args.command, args.p, args.q) {
            (Some(OtsukiCommand::Enumerate { max_q }), _, _) => {
                let records = enumerate_parameters(max_q)
                    .iter()
                    .map(otsuki_lambda)
                    .collect::<crate::Result<Vec<_>>>()?;
                fmt.records(out, &records)?;
            }
            (None, Some(p), Some(q)) => {
                let param = OtsukiParameter::new(p, q)?;
                let record = otsuki_lambda(&param)?;
                fmt.record(out, &record)?;
                if fmt.format == OutputFormat::Human {
                    let a = solve_parameter(&param)?.value();
                    writeln!(out, "  a         {}", fmt.num(a))?;
                }
            }
            _ => {
                writeln!(
                    err,
                    "error: otsuki needs --p and --q, or the enumerate subcommand"
                )?;
                return Ok(2);
            }
        },
        Command::Lawson { m, k } => {
            fmt.record(out, &lawson_lambda(&LawsonParameter::new(m, k)?)?)?;
        }
        Command::Bipolar(BipolarCommand::Lawson { m, k }) => {
            fmt.record(out, &bipolar_lawson_record(&LawsonParameter::new(m, k)?)?)?;
        }
        Command::Bipolar(BipolarCommand::Otsuki { p, q }) => {
            fmt.record(out, &bipolar_otsuki_record(&OtsukiParameter::new(p, q)?)?)?;
        }
        Command::Clifford { max_r2 } => {
            if max_r2 < 1 {
                return Err(crate::error::invalid("--max-r2 must be at least 1").into());
            }
            fmt.records(out, &clifford_records(max_r2)?)?;
        }
        Command::Bounds { surface, n } => {
            let topology = match surface {
                Surface::Torus => Topology::Torus,
                Surface::Klein => Topology::KleinBottle,
            };
            fmt.bound(out, &bound_for(topology, n)?)?;
        }
        Command::Geodesic {
            p,
            q,
            out: path,
            step_tol,
        } => {
            return geodesic(p, q, &path, step_tol, fmt, out);
        }
        Command::Verify {
            max_q,
            max_m,
            max_r2,
            tol,
            grid,
        } => {
            if tol.is_nan() || tol < 0.0 {
                return Err(crate::error::invalid("--tol must be non-negative").into());
            }
            let limits = Limits::new(max_q, max_m, max_r2)?;
            let report = verify::run(&limits, grid, tol)?;
            for w in &report.warnings {
                writeln!(err, "warning: {w}")?;
            }
            for f in &report.failures {
                writeln!(err, "violation: {f}")?;
            }
            fmt.report(out, &limits, &report)?;
            return Ok(if report.verdict == Verdict::Pass {
                0
            } else {
                1
            });
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct GeodesicSummary {
    p: u64,
    q: u64,
    a: f64,
    arcs: usize,
    length: f64,
    value_from_length: f64,
    value: f64,
    relative_difference: f64,
    closure_mismatch: f64,
    closed: bool,
    samples_written: usize,
    out: String,
}

fn geodesic(
    p: u64,
    q: u64,
    path: &PathBuf,
    step_tol: f64,
    fmt: &Formatter,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let param = OtsukiParameter::new(p, q)?;
    let a = solve_parameter(&param)?.value();
    let trace = trace_geodesic(a, &param, step_tol)?;
    let length = geodesic_length(&trace);
    let record = otsuki_lambda(&param)?;
    let mut file = BufWriter::new(File::create(path)?);
    trace.write_csv(&mut file, fmt.precision)?;
    file.flush()?;
    let from_length = 2.0 * length.value;
    let summary = GeodesicSummary {
        p,
        q,
        a,
        arcs: trace.arcs,
        length: length.value,
        value_from_length: from_length,
        value: record.value,
        relative_difference: (from_length - record.value).abs() / record.value,
        closure_mismatch: trace.closure_mismatch,
        closed: length.closed,
        samples_written: trace.decimated(crate::geodesic::MAX_EXPORT_SAMPLES).len(),
        out: path.display().to_string(),
    };
    match fmt.format {
        OutputFormat::Json => fmt.json(out, &summary)?,
        OutputFormat::Csv => {
            writeln!(out, "p,q,a,arcs,length,value_from_length,value,relative_difference,closure_mismatch,closed")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                p,
                q,
                fmt.num(a),
                summary.arcs,
                fmt.num(summary.length),
                fmt.num(from_length),
                fmt.num(record.value),
                fmt.sci(summary.relative_difference),
                fmt.sci(summary.closure_mismatch),
                summary.closed
            )?;
        }
        OutputFormat::Human => {
            writeln!(
                out,
                "Closed geodesic of O_{{{p}/{q}}} in the reduced metric"
            )?;
            writeln!(out, "  a                  {}", fmt.num(a))?;
            writeln!(out, "  arcs               {}", summary.arcs)?;
            writeln!(out, "  length             {}", fmt.num(summary.length))?;
            writeln!(out, "  2 * length         {}", fmt.num(from_length))?;
            writeln!(out, "  8*pi*q*Phi(a)      {}", fmt.num(record.value))?;
            writeln!(
                out,
                "  relative diff      {}",
                fmt.sci(summary.relative_difference)
            )?;
            writeln!(
                out,
                "  closure mismatch   {}",
                fmt.sci(summary.closure_mismatch)
            )?;
            writeln!(out, "  closed             {}", summary.closed)?;
            writeln!(
                out,
                "  wrote {} samples to {}",
                summary.samples_written, summary.out
            )?;
        }
    }
    Ok(if summary.closed { 0 } else { 1 })
}

const CSV_HEADER: &str = "family,params,topology,index,value,value_kind,baseline,margin";

struct Formatter {
    format: OutputFormat,
    precision: usize,
}

impl Formatter {
    fn num(&self, x: f64) -> String {
        format!("{:.*}", self.precision, x)
    }

    fn sci(&self, x: f64) -> String {
        format!("{:.*e}", self.precision.min(17), x)
    }

    fn json<T: Serialize>(&self, out: &mut dyn Write, value: &T) -> io::Result<()> {
        let mut v = serde_json::to_value(value).map_err(io::Error::other)?;
        round_floats(&mut v, self.precision);
        serde_json::to_writer_pretty(&mut *out, &v).map_err(io::Error::other)?;
        writeln!(out)
    }

    fn csv_row(&self, out: &mut dyn Write, r: &ExtremalRecord) -> io::Result<()> {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.family,
            r.params,
            r.topology,
            r.index,
            self.num(r.value),
            r.value_kind,
            self.num(r.baseline),
            self.num(r.margin)
        )
    }

    fn human(&self, out: &mut dyn Write, r: &ExtremalRecord) -> io::Result<()> {
        let baseline_formula = match r.topology {
            Topology::Torus => "8*pi*(i-1+pi/sqrt(3))",
            Topology::KleinBottle => "8*pi*(i-1)+12*pi*E(2*sqrt(2)/3)",
        };
        let relation = match r.value_kind {
            crate::ValueKind::Exact => "=",
            crate::ValueKind::UpperBound => "<",
        };
        writeln!(
            out,
            "{} {} ({}), index i = {}",
            r.family, r.params, r.topology, r.index
        )?;
        writeln!(
            out,
            "  value     {}  [Lambda_i {relation} {}]",
            self.num(r.value),
            r.formula.trim_start_matches("< ")
        )?;
        writeln!(
            out,
            "  baseline  {}  [{baseline_formula}]",
            self.num(r.baseline)
        )?;
        writeln!(out, "  margin    {}", self.num(r.margin))
    }

    fn record(&self, out: &mut dyn Write, r: &ExtremalRecord) -> io::Result<()> {
        match self.format {
            OutputFormat::Json => self.json(out, r),
            OutputFormat::Csv => {
                writeln!(out, "{CSV_HEADER}")?;
                self.csv_row(out, r)
            }
            OutputFormat::Human => self.human(out, r),
        }
    }

    fn records(&self, out: &mut dyn Write, records: &[ExtremalRecord]) -> io::Result<()> {
        match self.format {
            OutputFormat::Json => self.json(out, &records),
            OutputFormat::Csv => {
                writeln!(out, "{CSV_HEADER}")?;
                records.iter().try_for_each(|r| self.csv_row(out, r))
            }
            OutputFormat::Human => records.iter().try_for_each(|r| self.human(out, r)),
        }
    }

    fn bound(&self, out: &mut dyn Write, b: &SupLowerBound) -> io::Result<()> {
        match self.format {
            OutputFormat::Json => self.json(out, b),
            OutputFormat::Csv => {
                writeln!(out, "topology,n,value")?;
                writeln!(out, "{},{},{}", b.topology, b.n, self.num(b.value))
            }
            OutputFormat::Human => {
                let formula = match b.topology {
                    Topology::Torus => "8*pi*(n-1+pi/sqrt(3))",
                    Topology::KleinBottle => "8*pi*(n-1)+12*pi*E(2*sqrt(2)/3)",
                };
                writeln!(
                    out,
                    "sup Lambda_{} ({}) >= {}  [{formula}]",
                    b.n,
                    b.topology,
                    self.num(b.value)
                )
            }
        }
    }

    fn report(
        &self,
        out: &mut dyn Write,
        limits: &Limits,
        rep: &VerificationReport,
    ) -> io::Result<()> {
        match self.format {
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct Wrapped<'a> {
                    limits: &'a Limits,
                    #[serde(flatten)]
                    report: &'a VerificationReport,
                }
                self.json(
                    out,
                    &Wrapped {
                        limits,
                        report: rep,
                    },
                )
            }
            OutputFormat::Csv => self.records(out, &rep.records),
            OutputFormat::Human => {
                writeln!(
                    out,
                    "Limits: max_q = {}, max_m = {}, max_r2 = {}",
                    limits.max_q, limits.max_m, limits.max_r2
                )?;
                for family in crate::Family::ALL {
                    let of: Vec<&ExtremalRecord> =
                        rep.records.iter().filter(|r| r.family == family).collect();
                    let worst = of
                        .iter()
                        .filter(|r| !r.is_whitelisted())
                        .min_by(|a, b| a.margin.total_cmp(&b.margin));
                    match worst {
                        Some(w) => writeln!(
                            out,
                            "  {:<14} {:>6} records, smallest margin {} at {}",
                            family.name(),
                            of.len(),
                            self.num(w.margin),
                            w.params
                        )?,
                        None => writeln!(out, "  {:<14} {:>6} records", family.name(), of.len())?,
                    }
                }
                for r in rep.records.iter().filter(|r| r.is_whitelisted()) {
                    writeln!(
                        out,
                        "  equality: {} {} margin {}",
                        r.family,
                        r.params,
                        self.sci(r.margin)
                    )?;
                }
                writeln!(out, "Sweeps:")?;
                for s in &rep.sweeps {
                    writeln!(
                        out,
                        "  [{}] {} on {}: worst {} at {}",
                        if s.passed { "pass" } else { "FAIL" },
                        s.name,
                        s.domain,
                        self.sci(s.worst_margin),
                        s.worst_location
                    )?;
                }
                writeln!(
                    out,
                    "Verdict: {}",
                    match rep.verdict {
                        Verdict::Pass => "pass",
                        Verdict::Fail => "fail",
                    }
                )
            }
        }
    }
}

/// Rounds every non-integer number in `v` to `precision` decimal places.
fn round_floats(v: &mut Value, precision: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                let rounded: f64 = format!("{:.*}", precision, x).parse().unwrap_or(x);
                if let Some(r) = serde_json::Number::from_f64(rounded) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_floats(x, precision)),
        Value::Object(map) => map.values_mut().for_each(|x| round_floats(x, precision)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("extremal").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn excluded_ratio_is_a_usage_error() {
        let (code, out, err) = call(&["otsuki", "--p", "1", "--q", "2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("1/2"), "{err}");
    }

    #[test]
    fn lawson_json() {
        let (code, out, _) = call(&["lawson", "--m", "3", "--k", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["index"], 5);
        assert_eq!(v["params"]["m"], 3);
        assert_eq!(v["value_kind"], "exact");
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "family",
                "params",
                "topology",
                "index",
                "value",
                "value_kind",
                "baseline",
                "margin"
            ]
        );
    }

    #[test]
    fn precision_controls_digits() {
        let (_, out, _) = call(&[
            "bounds",
            "--surface",
            "torus",
            "--n",
            "1",
            "--format",
            "csv",
            "--precision",
            "3",
        ]);
        assert_eq!(out, "topology,n,value\ntorus,1,45.586\n");
    }

    #[test]
    fn otsuki_needs_both_or_enumerate() {
        assert_eq!(call(&["otsuki", "--p", "2"]).0, 2);
        let (code, out, _) = call(&["otsuki", "enumerate", "--max-q", "5", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn rounding_leaves_integers_alone() {
        let mut v = serde_json::json!({"a": 1.23456789, "n": 7, "xs": [0.5, 2.0]});
        round_floats(&mut v, 3);
        assert_eq!(v.to_string(), r#"{"a":1.235,"n":7,"xs":[0.5,2.0]}"#);
    }
}
