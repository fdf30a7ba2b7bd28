//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::enumerate::seifert_system;
use crate::error::{Error, Result};
use crate::knots::{
    canonical_form, is_hyperbolic, is_one_one, is_torus, parse, MontesinosKnot, ParsedKnot,
};
use crate::numerics::Fraction;
use crate::surface::{candidate_surfaces, twist, CandidateSurface, Incompressibility};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "boundary-slopes",
    version,
    about = "Boundary slopes and Euler characteristics of candidate surfaces in Montesinos knot exteriors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Also list surfaces whose incompressibility is not guaranteed.
    #[arg(long, global = true)]
    pub include_unknown_incompressibility: bool,

    /// Print only the essential result.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    /// Worker threads for the enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Candidate surfaces of a knot, sorted by boundary slope.
    Slopes { knot: String },
    /// Canonical form and the torus / hyperbolic / (1,1) predicates.
    Classify { knot: String },
    /// Check the (2,-3,n)-pretzel slope 2(n-1)^2/n with Euler characteristic -n for odd n.
    VerifyTheorem {
        #[arg(long, default_value_t = 21)]
        n_max: i64,
    },
    /// The Seifert-surface edgepath system and its twist.
    Seifert { knot: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn tri(x: Option<bool>) -> String {
    match x {
        Some(true) => "true".into(),
        Some(false) => "false".into(),
        None => "unknown".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EulerCell {
    Value(i64),
    Missing(String),
}

impl std::fmt::Display for EulerCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EulerCell::Value(x) => write!(f, "{x}"),
            EulerCell::Missing(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub slope: String,
    pub euler: EulerCell,
    pub r_cycle: Option<Vec<i64>>,
    pub incompressibility: String,
    pub seifert: bool,
    pub sheets: i64,
    pub system_kind: String,
    pub common_u: String,
    pub twist: String,
}

pub const CSV_HEADER: [&str; 9] = [
    "slope",
    "euler",
    "r_cycle",
    "incompressibility",
    "seifert",
    "sheets",
    "system_kind",
    "common_u",
    "twist",
];

pub fn format_r_cycle(rc: &Option<Vec<i64>>) -> String {
    match rc {
        Some(v) => {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
        None => "-".into(),
    }
}

impl ReportRow {
    pub fn from_surface(s: &CandidateSurface) -> Self {
        ReportRow {
            slope: s.slope.to_string(),
            euler: s
                .euler
                .map(EulerCell::Value)
                .unwrap_or_else(|| EulerCell::Missing("-".into())),
            r_cycle: s.r_cycle.clone(),
            incompressibility: s.incompressibility.to_string(),
            seifert: s.seifert,
            sheets: s.sheets,
            system_kind: s.kind.to_string(),
            common_u: s.system.common_u.to_string(),
            twist: s.twist.to_string(),
        }
    }

    pub fn cells(&self) -> Vec<String> {
        vec![
            self.slope.clone(),
            self.euler.to_string(),
            format_r_cycle(&self.r_cycle),
            self.incompressibility.clone(),
            self.seifert.to_string(),
            self.sheets.to_string(),
            self.system_kind.clone(),
            self.common_u.clone(),
            self.twist.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub torus: String,
    pub hyperbolic: String,
    pub one_one: String,
}

impl Predicates {
    pub fn of(k: &MontesinosKnot) -> Self {
        Predicates {
            torus: tri(is_torus(k)),
            hyperbolic: tri(is_hyperbolic(k)),
            one_one: tri(is_one_one(k)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub knot: String,
    pub canonical: String,
    pub predicates: Predicates,
    pub seifert_twist: Option<String>,
    /// Set when there is no Seifert baseline and slopes are raw twists.
    pub slope_is_twist: bool,
    pub surfaces: Vec<ReportRow>,
}

pub fn build_report(parsed: &ParsedKnot, include_unknown: bool) -> Result<Report> {
    let k = &parsed.knot;
    let set = candidate_surfaces(k)?;
    let surfaces = set
        .surfaces
        .iter()
        .filter(|s| {
            include_unknown || s.seifert || s.incompressibility == Incompressibility::Guaranteed
        })
        .map(ReportRow::from_surface)
        .collect();
    Ok(Report {
        knot: k.to_string(),
        canonical: canonical_form(k).to_string(),
        predicates: Predicates::of(k),
        seifert_twist: set.seifert_twist.map(|t| t.to_string()),
        slope_is_twist: set.seifert_twist.is_none(),
        surfaces,
    })
}

fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(
        out,
        "{}",
        line(header.iter().map(|s| s.to_string()).collect())
    )?;
    for r in rows {
        writeln!(out, "{}", line(r.clone()))?;
    }
    Ok(())
}

fn csv_out(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

fn write_report(
    out: &mut dyn Write,
    report: &Report,
    format: Format,
    quiet: bool,
) -> std::io::Result<()> {
    let rows: Vec<Vec<String>> = report.surfaces.iter().map(ReportRow::cells).collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => csv_out(out, &CSV_HEADER, &rows),
        Format::Table => {
            if !quiet {
                writeln!(out, "knot: {}", report.knot)?;
                writeln!(out, "canonical: {}", report.canonical)?;
                writeln!(
                    out,
                    "torus: {}  hyperbolic: {}  (1,1): {}",
                    report.predicates.torus,
                    report.predicates.hyperbolic,
                    report.predicates.one_one
                )?;
                match &report.seifert_twist {
                    Some(t) => writeln!(out, "seifert twist: {t}")?,
                    None => writeln!(
                        out,
                        "seifert twist: unavailable (slopes below are raw twists)"
                    )?,
                }
                writeln!(out)?;
            }
            table(out, &CSV_HEADER, &rows)
        }
    }
}

#[derive(Serialize)]
struct Classification {
    knot: String,
    canonical: String,
    sum: String,
    residues: Vec<String>,
    pretzel: Option<Vec<i64>>,
    predicates: Predicates,
}

fn classify(parsed: &ParsedKnot) -> Classification {
    let k = &parsed.knot;
    let key = canonical_form(k);
    Classification {
        knot: k.to_string(),
        canonical: key.to_string(),
        sum: key.sum.to_string(),
        residues: key.residues.iter().map(|r| r.to_string()).collect(),
        pretzel: parsed.pretzel.clone(),
        predicates: Predicates::of(k),
    }
}

fn write_pairs(
    out: &mut dyn Write,
    pairs: &[(&str, String)],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = pairs
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.clone()])
                .collect();
            csv_out(out, &["key", "value"], &rows)
        }
        _ => {
            for (k, v) in pairs {
                writeln!(out, "{k}: {v}")?;
            }
            Ok(())
        }
    }
}

/// Outcome of the theorem check for one odd `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub n: i64,
    pub expected_slope: String,
    pub found: bool,
    pub twist: Option<String>,
    pub seifert_twist: Option<String>,
}

/// Looks for the surface of slope `2(n-1)²/n`, Euler characteristic `-n`,
/// r-cycle a rotation of `(1-n, -1, -1)` and guaranteed incompressibility
/// among the candidates of the `(2,-3,n)`-pretzel knot.
pub fn check_theorem(n: i64) -> Result<TheoremCheck> {
    let knot = MontesinosKnot::pretzel(&[2, -3, n])?;
    let set = candidate_surfaces(&knot)?;
    let expected = Fraction::new(2 * (n - 1) * (n - 1), n)?;
    let target = [1 - n, -1, -1];
    let is_rotation = |rc: &[i64]| (0..3).any(|r| (0..3).all(|i| rc[(i + r) % 3] == target[i]));
    let hit = set.surfaces.iter().find(|s| {
        s.slope == expected
            && s.euler == Some(-n)
            && s.incompressibility == Incompressibility::Guaranteed
            && s.r_cycle.as_deref().is_some_and(is_rotation)
    });
    Ok(TheoremCheck {
        n,
        expected_slope: expected.to_string(),
        found: hit.is_some() && set.seifert_twist.is_some(),
        twist: hit.map(|s| s.twist.to_string()),
        seifert_twist: set.seifert_twist.map(|t| t.to_string()),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Unsupported(format!("write failed: {e}"));
    match &cli.command {
        Command::Slopes { knot } => {
            let parsed = parse(knot)?;
            let report = build_report(&parsed, cli.include_unknown_incompressibility)?;
            write_report(out, &report, cli.format, cli.quiet).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Classify { knot } => {
            let c = classify(&parse(knot)?);
            if cli.format == Format::Json {
                serde_json::to_writer_pretty(&mut *out, &c).map_err(|e| io(e.into()))?;
                writeln!(out).map_err(io)?;
            } else {
                let pairs = [
                    ("knot", c.knot.clone()),
                    ("canonical", c.canonical.clone()),
                    ("sum", c.sum.clone()),
                    ("residues", format!("({})", c.residues.join(","))),
                    ("torus", c.predicates.torus.clone()),
                    ("hyperbolic", c.predicates.hyperbolic.clone()),
                    ("one_one", c.predicates.one_one.clone()),
                ];
                write_pairs(out, &pairs, cli.format).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Seifert { knot } => {
            let parsed = parse(knot)?;
            let (sys, tau) = seifert_system(parsed.knot.tangles())?;
            debug_assert_eq!(tau, twist(&sys));
            let paths: Vec<String> = sys.paths.iter().map(|p| p.to_string()).collect();
            if cli.format == Format::Json {
                let v = serde_json::json!({
                    "knot": parsed.knot.to_string(),
                    "paths": paths,
                    "seifert_twist": tau.to_string(),
                });
                serde_json::to_writer_pretty(&mut *out, &v).map_err(|e| io(e.into()))?;
                writeln!(out).map_err(io)?;
            } else {
                let mut pairs = vec![("knot", parsed.knot.to_string())];
                for p in &paths {
                    pairs.push(("path", p.clone()));
                }
                pairs.push(("seifert_twist", tau.to_string()));
                write_pairs(out, &pairs, cli.format).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::VerifyTheorem { n_max } => {
            if *n_max < 3 {
                return Err(Error::Parse(format!(
                    "--n-max must be at least 3, got {n_max}"
                )));
            }
            let checks = (3..=*n_max)
                .step_by(2)
                .map(check_theorem)
                .collect::<Result<Vec<_>>>()?;
            let all = checks.iter().all(|c| c.found);
            match cli.format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &checks).map_err(|e| io(e.into()))?;
                    writeln!(out).map_err(io)?;
                }
                _ => {
                    for c in &checks {
                        if cli.quiet && c.found {
                            continue;
                        }
                        writeln!(
                            out,
                            "n={} slope={} euler={} {}",
                            c.n,
                            c.expected_slope,
                            -c.n,
                            if c.found { "PASS" } else { "FAIL" }
                        )
                        .map_err(io)?;
                    }
                    writeln!(out, "{}", if all { "all PASS" } else { "FAILED" }).map_err(io)?;
                }
            }
            Ok(if all { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
