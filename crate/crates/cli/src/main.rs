//! Command-line front end: builds arrays from maps, verifies stored
//! arrays, prints edge labelings and value functions, checks Leonard
//! systems, expands the four-parameter eigenvalue family, and draws the
//! triangular grid.
//!
//! Exit codes: `0` for success, `1` when a verification ran to completion
//! and some check failed (or a value missed its closed form), `2` for
//! input or usage errors.

#![forbid(unsafe_code)]

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use billiard::cba::{closed_form_value, edge_labels, value_function, verify_cba};
use billiard::json::{vector_strings, ArrayFile, FieldSpecJson, LeonardFile, MapFile, QRacahFile};
use billiard::leonard::{
    border_correspondence, split_with_report, verify_leonard_pair, LeonardSystem,
};
use billiard::simplex::locations;
use billiard::{CbaArray, EigStructure, Error, FieldSpec, PolyCba, Report, Scalar, Vector};

/// Arrays of diameter beyond this are refused up front; the grids grow
/// quadratically and the exact arithmetic behind them far faster.
const MAX_DIAMETER: usize = 1000;

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "Build and verify billiard arrays of polynomial type, and the Leonard systems behind them"
)]
struct Cli {
    /// Field for inputs that do not carry one: "rational" or "gfp:<p>".
    #[arg(long, global = true, default_value = "rational")]
    field: String,

    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also write the JSON form of the result to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the array of a map from a seed vector.
    Build {
        /// JSON file with a map and its ordered eigenvalue sequence.
        input: PathBuf,
        /// JSON file with the seed vector as an array of scalar strings
        /// (["1", "-2/3", "1"]); the canonical seed is used when absent.
        #[arg(long, value_name = "PATH")]
        seed_vector: Option<PathBuf>,
    },
    /// Verify the line and clique conditions of an array (stored, or
    /// built from a map on the fly).
    Verify { input: PathBuf },
    /// Print the edge labeling derived from an array.
    Labels { input: PathBuf },
    /// Print the value function and compare it with its closed form.
    Values { input: PathBuf },
    /// Verify that a pair of maps forms a Leonard system.
    LeonardVerify { input: PathBuf },
    /// Verify a pair and print its split decomposition with all checks.
    LeonardSplit { input: PathBuf },
    /// Verify a pair and check where the array borders land.
    LeonardBorders { input: PathBuf },
    /// Expand the eigenvalue family theta_i = a + b q^i + c q^{-i} and
    /// its parameter-form values.
    Qracah { input: PathBuf },
    /// Draw the triangular grid of an array, a map, or a bare diameter.
    Render {
        /// JSON file with an array or a map; omit to use --diameter.
        input: Option<PathBuf>,
        /// Draw location coordinates only, for this diameter.
        #[arg(long, short = 'd')]
        diameter: Option<usize>,
    },
}

struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { input, seed_vector } => run_build(input, seed_vector.as_deref()),
        Command::Verify { input } => run_verify(input),
        Command::Labels { input } => run_labels(input),
        Command::Values { input } => run_values(input),
        Command::LeonardVerify { input } => run_leonard_verify(input),
        Command::LeonardSplit { input } => run_leonard_split(input),
        Command::LeonardBorders { input } => run_leonard_borders(input),
        Command::Qracah { input } => run_qracah(input, &cli.field),
        Command::Render { input, diameter } => run_render(input.as_deref(), *diameter),
    };
    match result {
        Ok(outcome) => {
            let rendered = match cli.format {
                Format::Text => outcome.text,
                Format::Json => pretty(&outcome.json),
            };
            if let Err(e) = emit(&rendered) {
                // A closed pipe means the consumer has everything it
                // wants; anything else is a real I/O failure.
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::from(outcome.code);
                }
                return fail(&cli, &format!("cannot write to stdout: {e}"));
            }
            if let Some(path) = &cli.out {
                if let Err(message) = write_out(path, &outcome.json) {
                    return fail(&cli, &message);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(message) => fail(&cli, &message),
    }
}

/// Writes a line to stdout without panicking when the pipe closes early.
fn emit(text: &str) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.write_all(b"\n")?;
    stdout.flush()
}

fn fail(cli: &Cli, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    if cli.format == Format::Json {
        // Best effort: the diagnostic already went to stderr.
        let _ = emit(&pretty(&json!({ "error": message })));
    }
    ExitCode::from(2)
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn write_out(path: &Path, value: &Value) -> Result<(), String> {
    fs::write(path, format!("{}\n", pretty(value)))
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn err_string(e: Error) -> String {
    e.to_string()
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn guard_diameter(d: usize) -> Result<(), String> {
    if d > MAX_DIAMETER {
        return Err(format!(
            "diameter {d} exceeds the supported limit {MAX_DIAMETER}"
        ));
    }
    Ok(())
}

fn parse_field(text: &str) -> Result<FieldSpec, String> {
    if text == "rational" {
        return Ok(FieldSpec::rational());
    }
    if let Some(rest) = text.strip_prefix("gfp:") {
        let p: u64 = rest
            .parse()
            .map_err(|_| format!("cannot read a prime from {text:?}"))?;
        return FieldSpec::prime_field(p).map_err(err_string);
    }
    Err(format!(
        "unknown field {text:?}; use \"rational\" or \"gfp:<p>\""
    ))
}

fn join_scalars(scalars: &[Scalar]) -> String {
    scalars
        .iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn vector_text(v: &Vector) -> String {
    format!("[{}]", join_scalars(v.entries()))
}

fn report_lines(report: &Report) -> String {
    let mut lines: Vec<String> = report
        .entries()
        .iter()
        .map(|entry| {
            format!(
                "{} {} {}: {}",
                if entry.pass { "PASS" } else { "FAIL" },
                entry.check,
                entry.subject,
                entry.detail
            )
        })
        .collect();
    let failed = report.entries().iter().filter(|e| !e.pass).count();
    lines.push(if failed == 0 {
        format!("{} checks: all passed", report.len())
    } else {
        format!("{} checks: {failed} failed", report.len())
    });
    lines.join("\n")
}

fn checks_value(report: &Report) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

/// Loads an array: either a stored array file, or a map file from which
/// the array is built with the canonical seed. The two are told apart by
/// the `array` key.
fn load_array(path: &Path) -> Result<CbaArray, String> {
    let text = read_file(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
    if value.get("array").is_some() {
        let file: ArrayFile = serde_json::from_value(value)
            .map_err(|e| format!("cannot parse {} as an array file: {e}", path.display()))?;
        guard_diameter(file.d)?;
        file.to_array().map_err(err_string)
    } else {
        let file: MapFile = serde_json::from_value(value)
            .map_err(|e| format!("cannot parse {} as a map file: {e}", path.display()))?;
        let cba = build_from_map(&file, None)?;
        Ok(cba.array().clone())
    }
}

fn build_from_map(file: &MapFile, seed_path: Option<&Path>) -> Result<PolyCba, String> {
    let (a, theta) = file.to_parts().map_err(err_string)?;
    guard_diameter(theta.len().saturating_sub(1))?;
    let field = a.field();
    let eig = EigStructure::new(a, theta).map_err(err_string)?;
    match seed_path {
        Some(path) => {
            let seed = load_seed(path, field)?;
            PolyCba::build(eig, seed).map_err(err_string)
        }
        None => PolyCba::with_default_seed(eig).map_err(err_string),
    }
}

fn load_seed(path: &Path, field: FieldSpec) -> Result<Vector, String> {
    let text = read_file(path)?;
    let entries: Vec<String> = serde_json::from_str(&text).map_err(|e| {
        format!(
            "{} is not a JSON array of scalar strings: {e}",
            path.display()
        )
    })?;
    parse_seed_entries(&entries, field)
}

fn parse_seed_entries(entries: &[String], field: FieldSpec) -> Result<Vector, String> {
    let scalars = entries
        .iter()
        .map(|entry| Scalar::parse(entry, field))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err_string)?;
    Vector::new(scalars).map_err(err_string)
}

fn run_build(path: &Path, seed_path: Option<&Path>) -> Result<Outcome, String> {
    let text = read_file(path)?;
    let file: MapFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {} as a map file: {e}", path.display()))?;
    let cba = build_from_map(&file, seed_path)?;
    let array_file = ArrayFile::from_array(cba.array());
    let mut lines = vec![
        format!("array of diameter {} over {}", cba.d(), cba.field()),
        format!("theta: {}", join_scalars(cba.array().theta())),
        format!("seed: {}", vector_text(cba.seed())),
    ];
    for (location, vector) in cba.array().iter() {
        lines.push(format!("{location}: {}", vector_text(vector)));
    }
    Ok(Outcome {
        text: lines.join("\n"),
        json: serde_json::to_value(&array_file).expect("array files serialize"),
        code: 0,
    })
}

fn run_verify(path: &Path) -> Result<Outcome, String> {
    let array = load_array(path)?;
    let report = verify_cba(&array);
    Ok(Outcome {
        text: report_lines(&report),
        json: json!({ "pass": report.passed(), "checks": checks_value(&report) }),
        code: u8::from(!report.passed()),
    })
}

fn run_labels(path: &Path) -> Result<Outcome, String> {
    let array = load_array(path)?;
    let labeling = edge_labels(&array).map_err(err_string)?;
    let mut lines = vec![format!(
        "edge labeling of the diameter-{} grid over {}",
        labeling.d(),
        labeling.field()
    )];
    let mut rows = Vec::new();
    for (&(from, to), label) in labeling.iter() {
        lines.push(format!("{from} -> {to}: {label}"));
        rows.push(json!({
            "from": [from.r, from.s, from.t],
            "to": [to.r, to.s, to.t],
            "label": label.to_string(),
        }));
    }
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({
            "d": labeling.d(),
            "field": FieldSpecJson::from_field(labeling.field()),
            "labels": rows,
        }),
        code: 0,
    })
}

fn run_values(path: &Path) -> Result<Outcome, String> {
    let array = load_array(path)?;
    let labeling = edge_labels(&array).map_err(err_string)?;
    let values = value_function(&labeling).map_err(err_string)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut all_match = true;
    for (location, value) in values.iter() {
        let reference = closed_form_value(array.theta(), location).map_err(err_string)?;
        let matches = *value == reference;
        all_match &= matches;
        lines.push(format!(
            "{location}: value = {value}, closed form = {reference}, match = {}",
            if matches { "yes" } else { "no" }
        ));
        rows.push(json!({
            "loc": [location.r, location.s, location.t],
            "value": value.to_string(),
            "closed_form": reference.to_string(),
            "match": matches,
        }));
    }
    lines.push(if values.is_empty() {
        "no interior locations at this diameter".to_string()
    } else if all_match {
        format!("{} value(s), all matching the closed form", values.len())
    } else {
        "closed-form mismatch detected".to_string()
    });
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({ "d": array.d(), "values": rows, "pass": all_match }),
        code: u8::from(!all_match),
    })
}

/// The outcome of certifying a pair file: either a verified system with
/// its four pass entries, or the report that pinpoints what failed.
enum Certification {
    Verified(Box<LeonardSystem>, Report),
    Failed(Report),
}

const BAND_DETAIL: &str = "tridiagonal with nonzero blocks next to the diagonal";

fn certify_leonard(path: &Path) -> Result<Certification, String> {
    let text = read_file(path)?;
    let file: LeonardFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {} as a pair file: {e}", path.display()))?;
    let (a, theta, a_star, theta_star) = file.to_parts().map_err(err_string)?;
    guard_diameter(theta.len().saturating_sub(1))?;
    let mut report = Report::new();
    let eig = match EigStructure::new(a, theta) {
        Ok(eig) => {
            report.push(
                "eigenstructure",
                "A",
                true,
                "multiplicity-free with the given eigenvalue order",
            );
            eig
        }
        Err(Error::NotMultiplicityFree(msg)) => {
            report.push("eigenstructure", "A", false, msg);
            return Ok(Certification::Failed(report));
        }
        Err(e) => return Err(e.to_string()),
    };
    let eig_star = match EigStructure::new(a_star, theta_star) {
        Ok(eig_star) => {
            report.push(
                "eigenstructure",
                "A*",
                true,
                "multiplicity-free with the given eigenvalue order",
            );
            eig_star
        }
        Err(Error::NotMultiplicityFree(msg)) => {
            report.push("eigenstructure", "A*", false, msg);
            return Ok(Certification::Failed(report));
        }
        Err(e) => return Err(e.to_string()),
    };
    match verify_leonard_pair(eig, eig_star) {
        Ok(ls) => {
            report.push("band", "E A* E", true, BAND_DETAIL);
            report.push("band", "E* A E*", true, BAND_DETAIL);
            Ok(Certification::Verified(Box::new(ls), report))
        }
        Err(e @ Error::NotLeonard { starred: false, .. }) => {
            report.push("band", "E A* E", false, e.to_string());
            Ok(Certification::Failed(report))
        }
        Err(e @ Error::NotLeonard { starred: true, .. }) => {
            report.push("band", "E A* E", true, BAND_DETAIL);
            report.push("band", "E* A E*", false, e.to_string());
            Ok(Certification::Failed(report))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn run_leonard_verify(path: &Path) -> Result<Outcome, String> {
    let (report, code) = match certify_leonard(path)? {
        Certification::Verified(_, report) => (report, 0),
        Certification::Failed(report) => (report, 1),
    };
    Ok(Outcome {
        text: report_lines(&report),
        json: json!({ "pass": code == 0, "checks": checks_value(&report) }),
        code,
    })
}

fn run_leonard_split(path: &Path) -> Result<Outcome, String> {
    match certify_leonard(path)? {
        Certification::Verified(ls, mut report) => {
            let (split, split_report) = split_with_report(&ls);
            report.merge(split_report);
            let mut lines: Vec<String> = split
                .spanners()
                .iter()
                .enumerate()
                .map(|(i, u)| format!("U_{i} spanned by {}", vector_text(u)))
                .collect();
            lines.push(report_lines(&report));
            let spanners: Vec<Vec<String>> = split.spanners().iter().map(vector_strings).collect();
            let pass = report.passed();
            Ok(Outcome {
                text: lines.join("\n"),
                json: json!({
                    "pass": pass,
                    "checks": checks_value(&report),
                    "spanners": spanners,
                }),
                code: u8::from(!pass),
            })
        }
        Certification::Failed(report) => Ok(Outcome {
            text: report_lines(&report),
            json: json!({ "pass": false, "checks": checks_value(&report) }),
            code: 1,
        }),
    }
}

fn run_leonard_borders(path: &Path) -> Result<Outcome, String> {
    match certify_leonard(path)? {
        Certification::Verified(ls, mut report) => {
            report.merge(border_correspondence(&ls));
            let pass = report.passed();
            Ok(Outcome {
                text: report_lines(&report),
                json: json!({ "pass": pass, "checks": checks_value(&report) }),
                code: u8::from(!pass),
            })
        }
        Certification::Failed(report) => Ok(Outcome {
            text: report_lines(&report),
            json: json!({ "pass": false, "checks": checks_value(&report) }),
            code: 1,
        }),
    }
}

fn run_qracah(path: &Path, field_text: &str) -> Result<Outcome, String> {
    let field = parse_field(field_text)?;
    let text = read_file(path)?;
    let file: QRacahFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {} as a parameter file: {e}", path.display()))?;
    guard_diameter(file.d)?;
    let params = file.to_params(field).map_err(err_string)?;
    let theta = params.eigenvalues();
    let mut lines = vec![format!("eigenvalues over {field}: {}", join_scalars(theta))];
    let mut rows = Vec::new();
    let mut all_match = true;
    if params.d() >= 2 {
        for location in locations(params.d() - 2) {
            let value = params.value(location).map_err(err_string)?;
            let reference = closed_form_value(theta, location).map_err(err_string)?;
            let matches = value == reference;
            all_match &= matches;
            lines.push(format!(
                "{location}: value = {value}, closed form = {reference}, match = {}",
                if matches { "yes" } else { "no" }
            ));
            rows.push(json!({
                "loc": [location.r, location.s, location.t],
                "value": value.to_string(),
                "closed_form": reference.to_string(),
                "match": matches,
            }));
        }
    } else {
        lines.push("no interior locations at this diameter".to_string());
    }
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({
            "d": params.d(),
            "field": FieldSpecJson::from_field(field),
            "theta": theta.iter().map(Scalar::to_string).collect::<Vec<_>>(),
            "values": rows,
            "pass": all_match,
        }),
        code: u8::from(!all_match),
    })
}

fn run_render(input: Option<&Path>, diameter: Option<usize>) -> Result<Outcome, String> {
    let (d, cells): (usize, Vec<String>) = match (input, diameter) {
        (Some(_), Some(_)) => {
            return Err("give either an input file or --diameter, not both".to_string())
        }
        (None, None) => return Err("render needs an input file or --diameter".to_string()),
        (None, Some(d)) => {
            guard_diameter(d)?;
            let cells = locations(d)
                .into_iter()
                .map(|loc| {
                    if d <= 9 {
                        format!("{}{}{}", loc.r, loc.s, loc.t)
                    } else {
                        loc.to_string()
                    }
                })
                .collect();
            (d, cells)
        }
        (Some(path), None) => {
            let array = load_array(path)?;
            let cells = array.iter().map(|(_, v)| vector_text(v)).collect();
            (array.d(), cells)
        }
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut index = 0;
    for row_len in 1..=d + 1 {
        rows.push(cells[index..index + row_len].to_vec());
        index += row_len;
    }
    let joined: Vec<String> = rows.iter().map(|row| row.join("   ")).collect();
    let width = joined
        .iter()
        .map(|row| row.chars().count())
        .max()
        .unwrap_or(0);
    let text = joined
        .iter()
        .map(|row| {
            let pad = (width - row.chars().count()) / 2;
            format!("{}{row}", " ".repeat(pad))
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        text,
        json: json!({ "d": d, "rows": rows }),
        code: 0,
    })
}
