//! The `gaq` command line: `verify`, `kernel`, `gb` and `present`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a mathematical check
//! failed, 3 the family spec was rejected, 4 a resource cap was hit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Caps;
use crate::groebner::{buchberger, GroebnerError, Ideal, TermOrder};
use crate::lnd::{kernel_linear, kernel_saturation, Derivation, LndError, SliceData};
use crate::pipeline::{
    build_family, invariant_presentation, run_battery, verify_presentation, Family, FamilySpec, PipelineError,
    ReportDocument,
};
use crate::poly::{identifiers_in, PolyError, Polynomial, Ring, VarSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gaq", version, about = "Exact checks for additive-group quotients of affine space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full verification battery on one family member.
    Verify(VerifyArgs),
    /// Invariants of a derivation read from a file.
    Kernel(KernelArgs),
    /// Reduced Groebner basis of an ideal read from a file.
    Gb(GbArgs),
    /// Generators and relations of the invariant ring of X (family v3).
    Present(PresentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    V3,
    V4,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::V3 => Family::V3,
            FamilyArg::V4 => Family::V4,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Linear,
    Saturation,
}

#[derive(Debug, Args)]
struct CapsArgs {
    /// S-pairs one Groebner computation may process.
    #[arg(long, default_value_t = Caps::default().max_pairs)]
    max_pairs: usize,
    /// Degree bound for Groebner basis elements and S-pair lcms.
    #[arg(long, default_value_t = Caps::default().max_degree)]
    max_degree: u32,
    /// Rounds of the slice-based kernel algorithm.
    #[arg(long, default_value_t = Caps::default().max_rounds)]
    max_rounds: usize,
    /// Degree bound of the linear kernel solve.
    #[arg(long, default_value_t = Caps::default().kernel_degree)]
    kernel_degree: u32,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_pairs: self.max_pairs,
            max_degree: self.max_degree,
            max_rounds: self.max_rounds,
            kernel_degree: self.kernel_degree,
            ..Caps::default()
        }
    }
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// `f` in `s` (v3) or in `a, b, c` (v4).
    #[arg(long)]
    f: String,
    /// Number of trivial summands of W.
    #[arg(long, default_value_t = 0)]
    trivial: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Debug, Args)]
struct KernelArgs {
    /// Lines `x -> polynomial`, optionally preceded by `vars: ...`.
    #[arg(long)]
    derivation: PathBuf,
    /// Degree bound of the linear solve.
    #[arg(long, default_value_t = Caps::default().kernel_degree)]
    max_degree: u32,
    #[arg(long, value_enum, default_value = "linear")]
    method: Method,
    #[arg(long, default_value_t = Caps::default().max_rounds)]
    max_rounds: usize,
    /// Slice variable for the saturation method; found automatically if absent.
    #[arg(long)]
    slice: Option<String>,
    #[arg(long, default_value_t = Caps::default().max_pairs)]
    max_pairs: usize,
}

#[derive(Debug, Args)]
struct GbArgs {
    /// One generator per line, optionally preceded by `vars: ...`.
    #[arg(long)]
    ideal: PathBuf,
    /// grevlex, lex, or elim:K to eliminate the first K variables.
    #[arg(long, default_value = "grevlex")]
    order: String,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Debug, Args)]
struct PresentArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    caps: CapsArgs,
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        let code = match e {
            GroebnerError::ResourceCap(_) => EXIT_CAP,
            GroebnerError::UnitIdeal => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LndError> for Failure {
    fn from(e: LndError) -> Self {
        let code = match &e {
            _ if e.is_cap() => EXIT_CAP,
            LndError::Poly(_) | LndError::DuplicateImage(_) | LndError::NoCopies => EXIT_USAGE,
            LndError::Groebner(g) => return g.clone().into(),
            _ => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = if e.is_rejection() {
            EXIT_REJECTED
        } else if e.is_cap() {
            EXIT_CAP
        } else {
            match &e {
                PipelineError::Poly(_) | PipelineError::UnsupportedFamily(_) => EXIT_USAGE,
                _ => EXIT_CHECK_FAILED,
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// Non-empty lines with `#` comments removed, plus the `vars:` line if any.
fn content_lines(text: &str) -> (Option<Vec<String>>, Vec<String>) {
    let mut vars = None;
    let mut lines = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            vars = Some(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect(),
            );
        } else {
            lines.push(line.to_string());
        }
    }
    (vars, lines)
}

/// Ring from an explicit `vars:` line, or from the identifiers of `texts`
/// in order of first appearance.
fn ring_for(vars: Option<Vec<String>>, texts: &[&str]) -> Result<Ring, Failure> {
    let names = match vars {
        Some(v) => v,
        None => {
            let mut names: Vec<String> = Vec::new();
            for t in texts {
                for id in identifiers_in(t)? {
                    if !names.contains(&id) {
                        names.push(id);
                    }
                }
            }
            names
        }
    };
    Ok(VarSet::new(names)?)
}

/// Parses an ideal file: `#` comments, an optional `vars:` line, then one
/// generator per line.
pub fn parse_ideal_file(text: &str) -> Result<Ideal, String> {
    parse_ideal(text).map_err(|f| f.message)
}

fn parse_ideal(text: &str) -> Result<Ideal, Failure> {
    let (vars, lines) = content_lines(text);
    if lines.is_empty() {
        return Err(Failure::usage("the ideal file lists no generators"));
    }
    let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
    let ring = ring_for(vars, &refs)?;
    Ok(Ideal::parse(&ring, &refs)?)
}

/// Parses a derivation file: `#` comments, an optional `vars:` line, then
/// lines `x -> polynomial`. Unlisted variables map to zero.
pub fn parse_derivation_file(text: &str) -> Result<Derivation, String> {
    parse_derivation(text).map_err(|f| f.message)
}

fn parse_derivation(text: &str) -> Result<Derivation, Failure> {
    let (vars, lines) = content_lines(text);
    let mut pairs: Vec<(String, String)> = Vec::new();
    for line in &lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Failure::usage(format!("expected `x -> polynomial`, got `{line}`")))?;
        pairs.push((lhs.trim().to_string(), rhs.trim().to_string()));
    }
    let mut texts: Vec<&str> = Vec::new();
    for (l, r) in &pairs {
        texts.push(l);
        texts.push(r);
    }
    let ring = ring_for(vars, &texts)?;
    if ring.is_empty() {
        return Err(Failure::usage("the derivation file names no variables"));
    }
    let images = pairs
        .iter()
        .map(|(l, r)| Ok((l.clone(), Polynomial::parse(r, &ring)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Derivation::new(&ring, images)?)
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    Ok(FamilySpec::parse(args.family.into(), &args.f, args.trivial)?)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = family_spec(&args.family)?;
    let report = run_battery(&spec, &args.caps.caps())?;
    let json = ReportDocument::new(&report).to_json();
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match args.format {
        Format::Json => write_out(out, &json)?,
        Format::Text => write_out(out, &format!("{report}\n"))?,
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_kernel(args: &KernelArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let d = parse_derivation(&read(&args.derivation)?)?;
    let caps = Caps {
        max_pairs: args.max_pairs,
        max_rounds: args.max_rounds,
        kernel_degree: args.max_degree,
        ..Caps::default()
    };
    let gens = match args.method {
        Method::Linear => kernel_linear(&d, args.max_degree, &caps)?,
        Method::Saturation => {
            let slice = match &args.slice {
                Some(v) => SliceData::new(&d, v)?,
                None => SliceData::find(&d)?,
            };
            match kernel_saturation(&d, &slice, args.max_rounds, &caps) {
                Ok(k) => {
                    if !k.stabilized {
                        let _ = writeln!(
                            err,
                            "warning: no adjunction rounds run; these are the Dixmier images of the slice {} only",
                            slice.variable
                        );
                    }
                    k.generators
                }
                Err(LndError::RoundCap { rounds, partial }) => {
                    for g in &partial {
                        write_out(out, &format!("{g}\n"))?;
                    }
                    return Err(Failure {
                        code: EXIT_CAP,
                        message: format!("kernel generation did not stabilize within {rounds} rounds"),
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    for g in &gens {
        write_out(out, &format!("{g}\n"))?;
    }
    Ok(EXIT_OK)
}

fn cmd_gb(args: &GbArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let ideal = parse_ideal(&read(&args.ideal)?)?;
    let order: TermOrder = args.order.parse()?;
    if let TermOrder::Block(k) = order {
        if k > ideal.ring().len() {
            return Err(GroebnerError::EliminationRange {
                k,
                n: ideal.ring().len(),
            }
            .into());
        }
    }
    let gb = buchberger(&ideal, order, &args.caps.caps())?;
    for g in gb.basis() {
        write_out(out, &format!("{g}\n"))?;
    }
    Ok(EXIT_OK)
}

#[derive(serde::Serialize)]
struct PresentPayload {
    family: Family,
    f: String,
    generators: Vec<String>,
    lifts: Vec<String>,
    relations: Vec<String>,
    verified: bool,
}

fn cmd_present(args: &PresentArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if matches!(args.family.family, FamilyArg::V4) {
        return Err(Failure::usage("present supports family v3 only"));
    }
    let caps = args.caps.caps();
    let spec = family_spec(&args.family)?;
    let art = build_family(&spec)?;
    let kernel = kernel_linear(&art.w_derivation, caps.kernel_degree, &caps)?;
    let pres = invariant_presentation(&art, &kernel, &caps)?;
    let verified = verify_presentation(&art, &pres, &caps)?;
    match args.format {
        Format::Json => {
            let payload = PresentPayload {
                family: spec.family,
                f: spec.f.to_string(),
                generators: pres.generators.iter().map(|g| g.to_string()).collect(),
                lifts: pres.lifts.iter().map(|g| g.to_string()).collect(),
                relations: pres.relations.iter().map(|g| g.to_string()).collect(),
                verified,
            };
            write_out(out, &ReportDocument::new(payload).to_json())?;
        }
        Format::Text => {
            let mut text = String::from("generators:\n");
            for (k, (g, l)) in pres.generators.iter().zip(&pres.lifts).enumerate() {
                text.push_str(&format!("  {} = {}    (from {})\n", pres.tags.name(k), g, l));
            }
            text.push_str("relations:\n");
            for r in &pres.relations {
                text.push_str(&format!("  {r} = 0\n"));
            }
            text.push_str(if verified { "verified\n" } else { "NOT verified\n" });
            write_out(out, &text)?;
        }
    }
    Ok(if verified { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Kernel(a) => cmd_kernel(a, out, err),
        Command::Gb(a) => cmd_gb(a, out),
        Command::Present(a) => cmd_present(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
