//! The `coreep` command line: argument parsing, command dispatch and output.
//!
//! [`run`] never touches the process; it returns the exit code and both
//! output streams so tests can drive it in-process.

pub mod matfile;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use coreep::gen::{self, GenSpec, Polarity};
use coreep::{
    canonical_form, core_ep_decompose, core_form, core_nilpotent_decompose, index_analysis, InverseKind, Matrix,
    Relation, Tolerance,
};
use serde_json::json;

use matfile::{emit_matrix, parse_matrix, ParseError};
use report::{document, Item, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "coreep",
    version,
    about = "Core-EP decomposition, generalized inverses and matrix orders"
)]
pub struct Cli {
    /// Relative tolerance.
    #[arg(long, global = true, value_name = "RTOL", default_value_t = 1e-10)]
    tol: f64,
    /// Absolute tolerance.
    #[arg(long, global = true, value_name = "ATOL", default_value_t = 0.0)]
    atol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, rank, index and core rank.
    Info { file: PathBuf },
    /// A generalized inverse with its residual table.
    Inv {
        #[arg(value_enum)]
        kind: InvArg,
        file: PathBuf,
    },
    /// Decomposition parts or canonical blocks.
    Decomp {
        #[arg(value_enum)]
        kind: DecompArg,
        file: PathBuf,
    },
    /// Decide A <= B. Exit 0 if it holds, 1 if not.
    Order {
        #[arg(value_enum)]
        relation: RelArg,
        a: PathBuf,
        b: PathBuf,
    },
    /// Residual audit of every inverse and decomposition. Exit 1 on any failure.
    Verify { file: PathBuf },
    /// Generate a matrix with prescribed structure, or an order pair.
    Gen {
        #[arg(long)]
        n: usize,
        /// Core rank (of B for pairs).
        #[arg(long)]
        rank: usize,
        /// Index (of B for pairs).
        #[arg(long)]
        index: usize,
        #[arg(long)]
        seed: u64,
        /// Emit a pair (A, B) related by this order.
        #[arg(long, value_enum)]
        relation: Option<RelArg>,
        /// Make the pair violate the relation instead.
        #[arg(long, requires = "relation")]
        negative: bool,
        /// Condition number of the nonsingular block.
        #[arg(long, default_value_t = 10.0)]
        conditioning: f64,
        /// Write PREFIX.mat, or PREFIX_A.mat and PREFIX_B.mat, instead of stdout.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InvArg {
    Mp,
    Drazin,
    Group,
    Core,
    Coreep,
}

impl From<InvArg> for InverseKind {
    fn from(k: InvArg) -> Self {
        match k {
            InvArg::Mp => InverseKind::MoorePenrose,
            InvArg::Drazin => InverseKind::Drazin,
            InvArg::Group => InverseKind::Group,
            InvArg::Core => InverseKind::Core,
            InvArg::Coreep => InverseKind::CoreEp,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecompArg {
    Coreep,
    Cn,
    Canonical,
    Coreform,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RelArg {
    Minus,
    Sharp,
    Core,
    Drazin,
    Coreep,
    Cn,
    Coreminus,
}

impl From<RelArg> for Relation {
    fn from(r: RelArg) -> Self {
        match r {
            RelArg::Minus => Relation::Minus,
            RelArg::Sharp => Relation::Sharp,
            RelArg::Core => Relation::Core,
            RelArg::Drazin => Relation::Drazin,
            RelArg::Coreep => Relation::CoreEp,
            RelArg::Cn => Relation::Cn,
            RelArg::Coreminus => Relation::CoreMinus,
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Inv { .. } => "inv",
            Command::Decomp { .. } => "decomp",
            Command::Order { .. } => "order",
            Command::Verify { .. } => "verify",
            Command::Gen { .. } => "gen",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
}

impl From<coreep::Error> for CliError {
    fn from(e: coreep::Error) -> Self {
        CliError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError {
        kind: "Io",
        message: format!("{}: {e}", path.display()),
    }
}

fn parse_error(path: &Path, e: ParseError) -> CliError {
    let kind = match e {
        ParseError::RaggedRows { .. } => "RaggedRows",
        _ => "ParseError",
    };
    CliError {
        kind,
        message: format!("{}: {e}", path.display()),
    }
}

fn load(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_matrix(&text).map_err(|e| parse_error(path, e))
}

/// What a command produced: exit code, report, and for `gen` an optional
/// raw matrix text that replaces the text rendering.
struct Produced {
    code: i32,
    report: Report,
    raw_text: Option<String>,
}

impl Produced {
    fn ok(report: Report) -> Self {
        Produced {
            code: EXIT_OK,
            report,
            raw_text: None,
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let command = cli.command.name();
    let result = Tolerance::new(cli.atol, cli.tol)
        .map_err(CliError::from)
        .and_then(|tol| execute(&cli.command, &tol));
    match (result, cli.format) {
        (Ok(p), Format::Text) => Outcome {
            code: p.code,
            stdout: p.raw_text.unwrap_or_else(|| p.report.to_text()),
            stderr: String::new(),
        },
        (Ok(p), Format::Json) => Outcome {
            code: p.code,
            stdout: json_text(document(command, p.report.to_json())),
            stderr: String::new(),
        },
        (Err(e), format) => {
            let stderr = format!("error: {}: {}\n", e.kind, e.message);
            let stdout = match format {
                Format::Text => String::new(),
                Format::Json => json_text(document(
                    command,
                    json!({ "error": { "kind": e.kind, "message": e.message } }),
                )),
            };
            Outcome {
                code: EXIT_ERROR,
                stdout,
                stderr,
            }
        }
    }
}

fn json_text(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cmd: &Command, tol: &Tolerance) -> Result<Produced, CliError> {
    match cmd {
        Command::Info { file } => info(&load(file)?, tol).map(Produced::ok),
        Command::Inv { kind, file } => inverse(&load(file)?, (*kind).into(), tol).map(Produced::ok),
        Command::Decomp { kind, file } => decomp(&load(file)?, *kind, tol).map(Produced::ok),
        Command::Order { relation, a, b } => order(&load(a)?, &load(b)?, (*relation).into(), tol),
        Command::Verify { file } => verify(&load(file)?, tol),
        Command::Gen {
            n,
            rank,
            index,
            seed,
            relation,
            negative,
            conditioning,
            out,
        } => {
            let spec = GenSpec::new(*n, *rank, *index, *seed).with_conditioning(*conditioning);
            let polarity = if *negative {
                Polarity::Negative
            } else {
                Polarity::Positive
            };
            generate(&spec, relation.map(Relation::from), polarity, out.as_deref())
        }
    }
}

fn info(a: &Matrix, tol: &Tolerance) -> Result<Report, CliError> {
    let mut r = Report::new();
    r.int("rows", a.rows()).int("cols", a.cols());
    r.int("rank", coreep::rank(a, tol));
    if a.is_square() {
        let analysis = index_analysis(a, tol)?;
        r.int("index", analysis.index)
            .int("core_rank", analysis.core_rank())
            .push("power_ranks", Item::Ints(analysis.ranks.clone()));
    }
    r.real("norm_fro", a.norm_fro());
    Ok(r)
}

fn inverse(a: &Matrix, kind: InverseKind, tol: &Tolerance) -> Result<Report, CliError> {
    let res = kind.compute(a, tol)?;
    let mut r = Report::new();
    r.text("inverse", kind.name())
        .text("route", res.route.to_string())
        .int("index", res.index);
    if let Some(c) = res.condition {
        r.real("condition", c);
    }
    r.matrix("value", &res.value)
        .residuals("residuals", &res.residuals)
        .push("warnings", Item::Texts(res.warnings.clone()));
    Ok(r)
}

fn decomp(a: &Matrix, kind: DecompArg, tol: &Tolerance) -> Result<Report, CliError> {
    let mut r = Report::new();
    match kind {
        DecompArg::Coreep => {
            let p = core_ep_decompose(a, tol)?;
            let reference = coreep::svd::svd(a).sigma_max();
            let (r2, r1) = p.a1_ranks(tol, reference);
            r.text("decomposition", "coreep")
                .int("index", p.index)
                .push("a1_ranks", Item::Ints(vec![r1, r2]))
                .matrix("a1", &p.a1)
                .matrix("a2", &p.a2)
                .residuals("residuals", &p.check(a, tol));
        }
        DecompArg::Cn => {
            let p = core_nilpotent_decompose(a, tol)?;
            r.text("decomposition", "cn")
                .int("index", p.index)
                .matrix("core", &p.core)
                .matrix("nil", &p.nil)
                .residuals("residuals", &p.check(a, tol));
        }
        DecompArg::Canonical | DecompArg::Coreform => {
            let (name, f) = match kind {
                DecompArg::Canonical => ("canonical", canonical_form(a, tol)?),
                _ => ("coreform", core_form(a, tol)?),
            };
            r.text("decomposition", name)
                .int("index", f.index)
                .int("core_rank", f.core_rank)
                .matrix("u", &f.u)
                .matrix("t", &f.t)
                .matrix("s", &f.s)
                .matrix("nil", &f.nil)
                .residuals("residuals", &f.check(a, tol));
        }
    }
    Ok(r)
}

fn order(a: &Matrix, b: &Matrix, relation: Relation, tol: &Tolerance) -> Result<Produced, CliError> {
    let v = relation.evaluate(a, b, tol)?;
    let mut r = Report::new();
    r.text("relation", relation.name()).push("holds", Item::Bool(v.holds));
    if let Some((ra, rb, rd)) = v.rank_witness {
        r.push("rank_witness", Item::Ints(vec![ra, rb, rd]));
    }
    r.residuals("residuals", &v.residuals);
    if !v.cross_check.is_empty() {
        r.residuals("cross_check", &v.cross_check);
    }
    r.push("diagnostics", Item::Texts(v.diagnostics.clone()));
    Ok(Produced {
        code: if v.holds { EXIT_OK } else { EXIT_NEGATIVE },
        report: r,
        raw_text: None,
    })
}

fn verify(a: &Matrix, tol: &Tolerance) -> Result<Produced, CliError> {
    let mut r = Report::new();
    let mut failures = 0usize;
    for kind in InverseKind::ALL {
        let mut s = Report::new();
        match kind.compute(a, tol) {
            Ok(res) => {
                s.text("status", "pass")
                    .text("route", res.route.to_string())
                    .residuals("residuals", &res.residuals)
                    .push("warnings", Item::Texts(res.warnings.clone()));
            }
            Err(e @ (coreep::Error::IndexTooLarge { .. } | coreep::Error::NotSquare { .. })) => {
                s.text("status", "inapplicable").text("reason", e.to_string());
            }
            Err(e @ (coreep::Error::ResidualTooLarge { .. } | coreep::Error::RouteDisagreement { .. })) => {
                failures += 1;
                s.text("status", "fail").text("reason", e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        r.push(kind.name(), Item::Section(s));
    }
    if a.is_square() {
        let ep = core_ep_decompose(a, tol)?.check(a, tol);
        let cn = core_nilpotent_decompose(a, tol).map(|p| p.check(a, tol));
        let mut s = Report::new();
        s.residuals("coreep", &ep);
        failures += usize::from(!ep.all_pass());
        match cn {
            Ok(c) => {
                failures += usize::from(!c.all_pass());
                s.residuals("cn", &c);
            }
            Err(e) => {
                failures += 1;
                s.text("cn", format!("fail: {e}"));
            }
        }
        r.push("decompositions", Item::Section(s));
    }
    r.int("failures", failures);
    Ok(Produced {
        code: if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE },
        report: r,
        raw_text: None,
    })
}

fn generate(
    spec: &GenSpec,
    relation: Option<Relation>,
    polarity: Polarity,
    out: Option<&Path>,
) -> Result<Produced, CliError> {
    let header = format!(
        "# n={} rank={} index={} seed={} conditioning={}",
        spec.n, spec.core_rank, spec.nilpotency_index, spec.seed, spec.conditioning
    );
    let mats: Vec<(&str, Matrix)> = match relation {
        None => vec![("A", gen::matrix_with_structure::<f64>(spec)?.matrix)],
        Some(rel) => {
            let (a, b) = gen::order_pair::<f64>(spec, rel, polarity)?;
            vec![("A", a), ("B", b)]
        }
    };
    let describe = |label: &str| match relation {
        None => header.clone(),
        Some(rel) => {
            let sense = match polarity {
                Polarity::Positive => "holds",
                Polarity::Negative => "fails",
            };
            format!("{header}\n# {label} of a pair where A <= B ({}) {sense}", rel.name())
        }
    };

    let mut report = Report::new();
    let mut raw = String::new();
    let mut files = Vec::new();
    for (label, m) in &mats {
        let text = format!("{}\n{}", describe(label), emit_matrix(m));
        if let Some(prefix) = out {
            let path = match relation {
                None => suffixed(prefix, ".mat"),
                Some(_) => suffixed(prefix, &format!("_{label}.mat")),
            };
            fs::write(&path, &text).map_err(|e| io_error(&path, e))?;
            files.push(path.display().to_string());
        } else {
            if !raw.is_empty() {
                raw.push('\n');
            }
            raw.push_str(&text);
        }
        report.matrix(label, m);
    }
    if out.is_some() {
        report.push("files", Item::Texts(files.clone()));
        raw = files.iter().map(|f| format!("wrote {f}\n")).collect();
    }
    Ok(Produced {
        code: EXIT_OK,
        report,
        raw_text: Some(raw),
    })
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}
