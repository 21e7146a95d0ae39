use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lawson_core::bigraded::{LawsonTable, MorphicTable};
use lawson_core::decompose::{
    blow_up, cellular_decompose, product_with_cellular, projective_bundle, CellList,
};
use lawson_core::hilb::{
    generating_function, hilb_lawson, hilb_morphic, ksst_dims, HilbMode, HilbOutput, KsstForm,
    MorphicOutput,
};
use lawson_core::quotient::{graded_sym_power, reynolds_invariants, SymScope};
use lawson_core::verify::{resolve_suites, run_one, OracleReport};
use lawson_core::{builtin_atom, Atom, AtomSpec, Builtin, Error};

use crate::expr::{self, ExprError};
use crate::formats::{parse_document, Document, ParseError};
use crate::render;

pub const ATOM_PATH_VAR: &str = "LAWSON_ATOM_PATH";

#[derive(Parser, Debug)]
#[command(
    name = "lawson",
    version,
    about = "Lawson homology and morphic cohomology tables"
)]
struct Cli {
    /// Atom, projector or action file to load; `-` reads stdin. Repeatable.
    #[arg(long = "file", short = 'f', global = true)]
    files: Vec<String>,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Gf,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print the morphic cohomology table instead.
    #[arg(long)]
    morphic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Numeric,
    Symbolic,
    P0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Inspect atoms.
    #[command(subcommand)]
    Atom(AtomCmd),
    /// Bundle with fiber P^n over an atom.
    Pbundle {
        base: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Blow-up of X along V.
    Blowup {
        x: String,
        v: String,
        #[arg(long, default_value_t = 2)]
        codim: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Variety with a filtration by affine bundles: `pt:0,pt:1,C_g1:1` or `0,1,1,2`.
    Cellular {
        cells: String,
        #[command(flatten)]
        out: Output,
    },
    /// Product of two atoms; one of them must be cellular.
    Product {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        out: Output,
    },
    /// Symmetric power of an atom.
    Sym {
        atom: String,
        #[arg(long)]
        n: u32,
        /// Only the p = 0 row; works for any atom.
        #[arg(long)]
        p0: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Invariant table of a loaded group action.
    Quotient {
        #[arg(long)]
        action: String,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert scheme of points on a surface.
    Hilb {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Numeric)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        morphic: bool,
        /// Highest power of q for `--format gf`; defaults to `--n`.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Rational semi-topological K-theory dimension of a Hilbert scheme.
    Ksst {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        /// Evaluate the formula with the stratum shift inside the index.
        #[arg(long)]
        literal: bool,
    },
    /// Generating function of Hilbert-scheme tables.
    Gf {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        max_n: u32,
    },
    /// Run oracle suites.
    Verify {
        /// Suite name or `all`. Repeatable.
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Realize a motive expression such as `sum(h(P1), twist(h(pt), -1))`.
    Motive {
        expr: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum AtomCmd {
    /// Print the table of an atom.
    Show {
        name: String,
        #[command(flatten)]
        out: Output,
    },
    /// List loaded atoms.
    List,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_KUNNETH: i32 = 3;
pub const EXIT_BOUNDED: i32 = 4;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Engine(#[from] Error),
    #[error("{0}")]
    Expr(ExprError),
    #[error("{0}")]
    Io(String),
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Engine(inner) => CliError::Engine(inner),
            other => CliError::Expr(other),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Engine(Error::KunnethGuard { .. }) => EXIT_KUNNETH,
            CliError::Engine(Error::BoundedEntry { .. }) => EXIT_BOUNDED,
            _ => EXIT_INVALID,
        }
    }
}

struct Registry {
    doc: Document,
}

impl Registry {
    fn resolve(&self, name: &str) -> Option<Atom> {
        if let Some(a) = self.doc.atoms.iter().rev().find(|a| a.name() == name) {
            return Some(a.clone());
        }
        if let Some(b) = Builtin::parse(name) {
            return Some(builtin_atom(b));
        }
        inline_cells(name)
    }

    fn atom(&self, name: &str) -> Result<Atom, CliError> {
        self.resolve(name)
            .ok_or_else(|| CliError::Usage(format!("unknown atom `{name}`")))
    }
}

/// `[0,1,1,2]` names the cellular variety with those cells.
fn inline_cells(name: &str) -> Option<Atom> {
    let inner = name.strip_prefix('[')?.strip_suffix(']')?;
    let cells: Vec<u32> = inner
        .split(',')
        .map(|s| s.trim().parse().ok())
        .collect::<Option<_>>()?;
    let dim = *cells.iter().max()?;
    Atom::from_spec(AtomSpec {
        name: name.to_string(),
        dim,
        smooth: true,
        cellular: true,
        cells: Some(cells),
        ..Default::default()
    })
    .ok()
}

fn files_in(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "atom"))
        .collect();
    out.sort();
    Ok(out)
}

fn load(files: &[String], env_path: Option<&str>) -> Result<Registry, CliError> {
    let mut sources: Vec<(String, String)> = Vec::new();
    for entry in env_path.unwrap_or("").split(':').filter(|s| !s.is_empty()) {
        for f in files_in(Path::new(entry))? {
            let text = std::fs::read_to_string(&f)
                .map_err(|e| CliError::Io(format!("{}: {e}", f.display())))?;
            sources.push((f.display().to_string(), text));
        }
    }
    for f in files {
        let text = if f == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(f).map_err(|e| CliError::Io(format!("{f}: {e}")))?
        };
        sources.push((
            if f == "-" {
                "<stdin>".to_string()
            } else {
                f.clone()
            },
            text,
        ));
    }
    let mut reg = Registry {
        doc: Document::default(),
    };
    for (name, text) in sources {
        let doc = parse_document(&name, &text, &|n| reg.resolve(n))?;
        reg.doc.atoms.extend(doc.atoms);
        reg.doc.projectors.extend(doc.projectors);
        reg.doc.actions.extend(doc.actions);
    }
    Ok(reg)
}

fn emit(title: &str, t: &LawsonTable, out: Output) -> Result<String, CliError> {
    if out.morphic {
        return Ok(emit_morphic(title, &t.dual_relabel()?, out.format));
    }
    match out.format {
        Format::Table => Ok(render::lawson_grid(title, t)),
        Format::Csv => Ok(render::lawson_csv(t)),
        Format::Gf => Err(CliError::Usage(
            "--format gf is only available for hilb".to_string(),
        )),
    }
}

fn emit_morphic(title: &str, t: &MorphicTable, format: Format) -> String {
    match format {
        Format::Csv => render::morphic_csv(t),
        _ => render::morphic_grid(title, t),
    }
}

fn parse_cell_list(reg: &Registry, spec: &str) -> Result<CellList, CliError> {
    let cells = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (base, m) = match item.rsplit_once(':') {
                Some((b, m)) => (reg.atom(b)?, m),
                None => (builtin_atom(Builtin::Point), item),
            };
            let m: u32 = m
                .parse()
                .map_err(|_| CliError::Usage(format!("`{m}` is not a cell dimension")))?;
            Ok((base, m))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(CellList::new(cells)?)
}

fn product(a: &Atom, b: &Atom) -> Result<LawsonTable, CliError> {
    if b.is_cellular() {
        return Ok(product_with_cellular(a.table(), b)?);
    }
    if a.is_cellular() {
        return Ok(product_with_cellular(b.table(), a)?);
    }
    Err(Error::KunnethGuard {
        detail: format!(
            "neither `{}` nor `{}` is cellular, and products of non-cellular \
             varieties have no general table formula; supply the product as a user atom",
            a.name(),
            b.name()
        ),
    }
    .into())
}

fn verify(suites: &[String], format: ReportFormat) -> Result<(i32, String), CliError> {
    let names = resolve_suites(suites)?;
    let runs: Vec<Vec<OracleReport>> = names
        .par_iter()
        .map(|s| run_one(s))
        .collect::<Result<_, _>>()?;
    let reports: Vec<OracleReport> = runs.into_iter().flatten().collect();
    let text = match format {
        ReportFormat::Text => render::reports_text(&reports),
        ReportFormat::Csv => render::reports_csv(&reports),
    };
    let code = if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok((code, text))
}

fn execute(cli: &Cli, env_path: Option<&str>) -> Result<(i32, String), CliError> {
    let reg = load(&cli.files, env_path)?;
    let ok = |s: String| Ok((EXIT_OK, s));
    match &cli.cmd {
        Cmd::Atom(AtomCmd::Show { name, out }) => {
            let a = reg.atom(name)?;
            ok(emit(a.name(), a.table(), *out)?)
        }
        Cmd::Atom(AtomCmd::List) => {
            let mut s = String::from("builtin: pt, P<n>, C_g<g>, [c1,c2,...]\n");
            for a in &reg.doc.atoms {
                s.push_str(&format!(
                    "{} dim={} cellular={} smooth={} quotient={} exact={}\n",
                    a.name(),
                    a.dim(),
                    a.is_cellular(),
                    a.is_smooth(),
                    a.is_quotient(),
                    a.table().is_exact()
                ));
            }
            for p in &reg.doc.projectors {
                s.push_str(&format!("projector {} on {}\n", p.name, p.atom.name()));
            }
            for a in &reg.doc.actions {
                s.push_str(&format!(
                    "action {} on {} order={}\n",
                    a.name,
                    a.atom.name(),
                    a.action.order()
                ));
            }
            ok(s)
        }
        Cmd::Pbundle { base, n, out } => {
            let b = reg.atom(base)?;
            let t = projective_bundle(b.table(), *n);
            ok(emit(&format!("P{n}-bundle over {}", b.name()), &t, *out)?)
        }
        Cmd::Blowup { x, v, codim, out } => {
            let (xa, va) = (reg.atom(x)?, reg.atom(v)?);
            let t = blow_up(xa.table(), va.table(), *codim)?;
            ok(emit(
                &format!("Bl({}, {})", xa.name(), va.name()),
                &t,
                *out,
            )?)
        }
        Cmd::Cellular { cells, out } => {
            let list = parse_cell_list(&reg, cells.trim_start_matches('[').trim_end_matches(']'))?;
            let t = cellular_decompose(&list);
            ok(emit(&format!("cellular({cells})"), &t, *out)?)
        }
        Cmd::Product { a, b, out } => {
            let (aa, ba) = (reg.atom(a)?, reg.atom(b)?);
            let t = product(&aa, &ba)?;
            ok(emit(&format!("{} x {}", aa.name(), ba.name()), &t, *out)?)
        }
        Cmd::Sym { atom, n, p0, out } => {
            let a = reg.atom(atom)?;
            let scope = if *p0 {
                SymScope::P0Row
            } else {
                if !a.is_cellular() {
                    return Err(Error::KunnethGuard {
                        detail: format!(
                            "`{}` is not cellular; use --p0 for the homology row",
                            a.name()
                        ),
                    }
                    .into());
                }
                SymScope::Cellular
            };
            let t = graded_sym_power(a.table(), *n, scope)?;
            ok(emit(&format!("Sym^{n} {}", a.name()), &t, *out)?)
        }
        Cmd::Quotient { action, out } => {
            let named = reg
                .doc
                .actions
                .iter()
                .rev()
                .find(|a| &a.name == action)
                .ok_or_else(|| CliError::Usage(format!("unknown action `{action}`")))?;
            let q = reynolds_invariants(named.atom.table(), &named.action)?;
            q.verify_identities()?;
            let mut s = emit(
                &format!("{} / {}", named.atom.name(), named.name),
                &q.invariant_table,
                *out,
            )?;
            if out.format == Format::Table {
                s.push_str(&format!(
                    "group order {}, image size {}; pi_* pi^* = |G| id and pi^* pi_* = sum g hold\n",
                    named.action.order(),
                    named.action.image().len()
                ));
            }
            ok(s)
        }
        Cmd::Hilb {
            surface,
            n,
            mode,
            format,
            morphic,
            max_n,
        } => {
            let s = reg.atom(surface)?;
            let title = format!("{}^[{n}]", s.name());
            if *format == Format::Gf {
                return ok(format!(
                    "{}\n",
                    generating_function(&s, max_n.unwrap_or(*n))?
                ));
            }
            let mode = match mode {
                Mode::Numeric => HilbMode::Numeric,
                Mode::Symbolic => HilbMode::Symbolic,
                Mode::P0 => HilbMode::P0Row,
            };
            let out = Output {
                format: *format,
                morphic: false,
            };
            if *morphic {
                return match hilb_morphic(&s, *n, mode)? {
                    MorphicOutput::Table(t) => ok(emit_morphic(&title, &t, *format)),
                    MorphicOutput::Symbolic(d) => ok(d.to_string()),
                };
            }
            match hilb_lawson(&s, *n, mode)? {
                HilbOutput::Table(t) => ok(emit(&title, &t, out)?),
                HilbOutput::Symbolic(d) => ok(d.to_string()),
            }
        }
        Cmd::Ksst {
            surface,
            n,
            p,
            literal,
        } => {
            let s = reg.atom(surface)?;
            let reindexed = ksst_dims(&s, *n, *p, KsstForm::Reindexed)?;
            if !*literal {
                return ok(format!("ksst({}, n={n}, p={p}) = {reindexed}\n", s.name()));
            }
            let lit = ksst_dims(&s, *n, *p, KsstForm::Literal)?;
            let diff = lit.value() as i128 - reindexed.value() as i128;
            ok(format!(
                "ksst({}, n={n}, p={p}) = {lit} (literal)\nreindexed = {reindexed}; literal - reindexed = {diff}\n",
                s.name()
            ))
        }
        Cmd::Gf { surface, max_n } => {
            let s = reg.atom(surface)?;
            ok(format!("{}\n", generating_function(&s, *max_n)?))
        }
        Cmd::Verify { suites, format } => verify(suites, *format),
        Cmd::Motive { expr: src, out } => {
            let e = expr::parse(src)?;
            let m = expr::evaluate(&e, &|n| reg.resolve(n), &reg.doc.projectors)?;
            if out.morphic {
                return ok(emit_morphic(src, &m.realize_morphic()?, out.format));
            }
            ok(emit(src, &m.realize_lawson()?, *out)?)
        }
    }
}

/// Run one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_path = std::env::var(ATOM_PATH_VAR).ok();
    run_with_env(args, env_path.as_deref())
}

/// As [`run`], with the atom search path given explicitly.
pub fn run_with_env<I, T>(args: I, env_path: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| execute(&cli, env_path)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
