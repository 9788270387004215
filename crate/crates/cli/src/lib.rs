//! Command-line surface for `ginbetti`: problem files, rendering, the result
//! cache and the `ginbetti` subcommands.

pub mod cache;
pub mod problem;
pub mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ginbetti::asymptotics::{
    assemble_report, member_seed, member_table, verify_degree_bounds, Member, SeriesOptions, SeriesReport, SystemSpec,
    Transform,
};
use ginbetti::betti::{koszul_betti, BettiTable};
use ginbetti::boij_soderberg::{bs_decompose, Decomposition};
use ginbetti::field::DEFAULT_PRIME;
use ginbetti::gin::{
    gin_of_power, hyperplane_section, GinCertificate, GinOptions, DEFAULT_ENTRY_BOUND, SEED_PROTOCOL_VERSION,
};
use ginbetti::groebner::{buchberger, ideal_power, initial_ideal};
use ginbetti::{CoeffField, Ideal, MonomialIdeal, PrimeField, Rationals, TermOrder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use cache::Cache;
use problem::{parse_problem, ParseError, Problem};
use render::{render_csv, render_json, render_m2, Format, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "ginbetti",
    version,
    about = "Betti tables of powers, initial and generic initial systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Term order for initial ideals and gins.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// `rational` or `fp:<p>`; defaults to fp:32003 for gin work, rational otherwise.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random coordinate changes per gin.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: u32,
    /// Power to work with.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// First power of a series.
    #[arg(long, global = true)]
    pub kmin: Option<u32>,
    /// Last power of a series.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::M2)]
    pub format: Format,
    #[arg(long, global = true, env = "BETTI_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Replace the ideal by its section with the file's hyperplane.
    #[arg(long, global = true)]
    pub section: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for TermOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => TermOrder::GrevLex,
            OrderArg::Lex => TermOrder::Lex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Power,
    Initial,
    Gin,
    /// Gin under lex, whatever `--order` says.
    Lexgin,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = TransformArg::Power)]
    pub transform: TransformArg,
    /// Translation per power for ideals that are not equigenerated.
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb { file: PathBuf },
    /// Initial ideal of I^k.
    Initial { file: PathBuf },
    /// Generators of I^k.
    Power { file: PathBuf },
    /// Generic initial ideal of I^k.
    Gin { file: PathBuf },
    /// Betti table of one member of a system.
    Betti {
        #[command(flatten)]
        system: SystemArgs,
        /// Only compute degrees up to this bound; truncation exits with status 3.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Betti tables for a range of powers with the stabilization verdict.
    Series {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Stabilization verdict only.
    Stabilize {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Closed forms for the entries of a series.
    Fit {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Boij–Söderberg decomposition of one member.
    Bs {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Remove corrupt, stale and leftover entries.
    Gc,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] ginbetti::Error),
    #[error("table truncated at degree {cap}")]
    Truncated { cap: u32 },
    #[error("failed for k = {k}: {message}")]
    Member { k: u32, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ginbetti::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Compute(
                E::InvalidInput(_)
                | E::NotPrime(_)
                | E::Inhomogeneous(_)
                | E::NotRepresentable(..)
                | E::DimensionMismatch { .. }
                | E::NotEquigenerated,
            ) => 2,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        use ginbetti::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Io(_) => "io",
            CliError::Truncated { .. } => "truncated",
            CliError::Member { .. } => "member_failure",
            CliError::Compute(e) => match e {
                E::DimensionMismatch { .. } => "dimension_mismatch",
                E::FieldMismatch(..) => "field_mismatch",
                E::UndefinedInput(_) => "undefined_input",
                E::Inhomogeneous(_) => "inhomogeneous",
                E::NotEquigenerated => "not_equigenerated",
                E::SingularMatrix => "singular_matrix",
                E::NotPrime(_) => "not_prime",
                E::NotRepresentable(..) => "not_representable",
                E::NotBorelFixed => "not_borel_fixed",
                E::UnitIdeal => "unit_ideal",
                E::GenericityFailure(_) => "genericity_failure",
                E::EmptyTable => "empty_table",
                E::Infeasible(_) => "infeasible",
                E::NotDecomposable(_) => "not_decomposable",
                E::InvalidInput(_) => "invalid_input",
            },
        }
    }

    fn to_json(&self) -> String {
        let mut v = json!({
            "schema": SCHEMA_VERSION,
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        });
        if let CliError::Parse { source, .. } = self {
            v["error"]["line"] = json!(source.line);
            v["error"]["column"] = json!(source.col);
        }
        format!("{v}\n")
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status. Standard output is written only after the command
/// finishes.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let format = cli.global.format;
    let mut buf = String::new();
    let result = match cli.global.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut buf)),
            Err(e) => Err(CliError::Io(e.to_string())),
        },
        None => execute(&cli, &mut buf),
    };
    let _ = out.write_all(buf.as_bytes());
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(e) => {
            let text = match format {
                Format::Json => e.to_json(),
                _ => format!("error: {e}\n"),
            };
            let _ = err.write_all(text.as_bytes());
            e.exit_code()
        }
    }
}

/// Everything that determines a computed member besides the ideal itself.
struct Context {
    names: Vec<String>,
    base: Ideal<Rationals>,
    field: CoeffField,
    order: TermOrder,
    gin: GinOptions,
    cache: Option<Cache>,
}

impl Context {
    fn key(&self, kind: &str, transform: Option<Transform>, k: u32) -> Value {
        let uses_gin = matches!(transform, Some(Transform::Gin(_))) || kind == "gin";
        json!({
            "protocol": SEED_PROTOCOL_VERSION,
            "kind": kind,
            "nvars": self.base.nvars(),
            "ideal": self.base.to_string(),
            "transform": transform,
            "order": self.order,
            "k": k,
            "field": self.field.to_string(),
            "seed": uses_gin.then_some(self.gin.seed),
            "trials": uses_gin.then_some(self.gin.trials),
            "entry_bound": uses_gin.then_some(self.gin.entry_bound),
        })
    }

    fn cached<T, F>(&self, key: Value, compute: F) -> CliResult<T>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> CliResult<T>,
    {
        match &self.cache {
            Some(c) => c.get_or_compute(&key, compute),
            None => compute(),
        }
    }
}

/// Runs `$body` with `$i` bound to the base ideal over the selected field.
macro_rules! with_field {
    ($ctx:expr, |$i:ident| $body:expr) => {
        match $ctx.field {
            CoeffField::Rationals => {
                let $i: Ideal<Rationals> = $ctx.base.clone();
                $body
            }
            CoeffField::PrimeField(p) => {
                let $i: Ideal<PrimeField> = $ctx.base.to_prime_field(PrimeField::new(p)?)?;
                $body
            }
        }
    };
}

fn read_problem(path: &Path) -> CliResult<Problem> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    parse_problem(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn transform_of(t: TransformArg, order: TermOrder) -> Transform {
    match t {
        TransformArg::Power => Transform::Power,
        TransformArg::Initial => Transform::Initial(order),
        TransformArg::Gin => Transform::Gin(order),
        TransformArg::Lexgin => Transform::Gin(TermOrder::Lex),
    }
}

fn context(g: &GlobalArgs, file: &Path, gin_work: bool) -> CliResult<Context> {
    let p = read_problem(file)?;
    let field = match &g.field {
        Some(s) => s.parse::<CoeffField>().map_err(|e| CliError::Usage(e.to_string()))?,
        None => p.field.unwrap_or(if gin_work {
            CoeffField::PrimeField(DEFAULT_PRIME)
        } else {
            CoeffField::Rationals
        }),
    };
    let (names, base) = if g.section {
        let h = p
            .hyperplane
            .as_ref()
            .ok_or_else(|| CliError::Usage("--section needs a 'hyperplane:' entry".into()))?;
        let mut names = p.names.clone();
        names.pop();
        (names, hyperplane_section(&p.ideal, h)?)
    } else {
        (p.names.clone(), p.ideal.clone())
    };
    if g.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let cache = match &g.cache_dir {
        Some(dir) => Some(Cache::open(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?),
        None => None,
    };
    Ok(Context {
        names,
        base,
        field,
        order: g.order.into(),
        gin: GinOptions {
            trials: g.trials,
            seed: g.seed,
            entry_bound: DEFAULT_ENTRY_BOUND,
        },
        cache,
    })
}

fn power_arg(g: &GlobalArgs) -> CliResult<u32> {
    match g.k.unwrap_or(1) {
        0 => Err(CliError::Usage("--k must be positive".into())),
        k => Ok(k),
    }
}

fn execute(cli: &Cli, out: &mut String) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Gb { file } => cmd_gb(&context(g, file, false)?, g.format, out),
        Command::Initial { file } => cmd_monomial(&context(g, file, false)?, g, "initial", out),
        Command::Gin { file } => cmd_monomial(&context(g, file, true)?, g, "gin", out),
        Command::Power { file } => cmd_power(&context(g, file, false)?, g, out),
        Command::Betti { system, cap } => {
            let ctx = context(g, &system.file, is_gin(system.transform))?;
            cmd_betti(&ctx, g, system, *cap, out)
        }
        Command::Series { system } | Command::Stabilize { system } | Command::Fit { system } => {
            let ctx = context(g, &system.file, is_gin(system.transform))?;
            let report = series(&ctx, g, system)?;
            let failed = report
                .failures
                .iter()
                .next()
                .map(|(&k, m)| CliError::Member { k, message: m.clone() });
            match &cli.command {
                Command::Series { .. } => render_series(&ctx, &report, g.format, out),
                Command::Stabilize { .. } => render_stabilize(&report, g.format, out),
                _ => render_fit(&report, g.format, out),
            }
            failed.map_or(Ok(()), Err)
        }
        Command::Bs { system } => {
            let ctx = context(g, &system.file, is_gin(system.transform))?;
            cmd_bs(&ctx, g, system, out)
        }
        Command::Cache {
            action: CacheAction::Gc,
        } => {
            let dir = g
                .cache_dir
                .as_ref()
                .ok_or_else(|| CliError::Usage("cache gc needs --cache-dir or BETTI_CACHE_DIR".into()))?;
            let cache = Cache::open(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let stats = cache.gc().map_err(|e| CliError::Io(e.to_string()))?;
            match g.format {
                Format::Json => out.push_str(&render_json(
                    "cache gc",
                    &json!({"kept": stats.kept, "removed": stats.removed}),
                )),
                Format::Csv => {
                    let _ = writeln!(out, "kept,removed\n{},{}", stats.kept, stats.removed);
                }
                Format::M2 => {
                    let _ = writeln!(out, "kept {} entries, removed {}", stats.kept, stats.removed);
                }
            }
            Ok(())
        }
    }
}

fn is_gin(t: TransformArg) -> bool {
    matches!(t, TransformArg::Gin | TransformArg::Lexgin)
}

#[derive(Debug, Serialize, Deserialize)]
struct GeneratorsOutput {
    field: String,
    order: Option<TermOrder>,
    k: Option<u32>,
    variables: Vec<String>,
    generators: Vec<String>,
    certificate: Option<GinCertificate>,
}

fn write_generators(o: &GeneratorsOutput, command: &str, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&render_json(command, o)),
        _ => {
            for gen in &o.generators {
                let _ = writeln!(out, "{gen}");
            }
        }
    }
}

fn cmd_gb(ctx: &Context, format: Format, out: &mut String) -> CliResult<()> {
    let generators = with_field!(ctx, |ideal| {
        buchberger(&ideal, ctx.order)?
            .elements()
            .iter()
            .map(|p| p.format_with(&ctx.names))
            .collect::<Vec<_>>()
    });
    let o = GeneratorsOutput {
        field: ctx.field.to_string(),
        order: Some(ctx.order),
        k: None,
        variables: ctx.names.clone(),
        generators,
        certificate: None,
    };
    write_generators(&o, "gb", format, out);
    Ok(())
}

fn cmd_power(ctx: &Context, g: &GlobalArgs, out: &mut String) -> CliResult<()> {
    let k = power_arg(g)?;
    let generators = with_field!(ctx, |ideal| {
        ideal_power(&ideal, k)?
            .generators()
            .iter()
            .map(|p| p.format_with(&ctx.names))
            .collect::<Vec<_>>()
    });
    let o = GeneratorsOutput {
        field: ctx.field.to_string(),
        order: None,
        k: Some(k),
        variables: ctx.names.clone(),
        generators,
        certificate: None,
    };
    write_generators(&o, "power", g.format, out);
    Ok(())
}

/// `initial` and `gin`: a monomial ideal built from `I^k`.
fn cmd_monomial(ctx: &Context, g: &GlobalArgs, kind: &str, out: &mut String) -> CliResult<()> {
    let k = power_arg(g)?;
    let (m, cert): (MonomialIdeal, Option<GinCertificate>) = ctx.cached(ctx.key(kind, None, k), || {
        with_field!(ctx, |ideal| {
            if kind == "gin" {
                let opts = GinOptions {
                    seed: member_seed(ctx.gin.seed, k),
                    ..ctx.gin
                };
                let (m, cert) = gin_of_power(&ideal, k, ctx.order, opts)?;
                Ok((m, Some(cert)))
            } else {
                Ok((initial_ideal(&ideal_power(&ideal, k)?, ctx.order)?, None))
            }
        })
    })?;
    let o = GeneratorsOutput {
        field: ctx.field.to_string(),
        order: Some(ctx.order),
        k: Some(k),
        variables: ctx.names.clone(),
        generators: m.generators().iter().map(|g| g.format_with(&ctx.names)).collect(),
        certificate: cert,
    };
    write_generators(&o, kind, g.format, out);
    if let Some(c) = cert {
        if g.format != Format::Json {
            let _ = writeln!(
                out,
                "# trials = {}, agree = {}, borel fixed = {}, entry bound = {}",
                c.trials, c.all_trials_agree, c.borel_fixed, c.entry_bound
            );
        }
        if !c.certified() {
            return Err(ginbetti::Error::GenericityFailure(format!("gin of power {k} is not certified")).into());
        }
    }
    Ok(())
}

fn member(ctx: &Context, transform: Transform, k: u32) -> CliResult<Member> {
    ctx.cached(ctx.key("member", Some(transform), k), || {
        Ok(with_field!(ctx, |ideal| member_table(&ideal, transform, k, ctx.gin)?))
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct BettiOutput {
    field: String,
    transform: Transform,
    k: u32,
    cap: Option<u32>,
    truncated: bool,
    table: BettiTable,
    certificate: Option<GinCertificate>,
}

fn cmd_betti(ctx: &Context, g: &GlobalArgs, system: &SystemArgs, cap: Option<u32>, out: &mut String) -> CliResult<()> {
    let k = power_arg(g)?;
    let transform = transform_of(system.transform, ctx.order);
    let (table, certificate, truncated) = match (cap, transform) {
        (Some(cap), Transform::Power) => {
            let kb = with_field!(ctx, |ideal| koszul_betti(&ideal_power(&ideal, k)?, cap)?);
            (kb.table, None, kb.truncated)
        }
        (Some(cap), _) => {
            let (t, c) = member(ctx, transform, k)?;
            let kept = BettiTable::from_entries(t.entries().filter(|&((_, j), _)| j <= cap));
            let truncated = t.max_internal_degree().is_some_and(|d| d > cap);
            (kept, c, truncated)
        }
        (None, _) => {
            let (t, c) = member(ctx, transform, k)?;
            (t, c, false)
        }
    };
    let o = BettiOutput {
        field: ctx.field.to_string(),
        transform,
        k,
        cap,
        truncated,
        table,
        certificate,
    };
    match g.format {
        Format::Json => out.push_str(&render_json("betti", &o)),
        Format::Csv => out.push_str(&render_csv(&o.table)),
        Format::M2 => {
            out.push_str(&render_m2(&o.table));
            out.push('\n');
            for ((i, j), v) in o.table.entries() {
                let _ = writeln!(out, "({i}, {j}) {v}");
            }
        }
    }
    match (truncated, cap) {
        (true, Some(cap)) => Err(CliError::Truncated { cap }),
        _ => Ok(()),
    }
}

fn series(ctx: &Context, g: &GlobalArgs, system: &SystemArgs) -> CliResult<SeriesReport> {
    let k_min = g.kmin.unwrap_or(1);
    let k_max = g.kmax.or(g.k).unwrap_or(6);
    if k_min == 0 || k_min > k_max {
        return Err(CliError::Usage(format!("bad range of powers {k_min}..{k_max}")));
    }
    let transform = transform_of(system.transform, ctx.order);
    let members: Vec<(u32, CliResult<Member>)> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| (k, member(ctx, transform, k)))
        .collect();
    let members = members
        .into_iter()
        .map(|(k, r)| {
            let r = r.map_err(|e| match e {
                CliError::Compute(e) => Ok(e),
                other => Err(other),
            });
            match r {
                Ok(m) => Ok((k, Ok(m))),
                Err(Ok(e)) => Ok((k, Err(e))),
                Err(Err(other)) => Err(other),
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    let spec = SystemSpec {
        base: ctx.base.clone(),
        transform,
        k_min,
        k_max,
        r: system.r,
    };
    let opts = SeriesOptions {
        gin: ctx.gin,
        ..SeriesOptions::default()
    };
    Ok(assemble_report(&spec, members, opts)?)
}

/// JSON body for the series family of commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesOutput {
    pub field: String,
    pub seed: u64,
    pub trials: u32,
    pub report: SeriesReport,
}

fn series_json(ctx: &Context, command: &str, report: &SeriesReport) -> String {
    render_json(
        command,
        &SeriesOutput {
            field: ctx.field.to_string(),
            seed: ctx.gin.seed,
            trials: ctx.gin.trials,
            report: report.clone(),
        },
    )
}

fn verdict(report: &SeriesReport, out: &mut String) {
    let s = &report.stabilization;
    match s.k0 {
        Some(k0) => {
            let _ = writeln!(out, "k0 = {k0}");
        }
        None => {
            let _ = writeln!(out, "k0 = none");
        }
    }
    let _ = writeln!(out, "r = {}, trailing run = {}, window = {}", s.r, s.trailing, s.window);
}

fn render_series(ctx: &Context, report: &SeriesReport, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&series_json(ctx, "series", report)),
        Format::Csv => {
            out.push_str("k,i,j,value\n");
            for (k, t) in &report.tables {
                for ((i, j), v) in t.entries() {
                    let _ = writeln!(out, "{k},{i},{j},{v}");
                }
            }
        }
        Format::M2 => {
            for (k, t) in &report.tables {
                let _ = writeln!(out, "k = {k}");
                out.push_str(&render_m2(t));
                out.push('\n');
            }
            for (k, m) in &report.failures {
                let _ = writeln!(out, "k = {k}: failed: {m}\n");
            }
            verdict(report, out);
        }
    }
}

fn render_stabilize(report: &SeriesReport, format: Format, out: &mut String) {
    let s = &report.stabilization;
    match format {
        Format::Json => out.push_str(&render_json("stabilize", s)),
        Format::Csv => {
            let k0 = s.k0.map(|k| k.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "stabilized,k0,r,window,trailing\n{},{k0},{},{},{}",
                s.stabilized, s.r, s.window, s.trailing
            );
        }
        Format::M2 => verdict(report, out),
    }
}

fn render_fit(report: &SeriesReport, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&render_json("fit", &report.fits)),
        Format::Csv => {
            out.push_str("i,offset,fit,valid_from\n");
            for f in &report.fits {
                let from = f.fit.valid_from.map(|k| k.to_string()).unwrap_or_default();
                let body = f.fit.to_string();
                let body = body.split(" (k >=").next().unwrap_or_default();
                let _ = writeln!(out, "{},{},\"{}\",{from}", f.i, f.offset, body);
            }
        }
        Format::M2 => {
            for f in &report.fits {
                let _ = writeln!(out, "beta[{}][{:+}] = {}", f.i, f.offset, f.fit);
            }
            if let Some(l) = report.spread {
                let holds = if verify_degree_bounds(&report.fits, l) {
                    "holds"
                } else {
                    "fails"
                };
                let _ = writeln!(out, "analytic spread = {l}; degree bound {holds}");
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct BsOutput {
    transform: Transform,
    k: u32,
    table: BettiTable,
    decomposition: Decomposition,
    chain: bool,
}

fn cmd_bs(ctx: &Context, g: &GlobalArgs, system: &SystemArgs, out: &mut String) -> CliResult<()> {
    let k = power_arg(g)?;
    let transform = transform_of(system.transform, ctx.order);
    let (table, _) = member(ctx, transform, k)?;
    let decomposition = bs_decompose(&table)?;
    let o = BsOutput {
        transform,
        k,
        chain: decomposition.is_chain(),
        table,
        decomposition,
    };
    match g.format {
        Format::Json => out.push_str(&render_json("bs", &o)),
        Format::Csv => {
            out.push_str("weight,degrees\n");
            for p in &o.decomposition.parts {
                let _ = writeln!(out, "{},\"{}\"", p.weight, p.degrees);
            }
        }
        Format::M2 => {
            let _ = writeln!(out, "{}", o.decomposition);
            let _ = writeln!(out, "chain: {}", if o.chain { "yes" } else { "no" });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["ginbetti"];
        argv.extend_from_slice(args);
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn problem_file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["betti", "--order", "weird", "x"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
        let (code, _, err) = run(&["gb", "/nonexistent/problem.txt"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn gb_of_complete_intersection() {
        let f = problem_file("ring: x, y\nideal: x^2, y^3\n");
        let (code, out, _) = run(&["gb", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "x^2\ny^3\n");
    }

    #[test]
    fn error_kinds() {
        let e = CliError::Compute(ginbetti::Error::GenericityFailure("x".into()));
        assert_eq!((e.exit_code(), e.kind()), (3, "genericity_failure"));
        assert_eq!(CliError::Truncated { cap: 4 }.exit_code(), 3);
        assert_eq!(CliError::Compute(ginbetti::Error::NotEquigenerated).exit_code(), 2);
        let v: Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["error"]["kind"], "genericity_failure");
    }
}
