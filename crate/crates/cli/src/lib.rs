//! `grlab` command-line front end.
//!
//! Exit codes: 0 pass/found, 1 violated/unavoidable, 2 resource or format
//! problem, 3 usage error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use grlab::catalog::{catalog_graph_with, CatalogError, CatalogId, PresetTable};
use grlab::construct::{self, ConstructError, Fixture};
use grlab::detect::{find_mono_copy, find_rainbow_triangle};
use grlab::facts::{audit_facts_with, facts_for};
use grlab::formulas::{gr_value, FormulaError};
use grlab::gallai::{find_gallai_partition, minimize_parts, verify_partition, GallaiError};
use grlab::gcg::{decode_gcg, encode_gcg};
use grlab::graph::ColoredCompleteGraph;
use grlab::pattern::TargetGraph;
use grlab::search::{pin_presets, search, Forbid, PinConfig, SearchConfig, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "grlab", version, about = "Gallai colorings, witnesses and small Ramsey searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a lower-bound witness coloring.
    Construct(ConstructArgs),
    /// Check a .gcg file against forbidden structures.
    Verify(VerifyArgs),
    /// Print a Gallai partition of a .gcg file as JSON.
    Decompose(DecomposeArgs),
    /// Exhaustive search for a constraint-free coloring.
    Search(SearchArgs),
    /// Tabulate closed-form values.
    Table(TableArgs),
    /// Pin the f9/f10/f12/f13 aliases by search and write the preset table.
    Pin(PinArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// f9..f13, f2n:N, k3, or star:N.
    #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
    target: Option<String>,
    #[arg(long, required_unless_present = "fixture")]
    k: Option<usize>,
    /// Regenerate a base fixture by search instead (f9_f10_k8, f12_f13_k9, f2n3_k5, f2n4_k6).
    #[arg(long)]
    fixture: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit the recipe trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug, Clone)]
struct ForbidArgs {
    #[arg(long)]
    forbid_rainbow_k3: bool,
    /// Catalog label; repeatable. Ambiguous aliases expand to every candidate.
    #[arg(long = "forbid-mono", value_name = "PATTERN")]
    forbid_mono: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    forbid: ForbidArgs,
    /// Also decompose and check the partition.
    #[arg(long)]
    decompose: bool,
    /// Also audit the structural facts for each forbidden preset (implies --decompose).
    #[arg(long)]
    audit: bool,
    path: PathBuf,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Use the partition with the fewest parts among the color-pair family.
    #[arg(long)]
    minimize: bool,
    path: PathBuf,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    colors: usize,
    #[command(flatten)]
    forbid: ForbidArgs,
    /// Proof mode: vertex-symmetry pruning on.
    #[arg(long)]
    prove: bool,
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    split_depth: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    k_max: usize,
    /// Cross-check each row against the witness construction (orders up to 5000).
    #[arg(long)]
    check_constructions: bool,
}

#[derive(Args, Debug)]
struct PinArgs {
    #[arg(long, default_value_t = PinConfig::default().budget)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = PinConfig::default().n_max)]
    n_max: usize,
    /// Preset table destination (default: presets.txt in $GRLAB_DATA_DIR or the current directory).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Evidence destination (default: stdout).
    #[arg(long)]
    evidence: Option<PathBuf>,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn resource(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_RESOURCE,
        message: message.into(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        resource(e.to_string())
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Failure {
        match e {
            ConstructError::BadK(_)
            | ConstructError::BadN(_)
            | ConstructError::UnsupportedTarget(_)
            | ConstructError::Catalog(_) => usage(e.to_string()),
            _ => resource(e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Failure {
        usage(e.to_string())
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Failure {
        match e {
            FormulaError::Overflow { .. } => resource(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Decompose(a) => cmd_decompose(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Pin(a) => cmd_pin(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "grlab: {}", f.message);
            f.code
        }
    }
}

fn presets() -> Result<PresetTable, Failure> {
    construct::load_presets().map_err(|e| resource(e.to_string()))
}

/// Resolves pattern labels; an ambiguous alias expands to all candidates.
fn resolve_patterns(labels: &[String], presets: &PresetTable) -> Result<Vec<TargetGraph>, Failure> {
    let mut out = Vec::new();
    for label in labels {
        let id: CatalogId = label.parse()?;
        match catalog_graph_with(&id, presets) {
            Ok(g) => out.push(g),
            Err(CatalogError::AmbiguousAlias { alias, .. }) => {
                for n in presets.candidates(alias) {
                    out.push(n.graph().named(format!("f{alias}={}", n.label())));
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn forbid_from(args: &ForbidArgs, presets: &PresetTable) -> Result<Forbid, Failure> {
    let mono = resolve_patterns(&args.forbid_mono, presets)?;
    if !args.forbid_rainbow_k3 && mono.is_empty() {
        return Err(usage("give --forbid-rainbow-k3 and/or at least one --forbid-mono"));
    }
    Ok(Forbid {
        rainbow_k3: args.forbid_rainbow_k3,
        mono,
    })
}

fn read_graph(path: &Path) -> Result<ColoredCompleteGraph, Failure> {
    let bytes = std::fs::read(path).map_err(|e| resource(format!("{}: {e}", path.display())))?;
    decode_gcg(&bytes).map_err(|e| resource(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| resource(format!("{}: {e}", path.display())))
}

fn cmd_construct(a: ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(name) = &a.fixture {
        let f = Fixture::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| usage(format!("unknown fixture `{name}`")))?;
        let bytes = construct::generate_fixture(f)?;
        match &a.output {
            Some(p) => {
                write_file(p, &bytes)?;
                writeln!(out, "fixture {} n={} written to {}", f.name(), f.order(), p.display())?;
            }
            None => out.write_all(&bytes)?,
        }
        return Ok(EXIT_OK);
    }
    let target: CatalogId = a.target.as_deref().unwrap_or_default().parse()?;
    let k = a.k.unwrap_or_default();
    let recipe = construct::recipe_for(&target, k)?;
    let (g, trace) = recipe.evaluate()?;
    let bytes = encode_gcg(&g);
    match &a.output {
        Some(p) => {
            write_file(p, &bytes)?;
            writeln!(
                out,
                "constructed target={} k={} n={} colors={} file={}",
                target,
                recipe.k,
                g.n(),
                g.colors_used().len(),
                p.display()
            )?;
            if a.trace {
                for t in &trace {
                    writeln!(out, "{t}")?;
                }
            }
        }
        None => {
            out.write_all(&bytes)?;
            if a.trace {
                for t in &trace {
                    writeln!(err, "{t}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let presets = presets()?;
    let mono = resolve_patterns(&a.forbid.forbid_mono, &presets)?;
    let g = read_graph(&a.path)?;
    let mut ok = true;
    writeln!(out, "graph n={} k={} colors_used={}", g.n(), g.k(), g.colors_used().len())?;
    let rainbow = find_rainbow_triangle(&g);
    if a.forbid.forbid_rainbow_k3 {
        match rainbow {
            None => writeln!(out, "check rainbow_k3 pass")?,
            Some((u, v, w)) => {
                ok = false;
                writeln!(
                    out,
                    "check rainbow_k3 fail triangle=({u},{v},{w}) colors=({},{},{})",
                    g.color(u, v),
                    g.color(u, w),
                    g.color(v, w)
                )?;
            }
        }
    }
    for h in &mono {
        let name = h.to_string();
        if h.order() > g.n() {
            writeln!(out, "check mono {name} pass (pattern larger than graph)")?;
            continue;
        }
        match find_mono_copy(&g, h, None).expect("order checked") {
            None => writeln!(out, "check mono {name} pass")?,
            Some(e) => {
                ok = false;
                writeln!(out, "check mono {name} fail color={} image={:?}", e.color, e.image)?;
            }
        }
    }
    if a.decompose || a.audit {
        if let Some((u, v, w)) = rainbow {
            ok = false;
            writeln!(out, "check partition fail rainbow_triangle=({u},{v},{w})")?;
        } else if g.n() < 2 {
            writeln!(out, "check partition skipped n<2")?;
        } else {
            let p = find_gallai_partition(&g).map_err(|e| resource(e.to_string()))?;
            let report = verify_partition(&g, &p);
            let between: Vec<String> = p.between_colors.iter().map(|c| c.to_string()).collect();
            if report.holds() {
                writeln!(
                    out,
                    "check partition pass m={} between=[{}] large_parts={}",
                    p.m(),
                    between.join(","),
                    p.large_parts()
                )?;
            } else {
                ok = false;
                writeln!(out, "check partition fail {report}")?;
            }
            if a.audit && report.holds() {
                for h in &mono {
                    if facts_for(h, &presets).is_none() {
                        writeln!(out, "audit {h} skipped (no facts for this pattern)")?;
                        continue;
                    }
                    let reports = audit_facts_with(&g, &p, h, &presets)
                        .map_err(|e| resource(e.to_string()))?;
                    for r in reports {
                        ok &= r.holds;
                        writeln!(out, "audit {h} {r}")?;
                    }
                }
            }
        }
    }
    writeln!(out, "result {}", if ok { "pass" } else { "fail" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATED })
}

fn cmd_decompose(a: DecomposeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_graph(&a.path)?;
    let p = if a.minimize {
        minimize_parts(&g)
    } else {
        find_gallai_partition(&g)
    };
    match p {
        Ok(p) => {
            writeln!(out, "{}", p.to_json())?;
            Ok(EXIT_OK)
        }
        Err(GallaiError::RainbowTriangle(u, v, w)) => {
            writeln!(out, "rainbow triangle ({u},{v},{w}); not a Gallai coloring")?;
            Ok(EXIT_VIOLATED)
        }
        Err(e) => Err(resource(e.to_string())),
    }
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let presets = presets()?;
    let forbid = forbid_from(&a.forbid, &presets)?;
    let mut config = if a.prove {
        SearchConfig::proof(a.budget)
    } else {
        SearchConfig::witness(a.budget)
    }
    .threads(a.threads);
    if let Some(d) = a.split_depth {
        config.split_depth = d;
    }
    let outcome = search(a.n, a.colors, &forbid, &config).map_err(|e| usage(e.to_string()))?;
    out.write_all(outcome.certificate().as_bytes())?;
    match &outcome.verdict {
        Verdict::Found(g) => {
            if let Some(p) = &a.output {
                write_file(p, &encode_gcg(g))?;
            }
            Ok(EXIT_OK)
        }
        Verdict::Exhausted { .. } => Ok(EXIT_VIOLATED),
        Verdict::Budget { .. } => Ok(EXIT_RESOURCE),
    }
}

const CHECK_ORDER_CAP: u64 = 5000;

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let family: CatalogId = a.family.parse()?;
    if a.k_max == 0 {
        return Err(usage("--k-max must be at least 1"));
    }
    let mut rows = Vec::new();
    for k in 1..=a.k_max {
        let v = gr_value(&family, k)?;
        let check = if a.check_constructions {
            Some(if v.lo() - 1 > CHECK_ORDER_CAP {
                "skipped".to_string()
            } else {
                match construct::recipe_for(&family, k) {
                    Ok(r) => {
                        let g = r.build()?;
                        if g.n() as u64 == v.lo() - 1 {
                            format!("ok n={}", g.n())
                        } else {
                            format!("MISMATCH n={}", g.n())
                        }
                    }
                    Err(ConstructError::UnsupportedTarget(_)) => "none".to_string(),
                    Err(e) => return Err(e.into()),
                }
            })
        } else {
            None
        };
        rows.push((k, v.to_string(), check, v.note));
    }
    let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(5).max(5);
    let mut header = format!("{:>3}  {:>width$}", "k", "value");
    if a.check_constructions {
        header.push_str("  witness");
    }
    writeln!(out, "# family {family}")?;
    writeln!(out, "{header}")?;
    let mut mismatch = false;
    for (k, value, check, note) in rows {
        let mut line = format!("{k:>3}  {value:>width$}");
        if let Some(c) = check {
            mismatch |= c.starts_with("MISMATCH");
            line.push_str("  ");
            line.push_str(&c);
        }
        if let Some(n) = note {
            line.push_str(&format!("  # {n}"));
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(if mismatch { EXIT_VIOLATED } else { EXIT_OK })
}

fn cmd_pin(a: PinArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = PinConfig {
        budget: a.budget,
        threads: a.threads.max(1),
        n_max: a.n_max,
    };
    let report = pin_presets(&config).map_err(|e| usage(e.to_string()))?;
    let dest = a.output.unwrap_or_else(|| {
        construct::data_dir_override()
            .unwrap_or_else(|| PathBuf::from("."))
            .join("presets.txt")
    });
    match &a.evidence {
        Some(p) => write_file(p, report.evidence().as_bytes())?,
        None => out.write_all(report.evidence().as_bytes())?,
    }
    if report.assignments.is_empty() {
        writeln!(out, "no consistent assignment; preset table not written")?;
        return Ok(EXIT_VIOLATED);
    }
    write_file(&dest, report.preset_text().as_bytes())?;
    writeln!(out, "presets written to {}", dest.display())?;
    Ok(EXIT_OK)
}

/// Convenience for tests and embedding: run and capture both streams.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
