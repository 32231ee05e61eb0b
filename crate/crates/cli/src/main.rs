use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grseg_core::presets::{preset, QuiverSpec};
use grseg_core::properties::{run_all, VerifyConfig};
use grseg_core::reports::{hasse_dot, measures_csv, segments_json, theorem_json};
use grseg_core::segments::{assemble_segments, verify_main_theorem, SegmentConfig};
use grseg_core::tame::{build_catalog_with, Catalog, CatalogJson};
use grseg_core::{Budgets, Error, GrEngine, Quiver, Rep};

#[derive(Parser)]
#[command(name = "grseg", version, about = "Gabriel-Roiter measures and GR segments of tame quivers over F_p")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the catalog of indecomposables up to length L.
    Catalog(Common),
    /// Print the GR measure, a GR filtration and the GR submodules of a module.
    Measure(MeasureArgs),
    /// Write the measure table, segments, Hasse diagram and bound report.
    Segments(Common),
    /// Run every property suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Args, Clone)]
struct Common {
    /// Shipped quiver: kronecker, a21, a22_sink_source or d4_tilde.
    #[arg(long, conflicts_with = "quiver")]
    preset: Option<String>,
    /// Quiver spec file `{name, vertices, arrows, p, L}`.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Field size, a prime at most 31.
    #[arg(long)]
    p: Option<u32>,
    /// Length bound of the catalog.
    #[arg(long = "L", value_name = "L")]
    bound: Option<usize>,
    /// Gap between the two stability windows.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    delta: u64,
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    budget_subspace: u64,
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    budget_end: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for randomised property suites.
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Restrict written files (or stdout) to one format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    common: Common,
    /// Module as inline JSON `{dims, maps: [{arrow, entries}]}`.
    #[arg(long, conflicts_with_all = ["module_file", "id"])]
    module: Option<String>,
    /// File holding the module JSON.
    #[arg(long, conflicts_with = "id")]
    module_file: Option<PathBuf>,
    /// Catalog id of the module.
    #[arg(long)]
    id: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Verify a saved catalog.json instead of building one.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } | Error::Undecided(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Catalog(c) => cmd_catalog(&c),
        Cmd::Measure(m) => cmd_measure(&m),
        Cmd::Segments(c) => cmd_segments(&c),
        Cmd::Verify(v) => cmd_verify(&v),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("grseg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

impl Common {
    fn budgets(&self) -> Budgets {
        Budgets { subspace: self.budget_subspace, end: self.budget_end }
    }

    fn spec(&self) -> std::result::Result<QuiverSpec, Failure> {
        let mut spec = match (&self.preset, &self.quiver) {
            (Some(name), _) => preset(name)?,
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                QuiverSpec::from_json(&text)?
            }
            (None, None) => return Err(invalid("one of --preset or --quiver is required")),
        };
        if let Some(p) = self.p {
            spec.p = p;
        }
        if let Some(l) = self.bound {
            spec.bound = l;
        }
        spec.field()?;
        if spec.bound < 2 {
            return Err(invalid("L must be at least 2"));
        }
        if self.delta as usize >= spec.bound {
            return Err(invalid(format!("--delta must be below L = {}", spec.bound)));
        }
        Ok(spec)
    }

    fn segment_config(&self) -> SegmentConfig {
        SegmentConfig { delta: self.delta as usize, ..SegmentConfig::default() }
    }

    fn wants(&self, f: Format) -> bool {
        self.format.is_none_or(|g| g == f)
    }
}

fn write(dir: &Path, name: &str, body: &str, written: &mut Vec<String>) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
    fs::write(dir.join(name), body).map_err(|e| invalid(format!("{name}: {e}")))?;
    written.push(name.to_string());
    Ok(())
}

/// Records which files were produced before a budget stop.
fn flag_partial(dir: &Path, stage: &str, f: Failure, written: &[String]) -> Failure {
    if f.code == 3 {
        let body = serde_json::json!({ "complete": false, "stage": stage, "error": f.message, "written": written });
        let _ = fs::create_dir_all(dir);
        let _ = fs::write(dir.join("partial.json"), serde_json::to_string_pretty(&body).unwrap_or_default());
    }
    f
}

fn build(c: &Common, engine: &GrEngine) -> std::result::Result<Catalog, Failure> {
    let spec = c.spec()?;
    Ok(build_catalog_with(spec.quiver()?, spec.field()?, spec.bound, engine)?)
}

fn cmd_catalog(c: &Common) -> Outcome {
    if c.format == Some(Format::Dot) {
        return Err(invalid("catalog is written as csv or json"));
    }
    let engine = GrEngine::new(c.budgets());
    let cat = build(c, &engine).map_err(|f| flag_partial(&c.out, "catalog", f, &[]))?;
    let mut written = Vec::new();
    if c.wants(Format::Json) {
        let body = serde_json::to_string_pretty(&cat.to_json()).expect("catalog serialises");
        write(&c.out, "catalog.json", &body, &mut written)?;
    }
    if c.wants(Format::Csv) {
        write(&c.out, "catalog.csv", &cat.to_csv(), &mut written)?;
    }
    println!(
        "{} entries on {} over F_{} up to length {}; wrote {}",
        cat.len(),
        cat.quiver.name(),
        cat.field.p(),
        cat.bound,
        written.join(", ")
    );
    Ok(0)
}

#[derive(Serialize)]
struct Step {
    length: usize,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct MeasureOutput {
    measure: String,
    filtration: Vec<Step>,
    gr_submodules: Vec<Step>,
}

fn cmd_measure(m: &MeasureArgs) -> Outcome {
    let c = &m.common;
    let engine = GrEngine::new(c.budgets());
    let module = match (&m.module, &m.module_file, m.id) {
        (_, _, Some(id)) => {
            let cat = build(c, &engine)?;
            let e = cat.entries.get(id).ok_or_else(|| invalid(format!("no catalog entry {id}; the catalog has {}", cat.len())))?;
            e.module.clone()
        }
        (inline, file, None) => {
            let text = match (inline, file) {
                (Some(t), _) => t.clone(),
                (None, Some(p)) => fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?,
                (None, None) => return Err(invalid("give --module, --module-file or --id")),
            };
            let spec = c.spec()?;
            parse_module(&text, spec.quiver()?, spec)?
        }
    };
    if module.is_zero() {
        return Err(invalid("the zero module has no GR measure"));
    }
    let result = engine.gr_measure(&module)?;
    let filtration = engine.gr_filtration(&module)?;
    let subs = engine.gr_submodules(&module)?;
    let step = |r: &Rep| Step { length: r.length(), dims: r.dims().to_vec() };
    let out = MeasureOutput {
        measure: result.measure.to_string(),
        filtration: filtration.iter().map(step).collect(),
        gr_submodules: subs.iter().map(step).collect(),
    };
    if c.format == Some(Format::Json) {
        println!("{}", serde_json::to_string_pretty(&out).expect("serialises"));
    } else {
        println!("measure: {}", out.measure);
        println!("filtration:");
        for s in &out.filtration {
            println!("  length {:>3}  dims {:?}", s.length, s.dims);
        }
        println!("gr submodules:");
        for s in &out.gr_submodules {
            println!("  length {:>3}  dims {:?}", s.length, s.dims);
        }
    }
    Ok(0)
}

fn parse_module(text: &str, q: Arc<Quiver>, spec: QuiverSpec) -> std::result::Result<Rep, Failure> {
    let json = serde_json::from_str(text).map_err(|e| invalid(format!("module JSON: {e}")))?;
    Ok(Rep::from_json(q, spec.field()?, &json)?)
}

fn cmd_segments(c: &Common) -> Outcome {
    let engine = GrEngine::new(c.budgets());
    let cat = build(c, &engine).map_err(|f| flag_partial(&c.out, "catalog", f, &[]))?;
    let an = assemble_segments(&cat, c.segment_config()).map_err(|e| flag_partial(&c.out, "segments", e.into(), &[]))?;
    let report = verify_main_theorem(&cat, &an);
    let mut written = Vec::new();
    if c.wants(Format::Csv) {
        write(&c.out, "measures.csv", &measures_csv(&an), &mut written)?;
    }
    if c.wants(Format::Json) {
        write(&c.out, "segments.json", &segments_json(&an), &mut written)?;
        write(&c.out, "theorem_report.json", &theorem_json(&report), &mut written)?;
    }
    if c.wants(Format::Dot) {
        write(&c.out, "hasse.dot", &hasse_dot(&an), &mut written)?;
    }
    for s in &an.segments {
        println!(
            "{:<8} {:<8} {:<28} {}",
            format!("{:?}", s.role),
            format!("{:?}", s.index_type),
            s.anchor,
            s.measures.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" < ")
        );
    }
    for ch in &report.checks {
        let holds = match ch.holds {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "undecided",
        };
        let bound = ch.bound.map_or("?".to_string(), |b| b.to_string());
        println!("{}: {} against {}: {holds}", ch.name, ch.value, bound);
    }
    println!("wrote {}", written.join(", "));
    Ok(0)
}

fn cmd_verify(v: &VerifyArgs) -> Outcome {
    let c = &v.common;
    let engine = GrEngine::new(c.budgets());
    let cat = match &v.catalog {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let json: CatalogJson =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            Catalog::from_json(&json, engine.budgets()).map_err(|e| match e {
                Error::Budget { .. } => Failure::from(e),
                other => invalid(format!("{}: {other}", path.display())),
            })?
        }
        None => build(c, &engine)?,
    };
    if c.delta as usize >= cat.bound {
        return Err(invalid(format!("--delta must be below L = {}", cat.bound)));
    }
    let an = assemble_segments(&cat, c.segment_config())?;
    let cfg = VerifyConfig { seed: c.seed, ..VerifyConfig::default() };
    let report = run_all(&cat, &an, &engine, &cfg)?;
    for s in &report.suites {
        eprintln!("{:<36} {:>8} checked  {}", s.name, s.checked, if s.passed() { "ok" } else { "FAILED" });
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
    Ok(if report.all_pass { 0 } else { 1 })
}
