//! The `digitop` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::adjacency::{AdjacencyPair, AdjacencySpec, PointSet, Region};
use crate::complex::{build_complex, euler_characteristic, reduce_complex, skeleton_components, to_json, to_off};
use crate::error::{Error, Result};
use crate::io::{parse_points, write_points};
use crate::jordan::{jordan_check, GeneratorSpec};
use crate::manifold::{check_manifold_with_margin, is_good_pair, is_simple_point, DoublePointWitness, Ternary};
use crate::pseudomanifold::is_pseudomanifold;
use crate::separation::{has_separation_property, SeparationWitness};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Digital manifolds and the discrete Jordan-Brouwer theorem on Z^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the four manifold properties of a point set.
    VerifyManifold(Opts),
    /// Check the separation property of a point set.
    CheckSeparation(Opts),
    /// Build K(M) and its reduction K'(M).
    Build(Opts),
    /// Check that K'(M) is an (n-1)-pseudomanifold.
    CheckPseudomanifold(Opts),
    /// Euler characteristics of K(M) and K'(M).
    Euler(Opts),
    /// Two complement components, common boundary, no simple points.
    Jordan(Opts),
    /// Decide whether (alpha, beta) is a good pair.
    GoodPair(Opts),
    /// Write an example point set.
    Generate(Opts),
    /// List the simple points of a point set.
    SimplePoints(Opts),
}

impl Command {
    fn parts(self) -> (&'static str, Opts) {
        match self {
            Command::VerifyManifold(o) => ("verify-manifold", o),
            Command::CheckSeparation(o) => ("check-separation", o),
            Command::Build(o) => ("build", o),
            Command::CheckPseudomanifold(o) => ("check-pseudomanifold", o),
            Command::Euler(o) => ("euler", o),
            Command::Jordan(o) => ("jordan", o),
            Command::GoodPair(o) => ("good-pair", o),
            Command::Generate(o) => ("generate", o),
            Command::SimplePoints(o) => ("simple-points", o),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Point-set file.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Foreground adjacency: axis, full or custom:PATH.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Background adjacency: axis, full or custom:PATH.
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub margin: i32,
    /// Bound for N-equivalence moves.
    #[arg(long = "N", default_value_t = 2)]
    pub big_n: usize,
    /// Expanded states per cycle in the contraction search.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Re-run the configuration stored in a JSON report and compare.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Generator shape.
    #[arg(long, value_enum)]
    pub kind: Option<Shape>,
    /// Generator side lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub size: Vec<i32>,
    /// Generator radius.
    #[arg(long)]
    pub radius: Option<i32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    RectBoundary,
    BoxSurface,
    SphereShell,
}

/// Everything needed to repeat a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub points: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub n: Option<usize>,
    pub margin: i32,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub budget: usize,
    pub format: Format,
    pub output: Option<String>,
    pub generator: Option<GeneratorSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Unknown => 3,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub verdict: Outcome,
    pub result: Value,
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let (name, opts) = cli.command.parts();
    match dispatch(name, &opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("DIGITOP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(name: &str, opts: &Opts) -> Result<i32> {
    if let Some(path) = &opts.replay {
        return replay(path);
    }
    let config = resolve(name, opts)?;
    let report = execute(&config)?;
    emit(&config, &report)?;
    Ok(report.verdict.exit_code())
}

fn resolve(name: &str, opts: &Opts) -> Result<RunConfig> {
    if opts.margin < 2 {
        return Err(Error::Precondition(format!("--margin must be at least 2, got {}", opts.margin)));
    }
    if opts.n.is_some_and(|n| n < 2) {
        return Err(Error::Precondition("--n must be at least 2".into()));
    }
    let mut n = opts.n;
    if let Some(p) = &opts.points {
        let (d, _) = load_points(p, opts.n)?;
        n = Some(d);
    }
    let generator = if name == "generate" { Some(generator_spec(opts)?) } else { None };
    if let Some(g) = &generator {
        n = Some(g.dim());
    }
    let spec = |s: &Option<String>, which: &str| -> Result<Option<String>> {
        match s {
            None => Ok(None),
            Some(text) => {
                let n = n.ok_or_else(|| Error::Precondition(format!("--{which} needs --n or --points")))?;
                Ok(Some(resolve_spec(text, n)?.to_text()))
            }
        }
    };
    Ok(RunConfig {
        command: name.to_string(),
        points: opts.points.as_ref().map(|p| p.display().to_string()),
        alpha: spec(&opts.alpha, "alpha")?,
        beta: spec(&opts.beta, "beta")?,
        n,
        margin: opts.margin,
        big_n: opts.big_n,
        budget: opts.budget,
        format: opts.format,
        output: opts.output.as_ref().map(|p| p.display().to_string()),
        generator,
    })
}

fn generator_spec(opts: &Opts) -> Result<GeneratorSpec> {
    let kind = opts.kind.ok_or_else(|| Error::Precondition("generate needs --kind".into()))?;
    let size = |k: usize| -> Result<Vec<i32>> {
        if opts.size.len() == k {
            Ok(opts.size.clone())
        } else {
            Err(Error::Generator(format!("--size needs {k} values, got {}", opts.size.len())))
        }
    };
    Ok(match kind {
        Shape::RectBoundary => {
            let s = size(2)?;
            GeneratorSpec::RectBoundary { w: s[0], h: s[1] }
        }
        Shape::BoxSurface => {
            let s = size(3)?;
            GeneratorSpec::BoxSurface { w: s[0], h: s[1], d: s[2] }
        }
        Shape::SphereShell => GeneratorSpec::SphereShell {
            r: opts.radius.ok_or_else(|| Error::Generator("sphere-shell needs --radius".into()))?,
            n: opts.n.unwrap_or(3),
        },
    })
}

/// `axis`, `full`, or `custom:PATH` naming a file of offsets.
pub fn resolve_spec(text: &str, n: usize) -> Result<AdjacencySpec> {
    match text.strip_prefix("custom:") {
        Some(path) => {
            let body = read(Path::new(path))?;
            if body.trim_start().starts_with("custom:") {
                AdjacencySpec::parse(&body, n)
            } else {
                AdjacencySpec::parse(&format!("custom:{body}"), n)
            }
        }
        None => AdjacencySpec::parse(text, n),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::File { path: path.display().to_string(), source })
}

fn load_points(path: &Path, n: Option<usize>) -> Result<(usize, PointSet)> {
    let text = read(path)?;
    parse_points(&text, n)
}

fn pair_of(config: &RunConfig) -> Result<AdjacencyPair> {
    let n = config.n.ok_or_else(|| Error::Precondition("dimension unknown".into()))?;
    let get = |s: &Option<String>, which: &str| -> Result<AdjacencySpec> {
        let text = s.as_deref().ok_or_else(|| Error::Precondition(format!("--{which} is required")))?;
        AdjacencySpec::parse(text, n)
    };
    AdjacencyPair::new(get(&config.alpha, "alpha")?, get(&config.beta, "beta")?)
}

fn points_of(config: &RunConfig) -> Result<PointSet> {
    let path = config.points.as_deref().ok_or_else(|| Error::Precondition("--points is required".into()))?;
    Ok(load_points(Path::new(path), config.n)?.1)
}

/// Runs a resolved configuration.
pub fn execute(config: &RunConfig) -> Result<Report> {
    let (verdict, result) = match config.command.as_str() {
        "generate" => {
            let spec = config.generator.clone().ok_or_else(|| Error::Precondition("no generator".into()))?;
            let pts = spec.generate()?;
            (Outcome::Holds, json!({ "spec": spec, "count": pts.len(), "points": pts }))
        }
        "good-pair" => {
            let pair = pair_of(config)?;
            let r = is_good_pair(&pair, config.big_n, config.budget)?;
            let verdict = match r.verdict {
                Ternary::Yes => Outcome::Holds,
                Ternary::No => Outcome::Fails,
                Ternary::Unknown => Outcome::Unknown,
            };
            (verdict, json!({ "pair": pair.label(), "report": r }))
        }
        other => {
            let pair = pair_of(config)?;
            let m = points_of(config)?;
            point_command(other, config, &pair, &m)?
        }
    };
    Ok(Report { tool: "digitop".into(), version: VERSION.into(), config: config.clone(), verdict, result })
}

fn point_command(name: &str, config: &RunConfig, pair: &AdjacencyPair, m: &PointSet) -> Result<(Outcome, Value)> {
    let n = pair.n();
    Ok(match name {
        "verify-manifold" => {
            let r = check_manifold_with_margin(m, pair, config.margin)?;
            (Outcome::from_bool(r.certified()), json!({ "pair": pair.label(), "points": m.len(), "report": r }))
        }
        "check-separation" => {
            let r = has_separation_property(m, pair, &Region::around(m, n, config.margin))?;
            (Outcome::from_bool(r.holds), json!({ "pair": pair.label(), "report": r }))
        }
        "build" => {
            let k = build_complex(m, pair);
            let kr = reduce_complex(&k, m, pair);
            let value = json!({
                "f_vector": k.f_vector(),
                "f_vector_reduced": kr.f_vector(),
                "k": to_json(&k),
                "k_reduced": to_json(&kr),
            });
            (Outcome::Holds, value)
        }
        "check-pseudomanifold" => {
            let kr = reduce_complex(&build_complex(m, pair), m, pair);
            if kr.is_empty() {
                eprintln!("warning: K'(M) is empty; the checks hold vacuously");
            }
            let r = is_pseudomanifold(&kr, n - 1);
            (Outcome::from_bool(r.holds()), json!({ "f_vector": kr.f_vector(), "report": r }))
        }
        "euler" => {
            let k = build_complex(m, pair);
            let kr = reduce_complex(&k, m, pair);
            let value = json!({
                "chi": euler_characteristic(&k),
                "chi_reduced": euler_characteristic(&kr),
                "f_vector": k.f_vector(),
                "f_vector_reduced": kr.f_vector(),
                "components": skeleton_components(&k).len(),
                "components_reduced": skeleton_components(&kr).len(),
            });
            (Outcome::Holds, value)
        }
        "jordan" => {
            let r = jordan_check(m, pair, config.margin)?;
            (Outcome::from_bool(r.holds()), json!({ "pair": pair.label(), "report": r }))
        }
        "simple-points" => {
            let region = Region::around(m, n, config.margin);
            let mut simple = Vec::new();
            for p in m {
                if is_simple_point(p, m, pair, &region)? {
                    simple.push(p.clone());
                }
            }
            (Outcome::Holds, json!({ "count": simple.len(), "simple": simple }))
        }
        other => return Err(Error::Precondition(format!("unknown command {other}"))),
    })
}

fn emit(config: &RunConfig, report: &Report) -> Result<()> {
    let text = match config.format {
        Format::Json => render_json(report)?,
        Format::Text => render_text(report),
        Format::Off => {
            if config.command != "build" {
                return Err(Error::Precondition("--format off is only available for build".into()));
            }
            if config.n != Some(3) {
                return Err(Error::Precondition("--format off needs n = 3".into()));
            }
            let m = points_of(config)?;
            let pair = pair_of(config)?;
            let kr = reduce_complex(&build_complex(&m, &pair), &m, &pair);
            let (off, omitted) = to_off(&kr);
            if omitted > 0 {
                eprintln!("warning: {omitted} maximal simplices below dimension 2 omitted from OFF output");
            }
            off
        }
    };
    match &config.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn render_json(report: &Report) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

fn render_text(report: &Report) -> String {
    if report.config.command == "generate" {
        let pts: PointSet = serde_json::from_value(report.result["points"].clone()).unwrap_or_default();
        return write_points(&pts);
    }
    let mut out = format!("{}: {}\n", report.config.command, verdict_word(report.verdict));
    if let Value::Object(map) = &report.result {
        for (key, value) in map {
            if key.starts_with('k') && value.is_object() {
                continue;
            }
            out.push_str(&format!("{key}: {}\n", compact(value)));
        }
    }
    out
}

fn verdict_word(v: Outcome) -> &'static str {
    match v {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Unknown => "unknown",
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() <= 400 {
        s
    } else {
        match v {
            Value::Array(a) => format!("[{} entries]", a.len()),
            Value::Object(o) => {
                let parts: Vec<String> = o.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
                parts.join(", ")
            }
            _ => s,
        }
    }
}

/// Re-runs the configuration of a stored report; exit 0 when verdict and
/// result coincide and every stored witness still replays.
fn replay(path: &Path) -> Result<i32> {
    let stored: Report = serde_json::from_str(&read(path)?)?;
    let fresh = execute(&stored.config)?;
    let same = fresh.verdict == stored.verdict && fresh.result == stored.result;
    let witnesses = witnesses_replay(&stored)?;
    println!(
        "replay {}: verdict {} {}, witnesses {}",
        stored.config.command,
        verdict_word(stored.verdict),
        if same { "reproduced" } else { "differs" },
        if witnesses { "replay" } else { "do not replay" }
    );
    Ok(if same && witnesses { 0 } else { 1 })
}

fn witnesses_replay(report: &Report) -> Result<bool> {
    let config = &report.config;
    match config.command.as_str() {
        "check-separation" | "verify-manifold" => {
            let node = if config.command == "check-separation" {
                report.result["report"]["witness"].clone()
            } else {
                report.result["report"]["separation"]["witness"].clone()
            };
            let node = if config.command == "verify-manifold" && !node.is_null() {
                let mut inner = node.clone();
                if let Value::Object(o) = &mut inner {
                    o.remove("kind");
                }
                inner
            } else {
                node
            };
            if node.is_null() {
                return Ok(true);
            }
            let w: SeparationWitness = serde_json::from_value(node)?;
            let m = points_of(config)?;
            let pair = pair_of(config)?;
            w.replays(&m, &pair, &Region::around(&m, pair.n(), config.margin))
        }
        "good-pair" => {
            let pair = pair_of(config)?;
            let ws: Vec<DoublePointWitness> = serde_json::from_value(report.result["report"]["double_points"].clone())?;
            Ok(ws.iter().all(|w| w.replays(&pair)))
        }
        _ => Ok(true),
    }
}
