use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use folnerlab::folner::{
    decay_exponent, folner_search, folner_search_windows, isoperimetric_profile, verify_certificate, FolnerOutcome,
    ProfileRow,
};
use folnerlab::fusion::{check_axioms, FusionRing, IrrepSet, Side};
use folnerlab::polalg::json::{element_from_str, matrix_from_str};
use folnerlab::polalg::{AlgebraElement, MatrixOverPol, PolAlgebra};
use folnerlab::reldim::kernel_dim_estimate_sided;
use folnerlab::scalar::{parse_fraction, ScalarMode};
use folnerlab::solvers::{ore_pair, zero_divisor_search, OreOutcome, ZeroDivisorOutcome};
use folnerlab::tower::{haar_report, tower_kernel_dims, QuotientTower};

#[derive(Parser, Debug)]
#[command(name = "folnerlab", version, about = "Følner windows and kernel-dimension estimates over Pol(G)")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search ball windows for |∂ˢʸᵐ F| < ε|F|.
    Folner(FolnerArgs),
    /// Isoperimetric profile of the balls.
    Profile(ProfileArgs),
    /// Bracket for the kernel dimension of a matrix over Pol(G).
    KernelDim(KernelDimArgs),
    /// Look for b ≠ 0 with a·b = 0 (left) or b·a = 0 (right).
    ZeroDivisor(ZeroDivisorArgs),
    /// Find t ≠ 0 and b with a·t = s·b.
    OrePair(OrePairArgs),
    /// Quotient dimensions along a tower of finite quotients.
    Tower(TowerArgs),
    /// Check the fusion-ring axioms on a label set.
    CheckAxioms(CheckAxiomsArgs),
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Ring tag, e.g. su2, group:Z^2, group:heisenberg, finite:S3.
    #[arg(long)]
    ring: String,
    /// Required scalar mode; inputs in another mode are rejected.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

impl From<Mode> for ScalarMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ScalarMode::Exact,
            Mode::Float => ScalarMode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Args, Debug)]
struct FolnerArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Labels of S: comma-separated or a JSON array.
    #[arg(long = "S", alias = "s")]
    s: String,
    /// Exact "p/q".
    #[arg(long)]
    epsilon: String,
    #[arg(long, default_value_t = 64)]
    max_radius: usize,
    /// JSON file with a list of windows (label arrays) to try instead of balls.
    #[arg(long)]
    windows: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long = "S", alias = "s")]
    s: String,
    #[arg(long)]
    max_radius: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// Conjugation-closed ball of the generators with this radius.
    #[arg(long)]
    window: Option<usize>,
    /// Explicit window labels (comma-separated or JSON array).
    #[arg(long, conflicts_with = "window")]
    window_labels: Option<String>,
}

#[derive(Args, Debug)]
struct KernelDimArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Matrix (or single element) in the JSON element schema.
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_enum, default_value = "right")]
    side: SideArg,
    /// Float-mode rank tolerance relative to the largest singular value.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct ZeroDivisorArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    element: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_radius: usize,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
}

#[derive(Args, Debug)]
struct OrePairArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    s: PathBuf,
    #[arg(long, default_value_t = 16)]
    max_radius: usize,
    /// Try every nullspace vector for t ≠ 0 before reporting a zero divisor.
    #[arg(long)]
    prefer_ore: bool,
}

#[derive(Args, Debug)]
struct TowerArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Comma-separated moduli, each dividing the next.
    #[arg(long, value_delimiter = ',', required = true)]
    moduli: Vec<i64>,
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_enum, default_value = "right")]
    side: SideArg,
    /// Also report Haar values of this element along the tower.
    #[arg(long)]
    haar: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckAxiomsArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Explicit labels; defaults to all labels (finite rings) or a ball.
    #[arg(long)]
    labels: Option<String>,
    /// Radius of the generator ball used when no labels are given.
    #[arg(long, default_value_t = 3)]
    radius: usize,
}

enum Report {
    Json(Value),
    Text(String),
}

struct Outcome {
    report: Report,
    code: u8,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome { report: Report::Json(v), code: 0 }
    }

    fn negative(v: Value) -> Self {
        Outcome { report: Report::Json(v), code: 2 }
    }
}

fn ring_of(args: &RingArgs) -> Result<FusionRing> {
    Ok(FusionRing::parse(&args.ring)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn check_algebra(args: &RingArgs, ring: &FusionRing, alg: &PolAlgebra, path: &Path) -> Result<()> {
    if alg.tag() != ring.tag() {
        bail!("{}: algebra {} does not match --ring {}", path.display(), alg.tag(), ring.tag());
    }
    if let Some(m) = args.mode {
        if alg.mode() != ScalarMode::from(m) {
            bail!("{}: mode {} does not match --mode", path.display(), alg.mode());
        }
    }
    Ok(())
}

fn load_element(args: &RingArgs, ring: &FusionRing, path: &Path) -> Result<AlgebraElement> {
    let a = element_from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    check_algebra(args, ring, a.algebra(), path)?;
    Ok(a)
}

fn load_matrix(args: &RingArgs, ring: &FusionRing, path: &Path) -> Result<MatrixOverPol> {
    let t = matrix_from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    check_algebra(args, ring, t.algebra(), path)?;
    Ok(t)
}

fn window_of(ring: &FusionRing, w: &WindowArgs) -> Result<IrrepSet> {
    match (&w.window, &w.window_labels) {
        (_, Some(labels)) => Ok(ring.parse_labels(labels)?),
        (Some(n), None) => Ok(ring.conjugation_closure(&ring.ball(&ring.generators(), *n)?)?),
        (None, None) => bail!("one of --window or --window-labels is required"),
    }
}

fn run_folner(a: &FolnerArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let s = ring.parse_labels(&a.s)?;
    let eps = parse_fraction(&a.epsilon).context("--epsilon must be an exact fraction p/q")?;
    let outcome = match &a.windows {
        Some(path) => {
            let v: Value = serde_json::from_str(&read(path)?)?;
            let Some(items) = v.as_array() else {
                bail!("{}: expected a JSON array of windows", path.display());
            };
            let windows = items
                .iter()
                .map(|w| ring.parse_labels(&w.to_string()))
                .collect::<folnerlab::error::Result<Vec<_>>>()?;
            folner_search_windows(&ring, &s, &eps, &windows)?
        }
        None => folner_search(&ring, &s, &eps, a.max_radius)?,
    };
    Ok(match outcome {
        FolnerOutcome::Certificate(c) => {
            verify_certificate(&ring, &c)?;
            Outcome::ok(c.to_json(&ring))
        }
        FolnerOutcome::Exhausted(r) => Outcome::negative(r.to_json(&ring)),
    })
}

fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("radius,window_weight,boundary_weight,symmetric_boundary_weight,ratio,ratio_decimal\n");
    for r in rows {
        let decimal = r.to_json()["ratio_decimal"].clone();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.radius, r.window_weight, r.boundary_weight, r.symmetric_boundary_weight, r.ratio, decimal
        ));
    }
    out
}

fn run_profile(a: &ProfileArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let s = ring.parse_labels(&a.s)?;
    let rows = isoperimetric_profile(&ring, &s, a.max_radius)?;
    let report = match a.format {
        Format::Csv => Report::Text(profile_csv(&rows)),
        Format::Json => Report::Json(json!({
            "kind": "isoperimetric_profile",
            "ring": ring.tag(),
            "S": ring.labels_to_json(&s),
            "rows": rows.iter().map(ProfileRow::to_json).collect::<Vec<_>>(),
            "decay_exponent": decay_exponent(&rows, 10.min(a.max_radius), a.max_radius),
        })),
    };
    Ok(Outcome { report, code: 0 })
}

fn run_kernel_dim(a: &KernelDimArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let t = load_matrix(&a.ring, &ring, &a.matrix)?;
    let w = window_of(&ring, &a.window)?;
    let est = kernel_dim_estimate_sided(&t, &w, a.side.into(), a.tol)?;
    Ok(Outcome::ok(json!({
        "kind": "kernel_dim_estimate",
        "ring": ring.tag(),
        "estimate": est.to_json(t.algebra()),
    })))
}

fn run_zero_divisor(a: &ZeroDivisorArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let x = load_element(&a.ring, &ring, &a.element)?;
    Ok(match zero_divisor_search(&x, a.side.into(), a.max_radius)? {
        ZeroDivisorOutcome::Certificate(c) => Outcome::ok(c.to_json()),
        ZeroDivisorOutcome::NotFound(r) => Outcome::negative(r.to_json()),
    })
}

fn run_ore_pair(a: &OrePairArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let x = load_element(&a.ring, &ring, &a.a)?;
    let s = load_element(&a.ring, &ring, &a.s)?;
    Ok(match ore_pair(&x, &s, a.max_radius, a.prefer_ore)? {
        OreOutcome::Pair(p) => Outcome::ok(p.to_json()),
        OreOutcome::ZeroDivisor(c) => Outcome::ok(c.to_json()),
        OreOutcome::Exhausted(r) => Outcome::negative(r.to_json()),
    })
}

fn run_tower(a: &TowerArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let t = load_matrix(&a.ring, &ring, &a.matrix)?;
    let w = window_of(&ring, &a.window)?;
    let tower = QuotientTower::new(t.algebra(), &a.moduli)?;
    let report = tower_kernel_dims(&t, &tower, &w, a.side.into())?;
    let mut v = report.to_json(&ring, t.algebra());
    if let Some(path) = &a.haar {
        let h = load_element(&a.ring, &ring, path)?;
        v["haar"] = haar_report(&h, &tower)?.to_json(&h);
    }
    let code = if report.identities_hold() { 0 } else { 2 };
    Ok(Outcome { report: Report::Json(v), code })
}

fn run_check_axioms(a: &CheckAxiomsArgs) -> Result<Outcome> {
    let ring = ring_of(&a.ring)?;
    let labels = match (&a.labels, ring.elements()) {
        (Some(l), _) => ring.parse_labels(l)?,
        (None, Some(all)) => all,
        (None, None) => ring.conjugation_closure(&ring.ball(&ring.generators(), a.radius)?)?,
    };
    let report = check_axioms(&ring, &labels)?;
    let ok = report.ok();
    let mut v = serde_json::to_value(&report)?;
    v["kind"] = json!("axiom_report");
    v["ok"] = json!(ok);
    Ok(if ok { Outcome::ok(v) } else { Outcome::negative(v) })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Folner(a) => run_folner(a),
        Command::Profile(a) => run_profile(a),
        Command::KernelDim(a) => run_kernel_dim(a),
        Command::ZeroDivisor(a) => run_zero_divisor(a),
        Command::OrePair(a) => run_ore_pair(a),
        Command::Tower(a) => run_tower(a),
        Command::CheckAxioms(a) => run_check_axioms(a),
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("FOLNERLAB_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("FOLNERLAB_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            bail!("FOLNERLAB_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn emit(out: Option<&Path>, report: &Report) -> Result<()> {
    let text = match report {
        Report::Json(v) => serde_json::to_string_pretty(v)? + "\n",
        Report::Text(t) => t.clone(),
    };
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| dispatch(&cli)).and_then(|o| {
        emit(cli.out.as_deref(), &o.report)?;
        Ok(o.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
