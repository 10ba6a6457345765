//! Command-line front end. Every command prints one report (JSON by
//! default) and exits 0 on success, 1 when the mathematics fails (a Jacobi
//! defect, a non-cocycle, a non-separating state, an incomplete closure) and
//! 2 on usage or parse errors.

use std::collections::{BTreeMap, HashSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactmat::parse_rational;
use crate::ext::{
    are_equivalent, build_extension, h1_h2_correspondence_check, is_split, CentralExtensionTable, ExtError,
};
use crate::grpcoh::{
    enumerate_cochains, enumerate_cocycles, AbelianCoefficients, Cochain, CohomologyGroup, CohomologyOptions,
    FiniteGroup, GroupError, GroupHom, GroupJson,
};
use crate::liealg::{
    derived_subalgebra, generated_subalgebra, ideal_closure, is_perfect, LieAlgebra, LieElement, LieError,
    StructureConstants,
};
use crate::liecoh::lie_cohomology;
use crate::modular::{parse_input, ModularError};
use crate::spacetime::{
    boost_generation, boost_matrix, check_complement, coordinate_family, six_wedge_family, wedge_boost,
    wedge_boost_generator, SpacetimeError, Wedge,
};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "TOOLKIT_THREADS";

/// Largest number of cocycles listed individually by `group cocycles`.
const COCYCLE_LISTING_LIMIT: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "modcov", version, about = "Group and Lie algebra cohomology, central extensions, modular theory and wedge geometry")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized checks; required by commands that sample.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Add elapsed wall time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie algebras given by builtin name or structure-constant JSON.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Finite group cohomology and central extensions.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Tomita–Takesaki data of a matrix algebra and a vector state.
    Modular(ModularArgs),
    /// Wedges and boosts in four-dimensional Minkowski space.
    #[command(subcommand)]
    Spacetime(SpacetimeCommand),
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArg {
    /// Builtin name (poincare4, lorentz3, sl2, heisenberg, abelian2, …) or a JSON file.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
pub enum LieCommand {
    /// Check antisymmetry and the Jacobi identity.
    Validate(AlgebraArg),
    /// Whether [g, g] = g.
    Perfect(AlgebraArg),
    /// Dimensions of Z^k, B^k, H^k with real coefficients.
    Cohomology {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: usize,
    },
    /// Subalgebra generated by the elements in a JSON file.
    Generate {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        generators: PathBuf,
    },
    /// Ideal generated by one element.
    Ideal {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        element: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GroupCoeffArgs {
    /// Builtin group (z4, klein4, s3, q8, a4, …) or a JSON table file.
    #[arg(long)]
    pub group: String,
    /// Coefficients such as z2, z2xz3, klein4 or [2,2].
    #[arg(long)]
    pub coeff: String,
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// H^n(P, A) with trivial action.
    H {
        #[command(flatten)]
        spec: GroupCoeffArgs,
        #[arg(long)]
        degree: usize,
        /// Use normalised cochains.
        #[arg(long)]
        normalized: bool,
    },
    /// Enumerate Z^n and B^n exhaustively.
    Cocycles {
        #[command(flatten)]
        spec: GroupCoeffArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Central extensions from 2-cocycles.
    #[command(subcommand)]
    Extension(ExtensionCommand),
    /// H^1(S, A) against H^2(P, A) for E → P with central kernel S.
    Correspondence {
        /// The group E.
        #[arg(long)]
        extension: String,
        /// The quotient P.
        #[arg(long)]
        quotient: String,
        /// Images of the elements of E, comma separated; reduction mod |P| when omitted for cyclic groups.
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        coeff: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCommand {
    /// Multiplication table of A ×_ω P.
    Build {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Whether two cocycles give equivalent extensions.
    Equiv {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// A homomorphic section, if one exists.
    Split {
        #[arg(long)]
        cocycle: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ModularArgs {
    /// JSON with generators, state and optional tolerance, times, kms_samples.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WedgeFamily {
    /// Coordinate wedges and their unit-time translates.
    Six,
    CoordinateOnly,
}

#[derive(Subcommand, Debug)]
pub enum SpacetimeCommand {
    /// Close the boost generators of a wedge family in poincare4.
    BoostGeneration {
        #[arg(long, value_enum, default_value_t = WedgeFamily::Six)]
        wedges: WedgeFamily,
    },
    /// Boost of a wedge (W₁ by default) at parameter t.
    Boost {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long)]
        wedge: Option<PathBuf>,
    },
    /// Causal complement of a wedge (W₁ by default) and its boost identities.
    Complement {
        #[arg(long)]
        wedge: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Spacetime(#[from] SpacetimeError),
}

/// Result payload and whether the mathematics succeeded.
pub struct Outcome {
    pub result: Value,
    pub success: bool,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Result<Self, CliError> {
        Ok(Self {
            result: to_value(result),
            success: true,
        })
    }

    fn with(result: impl Serialize, success: bool) -> Result<Self, CliError> {
        Ok(Self {
            result: to_value(result),
            success,
        })
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    /// sha256 of every file read, keyed by the path as given.
    pub inputs: BTreeMap<String, String>,
    pub success: bool,
    pub result: Value,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Reads input files and remembers their digests.
#[derive(Default)]
struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let shown = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            path: shown.clone(),
            source,
        })?;
        let digest = Sha256::digest(&bytes);
        self.digests.insert(shown.clone(), digest.iter().map(|b| format!("{b:02x}")).collect());
        String::from_utf8(bytes).map_err(|_| CliError::Parse {
            path: shown,
            message: "not UTF-8".into(),
        })
    }

    fn algebra(&mut self, spec: &str) -> Result<Arc<LieAlgebra>, CliError> {
        let path = Path::new(spec);
        if path.is_file() {
            let text = self.read(path)?;
            let sc = StructureConstants::from_json_str(&text).map_err(|e| parse_err(path, e))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return Ok(Arc::new(LieAlgebra::new(name, sc)?));
        }
        Ok(LieAlgebra::builtin(spec)?)
    }

    fn group(&mut self, spec: &str) -> Result<Arc<FiniteGroup>, CliError> {
        let path = Path::new(spec);
        if path.is_file() {
            let text = self.read(path)?;
            let raw: GroupJson = serde_json::from_str(&text).map_err(|e| json_err(path, e))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            return Ok(Arc::new(FiniteGroup::from_json(name, &raw)?));
        }
        Ok(FiniteGroup::builtin(spec)?)
    }

    fn cocycle(&mut self, path: &Path) -> Result<Cochain, CliError> {
        let text = self.read(path)?;
        Cochain::from_json_str(&text).map_err(|e| parse_err(path, e))
    }

    fn wedge(&mut self, path: Option<&PathBuf>) -> Result<Wedge, CliError> {
        match path {
            None => Ok(Wedge::standard()),
            Some(p) => {
                let text = self.read(p)?;
                Wedge::from_json_str(&text).map_err(|e| parse_err(p, e))
            }
        }
    }
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn json_err(path: &Path, e: serde_json::Error) -> CliError {
    parse_err(path, format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses, runs and prints; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version come through here with exit code 0
            if e.exit_code() == 0 {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = match execute(&cli, &mut inputs) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let report = Report {
        command,
        inputs: inputs.digests,
        success: outcome.success,
        result: outcome.result,
        version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render_text(&report),
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return 2;
    }
    if outcome.success {
        0
    } else {
        1
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Lie(c) => cmd_lie(c, inputs),
        Command::Group(c) => cmd_group(c, inputs),
        Command::Modular(a) => cmd_modular(a, cli.seed, inputs),
        Command::Spacetime(c) => cmd_spacetime(c, inputs),
    }
}

fn cmd_lie(c: &LieCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    match c {
        LieCommand::Validate(a) => {
            let path = Path::new(&a.algebra);
            let sc = if path.is_file() {
                let text = inputs.read(path)?;
                StructureConstants::from_json_str(&text).map_err(|e| parse_err(path, e))?
            } else {
                LieAlgebra::builtin(&a.algebra)?.constants().clone()
            };
            let labels = sc.labels().to_vec();
            let name = |i: usize| labels[i].clone();
            let (valid, violation) = match sc.validate() {
                Ok(()) => (true, Value::Null),
                Err(LieError::Antisymmetry { i, j, k }) => (
                    false,
                    json!({"kind": "antisymmetry", "indices": [i, j, k], "labels": [name(i), name(j), name(k)]}),
                ),
                Err(LieError::Jacobi { i, j, k, defect }) => (
                    false,
                    json!({"kind": "jacobi", "triple": [i, j, k], "labels": [name(i), name(j), name(k)], "defect": defect}),
                ),
                Err(e) => return Err(e.into()),
            };
            Outcome::with(
                json!({"algebra": a.algebra, "dim": sc.dim(), "valid": valid, "violation": violation}),
                valid,
            )
        }
        LieCommand::Perfect(a) => {
            let g = inputs.algebra(&a.algebra)?;
            Outcome::ok(json!({
                "algebra": g.name(),
                "dim": g.dim(),
                "derived_dim": derived_subalgebra(&g).dim(),
                "perfect": is_perfect(&g),
            }))
        }
        LieCommand::Cohomology { algebra, degree } => {
            let g = inputs.algebra(&algebra.algebra)?;
            if *degree > g.dim() {
                return Err(CliError::Usage(format!("degree {degree} exceeds dim {}", g.dim())));
            }
            Outcome::ok(lie_cohomology(&g, *degree)?)
        }
        LieCommand::Generate { algebra, generators } => {
            let g = inputs.algebra(&algebra.algebra)?;
            let text = inputs.read(generators)?;
            let raw: Value = serde_json::from_str(&text).map_err(|e| json_err(generators, e))?;
            let Value::Array(items) = raw else {
                return Err(parse_err(generators, "expected a JSON array of elements"));
            };
            let gens = items
                .iter()
                .map(|v| parse_element(&g, v).map_err(|e| parse_err(generators, e)))
                .collect::<Result<Vec<_>, _>>()?;
            let s = generated_subalgebra(&g, &gens)?;
            Outcome::ok(json!({
                "algebra": g.name(),
                "generators": gens.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "dim": s.dim(),
                "algebra_dim": g.dim(),
                "basis": s.basis().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }))
        }
        LieCommand::Ideal { algebra, element } => {
            let g = inputs.algebra(&algebra.algebra)?;
            let text = inputs.read(element)?;
            let raw: Value = serde_json::from_str(&text).map_err(|e| json_err(element, e))?;
            let x = parse_element(&g, &raw).map_err(|e| parse_err(element, e))?;
            let s = ideal_closure(&g, &x)?;
            Outcome::ok(json!({
                "algebra": g.name(),
                "element": x.to_string(),
                "dim": s.dim(),
                "algebra_dim": g.dim(),
                "basis": s.basis().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }))
        }
    }
}

fn parse_coeff(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
        other => Err(format!("expected a number or rational string, got {other}")),
    }
}

/// An element is a basis label or alias ("K1"), an array of coefficients,
/// or an object mapping labels to coefficients.
fn parse_element(g: &Arc<LieAlgebra>, v: &Value) -> Result<LieElement, String> {
    match v {
        Value::String(name) => LieElement::named(g, name).map_err(|e| e.to_string()),
        Value::Array(cs) => {
            let coeffs = cs.iter().map(parse_coeff).collect::<Result<Vec<_>, _>>()?;
            LieElement::new(g, coeffs).map_err(|e| e.to_string())
        }
        Value::Object(map) => {
            let mut x = LieElement::zero(g);
            for (label, c) in map {
                let term = LieElement::named(g, label).map_err(|e| e.to_string())?.scale(&parse_coeff(c)?);
                x = x.add(&term).map_err(|e| e.to_string())?;
            }
            Ok(x)
        }
        other => Err(format!("cannot read an element from {other}")),
    }
}

fn cmd_group(c: &GroupCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    match c {
        GroupCommand::H {
            spec,
            degree,
            normalized,
        } => {
            let g = inputs.group(&spec.group)?;
            let a = AbelianCoefficients::parse(&spec.coeff)?;
            let h = CohomologyGroup::compute(&g, &a, *degree, CohomologyOptions { normalized: *normalized })?;
            let mut v = to_value(h.summary());
            v["trivial"] = json!(h.is_trivial());
            v["normalized"] = json!(normalized);
            Outcome::ok(v)
        }
        GroupCommand::Cocycles { spec, degree } => {
            let g = inputs.group(&spec.group)?;
            let a = AbelianCoefficients::parse(&spec.coeff)?;
            let cocycles = enumerate_cocycles(&g, &a, *degree)?;
            let coboundaries: HashSet<Vec<u64>> = if *degree == 0 {
                HashSet::from([Cochain::zero(&g, &a, 0).encoded()])
            } else {
                enumerate_cochains(&g, &a, degree - 1)?
                    .iter()
                    .map(|f| f.coboundary().map(|d| d.encoded()))
                    .collect::<Result<_, _>>()?
            };
            let total = (a.size() as u128).pow(g.order().pow(*degree as u32) as u32);
            let listed = (cocycles.len() <= COCYCLE_LISTING_LIMIT)
                .then(|| cocycles.iter().map(|c| c.encoded()).collect::<Vec<_>>());
            Outcome::ok(json!({
                "group": g.name(),
                "coefficients": a.to_string(),
                "degree": degree,
                "cochains": total.to_string(),
                "cocycles": cocycles.len(),
                "coboundaries": coboundaries.len(),
                "classes": cocycles.len() / coboundaries.len(),
                "cocycle_values": listed,
            }))
        }
        GroupCommand::Extension(e) => cmd_extension(e, inputs),
        GroupCommand::Correspondence {
            extension,
            quotient,
            map,
            coeff,
        } => {
            let e = inputs.group(extension)?;
            let p = inputs.group(quotient)?;
            let a = AbelianCoefficients::parse(coeff)?;
            let table: Vec<usize> = match map {
                Some(m) => m
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| CliError::Usage(format!("--map must be comma-separated indices, got {m:?}")))?,
                None => {
                    let cyclic = |g: &FiniteGroup| g.name().strip_prefix('z').and_then(|r| r.parse::<usize>().ok());
                    match (cyclic(&e), cyclic(&p)) {
                        (Some(n), Some(m)) if n % m == 0 => (0..n).map(|x| x % m).collect(),
                        _ => {
                            return Err(CliError::Usage(
                                "--map is required unless both groups are cyclic with |P| dividing |E|".into(),
                            ))
                        }
                    }
                }
            };
            let sigma = GroupHom::new(&e, &p, table)?;
            let report = h1_h2_correspondence_check(&sigma, &a)?;
            let ok = report.applicable && report.bijective;
            Outcome::with(report, ok)
        }
    }
}

fn extension_or_failure(omega: &Cochain) -> Result<Result<CentralExtensionTable, Value>, CliError> {
    match build_extension(omega) {
        Ok(e) => Ok(Ok(e)),
        Err(ExtError::NotACocycle(p, q, r)) => Ok(Err(json!({
            "error": "not a 2-cocycle",
            "violating_triple": [p, q, r],
        }))),
        Err(e) => Err(e.into()),
    }
}

fn cmd_extension(c: &ExtensionCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    match c {
        ExtensionCommand::Build { cocycle } => {
            let omega = inputs.cocycle(cocycle)?;
            let ext = match extension_or_failure(&omega)? {
                Ok(e) => e,
                Err(v) => return Outcome::with(v, false),
            };
            let split = is_split(&ext)?;
            let carrier = ext.carrier();
            Outcome::ok(json!({
                "order": carrier.order(),
                "carrier_abelian": carrier.is_abelian(),
                "carrier_element_orders": (0..carrier.order()).map(|g| carrier.element_order(g)).collect::<Vec<_>>(),
                "is_split": split.is_some(),
                "extension": ext.to_json(),
            }))
        }
        ExtensionCommand::Equiv { cocycle, other } => {
            let w1 = inputs.cocycle(cocycle)?;
            let w2 = inputs.cocycle(other)?;
            let (e1, e2) = match (extension_or_failure(&w1)?, extension_or_failure(&w2)?) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(v), _) | (_, Err(v)) => return Outcome::with(v, false),
            };
            let eq = are_equivalent(&e1, &e2)?;
            Outcome::ok(json!({
                "equivalent": eq.is_some(),
                "phi": eq.as_ref().map(|e| e.phi.encoded()),
                "map": eq.as_ref().map(|e| e.map.table().to_vec()),
            }))
        }
        ExtensionCommand::Split { cocycle } => {
            let omega = inputs.cocycle(cocycle)?;
            let ext = match extension_or_failure(&omega)? {
                Ok(e) => e,
                Err(v) => return Outcome::with(v, false),
            };
            let split = is_split(&ext)?;
            Outcome::ok(json!({
                "is_split": split.is_some(),
                "section": split.map(|s| s.table().to_vec()),
            }))
        }
    }
}

fn cmd_modular(a: &ModularArgs, seed: Option<u64>, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let seed = seed.ok_or_else(|| CliError::Usage("modular samples KMS pairs and needs --seed".into()))?;
    let text = inputs.read(&a.input)?;
    let input = parse_input(&text).map_err(|e| parse_err(&a.input, e))?;
    match input.run(seed)? {
        Ok(report) => {
            let passed = report.passed;
            Outcome::with(report, passed)
        }
        Err(refusal) => Outcome::with(json!({ "refusal": refusal }), false),
    }
}

fn matrix_rows(m: &nalgebra::Matrix4<f64>) -> Vec<Vec<f64>> {
    // + 0.0 turns −0.0 (from −sinh 0) into 0.0
    (0..4).map(|i| (0..4).map(|j| m[(i, j)] + 0.0).collect()).collect()
}

fn cmd_spacetime(c: &SpacetimeCommand, inputs: &mut Inputs) -> Result<Outcome, CliError> {
    let p4 = LieAlgebra::builtin("poincare4")?;
    match c {
        SpacetimeCommand::BoostGeneration { wedges } => {
            let family = match wedges {
                WedgeFamily::Six => six_wedge_family(),
                WedgeFamily::CoordinateOnly => coordinate_family(),
            };
            let report = boost_generation(&family, &p4)?;
            let ok = report.success;
            let mut v = to_value(report);
            v["generator_scale"] = json!("2π");
            Outcome::with(v, ok)
        }
        SpacetimeCommand::Boost { t, wedge } => {
            let w = inputs.wedge(wedge.as_ref())?;
            let b = wedge_boost(&w, *t);
            let gen = wedge_boost_generator(&w, &p4)?;
            let metric_defect = (b.lorentz.transpose() * crate::spacetime::minkowski() * b.lorentz
                - crate::spacetime::minkowski())
            .abs()
            .max();
            Outcome::ok(json!({
                "t": t,
                "lorentz": matrix_rows(&b.lorentz),
                "translation": b.translation.iter().copied().collect::<Vec<_>>(),
                "metric_defect": metric_defect,
                "standard_boost": wedge.is_none(),
                "standard_boost_matrix": wedge.is_none().then(|| matrix_rows(&boost_matrix(*t))),
                "generator": gen.element.to_string(),
                "generator_scale": "2π",
                "generator_exact": gen.exact,
                "warning": gen.warning,
            }))
        }
        SpacetimeCommand::Complement { wedge } => {
            let w = inputs.wedge(wedge.as_ref())?;
            let check = check_complement(&w);
            let ok = check.holds();
            Outcome::with(
                json!({
                    "wedge": w.to_json(),
                    "complement": w.complement().to_json(),
                    "check": check,
                }),
                ok,
            )
        }
    }
}

fn render_text(r: &Report) -> String {
    let mut out = format!("command: {}\nsuccess: {}\n", r.command, r.success);
    for (path, digest) in &r.inputs {
        out.push_str(&format!("input {path}: sha256 {digest}\n"));
    }
    flatten("", &r.result, &mut out);
    out.push_str(&format!("version: {}\n", r.version));
    if let Some(ms) = r.elapsed_ms {
        out.push_str(&format!("elapsed_ms: {ms:.3}\n"));
    }
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let scalar_list = |xs: &[Value]| xs.iter().all(|x| !x.is_object() && !x.is_array());
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if scalar_list(xs) => {
            let items: Vec<String> = xs.iter().map(plain).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", plain(v))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
