//! The `langlands` command-line tool.
//!
//! Every verb prints one JSON document. Object keys are sorted and
//! rationals are rendered as `"p/q"` strings, so output is byte-stable.
//! Exit status is 0 on success, 1 on a domain error (a JSON object with
//! `code`, `message` and optionally `position`), and 2 on usage errors.

pub mod parse;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use langlands_core::chamber::{self, AStarSpace, NuVector};
use langlands_core::fuzz::{self, FuzzConfig};
use langlands_core::lparam::{self, GLnLParameter, GLnStandardTriple, Mode};
use langlands_core::rational::{format_rational, parse_rational};
use langlands_core::weyl::{GaloisAction, RelativeWeylGroup};
use langlands_core::{DatumFile, Error as CoreError, Execution, ParabolicSubset, Rational, WeylElement, WeylGroup};

pub use parse::{parse_lparam, ParseError, Position};

#[derive(Debug, Parser)]
#[command(name = "langlands", version, about = "Root data, Weyl groups and L-parameters of GL_n in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Rank of the general linear group (defaults to the parameter's dimension).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Index of the division algebra; 1 for the split group.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Root datum JSON file.
    #[arg(long, global = true)]
    datum: Option<PathBuf>,
    /// Realization of the classification.
    #[arg(long, global = true, default_value = "quotient")]
    mode: Mode,
    /// Read parameters as JSON instead of the segment grammar.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Standard triple of a parameter.
    Classify { param: String },
    /// Parameter of a standard triple given as JSON.
    Assemble { triple: String },
    /// Whether every exponent is zero.
    Tempered { param: String },
    /// Hyperbolic invariant z(φ).
    Z { param: String },
    /// The invariant z_*(φ), including the SL_2 part.
    Zstar { param: String },
    /// Central twist by |det|^beta.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        param: String,
    },
    /// Whether every segment dimension is divisible by d.
    Relevant { param: String },
    /// Conjugacy of two parameters.
    Equiv { first: String, second: String },
    /// Centralizer of the image: GL multiplicities and component group order.
    Centralizer { param: String },
    /// Component groups of φ and of its tempered Levi data agree.
    Check71 { param: String },
    /// Validate, dualize or print the Cartan matrix of a datum file.
    Datum {
        #[command(subcommand)]
        action: DatumAction,
    },
    /// Weyl group of a datum: order, elements, relative group.
    Weyl {
        #[command(subcommand)]
        action: WeylAction,
    },
    /// Dominant chamber, maximal Levi and regularity of a point.
    Chamber {
        #[command(subcommand)]
        action: ChamberAction,
    },
    /// Seeded classification round trips.
    Roundtrip {
        #[arg(long, default_value_t = 10_000)]
        fuzz: usize,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
    },
}

#[derive(Debug, Subcommand)]
enum DatumAction {
    /// Check the axioms and report ranks.
    Validate,
    /// The dual datum, with the transported diagram action.
    Dual,
    /// Cartan matrix C_ij = <α_i, α_j∨>.
    Cartan,
}

#[derive(Debug, Subcommand)]
enum WeylAction {
    /// Number of elements.
    Order,
    /// Elements in (length, ShortLex) order.
    Elements,
    /// Relative Weyl group of the Levi given by --levi.
    Relative {
        /// Comma-separated simple roots of the base Levi (0-based).
        #[arg(long, default_value = "")]
        levi: String,
    },
}

#[derive(Debug, clap::Args)]
struct ChamberArgs {
    /// Comma-separated simple roots of the Levi (0-based).
    #[arg(long, default_value = "")]
    levi: String,
    /// Point of a*_M: JSON array of rational strings, or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
}

#[derive(Debug, Subcommand)]
enum ChamberAction {
    /// Dominant conjugate of --nu and the shortest element reaching it.
    Dominant(ChamberArgs),
    /// Maximal standard Levi of a dominant --nu.
    Maxlevi(ChamberArgs),
    /// Whether --nu is regular in a*_M.
    Regular(ChamberArgs),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{message}")]
    Input { code: &'static str, message: String },
    #[error("{0}")]
    Usage(String),
}

/// Lifts any library error into [`CliError`].
trait Lift<T> {
    fn lift(self) -> Result<T, CliError>;
}

impl<T, E: Into<CoreError>> Lift<T> for Result<T, E> {
    fn lift(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Core(e.into()))
    }
}

impl CliError {
    fn input(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Input { code, message: message.into() }
    }

    fn to_json(&self) -> Value {
        let (code, position) = match self {
            CliError::Parse(e) => (e.code(), Some(e.position())),
            CliError::Core(e) => (e.code(), None),
            CliError::Input { code, .. } => (*code, None),
            CliError::Usage(_) => ("UsageError", None),
        };
        let mut out = json!({ "code": code, "message": self.to_string() });
        if let Some(p) = position {
            out["position"] = json!({ "line": p.line, "column": p.column });
        }
        out
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the verb.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match cli.execute() {
        Ok((value, ok)) => Outcome { code: if ok { 0 } else { 1 }, stdout: render(&value), stderr: String::new() },
        Err(CliError::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(e) => Outcome { code: 1, stdout: render(&e.to_json()), stderr: String::new() },
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always render");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn rational_rows(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rationals(r)).collect())
}

fn element(w: &WeylElement) -> Value {
    json!({ "word": w.word(), "length": w.length(), "matrix": w.matrix().to_rows() })
}

/// `@path` reads the file, anything else is taken literally.
fn text_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::input("IoError", format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_levi(text: &str) -> Result<ParabolicSubset, CliError> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(ParabolicSubset::empty());
    }
    t.split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map(ParabolicSubset::new)
        .map_err(|_| CliError::Usage(format!("--levi expects comma-separated indices, got `{text}`")))
}

fn parse_nu(text: &str) -> Result<NuVector, CliError> {
    let t = text.trim();
    let parts: Vec<String> = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| CliError::input("InvalidJson", format!("--nu: {e}")))?
    } else if t.is_empty() {
        Vec::new()
    } else {
        t.split(',').map(str::to_string).collect()
    };
    let coords = parts
        .iter()
        .map(|p| parse_rational(p).map_err(|e| CliError::input("InvalidRational", format!("--nu: {e}"))))
        .collect::<Result<_, _>>()?;
    Ok(NuVector::new(coords))
}

impl Cli {
    fn param(&self, arg: &str) -> Result<GLnLParameter, CliError> {
        let text = text_arg(arg)?;
        let phi = if self.json {
            let phi: GLnLParameter =
                serde_json::from_str(&text).map_err(|e| CliError::input("InvalidJson", e.to_string()))?;
            if self.n.is_some_and(|n| n != phi.n()) || self.d.is_some_and(|d| d != phi.d()) {
                return Err(CliError::Core(
                    lparam::LParamError::GroupMismatch {
                        n1: self.n.unwrap_or(phi.n()),
                        d1: self.d.unwrap_or(phi.d()),
                        n2: phi.n(),
                        d2: phi.d(),
                    }
                    .into(),
                ));
            }
            phi
        } else {
            let segments = parse_lparam(&text)?;
            let n = self.n.unwrap_or_else(|| segments.iter().map(|s| s.dim()).sum());
            lparam::new_lparameter(n, self.d.unwrap_or(1), segments).lift()?
        };
        Ok(phi)
    }

    fn datum_file(&self) -> Result<DatumFile, CliError> {
        let path = self.datum.as_deref().ok_or_else(|| CliError::Usage("this verb needs --datum FILE".into()))?;
        read_datum(path)
    }

    fn execute(&self) -> Result<(Value, bool), CliError> {
        let v = match &self.command {
            Command::Classify { param } => {
                let phi = self.param(param)?;
                let t = lparam::classify(&phi, self.mode).lift()?;
                triple_json(&t, self.mode)
            }
            Command::Assemble { triple } => {
                let text = text_arg(triple)?;
                let t: GLnStandardTriple =
                    serde_json::from_str(&text).map_err(|e| CliError::input("InvalidJson", e.to_string()))?;
                let phi = lparam::assemble(&t, self.mode).lift()?;
                param_json(&phi)
            }
            Command::Tempered { param } => json!({ "tempered": lparam::is_tempered(&self.param(param)?) }),
            Command::Z { param } => json!({ "z": rationals(lparam::z_of(&self.param(param)?).exponents()) }),
            Command::Zstar { param } => {
                let z = lparam::z_star_of(&self.param(param)?).lift()?;
                json!({ "zstar": rationals(z.exponents()) })
            }
            Command::Twist { beta, param } => {
                let beta =
                    parse_rational(beta).map_err(|e| CliError::input("InvalidRational", format!("--beta: {e}")))?;
                param_json(&lparam::twist(&self.param(param)?, beta).lift()?)
            }
            Command::Relevant { param } => json!({ "relevant": lparam::is_relevant(&self.param(param)?) }),
            Command::Equiv { first, second } => {
                json!({ "equivalent": lparam::equivalent(&self.param(first)?, &self.param(second)?).lift()? })
            }
            Command::Centralizer { param } => to_value(&lparam::centralizer_shape(&self.param(param)?)),
            Command::Check71 { param } => {
                let phi = self.param(param)?;
                let holds = lparam::check_prop_7_1(&phi).lift()?;
                let t = lparam::classify(&phi, Mode::Quotient).lift()?;
                json!({
                    "holds": holds,
                    "group": to_value(&lparam::centralizer_shape(&phi)),
                    "levi": to_value(&lparam::levi_centralizer_shape(&t).lift()?),
                })
            }
            Command::Datum { action } => self.datum_verb(action)?,
            Command::Weyl { action } => self.weyl_verb(action)?,
            Command::Chamber { action } => self.chamber_verb(action)?,
            Command::Roundtrip { fuzz: cases, nmax } => {
                if *nmax == 0 {
                    return Err(CliError::Usage("--nmax must be positive".into()));
                }
                let cfg = FuzzConfig {
                    seed: self.seed,
                    cases: *cases,
                    n_max: *nmax,
                    ds: self.d.map_or_else(|| vec![1, 2, 3], |d| vec![d]),
                    ..FuzzConfig::default()
                };
                if cfg.ds.iter().any(|&d| d == 0 || d > cfg.n_max) {
                    return Err(CliError::Usage("--d must lie in 1..=nmax".into()));
                }
                let report = fuzz::roundtrip(&cfg, Execution::default());
                let ok = report.failures.is_empty();
                return Ok((to_value(&report), ok));
            }
        };
        Ok((v, true))
    }

    fn datum_verb(&self, action: &DatumAction) -> Result<Value, CliError> {
        let file = self.datum_file()?;
        let datum = file.datum().lift()?;
        let action_on = GaloisAction::from_file(&datum, &file).lift()?;
        Ok(match action {
            DatumAction::Validate => json!({
                "valid": true,
                "rank": datum.rank(),
                "semisimple_rank": datum.semisimple_rank(),
                "galois_generators": action_on.generators().len(),
            }),
            DatumAction::Dual => {
                let dual = datum.dual();
                let mut out = DatumFile::from_datum(&dual);
                if file.galois_generators.is_some() {
                    let moved = action_on.transport_to_dual();
                    out.galois_generators = Some(moved.generators().to_vec());
                    out.galois_lattice_matrices =
                        Some((0..moved.generators().len()).map(|g| moved.lattice_matrix(g).to_rows()).collect());
                }
                to_value(&out)
            }
            DatumAction::Cartan => json!({ "cartan": datum.cartan_matrix().to_rows() }),
        })
    }

    fn weyl_verb(&self, action: &WeylAction) -> Result<Value, CliError> {
        let file = self.datum_file()?;
        let datum = file.datum().lift()?;
        let group = WeylGroup::generate(&datum).lift()?;
        Ok(match action {
            WeylAction::Order => json!({ "order": group.order() }),
            WeylAction::Elements => json!({
                "order": group.order(),
                "elements": group.elements().iter().map(element).collect::<Vec<_>>(),
            }),
            WeylAction::Relative { levi } => {
                let base = parse_levi(levi)?;
                let galois = GaloisAction::from_file(&datum, &file).lift()?;
                let rel = RelativeWeylGroup::new(&group, &base, &galois).lift()?;
                let elements: Vec<Value> = (0..rel.order())
                    .map(|k| {
                        let mut e = element(&rel.elements()[k]);
                        e["lattice_action"] = json!(rel.lattice_action(k).to_rows());
                        e
                    })
                    .collect();
                json!({
                    "levi": base.indices(),
                    "order": rel.order(),
                    "elements": elements,
                    "lattice_basis": rel.lattice().basis(),
                    "reflections": rel.reflections().iter().map(|r| json!({ "orbit": r.orbit, "element": r.element })).collect::<Vec<_>>(),
                    "generated_by_reflections": rel.generated_by_reflections(),
                })
            }
        })
    }

    fn chamber_verb(&self, action: &ChamberAction) -> Result<Value, CliError> {
        let (ChamberAction::Dominant(args) | ChamberAction::Maxlevi(args) | ChamberAction::Regular(args)) = action;
        let file = self.datum_file()?;
        let datum = file.datum().lift()?;
        let galois = GaloisAction::from_file(&datum, &file).lift()?;
        let levi = parse_levi(&args.levi)?;
        let nu = parse_nu(&args.nu)?;
        let space = AStarSpace::new(&datum, &levi).lift()?;
        let gram = rational_rows(&space.gram().to_rows());
        Ok(match action {
            ChamberAction::Dominant(_) => {
                let group = WeylGroup::generate(&datum).lift()?;
                let rel = RelativeWeylGroup::new(&group, &levi, &galois).lift()?;
                let (w, moved) = chamber::dominant_conjugate(&nu, &group, &rel, &space).lift()?;
                json!({
                    "element": element(&w),
                    "nu": rationals(moved.coords()),
                    "coefficients": rationals(&space.coefficients(&moved).lift()?),
                    "gram": gram,
                })
            }
            ChamberAction::Maxlevi(_) => {
                let big = chamber::maximal_levi_of(&nu, &space, &galois).lift()?;
                json!({ "levi": big.indices() })
            }
            ChamberAction::Regular(_) => {
                let roots: Vec<Value> = space
                    .projected_simple_roots()
                    .iter()
                    .map(|p| json!({ "index": p.index, "vector": rationals(&p.vector) }))
                    .collect();
                json!({
                    "regular": space.is_regular(&nu).lift()?,
                    "pairings": rationals(&space.pairings(&nu).lift()?),
                    "projected_roots": roots,
                    "gram": gram,
                })
            }
        })
    }
}

fn read_datum(path: &Path) -> Result<DatumFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input("IoError", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input("InvalidJson", format!("{}: {e}", path.display())))
}

fn param_json(phi: &GLnLParameter) -> Value {
    json!({ "parameter": to_value(phi), "text": phi.to_string() })
}

fn triple_json(t: &GLnStandardTriple, mode: Mode) -> Value {
    let mut v = to_value(t);
    v["mode"] = json!(mode);
    v["n"] = json!(t.n());
    v
}
