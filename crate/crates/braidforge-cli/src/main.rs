use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use braidforge::anyon::{self, AnyonModel};
use braidforge::braid::{self, parse_braid, BraidWord};
use braidforge::jonesrep::{self, braid_generator_matrices, closure_bfs};
use braidforge::localize::{self, InclusionData, YBOperator};
use braidforge::ring::cmat::{matrix_from_json, matrix_to_json};
use braidforge::ring::{Branch, UnitaryParams};
use braidforge::simulate::{self, PlatJob};
use braidforge::templieb::{self, TLDiagram};
use braidforge::{burau, Error, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "braidforge", version, about = "Braid group representations and their invariants")]
struct Cli {
    /// Emit a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Numeric tolerance.
    #[arg(long, global = true, env = "BRAIDFORGE_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WordArgs {
    /// Braid letters such as "1 -2 3"; "-" reads standard input.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "word_file")]
    word: Option<String>,
    /// Read the braid letters from a file.
    #[arg(long)]
    word_file: Option<PathBuf>,
    #[arg(long)]
    strands: usize,
}

impl WordArgs {
    fn braid(&self) -> Result<BraidWord, Failure> {
        let text = match (&self.word, &self.word_file) {
            (Some(w), _) if w == "-" => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
                s
            }
            (Some(w), _) => w.clone(),
            (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
            (None, None) => return Err(Failure::Usage("one of --word or --word-file is required".into())),
        };
        Ok(parse_braid(text.trim(), self.strands)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Writhe, permutation and components of a braid word.
    Braid(WordArgs),
    /// Burau matrix of a braid word.
    Burau {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        reduced: bool,
    },
    /// Alexander polynomial of the closure.
    Alexander {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        conway: bool,
    },
    /// Kauffman bracket in TL_n and its closures.
    Bracket(WordArgs),
    /// Jones polynomial of the closure.
    Jones {
        #[command(flatten)]
        word: WordArgs,
        /// Evaluate at A on the chosen branch for this r.
        #[arg(long)]
        at: Option<u32>,
        #[arg(long)]
        branch: Option<Branch>,
    },
    /// Temperley-Lieb utilities.
    Tl {
        #[command(subcommand)]
        command: TlCommand,
    },
    /// Anyon model data.
    Anyon {
        #[command(subcommand)]
        command: AnyonCommand,
    },
    /// Jones representation matrices and images.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Plat-closure simulation.
    Sim {
        #[command(subcommand)]
        command: SimCommand,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Localization data.
    Localize {
        #[command(subcommand)]
        command: LocalizeCommand,
    },
}

#[derive(Subcommand)]
enum TlCommand {
    /// Basis diagrams as chord lists.
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// Gram matrix and determinant against the product formula.
    Gram {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long)]
    level: u32,
    #[arg(long)]
    branch: Option<Branch>,
}

impl ModelArgs {
    fn model(&self) -> Result<AnyonModel, Failure> {
        Ok(match self.branch {
            Some(b) => AnyonModel::with_branch(self.level, b)?,
            None => AnyonModel::new(self.level)?,
        })
    }
}

#[derive(Subcommand)]
enum AnyonCommand {
    /// Dimension of a fusion space.
    Dims {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        leaf: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        charge: u32,
    },
    /// Table of supported F-matrices.
    Fsymbol {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Table of R-symbols.
    Rsymbol {
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    Jones {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        charge: u32,
        #[arg(long, default_value_t = 1)]
        leaf: u32,
        #[arg(long, conflicts_with = "closure")]
        matrices: bool,
        #[arg(long)]
        closure: bool,
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum SimCommand {
    Plat {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        branch: Option<Branch>,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip sampling.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Yang-Baxter and unitarity residuals.
    Ybe {
        #[arg(long, conflicts_with = "matrix")]
        fixture: Option<String>,
        /// JSON file with a matrix of [re, im] entries.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// TL relations of the representation matrices.
    Tl {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        charge: u32,
        #[arg(long, default_value_t = 1)]
        leaf: u32,
    },
    /// Level-2 Clifford identities.
    Clifford {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum LocalizeCommand {
    /// Fibonacci non-localizability certificate.
    FibCert {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
    },
    /// Dimension vectors of a stationary Bratteli diagram.
    Bratteli {
        /// Rows separated by ';', entries by spaces.
        #[arg(long, default_value = "0 1; 1 1")]
        g: String,
        #[arg(long)]
        d0: String,
        #[arg(long)]
        steps: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    /// A check ran but did not meet its tolerance.
    Check(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A JSON object plus its human rendering.
struct Output {
    fields: Vec<(String, Value, String)>,
}

impl Output {
    fn new() -> Self {
        Output { fields: Vec::new() }
    }

    fn field(mut self, key: &str, value: Value) -> Self {
        let text = match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        self.fields.push((key.to_string(), value, text));
        self
    }

    fn text(mut self, key: &str, value: Value, text: String) -> Self {
        self.fields.push((key.to_string(), value, text));
        self
    }

    fn render(&self, json_mode: bool) -> String {
        if json_mode {
            let map: Map<String, Value> = self.fields.iter().map(|(k, v, _)| (k.clone(), v.clone())).collect();
            Value::Object(map).to_string()
        } else {
            self.fields
                .iter()
                .map(|(k, _, t)| if t.starts_with('\n') { format!("{k}:{t}") } else { format!("{k}: {t}") })
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn fmt_complex(z: Complex64) -> String {
    format!("{} {} {}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn params(r: u32, branch: Option<Branch>) -> Result<UnitaryParams, Failure> {
    Ok(match branch {
        Some(b) => braidforge::ring::unitary_params(r, b)?,
        None => UnitaryParams::with_default_branch(r)?,
    })
}

fn parse_rows(s: &str) -> Result<Vec<Vec<u64>>, Failure> {
    s.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| x.parse::<u64>().map_err(|e| Failure::Usage(format!("{x:?}: {e}"))))
                .collect()
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
    }
    match &cli.command {
        Command::Braid(w) => {
            let b = w.braid()?;
            let perm = braid::underlying_permutation(&b);
            Ok(Output::new()
                .field("word", json!(b.to_string()))
                .field("strands", json!(b.strands()))
                .field("length", json!(b.len()))
                .field("writhe", json!(braid::writhe(&b)))
                .field("permutation", json!(perm.images().iter().map(|i| i + 1).collect::<Vec<_>>()))
                .field("components", json!(braid::component_count(&b)))
                .field("inverse", json!(b.inverse().to_string())))
        }
        Command::Burau { word, reduced } => {
            let b = word.braid()?;
            let m = if *reduced { burau::reduced_burau(&b)? } else { burau::unreduced_burau(&b) };
            let rows: Vec<Vec<String>> =
                (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect();
            let text = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join("\n  ");
            Ok(Output::new()
                .field("reduced", json!(reduced))
                .text("matrix", json!(rows), format!("\n  {text}")))
        }
        Command::Alexander { word, conway } => {
            let b = word.braid()?;
            let mut out = Output::new().field("alexander", json!(burau::alexander(&b)?.to_string()));
            if *conway {
                let z = burau::conway_z(&b)?;
                out = out.field("conway", json!(z.to_string()));
            }
            Ok(out)
        }
        Command::Bracket(w) => {
            let b = w.braid()?;
            let x = templieb::kauffman_bracket(&b);
            let terms: Vec<Value> = x
                .terms()
                .map(|(d, c)| json!({"chords": d.chords(), "coefficient": c.to_string()}))
                .collect();
            let text: Vec<String> = x.terms().map(|(d, c)| format!("({c}) {:?}", d.chords())).collect();
            let mut out = Output::new()
                .text("terms", Value::Array(terms), format!("\n  {}", text.join("\n  ")))
                .field("trace_closure", json!(x.closure_value(TLDiagram::trace_loops).to_string()));
            if b.strands() % 2 == 0 {
                out = out.field("plat_closure", json!(templieb::plat_bracket(&b)?.to_string()));
            }
            Ok(out)
        }
        Command::Jones { word, at, branch } => {
            let b = word.braid()?;
            let mut out = Output::new().field("jones", json!(templieb::jones(&b)?.to_string()));
            if let Some(r) = at {
                let p = params(*r, *branch)?;
                let v = templieb::jones_at_a(&b, p.a)?;
                out = out.field("branch", json!(p.branch.to_string())).text("value", complex(v), fmt_complex(v));
            }
            Ok(out)
        }
        Command::Tl { command } => match command {
            TlCommand::Basis { n } => {
                let basis = templieb::enumerate_basis(*n)?;
                let chords: Vec<_> = basis.iter().map(TLDiagram::chords).collect();
                Ok(Output::new().field("n", json!(n)).field("size", json!(basis.len())).field("diagrams", json!(chords)))
            }
            TlCommand::Gram { n } => {
                let g = templieb::gram_matrix(*n)?;
                let rows: Vec<Vec<String>> =
                    (0..g.rows()).map(|i| g.row(i).iter().map(ToString::to_string).collect()).collect();
                let det = templieb::gram_det(*n)?;
                let formula = templieb::gram_det_formula(*n);
                Ok(Output::new()
                    .field("n", json!(n))
                    .field("gram", json!(rows))
                    .field("det", json!(det.to_string()))
                    .field("formula", json!(formula.to_string()))
                    .field("agrees", json!(det == formula)))
            }
        },
        Command::Anyon { command } => match command {
            AnyonCommand::Dims { model, leaf, n, charge } => {
                let m = model.model()?;
                let d = anyon::dim_space(&m, *leaf, *n, *charge)?;
                Ok(Output::new()
                    .field("level", json!(m.level()))
                    .field("leaf", json!(leaf))
                    .field("n", json!(n))
                    .field("charge", json!(charge))
                    .field("dim", json!(d)))
            }
            AnyonCommand::Fsymbol { model } => {
                let m = model.model()?;
                Ok(Output::new().field("level", json!(m.level())).field("F", anyon::f_table(&m, &m.labels())))
            }
            AnyonCommand::Rsymbol { model } => {
                let m = model.model()?;
                Ok(Output::new()
                    .field("level", json!(m.level()))
                    .field("branch", json!(m.params().branch.to_string()))
                    .field("R", anyon::r_table(&m)))
            }
        },
        Command::Rep { command: RepCommand::Jones { model, n, charge, leaf, closure, bound, .. } } => {
            let m = model.model()?;
            let rep = braid_generator_matrices(&m, *leaf, *n, *charge)?;
            let residual = jonesrep::braid_relation_residual(&rep.generators);
            let mut out = Output::new()
                .field("level", json!(m.level()))
                .field("n", json!(n))
                .field("leaf", json!(leaf))
                .field("charge", json!(charge))
                .field("dim", json!(rep.dim()))
                .field("basis", json!(rep.basis.iter().map(|t| t.labels.clone()).collect::<Vec<_>>()))
                .field("relation_residual", json!(residual));
            if *closure {
                let report = closure_bfs(&rep.generators, *bound, tol, true)?;
                out = out.field("closure", report.to_json());
            } else {
                out = out.field("generators", json!(rep.generators.iter().map(matrix_to_json).collect::<Vec<_>>()));
            }
            Ok(out)
        }
        Command::Sim { command: SimCommand::Plat { word, r, branch, eps, delta, seed, exact } } => {
            let b = word.braid()?;
            let branch = branch.unwrap_or(Branch::default_for(*r));
            let job = PlatJob::new(b, *r, branch, *eps, *delta, *seed)?;
            if *exact {
                let amp = simulate::plat_amplitude(&job)?;
                return Ok(Output::new()
                    .text("amplitude", complex(amp), fmt_complex(amp))
                    .field("p", json!(amp.norm_sqr())));
            }
            let rep = simulate::run_job(&job)?;
            Ok(Output::new()
                .text("amplitude", complex(rep.amplitude), fmt_complex(rep.amplitude))
                .field("p", json!(rep.p))
                .field("Z", json!(rep.z))
                .field("samples", json!(rep.samples)))
        }
        Command::Verify { command } => verify(command, tol),
        Command::Localize { command } => match command {
            LocalizeCommand::FibCert { d, nmax } => {
                let cert = localize::fib_nonlocal_certificate(*d, *nmax)?;
                let v = cert.to_json();
                Ok(Output::new()
                    .field("d", json!(d))
                    .field("n_max", json!(nmax))
                    .text(
                        "contradiction_at",
                        json!(cert.contradiction_at),
                        cert.contradiction_at.map_or("none".into(), |n| n.to_string()),
                    )
                    .text("steps", v["steps"].clone(), format!("{} checked", cert.steps.len())))
            }
            LocalizeCommand::Bratteli { g, d0, steps } => {
                let g = InclusionData::new(parse_rows(g)?)?;
                let d0: Vec<u64> = parse_rows(d0)?.concat();
                let dims = localize::bratteli_dims(&g, &d0, *steps)?;
                Ok(Output::new().field("dims", json!(dims)))
            }
        },
    }
}

fn verify(command: &VerifyCommand, tol: f64) -> Result<Output, Failure> {
    let (out, ok) = match command {
        VerifyCommand::Ybe { fixture, matrix } => {
            let (name, r) = match (fixture, matrix) {
                (Some(f), _) => (f.clone(), localize::load_fixture(f)?),
                (None, Some(p)) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
                    let m = v.get("matrix").unwrap_or(&v);
                    (p.display().to_string(), YBOperator::new(matrix_from_json(m)?)?)
                }
                (None, None) => return Err(Failure::Usage("one of --fixture or --matrix is required".into())),
            };
            let ybe = localize::check_ybe(&r);
            let unitary = r.unitarity_residual();
            let out = Output::new()
                .field("source", json!(name))
                .field("w", json!(r.w))
                .field("ybe_residual", json!(ybe))
                .field("unitarity_residual", json!(unitary))
                .field("tol", json!(tol))
                .field("pass", json!(ybe <= tol));
            (out, ybe <= tol)
        }
        VerifyCommand::Tl { model, n, charge, leaf } => {
            let m = model.model()?;
            let us = jonesrep::tl_generator_matrices(&m, *leaf, *n, *charge)?;
            let res = jonesrep::tl_relation_residual(&us, jonesrep::loop_value(&m, *leaf)?);
            let out = Output::new()
                .field("dim", json!(us.first().map_or(0, |u| u.nrows())))
                .field("tl_residual", json!(res))
                .field("tol", json!(tol))
                .field("pass", json!(res <= tol));
            (out, res <= tol)
        }
        VerifyCommand::Clifford { n } => {
            let m = AnyonModel::new(2)?;
            let rows = jonesrep::clifford_residuals(&m, *n)?;
            let worst = rows.iter().map(|r| r.max()).fold(0.0, f64::max);
            let sectors: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "charge": r.charge,
                        "conjugation": r.conjugation,
                        "anticommutation": r.anticommutation,
                        "order_sixteen": r.order_sixteen,
                    })
                })
                .collect();
            let out = Output::new()
                .text("sectors", json!(sectors), format!("{}", rows.len()))
                .field("max_residual", json!(worst))
                .field("tol", json!(tol))
                .field("pass", json!(worst <= tol));
            (out, worst <= tol)
        }
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

// a closed pipe downstream is not an error
fn emit(text: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(out.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            emit(out.render(cli.json));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
