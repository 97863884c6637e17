//! `perron`: batch front end to the library.
//!
//! Exit codes: 0 success, 1 malformed input, 2 domain error, 3 precision
//! exhausted. With `--format json` the result (or an error object) is a
//! single JSON document on stdout; diagnostics always go to stderr.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use perron::json::int_json;
use perron::modular_group::{audit_table, congruent_to_identity};
use perron::realnum::format_decimal;
use perron::{
    axis_length, build_module, cf_expand, classify_element, cone_contains, factor_unimodular,
    fixed_points, gamma_membership, gl2_equivalent, jp_convergents, jp_expand, legendre_audit,
    order_iso, parse_module_literal, parse_real, rank_from_topology, riesz_audit, simplicial_chain,
    state_eval, CFExpansion, CongruenceLevel, Error, ErrorClass, GroupElement, ModuleRep,
    RealValue, UnimodularMatrix,
};

#[derive(Parser)]
#[command(
    name = "perron",
    version,
    about = "Continued fractions, Jacobi-Perron and dimension groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Refinement budget in bits for interval inputs (`axis-length`: working precision).
    #[arg(long, global = true)]
    precision: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Regular continued fraction of a real.
    CfExpand {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// GL(2,Z)-equivalence of two reals.
    CfEquiv {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Factor a non-negative 2x2 unimodular matrix into (0 1; 1 a) factors.
    Factor {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        pad_parity: bool,
    },
    /// Jacobi-Perron digit vectors.
    JpExpand {
        #[command(flatten)]
        theta: Theta,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Jacobi-Perron convergent matrix and rational approximation.
    JpReconstruct {
        #[command(flatten)]
        theta: Theta,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Convergent index; defaults to the number of steps obtained.
        #[arg(long)]
        step: Option<usize>,
    },
    /// Trace class and boundary fixed points of a 2x2 unimodular matrix.
    Classify {
        #[arg(long)]
        matrix: String,
    },
    /// Translation length of a hyperbolic element.
    AxisLength {
        #[arg(long)]
        matrix: String,
        /// Decimal digits printed in text mode.
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Membership in the principal congruence subgroup of level N.
    Gamma {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        level: u64,
    },
    /// Partial products of a continued fraction against level N.
    LegendreAudit {
        /// A continued fraction `[a0;a1,...]` or a real value.
        #[arg(long)]
        input: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        depth: usize,
    },
    /// Build a module from `module:{lambda:[...], unit:[...]}`.
    ModuleBuild {
        #[command(flatten)]
        module: One,
    },
    /// Sign of an element's image.
    Cone {
        #[command(flatten)]
        module: One,
        #[arg(long)]
        element: String,
    },
    /// Value of the normalized state on an element.
    State {
        #[command(flatten)]
        module: One,
        #[arg(long)]
        element: String,
    },
    /// Order isomorphism of two modules.
    OrderIso {
        /// Exactly two module literals.
        #[arg(long = "module", required = true, num_args = 1)]
        modules: Vec<String>,
        #[arg(long, default_value_t = 20)]
        budget: usize,
    },
    /// Simplicial approximation chain.
    Chain {
        #[command(flatten)]
        module: One,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Rank 2g + |regions| - 1.
    Rank {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        regions: u64,
    },
    /// Sampled audit of the ordered-group axioms.
    RieszAudit {
        #[command(flatten)]
        module: One,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
}

#[derive(Args)]
struct Theta {
    /// One coordinate of θ; repeat for each.
    #[arg(long = "theta", required = true, num_args = 1)]
    values: Vec<String>,
}

#[derive(Args)]
struct One {
    #[arg(long = "module")]
    literal: String,
}

/// What a command produced: the text rendering and the JSON document.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn same(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
        }
    }
}

struct Ctx {
    budget: Option<u32>,
}

impl Ctx {
    fn real(&self, s: &str) -> Result<RealValue, Error> {
        let v = parse_real(s)?;
        Ok(match self.budget {
            Some(b) => v.with_budget(b),
            None => v,
        })
    }

    fn module(&self, s: &str) -> Result<ModuleRep, Error> {
        let (lambda, unit) = parse_module_literal(s)?;
        let lambda = match self.budget {
            Some(b) => lambda.iter().map(|l| l.with_budget(b)).collect(),
            None => lambda,
        };
        build_module(lambda, unit)
    }
}

fn matrix(s: &str) -> Result<UnimodularMatrix, Error> {
    UnimodularMatrix::parse(s)
}

fn level(n: u64) -> Result<CongruenceLevel, Error> {
    CongruenceLevel::new(n)
}

fn run(cli: Cli) -> Result<Output, Error> {
    let ctx = Ctx {
        budget: cli.precision,
    };
    match cli.command {
        Command::CfExpand { input, depth } => {
            let x = ctx.real(&input)?;
            let e = cf_expand(&x, depth)?;
            Ok(Output::same(e.to_string(), e.to_json()))
        }
        Command::CfEquiv { x, y, budget } => {
            let (x, y) = (ctx.real(&x)?, ctx.real(&y)?);
            let d = gl2_equivalent(&x, &y, budget);
            let mut j = json!({ "decision": d.as_str() });
            let mut text = d.as_str().to_string();
            if let perron::Decision::Unknown(note) = &d {
                j["note"] = Value::String(note.clone());
                text.push_str(&format!("\n{note}"));
            }
            Ok(Output::same(text, j))
        }
        Command::Factor {
            matrix: m,
            pad_parity,
        } => {
            let m = matrix(&m)?;
            let digits = factor_unimodular(&m, pad_parity)?;
            let text = digits
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            Ok(Output::same(
                format!("[{text}]"),
                Value::Array(digits.iter().map(int_json).collect()),
            ))
        }
        Command::JpExpand { theta, depth } => {
            let theta = theta
                .values
                .iter()
                .map(|t| ctx.real(t))
                .collect::<Result<Vec<_>, _>>()?;
            let e = jp_expand(&theta, depth)?;
            let mut text: Vec<String> = e
                .steps
                .iter()
                .map(|b| {
                    b.0.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            text.push(if e.terminated {
                "terminated".into()
            } else {
                "truncated".into()
            });
            Ok(Output::same(text.join("\n"), e.to_json()))
        }
        Command::JpReconstruct { theta, depth, step } => {
            let theta = theta
                .values
                .iter()
                .map(|t| ctx.real(t))
                .collect::<Result<Vec<_>, _>>()?;
            let e = jp_expand(&theta, depth)?;
            let c = jp_convergents(&e, step.unwrap_or(e.steps.len()))?;
            let ratios = c.ratios()?;
            let text = format!(
                "{}\n{}",
                c.matrix,
                ratios
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(Output::same(text, c.to_json()))
        }
        Command::Classify { matrix: m } => {
            let g = matrix(&m)?;
            if g.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: g.dim(),
                });
            }
            let class = classify_element(&g);
            let points = match fixed_points(&g) {
                Ok(p) => Some(p),
                Err(Error::EllipticInput | Error::IdentityInput) => None,
                Err(e) => return Err(e),
            };
            let mut text = class.to_string();
            if let Some(p) = &points {
                let s: Vec<String> = p.iter().map(ToString::to_string).collect();
                text.push_str(&format!("\nfixed points: {}", s.join(" ")));
            }
            let fp = points.map_or(Value::Null, |p| {
                Value::Array(p.iter().map(|x| Value::String(x.to_string())).collect())
            });
            Ok(Output::same(
                text,
                json!({ "class": class.to_string(), "trace": int_json(&g.trace()), "fixed_points": fp }),
            ))
        }
        Command::AxisLength { matrix: m, digits } => {
            let g = matrix(&m)?;
            let len = axis_length(&g, cli.precision.unwrap_or(64))?;
            let mid = len.midpoint();
            Ok(Output::same(
                format_decimal(&mid, digits),
                json!({
                    "value": format_decimal(&mid, digits),
                    "low": len.low().to_string(),
                    "high": len.high().to_string(),
                    "precision": len.precision(),
                }),
            ))
        }
        Command::Gamma {
            matrix: m,
            level: n,
        } => {
            let (g, n) = (matrix(&m)?, level(n)?);
            let member = gamma_membership(&g, &n);
            if !member && g.det() != 1.into() && congruent_to_identity(&g, &n) {
                eprintln!("note: determinant -1, so not in Γ(N) although congruent to I");
            }
            Ok(Output::same(member.to_string(), Value::Bool(member)))
        }
        Command::LegendreAudit {
            input,
            level: n,
            depth,
        } => {
            let n = level(n)?;
            let e = if input.trim_start().starts_with('[') {
                CFExpansion::parse(&input)?
            } else {
                cf_expand(&ctx.real(&input)?, depth)?
            };
            let records = legendre_audit(&e, &n, depth)?;
            Ok(Output::same(
                audit_table(&records).trim_end().to_string(),
                Value::Array(records.iter().map(|r| r.to_json()).collect()),
            ))
        }
        Command::ModuleBuild { module } => {
            let m = ctx.module(&module.literal)?;
            let j = m.to_json();
            let text = format!(
                "n = {}\ntheta = {}\nunit = {}\ndependence = {}",
                m.n(),
                m.theta()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                m.order_unit(),
                j["dependence"]
            );
            Ok(Output::same(text, j))
        }
        Command::Cone { module, element } => {
            let (m, x) = (ctx.module(&module.literal)?, GroupElement::parse(&element)?);
            let s = cone_contains(&m, &x)?;
            Ok(Output::same(s.to_string(), Value::String(s.to_string())))
        }
        Command::State { module, element } => {
            let (m, x) = (ctx.module(&module.literal)?, GroupElement::parse(&element)?);
            let v = state_eval(&m, &x)?;
            Ok(Output::same(
                v.to_string(),
                json!({ "value": v.to_string() }),
            ))
        }
        Command::OrderIso { modules, budget } => {
            if modules.len() != 2 {
                return Err(Error::Parse(format!(
                    "order-iso takes exactly two --module values, got {}",
                    modules.len()
                )));
            }
            let (a, b) = (ctx.module(&modules[0])?, ctx.module(&modules[1])?);
            let r = order_iso(&a, &b, budget)?;
            let mut text = r.decision.as_str().to_string();
            if let perron::Decision::Unknown(note) = &r.decision {
                text.push_str(&format!("\n{note}"));
            }
            if let Some(w) = &r.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            Ok(Output::same(text, r.to_json()))
        }
        Command::Chain { module, depth } => {
            let m = ctx.module(&module.literal)?;
            let c = simplicial_chain(&m, depth)?;
            let mut text = vec![format!("source: {}", c.source.as_str())];
            text.extend(c.matrices.iter().map(ToString::to_string));
            if c.truncated {
                text.push("truncated".into());
            }
            Ok(Output::same(text.join("\n"), c.to_json()))
        }
        Command::Rank { genus, regions } => {
            let r = rank_from_topology(genus, regions)?;
            Ok(Output::same(r.to_string(), json!(r)))
        }
        Command::RieszAudit {
            module,
            samples,
            bound,
        } => {
            let m = ctx.module(&module.literal)?;
            let r = riesz_audit(&m, samples, bound);
            let mut text = format!(
                "samples: {}\nchecks: {}\nviolations: {}\nprecision incidents: {}",
                r.samples,
                r.checks,
                r.violations.len(),
                r.precision_incidents
            );
            for v in &r.violations {
                let w: Vec<String> = v.witness.iter().map(ToString::to_string).collect();
                text.push_str(&format!("\n{} {}", v.axiom, w.join(" ")));
            }
            Ok(Output::same(text, r.to_json()))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Malformed => 1,
        ErrorClass::Domain => 2,
        ErrorClass::Precision => 3,
    }
}

fn error_json(kind: &str, code: u8, message: &str) -> Value {
    json!({ "error": { "kind": kind, "exit_code": code, "message": message } })
}

/// The format is needed even when argument parsing fails.
fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn emit(json_mode: bool, out: &Output) {
    let mut stdout = std::io::stdout().lock();
    let body = if json_mode {
        out.json.to_string()
    } else {
        out.text.clone()
    };
    let _ = writeln!(stdout, "{body}");
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let json_mode = wants_json(&args);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            if json_mode {
                let msg = e.kind().to_string();
                println!("{}", error_json("Usage", 1, &msg));
            }
            return ExitCode::from(1);
        }
    };
    let json_mode = cli.format == Format::Json;
    match run(cli) {
        Ok(out) => {
            emit(json_mode, &out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e}");
            if json_mode {
                println!("{}", error_json(e.kind(), code, &e.to_string()));
            }
            ExitCode::from(code)
        }
    }
}
