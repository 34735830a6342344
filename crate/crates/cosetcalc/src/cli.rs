//! Argument handling and command dispatch.

use std::ffi::OsString;
use std::fmt::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use cosetcalc_core::norm::{bucket_norms, norm};
use cosetcalc_core::spectrum::DEFAULT_PRECISION;
use cosetcalc_core::topology::{is_amenable_algebra, is_operator_amenable, tnqtd_tags};
use cosetcalc_core::{canonicalize, CanonicalCosetSet, GroupDescriptor, Rational, TopologyTag};

use crate::json;
use crate::parse::{parse_elem, parse_group, parse_point, parse_set, parse_tag, ParseError};
use crate::{hom, text};

pub const PRECISION_VAR: &str = "COSETCALC_PRECISION";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Core(#[from] cosetcalc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cosetcalc_core::Error as E;
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::Map(_) => 2,
            CliError::Core(E::UnsupportedGroup(_)) => 3,
            CliError::Core(E::PrecisionFailure { .. } | E::InsufficientPrecision { .. }) => 4,
            CliError::Io(_) | CliError::Core(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cosetcalc", version, about = "Exact calculus for coset rings and idempotent Fourier–Stieltjes algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Precision modulus for profinite coordinates [env: COSETCALC_PRECISION, default 2520].
    #[arg(long, global = true)]
    precision: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical form of a coset-ring expression.
    Canon {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        expr: String,
    },
    /// Graded decomposition of an indicator, with its norm.
    Decompose {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        expr: String,
    },
    /// Certified norm of an indicator and of its buckets.
    Norm {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        expr: String,
    },
    /// Value of an indicator at a group element.
    Eval {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        expr: String,
        #[arg(allow_hyphen_values = true)]
        at: String,
    },
    /// Join of topology tags.
    Join {
        group: String,
        #[arg(required = true)]
        tags: Vec<String>,
    },
    /// Tags of a group, optionally as a DOT order diagram.
    Lattice {
        group: String,
        /// Number of tags to list; defaults to 10 for infinite tag sets.
        #[arg(long)]
        first: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Character of a spectrum point evaluated on an indicator.
    SpectrumEval {
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
        #[arg(long)]
        point: String,
        #[arg(long)]
        elem: String,
    },
    /// Piecewise affine maps.
    Hom {
        #[command(subcommand)]
        action: HomCommand,
    },
    /// Amenability of the idempotent algebra.
    Amenable {
        #[arg(short = 'g', long = "group", default_value = "Z")]
        group: String,
    },
}

#[derive(Debug, Subcommand)]
enum HomCommand {
    /// Image of a source element.
    Apply {
        /// Map as inline JSON or a file path.
        #[arg(long)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        at: String,
    },
    /// Preimage of a target set.
    Pullback {
        #[arg(long)]
        map: String,
        expr: String,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI with the precision variable read from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(PRECISION_VAR).ok())
}

/// Runs the CLI with an explicit value for the precision variable.
pub fn run_with_env<I, T>(args: I, precision_var: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli, precision_var) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn precision(cli: &Cli, var: Option<String>) -> Result<u64, CliError> {
    let m = match (cli.precision, var) {
        (Some(m), _) => m,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRECISION_VAR} must be a positive integer, got '{v}'")))?,
        (None, None) => DEFAULT_PRECISION,
    };
    if m == 0 {
        return Err(CliError::Usage("precision must be positive".into()));
    }
    Ok(m)
}

fn group_arg(text: Option<&str>) -> Result<GroupDescriptor, CliError> {
    match text {
        Some(t) => Ok(parse_group(t)?),
        None => Ok(GroupDescriptor::integers()),
    }
}

/// Parses `expr`; a group prefix in the expression must agree with `-g`.
fn set_arg(group: Option<&str>, expr: &str) -> Result<CanonicalCosetSet, CliError> {
    let default = group_arg(group)?;
    let (g, e) = parse_set(expr, &default)?;
    if group.is_some() && g != default {
        return Err(CliError::Usage(format!("expression prefix {g} conflicts with -g {default}")));
    }
    Ok(canonicalize(&g, &e)?)
}

fn emit<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli, precision_var: Option<String>) -> Result<String, CliError> {
    let as_json = cli.json;
    match &cli.command {
        Command::Canon { group, expr } => {
            let s = set_arg(group.as_deref(), expr)?;
            let expression = text::expr(&s.to_expr());
            Ok(if as_json {
                emit(&json::CanonJson { group: s.group().discrete_part().to_string(), expression, empty: s.is_empty() })
            } else {
                format!("{expression}\n")
            })
        }
        Command::Decompose { group, expr } => {
            let s = set_arg(group.as_deref(), expr)?;
            let n = norm(s.indicator())?;
            Ok(if as_json { emit(&json::graded(s.indicator(), &n)) } else { text::graded(s.indicator(), Some(&n)) })
        }
        Command::Norm { group, expr } => {
            let s = set_arg(group.as_deref(), expr)?;
            let u = s.indicator();
            let n = norm(u)?;
            let parts = bucket_norms(u)?;
            if as_json {
                let buckets = u
                    .components()
                    .keys()
                    .zip(&parts)
                    .map(|(t, i)| json::BucketNormJson { tag: t.to_string(), norm: i.into() })
                    .collect();
                Ok(emit(&json::NormJson { group: u.group().discrete_part().to_string(), norm: (&n).into(), buckets }))
            } else {
                let mut out = format!("norm: {}\n", text::interval(&n));
                for (t, i) in u.components().keys().zip(&parts) {
                    let _ = writeln!(out, "{t}: {}", text::interval(i));
                }
                Ok(out)
            }
        }
        Command::Eval { group, expr, at } => {
            let s = set_arg(group.as_deref(), expr)?;
            let x = s.group().element(&parse_elem(at)?)?;
            let value = s.indicator().evaluate(&x);
            Ok(if as_json {
                emit(&json::EvalJson {
                    group: s.group().discrete_part().to_string(),
                    member: s.member(&x),
                    at: x,
                    value: value.to_string(),
                })
            } else {
                format!("{value}\n")
            })
        }
        Command::Join { group, tags } => {
            let g = parse_group(group)?;
            let supported = tnqtd_tags(&g)?;
            let mut parsed = Vec::with_capacity(tags.len());
            for t in tags {
                let tag = parse_tag(t)?;
                if !supported.contains(tag) {
                    return Err(cosetcalc_core::Error::InvalidTag(format!("{tag} is not a tag of {}", g.discrete_part())).into());
                }
                parsed.push(tag);
            }
            let j = parsed.iter().skip(1).fold(parsed[0], |a, &b| a.join(b));
            Ok(if as_json {
                emit(&json::JoinJson {
                    group: g.discrete_part().to_string(),
                    tags: parsed.iter().map(|t| t.to_string()).collect(),
                    join: j.to_string(),
                })
            } else {
                format!("{j}\n")
            })
        }
        Command::Lattice { group, first, dot } => {
            let g = parse_group(group)?;
            let all = tnqtd_tags(&g)?;
            let limit = first.unwrap_or(if all.is_finite() { usize::MAX } else { 10 });
            let tags: Vec<TopologyTag> = all.iter().take(limit).collect();
            let diagram = dot.then(|| order_diagram(&tags));
            Ok(if as_json {
                emit(&json::LatticeJson {
                    group: g.discrete_part().to_string(),
                    finite: all.is_finite(),
                    tags: tags.iter().map(|t| t.to_string()).collect(),
                    dot: diagram,
                })
            } else if let Some(d) = diagram {
                d
            } else {
                tags.iter().map(|t| format!("{t}\n")).collect()
            })
        }
        Command::SpectrumEval { group, point, elem } => {
            let m = precision(cli, precision_var)?;
            let s = set_arg(group.as_deref(), elem)?;
            let p = parse_point(point)?.build(s.group(), m)?;
            let value: Rational = p.chi(s.indicator())?;
            Ok(if as_json {
                emit(&json::SpectrumJson {
                    group: s.group().discrete_part().to_string(),
                    point: p.to_string(),
                    precision: p.precision(),
                    value: value.to_string(),
                })
            } else {
                format!("{value}\n")
            })
        }
        Command::Hom { action } => match action {
            HomCommand::Apply { map, at } => {
                let f = hom::load(map)?;
                let (source, target) = hom::groups(&f);
                let x = source.element(&parse_elem(at)?)?;
                let y = f.apply(&x)?;
                Ok(if as_json {
                    emit(&json::ApplyJson { source: source.to_string(), target: target.to_string(), at: x, image: y })
                } else {
                    format!("{}\n", text::elem(&y))
                })
            }
            HomCommand::Pullback { map, expr } => {
                let f = hom::load(map)?;
                let (source, target) = hom::groups(&f);
                let (g, e) = parse_set(expr, &target)?;
                if g.discrete_part() != target {
                    return Err(CliError::Usage(format!("expression prefix {g} differs from the map target {target}")));
                }
                let s = canonicalize(&target, &e)?;
                let pulled = f.pullback_set(&s)?;
                let expression = text::expr(&pulled.to_expr());
                if as_json {
                    let n = norm(pulled.indicator())?;
                    Ok(emit(&json::PullbackJson {
                        source: source.to_string(),
                        target: target.to_string(),
                        expression,
                        decomposition: json::graded(pulled.indicator(), &n),
                    }))
                } else {
                    Ok(format!("{expression}\n"))
                }
            }
        },
        Command::Amenable { group } => {
            let g = parse_group(group)?;
            let operator = is_operator_amenable(&g)?;
            let plain = is_amenable_algebra(&g)?;
            Ok(if as_json {
                emit(&json::AmenableJson { group: g.discrete_part().to_string(), operator_amenable: operator, amenable: plain })
            } else {
                format!("{operator}\n")
            })
        }
    }
}

/// Covering relations among `tags` as a DOT digraph, edges pointing up.
pub fn order_diagram(tags: &[TopologyTag]) -> String {
    let mut out = String::from("digraph tags {\n    rankdir=BT;\n");
    for t in tags {
        let _ = writeln!(out, "    \"{t}\";");
    }
    for &s in tags {
        for &t in tags {
            let below = |a: TopologyTag, b: TopologyTag| a != b && a.leq(b);
            if below(s, t) && !tags.iter().any(|&u| below(s, u) && below(u, t)) {
                let _ = writeln!(out, "    \"{s}\" -> \"{t}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}
