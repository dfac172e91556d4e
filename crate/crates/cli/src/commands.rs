//! Command-line verbs. Each verb produces a JSON document and a pass flag.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlcluster::autpoly::{nagata, nagata_delta, nagata_inverse, PolyEndo};
use hlcluster::clusterauto::{automorphism_group, matches_expr, GroupReport};
use hlcluster::exactalg::Coef;
use hlcluster::invariants::aut_cl_table;
use hlcluster::presentations::{a2_presentation, a3_presentation, verify_presentation, Verification};
use hlcluster::quiver::{DynkinType, Quiver};
use hlcluster::seeds::{census, exchange_graph, DEFAULT_BUDGET};
use serde_json::{json, Value};

use crate::session::{Descriptor, SessionError, SessionState, VertexRef};

#[derive(Debug, Parser)]
#[command(name = "hlcluster", version, about = "Exact cluster algebra workbench")]
pub struct Cli {
    /// Write JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// A Dynkin type with optional level, or a quiver JSON file.
#[derive(Debug, Clone, Args)]
pub struct Target {
    /// Dynkin family: A, D or E.
    #[arg(value_name = "TYPE", required_unless_present = "quiver")]
    pub family: Option<String>,
    #[arg(value_name = "RANK", required_unless_present = "quiver")]
    pub rank: Option<usize>,
    /// Level; without it the plain Dynkin quiver is used.
    #[arg(value_name = "L")]
    pub l: Option<usize>,
    /// Read a quiver JSON file instead of a Dynkin type.
    #[arg(long, conflicts_with_all = ["family", "rank", "l"])]
    pub quiver: Option<PathBuf>,
    /// Specialize frozen variables to 1 and drop their vertices.
    #[arg(long)]
    pub principal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    All,
    A2,
    A3,
    Nagata,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the quiver of a Dynkin type at a level.
    Build(Target),
    /// Mutate the initial seed along a path of vertices.
    Mutate {
        #[command(flatten)]
        target: Target,
        /// Vertex label, or 0-based index when no label matches. Repeatable.
        #[arg(long = "at", value_name = "VERTEX")]
        at: Vec<String>,
    },
    /// Enumerate the exchange graph and count clusters and variables.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Cluster automorphism group of the (principal part of the) seed.
    Autgroup {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Invariant report for a Dynkin type and level.
    Report {
        #[arg(value_name = "TYPE")]
        family: String,
        #[arg(value_name = "RANK")]
        rank: usize,
        #[arg(value_name = "L", default_value_t = 1)]
        l: usize,
    },
    /// Check the shipped presentations and the Nagata identities.
    Verify {
        #[arg(value_enum, default_value_t = VerifyWhat::All)]
        what: VerifyWhat,
        /// Nagata parameter, an integer or fraction such as 1/2.
        #[arg(long = "a", value_name = "A", default_value = "1", allow_hyphen_values = true)]
        a: String,
    },
    /// Serve the JSON API on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// Computation failed; exit code 1.
    Failure(String),
}

impl From<SessionError> for CliError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Seed(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Result of a verb: the JSON document and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, passed: true }
    }
}

fn descriptor(t: &Target) -> Result<Descriptor, CliError> {
    if let Some(path) = &t.quiver {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let quiver: Quiver = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let quiver = if t.principal { quiver.mutable_part() } else { quiver };
        return Ok(Descriptor::Quiver { quiver });
    }
    let (Some(family), Some(rank)) = (&t.family, t.rank) else {
        return Err(CliError::Usage("expected TYPE RANK [L] or --quiver".into()));
    };
    Ok(Descriptor::dynkin(family, rank, t.l, t.principal))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn parse_coef(s: &str) -> Result<Coef, CliError> {
    let c: Coef = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not a rational number: {s}")))?;
    if c == Coef::from_integer(0.into()) {
        return Err(CliError::Usage("the Nagata parameter must be nonzero".into()));
    }
    Ok(c)
}

fn verify_nagata(a: &Coef) -> Verification {
    let mut trace = Vec::new();
    let passed = (|| -> Result<bool, String> {
        let f = nagata(a).map_err(|e| e.to_string())?;
        let g = nagata_inverse(a).map_err(|e| e.to_string())?;
        for (i, p) in f.images().iter().enumerate() {
            trace.push(format!("{} -> {p}", f.vars().names()[i]));
        }
        let fg = PolyEndo::compose(&f, &g).map_err(|e| e.to_string())?;
        let gf = PolyEndo::compose(&g, &f).map_err(|e| e.to_string())?;
        trace.push(format!("compose with inverse is identity: {}", fg.is_identity() && gf.is_identity()));
        let delta = nagata_delta(f.vars(), a);
        let image = f.apply(&delta).map_err(|e| e.to_string())?;
        trace.push(format!("Δ = {delta} maps to {image}"));
        Ok(fg.is_identity() && gf.is_identity() && image == delta)
    })()
    .unwrap_or_else(|e| {
        trace.push(e);
        false
    });
    Verification {
        name: "Nagata",
        passed,
        trace,
        note: "exact symbolic composition",
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Build(t) => Ok(Outcome::ok(to_value(&descriptor(t)?.quiver()?))),
        Command::Mutate { target, at } => {
            let mut s = SessionState::new(descriptor(target)?)?;
            let mut steps = Vec::new();
            for v in at {
                steps.push(to_value(&s.mutate(&VertexRef::parse(v))?));
            }
            Ok(Outcome::ok(json!({ "seed": to_value(s.current()), "steps": steps })))
        }
        Command::Enumerate { target, budget } => {
            let seed = descriptor(target)?.seed()?;
            let g = exchange_graph(&seed, *budget).map_err(SessionError::from)?;
            if !g.is_complete() {
                return Ok(Outcome {
                    json: json!({ "status": g.status, "explored": g.len() }),
                    passed: false,
                });
            }
            let c = census(&g).map_err(SessionError::from)?;
            let mut v = json!({ "status": g.status });
            for (key, value) in to_value(&c).as_object().into_iter().flatten() {
                v[key] = value.clone();
            }
            v["graph"] = to_value(&g);
            Ok(Outcome::ok(v))
        }
        Command::Autgroup { target, budget } => {
            let desc = descriptor(target)?;
            let seed = desc.seed()?.specialize();
            let (group, c) = automorphism_group(&seed, *budget)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            let mut v = to_value(&GroupReport::new(&group));
            v["variables"] = json!(c.variable_count);
            if let Some(t) = principal_dynkin(&desc) {
                let table = aut_cl_table(t);
                v["table"] = json!(table.to_string());
                v["matches_table"] = json!(matches_expr(&group, &table));
            }
            Ok(Outcome::ok(v))
        }
        Command::Report { family, rank, l } => {
            let r = Descriptor::dynkin(family, *rank, Some(*l), false).report()?;
            Ok(Outcome::ok(to_value(&r)))
        }
        Command::Verify { what, a } => {
            let mut checks = Vec::new();
            if matches!(what, VerifyWhat::All | VerifyWhat::A2) {
                checks.push(verify_presentation(&a2_presentation()));
            }
            if matches!(what, VerifyWhat::All | VerifyWhat::A3) {
                checks.push(verify_presentation(&a3_presentation()));
            }
            if matches!(what, VerifyWhat::All | VerifyWhat::Nagata) {
                checks.push(verify_nagata(&parse_coef(a)?));
            }
            let passed = checks.iter().all(|c| c.passed);
            Ok(Outcome {
                json: json!({ "passed": passed, "checks": to_value(&checks) }),
                passed,
            })
        }
        Command::Serve { .. } => Err(CliError::Usage("serve is handled by the binary".into())),
    }
}

/// Dynkin type of the principal part, when the table covers it.
fn principal_dynkin(d: &Descriptor) -> Option<DynkinType> {
    match d {
        Descriptor::Dynkin { l: None, .. } => d.dynkin_level().map(|(t, _)| t),
        Descriptor::Dynkin { l: Some(l), .. } => {
            let (t, _) = d.dynkin_level()?;
            hlcluster::invariants::principal_type(t, *l)
        }
        Descriptor::Quiver { .. } => None,
    }
}
