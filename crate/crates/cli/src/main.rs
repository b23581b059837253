use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cktrace::graph::{Graph, GraphDoc};
use cktrace::star::{
    check_edge_invariance, check_gauge, check_traciality, ck_additivity_check, classify,
    cylinder_measure_check, default_gram_family, gram_psd_check, Functional, FunctionalDoc,
    GaugeVerdict, Monomial, NormalForm, PulledBack, Suite, Verdict,
};
use cktrace::structure::{
    auto_gauge_criterion, emit_entry_set, is_tight, left_infinite_set, tighten_left, tighten_min,
    vertex_names, VertexSet,
};
use cktrace::tagging::{cyclic_support, validate_tag, CircleValue, Tag, TagValidation};
use cktrace::trace::{
    extreme_traces, lift_trace, validate_trace, violation_certificate, GraphTrace, TraceValidation,
};

const SCHEMA_VERSION: u32 = 1;
const GRAM_TOLERANCE: f64 = 1e-9;
const GRAM_FAMILY_SIZE: usize = 6;

#[derive(Parser)]
#[command(name = "cktrace")]
#[command(about = "Graph traces, tightenings and tracial states of graph C*-algebras")]
#[command(version)]
struct Cli {
    /// Indent the JSON report
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Structure of a graph: cycles, entries, tightness, cyclic classes
    Analyze { graph: PathBuf },

    /// Remove a saturated hereditary set to obtain a tight subgraph
    Tighten {
        graph: PathBuf,

        #[arg(long, value_enum, default_value = "min")]
        mode: Mode,
    },

    /// Extreme normalized traces of the minimal tightening, lifted back
    Traces { graph: PathBuf },

    /// Validate a trace document against a graph
    CheckTrace { graph: PathBuf, trace: PathBuf },

    /// Validate a tag document for a trace
    TagCheck {
        graph: PathBuf,
        trace: PathBuf,
        tag: PathBuf,
    },

    /// Evaluate a functional on one monomial "α|β"
    Eval {
        graph: PathBuf,
        functional: PathBuf,
        monomial: String,

        /// The functional lives on the minimal tightening; evaluate its pull-back
        #[arg(long)]
        tight: bool,
    },

    /// Run verification suites against a functional
    Verify {
        graph: PathBuf,
        functional: PathBuf,

        #[arg(long, default_value_t = 4)]
        max_len: usize,

        /// Comma-separated: traciality,invariance,gauge,gram,ck,cylinder
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<String>>,

        /// Treat a gauge witness as a failure
        #[arg(long)]
        expect_gauge: bool,

        /// The functional lives on the minimal tightening; verify its pull-back
        #[arg(long)]
        tight: bool,
    },

    /// Emit seeded random graph documents
    Fuzz {
        #[arg(long)]
        seed: u64,

        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Min,
    Left,
}

/// Input problems; these exit with status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(err: E) -> Self {
        InputError(err.to_string())
    }
}

struct Outcome {
    report: Value,
    ok: bool,
}

struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn new() -> Self {
        Inputs {
            digests: BTreeMap::new(),
        }
    }

    fn read(&mut self, role: &str, path: &Path) -> Result<String, InputError> {
        let bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.digests
            .insert(role.to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, InputError> {
        let text = self.read("graph", path)?;
        Graph::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    fn json<T: serde::de::DeserializeOwned>(
        &mut self,
        role: &str,
        path: &Path,
    ) -> Result<T, InputError> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn report(command: &str, inputs: &Inputs, results: Value, verdicts: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": inputs.digests,
        "results": results,
        "verdicts": verdicts,
    })
}

fn names(graph: &Graph, set: &VertexSet) -> Vec<String> {
    vertex_names(graph, set)
}

fn analyze(path: &Path) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(path)?;
    let (tight_graph, removed) = tighten_min(&g);
    let vertices: BTreeMap<&str, &str> = g
        .vertex_ids()
        .map(|v| {
            let kind = if g.is_regular(v) { "regular" } else { "source" };
            (g.vertex_name(v), kind)
        })
        .collect();
    let cycles: Vec<Value> = g
        .simple_cycles()
        .iter()
        .map(|c| {
            let entries: Vec<&str> = g
                .entries_of(c.path())
                .into_iter()
                .map(|f| g.edge_name(f))
                .collect();
            json!({"cycle": g.path_literal(c.path()), "entries": entries})
        })
        .collect();
    let classes: Vec<Vec<String>> = g
        .cyclic_structure()
        .classes()
        .iter()
        .map(|c| names(&g, &c.vertices))
        .collect();
    let tight_vertices: Vec<&str> = tight_graph
        .vertex_ids()
        .map(|v| tight_graph.vertex_name(v))
        .collect();
    let tight = is_tight(&g);
    let auto_gauge = auto_gauge_criterion(&g);
    let results = json!({
        "vertices": vertices,
        "simple_cycles": cycles,
        "tight": tight,
        "C_E": names(&g, &emit_entry_set(&g)),
        "left_infinite": names(&g, &left_infinite_set(&g)),
        "removed": names(&g, &removed),
        "E_tight": tight_vertices,
        "cyclic_classes": classes,
        "auto_gauge": auto_gauge,
    });
    let verdicts = json!({"tight": tight, "auto_gauge": auto_gauge});
    Ok(Outcome {
        report: report("analyze", &inputs, results, verdicts),
        ok: true,
    })
}

fn tighten(path: &Path, mode: Mode) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(path)?;
    let (sub, removed) = match mode {
        Mode::Min => tighten_min(&g),
        Mode::Left => tighten_left(&g),
    };
    let results = json!({
        "mode": match mode { Mode::Min => "min", Mode::Left => "left" },
        "removed": names(&g, &removed),
        "subgraph": sub.to_doc(),
    });
    Ok(Outcome {
        report: report(
            "tighten",
            &inputs,
            results,
            json!({"tight": is_tight(&sub)}),
        ),
        ok: true,
    })
}

fn traces(path: &Path) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(path)?;
    let (tight_graph, removed) = tighten_min(&g);
    let mut points = Vec::new();
    for t in extreme_traces(&tight_graph) {
        let lifted = lift_trace(&g, &removed, &t)?;
        points.push(json!({
            "values": serde_json::to_value(&lifted)?["values"].take(),
            "cyclic_support": names(&tight_graph, &cyclic_support(&tight_graph, &t)),
        }));
    }
    let results = json!({
        "removed": names(&g, &removed),
        "extreme_points": points,
    });
    let verdicts = json!({"trace_space_empty": points.is_empty()});
    Ok(Outcome {
        report: report("traces", &inputs, results, verdicts),
        ok: true,
    })
}

fn check_trace(graph: &Path, trace: &Path) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(graph)?;
    let t: GraphTrace = inputs.json("trace", trace)?;
    let validation = validate_trace(&g, &t)?;
    let results = match &validation {
        TraceValidation::Valid => json!({
            "valid": true,
            "norm": t.norm().to_string(),
        }),
        TraceValidation::Invalid(v) => {
            let certificate = violation_certificate(&g, &t)?.map(|c| {
                let value = c.pairing(&g, &t).map(|x| x.to_string()).unwrap_or_default();
                json!({
                    "tuple": c.render(&g).into_iter()
                        .map(|(x, p)| json!({"coefficient": x, "path": p}))
                        .collect::<Vec<_>>(),
                    "value": value,
                })
            });
            json!({
                "valid": false,
                "violation": {
                    "vertex": v.vertex,
                    "condition": format!("{:?}", v.condition).to_lowercase(),
                    "value": v.lhs.to_string(),
                    "inflow": v.rhs.to_string(),
                },
                "certificate": certificate,
            })
        }
    };
    let ok = validation.is_valid();
    Ok(Outcome {
        report: report("check-trace", &inputs, results, json!({"valid": ok})),
        ok,
    })
}

fn tag_check(graph: &Path, trace: &Path, tag: &Path) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(graph)?;
    let t: GraphTrace = inputs.json("trace", trace)?;
    let mu: Tag = inputs.json("tag", tag)?;
    if !validate_trace(&g, &t)?.is_valid() {
        return Err(InputError("trace is not a graph trace".into()));
    }
    let validation = validate_tag(&g, &t, &mu)?;
    let results = match &validation {
        TagValidation::Valid => json!({"valid": true}),
        TagValidation::DomainMismatch {
            missing,
            unexpected,
        } => json!({
            "valid": false,
            "reason": "domain",
            "missing": missing,
            "unexpected": unexpected,
            "cyclic_support": names(&g, &cyclic_support(&g, &t)),
        }),
        TagValidation::Inconsistent { class } => json!({
            "valid": false,
            "reason": "inconsistent",
            "class": class,
        }),
    };
    let ok = validation.is_valid();
    Ok(Outcome {
        report: report("tag-check", &inputs, results, json!({"valid": ok})),
        ok,
    })
}

/// A functional on the input graph, possibly pulled back from its tightening,
/// with its trace on the input graph.
struct Loaded {
    functional: Box<dyn FunctionalRef>,
    trace: GraphTrace,
}

/// Object-safe view used by the command layer.
trait FunctionalRef {
    fn eval_one(&self, x: &Monomial) -> CircleValue;
    fn traciality(&self, max_len: usize) -> Verdict;
    fn invariance(&self, max_len: usize) -> Verdict;
    fn gauge(&self, max_len: usize) -> GaugeVerdict;
    fn ck(&self, max_len: usize) -> Verdict;
    fn gram(&self, family: &[Monomial]) -> cktrace::Result<cktrace::star::GramReport>;
}

impl<F: Functional> FunctionalRef for F {
    fn eval_one(&self, x: &Monomial) -> CircleValue {
        self.eval(x)
    }

    fn traciality(&self, max_len: usize) -> Verdict {
        check_traciality(self, max_len)
    }

    fn invariance(&self, max_len: usize) -> Verdict {
        check_edge_invariance(self, max_len)
    }

    fn gauge(&self, max_len: usize) -> GaugeVerdict {
        check_gauge(self, max_len)
    }

    fn ck(&self, max_len: usize) -> Verdict {
        ck_additivity_check(self, max_len)
    }

    fn gram(&self, family: &[Monomial]) -> cktrace::Result<cktrace::star::GramReport> {
        gram_psd_check(self, family, GRAM_TOLERANCE)
    }
}

fn load_functional(
    inputs: &mut Inputs,
    g: &Graph,
    path: &Path,
    tight: bool,
) -> Result<Loaded, InputError> {
    let doc: FunctionalDoc = inputs.json("functional", path)?;
    if !tight {
        let f = doc.build(g)?;
        return Ok(Loaded {
            trace: f.trace().clone(),
            functional: Box::new(f),
        });
    }
    let (tight_graph, removed) = tighten_min(g);
    let mut restricted = GraphTrace::default();
    for (name, value) in doc.trace.values() {
        let v = g.vertex(name)?;
        if removed.contains(&v) {
            if *value != cktrace::rational::zero() {
                return Err(InputError(format!(
                    "trace is non-zero on removed vertex \"{name}\""
                )));
            }
        } else {
            restricted.set(name, value.clone());
        }
    }
    let inner = FunctionalDoc {
        trace: restricted.clone(),
        ..doc
    }
    .build(&tight_graph)?;
    let lifted = lift_trace(g, &removed, &restricted)?;
    Ok(Loaded {
        functional: Box::new(PulledBack::new(g, &removed, inner)?),
        trace: lifted,
    })
}

fn normal_form_json(g: &Graph, x: &Monomial) -> Value {
    match classify(g, x) {
        NormalForm::NonNormal => json!({"kind": "non-normal"}),
        NormalForm::Diagonal(p) => json!({"kind": "diagonal", "path": g.path_literal(&p)}),
        NormalForm::Cyclic {
            ray,
            seed,
            exponent,
        } => json!({
            "kind": "cyclic",
            "ray": g.path_literal(&ray),
            "seed": g.path_literal(&seed),
            "exponent": exponent,
        }),
    }
}

fn eval(
    graph: &Path,
    functional: &Path,
    monomial: &str,
    tight: bool,
) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(graph)?;
    let loaded = load_functional(&mut inputs, &g, functional, tight)?;
    let x = Monomial::parse(&g, monomial)?;
    let value = loaded.functional.eval_one(&x);
    let results = json!({
        "monomial": x.literal(&g),
        "degree": x.degree(),
        "normal_form": normal_form_json(&g, &x),
        "value": value,
    });
    Ok(Outcome {
        report: report("eval", &inputs, results, json!({})),
        ok: true,
    })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass { checked } => json!({"pass": true, "checked": checked}),
        Verdict::Fail(c) => json!({
            "pass": false,
            "counterexample": {
                "monomials": c.monomials,
                "lhs": c.lhs,
                "rhs": c.rhs,
            },
        }),
    }
}

fn verify(
    graph: &Path,
    functional: &Path,
    max_len: usize,
    suites: Option<Vec<String>>,
    expect_gauge: bool,
    tight: bool,
) -> Result<Outcome, InputError> {
    let mut inputs = Inputs::new();
    let g = inputs.graph(graph)?;
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(list) => list
            .iter()
            .map(|s| s.parse())
            .collect::<cktrace::Result<_>>()?,
    };
    let loaded = load_functional(&mut inputs, &g, functional, tight)?;
    let f = &loaded.functional;
    let mut results = serde_json::Map::new();
    let mut verdicts = serde_json::Map::new();
    let mut ok = true;
    for suite in suites {
        let (detail, pass) = match suite {
            Suite::Traciality => {
                let v = f.traciality(max_len);
                (verdict_json(&v), v.passed())
            }
            Suite::Invariance => {
                let v = f.invariance(max_len);
                (verdict_json(&v), v.passed())
            }
            Suite::Ck => {
                let v = f.ck(max_len);
                (verdict_json(&v), v.passed())
            }
            Suite::Cylinder => {
                let v = cylinder_measure_check(&g, &loaded.trace, max_len)?;
                (verdict_json(&v), v.passed())
            }
            Suite::Gauge => match f.gauge(max_len) {
                GaugeVerdict::Invariant { checked } => (
                    json!({"pass": true, "gauge_invariant": true, "checked": checked}),
                    true,
                ),
                GaugeVerdict::Witness {
                    monomial,
                    degree,
                    value,
                } => (
                    json!({
                        "pass": !expect_gauge,
                        "gauge_invariant": false,
                        "informational": !expect_gauge,
                        "witness": {"monomial": monomial, "degree": degree, "value": value},
                    }),
                    !expect_gauge,
                ),
            },
            Suite::Gram => {
                let family = default_gram_family(&g, GRAM_FAMILY_SIZE);
                let r = f.gram(&family)?;
                let literals: Vec<String> = family.iter().map(|x| x.literal(&g)).collect();
                (
                    json!({
                        "pass": r.psd,
                        "family": literals,
                        "min_eigenvalue": r.min_eigenvalue,
                        "tolerance": GRAM_TOLERANCE,
                    }),
                    r.psd,
                )
            }
        };
        ok &= pass;
        verdicts.insert(suite.name().to_string(), json!(pass));
        results.insert(suite.name().to_string(), detail);
    }
    results.insert("max_len".into(), json!(max_len));
    Ok(Outcome {
        report: report(
            "verify",
            &inputs,
            Value::Object(results),
            Value::Object(verdicts),
        ),
        ok,
    })
}

fn fuzz(seed: u64, count: usize) -> Outcome {
    let graphs: Vec<GraphDoc> = cktrace::fuzz::battery(seed, count)
        .iter()
        .map(Graph::to_doc)
        .collect();
    let results = json!({"seed": seed, "graphs": graphs});
    Outcome {
        report: report("fuzz", &Inputs::new(), results, json!({})),
        ok: true,
    }
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    match cli.command {
        Commands::Analyze { graph } => analyze(&graph),
        Commands::Tighten { graph, mode } => tighten(&graph, mode),
        Commands::Traces { graph } => traces(&graph),
        Commands::CheckTrace { graph, trace } => check_trace(&graph, &trace),
        Commands::TagCheck { graph, trace, tag } => tag_check(&graph, &trace, &tag),
        Commands::Eval {
            graph,
            functional,
            monomial,
            tight,
        } => eval(&graph, &functional, &monomial, tight),
        Commands::Verify {
            graph,
            functional,
            max_len,
            suite,
            expect_gauge,
            tight,
        } => verify(&graph, &functional, max_len, suite, expect_gauge, tight),
        Commands::Fuzz { seed, count } => Ok(fuzz(seed, count)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli) {
        Ok(outcome) => {
            let text = if pretty {
                serde_json::to_string_pretty(&outcome.report)
            } else {
                serde_json::to_string(&outcome.report)
            }
            .expect("reports serialize");
            println!("{text}");
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
