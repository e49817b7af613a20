mod report;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use plumbcalc::blowup::{blow_down, blow_up, parse_centers, BlowupCenter, BlowupPath};
use plumbcalc::canonical::{
    canonical_orders, chern_dot_zk, h1_dimension, h1_dimension_unrestricted,
};
use plumbcalc::graph::parse_graph;
use plumbcalc::ordersets::{
    conductor, minimal_adapted_test, valuative_condition, CanonicalVector, OrderSemigroup, OrderSet,
};
use plumbcalc::reptype::classify;
use plumbcalc::special::{
    check_special_graph, entries_to_dot, essential_family_witness, mckay_search, summand_count,
};
use plumbcalc::{Error, PlumbingGraph, Rational, VertexId};

use report::{
    canonical_json, canonical_text, digest, ordered, yes_no, Failure, Format, Outcome, Report,
};

#[derive(Parser)]
#[command(
    name = "plumbcalc",
    version,
    about = "Exact invariants of plumbing graphs"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph and report its pairing and definiteness.
    Check { graph: PathBuf },
    /// Orders of the Gorenstein form and the canonical cycle.
    Canonical { graph: PathBuf },
    /// dim H¹ of the module whose first Chern class is given by the arrows.
    H1 {
        graph: PathBuf,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        pg: u32,
        #[arg(long, default_value_t = 0)]
        defect: u32,
        /// Evaluate the formula even if the resolution is not small.
        #[arg(long)]
        allow_non_small: bool,
    },
    /// Blow up points given as `free:<v>` or `sat:<u>-<v>`.
    Blowup {
        graph: PathBuf,
        #[arg(long = "at")]
        at: Vec<String>,
        /// File with one center per line, applied before any `--at`.
        #[arg(long)]
        path: Option<PathBuf>,
        /// Contract these (−1) curves afterwards, in order.
        #[arg(long = "down")]
        down: Vec<String>,
    },
    /// Check the conditions for the resolution graph of a special module.
    SpecialCheck {
        graph: PathBuf,
        /// Fail with a domain error unless the graph passes.
        #[arg(long)]
        require: bool,
    },
    /// Divisors of order zero within a bounded number of blow-ups.
    Mckay {
        graph: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Report moduli dimensions.
        #[arg(long)]
        dims: bool,
        /// Include a DOT drawing of the blow-up tree.
        #[arg(long)]
        dot: bool,
    },
    /// A family of special modules of dimension at least `--dim`.
    Witness {
        graph: PathBuf,
        #[arg(long)]
        dim: u32,
    },
    /// Cohen-Macaulay representation type.
    Reptype { graph: PathBuf },
    /// Sets of orders in ℕ^l.
    Orderset {
        #[command(subcommand)]
        op: OrderOp,
    },
    /// DOT drawing of a graph, labels carrying genus, euler and q.
    Dot { graph: PathBuf },
}

#[derive(Args, Clone)]
struct Shape {
    /// Number of branches l.
    #[arg(long, default_value_t = 1)]
    branches: usize,
    /// Search box, one bound for every axis or one per axis.
    #[arg(long = "box")]
    bound: Option<String>,
}

#[derive(Subcommand)]
enum OrderOp {
    /// Conductor of a set given by semigroup and module generators.
    Cond {
        #[arg(long)]
        semigroup: String,
        #[arg(long, default_value = "")]
        gens: String,
        #[command(flatten)]
        shape: Shape,
    },
    /// Members inside the box.
    Realize {
        #[arg(long)]
        semigroup: String,
        #[arg(long, default_value = "")]
        gens: String,
        #[command(flatten)]
        shape: Shape,
    },
    /// Whether A lies in d + C. Sets are written `<semigroup>/<generators>`.
    Valuative {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "C")]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        shape: Shape,
    },
    /// Compare cond(C) with −d.
    Adapted {
        #[arg(long = "C")]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[command(flatten)]
        shape: Shape,
    },
}

type Run = Result<Outcome, Failure>;

struct Inputs {
    bytes: Vec<Vec<u8>>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input {
            kind: "Io",
            message: format!("{}: {e}", path.display()),
        })?;
        self.bytes.push(bytes.clone());
        String::from_utf8(bytes).map_err(|_| Failure::Input {
            kind: "Io",
            message: format!("{}: not UTF-8", path.display()),
        })
    }

    fn graph(&mut self, path: &Path) -> Result<PlumbingGraph, Failure> {
        let text = self.read(path)?;
        Ok(parse_graph(&text)?)
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let mut inputs = Inputs { bytes: Vec::new() };
    let outcome = dispatch(cli.command, &mut inputs);
    let command: Vec<String> = argv.into_iter().skip(1).collect();
    if inputs.bytes.is_empty() {
        inputs.bytes.push(command.join("\0").into_bytes());
    }
    let input_digest = digest(&inputs.bytes);

    let code = match &outcome {
        Ok(_) => 0,
        Err(f) => f.exit_code(),
    };
    match cli.format {
        Format::Structured => {
            let report = match outcome {
                Ok(o) => Report {
                    command,
                    input_digest,
                    status: "ok",
                    result: o.result,
                    error: None,
                    warnings: o.warnings,
                },
                Err(f) => Report {
                    command,
                    input_digest,
                    status: "error",
                    result: Value::Null,
                    error: Some(f.body()),
                    warnings: Vec::new(),
                },
            };
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            // A closed pipe is not an error of the computation.
            let _ = writeln!(io::stdout(), "{json}");
        }
        Format::Text => match outcome {
            Ok(o) => {
                let _ = write!(io::stdout(), "{}", o.text);
                for w in o.warnings {
                    eprintln!("warning: {w}");
                }
            }
            Err(f) => {
                let body = f.body();
                eprintln!("error ({}): {}", body.kind, body.message);
            }
        },
    }
    ExitCode::from(code)
}

fn dispatch(command: Command, inputs: &mut Inputs) -> Run {
    match command {
        Command::Check { graph } => check(inputs.graph(&graph)?),
        Command::Canonical { graph } => canonical(inputs.graph(&graph)?),
        Command::H1 {
            graph,
            rank,
            pg,
            defect,
            allow_non_small,
        } => h1(inputs.graph(&graph)?, rank, pg, defect, allow_non_small),
        Command::Blowup {
            graph,
            at,
            path,
            down,
        } => {
            let g = inputs.graph(&graph)?;
            let mut centers = match path {
                Some(p) => parse_centers(&inputs.read(&p)?)?,
                None => Vec::new(),
            };
            for token in &at {
                centers.push(token.parse()?);
            }
            let down = down
                .iter()
                .map(|v| VertexId::new(v.as_str()))
                .collect::<Result<Vec<_>, _>>()?;
            blowup(g, centers, &down)
        }
        Command::SpecialCheck { graph, require } => special(inputs.graph(&graph)?, require),
        Command::Mckay {
            graph,
            depth,
            dims,
            dot,
        } => mckay(inputs.graph(&graph)?, depth, dims, dot),
        Command::Witness { graph, dim } => witness(inputs.graph(&graph)?, dim),
        Command::Reptype { graph } => reptype(inputs.graph(&graph)?),
        Command::Orderset { op } => orderset(op),
        Command::Dot { graph } => dot(inputs.graph(&graph)?),
    }
}

fn check(g: PlumbingGraph) -> Run {
    let m = g.intersection_matrix();
    let nd = g.is_negative_definite();
    let result = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "arrows": g.total_arrows(),
        "ids": m.ids().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "matrix": m.entries(),
        "negative_definite": nd,
        "canonical_form": g.to_string(),
    });
    let text = format!(
        "{} vertices, {} edges, {} arrows\nnegative definite: {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.total_arrows(),
        yes_no(nd)
    );
    Ok(Outcome::new(result, text))
}

fn canonical(g: PlumbingGraph) -> Run {
    let data = canonical_orders::<Rational>(&g)?;
    Ok(Outcome::new(canonical_json(&data), canonical_text(&data)))
}

fn h1(g: PlumbingGraph, rank: u32, pg: u32, defect: u32, allow_non_small: bool) -> Run {
    let data = canonical_orders::<Rational>(&g)?;
    let value = if allow_non_small {
        h1_dimension_unrestricted(&g, &data, rank, pg, defect)?
    } else {
        h1_dimension(&g, &data, rank, pg, defect)?
    };
    let chern = chern_dot_zk(&g, &data);
    let mut result = canonical_json(&data);
    result["h1"] = json!(value);
    result["chern_dot_zk"] = json!(chern.to_string());
    result["rank"] = json!(rank);
    result["pg"] = json!(pg);
    result["defect"] = json!(defect);
    let text = format!(
        "h1 = {value}  (r·pg = {}, c1·Z_K = {chern}, d = {defect})\n{}",
        rank * pg,
        canonical_text(&data)
    );
    let out = Outcome::new(result, text);
    Ok(if allow_non_small && !data.is_small() {
        out.warn("resolution is not small; the value is the formula, not a proven dimension")
    } else {
        out
    })
}

fn blowup(g: PlumbingGraph, centers: Vec<BlowupCenter>, down: &[VertexId]) -> Run {
    let mut data = canonical_orders::<Rational>(&g)?;
    let mut current = g.clone();
    let mut created = Vec::new();
    for c in &centers {
        let (next, next_data, new) = blow_up(&current, &data, c)?;
        current = next;
        data = next_data;
        created.push(new.to_string());
    }
    let path = BlowupPath::new(Arc::new(g), centers)?;
    for v in down {
        current = blow_down(&current, v)?;
    }
    if !down.is_empty() {
        data = canonical_orders::<Rational>(&current)?;
    }
    let mut result = canonical_json(&data);
    result["graph"] = json!(current.to_string());
    result["path"] = json!(path.to_string());
    result["created"] = json!(created);
    result["contracted"] = json!(ids(down));
    let mut text = current.to_string();
    for line in canonical_text(&data).lines() {
        text.push_str(&format!("# {line}\n"));
    }
    Ok(Outcome::new(result, text))
}

fn ids(v: &[plumbcalc::VertexId]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn special(g: PlumbingGraph, require: bool) -> Run {
    let r = check_special_graph::<Rational>(&g);
    if require && !r.verdict {
        return Err(Error::NotSpecialGraph.into());
    }
    let summands = summand_count(&g).ok();
    let mut result = json!({
        "verdict": r.verdict,
        "indecomposable": r.indecomposable,
        "negative_definite": r.negative_definite,
        "numerically_gorenstein": r.numerically_gorenstein,
        "minimal_good_violations": ids(&r.minimal_good_violations),
        "zero_coefficient_violations": ids(&r.zero_coefficient_violations),
        "summands": summands,
    });
    let mut text = format!(
        "special: {}\nnegative definite: {}\nnumerically Gorenstein: {}\n",
        yes_no(r.verdict),
        yes_no(r.negative_definite),
        yes_no(r.numerically_gorenstein)
    );
    if !r.minimal_good_violations.is_empty() {
        text.push_str(&format!(
            "(-1) curves without arrow and with at most two neighbors: {}\n",
            ids(&r.minimal_good_violations).join(" ")
        ));
    }
    if !r.zero_coefficient_violations.is_empty() {
        text.push_str(&format!(
            "arrows on components with nonzero canonical coefficient: {}\n",
            ids(&r.zero_coefficient_violations).join(" ")
        ));
    }
    if let Some(n) = summands {
        text.push_str(&format!("indecomposable summands: {n}\n"));
    }
    if let Some(data) = &r.canonical {
        result["canonical"] = canonical_json(data);
        text.push_str(&canonical_text(data));
    }
    Ok(Outcome::new(result, text))
}

fn mckay(g: PlumbingGraph, depth: usize, dims: bool, dot: bool) -> Run {
    let entries = mckay_search::<Rational>(&g, depth)?;
    let base = canonical_orders::<Rational>(&g)?;
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let mut row = json!({
                "path": e.path.to_string(),
                "divisor": e.divisor.to_string(),
                "canonical_order": e.canonical_order.to_string(),
                "depth": e.depth,
            });
            if dims {
                row["moduli_dimension"] = json!(e.moduli_dimension);
            }
            row
        })
        .collect();
    let mut result = json!({
        "depth": depth,
        "count": entries.len(),
        "entries": rows,
        "base": canonical_json(&base),
    });
    let mut text = format!(
        "{} divisors of order zero within depth {depth}\n",
        entries.len()
    );
    for e in &entries {
        let path = if e.path.is_empty() {
            "(base)".to_string()
        } else {
            e.path.to_string()
        };
        if dims {
            text.push_str(&format!(
                "{}  {path}  dim={}\n",
                e.divisor, e.moduli_dimension
            ));
        } else {
            text.push_str(&format!("{}  {path}\n", e.divisor));
        }
    }
    if dims {
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &entries {
            *histogram.entry(e.moduli_dimension).or_default() += 1;
        }
        result["max_moduli_dimension"] = json!(entries.iter().map(|e| e.moduli_dimension).max());
        result["dimension_counts"] = json!(histogram
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<_, _>>());
    }
    if dot {
        let drawing = entries_to_dot(&entries);
        result["dot"] = json!(drawing);
        text.push_str(&drawing);
    }
    let out = Outcome::new(result, text);
    Ok(if entries.iter().any(|e| e.depth > 0) {
        out.warn("entries are distinct paths; different paths may define the same divisor")
    } else {
        out
    })
}

fn witness(g: PlumbingGraph, dim: u32) -> Run {
    let found = essential_family_witness::<Rational>(&g, dim)?;
    let data = canonical_orders::<Rational>(&g)?;
    let mut result = json!({ "dim": dim, "found": found.is_some(), "base": canonical_json(&data) });
    let text = match &found {
        Some(p) => {
            result["path"] = json!(p.to_string());
            result["divisor"] = json!(p.last_created().map(ToString::to_string));
            result["moduli_dimension"] = json!(p.free_count());
            format!(
                "family of dimension {} at {}\n{}\n",
                p.free_count(),
                p.last_created()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                p
            )
        }
        None => format!("no family of dimension {dim} found within the search bound\n"),
    };
    Ok(Outcome::new(result, text))
}

fn reptype(g: PlumbingGraph) -> Run {
    let c = classify::<Rational>(&g)?;
    let result = json!({
        "rep_type": c.rep_type.to_string(),
        "minimal_model": c.minimal_model.to_string(),
        "q": ordered(c.canonical.orders()),
    });
    let q: Vec<String> = c
        .canonical
        .orders()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    Ok(Outcome::new(
        result,
        format!("{}\nq: {}\n", c.rep_type, q.join(" ")),
    ))
}

fn dot(g: PlumbingGraph) -> Run {
    let data = canonical_orders::<Rational>(&g).ok();
    let drawing = g.to_dot(|id| {
        data.as_ref()
            .and_then(|d| d.order(id))
            .map(|q| format!("q={q}"))
    });
    let out = Outcome::new(json!({ "dot": drawing }), drawing.clone());
    Ok(if data.is_none() {
        out.warn("graph is not negative definite; labels omit q")
    } else {
        out
    })
}

fn parse_vectors(text: &str, l: usize) -> Result<Vec<Vec<u32>>, Failure> {
    let bad = |t: &str| Failure::usage(format!("invalid order vector `{t}`"));
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if l == 1 {
        return text
            .split([',', ';'])
            .map(|t| t.trim().parse().map(|x| vec![x]).map_err(|_| bad(t)))
            .collect();
    }
    text.split(';')
        .map(|v| {
            let coords: Vec<u32> = v
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad(v)))
                .collect::<Result<_, _>>()?;
            if coords.len() != l {
                return Err(bad(v));
            }
            Ok(coords)
        })
        .collect()
}

fn parse_shift(text: &str, l: usize) -> Result<CanonicalVector, Failure> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("invalid canonical vector `{text}`")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != l {
        return Err(Failure::usage(format!(
            "canonical vector `{text}` needs {l} entries"
        )));
    }
    Ok(CanonicalVector(coords))
}

fn order_set(semigroup: &str, gens: &str, shape: &Shape) -> Result<OrderSet, Failure> {
    let l = shape.branches;
    let s = OrderSemigroup::new(l, parse_vectors(semigroup, l)?)?;
    let mut g = parse_vectors(gens, l)?;
    if g.is_empty() {
        g.push(vec![0; l]);
    }
    let set = OrderSet::new(s, g)?;
    match &shape.bound {
        None => Ok(set),
        Some(b) => {
            let parts: Vec<u32> = b
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Failure::usage(format!("invalid box `{b}`")))
                })
                .collect::<Result<_, _>>()?;
            let bound = if parts.len() == 1 {
                vec![parts[0]; l]
            } else {
                parts
            };
            Ok(set.with_box(bound)?)
        }
    }
}

fn parse_set(text: &str, shape: &Shape) -> Result<OrderSet, Failure> {
    let (s, g) = text.split_once('/').ok_or_else(|| {
        Failure::usage(format!(
            "expected `<semigroup>/<generators>`, found `{text}`"
        ))
    })?;
    order_set(s, g, shape)
}

fn vec_json(v: &[u32]) -> Value {
    json!(v)
}

fn set_json(set: &OrderSet) -> Value {
    json!({
        "branches": set.branches(),
        "semigroup": set.ambient().generators(),
        "generators": set.generators(),
        "box": set.bound(),
    })
}

fn orderset(op: OrderOp) -> Run {
    match op {
        OrderOp::Cond {
            semigroup,
            gens,
            shape,
        } => {
            let set = order_set(&semigroup, &gens, &shape)?;
            let c = conductor(&set)?;
            let text = format!("conductor: {}\n", join(&c));
            Ok(Outcome::new(
                json!({ "set": set_json(&set), "conductor": vec_json(&c) }),
                text,
            ))
        }
        OrderOp::Realize {
            semigroup,
            gens,
            shape,
        } => {
            let set = order_set(&semigroup, &gens, &shape)?;
            let members = set.realize().members();
            let text: String = members.iter().map(|m| format!("{}\n", join(m))).collect();
            Ok(Outcome::new(
                json!({ "set": set_json(&set), "members": members }),
                text,
            ))
        }
        OrderOp::Valuative { a, c, d, shape } => {
            let a = parse_set(&a, &shape)?;
            let c = parse_set(&c, &shape)?;
            let d = parse_shift(&d, shape.branches)?;
            let holds = valuative_condition(&a, &c, &d)?;
            Ok(Outcome::new(
                json!({ "A": set_json(&a), "C": set_json(&c), "d": d.0, "holds": holds }),
                format!(
                    "valuative condition: {}\n",
                    if holds { "holds" } else { "fails" }
                ),
            ))
        }
        OrderOp::Adapted { c, d, shape } => {
            let c = parse_set(&c, &shape)?;
            let d = parse_shift(&d, shape.branches)?;
            let verdict = minimal_adapted_test(&c, &d)?;
            let cond = conductor(&c)?;
            Ok(Outcome::new(
                json!({ "C": set_json(&c), "d": d.0, "conductor": cond, "verdict": verdict.to_string() }),
                format!(
                    "{verdict}\nconductor: {}  -d: {}\n",
                    join(&cond),
                    d.negated()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            ))
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
