//! Resolution graphs of special reflexive modules and their enumeration over
//! blow-up trees.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::blowup::{blow_up, is_contractible, BlowupCenter, BlowupPath};
use crate::canonical::{canonical_orders, CanonicalData};
use crate::error::{Error, Result};
use crate::graph::{PlumbingGraph, VertexId};
use crate::scalar::Scalar;

/// Outcome of checking the three graph conditions for special modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialReport<T> {
    pub negative_definite: bool,
    pub numerically_gorenstein: bool,
    /// Rational (−1) vertices with at most two neighbors and no arrow.
    pub minimal_good_violations: Vec<VertexId>,
    /// Arrowed vertices whose canonical cycle coefficient is nonzero.
    pub zero_coefficient_violations: Vec<VertexId>,
    pub verdict: bool,
    pub indecomposable: bool,
    /// Present whenever the graph is negative definite.
    pub canonical: Option<CanonicalData<T>>,
}

pub fn check_special_graph<T: Scalar>(g: &PlumbingGraph) -> SpecialReport<T> {
    let canonical = canonical_orders::<T>(g).ok();
    let negative_definite = canonical.is_some();
    let numerically_gorenstein = canonical
        .as_ref()
        .is_some_and(CanonicalData::is_numerically_gorenstein);

    let minimal_good_violations: Vec<VertexId> = g
        .vertices()
        .filter(|(id, v)| {
            v.genus == 0 && v.euler == -1 && g.neighbors(id).len() <= 2 && g.arrows(id) == 0
        })
        .map(|(id, _)| id.clone())
        .collect();

    let zero_coefficient_violations: Vec<VertexId> = match &canonical {
        Some(data) => g
            .arrow_map()
            .keys()
            .filter(|id| data.cycle_coefficient(id).is_some_and(|z| !z.is_zero()))
            .cloned()
            .collect(),
        None => Vec::new(),
    };

    let verdict = negative_definite
        && numerically_gorenstein
        && minimal_good_violations.is_empty()
        && zero_coefficient_violations.is_empty();
    SpecialReport {
        negative_definite,
        numerically_gorenstein,
        minimal_good_violations,
        zero_coefficient_violations,
        verdict,
        indecomposable: verdict && g.total_arrows() == 1,
        canonical,
    }
}

/// Number of indecomposable summands (without free factors) of the special
/// module with resolution graph `g`: one per arrow.
pub fn summand_count(g: &PlumbingGraph) -> Result<u32> {
    if !check_special_graph::<num_rational::BigRational>(g).verdict {
        return Err(Error::NotSpecialGraph);
    }
    Ok(g.total_arrows())
}

/// A divisor over the base on which the Gorenstein form has neither a zero
/// nor a pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McKayEntry<T> {
    /// Empty for a component of the base graph.
    pub path: BlowupPath,
    pub divisor: VertexId,
    pub canonical_order: T,
    pub moduli_dimension: usize,
    pub depth: usize,
}

/// Free infinitely near points each contribute one modulus; satellite
/// points are rigid.
pub fn moduli_dimension(path: &BlowupPath) -> usize {
    path.free_count()
}

fn check_search_base<T: Scalar>(g: &PlumbingGraph) -> Result<CanonicalData<T>> {
    let data = canonical_orders::<T>(g)?;
    if !data.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    if let Some(v) = g
        .vertex_ids()
        .find(|v| g.arrows(v) == 0 && is_contractible(g, v))
    {
        return Err(Error::NotMinimal(v.clone()));
    }
    Ok(data)
}

/// Whether a component created within `remaining` further blow-ups can have
/// order exactly zero.
///
/// New orders are bounded below by `1 + 2·min` and above by
/// `1 + max + max(max, 0)`; a zero needs a current pole and an upper bound
/// that reaches zero.
fn may_create_zero<T: Scalar>(data: &CanonicalData<T>, remaining: usize) -> bool {
    let (Some(min), Some(max)) = (data.min_order(), data.max_order()) else {
        return false;
    };
    if !min.is_negative() || remaining == 0 {
        return false;
    }
    let mut upper = max.clone();
    for _ in 0..remaining {
        let next = T::one() + upper.clone() + upper.clone().max(T::zero());
        if !next.is_negative() {
            return true;
        }
        upper = upper.max(next);
    }
    false
}

struct SearchState<T> {
    graph: PlumbingGraph,
    data: CanonicalData<T>,
    centers: Vec<BlowupCenter>,
    created: Vec<VertexId>,
}

fn explore<T: Scalar>(
    base: &Arc<PlumbingGraph>,
    state: &SearchState<T>,
    max_depth: usize,
    out: &mut Vec<McKayEntry<T>>,
) {
    if !may_create_zero(&state.data, max_depth - state.centers.len()) {
        return;
    }
    for c in BlowupCenter::all_on(&state.graph) {
        visit_child(base, state, c, max_depth, out);
    }
}

fn visit_child<T: Scalar>(
    base: &Arc<PlumbingGraph>,
    parent: &SearchState<T>,
    c: BlowupCenter,
    max_depth: usize,
    out: &mut Vec<McKayEntry<T>>,
) {
    let (graph, data, new) =
        blow_up(&parent.graph, &parent.data, &c).expect("centers enumerated from the graph");
    let mut centers = parent.centers.clone();
    centers.push(c);
    let mut created = parent.created.clone();
    created.push(new.clone());
    let order = data.order(&new).expect("created vertex is tracked");
    if order.is_zero() {
        let path = BlowupPath::from_parts(base.clone(), centers.clone(), created.clone());
        out.push(McKayEntry {
            moduli_dimension: moduli_dimension(&path),
            depth: path.len(),
            path,
            divisor: new,
            canonical_order: order.clone(),
        });
    }
    let child = SearchState {
        graph,
        data,
        centers,
        created,
    };
    explore(base, &child, max_depth, out);
}

/// Enumerates divisors of order zero reachable by at most `max_depth`
/// blow-ups: base components (depth 0) and the last component created by
/// each path. Output is ordered by depth, then path, then divisor.
///
/// Distinct paths can define the same divisorial valuation (free points on
/// disjoint components commute); entries are deduplicated by path only.
pub fn mckay_search<T: Scalar>(g: &PlumbingGraph, max_depth: usize) -> Result<Vec<McKayEntry<T>>> {
    let data = check_search_base::<T>(g)?;
    let base = Arc::new(g.clone());

    let mut entries: Vec<McKayEntry<T>> = data
        .orders()
        .iter()
        .filter(|(_, q)| q.is_zero())
        .map(|(id, q)| McKayEntry {
            path: BlowupPath::empty(base.clone()),
            divisor: id.clone(),
            canonical_order: q.clone(),
            moduli_dimension: 0,
            depth: 0,
        })
        .collect();

    let root = SearchState {
        graph: g.clone(),
        data,
        centers: Vec::new(),
        created: Vec::new(),
    };
    if may_create_zero(&root.data, max_depth) {
        // Subtrees under distinct first centers are independent.
        let found: Vec<Vec<McKayEntry<T>>> = BlowupCenter::all_on(g)
            .into_par_iter()
            .map(|c| {
                let mut out = Vec::new();
                visit_child(&base, &root, c, max_depth, &mut out);
                out
            })
            .collect();
        entries.extend(found.into_iter().flatten());
    }

    entries.sort_by(|a, b| {
        (a.depth, a.path.centers(), &a.divisor).cmp(&(b.depth, b.path.centers(), &b.divisor))
    });
    Ok(entries)
}

/// Extra blow-ups allowed beyond `d` when searching for a pole of order `d`.
///
/// From a component with order `q ≤ −2`, a free point followed by repeated
/// satellites at its intersection with the latest component lowers the order
/// by one per step, so `d + 2` steps always suffice on a wild graph.
pub const WITNESS_DEPTH_SLACK: usize = 2;

/// Finds a path to a divisor of order zero whose moduli dimension is at
/// least `d`, by locating a component of order `≤ −d` within
/// `d + WITNESS_DEPTH_SLACK` blow-ups and then blowing up free points along
/// a chain until the order reaches zero.
pub fn essential_family_witness<T: Scalar>(
    g: &PlumbingGraph,
    d: u32,
) -> Result<Option<BlowupPath>> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "family dimension must be positive".into(),
        ));
    }
    let data = canonical_orders::<T>(g)?;
    if !data.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    let base = Arc::new(g.clone());
    let target = -T::from_i64(i64::from(d));
    let bound = d as usize + WITNESS_DEPTH_SLACK;
    let state = SearchState {
        graph: g.clone(),
        data,
        centers: Vec::new(),
        created: Vec::new(),
    };
    let Some((centers, pole, order)) = find_pole(state, &target, bound) else {
        return Ok(None);
    };

    let mut centers = centers;
    let steps = order
        .to_integer()
        .expect("numerically Gorenstein orders are integers")
        .unsigned_abs();
    let mut graph = BlowupPath::new(base.clone(), centers.clone())?.replay_graph()?;
    let mut current = pole;
    for _ in 0..steps {
        let c = BlowupCenter::free(current);
        let (next, new) = crate::blowup::blow_up_graph(&graph, &c)?;
        centers.push(c);
        graph = next;
        current = new;
    }
    BlowupPath::new(base, centers).map(Some)
}

/// Depth-first search, most negative child first, for a component of order
/// at most `target`.
fn find_pole<T: Scalar>(
    state: SearchState<T>,
    target: &T,
    bound: usize,
) -> Option<(Vec<BlowupCenter>, VertexId, T)> {
    if let Some((id, q)) = state
        .data
        .orders()
        .iter()
        .filter(|(_, q)| *q <= target)
        .min_by(|a, b| a.1.cmp(b.1).then_with(|| a.0.cmp(b.0)))
    {
        return Some((state.centers.clone(), id.clone(), q.clone()));
    }
    let remaining = bound - state.centers.len();
    if remaining == 0 {
        return None;
    }
    let mut lower = state.data.min_order()?.clone();
    for _ in 0..remaining {
        let step = T::one() + lower.clone() + lower.clone().min(T::zero());
        lower = lower.min(step);
    }
    if lower > *target {
        return None;
    }

    let mut children: Vec<(T, BlowupCenter)> = BlowupCenter::all_on(&state.graph)
        .into_iter()
        .map(|c| {
            let q = crate::blowup::created_order(&state.data, &c).expect("center on graph");
            (q, c)
        })
        .collect();
    children.sort();
    let mut tried = BTreeSet::new();
    for (_, c) in children {
        if !tried.insert(c.clone()) {
            continue;
        }
        let (graph, data, new) = blow_up(&state.graph, &state.data, &c).expect("center on graph");
        let mut centers = state.centers.clone();
        centers.push(c);
        let mut created = state.created.clone();
        created.push(new);
        let found = find_pole(
            SearchState {
                graph,
                data,
                centers,
                created,
            },
            target,
            bound,
        );
        if found.is_some() {
            return found;
        }
    }
    None
}

/// DOT drawing of the blow-up tree spanned by the entries' paths; entry
/// divisors are drawn as boxes.
pub fn entries_to_dot<T: Scalar>(entries: &[McKayEntry<T>]) -> String {
    let mut nodes: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut marked: BTreeSet<Vec<String>> = BTreeSet::new();
    for e in entries {
        let tokens: Vec<String> = e.path.centers().iter().map(ToString::to_string).collect();
        for k in 0..=tokens.len() {
            nodes.insert(tokens[..k].to_vec());
        }
        if !tokens.is_empty() {
            marked.insert(tokens);
        }
    }
    let name = |p: &[String]| {
        if p.is_empty() {
            "base".to_string()
        } else {
            p.join(" ")
        }
    };
    let mut out = String::from("digraph blowups {\n");
    for p in &nodes {
        let label = p.last().cloned().unwrap_or_else(|| "base".into());
        let shape = if marked.contains(p) { "box" } else { "ellipse" };
        out.push_str(&format!(
            "  \"{}\" [label=\"{label}\", shape={shape}];\n",
            name(p)
        ));
        if let Some((_, parent)) = p.split_last() {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", name(parent), name(p)));
        }
    }
    out.push_str("}\n");
    out
}
