//! Blow-ups and blow-downs of plumbing graphs with canonical-order tracking.
//!
//! A free center is a generic point of one component, a satellite center is
//! an intersection point of two components. Since every center is a smooth
//! point of a normal-crossings configuration, the order of the Gorenstein
//! form on the new component is one plus the orders of the components
//! through the center.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::canonical::{canonical_orders, CanonicalData};
use crate::error::{Error, Result};
use crate::graph::{PlumbingGraph, Vertex, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlowupCenter {
    Free(VertexId),
    /// Endpoints are stored in increasing order.
    Satellite(VertexId, VertexId),
}

impl BlowupCenter {
    pub fn free(v: VertexId) -> Self {
        BlowupCenter::Free(v)
    }

    pub fn satellite(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            BlowupCenter::Satellite(a, b)
        } else {
            BlowupCenter::Satellite(b, a)
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, BlowupCenter::Free(_))
    }

    /// All centers available on `g`, in canonical order.
    pub fn all_on(g: &PlumbingGraph) -> Vec<BlowupCenter> {
        let mut out: Vec<BlowupCenter> = g.vertex_ids().cloned().map(BlowupCenter::Free).collect();
        out.extend(
            g.edges()
                .map(|(a, b, _)| BlowupCenter::Satellite(a.clone(), b.clone())),
        );
        out
    }
}

impl fmt::Display for BlowupCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupCenter::Free(v) => write!(f, "free:{v}"),
            BlowupCenter::Satellite(a, b) => write!(f, "sat:{a}-{b}"),
        }
    }
}

impl FromStr for BlowupCenter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCenter(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "free" => Ok(BlowupCenter::Free(VertexId::new(rest).map_err(|_| bad())?)),
            "sat" => {
                let (a, b) = rest.split_once('-').ok_or_else(bad)?;
                let a = VertexId::new(a).map_err(|_| bad())?;
                let b = VertexId::new(b).map_err(|_| bad())?;
                if a == b {
                    return Err(bad());
                }
                Ok(BlowupCenter::satellite(a, b))
            }
            _ => Err(bad()),
        }
    }
}

/// Parses a path file: center tokens separated by whitespace (usually one
/// per line), `#` comments.
pub fn parse_centers(text: &str) -> Result<Vec<BlowupCenter>> {
    text.lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .map(str::parse)
        .collect()
}

/// Blows up the graph only; returns the new graph and the created vertex.
pub fn blow_up_graph(g: &PlumbingGraph, c: &BlowupCenter) -> Result<(PlumbingGraph, VertexId)> {
    let mut out = g.clone();
    let new = g.fresh_id();
    match c {
        BlowupCenter::Free(v) => {
            let vertex = out
                .vertex_mut(v)
                .ok_or_else(|| Error::InvalidCenter(format!("{c}: unknown vertex")))?;
            vertex.euler -= 1;
            out.insert_vertex(
                new.clone(),
                Vertex {
                    genus: 0,
                    euler: -1,
                },
            );
            out.add_edge(v, &new);
        }
        BlowupCenter::Satellite(a, b) => {
            if !out.remove_edge(a, b) {
                return Err(Error::InvalidCenter(format!("{c}: no such edge")));
            }
            for v in [a, b] {
                out.vertex_mut(v).expect("edge endpoints exist").euler -= 1;
            }
            out.insert_vertex(
                new.clone(),
                Vertex {
                    genus: 0,
                    euler: -1,
                },
            );
            out.add_edge(a, &new);
            out.add_edge(b, &new);
        }
    }
    Ok((out, new))
}

/// Order of the Gorenstein form on the component created by blowing up `c`.
pub fn created_order<T: Scalar>(data: &CanonicalData<T>, c: &BlowupCenter) -> Result<T> {
    let order = |v: &VertexId| {
        data.order(v)
            .cloned()
            .ok_or_else(|| Error::InvalidCenter(format!("{c}: vertex `{v}` has no order")))
    };
    Ok(match c {
        BlowupCenter::Free(v) => T::one() + order(v)?,
        BlowupCenter::Satellite(a, b) => T::one() + order(a)? + order(b)?,
    })
}

pub fn blow_up<T: Scalar>(
    g: &PlumbingGraph,
    data: &CanonicalData<T>,
    c: &BlowupCenter,
) -> Result<(PlumbingGraph, CanonicalData<T>, VertexId)> {
    let (out, new) = blow_up_graph(g, c)?;
    let mut tracked = data.clone();
    tracked.insert_order(new.clone(), created_order(data, c)?);
    Ok((out, tracked, new))
}

/// Checks that `v` is a smooth rational (−1) curve whose contraction keeps
/// the configuration a connected normal-crossings plumbing graph.
pub fn check_contractible(g: &PlumbingGraph, v: &VertexId) -> Result<()> {
    let not = |reason: &str| Error::NotContractible {
        vertex: v.clone(),
        reason: reason.to_string(),
    };
    let vertex = g.vertex(v).ok_or_else(|| Error::UnknownVertex {
        line: 0,
        id: v.clone(),
    })?;
    if vertex.genus != 0 || vertex.euler != -1 {
        return Err(not("not a rational (-1) curve"));
    }
    if g.vertex_count() == 1 {
        return Err(not("it is the only component"));
    }
    let neighbors = g.neighbors(v);
    let degree: u32 = neighbors.iter().map(|(_, m)| m).sum();
    if degree + g.arrows(v) > 2 {
        return Err(not("meets more than two other curves"));
    }
    if neighbors.iter().any(|(_, m)| *m > 1) {
        return Err(not("meets a neighbor twice"));
    }
    Ok(())
}

pub fn is_contractible(g: &PlumbingGraph, v: &VertexId) -> bool {
    check_contractible(g, v).is_ok()
}

pub fn blow_down(g: &PlumbingGraph, v: &VertexId) -> Result<PlumbingGraph> {
    check_contractible(g, v)?;
    let neighbors: Vec<VertexId> = g.neighbors(v).into_iter().map(|(n, _)| n).collect();
    let mut out = g.clone();
    let arrows = out.take_arrows(v);
    out.remove_vertex(v);
    for n in &neighbors {
        out.vertex_mut(n).expect("neighbor exists").euler += 1;
    }
    match neighbors.as_slice() {
        [a, b] => out.add_edge(a, b),
        [a] => out.add_arrows(a, arrows),
        _ => {}
    }
    Ok(out)
}

/// Contracts arrow-free contractible components until none remain.
pub fn minimal_model(g: &PlumbingGraph) -> PlumbingGraph {
    let mut current = g.clone();
    loop {
        let next = current
            .vertex_ids()
            .find(|v| current.arrows(v) == 0 && is_contractible(&current, v))
            .cloned();
        match next {
            Some(v) => current = blow_down(&current, &v).expect("contractibility checked"),
            None => return current,
        }
    }
}

/// A sequence of infinitely near points over a base graph.
///
/// Each center refers to the graph obtained after the preceding steps; the
/// created ids are those chosen by [`PlumbingGraph::fresh_id`] on replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupPath {
    base: Arc<PlumbingGraph>,
    centers: Vec<BlowupCenter>,
    created: Vec<VertexId>,
}

impl BlowupPath {
    pub fn empty(base: Arc<PlumbingGraph>) -> Self {
        BlowupPath {
            base,
            centers: Vec::new(),
            created: Vec::new(),
        }
    }

    /// Validates the centers by replaying them on the base graph.
    pub fn new(base: Arc<PlumbingGraph>, centers: Vec<BlowupCenter>) -> Result<Self> {
        let mut g = (*base).clone();
        let mut created = Vec::with_capacity(centers.len());
        for c in &centers {
            let (next, new) = blow_up_graph(&g, c)?;
            g = next;
            created.push(new);
        }
        Ok(BlowupPath {
            base,
            centers,
            created,
        })
    }

    pub(crate) fn from_parts(
        base: Arc<PlumbingGraph>,
        centers: Vec<BlowupCenter>,
        created: Vec<VertexId>,
    ) -> Self {
        debug_assert_eq!(centers.len(), created.len());
        BlowupPath {
            base,
            centers,
            created,
        }
    }

    pub fn base(&self) -> &Arc<PlumbingGraph> {
        &self.base
    }

    pub fn centers(&self) -> &[BlowupCenter] {
        &self.centers
    }

    pub fn created(&self) -> &[VertexId] {
        &self.created
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn free_count(&self) -> usize {
        self.centers.iter().filter(|c| c.is_free()).count()
    }

    pub fn last_created(&self) -> Option<&VertexId> {
        self.created.last()
    }

    /// Replays the path and returns the final graph only.
    pub fn replay_graph(&self) -> Result<PlumbingGraph> {
        self.centers
            .iter()
            .try_fold((*self.base).clone(), |g, c| Ok(blow_up_graph(&g, c)?.0))
    }
}

impl fmt::Display for BlowupPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.centers.iter().map(ToString::to_string).collect();
        f.write_str(&tokens.join(" "))
    }
}

/// Folds [`blow_up`] over the path starting from the solved base graph.
pub fn replay<T: Scalar>(path: &BlowupPath) -> Result<(PlumbingGraph, CanonicalData<T>)> {
    let data = canonical_orders::<T>(&path.base)?;
    replay_from(path, data)
}

/// As [`replay`], starting from already computed base data.
pub fn replay_from<T: Scalar>(
    path: &BlowupPath,
    base_data: CanonicalData<T>,
) -> Result<(PlumbingGraph, CanonicalData<T>)> {
    path.centers
        .iter()
        .try_fold(((*path.base).clone(), base_data), |(g, d), c| {
            let (g, d, _) = blow_up(&g, &d, c)?;
            Ok((g, d))
        })
}
