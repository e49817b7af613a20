//! Plumbing graphs: the decorated dual graph of a good resolution.
//!
//! Vertices carry the genus and self-intersection of an exceptional
//! component, edges count transverse intersection points between two
//! components, and arrows count transverse curvettes attached to a component.
//! Values are kept in canonical form (vertices by id, edges lexicographic) so
//! structural equality is id-based equality.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        let valid = !id.is_empty()
            && id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.');
        if valid {
            Ok(VertexId(id))
        } else {
            Err(Error::InvalidId(id))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

/// Decoration of one exceptional component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub genus: u32,
    /// Self-intersection `E_v · E_v`.
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    // Keys are ordered pairs (a, b) with a < b.
    edges: BTreeMap<(VertexId, VertexId), u32>,
    // Only nonzero counts are stored.
    arrows: BTreeMap<VertexId, u32>,
}

fn edge_key(a: &VertexId, b: &VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl PlumbingGraph {
    /// Builds a validated graph. Edges may repeat to express multiplicity.
    pub fn new<V, E, A>(vertices: V, edges: E, arrows: A) -> Result<Self>
    where
        V: IntoIterator<Item = (VertexId, Vertex)>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
        A: IntoIterator<Item = (VertexId, u32)>,
    {
        let mut graph = PlumbingGraph {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            arrows: BTreeMap::new(),
        };
        for (id, v) in vertices {
            if graph.vertices.insert(id.clone(), v).is_some() {
                return Err(Error::DuplicateVertex { line: 0, id });
            }
        }
        for (a, b) in edges {
            graph.check_edge(&a, &b, 0)?;
            graph.add_edge(&a, &b);
        }
        for (id, count) in arrows {
            if !graph.vertices.contains_key(&id) {
                return Err(Error::UnknownVertex { line: 0, id });
            }
            graph.add_arrows(&id, count);
        }
        graph.validate()?;
        Ok(graph)
    }

    fn check_edge(&self, a: &VertexId, b: &VertexId, line: usize) -> Result<()> {
        for id in [a, b] {
            if !self.vertices.contains_key(id) {
                return Err(Error::UnknownVertex {
                    line,
                    id: id.clone(),
                });
            }
        }
        if a == b {
            return Err(Error::LoopEdge {
                line,
                id: a.clone(),
            });
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for (n, _) in self.neighbors(&v) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub(crate) fn add_edge(&mut self, a: &VertexId, b: &VertexId) {
        *self.edges.entry(edge_key(a, b)).or_insert(0) += 1;
    }

    /// Removes one occurrence of the edge; returns false if none existed.
    pub(crate) fn remove_edge(&mut self, a: &VertexId, b: &VertexId) -> bool {
        let key = edge_key(a, b);
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }

    pub(crate) fn add_arrows(&mut self, id: &VertexId, count: u32) {
        if count > 0 {
            *self.arrows.entry(id.clone()).or_insert(0) += count;
        }
    }

    pub(crate) fn take_arrows(&mut self, id: &VertexId) -> u32 {
        self.arrows.remove(id).unwrap_or(0)
    }

    pub(crate) fn insert_vertex(&mut self, id: VertexId, v: Vertex) {
        self.vertices.insert(id, v);
    }

    pub(crate) fn remove_vertex(&mut self, id: &VertexId) -> Option<Vertex> {
        self.edges.retain(|(a, b), _| a != id && b != id);
        self.arrows.remove(id);
        self.vertices.remove(id)
    }

    pub(crate) fn vertex_mut(&mut self, id: &VertexId) -> Option<&mut Vertex> {
        self.vertices.get_mut(id)
    }

    /// Same graph with every arrow removed.
    pub fn without_arrows(&self) -> PlumbingGraph {
        PlumbingGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            arrows: BTreeMap::new(),
        }
    }

    /// Same graph with the given arrow counts replacing the current ones.
    pub fn with_arrows<A>(&self, arrows: A) -> Result<PlumbingGraph>
    where
        A: IntoIterator<Item = (VertexId, u32)>,
    {
        let mut g = self.without_arrows();
        for (id, count) in arrows {
            if !g.vertices.contains_key(&id) {
                return Err(Error::UnknownVertex { line: 0, id });
            }
            g.add_arrows(&id, count);
        }
        Ok(g)
    }

    /// Renames vertices through `rename`, which must be injective.
    pub fn relabel<F>(&self, mut rename: F) -> Result<PlumbingGraph>
    where
        F: FnMut(&VertexId) -> VertexId,
    {
        let map: BTreeMap<VertexId, VertexId> = self
            .vertices
            .keys()
            .map(|k| (k.clone(), rename(k)))
            .collect();
        PlumbingGraph::new(
            self.vertices.iter().map(|(k, v)| (map[k].clone(), *v)),
            self.edge_list()
                .into_iter()
                .map(|(a, b)| (map[&a].clone(), map[&b].clone())),
            self.arrows.iter().map(|(k, c)| (map[k].clone(), *c)),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, &Vertex)> {
        self.vertices.iter()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.vertices.contains_key(id)
    }

    /// Distinct adjacent pairs `(a, b)`, `a < b`, with multiplicity.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexId, &VertexId, u32)> {
        self.edges.iter().map(|((a, b), m)| (a, b, *m))
    }

    /// Edge list with one entry per occurrence, in canonical order.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges
            .iter()
            .flat_map(|((a, b), &m)| (0..m).map(move |_| (a.clone(), b.clone())))
            .collect()
    }

    pub fn edge_multiplicity(&self, a: &VertexId, b: &VertexId) -> u32 {
        self.edges.get(&edge_key(a, b)).copied().unwrap_or(0)
    }

    pub fn arrows(&self, id: &VertexId) -> u32 {
        self.arrows.get(id).copied().unwrap_or(0)
    }

    pub fn arrow_map(&self) -> &BTreeMap<VertexId, u32> {
        &self.arrows
    }

    pub fn total_arrows(&self) -> u32 {
        self.arrows.values().sum()
    }

    /// Adjacent vertices with edge multiplicity.
    pub fn neighbors(&self, id: &VertexId) -> Vec<(VertexId, u32)> {
        self.edges
            .iter()
            .filter_map(|((a, b), &m)| {
                if a == id {
                    Some((b.clone(), m))
                } else if b == id {
                    Some((a.clone(), m))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Number of edges at `id`, counted with multiplicity.
    pub fn degree(&self, id: &VertexId) -> u32 {
        self.neighbors(id).iter().map(|(_, m)| m).sum()
    }

    /// Smallest id of the form `x<n>` not present in the graph.
    pub fn fresh_id(&self) -> VertexId {
        (1u64..)
            .map(|n| VertexId(format!("x{n}")))
            .find(|id| !self.vertices.contains_key(id))
            .expect("unbounded id supply")
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let ids: Vec<VertexId> = self.vertices.keys().cloned().collect();
        let index: BTreeMap<&VertexId, usize> =
            ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
        let n = ids.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.values().enumerate() {
            entries[i][i] = v.euler;
        }
        for ((a, b), &m) in &self.edges {
            let (i, j) = (index[a], index[b]);
            entries[i][j] += i64::from(m);
            entries[j][i] += i64::from(m);
        }
        IntersectionMatrix { ids, entries }
    }

    pub fn is_negative_definite(&self) -> bool {
        self.intersection_matrix()
            .is_negative_definite::<num_rational::BigRational>()
    }

    /// DOT digraph; `annotate` adds text to each vertex label.
    pub fn to_dot<F>(&self, mut annotate: F) -> String
    where
        F: FnMut(&VertexId) -> Option<String>,
    {
        let mut out = String::from("digraph plumbing {\n");
        for (id, v) in &self.vertices {
            let mut label = format!("{id}\\ng={} e={}", v.genus, v.euler);
            if let Some(extra) = annotate(id) {
                label.push(' ');
                label.push_str(&extra);
            }
            out.push_str(&format!("  \"{id}\" [label=\"{label}\"];\n"));
        }
        for ((a, b), &m) in &self.edges {
            for _ in 0..m {
                out.push_str(&format!("  \"{a}\" -> \"{b}\" [dir=none];\n"));
            }
        }
        for (id, &count) in &self.arrows {
            for k in 0..count {
                out.push_str(&format!(
                    "  \"arrow_{id}_{k}\" [shape=point];\n  \"{id}\" -> \"arrow_{id}_{k}\";\n"
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Canonical text form, the inverse of [`parse_graph`].
impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, v) in &self.vertices {
            writeln!(f, "vertex {id} genus={} euler={}", v.genus, v.euler)?;
        }
        for (a, b) in self.edge_list() {
            writeln!(f, "edge {a} {b}")?;
        }
        for (id, count) in &self.arrows {
            writeln!(f, "arrow {id} count={count}")?;
        }
        Ok(())
    }
}

impl FromStr for PlumbingGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<VertexId> {
    VertexId::new(token).map_err(|_| syntax(line, format!("invalid vertex id `{token}`")))
}

fn parse_fields<'a>(
    tokens: &[&'a str],
    line: usize,
    keys: &[&str],
) -> Result<BTreeMap<String, &'a str>> {
    let mut out = BTreeMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, found `{tok}`")))?;
        if !keys.contains(&k) {
            return Err(syntax(line, format!("unknown field `{k}`")));
        }
        if out.insert(k.to_string(), v).is_some() {
            return Err(syntax(line, format!("field `{k}` given twice")));
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(syntax(line, format!("missing field `{k}`")));
        }
    }
    Ok(out)
}

fn parse_num<T: FromStr>(value: &str, line: usize, what: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{value}`")))
}

/// Parses the line-oriented graph document.
///
/// ```text
/// vertex <id> genus=<nat> euler=<int>
/// edge <id> <id>
/// arrow <id> count=<nat>
/// ```
pub fn parse_graph(text: &str) -> Result<PlumbingGraph> {
    let mut graph = PlumbingGraph {
        vertices: BTreeMap::new(),
        edges: BTreeMap::new(),
        arrows: BTreeMap::new(),
    };
    let mut edges = Vec::new();
    let mut arrows = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() < 2 {
                    return Err(syntax(line, "vertex needs an id"));
                }
                let id = parse_id(tokens[1], line)?;
                let fields = parse_fields(&tokens[2..], line, &["genus", "euler"])?;
                let genus = parse_num(fields["genus"], line, "genus")?;
                let euler = parse_num(fields["euler"], line, "euler")?;
                if graph.vertices.contains_key(&id) {
                    return Err(Error::DuplicateVertex { line, id });
                }
                graph.vertices.insert(id, Vertex { genus, euler });
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(syntax(line, "edge takes exactly two vertex ids"));
                }
                let a = parse_id(tokens[1], line)?;
                let b = parse_id(tokens[2], line)?;
                if a == b {
                    return Err(Error::LoopEdge { line, id: a });
                }
                edges.push((line, a, b));
            }
            "arrow" => {
                if tokens.len() < 2 {
                    return Err(syntax(line, "arrow needs a vertex id"));
                }
                let id = parse_id(tokens[1], line)?;
                let fields = parse_fields(&tokens[2..], line, &["count"])?;
                let count: u32 = parse_num(fields["count"], line, "count")?;
                arrows.push((line, id, count));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    for (line, a, b) in edges {
        graph.check_edge(&a, &b, line)?;
        graph.add_edge(&a, &b);
    }
    for (line, id, count) in arrows {
        if !graph.vertices.contains_key(&id) {
            return Err(Error::UnknownVertex { line, id });
        }
        graph.add_arrows(&id, count);
    }
    graph.validate()?;
    Ok(graph)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    ids: Vec<VertexId>,
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn is_negative_definite<T: Scalar>(&self) -> bool {
        linalg::is_negative_definite::<T>(&self.entries)
    }
}
