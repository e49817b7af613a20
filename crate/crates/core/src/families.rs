//! Standard plumbing graphs. Vertex ids are `v1, v2, …` unless noted.

use crate::graph::{PlumbingGraph, Vertex, VertexId};

fn id(i: usize) -> VertexId {
    VertexId::new(format!("v{i}")).expect("valid id")
}

fn rational(euler: i64) -> Vertex {
    Vertex { genus: 0, euler }
}

/// Tree of rational (−2) curves from an edge list on `v1..=vn`.
fn minus_two_tree(n: usize, edges: &[(usize, usize)]) -> PlumbingGraph {
    PlumbingGraph::new(
        (1..=n).map(|i| (id(i), rational(-2))),
        edges.iter().map(|&(a, b)| (id(a), id(b))),
        [],
    )
    .expect("valid Dynkin tree")
}

/// `A_n`: a chain of `n ≥ 1` rational (−2) curves.
pub fn a(n: usize) -> PlumbingGraph {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    minus_two_tree(n, &edges)
}

/// `D_n`, `n ≥ 4`: chain `v1..v(n-1)` with `vn` attached to `v(n-2)`.
pub fn d(n: usize) -> PlumbingGraph {
    assert!(n >= 4);
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 2, n));
    minus_two_tree(n, &edges)
}

/// `E_n`, `n ∈ {6, 7, 8}`: chain `v1..v(n-1)` with `vn` attached to `v3`.
pub fn e(n: usize) -> PlumbingGraph {
    assert!((6..=8).contains(&n));
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((3, n));
    minus_two_tree(n, &edges)
}

/// One component of the given genus and self-intersection, id `v1`.
pub fn single(genus: u32, euler: i64) -> PlumbingGraph {
    PlumbingGraph::new([(id(1), Vertex { genus, euler })], [], []).expect("valid vertex")
}

/// Cycle of rational curves; two curves are joined by a double edge.
pub fn cycle(eulers: &[i64]) -> PlumbingGraph {
    let n = eulers.len();
    assert!(n >= 2);
    PlumbingGraph::new(
        eulers
            .iter()
            .enumerate()
            .map(|(i, &e)| (id(i + 1), rational(e))),
        (0..n).map(|i| (id(i + 1), id((i + 1) % n + 1))),
        [],
    )
    .expect("valid cycle")
}

/// Every ADE graph `A_1..A_8`, `D_4..D_8`, `E_6..E_8` with its name.
pub fn ade() -> Vec<(String, PlumbingGraph)> {
    let mut out: Vec<(String, PlumbingGraph)> = (1..=8).map(|n| (format!("A{n}"), a(n))).collect();
    out.extend((4..=8).map(|n| (format!("D{n}"), d(n))));
    out.extend((6..=8).map(|n| (format!("E{n}"), e(n))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(a(3).edge_count(), 2);
        assert_eq!(d(5).degree(&id(3)), 3);
        assert_eq!(e(8).degree(&id(3)), 3);
        assert_eq!(cycle(&[-2, -3]).edge_multiplicity(&id(1), &id(2)), 2);
        assert_eq!(ade().len(), 16);
        assert!(ade().iter().all(|(_, g)| g.is_negative_definite()));
    }
}
