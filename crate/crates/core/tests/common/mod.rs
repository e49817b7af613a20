//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the solver or definiteness code of the crate.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use plumbcalc::{PlumbingGraph, Vertex, VertexId};
use proptest::prelude::*;

pub fn vid(s: &str) -> VertexId {
    VertexId::new(s).unwrap()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Pairing matrix read straight from the edge list.
pub fn pairing(g: &PlumbingGraph) -> (Vec<VertexId>, Vec<Vec<i64>>) {
    let ids: Vec<VertexId> = g.vertex_ids().cloned().collect();
    let pos: BTreeMap<&VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = ids.len();
    let mut m = vec![vec![0i64; n]; n];
    for (id, v) in g.vertices() {
        m[pos[id]][pos[id]] = v.euler;
    }
    for (a, b, mult) in g.edges() {
        m[pos[a]][pos[b]] += i64::from(mult);
        m[pos[b]][pos[a]] += i64::from(mult);
    }
    (ids, m)
}

/// Whether `q` solves `Σ_j q_j M_ij = 2g_i − 2 − b_i` row by row.
pub fn adjunction_holds(g: &PlumbingGraph, q: &BTreeMap<VertexId, BigRational>) -> bool {
    let (ids, m) = pairing(g);
    ids.iter().enumerate().all(|(i, id)| {
        let v = g.vertex(id).unwrap();
        let lhs = ids
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, jd)| {
                acc + q[jd].clone() * rat(m[i][j])
            });
        let rhs = 2 * i64::from(v.genus) - 2 - v.euler;
        lhs == rat(rhs)
    })
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Sylvester: `M` is negative definite iff the k-th leading minor has sign
/// `(−1)^k`.
pub fn sylvester_negative_definite(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let det = bareiss_det(&minor);
        if k % 2 == 1 {
            det.is_negative()
        } else {
            det.is_positive()
        }
    })
}

/// `xᵀMx < 0` for every nonzero `x ∈ [−r, r]^n`. A necessary condition for
/// definiteness that also catches semidefinite matrices with a small kernel
/// vector.
pub fn lattice_box_negative(m: &[Vec<i64>], r: i64) -> bool {
    let n = m.len();
    let mut x = vec![-r; n];
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut s = 0i64;
            for i in 0..n {
                for j in 0..n {
                    s += x[i] * m[i][j] * x[j];
                }
            }
            if s >= 0 {
                return false;
            }
        }
        let mut i = 0;
        while i < n && x[i] == r {
            x[i] = -r;
            i += 1;
        }
        if i == n {
            return true;
        }
        x[i] += 1;
    }
}

/// Whether the graph is a simply-laced Dynkin diagram of rational (−2)
/// curves: a tree with at most one branch point, and arm lengths
/// `(p, q, r)` with `1/p + 1/q + 1/r > 1` (counting the center in each arm).
pub fn is_dynkin(g: &PlumbingGraph) -> bool {
    if g.vertices().any(|(_, v)| {
        *v != Vertex {
            genus: 0,
            euler: -2,
        }
    }) {
        return false;
    }
    let n = g.vertex_count();
    if g.edges().any(|(_, _, m)| m != 1) || g.edge_count() + 1 != n {
        return false;
    }
    let branch: Vec<&VertexId> = g.vertex_ids().filter(|v| g.degree(v) >= 3).collect();
    match branch.as_slice() {
        [] => true,
        [c] if g.degree(c) == 3 => {
            let mut arms: Vec<u64> = g
                .neighbors(c)
                .iter()
                .map(|(start, _)| {
                    let mut len = 1u64;
                    let mut prev = (*c).clone();
                    let mut cur = start.clone();
                    loop {
                        len += 1;
                        let next: Vec<VertexId> = g
                            .neighbors(&cur)
                            .into_iter()
                            .map(|(v, _)| v)
                            .filter(|v| *v != prev)
                            .collect();
                        match next.as_slice() {
                            [nx] => {
                                prev = cur;
                                cur = nx.clone();
                            }
                            _ => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            let (p, q, r) = (arms[0], arms[1], arms[2]);
            q * r + p * r + p * q > p * q * r
        }
        _ => false,
    }
}

/// Members of the numerical semigroup generated by `gens` up to `limit`.
pub fn semigroup_members(gens: &[u32], limit: u32) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for x in 1..=limit as usize {
        member[x] = gens
            .iter()
            .any(|&g| g as usize <= x && g > 0 && member[x - g as usize]);
    }
    member
}

/// `1 +` the largest gap below `limit`, i.e. the conductor when the
/// semigroup has no gaps in `[limit / 2, limit]`.
pub fn brute_conductor(gens: &[u32], limit: u32) -> u32 {
    let member = semigroup_members(gens, limit);
    member
        .iter()
        .rposition(|&m| !m)
        .map_or(0, |gap| gap as u32 + 1)
}

/// Connected graph on `v1..vn`: a random tree plus extra edges, with
/// genus and euler drawn from the given ranges.
pub fn arb_graph(
    max_vertices: usize,
    genus: std::ops::RangeInclusive<u32>,
    euler: std::ops::RangeInclusive<i64>,
    extra_edges: usize,
    arrows: bool,
) -> impl Strategy<Value = PlumbingGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let decorations = prop::collection::vec((genus.clone(), euler.clone()), n);
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extras = prop::collection::vec((0..n, 0..n), 0..=extra_edges);
        let arrow_counts = prop::collection::vec(if arrows { 0u32..=2 } else { 0u32..=0 }, n);
        (decorations, parents, extras, arrow_counts).prop_map(move |(dec, parents, extras, arr)| {
            let id = |i: usize| vid(&format!("v{}", i + 1));
            let mut edges: Vec<(VertexId, VertexId)> = parents
                .iter()
                .enumerate()
                .map(|(k, &p)| (id(k + 1), id(p)))
                .collect();
            edges.extend(
                extras
                    .iter()
                    .filter(|(a, b)| a != b)
                    .map(|&(a, b)| (id(a), id(b))),
            );
            PlumbingGraph::new(
                dec.iter()
                    .enumerate()
                    .map(|(i, &(genus, euler))| (id(i), Vertex { genus, euler })),
                edges,
                arr.iter().enumerate().map(|(i, &c)| (id(i), c)),
            )
            .expect("generated graph is valid")
        })
    })
}

/// Cusp cycles with at least one curve of self-intersection `≤ −3`.
pub fn cusp_cycles() -> Vec<Vec<i64>> {
    vec![
        vec![-2, -3],
        vec![-3, -3],
        vec![-4, -5],
        vec![-2, -2, -3],
        vec![-3, -3, -3],
        vec![-2, -4, -2],
        vec![-2, -2, -2, -3],
        vec![-3, -2, -3, -2],
        vec![-5, -2, -2, -2],
    ]
}

/// Minimal, negative definite, numerically Gorenstein graphs with at most
/// five vertices and no positive canonical order.
pub fn minimal_bases() -> Vec<PlumbingGraph> {
    use plumbcalc::families;
    let mut out: Vec<PlumbingGraph> = (1..=5).map(families::a).collect();
    out.push(families::d(4));
    out.push(families::d(5));
    out.extend((1..=4).map(|e| families::single(1, -e)));
    out.extend(cusp_cycles().iter().map(|c| families::cycle(c)));
    for (genus, euler) in [(2, -1), (2, -2), (3, -1), (3, -2), (3, -4)] {
        out.push(families::single(genus, euler));
    }
    out
}
