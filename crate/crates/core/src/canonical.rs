//! Canonical cycle and the numerical predicates built on it.
//!
//! The orders `q_v` of the Gorenstein form along each component solve the
//! adjunction system `Σ_j q_j (E_i·E_j) = 2g_i − 2 − E_i²`; the canonical
//! cycle is `Z_K = Σ −q_v E_v`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{PlumbingGraph, VertexId};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalData<T> {
    q: BTreeMap<VertexId, T>,
    z: BTreeMap<VertexId, T>,
    numerically_gorenstein: bool,
    small: bool,
}

impl<T: Scalar> CanonicalData<T> {
    /// Derives the cycle and flags from the orders.
    pub fn from_orders(q: BTreeMap<VertexId, T>) -> Self {
        let z: BTreeMap<VertexId, T> = q.iter().map(|(k, v)| (k.clone(), -v.clone())).collect();
        let numerically_gorenstein = q.values().all(Scalar::is_integral);
        let small = z.values().all(|v| !v.is_negative());
        CanonicalData {
            q,
            z,
            numerically_gorenstein,
            small,
        }
    }

    pub fn orders(&self) -> &BTreeMap<VertexId, T> {
        &self.q
    }

    /// Canonical cycle coefficients `z_v = −q_v`.
    pub fn cycle(&self) -> &BTreeMap<VertexId, T> {
        &self.z
    }

    pub fn order(&self, id: &VertexId) -> Option<&T> {
        self.q.get(id)
    }

    pub fn cycle_coefficient(&self, id: &VertexId) -> Option<&T> {
        self.z.get(id)
    }

    pub fn is_numerically_gorenstein(&self) -> bool {
        self.numerically_gorenstein
    }

    pub fn is_small(&self) -> bool {
        self.small
    }

    pub fn min_order(&self) -> Option<&T> {
        self.q.values().min()
    }

    pub fn max_order(&self) -> Option<&T> {
        self.q.values().max()
    }

    pub fn all_zero(&self) -> bool {
        self.q.values().all(|v| v.is_zero())
    }

    pub(crate) fn insert_order(&mut self, id: VertexId, value: T) {
        self.q.insert(id, value);
        *self = CanonicalData::from_orders(std::mem::take(&mut self.q));
    }
}

/// Right-hand side `2g − 2 − b` of the adjunction system, in vertex order.
fn adjunction_rhs<T: Scalar>(g: &PlumbingGraph) -> Vec<T> {
    g.vertices()
        .map(|(_, v)| T::from_i64(2 * i64::from(v.genus) - 2 - v.euler))
        .collect()
}

/// Solves the adjunction system exactly.
pub fn canonical_orders<T: Scalar>(g: &PlumbingGraph) -> Result<CanonicalData<T>> {
    let m = g.intersection_matrix();
    if !m.is_negative_definite::<T>() {
        return Err(Error::NotNegativeDefinite);
    }
    let q =
        linalg::solve(m.entries(), &adjunction_rhs::<T>(g)).ok_or(Error::NotNegativeDefinite)?;
    Ok(CanonicalData::from_orders(
        m.ids().iter().cloned().zip(q).collect(),
    ))
}

/// True iff `data` is defined on exactly the vertices of `g` and satisfies
/// the adjunction system with zero residual.
pub fn satisfies_adjunction<T: Scalar>(g: &PlumbingGraph, data: &CanonicalData<T>) -> bool {
    let m = g.intersection_matrix();
    if data.q.len() != m.dim() || m.ids().iter().any(|id| !data.q.contains_key(id)) {
        return false;
    }
    let q: Vec<&T> = m.ids().iter().map(|id| &data.q[id]).collect();
    let rhs = adjunction_rhs::<T>(g);
    (0..m.dim()).all(|i| {
        let lhs = (0..m.dim()).fold(T::zero(), |acc, j| {
            acc + q[j].clone() * T::from_i64(m.get(i, j))
        });
        lhs == rhs[i]
    })
}

/// Minimal canonical order at a component; in the Gorenstein case it is the
/// order of the Gorenstein form there.
pub fn minimal_canonical_order<T: Scalar>(
    _g: &PlumbingGraph,
    data: &CanonicalData<T>,
    v: &VertexId,
) -> Result<T> {
    if !data.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    data.order(v).cloned().ok_or_else(|| Error::UnknownVertex {
        line: 0,
        id: v.clone(),
    })
}

/// `c₁ · Z_K`: each arrow is a transverse curvette on its component.
pub fn chern_dot_zk<T: Scalar>(g: &PlumbingGraph, data: &CanonicalData<T>) -> T {
    g.arrow_map().iter().fold(T::zero(), |acc, (id, &count)| {
        let z = data.cycle_coefficient(id).cloned().unwrap_or_else(T::zero);
        acc + z * T::from_i64(i64::from(count))
    })
}

/// `dim H¹ = r·p_g − c₁·Z_K + d` for a resolution small with respect to the
/// Gorenstein form. `pg` and `defect` are analytic inputs.
pub fn h1_dimension<T: Scalar>(
    g: &PlumbingGraph,
    data: &CanonicalData<T>,
    rank: u32,
    pg: u32,
    defect: u32,
) -> Result<i64> {
    if !data.is_small() {
        return Err(Error::NotSmall);
    }
    h1_dimension_unrestricted(g, data, rank, pg, defect)
}

/// The same expression without the smallness hypothesis. The result is only
/// meaningful as a formula value; the dimension statement needs smallness.
pub fn h1_dimension_unrestricted<T: Scalar>(
    g: &PlumbingGraph,
    data: &CanonicalData<T>,
    rank: u32,
    pg: u32,
    defect: u32,
) -> Result<i64> {
    if rank == 0 {
        return Err(Error::InvalidRank);
    }
    let chern = chern_dot_zk(g, data);
    let chern = chern
        .to_integer()
        .ok_or_else(|| Error::NonIntegralChern(chern.to_string()))?;
    Ok(i64::from(rank) * i64::from(pg) - chern + i64::from(defect))
}

/// No edge joins a pole (`q < 0`) of the Gorenstein form to a zero (`q > 0`).
pub fn pole_zero_adjacency_ok<T: Scalar>(g: &PlumbingGraph, data: &CanonicalData<T>) -> bool {
    g.edges().all(|(a, b, _)| {
        let (Some(qa), Some(qb)) = (data.order(a), data.order(b)) else {
            return true;
        };
        !((qa.is_negative() && qb.is_positive()) || (qa.is_positive() && qb.is_negative()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use num_rational::{BigRational, Rational64};

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn vid(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    const E8: &str = "vertex a genus=0 euler=-2\nvertex b genus=0 euler=-2\nvertex c genus=0 euler=-2\nvertex d genus=0 euler=-2\nvertex e genus=0 euler=-2\nvertex f genus=0 euler=-2\nvertex g genus=0 euler=-2\nvertex h genus=0 euler=-2\nedge a b\nedge b c\nedge c d\nedge d e\nedge e f\nedge f g\nedge c h\n";
    const BLOWN_ELLIPTIC: &str =
        "vertex e genus=1 euler=-2\nvertex x1 genus=0 euler=-1\nedge e x1\n";

    #[test]
    fn ade_orders_vanish() {
        let g = parse_graph(E8).unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert!(data.all_zero());
        assert!(data.is_numerically_gorenstein());
        assert!(data.is_small());
    }

    #[test]
    fn simply_elliptic_vertex() {
        let g = parse_graph("vertex e genus=1 euler=-1").unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert_eq!(data.order(&vid("e")), Some(&q(-1)));
        assert_eq!(data.cycle_coefficient(&vid("e")), Some(&q(1)));
        assert_eq!(
            minimal_canonical_order(&g, &data, &vid("e")).unwrap(),
            q(-1)
        );
    }

    #[test]
    fn cusp_cycle() {
        let g = parse_graph(
            "vertex a genus=0 euler=-3\nvertex b genus=0 euler=-3\nvertex c genus=0 euler=-3\nedge a b\nedge b c\nedge c a\n",
        )
        .unwrap();
        let data = canonical_orders::<Rational64>(&g).unwrap();
        assert!(data.orders().values().all(|v| *v == Rational64::from(-1)));
    }

    #[test]
    fn non_gorenstein_orders_are_fractional() {
        let g = parse_graph("vertex a genus=0 euler=-3").unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert_eq!(data.order(&vid("a")), Some(&Q::new((-1).into(), 3.into())));
        assert!(!data.is_numerically_gorenstein());
        assert_eq!(
            minimal_canonical_order(&g, &data, &vid("a")),
            Err(Error::NotNumericallyGorenstein)
        );
    }

    #[test]
    fn rejects_indefinite() {
        let g = parse_graph("vertex a genus=0 euler=0").unwrap();
        assert_eq!(canonical_orders::<Q>(&g), Err(Error::NotNegativeDefinite));
        let g =
            parse_graph("vertex a genus=0 euler=-1\nvertex b genus=0 euler=-1\nedge a b").unwrap();
        assert_eq!(canonical_orders::<Q>(&g), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn chern_pairing() {
        let e8 = parse_graph(&format!("{E8}arrow d count=1\n")).unwrap();
        let data = canonical_orders::<Q>(&e8).unwrap();
        assert_eq!(chern_dot_zk(&e8, &data), q(0));

        let ell = parse_graph("vertex e genus=1 euler=-1\narrow e count=2").unwrap();
        let data = canonical_orders::<Q>(&ell).unwrap();
        assert_eq!(chern_dot_zk(&ell, &data), q(2));

        let blown = parse_graph(&format!("{BLOWN_ELLIPTIC}arrow x1 count=1\n")).unwrap();
        let data = canonical_orders::<Q>(&blown).unwrap();
        assert_eq!(data.order(&vid("e")), Some(&q(-1)));
        assert_eq!(data.order(&vid("x1")), Some(&q(0)));
        assert_eq!(chern_dot_zk(&blown, &data), q(0));
    }

    #[test]
    fn h1_formula() {
        let blown = parse_graph(&format!("{BLOWN_ELLIPTIC}arrow x1 count=1\n")).unwrap();
        let data = canonical_orders::<Q>(&blown).unwrap();
        assert_eq!(h1_dimension(&blown, &data, 1, 1, 0).unwrap(), 1);

        let ell = parse_graph("vertex e genus=1 euler=-1\narrow e count=1").unwrap();
        let data = canonical_orders::<Q>(&ell).unwrap();
        assert_eq!(h1_dimension(&ell, &data, 2, 1, 3).unwrap(), 4);

        assert_eq!(h1_dimension(&ell, &data, 0, 1, 3), Err(Error::InvalidRank));
    }

    #[test]
    fn h1_requires_small_unless_opted_out() {
        // Blowing up a free point on an A1 vertex creates a zero of the form.
        let g = parse_graph(
            "vertex a genus=0 euler=-3\nvertex x1 genus=0 euler=-1\nedge a x1\narrow a count=1",
        )
        .unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert_eq!(data.order(&vid("x1")), Some(&q(1)));
        assert!(!data.is_small());
        assert_eq!(h1_dimension(&g, &data, 1, 0, 0), Err(Error::NotSmall));
        assert_eq!(h1_dimension_unrestricted(&g, &data, 1, 0, 0).unwrap(), 0);
    }

    #[test]
    fn h1_rejects_fractional_pairing() {
        let g = parse_graph("vertex a genus=0 euler=-3\narrow a count=1").unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert!(data.is_small());
        assert!(matches!(
            h1_dimension(&g, &data, 1, 0, 0),
            Err(Error::NonIntegralChern(_))
        ));
    }

    #[test]
    fn pole_zero_predicate() {
        let e8 = parse_graph(E8).unwrap();
        assert!(pole_zero_adjacency_ok(
            &e8,
            &canonical_orders::<Q>(&e8).unwrap()
        ));

        let blown = parse_graph(BLOWN_ELLIPTIC).unwrap();
        assert!(pole_zero_adjacency_ok(
            &blown,
            &canonical_orders::<Q>(&blown).unwrap()
        ));

        let g =
            parse_graph("vertex a genus=0 euler=-2\nvertex b genus=0 euler=-2\nedge a b").unwrap();
        let artificial =
            CanonicalData::from_orders([(vid("a"), q(-1)), (vid("b"), q(1))].into_iter().collect());
        assert!(!pole_zero_adjacency_ok(&g, &artificial));
    }

    #[test]
    fn residual_check() {
        let g = parse_graph(BLOWN_ELLIPTIC).unwrap();
        let data = canonical_orders::<Q>(&g).unwrap();
        assert!(satisfies_adjunction(&g, &data));
        let wrong = CanonicalData::from_orders(
            [(vid("e"), q(-1)), (vid("x1"), q(1))].into_iter().collect(),
        );
        assert!(!satisfies_adjunction(&g, &wrong));
    }
}
