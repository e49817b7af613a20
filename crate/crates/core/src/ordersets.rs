//! Sets of orders of curve-germ modules in `ℕ^l`.
//!
//! An [`OrderSet`] is given by a monomial presentation: the orders of module
//! generators, closed under translation by an [`OrderSemigroup`] and under
//! componentwise minimum. Sets of orders of analytic modules can be larger
//! than their monomial presentation (leading terms may cancel); this module
//! computes with presentations only.
//!
//! Realizations are computed on the box `[0, B]` plus one overflow layer at
//! `B + 1` standing for "greater than `B`". Capping commutes with both
//! translation and minimum, so membership inside the box is exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::canonical::CanonicalData;
use crate::error::{Error, Result};
use crate::graph::{PlumbingGraph, VertexId};
use crate::scalar::Scalar;

pub type OrderVector = Vec<u32>;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidOrderData(msg.into())
}

fn check_len(v: &[u32], branches: usize) -> Result<()> {
    if v.len() != branches {
        return Err(invalid(format!(
            "vector of length {} in a set with {branches} branches",
            v.len()
        )));
    }
    Ok(())
}

/// The semigroup of orders `𝔖`, generated by finitely many vectors; zero
/// is always a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSemigroup {
    branches: usize,
    generators: Vec<OrderVector>,
}

impl OrderSemigroup {
    pub fn new(branches: usize, generators: Vec<OrderVector>) -> Result<Self> {
        if branches == 0 {
            return Err(invalid("at least one branch is required"));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_len(&g, branches)?;
            if g.iter().any(|&x| x > 0) {
                gens.push(g);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(OrderSemigroup {
            branches,
            generators: gens,
        })
    }

    /// `ℕ^l`, generated by the unit vectors.
    pub fn naturals(branches: usize) -> Self {
        let gens = (0..branches)
            .map(|i| (0..branches).map(|j| u32::from(i == j)).collect())
            .collect();
        OrderSemigroup::new(branches, gens).expect("nonzero branch count")
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    /// Nonzero generators, sorted.
    pub fn generators(&self) -> &[OrderVector] {
        &self.generators
    }

    /// The semigroup itself as an order set (module generator `0`).
    pub fn as_order_set(&self) -> OrderSet {
        OrderSet::new(self.clone(), vec![vec![0; self.branches]]).expect("zero fits every box")
    }

    /// Per-axis bound `a_min · a_max` on the conductor of the projection.
    fn axis_bound(&self, axis: usize) -> u32 {
        let values: Vec<u32> = self
            .generators
            .iter()
            .map(|g| g[axis])
            .filter(|&x| x > 0)
            .collect();
        match (values.iter().min(), values.iter().max()) {
            (Some(lo), Some(hi)) => lo * hi,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSet {
    ambient: OrderSemigroup,
    generators: Vec<OrderVector>,
    bound: OrderVector,
}

impl OrderSet {
    /// Order set with the default search box.
    ///
    /// One branch: largest module generator plus `a_min · a_max` over the
    /// semigroup generators (Schur's bound on the conductor). Several
    /// branches: the componentwise sum of all generators plus the one-branch
    /// bound of each projection.
    pub fn new(ambient: OrderSemigroup, generators: Vec<OrderVector>) -> Result<Self> {
        let l = ambient.branches();
        if generators.is_empty() {
            return Err(invalid("an order set needs at least one generator"));
        }
        for g in &generators {
            check_len(g, l)?;
        }
        let bound: OrderVector = if l == 1 {
            let top = generators.iter().map(|g| g[0]).max().unwrap_or(0);
            vec![top + ambient.axis_bound(0)]
        } else {
            (0..l)
                .map(|i| {
                    let sum: u32 = generators
                        .iter()
                        .chain(ambient.generators())
                        .map(|g| g[i])
                        .sum();
                    sum + ambient.axis_bound(i)
                })
                .collect()
        };
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        Ok(OrderSet {
            ambient,
            generators,
            bound,
        })
    }

    /// Replaces the search box; it must contain every generator.
    pub fn with_box(mut self, bound: OrderVector) -> Result<Self> {
        check_len(&bound, self.branches())?;
        if let Some(g) = self
            .generators
            .iter()
            .find(|g| g.iter().zip(&bound).any(|(x, b)| x > b))
        {
            return Err(Error::BoxTooSmall(format!(
                "generator {g:?} lies outside box {bound:?}"
            )));
        }
        self.bound = bound;
        Ok(self)
    }

    pub fn ambient(&self) -> &OrderSemigroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[OrderVector] {
        &self.generators
    }

    pub fn bound(&self) -> &[u32] {
        &self.bound
    }

    pub fn branches(&self) -> usize {
        self.ambient.branches()
    }

    pub fn realize(&self) -> Realization {
        Realization::compute(self)
    }
}

/// Exact membership of an order set inside its box.
#[derive(Debug, Clone)]
pub struct Realization {
    bound: OrderVector,
    // Mixed-radix strides over the capped grid [0, B + 1]^l.
    strides: Vec<usize>,
    member: Vec<bool>,
}

impl Realization {
    fn compute(set: &OrderSet) -> Self {
        let bound = set.bound.clone();
        let l = bound.len();
        let mut strides = vec![1usize; l];
        for i in 1..l {
            strides[i] = strides[i - 1] * (bound[i - 1] as usize + 2);
        }
        let size = strides[l - 1] * (bound[l - 1] as usize + 2);
        let mut r = Realization {
            bound,
            strides,
            member: vec![false; size],
        };

        let mut members: Vec<OrderVector> = Vec::new();
        let mut queue: Vec<OrderVector> = Vec::new();
        for g in &set.generators {
            r.insert(r.cap(g.clone()), &mut queue);
        }
        while let Some(x) = queue.pop() {
            for s in set.ambient.generators() {
                let y: OrderVector = x.iter().zip(s).map(|(a, b)| a + b).collect();
                r.insert(r.cap(y), &mut queue);
            }
            if l > 1 {
                for y in &members {
                    let m: OrderVector = x.iter().zip(y).map(|(a, b)| *a.min(b)).collect();
                    r.insert(m, &mut queue);
                }
            }
            members.push(x);
        }
        r
    }

    fn cap(&self, mut v: OrderVector) -> OrderVector {
        for (x, b) in v.iter_mut().zip(&self.bound) {
            *x = (*x).min(b + 1);
        }
        v
    }

    fn index(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.strides)
            .map(|(&x, s)| x as usize * s)
            .sum()
    }

    fn insert(&mut self, v: OrderVector, queue: &mut Vec<OrderVector>) {
        let i = self.index(&v);
        if !self.member[i] {
            self.member[i] = true;
            queue.push(v);
        }
    }

    pub fn bound(&self) -> &[u32] {
        &self.bound
    }

    fn in_box(&self, v: &[u32]) -> bool {
        v.len() == self.bound.len() && v.iter().zip(&self.bound).all(|(x, b)| x <= b)
    }

    /// Membership of `v`, or `None` outside the box.
    pub fn contains(&self, v: &[u32]) -> Option<bool> {
        self.in_box(v).then(|| self.member[self.index(v)])
    }

    /// Every box point, in lexicographic order.
    pub fn box_points(&self) -> impl Iterator<Item = OrderVector> + '_ {
        let l = self.bound.len();
        let total: usize = self.bound.iter().map(|&b| b as usize + 1).product();
        (0..total).map(move |mut k| {
            let mut v = vec![0u32; l];
            for i in (0..l).rev() {
                let radix = self.bound[i] as usize + 1;
                v[i] = (k % radix) as u32;
                k /= radix;
            }
            v
        })
    }

    /// Members inside the box, in lexicographic order.
    pub fn members(&self) -> Vec<OrderVector> {
        self.box_points()
            .filter(|v| self.member[self.index(v)])
            .collect()
    }
}

/// Whether every `w ≥ v` outside the box reduces into `[v, B]` by
/// subtracting semigroup generators: for each nonempty set `J` of
/// overflowing axes some generator is supported in `J` and fits in the
/// slack `B_j + 1 − v_j`.
fn translation_certificate(semigroup: &OrderSemigroup, bound: &[u32], v: &[u32]) -> bool {
    let l = bound.len();
    (1u32..(1 << l)).all(|mask| {
        semigroup.generators().iter().any(|s| {
            (0..l).all(|i| {
                if mask & (1 << i) == 0 {
                    s[i] == 0
                } else {
                    s[i] <= bound[i] + 1 - v[i]
                }
            })
        })
    })
}

/// The least conductor `cond(O)`: the minimum of `{v : v + ℕ^l ⊂ O}`.
///
/// A box point is accepted when `[v, B]` lies in the set and the translation
/// certificate extends this past the box. If any point is accepted, the true
/// minimum is accepted too, so the answer is exact; otherwise the box is
/// reported as insufficient.
pub fn conductor(set: &OrderSet) -> Result<OrderVector> {
    let r = set.realize();
    let l = set.branches();
    let bound = r.bound.clone();

    let points: Vec<OrderVector> = r.box_points().collect();
    // `[v, B] ⊂ O`, filled from the top corner down.
    let mut upper_closed: BTreeMap<OrderVector, bool> = BTreeMap::new();
    for v in points.iter().rev() {
        let mut ok = r.member[r.index(v)];
        for i in 0..l {
            if ok && v[i] < bound[i] {
                let mut w = v.clone();
                w[i] += 1;
                ok = upper_closed[&w];
            }
        }
        upper_closed.insert(v.clone(), ok);
    }

    let candidates: Vec<&OrderVector> = points
        .iter()
        .filter(|v| upper_closed[*v] && translation_certificate(set.ambient(), &bound, v))
        .collect();
    let Some(first) = candidates.first() else {
        return Err(Error::NoConductorInBox);
    };
    let least: OrderVector = (0..l)
        .map(|i| candidates.iter().map(|v| v[i]).min().unwrap_or(first[i]))
        .collect();
    if candidates.iter().any(|v| **v == least) {
        Ok(least)
    } else {
        Err(Error::AmbiguousConductor)
    }
}

pub fn semigroup_conductor(semigroup: &OrderSemigroup) -> Result<OrderVector> {
    conductor(&semigroup.as_order_set())
}

/// Orders of the Gorenstein form along the branches of a curve,
/// `d_i = Σ_j q_j (C_i · E_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalVector(pub Vec<i64>);

impl CanonicalVector {
    pub fn zero(branches: usize) -> Self {
        CanonicalVector(vec![0; branches])
    }

    pub fn branches(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Vec<i64> {
        self.0.iter().map(|x| -x).collect()
    }
}

impl fmt::Display for CanonicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `intersections[i]` maps components to their intersection multiplicity
/// with branch `i`.
pub fn canonical_vector<T: Scalar>(
    g: &PlumbingGraph,
    data: &CanonicalData<T>,
    intersections: &[BTreeMap<VertexId, u32>],
) -> Result<CanonicalVector> {
    if !data.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    intersections
        .iter()
        .map(|branch| {
            branch.iter().try_fold(0i64, |acc, (id, &mult)| {
                if !g.contains(id) {
                    return Err(Error::UnknownVertex {
                        line: 0,
                        id: id.clone(),
                    });
                }
                let q = data
                    .order(id)
                    .and_then(Scalar::to_integer)
                    .ok_or(Error::NotNumericallyGorenstein)?;
                Ok(acc + q * i64::from(mult))
            })
        })
        .collect::<Result<Vec<i64>>>()
        .map(CanonicalVector)
}

fn max_vec(a: &[u32], b: &[u32]) -> OrderVector {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Whether `A ⊂ d + C`.
///
/// The inclusion is checked on every member of `A` inside the common box. It
/// extends beyond the box when both sets share their semigroup (the box
/// holds `A`'s generators and `d + C` is stable under translation and
/// minimum), when `cond(d + C) ≤ 0`, or, for one branch, when the box
/// reaches `cond(d + C)`. Otherwise the answer is refused.
pub fn valuative_condition(a: &OrderSet, c: &OrderSet, d: &CanonicalVector) -> Result<bool> {
    let l = a.branches();
    if c.branches() != l || d.branches() != l {
        return Err(invalid("branch counts of A, C and d differ"));
    }
    let common = max_vec(a.bound(), c.bound());
    let shifted: OrderVector = common
        .iter()
        .zip(&d.0)
        .map(|(&b, &di)| b + u32::try_from((-di).max(0)).unwrap_or(u32::MAX - b))
        .collect();
    let a_real = a.clone().with_box(common.clone())?.realize();
    let c_real = c.clone().with_box(shifted)?.realize();

    let boxed = a_real.members().iter().all(|m| {
        let w: Option<OrderVector> = m
            .iter()
            .zip(&d.0)
            .map(|(&x, &di)| u32::try_from(i64::from(x) - di).ok())
            .collect();
        w.is_some_and(|w| c_real.contains(&w) == Some(true))
    });

    // A counterexample inside the box is final.
    if !boxed || a.ambient() == c.ambient() {
        return Ok(boxed);
    }
    let cond_c = conductor(c)?;
    let cond_k: Vec<i64> = cond_c
        .iter()
        .zip(&d.0)
        .map(|(&x, &di)| i64::from(x) + di)
        .collect();
    if cond_k.iter().all(|&x| x <= 0) {
        debug_assert!(boxed, "ℕ^l ⊂ d + C once cond(d + C) ≤ 0");
        return Ok(boxed);
    }
    if l == 1 {
        if i64::from(common[0]) >= cond_k[0] {
            return Ok(boxed);
        }
        return Err(Error::BoxTooSmall(format!(
            "box {} does not reach cond(d + C) = {}",
            common[0], cond_k[0]
        )));
    }
    Err(Error::Uncertified(
        "several branches with different semigroups".into(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdaptedVerdict {
    /// `cond(C) = −d`: the resolution dominates the minimal adapted one.
    Equality,
    /// `cond(C) ≤ −d` with strict inequality somewhere.
    StrictlyBelow,
    /// `cond(C) ≰ −d`, impossible for a genuine module.
    Violation,
}

impl fmt::Display for AdaptedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdaptedVerdict::Equality => "equality",
            AdaptedVerdict::StrictlyBelow => "strictly-below",
            AdaptedVerdict::Violation => "violation",
        })
    }
}

pub fn minimal_adapted_test(c: &OrderSet, d: &CanonicalVector) -> Result<AdaptedVerdict> {
    if d.branches() != c.branches() {
        return Err(invalid("branch counts of C and d differ"));
    }
    let cond = conductor(c)?;
    let target = d.negated();
    let cond: Vec<i64> = cond.into_iter().map(i64::from).collect();
    Ok(if cond == target {
        AdaptedVerdict::Equality
    } else if cond.iter().zip(&target).all(|(c, t)| c <= t) {
        AdaptedVerdict::StrictlyBelow
    } else {
        AdaptedVerdict::Violation
    })
}
