//! Cohen-Macaulay representation type of Gorenstein surface singularities.

use std::fmt;

use crate::blowup::minimal_model;
use crate::canonical::{canonical_orders, CanonicalData};
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepType {
    /// Rational double points.
    Finite,
    /// Log-canonical but not a rational double point.
    Tame,
    Wild,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Finite => "finite",
            RepType::Tame => "tame",
            RepType::Wild => "wild",
        })
    }
}

/// Classification together with the data it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification<T> {
    pub rep_type: RepType,
    /// Arrow-free minimal model of the input.
    pub minimal_model: PlumbingGraph,
    pub canonical: CanonicalData<T>,
}

/// Reads the type off the discrepancies of the arrow-free minimal model:
/// all zero is finite, all `≥ −1` is tame, anything below `−1` is wild.
///
/// Only numerically Gorenstein graphs are accepted; for graphs that are
/// numerically but not analytically Gorenstein the verdict describes the
/// discrepancies, not a proven representation type.
pub fn classify<T: Scalar>(g: &PlumbingGraph) -> Result<Classification<T>> {
    let own = canonical_orders::<T>(g)?;
    if !own.is_numerically_gorenstein() {
        return Err(Error::NotNumericallyGorenstein);
    }
    let model = minimal_model(&g.without_arrows());
    let canonical = canonical_orders::<T>(&model)?;
    let minus_one = -T::one();
    let rep_type = if canonical.all_zero() {
        RepType::Finite
    } else if canonical.min_order().is_some_and(|m| *m >= minus_one) {
        RepType::Tame
    } else {
        RepType::Wild
    };
    Ok(Classification {
        rep_type,
        minimal_model: model,
        canonical,
    })
}

pub fn representation_type<T: Scalar>(g: &PlumbingGraph) -> Result<RepType> {
    classify::<T>(g).map(|c| c.rep_type)
}
