use num_traits::Zero;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{self, PointConfig};
use crate::rational::{self, Rational};
use crate::secondary;
use crate::setfun::SetFunction;
use crate::subset::Subset;

use super::supports::{enumerate_simplicial, is_generic, order_simplicial, shifted_values};

/// Orientation convention for the lifted `(n+1)`-simplices of the
/// simplicial expansion; pinned by agreement with the threshold evaluator.
pub const ORIENTATION_SIGN: i64 = -1;

fn check_ground(config: &PointConfig, f: &SetFunction) -> Result<()> {
    if f.m() != config.len() {
        return Err(Error::input(format!(
            "set function has ground size {}, configuration has {}",
            f.m(),
            config.len()
        )));
    }
    Ok(())
}

/// The basecondary function at an arbitrary `gamma`.
///
/// For each full-dimensional upper cell with linear part `L` and maximum
/// `M` of `v = gamma - L o A`, adds
/// `Vol(cell) * sum_{c < M} (c - M) * (F{v >= c} - F{v > c})`
/// over the values `c` taken by `v`.
pub fn eval_general(config: &PointConfig, f: &SetFunction, gamma: &[Rational]) -> Result<Rational> {
    check_ground(config, f)?;
    let sub = secondary::regular_subdivision(config, gamma)?;
    let mut total = Rational::zero();
    for &cell in sub.cells() {
        let (linear, _) = geometry::affine_fit(config.points(), gamma, &cell.indices())
            .ok_or_else(|| Error::internal("upper cell without an affine lift"))?;
        let v = shifted_values(config, gamma, &linear);
        let top = v.iter().max().cloned().unwrap_or_default();
        let vol = geometry::lattice_volume(&config.select(cell));
        let levels: BTreeSet<&Rational> = v.iter().filter(|c| **c < top).collect();
        let mut inner = Rational::zero();
        for c in levels {
            let at_least = Subset::from_indices((0..v.len()).filter(|&i| v[i] >= *c));
            let above = Subset::from_indices((0..v.len()).filter(|&i| v[i] > *c));
            inner += (c - &top) * (f.evaluate(at_least)? - f.evaluate(above)?);
        }
        total += vol * inner;
    }
    Ok(total)
}

/// One summand of the simplicial expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    /// Ordered maximizers followed by the tail point.
    pub simplex: Vec<usize>,
    /// `F(S_{i-1}) - F(S_i)` for the prefixes of the ordering.
    pub f_difference: Rational,
    /// Signed lifted volume, orientation sign included.
    pub volume: Rational,
}

impl ExpansionTerm {
    pub fn value(&self) -> Rational {
        &self.f_difference * &self.volume
    }
}

/// Nonzero summands of the simplicial expansion at a generic `gamma`.
pub fn expansion_terms(config: &PointConfig, f: &SetFunction, gamma: &[Rational]) -> Result<Vec<ExpansionTerm>> {
    check_ground(config, f)?;
    if !is_generic(config, gamma)? {
        return Err(Error::domain("heights are not generic; use the general evaluator"));
    }
    let n = config.dim();
    let sign = rational::int(ORIENTATION_SIGN);
    let mut terms = Vec::new();
    for s in enumerate_simplicial(config, gamma)? {
        let ord = order_simplicial(config, gamma, &s)?;
        let head = &ord.tuple[..n + 1];
        let mut prev = f.evaluate(ord.prefix(n + 1))?;
        for k in n + 1..ord.tuple.len() {
            let cur = f.evaluate(ord.prefix(k + 1))?;
            let diff = &prev - &cur;
            prev = cur;
            if diff.is_zero() {
                continue;
            }
            let mut simplex = head.to_vec();
            simplex.push(ord.tuple[k]);
            let lifted: Vec<_> = simplex.iter().map(|&i| config.lifted(i, &gamma[i])).collect();
            let volume = &sign * geometry::oriented_volume(&lifted)?;
            if volume.is_zero() {
                continue;
            }
            terms.push(ExpansionTerm { simplex, f_difference: diff, volume });
        }
    }
    Ok(terms)
}

/// The basecondary function at a generic `gamma` via the simplicial
/// expansion.
pub fn eval_generic(config: &PointConfig, f: &SetFunction, gamma: &[Rational]) -> Result<Rational> {
    Ok(expansion_terms(config, f, gamma)?.iter().map(|t| t.value()).sum())
}
