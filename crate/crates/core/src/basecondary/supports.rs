use itertools::Itertools;
use num_traits::Signed;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{self, CircuitData, PointConfig};
use crate::rational::{self, Rational};
use crate::secondary::{self, check_gamma};
use crate::subset::Subset;

/// Linear `L` for which `gamma - L o A` is maximal exactly on `n + 1`
/// affinely independent points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSupport {
    pub linear: Vec<Rational>,
    pub max_value: Rational,
    pub maximizers: Subset,
    /// Values off the maximizers are pairwise distinct.
    pub generic: bool,
}

/// Linear `L` for which `gamma - L o A` is maximal exactly on `n + 2`
/// points spanning affinely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitalSupport {
    pub linear: Vec<Rational>,
    pub max_value: Rational,
    pub maximizers: Subset,
    pub circuit: CircuitData,
}

/// An arrangement of the ground set: `head` maximizers followed by the
/// remaining points in strictly descending `gamma - L o A` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSupport {
    pub tuple: Vec<usize>,
    pub head: usize,
}

impl OrderedSupport {
    pub fn one_based(&self) -> Vec<usize> {
        self.tuple.iter().map(|i| i + 1).collect()
    }

    /// The set of the first `k` entries.
    pub fn prefix(&self, k: usize) -> Subset {
        Subset::from_indices(self.tuple[..k].iter().copied())
    }
}

/// `gamma(i) - L(A(i))` for every ground element.
pub fn shifted_values(config: &PointConfig, gamma: &[Rational], linear: &[Rational]) -> Vec<Rational> {
    (0..config.len())
        .map(|i| &gamma[i] - rational::dot(linear, config.point(i)))
        .collect()
}

/// Linear part making `gamma - L o A` constant on `idx`, and the maximizer
/// set of the result.
fn support_on(config: &PointConfig, gamma: &[Rational], idx: &[usize]) -> Option<(Vec<Rational>, Rational, Subset)> {
    let (linear, _) = geometry::affine_fit(config.points(), gamma, idx)?;
    let v = shifted_values(config, gamma, &linear);
    let top = v.iter().max()?.clone();
    let arg = Subset::from_indices((0..v.len()).filter(|&i| v[i] == top));
    Some((linear, top, arg))
}

fn all_distinct(values: impl Iterator<Item = Rational>) -> bool {
    let mut seen = BTreeSet::new();
    values.into_iter().all(|v| seen.insert(v))
}

pub fn enumerate_simplicial(config: &PointConfig, gamma: &[Rational]) -> Result<Vec<SimplicialSupport>> {
    check_gamma(config, gamma)?;
    let n = config.dim();
    let mut out = Vec::new();
    for b in Subset::combinations(config.len(), n + 1) {
        if geometry::affine_rank(&config.select(b))? != n {
            continue;
        }
        let Some((linear, max_value, arg)) = support_on(config, gamma, &b.indices()) else {
            continue;
        };
        if arg != b {
            continue;
        }
        let v = shifted_values(config, gamma, &linear);
        let generic = all_distinct((0..v.len()).filter(|&i| !b.contains(i)).map(|i| v[i].clone()));
        out.push(SimplicialSupport { linear, max_value, maximizers: b, generic });
    }
    Ok(out)
}

pub fn enumerate_circuital(config: &PointConfig, gamma: &[Rational]) -> Result<Vec<CircuitalSupport>> {
    check_gamma(config, gamma)?;
    let n = config.dim();
    let mut out = Vec::new();
    for j in Subset::combinations(config.len(), n + 2) {
        let pts = config.select(j);
        if geometry::affine_rank(&pts)? != n {
            continue;
        }
        let idx = j.indices();
        let Some((linear, max_value, arg)) = support_on(config, gamma, &idx) else {
            continue;
        };
        if arg != j {
            continue;
        }
        let circuit = geometry::find_circuit(&idx, &pts)?;
        out.push(CircuitalSupport { linear, max_value, maximizers: j, circuit });
    }
    Ok(out)
}

/// `gamma` induces a triangulation and every simplicial support is generic.
pub fn is_generic(config: &PointConfig, gamma: &[Rational]) -> Result<bool> {
    let sub = secondary::regular_subdivision(config, gamma)?;
    if !sub.is_triangulation(config.dim()) {
        return Ok(false);
    }
    Ok(enumerate_simplicial(config, gamma)?.iter().all(|s| s.generic))
}

fn descending_tail(v: &[Rational], head: Subset) -> Vec<usize> {
    let mut tail: Vec<usize> = (0..v.len()).filter(|&i| !head.contains(i)).collect();
    tail.sort_by(|&a, &b| v[b].cmp(&v[a]));
    tail
}

pub fn order_simplicial(config: &PointConfig, gamma: &[Rational], s: &SimplicialSupport) -> Result<OrderedSupport> {
    if !s.generic {
        return Err(Error::domain("simplicial support is not generic"));
    }
    let mut head = s.maximizers.indices();
    let verts: Vec<_> = head.iter().map(|&i| config.point(i).clone()).collect();
    if geometry::oriented_volume(&verts)?.is_negative() {
        head.swap(0, 1);
    }
    let v = shifted_values(config, gamma, &s.linear);
    let mut tuple = head;
    tuple.extend(descending_tail(&v, s.maximizers));
    Ok(OrderedSupport { tuple, head: config.dim() + 1 })
}

/// Both sides of the circuital ordering identity for the first `n + 2`
/// entries of `tuple`: `(vol, positive-side sum, negative-side sum)`.
pub fn perm_circuit_sums(config: &PointConfig, tuple: &[usize], p: usize, q: usize) -> Result<(Rational, Rational, Rational)> {
    let n = config.dim();
    let head = &tuple[..n + 2];
    let vol = geometry::lattice_volume(&head.iter().map(|&i| config.point(i).clone()).collect::<Vec<_>>());
    let facet = |skip: usize| -> Result<Rational> {
        let verts: Vec<_> = head
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &i)| config.point(i).clone())
            .collect();
        geometry::oriented_volume(&verts)
    };
    let sign = |e: usize| if e.is_multiple_of(2) { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
    let mut s1 = Rational::default();
    for i in 1..=p {
        s1 += sign(i) * facet(i - 1)?;
    }
    let mut s2 = Rational::default();
    for i in p + 1..=p + q {
        s2 += sign(i + 1) * facet(i - 1)?;
    }
    Ok((vol, s1, s2))
}

pub fn order_circuital(config: &PointConfig, gamma: &[Rational], c: &CircuitalSupport) -> Result<OrderedSupport> {
    let n = config.dim();
    if n == 0 {
        return Err(Error::domain("no circuital ordering exists for a zero-dimensional configuration"));
    }
    let v = shifted_values(config, gamma, &c.linear);
    let tail = descending_tail(&v, c.maximizers);
    if !all_distinct(tail.iter().map(|&i| v[i].clone())) {
        return Err(Error::domain("values off the circuit are not pairwise distinct"));
    }
    let circ = &c.circuit;
    let pos: Vec<usize> = circ.positive.iter().map(|x| x.0).collect();
    let neg: Vec<usize> = circ.negative.iter().map(|x| x.0).collect();
    let zero = circ.zero.clone();
    let blocks = [pos, neg, zero];
    let mut perms = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    for choice in &mut perms {
        let mut tuple: Vec<usize> = choice.concat();
        let (vol, s1, s2) = perm_circuit_sums(config, &tuple, circ.p, circ.q)?;
        if vol == s1 && vol == s2 {
            tuple.extend(tail.iter().copied());
            return Ok(OrderedSupport { tuple, head: n + 2 });
        }
    }
    Err(Error::internal("no block ordering satisfies the circuital volume identity"))
}

/// Ordered simplicial supports of a generic `gamma`, which fix the linear
/// piece of the basecondary function around it. `None` if not generic.
pub fn signature(config: &PointConfig, gamma: &[Rational]) -> Result<Option<Vec<Vec<usize>>>> {
    if !secondary::regular_subdivision(config, gamma)?.is_triangulation(config.dim()) {
        return Ok(None);
    }
    let supports = enumerate_simplicial(config, gamma)?;
    if !supports.iter().all(|s| s.generic) {
        return Ok(None);
    }
    supports
        .iter()
        .map(|s| order_simplicial(config, gamma, s).map(|o| o.tuple))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}
