//! Set functions on subsets of the ground set, submodularity diagnostics,
//! the circuit condition, Lovász extensions and base polytopes.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{self, PointConfig};
use crate::linalg;
use crate::par::{self, Execution};
use crate::rational::{self, Rational};
use crate::subset::Subset;

/// Largest ground set for exhaustive submodularity checks.
pub const SUBMODULAR_LIMIT: usize = 16;
/// Largest ground set for full greedy enumeration of a base polytope.
pub const BASE_POLYTOPE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Table {
        default: Rational,
        values: BTreeMap<Subset, Rational>,
    },
    /// `-gcd` of the integer points indexed by the subset.
    NegGcd { points: Vec<BigInt> },
    /// `-1` on the full ground set, `0` elsewhere.
    NegIndicatorFull,
    /// `-1` on subsets containing the given point, `0` elsewhere.
    NegIndicatorPoint { point: usize },
    /// Rank of the selected columns.
    MatrixRank { columns: Vec<Vec<Rational>> },
    /// `-|X| / m`.
    NegCardRatio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    kind: Kind,
    m: usize,
    min_size: usize,
}

impl SetFunction {
    pub fn new(kind: Kind, m: usize) -> Result<Self> {
        match &kind {
            Kind::Table { values, .. } => {
                if let Some(s) = values.keys().find(|s| !s.is_subset_of(Subset::full(m))) {
                    return Err(Error::input(format!("table subset {s} outside the ground set")));
                }
            }
            Kind::NegGcd { points } => {
                if points.len() != m {
                    return Err(Error::input("neg_gcd needs one integer point per element"));
                }
                if points.iter().any(|p| p.is_zero()) {
                    return Err(Error::input("neg_gcd needs nonzero integer points"));
                }
            }
            Kind::NegIndicatorPoint { point } => {
                if *point >= m {
                    return Err(Error::input(format!("indicator point {} outside the ground set", point + 1)));
                }
            }
            Kind::MatrixRank { columns } => {
                if columns.len() != m {
                    return Err(Error::input("matrix_rank needs one column per element"));
                }
                if columns.iter().map(|c| c.len()).unique().count() > 1 {
                    return Err(Error::input("matrix_rank columns differ in length"));
                }
            }
            Kind::NegIndicatorFull | Kind::NegCardRatio => {}
        }
        if m == 0 || m > crate::subset::MAX_GROUND {
            return Err(Error::input(format!("unsupported ground size {m}")));
        }
        let f = SetFunction { kind, m, min_size: 0 };
        if let Kind::Table { .. } = f.kind {
            let empty = f.raw(Subset::EMPTY);
            if !empty.is_zero() {
                return Err(Error::input("table must satisfy F(empty) = 0"));
            }
        }
        Ok(f)
    }

    pub fn zero(m: usize) -> Self {
        SetFunction::table(m, Rational::zero(), BTreeMap::new()).expect("zero table")
    }

    pub fn table(m: usize, default: Rational, values: BTreeMap<Subset, Rational>) -> Result<Self> {
        let mut values = values;
        // the empty set is pinned to 0 unless it was given explicitly
        values.entry(Subset::EMPTY).or_insert_with(Rational::zero);
        SetFunction::new(Kind::Table { default, values }, m)
    }

    /// Tabulate an arbitrary function with `F(empty) = 0` forced.
    pub fn from_fn(m: usize, f: impl Fn(Subset) -> Rational) -> Result<Self> {
        let values = Subset::all(m)
            .filter(|s| !s.is_empty())
            .map(|s| (s, f(s)))
            .collect();
        SetFunction::table(m, Rational::zero(), values)
    }

    pub fn neg_gcd(config: &PointConfig) -> Result<Self> {
        let points = config
            .integer_line()
            .ok_or_else(|| Error::input("neg_gcd needs a one-dimensional integer configuration"))?;
        SetFunction::new(Kind::NegGcd { points }, config.len())
    }

    pub fn neg_indicator_full(m: usize) -> Self {
        SetFunction { kind: Kind::NegIndicatorFull, m, min_size: 0 }
    }

    pub fn neg_indicator_point(m: usize, point: usize) -> Result<Self> {
        SetFunction::new(Kind::NegIndicatorPoint { point }, m)
    }

    pub fn matrix_rank(columns: Vec<Vec<Rational>>) -> Result<Self> {
        let m = columns.len();
        SetFunction::new(Kind::MatrixRank { columns }, m)
    }

    pub fn neg_card_ratio(m: usize) -> Self {
        SetFunction { kind: Kind::NegCardRatio, m, min_size: 0 }
    }

    /// Restrict the domain to subsets of size at least `k`.
    pub fn with_min_size(mut self, k: usize) -> Self {
        self.min_size = k;
        self
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Table { .. } => "table",
            Kind::NegGcd { .. } => "neg_gcd",
            Kind::NegIndicatorFull => "neg_indicator_full",
            Kind::NegIndicatorPoint { .. } => "neg_indicator_point",
            Kind::MatrixRank { .. } => "matrix_rank",
            Kind::NegCardRatio => "neg_card_ratio",
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn min_size(&self) -> usize {
        self.min_size
    }

    pub fn evaluate(&self, s: Subset) -> Result<Rational> {
        if s.len() < self.min_size && !(s.is_empty() && self.min_size == 0) {
            return Err(Error::domain(format!(
                "F is defined on subsets of size >= {}, got {{{s}}}",
                self.min_size
            )));
        }
        if !s.is_subset_of(Subset::full(self.m)) {
            return Err(Error::domain(format!("subset {{{s}}} outside the ground set")));
        }
        Ok(self.raw(s))
    }

    fn raw(&self, s: Subset) -> Rational {
        match &self.kind {
            Kind::Table { default, values } => values.get(&s).unwrap_or(default).clone(),
            Kind::NegGcd { points } => {
                let g = s
                    .indices()
                    .into_iter()
                    .fold(BigInt::zero(), |g, i| g.gcd(&points[i]));
                -Rational::from_integer(g)
            }
            Kind::NegIndicatorFull => {
                if s == Subset::full(self.m) {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Kind::NegIndicatorPoint { point } => {
                if s.contains(*point) {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Kind::MatrixRank { columns } => {
                let sel: Vec<Vec<Rational>> = s.indices().into_iter().map(|i| columns[i].clone()).collect();
                rational::int(linalg::rank(&sel) as i64)
            }
            Kind::NegCardRatio => -rational::frac(s.len() as i64, self.m as i64),
        }
    }

    /// Values on all subsets, indexed by mask; entries below `min_size` are
    /// computed as if the domain were unrestricted.
    pub fn tabulate(&self) -> Result<Vec<Rational>> {
        if self.m > 24 {
            return Err(Error::resource(format!("cannot tabulate F on 2^{} subsets", self.m)));
        }
        Ok(Subset::all(self.m).map(|s| self.raw(s)).collect())
    }

    /// The same function with different values on the listed subsets.
    pub fn perturbed(&self, changes: &[(Subset, Rational)]) -> Result<Self> {
        let mut values: BTreeMap<Subset, Rational> = Subset::all(self.m).map(|s| (s, self.raw(s))).collect();
        for (s, v) in changes {
            values.insert(*s, v.clone());
        }
        Ok(SetFunction::table(self.m, Rational::zero(), values)?.with_min_size(self.min_size))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub base: Subset,
    pub x1: usize,
    pub x2: usize,
    /// `F(X + x1), F(X + x2), F(X), F(X + x1 + x2)`.
    pub values: [Rational; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularityReport {
    pub holds: bool,
    pub witness: Option<Violation>,
}

/// Exhaustive check of `F(X+x1) + F(X+x2) >= F(X) + F(X+x1+x2)`.
pub fn is_submodular(f: &SetFunction) -> Result<SubmodularityReport> {
    if f.min_size != 0 {
        return Err(Error::domain("submodularity needs F defined on all subsets"));
    }
    check_pairs(f, 0, SUBMODULAR_LIMIT, Execution::default())
}

/// The same check restricted to `|X| >= n`.
pub fn is_submodular_above(f: &SetFunction, n: usize) -> Result<SubmodularityReport> {
    check_pairs(f, n, SUBMODULAR_LIMIT, Execution::default())
}

pub fn check_pairs(f: &SetFunction, n: usize, limit: usize, exec: Execution) -> Result<SubmodularityReport> {
    let m = f.m;
    if m > limit {
        return Err(Error::resource(format!(
            "exhaustive submodularity check limited to m <= {limit}, got {m}"
        )));
    }
    let table = f.tabulate()?;
    let bases: Vec<Subset> = Subset::all(m).filter(|x| x.len() >= n && x.len() + 2 <= m).collect();
    let violation = |x: &Subset| -> Option<Violation> {
        let outside: Vec<usize> = (0..m).filter(|&i| !x.contains(i)).collect();
        for (a, &x1) in outside.iter().enumerate() {
            for &x2 in &outside[a + 1..] {
                let v1 = &table[x.with(x1).0 as usize];
                let v2 = &table[x.with(x2).0 as usize];
                let v0 = &table[x.0 as usize];
                let v12 = &table[x.with(x1).with(x2).0 as usize];
                if v1 + v2 < v0 + v12 {
                    return Some(Violation {
                        base: *x,
                        x1,
                        x2,
                        values: [v1.clone(), v2.clone(), v0.clone(), v12.clone()],
                    });
                }
            }
        }
        None
    };
    let first = par::position_first(exec, &bases, |x| violation(x).is_some());
    let witness = first.and_then(|i| violation(&bases[i]));
    Ok(SubmodularityReport { holds: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitConditionReport {
    pub holds: bool,
    /// `(J, value)` for every `(n+2)`-subset spanning affinely.
    pub entries: Vec<(Subset, Rational)>,
}

/// `sum_{k in J0} F(J - k) - (|J0| - 1) F(J) - F(full) >= 0` for every
/// `(n+2)`-subset `J` whose image spans `Q^n` affinely.
pub fn circuit_condition_check(f: &SetFunction, config: &PointConfig) -> Result<CircuitConditionReport> {
    let n = config.dim();
    let m = config.len();
    if f.m != m {
        return Err(Error::input("set function and configuration differ in ground size"));
    }
    let full = f.evaluate(config.full())?;
    let mut entries = Vec::new();
    for j in Subset::combinations(m, n + 2) {
        let labels = j.indices();
        let pts = config.select(j);
        if geometry::affine_rank(&pts)? != n {
            continue;
        }
        let circuit = geometry::find_circuit(&labels, &pts)?;
        let j0 = circuit.support;
        let mut value = -(rational::int(j0.len() as i64 - 1) * f.evaluate(j)?) - &full;
        for k in j0.indices() {
            value += f.evaluate(j.without(k))?;
        }
        entries.push((j, value));
    }
    let holds = entries.iter().all(|(_, v)| *v >= Rational::zero());
    Ok(CircuitConditionReport { holds, entries })
}

/// Descending order of coordinates, ties by ascending index.
pub fn descending_order(x: &[Rational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].cmp(&x[a]).then(a.cmp(&b)));
    order
}

pub fn lovasz_extension(f: &SetFunction, x: &[Rational]) -> Result<Rational> {
    if x.len() != f.m {
        return Err(Error::input(format!("vector has {} coordinates, expected {}", x.len(), f.m)));
    }
    let order = descending_order(x);
    let y = greedy_vertex(f, &order)?;
    Ok(rational::dot(&y, x))
}

/// `y_{order(i)} = F(order[..=i]) - F(order[..i])`, 0-based order.
pub fn greedy_vertex(f: &SetFunction, order: &[usize]) -> Result<Vec<Rational>> {
    if order.len() != f.m || order.iter().collect::<BTreeSet<_>>().len() != f.m || order.iter().any(|&i| i >= f.m) {
        return Err(Error::input("order must be a permutation of the ground set"));
    }
    let mut y = vec![Rational::zero(); f.m];
    let mut prefix = Subset::EMPTY;
    let mut prev = f.evaluate(prefix)?;
    for &i in order {
        prefix = prefix.with(i);
        let cur = f.evaluate(prefix)?;
        y[i] = &cur - &prev;
        prev = cur;
    }
    Ok(y)
}

/// Distinct greedy vertices over all orders, sorted.
pub fn base_polytope(f: &SetFunction) -> Result<Vec<Vec<Rational>>> {
    if f.m > BASE_POLYTOPE_LIMIT {
        return Err(Error::resource(format!(
            "base polytope enumeration limited to m <= {BASE_POLYTOPE_LIMIT}"
        )));
    }
    let report = is_submodular(f)?;
    if let Some(w) = report.witness {
        return Err(Error::domain(format!(
            "F is not submodular: X = {{{}}}, x1 = {}, x2 = {}",
            w.base,
            w.x1 + 1,
            w.x2 + 1
        )));
    }
    let mut out = BTreeSet::new();
    for order in (0..f.m).permutations(f.m) {
        out.insert(greedy_vertex(f, &order)?);
    }
    Ok(out.into_iter().collect())
}

/// `sum_{s in X} y_s <= F(X)` for every `X`.
pub fn submodular_polyhedron_contains(f: &SetFunction, y: &[Rational]) -> Result<bool> {
    if y.len() != f.m {
        return Err(Error::input("vector length differs from the ground size"));
    }
    for s in Subset::all(f.m) {
        let lhs: Rational = s.indices().into_iter().map(|i| &y[i]).sum();
        if lhs > f.evaluate(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
