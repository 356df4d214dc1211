//! Point configurations, oriented and lattice volumes, affine circuits and
//! upper-hull cells of lifted point sets.
//!
//! All volumes are determinant-normalized: an oriented `k`-simplex has
//! volume `det(v1 - v0, ..., vk - v0)`, i.e. `k!` times its Euclidean volume.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};
use crate::subset::{Subset, MAX_GROUND};

pub type Point = Vec<Rational>;

/// The ground set `{1..m}` together with the map `A` into `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Point>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let m = points.len();
        if m < 2 {
            return Err(Error::input(format!("ground set needs m > 1 points, got {m}")));
        }
        if m > MAX_GROUND {
            return Err(Error::input(format!("at most {MAX_GROUND} points supported")));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::input(format!(
                "point {} has {} coordinates, expected {dim}",
                i + 1,
                p.len()
            )));
        }
        if dim >= 1 {
            let distinct: BTreeSet<&Point> = points.iter().collect();
            if distinct.len() != m {
                return Err(Error::input("points must be pairwise distinct when n >= 1"));
            }
        }
        Ok(PointConfig { dim, points })
    }

    /// One-dimensional configuration from integers.
    pub fn line(values: &[i64]) -> Result<Self> {
        PointConfig::new(1, values.iter().map(|&v| vec![rational::int(v)]).collect())
    }

    /// `m` copies of the single point of `Q^0`.
    pub fn zero_dim(m: usize) -> Result<Self> {
        PointConfig::new(0, vec![Vec::new(); m])
    }

    pub fn from_integer_points(dim: usize, pts: &[Vec<i64>]) -> Result<Self> {
        PointConfig::new(
            dim,
            pts.iter()
                .map(|p| p.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn select(&self, s: Subset) -> Vec<Point> {
        s.indices().into_iter().map(|i| self.points[i].clone()).collect()
    }

    /// `(A(i), height)` in `Q^{n+1}`.
    pub fn lifted(&self, i: usize, height: &Rational) -> Point {
        let mut p = self.points[i].clone();
        p.push(height.clone());
        p
    }

    /// Integer coordinates of a one-dimensional configuration.
    pub fn integer_line(&self) -> Option<Vec<BigInt>> {
        if self.dim != 1 {
            return None;
        }
        self.points
            .iter()
            .map(|p| rational::is_integer(&p[0]).then(|| p[0].numer().clone()))
            .collect()
    }
}

/// An ordered list of `k + 1` points, possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Self {
        Simplex { vertices }
    }

    pub fn oriented_volume(&self) -> Result<Rational> {
        oriented_volume(&self.vertices)
    }
}

/// `det(v1 - v0, ..., vk - v0)` for `k + 1` points in `Q^k`.
pub fn oriented_volume(vertices: &[Point]) -> Result<Rational> {
    let Some(v0) = vertices.first() else {
        return Err(Error::input("oriented volume of an empty vertex list"));
    };
    let k = vertices.len() - 1;
    if let Some(bad) = vertices.iter().find(|v| v.len() != k) {
        return Err(Error::input(format!(
            "oriented volume needs {} points in Q^{k}, got a point in Q^{}",
            k + 1,
            bad.len()
        )));
    }
    Ok(linalg::det(&differences(v0, &vertices[1..])))
}

fn differences(base: &Point, rest: &[Point]) -> linalg::Matrix {
    rest.iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect()
}

/// Dimension of the affine span of a nonempty point list.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    let Some(p0) = points.first() else {
        return Err(Error::input("affine rank of an empty point list"));
    };
    Ok(linalg::rank(&differences(p0, &points[1..])))
}

/// Lattice-normalized `d`-volume of the convex hull of points in `Q^d`.
///
/// The hull is triangulated by a placing-type regular triangulation (heights
/// `t^i` for growing `t`) and the absolute simplex volumes are summed.
pub fn lattice_volume(points: &[Point]) -> Rational {
    let uniq: Vec<Point> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let Some(d) = uniq.first().map(|p| p.len()) else {
        return Rational::zero();
    };
    if d == 0 {
        return Rational::one();
    }
    if affine_rank(&uniq).map_or(true, |r| r < d) {
        return Rational::zero();
    }
    if uniq.len() == d + 1 {
        return oriented_volume(&uniq).map(|v| v.abs()).unwrap_or_default();
    }
    match placing_triangulation(&uniq) {
        Some(cells) => cells
            .iter()
            .map(|c| {
                let verts: Vec<Point> = c.iter().map(|&i| uniq[i].clone()).collect();
                oriented_volume(&verts).map(|v| v.abs()).unwrap_or_default()
            })
            .sum(),
        None => unreachable!("placing heights always triangulate for large t"),
    }
}

/// Triangulation of a full-dimensional point set from heights `t^i`.
///
/// Returns cells as index lists into `points`; `None` only if no tried `t`
/// gave a triangulation, which does not happen for distinct points.
pub fn placing_triangulation(points: &[Point]) -> Option<Vec<Vec<usize>>> {
    let d = points.first()?.len();
    for t in 2i64..66 {
        let mut h = Rational::one();
        let heights: Vec<Rational> = (0..points.len())
            .map(|_| {
                let cur = h.clone();
                h *= rational::int(t);
                cur
            })
            .collect();
        let cells = upper_cells(points, &heights);
        if !cells.is_empty() && cells.iter().all(|c| c.len() == d + 1) {
            return Some(cells);
        }
    }
    None
}

/// Affine function `x -> linear . x + offset` agreeing with `heights` on the
/// points of `subset`, when one exists and is unique.
pub fn affine_fit(
    points: &[Point],
    heights: &[Rational],
    subset: &[usize],
) -> Option<(Vec<Rational>, Rational)> {
    let d = points.first()?.len();
    let &first = subset.first()?;
    // pick d affinely independent directions from the subset
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: linalg::Matrix = Vec::new();
    for &i in &subset[1..] {
        let row: Vec<Rational> = points[i].iter().zip(&points[first]).map(|(a, b)| a - b).collect();
        let mut trial = rows.clone();
        trial.push(row.clone());
        if linalg::rank(&trial) == trial.len() {
            rows = trial;
            basis.push(i);
            if rows.len() == d {
                break;
            }
        }
    }
    if rows.len() != d {
        return None;
    }
    let rhs: Vec<Rational> = basis.iter().map(|&i| &heights[i] - &heights[first]).collect();
    let linear = linalg::solve(&rows, &rhs)?;
    let offset = &heights[first] - rational::dot(&linear, &points[first]);
    let fits = subset
        .iter()
        .all(|&i| rational::dot(&linear, &points[i]) + &offset == heights[i]);
    fits.then_some((linear, offset))
}

/// Full-dimensional upper-hull cells of the lifted points `(p_i, h_i)`.
///
/// A cell is the maximizer set of `h - L(p)` over all linear `L` for which
/// that set spans `Q^d` affinely. Cells are returned as sorted index lists,
/// lexicographically ordered. Empty when the points do not span `Q^d`.
pub fn upper_cells(points: &[Point], heights: &[Rational]) -> Vec<Vec<usize>> {
    let Some(d) = points.first().map(|p| p.len()) else {
        return Vec::new();
    };
    let m = points.len();
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for base in Subset::combinations(m, d + 1) {
        let idx = base.indices();
        if cells.iter().any(|c| idx.iter().all(|i| c.contains(i))) {
            continue;
        }
        let Some((linear, _)) = affine_fit(points, heights, &idx) else {
            continue;
        };
        if d > 0 && affine_rank(&idx.iter().map(|&i| points[i].clone()).collect::<Vec<_>>()).ok() != Some(d) {
            continue;
        }
        let v: Vec<Rational> = (0..m)
            .map(|k| &heights[k] - rational::dot(&linear, &points[k]))
            .collect();
        let top = v.iter().max().unwrap();
        if v[idx[0]] == *top {
            cells.insert((0..m).filter(|&k| v[k] == *top).collect());
        }
    }
    cells.into_iter().collect()
}

/// The affine dependence among `n + 2` points spanning `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitData {
    /// Ground indices carrying a nonzero coefficient (`J0`).
    pub support: Subset,
    pub p: usize,
    pub q: usize,
    /// `(index, lambda)` with `lambda > 0`, listed in input order.
    pub positive: Vec<(usize, Rational)>,
    /// `(index, mu)` with `mu > 0`, listed in input order.
    pub negative: Vec<(usize, Rational)>,
    /// Indices whose coefficient is zero (`J \ J0`).
    pub zero: Vec<usize>,
}

impl CircuitData {
    /// Positive side first, then negative side, then zero-coefficient points.
    pub fn ordering(&self) -> Vec<usize> {
        self.positive
            .iter()
            .map(|(i, _)| *i)
            .chain(self.negative.iter().map(|(i, _)| *i))
            .chain(self.zero.iter().copied())
            .collect()
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        if let Some((_, c)) = self.positive.iter().find(|(j, _)| *j == i) {
            return c.clone();
        }
        if let Some((_, c)) = self.negative.iter().find(|(j, _)| *j == i) {
            return -c.clone();
        }
        Rational::zero()
    }
}

/// Unique affine relation `sum lambda_i A(b_i) = sum mu_j A(b_j)` among
/// `n + 2` points spanning `Q^n` affinely.
///
/// The side with fewer points is the positive one (ties: the side holding the
/// first nonzero coefficient in input order); coefficients are scaled so the
/// smallest positive one equals 1.
pub fn find_circuit(labels: &[usize], points: &[Point]) -> Result<CircuitData> {
    let Some(n) = points.first().map(|p| p.len()) else {
        return Err(Error::input("circuit of an empty point list"));
    };
    if points.len() != n + 2 || labels.len() != points.len() {
        return Err(Error::input(format!(
            "a circuit in Q^{n} needs exactly {} points",
            n + 2
        )));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::input("mixed point dimensions in circuit"));
    }
    if affine_rank(points)? != n {
        return Err(Error::input("points lie in an affine hyperplane"));
    }
    let mut rows: linalg::Matrix = (0..n)
        .map(|c| points.iter().map(|p| p[c].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); n + 2]);
    let kernel = linalg::kernel(&rows, n + 2);
    if kernel.len() != 1 {
        return Err(Error::internal("affine relation is not unique"));
    }
    let mut coeffs = kernel.into_iter().next().unwrap();
    let pos = coeffs.iter().filter(|c| c.is_positive()).count();
    let neg = coeffs.iter().filter(|c| c.is_negative()).count();
    let first_nonzero_negative = coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    if pos > neg || (pos == neg && first_nonzero_negative) {
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    let min_pos = coeffs.iter().filter(|c| c.is_positive()).min().cloned().unwrap();
    for c in coeffs.iter_mut() {
        *c /= &min_pos;
    }
    let mut out = CircuitData {
        support: Subset::EMPTY,
        p: 0,
        q: 0,
        positive: Vec::new(),
        negative: Vec::new(),
        zero: Vec::new(),
    };
    for (&label, c) in labels.iter().zip(coeffs) {
        if c.is_positive() {
            out.positive.push((label, c));
            out.support = out.support.with(label);
        } else if c.is_negative() {
            out.negative.push((label, -c));
            out.support = out.support.with(label);
        } else {
            out.zero.push(label);
        }
    }
    out.p = out.positive.len();
    out.q = out.negative.len();
    Ok(out)
}
