//! Convex polygons in `Q^2`, Minkowski sums, and fiber polygons of convex
//! hulls in `Q^3` under projection to the first coordinate.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::rational::{self, Rational};

pub type P2 = (Rational, Rational);

/// A convex polygon stored counterclockwise from its lexicographically
/// smallest vertex, with no three consecutive vertices collinear. May be
/// empty, a single point or a segment (two vertices).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polygon2 {
    vertices: Vec<P2>,
}

fn cross(o: &P2, a: &P2, b: &P2) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl Polygon2 {
    pub fn empty() -> Self {
        Polygon2 { vertices: Vec::new() }
    }

    pub fn point(p: P2) -> Self {
        Polygon2 { vertices: vec![p] }
    }

    /// Convex hull (monotone chain) in canonical form.
    pub fn hull<I: IntoIterator<Item = P2>>(points: I) -> Self {
        let pts: Vec<P2> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.len() <= 2 {
            return Polygon2 { vertices: pts };
        }
        let mut lower: Vec<P2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<P2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        // all collinear: monotone chain leaves the two endpoints
        Polygon2 { vertices: lower }
    }

    pub fn from_integers(pts: &[(i64, i64)]) -> Self {
        Polygon2::hull(pts.iter().map(|&(x, y)| (rational::int(x), rational::int(y))))
    }

    pub fn vertices(&self) -> &[P2] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Euclidean area (shoelace).
    pub fn area(&self) -> Rational {
        let v = &self.vertices;
        if v.len() < 3 {
            return Rational::zero();
        }
        let twice: Rational = (0..v.len())
            .map(|i| {
                let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                &a.0 * &b.1 - &a.1 * &b.0
            })
            .sum();
        twice / rational::int(2)
    }

    /// Nonnegative cross products around the boundary.
    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        if v.len() < 3 {
            return true;
        }
        (0..v.len()).all(|i| !cross(&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]).is_negative())
    }

    pub fn scale(&self, t: &Rational) -> Self {
        if t.is_zero() {
            return match self.vertices.first() {
                Some(_) => Polygon2::point((Rational::zero(), Rational::zero())),
                None => Polygon2::empty(),
            };
        }
        Polygon2::hull(self.vertices.iter().map(|(x, y)| (x * t, y * t)))
    }

    pub fn translate(&self, d: &P2) -> Self {
        Polygon2 {
            vertices: self.vertices.iter().map(|(x, y)| (x + &d.0, y + &d.1)).collect(),
        }
    }

    /// `max <u, v>` over the polygon.
    pub fn support(&self, u: &P2) -> Option<Rational> {
        self.vertices.iter().map(|(x, y)| x * &u.0 + y * &u.1).max()
    }

    /// Minkowski sum by merging edge vectors sorted by angle.
    pub fn minkowski_sum(&self, other: &Polygon2) -> Polygon2 {
        if self.is_empty() || other.is_empty() {
            return Polygon2::empty();
        }
        let start = (
            &self.vertices[0].0 + &other.vertices[0].0,
            &self.vertices[0].1 + &other.vertices[0].1,
        );
        let mut edges = self.edges();
        edges.extend(other.edges());
        edges.sort_by(angle_cmp);
        let mut out = Vec::with_capacity(edges.len() + 1);
        let mut cur = start;
        out.push(cur.clone());
        for (dx, dy) in edges {
            cur = (&cur.0 + dx, &cur.1 + dy);
            out.push(cur.clone());
        }
        Polygon2::hull(out)
    }

    fn edges(&self) -> Vec<P2> {
        let v = &self.vertices;
        if v.len() < 2 {
            return Vec::new();
        }
        (0..v.len())
            .map(|i| {
                let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                (&b.0 - &a.0, &b.1 - &a.1)
            })
            .collect()
    }
}

/// Half-plane index for angle sorting. The edge leaving the lex-min vertex
/// has `x > 0`; angles are ordered on `(-90, 270]` degrees.
fn half(d: &P2) -> u8 {
    if d.0.is_positive() || (d.0.is_zero() && d.1.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &P2, b: &P2) -> Ordering {
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = &a.0 * &b.1 - &a.1 * &b.0;
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// The `(y, z)`-polygon `{(y, z) : (xi, y, z) in conv(vertices)}`.
pub fn fiber_slice(vertices: &[Vec<Rational>], xi: &Rational) -> Polygon2 {
    let mut cuts: Vec<P2> = Vec::new();
    for (i, a) in vertices.iter().enumerate() {
        if &a[0] == xi {
            cuts.push((a[1].clone(), a[2].clone()));
        }
        for b in &vertices[i + 1..] {
            let (lo, hi) = if a[0] <= b[0] { (a, b) } else { (b, a) };
            if lo[0] < *xi && *xi < hi[0] {
                let t = (xi - &lo[0]) / (&hi[0] - &lo[0]);
                let lerp = |k: usize| &lo[k] + &t * (&hi[k] - &lo[k]);
                cuts.push((lerp(1), lerp(2)));
            }
        }
    }
    Polygon2::hull(cuts)
}

/// Minkowski integral of the fibers over the first-coordinate projection.
pub fn fiber_polygon(vertices: &[Vec<Rational>]) -> Polygon2 {
    let xs: Vec<Rational> = vertices
        .iter()
        .map(|v| v[0].clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if xs.len() < 2 {
        return match vertices.first() {
            Some(_) => Polygon2::point((Rational::zero(), Rational::zero())),
            None => Polygon2::empty(),
        };
    }
    let half = Rational::one() / rational::int(2);
    let fibers: Vec<Polygon2> = xs.iter().map(|x| fiber_slice(vertices, x)).collect();
    let mut total = Polygon2::point((Rational::zero(), Rational::zero()));
    for k in 0..xs.len() - 1 {
        let w = (&xs[k + 1] - &xs[k]) * &half;
        let cell = fibers[k].scale(&w).minkowski_sum(&fibers[k + 1].scale(&w));
        total = total.minkowski_sum(&cell);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v3(p: &[(i64, i64, i64)]) -> Vec<Vec<Rational>> {
        p.iter().map(|&(a, b, c)| vec![int(a), int(b), int(c)]).collect()
    }

    fn cube() -> Vec<Vec<Rational>> {
        v3(&(0..8).map(|b| (b & 1, (b >> 1) & 1, (b >> 2) & 1)).collect::<Vec<_>>())
    }

    #[test]
    fn hull_is_canonical() {
        let sq = Polygon2::from_integers(&[(1, 1), (0, 0), (1, 0), (0, 1), (1, 0)]);
        let expect: Vec<P2> = [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&(x, y)| (int(x), int(y))).collect();
        assert_eq!(sq.vertices(), &expect[..]);
        assert!(sq.is_convex());
        let seg = Polygon2::from_integers(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.area(), int(0));
    }

    #[test]
    fn minkowski_examples() {
        let sq = Polygon2::from_integers(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let pt = Polygon2::from_integers(&[(3, 4)]);
        assert_eq!(sq.minkowski_sum(&pt), sq.translate(&(int(3), int(4))));
        let sum = sq.minkowski_sum(&sq);
        assert_eq!(sum.area(), int(4));
        assert_eq!(sum, Polygon2::from_integers(&[(0, 0), (2, 0), (0, 2), (2, 2)]));
        let a = Polygon2::from_integers(&[(0, 0), (1, 0)]);
        let b = Polygon2::from_integers(&[(0, 0), (0, 1)]);
        assert_eq!(a.minkowski_sum(&b), sq);
        let tri = Polygon2::from_integers(&[(0, 0), (2, 1), (1, 3)]);
        assert_eq!(tri.minkowski_sum(&sq), sq.minkowski_sum(&tri));
    }

    #[test]
    fn fiber_slice_examples() {
        let sq = Polygon2::from_integers(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(fiber_slice(&cube(), &frac(1, 2)), sq);
        let cone = v3(&[(1, 0, 0), (2, 0, 0), (0, 1, 0)]);
        assert_eq!(fiber_slice(&cone, &int(1)), Polygon2::hull([(int(0), int(0)), (frac(1, 2), int(0))]));
        assert_eq!(fiber_slice(&cone, &int(2)), Polygon2::from_integers(&[(0, 0)]));
        assert!(fiber_slice(&cone, &int(3)).is_empty());
    }

    #[test]
    fn fiber_polygon_examples() {
        let fp = fiber_polygon(&cube());
        assert_eq!(fp.area(), int(1));
        let cone = v3(&[(1, 0, 0), (2, 0, 0), (0, 1, 0)]);
        // fiber lengths are x/2 on [0,1] and 1 - x/2 on [1,2]
        let fp = fiber_polygon(&cone);
        assert_eq!(fp, Polygon2::hull([(frac(1, 2), int(0)), (int(1), int(0))]));
        let flat = v3(&[(0, 0, 0), (3, 1, 0), (1, 4, 0), (2, 2, 0)]);
        assert_eq!(fiber_polygon(&flat).area(), int(0));
    }
}
