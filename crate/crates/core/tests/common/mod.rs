//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls the library routine it is used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use basecondary::geometry::PointConfig;
use basecondary::random;
use basecondary::rational::{frac, int};
use basecondary::setfun::SetFunction;
use basecondary::subset::Subset;
use basecondary::Rational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    random::stream(seed, index)
}

/// Exact determinant by fraction-valued Gaussian elimination.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut d = int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return int(0);
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    d
}

/// `det(v1 - v0, ..., vn - v0)`.
pub fn simplex_det(pts: &[Vec<Rational>]) -> Rational {
    let rows: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    det(&rows)
}

/// Distinct integers in `[-range, range]`, sorted.
pub fn random_line(r: &mut ChaCha8Rng, m: usize, range: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (-range..=range).collect();
    pool.shuffle(r);
    let mut v: Vec<i64> = pool[..m].to_vec();
    v.sort();
    v
}

/// `m` integer points in `Z^n` whose affine span is everything.
pub fn random_config(r: &mut ChaCha8Rng, n: usize, m: usize, range: i64) -> PointConfig {
    loop {
        let c = match n {
            0 => PointConfig::zero_dim(m).unwrap(),
            1 => PointConfig::line(&random_line(r, m, range)).unwrap(),
            _ => {
                let pts: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| r.random_range(-range..=range)).collect()).collect();
                let distinct = pts.iter().collect::<std::collections::BTreeSet<_>>().len() == m;
                if !distinct {
                    continue;
                }
                match PointConfig::from_integer_points(n, &pts) {
                    Ok(c) => c,
                    Err(_) => continue,
                }
            }
        };
        let base: Vec<Vec<Rational>> = (1..c.len())
            .map(|i| c.point(i).iter().zip(c.point(0)).map(|(a, b)| a - b).collect())
            .collect();
        if n == 0 || rank(&base) == n {
            return c;
        }
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[rank][col];
                for c in col..cols {
                    let sub = &factor * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Arbitrary table with `F(empty) = 0` and small rational values.
pub fn random_table(r: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let vals: Vec<Rational> = (0..1u64 << m).map(|_| frac(r.random_range(-12..=12), r.random_range(1..=3))).collect();
    SetFunction::from_fn(m, |s| vals[s.0 as usize].clone()).unwrap()
}

/// Sum of concave functions of nonnegative modular functions plus a
/// modular term: always submodular.
pub fn random_submodular(r: &mut ChaCha8Rng, m: usize) -> SetFunction {
    let k = r.random_range(1..=3);
    let weights: Vec<Vec<i64>> = (0..k).map(|_| (0..m).map(|_| r.random_range(0..=4)).collect()).collect();
    let caps: Vec<i64> = (0..k).map(|_| r.random_range(1..=8)).collect();
    let scale: Vec<i64> = (0..k).map(|_| r.random_range(1..=3)).collect();
    let modular: Vec<i64> = (0..m).map(|_| r.random_range(-3..=3)).collect();
    table_from(m, |s| {
        let mut v = 0;
        for j in 0..k {
            let w: i64 = s.indices().iter().map(|&i| weights[j][i]).sum();
            v += scale[j] * w.min(caps[j]);
        }
        v += s.indices().iter().map(|&i| modular[i]).sum::<i64>();
        int(v)
    })
}

pub fn table_from(m: usize, f: impl Fn(Subset) -> Rational) -> SetFunction {
    let values: BTreeMap<Subset, Rational> = Subset::all(m).map(|s| (s, f(s))).collect();
    SetFunction::table(m, int(0), values).unwrap()
}

/// Brute-force submodularity over all pairs of sets.
pub fn submodular_brute(f: &SetFunction) -> bool {
    let m = f.m();
    Subset::all(m).all(|a| {
        Subset::all(m).all(|b| {
            f.evaluate(a).unwrap() + f.evaluate(b).unwrap()
                >= f.evaluate(a.union(b)).unwrap() + f.evaluate(a.intersection(b)).unwrap()
        })
    })
}

/// Lovász extension from level sets:
/// `sum_k (v_k - v_{k+1}) F({x >= v_k}) + v_last F(full)`.
pub fn lovasz_level_sets(f: &SetFunction, x: &[Rational]) -> Rational {
    let mut levels: Vec<Rational> = x.to_vec();
    levels.sort();
    levels.dedup();
    levels.reverse();
    let mut total = int(0);
    for (k, v) in levels.iter().enumerate() {
        let set = Subset::from_indices((0..x.len()).filter(|&i| x[i] >= *v));
        let next = levels.get(k + 1).cloned().unwrap_or_else(|| int(0));
        let fv = f.evaluate(set).unwrap();
        if k + 1 < levels.len() {
            total += (v - &next) * fv;
        } else {
            total += v * fv;
        }
    }
    total
}

/// All permutations of `0..m`.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..m).permutations(m).collect()
}

/// Greedy point for a permutation, computed directly.
pub fn greedy_point(f: &SetFunction, order: &[usize]) -> Vec<Rational> {
    let mut y = vec![int(0); f.m()];
    let mut acc = Subset::EMPTY;
    for &i in order {
        let before = f.evaluate(acc).unwrap();
        acc = acc.with(i);
        y[i] = f.evaluate(acc).unwrap() - before;
    }
    y
}

/// GKZ vector of a triangulation of a line configuration given by its used
/// points (sorted by coordinate): each point gets the total length of
/// adjacent cells.
pub fn gkz_line(coords: &[i64], used: &[usize]) -> Vec<Rational> {
    let mut phi = vec![int(0); coords.len()];
    for w in used.windows(2) {
        let len = int(coords[w[1]] - coords[w[0]]).abs();
        phi[w[0]] += &len;
        phi[w[1]] += &len;
    }
    phi
}

/// All triangulations of a sorted line configuration (subsets of interior
/// points), as lists of used indices.
pub fn line_triangulations(m: usize) -> Vec<Vec<usize>> {
    (0..1u64 << (m - 2))
        .map(|mask| {
            let mut used = vec![0];
            used.extend((1..m - 1).filter(|&i| mask >> (i - 1) & 1 == 1));
            used.push(m - 1);
            used
        })
        .collect()
}

pub type F2 = (f64, f64);

fn cross(o: F2, a: F2, b: F2) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull (counter-clockwise) by monotone chain in floats.
pub fn hull_f(mut pts: Vec<F2>) -> Vec<F2> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<F2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<F2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn area_f(poly: &[F2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<f64>()
        / 2.0
}

pub fn perimeter_f(poly: &[F2]) -> f64 {
    let n = poly.len();
    if n < 2 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
        })
        .sum()
}

/// Minkowski sum of convex polygons via their support functions sampled
/// at all edge normals; exact up to float rounding for convex inputs.
pub fn minkowski_sum_f(polys: &[Vec<F2>]) -> Vec<F2> {
    let mut dirs: Vec<F2> = Vec::new();
    for p in polys {
        let n = p.len();
        for i in 0..n.max(1) {
            if n >= 2 {
                let (a, b) = (p[i], p[(i + 1) % n]);
                let (ex, ey) = (b.0 - a.0, b.1 - a.1);
                dirs.push((ey, -ex));
                dirs.push((-ey, ex));
            }
        }
    }
    dirs.extend([(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]);
    let mut pts = Vec::new();
    for d in dirs {
        // perturb so the extreme vertex is unique
        let d = (d.0 + 1e-9 * d.1, d.1 - 1e-9 * d.0);
        let mut s = (0.0, 0.0);
        for p in polys {
            let best = p
                .iter()
                .copied()
                .max_by(|a, b| (a.0 * d.0 + a.1 * d.1).partial_cmp(&(b.0 * d.0 + b.1 * d.1)).unwrap())
                .unwrap();
            s.0 += best.0;
            s.1 += best.1;
        }
        pts.push(s);
    }
    hull_f(pts)
}

/// Slice at `x` of the hull of 3D points, as points of the `(y, z)` plane:
/// hull of all intersections of point pairs with the plane.
pub fn slice_f(points: &[[f64; 3]], x: f64) -> Vec<F2> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if (p[0] - x).abs() < 1e-12 {
            out.push((p[1], p[2]));
        }
        for q in &points[i + 1..] {
            let (lo, hi) = if p[0] < q[0] { (p, q) } else { (q, p) };
            if lo[0] < x && x < hi[0] {
                let t = (x - lo[0]) / (hi[0] - lo[0]);
                out.push((lo[1] + t * (hi[1] - lo[1]), lo[2] + t * (hi[2] - lo[2])));
            }
        }
    }
    hull_f(out)
}

/// Vertices of the barred pyramid for support `a` and heights `g >= 0`.
pub fn pyramid_points(a: &[i64], g: &[f64]) -> Vec<[f64; 3]> {
    let mut pts: Vec<[f64; 3]> = a.iter().map(|&x| [x as f64, 0.0, 0.0]).collect();
    pts.extend(a.iter().zip(g).map(|(&x, &h)| [x as f64, 0.0, h]));
    pts.push([0.0, 1.0, 0.0]);
    pts
}

/// Grid estimate of the area of the fiber polygon of the barred pyramid
/// together with an error bound.
///
/// Midpoint sums of `N` slices give a polygon `P_N`. Each slice support
/// `h_x(u)` is piecewise linear in `x` with kinks only at vertex levels, so
/// the midpoint rule is exact on kink-free cells and off by at most
/// `L h^2 / 4` on each of the at most `K` cells with kinks, where `L`
/// bounds the speed of slice vertices. Hence the Hausdorff distance is at
/// most `eps = K L h^2 / 4` and the areas differ by at most
/// `perimeter * eps + 3 pi eps^2` (the extra term covers the perimeter
/// growth of `P_N + eps B`).
pub fn grid_fiber_area(a: &[i64], g: &[f64], n: usize) -> (f64, f64) {
    let pts = pyramid_points(a, g);
    let lo = pts.iter().map(|p| p[0]).fold(f64::MAX, f64::min);
    let hi = pts.iter().map(|p| p[0]).fold(f64::MIN, f64::max);
    let h = (hi - lo) / n as f64;
    let slices: Vec<Vec<F2>> = (0..n)
        .map(|k| {
            let x = lo + (k as f64 + 0.5) * h;
            slice_f(&pts, x).into_iter().map(|(y, z)| (y * h, z * h)).collect()
        })
        .collect();
    let sum = minkowski_sum_f(&slices);
    let mut speed: f64 = 0.0;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let dx = (q[0] - p[0]).abs();
            if dx > 0.0 {
                speed = speed.max(((q[1] - p[1]).powi(2) + (q[2] - p[2]).powi(2)).sqrt() / dx);
            }
        }
    }
    let mut levels: Vec<i64> = a.to_vec();
    levels.push(0);
    levels.sort();
    levels.dedup();
    let eps = levels.len() as f64 * speed * h * h / 4.0;
    let bound = perimeter_f(&sum) * eps + 3.0 * std::f64::consts::PI * eps * eps + 1e-9 * (1.0 + area_f(&sum));
    (area_f(&sum), bound)
}

pub fn to_f64(q: &Rational) -> f64 {
    basecondary::rational::to_f64(q)
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}
