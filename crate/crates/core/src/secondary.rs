//! Regular subdivisions, triangulations and walls of the secondary fan,
//! GKZ vectors and the secondary support function.

use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::basecondary::{self, CircuitalSupport};
use crate::error::{Error, Result};
use crate::geometry::{self, CircuitData, PointConfig};
use crate::linalg;
use crate::par::{self, Execution};
use crate::polygon::Polygon2;
use crate::random;
use crate::rational::{self, Rational};
use crate::subset::Subset;

/// Regular subdivision as a canonically sorted list of cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subdivision {
    cells: Vec<Subset>,
}

impl Subdivision {
    pub fn new(cells: Vec<Subset>) -> Self {
        let mut cells = cells;
        cells.sort_by_key(|c| c.indices());
        cells.dedup();
        Subdivision { cells }
    }

    pub fn cells(&self) -> &[Subset] {
        &self.cells
    }

    /// Every cell has exactly `n + 1` points.
    pub fn is_triangulation(&self, n: usize) -> bool {
        self.cells.iter().all(|c| c.len() == n + 1)
    }

    /// Points used by some cell.
    pub fn vertices(&self) -> Subset {
        self.cells.iter().fold(Subset::EMPTY, |a, &c| a.union(c))
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.one_based()).collect()
    }
}

impl fmt::Debug for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.cells.iter()).finish()
    }
}

/// Codimension-one boundary between two secondary cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub left: Subdivision,
    pub right: Subdivision,
    pub witness: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub circuit: CircuitData,
    /// Offset `t > 0` with `probe(t)` generic in `right` and `probe(-t)`
    /// generic in `left`.
    pub step: Rational,
}

impl Wall {
    /// `None` when no valid probe offset exists within the halving guard.
    pub fn new(
        config: &PointConfig,
        left: Subdivision,
        right: Subdivision,
        witness: Vec<Rational>,
        direction: Vec<Rational>,
        circuit: CircuitData,
    ) -> Result<Option<Wall>> {
        let mut wall = Wall { left, right, witness, direction, circuit, step: Rational::one() };
        Ok(probe_epsilon(config, &wall)?.map(|step| {
            wall.step = step;
            wall
        }))
    }

    /// `witness + t * direction`.
    pub fn probe(&self, t: &Rational) -> Vec<Rational> {
        self.witness.iter().zip(&self.direction).map(|(w, u)| w + t * u).collect()
    }
}

pub(crate) fn check_gamma(config: &PointConfig, gamma: &[Rational]) -> Result<()> {
    if gamma.len() != config.len() {
        return Err(Error::input(format!(
            "height vector has {} entries, expected {}",
            gamma.len(),
            config.len()
        )));
    }
    Ok(())
}

pub fn regular_subdivision(config: &PointConfig, gamma: &[Rational]) -> Result<Subdivision> {
    check_gamma(config, gamma)?;
    let cells = geometry::upper_cells(config.points(), gamma);
    Ok(Subdivision::new(cells.into_iter().map(Subset::from_indices).collect()))
}

/// Ground indices sorted by their coordinate on the line.
fn line_order(config: &PointConfig) -> Result<Vec<usize>> {
    if config.dim() != 1 {
        return Err(Error::domain("operation needs a one-dimensional configuration"));
    }
    let mut order: Vec<usize> = (0..config.len()).collect();
    order.sort_by(|&a, &b| config.point(a)[0].cmp(&config.point(b)[0]));
    Ok(order)
}

/// Chain of consecutive cells through the given vertex set.
fn chain(order: &[usize], vertices: Subset) -> Subdivision {
    let vs: Vec<usize> = order.iter().copied().filter(|&i| vertices.contains(i)).collect();
    Subdivision::new(vs.windows(2).map(|w| Subset::from_indices([w[0], w[1]])).collect())
}

/// All regular triangulations of a point configuration on a line.
pub fn enumerate_triangulations_1d(config: &PointConfig) -> Result<Vec<Subdivision>> {
    let order = line_order(config)?;
    let m = order.len();
    let ends = Subset::from_indices([order[0], order[m - 1]]);
    let interior = &order[1..m - 1];
    let mut sets: Vec<Subset> = Subset::all(interior.len())
        .map(|s| ends.union(Subset::from_indices(s.indices().into_iter().map(|k| interior[k]))))
        .collect();
    sets.sort_by_key(|s| (s.len(), s.indices()));
    Ok(sets.into_iter().map(|s| chain(&order, s)).collect())
}

/// `phi_T(i) = sum of volumes of cells containing i`.
pub fn gkz_vector(config: &PointConfig, t: &Subdivision) -> Result<Vec<Rational>> {
    if !t.is_triangulation(config.dim()) {
        return Err(Error::domain("GKZ vector needs a triangulation"));
    }
    let mut phi = vec![Rational::zero(); config.len()];
    for &cell in t.cells() {
        let vol = geometry::lattice_volume(&config.select(cell));
        for i in cell.indices() {
            phi[i] += &vol;
        }
    }
    Ok(phi)
}

/// `sum over cells sigma of Vol(sigma) * sum_{i in sigma} gamma_i` for a
/// triangulation refining the regular subdivision of `gamma`.
pub fn secondary_support(config: &PointConfig, gamma: &[Rational]) -> Result<Rational> {
    let sub = regular_subdivision(config, gamma)?;
    let n = config.dim();
    let mut total = Rational::zero();
    for &cell in sub.cells() {
        let idx = cell.indices();
        let pts = config.select(cell);
        let simplices: Vec<Vec<usize>> = if idx.len() == n + 1 {
            vec![idx.clone()]
        } else {
            geometry::placing_triangulation(&pts)
                .ok_or_else(|| Error::internal("could not refine a cell"))?
                .into_iter()
                .map(|s| s.into_iter().map(|k| idx[k]).collect())
                .collect()
        };
        for s in simplices {
            let verts: Vec<_> = s.iter().map(|&i| config.point(i).clone()).collect();
            let vol = geometry::oriented_volume(&verts)?.abs();
            let height: Rational = s.iter().map(|&i| &gamma[i]).sum();
            total += vol * height;
        }
    }
    Ok(total)
}

/// Area of `conv({(a, 0)} + {(a, gamma(a))})`.
pub fn area_n(config: &PointConfig, gamma: &[Rational]) -> Result<Rational> {
    line_order(config)?;
    check_gamma(config, gamma)?;
    if gamma.iter().any(|g| g.is_negative()) {
        return Err(Error::domain("area_N needs nonnegative heights"));
    }
    let pts = (0..config.len()).flat_map(|i| {
        let a = config.point(i)[0].clone();
        [(a.clone(), Rational::zero()), (a, gamma[i].clone())]
    });
    Ok(Polygon2::hull(pts).area())
}

/// Heights of a triangulation's vertices on the parabola `-a^2`, other
/// points at `offset(i)` below the chord of their neighboring vertices.
fn parabola_lift(
    config: &PointConfig,
    order: &[usize],
    upper: Subset,
    offset: impl Fn(usize) -> Rational,
) -> Vec<Rational> {
    let a = |i: usize| config.point(i)[0].clone();
    let para = |i: usize| -(a(i) * a(i));
    // breaks the mirror symmetry of the parabola on evenly spaced points
    let jitter = |i: usize| offset(0) * offset(0) * rational::frac(1, 8 * (i as i64 + 2) * (i as i64 + 2));
    let mut gamma = vec![Rational::zero(); config.len()];
    for (pos, &i) in order.iter().enumerate() {
        if upper.contains(i) {
            gamma[i] = para(i) - jitter(i);
            continue;
        }
        let l = *order[..pos].iter().rev().find(|&&k| upper.contains(k)).unwrap();
        let r = *order[pos + 1..].iter().find(|&&k| upper.contains(k)).unwrap();
        let t = (a(i) - a(l)) / (a(r) - a(l));
        gamma[i] = para(l) - jitter(l) + t * (para(r) - jitter(r) - para(l) + jitter(l)) - offset(i);
    }
    gamma
}

fn witness_offset(m: usize, scale: &Rational) -> impl Fn(usize) -> Rational + '_ {
    move |i| scale * (Rational::one() - rational::frac(i as i64 + 1, m as i64 + 1))
}

const WITNESS_RETRIES: i64 = 64;

/// Generic heights inducing the given triangulation of a line configuration.
pub fn cone_witness(config: &PointConfig, t: &Subdivision) -> Result<Vec<Rational>> {
    let order = line_order(config)?;
    if !t.is_triangulation(1) || chain(&order, t.vertices()) != *t {
        return Err(Error::domain("cone witness needs a triangulation of the line configuration"));
    }
    let ends = Subset::from_indices([order[0], order[order.len() - 1]]);
    if !ends.is_subset_of(t.vertices()) {
        return Err(Error::domain("triangulation must use both extreme points"));
    }
    for k in 1..=WITNESS_RETRIES {
        let scale = rational::frac(1, k);
        let gamma = parabola_lift(config, &order, t.vertices(), witness_offset(config.len(), &scale));
        if regular_subdivision(config, &gamma)? == *t && basecondary::is_generic(config, &gamma)? {
            return Ok(gamma);
        }
    }
    Err(Error::internal("no generic cone witness found"))
}

/// Largest `eps = 2^-k` for which both probes `w +- eps u` are generic and
/// induce the expected subdivisions.
fn probe_epsilon(
    config: &PointConfig,
    w: &Wall,
) -> Result<Option<Rational>> {
    let mut eps = Rational::one();
    let half = rational::frac(1, 2);
    for _ in 0..64 {
        let plus = w.probe(&eps);
        let minus = w.probe(&-eps.clone());
        if regular_subdivision(config, &plus)? == w.right
            && regular_subdivision(config, &minus)? == w.left
            && basecondary::is_generic(config, &plus)?
            && basecondary::is_generic(config, &minus)?
        {
            return Ok(Some(eps));
        }
        eps *= &half;
    }
    Ok(None)
}

fn single_circuital(config: &PointConfig, gamma: &[Rational]) -> Result<Option<CircuitalSupport>> {
    let mut c = basecondary::enumerate_circuital(config, gamma)?;
    Ok(if c.len() == 1 { c.pop() } else { None })
}

/// The walls of the secondary fan of a line configuration.
///
/// One wall per triangulation `T` and interior vertex `j`: `left` is
/// `T - {j}`, `right` is `T`, the direction is the `j`-th unit vector.
pub fn enumerate_walls_1d(config: &PointConfig) -> Result<Vec<Wall>> {
    let order = line_order(config)?;
    let m = config.len();
    let mut walls = Vec::new();
    for t in enumerate_triangulations_1d(config)? {
        let verts = t.vertices();
        let inner: Vec<usize> = order[1..m - 1].iter().copied().filter(|&j| verts.contains(j)).collect();
        for j in inner {
            walls.push(wall_1d(config, &order, &t, j)?);
        }
    }
    Ok(walls)
}

fn wall_1d(config: &PointConfig, order: &[usize], t: &Subdivision, j: usize) -> Result<Wall> {
    let m = config.len();
    let coarse = t.vertices().without(j);
    let left = chain(order, coarse);
    let mut direction = vec![Rational::zero(); m];
    direction[j] = Rational::one();
    for k in 1..=WITNESS_RETRIES {
        let scale = rational::frac(1, k);
        let base = witness_offset(m, &scale);
        let witness = parabola_lift(config, order, coarse, |i| if i == j { Rational::zero() } else { base(i) });
        let Some(support) = single_circuital(config, &witness)? else {
            continue;
        };
        if let Some(wall) = Wall::new(config, left.clone(), t.clone(), witness, direction.clone(), support.circuit)? {
            return Ok(wall);
        }
    }
    Err(Error::internal("no generic wall witness found"))
}

/// Seeded random heights, keeping one generic witness per triangulation.
pub fn discover_cones_random(
    config: &PointConfig,
    samples: usize,
    seed: u64,
    bound: i64,
    exec: Execution,
) -> Result<Vec<(Subdivision, Vec<Rational>)>> {
    let draws = par::map_range(exec, samples, |i| -> Result<Option<(Subdivision, Vec<Rational>)>> {
        let gamma = random::rational_vec(&mut random::stream(seed, i as u64), config.len(), bound);
        let sub = regular_subdivision(config, &gamma)?;
        if sub.is_triangulation(config.dim()) && basecondary::is_generic(config, &gamma)? {
            Ok(Some((sub, gamma)))
        } else {
            Ok(None)
        }
    });
    let mut found: BTreeMap<Subdivision, Vec<Rational>> = BTreeMap::new();
    for d in draws {
        if let Some((sub, gamma)) = d? {
            found.entry(sub).or_insert(gamma);
        }
    }
    Ok(found.into_iter().collect())
}

/// Parameters `t` in `(0, 1)` where `n + 2` lifted points of
/// `(1 - t) a + t b` become affinely dependent.
fn crossing_parameters(config: &PointConfig, a: &[Rational], b: &[Rational]) -> Result<BTreeSet<Rational>> {
    let n = config.dim();
    let mut ts = BTreeSet::new();
    for j in Subset::combinations(config.len(), n + 2) {
        let idx = j.indices();
        let pts = config.select(j);
        if geometry::affine_rank(&pts)? != n {
            continue;
        }
        // det [A_i, 1, h_i] is affine in t; evaluate at both ends
        let det_at = |h: &[Rational]| -> Rational {
            let rows: linalg::Matrix = idx
                .iter()
                .map(|&i| {
                    let mut r = config.point(i).clone();
                    r.push(Rational::one());
                    r.push(h[i].clone());
                    r
                })
                .collect();
            linalg::det(&rows)
        };
        let (d0, d1) = (det_at(a), det_at(b));
        if d0 != d1 {
            let t = &d0 / (&d0 - &d1);
            if t.is_positive() && t < Rational::one() {
                ts.insert(t);
            }
        }
    }
    Ok(ts)
}

/// Walls crossed by the segment between two heights vectors, each with a
/// single circuital support at the crossing point.
pub fn walls_on_segment(config: &PointConfig, a: &[Rational], b: &[Rational]) -> Result<Vec<Wall>> {
    check_gamma(config, a)?;
    check_gamma(config, b)?;
    let direction: Vec<Rational> = b.iter().zip(a).map(|(y, x)| y - x).collect();
    let point = |t: &Rational| -> Vec<Rational> { a.iter().zip(&direction).map(|(x, u)| x + t * u).collect() };
    let ts: Vec<Rational> = crossing_parameters(config, a, b)?.into_iter().collect();
    let mut walls = Vec::new();
    for (k, t) in ts.iter().enumerate() {
        let prev = if k == 0 { Rational::zero() } else { ts[k - 1].clone() };
        let next = ts.get(k + 1).cloned().unwrap_or_else(Rational::one);
        let before = regular_subdivision(config, &point(&((&prev + t) / rational::int(2))))?;
        let after = regular_subdivision(config, &point(&((t + &next) / rational::int(2))))?;
        if before == after || !before.is_triangulation(config.dim()) || !after.is_triangulation(config.dim()) {
            continue;
        }
        let witness = point(t);
        let Some(support) = single_circuital(config, &witness)? else {
            continue;
        };
        if let Some(wall) = Wall::new(config, before, after, witness, direction.clone(), support.circuit)? {
            walls.push(wall);
        }
    }
    Ok(walls)
}

/// Walls found on segments between every pair of cone witnesses,
/// deduplicated by the unordered pair of adjacent subdivisions.
pub fn walls_between_witnesses(
    config: &PointConfig,
    witnesses: &[Vec<Rational>],
    exec: Execution,
) -> Result<Vec<Wall>> {
    let pairs: Vec<(usize, usize)> = (0..witnesses.len())
        .flat_map(|i| (i + 1..witnesses.len()).map(move |j| (i, j)))
        .collect();
    let found = par::map(exec, &pairs, |&(i, j)| walls_on_segment(config, &witnesses[i], &witnesses[j]));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for walls in found {
        for w in walls? {
            let key = if w.left <= w.right {
                (w.left.clone(), w.right.clone())
            } else {
                (w.right.clone(), w.left.clone())
            };
            if seen.insert(key) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn a1367() -> PointConfig {
        PointConfig::line(&[1, 3, 6, 7]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn cells(s: &Subdivision) -> Vec<Vec<usize>> {
        s.one_based()
    }

    #[test]
    fn subdivision_examples() {
        let c = a1367();
        let s = regular_subdivision(&c, &ints(&[2, 4, 5, 3])).unwrap();
        assert_eq!(cells(&s), vec![vec![1, 2], vec![2, 3], vec![3, 4]]);
        assert!(s.is_triangulation(1));
        let s = regular_subdivision(&c, &ints(&[3, 3, 3, 1])).unwrap();
        assert_eq!(cells(&s), vec![vec![1, 2, 3], vec![3, 4]]);
        let flat: Vec<Rational> = [1, 3, 6, 7].iter().map(|&a| int(2 * a - 5)).collect();
        assert_eq!(cells(&regular_subdivision(&c, &flat).unwrap()), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn triangulations_and_gkz() {
        let c = a1367();
        let ts = enumerate_triangulations_1d(&c).unwrap();
        let verts: Vec<Vec<usize>> = ts.iter().map(|t| t.vertices().one_based()).collect();
        assert_eq!(verts, vec![vec![1, 4], vec![1, 2, 4], vec![1, 3, 4], vec![1, 2, 3, 4]]);
        assert_eq!(gkz_vector(&c, &ts[0]).unwrap(), ints(&[6, 0, 0, 6]));
        assert_eq!(gkz_vector(&c, &ts[3]).unwrap(), ints(&[2, 5, 4, 1]));
        for t in &ts {
            assert_eq!(gkz_vector(&c, t).unwrap().iter().sum::<Rational>(), int(12));
        }
        assert_eq!(enumerate_triangulations_1d(&PointConfig::line(&[2, 5]).unwrap()).unwrap().len(), 1);
        assert_eq!(enumerate_triangulations_1d(&PointConfig::line(&[1, 2, 3, 4, 5]).unwrap()).unwrap().len(), 8);
        assert!(enumerate_triangulations_1d(&PointConfig::zero_dim(3).unwrap()).is_err());
    }

    #[test]
    fn secondary_support_examples() {
        let c = a1367();
        assert_eq!(secondary_support(&c, &ints(&[1, 1, 1, 1])).unwrap(), int(12));
        assert_eq!(secondary_support(&c, &ints(&[2, 4, 5, 3])).unwrap(), int(47));
        assert_eq!(area_n(&c, &ints(&[1, 1, 1, 1])).unwrap(), int(6));
        assert_eq!(area_n(&c, &ints(&[0, 0, 0, 0])).unwrap(), int(0));
        assert!(matches!(area_n(&c, &ints(&[0, -1, 0, 0])), Err(Error::Domain(_))));
    }

    #[test]
    fn witnesses_induce_their_triangulation() {
        let c = a1367();
        for t in enumerate_triangulations_1d(&c).unwrap() {
            let w = cone_witness(&c, &t).unwrap();
            assert_eq!(regular_subdivision(&c, &w).unwrap(), t);
            assert!(basecondary::is_generic(&c, &w).unwrap());
        }
        let two = PointConfig::line(&[-1, 4]).unwrap();
        let t = &enumerate_triangulations_1d(&two).unwrap()[0];
        assert!(cone_witness(&two, t).is_ok());
    }

    #[test]
    fn walls_of_a1367() {
        let c = a1367();
        let walls = enumerate_walls_1d(&c).unwrap();
        assert_eq!(walls.len(), 4);
        for w in &walls {
            assert_eq!(basecondary::enumerate_circuital(&c, &w.witness).unwrap().len(), 1);
            assert_eq!(w.circuit.p, 1);
            assert_eq!(w.circuit.q, 2);
            assert_eq!(regular_subdivision(&c, &w.probe(&w.step)).unwrap(), w.right);
            assert_eq!(regular_subdivision(&c, &w.probe(&-w.step.clone())).unwrap(), w.left);
        }
        assert!(enumerate_walls_1d(&PointConfig::line(&[1, 2]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn segment_walls_match_line_walls() {
        let c = a1367();
        let ts = enumerate_triangulations_1d(&c).unwrap();
        let ws: Vec<Vec<Rational>> = ts.iter().map(|t| cone_witness(&c, t).unwrap()).collect();
        let walls = walls_between_witnesses(&c, &ws, Execution::Sequential).unwrap();
        let mut pairs: Vec<(Subdivision, Subdivision)> = walls
            .iter()
            .map(|w| if w.left < w.right { (w.left.clone(), w.right.clone()) } else { (w.right.clone(), w.left.clone()) })
            .collect();
        pairs.sort();
        let mut expect: Vec<(Subdivision, Subdivision)> = enumerate_walls_1d(&c)
            .unwrap()
            .into_iter()
            .map(|w| if w.left < w.right { (w.left, w.right) } else { (w.right, w.left) })
            .collect();
        expect.sort();
        assert_eq!(pairs, expect);
    }
}
