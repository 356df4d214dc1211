use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{self, PointConfig};
use crate::par::{self, Execution};
use crate::random;
use crate::rational::{self, Rational};
use crate::secondary::{self, Subdivision, Wall};
use crate::setfun::SetFunction;
use crate::subset::Subset;

use super::eval::eval_general;
use super::supports::{enumerate_circuital, is_generic, signature};

const HALVINGS: usize = 64;

/// Largest ground set for which all orderings of a zero-dimensional
/// configuration are enumerated.
pub const ORDERING_LIMIT: usize = 8;

/// How cones and walls are found when they cannot be enumerated exactly.
#[derive(Clone, Copy, Debug)]
pub struct ConeOptions {
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
    pub exec: Execution,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions {
            samples: 2000,
            seed: 1,
            bound: random::DEFAULT_BOUND,
            exec: Execution::default(),
        }
    }
}

/// Witnesses of the full-dimensional cones and the walls between them.
#[derive(Clone, Debug)]
pub struct ConeData {
    pub witnesses: Vec<Vec<Rational>>,
    pub walls: Vec<Wall>,
    /// Cones were discovered by sampling and may be incomplete.
    pub sampled: bool,
}

pub fn cone_data(config: &PointConfig, opts: &ConeOptions) -> Result<ConeData> {
    match config.dim() {
        0 => {
            let m = config.len();
            if m > ORDERING_LIMIT {
                return Err(Error::resource(format!("ordering enumeration limited to m <= {ORDERING_LIMIT}")));
            }
            let witnesses = (0..m)
                .permutations(m)
                .map(|order| {
                    let mut g = vec![Rational::zero(); m];
                    for (k, &i) in order.iter().enumerate() {
                        g[i] = rational::int((m - k) as i64);
                    }
                    g
                })
                .collect();
            let walls = (0..m)
                .tuple_combinations()
                .map(|(a, b)| top_tie_wall(config, a, b))
                .collect::<Result<Vec<_>>>()?;
            Ok(ConeData { witnesses, walls, sampled: false })
        }
        1 => {
            let witnesses = secondary::enumerate_triangulations_1d(config)?
                .iter()
                .map(|t| secondary::cone_witness(config, t))
                .collect::<Result<Vec<_>>>()?;
            let walls = secondary::enumerate_walls_1d(config)?;
            Ok(ConeData { witnesses, walls, sampled: false })
        }
        _ => {
            let cones = secondary::discover_cones_random(config, opts.samples, opts.seed, opts.bound, opts.exec)?;
            let witnesses: Vec<Vec<Rational>> = cones.into_iter().map(|(_, w)| w).collect();
            let walls = secondary::walls_between_witnesses(config, &witnesses, opts.exec)?;
            Ok(ConeData { witnesses, walls, sampled: true })
        }
    }
}

/// Wall of a zero-dimensional configuration where `a` and `b` share the
/// maximum; all other heights are distinct and lower.
fn top_tie_wall(config: &PointConfig, a: usize, b: usize) -> Result<Wall> {
    let m = config.len();
    let mut witness = vec![Rational::zero(); m];
    let mut next = m as i64 - 1;
    for (i, w) in witness.iter_mut().enumerate() {
        if i == a || i == b {
            *w = rational::int(m as i64);
        } else {
            *w = rational::int(next);
            next -= 1;
        }
    }
    let mut direction = vec![Rational::zero(); m];
    direction[a] = Rational::one();
    direction[b] = -Rational::one();
    let circuit = geometry::find_circuit(&[a, b], &[Vec::new(), Vec::new()])?;
    let left = Subdivision::new(vec![Subset::singleton(b)]);
    let right = Subdivision::new(vec![Subset::singleton(a)]);
    Wall::new(config, left, right, witness, direction, circuit)?.ok_or_else(|| Error::internal("no valid probe for wall"))
}

fn offset(gamma: &[Rational], i: usize, delta: &Rational) -> Vec<Rational> {
    let mut g = gamma.to_vec();
    g[i] += delta;
    g
}

/// Exact gradient of a function that is linear around the generic
/// `witness`, by one-sided difference quotients with shrinking steps.
///
/// A step is accepted once the shifted point keeps the ordering signature
/// of the witness and the quotient agrees with the one at half the step.
/// The result is checked against `<g, witness> = func(witness)`.
pub fn gradient_with<F>(config: &PointConfig, witness: &[Rational], func: F) -> Result<Vec<Rational>>
where
    F: Fn(&[Rational]) -> Result<Rational>,
{
    gradient_from(config, witness, func, Rational::one())
}

/// As [`gradient_with`], halving from `first` instead of 1.
fn gradient_from<F>(config: &PointConfig, witness: &[Rational], func: F, first: Rational) -> Result<Vec<Rational>>
where
    F: Fn(&[Rational]) -> Result<Rational>,
{
    let sig = signature(config, witness)?.ok_or_else(|| Error::domain("gradient needs generic heights"))?;
    let base = func(witness)?;
    let half = rational::frac(1, 2);
    let mut grad = Vec::with_capacity(witness.len());
    // steps that worked for one coordinate are a good start for the next
    let mut start = first;
    for i in 0..witness.len() {
        let mut delta = start.clone();
        let mut last: Option<Rational> = None;
        let mut found = None;
        for _ in 0..HALVINGS {
            let probe = offset(witness, i, &delta);
            // the signature region is an open convex cone: once a probe is
            // inside, every shorter step along the same ray is too
            if last.is_some() || signature(config, &probe)?.as_ref() == Some(&sig) {
                let q = (func(&probe)? - &base) / &delta;
                if last.as_ref() == Some(&q) {
                    found = Some(q);
                    start = &delta * rational::int(8);
                    break;
                }
                last = Some(q);
            } else {
                last = None;
            }
            delta *= &half;
        }
        grad.push(found.ok_or_else(|| Error::internal("difference quotients did not stabilize"))?);
    }
    if rational::dot(&grad, witness) != base {
        return Err(Error::internal("gradient fails the homogeneity check at its witness"));
    }
    Ok(grad)
}

/// Gradient of the basecondary function on the cone of a generic witness.
pub fn gradient_on_cone(config: &PointConfig, f: &SetFunction, witness: &[Rational]) -> Result<Vec<Rational>> {
    if !is_generic(config, witness)? {
        return Err(Error::domain("gradient needs generic heights"));
    }
    gradient_with(config, witness, |g| eval_general(config, f, g))
}

/// `(func(w + eps u) + func(w - eps u) - 2 func(w)) / eps` for probes close
/// enough to the wall that the quotient is stable.
pub fn wall_defect_with<F>(config: &PointConfig, wall: &Wall, func: F) -> Result<Rational>
where
    F: Fn(&[Rational]) -> Result<Rational>,
{
    let center = func(&wall.witness)?;
    let half = rational::frac(1, 2);
    let mut eps = wall.step.clone();
    let mut last: Option<Rational> = None;
    for _ in 0..HALVINGS {
        let plus = wall.probe(&eps);
        let minus = wall.probe(&-eps.clone());
        let valid = secondary::regular_subdivision(config, &plus)? == wall.right
            && secondary::regular_subdivision(config, &minus)? == wall.left
            && is_generic(config, &plus)?
            && is_generic(config, &minus)?;
        if valid {
            let d = (func(&plus)? + func(&minus)? - &center - &center) / &eps;
            if last.as_ref() == Some(&d) {
                return Ok(d);
            }
            last = Some(d);
        } else {
            last = None;
        }
        eps *= &half;
    }
    Err(Error::internal("wall probes did not stabilize"))
}

pub fn wall_defect_numeric(config: &PointConfig, f: &SetFunction, wall: &Wall) -> Result<Rational> {
    wall_defect_with(config, wall, |g| eval_general(config, f, g))
}

/// Defect of the secondary support function across a wall.
pub fn secondary_wall_defect(config: &PointConfig, wall: &Wall) -> Result<Rational> {
    wall_defect_with(config, wall, |g| secondary::secondary_support(config, g))
}

/// Closed form of the wall defect: for each circuital support `I` at the
/// witness, the lifted volume of `I` at a probe (per unit offset) times
/// `sum_{k in J0} F(I - k) - (p + q - 1) F(I) - F(full)`.
pub fn wall_defect_symbolic(config: &PointConfig, f: &SetFunction, wall: &Wall) -> Result<Rational> {
    let probe = wall.probe(&wall.step);
    let full = f.evaluate(config.full())?;
    let mut total = Rational::zero();
    for c in enumerate_circuital(config, &wall.witness)? {
        let lifted: Vec<_> = c.maximizers.indices().into_iter().map(|i| config.lifted(i, &probe[i])).collect();
        let vol = geometry::oriented_volume(&lifted)?.abs() / &wall.step;
        let pq = rational::int((c.circuit.p + c.circuit.q) as i64 - 1);
        let mut bracket = -(pq * f.evaluate(c.maximizers)?) - &full;
        for k in c.circuit.support.indices() {
            bracket += f.evaluate(c.maximizers.without(k))?;
        }
        total += vol * bracket;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallDefects {
    pub wall: Wall,
    pub defect: Rational,
    pub secondary_defect: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convexifier {
    /// Smallest `c >= 0` with every wall defect of `B_F + c h_sec` nonnegative.
    pub value: Rational,
    /// Walls came from sampled cones, so `value` is a lower bound.
    pub sampled: bool,
    pub walls: Vec<WallDefects>,
}

pub fn min_convexifier(config: &PointConfig, f: &SetFunction, opts: &ConeOptions) -> Result<Convexifier> {
    let data = cone_data(config, opts)?;
    min_convexifier_on(config, f, &data, opts.exec)
}

pub fn min_convexifier_on(config: &PointConfig, f: &SetFunction, data: &ConeData, exec: Execution) -> Result<Convexifier> {
    let defects = par::map(exec, &data.walls, |w| -> Result<WallDefects> {
        Ok(WallDefects {
            wall: w.clone(),
            defect: wall_defect_numeric(config, f, w)?,
            secondary_defect: secondary_wall_defect(config, w)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut value = Rational::zero();
    for d in &defects {
        if !d.defect.is_negative() {
            continue;
        }
        if !d.secondary_defect.is_positive() {
            return Err(Error::domain("a concave wall is flat for the secondary function; no multiple convexifies"));
        }
        value = value.max(-&d.defect / &d.secondary_defect);
    }
    Ok(Convexifier { value, sampled: data.sampled, walls: defects })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeEntry {
    pub witness: Vec<Rational>,
    pub gradient: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFailure {
    /// Entry whose linear piece is beaten at its own witness.
    pub at: usize,
    /// Entry whose linear function is larger there.
    pub other: usize,
}

/// Per-cone linear pieces of a positively homogeneous piecewise-linear
/// function, with the outcome of the convexity certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearRep {
    pub entries: Vec<ConeEntry>,
    pub certified: bool,
    pub failure: Option<CertificateFailure>,
    pub sampled: bool,
}

impl PiecewiseLinearRep {
    pub fn from_entries(entries: Vec<ConeEntry>, sampled: bool, exec: Execution) -> Self {
        let failure = convexity_certificate(&entries, exec);
        PiecewiseLinearRep { certified: failure.is_none(), failure, entries, sampled }
    }

    /// Distinct gradients in lexicographic order.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|e| e.gradient.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// First pair `(j, k)` with `<g_j, w_j> < <g_k, w_j>`, or `None` when every
/// piece is maximal at its own witness.
pub fn convexity_certificate(entries: &[ConeEntry], exec: Execution) -> Option<CertificateFailure> {
    let beaten = |j: &usize| -> Option<usize> {
        let e = &entries[*j];
        let own = rational::dot(&e.gradient, &e.witness);
        entries.iter().position(|o| rational::dot(&o.gradient, &e.witness) > own)
    };
    let idx: Vec<usize> = (0..entries.len()).collect();
    let j = par::position_first(exec, &idx, |j| beaten(j).is_some())?;
    Some(CertificateFailure { at: j, other: beaten(&j).unwrap() })
}

/// Gradients of `func` at every cone witness and on both sides of every
/// wall, deduplicated by gradient (first witness kept), then certified.
pub fn reconstruct_with<F>(config: &PointConfig, data: &ConeData, func: F, exec: Execution) -> Result<PiecewiseLinearRep>
where
    F: Fn(&[Rational]) -> Result<Rational> + Sync + Send,
{
    let mut points: Vec<(Vec<Rational>, Rational)> = data.witnesses.iter().map(|w| (w.clone(), Rational::one())).collect();
    for w in &data.walls {
        let start = &w.step / rational::int(2);
        points.push((w.probe(&w.step), start.clone()));
        points.push((w.probe(&-w.step.clone()), start));
    }
    let grads = par::map(exec, &points, |(p, start)| gradient_from(config, p, &func, start.clone()));
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for ((p, _), g) in points.into_iter().zip(grads) {
        let g = g?;
        if seen.insert(g.clone()) {
            entries.push(ConeEntry { witness: p, gradient: g });
        }
    }
    Ok(PiecewiseLinearRep::from_entries(entries, data.sampled, exec))
}

/// Adds pieces of a homogeneous convex `func` that the current entries miss:
/// at every point where `func` exceeds the max of the known linear pieces,
/// the local gradient is a new piece. Repeats until all points are covered.
/// Points where no stable gradient exists are skipped. Returns the number of
/// pieces added.
pub fn refine_with_points<F>(
    config: &PointConfig,
    entries: &mut Vec<ConeEntry>,
    points: &[Vec<Rational>],
    func: F,
    exec: Execution,
) -> Result<usize>
where
    F: Fn(&[Rational]) -> Result<Rational> + Sync + Send,
{
    let mut added = 0;
    loop {
        let gaps = par::map(exec, points, |p| -> Result<Option<Vec<Rational>>> {
            let value = func(p)?;
            let covered = entries.iter().any(|e| rational::dot(&e.gradient, p) >= value);
            if covered {
                return Ok(None);
            }
            Ok(gradient_with(config, p, &func).ok())
        });
        let mut fresh = false;
        for (p, g) in points.iter().zip(gaps) {
            if let Some(g) = g? {
                if entries.iter().all(|e| e.gradient != g) {
                    entries.push(ConeEntry { witness: p.clone(), gradient: g });
                    added += 1;
                    fresh = true;
                }
            }
        }
        if !fresh {
            return Ok(added);
        }
    }
}

/// Pieces of `B_F + convexifier * h_sec` with a convexity certificate.
pub fn reconstruct_polytope(
    config: &PointConfig,
    f: &SetFunction,
    convexifier: &Rational,
    opts: &ConeOptions,
) -> Result<PiecewiseLinearRep> {
    let data = cone_data(config, opts)?;
    reconstruct_polytope_on(config, f, convexifier, &data, opts.exec)
}

pub fn reconstruct_polytope_on(
    config: &PointConfig,
    f: &SetFunction,
    convexifier: &Rational,
    data: &ConeData,
    exec: Execution,
) -> Result<PiecewiseLinearRep> {
    reconstruct_with(
        config,
        data,
        |g| {
            let mut v = eval_general(config, f, g)?;
            if !convexifier.is_zero() {
                v += convexifier * secondary::secondary_support(config, g)?;
            }
            Ok(v)
        },
        exec,
    )
}
