//! Max-plus univariate Laurent polynomials: critical points, degeneracy and
//! Morse classification.

use num_traits::Zero;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::random;
use crate::rational::{self, Rational};

/// `x -> max_k (c_k + a_k x)` with strictly increasing exponents `a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    support: Vec<i64>,
    coefficients: Vec<Rational>,
}

impl TropicalPolynomial {
    pub fn new(support: Vec<i64>, coefficients: Vec<Rational>) -> Result<Self> {
        if support.len() < 2 {
            return Err(Error::input("a tropical polynomial needs at least two terms"));
        }
        if support.len() != coefficients.len() {
            return Err(Error::input("support and coefficients differ in length"));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("support must be strictly increasing"));
        }
        Ok(TropicalPolynomial { support, coefficients })
    }

    pub fn from_integers(support: &[i64], coefficients: &[i64]) -> Result<Self> {
        TropicalPolynomial::new(support.to_vec(), coefficients.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn term(&self, k: usize, x: &Rational) -> Rational {
        &self.coefficients[k] + rational::int(self.support[k]) * x
    }

    pub fn value(&self, x: &Rational) -> Rational {
        (0..self.support.len()).map(|k| self.term(k, x)).max().unwrap()
    }

    /// Terms attaining the maximum at `x`.
    pub fn maximizers(&self, x: &Rational) -> Vec<usize> {
        let v = self.value(x);
        (0..self.support.len()).filter(|&k| self.term(k, x) == v).collect()
    }

    /// Every unordered pair of terms taking equal values at `x`.
    pub fn tie_pairs(&self, x: &Rational) -> Vec<(usize, usize)> {
        let vals: Vec<Rational> = (0..self.support.len()).map(|k| self.term(k, x)).collect();
        let mut out = Vec::new();
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                if vals[i] == vals[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Adds `shift + slope * a` to the coefficient of `x^a`.
    pub fn shifted(&self, shift: &Rational, slope: &Rational) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .zip(&self.support)
            .map(|(c, &a)| c + shift + slope * rational::int(a))
            .collect();
        TropicalPolynomial { support: self.support.clone(), coefficients }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub location: Rational,
    pub value: Rational,
    /// The outermost pair of terms attaining the maximum.
    pub max_pair: (usize, usize),
    pub tie_pairs: Vec<(usize, usize)>,
    pub degenerate: bool,
    /// At least three terms attain the maximum.
    pub degenerate_root: bool,
}

/// Breakpoints of the upper envelope, ascending.
pub fn critical_points(p: &TropicalPolynomial) -> Vec<CriticalPoint> {
    // upper hull of (a_k, c_k); each hull edge is one breakpoint
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..p.support.len() {
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = rational::int(p.support[j] - p.support[i]) * (&p.coefficients[k] - &p.coefficients[i])
                - (&p.coefficients[j] - &p.coefficients[i]) * rational::int(p.support[k] - p.support[i]);
            if cross >= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    hull.windows(2)
        .map(|w| {
            let (i, j) = (w[0], w[1]);
            let location = (&p.coefficients[i] - &p.coefficients[j]) / rational::int(p.support[j] - p.support[i]);
            let value = p.term(i, &location);
            let tie_pairs = p.tie_pairs(&location);
            let at_max = p.maximizers(&location).len();
            CriticalPoint {
                degenerate: tie_pairs.len() >= 2,
                degenerate_root: at_max >= 3,
                max_pair: (i, j),
                tie_pairs,
                value,
                location,
            }
        })
        .collect()
}

pub fn has_degenerate_root(p: &TropicalPolynomial) -> bool {
    critical_points(p).iter().any(|c| c.degenerate_root)
}

pub const DEGENERATE: &str = "degenerate_critical_point";
pub const COINCIDING: &str = "coinciding_critical_values";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub morse: bool,
    /// Failure labels, sorted.
    pub reasons: Vec<&'static str>,
    pub critical_points: Vec<CriticalPoint>,
    /// Indices of degenerate critical points.
    pub degenerate: Vec<usize>,
    /// Index pairs of critical points with equal values.
    pub coinciding: Vec<(usize, usize)>,
}

pub fn is_morse(p: &TropicalPolynomial) -> MorseReport {
    let cps = critical_points(p);
    let degenerate: Vec<usize> = (0..cps.len()).filter(|&i| cps[i].degenerate).collect();
    let mut coinciding = Vec::new();
    for i in 0..cps.len() {
        for j in i + 1..cps.len() {
            if cps[i].value == cps[j].value {
                coinciding.push((i, j));
            }
        }
    }
    let mut reasons = BTreeSet::new();
    if !degenerate.is_empty() {
        reasons.insert(DEGENERATE);
    }
    if !coinciding.is_empty() {
        reasons.insert(COINCIDING);
    }
    MorseReport {
        morse: reasons.is_empty(),
        reasons: reasons.into_iter().collect(),
        critical_points: cps,
        degenerate,
        coinciding,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMorseDraw {
    pub index: usize,
    pub coefficients: Vec<Rational>,
    pub reasons: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseSample {
    pub samples: usize,
    pub morse: usize,
    pub non_morse: Vec<NonMorseDraw>,
}

impl MorseSample {
    pub fn fraction(&self) -> Rational {
        rational::frac(self.morse as i64, self.samples as i64)
    }
}

/// Classifies seeded random coefficient vectors on a fixed support.
pub fn sample_morse_fraction(
    support: &[i64],
    samples: usize,
    seed: u64,
    bound: i64,
    exec: Execution,
) -> Result<MorseSample> {
    if samples == 0 {
        return Err(Error::input("need at least one sample"));
    }
    TropicalPolynomial::new(support.to_vec(), vec![Rational::zero(); support.len()])?;
    let draws = par::map_range(exec, samples, |i| {
        let c = random::rational_vec(&mut random::stream(seed, i as u64), support.len(), bound);
        let p = TropicalPolynomial { support: support.to_vec(), coefficients: c };
        let r = is_morse(&p);
        (!r.morse).then_some(NonMorseDraw { index: i, coefficients: p.coefficients, reasons: r.reasons })
    });
    let non_morse: Vec<NonMorseDraw> = draws.into_iter().flatten().collect();
    Ok(MorseSample { samples, morse: samples - non_morse.len(), non_morse })
}
