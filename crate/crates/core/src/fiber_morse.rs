//! Support functions of the Newton polytopes of the Morse discriminant and
//! the Maxwell stratum of univariate Laurent polynomials, via fiber
//! polygons of three-dimensional pyramids.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::basecondary::{self, ConeData, ConeOptions, PiecewiseLinearRep};
use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::par::Execution;
use crate::polygon::{self, Polygon2};
use crate::random;
use crate::rational::{self, Rational};
use crate::secondary;
use crate::setfun::SetFunction;

/// Support `A = {a_1 < ... < a_m}` of nonzero integers generating `Z`
/// affinely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseConfig {
    config: PointConfig,
    gcd_fn: SetFunction,
}

impl MorseConfig {
    pub fn new(support: &[i64]) -> Result<Self> {
        if support.len() < 2 {
            return Err(Error::input("need at least two exponents"));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("exponents must be strictly increasing"));
        }
        if support.contains(&0) {
            return Err(Error::input("exponent 0 is reserved for the constant term"));
        }
        let g = support.iter().fold(BigInt::zero(), |g, &a| g.gcd(&BigInt::from(a - support[0])));
        if !g.is_one() {
            return Err(Error::input(format!("exponents generate {g}Z affinely, not Z")));
        }
        let config = PointConfig::line(support)?;
        let gcd_fn = SetFunction::neg_gcd(&config)?.with_min_size(1);
        Ok(MorseConfig { config, gcd_fn })
    }

    pub fn from_config(config: &PointConfig) -> Result<Self> {
        let ints = config
            .integer_line()
            .ok_or_else(|| Error::input("Morse support must be one-dimensional integers"))?;
        let small: Vec<i64> = ints
            .iter()
            .map(|a| i64::try_from(a.clone()).map_err(|_| Error::input("exponent out of range")))
            .collect::<Result<_>>()?;
        MorseConfig::new(&small)
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    /// `-gcd` on subsets of size at least 1.
    pub fn gcd_function(&self) -> &SetFunction {
        &self.gcd_fn
    }

    fn exponent(&self, i: usize) -> Rational {
        self.config.point(i)[0].clone()
    }
}

fn check_nonnegative(cfg: &MorseConfig, gamma: &[Rational]) -> Result<()> {
    if gamma.len() != cfg.config.len() {
        return Err(Error::input(format!(
            "height vector has {} entries, expected {}",
            gamma.len(),
            cfg.config.len()
        )));
    }
    if gamma.iter().any(|g| g.is_negative()) {
        return Err(Error::domain("heights must be nonnegative"));
    }
    Ok(())
}

/// Vertex list of a pyramid with apex `(0, 1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pyramid3 {
    pub vertices: Vec<Vec<Rational>>,
    /// Whether the base points `(a, 0, 0)` are included.
    pub barred: bool,
}

fn pyramid(cfg: &MorseConfig, gamma: &[Rational], barred: bool) -> Result<Pyramid3> {
    check_nonnegative(cfg, gamma)?;
    let mut pts: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for (i, g) in gamma.iter().enumerate() {
        let a = cfg.exponent(i);
        if barred {
            pts.insert(vec![a.clone(), Rational::zero(), Rational::zero()]);
        }
        pts.insert(vec![a, Rational::zero(), g.clone()]);
    }
    pts.insert(vec![Rational::zero(), Rational::one(), Rational::zero()]);
    Ok(Pyramid3 { vertices: pts.into_iter().collect(), barred })
}

/// `conv({(a,0,0)} + {(a,0,gamma(a))} + {(0,1,0)})`.
pub fn build_delta_bar(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Pyramid3> {
    pyramid(cfg, gamma, true)
}

/// `conv({(a,0,gamma(a))} + {(0,1,0)})`.
pub fn build_delta(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Pyramid3> {
    pyramid(cfg, gamma, false)
}

pub fn fiber_polygon_bar(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Polygon2> {
    Ok(polygon::fiber_polygon(&build_delta_bar(cfg, gamma)?.vertices))
}

pub fn fiber_polygon_unbarred(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Polygon2> {
    Ok(polygon::fiber_polygon(&build_delta(cfg, gamma)?.vertices))
}

pub fn area_p_bar(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Rational> {
    Ok(fiber_polygon_bar(cfg, gamma)?.area())
}

/// Support function of the homogeneous iterated fiber polytope: equal to
/// `area_p_bar` on nonnegative heights, extended by
/// `h(gamma + c 1) = h(gamma) + c h(1)`.
pub fn iterated_fiber_support(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Rational> {
    if gamma.len() != cfg.config.len() {
        return Err(Error::input("height vector length differs from the support size"));
    }
    let low = gamma.iter().min().cloned().unwrap_or_default();
    if !low.is_negative() {
        return area_p_bar(cfg, gamma);
    }
    let c = (-low).ceil();
    let shifted: Vec<Rational> = gamma.iter().map(|g| g + &c).collect();
    let level = area_p_bar(cfg, &vec![Rational::one(); gamma.len()])?;
    Ok(area_p_bar(cfg, &shifted)? - c * level)
}

pub fn gcd_term(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Rational> {
    basecondary::eval_general(&cfg.config, &cfg.gcd_fn, gamma)
}

/// Factor turning the Euclidean `area_p_bar` into the lattice-normalized
/// iterated fiber support: one factor 2 for each Minkowski integral (to
/// match the GKZ scaling of secondary polytopes) and one for the area.
pub const FIBER_SCALE: i64 = 8;

/// `area(P_bar) + B_{-gcd} - 3 area(N)` on nonnegative heights, with both
/// areas lattice-normalized, so `3 area(N)` is `3 h_sec`.
pub fn morse_support(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Rational> {
    check_nonnegative(cfg, gamma)?;
    let fiber = rational::int(FIBER_SCALE) * area_p_bar(cfg, gamma)?;
    let n_area = rational::int(2) * secondary::area_n(&cfg.config, gamma)?;
    Ok(fiber + gcd_term(cfg, gamma)? - rational::int(3) * n_area)
}

/// `(iterated + B_{-gcd} - 4 h_sec) / 2` for arbitrary heights.
pub fn maxwell_support(cfg: &MorseConfig, gamma: &[Rational]) -> Result<Rational> {
    let total = rational::int(FIBER_SCALE) * iterated_fiber_support(cfg, gamma)? + gcd_term(cfg, gamma)?
        - rational::int(4) * secondary::secondary_support(&cfg.config, gamma)?;
    Ok(total / rational::int(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Morse,
    Maxwell,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "morse" => Ok(Variant::Morse),
            "maxwell" => Ok(Variant::Maxwell),
            other => Err(Error::input(format!("unknown variant {other:?}"))),
        }
    }
}

/// Shift every height vector by the smallest integer constant making it
/// nonnegative; constants are affine on `A`, so cones are preserved.
pub fn shift_nonnegative(gamma: &[Rational]) -> Vec<Rational> {
    let low = gamma.iter().min().cloned().unwrap_or_default();
    if !low.is_negative() {
        return gamma.to_vec();
    }
    let c = (-low).ceil();
    gamma.iter().map(|g| g + &c).collect()
}

pub fn morse_cone_data(cfg: &MorseConfig) -> Result<ConeData> {
    let mut data = basecondary::cone_data(&cfg.config, &ConeOptions::default())?;
    for w in data.witnesses.iter_mut() {
        *w = shift_nonnegative(w);
    }
    for wall in data.walls.iter_mut() {
        // keep probes nonnegative as well
        let lift = shift_nonnegative(&wall.witness);
        let c = &lift[0] - &wall.witness[0] + Rational::one();
        wall.witness = wall.witness.iter().map(|g| g + &c).collect();
    }
    Ok(data)
}

/// Nonnegative sample heights used to find linear pieces of the Morse and
/// Maxwell supports that are finer than the secondary fan.
pub const REFINE_SAMPLES: usize = 400;
const REFINE_BOUND: i64 = 64;

/// Per-cone gradients of the Morse or Maxwell support function, completed
/// by seeded sampling, then certified.
pub fn morse_polytope(cfg: &MorseConfig, variant: Variant, exec: Execution) -> Result<PiecewiseLinearRep> {
    morse_polytope_with(cfg, variant, REFINE_SAMPLES, 1, exec)
}

pub fn morse_polytope_with(
    cfg: &MorseConfig,
    variant: Variant,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<PiecewiseLinearRep> {
    let data = morse_cone_data(cfg)?;
    let func = |g: &[Rational]| match variant {
        Variant::Morse => morse_support(cfg, g),
        Variant::Maxwell => maxwell_support(cfg, g),
    };
    let rep = basecondary::reconstruct_with(&cfg.config, &data, func, exec)?;
    let points: Vec<Vec<Rational>> = (0..samples)
        .map(|i| {
            let mut rng = random::stream(seed, i as u64);
            random::rational_vec(&mut rng, cfg.config.len(), REFINE_BOUND)
                .into_iter()
                .map(|x| x.abs())
                .collect()
        })
        .collect();
    let mut entries = rep.entries;
    basecondary::refine_with_points(&cfg.config, &mut entries, &points, func, exec)?;
    Ok(PiecewiseLinearRep::from_entries(entries, true, exec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn config_validation() {
        assert!(MorseConfig::new(&[1, 3, 6, 7]).is_ok());
        assert!(MorseConfig::new(&[0, 1]).is_err());
        assert!(MorseConfig::new(&[2, 4]).is_err());
        assert!(MorseConfig::new(&[3, 1]).is_err());
    }

    #[test]
    fn pyramids() {
        let c = MorseConfig::new(&[1, 2]).unwrap();
        let flat = build_delta_bar(&c, &ints(&[0, 0])).unwrap();
        assert_eq!(flat.vertices.len(), 3);
        let full = build_delta_bar(&c, &ints(&[1, 1])).unwrap();
        assert_eq!(full.vertices.len(), 5);
        assert!(full.vertices.contains(&ints(&[0, 1, 0])));
        assert!(matches!(build_delta_bar(&c, &ints(&[1, -1])), Err(Error::Domain(_))));
        assert_eq!(area_p_bar(&c, &ints(&[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn homogeneity_extension() {
        let c = MorseConfig::new(&[1, 3, 6, 7]).unwrap();
        let s = area_p_bar(&c, &ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(iterated_fiber_support(&c, &ints(&[-1, -1, -1, -1])).unwrap(), -s.clone());
        let g = ints(&[2, 0, 5, 1]);
        let g5: Vec<Rational> = g.iter().map(|x| x + int(5)).collect();
        assert_eq!(
            iterated_fiber_support(&c, &g5).unwrap() - iterated_fiber_support(&c, &g).unwrap(),
            int(5) * s
        );
    }

    #[test]
    fn morse_summands() {
        let c = MorseConfig::new(&[1, 3, 6, 7]).unwrap();
        let g = ints(&[1, 1, 1, 1]);
        assert_eq!(secondary::area_n(c.config(), &g).unwrap(), int(6));
        let total = morse_support(&c, &g).unwrap();
        assert_eq!(total, int(8) * area_p_bar(&c, &g).unwrap() + gcd_term(&c, &g).unwrap() - int(36));
    }
}
