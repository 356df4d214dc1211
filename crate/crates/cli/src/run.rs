use serde::Serialize;
use serde_json::Value;

use basecondary::basecondary::{self as bc, ConeOptions};
use basecondary::fiber_morse::{self, MorseConfig, Variant};
use basecondary::io::*;
use basecondary::par::Execution;
use basecondary::rational::{self, Q};
use basecondary::setfun::{self, SUBMODULAR_LIMIT};
use basecondary::{random, secondary, tropical};
use basecondary::{Error, Rational, Result};

use crate::{svg, Args, VariantArg, Verb};

const DEFAULT_TROP_SAMPLES: usize = 10_000;

fn json<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::internal(format!("serialization failed: {e}")))
}

fn read_input(args: &Args) -> Result<String> {
    let path = args.input.as_ref().ok_or_else(|| Error::input("--input is required"))?;
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn require_seed(args: &Args, file_seed: Option<u64>) -> Result<u64> {
    args.seed
        .or(file_seed)
        .ok_or_else(|| Error::input("this verb is randomized and needs an explicit --seed"))
}

fn cone_options(args: &Args, p: &ProblemFile, dim: usize) -> Result<ConeOptions> {
    let mut opts = ConeOptions::default();
    if dim >= 2 {
        opts.seed = require_seed(args, p.seed)?;
    }
    if let Some(s) = args.samples.or(p.samples) {
        opts.samples = s;
    }
    if let Some(b) = p.bound {
        opts.bound = b;
    }
    Ok(opts)
}

pub fn dispatch(args: &Args) -> Result<Value> {
    let text = read_input(args)?;
    match args.verb {
        Verb::TropMorse | Verb::TropSample => tropical_verb(args, &TropicalFile::parse(&text)?),
        _ => problem_verb(args, &ProblemFile::parse(&text)?),
    }
}

fn problem_verb(args: &Args, p: &ProblemFile) -> Result<Value> {
    let exec = Execution::default();
    match args.verb {
        Verb::Eval => {
            let c = p.config()?;
            json(&ValueOut::new(bc::eval_general(&c, &p.set_function()?, &p.gamma()?)?))
        }
        Verb::EvalTerms => {
            let c = p.config()?;
            let terms = bc::expansion_terms(&c, &p.set_function()?, &p.gamma()?)?;
            let value = terms.iter().map(|t| t.value()).sum();
            json(&TermsOut::new(value, &terms))
        }
        Verb::Simplicial => {
            let (c, g) = (p.config()?, p.gamma()?);
            let mut out = Vec::new();
            for s in bc::enumerate_simplicial(&c, &g)? {
                let order = if s.generic { Some(bc::order_simplicial(&c, &g, &s)?) } else { None };
                out.push(SimplicialOut::new(&s, order.as_ref()));
            }
            json(&SupportsOut { supports: out })
        }
        Verb::Circuital => {
            let (c, g) = (p.config()?, p.gamma()?);
            let mut out = Vec::new();
            for s in bc::enumerate_circuital(&c, &g)? {
                let order = bc::order_circuital(&c, &g, &s).ok();
                out.push(CircuitalOut::new(&s, order.as_ref()));
            }
            json(&SupportsOut { supports: out })
        }
        Verb::Subdivision => {
            let c = p.config()?;
            let sub = secondary::regular_subdivision(&c, &p.gamma()?)?;
            json(&SubdivisionOut::new(&sub))
        }
        Verb::Secondary => secondary_verb(args, p, exec),
        Verb::BasePolytope => json(&VerticesOut::new(&setfun::base_polytope(&p.set_function()?)?)),
        Verb::Lovasz => json(&ValueOut::new(setfun::lovasz_extension(&p.set_function()?, &p.gamma()?)?)),
        Verb::CheckSubmodular => {
            let f = p.set_function()?;
            let r = setfun::check_pairs(&f, p.n.unwrap_or(0), SUBMODULAR_LIMIT, exec)?;
            json(&SubmodularOut::new(&r))
        }
        Verb::CheckCircuitCondition => {
            let r = setfun::circuit_condition_check(&p.set_function()?, &p.config()?)?;
            json(&CircuitConditionOut::new(&r))
        }
        Verb::Convexify => {
            let c = p.config()?;
            let opts = cone_options(args, p, c.dim())?;
            json(&ConvexifierOut::new(&bc::min_convexifier(&c, &p.set_function()?, &opts)?))
        }
        Verb::Polytope => {
            let c = p.config()?;
            let opts = cone_options(args, p, c.dim())?;
            let cx = match &args.convexifier {
                Some(s) => rational::parse(s)?,
                None => p.convexifier.as_ref().map_or_else(|| rational::int(0), |q| q.0.clone()),
            };
            if cx < rational::int(0) {
                return Err(Error::input("convexifier must be nonnegative"));
            }
            json(&PolytopeOut::new(&bc::reconstruct_polytope(&c, &p.set_function()?, &cx, &opts)?))
        }
        Verb::MorseSupport | Verb::MaxwellSupport => {
            let m = MorseConfig::from_config(&p.config()?)?;
            let g = p.gamma()?;
            let v = if args.verb == Verb::MorseSupport {
                fiber_morse::morse_support(&m, &g)?
            } else {
                fiber_morse::maxwell_support(&m, &g)?
            };
            if let Some(path) = &args.svg {
                let shifted = fiber_morse::shift_nonnegative(&g);
                let poly = fiber_morse::fiber_polygon_bar(&m, &shifted)?;
                svg::write_polygon(path, poly.vertices())?;
            }
            json(&ValueOut::new(v))
        }
        Verb::MorsePolytope => {
            let m = MorseConfig::from_config(&p.config()?)?;
            let seed = require_seed(args, p.seed)?;
            let samples = args.samples.or(p.samples).unwrap_or(fiber_morse::REFINE_SAMPLES);
            let variant = match args.variant {
                Some(VariantArg::Maxwell) => Variant::Maxwell,
                _ => Variant::Morse,
            };
            json(&PolytopeOut::new(&fiber_morse::morse_polytope_with(&m, variant, samples, seed, exec)?))
        }
        Verb::TropMorse | Verb::TropSample => unreachable!("tropical verbs read a tropical file"),
    }
}

fn secondary_verb(args: &Args, p: &ProblemFile, exec: Execution) -> Result<Value> {
    let c = p.config()?;
    if p.gamma.is_some() {
        return json(&ValueOut::new(secondary::secondary_support(&c, &p.gamma()?)?));
    }
    let qs = |v: &[Rational]| v.iter().cloned().map(Q).collect::<Vec<_>>();
    let (found, sampled) = match c.dim() {
        0 => return Err(Error::domain("a zero-dimensional configuration has a single trivial subdivision")),
        1 => {
            let mut out = Vec::new();
            for t in secondary::enumerate_triangulations_1d(&c)? {
                let w = secondary::cone_witness(&c, &t)?;
                out.push((t, w));
            }
            (out, false)
        }
        _ => {
            let opts = cone_options(args, p, c.dim())?;
            (secondary::discover_cones_random(&c, opts.samples, opts.seed, opts.bound, exec)?, true)
        }
    };
    let mut triangulations = Vec::new();
    for (t, w) in found {
        triangulations.push(TriangulationOut {
            cells: t.one_based(),
            gkz: qs(&secondary::gkz_vector(&c, &t)?),
            witness: qs(&w),
        });
    }
    json(&SecondaryOut { sampled, triangulations })
}

fn tropical_verb(args: &Args, t: &TropicalFile) -> Result<Value> {
    match args.verb {
        Verb::TropMorse => {
            let poly = t.polynomial()?;
            let report = tropical::is_morse(&poly);
            if let Some(path) = &args.svg {
                svg::write_envelope(path, &poly, &report)?;
            }
            json(&TropMorseOut::new(&poly, &report))
        }
        Verb::TropSample => {
            let seed = require_seed(args, t.seed)?;
            let samples = args.samples.or(t.samples).unwrap_or(DEFAULT_TROP_SAMPLES);
            let bound = t.bound.unwrap_or(random::DEFAULT_BOUND);
            let s = tropical::sample_morse_fraction(&t.support, samples, seed, bound, Execution::default())?;
            json(&TropSampleOut::new(&s))
        }
        _ => unreachable!("configuration verbs read a problem file"),
    }
}
