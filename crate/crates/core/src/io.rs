//! JSON input files and serializable output records.
//!
//! Rationals travel as `"p"` / `"p/q"` strings (integers accepted on input),
//! subsets as ascending 1-based index lists or comma-joined strings.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::basecondary::{
    CircuitalSupport, Convexifier, ExpansionTerm, OrderedSupport, PiecewiseLinearRep, SimplicialSupport,
};
use crate::error::{Error, Result};
use crate::geometry::{CircuitData, PointConfig};
use crate::rational::{Rational, Q};
use crate::secondary::{Subdivision, Wall};
use crate::setfun::{CircuitConditionReport, SetFunction, SubmodularityReport};
use crate::subset::Subset;
use crate::tropical::{MorseReport, MorseSample, TropicalPolynomial};

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn rs(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

/// A point given either as a bare number (for `n = 1`) or a coordinate list.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PointSpec {
    Scalar(Q),
    Vector(Vec<Q>),
}

impl PointSpec {
    fn coords(&self) -> Vec<Rational> {
        match self {
            PointSpec::Scalar(q) => vec![q.0.clone()],
            PointSpec::Vector(v) => rs(v),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetFunctionSpec {
    Table {
        #[serde(default = "zero_q")]
        default: Q,
        #[serde(default)]
        values: BTreeMap<String, Q>,
        #[serde(default)]
        min_size: usize,
    },
    NegGcd {
        #[serde(default)]
        min_size: usize,
    },
    NegIndicatorFull,
    /// 1-based point index.
    NegIndicatorPoint { point: usize },
    MatrixRank { columns: Vec<Vec<Q>> },
    NegCardRatio,
}

fn zero_q() -> Q {
    Q(Rational::from_integer(0.into()))
}

impl SetFunctionSpec {
    /// Builds the set function on a ground set of size `m`; `neg_gcd` reads
    /// its integers from `config`.
    pub fn build(&self, m: usize, config: Option<&PointConfig>) -> Result<SetFunction> {
        match self {
            SetFunctionSpec::Table { default, values, min_size } => {
                let mut table = BTreeMap::new();
                for (k, v) in values {
                    table.insert(Subset::parse_one_based(k, m)?, v.0.clone());
                }
                Ok(SetFunction::table(m, default.0.clone(), table)?.with_min_size(*min_size))
            }
            SetFunctionSpec::NegGcd { min_size } => {
                let config = config.ok_or_else(|| Error::input("neg_gcd needs the configuration A"))?;
                Ok(SetFunction::neg_gcd(config)?.with_min_size(*min_size))
            }
            SetFunctionSpec::NegIndicatorFull => Ok(SetFunction::neg_indicator_full(m)),
            SetFunctionSpec::NegIndicatorPoint { point } => {
                if *point == 0 {
                    return Err(Error::input("indicator point is 1-based"));
                }
                SetFunction::neg_indicator_point(m, point - 1)
            }
            SetFunctionSpec::MatrixRank { columns } => {
                let f = SetFunction::matrix_rank(columns.iter().map(|c| rs(c)).collect())?;
                if f.m() != m {
                    return Err(Error::input("matrix_rank needs one column per point"));
                }
                Ok(f)
            }
            SetFunctionSpec::NegCardRatio => Ok(SetFunction::neg_card_ratio(m)),
        }
    }
}

/// Input of the configuration-based verbs.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Ground size when no configuration is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointSpec>>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub function: Option<SetFunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convexifier: Option<Q>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("problem file: {e}")))
    }

    pub fn config(&self) -> Result<PointConfig> {
        let pts = self
            .points
            .as_ref()
            .ok_or_else(|| Error::input("problem file has no configuration A"))?;
        let coords: Vec<Vec<Rational>> = pts.iter().map(PointSpec::coords).collect();
        let dim = match self.n {
            Some(n) => n,
            None => coords.first().map_or(0, |p| p.len()),
        };
        PointConfig::new(dim, coords)
    }

    pub fn ground_size(&self) -> Result<usize> {
        match (&self.points, self.m) {
            (Some(p), Some(m)) if p.len() != m => Err(Error::input("m differs from the number of points")),
            (Some(p), _) => Ok(p.len()),
            (None, Some(m)) => Ok(m),
            (None, None) => Err(Error::input("problem file needs A or m")),
        }
    }

    pub fn set_function(&self) -> Result<SetFunction> {
        let function = self.function.as_ref().ok_or_else(|| Error::input("problem file has no set function F"))?;
        let m = self.ground_size()?;
        let config = match &self.points {
            Some(_) => Some(self.config()?),
            None => None,
        };
        function.build(m, config.as_ref())
    }

    pub fn gamma(&self) -> Result<Vec<Rational>> {
        self.gamma
            .as_ref()
            .map(|g| rs(g))
            .ok_or_else(|| Error::input("problem file has no height vector gamma"))
    }

    /// Integer support of a one-dimensional configuration.
    pub fn integer_support(&self) -> Result<Vec<i64>> {
        let config = self.config()?;
        let ints = config
            .integer_line()
            .ok_or_else(|| Error::input("expected a one-dimensional integer configuration"))?;
        ints.iter()
            .map(|v| i64::try_from(v).map_err(|_| Error::input("support entry out of range")))
            .collect()
    }
}

/// Input of the tropical verbs.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TropicalFile {
    pub support: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
}

impl TropicalFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("tropical file: {e}")))
    }

    pub fn polynomial(&self) -> Result<TropicalPolynomial> {
        let c = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::input("tropical file has no coefficients"))?;
        TropicalPolynomial::new(self.support.clone(), rs(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueOut {
    pub value: Q,
}

impl ValueOut {
    pub fn new(v: Rational) -> Self {
        ValueOut { value: Q(v) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOut {
    pub simplex: Vec<usize>,
    pub f_difference: Q,
    pub volume: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermsOut {
    pub value: Q,
    pub terms: Vec<TermOut>,
}

impl TermsOut {
    pub fn new(value: Rational, terms: &[ExpansionTerm]) -> Self {
        TermsOut {
            value: Q(value),
            terms: terms
                .iter()
                .map(|t| TermOut {
                    simplex: t.simplex.iter().map(|i| i + 1).collect(),
                    f_difference: Q(t.f_difference.clone()),
                    volume: Q(t.volume.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialOut {
    pub linear: Vec<Q>,
    pub max_value: Q,
    pub maximizers: Vec<usize>,
    pub generic: bool,
    pub order: Option<Vec<usize>>,
}

impl SimplicialOut {
    pub fn new(s: &SimplicialSupport, order: Option<&OrderedSupport>) -> Self {
        SimplicialOut {
            linear: qs(&s.linear),
            max_value: Q(s.max_value.clone()),
            maximizers: s.maximizers.one_based(),
            generic: s.generic,
            order: order.map(OrderedSupport::one_based),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitOut {
    pub support: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub positive: Vec<(usize, Q)>,
    pub negative: Vec<(usize, Q)>,
    pub zero: Vec<usize>,
}

impl CircuitOut {
    pub fn new(c: &CircuitData) -> Self {
        let side = |v: &[(usize, Rational)]| v.iter().map(|(i, x)| (i + 1, Q(x.clone()))).collect();
        CircuitOut {
            support: c.support.one_based(),
            p: c.p,
            q: c.q,
            positive: side(&c.positive),
            negative: side(&c.negative),
            zero: c.zero.iter().map(|i| i + 1).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitalOut {
    pub linear: Vec<Q>,
    pub max_value: Q,
    pub maximizers: Vec<usize>,
    pub circuit: CircuitOut,
    pub order: Option<Vec<usize>>,
}

impl CircuitalOut {
    pub fn new(c: &CircuitalSupport, order: Option<&OrderedSupport>) -> Self {
        CircuitalOut {
            linear: qs(&c.linear),
            max_value: Q(c.max_value.clone()),
            maximizers: c.maximizers.one_based(),
            circuit: CircuitOut::new(&c.circuit),
            order: order.map(OrderedSupport::one_based),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportsOut<T> {
    pub supports: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionOut {
    pub cells: Vec<Vec<usize>>,
}

impl SubdivisionOut {
    pub fn new(s: &Subdivision) -> Self {
        SubdivisionOut { cells: s.one_based() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallOut {
    pub left: SubdivisionOut,
    pub right: SubdivisionOut,
    pub witness: Vec<Q>,
    pub direction: Vec<Q>,
    pub circuit: CircuitOut,
}

impl WallOut {
    pub fn new(w: &Wall) -> Self {
        WallOut {
            left: SubdivisionOut::new(&w.left),
            right: SubdivisionOut::new(&w.right),
            witness: qs(&w.witness),
            direction: qs(&w.direction),
            circuit: CircuitOut::new(&w.circuit),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationOut {
    pub cells: Vec<Vec<usize>>,
    pub gkz: Vec<Q>,
    pub witness: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondaryOut {
    pub sampled: bool,
    pub triangulations: Vec<TriangulationOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticesOut {
    pub vertices: Vec<Vec<Q>>,
}

impl VerticesOut {
    pub fn new(v: &[Vec<Rational>]) -> Self {
        VerticesOut { vertices: v.iter().map(|x| qs(x)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationOut {
    pub base: Vec<usize>,
    pub x1: usize,
    pub x2: usize,
    pub values: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmodularOut {
    pub holds: bool,
    pub witness: Option<ViolationOut>,
}

impl SubmodularOut {
    pub fn new(r: &SubmodularityReport) -> Self {
        SubmodularOut {
            holds: r.holds,
            witness: r.witness.as_ref().map(|w| ViolationOut {
                base: w.base.one_based(),
                x1: w.x1 + 1,
                x2: w.x2 + 1,
                values: qs(&w.values),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitEntryOut {
    pub subset: Vec<usize>,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitConditionOut {
    pub holds: bool,
    pub entries: Vec<CircuitEntryOut>,
}

impl CircuitConditionOut {
    pub fn new(r: &CircuitConditionReport) -> Self {
        CircuitConditionOut {
            holds: r.holds,
            entries: r
                .entries
                .iter()
                .map(|(s, v)| CircuitEntryOut { subset: s.one_based(), value: Q(v.clone()) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDefectOut {
    pub wall: WallOut,
    pub defect: Q,
    pub secondary_defect: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexifierOut {
    pub value: Q,
    pub sampled: bool,
    pub walls: Vec<WallDefectOut>,
}

impl ConvexifierOut {
    pub fn new(c: &Convexifier) -> Self {
        ConvexifierOut {
            value: Q(c.value.clone()),
            sampled: c.sampled,
            walls: c
                .walls
                .iter()
                .map(|w| WallDefectOut {
                    wall: WallOut::new(&w.wall),
                    defect: Q(w.defect.clone()),
                    secondary_defect: Q(w.secondary_defect.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOut {
    pub witness: Vec<Q>,
    pub gradient: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureOut {
    /// 1-based cone whose piece is beaten at its own witness.
    pub at: usize,
    pub other: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeOut {
    pub certified: bool,
    pub sampled: bool,
    pub vertices: Vec<Vec<Q>>,
    pub cones: Vec<ConeOut>,
    pub failure: Option<FailureOut>,
}

impl PolytopeOut {
    pub fn new(rep: &PiecewiseLinearRep) -> Self {
        PolytopeOut {
            certified: rep.certified,
            sampled: rep.sampled,
            vertices: rep.vertices().iter().map(|v| qs(v)).collect(),
            cones: rep
                .entries
                .iter()
                .map(|e| ConeOut { witness: qs(&e.witness), gradient: qs(&e.gradient) })
                .collect(),
            failure: rep.failure.as_ref().map(|f| FailureOut { at: f.at + 1, other: f.other + 1 }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointOut {
    pub location: Q,
    pub value: Q,
    /// Exponents of the outermost pair of maximal terms.
    pub max_pair: (i64, i64),
    /// Exponent pairs of all terms taking equal values at the point.
    pub tie_pairs: Vec<(i64, i64)>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropMorseOut {
    pub morse: bool,
    pub reason: Option<String>,
    pub reasons: Vec<String>,
    pub critical_points: Vec<CriticalPointOut>,
    /// 1-based indices of critical points with equal values.
    pub coinciding: Vec<(usize, usize)>,
}

impl TropMorseOut {
    pub fn new(p: &TropicalPolynomial, r: &MorseReport) -> Self {
        let a = p.support();
        TropMorseOut {
            morse: r.morse,
            reason: r.reasons.first().map(|s| s.to_string()),
            reasons: r.reasons.iter().map(|s| s.to_string()).collect(),
            critical_points: r
                .critical_points
                .iter()
                .map(|c| CriticalPointOut {
                    location: Q(c.location.clone()),
                    value: Q(c.value.clone()),
                    max_pair: (a[c.max_pair.0], a[c.max_pair.1]),
                    tie_pairs: c.tie_pairs.iter().map(|&(i, j)| (a[i], a[j])).collect(),
                    degenerate: c.degenerate,
                })
                .collect(),
            coinciding: r.coinciding.iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMorseOut {
    pub index: usize,
    pub coefficients: Vec<Q>,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropSampleOut {
    pub samples: usize,
    pub morse: usize,
    pub fraction: Q,
    pub non_morse: Vec<NonMorseOut>,
}

impl TropSampleOut {
    pub fn new(s: &MorseSample) -> Self {
        TropSampleOut {
            samples: s.samples,
            morse: s.morse,
            fraction: Q(s.fraction()),
            non_morse: s
                .non_morse
                .iter()
                .map(|d| NonMorseOut {
                    index: d.index,
                    coefficients: qs(&d.coefficients),
                    reasons: d.reasons.iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

impl ErrorOut {
    pub fn new(e: &Error) -> Self {
        ErrorOut { error: ErrorBody { kind: e.kind().to_string(), message: e.to_string() } }
    }
}
