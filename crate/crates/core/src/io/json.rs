//! JSON encodings of the domain types.
//!
//! Integers are JSON integers, rationals are `{"num": "...", "den": "..."}`
//! with decimal strings so they stay exact, and complex numbers are
//! `[re, im]` pairs of doubles. Malformed documents are reported as
//! [`Error::Schema`] with a JSON pointer to the offending value.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use serde_path_to_error::Segment;

use crate::error::{Error, Result};
use crate::homotopy::{Solution, SolveResult, TrackerSettings};
use crate::lattice::{Lifting, PointConfiguration};
use crate::poly::{ExactPolynomial, PolynomialSystem};
use crate::subdivision::SimplicialComplex;

/// A type with a JSON encoding.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;
}

pub fn to_string<T: Json>(x: &T) -> String {
    serde_json::to_string_pretty(&x.to_json()).expect("JSON values always serialize")
}

pub fn from_str<T: Json>(text: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
        pointer: String::new(),
        message: e.to_string(),
    })?;
    T::from_json(&value)
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn decode<T: DeserializeOwned>(value: &Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = pointer_of(e.path());
        schema(pointer, e.into_inner().to_string())
    })
}

fn encode<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("DTOs always serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsDto {
    d: usize,
    points: Vec<Vec<i64>>,
}

impl Json for PointConfiguration {
    fn to_json(&self) -> Value {
        encode(&PointsDto {
            d: self.dim(),
            points: self.points().to_vec(),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let dto: PointsDto = decode(value)?;
        PointConfiguration::new(dto.d, dto.points)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftingDto {
    values: Vec<i64>,
}

impl Json for Lifting {
    fn to_json(&self) -> Value {
        encode(&LiftingDto {
            values: self.values.clone(),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let dto: LiftingDto = decode(value)?;
        Ok(Lifting::new(dto.values))
    }
}

/// Facet list of a simplicial complex, without its point configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facets(pub Vec<Vec<usize>>);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetsDto {
    facets: Vec<Vec<usize>>,
}

impl Json for Facets {
    fn to_json(&self) -> Value {
        encode(&FacetsDto {
            facets: self.0.clone(),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let dto: FacetsDto = decode(value)?;
        if dto.facets.is_empty() {
            return Err(schema("/facets", "a complex needs at least one facet"));
        }
        Ok(Facets(dto.facets))
    }
}

impl From<&SimplicialComplex> for Facets {
    fn from(complex: &SimplicialComplex) -> Self {
        Facets(complex.facets().to_vec())
    }
}

impl Facets {
    pub fn into_complex(self, config: PointConfiguration) -> Result<SimplicialComplex> {
        SimplicialComplex::new(config, self.0)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalDto {
    num: String,
    den: String,
}

impl RationalDto {
    fn new(q: &BigRational) -> Self {
        Self {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }

    fn parse(&self, pointer: &str) -> Result<BigRational> {
        let num: BigInt = self.num.trim().parse().map_err(|_| {
            schema(
                format!("{pointer}/num"),
                format!("not an integer: {:?}", self.num),
            )
        })?;
        let den: BigInt = self.den.trim().parse().map_err(|_| {
            schema(
                format!("{pointer}/den"),
                format!("not an integer: {:?}", self.den),
            )
        })?;
        if den.is_zero() {
            return Err(schema(format!("{pointer}/den"), "denominator is zero"));
        }
        Ok(BigRational::new(num, den))
    }
}

impl Json for BigRational {
    fn to_json(&self) -> Value {
        encode(&RationalDto::new(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        decode::<RationalDto>(value)?.parse("")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDto {
    coeff: RationalDto,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialDto {
    vars: Vec<String>,
    terms: Vec<TermDto>,
}

impl PolynomialDto {
    fn new(p: &ExactPolynomial) -> Self {
        Self {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermDto {
                    coeff: RationalDto::new(c),
                    exps: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    fn build(self, pointer: &str) -> Result<ExactPolynomial> {
        let n = self.vars.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.into_iter().enumerate() {
            let at = format!("{pointer}/terms/{i}");
            if t.exps.len() != n {
                return Err(schema(
                    format!("{at}/exps"),
                    format!("expected {n} exponents, found {}", t.exps.len()),
                ));
            }
            terms.push((t.exps, t.coeff.parse(&format!("{at}/coeff"))?));
        }
        ExactPolynomial::from_terms(self.vars, terms)
    }
}

impl Json for ExactPolynomial {
    fn to_json(&self) -> Value {
        encode(&PolynomialDto::new(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        decode::<PolynomialDto>(value)?.build("")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDto {
    polynomials: Vec<PolynomialDto>,
}

impl Json for PolynomialSystem {
    fn to_json(&self) -> Value {
        encode(&SystemDto {
            polynomials: self.polys().iter().map(PolynomialDto::new).collect(),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let dto: SystemDto = decode(value)?;
        let polys = dto
            .polynomials
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.build(&format!("/polynomials/{i}")))
            .collect::<Result<Vec<_>>>()?;
        PolynomialSystem::new(polys)
    }
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDto {
    coords: Vec<[f64; 2]>,
    residual: f64,
    singular: bool,
    real: bool,
    in_torus: bool,
    #[serde(default = "one")]
    multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionsDto {
    seed: u64,
    paths_tracked: usize,
    solutions: Vec<SolutionDto>,
    #[serde(default)]
    paths_converged: usize,
    #[serde(default)]
    paths_diverged: usize,
    #[serde(default)]
    paths_failed: usize,
    #[serde(default)]
    paths_filtered: usize,
    #[serde(default)]
    paths_retracked: usize,
}

impl Json for SolveResult {
    fn to_json(&self) -> Value {
        encode(&SolutionsDto {
            seed: self.seed,
            paths_tracked: self.paths_tracked,
            solutions: self
                .solutions
                .iter()
                .map(|s| SolutionDto {
                    coords: s.coords.iter().map(|z| [z.re, z.im]).collect(),
                    residual: s.residual,
                    singular: s.singular,
                    real: s.real,
                    in_torus: s.in_torus,
                    multiplicity: s.multiplicity,
                })
                .collect(),
            paths_converged: self.paths_converged,
            paths_diverged: self.paths_diverged,
            paths_failed: self.paths_failed,
            paths_filtered: self.paths_filtered,
            paths_retracked: self.paths_retracked,
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let dto: SolutionsDto = decode(value)?;
        Ok(SolveResult {
            solutions: dto
                .solutions
                .into_iter()
                .map(|s| Solution {
                    coords: s
                        .coords
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect(),
                    residual: s.residual,
                    singular: s.singular,
                    real: s.real,
                    in_torus: s.in_torus,
                    multiplicity: s.multiplicity,
                })
                .collect(),
            paths_tracked: dto.paths_tracked,
            paths_converged: dto.paths_converged,
            paths_diverged: dto.paths_diverged,
            paths_failed: dto.paths_failed,
            paths_filtered: dto.paths_filtered,
            paths_retracked: dto.paths_retracked,
            seed: dto.seed,
        })
    }
}

impl Json for TrackerSettings {
    fn to_json(&self) -> Value {
        encode(self)
    }

    fn from_json(value: &Value) -> Result<Self> {
        let settings: TrackerSettings = decode(value)?;
        settings.validate()?;
        Ok(settings)
    }
}
