//! JSON scenarios: a polyhedral divisor with optional coloring, family or
//! toric root, plus search bounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ghz_core::arith::syntax::{format_rational, parse_field_elem, parse_rational};
use ghz_core::arith::{BaseField, Fe};
use ghz_core::classifier::{CoherentFamily, Coloring};
use ghz_core::curve::{parse_point, ClosedPoint, Curve, Policy};
use ghz_core::polyhedral::{Cone, LatticeVec, Polyhedron, RatVec};
use ghz_core::tvariety::PolyhedralDivisor;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// `Q`, `Fp` or `Fp(l)`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub point: String,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredVertex {
    pub point: String,
    pub vertex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringSpec {
    pub y0: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_inf: Option<String>,
    pub vertices: Vec<ColoredVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub e: Vec<i64>,
    pub s: Vec<u32>,
    pub lambda: Vec<String>,
}

/// A Demazure root of the tail cone, for purely toric scenarios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSpec {
    pub e: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsSpec {
    pub weight_box: i64,
    pub max_order: usize,
    pub e_box: i64,
    pub s_max: u32,
    pub lambda_sample: Vec<String>,
}

impl Default for BoundsSpec {
    fn default() -> Self {
        BoundsSpec { weight_box: 6, max_order: 16, e_box: 2, s_max: 2, lambda_sample: vec!["1".into()] }
    }
}

/// The document as written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub field: FieldSpec,
    pub rank: usize,
    #[serde(default)]
    pub tail_rays: Vec<Vec<i64>>,
    #[serde(default = "default_curve")]
    pub curve: String,
    #[serde(default)]
    pub support: Vec<SupportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricSpec>,
    #[serde(default)]
    pub bounds: BoundsSpec,
    /// `strict` or `trusted` irreducibility checks for support points.
    #[serde(default = "default_trust")]
    pub trust: String,
}

fn default_curve() -> String {
    "A1".into()
}

fn default_trust() -> String {
    "strict".into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub weight_box: i64,
    pub max_order: usize,
    pub e_box: i64,
    pub s_max: u32,
    pub lambda_sample: Vec<Fe>,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub policy: Policy,
    pub divisor: PolyhedralDivisor,
    pub coloring: Option<Coloring>,
    pub family: Option<CoherentFamily>,
    pub toric: Option<LatticeVec>,
    pub bounds: Bounds,
}

impl Scenario {
    pub fn field(&self) -> BaseField {
        self.divisor.field()
    }
}

fn semantic(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Semantic(format!("{path}: {msg}"))
}

/// Parses `Q`, `F_p`, `Fp`, `F_p(l)` or `Fp(l)`.
pub fn parse_field_name(s: &str) -> Result<FieldSpec, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
    if t == "Q" {
        return Ok(FieldSpec { kind: "Q".into(), p: None });
    }
    let bad = || CliError::Usage(format!("unknown field '{s}' (expected Q, F_p or F_p(l))"));
    let rest = t.strip_prefix('F').ok_or_else(bad)?;
    let (digits, kind) = match rest.strip_suffix("(l)") {
        Some(d) => (d, "Fp(l)"),
        None => (rest, "Fp"),
    };
    let p = digits.parse().map_err(|_| bad())?;
    Ok(FieldSpec { kind: kind.into(), p: Some(p) })
}

fn field_of(spec: &FieldSpec) -> Result<BaseField, CliError> {
    let need_p = || spec.p.ok_or_else(|| semantic("field.p", "missing characteristic"));
    let r = match spec.kind.as_str() {
        "Q" => return Ok(BaseField::Rationals),
        "Fp" => BaseField::prime(need_p()?),
        "Fp(l)" => BaseField::rational_functions(need_p()?),
        k => return Err(semantic("field.kind", format!("unknown kind '{k}' (expected Q, Fp or Fp(l))"))),
    };
    r.map_err(|e| semantic("field.p", e))
}

fn field_spec(k: BaseField) -> FieldSpec {
    match k {
        BaseField::Rationals => FieldSpec { kind: "Q".into(), p: None },
        BaseField::Prime(p) => FieldSpec { kind: "Fp".into(), p: Some(p) },
        BaseField::RationalFunctions(p) => FieldSpec { kind: "Fp(l)".into(), p: Some(p) },
    }
}

fn ratvec(path: &str, v: &[String], n: usize) -> Result<RatVec, CliError> {
    if v.len() != n {
        return Err(semantic(path, format!("expected {n} coordinates, found {}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| semantic(&format!("{path}[{i}]"), e)))
        .collect()
}

fn fmt_vec(v: &[ghz_core::polyhedral::Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let file: ScenarioFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    file.validate()
}

pub fn serialize_scenario(s: &Scenario) -> String {
    serde_json::to_string_pretty(&s.to_file()).expect("scenario serializes")
}

impl ScenarioFile {
    pub fn validate(&self) -> Result<Scenario, CliError> {
        let k = field_of(&self.field)?;
        let n = self.rank;
        if n == 0 || n > ghz_core::polyhedral::MAX_RANK {
            return Err(semantic("rank", format!("rank must lie in 1..={}", ghz_core::polyhedral::MAX_RANK)));
        }
        let curve = match self.curve.as_str() {
            "A1" => Curve::A1,
            "P1" => Curve::P1,
            c => return Err(semantic("curve", format!("unknown curve '{c}' (expected A1 or P1)"))),
        };
        let policy = match self.trust.as_str() {
            "strict" => Policy::Strict,
            "trusted" => Policy::Trusted,
            t => return Err(semantic("trust", format!("unknown policy '{t}' (expected strict or trusted)"))),
        };
        for (i, r) in self.tail_rays.iter().enumerate() {
            if r.len() != n {
                return Err(semantic(&format!("tail_rays[{i}]"), format!("expected {n} coordinates")));
            }
        }
        let tail = if self.tail_rays.is_empty() {
            Cone::zero(n)
        } else {
            Cone::generated_by_int(n, &self.tail_rays)
        }
        .map_err(|e| semantic("tail_rays", e))?;
        if !tail.is_pointed() {
            return Err(semantic("tail_rays", "the tail cone must be pointed"));
        }
        let point = |path: &str, s: &str| parse_point(s, k).map_err(|e| semantic(path, e));

        let mut support = Vec::new();
        for (i, entry) in self.support.iter().enumerate() {
            let path = format!("support[{i}]");
            let y = point(&format!("{path}.point"), &entry.point)?;
            if entry.vertices.is_empty() {
                return Err(semantic(&format!("{path}.vertices"), "a polyhedron needs at least one vertex"));
            }
            let vs = entry
                .vertices
                .iter()
                .enumerate()
                .map(|(j, v)| ratvec(&format!("{path}.vertices[{j}]"), v, n))
                .collect::<Result<Vec<_>, _>>()?;
            let p = Polyhedron::new(vs, tail.clone()).map_err(|e| semantic(&path, e))?;
            support.push((y, p));
        }
        let divisor = PolyhedralDivisor::new(k, curve, tail, support, policy).map_err(|e| semantic("support", e))?;

        let coloring = match &self.coloring {
            None => None,
            Some(c) => {
                let y0 = point("coloring.y0", &c.y0)?;
                let y_inf = c.y_inf.as_deref().map(|s| point("coloring.y_inf", s)).transpose()?;
                let mut vertices = BTreeMap::new();
                for (i, cv) in c.vertices.iter().enumerate() {
                    let path = format!("coloring.vertices[{i}]");
                    let y = point(&format!("{path}.point"), &cv.point)?;
                    let v = ratvec(&format!("{path}.vertex"), &cv.vertex, n)?;
                    if vertices.insert(y, v).is_some() {
                        return Err(semantic(&path, "point colored twice"));
                    }
                }
                Some(Coloring { divisor: divisor.clone(), y0, y_inf, vertices })
            }
        };

        let family = match (&self.family, &coloring) {
            (None, _) => None,
            (Some(_), None) => return Err(semantic("family", "a family requires a coloring")),
            (Some(f), Some(c)) => {
                if f.e.len() != n {
                    return Err(semantic("family.e", format!("expected {n} coordinates")));
                }
                let lambda = f
                    .lambda
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_field_elem(s, k).map_err(|e| semantic(&format!("family.lambda[{i}]"), e)))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(CoherentFamily { coloring: c.clone(), e: f.e.clone(), s: f.s.clone(), lambda })
            }
        };

        let toric = match &self.toric {
            None => None,
            Some(t) if t.e.len() != n => return Err(semantic("toric.e", format!("expected {n} coordinates"))),
            Some(t) => Some(t.e.clone()),
        };

        let b = &self.bounds;
        if b.weight_box < 0 {
            return Err(semantic("bounds.weight_box", "must be nonnegative"));
        }
        let lambda_sample = b
            .lambda_sample
            .iter()
            .enumerate()
            .map(|(i, s)| parse_field_elem(s, k).map_err(|e| semantic(&format!("bounds.lambda_sample[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let bounds =
            Bounds { weight_box: b.weight_box, max_order: b.max_order, e_box: b.e_box, s_max: b.s_max, lambda_sample };
        Ok(Scenario { policy, divisor, coloring, family, toric, bounds })
    }
}

impl Scenario {
    pub fn to_file(&self) -> ScenarioFile {
        let d = &self.divisor;
        let support = d
            .support()
            .iter()
            .map(|(y, p)| SupportEntry { point: y.to_string(), vertices: p.vertices().iter().map(|v| fmt_vec(v)).collect() })
            .collect();
        let coloring = self.coloring.as_ref().map(|c| ColoringSpec {
            y0: c.y0.to_string(),
            y_inf: c.y_inf.as_ref().map(ClosedPoint::to_string),
            vertices: c
                .vertices
                .iter()
                .map(|(y, v)| ColoredVertex { point: y.to_string(), vertex: fmt_vec(v) })
                .collect(),
        });
        let family = self.family.as_ref().map(|f| FamilySpec {
            e: f.e.clone(),
            s: f.s.clone(),
            lambda: f.lambda.iter().map(Fe::to_string).collect(),
        });
        let b = &self.bounds;
        ScenarioFile {
            field: field_spec(d.field()),
            rank: d.rank(),
            tail_rays: d.tail().rays().to_vec(),
            curve: match d.curve() {
                Curve::A1 => "A1".into(),
                Curve::P1 => "P1".into(),
            },
            support,
            coloring,
            family,
            toric: self.toric.as_ref().map(|e| ToricSpec { e: e.clone() }),
            bounds: BoundsSpec {
                weight_box: b.weight_box,
                max_order: b.max_order,
                e_box: b.e_box,
                s_max: b.s_max,
                lambda_sample: b.lambda_sample.iter().map(Fe::to_string).collect(),
            },
            trust: match self.policy {
                Policy::Strict => "strict".into(),
                Policy::Trusted => "trusted".into(),
            },
        }
    }
}
