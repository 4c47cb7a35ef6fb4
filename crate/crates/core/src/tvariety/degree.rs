//! Degree polyhedra, linearity regions of the evaluation map and base change.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::divisor::{deg_polyhedron, PolyhedralDivisor};
use crate::curve::{insep_profile, ClosedPoint, Curve};
use crate::polyhedral::linalg::{add, dot};
use crate::polyhedral::{normal_fan, Cone, Polyhedron, RatVec};
use crate::{Error, Result};

fn check_infinity(d: &PolyhedralDivisor, y_inf: Option<&ClosedPoint>) -> Result<()> {
    match y_inf {
        Some(_) if d.curve() == Curve::A1 => {
            Err(Error::InvalidColoring("a removed point only makes sense on P1".into()))
        }
        Some(y) if !y.is_rational() => Err(Error::InvalidColoring(format!("y_infinity = {y} is not k-rational"))),
        _ => Ok(()),
    }
}

/// `deg D|C' = Σ_{y∈C'} [κ_y:k] D_y` with `C' = C ∖ {y∞}`, and its vertices.
pub fn deg_restricted(d: &PolyhedralDivisor, y_inf: Option<&ClosedPoint>) -> Result<(Polyhedron, Vec<RatVec>)> {
    check_infinity(d, y_inf)?;
    let p = deg_polyhedron(d, y_inf)?;
    let vs = p.vertices().to_vec();
    Ok((p, vs))
}

/// A maximal cone of `σ^∨` on which `m ↦ D(m)|C'` is linear, together with
/// the vertex of each `D_y` (`y ∈ C'` in the support) realizing the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityCone {
    pub cone: Cone,
    pub deg_vertex: RatVec,
    pub vertices: BTreeMap<ClosedPoint, RatVec>,
}

impl LinearityCone {
    /// The linear form `v_deg = Σ [κ_y:k] v_y` restricted to this cone.
    pub fn v_deg(&self) -> RatVec {
        let dim = self.deg_vertex.len();
        self.vertices.iter().fold(vec![BigRational::zero(); dim], |acc, (y, v)| {
            let w = BigRational::from_integer(BigInt::from(y.residue_degree()));
            add(&acc, &v.iter().map(|x| x * &w).collect::<Vec<_>>())
        })
    }
}

pub fn linearity_fan(d: &PolyhedralDivisor, y_inf: Option<&ClosedPoint>) -> Result<Vec<LinearityCone>> {
    let (deg, _) = deg_restricted(d, y_inf)?;
    let mut out = Vec::new();
    for (deg_vertex, cone) in normal_fan(&deg)? {
        let interior: RatVec = cone
            .rays()
            .iter()
            .fold(vec![BigRational::zero(); d.rank()], |acc, r| add(&acc, &crate::polyhedral::linalg::to_rat(r)));
        let mut vertices = BTreeMap::new();
        for (y, p) in d.support() {
            if Some(y) == y_inf {
                continue;
            }
            let best = p
                .vertices()
                .iter()
                .min_by(|a, b| dot(&interior, a).cmp(&dot(&interior, b)).then(a.cmp(b)))
                .expect("nonempty polyhedron");
            vertices.insert(y.clone(), best.clone());
        }
        out.push(LinearityCone { cone, deg_vertex, vertices });
    }
    Ok(out)
}

/// One support point of `D` after base change to `k̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeEntry {
    pub point: ClosedPoint,
    pub eps: u64,
    pub s: u64,
    /// `ε_y · D_y`, carried by each of the `s` conjugate points.
    pub polyhedron: Polyhedron,
    /// Names standing for the conjugate points over `k̄`.
    pub tags: Vec<String>,
}

pub fn base_change_profile(d: &PolyhedralDivisor) -> Vec<BaseChangeEntry> {
    d.support()
        .iter()
        .map(|(y, p)| {
            let (eps, s) = match insep_profile(y) {
                Some(prof) => (prof.eps, prof.s),
                None => (1, 1),
            };
            let tags = if s == 1 {
                vec![y.to_string()]
            } else {
                (1..=s).map(|i| format!("{y}#{i}")).collect()
            };
            let polyhedron = p.scale(&BigRational::from_integer(BigInt::from(eps)));
            BaseChangeEntry { point: y.clone(), eps, s, polyhedron, tags }
        })
        .collect()
}
