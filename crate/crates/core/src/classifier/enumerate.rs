//! Bounded enumeration of coherent families.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::coherent::{coherent_validate, weight_box, CoherentFamily};
use super::coloring::{coloring_validate, Coloring};
use crate::arith::Fe;
use crate::curve::{ClosedPoint, Curve};
use crate::tvariety::{linearity_fan, PolyhedralDivisor};
use crate::Result;

#[derive(Clone, Debug)]
pub struct EnumerationBounds {
    /// `e` ranges over `[-e_box, e_box]^n`; negative means empty.
    pub e_box: i64,
    pub s_max: u32,
    pub lambda_sample: Vec<Fe>,
    /// Overrides the default choice of `y0`.
    pub y0_candidates: Option<Vec<ClosedPoint>>,
}

fn off_support_point(d: &PolyhedralDivisor, avoid: Option<&ClosedPoint>) -> Option<ClosedPoint> {
    d.field()
        .sample_elements(16)
        .iter()
        .map(ClosedPoint::rational)
        .find(|y| !d.support().contains_key(y) && Some(y) != avoid)
}

/// Every valid coloring of `D` with `y0` a rational support point or one
/// representative off the support; on `P1`, `y∞` runs over infinity and the
/// rational support points.
pub fn candidate_colorings(d: &PolyhedralDivisor, y0_candidates: Option<&[ClosedPoint]>) -> Result<Vec<Coloring>> {
    let y_infs: Vec<Option<ClosedPoint>> = match d.curve() {
        Curve::A1 => vec![None],
        Curve::P1 => {
            let mut v = vec![Some(ClosedPoint::Infinity)];
            v.extend(d.support().keys().filter(|y| y.is_rational() && !y.is_infinity()).cloned().map(Some));
            v
        }
    };
    colorings_for(d, &y_infs, y0_candidates)
}

pub(crate) fn colorings_for(
    d: &PolyhedralDivisor,
    y_infs: &[Option<ClosedPoint>],
    y0_candidates: Option<&[ClosedPoint]>,
) -> Result<Vec<Coloring>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for y_inf in y_infs.iter().cloned() {
        let y0s: Vec<ClosedPoint> = match y0_candidates {
            Some(c) => c.to_vec(),
            None => {
                let mut v: Vec<ClosedPoint> = d
                    .support()
                    .keys()
                    .filter(|y| y.is_rational() && !y.is_infinity() && Some(*y) != y_inf.as_ref())
                    .cloned()
                    .collect();
                v.extend(off_support_point(d, y_inf.as_ref()));
                v
            }
        };
        for lc in linearity_fan(d, y_inf.as_ref())? {
            for y0 in &y0s {
                let c = Coloring { divisor: d.clone(), y0: y0.clone(), y_inf: y_inf.clone(), vertices: lc.vertices.clone() };
                let key = (c.y0.clone(), c.y_inf.clone(), c.vertices.clone());
                if coloring_validate(&c).is_valid() && seen.insert(key) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

fn s_sequences(p: u64, s_max: u32) -> Vec<Vec<u32>> {
    if p == 1 {
        return vec![vec![1]];
    }
    let k = s_max + 1;
    let mut out: Vec<Vec<u32>> = (1u64..(1 << k)).map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn lambda_tuples(sample: &[Fe], r: usize) -> Vec<Vec<Fe>> {
    let mut out: Vec<Vec<Fe>> = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                sample.iter().map(move |l| {
                    let mut t = t.clone();
                    t.push(l.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// The candidate grid, in canonical order: coloring, then `e`, `s`, `λ`.
pub fn candidate_grid(d: &PolyhedralDivisor, bounds: &EnumerationBounds) -> Result<Vec<CoherentFamily>> {
    if bounds.e_box < 0 {
        return Ok(Vec::new());
    }
    let colorings = candidate_colorings(d, bounds.y0_candidates.as_deref())?;
    let p = d.field().char_exponent();
    let es = weight_box(d.rank(), bounds.e_box);
    let mut out = Vec::new();
    for c in &colorings {
        for e in &es {
            for s in s_sequences(p, bounds.s_max) {
                for lambda in lambda_tuples(&bounds.lambda_sample, s.len()) {
                    out.push(CoherentFamily { coloring: c.clone(), e: e.clone(), s: s.clone(), lambda });
                }
            }
        }
    }
    Ok(out)
}

/// All coherent families in the candidate grid; checks run in parallel and
/// the output keeps the grid order.
pub fn enumerate_coherent(d: &PolyhedralDivisor, bounds: &EnumerationBounds) -> Result<Vec<CoherentFamily>> {
    let grid = candidate_grid(d, bounds)?;
    Ok(grid.into_par_iter().filter(|t| coherent_validate(t).is_coherent()).collect())
}
