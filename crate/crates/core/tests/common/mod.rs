#![allow(dead_code)]

use std::collections::BTreeMap;

use ghz_core::arith::syntax::{parse_poly, parse_ratfunc};
use ghz_core::arith::BaseField;
use ghz_core::classifier::{CoherentFamily, Coloring};
use ghz_core::curve::{ClosedPoint, Curve, Policy};
use ghz_core::lfihd::GradedElement;
use ghz_core::polyhedral::linalg::{q, qf};
use ghz_core::polyhedral::{Cone, LatticeVec, Polyhedron, RatVec};
use ghz_core::tvariety::PolyhedralDivisor;
use num_rational::BigRational;

pub fn pt(s: &str, k: BaseField) -> ClosedPoint {
    ClosedPoint::finite(parse_poly(s, k).unwrap()).unwrap()
}

pub fn el(k: BaseField, m: &[i64], f: &str) -> GradedElement {
    GradedElement::monomial(m.to_vec(), parse_ratfunc(f, k).unwrap())
}

pub fn policy(k: BaseField) -> Policy {
    if k.is_perfect() {
        Policy::Strict
    } else {
        Policy::Trusted
    }
}

/// `{1/5}[t] + [0,1/5][y]` over `A1` with `σ = 0`, colored by `1/5` and `0`.
pub fn example_one(k: BaseField, y: &str) -> Coloring {
    let sigma = Cone::zero(1).unwrap();
    let d0 = Polyhedron::point(vec![qf(1, 5)], sigma.clone()).unwrap();
    let dy = Polyhedron::new(vec![vec![q(0)], vec![qf(1, 5)]], sigma.clone()).unwrap();
    let d = PolyhedralDivisor::new(k, Curve::A1, sigma, [(pt("t", k), d0), (pt(y, k), dy)], policy(k)).unwrap();
    let vertices = BTreeMap::from([(pt("t", k), vec![qf(1, 5)]), (pt(y, k), vec![q(0)])]);
    Coloring { divisor: d, y0: pt("t", k), y_inf: None, vertices }
}

/// `(1/2,0)+σ` at `t` and `[(1/2,0),(0,1)]+σ` at `t-1`, `σ = Q≥0²`.
pub fn example_two(k: BaseField) -> Coloring {
    let sigma = Cone::orthant(2).unwrap();
    let d0 = Polyhedron::point(vec![qf(1, 2), q(0)], sigma.clone()).unwrap();
    let d1 = Polyhedron::new(vec![vec![qf(1, 2), q(0)], vec![q(0), q(1)]], sigma.clone()).unwrap();
    let d = PolyhedralDivisor::new(k, Curve::A1, sigma, [(pt("t", k), d0), (pt("t - 1", k), d1)], Policy::Strict)
        .unwrap();
    let vertices = BTreeMap::from([(pt("t", k), vec![qf(1, 2), q(0)]), (pt("t - 1", k), vec![q(0), q(1)])]);
    Coloring { divisor: d, y0: pt("t", k), y_inf: None, vertices }
}

pub fn family(c: Coloring, e: LatticeVec, s: Vec<u32>) -> CoherentFamily {
    let one = c.divisor.field().one();
    CoherentFamily { coloring: c, e, lambda: vec![one; s.len()], s }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ratvec(v: &[(i64, i64)]) -> RatVec {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}
