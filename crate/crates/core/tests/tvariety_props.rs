use std::collections::HashMap;

use ghz_core::arith::syntax::parse_poly;
use ghz_core::arith::{BaseField, Poly};
use ghz_core::curve::{ClosedPoint, Curve, Policy};
use ghz_core::polyhedral::linalg::{dot, q, qf, to_rat};
use ghz_core::polyhedral::{Cone, Polyhedron};
use ghz_core::tvariety::{
    algebra_generators, base_change_profile, graded_piece, linearity_fan, pdiv_eval, GeneratorBounds,
    PolyhedralDivisor,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn example_one() -> PolyhedralDivisor {
    let k = BaseField::RationalFunctions(2);
    let sigma = Cone::zero(1).unwrap();
    let pts = [
        (ClosedPoint::finite(parse_poly("t", k).unwrap()).unwrap(), Polyhedron::point(vec![qf(1, 5)], sigma.clone()).unwrap()),
        (
            ClosedPoint::finite(parse_poly("t^2 + l", k).unwrap()).unwrap(),
            Polyhedron::new(vec![vec![q(0)], vec![qf(1, 5)]], sigma.clone()).unwrap(),
        ),
    ];
    PolyhedralDivisor::new(k, Curve::A1, sigma, pts, Policy::Trusted).unwrap()
}

fn example_two() -> PolyhedralDivisor {
    let k = BaseField::Prime(2);
    let sigma = Cone::orthant(2).unwrap();
    let pts = [
        (
            ClosedPoint::finite(parse_poly("t", k).unwrap()).unwrap(),
            Polyhedron::point(vec![qf(1, 2), q(0)], sigma.clone()).unwrap(),
        ),
        (
            ClosedPoint::finite(parse_poly("t + 1", k).unwrap()).unwrap(),
            Polyhedron::new(vec![vec![qf(1, 2), q(0)], vec![q(0), q(1)]], sigma.clone()).unwrap(),
        ),
    ];
    PolyhedralDivisor::new(k, Curve::A1, sigma, pts, Policy::Strict).unwrap()
}

/// A random divisor over `F_3` in rank 2 with tail `Q≥0²`.
fn random_divisor() -> impl Strategy<Value = PolyhedralDivisor> {
    let vertex = (-3i64..4, 1i64..4, -3i64..4, 1i64..4)
        .prop_map(|(a, b, c, d)| vec![BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into())]);
    proptest::collection::vec(proptest::collection::vec(vertex, 1..3), 1..3).prop_map(|polys| {
        let k = BaseField::Prime(3);
        let sigma = Cone::orthant(2).unwrap();
        let pts = ["t", "t + 1", "t^2 + 1"];
        let support = polys
            .into_iter()
            .enumerate()
            .map(|(i, vs)| {
                (
                    ClosedPoint::finite(parse_poly(pts[i], k).unwrap()).unwrap(),
                    Polyhedron::new(vs, sigma.clone()).unwrap(),
                )
            })
            .collect::<Vec<_>>();
        PolyhedralDivisor::new(k, Curve::A1, sigma, support, Policy::Strict).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_superadditive(d in random_divisor(), a in (0i64..5, 0i64..5), b in (0i64..5, 0i64..5)) {
        let (ma, mb) = (vec![a.0, a.1], vec![b.0, b.1]);
        let sum = vec![a.0 + b.0, a.1 + b.1];
        let lhs = pdiv_eval(&d, &ma).unwrap().add(&pdiv_eval(&d, &mb).unwrap());
        let rhs = pdiv_eval(&d, &sum).unwrap();
        for y in d.support().keys() {
            prop_assert!(lhs.coeff(y) <= rhs.coeff(y));
        }
        let fa = graded_piece(&d, &ma).unwrap().generator().clone();
        let fb = graded_piece(&d, &mb).unwrap().generator().clone();
        let fc = graded_piece(&d, &sum).unwrap().generator().clone();
        prop_assert!(fa.mul(&fb).div(&fc).is_polynomial());
    }

    #[test]
    fn evaluation_is_linear_on_fan_cones(d in random_divisor(), m in (0i64..6, 0i64..6)) {
        let m = vec![m.0, m.1];
        let fan = linearity_fan(&d, None).unwrap();
        let hits: Vec<_> = fan.iter().filter(|c| c.cone.contains_int(&m)).collect();
        prop_assert!(!hits.is_empty());
        let e = pdiv_eval(&d, &m).unwrap();
        for c in hits {
            for (y, v) in &c.vertices {
                prop_assert_eq!(e.coeff(y), dot(&to_rat(&m), v));
            }
        }
    }

    #[test]
    fn base_change_bookkeeping(d in random_divisor()) {
        for entry in base_change_profile(&d) {
            prop_assert_eq!(entry.tags.len() as u64 * entry.eps, entry.point.residue_degree());
        }
    }
}

/// Re-derives `A_m ⊆ k[G]` by expanding monomials in the generators.
fn generated_by_monomials(d: &PolyhedralDivisor, gens: &[(Vec<i64>, Poly, Poly)], radius: i64, max_exp: u32, region: &Cone) {
    let n = d.rank();
    // products indexed by weight: list of (numerator, denominator)
    let mut reach: HashMap<Vec<i64>, Vec<(Poly, Poly)>> = HashMap::new();
    let field = d.field();
    let mut stack = vec![(0usize, vec![0i64; n], Poly::one(field), Poly::one(field))];
    while let Some((i, w, num, den)) = stack.pop() {
        if i == gens.len() {
            if w.iter().all(|x| x.abs() <= radius) {
                reach.entry(w).or_default().push((num, den));
            }
            continue;
        }
        let (gw, gn, gd) = &gens[i];
        let (mut w, mut num, mut den) = (w, num, den);
        for _ in 0..=max_exp {
            stack.push((i + 1, w.clone(), num.clone(), den.clone()));
            w = w.iter().zip(gw).map(|(a, b)| a + b).collect();
            num = &num * gn;
            den = &den * gd;
            if w.iter().any(|x| x.abs() > 3 * radius) {
                break;
            }
        }
    }
    let mut checked = 0;
    let mut ms: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        ms = ms.into_iter().flat_map(|m| (-radius..=radius).map(move |x| { let mut m = m.clone(); m.push(x); m })).collect();
    }
    for m in ms.into_iter().filter(|m| region.contains_int(m)) {
        let f = graded_piece(d, &m).unwrap().generator().expand();
        let mut g = Poly::zero(field);
        for (num, den) in reach.get(&m).into_iter().flatten() {
            // product / f_m must be a polynomial; the k[t]-span is generated by their gcd
            let r = ghz_core::arith::RatFunc::new(num.clone(), den.clone()).unwrap().checked_div(&f).unwrap();
            let p = r.as_polynomial().expect("products stay in A").clone();
            g = g.gcd(&p);
        }
        assert!(g.is_one(), "A_{m:?} not generated (gcd {g})");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn example_one_generators_recheck() {
    let d = example_one();
    let set = algebra_generators(&d, &GeneratorBounds { radius: 10, restrict: None }).unwrap();
    let gens: Vec<_> = set
        .generators
        .iter()
        .map(|(m, f)| {
            let e = f.expand();
            (m.clone(), e.numer().clone(), e.denom().clone())
        })
        .collect();
    generated_by_monomials(&d, &gens, 10, 24, &d.weight_cone());
}

#[test]
fn example_two_generators_recheck() {
    let d = example_two();
    let omega2 = Cone::generated_by_int(2, &[vec![0, 1], vec![2, 1]]).unwrap();
    let set = algebra_generators(&d, &GeneratorBounds { radius: 5, restrict: Some(omega2.clone()) }).unwrap();
    assert_eq!(set.generators.len(), 4);
    let gens: Vec<_> = set
        .generators
        .iter()
        .map(|(m, f)| {
            let e = f.expand();
            (m.clone(), e.numer().clone(), e.denom().clone())
        })
        .collect();
    generated_by_monomials(&d, &gens, 5, 8, &omega2);
    // the whole algebra needs more generators than the ω₂ part
    let full = algebra_generators(&d, &GeneratorBounds { radius: 5, restrict: None }).unwrap();
    assert!(full.generators.len() >= 4);
}
