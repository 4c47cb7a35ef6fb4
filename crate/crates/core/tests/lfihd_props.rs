mod common;

use std::collections::BTreeMap;

use common::*;
use ghz_core::arith::syntax::parse_ratfunc;
use ghz_core::arith::{BaseField, Poly, RatFunc};
use ghz_core::classifier::{demazure_roots_enumerate, weight_box, CoherentFamily, Coloring};
use ghz_core::curve::{Curve, Policy};
use ghz_core::lfihd::{apply_order, build_operator, toric_root_operator, verify_axioms, GradedElement, Lfihd};
use ghz_core::polyhedral::{Cone, LatticeVec};
use ghz_core::tvariety::PolyhedralDivisor;
use proptest::prelude::*;

const CONES: &[&[&[i64]]] = &[
    &[&[1]],
    &[&[1, 0], &[0, 1]],
    &[&[1, 0], &[1, 5]],
    &[&[2, -1], &[1, 3]],
    &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
    &[&[1, -2, 0], &[0, 1, 0], &[1, 0, 2]],
];

fn cone(i: usize) -> Cone {
    let rays: Vec<LatticeVec> = CONES[i].iter().map(|r| r.to_vec()).collect();
    Cone::generated_by_int(rays[0].len(), &rays).unwrap()
}

fn field_for(p: u64) -> BaseField {
    if p == 1 {
        BaseField::Rationals
    } else {
        BaseField::Prime(p)
    }
}

fn monomials(c: &Cone, radius: i64, k: BaseField) -> Vec<GradedElement> {
    let dual = c.dual();
    weight_box(c.dim(), radius)
        .into_iter()
        .filter(|m| dual.contains_int(m))
        .take(10)
        .map(|m| GradedElement::monomial(m, RatFunc::one(k)))
        .collect()
}

/// The trivial divisor over `A1` with tail `σ`, colored at `y0 = t`.
fn trivial_family(sigma: &Cone, e: &[i64], k: BaseField) -> CoherentFamily {
    let d = PolyhedralDivisor::new(k, Curve::A1, sigma.clone(), Vec::new(), Policy::Strict).unwrap();
    let coloring = Coloring { divisor: d, y0: pt("t", k), y_inf: None, vertices: BTreeMap::new() };
    let s = if k.char_exponent() == 1 { vec![1] } else { vec![0] };
    family(coloring, e.to_vec(), s)
}

/// `σ × Q≥0` in `N × Z`.
fn lifted_cone(sigma: &Cone) -> Cone {
    let n = sigma.dim();
    let mut rays: Vec<LatticeVec> = sigma.rays().iter().map(|r| [r.as_slice(), &[0]].concat()).collect();
    let mut up = vec![0; n + 1];
    up[n] = 1;
    rays.push(up);
    Cone::generated_by_int(n + 1, &rays).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn toric_root_operators_satisfy_the_axioms(ci in 0usize..CONES.len(), ri in 0usize..3, pick in 0usize..64, p in prop::sample::select(vec![1u64, 2, 3])) {
        let c = cone(ci);
        let ray = c.rays()[ri % c.rays().len()].clone();
        let roots: Vec<LatticeVec> = demazure_roots_enumerate(&c, &ray, 2, 1)
            .unwrap()
            .into_iter()
            .filter(|r| r.iter().all(|x| x.is_integer()))
            .map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect())
            .collect();
        prop_assume!(!roots.is_empty());
        let e = &roots[pick % roots.len()];
        let k = field_for(p);
        let op = toric_root_operator(&c, e, k).unwrap();
        prop_assert_eq!(op.distinguished_ray(), ray.as_slice());
        let tests = monomials(&c, 2, k);
        let r = verify_axioms(&op, &tests, 6).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn toric_operator_matches_the_trivial_divisor(ci in 0usize..4, pick in 0usize..64, p in prop::sample::select(vec![1u64, 2, 3])) {
        let sigma = cone(ci);
        let k = field_for(p);
        let omega: Vec<LatticeVec> = weight_box(sigma.dim(), 2).into_iter().filter(|m| sigma.dual().contains_int(m) && m.iter().any(|x| *x != 0)).collect();
        let e = omega[pick % omega.len()].clone();
        let theta = trivial_family(&sigma, &e, k);
        let dtheta = build_operator(&theta, false).unwrap();
        let lifted = lifted_cone(&sigma);
        let toric = toric_root_operator(&lifted, &[e.as_slice(), &[-1]].concat(), k).unwrap();
        for m in weight_box(sigma.dim(), 2).into_iter().filter(|m| sigma.dual().contains_int(m)) {
            for r in 0..4usize {
                let x = GradedElement::monomial(m.clone(), RatFunc::from_poly(Poly::monomial(k.one(), r)));
                let y = GradedElement::monomial([m.as_slice(), &[r as i64]].concat(), RatFunc::one(k));
                let a = apply_order(&dtheta, &x, 5).unwrap();
                let b = apply_order(&toric, &y, 5).unwrap();
                for ((_, u), (_, v)) in a.values.iter().zip(&b.values) {
                    // χ^{(w, j)} on the toric side is t^j χ^w
                    let mapped = GradedElement::from_terms(k, sigma.dim(), v.terms().iter().map(|(w, c)| {
                        let j = w[sigma.dim()] as usize;
                        (w[..sigma.dim()].to_vec(), c * &RatFunc::from_poly(Poly::monomial(k.one(), j)))
                    })).unwrap();
                    prop_assert_eq!(u, &mapped);
                }
            }
        }
    }

    #[test]
    fn example_one_axioms_on_random_elements(
        terms in proptest::collection::vec((-6i64..=6, 0usize..3, 0usize..2, 0usize..2), 1..4),
    ) {
        let k = BaseField::RationalFunctions(2);
        let op = build_operator(&family(example_one(k, "t^2 + l"), vec![1], vec![2]), false).unwrap();
        let mut x = GradedElement::zero(k, 1);
        for (m, a, b, c) in terms {
            let f = parse_ratfunc(&format!("t^{a} * (t^2 + l)^{b} / (t + 1)^{c}"), k).unwrap();
            x = x.add(&GradedElement::monomial(vec![m], f));
        }
        let tests = vec![x, el(k, &[5], "1/t")];
        let r = verify_axioms(&op, &tests, 9).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures());
    }
}

#[test]
fn operator_is_additive_and_kills_constants() {
    let k = BaseField::Prime(2);
    let op = build_operator(&family(example_two(k), vec![1, 0], vec![0]), false).unwrap();
    let x = el(k, &[0, 1], "1");
    let y = el(k, &[1, 0], "t/(t - 1)");
    let sum = op.apply_upto(&x.add(&y), 6).unwrap();
    let (a, b) = (op.apply_upto(&x, 6).unwrap(), op.apply_upto(&y, 6).unwrap());
    for i in 0..=6 {
        assert_eq!(sum[i], a[i].add(&b[i]));
    }
    let one = el(k, &[0, 0], "1");
    assert!(op.apply_upto(&one, 6).unwrap().iter().skip(1).all(GradedElement::is_zero));
}
