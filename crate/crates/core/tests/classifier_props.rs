mod common;

use common::*;
use ghz_core::arith::BaseField;
use ghz_core::classifier::{
    associated_cones, candidate_colorings, candidate_grid, coherent_validate, demazure_root_check,
    demazure_roots_enumerate, enumerate_coherent, floor_condition_check, EnumerationBounds,
};
use ghz_core::curve::Curve;
use ghz_core::polyhedral::linalg::{dot_int, is_integral, to_rat};
use ghz_core::polyhedral::{Cone, Polyhedron};
use ghz_core::tvariety::{pdiv_validate, PolyhedralDivisor};
use num_rational::BigRational;
use proptest::prelude::*;

fn field(i: usize) -> BaseField {
    [BaseField::Rationals, BaseField::Prime(2), BaseField::Prime(3), BaseField::RationalFunctions(2)][i]
}

fn tail(n: usize, i: usize) -> Cone {
    match (n, i % 3) {
        (1, 0) => Cone::zero(1).unwrap(),
        (1, 1) => Cone::orthant(1).unwrap(),
        (1, _) => Cone::generated_by_int(1, &[vec![-1]]).unwrap(),
        (_, 0) => Cone::orthant(2).unwrap(),
        (_, 1) => Cone::generated_by_int(2, &[vec![1, 0], vec![1, 2]]).unwrap(),
        _ => Cone::generated_by_int(2, &[vec![1, -1], vec![1, 1]]).unwrap(),
    }
}

/// Divisors over `A1` or `P1` with rational support points and small vertices.
fn divisor() -> impl Strategy<Value = PolyhedralDivisor> {
    (0usize..4, 1usize..=2, 0usize..3, any::<bool>(), proptest::collection::vec((-3i64..=3, 1i64..=3), 12), 1usize..=2)
        .prop_filter_map("invalid divisor", |(fi, n, ti, p1, coords, npts)| {
            let k = field(fi);
            let sigma = tail(n, ti);
            let curve = if p1 { Curve::P1 } else { Curve::A1 };
            let names = ["t", "t - 1"];
            let mut support = Vec::new();
            for (i, name) in names.iter().take(npts).enumerate() {
                let mut vs = Vec::new();
                for j in 0..2 {
                    let off = 6 * i + 3 * j;
                    vs.push((0..n).map(|c| rat(coords[off + c].0, coords[off + c].1)).collect());
                }
                support.push((pt(name, k), Polyhedron::new(vs, sigma.clone()).ok()?));
            }
            let d = PolyhedralDivisor::new(k, curve, sigma, support, policy(k)).ok()?;
            pdiv_validate(&d).is_valid().then_some(d)
        })
}

fn bounds() -> EnumerationBounds {
    EnumerationBounds { e_box: 2, s_max: 1, lambda_sample: Vec::new(), y0_candidates: None }
}

fn with_lambda(d: &PolyhedralDivisor) -> EnumerationBounds {
    EnumerationBounds { lambda_sample: vec![d.field().one()], ..bounds() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn associated_cones_invariants(d in divisor()) {
        for c in candidate_colorings(&d, None).unwrap() {
            let a = associated_cones(&c).unwrap();
            let n = d.rank();
            // τ × {0} ⊂ τ̃, and the distinguished ray is a ray of τ̃
            for g in a.tau.generators() {
                let mut lifted = g.clone();
                lifted.push(BigRational::from_integer(0.into()));
                prop_assert!(a.tau_tilde.contains(&lifted));
            }
            prop_assert!(a.tau_tilde.rays().contains(&a.distinguished_ray));
            prop_assert_eq!(a.distinguished_ray.len(), n + 1);
            prop_assert!(a.omega.is_subcone_of(&d.weight_cone()));
            // d is the least positive integer clearing the denominators of v0
            let v0 = c.v0();
            let scaled = |k: u64| -> Vec<BigRational> { v0.iter().map(|x| x * BigRational::from_integer(k.into())).collect() };
            prop_assert!(is_integral(&scaled(a.d)));
            for k in 1..a.d {
                prop_assert!(!is_integral(&scaled(k)));
            }
            prop_assert_eq!(a.ell * a.p_u, a.d);
        }
    }

    #[test]
    fn coherent_families_are_roots_and_pass_floor_checks(d in divisor()) {
        for theta in enumerate_coherent(&d, &with_lambda(&d)).unwrap() {
            let a = associated_cones(&theta.coloring).unwrap();
            for i in 0..theta.s.len() {
                let lift = theta.root_lift(i, a.d).unwrap();
                prop_assert!(demazure_root_check(&a.tau_tilde, &a.distinguished_ray, &lift).unwrap());
            }
            if theta.coloring.y_inf.as_ref().is_none_or(|y| y.is_infinity()) {
                prop_assert!(floor_condition_check(&theta, 6).unwrap().passed());
            }
        }
    }

    #[test]
    fn enumeration_is_a_filter_of_the_grid(d in divisor()) {
        let b = with_lambda(&d);
        let grid = candidate_grid(&d, &b).unwrap();
        let replay: Vec<_> = grid.into_iter().filter(|t| coherent_validate(t).is_coherent()).collect();
        prop_assert_eq!(enumerate_coherent(&d, &b).unwrap(), replay);
    }

    #[test]
    fn enumerated_roots_are_roots(
        rays in prop::sample::select(vec![
            vec![vec![1, 0], vec![1, 5]],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![1, -2, 0], vec![0, 1, 0], vec![1, 0, 2]],
            vec![vec![2, -1], vec![1, 3]],
        ]),
        pick in 0usize..3,
    ) {
        let n = rays[0].len();
        let cone = Cone::generated_by_int(n, &rays).unwrap();
        let ray = cone.rays()[pick % cone.rays().len()].clone();
        let roots = demazure_roots_enumerate(&cone, &ray, 3, 2).unwrap();
        for r in &roots {
            prop_assert_eq!(dot_int(&ray, r), rat(-1, 1));
            prop_assert!(demazure_root_check(&cone, &ray, r).unwrap());
        }
        // every integral root in the box is found
        for e in ghz_core::classifier::weight_box(n, 3) {
            if demazure_root_check(&cone, &ray, &to_rat(&e)).unwrap() {
                prop_assert!(roots.contains(&to_rat(&e)));
            }
        }
    }
}

#[test]
fn bounds_edge_cases() {
    let c = example_one(BaseField::RationalFunctions(2), "t^2 + l");
    let d = c.divisor.clone();
    let empty = EnumerationBounds { e_box: -1, ..with_lambda(&d) };
    assert!(enumerate_coherent(&d, &empty).unwrap().is_empty());
    let no_lambda = bounds();
    assert!(enumerate_coherent(&d, &no_lambda).unwrap().is_empty());
    let y0s = EnumerationBounds { y0_candidates: Some(vec![pt("t", d.field())]), e_box: 1, s_max: 2, ..with_lambda(&d) };
    let fams = enumerate_coherent(&d, &y0s).unwrap();
    assert!(fams.iter().any(|f| f.e == vec![1] && f.s == vec![2]));
}
