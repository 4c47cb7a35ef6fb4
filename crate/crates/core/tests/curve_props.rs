use ghz_core::arith::{BaseField, FactoredRatFunc, Poly, RatFunc};
use ghz_core::curve::{h0_generators, insep_profile, principal_divisor, ClosedPoint, Curve, QDivisor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn f2() -> BaseField {
    BaseField::Prime(2)
}

fn points() -> Vec<Poly> {
    vec![Poly::x(f2()), Poly::from_i64s(f2(), &[1, 1]), Poly::from_i64s(f2(), &[1, 1, 1])]
}

fn all_polys(max_deg: usize) -> Vec<Poly> {
    (0u32..(1 << (max_deg + 1)))
        .map(|bits| {
            let cs: Vec<i64> = (0..=max_deg).map(|i| i64::from((bits >> i) & 1)).collect();
            Poly::from_i64s(f2(), &cs)
        })
        .collect()
}

fn floor(a: &BigRational) -> i64 {
    let f = a.floor().to_integer();
    i64::try_from(f).unwrap()
}

/// Counts `P` of degree ≤ `b` with `P/Q0` satisfying `div f + ⌊E⌋ ≥ 0`, straight from orders.
fn count_sections(coeffs: &[(Poly, BigRational)], inf: Option<&BigRational>, b: usize) -> (usize, Poly) {
    let mut q0 = Poly::one(f2());
    for (q, a) in coeffs {
        q0 = &q0 * &q.pow(floor(a).max(0) as u64);
    }
    let mut count = 0;
    for p in all_polys(b) {
        let f = RatFunc::new(p.clone(), q0.clone()).unwrap();
        if f.is_zero() {
            count += 1;
            continue;
        }
        let finite_ok = coeffs.iter().all(|(q, a)| f.order_at(q) + floor(a) >= 0);
        let inf_ok = inf.is_none_or(|a| f.order_at_infinity() + floor(a) >= 0);
        if finite_ok && inf_ok {
            count += 1;
        }
    }
    (count, q0)
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-2i64..3, 1i64..4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h0_on_p1_matches_brute_force(a in proptest::collection::vec(rational(), 3), inf in rational()) {
        let pts = points();
        let coeffs: Vec<(Poly, BigRational)> = pts.iter().cloned().zip(a.iter().cloned()).collect();
        let mut e = QDivisor::from_terms(coeffs.iter().map(|(q, a)| (ClosedPoint::Finite(q.clone()), a.clone())));
        e.add_term(ClosedPoint::Infinity, inf.clone());
        let h = h0_generators(&e, Curve::P1, f2()).unwrap();
        let ghz_core::curve::H0Module::Basis { dim, .. } = h else { panic!("P1 gives a basis") };
        let deg_floor: i64 = coeffs.iter().map(|(q, a)| floor(a) * q.degree().unwrap() as i64).sum::<i64>() + floor(&inf);
        prop_assert_eq!(dim as i64, (deg_floor + 1).max(0));
        let q0deg: usize = coeffs.iter().map(|(q, a)| floor(a).max(0) as usize * q.degree().unwrap()).sum();
        let b = q0deg + floor(&inf).max(0) as usize;
        let (count, _) = count_sections(&coeffs, Some(&inf), b);
        prop_assert_eq!(count, 1usize << dim);
        for f in h.basis().unwrap() {
            prop_assert!(h.contains(&f.expand()));
        }
    }

    #[test]
    fn h0_on_a1_matches_brute_force(a in proptest::collection::vec(rational(), 3)) {
        let pts = points();
        let coeffs: Vec<(Poly, BigRational)> = pts.iter().cloned().zip(a.iter().cloned()).collect();
        let e = QDivisor::from_terms(coeffs.iter().map(|(q, a)| (ClosedPoint::Finite(q.clone()), a.clone())));
        let h = h0_generators(&e, Curve::A1, f2()).unwrap();
        // P = g·Q0·h with deg(g·Q0) = c
        let c: usize = coeffs.iter().map(|(q, a)| (-floor(a)).max(0) as usize * q.degree().unwrap()).sum();
        let b = c + 2;
        let (count, q0) = count_sections(&coeffs, None, b);
        prop_assert_eq!(count, 1usize << (b + 1 - c));
        let gq0 = &h.generator().expand() * &RatFunc::from_poly(q0);
        prop_assert!(gq0.is_polynomial());
        prop_assert_eq!(gq0.numer().degree().unwrap(), c);
    }

    #[test]
    fn principal_divisors_have_degree_zero(es in proptest::collection::vec(-3i64..4, 3)) {
        let f = FactoredRatFunc::new(f2().one(), points().into_iter().zip(es)).unwrap();
        let d = principal_divisor(&f, Curve::P1).unwrap();
        prop_assert!(d.degree().is_zero());
    }

    #[test]
    fn inseparable_degree_divides(cs in proptest::collection::vec(0i64..3, 1..4), ell in 0u32..3) {
        let k = BaseField::Prime(3);
        let mut coeffs = cs.clone();
        coeffs.push(1);
        let base = Poly::from_i64s(k, &coeffs);
        let q = base.spread(3usize.pow(ell));
        let prof = insep_profile(&ClosedPoint::finite(q.clone()).unwrap()).unwrap();
        prop_assert_eq!(prof.eps * prof.s, q.degree().unwrap() as u64);
        prop_assert_eq!(prof.q_tilde.spread(prof.eps as usize), q);
        prop_assert!(!prof.q_tilde.derivative().is_zero());
        let qq = Poly::from_i64s(BaseField::Rationals, &coeffs).spread(2);
        prop_assert_eq!(insep_profile(&ClosedPoint::finite(qq).unwrap()).unwrap().eps, 1);
    }
}
