//! Closed points of the affine and projective line.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{BaseField, Fe, Poly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    A1,
    P1,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curve::A1 => "A1",
            Curve::P1 => "P1",
        })
    }
}

/// A closed point: a monic irreducible polynomial or the point at infinity.
/// Infinity sorts after every finite point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    Finite(Poly),
    Infinity,
}

impl ClosedPoint {
    /// Wraps `q` without proving irreducibility; see [`point_validate`].
    pub fn finite(q: Poly) -> Result<ClosedPoint> {
        if !q.is_monic() || q.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidPoint(format!("{q} is not monic of positive degree")));
        }
        Ok(ClosedPoint::Finite(q))
    }

    /// The rational point `t = c`.
    pub fn rational(c: &Fe) -> ClosedPoint {
        ClosedPoint::Finite(Poly::linear(c))
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            ClosedPoint::Finite(q) => Some(q),
            ClosedPoint::Infinity => None,
        }
    }

    /// `[κ_y : k]`.
    pub fn residue_degree(&self) -> u64 {
        match self {
            ClosedPoint::Finite(q) => q.degree().unwrap() as u64,
            ClosedPoint::Infinity => 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.residue_degree() == 1
    }

    /// The coordinate `c` of a finite rational point `t - c`.
    pub fn rational_value(&self) -> Option<Fe> {
        match self {
            ClosedPoint::Finite(q) if q.degree() == Some(1) => Some(-&q.coeff(0)),
            _ => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity)
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Finite(q) => write!(f, "{q}"),
            ClosedPoint::Infinity => f.write_str("infinity"),
        }
    }
}

/// Parses `"infinity"` or a monic polynomial in `t`.
pub fn parse_point(src: &str, field: BaseField) -> Result<ClosedPoint> {
    let s = src.trim();
    if s.eq_ignore_ascii_case("infinity") || s == "∞" {
        return Ok(ClosedPoint::Infinity);
    }
    ClosedPoint::finite(crate::arith::syntax::parse_poly(s, field)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    Strict,
    Trusted,
}

/// How irreducibility of a point was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Degree one, or the point at infinity.
    Rational,
    Proven,
    /// Only partial checks passed; the text names them.
    Trusted(String),
}

impl Certificate {
    pub fn is_trusted(&self) -> bool {
        matches!(self, Certificate::Trusted(_))
    }
}

/// Validates `q` as a closed point under `policy`.
///
/// Strict: distinct-degree test over `F_p`, rational roots over `Q` up to
/// degree 3, otherwise undecidable. Trusted: runs the strict test where it is
/// decidable and otherwise checks that `q̃` is squarefree and has no root among
/// a sample of field elements.
pub fn point_validate(q: &Poly, policy: Policy) -> Result<(ClosedPoint, Certificate)> {
    let point = ClosedPoint::finite(q.clone())?;
    if q.degree() == Some(1) {
        return Ok((point, Certificate::Rational));
    }
    let field = q.field();
    let decided = match field {
        BaseField::Prime(p) => Some(irreducible_over_fp(q, p)),
        BaseField::Rationals if q.degree().unwrap() <= 3 => Some(no_rational_root(q)),
        _ => None,
    };
    match (decided, policy) {
        (Some(Ok(())), _) => Ok((point, Certificate::Proven)),
        (Some(Err(factor)), _) => Err(Error::Reducible { poly: q.to_string(), factor: factor.to_string() }),
        (None, Policy::Strict) => Err(Error::Undecidable(format!(
            "irreducibility of {q} over {field} cannot be proven; use the trusted policy"
        ))),
        (None, Policy::Trusted) => {
            let prof = insep_profile(&point).expect("finite point");
            let qt = &prof.q_tilde;
            let g = qt.gcd(&qt.derivative());
            if !g.is_one() {
                return Err(Error::Reducible { poly: q.to_string(), factor: g.to_string() });
            }
            let samples = field.sample_elements(24);
            if let Some(c) = samples.iter().find(|c| q.eval(c).is_zero()) {
                return Err(Error::Reducible { poly: q.to_string(), factor: Poly::linear(c).to_string() });
            }
            Ok((
                point,
                Certificate::Trusted(format!(
                    "{q}: q̃ squarefree, no root among {} sample elements",
                    samples.len()
                )),
            ))
        }
    }
}

fn powmod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(m);
        }
        b = (&b * &b).rem(m);
        e >>= 1;
    }
    acc
}

/// `Ok` if irreducible, otherwise a nontrivial factor.
fn irreducible_over_fp(q: &Poly, p: u64) -> std::result::Result<(), Poly> {
    let field = q.field();
    let n = q.degree().unwrap();
    let dq = q.derivative();
    if dq.is_zero() {
        // q(t) = r(t)^p with the same coefficients, since a^p = a in F_p
        return Err(q.unspread(p as usize).expect("zero derivative"));
    }
    let g = q.gcd(&dq);
    if !g.is_one() {
        return Err(g);
    }
    let t = Poly::x(field);
    let mut frob = t.clone();
    for _ in 0..n / 2 {
        frob = powmod(&frob, p, q);
        let g = q.gcd(&(&frob - &t));
        if !g.is_one() {
            return Err(g);
        }
    }
    Ok(())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("coefficient too large for the rational root test");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// `Ok` if `q` (degree 2 or 3 over `Q`) has no rational root, else `t - root`.
fn no_rational_root(q: &Poly) -> std::result::Result<(), Poly> {
    let rats: Vec<BigRational> = q.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let l = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|c| (c * &l).to_integer()).collect();
    let field = q.field();
    if ints[0].is_zero() {
        return Err(Poly::x(field));
    }
    let lead = ints.last().unwrap();
    for a in divisors(&ints[0]) {
        for b in divisors(lead) {
            for r in [BigRational::new(a.clone(), b.clone()), -BigRational::new(a.clone(), b.clone())] {
                let c = Fe::Q(r);
                if q.eval(&c).is_zero() {
                    return Err(Poly::linear(&c));
                }
            }
        }
    }
    Ok(())
}

/// `q(t) = q̃(t^ε)` with `ε = p^ℓ` maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsepProfile {
    pub ell: u32,
    pub eps: u64,
    /// `deg q̃`.
    pub s: u64,
    pub q_tilde: Poly,
}

pub fn insep_profile(y: &ClosedPoint) -> Option<InsepProfile> {
    let q = y.poly()?;
    let p = q.field().characteristic();
    let mut q_tilde = q.clone();
    let mut ell = 0;
    if p > 0 {
        while q_tilde.derivative().is_zero() {
            q_tilde = q_tilde.unspread(p as usize).expect("zero derivative means p-th powers only");
            ell += 1;
        }
    }
    let eps = if p > 0 { p.pow(ell) } else { 1 };
    Some(InsepProfile { ell, eps, s: q_tilde.degree().unwrap() as u64, q_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::syntax::parse_poly;

    #[test]
    fn validation_examples() {
        let f2 = BaseField::Prime(2);
        let (pt, cert) = point_validate(&Poly::x(f2), Policy::Strict).unwrap();
        assert_eq!(pt.residue_degree(), 1);
        assert_eq!(cert, Certificate::Rational);

        let k = BaseField::RationalFunctions(2);
        let q = parse_poly("t^2 + l", k).unwrap();
        let (_, cert) = point_validate(&q, Policy::Trusted).unwrap();
        assert!(cert.is_trusted());
        assert!(matches!(point_validate(&q, Policy::Strict), Err(Error::Undecidable(_))));

        let q = parse_poly("t^2 - 1", f2).unwrap();
        match point_validate(&q, Policy::Strict) {
            Err(Error::Reducible { factor, .. }) => assert_eq!(factor, "t + 1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_tests_over_prime_and_rational_fields() {
        let f3 = BaseField::Prime(3);
        assert!(point_validate(&parse_poly("t^2 + 1", f3).unwrap(), Policy::Strict).is_ok());
        assert!(point_validate(&parse_poly("t^2 + 2", f3).unwrap(), Policy::Strict).is_err());
        let f2 = BaseField::Prime(2);
        assert!(point_validate(&parse_poly("t^3 + t + 1", f2).unwrap(), Policy::Strict).is_ok());
        assert!(point_validate(&parse_poly("t^4 + t^2 + 1", f2).unwrap(), Policy::Strict).is_err());
        assert!(point_validate(&parse_poly("t^4 + t + 1", f2).unwrap(), Policy::Strict).is_ok());
        let q = BaseField::Rationals;
        assert!(point_validate(&parse_poly("t^2 - 2", q).unwrap(), Policy::Strict).is_ok());
        assert!(point_validate(&parse_poly("t^3 - 1/8", q).unwrap(), Policy::Strict).is_err());
        assert!(matches!(
            point_validate(&parse_poly("t^4 + 1", q).unwrap(), Policy::Strict),
            Err(Error::Undecidable(_))
        ));
        assert!(point_validate(&parse_poly("t^4 + 1", q).unwrap(), Policy::Trusted).unwrap().1.is_trusted());
    }

    #[test]
    fn inseparability_examples() {
        let k = BaseField::RationalFunctions(2);
        let prof = insep_profile(&ClosedPoint::finite(parse_poly("t^2 + l", k).unwrap()).unwrap()).unwrap();
        assert_eq!((prof.eps, prof.s), (2, 1));
        let prof = insep_profile(&ClosedPoint::finite(Poly::x(k)).unwrap()).unwrap();
        assert_eq!((prof.eps, prof.s), (1, 1));
        let prof = insep_profile(&ClosedPoint::finite(parse_poly("t^4 + l*t^2 + l", k).unwrap()).unwrap()).unwrap();
        assert_eq!((prof.eps, prof.s), (2, 2));
        assert_eq!(prof.q_tilde, parse_poly("t^2 + l*t + l", k).unwrap());
        assert!(insep_profile(&ClosedPoint::Infinity).is_none());
    }
}
