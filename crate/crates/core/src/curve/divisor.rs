//! Q-divisors on the line and their spaces of global sections.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::point::{point_validate, ClosedPoint, Curve, Policy};
use crate::arith::syntax::format_rational;
use crate::arith::{BaseField, FactoredRatFunc, Poly, RatFunc};
use crate::{Error, Result};

type Q = BigRational;

/// `Σ a_y [y]` with finitely many nonzero rational `a_y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QDivisor {
    coeffs: BTreeMap<ClosedPoint, Q>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, Q)>) -> Self {
        let mut d = QDivisor::zero();
        for (y, a) in terms {
            d.add_term(y, a);
        }
        d
    }

    pub fn add_term(&mut self, y: ClosedPoint, a: Q) {
        let e = self.coeffs.entry(y).or_insert_with(Q::zero);
        *e += a;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, y: &ClosedPoint) -> Q {
        self.coeffs.get(y).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClosedPoint, &Q)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (y, a) in &o.coeffs {
            d.add_term(y.clone(), a.clone());
        }
        d
    }

    pub fn scale(&self, c: &Q) -> QDivisor {
        QDivisor::from_terms(self.coeffs.iter().map(|(y, a)| (y.clone(), a * c)))
    }

    pub fn neg(&self) -> QDivisor {
        self.scale(&-Q::from_integer(1.into()))
    }

    pub fn floor(&self) -> QDivisor {
        QDivisor::from_terms(self.coeffs.iter().map(|(y, a)| (y.clone(), a.floor())))
    }

    /// `Σ a_y [κ_y : k]`.
    pub fn degree(&self) -> Q {
        self.coeffs
            .iter()
            .fold(Q::zero(), |acc, (y, a)| acc + a * BigInt::from(y.residue_degree()))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|a| !a.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Q::is_integer)
    }

    /// The part supported at finite points.
    pub fn finite_part(&self) -> QDivisor {
        QDivisor::from_terms(self.coeffs.iter().filter(|(y, _)| !y.is_infinity()).map(|(y, a)| (y.clone(), a.clone())))
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (y, a)) in self.coeffs.iter().enumerate() {
            let sign = if a.is_negative() { "-" } else { "+" };
            if i == 0 {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = a.abs();
            if abs != Q::from_integer(1.into()) {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "[{y}]")?;
        }
        Ok(())
    }
}

/// `div f`; on `P1` the point at infinity receives `-deg f`.
///
/// Every factor is validated as a closed point (trusted policy).
pub fn principal_divisor(f: &FactoredRatFunc, curve: Curve) -> Result<QDivisor> {
    let mut d = QDivisor::zero();
    for (q, e) in f.factors() {
        let (y, _) = point_validate(q, Policy::Trusted)?;
        d.add_term(y, Q::from_integer((*e).into()));
    }
    if curve == Curve::P1 {
        d.add_term(ClosedPoint::Infinity, Q::from_integer((-f.degree()).into()));
    }
    Ok(d)
}

/// Pointwise floor together with the degree of the original divisor.
pub fn divisor_floor_deg(e: &QDivisor) -> (QDivisor, Q) {
    (e.floor(), e.degree())
}

/// `H⁰(C, O(⌊E⌋))` as a subspace of `k(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H0Module {
    /// On `A1`: the free `k[t]`-module `g·k[t]`.
    Free { generator: FactoredRatFunc },
    /// On `P1`: the `k`-basis `g·t^j`, `0 ≤ j ≤ deg ⌊E⌋`; empty when that is negative.
    Basis { generator: FactoredRatFunc, dim: u64 },
}

impl H0Module {
    pub fn generator(&self) -> &FactoredRatFunc {
        match self {
            H0Module::Free { generator } | H0Module::Basis { generator, .. } => generator,
        }
    }

    pub fn basis(&self) -> Option<Vec<FactoredRatFunc>> {
        match self {
            H0Module::Free { .. } => None,
            H0Module::Basis { generator, dim } => {
                let t = Poly::x(generator.field());
                Some(
                    (0..*dim)
                        .map(|j| generator.mul(&FactoredRatFunc::power_of(t.clone(), j as i64).unwrap()))
                        .collect(),
                )
            }
        }
    }

    /// Membership of a rational function.
    pub fn contains(&self, f: &RatFunc) -> bool {
        if f.is_zero() {
            return true;
        }
        let h = f * &self.generator().expand().inv().expect("generator is nonzero");
        let Some(poly) = h.as_polynomial() else {
            return false;
        };
        match self {
            H0Module::Free { .. } => true,
            H0Module::Basis { dim, .. } => (poly.degree().unwrap() as u64) < *dim,
        }
    }
}

/// Generators of `{f : div f + ⌊E⌋ ≥ 0}` (the points of `E` must be over `field`).
pub fn h0_generators(e: &QDivisor, curve: Curve, field: BaseField) -> Result<H0Module> {
    let fl = e.floor();
    let mut factors = Vec::new();
    for (y, a) in fl.terms() {
        match y {
            ClosedPoint::Finite(q) => {
                if q.field() != field {
                    return Err(Error::FieldMismatch(format!("point {q} is not over {field}")));
                }
                factors.push((q.clone(), -a.to_integer().to_i64().expect("coefficient overflow")));
            }
            ClosedPoint::Infinity if curve == Curve::A1 => {
                return Err(Error::InvalidDivisor("the point at infinity does not lie on A1".into()));
            }
            ClosedPoint::Infinity => {}
        }
    }
    let generator = FactoredRatFunc::new(field.one(), factors)?;
    Ok(match curve {
        Curve::A1 => H0Module::Free { generator },
        Curve::P1 => {
            let deg = fl.degree().to_integer().to_i64().expect("degree overflow");
            H0Module::Basis { generator, dim: (deg + 1).max(0) as u64 }
        }
    })
}
