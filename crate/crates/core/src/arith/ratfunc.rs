//! Reduced fractions of polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, Fe};
use super::poly::Poly;
use crate::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` and monic `den`; zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field();
        if num.is_zero() {
            return Ok(RatFunc::zero(field));
        }
        if den.is_constant() {
            let inv = den.leading().unwrap().inv().unwrap();
            return Ok(RatFunc { num: num.scale(&inv), den: Poly::one(field) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = den.leading().unwrap().inv().unwrap();
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn zero(field: BaseField) -> Self {
        RatFunc { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: BaseField) -> Self {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(c: Fe) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFunc { num: p, den: Poly::one(field) }
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Constant value when the function is constant.
    pub fn as_constant(&self) -> Option<Fe> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // numerator and denominator stay coprime under powers
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale(&self, c: &Fe) -> Self {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Order of vanishing at the irreducible `q` (positive for zeros).
    pub fn order_at(&self, q: &Poly) -> i64 {
        fn ord(p: &Poly, q: &Poly) -> i64 {
            let mut p = p.clone();
            let mut k = 0;
            while let Some(next) = p.exact_div(q) {
                p = next;
                k += 1;
            }
            k
        }
        if self.is_zero() {
            return i64::MAX;
        }
        ord(&self.num, q) - ord(&self.den, q)
    }

    /// `deg den - deg num`, the order at the point at infinity.
    pub fn order_at_infinity(&self) -> i64 {
        self.den.degree().unwrap() as i64 - self.num.degree().map_or(0, |d| d as i64)
    }

    /// Substitution of the variable by a polynomial.
    pub fn compose(&self, p: &Poly) -> Result<Self> {
        RatFunc::new(self.num.compose(p), self.den.compose(p))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let wrap = |p: &Poly| {
            let s = p.fmt_var(var);
            if p.weight() > 1 || s.contains('/') || s.contains('*') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.fmt_var(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(num, &self.den * &o.den).unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        if self.is_polynomial() && o.is_polynomial() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}
