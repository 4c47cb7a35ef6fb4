//! Rational functions kept as products of monic factors.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{BaseField, Fe};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRatFunc {
    unit: Fe,
    /// Sorted by the polynomial order, exponents nonzero.
    factors: Vec<(Poly, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrfOp {
    Mul,
    Div,
}

impl FactoredRatFunc {
    pub fn one(field: BaseField) -> Self {
        FactoredRatFunc { unit: field.one(), factors: Vec::new() }
    }

    pub fn unit(c: Fe) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FactoredRatFunc { unit: c, factors: Vec::new() })
    }

    /// `unit · Π q^e`. Every `q` must be monic of degree ≥ 1; repeated
    /// factors are merged.
    pub fn new(unit: Fe, factors: impl IntoIterator<Item = (Poly, i64)>) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut map: BTreeMap<Poly, i64> = BTreeMap::new();
        for (q, e) in factors {
            if !q.is_monic() || q.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidPoint(format!("factor {q} must be monic of positive degree")));
            }
            *map.entry(q).or_insert(0) += e;
        }
        Ok(FactoredRatFunc { unit, factors: map.into_iter().filter(|(_, e)| *e != 0).collect() })
    }

    pub fn power_of(q: Poly, e: i64) -> Result<Self> {
        let field = q.field();
        FactoredRatFunc::new(field.one(), [(q, e)])
    }

    pub fn field(&self) -> BaseField {
        self.unit.field()
    }

    pub fn unit_part(&self) -> &Fe {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, i64)] {
        &self.factors
    }

    pub fn exponent_of(&self, q: &Poly) -> i64 {
        self.factors.iter().find(|(p, _)| p == q).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let unit = &self.unit * &o.unit;
        let all = self.factors.iter().chain(o.factors.iter()).cloned();
        FactoredRatFunc::new(unit, all).expect("factors already canonical")
    }

    pub fn inv(&self) -> Self {
        FactoredRatFunc {
            unit: self.unit.inv().unwrap(),
            factors: self.factors.iter().map(|(q, e)| (q.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return FactoredRatFunc::one(self.field());
        }
        FactoredRatFunc {
            unit: self.unit.pow(k).unwrap(),
            factors: self.factors.iter().map(|(q, e)| (q.clone(), e * k)).collect(),
        }
    }

    /// Drops the unit, i.e. normalizes to leading coefficient 1.
    pub fn normalized(&self) -> Self {
        FactoredRatFunc { unit: self.field().one(), factors: self.factors.clone() }
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e > 0)
    }

    /// `Σ e · deg q`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(q, e)| e * q.degree().unwrap() as i64).sum()
    }

    pub fn expand(&self) -> RatFunc {
        let field = self.field();
        let mut num = Poly::constant(self.unit.clone());
        let mut den = Poly::one(field);
        for (q, e) in &self.factors {
            if *e > 0 {
                num = &num * &q.pow(*e as u64);
            } else {
                den = &den * &q.pow(e.unsigned_abs());
            }
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

/// Multiplies or divides two factored functions without refactoring.
pub fn frf_arith(a: &FactoredRatFunc, b: &FactoredRatFunc, op: FrfOp) -> FactoredRatFunc {
    match op {
        FrfOp::Mul => a.mul(b),
        FrfOp::Div => a.div(b),
    }
}

impl fmt::Display for FactoredRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            if self.unit.is_compound() || self.unit.is_negative_rational() {
                parts.push(format!("({})", self.unit));
            } else {
                parts.push(self.unit.to_string());
            }
        }
        for (q, e) in &self.factors {
            let base = if q.weight() > 1 { format!("({q})") } else { q.to_string() };
            if *e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        f.write_str(&parts.join("*"))
    }
}
