//! Dense univariate polynomials over a [`BaseField`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::binom::binom_in_field;
use super::field::{BaseField, Fe};

/// Polynomial in a single variable (`t` or `ζ`), ascending coefficients.
/// The leading coefficient is never zero; the zero polynomial has no
/// coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: BaseField,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero(field: BaseField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: BaseField) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: Fe) -> Self {
        let field = c.field();
        Poly::from_coeffs(field, vec![c])
    }

    /// The variable itself.
    pub fn x(field: BaseField) -> Self {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(c: Fe, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(field, coeffs)
    }

    /// `x - c`.
    pub fn linear(c: &Fe) -> Self {
        let field = c.field();
        Poly::from_coeffs(field, vec![-c, field.one()])
    }

    pub fn from_coeffs(field: BaseField, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: BaseField, cs: &[i64]) -> Self {
        Poly::from_coeffs(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    /// Exact division by `x^k`; `None` if some low coefficient is nonzero.
    pub fn unshift(&self, k: usize) -> Option<Poly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly { field: self.field, coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, y) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * y);
            }
            quot[k] = c;
        }
        (Poly::from_coeffs(self.field, quot), Poly::from_coeffs(self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Divided (Hasse) derivative `D^{[k]}`: `x^j ↦ C(j,k) x^{j-k}`.
    pub fn hasse_derivative(&self, k: usize) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(j, c)| &binom_in_field(j as i64, k as u64, self.field) * c)
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitution `x ↦ other`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &Fe) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        self.compose(&Poly::from_coeffs(self.field, vec![c.clone(), self.field.one()]))
    }

    /// `p(x^d)`.
    pub fn spread(&self, d: usize) -> Poly {
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        Poly { field: self.field, coeffs }
    }

    /// Inverse of [`Poly::spread`]: `Some(q)` with `q(x^d) = self`.
    pub fn unspread(&self, d: usize) -> Option<Poly> {
        if d == 1 {
            return Some(self.clone());
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % d == 0 {
                coeffs.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::from_coeffs(self.field, coeffs))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative_rational() { (true, -c) } else { (false, c.clone()) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                if mag.is_compound() && matches!(mag, Fe::Lam(_)) {
                    out.push_str(&format!("({mag})"));
                } else {
                    out.push_str(&mag.to_string());
                }
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag.is_compound() {
                out.push_str(&format!("({mag})*{mono}"));
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

/// Degree first, then coefficients from the top.
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> Poly {
        Poly::from_i64s(BaseField::Rationals, cs)
    }

    #[test]
    fn divrem_and_gcd() {
        let a = q(&[-1, 0, 1]); // t^2 - 1
        let b = q(&[1, 1]);
        let (quot, r) = a.divrem(&b);
        assert_eq!(quot, q(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&q(&[-2, 2])), q(&[-1, 1]));
        assert!(q(&[]).degree().is_none());
    }

    #[test]
    fn hasse_derivative_in_char_two() {
        let f2 = BaseField::Prime(2);
        // D^{[2]} t^3 = C(3,2) t = t, although the ordinary second derivative vanishes.
        let p = Poly::monomial(f2.one(), 3);
        assert_eq!(p.hasse_derivative(2), Poly::x(f2));
        assert!(p.derivative().derivative().is_zero());
    }

    #[test]
    fn spread_and_shift() {
        let p = q(&[1, 2]);
        assert_eq!(p.spread(3), q(&[1, 0, 0, 2]));
        assert_eq!(p.spread(3).unspread(3), Some(p.clone()));
        assert_eq!(q(&[0, 1, 1]).unspread(2), None);
        assert_eq!(q(&[0, 0, 1]).taylor_shift(&BaseField::Rationals.from_i64(1)), q(&[1, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-1, 0, 1]).to_string(), "t^2 - 1");
        let k = BaseField::RationalFunctions(2);
        let p = Poly::from_coeffs(k, vec![k.lambda().unwrap(), k.zero(), k.one()]);
        assert_eq!(p.to_string(), "t^2 + l");
    }
}
