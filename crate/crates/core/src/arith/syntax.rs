//! Text syntax for field elements, polynomials and rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := integer | 't' | 'l' | '(' expr ')'
//! ```
//!
//! `l` denotes `λ` and is only valid over `F_p(λ)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{BaseField, Fe};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: BaseField,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { column: column + 1, message: message.into() }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.checked_div(&d).map_err(|_| syntax(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e: i64 = self.integer()?.try_into().map_err(|_| syntax(at, "exponent too large"))?;
        base.pow(if neg { -e } else { e }).map_err(|_| syntax(at, "zero raised to a negative power"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::from_poly(Poly::x(self.field)))
            }
            Some(b'l') => {
                self.pos += 1;
                let l = self
                    .field
                    .lambda()
                    .ok_or_else(|| syntax(at, format!("'l' is not an element of {}", self.field)))?;
                Ok(RatFunc::constant(l))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(self.field.from_bigint(&n)))
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses a rational function in `t` over `field`.
pub fn parse_ratfunc(src: &str, field: BaseField) -> Result<RatFunc> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "trailing input"));
    }
    Ok(out)
}

pub fn parse_poly(src: &str, field: BaseField) -> Result<Poly> {
    let r = parse_ratfunc(src, field)?;
    r.as_polynomial()
        .cloned()
        .ok_or_else(|| syntax(0, format!("'{src}' is not a polynomial")))
}

pub fn parse_field_elem(src: &str, field: BaseField) -> Result<Fe> {
    let r = parse_ratfunc(src, field)?;
    r.as_constant().ok_or_else(|| syntax(0, format!("'{src}' is not a constant")))
}

/// Exact rational `a`, `-a`, or `a/b`.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    let s = src.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let bad = |m: &str| syntax(0, format!("{m} in rational '{src}'"));
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points_and_coefficients() {
        let k = BaseField::RationalFunctions(2);
        let q = parse_poly("t^2 + l", k).unwrap();
        assert_eq!(q.to_string(), "t^2 + l");
        let f = parse_ratfunc("t^2*(t-1)^-1", BaseField::Rationals).unwrap();
        assert_eq!(f.to_string(), "t^2/(t - 1)");
        let half = parse_field_elem("1/2", BaseField::Rationals).unwrap();
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn reports_errors() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_ratfunc("t +", BaseField::Rationals).is_err());
        assert!(parse_ratfunc("l", BaseField::Prime(2)).is_err());
        assert!(parse_ratfunc("1/(t-t)", BaseField::Rationals).is_err());
        match parse_ratfunc("t $ 1", BaseField::Rationals) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        // 1/2 does not exist in characteristic 2
        assert!(parse_field_elem("1/2", BaseField::Prime(2)).is_err());
    }

    #[test]
    fn display_reparses() {
        let k = BaseField::RationalFunctions(3);
        for s in ["(l + 1)/l*t^3 - t + 2", "t^2/(t + l)", "l^2/(l + 2)"] {
            let f = parse_ratfunc(s, k).unwrap();
            assert_eq!(parse_ratfunc(&f.to_string(), k).unwrap(), f, "{s} -> {f}");
        }
    }
}
