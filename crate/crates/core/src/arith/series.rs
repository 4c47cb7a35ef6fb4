//! Power series in `T` truncated at a fixed order, with coefficients in `k(ζ)`.

use super::field::{BaseField, Fe};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::{Error, Result};

/// `Σ_{i<order} c_i T^i`. Nothing at index `order` or above is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<RatFunc>,
}

impl TruncatedSeries {
    pub fn zero(field: BaseField, order: usize) -> Self {
        assert!(order > 0, "truncation order must be positive");
        TruncatedSeries { order, coeffs: vec![RatFunc::zero(field); order] }
    }

    pub fn from_coeffs(field: BaseField, order: usize, coeffs: Vec<RatFunc>) -> Self {
        let mut s = TruncatedSeries::zero(field, order);
        for (i, c) in coeffs.into_iter().enumerate().take(order) {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    fn field(&self) -> BaseField {
        self.coeffs[0].field()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { order: self.order, coeffs }
    }

    /// Truncated product; zero coefficients are skipped so sparse factors are cheap.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        let mut out = TruncatedSeries::zero(self.field(), self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(self.order - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inv().map_err(|_| Error::DivisionByZero)?;
        let mut out = TruncatedSeries::zero(self.field(), self.order);
        out.coeffs[0] = c0inv.clone();
        for i in 1..self.order {
            let mut acc = RatFunc::zero(self.field());
            for k in 1..=i {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &out.coeffs[i - k]);
            }
            out.coeffs[i] = &(-&acc) * &c0inv;
        }
        Ok(out)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// `h(ζ + Σ c_j T^{e_j})` truncated at `order`, for a polynomial `h` in `ζ`
    /// and constant shift coefficients. Uses divided derivatives, so it is
    /// valid in every characteristic.
    pub fn taylor_substitute(h: &Poly, shift: &[(usize, Fe)], order: usize) -> Self {
        let field = h.field();
        if h.is_zero() {
            return TruncatedSeries::zero(field, order);
        }
        let mut acc: Vec<Poly> = vec![Poly::zero(field); order];
        // powers of the shift series, constant coefficients
        let mut power: Vec<Fe> = vec![field.zero(); order];
        power[0] = field.one();
        let deg = h.degree().unwrap();
        for k in 0..=deg {
            if power.iter().all(Fe::is_zero) {
                break;
            }
            let hk = h.hasse_derivative(k);
            if !hk.is_zero() {
                for (i, c) in power.iter().enumerate() {
                    if !c.is_zero() {
                        acc[i] = &acc[i] + &hk.scale(c);
                    }
                }
            }
            let mut next = vec![field.zero(); order];
            for (i, c) in power.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (e, s) in shift {
                    if i + e < order {
                        next[i + e] = &next[i + e] + &(c * s);
                    }
                }
            }
            power = next;
        }
        TruncatedSeries { order, coeffs: acc.into_iter().map(RatFunc::from_poly).collect() }
    }
}
