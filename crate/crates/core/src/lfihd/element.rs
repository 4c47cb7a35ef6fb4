//! Finite sums of homogeneous elements `f χ^m` with `f ∈ k(t)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{BaseField, Fe, RatFunc};
use crate::polyhedral::LatticeVec;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    field: BaseField,
    rank: usize,
    terms: BTreeMap<LatticeVec, RatFunc>,
}

impl GradedElement {
    pub fn zero(field: BaseField, rank: usize) -> Self {
        GradedElement { field, rank, terms: BTreeMap::new() }
    }

    pub fn monomial(m: LatticeVec, f: RatFunc) -> Self {
        let mut x = GradedElement::zero(f.field(), m.len());
        x.add_term(m, f);
        x
    }

    pub fn from_terms(field: BaseField, rank: usize, terms: impl IntoIterator<Item = (LatticeVec, RatFunc)>) -> Result<Self> {
        let mut x = GradedElement::zero(field, rank);
        for (m, f) in terms {
            if m.len() != rank {
                return Err(Error::Dimension { expected: rank, found: m.len() });
            }
            if f.field() != field {
                return Err(Error::FieldMismatch(format!("{f} is not over {field}")));
            }
            x.add_term(m, f);
        }
        Ok(x)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVec, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, m: &[i64]) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(|| RatFunc::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }

    pub(crate) fn add_term(&mut self, m: LatticeVec, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (m, f) in &o.terms {
            x.add_term(m.clone(), f.clone());
        }
        x
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, f)| (m.clone(), -f)).collect();
        GradedElement { field: self.field, rank: self.rank, terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut x = GradedElement::zero(self.field, self.rank);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                let m = a.iter().zip(b).map(|(u, v)| u + v).collect();
                x.add_term(m, f * g);
            }
        }
        x
    }

    pub fn scale(&self, c: &Fe) -> Self {
        let mut x = GradedElement::zero(self.field, self.rank);
        for (m, f) in &self.terms {
            x.add_term(m.clone(), f.scale(c));
        }
        x
    }

    /// The homogeneous summands.
    pub fn homogeneous_parts(&self) -> Vec<GradedElement> {
        self.terms.iter().map(|(m, f)| GradedElement::monomial(m.clone(), f.clone())).collect()
    }
}

fn fmt_weight(m: &[i64]) -> String {
    if m.len() == 1 {
        m[0].to_string()
    } else {
        format!("({})", m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("({c})*chi^{}", fmt_weight(m))).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::syntax::parse_ratfunc;

    #[test]
    fn arithmetic() {
        let k = BaseField::Prime(2);
        let r = |s: &str| parse_ratfunc(s, k).unwrap();
        let x = GradedElement::monomial(vec![1, 0], r("t"));
        let y = GradedElement::monomial(vec![0, 1], r("1/(t+1)"));
        let xy = x.mul(&y);
        assert_eq!(xy.terms().len(), 1);
        assert_eq!(xy.coeff(&[1, 1]), r("t/(t+1)"));
        assert!(x.add(&x).is_zero());
        assert_eq!(x.add(&y).sub(&y), x);
        assert_eq!(x.to_string(), "(t)*chi^(1,0)");
    }
}
