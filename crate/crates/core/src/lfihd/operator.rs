//! The operator `∂_θ` attached to a coherent family.
//!
//! For a term `f χ^m` put `H(ζ) = f(ζ^d + y0) ξ_m(ζ^d + y0)^{-1} ζ^{d⟨m,v_{y0}⟩}`
//! and expand `H(ζ + Σ λ_i T^{p^{s_i}}) = Σ_i c_i(ζ) T^i`. Then
//! `∂^{(i)}(f χ^m) = ξ_{m+ie} · (ζ^{-d⟨m+ie,v_{y0}⟩} c_i)|_{ζ^d = t − y0} · χ^{m+ie}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::element::GradedElement;
use crate::arith::{BaseField, FactoredRatFunc, Fe, Poly, RatFunc, TruncatedSeries};
use crate::classifier::{associated_cones, coherent_validate, AssociatedCones, CoherentFamily};
use crate::curve::{ClosedPoint, Curve};
use crate::polyhedral::linalg::{dot, to_rat};
use crate::polyhedral::{LatticeVec, RatVec};
use crate::{Error, Result};

/// A sequence of operators `∂^{(i)}` on graded elements.
pub trait Lfihd {
    fn field(&self) -> BaseField;
    /// The degree `e`: `∂^{(i)}` raises weights by `i·e`.
    fn degree(&self) -> &[i64];
    /// `[∂^{(0)}x, …, ∂^{(order)}x]`.
    fn apply_upto(&self, x: &GradedElement, order: usize) -> Result<Vec<GradedElement>>;
    /// An order beyond which `∂^{(i)}x` vanishes, when one is known a priori.
    fn nilpotency_bound(&self, x: &GradedElement) -> Option<usize>;
}

/// Values of `∂^{(i)}x` for `i ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApplicationResult {
    pub values: Vec<(usize, GradedElement)>,
    /// True when `order` reaches the nilpotency bound, so every omitted order is zero.
    pub exact: bool,
}

pub fn apply_order(op: &dyn Lfihd, x: &GradedElement, order: usize) -> Result<ApplicationResult> {
    let values = op.apply_upto(x, order)?.into_iter().enumerate().collect();
    let exact = op.nilpotency_bound(x).is_some_and(|b| b <= order);
    Ok(ApplicationResult { values, exact })
}

#[derive(Clone, Debug)]
pub struct DthetaOperator {
    theta: CoherentFamily,
    cones: AssociatedCones,
    coherent: bool,
    y0: Fe,
    v0: RatVec,
    /// `(q_y, v_y)` for support points `y ∈ C' ∖ {y0}`.
    xi: Vec<(Poly, LatticeVec)>,
    /// `(p^{s_i}, λ_i)`.
    shift: Vec<(usize, Fe)>,
}

const MAX_SHIFT: u64 = 1 << 16;

/// Builds `∂_θ`. Incoherent families are refused unless `allow_incoherent`.
pub fn build_operator(theta: &CoherentFamily, allow_incoherent: bool) -> Result<DthetaOperator> {
    let report = coherent_validate(theta);
    if let Some(v) = report.violations.first() {
        let hard = matches!(v.clause.as_str(), "coloring" | "e" | "s" | "lambda");
        if hard || !allow_incoherent {
            return Err(Error::Incoherent(format!("{} {}", v.clause, v.detail)));
        }
    }
    let c = &theta.coloring;
    if c.divisor.curve() == Curve::P1 && c.y_inf != Some(ClosedPoint::Infinity) {
        return Err(Error::Unsupported("the operator needs y_infinity = infinity on P1".into()));
    }
    let y0 = c.y0.rational_value().ok_or_else(|| Error::Unsupported("y0 must be a finite rational point".into()))?;
    let cones = associated_cones(c)?;
    let mut xi = Vec::new();
    for y in c.points_of_c_prime() {
        if y == c.y0 || !c.divisor.support().contains_key(&y) {
            continue;
        }
        let v = c.v(&y);
        let v: LatticeVec = v.iter().map(|x| x.to_integer().to_i64().expect("small vertex")).collect();
        if v.iter().any(|x| *x != 0) {
            xi.push((y.poly().expect("finite point").clone(), v));
        }
    }
    let p = theta.p();
    let mut shift = Vec::new();
    for (i, l) in theta.lambda.iter().enumerate() {
        let e = theta.p_power(i)?;
        let e = e.to_u64().filter(|e| *e <= MAX_SHIFT).ok_or_else(|| {
            Error::Unsupported(format!("p^s = {p}^{} is too large", theta.s[i]))
        })?;
        shift.push((e as usize, l.clone()));
    }
    Ok(DthetaOperator { theta: theta.clone(), cones, coherent: report.is_coherent(), y0, v0: c.v0(), xi, shift })
}

fn zeta_power(field: BaseField, a: i64) -> RatFunc {
    RatFunc::from_poly(Poly::x(field)).pow(a).expect("ζ is nonzero")
}

impl DthetaOperator {
    pub fn family(&self) -> &CoherentFamily {
        &self.theta
    }

    pub fn cones(&self) -> &AssociatedCones {
        &self.cones
    }

    pub fn d(&self) -> u64 {
        self.cones.d
    }

    pub fn is_coherent(&self) -> bool {
        self.coherent
    }

    /// `(p^{s_i}, λ_i)`, the substitution `ζ ↦ ζ + Σ λ_i T^{p^{s_i}}`.
    pub fn substitution(&self) -> &[(usize, Fe)] {
        &self.shift
    }

    /// `p^{s_r + u} · d`, the default window for horizontality.
    pub fn horizontality_bound(&self) -> usize {
        let p = self.theta.p() as usize;
        let s_r = *self.theta.s.last().expect("nonempty s") as u32;
        p.pow(s_r + self.cones.u) * self.cones.d as usize
    }

    /// `ξ_m = Π q_y^{-⟨m, v_y⟩}`.
    pub fn xi(&self, m: &[i64]) -> RatFunc {
        let field = self.field();
        let factors = self.xi.iter().map(|(q, v)| (q.clone(), -m.iter().zip(v).map(|(a, b)| a * b).sum::<i64>()));
        FactoredRatFunc::new(field.one(), factors).expect("monic irreducible factors").expand()
    }

    /// `d⟨m, v_{y0}⟩`, an integer.
    fn d_pairing(&self, m: &[i64]) -> i64 {
        let x = dot(&to_rat(m), &self.v0) * BigRational::from_integer(BigInt::from(self.cones.d));
        debug_assert!(x.is_integer());
        x.to_integer().to_i64().expect("small pairing")
    }

    /// `H(ζ)` for the term `f χ^m`.
    pub fn h_of(&self, m: &[i64], f: &RatFunc) -> Result<RatFunc> {
        let field = self.field();
        let d = self.cones.d as usize;
        let sub = &Poly::monomial(field.one(), d) + &Poly::constant(self.y0.clone());
        let g = f.checked_div(&self.xi(m))?.compose(&sub)?;
        Ok(&g * &zeta_power(field, self.d_pairing(m)))
    }

    fn descend(&self, r: &RatFunc) -> Result<RatFunc> {
        let d = self.cones.d as usize;
        let fail = || Error::Descent(format!("{r} (in zeta) is not a function of zeta^{d}"));
        let num = r.numer().unspread(d).ok_or_else(fail)?;
        let den = r.denom().unspread(d).ok_or_else(fail)?;
        let u = Poly::linear(&self.y0);
        RatFunc::new(num.compose(&u), den.compose(&u))
    }

    fn apply_term(&self, m: &[i64], f: &RatFunc, order: usize, out: &mut [GradedElement]) -> Result<()> {
        let field = self.field();
        let h = self.h_of(m, f)?;
        let n = order + 1;
        let top = TruncatedSeries::taylor_substitute(h.numer(), &self.shift, n);
        let series = if h.denom().is_constant() {
            top
        } else {
            top.div(&TruncatedSeries::taylor_substitute(h.denom(), &self.shift, n))?
        };
        let e = &self.theta.e;
        for (i, slot) in out.iter_mut().enumerate() {
            let c = series.coeff(i);
            if c.is_zero() {
                continue;
            }
            let w: LatticeVec = m.iter().zip(e).map(|(a, b)| a + b * i as i64).collect();
            let r = c * &zeta_power(field, -self.d_pairing(&w));
            let value = &self.descend(&r)? * &self.xi(&w);
            slot.add_term(w, value);
        }
        Ok(())
    }
}

impl Lfihd for DthetaOperator {
    fn field(&self) -> BaseField {
        self.theta.coloring.divisor.field()
    }

    fn degree(&self) -> &[i64] {
        &self.theta.e
    }

    fn apply_upto(&self, x: &GradedElement, order: usize) -> Result<Vec<GradedElement>> {
        let rank = self.theta.e.len();
        if x.rank() != rank {
            return Err(Error::Dimension { expected: rank, found: x.rank() });
        }
        if x.field() != self.field() {
            return Err(Error::FieldMismatch(format!("element over {}, operator over {}", x.field(), self.field())));
        }
        let mut out = vec![GradedElement::zero(self.field(), rank); order + 1];
        for (m, f) in x.terms() {
            self.apply_term(m, f, order, &mut out)?;
        }
        Ok(out)
    }

    /// `max deg_ζ H · p^{s_r}` when every `H` is a polynomial in `ζ`.
    fn nilpotency_bound(&self, x: &GradedElement) -> Option<usize> {
        let top = self.shift.iter().map(|(e, _)| *e).max()?;
        let mut bound = 0;
        for (m, f) in x.terms() {
            let h = self.h_of(m, f).ok()?;
            bound = bound.max(h.as_polynomial()?.degree().unwrap_or(0) * top);
        }
        Some(bound)
    }
}

/// `∂^{(i)}_e(f χ^m) = C(⟨m, μ_e⟩, i) f χ^{m+ie}` for a Demazure root `e` of a
/// cone with distinguished ray `μ_e`; coefficients are treated as scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricRootOperator {
    field: BaseField,
    e: LatticeVec,
    mu: LatticeVec,
}

pub fn toric_root_operator(cone: &crate::polyhedral::Cone, e: &[i64], field: BaseField) -> Result<ToricRootOperator> {
    let er = to_rat(e);
    let mu = cone
        .rays()
        .iter()
        .find(|r| dot(&to_rat(r), &er) == -BigRational::from_integer(1.into()))
        .ok_or_else(|| Error::NotARoot(format!("{e:?} pairs to -1 with no ray of {cone}")))?
        .clone();
    if !crate::classifier::demazure_root_check(cone, &mu, &er)? {
        return Err(Error::NotARoot(format!("{e:?} is not a Demazure root of {cone}")));
    }
    Ok(ToricRootOperator { field, e: e.to_vec(), mu })
}

impl ToricRootOperator {
    pub fn distinguished_ray(&self) -> &[i64] {
        &self.mu
    }

    fn pairing(&self, m: &[i64]) -> i64 {
        m.iter().zip(&self.mu).map(|(a, b)| a * b).sum()
    }
}

impl Lfihd for ToricRootOperator {
    fn field(&self) -> BaseField {
        self.field
    }

    fn degree(&self) -> &[i64] {
        &self.e
    }

    fn apply_upto(&self, x: &GradedElement, order: usize) -> Result<Vec<GradedElement>> {
        if x.rank() != self.e.len() {
            return Err(Error::Dimension { expected: self.e.len(), found: x.rank() });
        }
        let mut out = vec![GradedElement::zero(self.field, self.e.len()); order + 1];
        for (m, f) in x.terms() {
            let n = self.pairing(m);
            for (i, slot) in out.iter_mut().enumerate() {
                let c = crate::arith::binom_in_field(n, i as u64, self.field);
                if c.is_zero() {
                    continue;
                }
                let w = m.iter().zip(&self.e).map(|(a, b)| a + b * i as i64).collect();
                slot.add_term(w, f.scale(&c));
            }
        }
        Ok(out)
    }

    fn nilpotency_bound(&self, x: &GradedElement) -> Option<usize> {
        x.terms().keys().map(|m| usize::try_from(self.pairing(m)).ok()).try_fold(0, |acc, b| Some(acc.max(b?)))
    }
}
