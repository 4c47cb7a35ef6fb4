//! Polyhedral divisors on the line, evaluation and graded pieces.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{BaseField, FactoredRatFunc, RatFunc};
use crate::curve::{h0_generators, point_validate, Certificate, ClosedPoint, Curve, H0Module, Policy, QDivisor};
use crate::polyhedral::linalg::to_rat;
use crate::polyhedral::{polyhedron_min, Cone, LatticeVec, Polyhedron, MAX_RANK};
use crate::{Error, Result};

/// `D = Σ D_y · [y]` with polyhedral coefficients of common tail `σ`.
///
/// Points off the support implicitly carry `σ`. Structural conditions are
/// checked by [`pdiv_validate`], not on construction, so that a report can
/// list every violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    field: BaseField,
    curve: Curve,
    tail: Cone,
    support: BTreeMap<ClosedPoint, Polyhedron>,
    certificates: BTreeMap<ClosedPoint, Certificate>,
}

impl PolyhedralDivisor {
    /// Builds a divisor, validating every finite support point under `policy`.
    pub fn new(
        field: BaseField,
        curve: Curve,
        tail: Cone,
        support: impl IntoIterator<Item = (ClosedPoint, Polyhedron)>,
        policy: Policy,
    ) -> Result<Self> {
        if tail.dim() > MAX_RANK {
            return Err(Error::RankTooLarge(tail.dim()));
        }
        let mut map = BTreeMap::new();
        let mut certificates = BTreeMap::new();
        for (y, p) in support {
            if p.dim() != tail.dim() {
                return Err(Error::Dimension { expected: tail.dim(), found: p.dim() });
            }
            let cert = match &y {
                ClosedPoint::Infinity if curve == Curve::A1 => {
                    return Err(Error::InvalidPoint("the point at infinity does not lie on A1".into()));
                }
                ClosedPoint::Infinity => Certificate::Rational,
                ClosedPoint::Finite(q) => {
                    if q.field() != field {
                        return Err(Error::FieldMismatch(format!("point {q} is not over {field}")));
                    }
                    point_validate(q, policy)?.1
                }
            };
            if map.insert(y.clone(), p).is_some() {
                return Err(Error::InvalidDivisor(format!("point {y} listed twice")));
            }
            certificates.insert(y, cert);
        }
        Ok(PolyhedralDivisor { field, curve, tail, support: map, certificates })
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn rank(&self) -> usize {
        self.tail.dim()
    }

    pub fn support(&self) -> &BTreeMap<ClosedPoint, Polyhedron> {
        &self.support
    }

    pub fn certificates(&self) -> &BTreeMap<ClosedPoint, Certificate> {
        &self.certificates
    }

    /// Descriptions of the points accepted without proof.
    pub fn trust_markers(&self) -> Vec<String> {
        self.certificates
            .values()
            .filter_map(|c| match c {
                Certificate::Trusted(s) => Some(s.clone()),
                _ => None,
            })
            .collect()
    }

    /// `D_y`, which is `σ` off the support.
    pub fn polyhedron_at(&self, y: &ClosedPoint) -> Polyhedron {
        self.support.get(y).cloned().unwrap_or_else(|| {
            Polyhedron::point(vec![num_rational::BigRational::zero(); self.rank()], self.tail.clone())
                .expect("tail is pointed")
        })
    }

    /// `σ^∨`.
    pub fn weight_cone(&self) -> Cone {
        self.tail.dual()
    }

    /// The same divisor over another field; point coefficients must be rational.
    pub fn with_field(&self, field: BaseField) -> Result<Self> {
        let support = self
            .support
            .iter()
            .map(|(y, p)| {
                let y = match y {
                    ClosedPoint::Infinity => ClosedPoint::Infinity,
                    ClosedPoint::Finite(q) => {
                        let cs = q.coeffs().iter().map(|c| {
                            let r = c.as_rational().ok_or_else(|| {
                                Error::FieldMismatch(format!("cannot move {q} to {field}"))
                            })?;
                            field.from_rational(r)
                        });
                        ClosedPoint::finite(crate::arith::Poly::from_coeffs(field, cs.collect::<Result<_>>()?))?
                    }
                };
                Ok((y, p.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyhedralDivisor::new(field, self.curve, self.tail.clone(), support, Policy::Trusted)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub trust: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks tail equality, pointedness of `σ` and, on `P1`, `deg D ⊊ σ`.
pub fn pdiv_validate(d: &PolyhedralDivisor) -> ValidationReport {
    let mut report = ValidationReport { trust: d.trust_markers(), ..Default::default() };
    if !d.tail.is_pointed() {
        report.violations.push(format!("tail cone {} is not pointed", d.tail));
    }
    for (y, p) in &d.support {
        if p.tail() != &d.tail {
            report.violations.push(format!("D at {y} has tail {} instead of {}", p.tail(), d.tail));
        }
    }
    if d.curve == Curve::P1 && report.violations.is_empty() {
        match deg_polyhedron(d, None) {
            Ok(deg) => {
                let zero = vec![num_rational::BigRational::zero(); d.rank()];
                if !deg.vertices().iter().all(|v| d.tail.contains(v)) {
                    report.violations.push(format!("deg D = {deg} is not contained in the tail cone"));
                } else if deg.contains(&zero) {
                    report.violations.push(format!("deg D = {deg} is not a proper subset of the tail cone"));
                }
            }
            Err(e) => report.violations.push(e.to_string()),
        }
    }
    report
}

/// `Σ [κ_y:k] D_y` over the support, skipping `skip`.
pub(crate) fn deg_polyhedron(d: &PolyhedralDivisor, skip: Option<&ClosedPoint>) -> Result<Polyhedron> {
    let origin = Polyhedron::point(vec![num_rational::BigRational::zero(); d.rank()], d.tail.clone())?;
    let mut terms: Vec<(u64, &Polyhedron)> = vec![(1, &origin)];
    for (y, p) in &d.support {
        if Some(y) != skip {
            terms.push((y.residue_degree(), p));
        }
    }
    crate::polyhedral::minkowski_weighted_sum(&terms)
}

/// `D(m) = Σ min_{v∈D_y} ⟨m, v⟩ [y]`.
pub fn pdiv_eval(d: &PolyhedralDivisor, m: &[i64]) -> Result<QDivisor> {
    if m.len() != d.rank() {
        return Err(Error::Dimension { expected: d.rank(), found: m.len() });
    }
    if !d.tail.dual().contains_int(m) {
        return Err(Error::OutsideWeightCone(format!("{m:?}")));
    }
    let mq = to_rat(m);
    let mut out = QDivisor::zero();
    for (y, p) in &d.support {
        let v = polyhedron_min(p, &mq).ok_or_else(|| Error::OutsideWeightCone(format!("{m:?}")))?;
        out.add_term(y.clone(), v);
    }
    Ok(out)
}

/// `A_m = H⁰(C, O(⌊D(m)⌋)) χ^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub weight: LatticeVec,
    pub module: H0Module,
}

impl GradedPiece {
    /// `f_m`, the generator (A1) or lowest basis element (P1).
    pub fn generator(&self) -> &FactoredRatFunc {
        self.module.generator()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.module, H0Module::Basis { dim: 0, .. })
    }
}

pub fn graded_piece(d: &PolyhedralDivisor, m: &[i64]) -> Result<GradedPiece> {
    let e = pdiv_eval(d, m)?;
    Ok(GradedPiece { weight: m.to_vec(), module: h0_generators(&e, d.curve, d.field)? })
}

/// Whether `f χ^m` lies in `A`.
pub fn membership(d: &PolyhedralDivisor, f: &RatFunc, m: &[i64]) -> Result<bool> {
    Ok(graded_piece(d, m)?.module.contains(f))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::arith::syntax::parse_ratfunc;
    use crate::polyhedral::linalg::qf;

    #[test]
    fn validation() {
        let report = pdiv_validate(&example_one(Curve::A1));
        assert!(report.is_valid());
        assert_eq!(report.trust.len(), 1);
        assert!(!pdiv_validate(&example_one(Curve::P1)).is_valid());
        assert!(pdiv_validate(&example_two(BaseField::Prime(2))).is_valid());
    }

    #[test]
    fn evaluation() {
        let d = example_one(Curve::A1);
        let t = ClosedPoint::finite(crate::arith::Poly::x(d.field())).unwrap();
        let e = pdiv_eval(&d, &[1]).unwrap();
        assert_eq!(e, QDivisor::from_terms([(t.clone(), qf(1, 5))]));
        let e = pdiv_eval(&d, &[-5]).unwrap();
        assert_eq!(e.to_string(), "-[t] - [t^2 + l]");
        assert!(pdiv_eval(&d, &[0]).unwrap().is_zero());
        let d2 = example_two(BaseField::Prime(2));
        assert!(matches!(pdiv_eval(&d2, &[-1, 0]), Err(Error::OutsideWeightCone(_))));
    }

    #[test]
    fn graded_pieces() {
        let d = example_one(Curve::A1);
        let k = d.field();
        assert_eq!(graded_piece(&d, &[-5]).unwrap().generator().expand(), parse_ratfunc("t*(t^2 + l)", k).unwrap());
        assert!(graded_piece(&d, &[3]).unwrap().generator().expand().is_one());
        let d2 = example_two(BaseField::Prime(2));
        let k2 = d2.field();
        // (1,1) lies in the region m2 ≥ m1/2 where D(m) = (m1/2)([0] + [1])
        assert!(graded_piece(&d2, &[1, 1]).unwrap().generator().expand().is_one());
        assert_eq!(
            graded_piece(&d2, &[2, 1]).unwrap().generator().expand(),
            parse_ratfunc("1/(t*(t-1))", k2).unwrap()
        );
        assert_eq!(graded_piece(&d2, &[3, 1]).unwrap().generator().expand(), parse_ratfunc("1/(t*(t-1))", k2).unwrap());
        assert_eq!(graded_piece(&d2, &[4, 1]).unwrap().generator().expand(), parse_ratfunc("1/(t^2*(t-1))", k2).unwrap());
    }

    #[test]
    fn membership_examples() {
        let d = example_one(Curve::A1);
        let t = parse_ratfunc("t", d.field()).unwrap();
        assert!(membership(&d, &t, &[3]).unwrap());
        let d2 = example_two(BaseField::Rationals);
        let tinv = parse_ratfunc("1/t", d2.field()).unwrap();
        assert!(!membership(&d2, &tinv, &[1, 1]).unwrap());
        let f = graded_piece(&d, &[-5]).unwrap().generator().expand();
        assert!(membership(&d, &f, &[-5]).unwrap());
    }
}
