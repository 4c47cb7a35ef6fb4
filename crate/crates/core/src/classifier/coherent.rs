//! Coherent families `θ = (D̃, e, s, λ)` and the two forms of their conditions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coloring::{associated_cones, coloring_validate, AssociatedCones, Coloring};
use super::roots::demazure_root_check;
use crate::arith::Fe;
use crate::curve::{insep_profile, ClosedPoint, Curve};
use crate::polyhedral::linalg::{add, dot, is_integral, to_rat};
use crate::polyhedral::polyhedron::fmt_ratvec;
use crate::polyhedral::{polyhedron_min, LatticeVec, RatVec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentFamily {
    pub coloring: Coloring,
    pub e: LatticeVec,
    pub s: Vec<u32>,
    pub lambda: Vec<Fe>,
}

impl CoherentFamily {
    pub fn p(&self) -> u64 {
        self.coloring.divisor.field().char_exponent()
    }

    /// `p^{s_i}`.
    pub fn p_power(&self, i: usize) -> Result<BigInt> {
        let p = BigInt::from(self.p());
        Ok(p.pow(self.s.get(i).copied().ok_or_else(|| Error::Incoherent("empty s".into()))?))
    }

    /// `p^{s_i} e` as a rational vector.
    pub fn scaled_e(&self, i: usize) -> Result<RatVec> {
        let k = BigRational::from_integer(self.p_power(i)?);
        Ok(to_rat(&self.e).iter().map(|x| x * &k).collect())
    }

    /// `ẽ_i = (p^{s_i}e, −1/d − ⟨p^{s_i}e, v_{y0}⟩)`.
    pub fn root_lift(&self, i: usize, d: u64) -> Result<RatVec> {
        let pe = self.scaled_e(i)?;
        let h = -BigRational::new(BigInt::one(), BigInt::from(d)) - dot(&pe, &self.coloring.v0());
        let mut out = pe;
        out.push(h);
        Ok(out)
    }
}

/// `ε_y`, the inseparability degree of `κ_y` (1 at rational points).
pub fn eps(y: &ClosedPoint) -> u64 {
    insep_profile(y).map_or(1, |p| p.eps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
    pub point: Option<ClosedPoint>,
    pub vertex: Option<RatVec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn clause_holds(&self, clause: &str) -> bool {
        !self.violations.iter().any(|v| v.clause == clause)
    }

    fn fail(&mut self, clause: &str, detail: String, point: Option<&ClosedPoint>, vertex: Option<&RatVec>) {
        self.violations.push(Violation {
            clause: clause.into(),
            detail,
            point: point.cloned(),
            vertex: vertex.cloned(),
        });
    }
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coherent_validate(theta: &CoherentFamily) -> CoherenceReport {
    let mut r = CoherenceReport::default();
    let c = &theta.coloring;
    let cr = coloring_validate(c);
    if let Some((clause, detail)) = cr.violations.first() {
        r.fail("coloring", format!("{clause} {detail}"), None, None);
        return r;
    }
    let field = c.divisor.field();
    let p = theta.p();
    if theta.e.len() != c.divisor.rank() {
        r.fail("e", format!("e has length {}, expected {}", theta.e.len(), c.divisor.rank()), None, None);
        return r;
    }
    if theta.s.is_empty() {
        r.fail("s", "s is empty".into(), None, None);
    } else if p == 1 && theta.s.len() != 1 {
        r.fail("s", "in characteristic zero s has a single entry".into(), None, None);
    } else if theta.s.windows(2).any(|w| w[0] >= w[1]) {
        r.fail("s", format!("s = {:?} is not strictly increasing", theta.s), None, None);
    }
    if p > 1 && theta.s.first() == Some(&0) {
        r.notes.push("s_1 = 0 accepted (nonnegative convention)".into());
    }
    if theta.lambda.len() != theta.s.len() {
        r.fail("lambda", format!("{} values of lambda for {} entries of s", theta.lambda.len(), theta.s.len()), None, None);
    }
    for l in &theta.lambda {
        if l.is_zero() || l.field() != field {
            r.fail("lambda", format!("lambda entry {l} must be a nonzero element of {field}"), None, None);
        }
    }
    if !r.is_coherent() {
        return r;
    }
    let a = match associated_cones(c) {
        Ok(a) => a,
        Err(e) => {
            r.fail("coloring", e.to_string(), None, None);
            return r;
        }
    };

    for i in 0..theta.s.len() {
        let lift = match theta.root_lift(i, a.d) {
            Ok(l) => l,
            Err(e) => {
                r.fail("(iii)", e.to_string(), None, None);
                continue;
            }
        };
        // a root of τ̃ is a lattice vector of M × Z; the height is integral iff d⟨p^s e, v_{y0}⟩ ≡ −1 mod d
        if !is_integral(&lift) {
            r.fail("(iii)", format!("e~_{} = {} is not a lattice vector", i + 1, fmt_ratvec(&lift)), None, None);
            continue;
        }
        match demazure_root_check(&a.tau_tilde, &a.distinguished_ray, &lift) {
            Ok(true) => {}
            Ok(false) => r.fail(
                "(iii)",
                format!("e~_{} = {} is not a Demazure root of {}", i + 1, fmt_ratvec(&lift), a.tau_tilde),
                None,
                None,
            ),
            Err(e) => r.fail("(iii)", e.to_string(), None, None),
        }
    }

    let pe = theta.scaled_e(0).expect("s checked nonempty");
    vertex_conditions(theta, &a, &pe, &mut r);
    r
}

/// Conditions (v), (vi) and (vii) alone, for a family whose coloring has cones `a`.
pub(crate) fn vertex_report(theta: &CoherentFamily, a: &AssociatedCones) -> Result<CoherenceReport> {
    let mut r = CoherenceReport::default();
    vertex_conditions(theta, a, &theta.scaled_e(0)?, &mut r);
    Ok(r)
}

fn vertex_conditions(theta: &CoherentFamily, a: &AssociatedCones, pe: &RatVec, r: &mut CoherenceReport) {
    let c = &theta.coloring;
    let d = rat(a.d);
    let one = BigRational::one();
    for y in c.points_of_c_prime() {
        if y == c.y0 {
            continue;
        }
        let k = rat(eps(&y) * a.p_u);
        let vy = c.v(&y);
        for v in c.uncolored(&y) {
            let lhs = &k * dot(pe, &v);
            let rhs = &one + &k * dot(pe, &vy);
            if lhs < rhs {
                r.fail("(v)", format!("at {y}, vertex {}: {lhs} < {rhs}", fmt_ratvec(&v)), Some(&y), Some(&v));
            }
        }
    }
    let v0 = c.v0();
    for v in c.uncolored(&c.y0) {
        let lhs = &d * dot(pe, &v);
        let rhs = &one + &d * dot(pe, &v0);
        if lhs < rhs {
            r.fail("(vi)", format!("at {}, vertex {}: {lhs} < {rhs}", c.y0, fmt_ratvec(&v)), Some(&c.y0), Some(&v));
        }
    }
    if let (Curve::P1, Some(y_inf)) = (c.divisor.curve(), &c.y_inf) {
        for w in c.divisor.polyhedron_at(y_inf).vertices() {
            let lhs = &d * dot(pe, w);
            let rhs = -&one - &d * dot(pe, &a.v_deg);
            if lhs < rhs {
                r.fail("(vii)", format!("at {y_inf}, vertex {}: {lhs} < {rhs}", fmt_ratvec(w)), Some(y_inf), Some(w));
            }
        }
    }
}

/// A failing instance of a floor condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorWitness {
    pub m: LatticeVec,
    pub point: ClosedPoint,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorOutcome {
    pub clause: String,
    /// Number of `(m, y)` pairs where the condition was not vacuous.
    pub checked: usize,
    pub witness: Option<FloorWitness>,
}

impl FloorOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub outcomes: Vec<FloorOutcome>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(FloorOutcome::passed)
    }

    pub fn clause_passed(&self, clause: &str) -> bool {
        self.outcomes.iter().filter(|o| o.clause == clause).all(FloorOutcome::passed)
    }
}

fn floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Weights of `[-radius, radius]^n`, ordered by `ℓ¹` norm and then lexicographically.
pub fn weight_box(n: usize, radius: i64) -> Vec<LatticeVec> {
    let mut ms: Vec<LatticeVec> = vec![vec![]];
    for _ in 0..n {
        ms = ms
            .into_iter()
            .flat_map(|m| {
                (-radius..=radius).map(move |x| {
                    let mut m = m.clone();
                    m.push(x);
                    m
                })
            })
            .collect();
    }
    ms.sort_by_key(|m| (m.iter().map(|x| x.abs()).sum::<i64>(), m.clone()));
    ms
}

/// Evaluates the floor conditions (4), (5) and (6) over `m ∈ [-radius, radius]^n ∩ σ^∨`
/// with `m + p^{s_1}e ∈ σ^∨`.
pub fn floor_condition_check(theta: &CoherentFamily, radius: i64) -> Result<ConditionReport> {
    let c = &theta.coloring;
    let a = associated_cones(c)?;
    let div = &c.divisor;
    let n = div.rank();
    let pe = theta.scaled_e(0)?;
    let sigma_dual = div.weight_cone();
    let d = rat(a.d);
    let v0 = c.v0();
    let min = |p: &crate::polyhedral::Polyhedron, m: &RatVec| {
        polyhedron_min(p, m).expect("weights in the dual of the tail")
    };

    let mut out4 = FloorOutcome { clause: "(4)".into(), checked: 0, witness: None };
    let mut out5 = FloorOutcome { clause: "(5)".into(), checked: 0, witness: None };
    let mut out6 = FloorOutcome { clause: "(6)".into(), checked: 0, witness: None };
    let others: Vec<ClosedPoint> = c
        .points_of_c_prime()
        .into_iter()
        .filter(|y| *y != c.y0 && div.support().contains_key(y))
        .collect();
    let y_inf = match (div.curve(), &c.y_inf) {
        (Curve::P1, Some(y)) => Some(y.clone()),
        _ => None,
    };

    for m in weight_box(n, radius) {
        let mr = to_rat(&m);
        let next = add(&mr, &pe);
        if !sigma_dual.contains(&mr) || !sigma_dual.contains(&next) {
            continue;
        }
        for y in &others {
            let p = div.polyhedron_at(y);
            let vy = c.v(y);
            let h = |w: &RatVec| min(&p, w) - dot(w, &vy);
            let (h0, h1) = (h(&mr), h(&next));
            if h1.is_zero() {
                continue;
            }
            let k = rat(eps(y) * a.p_u);
            let lhs = floor(&(&k * &h1)) - floor(&(&k * &h0));
            out4.checked += 1;
            if lhs < BigInt::one() && out4.witness.is_none() {
                out4.witness = Some(FloorWitness { m: m.clone(), point: y.clone(), lhs, rhs: BigInt::one() });
            }
        }
        {
            let p = div.polyhedron_at(&c.y0);
            let (h0, h1) = (min(&p, &mr), min(&p, &next));
            if h1 != dot(&next, &v0) {
                let lhs = floor(&(&d * &h1)) - floor(&(&d * &h0));
                let rhs = BigRational::one() + &d * dot(&pe, &v0);
                let rhs = rhs.to_integer();
                out5.checked += 1;
                if lhs < rhs && out5.witness.is_none() {
                    out5.witness = Some(FloorWitness { m: m.clone(), point: c.y0.clone(), lhs, rhs });
                }
            }
        }
        if let Some(y) = &y_inf {
            let p = div.polyhedron_at(y);
            let h = |w: &RatVec| min(&p, w) + dot(w, &a.v_deg);
            let lhs = floor(&(&d * h(&next))) - floor(&(&d * h(&mr)));
            let rhs = -BigInt::one();
            out6.checked += 1;
            if lhs < rhs && out6.witness.is_none() {
                out6.witness = Some(FloorWitness { m: m.clone(), point: y.clone(), lhs, rhs });
            }
        }
    }
    let mut outcomes = vec![out4, out5];
    if y_inf.is_some() {
        outcomes.push(out6);
    }
    Ok(ConditionReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::super::coloring::fixtures::*;
    use super::*;
    use crate::arith::BaseField;

    fn family(c: Coloring, e: LatticeVec, s: Vec<u32>) -> CoherentFamily {
        let one = c.divisor.field().one();
        let lambda = vec![one; s.len()];
        CoherentFamily { coloring: c, e, s, lambda }
    }

    #[test]
    fn example_one_families() {
        let k = BaseField::RationalFunctions(2);
        let theta = family(example_one(k, "t^2 + l"), vec![1], vec![2]);
        let r = coherent_validate(&theta);
        assert!(r.is_coherent(), "{r:?}");
        assert!(floor_condition_check(&theta, 12).unwrap().passed());

        let theta = family(example_one(k, "t + 1"), vec![1], vec![2]);
        let r = coherent_validate(&theta);
        assert!(!r.clause_holds("(v)"));
        assert_eq!(r.violations[0].vertex, Some(vec![crate::polyhedral::linalg::qf(1, 5)]));
        let f = floor_condition_check(&theta, 12).unwrap();
        assert!(!f.clause_passed("(4)"));
        // m = 0 is vacuous since h_y(4) = 0; the first failure sits at m = -5
        assert_eq!(f.outcomes[0].witness.as_ref().unwrap().m, vec![-5]);
    }

    #[test]
    fn fractional_lift_is_not_a_root() {
        // ẽ = (1, -1/5 - 1/5) pairs to -1 with (1,5) but has a fractional height
        let theta = family(example_one(BaseField::RationalFunctions(2), "t^2 + l"), vec![1], vec![0]);
        let r = coherent_validate(&theta);
        assert!(!r.clause_holds("(iii)"));
        assert!(r.violations[0].detail.contains("lattice vector"));
    }

    #[test]
    fn example_two_families() {
        let theta = family(example_two(BaseField::Prime(2)), vec![1, 0], vec![0]);
        let r = coherent_validate(&theta);
        assert!(r.is_coherent(), "{r:?}");
        assert!(!r.notes.is_empty());
        assert_eq!(theta.root_lift(0, 2).unwrap(), to_rat(&[1, 0, -1]));
        let f = floor_condition_check(&theta, 8).unwrap();
        assert!(f.passed());
        assert!(f.outcomes[0].checked > 0);

        let theta = family(example_two(BaseField::Rationals), vec![1, 0], vec![1]);
        let r = coherent_validate(&theta);
        assert!(!r.clause_holds("(v)"));
        assert!(r.clause_holds("(iii)"));
        assert!(!floor_condition_check(&theta, 8).unwrap().clause_passed("(4)"));
    }

    #[test]
    fn family_shape() {
        let k = BaseField::RationalFunctions(2);
        let mut theta = family(example_one(k, "t^2 + l"), vec![1], vec![2, 1]);
        assert!(!coherent_validate(&theta).clause_holds("s"));
        theta.s = vec![2];
        theta.lambda = vec![k.zero()];
        assert!(!coherent_validate(&theta).clause_holds("lambda"));
        let theta = family(example_one(k, "t^2 + l"), vec![1], vec![1]);
        // p e = 2 is not a root: ⟨(2, -1/5 - 2/5), (1,5)⟩ = -1 but ⟨·,(1,0)⟩ = 2 ≥ 0 fine;
        // condition (v) fails instead: 2·⟨2, 1/5⟩ = 4/5 < 1
        assert!(!coherent_validate(&theta).clause_holds("(v)"));
        let theta = family(example_one(k, "t^2 + l"), vec![-1], vec![2]);
        assert!(!coherent_validate(&theta).clause_holds("(iii)"));
    }
}
