//! Finite-window checks of the LFIHD axioms, stability of `A` and horizontality.

use super::element::GradedElement;
use super::operator::Lfihd;
use crate::arith::{binom_in_field, RatFunc};
use crate::polyhedral::LatticeVec;
use crate::tvariety::{membership, PolyhedralDivisor};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn record(&mut self, axiom: &str, failures: Vec<String>, checked: usize, skipped: usize) {
        let passed = failures.is_empty();
        let detail = if passed {
            if skipped > 0 {
                format!("{checked} cases hold; {skipped} without an a-priori bound skipped")
            } else {
                format!("{checked} cases hold")
            }
        } else {
            format!("{} of {checked} cases fail; first: {}", failures.len(), failures[0])
        };
        self.checks.push(AxiomCheck { axiom: axiom.into(), passed, detail });
    }
}

/// Nilpotency is checked up to this far beyond the a-priori bound.
const NILPOTENCY_MARGIN: usize = 4;
/// Bounds above this are not expanded.
const NILPOTENCY_CAP: usize = 512;

/// Identity, homogeneity, Leibniz (on all pairs), iterativity and nilpotency
/// on `tests` up to `order`.
pub fn verify_axioms(op: &dyn Lfihd, tests: &[GradedElement], order: usize) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let e = op.degree().to_vec();
    let values: Vec<Vec<GradedElement>> = tests.iter().map(|x| op.apply_upto(x, order)).collect::<Result<_>>()?;

    let fails: Vec<String> = tests
        .iter()
        .zip(&values)
        .filter(|(x, v)| v[0] != **x)
        .map(|(x, v)| format!("d^(0)({x}) = {}", v[0]))
        .collect();
    report.record("identity", fails, tests.len(), 0);

    let mut fails = Vec::new();
    let mut checked = 0;
    for x in tests {
        for part in x.homogeneous_parts() {
            let m: &LatticeVec = part.terms().keys().next().expect("nonzero part");
            for (i, y) in op.apply_upto(&part, order)?.iter().enumerate() {
                checked += 1;
                let w: LatticeVec = m.iter().zip(&e).map(|(a, b)| a + b * i as i64).collect();
                if y.terms().keys().any(|k| *k != w) {
                    fails.push(format!("d^({i})({part}) = {y} is not of weight {w:?}"));
                }
            }
        }
    }
    report.record("homogeneity", fails, checked, 0);

    let mut fails = Vec::new();
    let mut checked = 0;
    for a in 0..tests.len() {
        for b in a..tests.len() {
            let prod = tests[a].mul(&tests[b]);
            let lhs = op.apply_upto(&prod, order)?;
            for (i, l) in lhs.iter().enumerate() {
                checked += 1;
                let mut rhs = GradedElement::zero(op.field(), e.len());
                for j in 0..=i {
                    rhs = rhs.add(&values[a][j].mul(&values[b][i - j]));
                }
                if *l != rhs {
                    fails.push(format!("d^({i}) of ({}) * ({}): {l} != {rhs}", tests[a], tests[b]));
                }
            }
        }
    }
    report.record("leibniz", fails, checked, 0);

    let mut fails = Vec::new();
    let mut checked = 0;
    for (x, vx) in tests.iter().zip(&values) {
        for b in 1..order {
            let inner = op.apply_upto(&vx[b], order - b)?;
            for a in 1..=order - b {
                checked += 1;
                let want = vx[a + b].scale(&binom_in_field((a + b) as i64, a as u64, op.field()));
                if inner[a] != want {
                    fails.push(format!("d^({a}) d^({b}) ({x}) = {} but C({},{a}) d^({}) = {want}", inner[a], a + b, a + b));
                }
            }
        }
    }
    report.record("iterativity", fails, checked, 0);

    let mut fails = Vec::new();
    let (mut checked, mut skipped) = (0, 0);
    for (x, vx) in tests.iter().zip(&values) {
        match op.nilpotency_bound(x) {
            Some(bound) if bound <= NILPOTENCY_CAP => {
                let top = bound + NILPOTENCY_MARGIN;
                let tail = if top <= order { vx.clone() } else { op.apply_upto(x, top)? };
                checked += 1;
                if let Some((i, y)) = tail.iter().enumerate().skip(bound + 1).find(|(_, y)| !y.is_zero()) {
                    fails.push(format!("d^({i})({x}) = {y} beyond the bound {bound}"));
                }
            }
            _ => skipped += 1,
        }
    }
    report.record("nilpotency", fails, checked, skipped);
    Ok(report)
}

/// A term of some `∂^{(i)}(g)` outside `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityWitness {
    pub generator: usize,
    pub order: usize,
    pub weight: LatticeVec,
    pub coeff: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub checked: usize,
    pub witness: Option<StabilityWitness>,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `∂^{(i)}(g) ∈ A` for every generator `g` and `1 ≤ i ≤ order`. For a
/// generating set this certifies, by the Leibniz rule, that `A` is stable.
pub fn verify_stability(
    op: &dyn Lfihd,
    d: &PolyhedralDivisor,
    gens: &[GradedElement],
    order: usize,
) -> Result<StabilityReport> {
    let mut checked = 0;
    for (gi, g) in gens.iter().enumerate() {
        for (i, y) in op.apply_upto(g, order)?.into_iter().enumerate().skip(1) {
            for (w, f) in y.terms() {
                checked += 1;
                // weights outside σ^∨ carry nothing in A
                if !membership(d, f, w).unwrap_or(false) {
                    let witness = StabilityWitness { generator: gi, order: i, weight: w.clone(), coeff: f.clone() };
                    return Ok(StabilityReport { checked, witness: Some(witness) });
                }
            }
        }
    }
    Ok(StabilityReport { checked, witness: None })
}

/// The first `1 ≤ j ≤ order` with `∂^{(j)}(t) ≠ 0`, if any.
pub fn verify_horizontal(op: &dyn Lfihd, order: usize) -> Result<Option<usize>> {
    let field = op.field();
    let t = GradedElement::monomial(vec![0; op.degree().len()], RatFunc::from_poly(crate::arith::Poly::x(field)));
    Ok(op.apply_upto(&t, order)?.iter().enumerate().skip(1).find(|(_, y)| !y.is_zero()).map(|(j, _)| j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::syntax::parse_ratfunc;
    use crate::arith::BaseField;
    use crate::classifier::coloring::fixtures::*;
    use crate::classifier::CoherentFamily;
    use crate::lfihd::{build_operator, kernel_in_box, toric_root_operator};
    use crate::polyhedral::Cone;

    fn el(k: BaseField, m: &[i64], f: &str) -> GradedElement {
        GradedElement::monomial(m.to_vec(), parse_ratfunc(f, k).unwrap())
    }

    fn example_one_op() -> (super::super::DthetaOperator, PolyhedralDivisor, Vec<GradedElement>) {
        let k = BaseField::RationalFunctions(2);
        let c = example_one(k, "t^2 + l");
        let d = c.divisor.clone();
        let th = CoherentFamily { coloring: c, e: vec![1], s: vec![2], lambda: vec![k.one()] };
        let gens = vec![el(k, &[0], "t"), el(k, &[1], "1"), el(k, &[5], "1/t"), el(k, &[-5], "t*(t^2 + l)")];
        (build_operator(&th, false).unwrap(), d, gens)
    }

    #[test]
    fn example_one_checks() {
        let (op, d, gens) = example_one_op();
        let r = verify_axioms(&op, &gens, 16).unwrap();
        assert!(r.passed(), "{:#?}", r.failures());
        let s = verify_stability(&op, &d, &gens, 40).unwrap();
        assert!(s.stable(), "{s:?}");
        assert_eq!(verify_horizontal(&op, op.horizontality_bound()).unwrap(), Some(4));

        let k = kernel_in_box(&op, &d, 10, 2).unwrap();
        assert!(k.passed(), "{k:?}");
        assert_eq!(k.weights, vec![vec![0], vec![5], vec![10]]);
        assert_eq!(k.lattice, vec![vec![5]]);
        assert_eq!(k.cone, Cone::orthant(1).unwrap());
        let five = k.pieces.iter().find(|p| p.weight == vec![5]).unwrap();
        assert_eq!(five.phi, Some(parse_ratfunc("1/t", d.field()).unwrap()));
        let zero = k.pieces.iter().find(|p| p.weight == vec![0]).unwrap();
        assert_eq!(zero.phi, Some(parse_ratfunc("1", d.field()).unwrap()));
    }

    #[test]
    fn example_two_checks() {
        let k = BaseField::Prime(2);
        let c = example_two(k);
        let d = c.divisor.clone();
        let th = CoherentFamily { coloring: c.clone(), e: vec![1, 0], s: vec![0], lambda: vec![k.one()] };
        let op = build_operator(&th, false).unwrap();
        let tests = vec![el(k, &[0, 0], "t"), el(k, &[0, 1], "1"), el(k, &[1, 1], "1"), el(k, &[2, 1], "1/(t*(t-1))")];
        let r = verify_axioms(&op, &tests, 6).unwrap();
        assert!(r.passed(), "{:#?}", r.failures());
        assert!(verify_stability(&op, &d, &tests, 8).unwrap().stable());
        assert_eq!(verify_horizontal(&op, 4).unwrap(), Some(2));
        let ker = kernel_in_box(&op, &d, 2, 2).unwrap();
        let z = ker.pieces.iter().find(|p| p.weight == vec![2, 1]).unwrap();
        assert_eq!(z.phi, Some(parse_ratfunc("1/(t*(t-1))", k).unwrap()));
        assert!(ker.one_dimensional());

        let q = BaseField::Rationals;
        let cq = example_two(q);
        let dq = cq.divisor.clone();
        let bad = CoherentFamily { coloring: cq, e: vec![1, 0], s: vec![1], lambda: vec![q.one()] };
        let op = build_operator(&bad, true).unwrap();
        let tests = vec![el(q, &[0, 0], "t"), el(q, &[0, 1], "1"), el(q, &[1, 1], "1"), el(q, &[2, 1], "1/(t*(t-1))")];
        let s = verify_stability(&op, &dq, &tests, 4).unwrap();
        let w = s.witness.unwrap();
        assert_eq!((w.generator, w.order, w.weight), (1, 1, vec![1, 1]));
    }

    #[test]
    fn constants_and_toric() {
        let (op, _, _) = example_one_op();
        let one = el(BaseField::RationalFunctions(2), &[0], "1");
        assert!(op.apply_upto(&one, 12).unwrap().iter().skip(1).all(GradedElement::is_zero));

        let q = BaseField::Rationals;
        let op = toric_root_operator(&Cone::orthant(2).unwrap(), &[-1, 2], q).unwrap();
        let tests = vec![el(q, &[1, 0], "1"), el(q, &[2, 1], "1"), el(q, &[0, 3], "1")];
        assert!(verify_axioms(&op, &tests, 5).unwrap().passed());
        assert_eq!(verify_horizontal(&op, 8).unwrap(), None);
    }
}
