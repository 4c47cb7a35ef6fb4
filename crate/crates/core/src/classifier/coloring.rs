//! Colorings of a polyhedral divisor and the cones attached to them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::curve::{ClosedPoint, Curve};
use crate::polyhedral::linalg::{self, add, sub, to_rat};
use crate::polyhedral::{primitive_ray_generator, Cone, LatticeVec, RatVec};
use crate::tvariety::{deg_restricted, PolyhedralDivisor};
use crate::{Error, Result};

/// `(D, (v_y)_{y∈C'}, y0)` together with the removed point `y∞` on `P1`.
///
/// `vertices` lists the colored vertices of the support points in `C'`;
/// off the support `v_y = 0`, the only vertex of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub divisor: PolyhedralDivisor,
    pub y0: ClosedPoint,
    pub y_inf: Option<ClosedPoint>,
    pub vertices: BTreeMap<ClosedPoint, RatVec>,
}

impl Coloring {
    /// `v_y`, defaulting to the origin off the support.
    pub fn v(&self, y: &ClosedPoint) -> RatVec {
        self.vertices
            .get(y)
            .cloned()
            .unwrap_or_else(|| vec![BigRational::zero(); self.divisor.rank()])
    }

    pub fn v0(&self) -> RatVec {
        self.v(&self.y0)
    }

    /// `v_deg = Σ_{y∈C'} [κ_y:k] v_y`.
    pub fn v_deg(&self) -> RatVec {
        let n = self.divisor.rank();
        let mut acc = vec![BigRational::zero(); n];
        for y in self.points_of_c_prime() {
            let w = BigRational::from_integer(BigInt::from(y.residue_degree()));
            acc = add(&acc, &linalg::scale(&self.v(&y), &w));
        }
        acc
    }

    /// Support points in `C'` plus `y0`.
    pub fn points_of_c_prime(&self) -> Vec<ClosedPoint> {
        let mut pts: Vec<ClosedPoint> = self
            .divisor
            .support()
            .keys()
            .filter(|y| Some(*y) != self.y_inf.as_ref())
            .cloned()
            .collect();
        if !pts.contains(&self.y0) {
            pts.push(self.y0.clone());
            pts.sort();
        }
        pts
    }

    /// Vertices of `D_y` other than `v_y`.
    pub fn uncolored(&self, y: &ClosedPoint) -> Vec<RatVec> {
        let vy = self.v(y);
        self.divisor.polyhedron_at(y).vertices().iter().filter(|v| **v != vy).cloned().collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoringReport {
    /// `(clause, detail)` in the order the clauses are checked.
    pub violations: Vec<(String, String)>,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.violations.first().map(|(c, _)| c.as_str())
    }

    fn fail(&mut self, clause: &str, detail: String) {
        self.violations.push((clause.to_string(), detail));
    }
}

/// Checks the three coloring clauses; the first violation names the first failing clause.
pub fn coloring_validate(c: &Coloring) -> ColoringReport {
    let mut r = ColoringReport::default();
    let d = &c.divisor;
    match (d.curve(), &c.y_inf) {
        (Curve::P1, None) => r.fail("(i)", "P1 needs a removed k-rational point y_infinity".into()),
        (Curve::P1, Some(y)) if !y.is_rational() => r.fail("(i)", format!("y_infinity = {y} is not k-rational")),
        (Curve::A1, Some(y)) => r.fail("(i)", format!("y_infinity = {y} given on A1")),
        _ => {}
    }
    if !c.y0.is_rational() || c.y0.is_infinity() {
        r.fail("(ii)", format!("y0 = {} is not a k-rational point of C'", c.y0));
    } else if Some(&c.y0) == c.y_inf.as_ref() {
        r.fail("(ii)", "y0 coincides with y_infinity".into());
    }
    for (y, v) in &c.vertices {
        if Some(y) == c.y_inf.as_ref() {
            r.fail("(ii)", format!("a vertex is colored at the removed point {y}"));
        } else if *y != c.y0 && !linalg::is_integral(v) {
            r.fail("(ii)", format!("v at {y} = {} is not a lattice point", fmt(v)));
        }
    }
    for y in c.points_of_c_prime() {
        let p = d.polyhedron_at(&y);
        if d.support().contains_key(&y) && !c.vertices.contains_key(&y) {
            r.fail("(iii)", format!("no vertex colored at {y}"));
        } else if !p.is_vertex(&c.v(&y)) {
            r.fail("(iii)", format!("{} is not a vertex of D at {y}", fmt(&c.v(&y))));
        }
    }
    if r.is_valid() {
        match deg_restricted(d, c.y_inf.as_ref()) {
            Ok((deg, _)) => {
                let vd = c.v_deg();
                if !deg.is_vertex(&vd) {
                    r.fail("(iii)", format!("v_deg = {} is not a vertex of deg D|C' = {deg}", fmt(&vd)));
                }
            }
            Err(e) => r.fail("(iii)", e.to_string()),
        }
    }
    r
}

fn fmt(v: &[BigRational]) -> String {
    crate::polyhedral::polyhedron::fmt_ratvec(v)
}

/// `ω`, `τ = ω^∨`, `τ̃`, and `d = ℓ p^u` for a coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedCones {
    pub omega: Cone,
    pub tau: Cone,
    pub tau_tilde: Cone,
    pub d: u64,
    pub ell: u64,
    pub u: u32,
    /// `p^u`.
    pub p_u: u64,
    /// Primitive generator of `Q≥0 (v_{y0}, 1)`.
    pub distinguished_ray: LatticeVec,
    pub v_deg: RatVec,
}

pub fn associated_cones(c: &Coloring) -> Result<AssociatedCones> {
    let report = coloring_validate(c);
    if let Some((clause, detail)) = report.violations.first() {
        return Err(Error::InvalidColoring(format!("{clause} {detail}")));
    }
    let d = &c.divisor;
    let n = d.rank();
    let (deg, _) = deg_restricted(d, c.y_inf.as_ref())?;
    let v_deg = c.v_deg();
    let mut gens: Vec<RatVec> = deg.vertices().iter().map(|v| sub(v, &v_deg)).collect();
    gens.extend(d.tail().rays().iter().map(|r| to_rat(r)));
    let tau = Cone::generated_by(n, &gens)?;
    let omega = tau.dual();

    let lift = |v: &[BigRational], h: i64| {
        let mut g = v.to_vec();
        g.push(BigRational::from_integer(h.into()));
        g
    };
    let v0 = c.v0();
    let mut tgens: Vec<RatVec> = tau.generators().iter().map(|g| lift(g, 0)).collect();
    tgens.push(lift(&v0, 1));
    if let Some(y_inf) = &c.y_inf {
        for w in d.polyhedron_at(y_inf).vertices() {
            tgens.push(lift(&sub(&add(w, &v_deg), &v0), -1));
        }
    }
    let tau_tilde = Cone::generated_by(n + 1, &tgens)?;

    let den = linalg::denominator_lcm(&v0);
    let dd = den.to_u64().ok_or_else(|| Error::Unsupported("denominator too large".into()))?;
    let p = d.field().char_exponent();
    let (mut ell, mut u, mut p_u) = (dd, 0u32, 1u64);
    if p > 1 {
        while ell % p == 0 {
            ell /= p;
            u += 1;
            p_u *= p;
        }
    }
    debug_assert_eq!(ell.gcd(&p), 1);
    let distinguished_ray = primitive_ray_generator(&lift(&v0, 1))?;
    Ok(AssociatedCones { omega, tau, tau_tilde, d: dd, ell, u, p_u, distinguished_ray, v_deg })
}
