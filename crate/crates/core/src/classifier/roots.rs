//! Demazure roots of a cone with respect to one of its rays.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polyhedral::linalg::{dot, to_rat};
use crate::polyhedral::{Cone, RatVec};
use crate::{Error, Result};

fn ray_index(cone: &Cone, ray: &[i64]) -> Result<usize> {
    let target = to_rat(ray);
    cone.rays()
        .iter()
        .position(|r| {
            // same half-line: positive multiple
            let r = to_rat(r);
            let (a, b) = (dot(&r, &r), dot(&r, &target));
            b > BigRational::zero() && b.clone() * &b == a * dot(&target, &target)
        })
        .ok_or_else(|| Error::NotARoot(format!("{ray:?} does not span a ray of {cone}")))
}

/// True iff `cand` pairs to `-1` with the primitive generator of `ray` and
/// nonnegatively with the primitive generators of every other ray.
pub fn demazure_root_check(cone: &Cone, ray: &[i64], cand: &[BigRational]) -> Result<bool> {
    if cand.len() != cone.dim() || ray.len() != cone.dim() {
        return Err(Error::Dimension { expected: cone.dim(), found: cand.len().max(ray.len()) });
    }
    let idx = ray_index(cone, ray)?;
    if cone.lineality().iter().any(|l| !dot(&to_rat(l), cand).is_zero()) {
        return Ok(false);
    }
    for (i, r) in cone.rays().iter().enumerate() {
        let pairing = dot(&to_rat(r), cand);
        let ok = if i == idx { pairing == -BigRational::one() } else { pairing >= BigRational::zero() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All roots whose first `dim − 1` coordinates are integers in
/// `[-radius, radius]` and whose last coordinate lies in `(1/height_den)Z`
/// with absolute value at most `radius`.
pub fn demazure_roots_enumerate(cone: &Cone, ray: &[i64], radius: i64, height_den: u64) -> Result<Vec<RatVec>> {
    let dim = cone.dim();
    if dim == 0 || radius < 0 {
        return Ok(Vec::new());
    }
    let idx = ray_index(cone, ray)?;
    let rho = to_rat(&cone.rays()[idx]);
    let den = BigInt::from(height_den.max(1));
    let mut out = Vec::new();
    let mut heads: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim - 1 {
        heads = heads
            .into_iter()
            .flat_map(|h| {
                (-radius..=radius).map(move |x| {
                    let mut h = h.clone();
                    h.push(x);
                    h
                })
            })
            .collect();
    }
    let bound = BigRational::from_integer(radius.into());
    for head in heads {
        let mut heights: Vec<BigRational> = Vec::new();
        let partial: BigRational = head.iter().zip(&rho).map(|(a, r)| r * BigInt::from(*a)).sum();
        let last = &rho[dim - 1];
        if last.is_zero() {
            let steps = radius * height_den.max(1) as i64;
            heights.extend((-steps..=steps).map(|k| BigRational::new(k.into(), den.clone())));
        } else {
            let h = (-BigRational::one() - partial) / last;
            if den.is_multiple_of(h.denom()) && h.abs() <= bound {
                heights.push(h);
            }
        }
        for h in heights {
            let mut cand = to_rat(&head);
            cand.push(h);
            if demazure_root_check(cone, ray, &cand)? {
                out.push(cand);
            }
        }
    }
    Ok(out)
}
