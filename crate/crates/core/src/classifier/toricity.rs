//! Toricity of normal affine surfaces with a `G_m`-action.

use num_traits::Zero;

use crate::curve::{ClosedPoint, Curve};
use crate::tvariety::{pdiv_eval, PolyhedralDivisor};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricityVerdict {
    Met,
    Violated,
    /// Hyperbolic grading (`σ = {0}`): the criterion does not apply.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricityReport {
    pub verdict: ToricityVerdict,
    /// Support of the fractional part `{D(m)}` for the generator `m` of `σ^∨ ∩ M`.
    pub fractional_support: Vec<ClosedPoint>,
    pub detail: String,
}

/// Checks whether the fractional part of `D(m)` is supported in at most one
/// (`A1`) or two (`P1`) k-rational points. Adding an integral divisor to `D`
/// leaves the fractional part and hence the verdict unchanged.
pub fn toricity_check(d: &PolyhedralDivisor) -> Result<ToricityReport> {
    if d.rank() != 1 {
        return Err(Error::Dimension { expected: 1, found: d.rank() });
    }
    if d.tail().is_zero() {
        return Ok(ToricityReport {
            verdict: ToricityVerdict::NotApplicable,
            fractional_support: Vec::new(),
            detail: "hyperbolic grading (tail is {0})".into(),
        });
    }
    let m = if d.weight_cone().contains_int(&[1]) { 1 } else { -1 };
    let dm = pdiv_eval(d, &[m])?;
    let frac = dm.add(&dm.floor().neg());
    let support: Vec<ClosedPoint> =
        frac.terms().filter(|(_, c)| !c.is_zero()).map(|(y, _)| y.clone()).collect();
    let bound = match d.curve() {
        Curve::A1 => 1,
        Curve::P1 => 2,
    };
    let irrational: Vec<String> = support.iter().filter(|y| !y.is_rational()).map(|y| y.to_string()).collect();
    let (verdict, detail) = if !irrational.is_empty() {
        (ToricityVerdict::Violated, format!("fractional part meets non-rational points {}", irrational.join(", ")))
    } else if support.len() > bound {
        (ToricityVerdict::Violated, format!("fractional part meets {} points, at most {bound} allowed", support.len()))
    } else {
        (ToricityVerdict::Met, format!("fractional part meets {} rational point(s)", support.len()))
    };
    Ok(ToricityReport { verdict, fractional_support: support, detail })
}
