//! Homogeneous generators of `A[A¹, D]` inside a weight box.
//!
//! For a set `G` of homogeneous elements containing `t`, the subalgebra it
//! generates has graded pieces `S_m = f_m g_m k[t]` with monic `g_m` (or
//! `S_m = 0`). Products give `g_{a+b} | g_a g_b (f_a f_b / f_{a+b})`, and the
//! saturation of this rule over the box computes every `g_m`. A weight is
//! covered once `g_m = 1`.

use std::collections::HashMap;

use num_integer::Integer;

use super::degree::linearity_fan;
use super::divisor::{graded_piece, PolyhedralDivisor};
use crate::arith::{FactoredRatFunc, Poly};
use crate::curve::Curve;
use crate::polyhedral::{Cone, LatticeVec};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GeneratorBounds {
    /// Weights range over `[-radius, radius]^n`.
    pub radius: i64,
    /// Optional subcone of `σ^∨` to restrict to.
    pub restrict: Option<Cone>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    /// `(m, f)` standing for `f χ^m`; `t` comes first with weight 0.
    pub generators: Vec<(LatticeVec, FactoredRatFunc)>,
    /// False if some generator touches the boundary of the box, which means a
    /// larger box may require further generators.
    pub stable: bool,
    pub certificate: String,
}

struct Saturation {
    weights: Vec<LatticeVec>,
    index: HashMap<LatticeVec, usize>,
    f: Vec<FactoredRatFunc>,
    /// `(a, b, a+b, f_a f_b / f_{a+b})`
    products: Vec<(usize, usize, usize, Poly)>,
    zero: usize,
}

impl Saturation {
    fn new(d: &PolyhedralDivisor, weights: Vec<LatticeVec>) -> Result<Self> {
        let index: HashMap<LatticeVec, usize> = weights.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let f = weights
            .iter()
            .map(|m| Ok(graded_piece(d, m)?.generator().clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut products = Vec::new();
        for a in 0..weights.len() {
            for b in a..weights.len() {
                let sum: LatticeVec = weights[a].iter().zip(&weights[b]).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&sum) {
                    let h = f[a].mul(&f[b]).div(&f[c]).expand();
                    let h = h
                        .as_polynomial()
                        .cloned()
                        .ok_or_else(|| Error::InvalidDivisor("evaluation map is not superadditive".into()))?;
                    products.push((a, b, c, h));
                }
            }
        }
        let zero = index[&vec![0; d.rank()]];
        Ok(Saturation { weights, index, f, products, zero })
    }

    /// `g_m` for the subalgebra generated by `t` and `f_m χ^m` for `m ∈ gens`.
    fn close(&self, gens: &[usize]) -> Vec<Option<Poly>> {
        let field = self.f[0].field();
        let mut g: Vec<Option<Poly>> = vec![None; self.weights.len()];
        g[self.zero] = Some(Poly::one(field));
        for &m in gens {
            g[m] = Some(Poly::one(field));
        }
        loop {
            let mut changed = false;
            for (a, b, c, h) in &self.products {
                if g[*c].as_ref().is_some_and(Poly::is_one) {
                    continue;
                }
                let (Some(ga), Some(gb)) = (&g[*a], &g[*b]) else {
                    continue;
                };
                let cand = &(ga * gb) * h;
                let next = match &g[*c] {
                    None => cand.monic(),
                    Some(old) if old.divides(&cand) => continue,
                    Some(old) => old.gcd(&cand),
                };
                g[*c] = Some(next);
                changed = true;
            }
            if !changed {
                return g;
            }
        }
    }

    fn complete(g: &[Option<Poly>]) -> bool {
        g.iter().all(|x| x.as_ref().is_some_and(Poly::is_one))
    }
}

fn l1(m: &[i64]) -> i64 {
    m.iter().map(|x| x.abs()).sum()
}

/// Lattice points of `cone ∩ box` that are not sums of two nonzero such points.
fn irreducibles(points: &[LatticeVec], cone: &Cone) -> Vec<LatticeVec> {
    let inside: Vec<&LatticeVec> = points.iter().filter(|m| cone.contains_int(m) && l1(m) > 0).collect();
    let set: std::collections::HashSet<&LatticeVec> = inside.iter().copied().collect();
    inside
        .iter()
        .filter(|m| {
            !inside.iter().any(|a| {
                let rest: LatticeVec = m.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                l1(&rest) > 0 && set.contains(&rest)
            })
        })
        .map(|m| (*m).clone())
        .collect()
}

/// Minimal homogeneous generators of `A[A¹, D]` (optionally of its
/// restriction to a subcone), certified on the weight box.
pub fn algebra_generators(d: &PolyhedralDivisor, bounds: &GeneratorBounds) -> Result<GeneratorSet> {
    if d.curve() != Curve::A1 {
        return Err(Error::Unsupported("generator search is implemented over A1 only".into()));
    }
    let n = d.rank();
    let sigma_dual = d.weight_cone();
    let region = match &bounds.restrict {
        Some(c) => sigma_dual.intersect(c)?,
        None => sigma_dual,
    };
    let r = bounds.radius;
    let mut weights: Vec<LatticeVec> = vec![vec![]];
    for _ in 0..n {
        weights = weights
            .into_iter()
            .flat_map(|w| {
                (-r..=r).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    weights.retain(|m| region.contains_int(m));
    weights.sort_by(|a, b| l1(a).cmp(&l1(b)).then(a.cmp(b)));

    // seeds: irreducible points of each linearity region and their multiples
    let lcm = d
        .support()
        .values()
        .fold(num_bigint::BigInt::from(1), |acc, p| acc.lcm(&p.denominator()));
    let lcm: i64 = i64::try_from(lcm).unwrap_or(i64::MAX).min(r.max(1));
    let mut order: Vec<LatticeVec> = Vec::new();
    for lc in linearity_fan(d, None)? {
        let cone = lc.cone.intersect(&region)?;
        for h in irreducibles(&weights, &cone) {
            for k in 1..=lcm {
                order.push(h.iter().map(|x| x * k).collect());
            }
        }
    }
    order.extend(weights.iter().cloned());
    let mut seen = std::collections::HashSet::new();
    order.retain(|m| region.contains_int(m) && m.iter().all(|x| x.abs() <= r) && seen.insert(m.clone()));

    let sat = Saturation::new(d, weights)?;
    let mut gens: Vec<usize> = Vec::new();
    let mut g = sat.close(&gens);
    for m in &order {
        let i = sat.index[m];
        if !g[i].as_ref().is_some_and(Poly::is_one) {
            gens.push(i);
            g = sat.close(&gens);
        }
    }
    debug_assert!(Saturation::complete(&g));
    for pos in (0..gens.len()).rev() {
        let mut fewer = gens.clone();
        fewer.remove(pos);
        if Saturation::complete(&sat.close(&fewer)) {
            gens = fewer;
        }
    }

    let t = FactoredRatFunc::power_of(Poly::x(d.field()), 1)?;
    let mut generators = vec![(vec![0; n], t)];
    let mut picked: Vec<LatticeVec> = gens.iter().map(|&i| sat.weights[i].clone()).collect();
    picked.sort_by(|a, b| l1(a).cmp(&l1(b)).then(a.cmp(b)));
    let stable = picked.iter().all(|m| m.iter().all(|x| x.abs() < r));
    for m in picked {
        let f = sat.f[sat.index[&m]].clone();
        generators.push((m, f));
    }
    let restriction = match &bounds.restrict {
        Some(c) => format!(" ∩ {c}"),
        None => String::new(),
    };
    let certificate = format!(
        "generates every graded piece with weight in [-{r},{r}]^{n}{restriction}; no generator is redundant there{}",
        if stable { "" } else { "; a generator lies on the box boundary, enlarge the box to confirm" }
    );
    Ok(GeneratorSet { generators, stable, certificate })
}
