//! The kernel of `∂_θ` on a window of weights.

use super::element::GradedElement;
use super::operator::{DthetaOperator, Lfihd};
use crate::arith::{Fe, Poly, RatFunc};
use crate::classifier::weight_box;
use crate::curve::{principal_divisor, Curve};
use crate::polyhedral::linalg::to_rat;
use crate::polyhedral::{Cone, LatticeVec};
use crate::tvariety::{graded_piece, pdiv_eval, PolyhedralDivisor};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPiece {
    pub weight: LatticeVec,
    /// Dimension over `k` of the kernel inside the window `f_m·k[t]_{≤ max_deg}`.
    pub dim: usize,
    /// Spanning element when `dim = 1`.
    pub phi: Option<RatFunc>,
    /// `div(φ_m) + D(m) = 0`, when `dim = 1`.
    pub principal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub pieces: Vec<KernelPiece>,
    /// Weights with a nonzero kernel piece.
    pub weights: Vec<LatticeVec>,
    /// Hermite basis of the lattice `L` the weights generate.
    pub lattice: Vec<LatticeVec>,
    /// The cone `ω` the weights generate.
    pub cone: Cone,
    /// The weights are exactly `L ∩ ω` inside the box.
    pub trace: bool,
}

impl KernelReport {
    pub fn one_dimensional(&self) -> bool {
        self.pieces.iter().all(|p| p.dim <= 1 && (p.dim == 0 || p.principal))
    }

    pub fn passed(&self) -> bool {
        self.one_dimensional() && self.trace
    }
}

/// Row-reduces over `k`; returns a basis of the solutions of `rows · x = 0`.
fn nullspace(rows: &[Vec<Fe>], cols: usize, zero: &Fe) -> Vec<Vec<Fe>> {
    let mut m: Vec<Vec<Fe>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row: Vec<Fe> = m[i].iter().zip(&m[r]).map(|(a, b)| a - &(&f * b)).collect();
                m[i] = row;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![zero.clone(); cols];
            v[fc] = zero.field().one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[ri][fc];
            }
            v
        })
        .collect()
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).exact_div(&a.gcd(b)).expect("gcd divides").monic()
}

/// Orders `p^j` (or `1` in characteristic zero) up to `bound`; by iterativity
/// their common kernel is the kernel of every `∂^{(i)}`, `i ≤ bound`.
fn generating_orders(p: u64, bound: usize) -> Vec<usize> {
    if p == 1 {
        return if bound >= 1 { vec![1] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut q = 1usize;
    while q <= bound {
        out.push(q);
        q *= p as usize;
    }
    out
}

/// Integer row echelon form of the lattice generated by `vs`.
pub fn lattice_basis(vs: &[LatticeVec], n: usize) -> Vec<LatticeVec> {
    let mut rows: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|x| *x as i128).collect()).collect();
    let mut basis = Vec::new();
    for c in 0..n {
        loop {
            rows.retain(|r| r.iter().any(|x| *x != 0));
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][c].abs());
            let p = nz[0];
            let pivot = rows[p].clone();
            for &i in &nz[1..] {
                let q = rows[i][c] / pivot[c];
                for k in 0..n {
                    rows[i][k] -= q * pivot[k];
                }
            }
        }
        if let Some(i) = rows.iter().position(|r| r[c] != 0) {
            let mut r = rows.remove(i);
            if r[c] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(r);
        }
    }
    basis.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

pub fn lattice_contains(basis: &[LatticeVec], v: &[i64]) -> bool {
    let mut v: Vec<i64> = v.to_vec();
    for b in basis {
        let c = b.iter().position(|x| *x != 0).expect("nonzero basis row");
        if v[c] % b[c] != 0 {
            return false;
        }
        let q = v[c] / b[c];
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= q * y);
    }
    v.iter().all(|x| *x == 0)
}

/// Kernel pieces on `[-radius, radius]^n ∩ σ^∨`, searched among
/// `f_m g χ^m` with `deg g ≤ max_deg`.
pub fn kernel_in_box(op: &DthetaOperator, d: &PolyhedralDivisor, radius: i64, max_deg: usize) -> Result<KernelReport> {
    if d.curve() != Curve::A1 {
        return Err(Error::Unsupported("kernel computation is implemented over A1 only".into()));
    }
    let field = d.field();
    let n = d.rank();
    let p = field.char_exponent();
    let sigma_dual = d.weight_cone();
    let mut pieces = Vec::new();
    for m in weight_box(n, radius).into_iter().filter(|m| sigma_dual.contains_int(m)) {
        let f_m = graded_piece(d, &m)?.generator().clone();
        let f = f_m.expand();
        let basis: Vec<GradedElement> = (0..=max_deg)
            .map(|j| GradedElement::monomial(m.clone(), &f * &RatFunc::from_poly(Poly::monomial(field.one(), j))))
            .collect();
        let bound = basis.iter().map(|x| op.nilpotency_bound(x)).try_fold(0usize, |a, b| b.map(|b| a.max(b)));
        let bound = bound.ok_or_else(|| Error::Unsupported(format!("no nilpotency bound at weight {m:?}")))?;
        let orders = generating_orders(p, bound);
        let top = orders.last().copied().unwrap_or(0);
        let images: Vec<Vec<GradedElement>> = basis.iter().map(|x| op.apply_upto(x, top)).collect::<Result<_>>()?;
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for &i in &orders {
            let vals: Vec<RatFunc> = images.iter().map(|im| im[i].terms().values().next().cloned()
                .unwrap_or_else(|| RatFunc::zero(field))).collect();
            let den = vals.iter().fold(Poly::one(field), |acc, v| poly_lcm(&acc, v.denom()));
            let polys: Vec<Poly> = vals
                .iter()
                .map(|v| (v.numer() * &den).exact_div(v.denom()).expect("common denominator"))
                .collect();
            let len = polys.iter().filter_map(|q| q.degree()).max().map_or(0, |x| x + 1);
            for k in 0..len {
                rows.push(polys.iter().map(|q| q.coeff(k)).collect());
            }
        }
        let ns = nullspace(&rows, max_deg + 1, &field.zero());
        let (phi, principal) = if ns.len() == 1 {
            let g = Poly::from_coeffs(field, ns[0].clone());
            // φ = g f_m with div(f_m) = -⌊D(m)⌋, so div(φ) + D(m) = 0 needs g constant
            let div = principal_divisor(&f_m, Curve::A1)?.add(&pdiv_eval(d, &m)?);
            let principal = g.is_constant() && div.finite_part().is_zero();
            (Some(&f * &RatFunc::from_poly(g)), principal)
        } else {
            (None, false)
        };
        pieces.push(KernelPiece { weight: m, dim: ns.len(), phi, principal });
    }
    let weights: Vec<LatticeVec> = pieces.iter().filter(|p| p.dim > 0).map(|p| p.weight.clone()).collect();
    let lattice = lattice_basis(&weights, n);
    let cone = Cone::generated_by(n, &weights.iter().map(|w| to_rat(w)).collect::<Vec<_>>())?;
    let trace = pieces
        .iter()
        .all(|p| (p.dim > 0) == (lattice_contains(&lattice, &p.weight) && cone.contains_int(&p.weight)));
    Ok(KernelReport { pieces, weights, lattice, cone, trace })
}
