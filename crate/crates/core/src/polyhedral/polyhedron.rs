//! Polyhedra `conv(vertices) + tail` with pointed tail cone.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::linalg::{self, add, dot, scale, sub, to_rat, RatVec, Q};
use crate::arith::syntax::format_rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    /// Irredundant, sorted.
    vertices: Vec<RatVec>,
    tail: Cone,
}

impl Polyhedron {
    /// Canonicalizes `conv(points) + tail`, pruning points that are not vertices.
    pub fn new(points: Vec<RatVec>, tail: Cone) -> Result<Polyhedron> {
        let dim = tail.dim();
        if points.is_empty() {
            return Err(Error::InvalidDivisor("a polyhedron needs at least one vertex".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension { expected: dim, found: p.len() });
        }
        if !tail.is_pointed() {
            return Err(Error::Unsupported("polyhedra with non-pointed tail cone".into()));
        }
        if dim + 1 > super::cone::MAX_AMBIENT {
            return Err(Error::RankTooLarge(dim));
        }
        let mut gens: Vec<RatVec> = points
            .iter()
            .map(|p| {
                let mut h = p.clone();
                h.push(Q::one());
                h
            })
            .collect();
        for r in tail.rays() {
            let mut h = to_rat(r);
            h.push(Q::zero());
            gens.push(h);
        }
        let hom = Cone::generated_by(dim + 1, &gens)?;
        let mut vertices: Vec<RatVec> = hom
            .rays()
            .iter()
            .filter(|r| r[dim] > 0)
            .map(|r| {
                let h = Q::from_integer(r[dim].into());
                r[..dim].iter().map(|&x| Q::from_integer(x.into()) / &h).collect()
            })
            .collect();
        vertices.sort();
        Ok(Polyhedron { vertices, tail })
    }

    pub fn point(p: RatVec, tail: Cone) -> Result<Polyhedron> {
        Polyhedron::new(vec![p], tail)
    }

    pub fn dim(&self) -> usize {
        self.tail.dim()
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn is_vertex(&self, v: &[Q]) -> bool {
        self.vertices.iter().any(|w| w.as_slice() == v)
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        // x ∈ P iff (x,1) lies in the homogenization
        let dim = self.dim();
        let mut gens: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| {
                let mut h = v.clone();
                h.push(Q::one());
                h
            })
            .collect();
        for r in self.tail.rays() {
            let mut h = to_rat(r);
            h.push(Q::zero());
            gens.push(h);
        }
        let hom = Cone::generated_by(dim + 1, &gens).expect("rank checked on construction");
        let mut hx = x.to_vec();
        hx.push(Q::one());
        hom.contains(&hx)
    }

    pub fn translate(&self, by: &[Q]) -> Polyhedron {
        let mut vertices: Vec<RatVec> = self.vertices.iter().map(|v| add(v, by)).collect();
        vertices.sort();
        Polyhedron { vertices, tail: self.tail.clone() }
    }

    /// `k·P` for `k > 0`.
    pub fn scale(&self, k: &Q) -> Polyhedron {
        assert!(k.is_positive(), "scaling factor must be positive");
        let mut vertices: Vec<RatVec> = self.vertices.iter().map(|v| scale(v, k)).collect();
        vertices.sort();
        Polyhedron { vertices, tail: self.tail.clone() }
    }

    /// Largest common denominator of the vertex coordinates.
    pub fn denominator(&self) -> num_bigint::BigInt {
        self.vertices
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, &linalg::denominator_lcm(v)))
    }

    /// Vertices minimizing `m`, or `None` when `m` is unbounded below.
    pub fn minimizers(&self, m: &[Q]) -> Option<Vec<RatVec>> {
        let val = polyhedron_min(self, m)?;
        Some(self.vertices.iter().filter(|v| dot(m, v) == val).cloned().collect())
    }
}

/// `min_{v∈P} ⟨m, v⟩`; `None` stands for `-∞`.
pub fn polyhedron_min(p: &Polyhedron, m: &[Q]) -> Option<Q> {
    assert_eq!(m.len(), p.dim(), "dimension mismatch");
    if p.tail.rays().iter().any(|r| linalg::dot_int(r, m).is_negative()) {
        return None;
    }
    p.vertices.iter().map(|v| dot(m, v)).min()
}

/// `Σ w_i · P_i` over polyhedra with a common tail; zero weights drop out.
pub fn minkowski_weighted_sum(terms: &[(u64, &Polyhedron)]) -> Result<Polyhedron> {
    let live: Vec<&(u64, &Polyhedron)> = terms.iter().filter(|(w, _)| *w > 0).collect();
    let Some(first) = terms.first() else {
        return Err(Error::InvalidDivisor("empty Minkowski sum".into()));
    };
    let tail = first.1.tail.clone();
    if terms.iter().any(|(_, p)| p.tail != tail) {
        return Err(Error::TailMismatch);
    }
    let mut sums: Vec<RatVec> = vec![vec![Q::zero(); tail.dim()]];
    for (w, p) in live {
        let wq = Q::from_integer((*w).into());
        let mut next = Vec::with_capacity(sums.len() * p.vertices.len());
        for s in &sums {
            for v in &p.vertices {
                next.push(add(s, &scale(v, &wq)));
            }
        }
        // pruning after every step keeps the candidate list small
        sums = Polyhedron::new(next, tail.clone())?.vertices;
    }
    Polyhedron::new(sums, tail)
}

/// For each vertex `v`, the cone of `m` attaining the minimum of `P` at `v`.
pub fn normal_fan(p: &Polyhedron) -> Result<Vec<(RatVec, Cone)>> {
    let dim = p.dim();
    p.vertices
        .iter()
        .map(|v| {
            let mut gens: Vec<RatVec> = p.vertices.iter().filter(|w| *w != v).map(|w| sub(w, v)).collect();
            gens.extend(p.tail.rays().iter().map(|r| to_rat(r)));
            Ok((v.clone(), Cone::generated_by(dim, &gens)?.dual()))
        })
        .collect()
}

/// Cone over `P` placed at height `h`: generated by `(v, h)` for vertices,
/// `(r, 0)` for tail rays, and `extra`.
pub fn cone_from_polyhedron_at_height(p: &Polyhedron, h: &Q, extra: &[RatVec]) -> Result<Cone> {
    let dim = p.dim();
    let mut gens: Vec<RatVec> = Vec::new();
    for v in &p.vertices {
        let mut g = v.clone();
        g.push(h.clone());
        gens.push(g);
    }
    for r in p.tail.rays() {
        let mut g = to_rat(r);
        g.push(Q::zero());
        gens.push(g);
    }
    gens.extend(extra.iter().cloned());
    Cone::generated_by(dim + 1, &gens)
}

pub fn fmt_ratvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| fmt_ratvec(v)).collect();
        write!(f, "conv[{}]", vs.join(", "))?;
        if !self.tail.is_zero() {
            write!(f, " + {}", self.tail)?;
        }
        Ok(())
    }
}
