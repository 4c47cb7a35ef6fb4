//! Rational polyhedral cones in canonical form.

use std::fmt;

use num_traits::{Signed, Zero};

use super::linalg::{self, dot, nullspace, primitive, rank, to_rat, LatticeVec, RatVec, Q};
use crate::{Error, Result};

pub const MAX_RANK: usize = 4;

/// Cones over polyhedra live one dimension up.
pub(crate) const MAX_AMBIENT: usize = MAX_RANK + 1;

/// A cone `cone(rays) + span(lineality)`.
///
/// `rays` are primitive, irredundant, lie in the orthogonal complement of the
/// lineality space and are sorted; the lineality basis is the primitive RREF
/// basis. The dual is computed once and kept alongside, which makes
/// membership tests cheap.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<LatticeVec>,
    lineality: Vec<LatticeVec>,
    dual_rays: Vec<LatticeVec>,
    dual_lineality: Vec<LatticeVec>,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.rays == o.rays && self.lineality == o.lineality
    }
}

impl Eq for Cone {}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.rays.hash(state);
        self.lineality.hash(state);
    }
}

fn check_dim(dim: usize, vecs: &[RatVec]) -> Result<()> {
    if dim > MAX_AMBIENT {
        return Err(Error::RankTooLarge(dim));
    }
    for v in vecs {
        if v.len() != dim {
            return Err(Error::Dimension { expected: dim, found: v.len() });
        }
    }
    Ok(())
}

fn with_negatives(rays: &[LatticeVec], lin: &[LatticeVec]) -> Vec<RatVec> {
    let mut out: Vec<RatVec> = rays.iter().map(|r| to_rat(r)).collect();
    for l in lin {
        out.push(to_rat(l));
        out.push(to_rat(&l.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    out
}

/// Extreme rays and lineality basis of `{x : row·x ≥ 0 for all rows}`.
fn extreme(dim: usize, rows: &[RatVec]) -> (Vec<LatticeVec>, Vec<LatticeVec>) {
    let mut uniq: Vec<LatticeVec> = rows.iter().filter_map(|r| primitive(r)).collect();
    uniq.sort();
    uniq.dedup();
    let rows: Vec<RatVec> = uniq.iter().map(|r| to_rat(r)).collect();

    let lin_basis = nullspace(&rows, dim);
    let lineality = linalg::canonical_span(&lin_basis, dim);
    let l = lineality.len();
    if l == dim {
        return (Vec::new(), lineality);
    }
    let lin_rows: Vec<RatVec> = lineality.iter().map(|v| to_rat(v)).collect();
    let need = dim - 1 - l;
    let mut rays: Vec<LatticeVec> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    subsets(rows.len(), need, 0, &mut chosen, &mut |subset| {
        let mut sys = lin_rows.clone();
        sys.extend(subset.iter().map(|&i| rows[i].clone()));
        if rank(&sys, dim) != dim - 1 {
            return;
        }
        let ns = nullspace(&sys, dim);
        let r = &ns[0];
        let signs: Vec<i32> = rows.iter().map(|row| linalg::sign(&dot(row, r))).collect();
        let cand = if signs.iter().all(|&s| s >= 0) {
            r.clone()
        } else if signs.iter().all(|&s| s <= 0) {
            r.iter().map(|x| -x).collect()
        } else {
            return;
        };
        rays.push(primitive(&cand).unwrap());
    });
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}

impl Cone {
    /// The cone generated by `gens` (zero vectors allowed and ignored).
    pub fn generated_by(dim: usize, gens: &[RatVec]) -> Result<Cone> {
        check_dim(dim, gens)?;
        let (dual_rays, dual_lineality) = extreme(dim, gens);
        let (rays, lineality) = extreme(dim, &with_negatives(&dual_rays, &dual_lineality));
        Ok(Cone { dim, rays, lineality, dual_rays, dual_lineality })
    }

    pub fn generated_by_int(dim: usize, gens: &[LatticeVec]) -> Result<Cone> {
        let gens: Vec<RatVec> = gens.iter().map(|g| to_rat(g)).collect();
        Cone::generated_by(dim, &gens)
    }

    /// `{x : row·x ≥ 0 for all rows}`.
    pub fn from_inequalities(dim: usize, rows: &[RatVec]) -> Result<Cone> {
        check_dim(dim, rows)?;
        let (rays, lineality) = extreme(dim, rows);
        let (dual_rays, dual_lineality) = extreme(dim, &with_negatives(&rays, &lineality));
        Ok(Cone { dim, rays, lineality, dual_rays, dual_lineality })
    }

    /// The whole space `Q^dim`.
    pub fn full(dim: usize) -> Result<Cone> {
        Cone::from_inequalities(dim, &[])
    }

    /// The zero cone `{0}`.
    pub fn zero(dim: usize) -> Result<Cone> {
        Cone::generated_by(dim, &[])
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Result<Cone> {
        let gens: Vec<LatticeVec> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Cone::generated_by_int(dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVec] {
        &self.lineality
    }

    /// Generators as a cone: rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<RatVec> {
        with_negatives(&self.rays, &self.lineality)
    }

    /// Inequalities `row·x ≥ 0` cutting out the cone.
    pub fn inequalities(&self) -> Vec<RatVec> {
        with_negatives(&self.dual_rays, &self.dual_lineality)
    }

    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.dual_rays.clone(),
            lineality: self.dual_lineality.clone(),
            dual_rays: self.rays.clone(),
            dual_lineality: self.lineality.clone(),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        rank(&self.generators(), self.dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_dim() == self.dim
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.dual_rays.iter().all(|r| !linalg::dot_int(r, x).is_negative())
            && self.dual_lineality.iter().all(|r| linalg::dot_int(r, x).is_zero())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        let dot = |r: &LatticeVec| r.iter().zip(x).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum::<i128>();
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        self.dual_rays.iter().all(|r| dot(r) >= 0) && self.dual_lineality.iter().all(|r| dot(r) == 0)
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &[Q]) -> bool {
        if !self.contains(x) {
            return false;
        }
        // the dual rays that do not vanish on the whole cone define the facets
        self.dual_rays.iter().all(|r| {
            let vanishes_on_cone = self.rays.iter().all(|g| {
                r.iter().zip(g).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum::<i128>() == 0
            });
            vanishes_on_cone || linalg::dot_int(r, x).is_positive()
        })
    }

    pub fn is_subcone_of(&self, o: &Cone) -> bool {
        self.generators().iter().all(|g| o.contains(g))
    }

    pub fn intersect(&self, o: &Cone) -> Result<Cone> {
        let mut rows = self.inequalities();
        rows.extend(o.inequalities());
        Cone::from_inequalities(self.dim, &rows)
    }

    /// Face where the functional `m` (nonnegative on the cone) vanishes.
    pub fn face(&self, m: &[Q]) -> Result<Cone> {
        let gens: Vec<RatVec> = self.generators().into_iter().filter(|g| dot(g, m).is_zero()).collect();
        Cone::generated_by(self.dim, &gens)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &LatticeVec| {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            format!("({})", parts.join(","))
        };
        let mut parts: Vec<String> = self.rays.iter().map(fmt_vec).collect();
        for l in &self.lineality {
            parts.push(format!("±{}", fmt_vec(l)));
        }
        write!(f, "cone({})", parts.join(", "))
    }
}

/// Dual cone in the lattice of rank at most [`MAX_RANK`].
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    if c.dim() > MAX_RANK {
        return Err(Error::RankTooLarge(c.dim()));
    }
    Ok(c.dual())
}

/// The smallest lattice point on the ray `Q≥0·r`.
pub fn primitive_ray_generator(r: &[Q]) -> Result<LatticeVec> {
    primitive(r).ok_or(Error::ZeroVector)
}
