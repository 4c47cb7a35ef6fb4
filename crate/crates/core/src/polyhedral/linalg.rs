//! Exact rational linear algebra for small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type RatVec = Vec<Q>;
pub type LatticeVec = Vec<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rat(v: &[i64]) -> RatVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (&x, y)| acc + y * BigInt::from(x))
}

pub fn add(a: &[Q], b: &[Q]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_integer())
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(a: &[Q]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Positive multiple of `a` with coprime integer entries; `None` for zero.
pub fn primitive(a: &[Q]) -> Option<LatticeVec> {
    if is_zero(a) {
        return None;
    }
    let l = denominator_lcm(a);
    let ints: Vec<BigInt> = a.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.iter().map(|x| (x / &g).to_i64().expect("lattice coordinate overflow")).collect())
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [RatVec]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &m[r][j] * &f;
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[RatVec], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    debug_assert!(m.iter().all(|r| r.len() == dim));
    rref(&mut m).len()
}

/// Basis of `{x : row·x = 0 for all rows}`.
pub fn nullspace(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); dim];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Canonical integer basis of the span of `vecs`: RREF rows scaled to primitive.
pub fn canonical_span(vecs: &[RatVec], dim: usize) -> Vec<LatticeVec> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = vecs.to_vec();
    let k = rref(&mut m).len();
    let mut out: Vec<LatticeVec> = m[..k].iter().map(|r| primitive(r).unwrap()).collect();
    debug_assert!(out.iter().all(|r| r.len() == dim));
    out.sort();
    out
}

/// Whether `x` is a rational combination of `basis`.
pub fn in_span(basis: &[RatVec], x: &[Q], dim: usize) -> bool {
    let r = rank(basis, dim);
    let mut ext = basis.to_vec();
    ext.push(x.to_vec());
    rank(&ext, dim) == r
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
