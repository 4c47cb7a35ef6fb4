//! Base fields `Q`, `F_p` and `F_p(λ)` and their elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
    /// `F_p(λ)`, the rational function field in one variable over `F_p`.
    RationalFunctions(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn rational_functions(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseField::RationalFunctions(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic exponent: 1 for `Q`, otherwise the characteristic.
    pub fn char_exponent(&self) -> u64 {
        match *self {
            BaseField::Rationals => 1,
            BaseField::Prime(p) | BaseField::RationalFunctions(p) => p,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) | BaseField::RationalFunctions(p) => p,
        }
    }

    pub fn is_perfect(&self) -> bool {
        !matches!(self, BaseField::RationalFunctions(_))
    }

    pub fn zero(&self) -> Fe {
        self.from_i64(0)
    }

    pub fn one(&self) -> Fe {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Fe {
        match *self {
            BaseField::Rationals => Fe::Q(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => Fe::Fp { v: reduce_bigint(n, p), p },
            BaseField::RationalFunctions(p) => {
                Fe::Lam(LamFrac::from_poly(vec![reduce_bigint(n, p)], p))
            }
        }
    }

    /// Embeds an exact rational. Fails when the denominator vanishes in `k`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Fe> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// The transcendental `λ` of `F_p(λ)`.
    pub fn lambda(&self) -> Option<Fe> {
        match *self {
            BaseField::RationalFunctions(p) => Some(Fe::Lam(LamFrac::from_poly(vec![0, 1], p))),
            _ => None,
        }
    }

    /// Small nonzero elements used as sample points (roots tests, generic
    /// points): integers first, then `λ`-expressions when available.
    pub fn sample_elements(&self, count: usize) -> Vec<Fe> {
        let mut out = Vec::new();
        match *self {
            BaseField::Rationals => {
                let mut k = 0i64;
                while out.len() < count {
                    out.push(self.from_i64(k));
                    k = if k > 0 { -k } else { -k + 1 };
                }
            }
            BaseField::Prime(p) => {
                for v in 0..p.min(count as u64) {
                    out.push(self.from_i64(v as i64));
                }
            }
            BaseField::RationalFunctions(p) => {
                'outer: for deg in 0..4u32 {
                    for code in 0..p.pow(deg + 1) {
                        let mut c = Vec::with_capacity(deg as usize + 1);
                        let mut x = code;
                        for _ in 0..=deg {
                            c.push(x % p);
                            x /= p;
                        }
                        if c.last() == Some(&0) && deg > 0 {
                            continue;
                        }
                        out.push(Fe::Lam(LamFrac::from_poly(c, p)));
                        if out.len() >= count {
                            break 'outer;
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
            BaseField::RationalFunctions(p) => write!(f, "F_{p}(l)"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

// Dense polynomials in λ over F_p, ascending, no trailing zeros.

fn lp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn lp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    lp_trim(out)
}

fn lp_neg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&c| (p - c) % p).collect()
}

fn lp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    lp_trim(out)
}

fn lp_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    lp_trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

fn lp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let inv_lead = inv_mod(*b.last().unwrap(), p).unwrap();
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = mul_mod(rem[k + b.len() - 1], inv_lead, p);
        quot[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod(c, y, p)) % p;
            }
        }
    }
    (lp_trim(quot), lp_trim(rem))
}

fn lp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => lp_scale(a, inv_mod(l, p).unwrap(), p),
    }
}

fn lp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = lp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    lp_monic(&x, p)
}

fn lp_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Reduced fraction of polynomials in `λ` over `F_p` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LamFrac {
    num: Vec<u64>,
    den: Vec<u64>,
    p: u64,
}

impl LamFrac {
    fn from_poly(num: Vec<u64>, p: u64) -> Self {
        let num = lp_trim(num.into_iter().map(|c| c % p).collect());
        LamFrac { num, den: vec![1], p }
    }

    fn new(num: Vec<u64>, den: Vec<u64>, p: u64) -> Option<Self> {
        let den = lp_trim(den);
        if den.is_empty() {
            return None;
        }
        let num = lp_trim(num);
        if num.is_empty() {
            return Some(LamFrac { num, den: vec![1], p });
        }
        if den.len() == 1 {
            let inv = inv_mod(den[0], p).unwrap();
            return Some(LamFrac { num: lp_scale(&num, inv, p), den: vec![1], p });
        }
        let g = lp_gcd(&num, &den, p);
        let (num, _) = lp_divrem(&num, &g, p);
        let (den, _) = lp_divrem(&den, &g, p);
        let inv = inv_mod(*den.last().unwrap(), p).unwrap();
        Some(LamFrac { num: lp_scale(&num, inv, p), den: lp_scale(&den, inv, p), p })
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    fn is_poly(&self) -> bool {
        self.den.len() == 1
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            return LamFrac { num: lp_add(&self.num, &o.num, self.p), den: vec![1], p: self.p };
        }
        let p = self.p;
        let num = lp_add(&lp_mul(&self.num, &o.den, p), &lp_mul(&o.num, &self.den, p), p);
        LamFrac::new(num, lp_mul(&self.den, &o.den, p), p).unwrap()
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            return LamFrac { num: lp_mul(&self.num, &o.num, self.p), den: vec![1], p: self.p };
        }
        let p = self.p;
        LamFrac::new(lp_mul(&self.num, &o.num, p), lp_mul(&self.den, &o.den, p), p).unwrap()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_empty() {
            return None;
        }
        LamFrac::new(self.den.clone(), self.num.clone(), self.p)
    }

    fn neg(&self) -> Self {
        LamFrac { num: lp_neg(&self.num, self.p), den: self.den.clone(), p: self.p }
    }
}

fn fmt_lam_poly(a: &[u64]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => format!("{c}"),
            1 if c == 1 => "l".to_string(),
            1 => format!("{c}*l"),
            _ if c == 1 => format!("l^{i}"),
            _ => format!("{c}*l^{i}"),
        };
        parts.push(mono);
    }
    parts.join(" + ")
}

/// An element of one of the supported base fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fe {
    Q(BigRational),
    Fp { v: u64, p: u64 },
    Lam(LamFrac),
}

impl Fe {
    pub fn field(&self) -> BaseField {
        match self {
            Fe::Q(_) => BaseField::Rationals,
            Fe::Fp { p, .. } => BaseField::Prime(*p),
            Fe::Lam(l) => BaseField::RationalFunctions(l.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_zero(),
            Fe::Fp { v, .. } => *v == 0,
            Fe::Lam(l) => l.num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_one(),
            Fe::Fp { v, .. } => *v == 1,
            Fe::Lam(l) => l.num == [1] && l.den == [1],
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        match self {
            Fe::Q(q) => (!q.is_zero()).then(|| Fe::Q(q.recip())),
            Fe::Fp { v, p } => inv_mod(*v, *p).map(|v| Fe::Fp { v, p: *p }),
            Fe::Lam(l) => l.inv().map(Fe::Lam),
        }
    }

    pub fn checked_div(&self, o: &Fe) -> Result<Fe> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: i64) -> Option<Fe> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Some(acc)
    }

    /// The exact rational value for elements of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(q) => Some(q),
            _ => None,
        }
    }

    /// True when the element is written without a `λ` (i.e. lies in the prime field).
    pub fn is_prime_field_constant(&self) -> bool {
        match self {
            Fe::Lam(l) => l.num.len() <= 1 && l.den == [1],
            _ => true,
        }
    }

    fn same_field(&self, o: &Fe) {
        assert_eq!(self.field(), o.field(), "arithmetic across different base fields");
    }

    /// Canonical order used for sorting (not a field order).
    pub fn canonical_cmp(&self, o: &Fe) -> Ordering {
        match (self, o) {
            (Fe::Q(a), Fe::Q(b)) => a.cmp(b),
            (Fe::Fp { v: a, .. }, Fe::Fp { v: b, .. }) => a.cmp(b),
            (Fe::Lam(a), Fe::Lam(b)) => {
                lp_cmp(&a.den, &b.den).then_with(|| lp_cmp(&a.num, &b.num))
            }
            _ => self.field().cmp(&o.field()),
        }
    }

    /// Whether the printed form needs parentheses as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Fe::Q(q) => !q.is_integer(),
            Fe::Fp { .. } => false,
            Fe::Lam(l) => {
                l.den != [1] || l.num.iter().filter(|&&c| c != 0).count() > 1
            }
        }
    }

    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(self, Fe::Q(q) if q.is_negative())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.canonical_cmp(other))
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Fe::Fp { v, .. } => write!(f, "{v}"),
            Fe::Lam(l) => {
                let num = fmt_lam_poly(&l.num);
                if l.den == [1] {
                    write!(f, "{num}")
                } else {
                    let wrap = |s: String, simple: bool| if simple { s } else { format!("({s})") };
                    let nsimple = l.num.iter().filter(|&&c| c != 0).count() <= 1;
                    let dsimple = l.den.iter().filter(|&&c| c != 0).count() <= 1;
                    write!(f, "{}/{}", wrap(num, nsimple), wrap(fmt_lam_poly(&l.den), dsimple))
                }
            }
        }
    }
}

impl Add for &Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        self.same_field(o);
        match (self, o) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            (Fe::Fp { v: a, p }, Fe::Fp { v: b, .. }) => Fe::Fp { v: (a + b) % p, p: *p },
            (Fe::Lam(a), Fe::Lam(b)) => Fe::Lam(a.add(b)),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Q(a) => Fe::Q(-a),
            Fe::Fp { v, p } => Fe::Fp { v: (p - v) % p, p: *p },
            Fe::Lam(a) => Fe::Lam(a.neg()),
        }
    }
}

impl Sub for &Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        self + &(-o)
    }
}

impl Mul for &Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        self.same_field(o);
        match (self, o) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            (Fe::Fp { v: a, p }, Fe::Fp { v: b, .. }) => Fe::Fp { v: mul_mod(*a, *b, *p), p: *p },
            (Fe::Lam(a), Fe::Lam(b)) => Fe::Lam(a.mul(b)),
            _ => unreachable!(),
        }
    }
}

impl Div for &Fe {
    type Output = Fe;
    fn div(self, o: &Fe) -> Fe {
        self.checked_div(o).expect("division by zero in base field")
    }
}

/// Builds `num/den` in `F_p(λ)` from coefficient lists (ascending in `λ`).
pub fn lambda_fraction(num: &[u64], den: &[u64], p: u64) -> Result<Fe> {
    let reduce = |a: &[u64]| a.iter().map(|c| c % p).collect::<Vec<_>>();
    LamFrac::new(reduce(num), reduce(den), p).map(Fe::Lam).ok_or(Error::DivisionByZero)
}
