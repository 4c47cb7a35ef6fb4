//! Generalized binomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use super::field::{BaseField, Fe};

/// `n(n-1)…(n-j+1)/j!` for any integer `n`.
pub fn binom_general(n: &BigInt, j: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn binom_i64(n: i64, j: u64) -> BigInt {
    binom_general(&BigInt::from(n), j)
}

/// `C(n, j) mod p` for `n ≥ 0` via base-`p` digits.
pub fn lucas(mut n: u64, mut j: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while j > 0 {
        let (nd, jd) = (n % p, j % p);
        if jd > nd {
            return 0;
        }
        acc = acc * small_binom_mod(nd, jd, p) % p;
        n /= p;
        j /= p;
    }
    acc
}

fn small_binom_mod(n: u64, j: u64, p: u64) -> u64 {
    // n, j < p, so the exact value is small enough for u128 only for tiny p;
    // go through BigInt to stay exact.
    let b = binom_general(&BigInt::from(n), j) % BigInt::from(p);
    u64::try_from(b).unwrap()
}

/// The generalized binomial reduced into `k`. Nonnegative `n` in positive
/// characteristic uses Lucas' theorem; negative `n` goes through `Z`.
pub fn binom_in_field(n: i64, j: u64, k: BaseField) -> Fe {
    match k {
        BaseField::Rationals => k.from_bigint(&binom_i64(n, j)),
        BaseField::Prime(p) | BaseField::RationalFunctions(p) => {
            if n >= 0 {
                k.from_i64(lucas(n as u64, j, p) as i64)
            } else {
                k.from_bigint(&binom_i64(n, j))
            }
        }
    }
}
