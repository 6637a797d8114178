#![allow(dead_code)]

use acstk_core::rational::{ratio, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Modern Bernoulli numbers `B'_0..B'_n` from `Σ_{j=0}^{n} C(n+1, j) B'_j = 0`.
pub fn modern_bernoulli(n: u32) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        b.push(-acc / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Hirzebruch-indexed `B_k = |B'_{2k}|` for `k = 1..=k_max`.
pub fn recurrence_bernoulli(k_max: u32) -> Vec<Q> {
    let modern = modern_bernoulli(2 * k_max);
    (1..=k_max as usize).map(|k| modern[2 * k].abs()).collect()
}

pub fn small_rational(n: i64, d: i64) -> Q {
    ratio(n, d.max(1))
}
