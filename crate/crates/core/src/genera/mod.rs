//! The L-genus and the Chern character.
//!
//! Bernoulli numbers follow Hirzebruch's indexing: `B_1 = 1/6`,
//! `B_2 = 1/30`, `B_3 = 1/42`, … are all positive. In the modern
//! convention these are `|B_2|, |B_4|, |B_6|, …`, i.e. `B_k = |B'_{2k}|`.
//!
//! `√z` never appears: series in `√z` are built as even series in `w`
//! and read back through `z = w²`.

mod series;

pub use series::PowerSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, q, ratio, sign_power, Q};
use crate::symfun::{reduce_to_elementary, root_vars, GradedPoly, MultiPoly};

/// Working order in `w` for a result needed up to `z^order`.
fn working_order(order: usize) -> usize {
    2 * order + 2
}

/// `tanh(w)/w` as an even series in `w`, exact through `w^order`.
pub fn tanh_over_w(order: usize) -> PowerSeries {
    let sinh_w = PowerSeries::sinh(order + 1)
        .div_by_variable()
        .expect("sinh has zero constant term");
    sinh_w
        .div(&PowerSeries::cosh(order))
        .expect("cosh has unit constant term")
        .truncate(order)
}

/// `Q(z) = √z / tanh √z`, computed as the reciprocal of `tanh(w)/w` with `w² = z`.
pub fn q_series(order: usize) -> PowerSeries {
    tanh_over_w(working_order(order))
        .reciprocal()
        .expect("tanh(w)/w has unit constant term")
        .even_to_z()
        .expect("w/tanh(w) is even")
        .truncate(order)
}

/// `(−1)^{k−1} 2^{2k} / (2k)!`, the factor relating `B_k` to the `z^k` coefficient of `Q`.
fn q_prefactor(k: u32) -> Q {
    sign_power(k - 1) * Q::new(BigInt::one() << (2 * k), factorial(2 * k))
}

/// `B_1..B_kmax` extracted from one `Q`-series.
pub fn bernoulli_numbers(k_max: u32) -> Vec<Q> {
    let qs = q_series(k_max as usize);
    (1..=k_max)
        .map(|k| {
            let b = qs.coeff(k as usize) / q_prefactor(k);
            assert!(b.is_positive(), "B_{k} = {b} is not positive");
            b
        })
        .collect()
}

/// `B_k` in Hirzebruch's convention (`B_1 = 1/6`). Panics if `k == 0`.
pub fn bernoulli(k: u32) -> Q {
    assert!(k >= 1, "Bernoulli numbers are indexed from 1");
    bernoulli_numbers(k).pop().expect("k >= 1")
}

/// `s_0 = 1`, `s_k = 2^{2k}(2^{2k−1} − 1) B_k / (2k)!`.
pub fn s_coefficient(k: u32) -> Q {
    if k == 0 {
        return Q::one();
    }
    let two_2k = BigInt::one() << (2 * k);
    let two_2k1 = (BigInt::one() << (2 * k - 1)) - BigInt::one();
    Q::new(two_2k * two_2k1, factorial(2 * k)) * bernoulli(k)
}

/// `½ + ½ · 2√z / sinh(2√z)` as a series in `z`.
///
/// Its `z^k` coefficient is `(−1)^k s_k`; the unsigned `s_k` come from the
/// same expression with `sin` in place of `sinh`.
pub fn s_generating_series(order: usize) -> PowerSeries {
    let n = working_order(order);
    let sinh_over = PowerSeries::sinh(n + 1)
        .div_by_variable()
        .expect("sinh has zero constant term")
        .scale_variable(&q(2));
    let half = ratio(1, 2);
    sinh_over
        .reciprocal()
        .expect("unit constant term")
        .scale(&half)
        .add(&PowerSeries::constant(n, half))
        .even_to_z()
        .expect("even series")
        .truncate(order)
}

/// `L_k(p_1..p_k)` computed from `m ≥ k` formal roots.
pub fn l_polynomial_in(k: usize, m: usize) -> Result<GradedPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "L-polynomials start at k = 1".into(),
        ));
    }
    if m < k {
        return Err(Error::InvalidArgument(format!(
            "L_{k} needs at least {k} formal roots, got {m}"
        )));
    }
    let qs = q_series(k);
    let vars = root_vars(m);
    // by_degree[d]: coefficient of z^d in the partial product
    let mut by_degree: Vec<MultiPoly> = (0..=k).map(|_| MultiPoly::zero(vars.clone())).collect();
    by_degree[0] = MultiPoly::one(vars.clone());
    for i in 0..m {
        let root = MultiPoly::var(vars.clone(), i);
        let powers: Vec<MultiPoly> = (0..=k)
            .map(|j| root.pow(j as u32).scale(qs.coeff(j)))
            .collect();
        let mut next: Vec<MultiPoly> = (0..=k).map(|_| MultiPoly::zero(vars.clone())).collect();
        for (d, slot) in next.iter_mut().enumerate() {
            for j in 0..=d {
                if by_degree[d - j].is_zero() {
                    continue;
                }
                *slot = &*slot + &(&by_degree[d - j] * &powers[j]);
            }
        }
        by_degree = next;
    }
    let reduced = reduce_to_elementary(&by_degree[k])?;
    let (names, weights) = GradedPoly::indexed_generators("p", k, 1);
    let poly = reduced.poly().restrict_vars(k)?.with_vars(names)?;
    GradedPoly::new(poly, weights)
}

/// The Hirzebruch L-polynomial `L_k(p_1..p_k)`, with `p_i` of weight `i`.
pub fn l_polynomial(k: usize) -> Result<GradedPoly> {
    l_polynomial_in(k, k)
}

/// `ch(E) = rank + Σ_{k≥1} ν_k(c_1..c_k)/k!`, truncated at `max_weight`.
///
/// `chern` lists `c_1..c_rank` as graded polynomials over one common
/// generator list; classes must have no constant term.
pub fn chern_character(rank: usize, chern: &[GradedPoly], max_weight: u32) -> Result<GradedPoly> {
    if chern.len() < rank {
        return Err(Error::MissingClass(chern.len() + 1));
    }
    if chern.len() > rank {
        return Err(Error::ClassBeyondRank {
            index: chern.len(),
            rank,
        });
    }
    let Some(first) = chern.first() else {
        return GradedPoly::new(MultiPoly::zero(Vec::new()), Vec::new());
    };
    let (vars, weights) = (first.generators().to_vec(), first.weights().to_vec());
    for (i, c) in chern.iter().enumerate() {
        if c.generators() != vars.as_slice() || c.weights() != weights.as_slice() {
            return Err(Error::GeneratorMismatch);
        }
        if !c.poly().constant_term().is_zero() {
            return Err(Error::InvalidArgument(format!(
                "c_{} has a nonzero degree-0 part",
                i + 1
            )));
        }
    }
    // Newton recursion on the classes themselves, dropping weight above max_weight
    // at each step; every c_j has weight >= 1, so nu_k only matters for k <= max_weight
    let truncate = |p: MultiPoly| -> Result<MultiPoly> {
        Ok(GradedPoly::new(p, weights.clone())?
            .truncate(max_weight)
            .into_poly())
    };
    let zero = MultiPoly::zero(vars.clone());
    let class = |j: usize| chern.get(j - 1).map_or(&zero, |c| c.poly());
    let mut total = MultiPoly::constant(vars.clone(), q(rank as i64));
    let mut nu: Vec<MultiPoly> = Vec::with_capacity(max_weight as usize);
    for k in 1..=max_weight as usize {
        let mut acc = class(k).scale(&(sign_power(k as u32 - 1) * q(k as i64)));
        for i in 1..k {
            let (s_i, prev) = (class(i), &nu[k - i - 1]);
            if s_i.is_zero() || prev.is_zero() {
                continue;
            }
            acc = &acc + &truncate(s_i * prev)?.scale(&sign_power(i as u32 - 1));
        }
        total = &total + &acc.scale(&Q::new(One::one(), factorial(k as u32)));
        nu.push(acc);
    }
    Ok(GradedPoly::new(total, weights)?.truncate(max_weight))
}
