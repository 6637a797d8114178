//! Symmetric functions over exact rationals.
//!
//! Polynomials in the roots `b1..bm` are [`MultiPoly`]s; polynomials in the
//! elementary symmetric functions `s1..sk` (with `s_j` of weight `j`) are
//! [`GradedPoly`]s.

mod graded;
mod poly;

pub use graded::{evaluate, substitute, GradedPoly};
pub use poly::{Exponents, MultiPoly};

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

pub const ROOT_PREFIX: &str = "b";
pub const ELEMENTARY_PREFIX: &str = "s";

pub fn root_vars(m: usize) -> Vec<String> {
    MultiPoly::indexed_vars(ROOT_PREFIX, m)
}

/// `σ_j(b1..bm)`; `σ_0 = 1`.
pub fn elementary_symmetric(m: usize, j: usize) -> Result<MultiPoly> {
    elementary_symmetric_in(root_vars(m), j)
}

/// `σ_j` over an arbitrary generator list.
pub fn elementary_symmetric_in(vars: Vec<String>, j: usize) -> Result<MultiPoly> {
    let m = vars.len();
    if j > m {
        return Err(Error::SymmetricIndex { m, j });
    }
    let mut out = MultiPoly::zero(vars);
    let mut chosen = vec![0u32; m];
    fn walk(out: &mut MultiPoly, chosen: &mut Vec<u32>, start: usize, left: usize) {
        if left == 0 {
            out.add_term(chosen.clone(), Q::one());
            return;
        }
        for i in start..=chosen.len() - left {
            chosen[i] = 1;
            walk(out, chosen, i + 1, left - 1);
            chosen[i] = 0;
        }
    }
    walk(&mut out, &mut chosen, 0, j);
    Ok(out)
}

/// `Σ b_i^k` in `m` roots.
pub fn power_sum(m: usize, k: u32) -> MultiPoly {
    let vars = root_vars(m);
    let terms = (0..m).map(|i| {
        let mut e = vec![0; m];
        e[i] = k;
        (e, Q::one())
    });
    MultiPoly::from_terms(vars, terms).expect("arity matches")
}

fn elementary_generators(k: usize) -> (Vec<String>, Vec<u32>) {
    GradedPoly::indexed_generators(ELEMENTARY_PREFIX, k, 1)
}

/// The Newton polynomial `ν_k(s1..sk)` expressing the power sum `Σ b_i^k`
/// through elementary symmetric functions:
///
/// `ν_k = s1 ν_{k−1} − s2 ν_{k−2} + … + (−1)^{k−2} s_{k−1} ν_1 + (−1)^{k−1} k s_k`.
///
/// Panics if `k == 0`.
pub fn newton_polynomial(k: usize) -> GradedPoly {
    assert!(k >= 1, "Newton polynomials start at k = 1");
    let (vars, weights) = elementary_generators(k);
    let s: Vec<MultiPoly> = (0..k).map(|i| MultiPoly::var(vars.clone(), i)).collect();
    let mut nu: Vec<MultiPoly> = Vec::with_capacity(k);
    for n in 1..=k {
        let sign = |i: usize| if i % 2 == 1 { Q::one() } else { -Q::one() };
        let mut acc = s[n - 1].scale(&(sign(n) * q(n as i64)));
        for i in 1..n {
            acc = &acc + &(&s[i - 1] * &nu[n - i - 1]).scale(&sign(i));
        }
        nu.push(acc);
    }
    GradedPoly::new(nu.pop().expect("k >= 1"), weights).expect("weights match")
}

/// Expands a polynomial in `s1..sm` by `s_j ↦ σ_j(b1..bm)`.
pub fn expand_elementary(p: &GradedPoly, m: usize) -> Result<MultiPoly> {
    let n = p.generators().len();
    let mut images = Vec::with_capacity(n);
    for j in 1..=n {
        images.push(if j <= m {
            elementary_symmetric(m, j)?
        } else {
            MultiPoly::zero(root_vars(m))
        });
    }
    if n == 0 {
        return Ok(MultiPoly::constant(root_vars(m), p.poly().constant_term()));
    }
    p.poly().substitute(&images)
}

/// Writes a symmetric polynomial in `m` generators as the unique polynomial
/// in `s1..sm`, by repeated elimination of the lexicographically leading
/// term `c·b^a` (with `a1 ≥ a2 ≥ … ≥ am`) against
/// `c·s1^{a1−a2} s2^{a2−a3} ⋯ sm^{am}`.
pub fn reduce_to_elementary(p: &MultiPoly) -> Result<GradedPoly> {
    if let Some((i, j)) = p.symmetry_violation() {
        return Err(Error::NotSymmetric(i, j));
    }
    let m = p.nvars();
    let (vars, weights) = elementary_generators(m);
    let sigmas: Vec<MultiPoly> = (1..=m)
        .map(|j| elementary_symmetric_in(p.vars().to_vec(), j))
        .collect::<Result<_>>()?;

    let mut rest = p.clone();
    let mut out = MultiPoly::zero(vars);
    while let Some((lead, c)) = rest.leading_term() {
        let lead = lead.clone();
        let c = c.clone();
        let mut exps = vec![0u32; m];
        for j in 0..m {
            let next = if j + 1 < m { lead[j + 1] } else { 0 };
            if lead[j] < next {
                return Err(Error::Invariant(format!(
                    "leading exponent {lead:?} of a symmetric polynomial is not non-increasing"
                )));
            }
            exps[j] = lead[j] - next;
        }
        let mut expansion = MultiPoly::constant(p.vars().to_vec(), c.clone());
        for (j, &k) in exps.iter().enumerate() {
            if k > 0 {
                expansion = &expansion * &sigmas[j].pow(k);
            }
        }
        rest = &rest - &expansion;
        out.add_term(exps, c);
    }
    GradedPoly::new(out, weights)
}
