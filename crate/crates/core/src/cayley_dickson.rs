//! Exact arithmetic in the Cayley–Dickson tower.
//!
//! Level `n` has dimension `2^n`: level 0 is the rationals, 1 the complex
//! numbers, 2 the quaternions, 3 the octonions, 4 the sedenions. An element
//! at level `n` is split into halves `(a1, a2)` of level `n - 1` and
//! multiplied with
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 - b2* a2,  b2 a1 + a2 b1*)
//! ```
//!
//! The basis is `e_0 = 1, e_1, ..., e_{2^n - 1}`; `e_i` for `i < 2^{n-1}`
//! lies in the first half, the rest are `(0, e_{i - 2^{n-1}})`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_q, random_q, serde_q_vec, Q};

/// Highest level with a cached multiplication table.
const MAX_TABLE_LEVEL: u32 = 6;

/// Cost guard for exhaustive probes.
pub const MAX_PROBE_LEVEL: u32 = 5;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CDElement {
    level: u32,
    coeffs: Vec<Q>,
}

impl CDElement {
    pub fn new(level: u32, coeffs: Vec<Q>) -> Result<Self> {
        let expected = 1usize << level;
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount {
                level,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Self { level, coeffs })
    }

    pub fn from_ints(level: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            level,
            coeffs.iter().map(|&c| crate::rational::q(c)).collect(),
        )
    }

    pub fn zero(level: u32) -> Self {
        Self {
            level,
            coeffs: vec![Q::zero(); 1 << level],
        }
    }

    pub fn one(level: u32) -> Self {
        Self::from_real(level, Q::one())
    }

    pub fn from_real(level: u32, r: Q) -> Self {
        let mut x = Self::zero(level);
        x.coeffs[0] = r;
        x
    }

    /// The basis element `e_index`.
    ///
    /// Panics if `index >= 2^level`.
    pub fn basis(level: u32, index: usize) -> Self {
        assert!(
            index < 1 << level,
            "basis index {index} out of range for level {level}"
        );
        let mut x = Self::zero(level);
        x.coeffs[index] = Q::one();
        x
    }

    /// Builds an imaginary element from its `2^level - 1` imaginary coordinates.
    pub fn imaginary(level: u32, coords: Vec<Q>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(1 << level);
        coeffs.push(Q::zero());
        coeffs.extend(coords);
        Self::new(level, coeffs)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Pads with zeros into a higher level of the tower.
    pub fn embed(&self, target_level: u32) -> Result<Self> {
        if target_level < self.level {
            return Err(Error::InvalidEmbedding {
                from: self.level,
                to: target_level,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << target_level, Q::zero());
        Ok(Self {
            level: target_level,
            coeffs,
        })
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        cd_multiply(self, other)
    }

    pub fn neg(&self) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn dot(&self, other: &Self) -> Result<Q> {
        self.check_level(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        Self {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(level: u32, rng: &mut R, bound: i64, den_bound: i64) -> Self {
        Self {
            level,
            coeffs: (0..1usize << level)
                .map(|_| random_q(rng, bound, den_bound))
                .collect(),
        }
    }

    pub fn random_imaginary<R: Rng + ?Sized>(
        level: u32,
        rng: &mut R,
        bound: i64,
        den_bound: i64,
    ) -> Self {
        let mut x = Self::random(level, rng, bound, den_bound);
        x.coeffs[0] = Q::zero();
        x
    }
}

impl fmt::Debug for CDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CDElement[{}](", self.level)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_q(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c < &Q::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", format_q(&mag))?,
                (_, true) => write!(f, "e{i}")?,
                (_, false) => write!(f, "{}*e{i}", format_q(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CDElementRepr {
    level: u32,
    #[serde(with = "serde_q_vec")]
    coeffs: Vec<Q>,
}

impl Serialize for CDElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CDElementRepr {
            level: self.level,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CDElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CDElementRepr::deserialize(d)?;
        CDElement::new(repr.level, repr.coeffs).map_err(serde::de::Error::custom)
    }
}

fn conj_slice(a: &[Q]) -> Vec<Q> {
    a.iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.clone() } else { -c })
        .collect()
}

/// Direct evaluation of the doubling rule. Used to build the cached tables
/// and for levels above [`MAX_TABLE_LEVEL`].
pub fn multiply_recursive(a: &[Q], b: &[Q]) -> Vec<Q> {
    debug_assert_eq!(a.len(), b.len());
    if a.len() == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = a.len() / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let b1c = conj_slice(b1);
    let b2c = conj_slice(b2);

    let first = multiply_recursive(a1, b1);
    let second = multiply_recursive(&b2c, a2);
    let third = multiply_recursive(b2, a1);
    let fourth = multiply_recursive(a2, &b1c);

    let mut out = Vec::with_capacity(a.len());
    out.extend(first.into_iter().zip(second).map(|(x, y)| x - y));
    out.extend(third.into_iter().zip(fourth).map(|(x, y)| x + y));
    out
}

/// Signed basis products `e_i e_j = sign * e_k`, indexed by `i * dim + j`.
struct MulTable {
    entries: Vec<(usize, bool)>,
}

impl MulTable {
    fn build(level: u32) -> Self {
        let dim = 1usize << level;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = multiply_recursive(
                    CDElement::basis(level, i).coeffs(),
                    CDElement::basis(level, j).coeffs(),
                );
                let (k, c) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, c)| !c.is_zero())
                    .expect("basis products are nonzero");
                entries.push((k, c.is_one()));
            }
        }
        Self { entries }
    }

    fn get(level: u32) -> &'static MulTable {
        static TABLES: [OnceLock<MulTable>; MAX_TABLE_LEVEL as usize + 1] =
            [const { OnceLock::new() }; MAX_TABLE_LEVEL as usize + 1];
        TABLES[level as usize].get_or_init(|| MulTable::build(level))
    }
}

/// Signed basis product: `e_i e_j = ±e_k`, returned as `(k, positive)`.
pub fn basis_product(level: u32, i: usize, j: usize) -> (usize, bool) {
    let dim = 1usize << level;
    if level <= MAX_TABLE_LEVEL {
        MulTable::get(level).entries[i * dim + j]
    } else {
        let prod = multiply_recursive(
            CDElement::basis(level, i).coeffs(),
            CDElement::basis(level, j).coeffs(),
        );
        let (k, c) = prod.iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
        (k, c.is_one())
    }
}

pub fn cd_multiply(a: &CDElement, b: &CDElement) -> Result<CDElement> {
    a.check_level(b)?;
    let level = a.level;
    if level > MAX_TABLE_LEVEL {
        return CDElement::new(level, multiply_recursive(&a.coeffs, &b.coeffs));
    }
    let dim = a.dim();
    let table = MulTable::get(level);
    let mut out = vec![Q::zero(); dim];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let (k, positive) = table.entries[i * dim + j];
            let term = ai * bj;
            if positive {
                out[k] += term;
            } else {
                out[k] -= term;
            }
        }
    }
    Ok(CDElement { level, coeffs: out })
}

pub fn conjugate(a: &CDElement) -> CDElement {
    CDElement {
        level: a.level,
        coeffs: conj_slice(&a.coeffs),
    }
}

pub fn norm_sq(a: &CDElement) -> Q {
    a.coeffs.iter().map(|c| c * c).sum()
}

/// `(uv)w - u(vw)`.
pub fn associator(u: &CDElement, v: &CDElement, w: &CDElement) -> Result<CDElement> {
    u.check_level(v)?;
    u.check_level(w)?;
    let left = cd_multiply(&cd_multiply(u, v)?, w)?;
    let right = cd_multiply(u, &cd_multiply(v, w)?)?;
    left.try_sub(&right)
}

pub fn real_part(a: &CDElement) -> Q {
    a.coeffs[0].clone()
}

pub fn imaginary_part(a: &CDElement) -> CDElement {
    let mut x = a.clone();
    x.coeffs[0] = Q::zero();
    x
}

/// A triple whose associator is nonzero although alternativity says it
/// should vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatorWitness {
    /// Which identity fails: `"[u,u,v]"`, `"[u,v,u]"` or `"[v,u,u]"`.
    pub pattern: String,
    pub u: CDElement,
    pub v: CDElement,
    pub w: CDElement,
    pub associator: CDElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternativityReport {
    pub level: u32,
    pub alternative: bool,
    pub basis_triples_checked: usize,
    pub pair_sums_checked: usize,
    pub samples_checked: usize,
    pub witness: Option<AssociatorWitness>,
}

const PATTERNS: [&str; 3] = ["[u,u,v]", "[u,v,u]", "[v,u,u]"];

fn repeated_triple(
    pattern: usize,
    u: &CDElement,
    v: &CDElement,
) -> (CDElement, CDElement, CDElement) {
    match pattern {
        0 => (u.clone(), u.clone(), v.clone()),
        1 => (u.clone(), v.clone(), u.clone()),
        _ => (v.clone(), u.clone(), u.clone()),
    }
}

fn check_pair(u: &CDElement, v: &CDElement) -> Option<AssociatorWitness> {
    (0..PATTERNS.len()).find_map(|p| {
        let (a, b, c) = repeated_triple(p, u, v);
        let assoc = associator(&a, &b, &c).expect("equal levels");
        (!assoc.is_zero()).then(|| AssociatorWitness {
            pattern: PATTERNS[p].to_string(),
            u: a,
            v: b,
            w: c,
            associator: assoc,
        })
    })
}

/// Checks whether the associator alternates at `level`.
///
/// The search runs in a fixed order and stops at the first failure:
/// every basis triple with a repeated argument, then `u = e_i ± e_j`
/// against every basis `v`, then `samples` random pairs drawn from `seed`.
pub fn probe_alternative(level: u32, samples: usize, seed: u64) -> Result<AlternativityReport> {
    if level > MAX_PROBE_LEVEL {
        return Err(Error::CostGuard {
            level,
            max: MAX_PROBE_LEVEL,
        });
    }
    let dim = 1usize << level;
    let mut report = AlternativityReport {
        level,
        alternative: true,
        basis_triples_checked: 0,
        pair_sums_checked: 0,
        samples_checked: 0,
        witness: None,
    };
    let fail = |mut report: AlternativityReport, w: AssociatorWitness| {
        report.alternative = false;
        report.witness = Some(w);
        Ok(report)
    };

    for i in 0..dim {
        for j in 0..dim {
            report.basis_triples_checked += PATTERNS.len();
            if let Some(w) = check_pair(&CDElement::basis(level, i), &CDElement::basis(level, j)) {
                return fail(report, w);
            }
        }
    }

    for i in 1..dim {
        for j in i + 1..dim {
            for sign in [true, false] {
                let ej = CDElement::basis(level, j);
                let ej = if sign { ej } else { ej.neg() };
                let u = CDElement::basis(level, i).try_add(&ej)?;
                for k in 1..dim {
                    report.pair_sums_checked += 1;
                    if let Some(w) = check_pair(&u, &CDElement::basis(level, k)) {
                        return fail(report, w);
                    }
                }
            }
        }
    }

    let mut rng = crate::sampling::rng(seed, 0);
    for _ in 0..samples {
        let u = CDElement::random(level, &mut rng, 5, 3);
        let v = CDElement::random(level, &mut rng, 5, 3);
        report.samples_checked += 1;
        if let Some(w) = check_pair(&u, &v) {
            return fail(report, w);
        }
    }
    Ok(report)
}

/// Searches `a = e_i ± e_j`, `b = e_k ± e_l` for a pair violating
/// `|ab|^2 = |a|^2 |b|^2`. Returns the first pair found.
pub fn find_composition_counterexample(level: u32) -> Result<Option<(CDElement, CDElement)>> {
    if level > MAX_PROBE_LEVEL {
        return Err(Error::CostGuard {
            level,
            max: MAX_PROBE_LEVEL,
        });
    }
    let dim = 1usize << level;
    let mut candidates = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for sign in [true, false] {
                let ej = CDElement::basis(level, j);
                let ej = if sign { ej } else { ej.neg() };
                candidates.push(CDElement::basis(level, i).try_add(&ej)?);
            }
        }
    }
    for a in &candidates {
        for b in &candidates {
            let prod = cd_multiply(a, b)?;
            if norm_sq(&prod) != norm_sq(a) * norm_sq(b) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, ratio};

    fn e(level: u32, i: usize) -> CDElement {
        CDElement::basis(level, i)
    }

    /// Hamilton's table with i = e1, j = e2, k = e3.
    const QUATERNION_TABLE: [[(usize, i8); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];

    #[test]
    fn quaternion_products_match_hamilton_table() {
        for (i, row) in QUATERNION_TABLE.iter().enumerate() {
            for (j, &(k, s)) in row.iter().enumerate() {
                let expected = e(2, k).scale(&q(s as i64));
                assert_eq!(
                    cd_multiply(&e(2, i), &e(2, j)).unwrap(),
                    expected,
                    "e{i} e{j}"
                );
            }
        }
    }

    #[test]
    fn e1_e2_anticommute_in_quaternions() {
        assert_eq!(cd_multiply(&e(2, 1), &e(2, 2)).unwrap(), e(2, 3));
        assert_eq!(cd_multiply(&e(2, 2), &e(2, 1)).unwrap(), e(2, 3).neg());
    }

    #[test]
    fn unit_is_two_sided() {
        let mut rng = crate::sampling::rng(7, 0);
        for level in 0..=5 {
            let x = CDElement::random(level, &mut rng, 9, 4);
            let one = CDElement::one(level);
            assert_eq!(cd_multiply(&one, &x).unwrap(), x);
            assert_eq!(cd_multiply(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let lhs = cd_multiply(&e(3, 1), &cd_multiply(&e(3, 2), &e(3, 4)).unwrap()).unwrap();
        let rhs = cd_multiply(&cd_multiply(&e(3, 1), &e(3, 2)).unwrap(), &e(3, 4)).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn level_mismatch_names_both_levels() {
        let err = cd_multiply(&e(2, 1), &e(3, 1)).unwrap_err();
        assert_eq!(err, Error::LevelMismatch { left: 2, right: 3 });
        assert!(err.to_string().contains('2') && err.to_string().contains('3'));
        assert!(associator(&e(3, 1), &e(3, 2), &e(2, 1)).is_err());
    }

    #[test]
    fn table_agrees_with_recursion() {
        let mut rng = crate::sampling::rng(11, 0);
        for level in 0..=MAX_TABLE_LEVEL.min(5) {
            for _ in 0..5 {
                let a = CDElement::random(level, &mut rng, 7, 3);
                let b = CDElement::random(level, &mut rng, 7, 3);
                assert_eq!(
                    cd_multiply(&a, &b).unwrap().coeffs(),
                    multiply_recursive(a.coeffs(), b.coeffs()).as_slice()
                );
            }
        }
    }

    #[test]
    fn conjugation_basics() {
        assert_eq!(conjugate(&CDElement::one(3)), CDElement::one(3));
        assert_eq!(conjugate(&e(3, 1)), e(3, 1).neg());
    }

    #[test]
    fn norms() {
        assert_eq!(norm_sq(&CDElement::zero(3)), q(0));
        let x = CDElement::from_ints(2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(norm_sq(&x), q(30));
    }

    #[test]
    fn real_and_imaginary_parts() {
        assert!(imaginary_part(&CDElement::one(3)).is_zero());
        let sq = cd_multiply(&e(3, 1), &e(3, 1)).unwrap();
        assert_eq!(real_part(&sq), q(-1));
        let x = CDElement::new(2, vec![ratio(1, 2), q(1), q(0), q(-3)]).unwrap();
        let back = CDElement::from_real(2, real_part(&x))
            .try_add(&imaginary_part(&x))
            .unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn quaternion_associator_vanishes_on_basis() {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(associator(&e(2, i), &e(2, j), &e(2, k)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn octonion_associator_examples() {
        assert!(associator(&e(3, 1), &e(3, 1), &e(3, 4)).unwrap().is_zero());
        assert!(!associator(&e(3, 1), &e(3, 2), &e(3, 4)).unwrap().is_zero());
    }

    #[test]
    fn wrong_coefficient_count_rejected() {
        assert!(matches!(
            CDElement::new(2, vec![q(1); 3]),
            Err(Error::CoefficientCount {
                expected: 4,
                got: 3,
                ..
            })
        ));
    }

    #[test]
    fn embed_pads_with_zeros() {
        let x = e(2, 3).embed(3).unwrap();
        assert_eq!(x, e(3, 3));
        assert!(e(3, 1).embed(2).is_err());
        // products of embedded quaternions stay in the quaternion half
        let p = cd_multiply(&e(2, 1).embed(3).unwrap(), &e(2, 2).embed(3).unwrap()).unwrap();
        assert_eq!(p, e(3, 3));
    }

    #[test]
    fn probe_levels() {
        assert!(probe_alternative(2, 20, 0).unwrap().alternative);
        assert!(probe_alternative(3, 20, 0).unwrap().alternative);
        let report = probe_alternative(4, 0, 0).unwrap();
        assert!(!report.alternative);
        let w = report.witness.unwrap();
        assert_eq!(associator(&w.u, &w.v, &w.w).unwrap(), w.associator);
        assert!(!w.associator.is_zero());
        assert!(matches!(
            probe_alternative(6, 0, 0),
            Err(Error::CostGuard { level: 6, max: 5 })
        ));
    }

    #[test]
    fn json_shape() {
        let x = CDElement::new(1, vec![ratio(1, 2), q(-3)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"level":1,"coeffs":["1/2","-3"]}"#);
        let back: CDElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CDElement>(r#"{"level":1,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let x = CDElement::new(2, vec![q(1), q(-1), ratio(1, 2), q(0)]).unwrap();
        assert_eq!(x.to_string(), "1 - e1 + 1/2*e2");
        assert_eq!(CDElement::zero(1).to_string(), "0");
    }
}
