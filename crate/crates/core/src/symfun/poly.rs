use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_q, Q};

pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
/// Arithmetic operators require both sides to share the same generator list
/// and panic otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Q>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Q) -> Self {
        let mut p = Self::zero(vars);
        let n = p.nvars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Q::one())
    }

    /// The generator `vars[index]`.
    pub fn var(vars: Vec<String>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exps, Q::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Exponents, Q)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != p.nvars() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for {} generators",
                    exps.len(),
                    p.nvars()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// Generator names `prefix1, prefix2, …, prefixN`.
    pub fn indexed_vars(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different generators"
        );
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.vars == other.vars
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest term in lexicographic order of exponent vectors.
    pub fn leading_term(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] -= 1;
            out.add_term(e2, c * Q::from_integer(e[index].into()));
        }
        out
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} generators",
                point.len(),
                self.nvars()
            )));
        }
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces generator `i` by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} generators",
                images.len(),
                self.nvars()
            )));
        }
        let Some(target) = images.first().map(|p| p.vars.clone()) else {
            // no generators: constant polynomial over the empty ring
            return Ok(self.clone());
        };
        if images.iter().any(|p| p.vars != target) {
            return Err(Error::GeneratorMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target.clone()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exchanges generators `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i, j);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// First adjacent transposition that changes the polynomial, if any.
    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        (0..self.nvars().saturating_sub(1))
            .find_map(|i| (self.swap_vars(i, i + 1) != *self).then_some((i, i + 1)))
    }

    /// Reinterprets the same exponent vectors over renamed generators.
    pub fn with_vars(&self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.nvars() {
            return Err(Error::GeneratorMismatch);
        }
        Ok(Self {
            vars,
            terms: self.terms.clone(),
        })
    }

    /// Keeps only the first `n` generators; fails if a dropped one occurs.
    pub fn restrict_vars(&self, n: usize) -> Result<Self> {
        let vars = self.vars[..n].to_vec();
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            if e[n..].iter().any(|&k| k > 0) {
                return Err(Error::InvalidArgument(format!(
                    "generator beyond the first {n} occurs"
                )));
            }
            out.add_term(e[..n].to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Terms in display order: by `grade` descending, then lexicographically descending.
    pub(crate) fn ordered_terms(&self, grade: impl Fn(&[u32]) -> u32) -> Vec<(&Exponents, &Q)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| grade(b).cmp(&grade(a)).then_with(|| b.cmp(a)));
        ts
    }

    pub(crate) fn render(&self, grade: impl Fn(&[u32]) -> u32, latex: bool) -> String {
        let terms = self.ordered_terms(grade);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = render_monomial(&self.vars, e, latex);
            let coeff = if latex { latex_q(&mag) } else { format_q(&mag) };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&mono),
                (false, false) if latex => {
                    out.push_str(&coeff);
                    out.push(' ');
                    out.push_str(&mono);
                }
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(|e| e.iter().sum(), true)
    }
}

fn latex_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

fn latex_var(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (stem, idx) = name.split_at(split);
    if idx.is_empty() {
        stem.to_string()
    } else {
        format!("{stem}_{{{idx}}}")
    }
}

fn render_monomial(vars: &[String], e: &[u32], latex: bool) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| match (latex, k) {
            (true, 1) => latex_var(v),
            (true, k) => format!("{}^{{{k}}}", latex_var(v)),
            (false, 1) => v.clone(),
            (false, k) => format!("{v}^{k}"),
        })
        .collect();
    parts.join(if latex { " " } else { "*" })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|e| e.iter().sum(), false))
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                #[allow(clippy::suspicious_arithmetic_impl)]
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;

            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, ratio};

    fn xy() -> (MultiPoly, MultiPoly) {
        let vars = vec!["x".to_string(), "y".to_string()];
        (MultiPoly::var(vars.clone(), 0), MultiPoly::var(vars, 1))
    }

    #[test]
    fn arithmetic_and_display() {
        let (x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        let p = &p.scale(&ratio(1, 3)) + &MultiPoly::constant(x.vars().to_vec(), q(2));
        assert_eq!(p.to_string(), "1/3*x^2 - 1/3*y^2 + 2");
        assert_eq!((&x - &x).to_string(), "0");
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn zero_coefficients_not_stored() {
        let (x, y) = xy();
        let p = &(&x + &y) - &y;
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn derivative_and_eval() {
        let (x, y) = xy();
        let p = &x.pow(3) * &y;
        assert_eq!(p.derivative(0), (&x.pow(2) * &y).scale(&q(3)));
        assert_eq!(p.evaluate(&[q(2), ratio(1, 2)]).unwrap(), q(4));
        assert!(p.evaluate(&[q(1)]).is_err());
    }

    #[test]
    fn substitution_composes() {
        let (x, y) = xy();
        let p = &x.pow(2) + &y;
        let s = p.substitute(&[&x + &y, x.clone()]).unwrap();
        assert_eq!(s, &(&x + &y).pow(2) + &x);
        let ident = p.substitute(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(ident, p);
    }

    #[test]
    fn symmetry_detection() {
        let (x, y) = xy();
        assert_eq!((&x * &y).symmetry_violation(), None);
        assert_eq!((&x.pow(2) + &y).symmetry_violation(), Some((0, 1)));
    }

    #[test]
    fn latex_rendering() {
        let vars = MultiPoly::indexed_vars("p", 2);
        let p1 = MultiPoly::var(vars.clone(), 0);
        let p2 = MultiPoly::var(vars, 1);
        let l2 = &p2.scale(&ratio(7, 45)) - &p1.pow(2).scale(&ratio(1, 45));
        assert_eq!(
            l2.to_latex(),
            "-\\frac{1}{45} p_{1}^{2} + \\frac{7}{45} p_{2}"
        );
    }

    #[test]
    #[should_panic(expected = "different generators")]
    fn mixing_rings_panics() {
        let (x, _) = xy();
        let z = MultiPoly::var(vec!["z".to_string()], 0);
        let _ = &x + &z;
    }
}
