use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::rational::Q;

/// A polynomial whose generators carry positive integer weights.
///
/// Weight schemes are chosen by the caller: `p_i ↦ i` or `4i`,
/// `c_i ↦ i` or `2i`, `σ_j ↦ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    poly: MultiPoly,
    weights: Vec<u32>,
}

impl GradedPoly {
    pub fn new(poly: MultiPoly, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != poly.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} generators",
                weights.len(),
                poly.nvars()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidArgument(
                "generator weights must be positive".into(),
            ));
        }
        Ok(Self { poly, weights })
    }

    /// Generators `prefix1..prefixN` with `prefix_i` of weight `i * step`.
    pub fn indexed_generators(prefix: &str, n: usize, step: u32) -> (Vec<String>, Vec<u32>) {
        (
            MultiPoly::indexed_vars(prefix, n),
            (1..=n as u32).map(|i| i * step).collect(),
        )
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn generators(&self) -> &[String] {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn monomial_weight(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// The weight of every term, in canonical term order.
    pub fn term_weights(&self) -> Vec<u32> {
        self.poly
            .terms()
            .keys()
            .map(|e| self.monomial_weight(e))
            .collect()
    }

    pub fn homogeneous_component(&self, weight: u32) -> Self {
        self.filter(|w| w == weight)
    }

    /// Drops every term of weight above `max_weight`.
    pub fn truncate(&self, max_weight: u32) -> Self {
        self.filter(|w| w <= max_weight)
    }

    fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        let terms = self
            .poly
            .terms()
            .iter()
            .filter(|(e, _)| keep(self.monomial_weight(e)))
            .map(|(e, c)| (e.clone(), c.clone()));
        Self {
            poly: MultiPoly::from_terms(self.poly.vars().to_vec(), terms).expect("same arity"),
            weights: self.weights.clone(),
        }
    }

    /// `Some(w)` when every term has weight `w`; the zero polynomial is homogeneous of any weight and yields `None`.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let ws = self.term_weights();
        let first = *ws.first()?;
        ws.iter().all(|&w| w == first).then_some(first)
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.poly.coeff(exps)
    }

    /// Coefficient of the single generator `name` (exponent 1, others 0).
    pub fn linear_coeff(&self, name: &str) -> Result<Q> {
        let idx = self.index_of(name)?;
        let mut e = vec![0; self.poly.nvars()];
        e[idx] = 1;
        Ok(self.poly.coeff(&e))
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators()
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator `{name}`")))
    }

    pub fn map_poly(&self, f: impl FnOnce(&MultiPoly) -> MultiPoly) -> Self {
        let poly = f(&self.poly);
        assert_eq!(poly.vars(), self.poly.vars());
        Self {
            poly,
            weights: self.weights.clone(),
        }
    }

    pub fn to_latex(&self) -> String {
        self.poly.render(|e| self.monomial_weight(e), true)
    }

    fn ordered_images<'a, T>(&self, assignments: &'a BTreeMap<String, T>) -> Result<Vec<&'a T>> {
        self.generators()
            .iter()
            .map(|g| {
                assignments
                    .get(g)
                    .ok_or_else(|| Error::Unassigned(g.clone()))
            })
            .collect()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(|e| self.monomial_weight(e), false))
    }
}

impl Serialize for GradedPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact evaluation with every generator assigned a rational, by name.
pub fn evaluate(p: &GradedPoly, assignments: &BTreeMap<String, Q>) -> Result<Q> {
    let values: Vec<Q> = p
        .ordered_images(assignments)?
        .into_iter()
        .cloned()
        .collect();
    p.poly.evaluate(&values)
}

/// Exact substitution of polynomials for generators, by name.
///
/// All images must live over one generator list.
pub fn substitute(p: &GradedPoly, assignments: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
    let images: Vec<MultiPoly> = p
        .ordered_images(assignments)?
        .into_iter()
        .cloned()
        .collect();
    p.poly.substitute(&images)
}
