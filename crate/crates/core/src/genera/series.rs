use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_q, Q};

/// Truncated univariate power series `c_0 + c_1 z + … + c_N z^N + O(z^{N+1})`.
///
/// Every operation reports the order up to which its result is exact;
/// binary operations keep the smaller of the two input orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Q>,
}

impl PowerSeries {
    /// Series of order `coeffs.len() - 1`. Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a power series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Q::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Q::one())
    }

    pub fn constant(order: usize, c: Q) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Q::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; panics beyond the truncation order.
    pub fn coeff(&self, k: usize) -> &Q {
        assert!(
            k <= self.order(),
            "coefficient z^{k} beyond truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new(
            (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new(
            (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `self / other`; the divisor's constant term must be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonUnitDivisor(format_q(b0)));
        }
        let n = self.order().min(other.order());
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &out[k - j];
            }
            out.push(acc / b0);
        }
        Ok(Self::new(out))
    }

    pub fn reciprocal(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant(format_q(&inner.coeffs[0])));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut out = Self::zero(n);
        // Horner: c_n, then acc * inner + c_k
        for c in self.coeffs[..=n].iter().rev() {
            out = out.mul(&inner);
            out.coeffs[0] += c;
        }
        Ok(out)
    }

    /// `f(a z)`.
    pub fn scale_variable(&self, a: &Q) -> Self {
        let mut pow = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= a;
        }
        Self::new(out)
    }

    /// `f(z) / z`; requires a zero constant term.
    pub fn div_by_variable(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant(format_q(&self.coeffs[0])));
        }
        if self.order() == 0 {
            return Err(Error::InvalidArgument(
                "order-0 series has no z term to shift".into(),
            ));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// Reads an even series in `w` as a series in `z = w²`.
    pub fn even_to_z(&self) -> Result<Self> {
        if let Some(k) = (1..=self.order())
            .step_by(2)
            .find(|&k| !self.coeffs[k].is_zero())
        {
            return Err(Error::NotEven(k));
        }
        Ok(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Substitutes `z = w²`, producing an even series in `w` of order `2N`.
    pub fn z_to_even(&self) -> Self {
        let mut out = vec![Q::zero(); 2 * self.order() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Self::new(out)
    }

    pub fn exp(order: usize) -> Self {
        Self::new(
            (0..=order)
                .map(|k| Q::new(One::one(), factorial(k as u32)))
                .collect(),
        )
    }

    pub fn sinh(order: usize) -> Self {
        let e = Self::exp(order);
        let em = e.scale_variable(&-Q::one());
        e.sub(&em).scale(&Q::new(1.into(), 2.into()))
    }

    pub fn cosh(order: usize) -> Self {
        let e = Self::exp(order);
        let em = e.scale_variable(&-Q::one());
        e.add(&em).scale(&Q::new(1.into(), 2.into()))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", format_q(&mag))?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{mono}", format_q(&mag))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
