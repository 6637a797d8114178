//! Characteristic classes in the rational cohomology of a sphere.
//!
//! `H*(S^m; ℚ) = ℚ[x]/(x²)` with `deg x = m`, so a total class is `1 + a·x`
//! where `a` is the coefficient of the single component whose degree equals
//! `m`. Stiefel–Whitney classes use `ℤ/2` scalars, represented as rationals
//! reduced to 0 or 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_q, is_integer, q, serde_q, sign_power, Q};

/// An element `scalar0 + scalar_top·x` of `ℚ[x]/(x²)`, `deg x = sphere_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereCohomologyClass {
    pub sphere_dim: u32,
    #[serde(with = "serde_q")]
    pub scalar0: Q,
    #[serde(with = "serde_q")]
    pub scalar_top: Q,
}

impl SphereCohomologyClass {
    pub fn new(sphere_dim: u32, scalar0: Q, scalar_top: Q) -> Self {
        Self {
            sphere_dim,
            scalar0,
            scalar_top,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.sphere_dim != other.sphere_dim {
            return Err(Error::SphereMismatch {
                left: self.sphere_dim,
                right: other.sphere_dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.sphere_dim,
            &self.scalar0 + &other.scalar0,
            &self.scalar_top + &other.scalar_top,
        ))
    }

    /// Product with `x² = 0`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.sphere_dim,
            &self.scalar0 * &other.scalar0,
            &self.scalar0 * &other.scalar_top + &self.scalar_top * &other.scalar0,
        ))
    }

    /// `⟨·, [S^m]⟩`.
    pub fn pairing(&self) -> Q {
        self.scalar_top.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    StiefelWhitney,
    Chern,
    Pontryagin,
}

impl ClassKind {
    /// Cohomological degree of the index-1 class: `w_i` has degree `i`,
    /// `c_i` degree `2i`, `p_i` degree `4i`.
    pub fn degree_step(self) -> u32 {
        match self {
            ClassKind::StiefelWhitney => 1,
            ClassKind::Chern => 2,
            ClassKind::Pontryagin => 4,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            ClassKind::StiefelWhitney => 'w',
            ClassKind::Chern => 'c',
            ClassKind::Pontryagin => 'p',
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::StiefelWhitney => "stiefel_whitney",
            ClassKind::Chern => "chern",
            ClassKind::Pontryagin => "pontryagin",
        })
    }
}

/// A total characteristic class `1 + k_1 + k_2 + …` in the sphere model.
///
/// Only the index whose degree equals the sphere dimension can be nonzero;
/// components of larger degree vanish in the model and are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalClass {
    kind: ClassKind,
    sphere_dim: u32,
    top: Q,
}

fn reduce_mod2(x: &Q) -> Result<Q> {
    if !is_integer(x) {
        return Err(Error::InvalidArgument(format!(
            "mod-2 class with non-integral coefficient {}",
            format_q(x)
        )));
    }
    Ok(Q::from_integer(x.numer().mod_floor(&BigInt::from(2))))
}

impl TotalClass {
    /// Builds `1 + Σ coeff_i · class_i` from `(index, coefficient)` pairs.
    ///
    /// Index 0, if present, must carry coefficient 1.
    pub fn new(kind: ClassKind, sphere_dim: u32, components: &[(usize, Q)]) -> Result<Self> {
        let mut top = Q::zero();
        for (index, c) in components {
            let degree = kind.degree_step() * *index as u32;
            if *index == 0 {
                if !c.is_one() {
                    return Err(Error::InvalidArgument(format!(
                        "degree-0 component of a total class must be 1, got {}",
                        format_q(c)
                    )));
                }
            } else if degree == sphere_dim {
                top += c;
            } else if degree < sphere_dim && !c.is_zero() {
                return Err(Error::DegreeOutOfModel {
                    degree,
                    sphere: sphere_dim,
                });
            }
        }
        if kind == ClassKind::StiefelWhitney {
            top = reduce_mod2(&top)?;
        }
        Ok(Self {
            kind,
            sphere_dim,
            top,
        })
    }

    pub fn trivial(kind: ClassKind, sphere_dim: u32) -> Self {
        Self {
            kind,
            sphere_dim,
            top: Q::zero(),
        }
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn sphere_dim(&self) -> u32 {
        self.sphere_dim
    }

    /// Index `i` with `deg(class_i) = sphere_dim`, if any.
    pub fn top_index(&self) -> Option<usize> {
        let step = self.kind.degree_step();
        (self.sphere_dim.is_multiple_of(step) && self.sphere_dim > 0)
            .then(|| (self.sphere_dim / step) as usize)
    }

    /// Coefficient of `class_index`; index 0 is always 1.
    pub fn component(&self, index: usize) -> Q {
        match index {
            0 => Q::one(),
            i if Some(i) == self.top_index() => self.top.clone(),
            _ => Q::zero(),
        }
    }

    pub fn top_coefficient(&self) -> Q {
        self.top.clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.top.is_zero()
    }

    pub fn as_cohomology(&self) -> SphereCohomologyClass {
        SphereCohomologyClass::new(self.sphere_dim, Q::one(), self.top.clone())
    }

    fn from_cohomology(kind: ClassKind, c: SphereCohomologyClass) -> Result<Self> {
        let top = if kind == ClassKind::StiefelWhitney {
            reduce_mod2(&c.scalar_top)?
        } else {
            c.scalar_top
        };
        Ok(Self {
            kind,
            sphere_dim: c.sphere_dim,
            top,
        })
    }
}

impl fmt::Display for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.top_index(), self.top.is_zero()) {
            (Some(i), false) => {
                let sym = self.kind.symbol();
                if self.top < Q::zero() {
                    write!(f, "1 - ")?;
                } else {
                    write!(f, "1 + ")?;
                }
                let mag = if self.top < Q::zero() {
                    -self.top.clone()
                } else {
                    self.top.clone()
                };
                if mag.is_one() {
                    write!(f, "{sym}{i}")
                } else {
                    write!(f, "{}*{sym}{i}", format_q(&mag))
                }
            }
            _ => f.write_str("1"),
        }
    }
}

impl Serialize for TotalClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: ClassKind,
            sphere: u32,
            top_index: Option<usize>,
            #[serde(with = "serde_q")]
            top_coefficient: &'a Q,
            rendered: String,
        }
        Repr {
            kind: self.kind,
            sphere: self.sphere_dim,
            top_index: self.top_index(),
            top_coefficient: &self.top,
            rendered: self.to_string(),
        }
        .serialize(s)
    }
}

/// `w(E ⊕ E') = w(E)·w(E')` and likewise for `c`, `p`.
pub fn whitney_product(a: &TotalClass, b: &TotalClass) -> Result<TotalClass> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch {
            left: a.kind.to_string(),
            right: b.kind.to_string(),
        });
    }
    let prod = a.as_cohomology().mul(&b.as_cohomology())?;
    TotalClass::from_cohomology(a.kind, prod)
}

fn require_chern(c: &TotalClass) -> Result<()> {
    if c.kind != ClassKind::Chern {
        return Err(Error::KindMismatch {
            left: c.kind.to_string(),
            right: ClassKind::Chern.to_string(),
        });
    }
    Ok(())
}

/// `c_k(Ē) = (−1)^k c_k(E)`.
pub fn conjugate_classes(c: &TotalClass) -> Result<TotalClass> {
    require_chern(c)?;
    let sign = c.top_index().map_or_else(Q::one, |i| sign_power(i as u32));
    Ok(TotalClass {
        top: &c.top * sign,
        ..c.clone()
    })
}

/// `p_i(E) = (−1)^i c_{2i}(E_ℂ)`; odd Chern classes are discarded.
pub fn pontryagin_from_complexification(c: &TotalClass) -> Result<TotalClass> {
    require_chern(c)?;
    let mut out = TotalClass::trivial(ClassKind::Pontryagin, c.sphere_dim);
    if let Some(j) = c.top_index() {
        if j % 2 == 0 {
            let i = j / 2;
            out.top = sign_power(i as u32) * &c.top;
        }
    }
    Ok(out)
}

/// `⟨e(E_ℝ), [S^m]⟩ = ⟨c_n(E), [S^m]⟩` for a rank-`n` complex bundle.
///
/// A top class that cannot live in the model contributes 0.
pub fn euler_from_top_chern(c: &TotalClass, n: usize) -> Result<Q> {
    require_chern(c)?;
    Ok(c.component(n))
}

/// Euler characteristic of `S^m`.
pub fn sphere_euler_characteristic(m: u32) -> Q {
    if m.is_multiple_of(2) {
        q(2)
    } else {
        q(0)
    }
}

/// Total Chern class of a hypothetical complex structure on `T(S^{2n})`:
/// only `c_n` can survive, and `⟨c_n, [S^{2n}]⟩ = χ(S^{2n}) = 2`.
pub fn tangent_chern_model(sphere_dim: u32) -> Result<TotalClass> {
    if sphere_dim == 0 || sphere_dim % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "S^{sphere_dim} has no complex tangent model"
        )));
    }
    TotalClass::new(
        ClassKind::Chern,
        sphere_dim,
        &[(
            sphere_dim as usize / 2,
            sphere_euler_characteristic(sphere_dim),
        )],
    )
}

pub const AXIOM_EULER_CHARACTERISTIC: &str = "chi(S^2n) = 2";
pub const AXIOM_STABLY_TRIVIAL: &str = "T(S^n) is stably trivial";
pub const AXIOM_STABLY_TRIVIAL_CLASSES: &str =
    "characteristic classes of a stably trivial bundle are trivial";
pub const AXIOM_EULER_IS_TOP_CHERN: &str = "e(E_R) = c_top(E)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStep {
    pub label: String,
    pub class: TotalClass,
    /// The class written against `c(T)`'s top component, e.g. `1 + 2*c4(T)`.
    pub relative_to_tangent: String,
}

/// Replay of `(−1)^k p_k(T S^{4k}) = 2 e(T S^{4k})` and the resulting
/// contradiction with stable triviality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCertificate {
    pub lemma: String,
    pub k: u32,
    pub sphere: u32,
    pub steps: Vec<ClassStep>,
    #[serde(with = "serde_q")]
    pub euler_pairing: Q,
    /// `⟨p_k(T), [S^{4k}]⟩ = (−1)^k · 4`.
    #[serde(with = "serde_q")]
    pub pairing: Q,
    /// `(−1)^k p_k = 2e` checked on pairings.
    pub identity_holds: bool,
    /// `p(E_ℂ)` computed from `c(T ⊕ T̄)` and its conjugate agree.
    pub conjugation_invariant: bool,
    /// What stable triviality forces: `⟨p_k, [S^{4k}]⟩ = 0`.
    #[serde(with = "serde_q")]
    pub stably_trivial_pairing: Q,
    pub contradiction: bool,
    pub assumed_axioms: Vec<String>,
}

fn relative(c: &TotalClass, tangent_top: &Q, tangent_index: usize) -> String {
    if c.top.is_zero() {
        return "1".into();
    }
    let ratio = &c.top / tangent_top;
    let (sign, mag) = if ratio < Q::zero() {
        ("-", -ratio)
    } else {
        ("+", ratio)
    };
    let coeff = if mag.is_one() {
        String::new()
    } else {
        format!("{}*", format_q(&mag))
    };
    format!("1 {sign} {coeff}c{tangent_index}(T)")
}

/// Symbolically executes the Pontryagin–Euler lemma on `S^{4k}`.
pub fn replay_lemma_pontryagin_euler(k: u32) -> Result<LemmaCertificate> {
    if k == 0 {
        return Err(Error::InvalidArgument("the lemma needs k >= 1".into()));
    }
    let m = 4 * k;
    let n = 2 * k as usize;
    let tangent = tangent_chern_model(m)?;
    let t_top = tangent.top_coefficient();
    let conj = conjugate_classes(&tangent)?;
    let complexified = whitney_product(&tangent, &conj)?;
    let pont = pontryagin_from_complexification(&complexified)?;
    let pont_conj = pontryagin_from_complexification(&conjugate_classes(&complexified)?)?;
    let euler = euler_from_top_chern(&tangent, n)?;
    let pairing = pont.as_cohomology().pairing();

    let step = |label: &str, class: &TotalClass| ClassStep {
        label: label.to_string(),
        class: class.clone(),
        relative_to_tangent: if class.kind == ClassKind::Chern {
            relative(class, &t_top, n)
        } else {
            class.to_string()
        },
    };
    let steps = vec![
        step("c(T)", &tangent),
        step("c(conj T) = conjugate_classes(c(T))", &conj),
        step("c(T_C) = c(T + conj T) = c(T) * c(conj T)", &complexified),
        step("p(T) = pontryagin_from_complexification(c(T_C))", &pont),
    ];
    let identity_holds = sign_power(k) * &pairing == q(2) * &euler;
    let stably_trivial_pairing = Q::zero();
    Ok(LemmaCertificate {
        lemma: "pontryagin_euler".into(),
        k,
        sphere: m,
        steps,
        euler_pairing: euler,
        contradiction: pairing != stably_trivial_pairing,
        pairing,
        identity_holds,
        conjugation_invariant: pont == pont_conj,
        stably_trivial_pairing,
        assumed_axioms: vec![
            AXIOM_EULER_CHARACTERISTIC.into(),
            AXIOM_EULER_IS_TOP_CHERN.into(),
            AXIOM_STABLY_TRIVIAL.into(),
            AXIOM_STABLY_TRIVIAL_CLASSES.into(),
        ],
    })
}
