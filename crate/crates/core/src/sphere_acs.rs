//! The cross-product almost complex structure on S² ⊂ Im ℍ and S⁶ ⊂ Im 𝕆.
//!
//! At a point `p` of the unit sphere the structure is `J_p(v) = p × v`,
//! where `u × v = Im(uv) = ½(uv − vu)` for imaginary `u, v`.
//!
//! The Nijenhuis tensor is evaluated with the convention
//!
//! ```text
//! N(u, v) = [JU, JV] − [U, V] − J[JU, V] − J[U, JV]
//! ```
//!
//! (no ¼ factor). `U(x) = u − ⟨u,x⟩x` is the tangent extension of `u`,
//! `(JW)(x) = x × W(x)`, and brackets are ambient Lie brackets
//! `[A, B](p) = DB(p)·A(p) − DA(p)·B(p)`. Every field here is polynomial in
//! the ambient coordinates, so the Jacobians are written out in closed form
//! and evaluated exactly at `p`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cayley_dickson::{associator, cd_multiply, norm_sq, real_part, CDElement};
use crate::error::{Error, Result};
use crate::rational::{format_q, q, random_q, ratio, serde_q, serde_q_opt, Q};
use crate::sampling;

/// Cayley–Dickson level whose imaginary part hosts `S^sphere_dim`.
pub fn level_for_sphere(sphere_dim: u32) -> Result<u32> {
    match sphere_dim {
        2 => Ok(2),
        6 => Ok(3),
        d => Err(Error::SphereDimension(d)),
    }
}

fn require_imaginary(x: &CDElement) -> Result<()> {
    if x.is_imaginary() {
        Ok(())
    } else {
        Err(Error::NotImaginary(format_q(&real_part(x))))
    }
}

/// A point on the unit sphere in Im ℍ (S²) or Im 𝕆 (S⁶).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpherePoint {
    sphere_dim: u32,
    vector: CDElement,
}

impl SpherePoint {
    pub fn new(sphere_dim: u32, vector: CDElement) -> Result<Self> {
        let level = level_for_sphere(sphere_dim)?;
        if vector.level() != level {
            return Err(Error::LevelMismatch {
                left: level,
                right: vector.level(),
            });
        }
        require_imaginary(&vector)?;
        let n = norm_sq(&vector);
        if !n.is_one() {
            return Err(Error::NotUnit(format_q(&n)));
        }
        Ok(Self { sphere_dim, vector })
    }

    /// The basis point `e_index` on the sphere.
    pub fn basis(sphere_dim: u32, index: usize) -> Result<Self> {
        let level = level_for_sphere(sphere_dim)?;
        if index == 0 || index >= 1 << level {
            return Err(Error::InvalidArgument(format!(
                "e{index} is not an imaginary unit at level {level}"
            )));
        }
        Self::new(sphere_dim, CDElement::basis(level, index))
    }

    pub fn sphere_dim(&self) -> u32 {
        self.sphere_dim
    }

    pub fn vector(&self) -> &CDElement {
        &self.vector
    }

    pub fn level(&self) -> u32 {
        self.vector.level()
    }
}

/// A tangent vector at a sphere point, exactly orthogonal to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentVector {
    base: SpherePoint,
    vector: CDElement,
}

impl TangentVector {
    pub fn new(base: SpherePoint, vector: CDElement) -> Result<Self> {
        require_imaginary(&vector)?;
        let inner = base.vector.dot(&vector)?;
        if !inner.is_zero() {
            return Err(Error::NotTangent(format_q(&inner)));
        }
        Ok(Self { base, vector })
    }

    pub fn base(&self) -> &SpherePoint {
        &self.base
    }

    pub fn vector(&self) -> &CDElement {
        &self.vector
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self {
            base: self.base.clone(),
            vector: self.vector.scale(s),
        }
    }
}

/// `u × v = ½(uv − vu)` for imaginary `u, v`.
pub fn cross(u: &CDElement, v: &CDElement) -> Result<CDElement> {
    require_imaginary(u)?;
    require_imaginary(v)?;
    let uv = cd_multiply(u, v)?;
    let vu = cd_multiply(v, u)?;
    Ok(uv.try_sub(&vu)?.scale(&ratio(1, 2)))
}

/// `J_p(v) = p × v`.
pub fn j_apply(t: &TangentVector) -> TangentVector {
    let vector = cross(&t.base.vector, &t.vector).expect("validated imaginary operands");
    TangentVector {
        base: t.base.clone(),
        vector,
    }
}

/// Inverse stereographic projection from the pole `−e_last`.
///
/// Parameters `q_1..q_d` with `s = Σ q_i²` map to
/// `(2q_1, …, 2q_d, s − 1) / (s + 1)` on the imaginary units
/// `e_1..e_{d+1}`; the result has norm exactly one.
pub fn rational_sphere_point(sphere_dim: u32, params: &[Q]) -> Result<SpherePoint> {
    let level = level_for_sphere(sphere_dim)?;
    let d = sphere_dim as usize;
    if params.len() != d {
        return Err(Error::ParameterCount {
            expected: d,
            got: params.len(),
        });
    }
    let s: Q = params.iter().map(|x| x * x).sum();
    let denom = &s + Q::one();
    let mut coords: Vec<Q> = params.iter().map(|x| x * q(2) / &denom).collect();
    coords.push((&s - Q::one()) / &denom);
    SpherePoint::new(sphere_dim, CDElement::imaginary(level, coords)?)
}

/// `w − ⟨w,p⟩p`.
pub fn tangent_projection(p: &SpherePoint, w: &CDElement) -> Result<TangentVector> {
    require_imaginary(w)?;
    let inner = w.dot(&p.vector)?;
    let vector = w.try_sub(&p.vector.scale(&inner))?;
    TangentVector::new(p.clone(), vector)
}

/// Ambient polynomial vector fields used to evaluate the Nijenhuis tensor.
#[derive(Debug, Clone)]
enum Field<'a> {
    /// `x ↦ u − ⟨u,x⟩x`
    Extension(&'a CDElement),
    /// `x ↦ x × (u − ⟨u,x⟩x)`
    Rotated(&'a CDElement),
}

impl Field<'_> {
    fn value(&self, x: &CDElement) -> Result<CDElement> {
        match self {
            Field::Extension(u) => u.try_sub(&x.scale(&u.dot(x)?)),
            Field::Rotated(u) => cross(x, &Field::Extension(u).value(x)?),
        }
    }

    /// Directional derivative `DX(x)·h`.
    fn derivative(&self, x: &CDElement, h: &CDElement) -> Result<CDElement> {
        match self {
            Field::Extension(u) => {
                let a = x.scale(&u.dot(h)?);
                let b = h.scale(&u.dot(x)?);
                Ok(a.try_add(&b)?.neg())
            }
            Field::Rotated(u) => {
                let inner = Field::Extension(u);
                let a = cross(h, &inner.value(x)?)?;
                let b = cross(x, &inner.derivative(x, h)?)?;
                a.try_add(&b)
            }
        }
    }
}

fn bracket_at(a: &Field<'_>, b: &Field<'_>, p: &CDElement) -> Result<CDElement> {
    let ap = a.value(p)?;
    let bp = b.value(p)?;
    b.derivative(p, &ap)?.try_sub(&a.derivative(p, &bp)?)
}

fn check_based(p: &SpherePoint, t: &TangentVector) -> Result<()> {
    if &t.base != p {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// Exact value of `N_J(u, v)` at `p`, returned as an ambient vector tangent at `p`.
pub fn nijenhuis(p: &SpherePoint, u: &TangentVector, v: &TangentVector) -> Result<CDElement> {
    check_based(p, u)?;
    check_based(p, v)?;
    let x = &p.vector;
    let uf = Field::Extension(&u.vector);
    let vf = Field::Extension(&v.vector);
    let juf = Field::Rotated(&u.vector);
    let jvf = Field::Rotated(&v.vector);

    let t1 = bracket_at(&juf, &jvf, x)?;
    let t2 = bracket_at(&uf, &vf, x)?;
    let t3 = cross(x, &bracket_at(&juf, &vf, x)?)?;
    let t4 = cross(x, &bracket_at(&uf, &jvf, x)?)?;
    t1.try_sub(&t2)?.try_sub(&t3)?.try_sub(&t4)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NijenhuisReport {
    pub sphere: u32,
    pub point: CDElement,
    pub u: CDElement,
    pub v: CDElement,
    pub nijenhuis: CDElement,
    pub is_zero: bool,
}

pub fn nijenhuis_report(
    p: &SpherePoint,
    u: &TangentVector,
    v: &TangentVector,
) -> Result<NijenhuisReport> {
    let n = nijenhuis(p, u, v)?;
    Ok(NijenhuisReport {
        sphere: p.sphere_dim,
        point: p.vector.clone(),
        u: u.vector.clone(),
        v: v.vector.clone(),
        is_zero: n.is_zero(),
        nijenhuis: n,
    })
}

/// Side-by-side data for `⟨N_J(u,v), w⟩` and the associator `[u,v,w]`.
///
/// No relation between the two is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NijenhuisAssociatorReport {
    pub sphere: u32,
    pub point: CDElement,
    pub u: CDElement,
    pub v: CDElement,
    pub w: CDElement,
    pub nijenhuis: CDElement,
    #[serde(with = "serde_q")]
    pub nijenhuis_pairing: Q,
    pub associator: CDElement,
    #[serde(with = "serde_q")]
    pub associator_real: Q,
    /// `⟨N_J(u,v), w⟩ / [u,v,w]`, present only when the associator is a
    /// nonzero real and the pairing is nonzero.
    #[serde(with = "serde_q_opt")]
    pub ratio: Option<Q>,
}

pub fn compare_nijenhuis_associator(
    p: &SpherePoint,
    u: &TangentVector,
    v: &TangentVector,
    w: &TangentVector,
) -> Result<NijenhuisAssociatorReport> {
    check_based(p, w)?;
    let n = nijenhuis(p, u, v)?;
    let pairing = n.dot(&w.vector)?;
    let assoc = associator(&u.vector, &v.vector, &w.vector)?;
    let assoc_real = real_part(&assoc);
    let ratio = (assoc.is_real() && !assoc_real.is_zero() && !pairing.is_zero())
        .then(|| &pairing / &assoc_real);
    Ok(NijenhuisAssociatorReport {
        sphere: p.sphere_dim,
        point: p.vector.clone(),
        u: u.vector.clone(),
        v: v.vector.clone(),
        w: w.vector.clone(),
        nijenhuis: n,
        nijenhuis_pairing: pairing,
        associator: assoc,
        associator_real: assoc_real,
        ratio,
    })
}

/// Random sphere point from small random stereographic parameters.
pub fn sample_point<R: Rng + ?Sized>(sphere_dim: u32, rng: &mut R) -> Result<SpherePoint> {
    let params: Vec<Q> = (0..sphere_dim).map(|_| random_q(rng, 6, 4)).collect();
    rational_sphere_point(sphere_dim, &params)
}

/// Random tangent vector at `p`: a random imaginary vector projected onto `T_p`.
pub fn sample_tangent<R: Rng + ?Sized>(p: &SpherePoint, rng: &mut R) -> Result<TangentVector> {
    let w = CDElement::random_imaginary(p.level(), rng, 6, 4);
    tangent_projection(p, &w)
}

/// Outcome of checking `J² = −Id`, tangency and isometry on random samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JVerification {
    pub sphere: u32,
    pub samples: usize,
    pub seed: u64,
    pub j_squared_is_minus_identity: usize,
    pub j_tangent: usize,
    pub isometry: usize,
    pub passed: bool,
}

/// Checks `J_p(J_p v) = −v`, `⟨J_p v, p⟩ = 0` and `|J_p v|² = |v|²` on
/// `samples` random `(p, v)`; sample `i` draws from stream `(seed, i)`.
pub fn verify_j(sphere_dim: u32, samples: usize, seed: u64) -> Result<JVerification> {
    level_for_sphere(sphere_dim)?;
    let mut report = JVerification {
        sphere: sphere_dim,
        samples,
        seed,
        j_squared_is_minus_identity: 0,
        j_tangent: 0,
        isometry: 0,
        passed: false,
    };
    for i in 0..samples {
        let mut rng = sampling::rng(seed, i as u64);
        let p = sample_point(sphere_dim, &mut rng)?;
        let t = sample_tangent(&p, &mut rng)?;
        let jt = j_apply(&t);
        if j_apply(&jt).vector == t.vector.neg() {
            report.j_squared_is_minus_identity += 1;
        }
        if jt.vector.dot(&p.vector)?.is_zero() {
            report.j_tangent += 1;
        }
        if norm_sq(&jt.vector) == norm_sq(&t.vector) {
            report.isometry += 1;
        }
    }
    report.passed = report.j_squared_is_minus_identity == samples
        && report.j_tangent == samples
        && report.isometry == samples;
    Ok(report)
}
