//! Per-dimension classification of spheres admitting almost complex structures.
//!
//! Checks run in a fixed order: odd dimension, then the Pontryagin–Euler
//! contradiction on `S^{4k}` (corroborated by the signature route), then
//! Chern-character divisibility on `S^{2m}`. Dimensions 2 and 6 survive all
//! three and are confirmed by sampling the octonionic construction.
//!
//! Facts that are cited rather than computed are listed in each verdict's
//! `assumed_axioms`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cayley_dickson::CDElement;
use crate::char_class::{
    replay_lemma_pontryagin_euler, sphere_euler_characteristic, LemmaCertificate,
    AXIOM_EULER_CHARACTERISTIC, AXIOM_EULER_IS_TOP_CHERN,
};
use crate::error::{Error, Result};
use crate::genera::{chern_character, s_coefficient};
use crate::rational::{is_integer, serde_q, sign_power, Q};
use crate::sphere_acs::{
    nijenhuis_report, verify_j, JVerification, NijenhuisReport, SpherePoint, TangentVector,
};
use crate::symfun::{GradedPoly, MultiPoly};

pub const DEFAULT_SAMPLES: usize = 64;

pub const AXIOM_DET_PARITY: &str = "a real J with J^2 = -Id satisfies (det J)^2 = (-1)^n >= 0";
pub const AXIOM_SIGNATURE_THEOREM: &str = "sigma(M^4k) = <L_k(p_1..p_k), [M]>";
pub const AXIOM_SIGNATURE_VANISHES: &str = "sigma(S^4k) = 0 since H^2k(S^4k; Z) = 0";
pub const AXIOM_CH_INTEGRAL: &str = "ch(S^2n) is integral";
pub const AXIOM_ONLY_TOP_CHERN: &str = "on S^2n all Chern classes vanish except possibly c_n";
pub const AXIOM_RANK: &str = "E is a complex bundle of rank n with E_R = T(S^2n)";
pub const AXIOM_ALTERNATIVE: &str = "[p,p,v] = 0 in H and O, so J_p^2 = -Id at every p";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exists,
    RuledOut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    OddDimension,
    PontryaginEuler,
    #[serde(rename = "signature_L_genus")]
    SignatureLGenus,
    ChernDivisibility,
    ExplicitConstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddDimensionCertificate {
    pub n: u32,
    /// `(det J)^2 = det(J^2) = det(−Id) = (−1)^n`.
    #[serde(with = "serde_q")]
    pub det_squared: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureCertificate {
    pub k: u32,
    pub sphere: u32,
    #[serde(with = "serde_q")]
    pub s_k: Q,
    /// `⟨p_k, [S^{4k}]⟩` from the Pontryagin–Euler replay.
    #[serde(with = "serde_q")]
    pub p_k_pairing: Q,
    /// `(−1)^k · 4 · s_k`, which the signature theorem says equals `σ(S^{4k})`.
    #[serde(with = "serde_q")]
    pub witness: Q,
    pub signature: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernDivisibilityCertificate {
    pub n: u32,
    pub rank: u32,
    pub chern_character: GradedPoly,
    /// Coefficient of `c_rank` in `ch(E)`: `±1/(rank−1)!`.
    #[serde(with = "serde_q")]
    pub top_coefficient: Q,
    #[serde(with = "serde_q")]
    pub euler_pairing: Q,
    /// `⟨ch(E), [S^n]⟩ = top_coefficient · χ`.
    #[serde(with = "serde_q")]
    pub ch_pairing: Q,
    pub factorial: String,
    pub factorial_divides_two: bool,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionCertificate {
    pub verification: JVerification,
    pub nijenhuis_sample: NijenhuisReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Certificate {
    OddDimension(OddDimensionCertificate),
    PontryaginEuler(LemmaCertificate),
    #[serde(rename = "signature_L_genus")]
    SignatureLGenus(SignatureCertificate),
    ChernDivisibility(ChernDivisibilityCertificate),
    ExplicitConstruction(ConstructionCertificate),
}

impl Certificate {
    pub fn reason(&self) -> Reason {
        match self {
            Certificate::OddDimension(_) => Reason::OddDimension,
            Certificate::PontryaginEuler(_) => Reason::PontryaginEuler,
            Certificate::SignatureLGenus(_) => Reason::SignatureLGenus,
            Certificate::ChernDivisibility(_) => Reason::ChernDivisibility,
            Certificate::ExplicitConstruction(_) => Reason::ExplicitConstruction,
        }
    }

    /// Re-checks that the stored witness really carries the obstruction.
    pub fn witness_is_valid(&self) -> bool {
        match self {
            Certificate::OddDimension(c) => c.det_squared < Q::zero(),
            Certificate::PontryaginEuler(c) => {
                !c.pairing.is_zero() && c.identity_holds && c.contradiction
            }
            Certificate::SignatureLGenus(c) => {
                !c.witness.is_zero() && c.witness != Q::from_integer(c.signature.into())
            }
            Certificate::ChernDivisibility(c) => !c.integral && !c.factorial_divides_two,
            Certificate::ExplicitConstruction(c) => c.verification.passed,
        }
    }

    pub fn assumed_axioms(&self) -> Vec<String> {
        let list: &[&str] = match self {
            Certificate::OddDimension(_) => &[AXIOM_DET_PARITY],
            Certificate::PontryaginEuler(c) => {
                return c.assumed_axioms.clone();
            }
            Certificate::SignatureLGenus(_) => &[
                AXIOM_SIGNATURE_THEOREM,
                AXIOM_SIGNATURE_VANISHES,
                AXIOM_EULER_CHARACTERISTIC,
                AXIOM_EULER_IS_TOP_CHERN,
            ],
            Certificate::ChernDivisibility(_) => &[
                AXIOM_CH_INTEGRAL,
                AXIOM_EULER_CHARACTERISTIC,
                AXIOM_EULER_IS_TOP_CHERN,
                AXIOM_ONLY_TOP_CHERN,
                AXIOM_RANK,
            ],
            Certificate::ExplicitConstruction(_) => &[AXIOM_ALTERNATIVE],
        };
        list.iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereVerdict {
    pub n: u32,
    pub status: Status,
    pub reason: Reason,
    pub certificate: Certificate,
    /// Independent certificates reaching the same verdict.
    pub corroborating: Vec<Certificate>,
    pub assumed_axioms: Vec<String>,
}

pub fn check_odd(n: u32) -> Option<Certificate> {
    (n % 2 == 1).then(|| {
        Certificate::OddDimension(OddDimensionCertificate {
            n,
            det_squared: sign_power(n),
        })
    })
}

pub fn check_pontryagin_euler(n: u32) -> Result<Option<Certificate>> {
    if n == 0 || !n.is_multiple_of(4) {
        return Ok(None);
    }
    let cert = replay_lemma_pontryagin_euler(n / 4)?;
    Ok(cert
        .contradiction
        .then_some(Certificate::PontryaginEuler(cert)))
}

/// Signature route on `S^{4k}`: `0 = σ(S^{4k}) = (−1)^k · 4 · s_k`.
pub fn check_signature(n: u32) -> Result<Option<Certificate>> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "the signature check needs n = 4k, got {n}"
        )));
    }
    let k = n / 4;
    let lemma = replay_lemma_pontryagin_euler(k)?;
    let s_k = s_coefficient(k);
    // p_1..p_{k-1} vanish on S^{4k}, so L_k reduces to s_k p_k
    let p_k_pairing = lemma.pairing.clone();
    let witness = &s_k * &p_k_pairing;
    let cert = SignatureCertificate {
        k,
        sphere: n,
        s_k,
        p_k_pairing,
        witness,
        signature: 0,
    };
    Ok((!cert.witness.is_zero()).then_some(Certificate::SignatureLGenus(cert)))
}

/// Full divisibility computation for `S^n`, `n = 2m`, whether or not it rules `S^n` out.
pub fn chern_divisibility(n: u32) -> Result<ChernDivisibilityCertificate> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "the Chern divisibility check needs an even n >= 2, got {n}"
        )));
    }
    let m = n / 2;
    let name = format!("c{m}");
    let top = GradedPoly::new(MultiPoly::var(vec![name.clone()], 0), vec![m])?;
    let zero = GradedPoly::new(MultiPoly::zero(vec![name.clone()]), vec![m])?;
    let mut classes = vec![zero; m as usize - 1];
    classes.push(top);
    let ch = chern_character(m as usize, &classes, m)?;
    let top_coefficient = ch.linear_coeff(&name)?;
    let euler_pairing = sphere_euler_characteristic(n);
    let ch_pairing = &top_coefficient * &euler_pairing;
    let fact = crate::rational::factorial(m - 1);
    let factorial_divides_two = BigInt::from(2).is_multiple_of(&fact);
    Ok(ChernDivisibilityCertificate {
        n,
        rank: m,
        chern_character: ch,
        top_coefficient,
        euler_pairing,
        integral: is_integer(&ch_pairing),
        ch_pairing,
        factorial: fact.to_string(),
        factorial_divides_two,
    })
}

pub fn check_chern_divisibility(n: u32) -> Result<Option<Certificate>> {
    let cert = chern_divisibility(n)?;
    if cert.integral != cert.factorial_divides_two {
        return Err(Error::Invariant(format!(
            "S^{n}: integrality of ch ({}) disagrees with (m-1)! | 2 ({})",
            cert.integral, cert.factorial_divides_two
        )));
    }
    Ok((!cert.integral).then_some(Certificate::ChernDivisibility(cert)))
}

fn construction_certificate(n: u32, samples: usize, seed: u64) -> Result<Certificate> {
    let verification = verify_j(n, samples, seed)?;
    let p = SpherePoint::basis(n, 1)?;
    let level = p.level();
    let u = TangentVector::new(p.clone(), CDElement::basis(level, 2))?;
    let v_index = if n == 6 { 4 } else { 3 };
    let v = TangentVector::new(p.clone(), CDElement::basis(level, v_index))?;
    let nijenhuis_sample = nijenhuis_report(&p, &u, &v)?;
    Ok(Certificate::ExplicitConstruction(ConstructionCertificate {
        verification,
        nijenhuis_sample,
    }))
}

fn verdict(
    n: u32,
    status: Status,
    certificate: Certificate,
    corroborating: Vec<Certificate>,
) -> Result<SphereVerdict> {
    for c in std::iter::once(&certificate).chain(&corroborating) {
        if !c.witness_is_valid() {
            return Err(Error::Invariant(format!(
                "S^{n}: {:?} certificate does not carry a valid witness",
                c.reason()
            )));
        }
    }
    let mut assumed_axioms: Vec<String> = Vec::new();
    for c in std::iter::once(&certificate).chain(&corroborating) {
        for a in c.assumed_axioms() {
            if !assumed_axioms.contains(&a) {
                assumed_axioms.push(a);
            }
        }
    }
    Ok(SphereVerdict {
        n,
        status,
        reason: certificate.reason(),
        certificate,
        corroborating,
        assumed_axioms,
    })
}

/// Classifies `S^n`, sampling the construction with `samples` points from `seed`
/// when no obstruction applies.
pub fn classify_sphere_with(n: u32, samples: usize, seed: u64) -> Result<SphereVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sphere dimension must be at least 1".into(),
        ));
    }
    if let Some(c) = check_odd(n) {
        return verdict(n, Status::RuledOut, c, Vec::new());
    }
    if let Some(c) = check_pontryagin_euler(n)? {
        let corroborating = check_signature(n)?.into_iter().collect();
        return verdict(n, Status::RuledOut, c, corroborating);
    }
    if let Some(c) = check_chern_divisibility(n)? {
        return verdict(n, Status::RuledOut, c, Vec::new());
    }
    if n == 2 || n == 6 {
        let c = construction_certificate(n, samples, seed)?;
        return verdict(n, Status::Exists, c, Vec::new());
    }
    Err(Error::Invariant(format!("no check decides S^{n}")))
}

pub fn classify_sphere(n: u32) -> Result<SphereVerdict> {
    classify_sphere_with(n, DEFAULT_SAMPLES, crate::sampling::DEFAULT_SEED)
}

/// Classifies every `n` in `range`, fanning out over threads; results are in
/// dimension order.
pub fn classify_range(
    range: std::ops::RangeInclusive<u32>,
    samples: usize,
    seed: u64,
) -> Result<Vec<SphereVerdict>> {
    let dims: Vec<u32> = range.collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(dims.len().max(1));
    let chunk = dims.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<SphereVerdict>>> = std::thread::scope(|s| {
        let handles: Vec<_> = dims
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&n| classify_sphere_with(n, samples, seed))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(dims.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Convenience for callers that only need the existence answer.
pub fn admits_almost_complex_structure(n: u32) -> Result<bool> {
    Ok(classify_sphere_with(n, 8, 0)?.status == Status::Exists)
}
