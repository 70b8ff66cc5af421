//! Minus class numbers of abelian CM fields.
//!
//! The main route is the analytic formula
//! `h^- = Q w prod_{chi odd} (-B_{1,chi} / 2)`, evaluated exactly: each Galois
//! orbit of odd characters contributes the norm of `-B_{1,chi}/2` from
//! `Q(zeta_d)`, computed as a resultant. For `Q(zeta_p)` an independent
//! Maillet determinant gives the same number.

mod cyclo;

pub use cyclo::{cyclotomic_polynomial, is_positive_integer, resultant, CycloElement, Poly};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{inv_mod, is_prime, IntMatrix};
use crate::error::{Error, Result};
use crate::fields::{characters_of, galois_orbits, w_general, DirichletCharacter, FieldSpec};
use crate::report::as_string;

/// `B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a` in `Q(zeta_d)`.
pub fn bernoulli_b1(chi: &DirichletCharacter) -> Result<CycloElement> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let f = chi.conductor();
    let d = chi.order();
    let mut weights = vec![BigInt::zero(); d as usize];
    for a in 1..=f {
        if let Some(e) = chi.exponent(a) {
            weights[e as usize] += a;
        }
    }
    let sum = CycloElement::from_exponent_weights(d, &weights);
    Ok(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(f))))
}

/// Field norm of an element of `Q(zeta_N)`.
pub fn orbit_norm(beta: &CycloElement) -> BigRational {
    beta.norm()
}

/// How the Hasse unit index was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QSource {
    /// Conductor is a prime power: `Q = 1`.
    PrimePowerConductor,
    /// Imaginary quadratic: all units are roots of unity, `Q = 1`.
    ImaginaryQuadratic,
    /// Full cyclotomic field of composite conductor: `Q = 2`.
    FullCyclotomic,
    /// `w * prod` was not an integer, which forces `Q = 2`.
    Integrality,
    /// Undecided; the configured default was used.
    Default,
    /// Undecided; the caller pinned the value.
    Override,
}

/// Hasse unit index with its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HasseQ {
    pub q: u8,
    pub certain: bool,
    pub source: QSource,
}

/// How to choose `Q` when the structural rules do not decide it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPolicy {
    pub default: u8,
    pub pinned: Option<u8>,
}

impl Default for QPolicy {
    fn default() -> Self {
        QPolicy {
            default: 1,
            pinned: None,
        }
    }
}

impl QPolicy {
    pub fn pinned(q: u8) -> Result<Self> {
        if q != 1 && q != 2 {
            return Err(Error::InvalidArgument(format!("Q must be 1 or 2, got {q}")));
        }
        Ok(QPolicy {
            default: 1,
            pinned: Some(q),
        })
    }
}

pub fn hasse_q(spec: &FieldSpec, policy: QPolicy) -> Result<HasseQ> {
    if !spec.is_cm() {
        return Err(Error::NotCm(spec.to_string()));
    }
    Ok(if spec.conductor_is_prime_power() {
        HasseQ {
            q: 1,
            certain: true,
            source: QSource::PrimePowerConductor,
        }
    } else if spec.degree() == 2 {
        HasseQ {
            q: 1,
            certain: true,
            source: QSource::ImaginaryQuadratic,
        }
    } else if spec.is_full_cyclotomic() {
        HasseQ {
            q: 2,
            certain: true,
            source: QSource::FullCyclotomic,
        }
    } else if let Some(q) = policy.pinned {
        HasseQ {
            q,
            certain: false,
            source: QSource::Override,
        }
    } else {
        HasseQ {
            q: policy.default,
            certain: false,
            source: QSource::Default,
        }
    })
}

/// One Galois orbit of odd characters and its rational contribution
/// `N(-B_{1,chi}/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFactor {
    pub id: usize,
    pub conductor: u64,
    pub order: u64,
    pub size: u64,
    #[serde(serialize_with = "as_string")]
    pub contribution: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HMinusResult {
    pub field: String,
    pub degree: u64,
    pub w: u64,
    pub q: u8,
    pub q_certain: bool,
    pub q_source: QSource,
    #[serde(serialize_with = "as_string")]
    pub h_minus: BigUint,
    /// The value under the other choice of `Q`, when `Q` is undecided.
    #[serde(serialize_with = "crate::report::as_opt_string")]
    pub alternate: Option<BigUint>,
    pub orbit_factors: Vec<OrbitFactor>,
}

impl HMinusResult {
    /// `w * prod of orbit contributions`, i.e. `h^- / Q`.
    pub fn without_q(&self) -> BigRational {
        let prod: BigRational = self
            .orbit_factors
            .iter()
            .map(|o| o.contribution.clone())
            .product();
        prod * BigRational::from_integer(BigInt::from(self.w))
    }

    /// The smaller of the two candidate values when `Q` is undecided, the
    /// value itself otherwise. Divisibility checked against this number is
    /// valid whichever `Q` is correct, up to one factor of 2.
    pub fn weaker_candidate(&self) -> BigUint {
        match &self.alternate {
            Some(alt) if !self.q_certain => alt.clone().min(self.h_minus.clone()),
            _ => self.h_minus.clone(),
        }
    }
}

fn to_biguint(r: &BigRational) -> Option<BigUint> {
    if is_positive_integer(r) {
        r.to_integer().to_biguint()
    } else {
        None
    }
}

/// Minus class number of a CM field by the generalized Bernoulli formula.
pub fn h_minus(spec: &FieldSpec, policy: QPolicy) -> Result<HMinusResult> {
    let mut hq = hasse_q(spec, policy)?;
    let odd: Vec<DirichletCharacter> = characters_of(spec)
        .into_iter()
        .filter(DirichletCharacter::is_odd)
        .collect();
    debug_assert_eq!(odd.len() as u64 * 2, spec.degree());

    let half = BigRational::new(-BigInt::one(), BigInt::from(2));
    let mut orbit_factors = Vec::new();
    for (id, orbit) in galois_orbits(&odd).into_iter().enumerate() {
        let chi = &orbit.representative;
        let beta = bernoulli_b1(chi)?.scale(&half);
        orbit_factors.push(OrbitFactor {
            id,
            conductor: chi.conductor(),
            order: chi.order(),
            size: orbit.size,
            contribution: orbit_norm(&beta),
        });
    }

    let w = w_general(spec);
    let base: BigRational = orbit_factors
        .iter()
        .map(|o| o.contribution.clone())
        .product::<BigRational>()
        * BigRational::from_integer(BigInt::from(w));

    if !hq.certain && !base.is_integer() {
        if hq.source == QSource::Override && hq.q == 1 {
            return Err(Error::QPolicy {
                value: base.to_string(),
                q: 1,
            });
        }
        hq = HasseQ {
            q: 2,
            certain: true,
            source: QSource::Integrality,
        };
    }
    let value = &base * BigRational::from_integer(BigInt::from(hq.q));
    let h = to_biguint(&value).ok_or_else(|| Error::QPolicy {
        value: value.to_string(),
        q: hq.q,
    })?;
    let alternate = if hq.certain {
        None
    } else {
        let other = BigRational::from_integer(BigInt::from(3 - hq.q));
        to_biguint(&(&base * other))
    };
    Ok(HMinusResult {
        field: spec.to_string(),
        degree: spec.degree(),
        w,
        q: hq.q,
        q_certain: hq.certain,
        q_source: hq.source,
        h_minus: h,
        alternate,
        orbit_factors,
    })
}

/// `h^-(L) / h^-(K)` for CM fields `K` inside `L`, with an integrality flag.
pub fn h_minus_relative(
    big: &FieldSpec,
    small: &FieldSpec,
    policy: QPolicy,
) -> Result<(BigRational, bool)> {
    if !big.contains_field(small) {
        return Err(Error::NotNested {
            sub: small.to_string(),
            sup: big.to_string(),
        });
    }
    let hl = h_minus(big, policy)?;
    let hk = h_minus(small, policy)?;
    let ratio = BigRational::new(hl.h_minus.into(), hk.h_minus.into());
    let integral = ratio.is_integer();
    Ok((ratio, integral))
}

/// The `(p-1)/2`-square Maillet matrix of least positive residues of `r s^{-1}`.
pub fn maillet_matrix(p: u64) -> Result<IntMatrix> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let half = (p - 1) / 2;
    let rows: Vec<Vec<u64>> = (1..=half)
        .map(|r| {
            (1..=half)
                .map(|s| r * inv_mod(s, p).expect("prime modulus") % p)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

/// `h^-(Q(zeta_p))` from `|det M| = p^((p-3)/2) h^-`.
pub fn maillet_h_minus(p: u64) -> Result<BigUint> {
    let det = maillet_matrix(p)?.determinant()?.abs();
    let scale = num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize);
    if det.is_zero() || !(&det % &scale).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "Maillet determinant {det} is not a non-zero multiple of {scale}"
        )));
    }
    Ok((det / scale).to_biguint().expect("non-negative"))
}

/// Small helper for callers holding `u64` values.
pub fn h_minus_u64(spec: &FieldSpec) -> Result<u64> {
    h_minus(spec, QPolicy::default())?
        .h_minus
        .to_u64()
        .ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn odd_quadratic(m: u64) -> DirichletCharacter {
        characters_of(&spec(&format!("{m}:")))
            .into_iter()
            .find(|c| c.order() == 2 && c.conductor() == m)
            .unwrap()
    }

    #[test]
    fn b1_quadratic() {
        assert_eq!(
            bernoulli_b1(&odd_quadratic(4)).unwrap().as_rational(),
            Some(q(-1, 2))
        );
        assert_eq!(
            bernoulli_b1(&odd_quadratic(3)).unwrap().as_rational(),
            Some(q(-1, 3))
        );
        let trivial = characters_of(&spec("5:")).remove(0);
        assert_eq!(bernoulli_b1(&trivial), Err(Error::TrivialCharacter));
    }

    #[test]
    fn even_characters_sum_to_zero_weight() {
        // For even chi the pairing a <-> f - a gives B_1 = 0.
        for chi in characters_of(&spec("13:")) {
            if !chi.is_trivial() && !chi.is_odd() {
                assert!(bernoulli_b1(&chi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn hasse_q_rules() {
        assert_eq!(hasse_q(&spec("23:"), QPolicy::default()).unwrap().q, 1);
        let full = hasse_q(&spec("155:"), QPolicy::default()).unwrap();
        assert_eq!((full.q, full.certain), (2, true));
        let sub = hasse_q(&spec("155:36"), QPolicy::default()).unwrap();
        assert_eq!((sub.q, sub.certain), (1, false));
        // Q(sqrt(-15)) has composite conductor but only roots of unity as units.
        let quad = hasse_q(&spec("15:2"), QPolicy::pinned(2).unwrap()).unwrap();
        assert_eq!(
            (quad.q, quad.certain, quad.source),
            (1, true, QSource::ImaginaryQuadratic)
        );
        assert!(hasse_q(&spec("5:4"), QPolicy::default()).is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(h_minus_u64(&spec("4:")).unwrap(), 1);
        assert_eq!(h_minus_u64(&spec("3:")).unwrap(), 1);
        assert_eq!(h_minus_u64(&spec("23:")).unwrap(), 3);
        assert!(matches!(
            h_minus(&spec("5:2"), QPolicy::default()),
            Err(Error::NotCm(_))
        ));
    }

    #[test]
    fn maillet_small() {
        assert_eq!(maillet_h_minus(3).unwrap(), BigUint::one());
        assert_eq!(maillet_h_minus(19).unwrap(), BigUint::one());
        assert_eq!(maillet_h_minus(23).unwrap(), BigUint::from(3u32));
        assert!(maillet_h_minus(2).is_err());
        assert!(maillet_h_minus(9).is_err());
    }

    #[test]
    fn relative_quotients() {
        let (r, int) = h_minus_relative(&spec("5:"), &spec("5:"), QPolicy::default()).unwrap();
        assert_eq!((r, int), (q(1, 1), true));
        let (_, int) = h_minus_relative(&spec("35:"), &spec("7:"), QPolicy::default()).unwrap();
        assert!(int);
        assert!(h_minus_relative(&spec("5:"), &spec("7:"), QPolicy::default()).is_err());
    }
}
