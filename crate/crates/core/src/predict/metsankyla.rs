use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use super::Verdict;
use crate::algebra::factor;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::hminus::{h_minus, HMinusResult, QPolicy, QSource};
use crate::report::{as_opt_string, as_string};

/// One field entering the product decomposition and its oracle value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldValue {
    pub role: String,
    pub field: String,
    pub degree: u64,
    #[serde(serialize_with = "as_string")]
    pub h_minus: BigUint,
    pub q: u8,
    pub q_certain: bool,
    pub q_source: QSource,
}

impl FieldValue {
    fn new(role: &str, r: &HMinusResult) -> Self {
        FieldValue {
            role: role.to_string(),
            field: r.field.clone(),
            degree: r.degree,
            h_minus: r.h_minus.clone(),
            q: r.q,
            q_certain: r.q_certain,
            q_source: r.q_source,
        }
    }
}

/// `h^-(L1 L2) = h^-(L1) h^-(L2) T1 T2` with `T1 = h^-(L1 L2^+)/h^-(L1)` and
/// `T2 = h^-(L2 L1^+)/h^-(L2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetsankylaReport {
    pub fields: Vec<FieldValue>,
    #[serde(serialize_with = "as_string")]
    pub t1: BigRational,
    #[serde(serialize_with = "as_string")]
    pub t2: BigRational,
    pub t1_integral: bool,
    pub t2_integral: bool,
    pub identity_holds: bool,
    #[serde(serialize_with = "as_opt_string")]
    pub predicted_order: Option<BigUint>,
    pub t2_divisible_by_prediction: Option<bool>,
    pub verdict: Verdict,
}

fn prime_of_conductor(spec: &FieldSpec) -> Result<u64> {
    let f = factor(spec.conductor())?;
    match f.pairs() {
        [(p, _)] => Ok(*p),
        _ => Err(Error::InvalidArgument(format!(
            "{spec} must have prime power conductor"
        ))),
    }
}

pub fn metsankyla_check(
    l1: &FieldSpec,
    l2: &FieldSpec,
    predicted_order: Option<BigUint>,
    policy: QPolicy,
) -> Result<MetsankylaReport> {
    for l in [l1, l2] {
        if !l.is_cm() {
            return Err(Error::NotCm(l.to_string()));
        }
    }
    let (p, q) = (prime_of_conductor(l1)?, prime_of_conductor(l2)?);
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "conductors of {l1} and {l2} must be powers of distinct primes"
        )));
    }
    let l = l1.compositum(l2)?;
    let a = l1.compositum(&l2.maximal_real_subfield())?;
    let b = l2.compositum(&l1.maximal_real_subfield())?;

    let hl = h_minus(&l, policy)?;
    let h1 = h_minus(l1, policy)?;
    let h2 = h_minus(l2, policy)?;
    let ha = h_minus(&a, policy)?;
    let hb = h_minus(&b, policy)?;

    let r = |x: &BigUint| BigRational::from_integer(BigInt::from(x.clone()));
    let t1 = r(&ha.h_minus) / r(&h1.h_minus);
    let t2 = r(&hb.h_minus) / r(&h2.h_minus);
    let identity_holds = hl.h_minus == &ha.h_minus * &hb.h_minus;
    let t2_divisible_by_prediction = predicted_order
        .as_ref()
        .map(|d| t2.is_integer() && (&t2 / r(d)).is_integer());

    let all = [&hl, &h1, &h2, &ha, &hb];
    let certain = all
        .iter()
        .all(|h| h.q_certain || h.q_source == QSource::Override);
    let verdict = if !(identity_holds && t1.is_integer() && t2.is_integer())
        || t2_divisible_by_prediction == Some(false)
    {
        if certain {
            Verdict::Refuted
        } else {
            Verdict::OracleAmbiguousBy2
        }
    } else if certain {
        Verdict::Verified
    } else {
        Verdict::OracleAmbiguousBy2
    };

    Ok(MetsankylaReport {
        fields: vec![
            FieldValue::new("L", &hl),
            FieldValue::new("L1", &h1),
            FieldValue::new("L2", &h2),
            FieldValue::new("L1 L2^+", &ha),
            FieldValue::new("L2 L1^+", &hb),
        ],
        t1_integral: t1.is_integer(),
        t2_integral: t2.is_integer(),
        t1,
        t2,
        identity_holds,
        predicted_order,
        t2_divisible_by_prediction,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_and_eisenstein() {
        let r = metsankyla_check(&spec("4:"), &spec("3:"), None, QPolicy::default()).unwrap();
        assert!(r.identity_holds && r.t1_integral && r.t2_integral);
        assert_eq!(r.verdict, Verdict::Verified);
    }

    #[test]
    fn five_and_seven() {
        let r = metsankyla_check(&spec("5:"), &spec("7:"), None, QPolicy::default()).unwrap();
        assert!(r.identity_holds && r.t1_integral && r.t2_integral);
        assert!(metsankyla_check(&spec("5:"), &spec("25:"), None, QPolicy::default()).is_err());
        assert!(metsankyla_check(&spec("5:4"), &spec("7:"), None, QPolicy::default()).is_err());
    }
}
