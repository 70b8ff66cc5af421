use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use super::character::characters_of;
use super::spec::FieldSpec;
use crate::algebra::factor;
use crate::decimal::{self, factorial, pi_scaled, ratio_scaled, Scaled};
use crate::error::{Error, Result};

/// `base^(num/den)` with `base` not a perfect power of an integer > 1 and
/// `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPower {
    #[serde(serialize_with = "crate::report::as_string")]
    pub base: BigUint,
    pub num: u64,
    pub den: u64,
}

impl RationalPower {
    /// Normal form of `(prod p^e)^(1/degree)`.
    pub fn root_of(prime_exponents: &BTreeMap<u64, u64>, degree: u64) -> Self {
        let g = prime_exponents.values().fold(0u64, |g, e| g.gcd(e));
        if g == 0 {
            return RationalPower {
                base: BigUint::one(),
                num: 0,
                den: 1,
            };
        }
        let base = prime_exponents
            .iter()
            .map(|(&p, &e)| BigUint::from(p).pow((e / g) as u32))
            .product();
        let d = g.gcd(&degree);
        RationalPower {
            base,
            num: g / d,
            den: degree / d,
        }
    }

    pub fn scaled(&self, digits: usize) -> Scaled {
        decimal::rational_power(&self.base, self.num, self.den, digits)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.scaled(digits).to_sig_digits(digits)
    }
}

impl fmt::Display for RationalPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 1) => write!(f, "{}", self.base),
            (n, 1) => write!(f, "{}^{n}", self.base),
            (n, d) => write!(f, "{}^({n}/{d})", self.base),
        }
    }
}

/// Discriminant data of an abelian field via the conductor-discriminant formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDiscriminant {
    pub field: String,
    pub degree: u64,
    /// `|disc|` as the product of the conductors of the field's characters.
    #[serde(serialize_with = "crate::report::as_string")]
    pub discriminant: BigUint,
    /// Conductor exponents `{f: multiplicity}`.
    pub conductors: BTreeMap<u64, u64>,
    /// `{p: v_p(disc)}`.
    pub prime_exponents: BTreeMap<u64, u64>,
    pub root_discriminant: RationalPower,
}

impl RootDiscriminant {
    /// Exact test of `rd < degree`, i.e. `|disc| < degree^degree`.
    pub fn below_degree(&self) -> bool {
        self.discriminant < BigUint::from(self.degree).pow(self.degree as u32)
    }

    /// The root discriminant as a product over primes, e.g. `5^(9/10) * 31^(29/30)`.
    pub fn factored(&self) -> String {
        if self.prime_exponents.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .prime_exponents
            .iter()
            .map(|(&p, &e)| {
                let g = e.gcd(&self.degree);
                match (e / g, self.degree / g) {
                    (1, 1) => p.to_string(),
                    (n, 1) => format!("{p}^{n}"),
                    (n, d) => format!("{p}^({n}/{d})"),
                }
            })
            .collect();
        parts.join(" * ")
    }
}

pub fn root_discriminant(spec: &FieldSpec) -> Result<RootDiscriminant> {
    let mut conductors: BTreeMap<u64, u64> = BTreeMap::new();
    for chi in characters_of(spec) {
        *conductors.entry(chi.conductor()).or_default() += 1;
    }
    let mut exponents: BTreeMap<u64, u64> = BTreeMap::new();
    for (&f, &k) in &conductors {
        for &(p, e) in factor(f)?.pairs() {
            *exponents.entry(p).or_default() += e as u64 * k;
        }
    }
    let discriminant = exponents
        .iter()
        .map(|(&p, &e)| BigUint::from(p).pow(e as u32))
        .product();
    Ok(RootDiscriminant {
        field: spec.to_string(),
        degree: spec.degree(),
        discriminant,
        conductors,
        root_discriminant: RationalPower::root_of(&exponents, spec.degree()),
        prime_exponents: exponents,
    })
}

/// `[(pi/4)^s n^n / n!]^2` to `digits` significant digits.
pub fn minkowski_bound(n: u64, s: u64, digits: usize) -> Result<String> {
    if n == 0 || 2 * s > n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and 0 <= 2s <= n, got n={n}, s={s}"
        )));
    }
    let nn = BigUint::from(n).pow(n as u32);
    let fact = factorial(n);
    let scale = (digits + 10) as u32;
    if s == 0 {
        let num = &nn * &nn;
        let den = &fact * &fact;
        return Ok(ratio_scaled(&num, &den, scale).to_sig_digits(digits));
    }
    // pi = P / 10^k with k well beyond the requested digits.
    let k = (digits + 20 + 2 * s as usize) as u32;
    let pi = pi_scaled(k);
    let num = pi.pow(2 * s as u32) * &nn * &nn;
    let den = BigUint::from(10u32).pow(2 * s as u32 * k)
        * BigUint::from(16u32).pow(s as u32)
        * &fact
        * &fact;
    let mut v = ratio_scaled(&num, &den, scale);
    v.exact = false;
    Ok(v.to_sig_digits(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rd_examples() {
        let rd = root_discriminant(&"5:".parse().unwrap()).unwrap();
        assert_eq!(rd.discriminant, BigUint::from(125u32));
        assert_eq!(rd.root_discriminant.to_string(), "5^(3/4)");
        assert_eq!(rd.root_discriminant.to_decimal(5), "3.3437");
        assert_eq!(rd.factored(), "5^(3/4)");

        let big = root_discriminant(&"155:".parse().unwrap()).unwrap();
        assert_eq!(big.factored(), "5^(3/4) * 31^(29/30)");

        let q = root_discriminant(&"1:".parse().unwrap()).unwrap();
        assert_eq!(q.discriminant, BigUint::one());
        assert_eq!(q.root_discriminant.to_string(), "1");

        let gauss = root_discriminant(&"4:".parse().unwrap()).unwrap();
        assert_eq!(gauss.discriminant, BigUint::from(4u32));
        assert_eq!(gauss.root_discriminant.to_string(), "2");
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(minkowski_bound(2, 1, 5).unwrap(), "2.4674");
        assert_eq!(minkowski_bound(1, 0, 5).unwrap(), "1.0000");
        assert_eq!(minkowski_bound(2, 0, 3).unwrap(), "4.00");
        assert!(minkowski_bound(2, 2, 5).is_err());
        // 50 digits of (pi/2)^2
        assert_eq!(
            minkowski_bound(2, 1, 50).unwrap(),
            "2.4674011002723396547086227499690377838284248518102"
        );
    }
}
