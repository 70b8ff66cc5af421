use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::spec::FieldSpec;
use crate::algebra::{divisors, euler_phi, is_prime, is_self_conjugate, mult_order};
use crate::error::{Error, Result};

/// Splitting data of a prime `p` in `Q(zeta_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionData {
    pub n: u64,
    pub p: u64,
    /// Order of `p` modulo `n`.
    pub order: u64,
    /// Degree of the decomposition field, `phi(n) / order`.
    pub e: u64,
    /// Number of roots of unity in the decomposition field.
    pub w: u64,
    pub self_conjugate: bool,
}

fn check_prime_and_modulus(n: u64, p: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n % 4 == 2 {
        return Err(Error::ModulusTwoModFour(n));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n % p == 0 {
        return Err(Error::NotCoprime { a: p, b: n });
    }
    Ok(())
}

/// The decomposition field of `p` in `Q(zeta_n)`: the fixed field of `<p>`.
pub fn decomposition_field(n: u64, p: u64) -> Result<(FieldSpec, DecompositionData)> {
    check_prime_and_modulus(n, p)?;
    let spec = FieldSpec::new(n, &[p % n])?;
    let order = mult_order(p, n)?;
    let data = DecompositionData {
        n,
        p,
        order,
        e: euler_phi(n)? / order,
        w: w_lemma(n, p)?,
        self_conjugate: is_self_conjugate(p, n)?,
    };
    Ok((spec, data))
}

/// Roots of unity in the decomposition field of `p` in `Q(zeta_n)`, by the
/// closed-form case split on `p` and the parity of `n`.
pub fn w_lemma(n: u64, p: u64) -> Result<u64> {
    check_prime_and_modulus(n, p)?;
    Ok(if p == 2 {
        2
    } else if n % 2 == 0 {
        (p - 1).gcd(&n)
    } else {
        (p - 1).gcd(&(2 * n))
    })
}

/// Number of roots of unity in an arbitrary abelian field, read off from
/// which `Q(zeta_t)`, `t | m`, it contains. Always even.
pub fn w_general(spec: &FieldSpec) -> u64 {
    let t = divisors(spec.modulus())
        .into_iter()
        .filter(|&t| spec.contains_cyclotomic(t))
        .fold(1u64, |acc, t| acc.lcm(&t));
    if t % 2 == 1 {
        2 * t
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        let (k, d) = decomposition_field(31, 5).unwrap();
        assert_eq!(k.degree(), 10);
        assert_eq!(d.e, 10);
        assert_eq!(d.order, 3);
        assert!(!d.self_conjugate);
        assert!(k.is_cm());

        let (k, d) = decomposition_field(5, 31).unwrap();
        assert_eq!(k.degree(), 4);
        assert_eq!((d.e, d.order), (4, 1));

        let (k, d) = decomposition_field(12, 13).unwrap();
        assert_eq!((k.degree(), d.order), (4, 1));

        assert!(decomposition_field(6, 5).is_err());
        assert!(decomposition_field(5, 5).is_err());
        assert!(decomposition_field(5, 6).is_err());
    }

    #[test]
    fn w_lemma_examples() {
        assert_eq!(w_lemma(15, 2).unwrap(), 2);
        assert_eq!(w_lemma(5, 31).unwrap(), 10);
        assert_eq!(w_lemma(4, 5).unwrap(), 4);
        assert_eq!(w_lemma(31, 5).unwrap(), 2);
    }

    #[test]
    fn w_general_examples() {
        assert_eq!(w_general(&"5:".parse().unwrap()), 10);
        assert_eq!(w_general(&"4:".parse().unwrap()), 4);
        assert_eq!(w_general(&"31:5".parse().unwrap()), 2);
        assert_eq!(w_general(&"1:".parse().unwrap()), 2);
        assert_eq!(w_general(&"155:".parse().unwrap()), 310);
        assert_eq!(w_general(&"12:".parse().unwrap()), 12);
    }
}
