//! Word-size modular arithmetic: factorization, totients, orders, CRT.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Prime factorization `n = prod p^e`, primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Product of the prime powers, i.e. the factored number.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.0.len() == 1
    }

    /// The prime-power parts `p^e`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32, u64)> + '_ {
        self.0.iter().map(|&(p, e)| (p, e, p.pow(e)))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut out = Vec::new();
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(Factorization(out))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p)).collect()
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factor(n)?
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Least `j >= 1` with `a^j = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, b: n });
    }
    if n <= 2 {
        return Ok(1);
    }
    // The order divides phi(n); strip prime factors of phi(n) while possible.
    let phi = euler_phi(n)?;
    let mut order = phi;
    for p in factor(phi)?.primes() {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Whether some power of `p` is congruent to `-1` modulo `n`.
pub fn is_self_conjugate(p: u64, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if p.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a: p, b: n });
    }
    if n <= 2 {
        return Ok(true);
    }
    let order = mult_order(p, n)?;
    if order % 2 == 1 {
        return Ok(false);
    }
    // In a cyclic group <p> of even order the unique involution is p^(order/2).
    Ok(pow_mod(p, order / 2, n) == n - 1)
}

/// Least non-negative `x` with `x = r_i (mod m_i)` for pairwise coprime `m_i`.
pub fn crt_lift(congruences: &[(u64, u64)]) -> Result<u64> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in congruences {
        if m == 0 {
            return Err(Error::InvalidArgument("zero modulus in CRT".into()));
        }
        let g = (modulus as u64).gcd(&m);
        if g != 1 {
            return Err(Error::NotCoprime {
                a: modulus as u64,
                b: m,
            });
        }
        let r = (r % m) as u128;
        let m128 = m as u128;
        // x + modulus * t = r (mod m)
        let inv = inv_mod((modulus % m128) as u64, m).expect("coprime moduli") as u128;
        let diff = (r + m128 - x % m128) % m128;
        let t = diff * inv % m128;
        x += modulus * t;
        modulus *= m128;
        if modulus > u64::MAX as u128 {
            return Err(Error::Overflow);
        }
    }
    Ok(x as u64)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Kronecker symbol `(d / p)` for an odd prime `p`.
pub fn kronecker_odd_prime(d: i64, p: u64) -> i32 {
    let a = reduce_signed(d, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert_eq!(factor(155).unwrap().pairs(), &[(5, 1), (31, 1)]);
        assert!(factor(1).unwrap().pairs().is_empty());
        assert_eq!(factor(676).unwrap().pairs(), &[(2, 2), (13, 2)]);
        assert!(factor(0).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(155).unwrap(), 120);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(676).unwrap(), 312);
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(5, 31).unwrap(), 3);
        assert_eq!(mult_order(1, 17).unwrap(), 1);
        assert_eq!(mult_order(31, 5).unwrap(), 1);
        assert!(matches!(mult_order(5, 10), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn self_conjugate_examples() {
        assert!(!is_self_conjugate(5, 31).unwrap());
        assert!(is_self_conjugate(3, 4).unwrap());
        assert!(is_self_conjugate(2, 5).unwrap());
        assert!(is_self_conjugate(7, 1).unwrap());
        assert!(is_self_conjugate(7, 2).unwrap());
        assert!(is_self_conjugate(3, 6).is_err());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_lift(&[(1, 4), (2, 5)]).unwrap(), 17);
        assert_eq!(crt_lift(&[(0, 1)]).unwrap(), 0);
        assert_eq!(crt_lift(&[(3, 7), (3, 11)]).unwrap(), 3);
        assert!(crt_lift(&[(1, 4), (1, 6)]).is_err());
        assert_eq!(crt_lift(&[(1, 5), (5, 31)]).unwrap(), 36);
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
