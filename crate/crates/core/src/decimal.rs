//! Fixed-precision decimal rendering of exact and transcendental quantities.
//!
//! Values are produced from an integer `floor(v * 10^k)` plus an exactness
//! flag, then rounded to a number of significant digits, ties to even.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

pub const DEFAULT_PRECISION: usize = 50;

/// `floor(v * 10^scale)` for some positive real `v`, with `exact` set when
/// that product is an integer.
#[derive(Clone, Debug)]
pub struct Scaled {
    pub floor: BigUint,
    pub scale: u32,
    pub exact: bool,
}

fn pow10(k: u32) -> BigUint {
    BigUint::from(10u32).pow(k)
}

impl Scaled {
    /// Renders with `digits` significant digits, round-half-even.
    pub fn to_sig_digits(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.floor.is_zero() {
            return "0".into();
        }
        let text = self.floor.to_str_radix(10);
        let len = text.len();
        // value = floor * 10^(-scale); keep the leading `digits` digits.
        let (mut q, mut exp10) = if len > digits {
            let drop = (len - digits) as u32;
            let base = pow10(drop);
            let (q, r) = self.floor.div_rem(&base);
            let half = &base / 2u32;
            let round_up = match r.cmp(&half) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => !self.exact || q.is_odd(),
            };
            let q = if round_up { q + 1u32 } else { q };
            (q, drop as i64 - self.scale as i64)
        } else {
            (self.floor.clone(), -(self.scale as i64))
        };
        // Rounding may carry into a new digit.
        if q.to_str_radix(10).len() > digits {
            q /= 10u32;
            exp10 += 1;
        }
        format_plain(&q.to_str_radix(10), exp10)
    }
}

/// Writes `digits * 10^exp10` in positional notation.
fn format_plain(digits: &str, exp10: i64) -> String {
    if exp10 >= 0 {
        let mut s = digits.to_string();
        s.extend(std::iter::repeat_n('0', exp10 as usize));
        return s;
    }
    let frac = (-exp10) as usize;
    if digits.len() > frac {
        let (int, f) = digits.split_at(digits.len() - frac);
        format!("{int}.{f}")
    } else {
        let zeros = "0".repeat(frac - digits.len());
        format!("0.{zeros}{digits}")
    }
}

/// `base^(num/den)` scaled so that at least `digits + 3` digits are known.
pub fn rational_power(base: &BigUint, num: u64, den: u64, digits: usize) -> Scaled {
    assert!(den >= 1);
    let radicand = Pow::pow(base, num as u32);
    let mut scale = (digits + 3) as u32;
    loop {
        let shifted = &radicand * pow10(scale * den as u32);
        let root = shifted.nth_root(den as u32);
        if root.to_str_radix(10).len() >= digits + 3 {
            let exact = Pow::pow(&root, den as u32) == shifted;
            return Scaled {
                floor: root,
                scale,
                exact,
            };
        }
        scale += digits as u32;
    }
}

/// `floor(pi * 10^digits)` via Machin's formula.
pub fn pi_scaled(digits: u32) -> BigUint {
    let guard = 10;
    let one = pow10(digits + guard);
    let arctan_inv = |x: u32| -> BigUint {
        // sum_{i} (-1)^i / ((2i+1) x^(2i+1)), positive and negative parts apart
        let x2 = BigUint::from(x * x);
        let mut term = &one / x;
        let mut pos = BigUint::zero();
        let mut neg = BigUint::zero();
        let mut i = 0u32;
        while !term.is_zero() {
            let t = &term / (2 * i + 1);
            if i % 2 == 0 {
                pos += t;
            } else {
                neg += t;
            }
            term /= &x2;
            i += 1;
        }
        pos - neg
    };
    let pi = arctan_inv(5) * 16u32 - arctan_inv(239) * 4u32;
    pi / pow10(guard)
}

/// `floor(num / den * 10^scale)`, exact when the division leaves no remainder.
pub fn ratio_scaled(num: &BigUint, den: &BigUint, scale: u32) -> Scaled {
    let shifted = num * pow10(scale);
    let (q, r) = shifted.div_rem(den);
    Scaled {
        floor: q,
        scale,
        exact: r.is_zero(),
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let pi = pi_scaled(30).to_str_radix(10);
        assert_eq!(pi, "3141592653589793238462643383279");
    }

    #[test]
    fn three_quarter_power_of_five() {
        // 5^(3/4)
        let v = rational_power(&BigUint::from(5u32), 3, 4, 20);
        assert!(!v.exact);
        assert_eq!(v.to_sig_digits(5), "3.3437");
        let two = rational_power(&BigUint::from(4u32), 1, 2, 10);
        assert!(two.exact);
        assert_eq!(two.to_sig_digits(10), "2.000000000");
    }

    #[test]
    fn ties_go_to_even() {
        let s = Scaled {
            floor: BigUint::from(125u32),
            scale: 2,
            exact: true,
        };
        assert_eq!(s.to_sig_digits(2), "1.2");
        let s = Scaled {
            floor: BigUint::from(135u32),
            scale: 2,
            exact: true,
        };
        assert_eq!(s.to_sig_digits(2), "1.4");
        let inexact = Scaled {
            floor: BigUint::from(125u32),
            scale: 2,
            exact: false,
        };
        assert_eq!(inexact.to_sig_digits(2), "1.3");
    }

    #[test]
    fn carry_adds_digit() {
        let s = Scaled {
            floor: BigUint::from(9996u32),
            scale: 3,
            exact: true,
        };
        assert_eq!(s.to_sig_digits(3), "10.0");
    }

    #[test]
    fn small_and_large_values() {
        assert_eq!(format_plain("123", -5), "0.00123");
        assert_eq!(format_plain("123", 2), "12300");
    }
}
