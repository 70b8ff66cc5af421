//! Exact arithmetic in `Q(zeta_N)` with the power basis modulo `Phi_N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg};

use crate::algebra::{divisors, euler_phi, factor};

/// Dense polynomial with rational coefficients, lowest degree first, no
/// trailing zeros (the zero polynomial is empty).
pub type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Remainder of `a` divided by `b`, `b` non-zero.
pub fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            let t = &q * bi;
            r[i + shift] -= t;
        }
        trim(&mut r);
    }
    r
}

/// `Res(a, b)`, normalized so that `Res(a, b) = lc(a)^deg(b) * prod b(alpha)`
/// over the roots `alpha` of `a`.
pub fn resultant(a: &Poly, b: &Poly) -> BigRational {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    let (Some(_), Some(_)) = (degree(&a), degree(&b)) else {
        return BigRational::zero();
    };
    let mut acc = BigRational::one();
    loop {
        let m = degree(&a).expect("non-zero");
        let n = degree(&b).expect("non-zero");
        if n == 0 {
            return acc * pow(&b[0], m);
        }
        if m == 0 {
            return acc * pow(&a[0], n);
        }
        if m < n {
            // Res(a, b) = (-1)^(mn) Res(b, a)
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a = q b + r:  Res(a, b) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)
        let r = poly_rem(&a, &b);
        let Some(dr) = degree(&r) else {
            return BigRational::zero();
        };
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow(&b[n], m - dr);
        a = b;
        b = r;
    }
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

fn mobius(n: u64) -> i32 {
    let f = factor(n).expect("positive");
    if f.pairs().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by the monic `b`.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "inexact division");
    q
}

/// `Phi_n` as `prod_{d | n} (x^d - 1)^mu(n/d)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let binomial = |d: u64| {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        p
    };
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = int_mul(&num, &binomial(d)),
            -1 => den = int_mul(&den, &binomial(d)),
            _ => {}
        }
    }
    int_div_exact(&num, &den)
}

/// An element of `Q(zeta_N)` in the basis `1, zeta, ..., zeta^(phi(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    fn modulus_poly(order: u64) -> Poly {
        cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    fn from_poly(order: u64, p: &Poly) -> Self {
        let phi = euler_phi(order).expect("positive") as usize;
        let mut r = poly_rem(p, &Self::modulus_poly(order));
        r.resize(phi, BigRational::zero());
        CycloElement { order, coeffs: r }
    }

    pub fn zero(order: u64) -> Self {
        Self::from_poly(order, &Vec::new())
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        Self::from_poly(order, &vec![r])
    }

    /// `zeta_N^k`.
    pub fn zeta_power(order: u64, k: u64) -> Self {
        let mut p = vec![BigRational::zero(); (k % order) as usize + 1];
        p[(k % order) as usize] = BigRational::one();
        Self::from_poly(order, &p)
    }

    /// `sum_k weights[k] zeta_N^k` for `k < N`.
    pub fn from_exponent_weights(order: u64, weights: &[BigInt]) -> Self {
        assert!(weights.len() as u64 <= order);
        let p: Poly = weights
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        Self::from_poly(order, &p)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Power-basis coordinates, length `phi(N)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `N_{Q(zeta_N)/Q}`, the product of all conjugates, as `Res(Phi_N, b)`.
    pub fn norm(&self) -> BigRational {
        let mut b = self.coeffs.clone();
        trim(&mut b);
        if b.is_empty() {
            return BigRational::zero();
        }
        resultant(&Self::modulus_poly(self.order), &b)
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.order, rhs.order);
        CycloElement {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.order, rhs.order);
        let mut p = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                p[i + j] += a * b;
            }
        }
        CycloElement::from_poly(self.order, &p)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        self.scale(&-BigRational::one())
    }
}

/// Whether a rational is a positive integer.
pub fn is_positive_integer(r: &BigRational) -> bool {
    r.is_integer() && r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
        assert_eq!(cyclotomic_polynomial(155).len(), 121);
    }

    #[test]
    fn norm_examples() {
        let r = CycloElement::from_rational(12, q(3, 2));
        assert_eq!(r.norm(), q(81, 16));
        assert_eq!(CycloElement::zeta_power(4, 1).norm(), q(1, 1));
        let one_plus_zeta3 =
            &CycloElement::from_rational(3, q(1, 1)) + &CycloElement::zeta_power(3, 1);
        assert_eq!(one_plus_zeta3.norm(), q(1, 1));
        // 1 - zeta_p has norm p
        let one_minus =
            &CycloElement::from_rational(7, q(1, 1)) + &(-&CycloElement::zeta_power(7, 1));
        assert_eq!(one_minus.norm(), q(7, 1));
    }

    #[test]
    fn zeta_has_order_n() {
        let z = CycloElement::zeta_power(9, 1);
        let mut acc = CycloElement::from_rational(9, q(1, 1));
        for _ in 0..9 {
            acc = &acc * &z;
        }
        assert_eq!(acc.as_rational(), Some(q(1, 1)));
        assert_eq!(
            CycloElement::zeta_power(9, 9),
            CycloElement::from_rational(9, q(1, 1))
        );
    }

    #[test]
    fn resultant_matches_root_products() {
        // Res(x^2 - 2, x - 3) = (3 - sqrt2)(3 + sqrt2)... with our sign convention: b(r1) b(r2)
        let a = vec![q(-2, 1), q(0, 1), q(1, 1)];
        let b = vec![q(-3, 1), q(1, 1)];
        assert_eq!(resultant(&a, &b), q(7, 1));
        assert_eq!(resultant(&b, &a), q(7, 1));
        // Res(x^2+1, 2x+1) = (2i+1)(-2i+1) = 5
        let a = vec![q(1, 1), q(0, 1), q(1, 1)];
        let b = vec![q(1, 1), q(2, 1)];
        assert_eq!(resultant(&a, &b), q(5, 1));
    }
}
