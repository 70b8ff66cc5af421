//! Finite abelian groups: invariant-factor types, presentations, and the unit
//! groups `(Z/m)^*` with explicit discrete logarithms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::arith::{factor, mul_mod, pow_mod};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A finite abelian group `Z/d_1 x ... x Z/d_k` with `d_i | d_{i+1}` and all
/// `d_i >= 2`. The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianType(Vec<u64>);

impl AbelianType {
    pub fn trivial() -> Self {
        AbelianType(Vec::new())
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Canonical type of `Z/n_1 x ... x Z/n_k` for arbitrary orders `n_i >= 1`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        // Collect prime-power parts, then recombine largest-with-largest.
        let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            assert!(n >= 1, "cyclic factor of order zero");
            for &(p, e) in factor(n).expect("n >= 1").pairs() {
                parts.entry(p).or_default().push(e);
            }
        }
        let len = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in parts {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in exps.into_iter().enumerate() {
                factors[len - 1 - i] *= p.pow(e);
            }
        }
        AbelianType(factors)
    }

    /// Validates an explicit invariant-factor list.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument(
                "invariant factors must be >= 2".into(),
            ));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(AbelianType(factors))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.0.iter().map(|&d| BigUint::from(d)).product()
    }

    pub fn exponent(&self) -> u64 {
        self.0.last().copied().unwrap_or(1)
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianType) -> AbelianType {
        let mut all = self.0.clone();
        all.extend_from_slice(&other.0);
        Self::from_cyclic_orders(&all)
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> AbelianType {
        let all: Vec<u64> = (0..k).flat_map(|_| self.0.iter().copied()).collect();
        Self::from_cyclic_orders(&all)
    }

    /// Whether a group of type `sub` embeds into a group of type `self`.
    /// With both factor lists read from the largest down, this holds iff each
    /// factor of `sub` divides the corresponding factor of `self`.
    pub fn admits_subgroup(&self, sub: &AbelianType) -> bool {
        if sub.rank() > self.rank() {
            return false;
        }
        sub.0
            .iter()
            .rev()
            .zip(self.0.iter().rev())
            .all(|(c, g)| g % c == 0)
    }
}

impl TryFrom<Vec<u64>> for AbelianType {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::from_invariant_factors(v)
    }
}

impl From<AbelianType> for Vec<u64> {
    fn from(t: AbelianType) -> Vec<u64> {
        t.0
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Group repeated factors as (Z/d)^k.
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let d = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == d {
                j += 1;
            }
            parts.push(if j - i == 1 {
                format!("Z/{d}")
            } else {
                format!("(Z/{d})^{}", j - i)
            });
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

fn type_from_diagonal(diag: &[BigInt]) -> Result<AbelianType> {
    let mut factors = Vec::new();
    for d in diag {
        if d.is_one() {
            continue;
        }
        factors.push(d.to_u64().ok_or(Error::Overflow)?);
    }
    AbelianType::from_invariant_factors(factors)
}

/// Invariant factors of the cokernel `Z^cols / rowspace(m)`.
pub fn snf(m: &IntMatrix) -> Result<AbelianType> {
    let (diag, _) = m.smith_with_transform();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    if rank < m.cols() {
        return Err(Error::InfiniteCokernel {
            rank,
            cols: m.cols(),
        });
    }
    type_from_diagonal(&diag)
}

/// Structure of the subgroup generated by the rows of `gens` inside the
/// finite group `Z^k / rowspace(relations)`.
pub fn subgroup_structure(relations: &IntMatrix, gens: &IntMatrix) -> Result<AbelianType> {
    if gens.rows() == 0 {
        return Ok(AbelianType::trivial());
    }
    // y in Z^s maps to zero iff (y, z) * [gens; relations] = 0 for some z.
    let stacked = gens.vstack(relations)?;
    let kernel = stacked.left_kernel().leading_columns(gens.rows());
    snf(&kernel)
}

/// A finite abelian group `Z^k / rowspace(relations)` with canonical
/// coordinates for its elements.
#[derive(Clone, Debug)]
pub struct FinitePresentation {
    relations: IntMatrix,
    structure: AbelianType,
    /// Non-trivial diagonal entries and the columns of `V` they read from.
    moduli: Vec<(usize, BigInt)>,
    transform: IntMatrix,
}

impl FinitePresentation {
    pub fn new(relations: IntMatrix) -> Result<Self> {
        let (diag, transform) = relations.smith_with_transform();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        if rank < relations.cols() {
            return Err(Error::InfiniteCokernel {
                rank,
                cols: relations.cols(),
            });
        }
        let structure = type_from_diagonal(&diag)?;
        let moduli = diag
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .collect();
        Ok(FinitePresentation {
            relations,
            structure,
            moduli,
            transform,
        })
    }

    pub fn structure(&self) -> &AbelianType {
        &self.structure
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generators(&self) -> usize {
        self.relations.cols()
    }

    /// Canonical coordinates of the class of `x`: equal classes give equal
    /// vectors, and the zero class gives all zeros.
    pub fn class_of(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.transform.left_mul_vec(x);
        self.moduli
            .iter()
            .map(|(col, d)| y[*col].mod_floor(d))
            .collect()
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.class_of(x).iter().all(Zero::is_zero)
    }

    /// Structure of the subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &IntMatrix) -> Result<AbelianType> {
        subgroup_structure(&self.relations, gens)
    }
}

/// Generators of `{x in Z^k : sum x_i c_i = 0 (mod n)}`.
pub fn congruence_kernel(coeffs: &[BigInt], modulus: &BigInt) -> IntMatrix {
    kernel_mod(
        &IntMatrix::from_rows(&coeffs.iter().map(|c| vec![c.clone()]).collect::<Vec<_>>())
            .expect("column vector"),
        std::slice::from_ref(modulus),
    )
}

/// Generators of `{x in Z^rows : x * m = 0 (mod moduli_j) in column j}`.
pub fn kernel_mod(m: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(m.cols(), moduli.len());
    let stacked = m
        .vstack(&IntMatrix::diagonal(moduli))
        .expect("matching widths");
    stacked.left_kernel().leading_columns(m.rows())
}

/// A cyclic direct factor of `(Z/m)^*` attached to one prime power of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicFactor {
    pub prime: u64,
    pub prime_power: u64,
    /// Generator modulo the prime power.
    pub local_generator: u64,
    /// The same generator lifted to `m` (congruent to 1 at the other primes).
    pub generator: u64,
    pub order: u64,
}

/// `(Z/m)^*` as a product of cyclic factors, one per odd prime power and up
/// to two for the 2-part.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
    structure: AbelianType,
}

fn bsgs(g: u64, h: u64, order: u64, modulus: u64) -> Option<u64> {
    let step = (order as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::with_capacity(step as usize);
    let mut cur = 1u64 % modulus;
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, g, modulus);
    }
    // g^(-step)
    let g_inv = pow_mod(g, order - 1, modulus);
    let giant = pow_mod(g_inv, step, modulus);
    let mut gamma = h % modulus;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return Some((i * step + j) % order);
        }
        gamma = mul_mod(gamma, giant, modulus);
    }
    None
}

fn local_order(a: u64, q: u64, group_order: u64) -> u64 {
    let mut order = group_order;
    for p in factor(group_order).expect("positive").primes() {
        while order % p == 0 && pow_mod(a, order / p, q) == 1 {
            order /= p;
        }
    }
    order
}

impl UnitGroup {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let fact = factor(m)?;
        let mut factors = Vec::new();
        for (p, e, q) in fact.prime_powers() {
            let lift = |local: u64| -> u64 {
                super::arith::crt_lift(&[(local, q), (1, m / q)]).expect("coprime parts")
            };
            if p == 2 {
                if e >= 2 {
                    factors.push(CyclicFactor {
                        prime: 2,
                        prime_power: q,
                        local_generator: q - 1,
                        generator: lift(q - 1),
                        order: 2,
                    });
                }
                if e >= 3 {
                    factors.push(CyclicFactor {
                        prime: 2,
                        prime_power: q,
                        local_generator: 5,
                        generator: lift(5),
                        order: q / 4,
                    });
                }
            } else {
                let order = (p - 1) * q / p;
                let g = (2..q)
                    .find(|&g| g % p != 0 && local_order(g, q, order) == order)
                    .expect("odd prime powers have primitive roots");
                factors.push(CyclicFactor {
                    prime: p,
                    prime_power: q,
                    local_generator: g,
                    generator: lift(g),
                    order,
                });
            }
        }
        let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
        Ok(UnitGroup {
            modulus: m,
            structure: AbelianType::from_cyclic_orders(&orders),
            factors,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn structure(&self) -> &AbelianType {
        &self.structure
    }

    pub fn generators(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.generator).collect()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Exponent vector of `a` with respect to the cyclic factors.
    pub fn log(&self, a: u64) -> Result<Vec<u64>> {
        let a = a % self.modulus;
        if a.gcd(&self.modulus) != 1 {
            return Err(Error::NotCoprime { a, b: self.modulus });
        }
        let mut out = Vec::with_capacity(self.factors.len());
        let mut i = 0;
        while i < self.factors.len() {
            let f = &self.factors[i];
            let local = a % f.prime_power;
            if f.prime == 2 {
                let q = f.prime_power;
                let sign = u64::from(local % 4 == 3);
                out.push(sign);
                if q >= 8 {
                    let unsigned = if sign == 1 { q - local } else { local };
                    let g = &self.factors[i + 1];
                    let t = bsgs(5, unsigned, g.order, q).expect("5 generates 1 + 4Z");
                    out.push(t);
                    i += 1;
                }
            } else {
                out.push(
                    bsgs(f.local_generator, local, f.order, f.prime_power)
                        .expect("primitive root generates"),
                );
            }
            i += 1;
        }
        Ok(out)
    }

    /// Inverse of [`UnitGroup::log`].
    pub fn element(&self, exps: &[u64]) -> u64 {
        self.factors
            .iter()
            .zip(exps)
            .fold(1 % self.modulus, |acc, (f, &e)| {
                mul_mod(acc, pow_mod(f.generator, e, self.modulus), self.modulus)
            })
    }

    /// The relation matrix `diag(orders)`.
    pub fn relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.orders())
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        let m = self.modulus;
        (0..m).filter(move |a| a.gcd(&m) == 1)
    }
}

/// Invariant factors of `(Z/m)^*` and its cyclic generators.
pub fn unit_group_type(m: u64) -> Result<(AbelianType, Vec<u64>)> {
    let g = UnitGroup::new(m)?;
    Ok((g.structure.clone(), g.generators()))
}

/// Structure of the subgroup of `(Z/m)^*` generated by `gens`.
pub fn subgroup_type(m: u64, gens: &[u64]) -> Result<AbelianType> {
    let group = UnitGroup::new(m)?;
    let mut logs = IntMatrix::with_cols(group.factors().len());
    for &g in gens {
        logs.push_row(&group.log(g)?)?;
    }
    subgroup_structure(&group.relations(), &logs)
}
