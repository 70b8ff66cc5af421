//! Ray class groups of imaginary quadratic fields of class number one modulo
//! a rational prime power that splits, with the norm-kernel subgroup.

mod checks;
mod lemma3;

pub use checks::{esf_check, translation_check, EsfReport, TranslationReport};
pub use lemma3::{lemma3_check, Lemma3Report};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{
    euler_phi, inv_mod, is_prime, kronecker_odd_prime, mul_mod, pow_mod, reduce_signed,
    subgroup_structure, AbelianType, FinitePresentation, IntMatrix, UnitGroup,
};
use crate::error::{Error, Result};
use crate::predict::{cnf_degree, scholz_subgroup, BaseFieldInvariants};

/// Default bound on the number of group elements enumerated by brute force.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// An imaginary quadratic field with class number one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticBase {
    pub name: &'static str,
    pub disc: i64,
    pub w: u64,
}

pub const BASES: [QuadraticBase; 9] = [
    QuadraticBase {
        name: "eisenstein",
        disc: -3,
        w: 6,
    },
    QuadraticBase {
        name: "gaussian",
        disc: -4,
        w: 4,
    },
    QuadraticBase {
        name: "d-7",
        disc: -7,
        w: 2,
    },
    QuadraticBase {
        name: "d-8",
        disc: -8,
        w: 2,
    },
    QuadraticBase {
        name: "d-11",
        disc: -11,
        w: 2,
    },
    QuadraticBase {
        name: "d-19",
        disc: -19,
        w: 2,
    },
    QuadraticBase {
        name: "d-43",
        disc: -43,
        w: 2,
    },
    QuadraticBase {
        name: "d-67",
        disc: -67,
        w: 2,
    },
    QuadraticBase {
        name: "d-163",
        disc: -163,
        w: 2,
    },
];

impl QuadraticBase {
    pub fn gaussian() -> Self {
        BASES[1]
    }

    pub fn eisenstein() -> Self {
        BASES[0]
    }

    pub fn from_disc(disc: i64) -> Result<Self> {
        BASES
            .iter()
            .copied()
            .find(|b| b.disc == disc)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{disc} is not the discriminant of an imaginary quadratic field with class number one"
                ))
            })
    }

    /// `(c0, c1)` with `O_k = Z[theta]`, `theta^2 + c1 theta + c0 = 0`.
    pub fn minimal_polynomial(&self) -> (i64, i64) {
        match self.disc {
            -3 => (1, 1),
            d if d % 4 == 0 => (-d / 4, 0),
            d => ((1 - d) / 4, -1),
        }
    }

    pub fn invariants(&self) -> BaseFieldInvariants {
        BaseFieldInvariants::imaginary_quadratic(self.w)
    }
}

impl fmt::Display for QuadraticBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

impl FromStr for QuadraticBase {
    type Err = Error;

    /// A name such as `gaussian` or `d-7`, or a bare discriminant such as `-7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(b) = BASES.iter().find(|b| b.name == s) {
            return Ok(*b);
        }
        match s.parse::<i64>() {
            Ok(d) => Self::from_disc(d),
            Err(_) => Err(Error::InvalidArgument(format!("unknown base field {s:?}"))),
        }
    }
}

/// `O_k / p^f` for a split prime, written as pairs of residues modulo `p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResidueRing {
    pub base: QuadraticBase,
    pub p: u64,
    pub f: u32,
    pub modulus: u64,
    /// Least root of the minimal polynomial of `theta` modulo `p^f`.
    pub root: u64,
    pub conjugate_root: u64,
    /// Image of a generator of the roots of unity of `k`; has order `w`.
    pub unit_image: (u64, u64),
}

fn eval_min_poly(c0: i64, c1: i64, x: u64, m: u64) -> u64 {
    let c0 = reduce_signed(c0, m);
    let c1 = reduce_signed(c1, m);
    let x2 = mul_mod(x, x, m);
    ((x2 as u128 + mul_mod(c1, x, m) as u128 + c0 as u128) % m as u128) as u64
}

impl SplitResidueRing {
    /// `a + b theta` as a pair of residues.
    pub fn embed(&self, a: i64, b: i64) -> (u64, u64) {
        let m = self.modulus;
        let (a, b) = (reduce_signed(a, m), reduce_signed(b, m));
        let comp = |r: u64| (a + mul_mod(b, r, m)) % m;
        (comp(self.root), comp(self.conjugate_root))
    }

    pub fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let m = self.modulus;
        (mul_mod(x.0, y.0, m), mul_mod(x.1, y.1, m))
    }

    pub fn phi(&self) -> u64 {
        euler_phi(self.modulus).expect("positive")
    }

    /// Multiplicative order of a pair of units.
    pub fn order_of(&self, x: (u64, u64)) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != (1, 1) {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }
}

pub fn split_ring(base: &QuadraticBase, p: u64, f: u32) -> Result<SplitResidueRing> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    if f == 0 {
        return Err(Error::InvalidArgument(
            "exponent f must be at least 1".into(),
        ));
    }
    if kronecker_odd_prime(base.disc, p) != 1 {
        return Err(Error::NotSplit { p, disc: base.disc });
    }
    let m = p.checked_pow(f).ok_or(Error::Overflow)?;
    let (c0, c1) = base.minimal_polynomial();
    let mut r = (0..p)
        .find(|&x| eval_min_poly(c0, c1, x, p) == 0)
        .expect("split prime has a root");
    // Hensel: the derivative 2r + c1 is a unit since p does not divide disc.
    let mut pk = p;
    while pk < m {
        pk = pk.saturating_mul(p).min(m);
        let g = eval_min_poly(c0, c1, r, pk);
        let d = (mul_mod(2, r, pk) + reduce_signed(c1, pk)) % pk;
        let d_inv = inv_mod(d, pk).expect("simple root");
        r = (r + pk - mul_mod(g, d_inv, pk)) % pk;
    }
    let other = (2 * m - reduce_signed(c1, m) - r) % m;
    let (root, conjugate_root) = (r.min(other), r.max(other));
    debug_assert_eq!(eval_min_poly(c0, c1, root, m), 0);
    debug_assert_eq!(eval_min_poly(c0, c1, conjugate_root, m), 0);

    let mut ring = SplitResidueRing {
        base: *base,
        p,
        f,
        modulus: m,
        root,
        conjugate_root,
        unit_image: (m - 1, m - 1),
    };
    ring.unit_image = match base.disc {
        -4 => ring.embed(0, 1),
        -3 => ring.embed(0, -1),
        _ => (m - 1, m - 1),
    };
    if ring.order_of(ring.unit_image) != base.w {
        return Err(Error::InvalidArgument(format!(
            "unit image {:?} does not have order {}",
            ring.unit_image, base.w
        )));
    }
    Ok(ring)
}

/// `(O_k / m)^* / E`, which is `Gal(k{m}/k)` for class number one.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    pub ring: SplitResidueRing,
    pub structure: AbelianType,
    /// Pair generators of `(O_k/m)^*`; their classes generate the group.
    pub generators: Vec<(u64, u64)>,
    units: UnitGroup,
    presentation: FinitePresentation,
}

impl RayClassGroup {
    pub fn order(&self) -> BigUint {
        self.structure.order()
    }

    /// Log coordinates of a pair of units.
    pub fn log(&self, x: (u64, u64)) -> Result<Vec<BigInt>> {
        let mut v: Vec<BigInt> = self.units.log(x.0)?.into_iter().map(BigInt::from).collect();
        v.extend(self.units.log(x.1)?.into_iter().map(BigInt::from));
        Ok(v)
    }

    /// Canonical coordinates of the class of a pair.
    pub fn class_of(&self, x: (u64, u64)) -> Result<Vec<BigInt>> {
        Ok(self.presentation.class_of(&self.log(x)?))
    }

    pub fn is_trivial_class(&self, x: (u64, u64)) -> Result<bool> {
        Ok(self.presentation.is_zero(&self.log(x)?))
    }

    fn factor_count(&self) -> usize {
        self.units.factors().len()
    }

    /// The classes killed by `(a, b) -> a b`.
    pub fn norm_kernel(&self) -> Result<AbelianType> {
        let k = self.factor_count();
        let mut gens = IntMatrix::with_cols(2 * k);
        for i in 0..k {
            let mut row = vec![0i64; 2 * k];
            row[i] = 1;
            row[k + i] = -1;
            gens.push_row(&row)?;
        }
        subgroup_structure(self.presentation.relations(), &gens)
    }
}

pub fn ray_class_group(base: &QuadraticBase, p: u64, f: u32) -> Result<RayClassGroup> {
    let ring = split_ring(base, p, f)?;
    let units = UnitGroup::new(ring.modulus)?;
    let orders = units.orders();
    let k = orders.len();
    let mut diag = orders.clone();
    diag.extend(&orders);
    let mut relations = IntMatrix::diagonal(&diag);
    let mut e: Vec<u64> = units.log(ring.unit_image.0)?;
    e.extend(units.log(ring.unit_image.1)?);
    relations.push_row(&e)?;
    let presentation = FinitePresentation::new(relations)?;
    let mut generators = Vec::with_capacity(2 * k);
    for g in units.generators() {
        generators.push((g, 1));
    }
    for g in units.generators() {
        generators.push((1, g));
    }
    Ok(RayClassGroup {
        ring,
        structure: presentation.structure().clone(),
        generators,
        units,
        presentation,
    })
}

/// `norm_kernel` as a standalone query.
pub fn norm_kernel(base: &QuadraticBase, p: u64, f: u32) -> Result<AbelianType> {
    ray_class_group(base, p, f)?.norm_kernel()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    Equal,
    Contains,
    Fail,
}

impl fmt::Display for MatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchKind::Equal => "equal",
            MatchKind::Contains => "contains",
            MatchKind::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayClassCounts {
    pub phi2: u64,
    pub w: u64,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayClassReport {
    pub base: String,
    pub p: u64,
    pub f: u32,
    pub ray_class_type: AbelianType,
    pub norm_kernel_type: AbelianType,
    #[serde(rename = "predicted_C")]
    pub predicted_c: AbelianType,
    /// Degree of `k{m}` over `k(zeta_m)` by the class number formula.
    #[serde(serialize_with = "crate::report::as_string")]
    pub cnf_degree: BigUint,
    #[serde(rename = "match")]
    pub match_kind: MatchKind,
    pub counts: RayClassCounts,
}

pub fn rayclass_report(base: &QuadraticBase, p: u64, f: u32) -> Result<RayClassReport> {
    let g = ray_class_group(base, p, f)?;
    let nk = g.norm_kernel()?;
    let predicted = scholz_subgroup(&base.invariants(), p, f)?;
    let match_kind = if nk == predicted {
        MatchKind::Equal
    } else if nk.admits_subgroup(&predicted) {
        MatchKind::Contains
    } else {
        MatchKind::Fail
    };
    let u = g.ring.phi();
    let phi2 = u.checked_mul(u).ok_or(Error::Overflow)?;
    Ok(RayClassReport {
        base: base.to_string(),
        p,
        f,
        counts: RayClassCounts {
            phi2,
            w: base.w,
            order: u64::try_from(g.order()).map_err(|_| Error::Overflow)?,
        },
        ray_class_type: g.structure,
        norm_kernel_type: nk,
        predicted_c: predicted,
        cnf_degree: cnf_degree(&base.invariants(), p, f)?,
        match_kind,
    })
}

/// `x` raised to `e` componentwise.
pub(crate) fn pair_pow(x: (u64, u64), e: u64, m: u64) -> (u64, u64) {
    (pow_mod(x.0, e, m), pow_mod(x.1, e, m))
}
