use serde::Serialize;
use std::collections::BTreeSet;

use super::{pair_pow, ray_class_group, QuadraticBase, RayClassGroup};
use crate::algebra::inv_mod;
use crate::error::{Error, Result};

/// Order-level and element-level check of
/// `1 -> E/E^1 -> A -> norm kernel -> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EsfReport {
    pub base: String,
    pub p: u64,
    pub f: u32,
    /// `|A|`, the pairs `(a, b)` with `a b = 1`, counted by enumeration.
    pub a_order: u64,
    /// `|E/E^1|`, counted from the powers of the unit image.
    pub unit_order: u64,
    pub norm_kernel_order: u64,
    /// Whether the elements of `A` trivial in the ray class group are exactly
    /// the unit images.
    pub image_equals_kernel: bool,
    pub exact: bool,
}

fn check_cap(size: u64, cap: u64) -> Result<()> {
    if size > cap {
        return Err(Error::EnumerationCap {
            size: size as u128,
            cap,
        });
    }
    Ok(())
}

/// All pairs `(a, a^-1)`.
fn norm_one_pairs(g: &RayClassGroup) -> Vec<(u64, u64)> {
    let m = g.ring.modulus;
    (1..m)
        .filter_map(|a| inv_mod(a, m).map(|b| (a, b)))
        .collect()
}

fn unit_images(g: &RayClassGroup) -> BTreeSet<(u64, u64)> {
    let m = g.ring.modulus;
    (0..g.ring.base.w)
        .map(|k| pair_pow(g.ring.unit_image, k, m))
        .collect()
}

pub fn esf_check(base: &QuadraticBase, p: u64, f: u32, cap: u64) -> Result<EsfReport> {
    let g = ray_class_group(base, p, f)?;
    check_cap(g.ring.phi(), cap)?;
    let a = norm_one_pairs(&g);
    let units = unit_images(&g);
    let mut trivial = BTreeSet::new();
    for &x in &a {
        if g.is_trivial_class(x)? {
            trivial.insert(x);
        }
    }
    let nk = u64::try_from(g.norm_kernel()?.order()).map_err(|_| Error::Overflow)?;
    let a_order = a.len() as u64;
    let unit_order = units.len() as u64;
    let image_equals_kernel = trivial == units;
    Ok(EsfReport {
        base: base.to_string(),
        p,
        f,
        a_order,
        unit_order,
        norm_kernel_order: nk,
        image_equals_kernel,
        exact: image_equals_kernel
            && a_order == g.ring.phi()
            && unit_order == base.w
            && a_order == unit_order * nk,
    })
}

/// Residue-level check that the norm-one pairs form a subgroup containing
/// the image of `H^1`, and that the pair maps are ring homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub base: String,
    pub p: u64,
    pub f: u32,
    pub pairs_checked: u64,
    /// Every pair has positive least-residue norm `1 (mod p^f)`.
    pub norms_in_h: bool,
    /// Units of `k` map into the norm-one pairs.
    pub units_in_h: bool,
    /// Closure under multiplication by the generators of the norm-one pairs.
    pub closed: bool,
    /// `theta` satisfies its minimal polynomial in both components.
    pub homomorphism: bool,
    pub holds: bool,
}

pub fn translation_check(
    base: &QuadraticBase,
    p: u64,
    f: u32,
    cap: u64,
) -> Result<TranslationReport> {
    let g = ray_class_group(base, p, f)?;
    check_cap(g.ring.phi(), cap)?;
    let ring = &g.ring;
    let m = ring.modulus;
    let a = norm_one_pairs(&g);
    let set: BTreeSet<(u64, u64)> = a.iter().copied().collect();
    let norm = |x: (u64, u64)| (x.0 as u128 * x.1 as u128 % m as u128) as u64;

    let norms_in_h = a.iter().all(|&x| norm(x) == 1);
    let units_in_h = unit_images(&g).iter().all(|x| set.contains(x));
    let gens: Vec<(u64, u64)> = g
        .generators
        .iter()
        .filter(|x| x.1 == 1)
        .map(|&(a, _)| (a, inv_mod(a, m).expect("unit")))
        .collect();
    let closed = a
        .iter()
        .all(|&x| gens.iter().all(|&y| set.contains(&ring.mul(x, y))));

    let (c0, c1) = ring.base.minimal_polynomial();
    let theta = ring.embed(0, 1);
    let sq = ring.mul(theta, theta);
    let lin = ring.embed(c0, c1);
    let homomorphism = (sq.0 + lin.0) % m == 0 && (sq.1 + lin.1) % m == 0;

    Ok(TranslationReport {
        base: base.to_string(),
        p,
        f,
        pairs_checked: a.len() as u64,
        norms_in_h,
        units_in_h,
        closed,
        homomorphism,
        holds: norms_in_h && units_in_h && closed && homomorphism,
    })
}
