use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{
    inv_mod, kernel_mod, mul_mod, subgroup_structure, AbelianType, IntMatrix, UnitGroup,
};
use crate::error::{Error, Result};

/// Exactness of `1 -> K -> ((Z/m)^*)^n -> (Z/m)^* -> 1` under the
/// component product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    pub m: u64,
    pub n: u32,
    pub unit_type: AbelianType,
    pub kernel_type: AbelianType,
    pub expected_kernel_type: AbelianType,
    /// Every unit `a` is the norm of the witness `(a, 1, ..., 1)`.
    pub surjective: bool,
    pub witnesses_checked: u64,
    /// Completions `(a_1, ..., a_{n-1}, (a_1 ... a_{n-1})^-1)` built and checked.
    pub completions_checked: u64,
    /// Kernel size by full enumeration, when within the cap.
    pub enumerated_kernel_order: Option<u64>,
    pub pass: bool,
}

/// Calls `visit` on every `len`-tuple over `items`.
fn for_each_tuple(items: &[u64], len: usize, mut visit: impl FnMut(&[u64])) {
    if items.is_empty() && len > 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut tuple: Vec<u64> = vec![items.first().copied().unwrap_or(0); len];
    loop {
        visit(&tuple);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            idx[i] += 1;
            if idx[i] < items.len() {
                tuple[i] = items[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = items[0];
            i += 1;
        }
    }
}

fn kernel_type(group: &UnitGroup, n: usize) -> Result<AbelianType> {
    let orders = group.orders();
    let k = orders.len();
    if k == 0 {
        return Ok(AbelianType::trivial());
    }
    let mut diag: Vec<u64> = Vec::with_capacity(n * k);
    for _ in 0..n {
        diag.extend(&orders);
    }
    let relations = IntMatrix::diagonal(&diag);
    // Log-coordinate norm map: component j, factor i -> e_i.
    let mut norm = IntMatrix::zeros(n * k, k);
    for j in 0..n {
        for i in 0..k {
            norm[(j * k + i, i)] = BigInt::from(1);
        }
    }
    let moduli: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
    let gens = kernel_mod(&norm, &moduli);
    subgroup_structure(&relations, &gens)
}

pub fn lemma3_check(m: u64, n: u32, cap: u64) -> Result<Lemma3Report> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m = {m} must be at least 2"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let group = UnitGroup::new(m)?;
    let units: Vec<u64> = group.units().collect();
    let phi = units.len() as u64;
    let product = |xs: &[u64]| xs.iter().fold(1 % m, |acc, &x| mul_mod(acc, x, m));

    let mut surjective = true;
    for &a in &units {
        let mut beta = vec![1 % m; n as usize];
        beta[0] = a;
        surjective &= product(&beta) == a;
    }

    // Completions of (n-1)-tuples, over all tuples when within the cap and
    // over tuples of group generators otherwise.
    let head = n as usize - 1;
    let pool: Vec<u64> = match phi.checked_pow(head as u32) {
        Some(s) if s <= cap => units.clone(),
        _ => {
            let mut g = vec![1 % m];
            g.extend(group.generators());
            g
        }
    };
    let mut completions = 0u64;
    let mut completions_ok = true;
    for_each_tuple(&pool, head, |t| {
        let last = inv_mod(product(t), m);
        match last {
            Some(l) => {
                let mut full = t.to_vec();
                full.push(l);
                completions_ok &= product(&full) == 1 % m;
            }
            None => completions_ok = false,
        }
        completions += 1;
    });

    let enumerated = match phi.checked_pow(n) {
        Some(s) if s <= cap => {
            let mut count = 0u64;
            for_each_tuple(&units, n as usize, |t| {
                if product(t) == 1 % m {
                    count += 1;
                }
            });
            Some(count)
        }
        _ => None,
    };

    let kernel = kernel_type(&group, n as usize)?;
    let expected = group.structure().power(head);
    let enumeration_ok = enumerated.is_none_or(|c| Some(c) == phi.checked_pow(head as u32));
    Ok(Lemma3Report {
        m,
        n,
        unit_type: group.structure().clone(),
        pass: surjective && completions_ok && enumeration_ok && kernel == expected,
        kernel_type: kernel,
        expected_kernel_type: expected,
        surjective,
        witnesses_checked: phi,
        completions_checked: completions,
        enumerated_kernel_order: enumerated,
    })
}
