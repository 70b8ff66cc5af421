//! Roots of unity in decomposition fields: closed form against the field
//! computation.

use cftkit::algebra::{is_prime, primes_between};
use cftkit::fields::{decomposition_field, w_general, w_lemma};

fn main() -> cftkit::Result<()> {
    let mut checked = 0;
    for n in 1..=200u64 {
        if n % 4 == 2 {
            continue;
        }
        for p in primes_between(2, 100) {
            if n % p == 0 {
                continue;
            }
            let (k, _) = decomposition_field(n, p)?;
            assert_eq!(w_lemma(n, p)?, w_general(&k), "n = {n}, p = {p}");
            checked += 1;
        }
    }
    println!("closed form agrees with the field computation on {checked} pairs");
    for (n, p) in [(31u64, 5u64), (5, 31), (4, 5), (15, 2), (12, 13)] {
        assert!(is_prime(p));
        println!("w(n = {n}, p = {p}) = {}", w_lemma(n, p)?);
    }
    Ok(())
}
