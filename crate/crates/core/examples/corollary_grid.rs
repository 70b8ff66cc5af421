//! The two corollaries predict the same subgroup wherever both apply.

use cftkit::algebra::primes_between;
use cftkit::predict::{c1_predict, schmidt_predict};
use cftkit::Error;

fn main() -> cftkit::Result<()> {
    let mut agree = 0;
    let mut largest = (0u64, String::new());
    for n in 1..=60u64 {
        for p in primes_between(2, 40) {
            for a in 1..=2u32 {
                let c1 = match c1_predict(n, p, a) {
                    Ok(r) => r,
                    Err(Error::NotApplicable(_)) => continue,
                    Err(e) => return Err(e),
                };
                let m = n * p.pow(a);
                let sch = schmidt_predict(m, p)?;
                assert_eq!(c1.predicted_type, sch.predicted_type, "m = {m}, p = {p}");
                agree += 1;
                if c1.predicted_type.rank() as u64 > largest.0 {
                    largest = (
                        c1.predicted_type.rank() as u64,
                        format!("m = {m}, p = {p}: {}", c1.predicted_type),
                    );
                }
            }
        }
    }
    println!(
        "{agree} admissible cases agree; largest rank at {}",
        largest.1
    );
    Ok(())
}
