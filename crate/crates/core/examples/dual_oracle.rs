//! Minus class numbers of Q(zeta_p) by Bernoulli numbers and by the Maillet
//! determinant.

use cftkit::algebra::primes_between;
use cftkit::fields::FieldSpec;
use cftkit::hminus::{h_minus, maillet_h_minus, QPolicy};

fn main() -> cftkit::Result<()> {
    println!("{:>4} {:>12} {:>12}", "p", "bernoulli", "maillet");
    for p in primes_between(3, 60) {
        let b = h_minus(&FieldSpec::cyclotomic(p)?, QPolicy::default())?.h_minus;
        let m = maillet_h_minus(p)?;
        assert_eq!(b, m, "oracles disagree at {p}");
        println!("{p:>4} {b:>12} {m:>12}");
    }
    Ok(())
}
