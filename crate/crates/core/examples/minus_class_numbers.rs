//! Minus class numbers of cyclotomic fields with the Hasse unit index.

use cftkit::fields::FieldSpec;
use cftkit::hminus::{h_minus, QPolicy};

fn main() -> cftkit::Result<()> {
    for m in [
        3u64, 4, 5, 7, 8, 12, 15, 20, 21, 23, 24, 28, 35, 39, 45, 56, 63, 84, 155,
    ] {
        let r = h_minus(&FieldSpec::cyclotomic(m)?, QPolicy::default())?;
        println!(
            "Q(zeta_{m:<3}) degree {:>3}  w {:>3}  Q {}  h^- {}",
            r.degree, r.w, r.q, r.h_minus
        );
    }
    Ok(())
}
