//! The degree-p cyclic extension of Q(i) inside Q(zeta_{4p^2}).

use cftkit::hminus::QPolicy;
use cftkit::predict::{p14_predict, verify};

fn main() -> cftkit::Result<()> {
    for p in [3u64, 5, 7, 11, 13, 17] {
        let (report, field) = p14_predict(p)?;
        let checked = verify(&report, QPolicy::default())?;
        let h = &checked
            .oracle
            .as_ref()
            .expect("target recorded")
            .target_h_minus;
        println!(
            "p = {p:>2}  K = {field:<12} h^- = {h:<14} {}: {}",
            report.statement, checked.verdict
        );
    }
    Ok(())
}
