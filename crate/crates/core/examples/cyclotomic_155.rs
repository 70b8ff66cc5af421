//! Both halves of the worked example at conductor 155.

use cftkit::hminus::QPolicy;
use cftkit::predict::{c1_predict, schmidt_predict, verify};

fn main() -> cftkit::Result<()> {
    let policy = QPolicy::default();

    let whole = verify(&schmidt_predict(155, 31)?, policy)?;
    let oracle = whole.oracle.as_ref().expect("target recorded");
    println!(
        "Q(zeta_155): predicted {} (order {})",
        whole.predicted_type, whole.predicted_order
    );
    println!(
        "  h^- = {} with Q = {} ({:?})",
        oracle.target_h_minus, oracle.q, oracle.q_source
    );
    println!("  verdict: {}", whole.verdict);

    let part = verify(&c1_predict(31, 5, 1)?, policy)?;
    let oracle = part.oracle.as_ref().expect("target recorded");
    println!(
        "{} over {}: predicted {} (order {})",
        oracle.target,
        oracle.relative_to.as_deref().unwrap_or("Q"),
        part.predicted_type,
        part.predicted_order
    );
    println!(
        "  h^- = {} (Q undecided; Q = 2 gives {})",
        oracle.target_h_minus,
        oracle
            .target_alternate
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default()
    );
    println!("  relative value {}", oracle.value);
    println!("  verdict: {}", part.verdict);
    Ok(())
}
