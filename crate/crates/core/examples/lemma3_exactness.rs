//! Kernel and image of the component product on ((Z/m)^*)^n.

use cftkit::rayclass::{lemma3_check, DEFAULT_CAP};

fn main() -> cftkit::Result<()> {
    for (m, n) in [(5u64, 3u32), (8, 2), (12, 3), (21, 2), (49, 4)] {
        let r = lemma3_check(m, n, DEFAULT_CAP)?;
        println!(
            "m = {m:>2}, n = {n}: (Z/m)^* = {:<12} kernel = {:<20} {}",
            r.unit_type.to_string(),
            r.kernel_type.to_string(),
            if r.pass { "exact" } else { "FAILED" }
        );
    }
    Ok(())
}
