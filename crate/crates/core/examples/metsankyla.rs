//! h^-(L1 L2) = h^-(L1) h^-(L2) T1 T2 for cyclotomic fields of coprime
//! prime power conductor.

use cftkit::hminus::QPolicy;
use cftkit::predict::metsankyla_check;

fn main() -> cftkit::Result<()> {
    for (a, b) in [("5:", "7:"), ("4:", "3:"), ("5:", "9:"), ("7:", "11:")] {
        let r = metsankyla_check(&a.parse()?, &b.parse()?, None, QPolicy::default())?;
        println!(
            "L1 = {a:<4} L2 = {b:<4} T1 = {:<4} T2 = {:<4} identity {}  {}",
            r.t1, r.t2, r.identity_holds, r.verdict
        );
        for f in &r.fields {
            println!(
                "    {:<8} {:<12} h^- = {} (Q = {}{})",
                f.role,
                f.field,
                f.h_minus,
                f.q,
                if f.q_certain { "" } else { ", undecided" }
            );
        }
    }
    Ok(())
}
