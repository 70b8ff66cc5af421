//! Ray class groups of Q(i) modulo split prime powers, their norm kernels and
//! the exact sequence behind the class number factor.

use cftkit::rayclass::{
    esf_check, rayclass_report, split_ring, translation_check, QuadraticBase, DEFAULT_CAP,
};

fn main() -> cftkit::Result<()> {
    let k = QuadraticBase::gaussian();
    let ring = split_ring(&k, 13, 1)?;
    println!("O/13 for Q(i): i -> {:?}", ring.unit_image);

    for (p, f) in [(5u64, 1u32), (13, 1), (5, 2), (29, 1), (37, 2)] {
        let r = rayclass_report(&k, p, f)?;
        let esf = esf_check(&k, p, f, DEFAULT_CAP)?;
        let tr = translation_check(&k, p, f, DEFAULT_CAP)?;
        println!(
            "{p}^{f}: ray class {} | norm kernel {} | predicted {} | {} | |A| = {} = {} * {} | translation {}",
            r.ray_class_type, r.norm_kernel_type, r.predicted_c, r.match_kind,
            esf.a_order, esf.unit_order, esf.norm_kernel_order, tr.holds
        );
    }

    let e = QuadraticBase::eisenstein();
    let r = rayclass_report(&e, 19, 1)?;
    println!(
        "Q(zeta_3), 19: norm kernel {} ({})",
        r.norm_kernel_type, r.match_kind
    );
    Ok(())
}
