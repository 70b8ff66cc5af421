//! Root discriminants from conductors, and the Minkowski bound.

use cftkit::fields::{minkowski_bound, root_discriminant};

fn main() -> cftkit::Result<()> {
    for spec in ["3:", "5:", "7:", "13:", "155:", "155:36", "31:5"] {
        let rd = root_discriminant(&spec.parse()?)?;
        println!(
            "{spec:<7} degree {:>3}  rd = {:<22} = {}  (rd < degree: {})",
            rd.degree,
            rd.factored(),
            rd.root_discriminant.to_decimal(20),
            rd.below_degree()
        );
    }
    println!(
        "Minkowski bound, n = 2, s = 1: {}",
        minkowski_bound(2, 1, 30)?
    );
    Ok(())
}
