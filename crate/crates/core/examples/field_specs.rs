//! Abelian fields as subgroups of (Z/m)^*: parsing, invariants, characters
//! and canonical JSON.

use cftkit::fields::{characters_of, galois_orbits, w_general, FieldSpec};
use cftkit::report::canonical_json;

fn main() -> cftkit::Result<()> {
    for text in ["155:36", "31:5", "12:", "20:9", "36:17"] {
        let k: FieldSpec = text.parse()?;
        let chars = characters_of(&k);
        let odd = chars.iter().filter(|c| c.is_odd()).count();
        println!(
            "{text:<7} degree {:>3} conductor {:>4} CM {:<5} w {:>4} characters {:>3} odd {:>3} orbits {:>2}  {}",
            k.degree(),
            k.conductor(),
            k.is_cm(),
            w_general(&k),
            chars.len(),
            odd,
            galois_orbits(&chars).len(),
            canonical_json(&k)
        );
    }
    let big: FieldSpec = "155:36".parse()?;
    let small: FieldSpec = "31:5".parse()?;
    println!("31:5 inside 155:36: {}", big.contains_field(&small));
    println!(
        "maximal real subfield of 155:36: {}",
        big.maximal_real_subfield()
    );
    Ok(())
}
