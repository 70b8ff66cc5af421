use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

use super::spec::FieldSpec;
use crate::algebra::{mul_mod, UnitGroup};
use crate::error::{Error, Result};

/// A primitive Dirichlet character `chi(a) = zeta_d^{table[a]}` of conductor
/// `f` and exact order `d`. The table is indexed by residues mod `f` and is
/// `None` at non-units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DirichletCharacter {
    conductor: u64,
    order: u64,
    table: Vec<Option<u64>>,
}

impl DirichletCharacter {
    /// Checks the homomorphism property, the exact order, and primitivity.
    pub fn from_table(conductor: u64, order: u64, table: Vec<Option<u64>>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidArgument(format!("character table: {why}")));
        if conductor == 0 || order == 0 || table.len() as u64 != conductor {
            return bad("dimensions");
        }
        let f = conductor;
        for a in 0..f {
            if (a.gcd(&f) == 1) != table[a as usize].is_some() {
                return bad("support must be the units");
            }
        }
        let units: Vec<u64> = (0..f).filter(|a| a.gcd(&f) == 1).collect();
        for &a in &units {
            for &b in &units {
                let ab = mul_mod(a, b, f) as usize;
                let lhs = table[ab].unwrap();
                let rhs = (table[a as usize].unwrap() + table[b as usize].unwrap()) % order;
                if lhs != rhs {
                    return bad("not multiplicative");
                }
            }
        }
        let g = units
            .iter()
            .fold(order, |g, &a| g.gcd(&table[a as usize].unwrap()));
        if g != 1 {
            return bad("order is not exact");
        }
        let chi = DirichletCharacter {
            conductor,
            order,
            table,
        };
        if chi.induced_conductor() != conductor {
            return bad("not primitive");
        }
        Ok(chi)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn table(&self) -> &[Option<u64>] {
        &self.table
    }

    /// Exponent `e` with `chi(a) = zeta_d^e`, or `None` when `gcd(a, f) > 1`.
    pub fn exponent(&self, a: u64) -> Option<u64> {
        self.table[(a % self.conductor) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    /// `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.order % 2 == 0 && self.exponent(self.conductor - 1) == Some(self.order / 2)
    }

    /// `chi^t` for `t` coprime to the order.
    pub fn power(&self, t: u64) -> DirichletCharacter {
        debug_assert_eq!(t.gcd(&self.order), 1);
        DirichletCharacter {
            conductor: self.conductor,
            order: self.order,
            table: self
                .table
                .iter()
                .map(|e| e.map(|e| mul_mod(e, t, self.order)))
                .collect(),
        }
    }

    /// Least modulus dividing `f` through which the character factors.
    fn induced_conductor(&self) -> u64 {
        let f = self.conductor;
        crate::algebra::divisors(f)
            .into_iter()
            .find(|&d| {
                (0..f / d)
                    .map(|k| (1 + k * d) % f)
                    .filter(|a| a.gcd(&f) == 1)
                    .all(|a| self.table[a as usize] == Some(0))
            })
            .unwrap_or(f)
    }
}

/// The Galois orbit `{chi^t : gcd(t, d) = 1}` of a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterOrbit {
    /// Lexicographically least exponent table in the orbit.
    pub representative: DirichletCharacter,
    pub size: u64,
}

impl CharacterOrbit {
    pub fn is_odd(&self) -> bool {
        self.representative.is_odd()
    }
}

/// Characters of `(Z/m)^*` trivial on `H`, each reduced to its primitive
/// version, sorted by (conductor, order, table).
pub fn characters_of(spec: &FieldSpec) -> Vec<DirichletCharacter> {
    let m = spec.modulus();
    let group = UnitGroup::new(m).expect("positive modulus");
    let orders = group.orders();
    let exponent = orders.iter().fold(1u64, |l, &o| l.lcm(&o));
    let units: Vec<u64> = group.units().collect();
    let logs: Vec<Vec<u64>> = units.iter().map(|&a| group.log(a).expect("unit")).collect();
    let gen_logs: Vec<Vec<u64>> = spec
        .subgroup_gens()
        .iter()
        .map(|&h| group.log(h).expect("unit"))
        .collect();
    // chi(g_i) = zeta_L^{c_i L / o_i}, so chi(a) = zeta_L^{sum c_i (L/o_i) log_i(a)}.
    let weights: Vec<u64> = orders.iter().map(|o| exponent / o).collect();
    let eval = |c: &[u64], log: &[u64]| -> u64 {
        c.iter()
            .zip(log)
            .zip(&weights)
            .fold(0u64, |acc, ((ci, li), wi)| {
                (acc + mul_mod(mul_mod(*ci, *li, exponent), *wi, exponent)) % exponent
            })
    };

    let mut out = Vec::new();
    let mut c = vec![0u64; orders.len()];
    loop {
        if gen_logs.iter().all(|l| eval(&c, l) == 0) {
            let values: Vec<u64> = logs.iter().map(|l| eval(&c, l)).collect();
            out.push(primitive_character(m, &units, &values, exponent));
        }
        // odometer over prod Z/o_i
        let mut i = 0;
        while i < c.len() {
            c[i] += 1;
            if c[i] < orders[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == c.len() {
            break;
        }
    }
    out.sort();
    out
}

/// Reduces a character mod `m`, given by exponents into `zeta_L` on `units`,
/// to its primitive form.
fn primitive_character(m: u64, units: &[u64], values: &[u64], exponent: u64) -> DirichletCharacter {
    let g = values.iter().fold(exponent, |g, v| g.gcd(v));
    let order = exponent / g;
    let value_of: BTreeMap<u64, u64> = units
        .iter()
        .zip(values)
        .map(|(&a, &v)| (a, v / g))
        .collect();
    let conductor = crate::algebra::divisors(m)
        .into_iter()
        .find(|&f| {
            units
                .iter()
                .filter(|&&a| a % f == 1 % f)
                .all(|a| value_of[a] == 0)
        })
        .expect("m itself works");
    let table = (0..conductor)
        .map(|b| {
            if b.gcd(&conductor) != 1 {
                return None;
            }
            let lift = (0..m / conductor)
                .map(|k| b + k * conductor)
                .find(|a| a.gcd(&m) == 1)
                .expect("CRT gives a unit lift");
            Some(value_of[&(lift % m)])
        })
        .collect();
    DirichletCharacter {
        conductor,
        order,
        table,
    }
}

/// Groups characters into Galois orbits, in order of their representatives.
pub fn galois_orbits(chars: &[DirichletCharacter]) -> Vec<CharacterOrbit> {
    let mut orbits: BTreeMap<DirichletCharacter, u64> = BTreeMap::new();
    for chi in chars {
        let rep = (1..=chi.order.max(1))
            .filter(|t| t.gcd(&chi.order) == 1)
            .map(|t| chi.power(t))
            .min_by(|a, b| a.table.cmp(&b.table))
            .expect("t = 1 qualifies");
        *orbits.entry(rep).or_default() += 1;
    }
    orbits
        .into_iter()
        .map(|(representative, size)| CharacterOrbit {
            representative,
            size,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_characters() {
        let chars = characters_of(&spec("4:"));
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[1].conductor(), 4);
        assert_eq!(chars[1].order(), 2);
        assert!(chars[1].is_odd());
    }

    #[test]
    fn quintic_characters() {
        let chars = characters_of(&spec("5:"));
        let conductors: Vec<u64> = chars.iter().map(|c| c.conductor()).collect();
        assert_eq!(conductors, vec![1, 5, 5, 5]);
        assert_eq!(chars.iter().filter(|c| c.is_odd()).count(), 2);
        // Inversion-closed.
        for chi in &chars {
            let inv = chi.power(chi.order().saturating_sub(1).max(1));
            assert!(chars.contains(&inv));
        }
    }

    #[test]
    fn degree_forty_subfield() {
        let chars = characters_of(&spec("155:36"));
        assert_eq!(chars.len(), 40);
        assert_eq!(chars.iter().filter(|c| c.is_odd()).count(), 20);
    }

    #[test]
    fn primitive_reduction_inside_larger_modulus() {
        let q5 = FieldSpec::cyclotomic(5).unwrap().lift(155).unwrap();
        assert_eq!(characters_of(&q5), characters_of(&spec("5:")));
    }

    #[test]
    fn tables_validate() {
        for chi in characters_of(&spec("155:36")) {
            let again = DirichletCharacter::from_table(chi.conductor, chi.order, chi.table.clone());
            assert_eq!(again.unwrap(), chi);
        }
        // chi mod 4 lifted to 8 is not primitive
        let lifted = vec![None, Some(0), None, Some(1), None, Some(0), None, Some(1)];
        assert!(DirichletCharacter::from_table(8, 2, lifted).is_err());
    }

    #[test]
    fn orbits_partition() {
        let chars = characters_of(&spec("155:"));
        let orbits = galois_orbits(&chars);
        assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 120);
        for o in &orbits {
            let d = o.representative.order();
            assert_eq!(o.size, crate::algebra::euler_phi(d).unwrap());
        }
    }
}
