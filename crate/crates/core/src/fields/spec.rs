use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{euler_phi, factor, mul_mod};
use crate::error::{Error, Result};

/// An abelian number field, given as the fixed field of a subgroup `H` of
/// `(Z/m)^*` inside `Q(zeta_m)`.
///
/// The modulus need not be the conductor. Moduli congruent to 2 mod 4 are
/// rejected. Generators are canonicalized to a greedy generating set of `H`
/// read in increasing order, so equal subgroups give equal specs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct FieldSpec {
    modulus: u64,
    gens: Vec<u64>,
    members: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    modulus: u64,
    subgroup_gens: Vec<u64>,
}

impl TryFrom<RawSpec> for FieldSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        FieldSpec::new(raw.modulus, &raw.subgroup_gens)
    }
}

impl From<FieldSpec> for RawSpec {
    fn from(spec: FieldSpec) -> RawSpec {
        RawSpec {
            modulus: spec.modulus,
            subgroup_gens: spec.gens,
        }
    }
}

/// Closure of `gens` under multiplication mod `m`, sorted.
fn closure(m: u64, gens: &[u64]) -> Vec<u64> {
    let one = 1 % m;
    let mut seen = vec![false; m as usize];
    seen[one as usize] = true;
    let mut members = vec![one];
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul_mod(x, g, m);
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
                frontier.push(y);
            }
        }
    }
    members.sort_unstable();
    members
}

impl FieldSpec {
    pub fn new(modulus: u64, gens: &[u64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if modulus % 4 == 2 {
            return Err(Error::ModulusTwoModFour(modulus));
        }
        let mut reduced = Vec::with_capacity(gens.len());
        for &g in gens {
            if g.gcd(&modulus) != 1 {
                return Err(Error::NotCoprime { a: g, b: modulus });
            }
            reduced.push(g % modulus);
        }
        let members = closure(modulus, &reduced);
        Ok(Self::from_members(modulus, members))
    }

    /// The full cyclotomic field `Q(zeta_m)`.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        Self::new(m, &[])
    }

    /// Builds a spec from the complete, sorted element list of `H`.
    fn from_members(modulus: u64, members: Vec<u64>) -> Self {
        let mut gens = Vec::new();
        let mut span = vec![1 % modulus];
        for &x in &members {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = closure(modulus, &gens);
            }
        }
        FieldSpec {
            modulus,
            gens,
            members,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subgroup_gens(&self) -> &[u64] {
        &self.gens
    }

    /// All elements of `H`, sorted.
    pub fn subgroup(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_residue(&self, a: u64) -> bool {
        self.members.binary_search(&(a % self.modulus)).is_ok()
    }

    pub fn degree(&self) -> u64 {
        euler_phi(self.modulus).expect("positive modulus") / self.members.len() as u64
    }

    /// The field is CM exactly when it is totally complex, i.e. `-1` is not in `H`.
    pub fn is_cm(&self) -> bool {
        !self.contains_residue(self.modulus - 1)
    }

    pub fn is_real(&self) -> bool {
        !self.is_cm()
    }

    pub fn maximal_real_subfield(&self) -> FieldSpec {
        if self.is_real() {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(self.modulus - 1);
        FieldSpec::new(self.modulus, &gens).expect("valid generators")
    }

    /// Smallest `f` with `Q(zeta_f)` containing the field.
    pub fn conductor(&self) -> u64 {
        let m = self.modulus;
        crate::algebra::divisors(m)
            .into_iter()
            .filter(|f| f % 4 != 2)
            .find(|&f| {
                (0..m / f)
                    .map(|k| 1 + k * f)
                    .filter(|a| a.gcd(&m) == 1)
                    .all(|a| self.contains_residue(a % m))
            })
            .expect("f = m always works")
    }

    /// Whether `Q(zeta_t)` is a subfield, for `t | m`.
    pub fn contains_cyclotomic(&self, t: u64) -> bool {
        debug_assert_eq!(self.modulus % t, 0);
        self.members.iter().all(|&h| h % t == 1 % t)
    }

    /// `H` lifted to the larger modulus `big`, a multiple of `m`.
    pub fn lift(&self, big: u64) -> Result<FieldSpec> {
        if big % self.modulus != 0 {
            return Err(Error::InvalidArgument(format!(
                "{big} is not a multiple of {}",
                self.modulus
            )));
        }
        if big % 4 == 2 {
            return Err(Error::ModulusTwoModFour(big));
        }
        let members: Vec<u64> = (0..big)
            .filter(|a| a.gcd(&big) == 1 && self.contains_residue(a % self.modulus))
            .collect();
        Ok(Self::from_members(big, members))
    }

    /// Whether `sub` is a subfield of `self`.
    pub fn contains_field(&self, sub: &FieldSpec) -> bool {
        let big = self.modulus.lcm(&sub.modulus);
        if big % 4 == 2 {
            return false;
        }
        let outer = self.lift(big).expect("lcm is a multiple");
        let inner = sub.lift(big).expect("lcm is a multiple");
        // sub <= self  iff  H_self <= H_sub
        outer
            .members
            .iter()
            .all(|h| inner.members.binary_search(h).is_ok())
    }

    /// Same field represented by the same subgroup.
    pub fn same_field(&self, other: &FieldSpec) -> bool {
        self.contains_field(other) && other.contains_field(self)
    }

    /// The compositum, presented in modulus `lcm(m_1, m_2)`.
    pub fn compositum(&self, other: &FieldSpec) -> Result<FieldSpec> {
        let big = self.modulus.lcm(&other.modulus);
        let a = self.lift(big)?;
        let b = other.lift(big)?;
        let members: Vec<u64> = a
            .members
            .iter()
            .copied()
            .filter(|h| b.members.binary_search(h).is_ok())
            .collect();
        Ok(Self::from_members(big, members))
    }

    /// Whether the field is the full cyclotomic field of its conductor.
    pub fn is_full_cyclotomic(&self) -> bool {
        euler_phi(self.conductor()).expect("positive") == self.degree()
    }

    pub fn conductor_is_prime_power(&self) -> bool {
        factor(self.conductor()).expect("positive").is_prime_power()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(u64::to_string).collect();
        write!(f, "{}:{}", self.modulus, gens.join(","))
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self}, degree {})", self.degree())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `m:g1,g2,...`; an empty generator list means `Q(zeta_m)`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::SpecParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (m, gens) = s.trim().split_once(':').ok_or_else(|| err("missing ':'"))?;
        let m: u64 = m
            .trim()
            .parse()
            .map_err(|_| err("modulus is not an integer"))?;
        let gens = gens
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(|g| {
                g.parse::<u64>()
                    .map_err(|_| err("generator is not an integer"))
            })
            .collect::<Result<Vec<_>>>()?;
        FieldSpec::new(m, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(spec("5:").degree(), 4);
        assert_eq!(spec("5:2").degree(), 1);
        assert_eq!(spec("31:5").to_string(), "31:5");
        assert_eq!(spec("155:36").degree(), 40);
        assert!("6:".parse::<FieldSpec>().is_err());
        assert!("155:31".parse::<FieldSpec>().is_err());
        assert!("abc".parse::<FieldSpec>().is_err());
        assert!("5:x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn canonical_generators() {
        // <4> = <16> = {1, 4, 16} mod 21
        assert_eq!(spec("21:16"), spec("21:4"));
        assert_eq!(spec("5:2,3,4"), spec("5:2"));
    }

    #[test]
    fn cm_and_real_subfield() {
        assert!(spec("5:").is_cm());
        assert!(!spec("5:4").is_cm());
        assert!(spec("31:5").is_cm());
        let real = spec("5:").maximal_real_subfield();
        assert_eq!(real.degree(), 2);
        assert_eq!(real.maximal_real_subfield(), real);
        assert_eq!(spec("155:").maximal_real_subfield().degree(), 60);
    }

    #[test]
    fn conductor_and_nesting() {
        assert_eq!(spec("155:").conductor(), 155);
        let q5 = FieldSpec::cyclotomic(5).unwrap().lift(155).unwrap();
        assert_eq!(q5.conductor(), 5);
        assert!(spec("155:").contains_field(&spec("5:")));
        assert!(spec("155:36").contains_field(&spec("31:5")));
        assert!(spec("155:36").contains_field(&spec("5:")));
        assert!(!spec("5:").contains_field(&spec("155:")));
        assert!(q5.same_field(&spec("5:")));
        assert_eq!(spec("5:").compositum(&spec("7:")).unwrap(), spec("35:"));
    }

    #[test]
    fn json_round_trip() {
        let s = spec("155:36");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"modulus":155,"subgroup_gens":[36]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
