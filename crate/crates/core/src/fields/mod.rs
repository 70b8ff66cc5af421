//! Abelian number fields as subgroups of `(Z/m)^*`: specs, characters,
//! decomposition fields, roots of unity and discriminants.

mod character;
mod decomposition;
mod discriminant;
mod spec;

pub use character::{characters_of, galois_orbits, CharacterOrbit, DirichletCharacter};
pub use decomposition::{decomposition_field, w_general, w_lemma, DecompositionData};
pub use discriminant::{minkowski_bound, root_discriminant, RationalPower, RootDiscriminant};
pub use spec::FieldSpec;

/// Whether the field is CM; see [`FieldSpec::is_cm`].
pub fn is_cm(spec: &FieldSpec) -> bool {
    spec.is_cm()
}

pub fn maximal_real_subfield(spec: &FieldSpec) -> FieldSpec {
    spec.maximal_real_subfield()
}
