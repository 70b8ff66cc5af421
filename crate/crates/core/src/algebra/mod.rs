//! Exact integer arithmetic and finite abelian group structure.

mod arith;
mod group;
mod matrix;

pub use arith::{
    crt_lift, divisors, euler_phi, factor, inv_mod, is_prime, is_self_conjugate,
    kronecker_odd_prime, mul_mod, mult_order, pow_mod, primes_between, reduce_signed,
    Factorization,
};
pub use group::{
    congruence_kernel, kernel_mod, snf, subgroup_structure, subgroup_type, unit_group_type,
    AbelianType, CyclicFactor, FinitePresentation, UnitGroup,
};
pub use matrix::IntMatrix;
