//! Exact test ideals and F-jumping numbers of mixed pairs over
//! `F_p[x₁..xₙ]`.

pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod jumping;
pub mod oracle;
pub mod pairs;
pub mod poly;
pub mod ring;
pub mod testideal;
pub mod verify;

pub use error::{Error, Result};
pub use frobenius::{cartier_in_subsheaf, frobenius_root, CartierMap};
pub use groebner::Ideal;
pub use jumping::{
    default_denominator_bound, enumerate_jumps, fpt, is_jump_at, scaling_counterexample_check,
    JumpEntry, JumpReport, ParametricPair, ScalingRow,
};
pub use oracle::{howald_jumps, howald_multiplier, nu_sandwich, nu_value, NewtonPolyhedron};
pub use pairs::{pair_from_divisor, skoda_normalize, twist, DivisorCombination, MixedPair, TwistDirection};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring, RingContext};
pub use testideal::{chain_level, tau, tau_divisor_sum, tau_of_divisor_pair, tau_remark23, tau_with_depth, ChainConfig};
pub use ring::{ExactRational, FpScalar, PrimeChar};
