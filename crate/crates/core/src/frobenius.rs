//! Frobenius roots `I^{[1/p^e]}` and the divisor bound on Cartier maps.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::pairs::DivisorCombination;
use crate::poly::{check_ring, Monomial, Polynomial, Ring};
use crate::ring::rat_ceil_scale;

/// `I^{[1/p^e]}`: the smallest ideal `J` with `I ⊆ J^{[p^e]}`. Computed
/// generator by generator from the q-th-power decomposition.
pub fn frobenius_root(i: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::InvalidArgument("root level must be at least 1".into()));
    }
    let q = (i.ring().p() as u64)
        .checked_pow(e)
        .ok_or(Error::ExponentOverflow)?;
    root_of_generators(i.ring(), i.generators(), q)
}

/// Root of the ideal generated by `gens`, with `q` a power of `p`.
pub(crate) fn root_of_generators(ring: &Ring, gens: &[Polynomial], q: u64) -> Result<Ideal> {
    let mut parts: Vec<Polynomial> = Vec::new();
    for g in gens {
        for (_, component) in g.decompose_by(q) {
            if component.is_constant() {
                return Ok(Ideal::unit(ring));
            }
            parts.push(component);
        }
    }
    Ideal::from_generators_reduced(ring, parts)
}

/// `φ = Φ_e ∘ (g·)`, where `Φ_e` picks the `x^{(q−1,…,q−1)}` component of the
/// q-th-power decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierMap {
    e: u32,
    premultiplier: Polynomial,
}

impl CartierMap {
    pub fn new(e: u32, premultiplier: Polynomial) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("Cartier map level must be at least 1".into()));
        }
        if premultiplier.is_zero() {
            return Err(Error::InvalidArgument("premultiplier must be nonzero".into()));
        }
        Ok(CartierMap { e, premultiplier })
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn premultiplier(&self) -> &Polynomial {
        &self.premultiplier
    }

    fn q(&self) -> Result<u64> {
        (self.premultiplier.ring().p() as u64)
            .checked_pow(self.e)
            .ok_or(Error::ExponentOverflow)
    }

    /// `φ(f)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let q = self.q()?;
        let ring = self.premultiplier.ring();
        let top = Monomial::from_exponents(&vec![q - 1; ring.nvars()])?;
        let product = self.premultiplier.checked_mul(f)?;
        Ok(product
            .decompose_by(q)
            .remove(&top)
            .unwrap_or_else(|| Polynomial::zero(ring)))
    }
}

/// Whether `φ` lies in the submodule cut out by `Δ`, realized as membership
/// of the premultiplier in `∏ g_i^{⌈c_i(p^e − 1)⌉}`.
pub fn cartier_in_subsheaf(phi: &CartierMap, delta: &DivisorCombination) -> Result<bool> {
    let ring = phi.premultiplier.ring();
    let q1 = phi.q()? - 1;
    let mut bound = Polynomial::one(ring);
    for (g, c) in delta.components() {
        check_ring(ring, g.ring())?;
        bound = bound.checked_mul(&g.pow(rat_ceil_scale(c, q1)?))?;
    }
    Ideal::principal(bound)?.contains(&phi.premultiplier)
}
