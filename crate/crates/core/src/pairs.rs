//! Divisor combinations, mixed pairs and the rewriting moves between them.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{check_ring, Polynomial, Ring};
use crate::ring::{format_rational, ExactRational};

/// `Δ = Σ c_i·div(g_i)` with every `c_i ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorCombination {
    components: Vec<(Polynomial, ExactRational)>,
}

impl DivisorCombination {
    pub fn new(components: Vec<(Polynomial, ExactRational)>) -> Result<Self> {
        for (g, c) in &components {
            if c.is_negative() {
                return Err(Error::NegativeExponent(format_rational(c)));
            }
            if g.is_zero() {
                return Err(Error::ZeroIdeal);
            }
        }
        if let Some((first, _)) = components.first() {
            for (g, _) in &components {
                check_ring(first.ring(), g.ring())?;
            }
        }
        Ok(DivisorCombination { components })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[(Polynomial, ExactRational)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub ideal: Ideal,
    pub exponent: ExactRational,
}

/// A formal product `∏ I_i^{s_i}` of nonzero ideals with exponents `s_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPair {
    ring: Ring,
    factors: Vec<Factor>,
}

impl MixedPair {
    pub fn new(ring: &Ring, factors: Vec<(Ideal, ExactRational)>) -> Result<Self> {
        let mut pair = MixedPair::empty(ring);
        for (ideal, exponent) in factors {
            pair.push(ideal, exponent)?;
        }
        Ok(pair)
    }

    pub fn empty(ring: &Ring) -> Self {
        MixedPair {
            ring: ring.clone(),
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, ideal: Ideal, exponent: ExactRational) -> Result<()> {
        check_ring(&self.ring, ideal.ring())?;
        if exponent.is_negative() {
            return Err(Error::NegativeExponent(format_rational(&exponent)));
        }
        self.factors.push(Factor { ideal, exponent });
        Ok(())
    }

    pub fn with_factor(&self, ideal: Ideal, exponent: ExactRational) -> Result<Self> {
        let mut out = self.clone();
        out.push(ideal, exponent)?;
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Appends every component `(g, c)` of `Δ` as the factor `((g), c)`.
pub fn pair_from_divisor(delta: &DivisorCombination, rest: &MixedPair) -> Result<MixedPair> {
    let mut out = rest.clone();
    for (g, c) in &delta.components {
        out.push(Ideal::principal(g.clone())?, c.clone())?;
    }
    Ok(out)
}

/// Splits `f^{⌊s⌋}` off every principal factor `((f), s)` with `s ≥ 1`.
/// Returns the product of the extracted powers and the remaining pair;
/// factors left with exponent 0 are dropped.
pub fn skoda_normalize(pair: &MixedPair) -> Result<(Polynomial, MixedPair)> {
    let mut prefactor = Polynomial::one(&pair.ring);
    let mut rest = MixedPair::empty(&pair.ring);
    for factor in &pair.factors {
        let whole = factor.exponent.floor().to_integer();
        match factor.ideal.as_principal() {
            Some(f) if !whole.is_zero() => {
                let n = whole.to_u64().ok_or(Error::ExponentOverflow)?;
                prefactor = prefactor.checked_mul(&f.pow(n))?;
                let frac = factor.exponent.fract();
                if !frac.is_zero() {
                    rest.push(factor.ideal.clone(), frac)?;
                }
            }
            _ => rest.push(factor.ideal.clone(), factor.exponent.clone())?,
        }
    }
    Ok((prefactor, rest))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistDirection {
    IntoDivisor,
    IntoIdeal,
}

/// Moves a principal factor between the divisor part and the ideal part.
///
/// `IntoDivisor` removes factor `index` of the pair and appends it to `Δ`;
/// `IntoIdeal` takes the last component of `Δ` and inserts it as factor
/// `index`, so the two moves with the same index undo each other.
pub fn twist(
    delta: &DivisorCombination,
    pair: &MixedPair,
    index: usize,
    direction: TwistDirection,
) -> Result<(DivisorCombination, MixedPair)> {
    let mut delta = delta.clone();
    let mut pair = pair.clone();
    match direction {
        TwistDirection::IntoDivisor => {
            if index >= pair.factors.len() {
                return Err(Error::IndexOutOfRange(index));
            }
            let f = pair.factors[index]
                .ideal
                .as_principal()
                .ok_or(Error::NonPrincipal(index))?
                .clone();
            let factor = pair.factors.remove(index);
            delta.components.push((f, factor.exponent));
        }
        TwistDirection::IntoIdeal => {
            if index > pair.factors.len() {
                return Err(Error::IndexOutOfRange(index));
            }
            let (g, c) = delta
                .components
                .pop()
                .ok_or(Error::IndexOutOfRange(index))?;
            check_ring(&pair.ring, g.ring())?;
            pair.factors.insert(
                index,
                Factor {
                    ideal: Ideal::principal(g)?,
                    exponent: c,
                },
            );
        }
    }
    Ok((delta, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, MonomialOrder, RingContext};
    use crate::ring::{integer, rational, PrimeChar};

    fn ring(p: u64) -> Ring {
        RingContext::new(PrimeChar::new(p).unwrap(), &["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn mono(r: &Ring, a: u64, b: u64) -> Polynomial {
        Polynomial::monomial(r, Monomial::from_exponents(&[a, b]).unwrap(), 1)
    }

    fn principal(f: Polynomial) -> Ideal {
        Ideal::principal(f).unwrap()
    }

    #[test]
    fn divisor_unfolding() {
        let r = ring(5);
        let (x, y) = (mono(&r, 1, 0), mono(&r, 0, 1));
        let delta = DivisorCombination::new(vec![
            (x.clone(), rational(1, 2)),
            (y.clone(), integer(1)),
        ])
        .unwrap();
        let rest = MixedPair::new(&r, vec![(Ideal::maximal(&r), rational(3, 4))]).unwrap();
        let pair = pair_from_divisor(&delta, &rest).unwrap();
        let expected = MixedPair::new(
            &r,
            vec![
                (Ideal::maximal(&r), rational(3, 4)),
                (principal(x), rational(1, 2)),
                (principal(y), integer(1)),
            ],
        )
        .unwrap();
        assert_eq!(pair, expected);
        assert_eq!(pair_from_divisor(&DivisorCombination::empty(), &rest).unwrap(), rest);
        assert!(DivisorCombination::new(vec![(mono(&r, 1, 0), rational(-1, 2))]).is_err());
    }

    #[test]
    fn skoda_examples() {
        let r = ring(3);
        let (x, y) = (mono(&r, 1, 0), mono(&r, 0, 1));
        let p = MixedPair::new(&r, vec![(principal(x.clone()), rational(3, 2))]).unwrap();
        let (pre, q) = skoda_normalize(&p).unwrap();
        assert_eq!(pre, x);
        assert_eq!(q, MixedPair::new(&r, vec![(principal(x.clone()), rational(1, 2))]).unwrap());

        let half = MixedPair::new(&r, vec![(principal(x.clone()), rational(1, 2))]).unwrap();
        let (pre, q) = skoda_normalize(&half).unwrap();
        assert!(pre.is_one());
        assert_eq!(q, half);

        let two = MixedPair::new(
            &r,
            vec![(principal(x.clone()), integer(2)), (principal(y.clone()), rational(5, 4))],
        )
        .unwrap();
        let (pre, q) = skoda_normalize(&two).unwrap();
        assert_eq!(pre, mono(&r, 2, 1));
        assert_eq!(q, MixedPair::new(&r, vec![(principal(y), rational(1, 4))]).unwrap());

        let m = MixedPair::new(&r, vec![(Ideal::maximal(&r), integer(2))]).unwrap();
        let (pre, q) = skoda_normalize(&m).unwrap();
        assert!(pre.is_one());
        assert_eq!(q, m);
    }

    #[test]
    fn twist_moves() {
        let p = 5;
        let r = ring(p);
        let x = mono(&r, 1, 0);
        let t = rational(3, 5);
        let pair = MixedPair::new(
            &r,
            vec![(principal(x.clone()), rational(1, p as i64)), (principal(x.clone()), t.clone())],
        )
        .unwrap();
        let (delta, rest) =
            twist(&DivisorCombination::empty(), &pair, 0, TwistDirection::IntoDivisor).unwrap();
        assert_eq!(delta.components(), &[(x.clone(), rational(1, p as i64))]);
        assert_eq!(rest, MixedPair::new(&r, vec![(principal(x.clone()), t)]).unwrap());
        let (back_delta, back) = twist(&delta, &rest, 0, TwistDirection::IntoIdeal).unwrap();
        assert!(back_delta.is_empty());
        assert_eq!(back, pair);

        let cusp = &mono(&r, 2, 0) + &mono(&r, 0, 3);
        let single = MixedPair::new(&r, vec![(principal(cusp), rational(5, 6))]).unwrap();
        let (d, q) = twist(&DivisorCombination::empty(), &single, 0, TwistDirection::IntoDivisor).unwrap();
        assert_eq!(twist(&d, &q, 0, TwistDirection::IntoIdeal).unwrap().1, single);

        let m = MixedPair::new(&r, vec![(Ideal::maximal(&r), integer(1))]).unwrap();
        let empty = DivisorCombination::empty();
        assert_eq!(
            twist(&empty, &m, 0, TwistDirection::IntoDivisor).err(),
            Some(Error::NonPrincipal(0))
        );
        assert_eq!(
            twist(&empty, &m, 3, TwistDirection::IntoDivisor).err(),
            Some(Error::IndexOutOfRange(3))
        );
    }
}
