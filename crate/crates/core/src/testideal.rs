//! Test ideals of mixed pairs.
//!
//! On `F_p[x]` the chain `J_E = (∏ I_i^{⌈s_i p^E⌉})^{[1/p^E]}` ascends to
//! `τ`. A level is computed by `E` single roots: if `I` has `k` generators
//! and `M ≥ (k−1)(p−1)`, pigeonhole gives `I^M = (I^j)^{[p]}·I^{N'}` with
//! `N' ∈ [(k−1)(p−1), k(p−1)]`, so `(I^M·K)^{[1/p]} = I^j·(I^{N'}·K)^{[1/p]}`.
//! Only small powers are ever formed.
//!
//! Writing `s_i p^b = u_i` with denominators prime to `p` and `q = p^c ≡ 1`
//! modulo them, the levels `E = b + nc` have `⌈s_i p^E⌉ = u_i q^n + X_i` for
//! a fixed rational `X_i`. The reduction then follows a process on the
//! p-adic residues of `X` that does not depend on `n`. Once that process
//! revisits a state `(step mod c, X, K)` after `L·c` steps, levels `n` and
//! `n + L` end in identical states, so `J_{b+nc} = J_{b+(n+L)c} = …` and the
//! ascending chain has already reached `τ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{cartier_in_subsheaf, root_of_generators, CartierMap};
use crate::groebner::{interreduce_generators, Ideal};
use crate::pairs::{pair_from_divisor, DivisorCombination, MixedPair};
use crate::poly::{Polynomial, Ring};
use crate::ring::{
    ceil_scaled, multiplicative_order, rat_ceil_scale, split_p_part,
    ExactRational, PrimeChar,
};

/// Limits for the chain computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    /// Smallest chain level accepted as the answer.
    pub e_floor: u32,
    /// Further levels recomputed and required to agree with the answer.
    pub confirm_steps: u32,
    /// Bounds the residue process at `e_cap·c` steps and the chosen level
    /// at `e_cap` periods past the detected cycle.
    pub e_cap: u32,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            e_floor: 2,
            confirm_steps: 2,
            e_cap: 12,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.e_floor < 1 || self.e_floor > self.e_cap {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= e_floor <= e_cap, got {} and {}",
                self.e_floor, self.e_cap
            )));
        }
        if self.confirm_steps < 1 {
            return Err(Error::InvalidArgument("confirm_steps must be at least 1".into()));
        }
        Ok(())
    }
}

struct ChainFactor {
    gens: Vec<Polynomial>,
    exponent: ExactRational,
    /// `(k−1)(p−1)` for `k` generators.
    floor: u64,
    powers: HashMap<u64, Vec<Polynomial>>,
}

impl ChainFactor {
    fn power(&mut self, n: u64) -> Result<&[Polynomial]> {
        if !self.powers.contains_key(&n) {
            let ring = self.gens[0].ring().clone();
            let gens = if let [f] = self.gens.as_slice() {
                vec![f.pow(n)]
            } else {
                Ideal::new(&ring, self.gens.clone())?
                    .power(n)?
                    .generators()
                    .to_vec()
            };
            self.powers.insert(n, gens);
        }
        Ok(&self.powers[&n])
    }
}

/// The nontrivial factors of a pair, ready for chain steps.
struct Chain {
    ring: Ring,
    p: u32,
    factors: Vec<ChainFactor>,
}

impl Chain {
    fn new(pair: &MixedPair) -> Self {
        let ring = pair.ring().clone();
        let p = ring.p();
        let factors = pair
            .factors()
            .iter()
            .filter(|f| !f.exponent.is_zero() && !f.ideal.is_unit())
            .map(|f| {
                let given = f.ideal.generators();
                let basis = f.ideal.groebner_basis();
                let gens = if basis.len() < given.len() { basis } else { given };
                let gens = interreduce_generators(&ring, gens.to_vec());
                ChainFactor {
                    floor: (gens.len() as u64 - 1) * (p as u64 - 1),
                    gens,
                    exponent: f.exponent.clone(),
                    powers: HashMap::new(),
                }
            })
            .collect();
        Chain { ring, p, factors }
    }

    /// Exponent kept inside the root for current exponent `m`.
    fn kept(&self, i: usize, m: &BigInt) -> u64 {
        let floor = self.factors[i].floor;
        if *m < BigInt::from(floor) {
            return m.to_u64().expect("below the floor");
        }
        let p = BigInt::from(self.p);
        let offset = (m - BigInt::from(floor)).mod_floor(&p);
        floor + offset.to_u64().expect("residue")
    }

    /// `(∏ I_i^{n_i} · K)^{[1/p]}`.
    fn root_step(&mut self, kept: &[u64], k: &Ideal) -> Result<Ideal> {
        if k.is_unit() && kept.iter().all(|&n| n == 0) {
            return Ok(k.clone());
        }
        let mut gens: Vec<Polynomial> = k.groebner_basis().to_vec();
        for (i, &n) in kept.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let power = self.factors[i].power(n)?.to_vec();
            let mut next = Vec::with_capacity(gens.len() * power.len());
            for g in &gens {
                for h in &power {
                    next.push(g.checked_mul(h)?);
                }
            }
            gens = interreduce_cheap(&self.ring, next);
        }
        root_of_generators(&self.ring, &gens, self.p as u64)
    }

    /// `∏ I_i^{m_i} · K`.
    fn assemble(&mut self, m: &[BigInt], k: &Ideal) -> Result<Ideal> {
        let mut gens: Vec<Polynomial> = k.groebner_basis().to_vec();
        for (i, mi) in m.iter().enumerate() {
            let n = mi.to_u64().ok_or(Error::ExponentOverflow)?;
            if n == 0 {
                continue;
            }
            let power = self.factors[i].power(n)?.to_vec();
            let mut next = Vec::with_capacity(gens.len() * power.len());
            for g in &gens {
                for h in &power {
                    next.push(g.checked_mul(h)?);
                }
            }
            gens = interreduce_cheap(&self.ring, next);
        }
        Ideal::from_generators_reduced(&self.ring, gens)
    }

    /// Runs `steps` reductions from exponents `m` and ideal `k`.
    fn run(&mut self, mut m: Vec<BigInt>, mut k: Ideal, steps: u64) -> Result<Ideal> {
        let p = BigInt::from(self.p);
        for _ in 0..steps {
            let kept: Vec<u64> = (0..m.len()).map(|i| self.kept(i, &m[i])).collect();
            k = self.root_step(&kept, &k)?;
            for (mi, &n) in m.iter_mut().zip(&kept) {
                *mi = (&*mi - BigInt::from(n)) / &p;
            }
        }
        self.assemble(&m, &k)
    }

    /// `J_E` by direct simulation.
    fn level(&mut self, e: u32) -> Result<Ideal> {
        let q = BigInt::from(self.p).pow(e);
        let m = self
            .factors
            .iter()
            .map(|f| ceil_scaled(&f.exponent, &q))
            .collect();
        let unit = Ideal::unit(&self.ring);
        self.run(m, unit, e as u64)
    }
}

/// Drops duplicate generators and minimizes monomial lists; anything more
/// is left to the root step.
fn interreduce_cheap(ring: &Ring, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    if gens.iter().all(Polynomial::is_monomial) {
        return interreduce_generators(ring, gens);
    }
    let mut gens: Vec<Polynomial> = gens.into_iter().map(|g| g.monic()).collect();
    gens.sort_by_key(|a| a.to_string());
    gens.dedup();
    gens
}

/// Output of [`tau_detailed`].
#[derive(Clone, Debug)]
pub struct TauComputation {
    pub ideal: Ideal,
    /// The chain level `E` whose ideal was returned.
    pub level: u64,
    /// Steps taken by the residue process before it repeated.
    pub process_steps: u64,
}

/// `τ` of a mixed pair.
pub fn tau(pair: &MixedPair, cfg: &ChainConfig) -> Result<Ideal> {
    Ok(tau_detailed(pair, cfg)?.ideal)
}

pub fn tau_detailed(pair: &MixedPair, cfg: &ChainConfig) -> Result<TauComputation> {
    cfg.validate()?;
    let mut chain = Chain::new(pair);
    if chain.factors.is_empty() {
        return Ok(TauComputation {
            ideal: Ideal::unit(pair.ring()),
            level: 0,
            process_steps: 0,
        });
    }
    let p = chain.p;
    let char = PrimeChar::new(p as u64)?;
    let pbig = BigInt::from(p);

    // s_i p^b = u_i with p-free denominators; q = p^c is 1 modulo all of them
    let mut b = 0u32;
    let mut c = 1u64;
    for f in &chain.factors {
        let (v, d) = split_p_part(f.exponent.denom(), p);
        b = b.max(v);
        c = c.lcm(&multiplicative_order(p, d.magnitude()));
    }
    let pb = ExactRational::from_integer(pbig.pow(b));
    let u: Vec<ExactRational> = chain.factors.iter().map(|f| &f.exponent * &pb).collect();
    let mut x: Vec<ExactRational> = u.iter().map(|ui| ui.ceil() - ui).collect();

    let budget = cfg.e_cap as u64 * c;
    let mut seen: HashMap<(u64, Vec<ExactRational>, Vec<Polynomial>), u64> = HashMap::new();
    let mut kept_log: Vec<Vec<u64>> = Vec::new();
    let mut ks: Vec<Ideal> = Vec::new();
    let mut k = Ideal::unit(&chain.ring);
    let (start, period) = loop {
        let step = kept_log.len() as u64;
        let key = (step % c, x.clone(), k.groebner_basis().to_vec());
        if let Some(&first) = seen.get(&key) {
            break (first, step - first);
        }
        if step >= budget {
            let last = ks.last().map(|i| i.to_string()).unwrap_or_default();
            let previous = ks.len().checked_sub(2).map(|i| ks[i].to_string()).unwrap_or_default();
            return Err(Error::NonStabilization {
                level: step,
                last,
                previous,
            });
        }
        seen.insert(key, step);
        let mut kept = Vec::with_capacity(x.len());
        for (i, xi) in x.iter_mut().enumerate() {
            let rho = char.residue_of(xi)? as u64;
            let floor = chain.factors[i].floor;
            let n = floor + (rho + p as u64 - floor % p as u64) % p as u64;
            *xi = (&*xi - ExactRational::from_integer(BigInt::from(n)))
                / ExactRational::from_integer(pbig.clone());
            kept.push(n);
        }
        ks.push(k.clone());
        k = chain.root_step(&kept, &k)?;
        kept_log.push(kept);
    };
    let prefix = start + period;

    // smallest aligned level whose own reduction follows the process
    let n_min = prefix.div_ceil(c).max(1);
    let mut n = n_min;
    let m_start = loop {
        if n > n_min + cfg.e_cap as u64 {
            return Err(Error::NonStabilization {
                level: b as u64 + n * c,
                last: k.to_string(),
                previous: ks.last().map(|i| i.to_string()).unwrap_or_default(),
            });
        }
        let e = b as u64 + n * c;
        if e >= cfg.e_floor as u64 && follows_process(&chain, e, &kept_log[..prefix as usize]) {
            break advance(&chain, e, &kept_log[..prefix as usize]);
        }
        n += 1;
    };
    let level = b as u64 + n * c;
    let ideal = chain.run(m_start, k, level - prefix)?;

    for extra in 1..=cfg.confirm_steps as u64 {
        let e = u32::try_from(level + extra).map_err(|_| Error::ExponentOverflow)?;
        let next = chain.level(e)?;
        if !next.equals(&ideal)? {
            return Err(Error::Internal(format!(
                "chain moved past its certified limit at level {e}: {ideal} then {next}"
            )));
        }
    }
    Ok(TauComputation {
        ideal,
        level,
        process_steps: prefix,
    })
}

fn start_exponents(chain: &Chain, e: u64) -> Vec<BigInt> {
    let q = BigInt::from(chain.p).pow(e as u32);
    chain
        .factors
        .iter()
        .map(|f| ceil_scaled(&f.exponent, &q))
        .collect()
}

/// Whether the direct reduction at level `e` keeps the logged exponents.
fn follows_process(chain: &Chain, e: u64, log: &[Vec<u64>]) -> bool {
    if (log.len() as u64) > e {
        return false;
    }
    let p = BigInt::from(chain.p);
    let mut m = start_exponents(chain, e);
    for kept in log {
        for (i, (mi, &n)) in m.iter_mut().zip(kept).enumerate() {
            if chain.kept(i, mi) != n || *mi < BigInt::from(chain.factors[i].floor) {
                return false;
            }
            *mi = (&*mi - BigInt::from(n)) / &p;
        }
    }
    true
}

fn advance(chain: &Chain, e: u64, log: &[Vec<u64>]) -> Vec<BigInt> {
    let p = BigInt::from(chain.p);
    let mut m = start_exponents(chain, e);
    for kept in log {
        for (mi, &n) in m.iter_mut().zip(kept) {
            *mi = (&*mi - BigInt::from(n)) / &p;
        }
    }
    m
}

/// `J_E = (∏ I_i^{⌈s_i p^E⌉})^{[1/p^E]}` for one level.
pub fn chain_level(pair: &MixedPair, e: u32) -> Result<Ideal> {
    let mut chain = Chain::new(pair);
    if chain.factors.is_empty() {
        return Ok(Ideal::unit(pair.ring()));
    }
    chain.level(e)
}

/// `τ` together with the least level `E` at which the chain reaches it.
pub fn tau_with_depth(pair: &MixedPair, cfg: &ChainConfig) -> Result<(Ideal, u32)> {
    let computed = tau_detailed(pair, cfg)?;
    let top = u32::try_from(computed.level).map_err(|_| Error::ExponentOverflow)?;
    for e in 0..top {
        if chain_level(pair, e)?.equals(&computed.ideal)? {
            return Ok((computed.ideal, e));
        }
    }
    Ok((computed.ideal, top))
}

/// `Σ_{e=0..E} ((c)·∏ I_i^{⌈s_i(p^e−1)⌉})^{[1/p^e]}` for a test element `c`
/// of the pair. Powers are formed explicitly; only `f^{aq+r} = (f^a)^{[q]}·f^r`
/// is used to keep principal powers small.
pub fn tau_remark23(
    pair: &MixedPair,
    c: &Polynomial,
    depth: u32,
    cfg: &ChainConfig,
) -> Result<Ideal> {
    validate_test_element(pair, c, cfg)?;
    test_element_sum(pair, &DivisorCombination::empty(), c, depth)
}

/// The same sum for the pair `(R, Δ, rest)`, where at level `e` only the
/// Cartier maps `φ` with `D_φ ≥ (p^e − 1)Δ` contribute. These are the
/// premultiples of `∏ g_i^{⌈c_i(p^e−1)⌉}` over the trace generator.
pub fn tau_divisor_sum(
    delta: &DivisorCombination,
    rest: &MixedPair,
    c: &Polynomial,
    depth: u32,
    cfg: &ChainConfig,
) -> Result<Ideal> {
    validate_test_element(&pair_from_divisor(delta, rest)?, c, cfg)?;
    test_element_sum(rest, delta, c, depth)
}

fn validate_test_element(pair: &MixedPair, c: &Polynomial, cfg: &ChainConfig) -> Result<()> {
    if c.is_zero() {
        return Err(Error::NotATestElement("0".into()));
    }
    if !tau(pair, cfg)?.contains(c)? {
        return Err(Error::NotATestElement(c.to_string()));
    }
    Ok(())
}

fn test_element_sum(
    pair: &MixedPair,
    delta: &DivisorCombination,
    c: &Polynomial,
    depth: u32,
) -> Result<Ideal> {
    let ring = pair.ring();
    let p = ring.p() as u64;
    let mut total = Ideal::principal(c.clone())?;
    for e in 1..=depth {
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
        let mut premultiplier = Polynomial::one(ring);
        for (g, coeff) in delta.components() {
            premultiplier = premultiplier.checked_mul(&g.pow(rat_ceil_scale(coeff, q - 1)?))?;
        }
        if !delta.is_empty() {
            let phi = CartierMap::new(e, premultiplier.clone())?;
            if !cartier_in_subsheaf(&phi, delta)? {
                return Err(Error::Internal(format!("{premultiplier} fails the divisor bound")));
            }
        }
        let mut principal = vec![(premultiplier, 1u64)];
        let mut others = Vec::new();
        for f in pair.factors() {
            let n = rat_ceil_scale(&f.exponent, q - 1)?;
            match f.ideal.as_principal() {
                Some(g) => principal.push((g.clone(), n)),
                None => others.push(f.ideal.power(n)?),
            }
        }
        let term = level_term(ring, c, &principal, &others, q)?;
        total = Ideal::from_generators_reduced(
            ring,
            total.generators().iter().chain(term.generators()).cloned().collect(),
        )?;
        if total.is_unit() {
            break;
        }
    }
    Ok(total)
}

/// `(c · ∏ g_i^{n_i} · ∏ I_j)^{[1/q]}`.
fn level_term(
    ring: &Ring,
    c: &Polynomial,
    principal: &[(Polynomial, u64)],
    others: &[Ideal],
    q: u64,
) -> Result<Ideal> {
    let mut outside = Polynomial::one(ring);
    let mut inside = c.clone();
    for (g, n) in principal {
        outside = outside.checked_mul(&g.pow(n / q))?;
        inside = inside.checked_mul(&g.pow(n % q))?;
    }
    let mut gens = vec![inside];
    for ideal in others {
        let mut next = Vec::with_capacity(gens.len() * ideal.generators().len());
        for g in &gens {
            for h in ideal.generators() {
                next.push(g.checked_mul(h)?);
            }
        }
        gens = interreduce_cheap(ring, next);
    }
    let root = root_of_generators(ring, &gens, q)?;
    Ideal::from_generators_reduced(
        ring,
        root.generators()
            .iter()
            .map(|g| g.checked_mul(&outside))
            .collect::<Result<_>>()?,
    )
}

/// `τ` of the pair obtained by folding `Δ` into the ideal part.
pub fn tau_of_divisor_pair(
    delta: &DivisorCombination,
    rest: &MixedPair,
    cfg: &ChainConfig,
) -> Result<Ideal> {
    tau(&pair_from_divisor(delta, rest)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, MonomialOrder, RingContext};
    use crate::ring::{integer, rational};

    fn ring(p: u64, vars: &[&str]) -> Ring {
        RingContext::new(PrimeChar::new(p).unwrap(), vars, MonomialOrder::GrevLex).unwrap()
    }

    fn mono(r: &Ring, e: &[u64]) -> Polynomial {
        Polynomial::monomial(r, Monomial::from_exponents(e).unwrap(), 1)
    }

    fn principal(f: Polynomial) -> Ideal {
        Ideal::principal(f).unwrap()
    }

    fn pair(r: &Ring, factors: Vec<(Ideal, ExactRational)>) -> MixedPair {
        MixedPair::new(r, factors).unwrap()
    }

    fn cfg() -> ChainConfig {
        ChainConfig::default()
    }

    #[test]
    fn smooth_divisor_below_one() {
        let r = ring(3, &["x"]);
        let x = principal(mono(&r, &[1]));
        assert!(tau(&pair(&r, vec![(x, rational(1, 2))]), &cfg()).unwrap().is_unit());
    }

    #[test]
    fn example_pair_at_total_one() {
        let r = ring(5, &["x"]);
        let x = principal(mono(&r, &[1]));
        let p = pair(&r, vec![(x.clone(), rational(1, 5)), (x.clone(), rational(4, 5))]);
        assert_eq!(tau(&p, &cfg()).unwrap(), x);
    }

    #[test]
    fn maximal_ideal_squared() {
        let r = ring(2, &["x", "y"]);
        let m = Ideal::maximal(&r);
        let p = pair(&r, vec![(m.clone(), integer(2))]);
        assert_eq!(tau(&p, &cfg()).unwrap(), m);
    }

    #[test]
    fn cusp_threshold_at_seven() {
        let r = ring(7, &["x", "y"]);
        let f = principal(&mono(&r, &[2, 0]) + &mono(&r, &[0, 3]));
        let below = pair(&r, vec![(f.clone(), rational(5, 6) - rational(1, 100))]);
        let at = pair(&r, vec![(f, rational(5, 6))]);
        assert!(tau(&below, &cfg()).unwrap().is_unit());
        assert_eq!(tau(&at, &cfg()).unwrap(), Ideal::maximal(&r));
    }

    #[test]
    fn late_jump_is_not_missed() {
        // τ(x^{99/100}) = (1), but J_1..J_6 all equal (x) at p = 2
        let r = ring(2, &["x"]);
        let x = principal(mono(&r, &[1]));
        let p = pair(&r, vec![(x.clone(), rational(99, 100))]);
        for e in 1..=6 {
            assert_eq!(chain_level(&p, e).unwrap(), x);
        }
        assert!(tau(&p, &cfg()).unwrap().is_unit());
        assert!(chain_level(&p, 7).unwrap().is_unit());
    }

    #[test]
    fn remark23_examples() {
        let r = ring(5, &["x", "y"]);
        let x = mono(&r, &[1, 0]);
        let half = pair(&r, vec![(principal(x.clone()), rational(1, 2))]);
        assert!(tau_remark23(&half, &Polynomial::one(&r), 3, &cfg()).unwrap().is_unit());

        let ex = pair(&r, vec![(principal(x.clone()), rational(1, 5)), (principal(x.clone()), rational(4, 5))]);
        assert_eq!(tau_remark23(&ex, &x, 4, &cfg()).unwrap(), principal(x.clone()));
        assert!(matches!(
            tau_remark23(&ex, &Polynomial::one(&r), 4, &cfg()),
            Err(Error::NotATestElement(_))
        ));

        let r3 = ring(3, &["x", "y"]);
        let m = pair(&r3, vec![(Ideal::maximal(&r3), integer(2))]);
        let x3 = mono(&r3, &[1, 0]);
        assert_eq!(tau_remark23(&m, &x3, 5, &cfg()).unwrap(), Ideal::maximal(&r3));
    }

    #[test]
    fn divisor_pairs() {
        let r = ring(5, &["x"]);
        let x = mono(&r, &[1]);
        let delta = DivisorCombination::new(vec![(x.clone(), rational(1, 5))]).unwrap();
        let rest = pair(&r, vec![(principal(x.clone()), rational(3, 5))]);
        assert!(tau_of_divisor_pair(&delta, &rest, &cfg()).unwrap().is_unit());

        let rest = pair(&r, vec![(principal(x.clone()), rational(3, 2))]);
        let got = tau_of_divisor_pair(&DivisorCombination::empty(), &rest, &cfg()).unwrap();
        assert_eq!(got, principal(x.clone()));

        let delta = DivisorCombination::new(vec![(x.clone(), integer(1))]).unwrap();
        let got = tau_of_divisor_pair(&delta, &MixedPair::empty(&r), &cfg()).unwrap();
        assert_eq!(got, principal(x));
    }

    #[test]
    fn trivial_pairs() {
        let r = ring(3, &["x", "y"]);
        assert!(tau(&MixedPair::empty(&r), &cfg()).unwrap().is_unit());
        let zero = pair(&r, vec![(Ideal::maximal(&r), integer(0))]);
        assert!(tau(&zero, &cfg()).unwrap().is_unit());
        let unit = pair(&r, vec![(Ideal::unit(&r), integer(5))]);
        assert!(tau(&unit, &cfg()).unwrap().is_unit());
    }

    #[test]
    fn depth_is_first_matching_level() {
        let r = ring(2, &["x"]);
        let x = principal(mono(&r, &[1]));
        let p = pair(&r, vec![(x, rational(99, 100))]);
        let (ideal, depth) = tau_with_depth(&p, &cfg()).unwrap();
        assert!(ideal.is_unit());
        assert_eq!(depth, 7);
    }

    #[test]
    fn config_validation() {
        let r = ring(3, &["x"]);
        let bad = ChainConfig { e_floor: 0, ..cfg() };
        assert!(tau(&MixedPair::empty(&r), &bad).is_err());
        let bad = ChainConfig { confirm_steps: 0, ..cfg() };
        assert!(tau(&MixedPair::empty(&r), &bad).is_err());
    }
}
