//! Randomized and fixed verification suites shared by the tests and the
//! `verify` command.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frobenius::frobenius_root;
use crate::groebner::Ideal;
use crate::jumping::{
    default_denominator_bound, enumerate_jumps, fpt, scaling_counterexample_check, ParametricPair,
};
use crate::oracle::{howald_jumps, howald_multiplier, nu_sandwich};
use crate::pairs::{twist, DivisorCombination, MixedPair, TwistDirection};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, RingContext};
use crate::ring::{format_rational, integer, rational, ExactRational, PrimeChar};
use crate::testideal::{tau, tau_divisor_sum, tau_remark23, tau_with_depth, ChainConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Skoda,
    Twist,
    Oracle,
    Remark23,
    Froot,
    Cusp,
    Example,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Example,
        Suite::Skoda,
        Suite::Twist,
        Suite::Remark23,
        Suite::Oracle,
        Suite::Cusp,
        Suite::Froot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Skoda => "skoda",
            Suite::Twist => "twist",
            Suite::Oracle => "oracle",
            Suite::Remark23 => "remark23",
            Suite::Froot => "froot",
            Suite::Cusp => "cusp",
            Suite::Example => "example",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} passed",
            self.suite.name(),
            self.cases - self.failures.len(),
            self.cases
        )
    }
}

struct Recorder {
    cases: usize,
    failures: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: impl FnOnce() -> String, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, cfg: &ChainConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9));
    let mut rec = Recorder::new();
    match suite {
        Suite::Skoda => skoda_suite(&mut rng, cfg, &mut rec, 50)?,
        Suite::Twist => twist_suite(&mut rng, cfg, &mut rec, 50)?,
        Suite::Remark23 => remark23_suite(&mut rng, cfg, &mut rec, 25)?,
        Suite::Oracle => oracle_suite(cfg, &mut rec)?,
        Suite::Froot => froot_suite(&mut rng, &mut rec, 100)?,
        Suite::Cusp => cusp_suite(cfg, &mut rec)?,
        Suite::Example => example_suite(cfg, &mut rec)?,
    }
    Ok(SuiteOutcome {
        suite,
        cases: rec.cases,
        failures: rec.failures,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn ring_for(p: u64, nvars: usize) -> Result<Ring> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    RingContext::new(PrimeChar::new(p)?, &NAMES[..nvars], MonomialOrder::GrevLex)
}

/// A nonconstant polynomial with at most `terms` terms of total degree
/// between 1 and `max_degree`.
pub fn random_polynomial(rng: &mut impl Rng, ring: &Ring, terms: usize, max_degree: u64) -> Polynomial {
    let p = ring.p() as i64;
    loop {
        let count = rng.gen_range(1..=terms);
        let f = Polynomial::from_terms(
            ring,
            (0..count).map(|_| {
                let mut exps = vec![0u64; ring.nvars()];
                let degree = rng.gen_range(1..=max_degree);
                for _ in 0..degree {
                    exps[rng.gen_range(0..ring.nvars())] += 1;
                }
                let m = Monomial::from_exponents(&exps).expect("small exponents");
                (m, rng.gen_range(1..p))
            }),
        );
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

/// A rational `a/d` in `[lo, hi]` with `d` drawn from small denominators and
/// powers of `p`.
pub fn random_exponent(rng: &mut impl Rng, p: u64, lo: i64, hi: i64) -> ExactRational {
    let dens = [1, 2, 3, 4, p as i64, (p * p) as i64, 2 * p as i64];
    let d = *dens.choose(rng).expect("nonempty");
    let a = rng.gen_range(lo * d..=hi * d);
    rational(a, d)
}

fn positive_exponent(rng: &mut impl Rng, p: u64, hi: i64) -> ExactRational {
    loop {
        let s = random_exponent(rng, p, 0, hi);
        if s > ExactRational::from_integer(0.into()) {
            return s;
        }
    }
}

fn random_monomial_ideal(rng: &mut impl Rng, ring: &Ring, count: usize, max_degree: u64) -> Result<Ideal> {
    let gens = (0..rng.gen_range(1..=count))
        .map(|_| {
            let mut exps = vec![0u64; ring.nvars()];
            for _ in 0..rng.gen_range(1..=max_degree) {
                exps[rng.gen_range(0..ring.nvars())] += 1;
            }
            exps
        })
        .collect::<Vec<_>>();
    Ideal::from_monomials(ring, &gens)
}

/// An extra factor: principal or monomial, exponent in `[0, 2]`.
fn random_rest(rng: &mut impl Rng, ring: &Ring) -> Result<MixedPair> {
    let p = ring.p() as u64;
    let mut rest = MixedPair::empty(ring);
    if rng.gen_bool(0.75) {
        let ideal = if rng.gen_bool(0.5) {
            Ideal::principal(random_polynomial(rng, ring, 3, 3))?
        } else {
            random_monomial_ideal(rng, ring, 2, 3)?
        };
        rest.push(ideal, positive_exponent(rng, p, 2))?;
    }
    Ok(rest)
}

fn describe(pair: &MixedPair) -> String {
    let parts: Vec<String> = pair
        .factors()
        .iter()
        .map(|f| format!("{}^{}", f.ideal, format_rational(&f.exponent)))
        .collect();
    format!("p={} {}", pair.ring().p(), parts.join("; "))
}

fn skoda_suite(rng: &mut ChaCha8Rng, cfg: &ChainConfig, rec: &mut Recorder, count: usize) -> Result<()> {
    for _ in 0..count {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let ring = ring_for(p, rng.gen_range(1..=2))?;
        let f = random_polynomial(rng, &ring, 3, 3);
        let s = random_exponent(rng, p, 0, 2);
        let rest = random_rest(rng, &ring)?;
        let fi = Ideal::principal(f.clone())?;
        let big = rest.with_factor(fi.clone(), &s + integer(1))?;
        let small = rest.with_factor(fi.clone(), s.clone())?;
        let label = || describe(&big);
        let outcome = (|| {
            let lhs = tau(&big, cfg)?;
            let rhs = tau(&small, cfg)?.product(&fi)?;
            lhs.equals(&rhs)
        })();
        rec.check(label, outcome);
    }
    Ok(())
}

/// Least `e` with `(c)^{[1/p^e]} = (1)`.
fn unit_root_level(c: &Polynomial) -> Result<u32> {
    let ci = Ideal::principal(c.clone())?;
    for e in 1..64 {
        if frobenius_root(&ci, e)?.is_unit() {
            return Ok(e);
        }
    }
    Err(Error::Internal(format!("no root of {c} is the unit ideal")))
}

/// Lowest-degree generator of `τ`, used as the test element.
fn test_element(t: &Ideal) -> Polynomial {
    t.groebner_basis()
        .iter()
        .min_by_key(|g| (g.total_degree(), g.len()))
        .expect("nonzero ideal")
        .clone()
}

fn twist_suite(rng: &mut ChaCha8Rng, cfg: &ChainConfig, rec: &mut Recorder, count: usize) -> Result<()> {
    for _ in 0..count {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let ring = ring_for(p, rng.gen_range(1..=2))?;
        let mut pair = random_rest(rng, &ring)?;
        let g = random_polynomial(rng, &ring, 3, 3);
        let b = positive_exponent(rng, p, 2);
        let at = rng.gen_range(0..=pair.len());
        let mut factors: Vec<_> = pair
            .factors()
            .iter()
            .map(|f| (f.ideal.clone(), f.exponent.clone()))
            .collect();
        factors.insert(at, (Ideal::principal(g)?, b));
        pair = MixedPair::new(&ring, factors)?;
        let label = || describe(&pair);
        let outcome = (|| {
            let ideal_side = tau(&pair, cfg)?;
            let (depth_ideal, depth) = tau_with_depth(&pair, cfg)?;
            debug_assert!(depth_ideal == ideal_side);
            let (delta, rest) = twist(&DivisorCombination::empty(), &pair, at, TwistDirection::IntoDivisor)?;
            let c = test_element(&ideal_side);
            let levels = depth + unit_root_level(&c)?;
            let divisor_side = tau_divisor_sum(&delta, &rest, &c, levels, cfg)?;
            let (_, back) = twist(&delta, &rest, at, TwistDirection::IntoIdeal)?;
            Ok(divisor_side.equals(&ideal_side)? && back == pair)
        })();
        rec.check(label, outcome);
    }
    Ok(())
}

fn remark23_suite(rng: &mut ChaCha8Rng, cfg: &ChainConfig, rec: &mut Recorder, count: usize) -> Result<()> {
    for _ in 0..count {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let ring = ring_for(p, rng.gen_range(1..=2))?;
        let mut pair = random_rest(rng, &ring)?;
        pair.push(
            Ideal::principal(random_polynomial(rng, &ring, 3, 3))?,
            positive_exponent(rng, p, 2),
        )?;
        let label = || describe(&pair);
        let outcome = (|| {
            let (t, depth) = tau_with_depth(&pair, cfg)?;
            let c = test_element(&t);
            tau_remark23(&pair, &c, depth + 2, cfg)?.equals(&t)
        })();
        rec.check(label, outcome);
    }
    Ok(())
}

/// Monomial ideals checked against Howald's formula, as
/// `(p, nvars, generator exponents, right end of the jump scan)`.
pub fn oracle_cases() -> Vec<(u64, usize, Vec<Vec<u64>>, i64)> {
    vec![
        (2, 2, vec![vec![1, 0], vec![0, 1]], 3),
        (3, 2, vec![vec![1, 0], vec![0, 1]], 3),
        (2, 2, vec![vec![2, 0], vec![0, 3]], 2),
        (3, 2, vec![vec![2, 0], vec![0, 3]], 2),
        (5, 2, vec![vec![2, 0], vec![0, 3]], 2),
        (2, 1, vec![vec![1]], 3),
        (3, 2, vec![vec![1, 0], vec![0, 2]], 2),
        (2, 2, vec![vec![3, 0], vec![1, 1], vec![0, 3]], 2),
        (5, 2, vec![vec![2, 1], vec![0, 2]], 2),
        (2, 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 2),
    ]
}

fn oracle_suite(cfg: &ChainConfig, rec: &mut Recorder) -> Result<()> {
    let samples = [rational(1, 2), rational(5, 6), integer(1), rational(3, 2), integer(2), rational(7, 3)];
    for (p, n, gens, top) in oracle_cases() {
        let ring = ring_for(p, n)?;
        let a = Ideal::from_monomials(&ring, &gens)?;
        for t in &samples {
            let label = || format!("p={p} τ({a}^{})", format_rational(t));
            let pair = MixedPair::new(&ring, vec![(a.clone(), t.clone())])?;
            let outcome = (|| tau(&pair, cfg)?.equals(&howald_multiplier(&a, t)?))();
            rec.check(label, outcome);
        }
        let (lo, hi) = (integer(0), integer(top));
        let label = || format!("p={p} jumps of {a}^t on [0, {top}]");
        let outcome = (|| {
            let pp = ParametricPair::simple(a.clone());
            let bound = default_denominator_bound(ring.p(), cfg);
            let report = enumerate_jumps(&pp, &lo, &hi, bound, cfg)?;
            Ok(report.all_certified() && report.certified_values() == howald_jumps(&a, &lo, &hi)?)
        })();
        rec.check(label, outcome);
    }
    Ok(())
}

fn cusp(ring: &Ring) -> Polynomial {
    &Polynomial::variable(ring, 0).pow(2) + &Polynomial::variable(ring, 1).pow(3)
}

fn cusp_suite(cfg: &ChainConfig, rec: &mut Recorder) -> Result<()> {
    for (p, expected) in [(2u64, rational(1, 2)), (7, rational(5, 6))] {
        let ring = ring_for(p, 2)?;
        let f = cusp(&ring);
        let pair = ParametricPair::simple(Ideal::principal(f.clone())?);
        let got = fpt(&pair, default_denominator_bound(p as u32, cfg), cfg);
        let got = match got {
            Ok(v) => v,
            Err(e) => {
                rec.check(|| format!("fpt(x^2+y^3) at p={p}"), Err(e));
                continue;
            }
        };
        rec.check(|| format!("fpt(x^2+y^3) at p={p} is {}", format_rational(&got)), Ok(got == expected));
        for e in 1..=4 {
            let outcome = nu_sandwich(&f, e, &Ideal::maximal(&ring)).map(|(lo, hi)| lo <= got && got <= hi);
            rec.check(|| format!("ν sandwich at p={p}, e={e}"), outcome);
        }
    }
    Ok(())
}

/// The pair `x^{1/p}·(x)^t`.
pub fn example_pair(p: u64) -> Result<ParametricPair> {
    let ring = ring_for(p, 1)?;
    let x = Ideal::principal(Polynomial::variable(&ring, 0))?;
    let base = MixedPair::new(&ring, vec![(x.clone(), rational(1, p as i64))])?;
    ParametricPair::new(base, x)
}

fn example_suite(cfg: &ChainConfig, rec: &mut Recorder) -> Result<()> {
    for p in [2u64, 3, 5] {
        let pair = example_pair(p)?;
        let bound = default_denominator_bound(p as u32, cfg);
        let pi = p as i64;
        let expected: Vec<ExactRational> = (1..=3).map(|k| rational(k * pi - 1, pi)).collect();
        let outcome = enumerate_jumps(&pair, &integer(0), &integer(3), bound, cfg)
            .map(|r| r.all_certified() && r.certified_values() == expected);
        rec.check(|| format!("jumps of x^(1/{p})·x^t on [0, 3]"), outcome);

        let hi = ExactRational::from_integer(BigInt::from(3 * p));
        let outcome = enumerate_jumps(&pair, &integer(0), &hi, bound, cfg).and_then(|r| {
            let rows = scaling_counterexample_check(&pair, 1, &r, cfg)?;
            Ok(rows.len() >= 3 && rows.iter().all(|row| !row.is_jump))
        });
        rec.check(|| format!("p·t0 is never a jump for p={p}"), outcome);

        let control = ParametricPair::simple(pair.moving().clone());
        let outcome = enumerate_jumps(&control, &integer(0), &hi, bound, cfg).and_then(|r| {
            let rows = scaling_counterexample_check(&control, 1, &r, cfg)?;
            Ok(rows.iter().any(|row| row.t0 == integer(1) && row.is_jump))
        });
        rec.check(|| format!("p·1 is a jump of x^t for p={p}"), outcome);
    }
    Ok(())
}

fn froot_suite(rng: &mut ChaCha8Rng, rec: &mut Recorder, count: usize) -> Result<()> {
    for _ in 0..count {
        let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
        let ring = ring_for(p, rng.gen_range(1..=3))?;
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| random_polynomial(rng, &ring, 3, 8))
            .collect();
        let i = Ideal::new(&ring, gens)?;
        let extra = random_polynomial(rng, &ring, 3, 8);
        let j = i.sum(&Ideal::principal(extra)?)?;
        let label = || format!("p={p} I={i:?}");
        let outcome = (|| {
            for e in 1..=2 {
                if !frobenius_root(&i.bracket_power(e)?, e)?.equals(&i)? {
                    return Ok(false);
                }
                if !frobenius_root(&i, e)?.is_subset_of(&frobenius_root(&j, e)?)? {
                    return Ok(false);
                }
                if !i.is_subset_of(&frobenius_root(&i, e)?.bracket_power(e)?)? {
                    return Ok(false);
                }
            }
            for (e1, e2) in [(1, 1), (1, 2), (2, 1)] {
                let twice = frobenius_root(&frobenius_root(&i, e1)?, e2)?;
                if !twice.equals(&frobenius_root(&i, e1 + e2)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        rec.check(label, outcome);
    }
    Ok(())
}
