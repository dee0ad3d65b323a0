//! F-jumping numbers: detection, enumeration by bisection, thresholds.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::pairs::MixedPair;
use crate::poly::{check_ring, Ring};
use crate::ring::{format_rational, simplest_rational_in, ExactRational};
use crate::testideal::{tau, ChainConfig};

/// `t ↦ base · 𝔞^t`.
#[derive(Clone, Debug)]
pub struct ParametricPair {
    base: MixedPair,
    moving: Ideal,
}

impl ParametricPair {
    pub fn new(base: MixedPair, moving: Ideal) -> Result<Self> {
        check_ring(base.ring(), moving.ring())?;
        Ok(ParametricPair { base, moving })
    }

    /// `𝔞^t` alone.
    pub fn simple(moving: Ideal) -> Self {
        ParametricPair {
            base: MixedPair::empty(moving.ring()),
            moving,
        }
    }

    pub fn base(&self) -> &MixedPair {
        &self.base
    }

    pub fn moving(&self) -> &Ideal {
        &self.moving
    }

    pub fn ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn at(&self, t: &ExactRational) -> Result<MixedPair> {
        self.base.with_factor(self.moving.clone(), t.clone())
    }
}

/// Memoized `t ↦ τ(P_t)`.
pub struct TauCache<'a> {
    pair: &'a ParametricPair,
    cfg: ChainConfig,
    memo: HashMap<ExactRational, Ideal>,
}

impl<'a> TauCache<'a> {
    pub fn new(pair: &'a ParametricPair, cfg: &ChainConfig) -> Self {
        TauCache {
            pair,
            cfg: *cfg,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, t: &ExactRational) -> Result<Ideal> {
        if let Some(i) = self.memo.get(t) {
            return Ok(i.clone());
        }
        let value = tau(&self.pair.at(t)?, &self.cfg)?;
        self.memo.insert(t.clone(), value.clone());
        Ok(value)
    }

    pub fn evaluations(&self) -> usize {
        self.memo.len()
    }
}

#[derive(Clone, Debug)]
pub struct JumpEntry {
    /// The identified jump, or the right end of the bracket when
    /// identification failed.
    pub t: ExactRational,
    pub tau_before: Ideal,
    pub tau_at: Ideal,
    pub certified: bool,
    /// Final bracket `(l, r]` known to contain the jump.
    pub bracket: (ExactRational, ExactRational),
}

#[derive(Clone, Debug)]
pub struct JumpReport {
    pub jumps: Vec<JumpEntry>,
    pub interval: (ExactRational, ExactRational),
    pub denominator_bound: u64,
}

impl JumpReport {
    pub fn all_certified(&self) -> bool {
        self.jumps.iter().all(|j| j.certified)
    }

    pub fn certified_values(&self) -> Vec<ExactRational> {
        self.jumps
            .iter()
            .filter(|j| j.certified)
            .map(|j| j.t.clone())
            .collect()
    }
}

/// `p^{e_cap}(p^{e_cap} − 1)`, clipped to `10^6`.
pub fn default_denominator_bound(p: u32, cfg: &ChainConfig) -> u64 {
    const CLIP: u128 = 1_000_000;
    let q = (p as u128).checked_pow(cfg.e_cap).unwrap_or(u128::MAX);
    q.saturating_mul(q.saturating_sub(1)).min(CLIP) as u64
}

/// Whether `τ(P_{t₀−δ}) ≠ τ(P_{t₀})`.
pub fn is_jump_at(
    pair: &ParametricPair,
    t0: &ExactRational,
    delta: &ExactRational,
    cfg: &ChainConfig,
) -> Result<bool> {
    if !t0.is_positive() || !delta.is_positive() || delta >= t0 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < delta < t0, got t0 = {} and delta = {}",
            format_rational(t0),
            format_rational(delta)
        )));
    }
    let mut cache = TauCache::new(pair, cfg);
    let before = cache.get(&(t0 - delta))?;
    let at = cache.get(t0)?;
    Ok(!before.equals(&at)?)
}

/// Jumps in `(lo, hi]`, in increasing order.
pub fn enumerate_jumps(
    pair: &ParametricPair,
    lo: &ExactRational,
    hi: &ExactRational,
    denominator_bound: u64,
    cfg: &ChainConfig,
) -> Result<JumpReport> {
    let mut cache = TauCache::new(pair, cfg);
    enumerate_with(&mut cache, lo, hi, denominator_bound, None)
}

fn enumerate_with(
    cache: &mut TauCache<'_>,
    lo: &ExactRational,
    hi: &ExactRational,
    denominator_bound: u64,
    limit: Option<usize>,
) -> Result<JumpReport> {
    if lo.is_negative() || lo >= hi {
        return Err(Error::InvalidInterval(format!(
            "[{}, {}]",
            format_rational(lo),
            format_rational(hi)
        )));
    }
    if denominator_bound == 0 {
        return Err(Error::InvalidArgument("denominator bound must be positive".into()));
    }
    let p = cache.pair.ring().p();
    let b = ExactRational::from_integer(BigInt::from(denominator_bound));
    let resolve_width = (ExactRational::from_integer(BigInt::from(2)) * &b * &b).recip();
    let mut jumps: Vec<JumpEntry> = Vec::new();
    // leftmost bracket on top
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((l, r)) = stack.pop() {
        let tl = cache.get(&l)?;
        let tr = cache.get(&r)?;
        if tl.equals(&tr)? {
            continue;
        }
        let width = &r - &l;
        if width < resolve_width {
            jumps.push(resolve(cache, &l, &r, &tl, &tr, denominator_bound)?);
            if limit.is_some_and(|n| jumps.len() >= n) {
                break;
            }
            continue;
        }
        let m = split_point(&l, &r, p);
        stack.push((m.clone(), r));
        stack.push((l, m));
    }
    Ok(JumpReport {
        jumps,
        interval: (lo.clone(), hi.clone()),
        denominator_bound,
    })
}

/// The rational with least `p`-power denominator in the middle half of
/// `(l, r)`. Such points keep the chain's period at 1.
fn split_point(l: &ExactRational, r: &ExactRational, p: u32) -> ExactRational {
    let quarter = (r - l) / ExactRational::from_integer(BigInt::from(4));
    let a = l + &quarter;
    let b = r - &quarter;
    let mut q = BigInt::one();
    loop {
        let qr = ExactRational::from_integer(q.clone());
        let n = (&a * &qr).ceil();
        let cand = n / qr;
        if cand <= b {
            return cand;
        }
        q *= p;
    }
}

fn resolve(
    cache: &mut TauCache<'_>,
    l: &ExactRational,
    r: &ExactRational,
    tl: &Ideal,
    tr: &Ideal,
    bound: u64,
) -> Result<JumpEntry> {
    let candidate = if r.denom() <= &BigInt::from(bound) {
        Some(r.clone())
    } else {
        simplest_rational_in(l, r, bound)?
    };
    let uncertified = || JumpEntry {
        t: r.clone(),
        tau_before: tl.clone(),
        tau_at: tr.clone(),
        certified: false,
        bracket: (l.clone(), r.clone()),
    };
    let Some(t0) = candidate else {
        return Ok(uncertified());
    };
    let width = r - l;
    let before_point = if t0 > width {
        &t0 - &width
    } else {
        ExactRational::zero()
    };
    let at = cache.get(&t0)?;
    let before = cache.get(&before_point)?;
    let certified = at.equals(tr)?
        && before.equals(tl)?
        && at.is_subset_of(&before)?
        && !before.is_subset_of(&at)?;
    if !certified {
        return Ok(uncertified());
    }
    Ok(JumpEntry {
        t: t0,
        tau_before: before,
        tau_at: at,
        certified: true,
        bracket: (l.clone(), r.clone()),
    })
}

/// The F-pure threshold: the first jump, found on `[0, n]` for growing `n`.
pub fn fpt(pair: &ParametricPair, denominator_bound: u64, cfg: &ChainConfig) -> Result<ExactRational> {
    if pair.moving().is_unit() {
        return Err(Error::InvalidArgument(
            "the moving ideal is the unit ideal, so no threshold exists".into(),
        ));
    }
    let mut cache = TauCache::new(pair, cfg);
    let zero = ExactRational::zero();
    let mut n = ExactRational::one();
    for _ in 0..24 {
        let report = enumerate_with(&mut cache, &zero, &n, denominator_bound, Some(1))?;
        if let Some(first) = report.jumps.first() {
            if !first.certified {
                return Err(Error::Uncertified(format!(
                    "{}, {}",
                    format_rational(&first.bracket.0),
                    format_rational(&first.bracket.1)
                )));
            }
            return Ok(first.t.clone());
        }
        n = &n * ExactRational::from_integer(BigInt::from(2));
    }
    Err(Error::Internal("no jump found below 2^24".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingRow {
    pub t0: ExactRational,
    pub scaled: ExactRational,
    pub is_jump: bool,
}

/// For each certified `t₀` with `p^e·t₀` inside the report's interval,
/// whether `p^e·t₀` is again a jump. The left offset is half the gap from
/// `p^e·t₀` to the previous certified jump (or the interval start).
pub fn scaling_counterexample_check(
    pair: &ParametricPair,
    e: u32,
    report: &JumpReport,
    cfg: &ChainConfig,
) -> Result<Vec<ScalingRow>> {
    if e == 0 {
        return Err(Error::InvalidArgument("scaling level must be at least 1".into()));
    }
    if !report.all_certified() {
        return Err(Error::InvalidArgument(
            "scaling check needs a fully certified report".into(),
        ));
    }
    let q = ExactRational::from_integer(BigInt::from(pair.ring().p()).pow(e));
    let (lo, hi) = &report.interval;
    let jumps = report.certified_values();
    let mut rows = Vec::new();
    for t0 in &jumps {
        let scaled = t0 * &q;
        if &scaled > hi {
            continue;
        }
        let previous = jumps
            .iter()
            .filter(|j| *j < &scaled)
            .max()
            .unwrap_or(lo);
        let delta = (&scaled - previous) / ExactRational::from_integer(BigInt::from(2));
        let is_jump = is_jump_at(pair, &scaled, &delta, cfg)?;
        rows.push(ScalingRow {
            t0: t0.clone(),
            scaled,
            is_jump,
        });
    }
    Ok(rows)
}
