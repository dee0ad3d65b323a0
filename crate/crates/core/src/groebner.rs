//! Ideals, reduced Gröbner bases and the ideal arithmetic built on them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{check_ring, same_ring, Monomial, Polynomial, Ring};

/// A nonzero ideal given by generators; its reduced Gröbner basis is
/// computed once and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    /// Zero generators are discarded; an ideal with nothing left is rejected.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_ring(ring, g.ring())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Self::from_nonzero(ring, gens))
    }

    fn from_nonzero(ring: &Ring, generators: Vec<Polynomial>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators,
            basis: OnceLock::new(),
        }
    }

    /// The ideal of `gens`, replaced by its reduced basis (which is cached).
    pub(crate) fn from_generators_reduced(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().all(Polynomial::is_zero) {
            return Err(Error::ZeroIdeal);
        }
        let basis = reduced_basis(ring, &gens);
        let ideal = Self::from_nonzero(ring, basis.clone());
        let _ = ideal.basis.set(basis);
        Ok(ideal)
    }

    pub fn principal(f: Polynomial) -> Result<Self> {
        let ring = f.ring().clone();
        Self::new(&ring, vec![f])
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::from_nonzero(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the variables.
    pub fn maximal(ring: &Ring) -> Self {
        Self::from_nonzero(
            ring,
            (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect(),
        )
    }

    pub fn from_monomials(ring: &Ring, exps: &[Vec<u64>]) -> Result<Self> {
        let gens = exps
            .iter()
            .map(|e| Ok(Polynomial::monomial(ring, Monomial::from_exponents(e)?, 1)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    pub fn as_principal(&self) -> Option<&Polynomial> {
        match self.generators.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis()[0].is_constant()
    }

    /// Reduced Gröbner basis, sorted by decreasing leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| reduced_basis(&self.ring, &self.generators))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, f.ring())?;
        Ok(reduce(f, self.groebner_basis()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        check_ring(&self.ring, &other.ring)?;
        if other.is_unit() {
            return Ok(true);
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Self::from_nonzero(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f.checked_mul(g)?);
            }
        }
        Ok(Self::from_nonzero(&self.ring, interreduce_generators(&self.ring, gens)))
    }

    /// `I^n` by repeated squaring; `I^0 = (1)`.
    pub fn power(&self, n: u64) -> Result<Ideal> {
        if n == 0 {
            return Ok(Self::unit(&self.ring));
        }
        if let Some(f) = self.as_principal() {
            return Ideal::principal(f.pow(n));
        }
        let mut acc: Option<Ideal> = None;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.product(&base)?,
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(acc.expect("n > 0"))
    }

    /// `I^{[p^e]}`, generated by the `p^e`-th powers of the generators.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Err(Error::InvalidArgument("bracket power level must be at least 1".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.frobenius(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_nonzero(&self.ring, gens))
    }

    /// Canonical generator strings: the reduced basis in decreasing order.
    pub fn canonical_generators(&self) -> Vec<String> {
        self.groebner_basis().iter().map(Polynomial::to_string).collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner_basis() == other.groebner_basis()
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.canonical_generators().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Polynomial::to_string).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

pub fn groebner_basis(i: &Ideal) -> &[Polynomial] {
    i.groebner_basis()
}

pub fn normal_form(f: &Polynomial, i: &Ideal) -> Result<Polynomial> {
    i.normal_form(f)
}

pub fn ideal_contains(i: &Ideal, f: &Polynomial) -> Result<bool> {
    i.contains(f)
}

pub fn ideal_equals(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.sum(j)
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.product(j)
}

pub fn ideal_power(i: &Ideal, n: u64) -> Result<Ideal> {
    i.power(n)
}

pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal> {
    i.bracket_power(e)
}

/// Drops generators that are redundant. Monomial lists are minimized
/// exactly; otherwise each generator lying in the ideal of the others is
/// removed, or the reduced basis is used when that is shorter.
pub(crate) fn interreduce_generators(ring: &Ring, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    sort_deterministic(&mut gens);
    gens.dedup();
    if gens.iter().all(Polynomial::is_monomial) {
        return minimal_monomials(gens);
    }
    if gens.iter().any(Polynomial::is_constant) {
        return vec![Polynomial::one(ring)];
    }
    if gens.len() > 12 {
        let basis = reduced_basis(ring, &gens);
        if basis.len() < gens.len() {
            return basis;
        }
        return gens;
    }
    let mut keep = gens;
    let mut i = 0;
    while i < keep.len() && keep.len() > 1 {
        let rest: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let basis = reduced_basis(ring, &rest);
        if reduce(&keep[i], &basis).is_zero() {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}

fn sort_deterministic(gens: &mut [Polynomial]) {
    gens.sort_by(|a, b| compare_polys(b, a));
}

/// Compares term lists lexicographically under the ring's monomial order.
fn compare_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = a.ring().order();
    for (s, t) in a.terms().iter().zip(b.terms().iter()) {
        let c = order.compare(&s.0, &t.0).then(s.1.cmp(&t.1));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Minimal generators of a monomial ideal, monic, in decreasing order.
fn minimal_monomials(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let ring = gens[0].ring().clone();
    let mut monos: Vec<Monomial> = gens.iter().map(|g| g.terms()[0].0.clone()).collect();
    monos.sort_unstable();
    monos.dedup();
    monos.sort_by_key(Monomial::total_degree);
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in monos {
        if !minimal.iter().any(|n| n.divides(&m)) {
            minimal.push(m);
        }
    }
    let order = ring.order();
    minimal.sort_by(|a, b| order.compare(b, a));
    minimal
        .into_iter()
        .map(|m| Polynomial::monomial(&ring, m, 1))
        .collect()
}

/// Full reduction of `f` modulo `basis` (any generating set; the
/// remainder is canonical when `basis` is a Gröbner basis).
pub(crate) fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let ch = ring.char();
    let leads: Vec<(&Monomial, u32)> = basis
        .iter()
        .map(|g| {
            let (m, c) = &g.terms()[0];
            (m, ch.inv(*c).expect("nonzero leading coefficient"))
        })
        .collect();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut cur = f.clone();
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur.terms()[start];
        match leads.iter().position(|(lm, _)| lm.divides(m)) {
            Some(k) => {
                let q = leads[k].0.quotient_of(m);
                let coef = ch.mul(*c, leads[k].1);
                cur = cur.tail(start).sub_scaled(coef, &q, &basis[k]);
                start = 0;
            }
            None => {
                rem.push((m.clone(), *c));
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(ring, rem)
}

/// Reduced Gröbner basis by Buchberger's algorithm with normal selection
/// strategy and both elimination criteria.
fn reduced_basis(ring: &Ring, generators: &[Polynomial]) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    sort_deterministic(&mut gens);
    gens.dedup();
    if gens.iter().any(Polynomial::is_constant) {
        return vec![Polynomial::one(ring)];
    }
    if gens.iter().all(Polynomial::is_monomial) {
        return minimal_monomials(gens);
    }
    gens.reverse();

    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let add = |basis: &mut Vec<Polynomial>, pending: &mut Vec<(usize, usize)>, g: Polynomial| {
        let j = basis.len();
        basis.push(g);
        for i in 0..j {
            pending.push((i, j));
        }
    };
    for g in gens {
        let r = reduce(&g, &basis);
        if !r.is_zero() {
            if r.is_constant() {
                return vec![Polynomial::one(ring)];
            }
            add(&mut basis, &mut pending, r.monic());
        }
    }

    let lm = |b: &Vec<Polynomial>, i: usize| b[i].terms()[0].0.clone();
    while !pending.is_empty() {
        let mut best = 0;
        let mut best_lcm = lm(&basis, pending[0].0).lcm(&lm(&basis, pending[0].1));
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let l = lm(&basis, i).lcm(&lm(&basis, j));
            if order.compare(&l, &best_lcm) == Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        let (i, j) = pending.swap_remove(best);
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let has_pair = |pending: &[(usize, usize)], a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            pending.contains(&key)
        };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].terms()[0].0.divides(&best_lcm)
                && !has_pair(&pending, i, k)
                && !has_pair(&pending, j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &best_lcm);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            if r.is_constant() {
                return vec![Polynomial::one(ring)];
            }
            add(&mut basis, &mut pending, r.monic());
        }
    }

    // minimize, then interreduce
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let m = &g.terms()[0].0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let n = &h.terms()[0].0;
            l != k && n.divides(m) && (n != m || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, h)| h.clone())
                .collect();
            let head = &minimal[k].terms()[0];
            let tail = minimal[k].tail(1);
            let r = reduce(&tail, &others);
            Polynomial::monomial(ring, head.0.clone(), head.1 as i64)
                .checked_add(&r)
                .expect("same ring")
                .monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.compare(&b.terms()[0].0, &a.terms()[0].0));
    reduced
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let qf = f.terms()[0].0.quotient_of(lcm);
    let qg = g.terms()[0].0.quotient_of(lcm);
    // both are monic
    f.mul_term(&qf, 1)
        .expect("lcm bounded by existing exponents")
        .sub_scaled(1, &qg, g)
}
