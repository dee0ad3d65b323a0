//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{FpScalar, PrimeChar};

const EXPONENT_LIMIT: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| {
                    // smaller exponent in the last differing variable wins
                    for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::InvalidArgument(format!("unknown monomial order {s:?}"))),
        }
    }
}

/// The ambient ring F_p[x₁..xₙ] with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    char: PrimeChar,
    variables: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<RingContext>;

impl RingContext {
    pub fn new<S: AsRef<str>>(
        char: PrimeChar,
        variables: &[S],
        order: MonomialOrder,
    ) -> Result<Ring> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        if variables.is_empty() {
            return Err(Error::InvalidArgument("at least one variable is required".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || v == "t" {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(RingContext {
            char,
            variables,
            order,
        }))
    }

    pub fn char(&self) -> PrimeChar {
        self.char
    }

    pub fn p(&self) -> u32 {
        self.char.get()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_ring(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u64; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u64]) -> Result<Self> {
        if exps.iter().any(|&e| e >= EXPONENT_LIMIT) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial(SmallVec::from_slice(exps)))
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a
                .checked_add(*b)
                .filter(|&s| s < EXPONENT_LIMIT)
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, n: u64) -> Result<Monomial> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            *a = a
                .checked_mul(n)
                .filter(|&s| s < EXPONENT_LIMIT)
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub(crate) fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Splits `x^m` as `x^(m mod q) · (x^(m div q))^q`.
    pub fn split_residue(&self, q: u64) -> (Monomial, Monomial) {
        let rem = self.0.iter().map(|e| e % q).collect();
        let quo = self.0.iter().map(|e| e / q).collect();
        (Monomial(rem), Monomial(quo))
    }
}

/// Sparse polynomial; terms are kept sorted by decreasing monomial order and
/// carry nonzero residues.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.char.reduce_i64(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Ring, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.nvars(), i), 1)],
        }
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: i64) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    /// Collects arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let ch = ring.char;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity mismatch");
            let e = acc.entry(m).or_insert(0);
            *e = ch.add(*e, ch.reduce_i64(c));
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The terms from index `k` on.
    pub(crate) fn tail(&self, k: usize) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms[k..].to_vec(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<FpScalar> {
        self.terms
            .first()
            .map(|t| FpScalar::new(t.1 as i64, self.ring.char))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Value of the polynomial at the origin.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|t| t.1)
            .unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let ch = self.ring.char;
        let c = c % ch.get();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), ch.mul(*a, c))).collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.char.inv(*c).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Self> {
        let ch = self.ring.char;
        if c.is_multiple_of(ch.get()) {
            return Ok(Self::zero(&self.ring));
        }
        // multiplying by a monomial preserves the order
        let terms = self
            .terms
            .iter()
            .map(|(n, a)| Ok((n.checked_mul(m)?, ch.mul(*a, c))))
            .collect::<Result<_>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self - c·m·g` in one merge pass.
    pub(crate) fn sub_scaled(&self, c: u32, m: &Monomial, g: &Polynomial) -> Self {
        let ch = self.ring.char;
        let order = self.ring.order;
        let neg = ch.neg(c);
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |j: usize| (g.terms[j].0.mul(m), ch.mul(g.terms[j].1, neg));
        let mut next_g = (j < g.terms.len()).then(|| shifted(j));
        while i < self.terms.len() || next_g.is_some() {
            match (&self.terms.get(i), &next_g) {
                (Some(a), Some(b)) => match order.compare(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(next_g.take().unwrap());
                        j += 1;
                        next_g = (j < g.terms.len()).then(|| shifted(j));
                    }
                    Ordering::Equal => {
                        let s = ch.add(a.1, b.1);
                        if s != 0 {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        next_g = (j < g.terms.len()).then(|| shifted(j));
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(next_g.take().unwrap());
                    j += 1;
                    next_g = (j < g.terms.len()).then(|| shifted(j));
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.sub_scaled(self.ring.char.neg(1), &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.sub_scaled(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.is_monomial() {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.is_monomial() {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let ch = self.ring.char;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let e = acc.entry(m.checked_mul(n)?).or_insert(0);
                *e = ch.add(*e, ch.mul(*a, *b));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Binary exponentiation; `f^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the e-th Frobenius: every exponent times `p^e`.
    pub fn frobenius(&self, e: u32) -> Result<Self> {
        let q = (self.ring.p() as u64)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_pow(q)?, *c)))
            .collect::<Result<_>>()?;
        // scaling every exponent by q is order preserving
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// The decomposition `f = Σ_a (f_a)^q · x^a` over residues `a ∈ [0, q)ⁿ`,
    /// `q = p^e`. Coefficient q-th roots are trivial over a prime field.
    pub fn qth_power_decompose(&self, e: u32) -> Result<BTreeMap<Monomial, Polynomial>> {
        if e == 0 {
            return Err(Error::InvalidArgument("decomposition level must be at least 1".into()));
        }
        let q = (self.ring.p() as u64)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        Ok(self.decompose_by(q))
    }

    pub(crate) fn decompose_by(&self, q: u64) -> BTreeMap<Monomial, Polynomial> {
        let mut parts: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rem, quo) = m.split_residue(q);
            parts.entry(rem).or_default().push((quo, *c));
        }
        let order = self.ring.order;
        parts
            .into_iter()
            .map(|(rem, mut terms)| {
                // distinct monomials sharing a residue have distinct quotients
                terms.sort_by(|a, b| order.compare(&b.0, &a.0));
                (
                    rem,
                    Polynomial {
                        ring: self.ring.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Evaluates the canonical rendering used by the CLI and golden tests:
    /// terms in decreasing order, coefficients in `[1, p)`, `*` between
    /// factors and `^` for powers.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in self.ring.variables.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring context mismatch")
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring context mismatch")
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring context mismatch or exponent overflow")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.char.neg(1))
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.checked_add(g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.checked_mul(g)
}

pub fn poly_pow(f: &Polynomial, n: u64) -> Polynomial {
    f.pow(n)
}

pub fn qth_power_decompose(f: &Polynomial, e: u32) -> Result<BTreeMap<Monomial, Polynomial>> {
    f.qth_power_decompose(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        RingContext::new(PrimeChar::new(p).unwrap(), vars, MonomialOrder::GrevLex).unwrap()
    }

    fn mono(r: &Ring, exps: &[u64], c: i64) -> Polynomial {
        Polynomial::monomial(r, Monomial::from_exponents(exps).unwrap(), c)
    }

    #[test]
    fn add_and_cancel() {
        let r = ring(2, &["x", "y"]);
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        assert_eq!(&(&x + &y) + &x, y);
    }

    #[test]
    fn product_char3() {
        let r = ring(3, &["x"]);
        let x = Polynomial::variable(&r, 0);
        let a = &x + &Polynomial::one(&r);
        let b = &x + &Polynomial::constant(&r, 2);
        let expected = &mono(&r, &[2], 1) + &Polynomial::constant(&r, 2);
        assert_eq!(&a * &b, expected);
        assert_eq!(expected.to_string(), "x^2+2");
    }

    #[test]
    fn zero_absorbs() {
        let r = ring(5, &["x"]);
        let x = Polynomial::variable(&r, 0);
        assert!((&x * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn freshman_dream() {
        let r = ring(2, &["x", "y"]);
        let s = &Polynomial::variable(&r, 0) + &Polynomial::variable(&r, 1);
        assert_eq!(s.pow(2), &mono(&r, &[2, 0], 1) + &mono(&r, &[0, 2], 1));
        let r3 = ring(3, &["x", "y"]);
        let s3 = &Polynomial::variable(&r3, 0) + &Polynomial::variable(&r3, 1);
        assert_eq!(s3.pow(3), &mono(&r3, &[3, 0], 1) + &mono(&r3, &[0, 3], 1));
        assert!(s3.pow(0).is_one());
    }

    #[test]
    fn context_mismatch() {
        let a = ring(5, &["x"]);
        let b = ring(7, &["x"]);
        let fa = Polynomial::variable(&a, 0);
        let fb = Polynomial::variable(&b, 0);
        assert_eq!(poly_add(&fa, &fb), Err(Error::ContextMismatch));
        assert_eq!(poly_mul(&fa, &fb), Err(Error::ContextMismatch));
    }

    #[test]
    fn grevlex_and_lex() {
        let r = ring(5, &["x", "y", "z"]);
        let m = |e: &[u64]| Monomial::from_exponents(e).unwrap();
        let g = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 > xz
        assert_eq!(g.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(g.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(g.compare(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
        let l = MonomialOrder::Lex;
        assert_eq!(l.compare(&m(&[1, 0, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        let f = &mono(&r, &[1, 0, 1], 1) + &mono(&r, &[0, 2, 0], 3);
        assert_eq!(f.to_string(), "3*y^2+x*z");
    }

    #[test]
    fn decompose_examples() {
        let r = ring(2, &["x", "y"]);
        let f = mono(&r, &[3, 5], 1);
        let parts = f.qth_power_decompose(1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Monomial::from_exponents(&[1, 1]).unwrap()], mono(&r, &[1, 2], 1));

        let g = &mono(&r, &[2, 0], 1) + &mono(&r, &[0, 2], 1);
        let parts = g.qth_power_decompose(1).unwrap();
        assert_eq!(parts.len(), 1);
        let s = &Polynomial::variable(&r, 0) + &Polynomial::variable(&r, 1);
        assert_eq!(parts[&Monomial::one(2)], s);

        let r3 = ring(3, &["x"]);
        let h = &mono(&r3, &[4], 1) + &mono(&r3, &[1], 2);
        let parts = h.qth_power_decompose(1).unwrap();
        let key = Monomial::from_exponents(&[1]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&key], &mono(&r3, &[1], 1) + &Polynomial::constant(&r3, 2));
        // reconstruction Σ (f_a)^3 x^a = f
        let rebuilt = parts.iter().fold(Polynomial::zero(&r3), |acc, (a, fa)| {
            &acc + &fa.frobenius(1).unwrap().mul_term(a, 1).unwrap()
        });
        assert_eq!(rebuilt, h);
        assert!(h.qth_power_decompose(0).is_err());
    }

    #[test]
    fn overflow_is_rejected() {
        let r = ring(2, &["x"]);
        let big = Monomial::from_exponents(&[1 << 62]).unwrap();
        let f = Polynomial::monomial(&r, big.clone(), 1);
        assert_eq!(f.mul_term(&big, 1), Err(Error::ExponentOverflow));
        assert_eq!(f.frobenius(1), Err(Error::ExponentOverflow));
        assert!(Monomial::from_exponents(&[1 << 63]).is_err());
    }

    #[test]
    fn ring_validation() {
        let p = PrimeChar::new(3).unwrap();
        assert!(RingContext::new(p, &["x", "x"], MonomialOrder::Lex).is_err());
        assert!(RingContext::new::<&str>(p, &[], MonomialOrder::Lex).is_err());
        assert!(RingContext::new(p, &["t"], MonomialOrder::Lex).is_err());
        assert!(RingContext::new(p, &["x1", "y_2"], MonomialOrder::Lex).is_ok());
    }
}
