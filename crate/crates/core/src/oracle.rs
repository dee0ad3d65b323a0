//! Independent ground truth: Howald's formula for monomial ideals and the
//! ν-function bounds on F-pure thresholds.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial, Ring};
use crate::ring::{format_rational, ExactRational};

/// Convex hull of the exponent vectors of a monomial ideal plus the
/// nonnegative orthant, with its facets `⟨α, w⟩ ≥ 1` (`α ≥ 0`).
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    points: Vec<Vec<u64>>,
    facets: Vec<Vec<ExactRational>>,
}

impl NewtonPolyhedron {
    pub fn new(points: Vec<Vec<u64>>) -> Result<Self> {
        let n = match points.first() {
            Some(v) => v.len(),
            None => return Err(Error::ZeroIdeal),
        };
        if points.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument("exponent vectors differ in length".into()));
        }
        let facets = if points.iter().any(|v| v.iter().all(|&e| e == 0)) {
            Vec::new()
        } else {
            facets_of(&points, n)
        };
        Ok(NewtonPolyhedron { points, facets })
    }

    pub fn of_ideal(a: &Ideal) -> Result<Self> {
        Self::new(monomial_exponents(a)?)
    }

    pub fn facets(&self) -> &[Vec<ExactRational>] {
        &self.facets
    }

    /// Whether the polyhedron is the whole orthant, i.e. the ideal is `(1)`.
    pub fn is_orthant(&self) -> bool {
        self.facets.is_empty()
    }

    /// `min_α ⟨α, w⟩`; `None` for the orthant.
    pub fn gauge(&self, w: &[u64]) -> Option<ExactRational> {
        self.facets
            .iter()
            .map(|alpha| {
                alpha
                    .iter()
                    .zip(w)
                    .fold(ExactRational::zero(), |acc, (a, &x)| acc + a * ExactRational::from_integer(BigInt::from(x)))
            })
            .min()
    }

    /// Per-coordinate scan bound for parameter `t`: large enough that every
    /// minimal generator and every jump value up to `t` is seen.
    fn box_bound(&self, t: &ExactRational) -> Vec<u64> {
        let n = self.points[0].len();
        let ceil_t = t.ceil().to_integer().to_u64().unwrap_or(u64::MAX);
        (0..n)
            .map(|i| {
                let g = self.points.iter().map(|v| v[i]).max().unwrap_or(0);
                let base = g.saturating_mul(ceil_t).saturating_add(1);
                let proved = self
                    .facets
                    .iter()
                    .filter(|alpha| alpha[i].is_positive())
                    .map(|alpha| (t / &alpha[i]).floor().to_integer().to_u64().unwrap_or(u64::MAX))
                    .max()
                    .unwrap_or(0);
                base.max(proved)
            })
            .collect()
    }
}

fn monomial_exponents(a: &Ideal) -> Result<Vec<Vec<u64>>> {
    a.generators()
        .iter()
        .map(|g| {
            if !g.is_monomial() {
                return Err(Error::NonMonomial(g.to_string()));
            }
            Ok(g.terms()[0].0.exponents().to_vec())
        })
        .collect()
}

/// Facets from every choice of `n` tight constraints among the points and
/// the coordinate rays, solved exactly.
fn facets_of(points: &[Vec<u64>], n: usize) -> Vec<Vec<ExactRational>> {
    let m = points.len();
    let total = m + n;
    let mut found: Vec<Vec<ExactRational>> = Vec::new();
    let mut choice: Vec<usize> = (0..n).collect();
    loop {
        if choice[0] < m {
            if let Some(alpha) = hyperplane(points, n, &choice, m) {
                let valid = alpha.iter().all(|a| !a.is_negative())
                    && points.iter().all(|v| dot(&alpha, v) >= ExactRational::from_integer(1.into()));
                if valid && !found.contains(&alpha) {
                    found.push(alpha);
                }
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if choice[i] < total - n + i {
                choice[i] += 1;
                for j in i + 1..n {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn dot(alpha: &[ExactRational], v: &[u64]) -> ExactRational {
    alpha
        .iter()
        .zip(v)
        .fold(ExactRational::zero(), |acc, (a, &x)| acc + a * ExactRational::from_integer(x.into()))
}

/// The normal `α` (scaled to `β = 1`) of the hyperplane `⟨α, w⟩ = β` through
/// the chosen points and parallel to the chosen rays, if it is unique and
/// `β > 0`.
fn hyperplane(points: &[Vec<u64>], n: usize, choice: &[usize], m: usize) -> Option<Vec<ExactRational>> {
    let zero = ExactRational::zero();
    let one = ExactRational::from_integer(1.into());
    // unknowns α_1..α_n, β
    let mut rows: Vec<Vec<ExactRational>> = choice
        .iter()
        .map(|&c| {
            let mut row = vec![zero.clone(); n + 1];
            if c < m {
                for (j, &e) in points[c].iter().enumerate() {
                    row[j] = ExactRational::from_integer(e.into());
                }
                row[n] = -one.clone();
            } else {
                row[c - m] = one.clone();
            }
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..=n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, v) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if pivots.len() != n {
        return None;
    }
    let free = (0..=n).find(|c| !pivots.contains(c))?;
    let mut sol = vec![zero.clone(); n + 1];
    sol[free] = one.clone();
    for (i, &pc) in pivots.iter().enumerate() {
        sol[pc] = -rows[i][free].clone();
    }
    let beta = sol[n].clone();
    if beta.is_zero() {
        return None;
    }
    Some(sol[..n].iter().map(|a| a / &beta).collect())
}

/// The multiplier ideal `J(𝔞^t)` of a monomial ideal: spanned by the `x^v`
/// with `v + 1` in the interior of `t·Newt(𝔞)`.
pub fn howald_multiplier(a: &Ideal, t: &ExactRational) -> Result<Ideal> {
    if t.is_negative() {
        return Err(Error::NegativeExponent(format_rational(t)));
    }
    let newt = NewtonPolyhedron::of_ideal(a)?;
    let ring = a.ring();
    if t.is_zero() || newt.is_orthant() {
        return Ok(Ideal::unit(ring));
    }
    let bound = newt.box_bound(t);
    let mut gens = Vec::new();
    for v in lattice_box(&bound) {
        let shifted: Vec<u64> = v.iter().map(|x| x + 1).collect();
        if newt.gauge(&shifted).is_some_and(|g| &g > t) {
            gens.push(Polynomial::monomial(ring, Monomial::from_exponents(&v)?, 1));
        }
    }
    Ideal::from_generators_reduced(ring, gens)
}

/// Jumping numbers of `J(𝔞^t)` in `(lo, hi]`: the values `λ(v + 1)`.
pub fn howald_jumps(a: &Ideal, lo: &ExactRational, hi: &ExactRational) -> Result<Vec<ExactRational>> {
    let newt = NewtonPolyhedron::of_ideal(a)?;
    if newt.is_orthant() {
        return Ok(Vec::new());
    }
    let mut values: Vec<ExactRational> = lattice_box(&newt.box_bound(hi))
        .filter_map(|v| {
            let shifted: Vec<u64> = v.iter().map(|x| x + 1).collect();
            newt.gauge(&shifted)
        })
        .filter(|g| g > lo && g <= hi)
        .collect();
    values.sort();
    values.dedup();
    Ok(values)
}

fn lattice_box(bound: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let mut cur = Some(vec![0u64; bound.len()]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = 0;
        loop {
            if i == next.len() {
                cur = None;
                break;
            }
            if next[i] < bound[i] {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// Membership in a monomial ideal given by exponent vectors: every term
/// must be divisible by a generator.
fn in_monomial_ideal(f: &Polynomial, gens: &[Monomial]) -> bool {
    f.terms().iter().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
}

/// `ν_f(p^e)`: the largest `r` with `f^r ∉ 𝔪^{[p^e]}`.
pub fn nu_value(f: &Polynomial, e: u32, m: &Ideal) -> Result<u64> {
    if e == 0 {
        return Err(Error::InvalidArgument("ν level must be at least 1".into()));
    }
    let exps = monomial_exponents(m)?;
    let base: Vec<Monomial> = exps
        .iter()
        .map(|v| Monomial::from_exponents(v))
        .collect::<Result<_>>()?;
    if f.is_zero() || !in_monomial_ideal(f, &base) {
        return Err(Error::NotInMaximalIdeal(f.to_string()));
    }
    let q = (f.ring().p() as u64).checked_pow(e).ok_or(Error::ExponentOverflow)?;
    let bracket: Vec<Monomial> = base
        .iter()
        .map(|g| g.checked_pow(q))
        .collect::<Result<_>>()?;
    let mut power = Polynomial::one(f.ring());
    let mut r = 0u64;
    loop {
        let next = power.checked_mul(f)?;
        if in_monomial_ideal(&next, &bracket) {
            return Ok(r);
        }
        power = next;
        r += 1;
    }
}

/// `ν/p^e` and `(ν+1)/p^e`. The F-pure threshold lies in the closed
/// interval between them; the upper end is attained, e.g. by `x²+y³` at `p = 2`.
pub fn nu_sandwich(f: &Polynomial, e: u32, m: &Ideal) -> Result<(ExactRational, ExactRational)> {
    let nu = nu_value(f, e, m)?;
    let q = BigInt::from(f.ring().p()).pow(e);
    Ok((
        ExactRational::new(BigInt::from(nu), q.clone()),
        ExactRational::new(BigInt::from(nu + 1), q),
    ))
}

/// The maximal ideal of the origin.
pub fn origin(ring: &Ring) -> Ideal {
    Ideal::maximal(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, RingContext};
    use crate::ring::{integer, rational, PrimeChar};

    fn ring(p: u64) -> Ring {
        RingContext::new(PrimeChar::new(p).unwrap(), &["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn monomial_ideal(r: &Ring, exps: &[[u64; 2]]) -> Ideal {
        let v: Vec<Vec<u64>> = exps.iter().map(|e| e.to_vec()).collect();
        Ideal::from_monomials(r, &v).unwrap()
    }

    #[test]
    fn facets_of_simple_polyhedra() {
        let m = NewtonPolyhedron::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(m.facets(), &[vec![integer(1), integer(1)]]);
        let cusp = NewtonPolyhedron::new(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(cusp.facets(), &[vec![rational(1, 2), rational(1, 3)]]);
        let x = NewtonPolyhedron::new(vec![vec![1, 0]]).unwrap();
        assert_eq!(x.facets(), &[vec![integer(1), integer(0)]]);
        let mixed = NewtonPolyhedron::new(vec![vec![4, 0], vec![1, 1], vec![0, 4]]).unwrap();
        assert_eq!(mixed.facets().len(), 2);
        assert!(NewtonPolyhedron::new(vec![vec![0, 0]]).unwrap().is_orthant());
    }

    #[test]
    fn howald_examples() {
        let r = ring(2);
        let m = Ideal::maximal(&r);
        assert_eq!(howald_multiplier(&m, &integer(2)).unwrap(), m);
        let cusp = monomial_ideal(&r, &[[2, 0], [0, 3]]);
        assert_eq!(howald_multiplier(&cusp, &integer(1)).unwrap(), m);
        assert!(howald_multiplier(&cusp, &integer(0)).unwrap().is_unit());
        assert!(howald_multiplier(&cusp, &(rational(5, 6) - rational(1, 100))).unwrap().is_unit());
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let non = Ideal::principal(&x + &y).unwrap();
        assert!(matches!(howald_multiplier(&non, &integer(1)), Err(Error::NonMonomial(_))));
    }

    #[test]
    fn howald_jump_sets() {
        let r = ring(3);
        let m = Ideal::maximal(&r);
        assert_eq!(
            howald_jumps(&m, &integer(0), &integer(3)).unwrap(),
            vec![integer(2), integer(3)]
        );
        let cusp = monomial_ideal(&r, &[[2, 0], [0, 3]]);
        // λ(v+1) = (v₁+1)/2 + (v₂+1)/3
        let jumps = howald_jumps(&cusp, &integer(0), &rational(3, 2)).unwrap();
        assert_eq!(jumps, vec![rational(5, 6), rational(7, 6), rational(4, 3), rational(3, 2)]);
        let x = monomial_ideal(&r, &[[1, 0]]);
        assert_eq!(
            howald_jumps(&x, &integer(0), &integer(3)).unwrap(),
            vec![integer(1), integer(2), integer(3)]
        );
    }

    #[test]
    fn nu_examples() {
        let r = ring(2);
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let cusp = &x.pow(2) + &y.pow(3);
        let m = Ideal::maximal(&r);
        assert_eq!(nu_value(&cusp, 2, &m).unwrap(), 1);
        assert_eq!(nu_value(&cusp, 3, &m).unwrap(), 3);
        for p in [2, 3, 5, 7] {
            let rp = ring(p);
            let xp = Polynomial::variable(&rp, 0);
            assert_eq!(nu_value(&xp, 1, &Ideal::maximal(&rp)).unwrap(), p - 1);
        }
        let unit = &x + &Polynomial::one(&r);
        assert!(matches!(nu_value(&unit, 1, &m), Err(Error::NotInMaximalIdeal(_))));
        let (lo, hi) = nu_sandwich(&cusp, 3, &m).unwrap();
        assert_eq!((lo, hi), (rational(3, 8), rational(1, 2)));
    }
}
