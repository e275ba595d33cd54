//! Real-root isolation on an interval: square-free decomposition, Sturm
//! sequences, and bisection refinement, all in exact rational arithmetic.
//!
//! Polynomials whose coefficients are balls are isolated through their
//! rational midpoint polynomial; the total coefficient uncertainty is reported
//! in [`RootList::coefficient_radius`] so callers can account for it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{NumericError, Polynomial, Scalar};

/// Highest degree accepted by [`isolate_roots`].
pub const MAX_ISOLATION_DEGREE: usize = 16;

/// A real root enclosed in `[lo, hi]`; `lo == hi` for exactly known roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl Root {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The point used to split an interval at this root.
    pub fn split_point(&self) -> BigRational {
        if self.is_exact() {
            self.lo.clone()
        } else {
            (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
        }
    }

    pub fn location(&self) -> Scalar {
        if self.is_exact() {
            Scalar::Rational(self.lo.clone())
        } else {
            let half = self.width() / BigRational::from_integer(BigInt::from(2));
            Scalar::ball(&self.split_point(), &half)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootList {
    /// Strictly increasing, pairwise disjoint enclosures.
    pub roots: Vec<Root>,
    /// Upper bound on `Σ |p_i - mid(p_i)|` over the coefficients; zero for
    /// rational input.
    pub coefficient_radius: BigRational,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &RatPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn eval(p: &RatPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn deriv(p: &RatPoly) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn div_rem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut rem = a.clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn monic(p: RatPoly) -> RatPoly {
    match p.last() {
        Some(lead) if !lead.is_one() => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / &lead).collect()
        }
        _ => p,
    }
}

fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Yun's algorithm: `p = c * Π f_i^i` with coprime square-free `f_i`.
fn square_free_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let dp = deriv(p);
    let a0 = gcd(p, &dp);
    let mut b = div_rem(p, &a0).0;
    let c = div_rem(&dp, &a0).0;
    let mut d = sub(&c, &deriv(&b));
    let mut i = 1;
    while degree(&b).is_some_and(|k| k > 0) {
        let a = gcd(&b, &d);
        let next_b = div_rem(&b, &a).0;
        let next_c = div_rem(&d, &a).0;
        if degree(&a).is_some_and(|k| k > 0) {
            out.push((a, i));
        }
        d = sub(&next_c, &deriv(&next_b));
        b = next_b;
        i += 1;
    }
    out
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), deriv(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = eval(p, x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                changes += 1;
            }
        }
        last = Some(pos);
    }
    changes
}

struct Factor {
    poly: RatPoly,
    chain: Vec<RatPoly>,
    multiplicity: usize,
}

impl Factor {
    /// Roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        sign_changes(&self.chain, a).saturating_sub(sign_changes(&self.chain, b))
    }

    fn isolate(&self, a: BigRational, b: BigRational, out: &mut Vec<(BigRational, BigRational)>) {
        match self.count(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                self.isolate(a, m.clone(), out);
                self.isolate(m, b, out);
            }
        }
    }

    /// Shrinks `(a, b]`, known to hold exactly one simple root of `poly`,
    /// until its width is at most `tol`.
    fn refine(&self, mut a: BigRational, mut b: BigRational, tol: &BigRational) -> Root {
        let two = BigRational::from_integer(BigInt::from(2));
        let exact = |x: BigRational| Root { lo: x.clone(), hi: x, multiplicity: self.multiplicity };
        let vb = eval(&self.poly, &b);
        if vb.is_zero() {
            return exact(b);
        }
        let pos_b = vb.is_positive();
        while &b - &a > *tol {
            let m = (&a + &b) / &two;
            let vm = eval(&self.poly, &m);
            if vm.is_zero() {
                return exact(m);
            }
            if vm.is_positive() == pos_b {
                b = m;
            } else {
                a = m;
            }
        }
        // Rational root screening: a rational root with a small denominator
        // is the simplest rational in its (tiny) enclosure.
        let candidate = simplest_rational_between(&a, &b);
        if eval(&self.poly, &candidate).is_zero() {
            return exact(candidate);
        }
        Root { lo: a, hi: b, multiplicity: self.multiplicity }
    }
}

/// The rational with the smallest denominator in the closed interval `[a, b]`.
pub fn simplest_rational_between(a: &BigRational, b: &BigRational) -> BigRational {
    let (a, b) = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    simplest_ordered(a, b)
}

fn simplest_ordered(a: BigRational, b: BigRational) -> BigRational {
    if !a.is_positive() && !b.is_negative() {
        return BigRational::zero();
    }
    if b.is_negative() {
        return -simplest_ordered(-b, -a);
    }
    let fl = a.floor();
    if fl == a {
        return a;
    }
    let next = &fl + BigRational::one();
    if next <= b {
        return next;
    }
    let inner = simplest_ordered((&b - &fl).recip(), (&a - &fl).recip());
    fl + inner.recip()
}

/// Rational midpoint polynomial and the summed coefficient uncertainty.
/// Coefficients whose enclosure contains zero are replaced by zero.
fn midpoint_polynomial(p: &Polynomial) -> (RatPoly, BigRational) {
    let mut delta = BigRational::zero();
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        match c {
            Scalar::Rational(q) => out.push(q.clone()),
            Scalar::Real(_) => {
                if c.contains_zero() {
                    delta += c.abs_upper();
                    out.push(BigRational::zero());
                } else {
                    delta += c.radius();
                    out.push(c.midpoint());
                }
            }
        }
    }
    (trim(out), delta)
}

/// Every real root of `p` in the open interval `(lo, hi)`, refined to width at
/// most `tol`. Ball endpoints are replaced by their midpoints. The zero
/// polynomial yields an empty list.
pub fn isolate_roots(
    p: &Polynomial,
    lo: &Scalar,
    hi: &Scalar,
    tol: &Scalar,
) -> Result<RootList, NumericError> {
    if let Some(d) = p.degree() {
        if d > MAX_ISOLATION_DEGREE {
            return Err(NumericError::DegreeTooHigh(d));
        }
    }
    let tol = tol.lower();
    if !tol.is_positive() {
        return Err(NumericError::BadTolerance);
    }
    let (lo, hi) = (lo.midpoint(), hi.midpoint());
    if lo >= hi {
        return Err(NumericError::EmptyInterval);
    }
    let (rp, coefficient_radius) = midpoint_polynomial(p);
    let mut list = RootList { roots: Vec::new(), coefficient_radius };
    if degree(&rp).is_none_or(|d| d == 0) {
        return Ok(list);
    }

    let factors: Vec<Factor> = square_free_decomposition(&rp)
        .into_iter()
        .map(|(poly, multiplicity)| Factor { chain: sturm_chain(&poly), poly, multiplicity })
        .collect();

    let mut found: Vec<(usize, Root)> = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        let mut brackets = Vec::new();
        f.isolate(lo.clone(), hi.clone(), &mut brackets);
        for (a, b) in brackets {
            let root = f.refine(a, b, &tol);
            if root.is_exact() && root.lo == hi {
                continue;
            }
            found.push((fi, root));
        }
    }
    found.sort_by(|x, y| x.1.lo.cmp(&y.1.lo).then(x.1.hi.cmp(&y.1.hi)));

    // Roots of different factors are distinct; shrink overlapping enclosures.
    loop {
        let overlap = found.windows(2).position(|w| w[0].1.hi >= w[1].1.lo);
        let Some(i) = overlap else { break };
        for j in [i, i + 1] {
            let (fi, r) = &found[j];
            if !r.is_exact() {
                let half = r.width() / BigRational::from_integer(BigInt::from(4));
                let refined = factors[*fi].refine(r.lo.clone(), r.hi.clone(), &half);
                found[j].1 = refined;
            }
        }
        found.sort_by(|x, y| x.1.lo.cmp(&y.1.lo));
        if found.windows(2).any(|w| w[0].1.is_exact() && w[1].1.is_exact() && w[0].1.lo == w[1].1.lo) {
            // cannot happen for coprime factors
            break;
        }
    }
    list.roots = found.into_iter().map(|(_, r)| r).collect();
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tol() -> Scalar {
        crate::numeric::default_root_tolerance()
    }

    #[test]
    fn linear_roots_are_exact() {
        let r = isolate_roots(&Polynomial::from_ints(&[0, 1]), &Scalar::from_int(-1), &Scalar::from_int(1), &tol())
            .unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0].is_exact());
        assert_eq!(r.roots[0].lo, q(0, 1));

        let r = isolate_roots(&Polynomial::from_ints(&[-1, 3]), &Scalar::from_int(-1), &Scalar::from_int(1), &tol())
            .unwrap();
        assert_eq!(r.roots[0].location(), Scalar::ratio(1, 3));
    }

    #[test]
    fn irrational_roots_are_enclosed() {
        // t^2 - 2 on (-2, 2)
        let r = isolate_roots(&Polynomial::from_ints(&[-2, 0, 1]), &Scalar::from_int(-2), &Scalar::from_int(2), &tol())
            .unwrap();
        assert_eq!(r.roots.len(), 2);
        for root in &r.roots {
            assert!(!root.is_exact());
            assert!(root.width() <= tol().lower());
            let f = |x: &BigRational| x * x - q(2, 1);
            assert!((f(&root.lo) * f(&root.hi)).is_negative());
        }
        assert!(r.roots[0].hi < r.roots[1].lo);
    }

    #[test]
    fn endpoints_are_excluded() {
        // (t-1)(t+1) on (-1, 1): no interior roots
        let r = isolate_roots(&Polynomial::from_ints(&[-1, 0, 1]), &Scalar::from_int(-1), &Scalar::from_int(1), &tol())
            .unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn multiplicities_from_square_free_split() {
        // (t - 1/2)^2 (t + 1/3)
        let a = Polynomial::linear(Scalar::ratio(-1, 2), Scalar::one());
        let b = Polynomial::linear(Scalar::ratio(1, 3), Scalar::one());
        let p = &(&a * &a) * &b;
        let r = isolate_roots(&p, &Scalar::from_int(-1), &Scalar::from_int(1), &tol()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].location(), Scalar::ratio(-1, 3));
        assert_eq!(r.roots[0].multiplicity, 1);
        assert_eq!(r.roots[1].location(), Scalar::ratio(1, 2));
        assert_eq!(r.roots[1].multiplicity, 2);
    }

    #[test]
    fn degree_guard() {
        let p = Polynomial::monomial(17);
        assert_eq!(
            isolate_roots(&p, &Scalar::from_int(-1), &Scalar::from_int(1), &tol()),
            Err(NumericError::DegreeTooHigh(17))
        );
    }

    #[test]
    fn bad_arguments() {
        let p = Polynomial::from_ints(&[0, 1]);
        assert_eq!(
            isolate_roots(&p, &Scalar::from_int(1), &Scalar::from_int(1), &tol()),
            Err(NumericError::EmptyInterval)
        );
        assert_eq!(
            isolate_roots(&p, &Scalar::from_int(-1), &Scalar::from_int(1), &Scalar::zero()),
            Err(NumericError::BadTolerance)
        );
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_rational_between(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_rational_between(&q(-1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(simplest_rational_between(&q(-4, 10), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_rational_between(&q(7, 2), &q(7, 2)), q(7, 2));
    }
}
