use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{isolate_roots, Polynomial, RootList, Scalar};

/// Piecewise polynomial on `b_0 < b_1 < ... < b_m`; piece `i` is valid on the
/// left-open, right-closed interval `(b_i, b_{i+1}]`. At `b_0` the first piece
/// applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Scalar>,
    pieces: Vec<Polynomial>,
}

/// Result of integrating `|p|` piece by piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsIntegral {
    pub value: Scalar,
    /// Certified bound on `|value - true integral|`; zero on the exact path.
    pub radius: BigRational,
    /// Interior roots of each piece, in piece order.
    pub roots: Vec<RootList>,
}

/// Rational image of `p` with bounds over `|t| <= t_max`: coefficient
/// uncertainty, sup of the polynomial and sup of its derivative.
struct MidPoly {
    poly: Polynomial,
    delta: BigRational,
    sup: BigRational,
    lipschitz: BigRational,
}

fn mid_poly(p: &Polynomial, t_max: &BigRational) -> MidPoly {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    let mut delta = BigRational::zero();
    let mut sup = BigRational::zero();
    let mut lipschitz = BigRational::zero();
    let mut power = BigRational::one();
    let mut prev_power = BigRational::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        let (m, rad) = match c {
            Scalar::Rational(q) => (q.clone(), BigRational::zero()),
            Scalar::Real(_) if c.contains_zero() => (BigRational::zero(), c.abs_upper()),
            Scalar::Real(_) => (c.midpoint(), c.radius()),
        };
        delta += &rad * &power;
        sup += (m.abs() + &rad) * &power;
        lipschitz += m.abs() * BigRational::from_integer(i.into()) * &prev_power;
        coeffs.push(Scalar::Rational(m));
        prev_power = power.clone();
        power *= t_max;
    }
    MidPoly { poly: Polynomial::new(coeffs), delta, sup, lipschitz }
}

fn rat(s: &Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational")
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Scalar>, pieces: Vec<Polynomial>) -> Result<PiecewisePolynomial> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(Error::Format("need m+1 breakpoints for m pieces".into()));
        }
        if breakpoints.windows(2).any(|w| w[0].cmp_mid(&w[1]) != Ordering::Less) {
            return Err(Error::Format("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewisePolynomial { breakpoints, pieces })
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn left(&self) -> &Scalar {
        &self.breakpoints[0]
    }

    pub fn right(&self) -> &Scalar {
        self.breakpoints.last().expect("non-empty")
    }

    /// Index of the piece that owns `t`, or `None` outside the support.
    pub fn piece_index(&self, t: &Scalar) -> Option<usize> {
        if t.cmp_mid(self.left()) == Ordering::Less || t.cmp_mid(self.right()) == Ordering::Greater {
            return None;
        }
        let i = self.breakpoints[1..].iter().position(|b| t.cmp_mid(b) != Ordering::Greater);
        Some(i.unwrap_or(self.pieces.len() - 1))
    }

    /// Zero outside the support.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        match self.piece_index(t) {
            Some(i) => self.pieces[i].eval(t),
            None => Scalar::zero(),
        }
    }

    /// Values of the two adjacent pieces at each interior breakpoint.
    pub fn one_sided_values(&self) -> Vec<(Scalar, Scalar)> {
        (1..self.pieces.len())
            .map(|i| {
                let b = &self.breakpoints[i];
                (self.pieces[i - 1].eval(b), self.pieces[i].eval(b))
            })
            .collect()
    }

    /// `∫ p(t) g(t) dt` over the support.
    pub fn integral_against(&self, g: &Polynomial) -> Scalar {
        self.pieces.iter().enumerate().fold(Scalar::zero(), |acc, (i, p)| {
            let prod = p * g;
            &acc + &prod.integrate(&self.breakpoints[i], &self.breakpoints[i + 1])
        })
    }

    pub fn integral(&self) -> Scalar {
        self.integral_against(&Polynomial::constant(Scalar::one()))
    }

    /// `∫ |p(t)| dt`, split at every interior root.
    ///
    /// Ball data is handled through rational midpoints; the returned radius
    /// covers coefficient uncertainty, root enclosure widths and uncertain
    /// breakpoints.
    pub fn abs_integral(&self, root_tol: &Scalar) -> Result<AbsIntegral> {
        let t_max = self
            .breakpoints
            .iter()
            .map(Scalar::abs_upper)
            .fold(BigRational::one(), |a, b| if b > a { b } else { a });
        let mids: Vec<MidPoly> = self.pieces.iter().map(|p| mid_poly(p, &t_max)).collect();
        let ends: Vec<BigRational> = self.breakpoints.iter().map(Scalar::midpoint).collect();

        let mut total = BigRational::zero();
        let mut radius = BigRational::zero();
        let mut roots = Vec::with_capacity(self.pieces.len());
        let two = BigRational::from_integer(2.into());
        for (i, mp) in mids.iter().enumerate() {
            let (lo, hi) = (&ends[i], &ends[i + 1]);
            let list = isolate_roots(&mp.poly, &Scalar::Rational(lo.clone()), &Scalar::Rational(hi.clone()), root_tol)?;
            let anti = mp.poly.antiderivative();
            let f = |x: &BigRational| rat(&anti.eval(&Scalar::Rational(x.clone())));
            let mut cuts = vec![lo.clone()];
            for root in &list.roots {
                cuts.push(root.split_point());
                if !root.is_exact() {
                    let w = root.width();
                    radius += &two * &mp.lipschitz * &w * &w;
                }
            }
            cuts.push(hi.clone());
            let vals: Vec<BigRational> = cuts.iter().map(&f).collect();
            for w in vals.windows(2) {
                total += (&w[1] - &w[0]).abs();
            }
            radius += &mp.delta * (hi - lo);
            roots.push(RootList { roots: list.roots, coefficient_radius: mp.delta.clone() });
        }
        for (i, b) in self.breakpoints.iter().enumerate() {
            let rho = b.radius();
            if rho.is_zero() {
                continue;
            }
            let left = if i > 0 { mids[i - 1].sup.clone() } else { BigRational::zero() };
            let right = mids.get(i).map_or_else(BigRational::zero, |m| m.sup.clone());
            radius += rho * (left + right);
        }
        let value = if radius.is_zero() { Scalar::Rational(total) } else { Scalar::ball(&total, &radius) };
        Ok(AbsIntegral { value, radius, roots })
    }
}
