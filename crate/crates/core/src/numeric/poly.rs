use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Dense univariate polynomial; `coeffs[i]` multiplies `t^i`.
///
/// Trailing coefficients that are exactly zero are always trimmed, so the zero
/// polynomial is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Polynomial {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Polynomial {
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.push(Scalar::one());
        Polynomial { coeffs }
    }

    /// `c0 + c1 t`
    pub fn linear(c0: Scalar, c1: Scalar) -> Polynomial {
        Polynomial::new(vec![c0, c1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_exact_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// `k`-th derivative.
    pub fn nth_derivative(&self, k: usize) -> Polynomial {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// The antiderivative that vanishes at `t = 0`.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c * &Scalar::ratio(1, i as i64 + 1));
        }
        Polynomial::new(coeffs)
    }

    /// `∫_a^b p(t) dt`
    pub fn integrate(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let f = self.antiderivative();
        &f.eval(b) - &f.eval(a)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, 0, 1]).eval(&Scalar::ratio(1, 4)), Scalar::ratio(17, 16));
        assert_eq!(Polynomial::zero().eval(&Scalar::ratio(5, 3)), Scalar::zero());
    }

    #[test]
    fn arithmetic_examples() {
        let a = p(&[1, 1]);
        assert_eq!(&a * &a, p(&[1, 2, 1]));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).degree(), None);
    }

    #[test]
    fn simpson_left_piece_from_factors() {
        // (1+t)^3 (3t-1) / 72
        let cube = p(&[1, 1]).pow(3);
        let piece = (&cube * &p(&[-1, 3])).scale(&Scalar::ratio(1, 72));
        let expected: Vec<Scalar> =
            [(-1, 72), (0, 1), (1, 12), (1, 9), (1, 24)].iter().map(|&(n, d)| Scalar::ratio(n, d)).collect();
        assert_eq!(piece.coeffs(), expected.as_slice());
        assert_eq!(piece.degree(), Some(4));
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(p(&[1]).antiderivative(), p(&[0, 1]));
        assert_eq!(p(&[0, 0, 3]).antiderivative(), p(&[0, 0, 0, 1]));
        assert_eq!(p(&[0, 0, 3]).antiderivative().eval(&Scalar::zero()), Scalar::zero());
    }

    #[test]
    fn derivative_of_product() {
        let a = p(&[2, -1, 5]);
        let b = p(&[0, 3, 0, 1]);
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        assert_eq!(lhs, rhs);
    }
}
