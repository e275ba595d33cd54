//! Monomial remainders `R(e_k)` and the precise degree of exactness.

use crate::numeric::{Polynomial, Scalar, ZeroTest};
use crate::rules::QuadRule;

pub const DEFAULT_K_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// `R(e_0), ..., R(e_K)` where `K` is the first nonzero index, or `k_max`.
    pub remainders: Vec<Scalar>,
    /// `-1` when `R(e_0) != 0`. When `saturated`, read as "at least `degree`".
    pub degree: i64,
    pub first_nonzero_index: Option<usize>,
    pub saturated: bool,
    /// Some remainder could not be separated from zero with confidence.
    pub ambiguous: bool,
}

impl ExactnessReport {
    /// The first nonzero remainder `R(e_{d+1})`.
    pub fn first_nonzero(&self) -> Option<&Scalar> {
        self.first_nonzero_index.map(|k| &self.remainders[k])
    }
}

/// `∫_{-1}^{1} t^k dt`
pub fn monomial_integral(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::ratio(2, k as i64 + 1)
    } else {
        Scalar::zero()
    }
}

/// `I(e_k) - Σ A_j x_j^k - Σ B_j k y_j^{k-1}`
pub fn remainder_on_monomial(rule: &QuadRule, k: usize) -> Scalar {
    let mut r = monomial_integral(k);
    for n in rule.value_nodes() {
        r = &r - &(&n.weight * &n.at.pow(k as u32));
    }
    if k > 0 {
        let kk = Scalar::from_int(k as i64);
        for n in rule.deriv_nodes() {
            r = &r - &(&(&n.weight * &kk) * &n.at.pow(k as u32 - 1));
        }
    }
    r
}

/// `I(p) - Q(p)` on `[-1, 1]`.
pub fn remainder_on_polynomial(rule: &QuadRule, p: &Polynomial) -> Scalar {
    let exact = p.integrate(&Scalar::from_int(-1), &Scalar::one());
    &exact - &rule.apply_polynomial(p)
}

pub fn degree_of_exactness(rule: &QuadRule, k_max: usize) -> ExactnessReport {
    let mut remainders = Vec::new();
    let mut ambiguous = false;
    for k in 0..=k_max {
        let r = remainder_on_monomial(rule, k);
        let test = r.zero_test();
        remainders.push(r);
        match test {
            ZeroTest::Zero => continue,
            ZeroTest::Ambiguous | ZeroTest::NonZero => {
                ambiguous |= test == ZeroTest::Ambiguous;
                return ExactnessReport {
                    remainders,
                    degree: k as i64 - 1,
                    first_nonzero_index: Some(k),
                    saturated: false,
                    ambiguous,
                };
            }
        }
    }
    ExactnessReport { remainders, degree: k_max as i64, first_nonzero_index: None, saturated: true, ambiguous }
}
