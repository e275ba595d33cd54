//! Composite rules on equal panels with an a-priori error certificate.

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::peano::{default_norm_tolerance, kernel_l1_norm};
use crate::rules::{apply_rule, Integrand, QuadRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeResult {
    pub value: Scalar,
    pub panels: usize,
    pub rule_name: String,
    pub order_used: usize,
    /// `M_r` of the rule on `[-1, 1]`.
    pub kernel_constant: Scalar,
    /// `n M_r ((b-a)/(2n))^{r+2} deriv_sup`
    pub certificate: Scalar,
    pub deriv_sup_asserted: Scalar,
}

fn check_inputs(deriv_sup: &Scalar, a: &Scalar, b: &Scalar) -> Result<()> {
    if deriv_sup.cmp_mid(&Scalar::zero()) == Ordering::Less {
        return Err(Error::Negative("deriv_sup"));
    }
    if !a.definitely_lt(b) {
        return Err(Error::BadInterval);
    }
    Ok(())
}

/// Certificate for `n` panels given the canonical constant `M_r`.
pub fn certificate(m_r: &Scalar, r: usize, deriv_sup: &Scalar, a: &Scalar, b: &Scalar, n: usize) -> Scalar {
    let nn = Scalar::from_int(n as i64);
    let h = (b - a).checked_div(&(&Scalar::from_int(2) * &nn)).expect("n >= 1");
    &(&(&nn * m_r) * &h.pow(r as u32 + 2)) * deriv_sup
}

pub fn composite_integrate(
    rule: &QuadRule,
    f: &dyn Integrand,
    a: &Scalar,
    b: &Scalar,
    n: usize,
    r: usize,
    deriv_sup: &Scalar,
) -> Result<CompositeResult> {
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    check_inputs(deriv_sup, a, b)?;
    let m_r = kernel_l1_norm(rule, r, &default_norm_tolerance())?.l1_norm;
    let width = b - a;
    let nn = Scalar::from_int(n as i64);
    let edge = |k: usize| &(a.clone()) + &(&width * &Scalar::from_int(k as i64).checked_div(&nn).expect("n >= 1"));
    let panels: Vec<Scalar> = (0..n).into_par_iter().map(|k| apply_rule(rule, f, &edge(k), &edge(k + 1))).collect::<Result<_>>()?;
    let value = panels.iter().fold(Scalar::zero(), |acc, v| &acc + v);
    Ok(CompositeResult {
        value,
        panels: n,
        rule_name: rule.name().to_string(),
        order_used: r,
        certificate: certificate(&m_r, r, deriv_sup, a, b, n),
        kernel_constant: m_r,
        deriv_sup_asserted: deriv_sup.clone(),
    })
}

/// Smallest `n` whose certificate is at most `eps`.
pub fn panels_for_tolerance(
    rule: &QuadRule,
    r: usize,
    deriv_sup: &Scalar,
    a: &Scalar,
    b: &Scalar,
    eps: &Scalar,
) -> Result<usize> {
    if eps.sign() != Some(Ordering::Greater) {
        return Err(Error::NonPositive("eps"));
    }
    check_inputs(deriv_sup, a, b)?;
    let m_r = kernel_l1_norm(rule, r, &default_norm_tolerance())?.l1_norm;
    let ok = |n: usize| certificate(&m_r, r, deriv_sup, a, b, n).upper() <= eps.lower();
    if ok(1) {
        return Ok(1);
    }
    // certificate(n) = certificate(1) / n^{r+1}
    let ratio = (certificate(&m_r, r, deriv_sup, a, b, 1).upper() / eps.lower()).to_f64().unwrap_or(f64::MAX);
    let mut n = ratio.powf(1.0 / (r as f64 + 1.0)).ceil().clamp(1.0, 1e15) as usize;
    while !ok(n) {
        n += 1;
    }
    while n > 1 && ok(n - 1) {
        n -= 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Polynomial;
    use crate::rules::{make_rule, ParamMap, RuleId};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn simpson() -> QuadRule {
        make_rule(RuleId::Simpson, &ParamMap::new()).unwrap()
    }

    #[test]
    fn simpson_quartic_is_tight() {
        let res = composite_integrate(&simpson(), &Polynomial::monomial(4), &q(-1, 1), &q(1, 1), 1, 3, &q(24, 1)).unwrap();
        assert_eq!(res.value, q(2, 3));
        assert_eq!(res.certificate, q(4, 15));
        assert_eq!((&q(2, 5) - &res.value).abs(), res.certificate);
    }

    #[test]
    fn polynomials_within_degree_are_exact() {
        let p = Polynomial::from_ints(&[1, -2, 3, 5]);
        for n in [1, 3, 7] {
            let res = composite_integrate(&simpson(), &p, &q(0, 1), &q(2, 1), n, 3, &q(0, 1)).unwrap();
            assert_eq!(res.value, p.integrate(&q(0, 1), &q(2, 1)));
            assert_eq!(res.certificate, q(0, 1));
        }
    }

    #[test]
    fn doubling_panels_scales_certificate() {
        let m = q(1, 90);
        let c1 = certificate(&m, 3, &q(1, 1), &q(0, 1), &q(1, 1), 3);
        let c2 = certificate(&m, 3, &q(1, 1), &q(0, 1), &q(1, 1), 6);
        assert_eq!(c1, &c2 * &q(16, 1));
    }

    #[test]
    fn panels_for_tolerance_examples() {
        let s = simpson();
        let one = q(1, 1);
        assert_eq!(panels_for_tolerance(&s, 3, &one, &q(-1, 1), &one, &one).unwrap(), 1);
        let at_two = certificate(&q(1, 90), 3, &one, &q(-1, 1), &one, 2);
        assert_eq!(panels_for_tolerance(&s, 3, &one, &q(-1, 1), &one, &at_two).unwrap(), 2);
        let eps = q(1, 1_000_000_000);
        let n = panels_for_tolerance(&s, 3, &one, &q(0, 1), &one, &eps).unwrap();
        assert!(certificate(&q(1, 90), 3, &one, &q(0, 1), &one, n).upper() <= eps.lower());
        assert!(certificate(&q(1, 90), 3, &one, &q(0, 1), &one, n - 1).upper() > eps.lower());
    }

    #[test]
    fn argument_errors() {
        let s = simpson();
        let p = Polynomial::monomial(2);
        assert_eq!(composite_integrate(&s, &p, &q(0, 1), &q(1, 1), 0, 3, &q(1, 1)), Err(Error::NonPositive("n")));
        assert!(matches!(
            composite_integrate(&s, &p, &q(0, 1), &q(1, 1), 1, 4, &q(1, 1)),
            Err(Error::OrderExceedsExactness { .. })
        ));
    }
}
