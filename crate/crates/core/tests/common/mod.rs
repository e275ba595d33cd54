#![allow(dead_code)]

pub mod forms;

use num_bigint::BigInt;
use num_rational::BigRational;
use peanoq_core::numeric::Scalar;
use peanoq_core::peano::{default_norm_tolerance, kernel_l1_norm};
use peanoq_core::numeric::Polynomial;
use peanoq_core::rules::{make_rule, Node, ParamMap, QuadRule, RuleFamily, RuleId};
use std::collections::BTreeMap;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

pub fn params(pairs: &[(&str, Scalar)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn rule(id: RuleId, pairs: &[(&str, Scalar)]) -> QuadRule {
    make_rule(id, &params(pairs)).unwrap_or_else(|e| panic!("{id}: {e}"))
}

pub fn family(id: RuleId, pairs: &[(&str, Scalar)]) -> RuleFamily {
    RuleFamily::new(id, params(pairs)).unwrap()
}

/// Certified `M_r`; panics if not certified.
pub fn m(rule: &QuadRule, r: usize) -> Scalar {
    kernel_l1_norm(rule, r, &default_norm_tolerance())
        .unwrap_or_else(|e| panic!("{}: M_{r}: {e}", rule.name()))
        .l1_norm
}

pub fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

/// One or two parameter settings for every catalogue rule.
pub fn catalog_samples() -> Vec<QuadRule> {
    use RuleId::*;
    vec![
        rule(Ostrowski, &[("x", s(1, 3))]),
        rule(Ostrowski, &[("x", s(0, 1))]),
        rule(Mp3, &[("x", s(-1, 4))]),
        rule(Mod3, &[("x", s(1, 5)), ("lambda", s(1, 2))]),
        rule(Mod3Opt, &[("x", s(1, 2))]),
        rule(Mod3Opt, &[("x", s(0, 1))]),
        rule(Simpson, &[]),
        rule(Dcr, &[("lambda", s(1, 4)), ("x", s(1, 3))]),
        rule(Gs2, &[("x", s(3, 5))]),
        rule(Gs2, &[("x", Scalar::ratio(1, 3).sqrt().unwrap())]),
        rule(GaussLegendre2, &[]),
        rule(Franjic, &[("x", s(1, 3))]),
        rule(Franjic, &[("x", s(-1, 2))]),
        rule(Radau2, &[]),
        rule(Alomari2, &[("x", s(-1, 2)), ("lambda", s(0, 1)), ("y", s(2, 3))]),
        rule(Alomari4, &[("lambda", s(1, 5)), ("x", s(1, 2))]),
        rule(Alomari4, &[("lambda", s(1, 6)), ("x", Scalar::ratio(1, 5).sqrt().unwrap())]),
        rule(Lobatto4, &[]),
        rule(LiuPark, &[("x", s(1, 4))]),
        rule(LiuParkGauss, &[]),
        rule(DragomirSofo, &[("x", s(1, 3))]),
        rule(Q44, &[("lambda", s(1, 3)), ("gamma", s(1, 10)), ("delta", s(-1, 20)), ("x", s(1, 2))]),
    ]
}

/// Interpolatory weights on `xs`, optionally with one derivative node `(y, b)`
/// folded in so that degree `len - 1` stays exact.
pub fn interpolatory(xs: &[Scalar], deriv: Option<(Scalar, Scalar)>) -> QuadRule {
    let (lo, hi) = (Scalar::from_int(-1), Scalar::one());
    let mut value = Vec::new();
    for (i, xi) in xs.iter().enumerate() {
        let mut l = Polynomial::constant(Scalar::one());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let denom = (xi - xj).recip().unwrap();
                l = &l * &Polynomial::linear(-&(xj * &denom), denom);
            }
        }
        let mut w = l.integrate(&lo, &hi);
        if let Some((y, b)) = &deriv {
            w = &w - &(b * &l.derivative().eval(y));
        }
        value.push(Node::new(xi.clone(), w));
    }
    let derivs = deriv.map(|(y, b)| vec![Node::new(y, b)]).unwrap_or_default();
    QuadRule::new("random", value, derivs, BTreeMap::new()).unwrap()
}

