//! Birkhoff-type quadrature rules on `[-1, 1]`:
//! `Q(f) = Σ A_k f(x_k) + Σ B_k f'(y_k)`.

mod catalog;
mod family;
mod json;

pub use catalog::{make_rule, ParamMap, RuleId, RuleSpec};
pub use family::{ParamDomain, RuleFamily};
pub use json::RuleRecord;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub at: Scalar,
    pub weight: Scalar,
}

impl Node {
    pub fn new(at: Scalar, weight: Scalar) -> Node {
        Node { at, weight }
    }
}

/// A rule stored canonically on `[-1, 1]`.
///
/// Value and derivative nodes are kept in separate, strictly increasing
/// sequences; a point may appear in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRule {
    name: String,
    value_nodes: Vec<Node>,
    deriv_nodes: Vec<Node>,
    params: BTreeMap<String, Scalar>,
}

fn same_point(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.overlaps(b)
    }
}

/// Sorts nodes, merges coincident ones and drops exactly-zero weights.
fn normalize(mut nodes: Vec<Node>) -> Result<Vec<Node>> {
    let minus_one = Scalar::from_int(-1);
    let one = Scalar::one();
    for n in &nodes {
        if n.at.definitely_lt(&minus_one) || one.definitely_lt(&n.at) {
            return Err(Error::InvalidRule(format!("node {} lies outside [-1, 1]", n.at)));
        }
    }
    nodes.retain(|n| !n.weight.is_exact_zero());
    nodes.sort_by(|a, b| a.at.cmp_mid(&b.at));
    let mut out: Vec<Node> = Vec::with_capacity(nodes.len());
    for n in nodes {
        match out.last_mut() {
            Some(last) if same_point(&last.at, &n.at) => last.weight = &last.weight + &n.weight,
            _ => out.push(n),
        }
    }
    out.retain(|n| !n.weight.is_exact_zero());
    Ok(out)
}

impl QuadRule {
    pub fn new(
        name: impl Into<String>,
        value_nodes: Vec<Node>,
        deriv_nodes: Vec<Node>,
        params: BTreeMap<String, Scalar>,
    ) -> Result<QuadRule> {
        Ok(QuadRule {
            name: name.into(),
            value_nodes: normalize(value_nodes)?,
            deriv_nodes: normalize(deriv_nodes)?,
            params,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value_nodes(&self) -> &[Node] {
        &self.value_nodes
    }

    pub fn deriv_nodes(&self) -> &[Node] {
        &self.deriv_nodes
    }

    pub fn params(&self) -> &BTreeMap<String, Scalar> {
        &self.params
    }

    pub fn uses_derivatives(&self) -> bool {
        !self.deriv_nodes.is_empty()
    }

    /// All nodes and weights are exact rationals.
    pub fn is_exact(&self) -> bool {
        self.value_nodes.iter().chain(&self.deriv_nodes).all(|n| n.at.is_exact() && n.weight.is_exact())
    }

    pub fn weight_sum(&self) -> Scalar {
        self.value_nodes.iter().fold(Scalar::zero(), |acc, n| &acc + &n.weight)
    }

    /// The rule applied to `f(-t)`: nodes reflected, derivative weights negated.
    pub fn reflected(&self) -> QuadRule {
        let flip = |nodes: &[Node], sign: bool| {
            nodes
                .iter()
                .map(|n| Node::new(-&n.at, if sign { -&n.weight } else { n.weight.clone() }))
                .collect::<Vec<_>>()
        };
        QuadRule {
            name: self.name.clone(),
            value_nodes: normalize(flip(&self.value_nodes, false)).unwrap_or_default(),
            deriv_nodes: normalize(flip(&self.deriv_nodes, true)).unwrap_or_default(),
            params: self.params.clone(),
        }
    }

    /// Whether the rule is invariant under `t -> -t`.
    pub fn is_symmetric(&self) -> bool {
        let r = self.reflected();
        let close = |a: &[Node], b: &[Node]| {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| same_point(&x.at, &y.at) && same_point(&x.weight, &y.weight))
        };
        close(&self.value_nodes, &r.value_nodes) && close(&self.deriv_nodes, &r.deriv_nodes)
    }

    /// `Q(p)` on the canonical interval, exact for rational data.
    pub fn apply_polynomial(&self, p: &Polynomial) -> Scalar {
        let dp = p.derivative();
        let values = self.value_nodes.iter().fold(Scalar::zero(), |acc, n| &acc + &(&n.weight * &p.eval(&n.at)));
        self.deriv_nodes.iter().fold(values, |acc, n| &acc + &(&n.weight * &dp.eval(&n.at)))
    }
}

impl fmt::Display for QuadRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", p.join(", "))?;
        }
        Ok(())
    }
}

/// Something a rule can be applied to.
pub trait Integrand: Sync {
    fn value(&self, t: &Scalar) -> Scalar;
    /// `None` when the derivative is unavailable.
    fn derivative(&self, t: &Scalar) -> Option<Scalar>;
}

impl Integrand for Polynomial {
    fn value(&self, t: &Scalar) -> Scalar {
        self.eval(t)
    }

    fn derivative(&self, t: &Scalar) -> Option<Scalar> {
        Some(Polynomial::derivative(self).eval(t))
    }
}

type FloatMap = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Adapter for ordinary `f64` functions. Values become balls with one ulp of
/// relative uncertainty.
pub struct FloatFn {
    f: FloatMap,
    df: Option<FloatMap>,
}

impl FloatFn {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> FloatFn {
        FloatFn { f: Box::new(f), df: None }
    }

    pub fn with_derivative(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> FloatFn {
        FloatFn { f: Box::new(f), df: Some(Box::new(df)) }
    }
}

impl Integrand for FloatFn {
    fn value(&self, t: &Scalar) -> Scalar {
        Scalar::from_f64_approx((self.f)(t.to_f64())).unwrap_or_else(|_| Scalar::zero())
    }

    fn derivative(&self, t: &Scalar) -> Option<Scalar> {
        let df = self.df.as_ref()?;
        Scalar::from_f64_approx(df(t.to_f64())).ok()
    }
}

/// A rule transported to `[a, b]` by `t -> c + h t`, `c = (a+b)/2`, `h = (b-a)/2`.
/// Value weights scale by `h`, derivative weights by `h^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappedRule {
    pub a: Scalar,
    pub b: Scalar,
    pub center: Scalar,
    pub half_width: Scalar,
    pub value_nodes: Vec<Node>,
    pub deriv_nodes: Vec<Node>,
}

pub fn map_rule_to_interval(rule: &QuadRule, a: &Scalar, b: &Scalar) -> Result<MappedRule> {
    if !a.definitely_lt(b) {
        return Err(Error::BadInterval);
    }
    let half = Scalar::ratio(1, 2);
    let center = &(a + b) * &half;
    let h = &(b - a) * &half;
    let h2 = &h * &h;
    let map = |nodes: &[Node], scale: &Scalar| {
        nodes.iter().map(|n| Node::new(&center + &(&h * &n.at), &n.weight * scale)).collect()
    };
    Ok(MappedRule {
        a: a.clone(),
        b: b.clone(),
        value_nodes: map(&rule.value_nodes, &h),
        deriv_nodes: map(&rule.deriv_nodes, &h2),
        center,
        half_width: h,
    })
}

impl MappedRule {
    pub fn apply(&self, f: &dyn Integrand) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for n in &self.value_nodes {
            acc = &acc + &(&n.weight * &f.value(&n.at));
        }
        for n in &self.deriv_nodes {
            let d = f.derivative(&n.at).ok_or(Error::MissingDerivative)?;
            acc = &acc + &(&n.weight * &d);
        }
        Ok(acc)
    }

    /// Sharp error constant on `[a, b]` for order `r`, given `M_r` on `[-1, 1]`.
    pub fn error_constant(&self, canonical_constant: &Scalar, r: usize) -> Scalar {
        canonical_constant * &self.half_width.pow(r as u32 + 2)
    }
}

/// `Σ A_k f(x_k) + Σ B_k f'(y_k)` after mapping the rule to `[a, b]`.
pub fn apply_rule(rule: &QuadRule, f: &dyn Integrand, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    map_rule_to_interval(rule, a, b)?.apply(f)
}
