use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Node, QuadRule};
use crate::error::{Error, Result};
use crate::numeric::Scalar;

pub type ParamMap = BTreeMap<String, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Ostrowski,
    Mp3,
    Mod3,
    Mod3Opt,
    Simpson,
    Dcr,
    Gs2,
    GaussLegendre2,
    Franjic,
    Radau2,
    Alomari2,
    Alomari4,
    Lobatto4,
    LiuPark,
    LiuParkGauss,
    DragomirSofo,
    Q44,
}

/// Static catalogue entry.
#[derive(Clone, Copy, Debug)]
pub struct RuleSpec {
    pub id: RuleId,
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub domain: &'static str,
    pub description: &'static str,
    pub degree: &'static str,
}

const SPECS: [RuleSpec; 17] = [
    RuleSpec {
        id: RuleId::Ostrowski,
        name: "ostrowski",
        params: &["x"],
        domain: "x in [-1,1]",
        description: "one-point rule 2 f(x)",
        degree: "0 (1 at x=0)",
    },
    RuleSpec {
        id: RuleId::Mp3,
        name: "mp3",
        params: &["x"],
        domain: "x in [-1,1]",
        description: "three-point rule (1+x)/2 f(-1) + f(x) + (1-x)/2 f(1)",
        degree: "1",
    },
    RuleSpec {
        id: RuleId::Mod3,
        name: "mod3",
        params: &["x", "lambda"],
        domain: "x in (-1,1), lambda >= 0",
        description: "weighted three-point rule (1-lambda(1-x)) f(-1) + 2 lambda f(x) + (1-lambda(1+x)) f(1)",
        degree: "1 (2 when lambda = 2/(3(1-x^2)))",
    },
    RuleSpec {
        id: RuleId::Mod3Opt,
        name: "mod3_opt",
        params: &["x"],
        domain: "x in (-1,1)",
        description: "mod3 with lambda = 2/(3(1-x^2))",
        degree: "2 (3 at x=0)",
    },
    RuleSpec {
        id: RuleId::Simpson,
        name: "simpson",
        params: &[],
        domain: "none",
        description: "Simpson rule 1/3 f(-1) + 4/3 f(0) + 1/3 f(1)",
        degree: "3",
    },
    RuleSpec {
        id: RuleId::Dcr,
        name: "dcr",
        params: &["lambda", "x"],
        domain: "lambda in [0,1], x in [-1+3lambda/2, 1-3lambda/2]",
        description: "Dragomir-Cerone-Roumeliotis rule lambda f(-1) + 2(1-lambda) f(x) + lambda f(1)",
        degree: "0 (1 at x=0, 3 at x=0 with lambda=1/3)",
    },
    RuleSpec {
        id: RuleId::Gs2,
        name: "gs2",
        params: &["x"],
        domain: "x in [0,1]",
        description: "Guessab-Schmeisser symmetric rule f(-x) + f(x)",
        degree: "1 (3 at x=1/sqrt(3))",
    },
    RuleSpec {
        id: RuleId::GaussLegendre2,
        name: "gauss_legendre2",
        params: &[],
        domain: "none",
        description: "two-point Gauss-Legendre, gs2 at x=1/sqrt(3)",
        degree: "3",
    },
    RuleSpec {
        id: RuleId::Franjic,
        name: "franjic",
        params: &["x"],
        domain: "x in (-1,1]",
        description: "Franjic two-point rule 2x/(1+x) f(-1) + 2/(1+x) f(x)",
        degree: "1 (2 at x=1/3)",
    },
    RuleSpec {
        id: RuleId::Radau2,
        name: "radau2",
        params: &[],
        domain: "none",
        description: "two-point Radau rule 1/2 f(-1) + 3/2 f(1/3)",
        degree: "2",
    },
    RuleSpec {
        id: RuleId::Alomari2,
        name: "alomari2",
        params: &["x", "lambda", "y"],
        domain: "-1 <= x <= lambda <= y <= 1",
        description: "Alomari two-point rule (1+lambda) f(x) + (1-lambda) f(y)",
        degree: "0",
    },
    RuleSpec {
        id: RuleId::Alomari4,
        name: "alomari4",
        params: &["lambda", "x"],
        domain: "lambda in [0,1], x in [0,1]",
        description: "Alomari symmetric four-point rule lambda(f(-1)+f(1)) + (1-lambda)(f(-x)+f(x))",
        degree: "1 (3 on a curve, 5 at lambda=1/6, x=1/sqrt(5))",
    },
    RuleSpec {
        id: RuleId::Lobatto4,
        name: "lobatto4",
        params: &[],
        domain: "none",
        description: "four-point Gauss-Lobatto, alomari4 at lambda=1/6, x=1/sqrt(5)",
        degree: "5",
    },
    RuleSpec {
        id: RuleId::LiuPark,
        name: "liu_park",
        params: &["x"],
        domain: "x in [0,1]",
        description: "Liu-Park rule with values at -1, -x, x, 1 and derivatives at +-x",
        degree: "1 (3 at x=1/sqrt(3))",
    },
    RuleSpec {
        id: RuleId::LiuParkGauss,
        name: "liu_park_gauss",
        params: &[],
        domain: "none",
        description: "liu_park at x=1/sqrt(3)",
        degree: "3",
    },
    RuleSpec {
        id: RuleId::DragomirSofo,
        name: "dragomir_sofo",
        params: &["x"],
        domain: "x in [-1,1]",
        description: "Dragomir-Sofo rule 1/2 f(-1) + f(x) + 1/2 f(1) - x f'(x)",
        degree: "1",
    },
    RuleSpec {
        id: RuleId::Q44,
        name: "q44",
        params: &["lambda", "gamma", "delta", "x"],
        domain: "lambda in (0,1), x in (0,1), gamma and delta real",
        description: "symmetric four-point rule with end and interior derivative terms",
        degree: "1 or more, depending on parameters",
    },
];

impl RuleId {
    pub const ALL: [RuleId; 17] = [
        RuleId::Ostrowski,
        RuleId::Mp3,
        RuleId::Mod3,
        RuleId::Mod3Opt,
        RuleId::Simpson,
        RuleId::Dcr,
        RuleId::Gs2,
        RuleId::GaussLegendre2,
        RuleId::Franjic,
        RuleId::Radau2,
        RuleId::Alomari2,
        RuleId::Alomari4,
        RuleId::Lobatto4,
        RuleId::LiuPark,
        RuleId::LiuParkGauss,
        RuleId::DragomirSofo,
        RuleId::Q44,
    ];

    pub fn spec(self) -> &'static RuleSpec {
        &SPECS[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.spec().name
    }

    pub fn params(self) -> &'static [&'static str] {
        self.spec().params
    }

    pub fn from_name(name: &str) -> Result<RuleId> {
        SPECS
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.id)
            .ok_or_else(|| Error::UnknownRule(name.to_string()))
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::from_name(s)
    }
}

struct Check<'a> {
    rule: &'static str,
    params: &'a ParamMap,
}

impl Check<'_> {
    fn get(&self, name: &str) -> Scalar {
        self.params[name].clone()
    }

    fn fail(&self, reason: String) -> Error {
        Error::ParamOutOfDomain { rule: self.rule.to_string(), reason }
    }

    /// `a <= b`, or `a < b` when `strict`. Balls are compared by midpoint.
    fn order(&self, a: &Scalar, b: &Scalar, strict: bool, what: &str) -> Result<()> {
        let ok = match a.cmp_mid(b) {
            Ordering::Less => true,
            Ordering::Equal => !strict,
            Ordering::Greater => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.fail(format!("{what} (got {a} vs {b})")))
        }
    }

    fn range(&self, name: &str, lo: i64, lo_open: bool, hi: i64, hi_open: bool) -> Result<Scalar> {
        let v = self.get(name);
        let text = format!(
            "{name} must lie in {}{lo},{hi}{}",
            if lo_open { '(' } else { '[' },
            if hi_open { ')' } else { ']' }
        );
        self.order(&Scalar::from_int(lo), &v, lo_open, &text)?;
        self.order(&v, &Scalar::from_int(hi), hi_open, &text)?;
        Ok(v)
    }
}

fn nodes(pairs: Vec<(Scalar, Scalar)>) -> Vec<Node> {
    pairs.into_iter().map(|(at, weight)| Node::new(at, weight)).collect()
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn sqrt_ratio(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d).sqrt().expect("positive")
}

fn fixed(pairs: &[(&str, Scalar)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Builds a catalogue rule.
///
/// Every parameter listed for the rule must be supplied; no others are
/// accepted.
pub fn make_rule(id: RuleId, params: &ParamMap) -> Result<QuadRule> {
    let spec = id.spec();
    for key in params.keys() {
        if !spec.params.contains(&key.as_str()) {
            return Err(Error::UnknownParameter { rule: spec.name.to_string(), param: key.clone() });
        }
    }
    for p in spec.params {
        if !params.contains_key(*p) {
            return Err(Error::MissingParameter { rule: spec.name.to_string(), param: p.to_string() });
        }
    }
    let c = Check { rule: spec.name, params };
    let (values, derivs) = match id {
        RuleId::Ostrowski => {
            let x = c.range("x", -1, false, 1, false)?;
            (vec![(x, int(2))], vec![])
        }
        RuleId::Mp3 => {
            let x = c.range("x", -1, false, 1, false)?;
            let h = half();
            (vec![(int(-1), &(&int(1) + &x) * &h), (x.clone(), int(1)), (int(1), &(&int(1) - &x) * &h)], vec![])
        }
        RuleId::Mod3 | RuleId::Mod3Opt => {
            let x = c.range("x", -1, true, 1, true)?;
            let lambda = if id == RuleId::Mod3 {
                let l = c.get("lambda");
                c.order(&Scalar::zero(), &l, false, "lambda must be non-negative")?;
                l
            } else {
                Scalar::ratio(2, 3).checked_div(&(&int(1) - &(&x * &x)))?
            };
            let one = int(1);
            (
                vec![
                    (int(-1), &one - &(&lambda * &(&one - &x))),
                    (x.clone(), &int(2) * &lambda),
                    (int(1), &one - &(&lambda * &(&one + &x))),
                ],
                vec![],
            )
        }
        RuleId::Simpson => (
            vec![(int(-1), Scalar::ratio(1, 3)), (Scalar::zero(), Scalar::ratio(4, 3)), (int(1), Scalar::ratio(1, 3))],
            vec![],
        ),
        RuleId::Dcr => {
            let lambda = c.range("lambda", 0, false, 1, false)?;
            let x = c.get("x");
            let reach = &int(1) - &(&Scalar::ratio(3, 2) * &lambda);
            c.order(&-&reach, &x, false, "x must be at least -1 + 3 lambda/2")?;
            c.order(&x, &reach, false, "x must be at most 1 - 3 lambda/2")?;
            (vec![(int(-1), lambda.clone()), (x, &int(2) * &(&int(1) - &lambda)), (int(1), lambda)], vec![])
        }
        RuleId::Gs2 => {
            let x = c.range("x", 0, false, 1, false)?;
            (vec![(-&x, int(1)), (x, int(1))], vec![])
        }
        RuleId::GaussLegendre2 => return make_rule(RuleId::Gs2, &fixed(&[("x", sqrt_ratio(1, 3))])).map(|r| rename(r, id)),
        RuleId::Franjic => {
            let x = c.range("x", -1, true, 1, false)?;
            let denom = &int(1) + &x;
            (vec![(int(-1), (&int(2) * &x).checked_div(&denom)?), (x, int(2).checked_div(&denom)?)], vec![])
        }
        RuleId::Radau2 => (vec![(int(-1), half()), (Scalar::ratio(1, 3), Scalar::ratio(3, 2))], vec![]),
        RuleId::Alomari2 => {
            let x = c.get("x");
            let lambda = c.get("lambda");
            let y = c.get("y");
            let msg = "parameters must satisfy -1 <= x <= lambda <= y <= 1";
            c.order(&int(-1), &x, false, msg)?;
            c.order(&x, &lambda, false, msg)?;
            c.order(&lambda, &y, false, msg)?;
            c.order(&y, &int(1), false, msg)?;
            (vec![(x, &int(1) + &lambda), (y, &int(1) - &lambda)], vec![])
        }
        RuleId::Alomari4 => {
            let lambda = c.range("lambda", 0, false, 1, false)?;
            let x = c.range("x", 0, false, 1, false)?;
            let inner = &int(1) - &lambda;
            (vec![(int(-1), lambda.clone()), (-&x, inner.clone()), (x, inner), (int(1), lambda)], vec![])
        }
        RuleId::Lobatto4 => {
            let p = fixed(&[("lambda", Scalar::ratio(1, 6)), ("x", sqrt_ratio(1, 5))]);
            return make_rule(RuleId::Alomari4, &p).map(|r| rename(r, id));
        }
        RuleId::LiuPark => {
            let x = c.range("x", 0, false, 1, false)?;
            let hx = &x * &half();
            (
                vec![(int(-1), half()), (-&x, half()), (x.clone(), half()), (int(1), half())],
                vec![(-&x, hx.clone()), (x, -&hx)],
            )
        }
        RuleId::LiuParkGauss => {
            return make_rule(RuleId::LiuPark, &fixed(&[("x", sqrt_ratio(1, 3))])).map(|r| rename(r, id))
        }
        RuleId::DragomirSofo => {
            let x = c.range("x", -1, false, 1, false)?;
            (vec![(int(-1), half()), (x.clone(), int(1)), (int(1), half())], vec![(x.clone(), -&x)])
        }
        RuleId::Q44 => {
            let lambda = c.range("lambda", 0, true, 1, true)?;
            let x = c.range("x", 0, true, 1, true)?;
            let gamma = c.get("gamma");
            let delta = c.get("delta");
            let inner = &int(1) - &lambda;
            (
                vec![(int(-1), lambda.clone()), (-&x, inner.clone()), (x.clone(), inner), (int(1), lambda)],
                vec![(int(-1), -&gamma), (int(1), gamma), (-&x, -&delta), (x, delta)],
            )
        }
    };
    QuadRule::new(spec.name, nodes(values), nodes(derivs), params.clone())
}

fn rename(mut rule: QuadRule, id: RuleId) -> QuadRule {
    rule.name = id.name().to_string();
    rule.params = ParamMap::new();
    rule
}
