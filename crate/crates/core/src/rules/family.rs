use std::cmp::Ordering;

use super::{make_rule, ParamMap, QuadRule, RuleId};
use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// Admissible range of the free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDomain {
    pub lo: Scalar,
    pub hi: Scalar,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl ParamDomain {
    pub fn contains(&self, x: &Scalar) -> bool {
        let above = match self.lo.cmp_mid(x) {
            Ordering::Less => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Greater => false,
        };
        let below = match x.cmp_mid(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn midpoint(&self) -> Scalar {
        &(&self.lo + &self.hi) * &Scalar::ratio(1, 2)
    }
}

/// A catalogue rule with every parameter pinned except `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleFamily {
    id: RuleId,
    fixed: ParamMap,
    domain: ParamDomain,
}

fn closed(lo: Scalar, hi: Scalar) -> ParamDomain {
    ParamDomain { lo, hi, lo_open: false, hi_open: false }
}

fn open(lo: Scalar, hi: Scalar) -> ParamDomain {
    ParamDomain { lo, hi, lo_open: true, hi_open: true }
}

impl RuleFamily {
    pub fn new(id: RuleId, fixed: ParamMap) -> Result<RuleFamily> {
        if !id.params().contains(&"x") {
            return Err(Error::NoFreeParameter(id.name().to_string()));
        }
        if fixed.contains_key("x") {
            return Err(Error::UnknownParameter { rule: id.name().to_string(), param: "x".into() });
        }
        let one = Scalar::one;
        let minus_one = || Scalar::from_int(-1);
        let domain = match id {
            RuleId::Ostrowski | RuleId::Mp3 | RuleId::DragomirSofo => closed(minus_one(), one()),
            RuleId::Mod3 | RuleId::Mod3Opt => open(minus_one(), one()),
            RuleId::Gs2 | RuleId::Alomari4 | RuleId::LiuPark => closed(Scalar::zero(), one()),
            RuleId::Q44 => open(Scalar::zero(), one()),
            RuleId::Franjic => ParamDomain { lo: minus_one(), hi: one(), lo_open: true, hi_open: false },
            RuleId::Dcr => {
                let lambda = fixed
                    .get("lambda")
                    .ok_or_else(|| Error::MissingParameter { rule: id.name().into(), param: "lambda".into() })?;
                let reach = &one() - &(&Scalar::ratio(3, 2) * lambda);
                closed(-&reach, reach)
            }
            RuleId::Alomari2 => {
                let lambda = fixed
                    .get("lambda")
                    .ok_or_else(|| Error::MissingParameter { rule: id.name().into(), param: "lambda".into() })?;
                closed(minus_one(), lambda.clone())
            }
            _ => return Err(Error::NoFreeParameter(id.name().to_string())),
        };
        let family = RuleFamily { id, fixed, domain };
        if family.domain.hi.cmp_mid(&family.domain.lo) == Ordering::Less {
            return Err(Error::ParamOutOfDomain {
                rule: id.name().to_string(),
                reason: "the admissible range of x is empty".into(),
            });
        }
        // surface bad fixed parameters now rather than on first use
        family.instantiate(&family.domain.midpoint())?;
        Ok(family)
    }

    pub fn id(&self) -> RuleId {
        self.id
    }

    pub fn fixed(&self) -> &ParamMap {
        &self.fixed
    }

    pub fn domain(&self) -> &ParamDomain {
        &self.domain
    }

    pub fn instantiate(&self, x: &Scalar) -> Result<QuadRule> {
        if !self.domain.contains(x) {
            return Err(Error::ParamOutOfDomain {
                rule: self.id.name().to_string(),
                reason: format!("x = {x} lies outside the family domain"),
            });
        }
        let mut params = self.fixed.clone();
        params.insert("x".into(), x.clone());
        make_rule(self.id, &params)
    }
}
