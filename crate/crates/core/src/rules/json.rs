use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Node, QuadRule};
use crate::error::{Error, Result};
use crate::numeric::{parse_scalar, Scalar};

/// On-disk form of a rule. Scalars are strings: `p/q` when exact, `mid±rad`
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub name: String,
    pub value_nodes: Vec<[String; 2]>,
    #[serde(default)]
    pub deriv_nodes: Vec<[String; 2]>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

fn pairs(nodes: &[Node]) -> Vec<[String; 2]> {
    nodes.iter().map(|n| [n.at.to_string(), n.weight.to_string()]).collect()
}

fn parse(s: &str) -> Result<Scalar> {
    parse_scalar(s).map_err(|e| Error::Format(format!("bad scalar `{s}`: {e}")))
}

fn unpairs(pairs: &[[String; 2]]) -> Result<Vec<Node>> {
    pairs.iter().map(|[a, w]| Ok(Node::new(parse(a)?, parse(w)?))).collect()
}

impl From<&QuadRule> for RuleRecord {
    fn from(rule: &QuadRule) -> RuleRecord {
        RuleRecord {
            name: rule.name.clone(),
            value_nodes: pairs(&rule.value_nodes),
            deriv_nodes: pairs(&rule.deriv_nodes),
            params: rule.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }
}

impl TryFrom<&RuleRecord> for QuadRule {
    type Error = Error;
    fn try_from(rec: &RuleRecord) -> Result<QuadRule> {
        let params = rec.params.iter().map(|(k, v)| Ok((k.clone(), parse(v)?))).collect::<Result<_>>()?;
        QuadRule::new(rec.name.clone(), unpairs(&rec.value_nodes)?, unpairs(&rec.deriv_nodes)?, params)
    }
}

impl QuadRule {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RuleRecord::from(self)).expect("rule record serializes")
    }

    pub fn from_json(text: &str) -> Result<QuadRule> {
        let rec: RuleRecord = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        QuadRule::try_from(&rec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{make_rule, ParamMap, RuleId};

    #[test]
    fn rational_round_trip_is_exact() {
        let p: ParamMap = [("lambda", Scalar::ratio(1, 7)), ("gamma", Scalar::ratio(-2, 9)), ("delta", Scalar::ratio(3, 11)), ("x", Scalar::ratio(5, 13))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let r = make_rule(RuleId::Q44, &p).unwrap();
        let back = QuadRule::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn ball_round_trip_encloses() {
        let r = make_rule(RuleId::Lobatto4, &ParamMap::new()).unwrap();
        let back = QuadRule::from_json(&r.to_json()).unwrap();
        for (a, b) in r.value_nodes().iter().zip(back.value_nodes()) {
            assert!(a.at.overlaps(&b.at));
            assert!(b.at.radius() < crate::numeric::ten_pow_neg(60));
        }
    }

    #[test]
    fn malformed() {
        assert!(matches!(QuadRule::from_json("{"), Err(Error::Format(_))));
        let bad = r#"{"name":"t","value_nodes":[["zz","1"]]}"#;
        assert!(matches!(QuadRule::from_json(bad), Err(Error::Format(_))));
    }
}
