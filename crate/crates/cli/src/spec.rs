//! Turning command-line text into rules, families, scalars and integrands.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use peanoq_core::numeric::{parse_scalar, Polynomial, Scalar};
use peanoq_core::rules::{make_rule, FloatFn, Integrand, ParamMap, QuadRule, RuleFamily, RuleId};

/// A malformed rule or argument; reported with exit code 2.
#[derive(Debug)]
pub struct InvalidSpec(pub String);

impl fmt::Display for InvalidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidSpec {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidSpec(msg.into()).into()
}

pub fn scalar(text: &str) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| invalid(format!("cannot parse `{text}`: {e}")))
}

/// `name=value` pairs.
pub fn params(raw: &[String]) -> Result<ParamMap> {
    let mut map = ParamMap::new();
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| invalid(format!("expected name=value, got `{item}`")))?;
        let k = k.trim();
        if map.insert(k.to_string(), scalar(v.trim())?).is_some() {
            return Err(invalid(format!("parameter `{k}` given twice")));
        }
    }
    Ok(map)
}

pub fn rule(name: Option<&str>, raw_params: &[String], file: Option<&Path>) -> Result<QuadRule> {
    match (name, file) {
        (Some(_), Some(_)) => Err(invalid("give either a rule name or --rule-file, not both")),
        (None, None) => Err(invalid("a rule name or --rule-file is required")),
        (None, Some(path)) => {
            if !raw_params.is_empty() {
                return Err(invalid("-p cannot be combined with --rule-file"));
            }
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(QuadRule::from_json(&text)?)
        }
        (Some(name), None) => Ok(make_rule(RuleId::from_name(name)?, &params(raw_params)?)?),
    }
}

pub fn family(name: &str, raw_params: &[String]) -> Result<RuleFamily> {
    Ok(RuleFamily::new(RuleId::from_name(name)?, params(raw_params)?)?)
}

/// Where `--out` lands: relative paths go under `PEANOQ_OUT_DIR` when it is set.
pub fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os("PEANOQ_OUT_DIR") {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

#[derive(Debug)]
pub enum IntegrandSpec {
    Exp,
    Sin,
    Cos,
    Poly(Polynomial),
}

impl IntegrandSpec {
    pub fn parse(text: &str) -> Result<IntegrandSpec> {
        match text {
            "exp" => Ok(IntegrandSpec::Exp),
            "sin" => Ok(IntegrandSpec::Sin),
            "cos" => Ok(IntegrandSpec::Cos),
            _ => {
                let coeffs = text
                    .strip_prefix("poly:")
                    .ok_or_else(|| invalid(format!("unknown integrand `{text}` (use exp, sin, cos or poly:c0,c1,...)")))?;
                let cs = coeffs.split(',').map(|c| scalar(c.trim())).collect::<Result<Vec<_>>>()?;
                Ok(IntegrandSpec::Poly(Polynomial::new(cs)))
            }
        }
    }

    pub fn integrand(&self) -> Box<dyn Integrand> {
        match self {
            IntegrandSpec::Exp => Box::new(FloatFn::with_derivative(f64::exp, f64::exp)),
            IntegrandSpec::Sin => Box::new(FloatFn::with_derivative(f64::sin, f64::cos)),
            IntegrandSpec::Cos => Box::new(FloatFn::with_derivative(f64::cos, |t| -t.sin())),
            IntegrandSpec::Poly(p) => Box::new(p.clone()),
        }
    }

    /// Reference value of `∫_a^b f`.
    pub fn integral(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let (x, y) = (a.to_f64(), b.to_f64());
        let float = |v: f64| Scalar::from_f64_approx(v).unwrap_or_else(|_| Scalar::zero());
        match self {
            IntegrandSpec::Exp => float(y.exp() - x.exp()),
            IntegrandSpec::Sin => float(x.cos() - y.cos()),
            IntegrandSpec::Cos => float(y.sin() - x.sin()),
            IntegrandSpec::Poly(p) => p.integrate(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn params_parse_and_reject_duplicates() {
        let p = params(&strings(&["x = 1/3", "lambda=sqrt(1/5)"])).unwrap();
        assert_eq!(p["x"], Scalar::ratio(1, 3));
        assert!(!p["lambda"].is_exact());
        assert!(params(&strings(&["x=1", "x=2"])).unwrap_err().is::<InvalidSpec>());
        assert!(params(&strings(&["x"])).unwrap_err().is::<InvalidSpec>());
    }

    #[test]
    fn rule_source_is_exclusive() {
        assert!(rule(None, &[], None).unwrap_err().is::<InvalidSpec>());
        assert!(rule(Some("simpson"), &[], Some(Path::new("r.json"))).unwrap_err().is::<InvalidSpec>());
        assert_eq!(rule(Some("simpson"), &[], None).unwrap().name(), "simpson");
    }

    #[test]
    fn polynomial_integrand() {
        let f = IntegrandSpec::parse("poly:1, 0, 3").unwrap();
        assert_eq!(f.integral(&Scalar::zero(), &Scalar::from_int(2)), Scalar::from_int(10));
        assert!(IntegrandSpec::parse("tan").unwrap_err().is::<InvalidSpec>());
        let e = IntegrandSpec::parse("exp").unwrap();
        assert!((e.integral(&Scalar::zero(), &Scalar::one()).to_f64() - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn relative_outputs_follow_the_override() {
        // env is process-wide; keep every assertion that touches it in this test
        std::env::set_var("PEANOQ_OUT_DIR", "/tmp/peanoq-out");
        assert_eq!(output_path(Path::new("a.csv")), PathBuf::from("/tmp/peanoq-out/a.csv"));
        assert_eq!(output_path(Path::new("/abs/a.csv")), PathBuf::from("/abs/a.csv"));
        std::env::remove_var("PEANOQ_OUT_DIR");
        assert_eq!(output_path(Path::new("a.csv")), PathBuf::from("a.csv"));
    }
}
