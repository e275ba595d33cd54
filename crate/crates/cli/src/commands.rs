use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use peanoq_core::bounds::{bound_scan, minimize_bound, scan_csv, scan_json};
use peanoq_core::composite::composite_integrate;
use peanoq_core::exactness::degree_of_exactness;
use peanoq_core::numeric::{format_decimal, Polynomial, Scalar, MAX_ISOLATION_DEGREE};
use peanoq_core::peano::{build_kernel, kernel_csv, kernel_json, kernel_l1_norm, verify_peano_identity};
use peanoq_core::rules::{QuadRule, RuleId, RuleRecord};
use serde_json::{json, Value};

use crate::spec::{self, invalid, IntegrandSpec};
use crate::{Format, OutputArgs, RuleArgs};

#[derive(Default)]
pub struct Status {
    pub ambiguous: bool,
    pub failed: bool,
}

fn load(args: &RuleArgs) -> Result<QuadRule> {
    spec::rule(args.rule.as_deref(), &args.params, args.rule_file.as_deref())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `--out` or stdout; returns the resolved path when a file was written.
fn emit(output: &OutputArgs, text: &str) -> Result<Option<PathBuf>> {
    match &output.out {
        Some(p) => {
            let path = spec::output_path(p);
            write_file(&path, text)?;
            Ok(Some(path))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(None)
        }
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let candidate = path.with_extension("json");
    if candidate == path {
        path.with_extension("meta.json")
    } else {
        candidate
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn only(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(invalid(format!("{command} does not support this --format")))
    }
}

fn show(s: &Scalar, digits: usize) -> String {
    if s.is_exact() {
        let exact = s.to_string();
        let dec = s.to_decimal(digits);
        if exact == dec {
            exact
        } else {
            format!("{exact}  ({dec})")
        }
    } else {
        format!("{}  (radius {})", s.to_decimal(digits), format_decimal(&s.radius(), 3))
    }
}

pub fn catalog(format: Format) -> Result<Status> {
    only(format, &[Format::Text, Format::Json], "catalog")?;
    let specs: Vec<_> = RuleId::ALL.iter().map(|id| id.spec()).collect();
    let text = if format == Format::Json {
        let v: Vec<Value> = specs
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "params": s.params,
                    "domain": s.domain,
                    "degree": s.degree,
                    "description": s.description,
                })
            })
            .collect();
        pretty(&Value::Array(v))
    } else {
        let mut out = String::new();
        for s in specs {
            let params = if s.params.is_empty() { "none".to_string() } else { s.params.join(",") };
            out += &format!(
                "{}: d={}, parameters {}; domain {}\n    {}\n",
                s.name, s.degree, params, s.domain, s.description
            );
        }
        out
    };
    print!("{text}");
    Ok(Status::default())
}

pub fn analyze(
    args: &RuleArgs,
    output: &OutputArgs,
    format: Format,
    k_max: usize,
    tol: &str,
    rule_out: Option<&Path>,
) -> Result<Status> {
    only(format, &[Format::Text, Format::Json], "analyze")?;
    let rule = load(args)?;
    let tol = spec::scalar(tol)?;
    if let Some(p) = rule_out {
        write_file(&spec::output_path(p), &(rule.to_json() + "\n"))?;
    }
    let rep = degree_of_exactness(&rule, k_max);
    let top = rep.degree.min(MAX_ISOLATION_DEGREE as i64 - 1);
    let mut constants = Vec::new();
    for r in 0..=top.max(-1) {
        if r < 0 {
            break;
        }
        constants.push(kernel_l1_norm(&rule, r as usize, &tol)?);
    }
    let digits = output.digits;
    let text = if format == Format::Json {
        let rec = serde_json::to_value(RuleRecord::from(&rule))?;
        let consts: Vec<Value> = constants
            .iter()
            .map(|k| {
                json!({
                    "r": k.order,
                    "value": k.l1_norm.to_string(),
                    "decimal": k.l1_norm.to_decimal(digits),
                    "exact": k.l1_norm.is_exact(),
                    "radius": format_decimal(&k.radius, 3),
                })
            })
            .collect();
        pretty(&json!({
            "rule": rec,
            "degree": rep.degree,
            "saturated": rep.saturated,
            "ambiguous": rep.ambiguous,
            "remainders": rep.remainders.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "constants": consts,
        }))
    } else {
        let mut out = format!("rule: {rule}\n");
        if rep.saturated {
            out += &format!("degree of exactness: >= {}\n", rep.degree);
        } else {
            out += &format!("degree of exactness: {}\n", rep.degree);
        }
        if let (Some(k), Some(v)) = (rep.first_nonzero_index, rep.first_nonzero()) {
            out += &format!("first nonzero remainder: R(e_{k}) = {}\n", show(v, digits));
        }
        if rep.ambiguous {
            out += "warning: a remainder could not be separated from zero reliably\n";
        }
        for k in &constants {
            out += &format!("M_{} = {}\n", k.order, show(&k.l1_norm, digits));
        }
        if rep.degree > top {
            out += &format!("constants above r = {top} are not computed\n");
        }
        out
    };
    emit(output, &text)?;
    Ok(Status { ambiguous: rep.ambiguous, failed: false })
}

pub fn kernel(args: &RuleArgs, output: &OutputArgs, order: usize, grid: usize, format: Format) -> Result<Status> {
    only(format, &[Format::Csv, Format::Json], "kernel")?;
    if grid < 2 {
        return Err(invalid("--grid must be at least 2"));
    }
    let rule = load(args)?;
    let k = build_kernel(&rule, order)?;
    let rep = peanoq_core::peano::analyze_kernel(k, order, &peanoq_core::peano::default_norm_tolerance())?;
    let meta = kernel_json(rule.name(), &rep, output.digits);
    if format == Format::Json {
        emit(output, &pretty(&meta))?;
    } else if let Some(path) = emit(output, &kernel_csv(&rep.kernel, grid, output.digits))? {
        write_file(&sidecar(&path), &pretty(&meta))?;
    }
    Ok(Status::default())
}

pub fn scan(name: &str, params: &[String], output: &OutputArgs, order: usize, grid: usize, format: Format) -> Result<Status> {
    only(format, &[Format::Csv, Format::Json], "scan")?;
    let family = spec::family(name, params)?;
    let s = bound_scan(&family, order, grid)?;
    let summary = scan_json(&s, output.digits);
    if format == Format::Json {
        emit(output, &pretty(&summary))?;
    } else if let Some(path) = emit(output, &scan_csv(&s, output.digits))? {
        write_file(&sidecar(&path), &pretty(&summary))?;
    }
    eprintln!(
        "minimum M_{order} = {} at x = {}",
        s.minimizer.value.to_decimal(output.digits),
        s.minimizer.x.to_decimal(output.digits)
    );
    Ok(Status { ambiguous: s.minimizer.multimodal_suspected, failed: false })
}

pub fn minimize(name: &str, params: &[String], output: &OutputArgs, order: usize, tol: &str, format: Format) -> Result<Status> {
    only(format, &[Format::Text, Format::Json], "minimize")?;
    let family = spec::family(name, params)?;
    let tol = spec::scalar(tol)?;
    let m = minimize_bound(&family, order, &tol)?;
    let d = output.digits;
    let text = if format == Format::Json {
        pretty(&json!({
            "rule": name,
            "order": order,
            "x": m.x.to_decimal(d),
            "x_exact": m.x.to_string(),
            "value": m.value.to_decimal(d),
            "multimodal_suspected": m.multimodal_suspected,
        }))
    } else {
        let mut t = format!("x* = {}\nM_{order}(x*) = {}\n", m.x.to_decimal(d), m.value.to_decimal(d));
        if m.multimodal_suspected {
            t += "warning: several local minima on one branch; result may be local\n";
        }
        t
    };
    emit(output, &text)?;
    Ok(Status { ambiguous: m.multimodal_suspected, failed: false })
}

pub struct IntegrateJob {
    pub integrand: String,
    pub a: String,
    pub b: String,
    pub n: usize,
    pub order: usize,
    pub deriv_sup: String,
}

pub fn integrate(args: &RuleArgs, output: &OutputArgs, job: &IntegrateJob, format: Format) -> Result<Status> {
    only(format, &[Format::Text, Format::Json], "integrate")?;
    let rule = load(args)?;
    let f = IntegrandSpec::parse(&job.integrand)?;
    let (a, b) = (spec::scalar(&job.a)?, spec::scalar(&job.b)?);
    let sup = spec::scalar(&job.deriv_sup)?;
    let res = composite_integrate(&rule, f.integrand().as_ref(), &a, &b, job.n, job.order, &sup)?;
    let reference = f.integral(&a, &b);
    let error = (&reference - &res.value).abs();
    let within = error.to_f64() <= res.certificate.to_f64() * (1.0 + 1e-12) + 1e-300;
    let d = output.digits;
    let text = if format == Format::Json {
        pretty(&json!({
            "rule": res.rule_name,
            "panels": res.panels,
            "order": res.order_used,
            "value": res.value.to_decimal(d),
            "certificate": res.certificate.to_decimal(d),
            "kernel_constant": res.kernel_constant.to_string(),
            "deriv_sup": res.deriv_sup_asserted.to_string(),
            "reference": reference.to_decimal(d),
            "observed_error": error.to_decimal(d),
            "within_certificate": within,
        }))
    } else {
        format!(
            "value = {}\ncertificate = {}\nreference = {}\nobserved error = {}\n",
            res.value.to_decimal(d),
            res.certificate.to_decimal(d),
            reference.to_decimal(d),
            error.to_decimal(d)
        )
    };
    emit(output, &text)?;
    if !within {
        eprintln!("peanoq: observed error exceeds the certificate; is --deriv-sup a valid bound?");
    }
    Ok(Status { ambiguous: false, failed: false })
}

/// `e_0 .. e_{d+3}` and one dense polynomial.
fn test_polynomials(d: usize) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = (0..=d + 3).map(Polynomial::monomial).collect();
    let dense: Vec<Scalar> = (0..=d + 3).map(|i| Scalar::ratio(if i % 2 == 0 { 1 } else { -2 }, i as i64 + 1)).collect();
    v.push(Polynomial::new(dense));
    v
}

pub fn verify(args: &RuleArgs, output: &OutputArgs, order: Option<usize>, format: Format) -> Result<Status> {
    only(format, &[Format::Text, Format::Json], "verify")?;
    let rule = load(args)?;
    let rep = degree_of_exactness(&rule, 20);
    if rep.degree < 0 {
        return Err(peanoq_core::Error::OrderExceedsExactness { order: 0, degree: rep.degree }.into());
    }
    let d = rep.degree as usize;
    let orders: Vec<usize> = match order {
        Some(r) => vec![r],
        None => (0..=d.min(MAX_ISOLATION_DEGREE - 1)).collect(),
    };
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut failed = false;
    for r in orders {
        if r == 0 && rule.uses_derivatives() {
            lines.push("r=0 skipped: derivative nodes are point masses for K_0".to_string());
            continue;
        }
        for (i, p) in test_polynomials(d).iter().enumerate() {
            let (lhs, rhs) = verify_peano_identity(&rule, r, p)?;
            let ok = if lhs.is_exact() && rhs.is_exact() { lhs == rhs } else { lhs.overlaps(&rhs) };
            failed |= !ok;
            lines.push(format!(
                "r={r} p{i}: lhs={} rhs={} {}",
                lhs.to_decimal(output.digits),
                rhs.to_decimal(output.digits),
                if ok { "ok" } else { "MISMATCH" }
            ));
            records.push(json!({"r": r, "poly": i, "lhs": lhs.to_string(), "rhs": rhs.to_string(), "ok": ok}));
        }
    }
    let text = if format == Format::Json {
        pretty(&json!({"rule": rule.name(), "checks": records, "all_ok": !failed}))
    } else {
        lines.join("\n") + &format!("\n{}\n", if failed { "identity FAILED" } else { "identity holds" })
    };
    emit(output, &text)?;
    Ok(Status { ambiguous: rep.ambiguous, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_never_overwrites_the_main_output() {
        assert_eq!(sidecar(Path::new("out/k.csv")), PathBuf::from("out/k.json"));
        assert_eq!(sidecar(Path::new("k.json")), PathBuf::from("k.meta.json"));
        assert_eq!(sidecar(Path::new("k")), PathBuf::from("k.json"));
    }

    #[test]
    fn test_polynomials_reach_past_the_degree() {
        let ps = test_polynomials(3);
        assert_eq!(ps.len(), 8);
        assert_eq!(ps[6].degree(), Some(6));
        assert_eq!(ps[7].degree(), Some(6));
    }

    #[test]
    fn exact_values_show_both_forms() {
        assert_eq!(show(&Scalar::ratio(1, 4), 5), "1/4  (0.25000)");
        assert_eq!(show(&Scalar::from_int(2), 3), "2  (2.00)");
    }
}
