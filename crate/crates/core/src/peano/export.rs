use serde_json::{json, Value};

use super::{KernelReport, PiecewisePolynomial};
use crate::numeric::{format_decimal, Scalar};

/// `n` equally spaced rationals covering `[lo, hi]`, endpoints included.
pub fn uniform_grid(lo: &Scalar, hi: &Scalar, n: usize) -> Vec<Scalar> {
    if n < 2 {
        return vec![lo.clone()];
    }
    let (a, b) = (lo.midpoint(), hi.midpoint());
    let steps = Scalar::from_int(n as i64 - 1);
    (0..n)
        .map(|i| {
            let s = Scalar::from_rational(a.clone());
            let w = Scalar::from_rational(&b - &a);
            let frac = Scalar::from_int(i as i64).checked_div(&steps).expect("n > 1");
            &s + &(&w * &frac)
        })
        .collect()
}

/// CSV with columns `t,K_r(t)`.
pub fn kernel_csv(kernel: &PiecewisePolynomial, grid: usize, digits: usize) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "K_r(t)"]).expect("in-memory write");
    for t in uniform_grid(kernel.left(), kernel.right(), grid) {
        let k = kernel.eval(&t);
        w.write_record([format_decimal(&t.midpoint(), digits), format_decimal(&k.midpoint(), digits)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

/// Breakpoints, piece coefficients and the norm, for the CSV sidecar.
pub fn kernel_json(rule_name: &str, report: &KernelReport, digits: usize) -> Value {
    let k = &report.kernel;
    json!({
        "rule": rule_name,
        "order": report.order,
        "breakpoints": k.breakpoints().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "pieces": k.pieces().iter().map(|p| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "l1_norm": report.l1_norm.to_string(),
        "l1_norm_decimal": report.l1_norm.to_decimal(digits),
        "radius": format_decimal(&report.radius, 3),
        "integral": report.integral.to_string(),
        "continuity": report.continuity,
        "signature": report.signature,
    })
}
