use serde_json::{json, Value};

use super::BoundScan;
use crate::numeric::format_decimal;

/// CSV with columns `x,M_r,branch_id`.
pub fn scan_csv(scan: &BoundScan, digits: usize) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "M_r", "branch_id"]).expect("in-memory write");
    for ((x, v), b) in scan.grid.iter().zip(&scan.values).zip(&scan.branch_ids) {
        w.write_record([format_decimal(&x.midpoint(), digits), format_decimal(&v.midpoint(), digits), b.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

pub fn scan_json(scan: &BoundScan, digits: usize) -> Value {
    let fixed: serde_json::Map<String, Value> =
        scan.family.fixed().iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect();
    json!({
        "rule": scan.family.id().name(),
        "fixed_params": fixed,
        "order": scan.order,
        "grid_size": scan.grid.len(),
        "domain": [scan.family.domain().lo.to_string(), scan.family.domain().hi.to_string()],
        "branch_points": scan.branch_points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "minimizer": {
            "x": scan.minimizer.x.to_decimal(digits),
            "x_exact": scan.minimizer.x.to_string(),
            "value": scan.minimizer.value.to_decimal(digits),
            "multimodal_suspected": scan.minimizer.multimodal_suspected,
        },
    })
}
