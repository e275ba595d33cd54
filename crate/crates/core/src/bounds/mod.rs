//! Ostrowski-type error bounds built from kernel norms.

mod export;
mod scan;

pub use export::{scan_csv, scan_json};
pub use scan::{bound_scan, bound_scan_with, family_grid, minimize_bound, BoundScan, Minimum, DEFAULT_SCAN_GRID};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::{ten_pow_neg, Scalar};
use crate::peano::{default_norm_tolerance, kernel_l1_norm};
use crate::rules::{ParamMap, QuadRule, RuleFamily, RuleId};

fn require_nonnegative(v: &Scalar, what: &'static str) -> Result<()> {
    if v.cmp_mid(&Scalar::zero()) == Ordering::Less {
        return Err(Error::Negative(what));
    }
    Ok(())
}

/// `M_r h^{r+2} · deriv_sup` with `h = (b-a)/2`.
pub fn error_bound(rule: &QuadRule, r: usize, deriv_sup: &Scalar, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    require_nonnegative(deriv_sup, "deriv_sup")?;
    if !a.definitely_lt(b) {
        return Err(Error::BadInterval);
    }
    let m = kernel_l1_norm(rule, r, &default_norm_tolerance())?.l1_norm;
    let h = &(b - a) * &Scalar::ratio(1, 2);
    Ok(&(&m * &h.pow(r as u32 + 2)) * deriv_sup)
}

/// Axis-aligned box with a bound on each partial derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxDomain {
    intervals: Vec<(Scalar, Scalar)>,
    derivative_bounds: Vec<Scalar>,
}

impl BoxDomain {
    pub fn new(intervals: Vec<(Scalar, Scalar)>, derivative_bounds: Vec<Scalar>) -> Result<BoxDomain> {
        if intervals.is_empty() || intervals.len() != derivative_bounds.len() {
            return Err(Error::InvalidBox("need one derivative bound per dimension".into()));
        }
        if intervals.iter().any(|(a, b)| !a.definitely_lt(b)) {
            return Err(Error::InvalidBox("each interval needs a < b".into()));
        }
        if derivative_bounds.iter().any(|m| m.sign() != Some(Ordering::Greater)) {
            return Err(Error::InvalidBox("derivative bounds must be positive".into()));
        }
        Ok(BoxDomain { intervals, derivative_bounds })
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(Scalar, Scalar)] {
        &self.intervals
    }

    pub fn derivative_bounds(&self) -> &[Scalar] {
        &self.derivative_bounds
    }
}

/// `Σ [1/4 + (x_i - c_i)^2 / (b_i - a_i)^2] (b_i - a_i) M_i`, the bound on
/// `|f(x) - mean of f over the box|`.
pub fn multidim_ostrowski_bound(domain: &BoxDomain, point: &[Scalar]) -> Result<Scalar> {
    if point.len() != domain.dimension() {
        return Err(Error::InvalidBox(format!("point has {} coordinates, box has {}", point.len(), domain.dimension())));
    }
    let quarter = Scalar::ratio(1, 4);
    let half = Scalar::ratio(1, 2);
    let mut total = Scalar::zero();
    for (((a, b), m), x) in domain.intervals.iter().zip(&domain.derivative_bounds).zip(point) {
        if x.cmp_mid(a) == Ordering::Less || x.cmp_mid(b) == Ordering::Greater {
            return Err(Error::PointOutsideBox);
        }
        let len = b - a;
        let off = x - &(&(a + b) * &half);
        let term = &quarter + &(&off * &off).checked_div(&(&len * &len))?;
        total = &total + &(&(&term * &len) * m);
    }
    Ok(total)
}

/// `(M/2) Σ [(x_k - a_{k-1})^2 + (a_k - x_k)^2]` for a partition with one
/// evaluation point per cell.
pub fn composite_partition_bound(partition: &[Scalar], points: &[Scalar], m: &Scalar) -> Result<Scalar> {
    require_nonnegative(m, "M")?;
    if partition.len() < 2 {
        return Err(Error::InvalidPartition("need at least two partition points".into()));
    }
    if partition.windows(2).any(|w| w[0].cmp_mid(&w[1]) != Ordering::Less) {
        return Err(Error::InvalidPartition("partition must be strictly increasing".into()));
    }
    if points.len() + 1 != partition.len() {
        return Err(Error::InvalidPartition(format!("expected {} points, got {}", partition.len() - 1, points.len())));
    }
    let mut sum = Scalar::zero();
    for (k, x) in points.iter().enumerate() {
        let (lo, hi) = (&partition[k], &partition[k + 1]);
        if x.cmp_mid(lo) == Ordering::Less || x.cmp_mid(hi) == Ordering::Greater {
            return Err(Error::InvalidPartition(format!("point {x} lies outside cell {k}")));
        }
        let l = x - lo;
        let r = hi - x;
        sum = &sum + &(&(&l * &l) + &(&r * &r));
    }
    Ok(&(&sum * m) * &Scalar::ratio(1, 2))
}

/// Closed-form minimiser of `M_0` for the symmetric four-point family with
/// fixed `λ`, cross-checked against the numerical minimiser.
pub fn alomari4_min_m0(lambda: &Scalar) -> Result<(Scalar, Scalar)> {
    let inside = Scalar::zero().definitely_lt(lambda) && lambda.definitely_lt(&Scalar::one());
    if !inside {
        return Err(Error::ParamOutOfDomain { rule: "alomari4".into(), reason: format!("lambda = {lambda} must lie in (0,1)") });
    }
    let half = Scalar::ratio(1, 2);
    let x = &(&Scalar::one() - lambda) * &half;
    let l2 = lambda * lambda;
    let m = &(&(&(&Scalar::from_int(3) * &l2) - &(&Scalar::from_int(2) * lambda)) + &Scalar::one()) * &half;

    let fixed: ParamMap = [("lambda".to_string(), lambda.clone())].into_iter().collect();
    let family = RuleFamily::new(RuleId::Alomari4, fixed)?;
    let tol = Scalar::from_rational(ten_pow_neg(13));
    let found = minimize_bound(&family, 0, &tol)?;
    let dx = (&found.x - &x).abs().to_f64();
    let dm = (&found.value - &m).abs().to_f64();
    if dx > 1e-12 || dm > 1e-12 {
        return Err(Error::CrossCheckMismatch(format!(
            "closed form ({}, {}) vs numeric ({}, {})",
            x.to_decimal(17),
            m.to_decimal(17),
            found.x.to_decimal(17),
            found.value.to_decimal(17)
        )));
    }
    Ok((x, m))
}
