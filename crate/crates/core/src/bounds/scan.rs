use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{simplest_rational_between, ten_pow_neg, Scalar};
use crate::peano::{default_norm_tolerance, kernel_l1_norm};
use crate::rules::{ParamDomain, RuleFamily};

pub const DEFAULT_SCAN_GRID: usize = 201;

/// Relative size of a second difference, against the median, that marks a kink.
const SPIKE_FACTOR: f64 = 1e3;
/// A spike must also exceed the second differences two cells away by this much.
const LOCAL_FACTOR: f64 = 10.0;
/// Golden-section probes are rounded to multiples of `2^-GOLDEN_BITS`.
const GOLDEN_BITS: u32 = 96;
/// At most this many grid minima are refined.
const MAX_REFINED: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimum {
    pub x: Scalar,
    pub value: Scalar,
    /// Some branch of the bound function has more than one local minimum on
    /// the grid, so the result may only be a local one.
    pub multimodal_suspected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundScan {
    pub family: RuleFamily,
    pub order: usize,
    pub grid: Vec<Scalar>,
    pub values: Vec<Scalar>,
    /// Root-count signature of the kernel at each grid point.
    pub signatures: Vec<Vec<usize>>,
    pub branch_ids: Vec<usize>,
    pub branch_points: Vec<Scalar>,
    pub minimizer: Minimum,
}

/// `n` points across the domain. Open ends are stepped in from, closed ends
/// are included.
pub fn family_grid(domain: &ParamDomain, n: usize) -> Vec<Scalar> {
    let lo = domain.lo.clone();
    let width = &domain.hi - &domain.lo;
    let s = i64::from(domain.lo_open);
    let e = i64::from(domain.hi_open);
    let denom = Scalar::from_int(n as i64 - 1 + s + e);
    (0..n)
        .map(|i| {
            let frac = Scalar::from_int(i as i64 + s).checked_div(&denom).expect("n >= 1");
            &lo + &(&width * &frac)
        })
        .collect()
}

struct Evaluator<'a> {
    family: &'a RuleFamily,
    order: usize,
    tol: Scalar,
}

impl Evaluator<'_> {
    fn eval(&self, x: &Scalar) -> Result<(Scalar, Vec<usize>)> {
        let rule = self.family.instantiate(x)?;
        let rep = kernel_l1_norm(&rule, self.order, &self.tol)?;
        Ok((rep.l1_norm, rep.signature))
    }

    fn value(&self, x: &Scalar) -> Result<Scalar> {
        self.eval(x).map(|(v, _)| v)
    }

    fn signature(&self, x: &Scalar) -> Result<Vec<usize>> {
        self.eval(x).map(|(_, s)| s)
    }
}

fn rat(x: &Scalar) -> BigRational {
    x.midpoint()
}

fn dyadic(q: &BigRational) -> BigRational {
    let scale = BigRational::from_integer(BigInt::from(1u8) << GOLDEN_BITS);
    (q * &scale).round() / scale
}

/// Bisects the parameter interval on which the kernel signature changes and
/// returns the simplest rational in the final bracket.
fn refine_signature_change(ev: &Evaluator, lo: &Scalar, hi: &Scalar, tol: &BigRational) -> Result<Scalar> {
    let left = ev.signature(lo)?;
    let (mut a, mut b) = (rat(lo), rat(hi));
    let two = BigRational::from_integer(2.into());
    while &b - &a > *tol {
        let m = (&a + &b) / &two;
        if ev.signature(&Scalar::Rational(m.clone()))? == left {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Scalar::Rational(simplest_rational_between(&a, &b)))
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    v[v.len() / 2]
}

/// Grid indices where the centred second difference spikes: well above the
/// median, a local maximum, and well above the values two cells away.
fn spike_candidates(values: &[f64]) -> Vec<usize> {
    let d2: Vec<f64> = values.windows(3).map(|w| (w[2] - 2.0 * w[1] + w[0]).abs()).collect();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = (SPIKE_FACTOR * median(d2.clone())).max(1e-9 * scale);
    let mut out: Vec<usize> = Vec::new();
    for j in 2..d2.len().saturating_sub(2) {
        let d = d2[j];
        let peak = d >= d2[j - 1] && d >= d2[j + 1];
        let isolated = d >= LOCAL_FACTOR * d2[j - 2].max(d2[j + 2]);
        if d > threshold && peak && isolated && out.last() != Some(&j) {
            out.push(j + 1);
        }
    }
    out
}

fn golden(ev: &Evaluator, lo: &BigRational, hi: &BigRational, tol: &BigRational) -> Result<Vec<(Scalar, Scalar)>> {
    // 1/phi, sixteen digits
    let inv_phi = BigRational::new(BigInt::from(6180339887498949u64), BigInt::from(10u64.pow(16)));
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let probe = |q: BigRational| -> Result<(Scalar, Scalar)> {
        let x = Scalar::Rational(q);
        let v = ev.value(&x)?;
        Ok((x, v))
    };
    let mut c = probe(dyadic(&(&b - &inv_phi * (&b - &a))))?;
    let mut d = probe(dyadic(&(&a + &inv_phi * (&b - &a))))?;
    let mut seen = vec![c.clone(), d.clone()];
    while &b - &a > *tol && rat(&c.0) < rat(&d.0) {
        if c.1.cmp_mid(&d.1) != Ordering::Greater {
            b = rat(&d.0);
            d = c;
            c = probe(dyadic(&(&b - &inv_phi * (&b - &a))))?;
            seen.push(c.clone());
        } else {
            a = rat(&c.0);
            c = d;
            d = probe(dyadic(&(&a + &inv_phi * (&b - &a))))?;
            seen.push(d.clone());
        }
    }
    seen.push(probe(dyadic(&((&a + &b) / BigRational::from_integer(2.into()))))?);
    Ok(seen)
}

pub fn bound_scan(family: &RuleFamily, r: usize, grid_size: usize) -> Result<BoundScan> {
    bound_scan_with(family, r, grid_size, &Scalar::from_rational(ten_pow_neg(12)))
}

/// Minimiser of `x -> M_r(x)` over the family domain to within `tol`.
pub fn minimize_bound(family: &RuleFamily, r: usize, tol: &Scalar) -> Result<Minimum> {
    bound_scan_with(family, r, DEFAULT_SCAN_GRID, tol).map(|s| s.minimizer)
}

/// Scan on `grid_size` points, branch detection, and golden-section
/// refinement of each grid minimum to `tol`.
pub fn bound_scan_with(family: &RuleFamily, r: usize, grid_size: usize, tol: &Scalar) -> Result<BoundScan> {
    if grid_size < 3 {
        return Err(Error::GridTooSmall(grid_size));
    }
    if tol.sign() != Some(Ordering::Greater) {
        return Err(Error::NonPositive("tol"));
    }
    let tol_q = tol.lower();
    let ev = Evaluator { family, order: r, tol: default_norm_tolerance() };
    let grid = family_grid(family.domain(), grid_size);
    let evaluated: Vec<(Scalar, Vec<usize>)> = grid.par_iter().map(|x| ev.eval(x)).collect::<Result<_>>()?;
    let (values, signatures): (Vec<Scalar>, Vec<Vec<usize>>) = evaluated.into_iter().unzip();

    // branch points: signature changes first, then kinks the signature misses
    let lo_end = rat(&family.domain().lo);
    let hi_end = rat(&family.domain().hi);
    let mut branch_points: Vec<Scalar> = Vec::new();
    for i in 0..grid.len() - 1 {
        if signatures[i] != signatures[i + 1] {
            let p = refine_signature_change(&ev, &grid[i], &grid[i + 1], &tol_q)?;
            let pq = rat(&p);
            if &pq - &lo_end > tol_q && &hi_end - &pq > tol_q {
                branch_points.push(p);
            }
        }
    }
    let floats: Vec<f64> = values.iter().map(Scalar::to_f64).collect();
    for i in spike_candidates(&floats) {
        let near = branch_points
            .iter()
            .any(|p| p.cmp_mid(&grid[i - 1]) != Ordering::Less && p.cmp_mid(&grid[i + 1]) != Ordering::Greater);
        if !near {
            branch_points.push(grid[i].clone());
        }
    }
    branch_points.sort_by(|a, b| a.cmp_mid(b));
    branch_points.dedup();

    let branch_ids: Vec<usize> = grid
        .iter()
        .map(|x| branch_points.iter().filter(|p| p.cmp_mid(x) == Ordering::Less).count())
        .collect();

    // grid-local minima, refined by golden section on the neighbouring cells
    let n = grid.len();
    let mut minima: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i].cmp_mid(&values[i - 1]) == Ordering::Less;
            let right = i == n - 1 || values[i].cmp_mid(&values[i + 1]) != Ordering::Greater;
            left && right
        })
        .collect();
    let mut per_branch = vec![0usize; branch_points.len() + 1];
    for &i in &minima {
        per_branch[branch_ids[i]] += 1;
    }
    let multimodal_suspected = per_branch.iter().any(|&c| c > 1);
    minima.sort_by(|&a, &b| values[a].cmp_mid(&values[b]));
    minima.truncate(MAX_REFINED);

    let mut best = minima
        .iter()
        .map(|&i| (grid[i].clone(), values[i].clone()))
        .min_by(|a, b| a.1.cmp_mid(&b.1))
        .expect("a finite grid has a minimum");
    let refined: Vec<Vec<(Scalar, Scalar)>> = minima
        .par_iter()
        .map(|&i| golden(&ev, &rat(&grid[i.saturating_sub(1)]), &rat(&grid[(i + 1).min(n - 1)]), &tol_q))
        .collect::<Result<_>>()?;
    for cand in refined.into_iter().flatten() {
        if cand.1.cmp_mid(&best.1) == Ordering::Less {
            best = cand;
        }
    }

    Ok(BoundScan {
        family: family.clone(),
        order: r,
        grid,
        values,
        signatures,
        branch_ids,
        branch_points,
        minimizer: Minimum { x: best.0, value: best.1, multimodal_suspected },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{ParamMap, RuleId};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn grid_respects_open_ends() {
        let f = RuleFamily::new(RuleId::Franjic, ParamMap::new()).unwrap();
        let g = family_grid(f.domain(), 5);
        assert_eq!(g, vec![q(-3, 5), q(-1, 5), q(1, 5), q(3, 5), q(1, 1)]);
        let f = RuleFamily::new(RuleId::Gs2, ParamMap::new()).unwrap();
        assert_eq!(family_grid(f.domain(), 3), vec![q(0, 1), q(1, 2), q(1, 1)]);
    }

    #[test]
    fn gs2_m0_minimum() {
        let f = RuleFamily::new(RuleId::Gs2, ParamMap::new()).unwrap();
        let s = bound_scan(&f, 0, 41).unwrap();
        assert_eq!(s.minimizer.x, q(1, 2));
        assert_eq!(s.minimizer.value, q(1, 2));
        assert!(!s.minimizer.multimodal_suspected);
        for (x, v) in s.grid.iter().zip(&s.values) {
            let want = &(&q(1, 1) - &(&q(2, 1) * x)) + &(&q(2, 1) * &(x * x));
            assert_eq!(v, &want);
        }
    }

    #[test]
    fn small_grid_rejected() {
        let f = RuleFamily::new(RuleId::Gs2, ParamMap::new()).unwrap();
        assert_eq!(bound_scan(&f, 0, 2), Err(Error::GridTooSmall(2)));
    }

    #[test]
    fn spikes() {
        let v: Vec<f64> = (0..21).map(|i| ((i as f64) - 7.0).abs() + 0.001 * (i * i) as f64).collect();
        assert_eq!(spike_candidates(&v), vec![7]);
        let bent: Vec<f64> = (0..21).map(|i| if i < 10 { ((i * i * i) as f64) * 1e-3 } else { i as f64 }).collect();
        assert!(!spike_candidates(&bent).contains(&3));
        let smooth: Vec<f64> = (0..21).map(|i| (i * i) as f64).collect();
        assert!(spike_candidates(&smooth).is_empty());
    }
}
