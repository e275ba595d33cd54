//! Peano kernels `K_r` of a rule and their `L^1` norms `M_r = ∫|K_r|`.

mod export;
mod piecewise;

pub use export::{kernel_csv, kernel_json, uniform_grid};
pub use piecewise::{AbsIntegral, PiecewisePolynomial};

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactness::{degree_of_exactness, remainder_on_polynomial, ExactnessReport, DEFAULT_K_MAX};
use crate::numeric::{default_root_tolerance, ten_pow_neg, Polynomial, Root, RootList, Scalar, ZeroTest};
use crate::rules::{map_rule_to_interval, MappedRule, Node, QuadRule};

/// Default certification tolerance for `M_r`.
pub fn default_norm_tolerance() -> Scalar {
    Scalar::from_rational(ten_pow_neg(14))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub order: usize,
    pub kernel: PiecewisePolynomial,
    pub l1_norm: Scalar,
    /// Certified uncertainty of `l1_norm`.
    pub radius: BigRational,
    /// `∫ K_r`
    pub integral: Scalar,
    /// Interior roots of odd multiplicity, where `K_r` changes sign inside a piece.
    pub sign_changes: RootList,
    /// One flag per interior breakpoint.
    pub continuity: Vec<bool>,
    /// Number of distinct interior roots in each piece.
    pub signature: Vec<usize>,
}

impl KernelReport {
    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64().unwrap_or(f64::INFINITY)
    }
}

fn same_point(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.overlaps(b)
    }
}

fn factorial(r: usize) -> Scalar {
    (1..=r as i64).fold(Scalar::one(), |acc, k| &acc * &Scalar::from_int(k))
}

/// Returns the exactness report after checking `r <= d`.
pub fn check_order(rule: &QuadRule, r: usize) -> Result<ExactnessReport> {
    let rep = degree_of_exactness(rule, DEFAULT_K_MAX.max(r));
    if (r as i64) > rep.degree {
        return Err(Error::OrderExceedsExactness { order: r, degree: rep.degree });
    }
    Ok(rep)
}

/// Kernel of the functional `∫_a^b f - Σ A f(x) - Σ B f'(y)`.
fn assemble(a: &Scalar, b: &Scalar, values: &[Node], derivs: &[Node], r: usize) -> Result<PiecewisePolynomial> {
    let mut points: Vec<Scalar> = vec![a.clone(), b.clone()];
    points.extend(values.iter().chain(derivs).map(|n| n.at.clone()));
    points.sort_by(|x, y| x.cmp_mid(y));
    let mut breaks: Vec<Scalar> = Vec::new();
    for p in points {
        match breaks.last() {
            Some(last) if same_point(last, &p) => {}
            _ => breaks.push(p),
        }
    }
    let slot = |x: &Scalar| breaks.iter().position(|b| same_point(b, x)).expect("node is a breakpoint");
    let value_slots: Vec<usize> = values.iter().map(|n| slot(&n.at)).collect();
    let deriv_slots: Vec<usize> = derivs.iter().map(|n| slot(&n.at)).collect();

    let t = Polynomial::monomial(1);
    // (c - t) as a polynomial in t
    let from = |c: &Scalar| &Polynomial::constant(c.clone()) - &t;
    let scale = factorial(r).recip()?;
    let rr = r as u32;

    let mut base = from(b).pow(rr + 1).scale(&Scalar::ratio(1, r as i64 + 1));
    base = base.scale(&scale);
    let mut pieces = Vec::with_capacity(breaks.len() - 1);
    for i in 0..breaks.len() - 1 {
        let mut p = base.clone();
        for (n, &j) in values.iter().zip(&value_slots) {
            if j > i {
                p = &p - &from(&n.at).pow(rr).scale(&(&n.weight * &scale));
            }
        }
        if r > 0 {
            let rs = &Scalar::from_int(r as i64) * &scale;
            for (n, &j) in derivs.iter().zip(&deriv_slots) {
                if j > i {
                    p = &p - &from(&n.at).pow(rr - 1).scale(&(&n.weight * &rs));
                }
            }
        }
        pieces.push(p);
    }
    PiecewisePolynomial::new(breaks, pieces)
}

pub fn build_kernel(rule: &QuadRule, r: usize) -> Result<PiecewisePolynomial> {
    check_order(rule, r)?;
    assemble(&Scalar::from_int(-1), &Scalar::one(), rule.value_nodes(), rule.deriv_nodes(), r)
}

/// Kernel of the rule transported to `[a, b]`.
pub fn build_kernel_on(rule: &QuadRule, r: usize, a: &Scalar, b: &Scalar) -> Result<PiecewisePolynomial> {
    check_order(rule, r)?;
    let m: MappedRule = map_rule_to_interval(rule, a, b)?;
    assemble(&m.a, &m.b, &m.value_nodes, &m.deriv_nodes, r)
}

/// Certified `M_r` of an already assembled kernel.
pub fn analyze_kernel(kernel: PiecewisePolynomial, r: usize, tol: &Scalar) -> Result<KernelReport> {
    if tol.sign() != Some(Ordering::Greater) {
        return Err(Error::NonPositive("tol"));
    }
    let abs = kernel.abs_integral(&default_root_tolerance())?;
    if abs.radius > tol.lower() {
        return Err(Error::NotCertified {
            radius: abs.radius.to_f64().unwrap_or(f64::INFINITY),
            tol: tol.to_f64(),
        });
    }
    let mut changes: Vec<Root> = Vec::new();
    let mut signature = Vec::with_capacity(abs.roots.len());
    let mut delta = BigRational::default();
    for list in &abs.roots {
        signature.push(list.len());
        changes.extend(list.roots.iter().filter(|r| r.multiplicity % 2 == 1).cloned());
        if list.coefficient_radius > delta {
            delta = list.coefficient_radius.clone();
        }
    }
    let continuity =
        kernel.one_sided_values().iter().map(|(l, rgt)| (l - rgt).zero_test() == ZeroTest::Zero).collect();
    Ok(KernelReport {
        order: r,
        integral: kernel.integral(),
        kernel,
        l1_norm: abs.value,
        radius: abs.radius,
        sign_changes: RootList { roots: changes, coefficient_radius: delta },
        continuity,
        signature,
    })
}

/// `K_r` together with `M_r = ∫_{-1}^{1} |K_r|`, certified to `tol`.
pub fn kernel_l1_norm(rule: &QuadRule, r: usize, tol: &Scalar) -> Result<KernelReport> {
    analyze_kernel(build_kernel(rule, r)?, r, tol)
}

/// Both sides of `I(f) - Q(f) = ∫ K_r f^{(r+1)}`.
pub fn verify_peano_identity(rule: &QuadRule, r: usize, f: &Polynomial) -> Result<(Scalar, Scalar)> {
    let kernel = build_kernel(rule, r)?;
    let lhs = remainder_on_polynomial(rule, f);
    let rhs = kernel.integral_against(&f.nth_derivative(r + 1));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{make_rule, ParamMap, RuleId};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn rule(id: RuleId, params: &[(&str, Scalar)]) -> QuadRule {
        let map: ParamMap = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        make_rule(id, &map).unwrap()
    }

    fn poly(c: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn tol() -> Scalar {
        default_norm_tolerance()
    }

    #[test]
    fn ostrowski_zero_kernel() {
        let x = q(1, 3);
        let k = build_kernel(&rule(RuleId::Ostrowski, &[("x", x.clone())]), 0).unwrap();
        assert_eq!(k.breakpoints(), &[q(-1, 1), x, q(1, 1)]);
        assert_eq!(k.pieces()[0], Polynomial::from_ints(&[-1, -1]));
        assert_eq!(k.pieces()[1], Polynomial::from_ints(&[1, -1]));
    }

    #[test]
    fn simpson_cubic_kernel() {
        let k = build_kernel(&rule(RuleId::Simpson, &[]), 3).unwrap();
        // (1/72)(1+t)^3(3t-1) and -(1/72)(1-t)^3(3t+1)
        let left = (&Polynomial::from_ints(&[1, 1]).pow(3) * &Polynomial::from_ints(&[-1, 3])).scale(&q(1, 72));
        let right = (&Polynomial::from_ints(&[1, -1]).pow(3) * &Polynomial::from_ints(&[1, 3])).scale(&q(-1, 72));
        assert_eq!(k.pieces(), &[left, right]);
    }

    #[test]
    fn liu_park_gauss_middle_piece() {
        let k = build_kernel(&rule(RuleId::LiuParkGauss, &[]), 3).unwrap();
        let mid = &k.pieces()[1];
        let s3 = q(3, 1).sqrt().unwrap();
        let c0 = &(&(&q(4, 1) * &s3) - &q(9, 1)) * &q(1, 216);
        let expected = [c0, q(0, 1), q(0, 1), q(0, 1), q(9, 216)];
        for (i, e) in expected.iter().enumerate() {
            assert!(mid.coeff(i).overlaps(e), "coefficient {i}: {} vs {}", mid.coeff(i), e);
        }
    }

    #[test]
    fn order_guard() {
        let r = rule(RuleId::Simpson, &[]);
        assert_eq!(build_kernel(&r, 4), Err(Error::OrderExceedsExactness { order: 4, degree: 3 }));
    }

    #[test]
    fn simpson_constants() {
        let r = rule(RuleId::Simpson, &[]);
        let expect = [q(5, 9), q(8, 81), q(1, 36), q(1, 90)];
        for (k, e) in expect.iter().enumerate() {
            let rep = kernel_l1_norm(&r, k, &tol()).unwrap();
            assert_eq!(&rep.l1_norm, e, "M_{k}");
        }
    }

    #[test]
    fn gauss_legendre_constants() {
        let r = rule(RuleId::GaussLegendre2, &[]);
        let m2 = kernel_l1_norm(&r, 2, &tol()).unwrap();
        let m3 = kernel_l1_norm(&r, 3, &tol()).unwrap();
        let want = (9.0 - 4.0 * 3f64.sqrt()) / 108.0;
        assert!((m2.l1_norm.to_f64() - want).abs() < 1e-15);
        assert!((m3.l1_norm.to_f64() - 1.0 / 135.0).abs() < 1e-15);
        assert!(m3.radius_f64() < 1e-13);
    }

    #[test]
    fn continuity_flags() {
        let r = rule(RuleId::Simpson, &[]);
        let rep = kernel_l1_norm(&r, 0, &tol()).unwrap();
        assert_eq!(rep.continuity, vec![false]);
        let rep = kernel_l1_norm(&r, 1, &tol()).unwrap();
        assert_eq!(rep.continuity, vec![true]);
    }

    #[test]
    fn peano_identity_examples() {
        let s = rule(RuleId::Simpson, &[]);
        let (lhs, rhs) = verify_peano_identity(&s, 3, &Polynomial::monomial(4)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, q(-4, 15));

        let o = rule(RuleId::Ostrowski, &[("x", q(0, 1))]);
        let (lhs, rhs) = verify_peano_identity(&o, 1, &Polynomial::monomial(2)).unwrap();
        assert_eq!(lhs, q(2, 3));
        assert_eq!(rhs, q(2, 3));

        let (lhs, rhs) = verify_peano_identity(&s, 2, &poly(&[(1, 2), (-3, 1), (5, 7)])).unwrap();
        assert_eq!(lhs, q(0, 1));
        assert_eq!(rhs, q(0, 1));
    }

    #[test]
    fn mapped_kernel_scales() {
        let s = rule(RuleId::Simpson, &[]);
        let k = build_kernel_on(&s, 3, &q(0, 1), &q(1, 1)).unwrap();
        let rep = analyze_kernel(k, 3, &tol()).unwrap();
        assert_eq!(rep.l1_norm, &q(1, 90) * &q(1, 32));
    }

    #[test]
    fn signature_counts_roots() {
        let g = rule(RuleId::Gs2, &[("x", q(1, 2))]);
        let rep = kernel_l1_norm(&g, 0, &tol()).unwrap();
        // K_0 = -1-t, -t, 1-t: one root in the middle piece only
        assert_eq!(rep.signature, vec![0, 1, 0]);
        assert_eq!(rep.sign_changes.len(), 1);
    }
}
