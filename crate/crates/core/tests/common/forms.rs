//! Hand-derived closed forms of `M_r(x)` for the parametric families.

use super::*;
use peanoq_core::numeric::Scalar;
use peanoq_core::rules::RuleId;

pub enum Oracle {
    Exact(Box<dyn Fn(&Q) -> Q>),
    Float(fn(f64) -> f64),
}

pub struct Branch {
    pub points: [(i64, i64); 5],
    pub oracle: Oracle,
}

pub struct FormCase {
    pub label: &'static str,
    pub id: RuleId,
    pub fixed: Vec<(&'static str, Scalar)>,
    pub r: usize,
    pub branches: Vec<Branch>,
}

fn exact(points: [(i64, i64); 5], f: impl Fn(&Q) -> Q + 'static) -> Branch {
    Branch { points, oracle: Oracle::Exact(Box::new(f)) }
}

fn float(points: [(i64, i64); 5], f: fn(f64) -> f64) -> Branch {
    Branch { points, oracle: Oracle::Float(f) }
}

fn case(label: &'static str, id: RuleId, fixed: &[(&'static str, Scalar)], r: usize, branches: Vec<Branch>) -> FormCase {
    FormCase { label, id, fixed: fixed.to_vec(), r, branches }
}

/// Number of points checked, or the first disagreement.
pub fn check(c: &FormCase) -> Result<usize, String> {
    let mut count = 0;
    for b in &c.branches {
        for &(n, d) in &b.points {
            let mut p = c.fixed.clone();
            p.push(("x", s(n, d)));
            let got = m(&rule(c.id, &p), c.r);
            match &b.oracle {
                Oracle::Exact(f) => {
                    let want = Scalar::from_rational(f(&q(n, d)));
                    if got != want {
                        return Err(format!("{} x={n}/{d}: {got} vs {want}", c.label));
                    }
                }
                Oracle::Float(f) => {
                    let want = f(n as f64 / d as f64);
                    if (got.to_f64() - want).abs() >= 1e-12 {
                        return Err(format!("{} x={n}/{d}: {} vs {want}", c.label, got.to_decimal(17)));
                    }
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

fn one() -> Q {
    q(1, 1)
}

const MOD3_LOW: [(i64, i64); 5] = [(0, 1), (1, 20), (1, 10), (1, 5), (3, 10)];
const MOD3_HIGH: [(i64, i64); 5] = [(1, 3), (2, 5), (1, 2), (3, 4), (19, 20)];

fn mod3_m0_low(x: &Q) -> Q {
    let x2 = x * x;
    let num = q(9, 1) * x2.pow(3) + q(3, 1) * x2.pow(2) - &x2 + q(5, 1);
    num / (q(9, 1) * (one() - x2).pow(2))
}

fn mod3_m0_high(x: &Q) -> Q {
    let num = (q(3, 1) * x * x + q(3, 1) * x + q(2, 1)).pow(2);
    num / (q(9, 1) * (one() + x).pow(2))
}

fn mod3_m1_low(x: &Q) -> Q {
    let x2 = x * x;
    q(8, 1) * (one() - q(3, 1) * &x2) * (q(3, 1) * &x2 + one()).pow(2) / (q(81, 1) * (one() - x2).pow(3))
}

fn mod3_m1_high(x: &Q) -> Q {
    q(4, 1) * (q(3, 1) * x + one()).pow(3) / (q(81, 1) * (one() + x).pow(3))
}

fn mod3_m2_low(x: &Q) -> Q {
    let c = [1, -4, 22, -60, 49, 8];
    let mut num = q(0, 1);
    for (k, ck) in c.iter().enumerate() {
        num += q(*ck, 1) * x.pow(k as i32);
    }
    num / (q(36, 1) * (one() - x).pow(4))
}

fn alomari4_m0(ln: i64, ld: i64) -> FormCase {
    // branch point at x = 1 - lambda
    let hi = ld - ln;
    let low = [(0, 1), (hi, 4 * ld), (hi, 2 * ld), (3 * hi, 4 * ld), (hi, ld)];
    let high = [(4 * hi + ld, 5 * ld), (3 * hi + ld, 4 * ld), (hi + ld, 2 * ld), (hi + 3 * ld, 4 * ld), (1, 1)];
    let (l, l2) = (q(ln, ld), q(ln, ld));
    case(
        "alomari4 M_0",
        RuleId::Alomari4,
        &[("lambda", s(ln, ld))],
        0,
        vec![
            exact(low, move |x| &l * &l + x * x + (one() - &l - x).pow(2)),
            exact(high, move |x| q(2, 1) * x * (one() - &l2) + q(2, 1) * &l2 - one()),
        ],
    )
}

fn alomari4_m1_large(ln: i64, ld: i64) -> FormCase {
    let l = q(ln, ld);
    case(
        "alomari4 M_1 (lambda >= 1/2)",
        RuleId::Alomari4,
        &[("lambda", s(ln, ld))],
        1,
        vec![exact([(0, 1), (1, 4), (1, 2), (2, 3), (1, 1)], move |x| (one() - &l) * x * x + &l - q(1, 3))],
    )
}

pub fn all() -> Vec<FormCase> {
    use RuleId::*;
    let mp3_pts = [(-1, 1), (-2, 5), (0, 1), (3, 7), (1, 1)];
    let lam_sq = |l: &Q| l * l + (one() - l) * (one() - l);
    let (d3, d5) = (lam_sq(&q(1, 3)), lam_sq(&q(1, 5)));
    let gs_all = [(0, 1), (1, 5), (1, 2), (3, 4), (1, 1)];
    let fr_neg = [(-9, 10), (-1, 2), (-1, 3), (-1, 10), (0, 1)];
    let fr_pos = [(1, 10), (1, 3), (1, 2), (4, 5), (1, 1)];
    vec![
        case("ostrowski M_0", Ostrowski, &[], 0, vec![exact([(-9, 10), (-1, 3), (0, 1), (1, 2), (7, 8)], |x| one() + x * x)]),
        case("mp3 M_0", Mp3, &[], 0, vec![exact(mp3_pts, |x| (one() + x * x) / q(2, 1))]),
        case("mp3 M_1", Mp3, &[], 1, vec![exact(mp3_pts, |x| (one() + q(3, 1) * x * x) / q(6, 1))]),
        case("mod3_opt M_0", Mod3Opt, &[], 0, vec![exact(MOD3_LOW, mod3_m0_low), exact(MOD3_HIGH, mod3_m0_high)]),
        case("mod3_opt M_1", Mod3Opt, &[], 1, vec![exact(MOD3_LOW, mod3_m1_low), exact(MOD3_HIGH, mod3_m1_high)]),
        case("mod3_opt M_2", Mod3Opt, &[], 2, vec![exact(MOD3_LOW, mod3_m2_low), exact(MOD3_HIGH, |x| q(2, 9) * x)]),
        // |x| <= 1 - 3 lambda / 2
        case(
            "dcr M_0 (lambda = 1/3)",
            Dcr,
            &[("lambda", s(1, 3))],
            0,
            vec![exact([(-1, 2), (-1, 5), (0, 1), (1, 4), (1, 2)], move |x| &d3 + x * x)],
        ),
        case(
            "dcr M_0 (lambda = 1/5)",
            Dcr,
            &[("lambda", s(1, 5))],
            0,
            vec![exact([(-7, 10), (-1, 3), (0, 1), (1, 8), (3, 5)], move |x| &d5 + x * x)],
        ),
        case("gs2 M_0", Gs2, &[], 0, vec![exact(gs_all, |x| one() - q(2, 1) * x + q(2, 1) * x * x)]),
        case(
            "gs2 M_1",
            Gs2,
            &[],
            1,
            vec![
                exact([(0, 1), (1, 10), (1, 4), (2, 5), (1, 2)], |x| q(1, 3) - x * x),
                float([(51, 100), (3, 5), (2, 3), (4, 5), (1, 1)], |x| {
                    (4.0 * (2.0 * x - 1.0).powf(1.5) + 1.0 - 3.0 * x * x) / 3.0
                }),
                // 2x - 1 a perfect square keeps the second branch rational
                exact([(5, 8), (5, 9), (13, 18), (25, 32), (41, 50)], |x| {
                    let v = x * q(2, 1) - one();
                    let k = [q(1, 2), q(1, 3), q(2, 3), q(3, 4), q(4, 5)]
                        .into_iter()
                        .find(|k| k * k == v)
                        .expect("2x - 1 is a listed square");
                    (q(4, 1) * k.pow(3) + one() - q(3, 1) * x * x) / q(3, 1)
                }),
            ],
        ),
        case(
            "franjic M_0",
            Franjic,
            &[],
            0,
            vec![
                exact(fr_neg, |x| (one() - x) * (one() - x)),
                exact(fr_pos, |x| (one() + x * x).pow(2) / (one() + x).pow(2)),
            ],
        ),
        case(
            "franjic M_1",
            Franjic,
            &[],
            1,
            vec![
                exact(fr_neg, |x| (one() - q(3, 1) * x) / q(3, 1)),
                exact(fr_pos, |x| {
                    let num = one() - q(6, 1) * x.pow(2) + q(24, 1) * x.pow(3) - q(3, 1) * x.pow(4);
                    num / (q(3, 1) * (x + one()).pow(3))
                }),
            ],
        ),
        alomari4_m0(1, 6),
        alomari4_m0(1, 3),
        alomari4_m0(1, 5),
        alomari4_m1_large(1, 2),
        alomari4_m1_large(3, 4),
        case(
            "alomari4 M_1 (lambda = 1/5)",
            Alomari4,
            &[("lambda", s(1, 5))],
            1,
            vec![
                exact([(1, 100), (1, 10), (1, 4), (1, 3), (3, 8)], |x| q(58, 375) - q(4, 5) * x * x),
                float([(2, 5), (9, 20), (1, 2), (11, 20), (59, 100)], |x| {
                    2.0 / 375.0 * (29.0 - 150.0 * x * x + 10.0 * 5f64.sqrt() * (8.0 * x - 3.0).powf(1.5))
                }),
                exact([(3, 5), (7, 10), (4, 5), (9, 10), (99, 100)], |x| q(2, 15) * (q(6, 1) * x * x - one())),
            ],
        ),
        case(
            "liu_park M_0",
            LiuPark,
            &[],
            0,
            vec![
                exact([(0, 1), (1, 10), (1, 4), (1, 3), (9, 20)], |x| q(1, 2) - x + q(2, 1) * x * x),
                exact([(1, 2), (3, 5), (3, 4), (9, 10), (1, 1)], |x| x.clone()),
            ],
        ),
        case(
            "liu_park M_1",
            LiuPark,
            &[],
            1,
            vec![exact([(0, 1), (1, 5), (1, 2), (3, 4), (1, 1)], |x| {
                (one() - q(3, 1) * x * x + q(4, 1) * x.pow(3)) / q(6, 1)
            })],
        ),
    ]
}
