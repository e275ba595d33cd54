//! Two-tier scalars: exact rationals, and fixed-point balls that enclose a real
//! number together with a conservative error radius.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;

/// Working precision used for balls unless a caller asks for more.
/// 256 fractional bits is a little over 77 decimal digits.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// A closed ball `[(mant - rad) / 2^prec, (mant + rad) / 2^prec]`.
///
/// The midpoint is a dyadic rational with `prec` fractional bits and the
/// radius is counted in units of the last place. Every operation rounds the
/// midpoint to nearest and widens the radius so that the ball still contains
/// the exact result of the operation applied to any points of the inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    mant: BigInt,
    rad: BigUint,
    prec: u32,
}

fn pow2(bits: u32) -> BigUint {
    BigUint::one() << bits as usize
}

/// `round(x / 2^d)` and whether the division was inexact.
fn round_shift(x: &BigInt, d: u32) -> (BigInt, bool) {
    if d == 0 {
        return (x.clone(), false);
    }
    let q = x >> d as usize;
    let rem = x - (&q << d as usize);
    if rem.is_zero() {
        return (q, false);
    }
    let twice = rem << 1usize;
    if twice >= BigInt::from(pow2(d)) {
        (q + 1, true)
    } else {
        (q, true)
    }
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn ceil_shift(x: &BigUint, d: u32) -> BigUint {
    ceil_div(x, &pow2(d))
}

impl Ball {
    /// Encloses the rational `q`; the radius is zero when `q` is dyadic at `prec`.
    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let scaled = q.numer() << prec as usize;
        let (quot, rem) = scaled.div_mod_floor(q.denom());
        if rem.is_zero() {
            return Ball { mant: quot, rad: BigUint::zero(), prec };
        }
        let twice: BigInt = rem << 1usize;
        let mant = if &twice >= q.denom() { quot + 1 } else { quot };
        Ball { mant, rad: BigUint::one(), prec }
    }

    /// Ball with the given rational midpoint and at least the given radius.
    pub fn with_radius(mid: &BigRational, radius: &BigRational, prec: u32) -> Ball {
        let mut b = Ball::from_rational(mid, prec);
        b.rad += rational_to_ulps_ceil(radius, prec);
        b
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::from(pow2(self.prec)))
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(BigInt::from(self.rad.clone()), BigInt::from(pow2(self.prec)))
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(
            &self.mant - BigInt::from(self.rad.clone()),
            BigInt::from(pow2(self.prec)),
        )
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(
            &self.mant + BigInt::from(self.rad.clone()),
            BigInt::from(pow2(self.prec)),
        )
    }

    pub fn contains_zero(&self) -> bool {
        self.mant.magnitude() <= &self.rad
    }

    /// Sign of every point in the ball, or `None` when the ball straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.contains_zero() {
            None
        } else if self.mant.is_positive() {
            Some(Ordering::Greater)
        } else {
            Some(Ordering::Less)
        }
    }

    fn at_precision(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let d = (prec - self.prec) as usize;
                Ball { mant: &self.mant << d, rad: &self.rad << d, prec }
            }
            Ordering::Less => {
                let d = self.prec - prec;
                let (mant, inexact) = round_shift(&self.mant, d);
                let mut rad = ceil_shift(&self.rad, d);
                if inexact {
                    rad += 1u32;
                }
                Ball { mant, rad, prec }
            }
        }
    }

    fn aligned(a: &Ball, b: &Ball) -> (Ball, Ball) {
        let prec = a.prec.max(b.prec);
        (a.at_precision(prec), b.at_precision(prec))
    }

    fn add(&self, other: &Ball) -> Ball {
        let (a, b) = Ball::aligned(self, other);
        Ball { mant: a.mant + b.mant, rad: a.rad + b.rad, prec: a.prec }
    }

    fn neg(&self) -> Ball {
        Ball { mant: -&self.mant, rad: self.rad.clone(), prec: self.prec }
    }

    fn mul(&self, other: &Ball) -> Ball {
        let (a, b) = Ball::aligned(self, other);
        let p = a.prec;
        let (mant, inexact) = round_shift(&(&a.mant * &b.mant), p);
        let spread = a.mant.magnitude() * &b.rad + b.mant.magnitude() * &a.rad + &a.rad * &b.rad;
        let mut rad = ceil_shift(&spread, p);
        if inexact {
            rad += 1u32;
        }
        Ball { mant, rad, prec: p }
    }

    fn div(&self, other: &Ball) -> Result<Ball, NumericError> {
        let (a, b) = Ball::aligned(self, other);
        if b.contains_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let p = a.prec;
        let q = BigRational::new(&a.mant << p as usize, b.mant.clone());
        let rounded = q.round();
        let inexact = rounded != q;
        let mant = rounded.to_integer();
        let bm = b.mant.magnitude();
        let num = (&a.rad * bm + a.mant.magnitude() * &b.rad) << p as usize;
        let den = bm * (bm - &b.rad);
        let mut rad = ceil_div(&num, &den);
        if inexact {
            rad += 1u32;
        }
        Ok(Ball { mant, rad, prec: p })
    }

    fn sqrt(&self) -> Result<Ball, NumericError> {
        if self.mant.sign() == Sign::Minus && !self.contains_zero() {
            return Err(NumericError::NegativeSqrt);
        }
        let p = self.prec as usize;
        let m = self.mant.magnitude();
        if self.rad.is_zero() {
            let s = (m << p).sqrt();
            return Ok(Ball { mant: BigInt::from(s), rad: BigUint::one(), prec: self.prec });
        }
        if m <= &self.rad {
            return Err(NumericError::AmbiguousSign);
        }
        let s = (m << p).sqrt();
        let floor_low = ((m - &self.rad) << p).sqrt();
        if floor_low.is_zero() {
            return Err(NumericError::AmbiguousSign);
        }
        let rad = ceil_div(&(&self.rad << p), &floor_low) + 1u32;
        Ok(Ball { mant: BigInt::from(s), rad, prec: self.prec })
    }

    fn abs(&self) -> Ball {
        if !self.contains_zero() {
            return Ball { mant: BigInt::from(self.mant.magnitude().clone()), ..self.clone() };
        }
        // [0, |mant| + rad], recentred.
        let hi = self.mant.magnitude() + &self.rad;
        let mant = BigInt::from(&hi >> 1usize);
        let rad = ceil_div(&hi, &BigUint::from(2u32));
        Ball { mant, rad, prec: self.prec }
    }

    fn widen(&self, extra: &BigRational) -> Ball {
        let mut b = self.clone();
        b.rad += rational_to_ulps_ceil(extra, self.prec);
        b
    }
}

fn rational_to_ulps_ceil(q: &BigRational, prec: u32) -> BigUint {
    let q = q.abs();
    let num = q.numer().magnitude() << prec as usize;
    ceil_div(&num, q.denom().magnitude())
}

/// The numeric currency of the library.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Real(Ball),
}

/// Outcome of testing a scalar against zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    /// Treated as nonzero, but too close to zero to be sure.
    Ambiguous,
}

/// Balls narrower than this that contain zero count as zero.
pub fn zero_width_threshold() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30))
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n / d`. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar::Rational(q)
    }

    /// The exact binary value of a finite double, as a rational.
    pub fn from_f64_exact(v: f64) -> Result<Scalar, NumericError> {
        BigRational::from_float(v).map(Scalar::Rational).ok_or(NumericError::NonFinite)
    }

    /// A ball around a double that carries one ulp of relative uncertainty,
    /// for values produced by ordinary floating-point code.
    pub fn from_f64_approx(v: f64) -> Result<Scalar, NumericError> {
        let mid = BigRational::from_float(v).ok_or(NumericError::NonFinite)?;
        let ulp = BigRational::from_float(v.abs() * f64::EPSILON + f64::MIN_POSITIVE)
            .ok_or(NumericError::NonFinite)?;
        Ok(Scalar::Real(Ball::with_radius(&mid, &ulp, DEFAULT_PRECISION_BITS)))
    }

    pub fn ball(mid: &BigRational, radius: &BigRational) -> Scalar {
        Scalar::Real(Ball::with_radius(mid, radius, DEFAULT_PRECISION_BITS))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Real(_) => None,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Real(b) => Some(b.prec),
        }
    }

    /// Exactly zero: a zero rational, or a ball that is the single point 0.
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Real(b) => b.mant.is_zero() && b.rad.is_zero(),
        }
    }

    pub fn midpoint(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Real(b) => b.midpoint(),
        }
    }

    pub fn radius(&self) -> BigRational {
        match self {
            Scalar::Rational(_) => BigRational::zero(),
            Scalar::Real(b) => b.radius(),
        }
    }

    pub fn lower(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Real(b) => b.lower(),
        }
    }

    pub fn upper(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Real(b) => b.upper(),
        }
    }

    /// Upper bound on `|self|`.
    pub fn abs_upper(&self) -> BigRational {
        let lo = self.lower().abs();
        let hi = self.upper().abs();
        if lo > hi {
            lo
        } else {
            hi
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Real(b) => b.contains_zero(),
        }
    }

    /// Certain sign, `None` for balls that straddle zero.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Rational(q) => Some(q.cmp(&BigRational::zero())),
            Scalar::Real(b) => {
                if b.contains_zero() && b.mant.is_zero() && b.rad.is_zero() {
                    Some(Ordering::Equal)
                } else {
                    b.sign()
                }
            }
        }
    }

    pub fn zero_test(&self) -> ZeroTest {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    ZeroTest::Zero
                } else {
                    ZeroTest::NonZero
                }
            }
            Scalar::Real(b) => {
                let width = b.radius() * BigRational::from_integer(BigInt::from(2));
                if b.contains_zero() {
                    if width < zero_width_threshold() {
                        ZeroTest::Zero
                    } else {
                        ZeroTest::Ambiguous
                    }
                } else if BigInt::from(b.mant.magnitude().clone())
                    < BigInt::from(&b.rad * 10u32)
                {
                    ZeroTest::Ambiguous
                } else {
                    ZeroTest::NonZero
                }
            }
        }
    }

    /// Total order on midpoints, used for sorting and for optimisation.
    pub fn cmp_mid(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            _ => self.midpoint().cmp(&other.midpoint()),
        }
    }

    pub fn definitely_lt(&self, other: &Scalar) -> bool {
        self.upper() < other.lower()
    }

    pub fn definitely_le(&self, other: &Scalar) -> bool {
        self.upper() <= other.lower()
    }

    /// The two enclosures share at least one point.
    pub fn overlaps(&self, other: &Scalar) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    fn to_ball(&self, prec: u32) -> Ball {
        match self {
            Scalar::Rational(q) => Ball::from_rational(q, prec),
            Scalar::Real(b) => b.at_precision(prec.max(b.prec)),
        }
    }

    fn ball_pair(a: &Scalar, b: &Scalar) -> (Ball, Ball) {
        let prec = a.precision().into_iter().chain(b.precision()).max().unwrap_or(DEFAULT_PRECISION_BITS);
        (a.to_ball(prec), b.to_ball(prec))
    }

    /// Converts to a ball even if exact.
    pub fn to_real(&self) -> Scalar {
        Scalar::Real(self.to_ball(self.precision().unwrap_or(DEFAULT_PRECISION_BITS)))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                if b.is_zero() {
                    Err(NumericError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a / b))
                }
            }
            _ => {
                let (a, b) = Scalar::ball_pair(self, other);
                Ok(Scalar::Real(a.div(&b)?))
            }
        }
    }

    pub fn recip(&self) -> Result<Scalar, NumericError> {
        Scalar::one().checked_div(self)
    }

    /// Square root at the default working precision.
    pub fn sqrt(&self) -> Result<Scalar, NumericError> {
        self.sqrt_with_precision(self.precision().unwrap_or(DEFAULT_PRECISION_BITS))
    }

    /// Square root; perfect rational squares stay exact, everything else becomes
    /// a ball whose radius is at most one ulp (for exact inputs) at `prec` bits.
    pub fn sqrt_with_precision(&self, prec: u32) -> Result<Scalar, NumericError> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return Err(NumericError::NegativeSqrt);
                }
                let n = q.numer().magnitude();
                let d = q.denom().magnitude();
                let (sn, sd) = (n.sqrt(), d.sqrt());
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    return Ok(Scalar::Rational(BigRational::new(BigInt::from(sn), BigInt::from(sd))));
                }
                let scaled = (n << (2 * prec as usize)) / d;
                let s = scaled.sqrt();
                Ok(Scalar::Real(Ball { mant: BigInt::from(s), rad: BigUint::one(), prec }))
            }
            Scalar::Real(b) => Ok(Scalar::Real(b.at_precision(prec.max(b.prec)).sqrt()?)),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            Scalar::Real(b) => Scalar::Real(b.abs()),
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Adds `extra` to the uncertainty radius, turning exact values into balls.
    pub fn widen(&self, extra: &BigRational) -> Scalar {
        if extra.is_zero() {
            return self.clone();
        }
        let prec = self.precision().unwrap_or(DEFAULT_PRECISION_BITS);
        Scalar::Real(self.to_ball(prec).widen(extra))
    }

    /// Parses `p/q`, integers, decimals with optional exponent, and the ball
    /// form `mid±rad` produced by [`Scalar::to_string`].
    pub fn parse_literal(s: &str) -> Result<Scalar, NumericError> {
        let s = s.trim();
        if let Some((mid, rad)) = s.split_once('±') {
            let mid = parse_rational_literal(mid)?;
            let rad = parse_rational_literal(rad)?;
            return Ok(Scalar::ball(&mid, &rad));
        }
        parse_rational_literal(s).map(Scalar::Rational)
    }

    /// Decimal rendering with `digits` significant digits (midpoint only).
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.midpoint(), digits)
    }
}

fn parse_rational_literal(s: &str) -> Result<BigRational, NumericError> {
    let s = s.trim();
    let bad = || NumericError::Parse(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let q = if scale >= 0 {
        BigRational::from_integer(numer * ten.pow(scale as u32))
    } else {
        BigRational::new(numer, ten.pow((-scale) as u32))
    };
    Ok(q)
}

/// Round-to-nearest decimal with `digits` significant digits. Plain notation
/// for moderate magnitudes, scientific otherwise.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    format_with(q, digits, false)
}

/// Like [`format_decimal`] but rounds the magnitude up, so a printed radius
/// never understates the true one.
fn format_decimal_up(q: &BigRational, digits: usize) -> String {
    format_with(q, digits, true)
}

fn format_with(q: &BigRational, digits: usize, round_up: bool) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            ten.pow(k as i32)
        } else {
            BigRational::one() / ten.pow((-k) as i32)
        }
    };
    // 10^e <= a < 10^(e+1)
    let mut e: i64 = a
        .to_f64()
        .filter(|v| *v > 0.0 && v.is_finite())
        .map(|v| v.log10().floor() as i64)
        .unwrap_or(0);
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let exact = &a * pow10(shift);
    let mut scaled = if round_up { exact.ceil() } else { exact.round() }.to_integer();
    let limit = BigInt::from(10u32).pow(digits as u32);
    if scaled >= limit {
        scaled = if round_up { (scaled + 9) / 10 } else { scaled / 10 };
        e += 1;
    }
    let s = scaled.to_string();
    let body = if (-5..15).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= s.len() {
                format!("{s}{}", "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else if s.len() > 1 {
        format!("{}.{}e{}", &s[..1], &s[1..], e)
    } else {
        format!("{s}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Scalar {
    /// Rationals as `p/q` (or `p`), balls as `mid±rad` with enough midpoint
    /// digits to cover the working precision.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Real(b) => {
                let digits = (b.prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 3;
                let mid = format_decimal(&b.midpoint(), digits);
                // radius rounded up, plus the midpoint's decimal rounding
                let ten = BigRational::from_integer(BigInt::from(10));
                let mag = b.midpoint().abs().to_f64().unwrap_or(0.0);
                let e = if mag > 0.0 { mag.log10().floor() as i64 } else { 0 };
                let k = digits as i64 - 1 - e;
                let half_unit = if k >= 0 {
                    BigRational::new(BigInt::one(), BigInt::from(2)) / ten.pow(k as i32)
                } else {
                    BigRational::new(BigInt::one(), BigInt::from(2)) * ten.pow((-k) as i32)
                };
                let total = b.radius() + half_unit;
                write!(f, "{}±{}", mid, format_decimal_up(&total, 3))
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_scalar(s)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $ball:expr) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    _ => {
                        let (a, b) = Scalar::ball_pair(self, rhs);
                        Scalar::Real($ball(&a, &b))
                    }
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: &Ball, b: &Ball| a.add(b));
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: &Ball, b: &Ball| a.add(&b.neg()));
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: &Ball, b: &Ball| a.mul(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Real(b) => Scalar::Real(b.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
