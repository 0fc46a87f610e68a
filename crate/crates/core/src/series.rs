//! Truncated Laurent series in `t = q^(1/s)` over exact rationals.
//!
//! A [`LaurentSeries`] stores the dense window `[floor, order)` of
//! t-exponents. `order` is a hard contract: nothing at or above it is known,
//! and every operation propagates it pessimistically.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{self, Coeff};
use crate::Rational;

/// A rational exponent of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentQ(Ratio<i64>);

impl ExponentQ {
    pub fn new(numer: i64, denom: i64) -> Self {
        ExponentQ(Ratio::new(numer, denom))
    }

    pub const fn integer(n: i64) -> Self {
        ExponentQ(Ratio::new_raw(n, 1))
    }

    pub const fn zero() -> Self {
        Self::integer(0)
    }

    pub fn value(self) -> Ratio<i64> {
        self.0
    }

    pub fn denom(self) -> u32 {
        *self.0.denom() as u32
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(self) -> bool {
        self.0 > Ratio::zero()
    }

    pub fn is_negative(self) -> bool {
        self.0 < Ratio::zero()
    }

    /// The exponent in units of `t = q^(1/scale)`.
    pub fn to_t(self, scale: u32) -> Result<i64> {
        let v = self.0 * Ratio::from_integer(scale as i64);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Scale(format!(
                "exponent {self} is not integral at scale {scale}"
            )))
        }
    }

    pub fn from_t(t: i64, scale: u32) -> Self {
        ExponentQ::new(t, scale as i64)
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl From<i64> for ExponentQ {
    fn from(n: i64) -> Self {
        ExponentQ::integer(n)
    }
}

impl From<Ratio<i64>> for ExponentQ {
    fn from(r: Ratio<i64>) -> Self {
        ExponentQ(r)
    }
}

impl Add for ExponentQ {
    type Output = ExponentQ;
    fn add(self, o: ExponentQ) -> ExponentQ {
        ExponentQ(self.0 + o.0)
    }
}

impl Sub for ExponentQ {
    type Output = ExponentQ;
    fn sub(self, o: ExponentQ) -> ExponentQ {
        ExponentQ(self.0 - o.0)
    }
}

impl Neg for ExponentQ {
    type Output = ExponentQ;
    fn neg(self) -> ExponentQ {
        ExponentQ(-self.0)
    }
}

impl Mul for ExponentQ {
    type Output = ExponentQ;
    fn mul(self, o: ExponentQ) -> ExponentQ {
        ExponentQ(self.0 * o.0)
    }
}

impl Mul<i64> for ExponentQ {
    type Output = ExponentQ;
    fn mul(self, o: i64) -> ExponentQ {
        ExponentQ(self.0 * o)
    }
}

impl fmt::Display for ExponentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExponentQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational exponent `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(ExponentQ::new(n, d))
            }
            None => Ok(ExponentQ::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for ExponentQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExponentQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => {
                return Err(serde::de::Error::custom(format!(
                    "expected exponent, got {other}"
                )))
            }
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Smallest scale at which all the given exponents are integral.
pub fn scale_for<I: IntoIterator<Item = ExponentQ>>(exps: I) -> u32 {
    exps.into_iter()
        .fold(1u32, |acc, e| acc.lcm(&e.denom()))
}

/// Parses `p/q` or `p` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Mismatch(Mismatch),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// q-exponent of the first differing coefficient.
    pub exponent: ExponentQ,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Floating-point evaluation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealEval {
    pub value: f64,
    /// Magnitude of the last nonzero retained term.
    pub tail: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    scale: u32,
    floor: i64,
    order: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Builds a series from its window coefficients; `order = floor + len`.
    pub fn new(scale: u32, floor: i64, coeffs: Vec<Rational>) -> Result<Self> {
        if scale == 0 {
            return Err(Error::Scale("scale must be positive".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient window".into()));
        }
        let order = floor + coeffs.len() as i64;
        Ok(LaurentSeries {
            scale,
            floor,
            order,
            coeffs,
        })
    }

    pub fn zero(scale: u32, floor: i64, order: i64) -> Self {
        assert!(scale > 0 && order > floor, "empty window [{floor}, {order})");
        LaurentSeries {
            scale,
            floor,
            order,
            coeffs: vec![Rational::zero(); (order - floor) as usize],
        }
    }

    pub fn one(scale: u32, order: i64) -> Self {
        Self::constant(Rational::one(), scale, order)
    }

    pub fn constant(c: Rational, scale: u32, order: i64) -> Self {
        assert!(order > 0, "constant needs a positive order");
        let mut s = Self::zero(scale, 0, order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^e` known to t-order `order`.
    pub fn monomial(c: Rational, e: ExponentQ, scale: u32, order: i64) -> Result<Self> {
        let t = e.to_t(scale)?;
        let floor = t.min(order - 1);
        let mut s = Self::zero(scale, floor, order);
        if t < order {
            s.coeffs[(t - floor) as usize] = c;
        }
        Ok(s)
    }

    /// Integer q-power-series coefficients, scale 1, exact up to `coeffs.len()`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        Self::new(1, 0, v).expect("non-empty")
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Truncation bound as a q-exponent.
    pub fn q_order(&self) -> ExponentQ {
        ExponentQ::from_t(self.order, self.scale)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^e`, or `None` at or above the order.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.order {
            None
        } else if e < self.floor {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.floor) as usize].clone())
        }
    }

    /// Coefficient of `q^e`, or `None` if `q^e` lies beyond the order.
    pub fn q_coeff(&self, e: impl Into<ExponentQ>) -> Option<Rational> {
        let e = e.into();
        let scaled = e.value() * Ratio::from_integer(self.scale as i64);
        if scaled >= Ratio::from_integer(self.order) {
            return None;
        }
        if !scaled.is_integer() {
            return Some(Rational::zero());
        }
        self.coeff(scaled.to_integer())
    }

    /// Integer q-power coefficients `q^0 .. q^(n-1)`; panics past the order.
    pub fn q_coeffs_upto(&self, n: i64) -> Vec<Rational> {
        (0..n)
            .map(|e| self.q_coeff(e).expect("coefficient beyond truncation order"))
            .collect()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.floor + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops leading zero coefficients (the order is unchanged).
    pub fn trimmed(mut self) -> Self {
        if let Some(v) = self.valuation() {
            let skip = (v - self.floor) as usize;
            self.coeffs.drain(..skip);
            self.floor = v;
        }
        self
    }

    /// Lowers the order to `order` (no-op if already lower).
    pub fn truncated(mut self, order: i64) -> Self {
        if order >= self.order {
            return self;
        }
        if order <= self.floor {
            return Self::zero(self.scale, order - 1, order);
        }
        self.coeffs.truncate((order - self.floor) as usize);
        self.order = order;
        self
    }

    /// Truncates to the q-order `order`; errors if not available.
    pub fn to_q_order(self, order: i64) -> Result<Self> {
        let t = order * self.scale as i64;
        if t > self.order {
            return Err(Error::InsufficientOrder {
                requested: order,
                available: Integer::div_floor(&self.order, &(self.scale as i64)),
            });
        }
        Ok(self.truncated(t))
    }

    /// Re-expresses the series at a multiple of its scale.
    pub fn rescaled(&self, scale: u32) -> Result<Self> {
        if scale == self.scale {
            return Ok(self.clone());
        }
        if !scale.is_multiple_of(self.scale) {
            return Err(Error::ScaleMismatch(self.scale, scale));
        }
        let k = (scale / self.scale) as i64;
        let floor = self.floor * k;
        let order = self.order * k;
        let mut coeffs = vec![Rational::zero(); (order - floor) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Ok(LaurentSeries {
            scale,
            floor,
            order,
            coeffs,
        })
    }

    fn aligned(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let s = common_scale(a.scale, b.scale)?;
        Ok((a.rescaled(s)?, b.rescaled(s)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        let (a, b) = Self::aligned(self, other)?;
        let floor = a.floor.min(b.floor);
        let order = a.order.min(b.order);
        if order <= floor {
            return Ok(Self::zero(a.scale, order - 1, order));
        }
        let mut out = Self::zero(a.scale, floor, order);
        for (i, c) in a.coeffs.iter().enumerate() {
            let e = a.floor + i as i64;
            if e < order {
                out.coeffs[(e - floor) as usize] += c;
            }
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let e = b.floor + i as i64;
            if e < order {
                let slot = &mut out.coeffs[(e - floor) as usize];
                if subtract {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled_by(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_one() {
            return out;
        }
        for x in out.coeffs.iter_mut() {
            if !x.is_zero() {
                *x *= c;
            }
        }
        out
    }

    /// Multiplies by the exact monomial `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.floor += k;
        out.order += k;
        out
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::aligned(self, other)?;
        let floor = a.floor + b.floor;
        let order = (a.order + b.floor).min(b.order + a.floor);
        let len = (order - floor) as usize;
        let (an, ad) = kernel::integer_form(&a.coeffs);
        let (bn, bd) = kernel::integer_form(&b.coeffs);
        let prod = kernel::convolve(&an, &bn, len);
        Ok(LaurentSeries {
            scale: a.scale,
            floor,
            order,
            coeffs: kernel::from_integer_form(prod, &(ad * bd)),
        })
    }

    /// Multiplicative inverse of a series with a nonzero lowest term.
    ///
    /// If `self = t^m * u` with `u(0) != 0`, the result has floor `-m` and
    /// order `self.order - 2m`.
    pub fn inverse(&self) -> Result<Self> {
        let m = self
            .valuation()
            .ok_or_else(|| Error::NotInvertible("identically zero window".into()))?;
        let unit = &self.coeffs[(m - self.floor) as usize..];
        let p = unit.len();
        let (nums, d) = kernel::integer_form(unit);
        let lead = nums[0].clone();
        let coeffs = if lead.abs().is_one() {
            let inv = series_inverse_int(&nums, &lead, p);
            // (nums/d)^-1 = d / nums
            inv.into_iter()
                .map(|x| Rational::from_integer(x * &d))
                .collect()
        } else {
            series_inverse(unit, p)
        };
        Ok(LaurentSeries {
            scale: self.scale,
            floor: -m,
            order: -m + p as i64,
            coeffs,
        })
    }

    /// Substitutes `q -> q^m` for a positive rational `m`.
    pub fn substitute_power(&self, m: Ratio<i64>) -> Result<Self> {
        if m <= Ratio::zero() {
            return Err(Error::Scale(format!(
                "substitution power {m} must be positive"
            )));
        }
        let (p, r) = (*m.numer(), *m.denom());
        let sr = self.scale as i64 * r;
        let g = p.gcd(&sr);
        let new_scale = (sr / g) as u32;
        let k = p / g;
        let floor = self.floor * k;
        let order = self.order * k;
        let mut coeffs = vec![Rational::zero(); (order - floor) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Ok(LaurentSeries {
            scale: new_scale,
            floor,
            order,
            coeffs,
        })
    }

    /// Multiplies by an exact polynomial `Σ c q^e` with `e ≥ 0`; the order is kept.
    pub fn mul_polynomial(&self, terms: &[(Rational, ExponentQ)]) -> Result<Self> {
        let scale = terms
            .iter()
            .fold(self.scale, |s, (_, e)| s.lcm(&e.denom()));
        let a = self.rescaled(scale)?;
        let mut out = Self::zero(scale, a.floor, a.order);
        for (c, e) in terms {
            if e.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "polynomial exponent {e} is negative"
                )));
            }
            if c.is_zero() {
                continue;
            }
            let k = e.to_t(scale)? as usize;
            for (i, x) in a.coeffs.iter().enumerate() {
                if i + k >= out.coeffs.len() {
                    break;
                }
                if !x.is_zero() {
                    out.coeffs[i + k] += x * c;
                }
            }
        }
        Ok(out)
    }

    /// Compares all coefficients of `q^e` with `e < q_order`.
    pub fn eq_to_order(&self, other: &Self, q_order: i64) -> Result<Comparison> {
        let (a, b) = Self::aligned(self, other)?;
        let n = q_order * a.scale as i64;
        let avail = a.order.min(b.order);
        if n > avail {
            return Err(Error::InsufficientOrder {
                requested: q_order,
                available: Integer::div_floor(&avail, &(a.scale as i64)),
            });
        }
        let lo = a.floor.min(b.floor);
        for e in lo..n {
            let x = a.coeff(e).expect("below order");
            let y = b.coeff(e).expect("below order");
            if x != y {
                return Ok(Comparison::Mismatch(Mismatch {
                    exponent: ExponentQ::from_t(e, a.scale),
                    lhs: x,
                    rhs: y,
                }));
            }
        }
        Ok(Comparison::Equal)
    }

    /// Compares over the full common window.
    pub fn eq_window(&self, other: &Self) -> Result<Comparison> {
        let s = common_scale(self.scale, other.scale)?;
        let avail = (self.order * (s / self.scale) as i64).min(other.order * (s / other.scale) as i64);
        let (a, b) = (self.rescaled(s)?.truncated(avail), other.rescaled(s)?.truncated(avail));
        let lo = a.floor.min(b.floor);
        for e in lo..avail {
            let x = a.coeff(e).expect("below order");
            let y = b.coeff(e).expect("below order");
            if x != y {
                return Ok(Comparison::Mismatch(Mismatch {
                    exponent: ExponentQ::from_t(e, s),
                    lhs: x,
                    rhs: y,
                }));
            }
        }
        Ok(Comparison::Equal)
    }

    /// Horner evaluation at `q = q0` (`t = q0^(1/s)`).
    pub fn eval_real(&self, q0: f64) -> RealEval {
        let t0 = q0.powf(1.0 / self.scale as f64);
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + c.to_f64().unwrap_or(f64::NAN);
        }
        let value = acc * t0.powi(self.floor as i32);
        let tail = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                c.to_f64().unwrap_or(f64::NAN).abs() * t0.powi((self.floor + i as i64) as i32)
            })
            .unwrap_or(0.0);
        RealEval { value, tail }
    }
}

fn common_scale(a: u32, b: u32) -> Result<u32> {
    if a.is_multiple_of(b) {
        Ok(a)
    } else if b.is_multiple_of(a) {
        Ok(b)
    } else {
        Err(Error::ScaleMismatch(a, b))
    }
}

/// Power-series inverse over integers of `u`, where `u[0] = ±1`.
fn series_inverse_int(u: &[BigInt], lead: &BigInt, p: usize) -> Vec<BigInt> {
    let nz: Vec<(usize, &BigInt)> = u
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let mut b = vec![BigInt::zero(); p];
    b[0] = lead.clone();
    for i in 1..p {
        let mut s = BigInt::zero();
        for &(j, x) in &nz {
            if j > i {
                break;
            }
            if !b[i - j].is_zero() {
                s += x * &b[i - j];
            }
        }
        // b_i = -(1/lead) * s, and 1/lead = lead
        b[i] = -(s * lead);
    }
    b
}

fn series_inverse(u: &[Rational], p: usize) -> Vec<Rational> {
    let inv0 = u[0].recip();
    let mut b = vec![Rational::zero(); p];
    b[0] = inv0.clone();
    for i in 1..p {
        let mut s = Rational::zero();
        for j in 1..=i {
            if !u[j].is_zero() && !b[i - j].is_zero() {
                s.add_ref(&(&u[j] * &b[i - j]));
            }
        }
        b[i] = -(s * &inv0);
    }
    b
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ExponentQ::from_t(self.floor + i as i64, self.scale);
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_const = e == ExponentQ::zero();
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            if !is_const {
                if e == ExponentQ::integer(1) {
                    write!(f, "q")?;
                } else if e.is_integer() {
                    write!(f, "q^{e}")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        let o = self.q_order();
        if o.is_integer() {
            write!(f, " + O(q^{o})")
        } else {
            write!(f, " + O(q^({o}))")
        }
    }
}

/// JSON integer of arbitrary size.
struct JsonInt(BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string()
            .parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected integer, got {n}")))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    scale: u32,
    floor: i64,
    order: i64,
    coeffs: Vec<(JsonInt, JsonInt)>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            scale: self.scale,
            floor: self.floor,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| (JsonInt(c.numer().clone()), JsonInt(c.denom().clone())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SeriesRepr::deserialize(d)?;
        if r.order - r.floor != r.coeffs.len() as i64 {
            return Err(D::Error::custom("coefficient count does not match window"));
        }
        let mut coeffs = Vec::with_capacity(r.coeffs.len());
        for (n, den) in r.coeffs {
            if !den.0.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            coeffs.push(Rational::new(n.0, den.0));
        }
        LaurentSeries::new(r.scale, r.floor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> LaurentSeries {
        LaurentSeries::from_q_coeffs(coeffs)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_polynomials() {
        let s = q(&[1, 1, 0, 0]).checked_add(&q(&[0, 1, -1, 0])).unwrap();
        assert_eq!(s, q(&[1, 2, -1, 0]));
    }

    #[test]
    fn add_zero_takes_min_order() {
        let a = q(&[1, 2, 3, 4, 5]);
        let z = LaurentSeries::zero(1, 0, 3);
        let s = a.checked_add(&z).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeffs(), q(&[1, 2, 3]).coeffs());
    }

    #[test]
    fn add_rescales_half_powers() {
        let half = LaurentSeries::monomial(r(1, 1), ExponentQ::new(1, 2), 2, 8).unwrap();
        let one = LaurentSeries::monomial(r(1, 1), ExponentQ::integer(1), 1, 4).unwrap();
        let s = half.checked_add(&one).unwrap();
        assert_eq!(s.scale(), 2);
        assert_eq!(s.q_coeff(ExponentQ::new(1, 2)), Some(r(1, 1)));
        assert_eq!(s.q_coeff(1), Some(r(1, 1)));
        // monomial evaluation at q = 1/4: 1/2 + 1/4
        assert!((s.eval_real(0.25).value - 0.75).abs() < 1e-15);
    }

    #[test]
    fn incompatible_scales() {
        let a = LaurentSeries::one(2, 4);
        let b = LaurentSeries::one(3, 6);
        assert_eq!(a.checked_add(&b), Err(Error::ScaleMismatch(2, 3)));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn geometric_product() {
        let n = 12;
        let mut geo = vec![1i64; n];
        geo[0] = 1;
        let p = q(&[1, -1]).truncated(2);
        let one_minus_q = LaurentSeries::new(1, 0, vec![r(1, 1), r(-1, 1), r(0, 1), r(0, 1)])
            .unwrap()
            .truncated(4);
        let _ = p;
        let prod = one_minus_q.checked_mul(&q(&geo)).unwrap();
        assert_eq!(prod.order(), 4);
        assert_eq!(prod, q(&[1, 0, 0, 0]));
    }

    #[test]
    fn negative_floor_monomials() {
        let a = LaurentSeries::monomial(r(1, 1), ExponentQ::integer(-2), 1, 10).unwrap();
        let b = LaurentSeries::monomial(r(1, 1), ExponentQ::integer(3), 1, 10).unwrap();
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p.floor(), 1);
        assert_eq!(p.order(), 8);
        assert_eq!(p.trimmed().valuation(), Some(1));
    }

    #[test]
    fn square_of_binomial() {
        let a = q(&[1, 1, 0, 0, 0]);
        assert_eq!(a.checked_mul(&a).unwrap(), q(&[1, 2, 1, 0, 0]));
    }

    #[test]
    fn inverse_geometric() {
        let inv = q(&[1, -1, 0, 0, 0, 0]).inverse().unwrap();
        assert_eq!(inv, q(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn inverse_negative_exponent() {
        // 1 - q^-3 = -q^-3 (1 - q^3)
        let mut c = vec![Rational::zero(); 13];
        c[0] = r(-1, 1);
        c[3] = r(1, 1);
        let a = LaurentSeries::new(1, -3, c).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.floor(), 3);
        for e in 3..inv.order() {
            let expect = if e % 3 == 0 { r(-1, 1) } else { Rational::zero() };
            assert_eq!(inv.coeff(e).unwrap(), expect, "q^{e}");
        }
        let back = a.checked_mul(&inv).unwrap();
        let n = back.order();
        let one = LaurentSeries::one(1, n);
        assert!(back.eq_to_order(&one, n).unwrap().is_equal());
    }

    #[test]
    fn inverse_constant() {
        let inv = LaurentSeries::constant(r(2, 1), 1, 3).inverse().unwrap();
        assert_eq!(inv.coeff(0), Some(r(1, 2)));
        assert!(LaurentSeries::zero(1, 0, 5).inverse().is_err());
    }

    #[test]
    fn substitute() {
        let half = LaurentSeries::monomial(r(1, 1), ExponentQ::new(1, 2), 2, 8).unwrap();
        let s = half.substitute_power(Ratio::from_integer(2)).unwrap();
        assert_eq!(s.scale(), 1);
        assert_eq!(s.q_coeff(1), Some(r(1, 1)));
        let a = q(&[1, 2, 3]);
        assert_eq!(a.substitute_power(Ratio::from_integer(1)).unwrap(), a);
        assert!(a.substitute_power(Ratio::from_integer(0)).is_err());
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = q(&[1, 1, 0, 0, 0, 0, 0]);
        let b = q(&[1, 1, 0, 0, 0, 1, 0]);
        match a.eq_to_order(&b, 7).unwrap() {
            Comparison::Mismatch(m) => {
                assert_eq!(m.exponent, ExponentQ::integer(5));
                assert_eq!(m.lhs, r(0, 1));
                assert_eq!(m.rhs, r(1, 1));
            }
            Comparison::Equal => panic!("expected mismatch"),
        }
        assert!(a.eq_to_order(&a, 7).unwrap().is_equal());
        assert_eq!(
            a.eq_to_order(&b, 8),
            Err(Error::InsufficientOrder {
                requested: 8,
                available: 7
            })
        );
    }

    #[test]
    fn eval_geometric_and_zero() {
        let g = q(&[1; 100]);
        assert!((g.eval_real(0.5).value - 2.0).abs() < 1e-25);
        assert_eq!(LaurentSeries::zero(1, 0, 4).eval_real(0.3).value, 0.0);
    }

    #[test]
    fn display() {
        let a = q(&[1, 2, -1, 0, 3]);
        assert_eq!(a.to_string(), "1 + 2q - q^2 + 3q^4 + O(q^5)");
        let h = LaurentSeries::monomial(r(-1, 2), ExponentQ::new(1, 2), 2, 3).unwrap();
        assert_eq!(h.to_string(), "-1/2q^(1/2) + O(q^(3/2))");
    }

    #[test]
    fn json_shape() {
        let mut a = q(&[1, -2]);
        a = a.scaled_by(&r(1, 3));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"scale":1,"floor":0,"order":2,"coeffs":[[1,3],[-2,3]]}"#);
        let big = LaurentSeries::constant(
            Rational::from_integer("123456789012345678901234567890".parse().unwrap()),
            1,
            1,
        );
        let js = serde_json::to_string(&big).unwrap();
        assert!(js.contains("123456789012345678901234567890"));
        let back: LaurentSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exponent_parse() {
        assert_eq!("1/2".parse::<ExponentQ>().unwrap(), ExponentQ::new(1, 2));
        assert_eq!("-3".parse::<ExponentQ>().unwrap(), ExponentQ::integer(-3));
        assert!("1/0".parse::<ExponentQ>().is_err());
        assert_eq!(ExponentQ::new(3, 2).to_t(2).unwrap(), 3);
        assert!(ExponentQ::new(1, 2).to_t(1).is_err());
    }
}
