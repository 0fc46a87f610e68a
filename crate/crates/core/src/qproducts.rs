//! q-Pochhammer symbols, Gauss's ψ, and named infinite-product sides.
//!
//! Everything here is built from [`QProduct`], a normalized product of
//! binomials `(1 - c q^e)` and infinite Pochhammers that expands exactly to
//! any requested order.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::Unit;
use crate::series::{parse_rational, ExponentQ, LaurentSeries};
use crate::Rational;


/// `c * q^r` with exact rational `c` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMonomial {
    pub coeff: Rational,
    pub exp: ExponentQ,
}

impl QMonomial {
    /// A zero coefficient always carries exponent 0.
    pub fn new(coeff: Rational, exp: ExponentQ) -> Self {
        let exp = if coeff.is_zero() { ExponentQ::zero() } else { exp };
        QMonomial { coeff, exp }
    }

    /// `q^e`.
    pub fn q(e: impl Into<ExponentQ>) -> Self {
        QMonomial::new(Rational::one(), e.into())
    }

    /// `-q^e`.
    pub fn neg_q(e: impl Into<ExponentQ>) -> Self {
        QMonomial::new(-Rational::one(), e.into())
    }

    pub fn constant(c: Rational) -> Self {
        QMonomial::new(c, ExponentQ::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, o: &QMonomial) -> QMonomial {
        QMonomial::new(&self.coeff * &o.coeff, self.exp + o.exp)
    }

    pub fn div(&self, o: &QMonomial) -> Result<QMonomial> {
        if o.is_zero() {
            return Err(Error::InvalidArgument(format!("division of {self} by zero")));
        }
        Ok(QMonomial::new(&self.coeff / &o.coeff, self.exp - o.exp))
    }

    /// `self * q^e`.
    pub fn shift(&self, e: impl Into<ExponentQ>) -> QMonomial {
        QMonomial::new(self.coeff.clone(), self.exp + e.into())
    }

    pub fn pow(&self, n: i64) -> QMonomial {
        let c = if n >= 0 {
            num_traits::pow(self.coeff.clone(), n as usize)
        } else {
            num_traits::pow(self.coeff.recip(), (-n) as usize)
        };
        QMonomial::new(c, self.exp * n)
    }

    pub fn eval_real(&self, q0: f64) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * q0.powf(self.exp.to_f64())
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == ExponentQ::zero() || self.is_zero() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff == -Rational::one() {
            write!(f, "-")?;
        } else if !self.coeff.is_one() {
            write!(f, "{}*", self.coeff)?;
        }
        if self.exp == ExponentQ::integer(1) {
            write!(f, "q")
        } else if self.exp.is_integer() {
            write!(f, "q^{}", self.exp)
        } else {
            write!(f, "q^({})", self.exp)
        }
    }
}

/// Accepts `2`, `q`, `-q^2`, `q^(1/2)`, `q^-3`, `3/2*q^4`.
impl FromStr for QMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad monomial `{s}`"));
        let Some(qpos) = s.find('q') else {
            return Ok(QMonomial::constant(parse_rational(&s)?));
        };
        let (cpart, rest) = s.split_at(qpos);
        let coeff = match cpart.trim_end_matches('*') {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c)?,
        };
        let rest = &rest[1..];
        let exp = if rest.is_empty() {
            ExponentQ::integer(1)
        } else {
            let e = rest.strip_prefix('^').ok_or_else(bad)?;
            let e = e
                .strip_prefix('(')
                .and_then(|e| e.strip_suffix(')'))
                .unwrap_or(e);
            e.parse()?
        };
        Ok(QMonomial::new(coeff, exp))
    }
}

fn rational_to_json(r: &Rational) -> serde_json::Value {
    match r.to_integer().to_i64() {
        Some(n) if r.is_integer() => serde_json::Value::from(n),
        _ => serde_json::Value::String(r.to_string()),
    }
}

fn rational_from_json(v: &serde_json::Value) -> std::result::Result<Rational, String> {
    match v {
        serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
        other => Err(format!("expected rational, got {other}")),
    }
}

/// Serialized as `[c, r]`; both entries may be numbers or `"p/q"` strings.
impl Serialize for QMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e = self.exp.value();
        let e = Rational::new((*e.numer()).into(), (*e.denom()).into());
        (rational_to_json(&self.coeff), rational_to_json(&e)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (c, r): (serde_json::Value, serde_json::Value) = Deserialize::deserialize(d)?;
        let c = rational_from_json(&c).map_err(D::Error::custom)?;
        let r = rational_from_json(&r).map_err(D::Error::custom)?;
        let (n, den) = (r.numer().to_i64(), r.denom().to_i64());
        match (n, den) {
            (Some(n), Some(den)) => Ok(QMonomial::new(c, ExponentQ::new(n, den))),
            _ => Err(D::Error::custom("exponent out of range")),
        }
    }
}

/// Index of a q-Pochhammer symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PochIndex {
    Finite(u64),
    Infinite,
    /// Defined as `(a;p)_inf / (a p^r;p)_inf`.
    Real(Ratio<i64>),
}

/// `(a; q^base)_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub a: QMonomial,
    pub base: ExponentQ,
    pub index: PochIndex,
}

impl PochSpec {
    pub fn finite(a: QMonomial, base: impl Into<ExponentQ>, n: u64) -> Self {
        PochSpec { a, base: base.into(), index: PochIndex::Finite(n) }
    }

    pub fn infinite(a: QMonomial, base: impl Into<ExponentQ>) -> Self {
        PochSpec { a, base: base.into(), index: PochIndex::Infinite }
    }

    pub fn real(a: QMonomial, base: impl Into<ExponentQ>, r: Ratio<i64>) -> Self {
        PochSpec { a, base: base.into(), index: PochIndex::Real(r) }
    }

    pub fn to_product(&self) -> Result<QProduct> {
        let mut p = QProduct::one();
        p.times_poch(self)?;
        Ok(p)
    }
}

/// `(q^r; q^m)`-type infinite product with leading coefficient `c`: `∏_j (1 - c q^(r + m j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct InfPoch {
    c: Rational,
    r: ExponentQ,
    m: ExponentQ,
}

/// `1 - c q^e` with `e > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Binom {
    c: Rational,
    e: ExponentQ,
}

/// A normalized product
/// `scalar * q^shift * ∏(1 - c q^e)^{±1} * ∏(c q^r; q^m)_inf^{±1}`
/// in which every binomial and infinite factor has constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QProduct {
    scalar: Rational,
    shift: ExponentQ,
    num: Vec<Binom>,
    den: Vec<Binom>,
    inf_num: Vec<InfPoch>,
    inf_den: Vec<InfPoch>,
    zeros: usize,
    poles: Vec<String>,
}

impl Default for QProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl QProduct {
    pub fn one() -> Self {
        QProduct {
            scalar: Rational::one(),
            shift: ExponentQ::zero(),
            num: Vec::new(),
            den: Vec::new(),
            inf_num: Vec::new(),
            inf_den: Vec::new(),
            zeros: 0,
            poles: Vec::new(),
        }
    }

    pub fn scalar(c: Rational) -> Self {
        let mut p = Self::one();
        p.times_monomial(&QMonomial::constant(c));
        p
    }

    pub fn monomial(m: &QMonomial) -> Self {
        let mut p = Self::one();
        p.times_monomial(m);
        p
    }

    pub fn times_monomial(&mut self, m: &QMonomial) -> &mut Self {
        if m.is_zero() {
            self.zeros += 1;
        } else {
            self.scalar *= &m.coeff;
            self.shift = self.shift + m.exp;
        }
        self
    }

    pub fn over_monomial(&mut self, m: &QMonomial) -> &mut Self {
        if m.is_zero() {
            self.poles.push("division by the zero monomial".into());
        } else {
            self.scalar /= &m.coeff;
            self.shift = self.shift - m.exp;
        }
        self
    }

    /// Multiplies by `(1 - c q^e)^(±1)`.
    fn binomial(&mut self, c: &Rational, e: ExponentQ, invert: bool) {
        if c.is_zero() {
            return;
        }
        if e.is_positive() {
            let b = Binom { c: c.clone(), e };
            if invert {
                self.den.push(b);
            } else {
                self.num.push(b);
            }
        } else if e.is_negative() {
            // 1 - c q^e = -c q^e (1 - c^-1 q^-e)
            let m = QMonomial::new(-c, e);
            let b = Binom { c: c.recip(), e: -e };
            if invert {
                self.over_monomial(&m);
                self.den.push(b);
            } else {
                self.times_monomial(&m);
                self.num.push(b);
            }
        } else {
            let f = Rational::one() - c;
            if f.is_zero() {
                if invert {
                    self.poles.push(format!("factor (1 - {}) in a denominator", QMonomial::new(c.clone(), e)));
                } else {
                    self.zeros += 1;
                }
            } else if invert {
                self.scalar /= f;
            } else {
                self.scalar *= f;
            }
        }
    }

    pub fn times_binomial(&mut self, a: &QMonomial) -> &mut Self {
        self.binomial(&a.coeff, a.exp, false);
        self
    }

    pub fn over_binomial(&mut self, a: &QMonomial) -> &mut Self {
        self.binomial(&a.coeff, a.exp, true);
        self
    }

    fn infinite(&mut self, c: &Rational, mut r: ExponentQ, m: ExponentQ, invert: bool) -> Result<()> {
        if !m.is_positive() {
            return Err(Error::Nontermination(format!(
                "infinite product with non-positive base q^{m}"
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        while !r.is_positive() {
            self.binomial(c, r, invert);
            r = r + m;
        }
        let p = InfPoch { c: c.clone(), r, m };
        if invert {
            self.inf_den.push(p);
        } else {
            self.inf_num.push(p);
        }
        Ok(())
    }

    fn poch(&mut self, spec: &PochSpec, invert: bool) -> Result<()> {
        let (c, e, m) = (&spec.a.coeff, spec.a.exp, spec.base);
        match &spec.index {
            PochIndex::Finite(n) => {
                for j in 0..*n as i64 {
                    self.binomial(c, e + m * j, invert);
                }
                Ok(())
            }
            PochIndex::Infinite => self.infinite(c, e, m, invert),
            PochIndex::Real(r) => {
                self.infinite(c, e, m, invert)?;
                self.infinite(c, e + m * ExponentQ::from(*r), m, !invert)
            }
        }
    }

    pub fn times_poch(&mut self, spec: &PochSpec) -> Result<&mut Self> {
        self.poch(spec, false)?;
        Ok(self)
    }

    pub fn over_poch(&mut self, spec: &PochSpec) -> Result<&mut Self> {
        self.poch(spec, true)?;
        Ok(self)
    }

    /// `(a; q^m)_inf ^ power` (negative powers divide).
    pub fn times_inf(&mut self, a: &QMonomial, m: impl Into<ExponentQ>, power: i32) -> Result<&mut Self> {
        let m = m.into();
        for _ in 0..power.unsigned_abs() {
            self.infinite(&a.coeff, a.exp, m, power < 0)?;
        }
        Ok(self)
    }

    /// `(a; q^m)_n ^ power` for a finite integer index.
    pub fn times_finite(&mut self, a: &QMonomial, m: impl Into<ExponentQ>, n: u64, power: i32) -> &mut Self {
        let m = m.into();
        for _ in 0..power.unsigned_abs() {
            for j in 0..n as i64 {
                self.binomial(&a.coeff, a.exp + m * j, power < 0);
            }
        }
        self
    }

    pub fn times(&mut self, o: &QProduct) -> &mut Self {
        self.scalar *= &o.scalar;
        self.shift = self.shift + o.shift;
        self.num.extend(o.num.iter().cloned());
        self.den.extend(o.den.iter().cloned());
        self.inf_num.extend(o.inf_num.iter().cloned());
        self.inf_den.extend(o.inf_den.iter().cloned());
        self.zeros += o.zeros;
        self.poles.extend(o.poles.iter().cloned());
        self
    }

    pub fn product(&self, o: &QProduct) -> QProduct {
        let mut p = self.clone();
        p.times(o);
        p
    }

    /// Reciprocal; zero factors become poles and vice versa.
    pub fn inverse(&self) -> QProduct {
        let mut poles = self.poles.clone();
        for _ in 0..self.zeros {
            poles.push("reciprocal of a vanishing factor".into());
        }
        QProduct {
            scalar: if self.scalar.is_zero() { Rational::zero() } else { self.scalar.recip() },
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
            inf_num: self.inf_den.clone(),
            inf_den: self.inf_num.clone(),
            zeros: 0,
            poles,
        }
    }

    pub fn powi(&self, n: i32) -> QProduct {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut p = QProduct::one();
        for _ in 0..n.unsigned_abs() {
            p.times(&base);
        }
        p
    }

    /// Errors if some denominator factor vanishes identically.
    pub fn check(&self) -> Result<()> {
        match self.poles.first() {
            None => Ok(()),
            Some(p) if self.zeros > 0 => Err(Error::Pole(format!("indeterminate 0/0: {p}"))),
            Some(p) => Err(Error::Pole(p.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zeros > 0 || self.scalar.is_zero()
    }

    /// Exact valuation, `None` for the zero product.
    pub fn valuation(&self) -> Result<Option<ExponentQ>> {
        self.check()?;
        Ok(if self.is_zero() { None } else { Some(self.shift) })
    }

    pub fn leading_coeff(&self) -> Rational {
        if self.is_zero() {
            Rational::zero()
        } else {
            self.scalar.clone()
        }
    }

    /// Smallest scale at which every exponent is integral.
    pub fn natural_scale(&self) -> u32 {
        let mut s = self.shift.denom();
        for b in self.num.iter().chain(&self.den) {
            s = s.lcm(&b.e.denom());
        }
        for p in self.inf_num.iter().chain(&self.inf_den) {
            s = s.lcm(&p.r.denom()).lcm(&p.m.denom());
        }
        s
    }

    /// `(scalar, shift in t-units, unit of length len)`.
    pub(crate) fn unit_parts(&self, scale: u32, len: usize) -> Result<(Rational, i64, Unit)> {
        self.check()?;
        let shift = self.shift.to_t(scale)?;
        let mut u = Unit::one(len);
        self.apply_unit(&mut u, scale)?;
        let scalar = if self.is_zero() { Rational::zero() } else { self.scalar.clone() };
        Ok((scalar, shift, u))
    }

    fn apply_unit(&self, u: &mut Unit, scale: u32) -> Result<()> {
        let len = u.len() as i64;
        for b in &self.num {
            u.mul_binomial(&b.c, b.e.to_t(scale)? as usize);
        }
        for b in &self.den {
            u.div_binomial(&b.c, b.e.to_t(scale)? as usize);
        }
        for (p, inv) in self
            .inf_num
            .iter()
            .map(|p| (p, false))
            .chain(self.inf_den.iter().map(|p| (p, true)))
        {
            let (mut e, m) = (p.r.to_t(scale)?, p.m.to_t(scale)?);
            while e < len {
                if inv {
                    u.div_binomial(&p.c, e as usize);
                } else {
                    u.mul_binomial(&p.c, e as usize);
                }
                e += m;
            }
        }
        Ok(())
    }

    fn check_scale(&self, scale: u32) -> Result<()> {
        let nat = self.natural_scale();
        if !scale.is_multiple_of(nat) {
            return Err(Error::Scale(format!(
                "product needs a multiple of scale {nat}, got {scale}"
            )));
        }
        Ok(())
    }

    /// Expansion known below t-exponent `order` at the given scale.
    pub fn expand(&self, scale: u32, order: i64) -> Result<LaurentSeries> {
        self.check()?;
        self.check_scale(scale)?;
        let shift = self.shift.to_t(scale)?;
        let rel = order - shift;
        if self.is_zero() || rel <= 0 {
            return Ok(LaurentSeries::zero(scale, shift.min(order - 1), order));
        }
        let (scalar, shift, unit) = self.unit_parts(scale, rel as usize)?;
        let coeffs = unit
            .to_rationals()
            .into_iter()
            .map(|x| if scalar.is_one() { x } else { x * &scalar })
            .collect();
        LaurentSeries::new(scale, shift, coeffs)
    }

    /// Expansion to q-order `order` at the natural scale.
    pub fn series(&self, order: i64) -> Result<LaurentSeries> {
        let s = self.natural_scale();
        self.expand(s, order * s as i64)
    }

    /// `self * s`, known below t-exponent `order` (at most what `s` allows).
    pub fn apply_to(&self, s: &LaurentSeries, order: Option<i64>) -> Result<LaurentSeries> {
        self.check()?;
        let nat = self.natural_scale();
        let scale = s.scale().lcm(&nat);
        let s = s.rescaled(scale)?;
        let shift = self.shift.to_t(scale)?;
        let full = s.order() + shift;
        let order = order.map_or(full, |o| o.min(full));
        let floor = s.floor() + shift;
        if self.is_zero() || order <= floor {
            return Ok(LaurentSeries::zero(scale, floor.min(order - 1), order));
        }
        let len = (order - floor) as usize;
        let mut u = Unit::from_rationals(s.coeffs()[..len].to_vec());
        self.apply_unit(&mut u, scale)?;
        let coeffs = u
            .to_rationals()
            .into_iter()
            .map(|x| if self.scalar.is_one() { x } else { x * &self.scalar })
            .collect();
        LaurentSeries::new(scale, floor, coeffs)
    }

    /// Floating-point value at `q0 ∈ (0,1)`; infinite products are cut when
    /// their factors are within `tol` of 1, and error out past `max_depth`.
    pub fn eval_real(&self, q0: f64, tol: f64, max_depth: usize) -> Result<f64> {
        self.check()?;
        if self.is_zero() {
            return Ok(0.0);
        }
        let lq = q0.ln();
        let mut log = self.scalar.to_f64().unwrap_or(f64::NAN).abs().ln() + self.shift.to_f64() * lq;
        let mut sign = if self.scalar.is_negative() { -1.0 } else { 1.0 };
        let mut factor = |c: f64, e: f64, inv: bool| -> Result<()> {
            let x = c * (e * lq).exp();
            let f = 1.0 - x;
            if f == 0.0 {
                return Err(Error::Pole(format!("factor vanishes at q = {q0}")));
            }
            if f < 0.0 {
                sign = -sign;
            }
            let l = if x.abs() < 0.5 { (-x).ln_1p() } else { f.abs().ln() };
            log += if inv { -l } else { l };
            Ok(())
        };
        for b in &self.num {
            factor(b.c.to_f64().unwrap_or(f64::NAN), b.e.to_f64(), false)?;
        }
        for b in &self.den {
            factor(b.c.to_f64().unwrap_or(f64::NAN), b.e.to_f64(), true)?;
        }
        for (p, inv) in self
            .inf_num
            .iter()
            .map(|p| (p, false))
            .chain(self.inf_den.iter().map(|p| (p, true)))
        {
            let c = p.c.to_f64().unwrap_or(f64::NAN);
            let (r, m) = (p.r.to_f64(), p.m.to_f64());
            // |c| q^(r + m j) < tol once j exceeds this depth
            let depth = ((tol.ln() - c.abs().ln()) / lq - r) / m;
            let depth = depth.max(0.0).ceil() as usize + 1;
            if depth > max_depth {
                return Err(Error::BudgetExceeded(format!(
                    "infinite product needs {depth} factors at q = {q0}, budget {max_depth}"
                )));
            }
            for j in 0..depth {
                factor(c, r + m * j as f64, inv)?;
            }
        }
        Ok(sign * log.exp())
    }
}

/// Expands `(a; q^base)_index` to q-order `order`.
pub fn poch(spec: &PochSpec, order: i64) -> Result<LaurentSeries> {
    spec.to_product()?.series(order)
}

/// `ψ(q) = Σ q^(n(n+1)/2)` to q-order `order`.
pub fn psi_sum(order: i64) -> LaurentSeries {
    assert!(order >= 1, "order must be positive");
    let mut c = vec![Rational::zero(); order as usize];
    let mut n = 0i64;
    while n * (n + 1) / 2 < order {
        c[(n * (n + 1) / 2) as usize] = Rational::one();
        n += 1;
    }
    LaurentSeries::new(1, 0, c).expect("non-empty")
}

/// `(q^2;q^2)_inf / (q;q^2)_inf`.
pub fn psi_product(order: i64) -> LaurentSeries {
    named_product("psi")
        .and_then(|p| p.series(order))
        .expect("ψ product is well defined")
}

/// Stable identifiers of the product sides.
pub const PRODUCT_SIDES: &[&str] = &["pi1.rhs", "pi2.rhs", "gl1.rhs", "gl2.rhs", "qid.rhs", "q2.rhs"];

/// The factor product behind a named side (`q2.rhs` is a Lambert series, not
/// a product, and is not available here).
pub fn named_product(name: &str) -> Result<QProduct> {
    let q = |e: i64| QMonomial::q(e);
    let mut p = QProduct::one();
    match name {
        "psi" => {
            p.times_inf(&q(2), 2, 1)?.times_inf(&q(1), 2, -1)?;
        }
        "pi1.rhs" => {
            p.times_inf(&q(4), 4, 2)?.times_inf(&q(2), 4, -2)?;
        }
        "pi2.rhs" => {
            p.times_inf(&q(2), 2, 1)?
                .times_inf(&q(8), 8, 1)?
                .times_inf(&q(1), 2, -1)?
                .times_inf(&q(4), 8, -1)?;
        }
        "gl1.rhs" => {
            p.times_binomial(&QMonomial::neg_q(1))
                .times_inf(&q(2), 4, 1)?
                .times_inf(&q(6), 4, 1)?
                .times_inf(&q(4), 4, -2)?;
        }
        "gl2.rhs" => {
            p.times_inf(&q(3), 4, 1)?
                .times_inf(&q(5), 4, 1)?
                .times_inf(&q(4), 4, -2)?;
        }
        "qid.rhs" => {
            p.times_binomial(&q(1))
                .times_binomial(&q(1))
                .times_inf(&q(2), 2, 4)?
                .times_inf(&q(1), 2, -4)?;
        }
        "gamma-half" => {
            p.times_binomial(&q(1))
                .times_inf(&q(2), 2, 2)?
                .times_inf(&q(1), 2, -2)?;
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    }
    Ok(p)
}

/// Expands a named product side to q-order `order`.
pub fn product_side(name: &str, order: i64) -> Result<LaurentSeries> {
    if !PRODUCT_SIDES.contains(&name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    if name == "q2.rhs" {
        return crate::catalog::lambert_expand(crate::catalog::LambertKind::Q2Rhs, order);
    }
    named_product(name)?.series(order)
}
