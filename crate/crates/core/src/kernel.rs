//! Dense coefficient kernels shared by the series engine.
//!
//! Almost every product in this crate has integer binomial coefficients
//! (usually ±1), so the hot loops run on `BigInt` vectors and only fall back
//! to rationals when a genuinely fractional factor shows up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub(crate) trait Coeff: Clone + Zero + One + PartialEq {
    fn add_ref(&mut self, o: &Self);
    fn sub_ref(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
}

impl Coeff for BigInt {
    fn add_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coeff for Rational {
    fn add_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_ref(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

/// Multiplier `c` of a binomial `1 - c t^e`, with the unit cases split out.
pub(crate) enum Mult<C> {
    One,
    MinusOne,
    Other(C),
}

impl<C: Coeff + std::ops::Neg<Output = C>> Mult<C> {
    pub(crate) fn new(c: C) -> Self {
        if c.is_one() {
            Mult::One
        } else if (-c.clone()).is_one() {
            Mult::MinusOne
        } else {
            Mult::Other(c)
        }
    }
}

/// `v <- v * (1 - c t^e)`, truncated to `v.len()`.
pub(crate) fn mul_binomial<C: Coeff>(v: &mut [C], c: &Mult<C>, e: usize) {
    if e == 0 {
        unreachable!("constant binomials are folded into scalars");
    }
    for i in (e..v.len()).rev() {
        let (lo, hi) = v.split_at_mut(i);
        let src = &lo[i - e];
        if src.is_zero() {
            continue;
        }
        match c {
            Mult::One => hi[0].sub_ref(src),
            Mult::MinusOne => hi[0].add_ref(src),
            Mult::Other(c) => {
                let t = src.mul_ref(c);
                hi[0].sub_ref(&t);
            }
        }
    }
}

/// `v <- v / (1 - c t^e)` as a power series, truncated to `v.len()`.
pub(crate) fn div_binomial<C: Coeff>(v: &mut [C], c: &Mult<C>, e: usize) {
    if e == 0 {
        unreachable!("constant binomials are folded into scalars");
    }
    for i in e..v.len() {
        let (lo, hi) = v.split_at_mut(i);
        let src = &lo[i - e];
        if src.is_zero() {
            continue;
        }
        match c {
            Mult::One => hi[0].add_ref(src),
            Mult::MinusOne => hi[0].sub_ref(src),
            Mult::Other(c) => {
                let t = src.mul_ref(c);
                hi[0].add_ref(&t);
            }
        }
    }
}

/// Truncated Cauchy product of two coefficient slices.
pub(crate) fn convolve<C: Coeff>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

/// Writes a rational vector as `nums / denom` with a common denominator.
pub(crate) fn integer_form(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut denom = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            denom = denom.lcm(x.denom());
        }
    }
    let nums = v
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                x.numer() * &denom
            } else {
                x.numer() * (&denom / x.denom())
            }
        })
        .collect();
    (nums, denom)
}

pub(crate) fn from_integer_form(nums: Vec<BigInt>, denom: &BigInt) -> Vec<Rational> {
    nums.into_iter()
        .map(|n| {
            if denom.is_one() {
                Rational::from_integer(n)
            } else {
                Rational::new(n, denom.clone())
            }
        })
        .collect()
}

/// Relative (valuation-normalized) coefficient vector of a product term.
#[derive(Clone, Debug)]
pub(crate) enum Unit {
    Int(Vec<BigInt>),
    Rat(Vec<Rational>),
}

impl Unit {
    pub(crate) fn one(len: usize) -> Unit {
        let mut v = vec![BigInt::zero(); len];
        if len > 0 {
            v[0] = BigInt::one();
        }
        Unit::Int(v)
    }

    pub(crate) fn from_rationals(v: Vec<Rational>) -> Unit {
        if v.iter().all(|x| x.denom().is_one()) {
            Unit::Int(v.into_iter().map(|x| x.to_integer()).collect())
        } else {
            Unit::Rat(v)
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Unit::Int(v) => v.len(),
            Unit::Rat(v) => v.len(),
        }
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        match self {
            Unit::Int(v) => v.truncate(len),
            Unit::Rat(v) => v.truncate(len),
        }
    }

    fn promote(&mut self) {
        if let Unit::Int(v) = self {
            let r = std::mem::take(v)
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            *self = Unit::Rat(r);
        }
    }

    pub(crate) fn mul_binomial(&mut self, c: &Rational, e: usize) {
        if c.is_zero() || e >= self.len() {
            return;
        }
        if !c.denom().is_one() {
            self.promote();
        }
        match self {
            Unit::Int(v) => mul_binomial(v, &Mult::new(c.to_integer()), e),
            Unit::Rat(v) => mul_binomial(v, &Mult::new(c.clone()), e),
        }
    }

    pub(crate) fn div_binomial(&mut self, c: &Rational, e: usize) {
        if c.is_zero() || e >= self.len() {
            return;
        }
        if !c.denom().is_one() {
            self.promote();
        }
        match self {
            Unit::Int(v) => div_binomial(v, &Mult::new(c.to_integer()), e),
            Unit::Rat(v) => div_binomial(v, &Mult::new(c.clone()), e),
        }
    }

    /// Multiplies by a sparse polynomial with non-negative exponents.
    pub(crate) fn mul_sparse(&self, poly: &[(Rational, usize)]) -> Unit {
        let len = self.len();
        let all_int = poly.iter().all(|(c, _)| c.denom().is_one());
        match self {
            Unit::Int(v) if all_int => {
                let mut out = vec![BigInt::zero(); len];
                for (c, e) in poly {
                    let c = c.to_integer();
                    for i in 0..len.saturating_sub(*e) {
                        if !v[i].is_zero() {
                            out[i + e] += &v[i] * &c;
                        }
                    }
                }
                Unit::Int(out)
            }
            _ => {
                let v = self.to_rationals();
                let mut out = vec![Rational::zero(); len];
                for (c, e) in poly {
                    for i in 0..len.saturating_sub(*e) {
                        if !v[i].is_zero() {
                            out[i + e] += &v[i] * c;
                        }
                    }
                }
                Unit::Rat(out)
            }
        }
    }

    pub(crate) fn to_rationals(&self) -> Vec<Rational> {
        match self {
            Unit::Int(v) => v.iter().cloned().map(Rational::from_integer).collect(),
            Unit::Rat(v) => v.clone(),
        }
    }

    /// `(nums, denom)` with `self = nums / denom`.
    fn integer_view(&self) -> (std::borrow::Cow<'_, [BigInt]>, BigInt) {
        match self {
            Unit::Int(v) => (std::borrow::Cow::Borrowed(v.as_slice()), BigInt::one()),
            Unit::Rat(v) => {
                let (n, d) = integer_form(v);
                (std::borrow::Cow::Owned(n), d)
            }
        }
    }
}

/// Running sum `nums / denom` over a fixed window.
pub(crate) struct Accumulator {
    denom: BigInt,
    nums: Vec<BigInt>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator {
            denom: BigInt::one(),
            nums: vec![BigInt::zero(); len],
        }
    }

    /// Adds `scalar * unit` starting at position `offset`.
    pub(crate) fn add(&mut self, offset: usize, scalar: &Rational, unit: &Unit) {
        if scalar.is_zero() || offset >= self.nums.len() {
            return;
        }
        let (u, ud) = unit.integer_view();
        // scalar / ud = p / q
        let q = scalar.denom() * &ud;
        let p = scalar.numer().clone();
        let g = p.gcd(&q);
        let (p, q) = (p / &g, q / g);
        let l = self.denom.lcm(&q);
        if l != self.denom {
            let f = &l / &self.denom;
            for n in self.nums.iter_mut() {
                if !n.is_zero() {
                    *n *= &f;
                }
            }
            self.denom = l;
        }
        let factor = p * (&self.denom / &q);
        let avail = self.nums.len() - offset;
        let unit_pos = factor.is_one();
        let unit_neg = factor.is_negative() && factor.abs().is_one();
        for (dst, x) in self.nums[offset..].iter_mut().zip(u.iter().take(avail)) {
            if x.is_zero() {
                continue;
            }
            if unit_pos {
                *dst += x;
            } else if unit_neg {
                *dst -= x;
            } else {
                *dst += x * &factor;
            }
        }
    }

    pub(crate) fn into_rationals(self) -> Vec<Rational> {
        from_integer_form(self.nums, &self.denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomial_roundtrip() {
        let mut v = ints(&[1, 2, 3, 4, 5, 6, 7]);
        let orig = v.clone();
        mul_binomial(&mut v, &Mult::Other(BigInt::from(3)), 2);
        div_binomial(&mut v, &Mult::Other(BigInt::from(3)), 2);
        assert_eq!(v, orig);
    }

    #[test]
    fn geometric_inverse() {
        let mut v = ints(&[1, 0, 0, 0, 0]);
        div_binomial(&mut v, &Mult::One, 1);
        assert_eq!(v, ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn accumulator_mixes_denominators() {
        let mut acc = Accumulator::new(3);
        acc.add(0, &Rational::new(1.into(), 2.into()), &Unit::one(3));
        acc.add(1, &Rational::new(1.into(), 3.into()), &Unit::one(2));
        let r = acc.into_rationals();
        assert_eq!(r[0], Rational::new(1.into(), 2.into()));
        assert_eq!(r[1], Rational::new(1.into(), 3.into()));
        assert!(r[2].is_zero());
    }
}
