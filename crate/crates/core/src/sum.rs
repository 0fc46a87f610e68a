//! Exact summation of hypergeometric-type term sequences.
//!
//! A [`TermSum`] is given its first term as a [`QProduct`] and the ratio
//! `term(l+1) / term(l)` as a [`TermRatio`] whose binomial exponents are
//! affine in `l`. Valuations are tracked exactly, so the engine knows which
//! terms reach the window and how much relative precision each one needs
//! before it expands anything.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Accumulator, Unit};
use crate::qproducts::{QMonomial, QProduct};
use crate::series::{ExponentQ, LaurentSeries};
use crate::Rational;

const MAX_SCAN: usize = 1_000_000;

/// `1 - c q^(offset + step * l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineBinomial {
    pub c: Rational,
    pub offset: ExponentQ,
    pub step: ExponentQ,
}

/// `scalar * q^(shift + slope * l) * ∏ num / ∏ den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRatio {
    pub scalar: Rational,
    pub shift: ExponentQ,
    pub slope: ExponentQ,
    pub num: Vec<AffineBinomial>,
    pub den: Vec<AffineBinomial>,
}

impl Default for TermRatio {
    fn default() -> Self {
        TermRatio {
            scalar: Rational::one(),
            shift: ExponentQ::zero(),
            slope: ExponentQ::zero(),
            num: Vec::new(),
            den: Vec::new(),
        }
    }
}

impl TermRatio {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn times_monomial(mut self, m: &QMonomial) -> Self {
        self.scalar *= &m.coeff;
        self.shift = self.shift + m.exp;
        self
    }

    /// Multiplies by `q^(slope * l)`.
    pub fn times_q_linear(mut self, slope: impl Into<ExponentQ>) -> Self {
        self.slope = self.slope + slope.into();
        self
    }

    /// Multiplies by `1 - c q^(offset + step * l)`.
    pub fn times(mut self, c: Rational, offset: impl Into<ExponentQ>, step: impl Into<ExponentQ>) -> Self {
        self.num.push(AffineBinomial { c, offset: offset.into(), step: step.into() });
        self
    }

    pub fn over(mut self, c: Rational, offset: impl Into<ExponentQ>, step: impl Into<ExponentQ>) -> Self {
        self.den.push(AffineBinomial { c, offset: offset.into(), step: step.into() });
        self
    }

    /// The step `(a; q^base)_(l+1) / (a; q^base)_l = 1 - a q^(base l)`.
    pub fn times_poch(self, a: &QMonomial, base: impl Into<ExponentQ>) -> Self {
        self.times(a.coeff.clone(), a.exp, base)
    }

    pub fn over_poch(self, a: &QMonomial, base: impl Into<ExponentQ>) -> Self {
        self.over(a.coeff.clone(), a.exp, base)
    }

    fn exponents(&self) -> impl Iterator<Item = ExponentQ> + '_ {
        [self.shift, self.slope]
            .into_iter()
            .chain(self.num.iter().chain(&self.den).flat_map(|b| [b.offset, b.step]))
    }
}

/// Sparse polynomial factor applied to term `l`; exponents must be ≥ 0.
pub type PostFactor = Box<dyn Fn(i64) -> Vec<(Rational, ExponentQ)> + Send + Sync>;

pub struct TermSum {
    first: QProduct,
    ratio: TermRatio,
    post: Option<PostFactor>,
    post_scale: u32,
    max_terms: Option<usize>,
}

/// Result of a summation: the series and how many terms reached it.
#[derive(Clone, Debug, PartialEq)]
pub struct SumOutcome {
    pub series: LaurentSeries,
    pub terms: usize,
}

struct Affine {
    c: Rational,
    o: i64,
    s: i64,
}

impl Affine {
    fn at(&self, l: i64) -> i64 {
        self.o + self.s * l
    }

    /// First `l ≥ 0` from which the sign of the exponent no longer changes.
    fn settled_from(&self) -> i64 {
        match self.s.signum() {
            1 => (Integer::div_floor(&-self.o, &self.s) + 1).max(0),
            -1 => (Integer::div_floor(&self.o, &-self.s) + 1).max(0),
            _ => 0,
        }
    }
}

struct Step {
    val: i64,
    zero: bool,
    pole: Option<String>,
}

impl TermSum {
    pub fn new(first: QProduct, ratio: TermRatio) -> Self {
        TermSum { first, ratio, post: None, post_scale: 1, max_terms: None }
    }

    /// Multiplies term `l` by `post(l)`; `scale` must make its exponents integral.
    pub fn with_post(mut self, scale: u32, post: PostFactor) -> Self {
        self.post = Some(post);
        self.post_scale = scale;
        self
    }

    /// Caps the number of terms; running out before the window is cleared
    /// is an error rather than a silent truncation.
    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = Some(n);
        self
    }

    pub fn natural_scale(&self) -> u32 {
        self.ratio
            .exponents()
            .fold(self.first.natural_scale().lcm(&self.post_scale), |s, e| s.lcm(&e.denom()))
    }

    /// Sum to q-order `order` at the natural scale.
    pub fn evaluate(&self, order: i64) -> Result<SumOutcome> {
        let s = self.natural_scale();
        self.evaluate_at(s, order * s as i64)
    }

    fn affine(&self, b: &AffineBinomial, scale: u32) -> Result<Affine> {
        Ok(Affine { c: b.c.clone(), o: b.offset.to_t(scale)?, s: b.step.to_t(scale)? })
    }

    /// Sum known below t-exponent `order` at `scale`.
    pub fn evaluate_at(&self, scale: u32, order: i64) -> Result<SumOutcome> {
        if !scale.is_multiple_of(self.natural_scale()) {
            return Err(Error::Scale(format!(
                "sum needs a multiple of scale {}, got {scale}",
                self.natural_scale()
            )));
        }
        let num = self.ratio.num.iter().map(|b| self.affine(b, scale)).collect::<Result<Vec<_>>>()?;
        let den = self.ratio.den.iter().map(|b| self.affine(b, scale)).collect::<Result<Vec<_>>>()?;
        let alpha = self.ratio.shift.to_t(scale)?;
        let beta = self.ratio.slope.to_t(scale)?;

        let Some(v0) = self.first.valuation()? else {
            return Ok(SumOutcome { series: LaurentSeries::zero(scale, order - 1, order), terms: 0 });
        };
        let v0 = v0.to_t(scale)?;

        // Eventual behaviour of the ratio valuation: A + B l for l ≥ l0.
        let active = |a: &&Affine| !a.c.is_zero();
        let l0 = num.iter().chain(&den).filter(active).map(Affine::settled_from).max().unwrap_or(0);
        let slope = beta
            + num.iter().filter(active).map(|a| a.s.min(0)).sum::<i64>()
            - den.iter().filter(active).map(|a| a.s.min(0)).sum::<i64>();

        let step_at = |l: i64| -> Step {
            let mut st = Step { val: alpha + beta * l, zero: self.ratio.scalar.is_zero(), pole: None };
            for a in num.iter().filter(active) {
                let e = a.at(l);
                st.val += e.min(0);
                if e == 0 && a.c.is_one() {
                    st.zero = true;
                }
            }
            for a in den.iter().filter(active) {
                let e = a.at(l);
                st.val -= e.min(0);
                if e == 0 && a.c.is_one() {
                    st.pole = Some(format!("denominator factor vanishes between terms {l} and {}", l + 1));
                }
            }
            st
        };

        // Valuation scan: decide how many terms reach the window.
        let mut vals = vec![v0];
        let n_terms = loop {
            let l = vals.len() - 1;
            let v = vals[l];
            let st = step_at(l as i64);
            if let Some(p) = st.pole {
                return Err(Error::Pole(if st.zero { format!("indeterminate 0/0: {p}") } else { p }));
            }
            let settled = l as i64 >= l0;
            if settled && slope >= 0 && st.val >= 0 && v >= order {
                break l;
            }
            if st.zero {
                break l + 1;
            }
            if settled && (slope < 0 || (slope == 0 && st.val < 0) || (slope == 0 && st.val == 0 && v < order)) {
                return Err(Error::Divergent(format!(
                    "term valuations stop increasing (ratio valuation {} + {}l from l = {l})",
                    st.val - slope * l as i64,
                    slope
                )));
            }
            if l >= MAX_SCAN {
                return Err(Error::Divergent(format!("no termination after {MAX_SCAN} terms")));
            }
            vals.push(v + st.val);
        };
        if let Some(max) = self.max_terms {
            if max < n_terms {
                return Err(Error::InsufficientTerms { needed: n_terms, given: max });
            }
        }
        vals.truncate(n_terms);

        let floor = vals.iter().copied().min().unwrap_or(order - 1).min(order - 1);
        if n_terms == 0 || vals.iter().all(|&v| v >= order) {
            return Ok(SumOutcome { series: LaurentSeries::zero(scale, floor, order), terms: n_terms });
        }
        // Relative precision each running term must carry.
        let mut prec = vec![0usize; n_terms];
        let mut lowest = i64::MAX;
        for l in (0..n_terms).rev() {
            lowest = lowest.min(vals[l]);
            prec[l] = (order - lowest).max(0) as usize;
        }

        let (mut scalar, _, mut unit) = self.first.unit_parts(scale, prec[0])?;
        let mut acc = Accumulator::new((order - floor) as usize);
        for l in 0..n_terms {
            if vals[l] < order {
                let offset = (vals[l] - floor) as usize;
                match &self.post {
                    None => acc.add(offset, &scalar, &unit),
                    Some(post) => {
                        let mut poly = Vec::new();
                        for (c, e) in post(l as i64) {
                            if e.is_negative() {
                                return Err(Error::InvalidArgument(format!(
                                    "post-factor exponent {e} is negative"
                                )));
                            }
                            poly.push((c, e.to_t(scale)? as usize));
                        }
                        acc.add(offset, &scalar, &unit.mul_sparse(&poly));
                    }
                }
            }
            if l + 1 == n_terms {
                break;
            }
            let li = l as i64;
            for a in num.iter().filter(active) {
                apply(&mut unit, &mut scalar, &a.c, a.at(li), false);
            }
            for a in den.iter().filter(active) {
                apply(&mut unit, &mut scalar, &a.c, a.at(li), true);
            }
            scalar *= &self.ratio.scalar;
            unit.truncate(prec[l + 1]);
        }
        let series = LaurentSeries::new(scale, floor, acc.into_rationals())?;
        Ok(SumOutcome { series, terms: n_terms })
    }
}

/// Folds `(1 - c t^e)^(±1)` into a running `scalar * unit`.
fn apply(unit: &mut Unit, scalar: &mut Rational, c: &Rational, e: i64, invert: bool) {
    if e > 0 {
        if invert {
            unit.div_binomial(c, e as usize);
        } else {
            unit.mul_binomial(c, e as usize);
        }
    } else if e < 0 {
        // 1 - c t^e = -c t^e (1 - c^-1 t^-e); the t^e part is in the valuations
        let ci = c.recip();
        if invert {
            *scalar /= -c;
            unit.div_binomial(&ci, (-e) as usize);
        } else {
            *scalar *= -c;
            unit.mul_binomial(&ci, (-e) as usize);
        }
    } else {
        let f = Rational::one() - c;
        if invert {
            *scalar /= f;
        } else {
            *scalar *= f;
        }
    }
}

/// Sums explicit products term by term (each expanded independently).
pub fn sum_products(terms: &[QProduct], scale: u32, order: i64) -> Result<LaurentSeries> {
    let mut floor = order - 1;
    let mut parts = Vec::new();
    for t in terms {
        if let Some(v) = t.valuation()? {
            let v = v.to_t(scale)?;
            if v < order {
                floor = floor.min(v);
                parts.push((t, v));
            }
        }
    }
    let mut acc = Accumulator::new((order - floor) as usize);
    for (t, v) in parts {
        let (scalar, _, unit) = t.unit_parts(scale, (order - v) as usize)?;
        acc.add((v - floor) as usize, &scalar, &unit);
    }
    LaurentSeries::new(scale, floor, acc.into_rationals())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn geometric_sum() {
        // Σ q^l = 1/(1-q)
        let s = TermSum::new(QProduct::one(), TermRatio::new().times_monomial(&QMonomial::q(1)));
        let out = s.evaluate(20).unwrap();
        assert_eq!(out.terms, 20);
        assert!(out.series.q_coeffs_upto(20).iter().all(|c| *c == rat(1)));
    }

    #[test]
    fn terminating_sum() {
        // Σ (q^-2;q)_l / (q;q)_l * q^l stops after three terms
        let r = TermRatio::new()
            .times_poch(&QMonomial::q(-2), 1)
            .over(rat(1), 1, 1)
            .times_monomial(&QMonomial::q(1));
        let out = TermSum::new(QProduct::one(), r).evaluate(30).unwrap();
        assert_eq!(out.terms, 3);
    }

    #[test]
    fn divergent_and_capped() {
        let r = TermRatio::new().times_monomial(&QMonomial::q(-1));
        let e = TermSum::new(QProduct::one(), r).evaluate(5);
        assert!(matches!(e, Err(Error::Divergent(_))));
        let r = TermRatio::new().times_monomial(&QMonomial::q(1));
        let e = TermSum::new(QProduct::one(), r).with_max_terms(3).evaluate(10);
        assert_eq!(e.unwrap_err(), Error::InsufficientTerms { needed: 10, given: 3 });
    }

    #[test]
    fn pole_is_reported() {
        let r = TermRatio::new().over(rat(1), -2, 1).times_monomial(&QMonomial::q(1));
        let e = TermSum::new(QProduct::one(), r).evaluate(10);
        assert!(matches!(e, Err(Error::Pole(_))));
    }

    #[test]
    fn matches_explicit_terms() {
        // Σ (-1)^k q^{k(k+3)/2} / (1 - q^{2k+1})
        let mut first = QProduct::one();
        first.over_binomial(&QMonomial::q(1));
        let r = TermRatio::new()
            .times_monomial(&QMonomial::neg_q(2))
            .times_q_linear(1)
            .times(rat(1), 1, 2)
            .over(rat(1), 3, 2);
        let engine = TermSum::new(first, r).evaluate(80).unwrap().series;
        let terms: Vec<QProduct> = (0..20)
            .map(|k| {
                let mut p = QProduct::monomial(&QMonomial::new(rat(if k % 2 == 0 { 1 } else { -1 }), (k * (k + 3) / 2).into()));
                p.over_binomial(&QMonomial::q(2 * k + 1));
                p
            })
            .collect();
        let direct = sum_products(&terms, 1, 80).unwrap();
        assert!(engine.eq_to_order(&direct, 80).unwrap().is_equal());
    }

    #[test]
    fn laurent_terms() {
        // Σ_{k≤2} q^{-k}: negative valuations are kept exactly
        let r = TermRatio::new()
            .times_monomial(&QMonomial::q(-1))
            .times_poch(&QMonomial::q(-2), 1)
            .over(rat(1), 1, 1);
        let out = TermSum::new(QProduct::one(), r).evaluate(5).unwrap();
        assert!(out.series.floor() < 0);
        assert_eq!(out.terms, 3);
    }
}
