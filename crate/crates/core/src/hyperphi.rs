//! Basic hypergeometric series and the concrete sums built on them.
//!
//! Every sum here goes through the [`TermSum`] engine; limits in a free
//! parameter are replaced by stabilization scans along monomial paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qproducts::{product_side, QMonomial, QProduct};
use crate::series::{Comparison, ExponentQ, LaurentSeries};
use crate::sum::{TermRatio, TermSum};
use crate::Rational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn q(e: i64) -> QMonomial {
    QMonomial::q(e)
}

/// `_rφ_s[upper; lower; q^base, argument]` truncated at q-order `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub upper: Vec<QMonomial>,
    pub lower: Vec<QMonomial>,
    pub base: ExponentQ,
    pub argument: QMonomial,
    pub order: i64,
}

impl PhiSpec {
    pub fn new(upper: Vec<QMonomial>, lower: Vec<QMonomial>, base: impl Into<ExponentQ>, argument: QMonomial, order: i64) -> Self {
        PhiSpec { upper, lower, base: base.into(), argument, order }
    }

    /// The term sequence; term `l` carries `((-1)^l p^C(l,2))^(s-r+1) z^l`.
    pub fn to_sum(&self) -> Result<TermSum> {
        if !self.base.is_positive() {
            return Err(Error::Divergent(format!("base q^{} must have a positive exponent", self.base)));
        }
        let m = self.base;
        let k = self.lower.len() as i64 - self.upper.len() as i64 + 1;
        let sign = if k.rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
        let mut r = TermRatio::new()
            .times_monomial(&self.argument)
            .times_monomial(&QMonomial::constant(sign))
            .times_q_linear(m * k)
            .over(rat(1), m, m);
        for a in &self.upper {
            r = r.times_poch(a, m);
        }
        for b in &self.lower {
            r = r.over_poch(b, m);
        }
        Ok(TermSum::new(QProduct::one(), r))
    }
}

pub fn phi(spec: &PhiSpec) -> Result<LaurentSeries> {
    if spec.order < 1 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    Ok(spec.to_sum()?.evaluate(spec.order)?.series)
}

fn ck2_ratio(d: &QMonomial) -> Result<TermRatio> {
    let q3d = q(3).div(d)?;
    let mut r = TermRatio::new()
        .times_monomial(&q(1))
        .times(rat(1), 5, 3)
        .over(rat(1), 2, 3)
        .times(rat(1), 2, 2)
        .times_poch(d, 2)
        .times_poch(&q3d, 2)
        .over(rat(1), 1, 1)
        .over_poch(&q3d, 1)
        .over_poch(d, 1);
    for _ in 0..3 {
        r = r.times(rat(1), 1, 1).over(rat(1), 3, 2);
    }
    Ok(r)
}

/// Left side of the `a = q^2, b = c = q` quadratic transformation.
pub fn ck2_lhs(d: &QMonomial, order: i64) -> Result<LaurentSeries> {
    Ok(TermSum::new(QProduct::one(), ck2_ratio(d)?).evaluate(order)?.series)
}

/// Product times `_3φ_2[q,q,q; dq, q^4/d; q^2, q^2]`.
pub fn ck2_rhs(d: &QMonomial, order: i64) -> Result<LaurentSeries> {
    let spec = PhiSpec::new(vec![q(1), q(1), q(1)], vec![d.shift(1), q(4).div(d)?], 2, q(2), order);
    let mut pre = QProduct::one();
    pre.times_inf(&q(4), 2, 1)?
        .times_inf(&q(2), 2, 3)?
        .times_inf(&q(1), 2, -1)?
        .times_inf(&q(3), 2, -3)?;
    let s = phi(&spec)?;
    pre.apply_to(&s, Some(order * s.scale() as i64))
}

/// `_3φ_2[q,q,q; q^(M+1), q^(4-M); q^2, q^2]`, the `d = q^M` path.
pub fn ck3_stabilization(m: u32, order: i64) -> Result<LaurentSeries> {
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let m = m as i64;
    phi(&PhiSpec::new(vec![q(1), q(1), q(1)], vec![q(m + 1), q(4 - m)], 2, q(2), order))
}

/// Outcome of the `d = q^M` scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ck3Scan {
    /// Smallest `M` from which every non-singular path point equals 1 on the window.
    pub threshold: u32,
    /// Path points skipped because `q^(4-M)` hits a zero of `(.;q^2)_l`.
    pub poles: Vec<u32>,
}

/// Scans `M = 1..=m_max`; the last point must already be stable.
pub fn ck3_threshold(order: i64, m_max: u32) -> Result<Ck3Scan> {
    let one = LaurentSeries::one(1, order);
    let mut poles = Vec::new();
    let mut threshold = None;
    for m in 1..=m_max {
        match ck3_stabilization(m, order) {
            Err(Error::Pole(_)) => poles.push(m),
            Err(e) => return Err(e),
            Ok(s) => {
                if s.eq_to_order(&one, order)?.is_equal() {
                    threshold.get_or_insert(m);
                } else {
                    threshold = None;
                }
            }
        }
    }
    match threshold {
        Some(t) => Ok(Ck3Scan { threshold: t, poles }),
        None => Err(Error::BudgetExceeded(format!("no stabilization to 1 for M ≤ {m_max} at order {order}"))),
    }
}

/// `Σ q^{n(n+1)/2} (1-q^{3n+2})/(1-q) (q;q)_n^3 (-q;q)_n / (q^3;q^2)_n^3`.
pub fn qid_lhs(order: i64) -> Result<LaurentSeries> {
    let mut first = QProduct::one();
    first.times_binomial(&q(2)).over_binomial(&q(1));
    let mut r = TermRatio::new()
        .times_monomial(&q(1))
        .times_q_linear(1)
        .times(rat(1), 5, 3)
        .over(rat(1), 2, 3)
        .times(rat(-1), 1, 1);
    for _ in 0..3 {
        r = r.times(rat(1), 1, 1).over(rat(1), 3, 2);
    }
    Ok(TermSum::new(first, r).evaluate(order)?.series)
}

/// `Σ q^{2n(n+1)} (1 + q^{2n+2} - 2q^{4n+3}) (q^2;q^2)_n^3 / ((q;q^2)_{n+1}^3 (-1;q)_{2n+3})`.
pub fn q2_lhs(order: i64) -> Result<LaurentSeries> {
    let mut first = QProduct::one();
    first.times_finite(&q(1), 2, 1, -3).times_finite(&QMonomial::constant(rat(-1)), 1, 3, -1);
    let mut r = TermRatio::new()
        .times_monomial(&q(4))
        .times_q_linear(4)
        .over(rat(-1), 3, 2)
        .over(rat(-1), 4, 2);
    for _ in 0..3 {
        r = r.times(rat(1), 2, 2).over(rat(1), 3, 2);
    }
    let post = Box::new(|n: i64| {
        vec![
            (rat(1), ExponentQ::zero()),
            (rat(1), ExponentQ::integer(2 * n + 2)),
            (rat(-2), ExponentQ::integer(4 * n + 3)),
        ]
    });
    Ok(TermSum::new(first, r).with_post(1, post).evaluate(order)?.series)
}

/// `Σ (-1)^k q^{k(k+3)/2} / (1 - q^{2k+1})`, summed term by term.
pub fn pi2_summand_lhs(order: i64) -> Result<LaurentSeries> {
    let mut first = QProduct::one();
    first.over_binomial(&q(1));
    let r = TermRatio::new()
        .times_monomial(&QMonomial::neg_q(2))
        .times_q_linear(1)
        .times(rat(1), 1, 2)
        .over(rat(1), 3, 2);
    Ok(TermSum::new(first, r).evaluate(order)?.series)
}

/// `Σ (-q)^k / (1 - q^{2k+1})`, summed term by term.
pub fn pi1_summand_lhs(order: i64) -> Result<LaurentSeries> {
    let mut first = QProduct::one();
    first.over_binomial(&q(1));
    let r = TermRatio::new()
        .times_monomial(&QMonomial::neg_q(1))
        .times(rat(1), 1, 2)
        .over(rat(1), 3, 2);
    Ok(TermSum::new(first, r).evaluate(order)?.series)
}

/// `_2φ_2[a, q/a; -q, b; q, -b]` against `(ab, bq/a; q^2)_inf / (b;q)_inf`.
pub fn two_phi_two_summation(a: &QMonomial, b: &QMonomial, order: i64) -> Result<Comparison> {
    let qa = q(1).div(a)?;
    let neg_b = QMonomial::new(-b.coeff.clone(), b.exp);
    let lhs = phi(&PhiSpec::new(vec![a.clone(), qa.clone()], vec![QMonomial::neg_q(1), b.clone()], 1, neg_b, order))?;
    let mut rhs = QProduct::one();
    rhs.times_inf(&a.mul(b), 2, 1)?
        .times_inf(&b.mul(&qa), 2, 1)?
        .times_inf(b, 1, -1)?;
    let rhs = rhs.series(order)?;
    lhs.eq_to_order(&rhs, order)
}

/// `_2φ_2[q,q; -q^2,-q^3; q^2, q^3]`.
pub fn sum_2phi2_lhs(order: i64) -> Result<LaurentSeries> {
    phi(&PhiSpec::new(vec![q(1), q(1)], vec![QMonomial::neg_q(2), QMonomial::neg_q(3)], 2, q(3), order))
}

/// `(-q^4;q^4)_inf^2 / (-q^3;q^2)_inf`.
pub fn sum_2phi2_rhs(order: i64) -> Result<LaurentSeries> {
    let mut p = QProduct::one();
    p.times_inf(&QMonomial::neg_q(4), 4, 2)?.times_inf(&QMonomial::neg_q(3), 2, -1)?;
    p.series(order)
}

/// `_3φ_3[q, √q, -√q; -q^{3/2}, q^{3/2}, 0; q, q^2]`.
pub fn reduced_3phi3(order: i64) -> Result<LaurentSeries> {
    let h = ExponentQ::new(1, 2);
    let t = ExponentQ::new(3, 2);
    phi(&PhiSpec::new(
        vec![q(1), QMonomial::q(h), QMonomial::neg_q(h)],
        vec![QMonomial::neg_q(t), QMonomial::q(t), QMonomial::zero()],
        1,
        q(2),
        order,
    ))
}

/// `_3φ_3[...] (q^3;q^2)_inf^2`.
pub fn reduced_3phi3_lhs(order: i64) -> Result<LaurentSeries> {
    let mut p = QProduct::one();
    p.times_inf(&q(3), 2, 2)?;
    let s = reduced_3phi3(order)?;
    p.apply_to(&s, Some(order * s.scale() as i64))
}

/// `(q^2;q^2)_inf (q^4;q^2)_inf _2φ_2[q,q; -q^2,-q^3; q^2, q^3]`.
pub fn reduced_3phi3_rhs(order: i64) -> Result<LaurentSeries> {
    let mut p = QProduct::one();
    p.times_inf(&q(2), 2, 1)?.times_inf(&q(4), 2, 1)?;
    p.apply_to(&sum_2phi2_lhs(order)?, Some(order))
}

fn red_ratio(n: u32, d: &QMonomial) -> Result<TermRatio> {
    let n = n as i64;
    let mut r = TermRatio::new()
        .times_monomial(&q(2))
        .times(rat(1), 7, 6)
        .over(rat(1), 1, 6)
        .times_poch(d, 4)
        .times_poch(&q(4 * n + 4).div(d)?, 4)
        .times_poch(&q(-4 * n), 4)
        .over_poch(&q(3).div(d)?, 2)
        .over_poch(&d.shift(-4 * n - 1), 2)
        .over_poch(&q(4 * n + 3), 2);
    for _ in 0..3 {
        r = r.over(rat(1), 4, 4).times(rat(1), 1, 2);
    }
    Ok(r)
}

/// Terminating left side of the `a = b = q` quadratic summation.
pub fn red_lhs(n: u32, d: &QMonomial, order: i64) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    Ok(TermSum::new(QProduct::one(), red_ratio(n, d)?).evaluate(order)?.series)
}

/// Product side of the same summation.
pub fn red_rhs(n: u32, d: &QMonomial, order: i64) -> Result<LaurentSeries> {
    let n = n as i64;
    let mut p = QProduct::one();
    p.times_inf(&q(3), 2, 1)?
        .times_inf(&q(4 * n + 3).div(d)?, 2, 1)?
        .times_inf(&q(3).div(d)?, 2, -1)?
        .times_inf(&q(4 * n + 3), 2, -1)?
        .times_inf(&q(4).div(d)?, 4, 2)?
        .times_inf(&q(4 * n + 4), 4, 2)?
        .times_inf(&q(4), 4, -2)?
        .times_inf(&q(4 * n + 4).div(d)?, 4, -2)?;
    p.series(order)
}

/// Finite form of the product side at `d = q^{-2N}`.
pub fn red_rhs_finite(n: u32, order: i64) -> Result<LaurentSeries> {
    let (nn, n) = (n as i64, n as u64);
    let mut p = QProduct::one();
    p.times_finite(&q(3), 2, n, 1)
        .times_finite(&q(2 * nn + 4), 4, n, 2)
        .times_finite(&q(4), 4, n, -2)
        .times_finite(&q(4 * nn + 3), 2, n, -1);
    p.series(order)
}

/// Compares both sides; at `d = q^{-2N}` the finite product form must agree too.
pub fn red_identity(n: u32, d: &QMonomial, order: i64) -> Result<Comparison> {
    let lhs = red_lhs(n, d, order)?;
    let c = lhs.eq_to_order(&red_rhs(n, d, order)?, order)?;
    if !c.is_equal() {
        return Ok(c);
    }
    if *d == q(-2 * n as i64) {
        return lhs.eq_to_order(&red_rhs_finite(n, order)?, order);
    }
    Ok(c)
}

/// Which of the two `6n+1` identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GlWhich {
    One,
    Two,
}

impl GlWhich {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(GlWhich::One),
            2 => Ok(GlWhich::Two),
            _ => Err(Error::InvalidArgument(format!("expected 1 or 2, got {i}"))),
        }
    }

    /// Parameter path `d(N)` that recovers this identity as `N` grows.
    pub fn path(self, n: u32) -> QMonomial {
        match self {
            GlWhich::One => q(2),
            GlWhich::Two => q(-2 * n as i64),
        }
    }

    pub fn rhs_name(self) -> &'static str {
        match self {
            GlWhich::One => "gl1.rhs",
            GlWhich::Two => "gl2.rhs",
        }
    }
}

/// `Σ q^{n^2} (1-q^{6n+1})/(1-q) (q;q^2)_n^2 (q^2;q^4)_n / (q^4;q^4)_n^3` or
/// `Σ (-1)^n q^{3n^2} (1-q^{6n+1})/(1-q) (q;q^2)_n^3 / (q^4;q^4)_n^3`.
pub fn gl_lhs(which: GlWhich, order: i64) -> Result<LaurentSeries> {
    let mut r = TermRatio::new().times(rat(1), 7, 6).over(rat(1), 1, 6);
    for _ in 0..3 {
        r = r.over(rat(1), 4, 4);
    }
    r = match which {
        GlWhich::One => r
            .times_monomial(&q(1))
            .times_q_linear(2)
            .times(rat(1), 1, 2)
            .times(rat(1), 1, 2)
            .times(rat(1), 2, 4),
        GlWhich::Two => r
            .times_monomial(&QMonomial::neg_q(3))
            .times_q_linear(6)
            .times(rat(1), 1, 2)
            .times(rat(1), 1, 2)
            .times(rat(1), 1, 2),
    };
    Ok(TermSum::new(QProduct::one(), r).evaluate(order)?.series)
}

pub fn gl_rhs(which: GlWhich, order: i64) -> Result<LaurentSeries> {
    product_side(which.rhs_name(), order)
}

/// Outcome of the `N → ∞` stabilization scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlLimit {
    pub which: GlWhich,
    pub order: i64,
    /// First `N` whose left side equals the next two on the whole window.
    pub stable_at: u32,
    /// Stabilized series against the independently built limit sides.
    pub comparison: Comparison,
}

/// Runs `N = 1, 2, …` along the path, checking the finite identity at each
/// step, until the window `[0, order)` is constant for three consecutive `N`.
pub fn gl_limit_check(which: GlWhich, order: i64) -> Result<GlLimit> {
    let budget = order.max(1) as u32;
    let mut history: Vec<LaurentSeries> = Vec::new();
    for n in 1..=budget + 2 {
        let d = which.path(n);
        let lhs = red_lhs(n, &d, order)?;
        let c = lhs.eq_to_order(&red_rhs(n, &d, order)?, order)?;
        if !c.is_equal() {
            return Ok(GlLimit { which, order, stable_at: n, comparison: c });
        }
        history.push(lhs);
        let k = history.len();
        if k >= 3 && history[k - 3] == history[k - 2] && history[k - 2] == history[k - 1] {
            let stable_at = n - 2;
            let s = &history[k - 1];
            let mut comparison = s.eq_to_order(&gl_lhs(which, order)?, order)?;
            if comparison.is_equal() {
                comparison = s.eq_to_order(&gl_rhs(which, order)?, order)?;
            }
            return Ok(GlLimit { which, order, stable_at, comparison });
        }
    }
    Err(Error::BudgetExceeded(format!("window [0, {order}) not stable for N ≤ {budget}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &LaurentSeries, n: i64) -> Vec<Rational> {
        s.q_coeffs_upto(n)
    }

    #[test]
    fn terminating_one_phi_zero() {
        let spec = PhiSpec::new(vec![q(-2)], vec![], 1, q(1), 20);
        let out = spec.to_sum().unwrap().evaluate(20).unwrap();
        assert_eq!(out.terms, 3);
        // q-binomial theorem: (q^{-2} z;q)_2 with z = q, i.e. (1 - q^{-1})(1 - 1) = 0
        assert!(out.series.is_zero());
    }

    #[test]
    fn zero_argument_gives_one() {
        let spec = PhiSpec::new(vec![q(1), q(2)], vec![q(3)], 1, QMonomial::zero(), 10);
        assert!(phi(&spec).unwrap().eq_to_order(&LaurentSeries::one(1, 10), 10).unwrap().is_equal());
    }

    #[test]
    fn divergent_argument() {
        let spec = PhiSpec::new(vec![q(1), q(1)], vec![], 1, q(-1), 10);
        assert!(matches!(phi(&spec), Err(Error::Divergent(_))));
    }

    #[test]
    fn q_binomial_theorem() {
        // 1φ0[a; q, z] = (az;q)_inf / (z;q)_inf
        let (a, z) = (QMonomial::neg_q(2), q(1));
        let lhs = phi(&PhiSpec::new(vec![a.clone()], vec![], 1, z.clone(), 40)).unwrap();
        let mut p = QProduct::one();
        p.times_inf(&a.mul(&z), 1, 1).unwrap().times_inf(&z, 1, -1).unwrap();
        assert!(lhs.eq_to_order(&p.series(40).unwrap(), 40).unwrap().is_equal());
    }

    #[test]
    fn two_phi_two_instance() {
        assert!(sum_2phi2_lhs(100).unwrap().eq_to_order(&sum_2phi2_rhs(100).unwrap(), 100).unwrap().is_equal());
    }

    #[test]
    fn two_phi_two_samples() {
        for (a, b) in [(q(1), q(3)), (q(2), q(2)), (QMonomial::neg_q(1), q(4)), (q(1), QMonomial::neg_q(2))] {
            assert!(two_phi_two_summation(&a, &b, 40).unwrap().is_equal(), "a = {a}, b = {b}");
        }
    }

    #[test]
    fn reduced_identity() {
        let l = reduced_3phi3_lhs(80).unwrap();
        assert!(l.eq_to_order(&reduced_3phi3_rhs(80).unwrap(), 80).unwrap().is_equal());
        // the 3φ3 is (1-q) times the alternating Lambert sum
        let mut f = QProduct::one();
        f.times_binomial(&q(1));
        let scaled = f.apply_to(&pi2_summand_lhs(80).unwrap(), None).unwrap();
        assert!(reduced_3phi3(80).unwrap().eq_to_order(&scaled, 80).unwrap().is_equal());
    }

    #[test]
    fn qid_golden_prefix() {
        let s = qid_lhs(11).unwrap();
        let expect: Vec<Rational> = [1, 2, -1, 0, 3, -6, 3, 8, -16, 8, 10].iter().map(|&x| rat(x)).collect();
        assert_eq!(coeffs(&s, 11), expect);
        assert!(qid_lhs(120).unwrap().eq_to_order(&product_side("qid.rhs", 120).unwrap(), 120).unwrap().is_equal());
    }

    #[test]
    fn ck2_samples() {
        for d in [q(1), q(2), QMonomial::q(ExponentQ::new(1, 2)), QMonomial::neg_q(1)] {
            let l = ck2_lhs(&d, 40).unwrap();
            let r = ck2_rhs(&d, 40).unwrap();
            assert!(l.eq_to_order(&r, 40).unwrap().is_equal(), "d = {d}");
        }
    }

    #[test]
    fn ck2_degenerate_points() {
        assert!(matches!(ck2_lhs(&q(3), 10), Err(Error::Pole(_))));
        assert!(matches!(ck2_rhs(&q(4), 10), Err(Error::Pole(_))));
    }

    #[test]
    fn ck3_stabilizes() {
        let scan = ck3_threshold(20, 60).unwrap();
        assert!(scan.poles.contains(&4));
        let s = ck3_stabilization(scan.threshold + 1, 20);
        if let Ok(s) = s {
            assert!(s.eq_to_order(&LaurentSeries::one(1, 20), 20).unwrap().is_equal());
        }
    }

    #[test]
    fn red_small_cases() {
        assert!(red_identity(1, &q(2), 80).unwrap().is_equal());
        assert!(red_identity(3, &q(-6), 80).unwrap().is_equal());
        let r = TermSum::new(QProduct::one(), red_ratio(1, &q(2)).unwrap()).evaluate(200).unwrap();
        assert_eq!(r.terms, 2);
    }

    #[test]
    fn red_raw_series_route() {
        // N = 3, d = q^{-6}, summed from explicit Laurent factors
        let (n, order) = (3i64, 60i64);
        let d = q(-2 * n);
        let mut total = LaurentSeries::zero(1, -60, order);
        for k in 0..=n {
            let mut p = QProduct::monomial(&q(2 * k));
            p.times_binomial(&q(6 * k + 1)).over_binomial(&q(1));
            for a in [d.clone(), q(4 * n + 4).div(&d).unwrap(), q(-4 * n)] {
                p.times_finite(&a, 4, k as u64, 1);
            }
            p.times_finite(&q(4), 4, k as u64, -3).times_finite(&q(1), 2, k as u64, 3);
            for b in [q(3).div(&d).unwrap(), d.shift(-4 * n - 1), q(4 * n + 3)] {
                p.times_finite(&b, 2, k as u64, -1);
            }
            total = total.checked_add(&p.series(order).unwrap()).unwrap();
        }
        assert!(total.eq_to_order(&red_rhs_finite(3, order).unwrap(), order).unwrap().is_equal());
    }

    #[test]
    fn gl_identities_direct() {
        for w in [GlWhich::One, GlWhich::Two] {
            assert!(gl_lhs(w, 100).unwrap().eq_to_order(&gl_rhs(w, 100).unwrap(), 100).unwrap().is_equal());
        }
    }

    #[test]
    fn gl_limits_small() {
        for w in [GlWhich::One, GlWhich::Two] {
            let r = gl_limit_check(w, 40).unwrap();
            assert!(r.comparison.is_equal());
            assert!(r.stable_at <= 40);
            assert_eq!(gl_limit_check(w, 1).unwrap().stable_at, 1);
        }
    }

    #[test]
    fn q2_constant_term() {
        assert_eq!(q2_lhs(1).unwrap().q_coeff(0), Some(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn phi_spec_json() {
        let js = r#"{"upper":[[1,1],[1,1]],"lower":[[-1,2],[-1,3]],"base":2,"argument":[1,3],"order":30}"#;
        let spec: PhiSpec = serde_json::from_str(js).unwrap();
        assert!(phi(&spec).unwrap().eq_to_order(&sum_2phi2_rhs(30).unwrap(), 30).unwrap().is_equal());
    }
}
