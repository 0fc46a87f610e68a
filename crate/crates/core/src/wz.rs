//! The q-WZ pair `(F_q, G_q)` with rational index shifts.
//!
//! `B_q(n, k)` is built from Pochhammer symbols whose index may be a
//! non-integer `n + a`, defined through the ratio of infinite products. For
//! grid checks the shift is split off once: with `x = n + a`,
//! `(c;p)_x = (c;p)_a (c p^a;p)_n`, so every term is a finite product times a
//! cached series `Ω_a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qproducts::{PochSpec, QMonomial, QProduct};
use crate::series::{Comparison, ExponentQ, LaurentSeries};
use crate::sum::{TermRatio, TermSum};
use crate::Rational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn q(e: impl Into<ExponentQ>) -> QMonomial {
    QMonomial::q(e)
}

fn ex(r: Ratio<i64>) -> ExponentQ {
    ExponentQ::from(r)
}

/// A factor product times an exact polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WzExpr {
    pub product: QProduct,
    pub poly: Vec<(Rational, ExponentQ)>,
}

impl WzExpr {
    fn plain(product: QProduct) -> Self {
        WzExpr { product, poly: vec![(Rational::one(), ExponentQ::zero())] }
    }

    pub fn series(&self, order: i64) -> Result<LaurentSeries> {
        self.product.series(order)?.mul_polynomial(&self.poly)
    }

    pub fn eval_real(&self, q0: f64) -> Result<f64> {
        let p = self.product.eval_real(q0, 1e-17, 50_000_000)?;
        let poly: f64 = self
            .poly
            .iter()
            .map(|(c, e)| c.to_f64().unwrap_or(f64::NAN) * q0.powf(e.to_f64()))
            .sum();
        Ok(p * poly)
    }
}

/// A value of `B_q`, `F_q` or `G_q` at `(n + a, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WzTerm {
    pub n: u64,
    pub k: u64,
    pub a: Ratio<i64>,
    pub value: LaurentSeries,
}

fn check_offset(a: Ratio<i64>) -> Result<()> {
    if a < Ratio::zero() {
        return Err(Error::InvalidArgument(format!("offset {a} must be non-negative")));
    }
    Ok(())
}

/// `(c; q^base)_x` by the finite product for integral `x`, otherwise by the
/// infinite-product ratio.
fn poch_at(p: &mut QProduct, c: &QMonomial, base: i64, x: Ratio<i64>, power: i32) -> Result<()> {
    let spec = if x.is_integer() {
        PochSpec::finite(c.clone(), base, x.to_integer() as u64)
    } else {
        PochSpec::real(c.clone(), base, x)
    };
    for _ in 0..power.unsigned_abs() {
        if power > 0 {
            p.times_poch(&spec)?;
        } else {
            p.over_poch(&spec)?;
        }
    }
    Ok(())
}

/// `B_q(x, k)` with `x = n + a`, straight from the definition.
pub fn b_product(n: u64, k: u64, a: Ratio<i64>) -> Result<QProduct> {
    check_offset(a)?;
    let x = Ratio::from_integer(n as i64) + a;
    let mut p = QProduct::monomial(&q(ex(x * x * 2 + x * (4 * k as i64))));
    p.times_finite(&q(1), 2, k, 2)
        .times_finite(&q(ex(x * 2 + 2)), 2, k, -2);
    poch_at(&mut p, &q(1), 2, x, 3)?;
    poch_at(&mut p, &q(2), 2, x, -3)?;
    poch_at(&mut p, &QMonomial::constant(rat(-1)), 1, x * 2, -1)?;
    Ok(p)
}

/// `4 (1 - q^{2x}) / (1 - q)`.
fn f_factor(x: Ratio<i64>) -> QProduct {
    let mut p = QProduct::scalar(rat(4));
    p.times_binomial(&q(ex(x * 2))).over_binomial(&q(1));
    p
}

/// `4 / ((1 - q)(1 + q^{2x})(1 + q^{2x+1}))` and `1 + q^{2x+1} - 2 q^{4x+2k+1}`.
fn g_factor(x: Ratio<i64>, k: u64) -> (QProduct, Vec<(Rational, ExponentQ)>) {
    let mut p = QProduct::scalar(rat(4));
    p.over_binomial(&q(1))
        .over_binomial(&QMonomial::neg_q(ex(x * 2)))
        .over_binomial(&QMonomial::neg_q(ex(x * 2 + 1)));
    let poly = vec![
        (rat(1), ExponentQ::zero()),
        (rat(1), ex(x * 2 + 1)),
        (rat(-2), ex(x * 4 + 1) + ExponentQ::integer(2 * k as i64)),
    ];
    (p, poly)
}

fn shifted(n: u64, a: Ratio<i64>) -> Ratio<i64> {
    Ratio::from_integer(n as i64) + a
}

pub fn f_expr(n: u64, k: u64, a: Ratio<i64>) -> Result<WzExpr> {
    Ok(WzExpr::plain(b_product(n, k, a)?.product(&f_factor(shifted(n, a)))))
}

pub fn g_expr(n: u64, k: u64, a: Ratio<i64>) -> Result<WzExpr> {
    let (p, poly) = g_factor(shifted(n, a), k);
    Ok(WzExpr { product: b_product(n, k, a)?.product(&p), poly })
}

fn term(n: u64, k: u64, a: Ratio<i64>, value: LaurentSeries) -> WzTerm {
    WzTerm { n, k, a, value }
}

pub fn b_q(n: u64, k: u64, a: Ratio<i64>, order: i64) -> Result<WzTerm> {
    Ok(term(n, k, a, b_product(n, k, a)?.series(order)?))
}

pub fn f_q(n: u64, k: u64, a: Ratio<i64>, order: i64) -> Result<WzTerm> {
    Ok(term(n, k, a, f_expr(n, k, a)?.series(order)?))
}

pub fn g_q(n: u64, k: u64, a: Ratio<i64>, order: i64) -> Result<WzTerm> {
    Ok(term(n, k, a, g_expr(n, k, a)?.series(order)?))
}

/// `F(n+1,k) - F(n,k)` against `G(n,k+1) - G(n,k)` via the definitional route.
pub fn wz_relation_check(n: u64, k: u64, a: Ratio<i64>, order: i64) -> Result<Comparison> {
    let lhs = f_q(n + 1, k, a, order)?.value.checked_sub(&f_q(n, k, a, order)?.value)?;
    let rhs = g_q(n, k + 1, a, order)?.value.checked_sub(&g_q(n, k, a, order)?.value)?;
    lhs.eq_to_order(&rhs, order)
}

/// `Ω_a = (q;q^2)_a^3 / ((q^2;q^2)_a^3 (-1;q)_{2a})`.
fn omega(a: Ratio<i64>) -> Result<QProduct> {
    let mut p = QProduct::one();
    poch_at(&mut p, &q(1), 2, a, 3)?;
    poch_at(&mut p, &q(2), 2, a, -3)?;
    poch_at(&mut p, &QMonomial::constant(rat(-1)), 1, a * 2, -1)?;
    Ok(p)
}

/// `B_q(n + a, k) / Ω_a`, a finite product.
fn b_finite(n: u64, k: u64, a: Ratio<i64>) -> QProduct {
    let x = shifted(n, a);
    let mut p = QProduct::monomial(&q(ex(x * x * 2 + x * (4 * k as i64))));
    p.times_finite(&q(1), 2, k, 2)
        .times_finite(&q(ex(x * 2 + 2)), 2, k, -2)
        .times_finite(&q(ex(a * 2 + 1)), 2, n, 3)
        .times_finite(&q(ex(a * 2 + 2)), 2, n, -3)
        .times_finite(&QMonomial::neg_q(ex(a * 2)), 1, 2 * n, -1);
    p
}

/// One failing grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub n: u64,
    pub k: u64,
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WzGridReport {
    pub a: String,
    pub nmax: u64,
    pub kmax: u64,
    pub order: i64,
    pub checked: u64,
    pub failures: Vec<GridFailure>,
}

impl WzGridReport {
    pub fn all_equal(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pair relation on `0 ≤ n ≤ nmax, 0 ≤ k ≤ kmax`, sharing `Ω_a` across the grid.
pub fn wz_grid(a: Ratio<i64>, nmax: u64, kmax: u64, order: i64) -> Result<WzGridReport> {
    check_offset(a)?;
    let om = omega(a)?;
    let scale = [om.natural_scale(), b_finite(1, 1, a).natural_scale(), f_factor(a + 1).natural_scale()]
        .into_iter()
        .fold(1u32, |s, x| s.lcm(&x))
        .lcm(&(*(a * 4).denom() as u32));
    let t_order = order * scale as i64;
    let om_series = om.expand(scale, t_order)?;

    let points: Vec<(u64, u64)> = (0..=nmax + 1).flat_map(|n| (0..=kmax + 1).map(move |k| (n, k))).collect();
    let cols = (kmax + 2) as usize;
    let bs: Vec<LaurentSeries> = points
        .par_iter()
        .map(|&(n, k)| b_finite(n, k, a).apply_to(&om_series, Some(t_order)))
        .collect::<Result<_>>()?;
    let b = |n: u64, k: u64| &bs[n as usize * cols + k as usize];
    let f = |n: u64, k: u64| f_factor(shifted(n, a)).apply_to(b(n, k), Some(t_order));
    let g = |n: u64, k: u64| -> Result<LaurentSeries> {
        let (p, poly) = g_factor(shifted(n, a), k);
        p.apply_to(b(n, k), Some(t_order))?.mul_polynomial(&poly)
    };

    let checks: Vec<Option<GridFailure>> = points
        .par_iter()
        .filter(|&&(n, k)| n <= nmax && k <= kmax)
        .map(|&(n, k)| -> Result<Option<GridFailure>> {
            let lhs = f(n + 1, k)?.checked_sub(&f(n, k)?)?;
            let rhs = g(n, k + 1)?.checked_sub(&g(n, k)?)?;
            Ok(match lhs.eq_to_order(&rhs, order)? {
                Comparison::Equal => None,
                Comparison::Mismatch(m) => Some(GridFailure {
                    n,
                    k,
                    exponent: m.exponent.to_string(),
                    lhs: m.lhs.to_string(),
                    rhs: m.rhs.to_string(),
                }),
            })
        })
        .collect::<Result<_>>()?;
    Ok(WzGridReport {
        a: a.to_string(),
        nmax,
        kmax,
        order,
        checked: checks.len() as u64,
        failures: checks.into_iter().flatten().collect(),
    })
}

/// Both sides of `Σ_n G_q(n+a, 0) = Σ_k F_q(a, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Telescope {
    pub g_sum: LaurentSeries,
    pub f_sum: LaurentSeries,
    pub g_terms: usize,
    pub f_terms: usize,
    pub comparison: Comparison,
}

fn g_column(a: Ratio<i64>, n_terms: usize) -> Result<TermSum> {
    let first = g_expr(0, 0, a)?;
    let two_a = ex(a * 2);
    let mut r = TermRatio::new()
        .times_monomial(&q(ex(a * 4 + 2)))
        .times_q_linear(4)
        .over(rat(-1), two_a + 2.into(), 2)
        .over(rat(-1), two_a + 3.into(), 2);
    for _ in 0..3 {
        r = r.times(rat(1), two_a + 1.into(), 2).over(rat(1), two_a + 2.into(), 2);
    }
    let post = Box::new(move |n: i64| {
        let x = Ratio::from_integer(n) + a;
        vec![(rat(1), ExponentQ::zero()), (rat(1), ex(x * 2 + 1)), (rat(-2), ex(x * 4 + 1))]
    });
    let scale = (*(a * 4).denom() as u32).max(1);
    Ok(TermSum::new(first.product, r).with_post(scale, post).with_max_terms(n_terms))
}

fn f_row(a: Ratio<i64>, k_terms: usize) -> Result<TermSum> {
    let first = f_expr(0, 0, a)?;
    let mut r = TermRatio::new().times_monomial(&q(ex(a * 4)));
    for _ in 0..2 {
        r = r.times(rat(1), 1, 2).over(rat(1), ex(a * 2 + 2), 2);
    }
    Ok(TermSum::new(first.product, r).with_max_terms(k_terms))
}

/// Sums both sides with the given term budgets; a budget that does not
/// clear the window is an [`Error::InsufficientTerms`].
pub fn telescope_check(a: Ratio<i64>, n_terms: usize, k_terms: usize, order: i64) -> Result<Telescope> {
    if a <= Ratio::zero() {
        return Err(Error::InvalidArgument(format!(
            "offset {a} must be positive: the k → ∞ boundary term does not vanish otherwise"
        )));
    }
    let g = g_column(a, n_terms)?.evaluate(order)?;
    let f = f_row(a, k_terms)?.evaluate(order)?;
    let comparison = g.series.eq_to_order(&f.series, order)?;
    Ok(Telescope { g_sum: g.series, f_sum: f.series, g_terms: g.terms, f_terms: f.terms, comparison })
}

/// `C = 4 q^{1/2} (q;q^2)_inf^6 / ((1-q) (q^2;q^2)_inf^6)`, the common factor
/// of both telescoped sums at `a = 1/2`.
fn half_offset_factor() -> Result<QProduct> {
    let mut p = QProduct::monomial(&QMonomial::new(rat(4), ExponentQ::new(1, 2)));
    p.over_binomial(&q(1)).times_inf(&q(1), 2, 6)?.times_inf(&q(2), 2, -6)?;
    Ok(p)
}

/// The two telescoped sums at `a = 1/2` divided by their common factor:
/// `(Σ_n G_q(n+1/2, 0) / C, Σ_k F_q(1/2, k) / C)`.
pub fn q2_via_wz(order: i64) -> Result<(LaurentSeries, LaurentSeries)> {
    let half = Ratio::new(1, 2);
    let t = telescope_check(half, usize::MAX, usize::MAX, order + 1)?;
    let c = half_offset_factor()?.inverse();
    let t_order = order * 2;
    Ok((c.apply_to(&t.g_sum, Some(t_order))?, c.apply_to(&t.f_sum, Some(t_order))?))
}

/// Exact values of the classical pair at `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalWzTerm {
    pub n: u64,
    pub k: u64,
    pub b: Rational,
    pub f: Rational,
    pub g: Rational,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `B = (2k)!² (2n)!³ / (2^{8n+4k} (n+k)!² k!² n!⁴)`, `F = 8n B`, `G = (6n+4k+1) B`.
pub fn classical_pair(n: u64, k: u64) -> ClassicalWzTerm {
    let num = factorial(2 * k).pow(2) * factorial(2 * n).pow(3);
    let den = (BigInt::one() << (8 * n + 4 * k) as usize)
        * factorial(n + k).pow(2)
        * factorial(k).pow(2)
        * factorial(n).pow(4);
    let b = Rational::new(num, den);
    let f = &b * rat(8 * n as i64);
    let g = &b * rat((6 * n + 4 * k + 1) as i64);
    ClassicalWzTerm { n, k, b, f, g }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub eps: f64,
    pub f_q: f64,
    pub g_q: f64,
    pub f_error: f64,
    pub g_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalLimitReport {
    pub n: u64,
    pub k: u64,
    pub f: f64,
    pub g: f64,
    pub rows: Vec<LimitRow>,
    /// Whether both error sequences are non-increasing along the schedule.
    pub decreasing: bool,
}

/// Evaluates `F_q`, `G_q` at `q = 1 - eps` and compares with the classical pair.
pub fn classical_limit_check(n: u64, k: u64, eps: &[f64]) -> Result<ClassicalLimitReport> {
    let c = classical_pair(n, k);
    let (f, g) = (c.f.to_f64().unwrap_or(f64::NAN), c.g.to_f64().unwrap_or(f64::NAN));
    let fe = f_expr(n, k, Ratio::zero())?;
    let ge = g_expr(n, k, Ratio::zero())?;
    let mut rows = Vec::new();
    for &e in eps {
        if !(0.0 < e && e < 1.0) {
            return Err(Error::InvalidArgument(format!("eps {e} outside (0, 1)")));
        }
        let (fq, gq) = (fe.eval_real(1.0 - e)?, ge.eval_real(1.0 - e)?);
        rows.push(LimitRow { eps: e, f_q: fq, g_q: gq, f_error: (fq - f).abs(), g_error: (gq - g).abs() });
    }
    let decreasing = rows
        .windows(2)
        .all(|w| w[1].f_error <= w[0].f_error && w[1].g_error <= w[0].g_error);
    Ok(ClassicalLimitReport { n, k, f, g, rows, decreasing })
}
