//! Floating-point experiments: classical π series and q → 1⁻ limits.

use std::f64::consts::PI;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qproducts::{named_product, QMonomial, QProduct};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalSeries {
    /// `Σ_{k≥0} (-1)^k/(2k+1) = π/4`
    Leibniz,
    /// `Σ_{k≥1} (21k-8)/(k³ C(2k,k)³) = π²/6`
    Zeilberger,
    /// `Σ_{k≥1} (3k-1) 16^k/(k³ C(2k,k)³) = π²/2`
    Guillera,
    /// `Σ_{n≥0} (6n+1) C(2n,n)³/256^n = 4/π`
    Ram6n1,
    /// `Σ_{n≥0} (6n+1) C(2n,n)³/(-512)^n = 2√2/π`
    Ram6n1Alt,
    /// `Σ_{k≥1} (10k-3) 8^k/(k³ C(2k,k)² C(3k,k)) = π²/2` (conjectural)
    SunConj,
    /// `¼ Σ_{n≥0} (3n+2) 2^{4n} n!⁶/(2n+1)!³ = π²/16`
    Q2Limit,
}

impl ClassicalSeries {
    pub const ALL: [ClassicalSeries; 7] = [
        ClassicalSeries::Leibniz,
        ClassicalSeries::Zeilberger,
        ClassicalSeries::Guillera,
        ClassicalSeries::Ram6n1,
        ClassicalSeries::Ram6n1Alt,
        ClassicalSeries::SunConj,
        ClassicalSeries::Q2Limit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalSeries::Leibniz => "leibniz",
            ClassicalSeries::Zeilberger => "zeilberger",
            ClassicalSeries::Guillera => "guillera",
            ClassicalSeries::Ram6n1 => "ram-6n1",
            ClassicalSeries::Ram6n1Alt => "ram-6n1-alt",
            ClassicalSeries::SunConj => "sun-conj",
            ClassicalSeries::Q2Limit => "q2-limit",
        }
    }

    pub fn target(self) -> f64 {
        match self {
            ClassicalSeries::Leibniz => PI / 4.0,
            ClassicalSeries::Zeilberger => PI * PI / 6.0,
            ClassicalSeries::Guillera | ClassicalSeries::SunConj => PI * PI / 2.0,
            ClassicalSeries::Ram6n1 => 4.0 / PI,
            ClassicalSeries::Ram6n1Alt => 2.0 * 2f64.sqrt() / PI,
            ClassicalSeries::Q2Limit => PI * PI / 16.0,
        }
    }

    fn first_index(self) -> u64 {
        match self {
            ClassicalSeries::Zeilberger | ClassicalSeries::Guillera | ClassicalSeries::SunConj => 1,
            _ => 0,
        }
    }

    fn term(self, k: u64) -> Rational {
        let big = |x: u64| BigInt::from(x);
        let c = |n: u64, r: u64| binomial(big(n), big(r));
        let r = |n: BigInt, d: BigInt| Rational::new(n, d);
        let kk = big(k);
        match self {
            ClassicalSeries::Leibniz => {
                let s = if k.is_multiple_of(2) { 1 } else { -1 };
                r(BigInt::from(s), big(2 * k + 1))
            }
            ClassicalSeries::Zeilberger => r(big(21 * k) - 8, kk.pow(3) * c(2 * k, k).pow(3)),
            ClassicalSeries::Guillera => {
                r((big(3 * k) - 1) * BigInt::from(16).pow(k as u32), kk.pow(3) * c(2 * k, k).pow(3))
            }
            ClassicalSeries::Ram6n1 => r(big(6 * k + 1) * c(2 * k, k).pow(3), BigInt::from(256).pow(k as u32)),
            ClassicalSeries::Ram6n1Alt => {
                r(big(6 * k + 1) * c(2 * k, k).pow(3), BigInt::from(-512).pow(k as u32))
            }
            ClassicalSeries::SunConj => r(
                (big(10 * k) - 3) * BigInt::from(8).pow(k as u32),
                kk.pow(3) * c(2 * k, k).pow(2) * c(3 * k, k),
            ),
            ClassicalSeries::Q2Limit => {
                let fact = |n: u64| (1..=n).fold(BigInt::one(), |a, i| a * i);
                r(big(3 * k + 2) * BigInt::from(16).pow(k as u32) * fact(k).pow(6), fact(2 * k + 1).pow(3) * 4)
            }
        }
    }

    /// Exact partial sum of the first `terms` terms.
    pub fn partial_sum(self, terms: u32) -> Rational {
        let k0 = self.first_index();
        (k0..k0 + terms as u64).fold(Rational::zero(), |acc, k| acc + self.term(k))
    }
}

impl FromStr for ClassicalSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Partial sum of a named classical series, summed exactly then rounded.
pub fn classical_series(name: &str, terms: u32) -> Result<f64> {
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    let s: ClassicalSeries = name.parse()?;
    Ok(s.partial_sum(terms).to_f64().unwrap_or(f64::NAN))
}

/// Expressions available to [`q_limit`].
pub const LIMIT_IDS: &[&str] = &["gamma-half", "pi2.rhs", "pi2.lhs", "qid.rhs"];

#[derive(Clone, Debug, PartialEq)]
pub struct LimitConfig {
    /// Product factors closer to 1 than this end the truncation.
    pub tol: f64,
    pub max_depth: usize,
    /// Replaces the expression's own limit value when set.
    pub target: Option<f64>,
    pub richardson: bool,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig { tol: 1e-15, max_depth: 10_000_000, target: None, richardson: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitExperiment {
    pub id: String,
    pub eps: Vec<f64>,
    pub target: f64,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    /// Linear-in-ε extrapolation from the last two points, when requested.
    pub extrapolated: Option<f64>,
}

impl LimitExperiment {
    pub fn strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    pub fn final_error(&self) -> f64 {
        self.errors.last().copied().unwrap_or(f64::NAN)
    }
}

fn check_schedule(eps: &[f64]) -> Result<()> {
    if eps.is_empty() {
        return Err(Error::InvalidArgument("empty ε schedule".into()));
    }
    if let Some(e) = eps.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::InvalidArgument(format!("ε = {e} outside (0, 1)")));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("ε schedule must be strictly decreasing".into()));
    }
    Ok(())
}

/// `(1 - q^2) Σ (-1)^k q^{k(k+3)/2}/(1 - q^{2k+1})`, summed until terms drop below `tol`.
fn pi2_lhs_value(q0: f64, cfg: &LimitConfig) -> Result<f64> {
    let mut sum = 0.0f64;
    for k in 0..cfg.max_depth {
        let k = k as f64;
        let t = q0.powf(k * (k + 3.0) / 2.0) / (1.0 - q0.powf(2.0 * k + 1.0));
        if t.abs() < cfg.tol * sum.abs() {
            return Ok((1.0 - q0 * q0) * sum);
        }
        sum += if (k as u64).is_multiple_of(2) { t } else { -t };
    }
    Err(Error::BudgetExceeded(format!("alternating sum at q = {q0} exceeds {} terms", cfg.max_depth)))
}

fn limit_product(id: &str) -> Result<(QProduct, f64)> {
    match id {
        "gamma-half" => Ok((named_product(id)?, PI / 2.0)),
        "qid.rhs" => Ok((named_product(id)?, PI * PI / 4.0)),
        "pi2.rhs" => {
            let mut p = named_product(id)?;
            p.times_binomial(&QMonomial::q(2));
            Ok((p, PI / 2.0))
        }
        _ => Err(Error::UnknownName(id.to_string())),
    }
}

/// Value at `q = 1 - ε` for each ε, with the default configuration.
pub fn q_limit(id: &str, eps: &[f64]) -> Result<LimitExperiment> {
    q_limit_with(id, eps, &LimitConfig::default())
}

pub fn q_limit_with(id: &str, eps: &[f64], cfg: &LimitConfig) -> Result<LimitExperiment> {
    check_schedule(eps)?;
    let (eval, own_target): (Box<dyn Fn(f64) -> Result<f64>>, f64) = if id == "pi2.lhs" {
        (Box::new(|q0| pi2_lhs_value(q0, cfg)), PI / 2.0)
    } else {
        let (p, t) = limit_product(id)?;
        (Box::new(move |q0| p.eval_real(q0, cfg.tol, cfg.max_depth)), t)
    };
    let target = cfg.target.unwrap_or(own_target);
    let values = eps.iter().map(|e| eval(1.0 - e)).collect::<Result<Vec<_>>>()?;
    Ok(finish(id, eps, target, values, cfg.richardson))
}

fn finish(id: &str, eps: &[f64], target: f64, values: Vec<f64>, richardson: bool) -> LimitExperiment {
    let errors = values.iter().map(|v| (v - target).abs()).collect();
    let extrapolated = (richardson && values.len() >= 2).then(|| {
        let n = values.len();
        let (e1, e2, v1, v2) = (eps[n - 2], eps[n - 1], values[n - 2], values[n - 1]);
        v2 + (v2 - v1) * e2 / (e1 - e2)
    });
    LimitExperiment { id: id.to_string(), eps: eps.to_vec(), target, values, errors, extrapolated }
}

/// `(3n+2) 16^{n+1} / (2 (n+1)³ C(2n+2, n+1)³)`.
pub fn classical_summand(n: u64) -> Rational {
    let m = n + 1;
    Rational::new(
        BigInt::from(3 * n + 2) * BigInt::from(16).pow(m as u32),
        BigInt::from(2) * BigInt::from(m).pow(3) * binomial(BigInt::from(2 * m), BigInt::from(m)).pow(3),
    )
}

/// The `n`-th summand of the `q`-series behind `qid` as a factor product.
pub fn q_summand(n: u64) -> QProduct {
    let nn = n as i64;
    let mut p = QProduct::monomial(&QMonomial::q(nn * (nn + 1) / 2));
    p.times_binomial(&QMonomial::q(3 * nn + 2))
        .over_binomial(&QMonomial::q(1))
        .times_finite(&QMonomial::q(1), 1, n, 3)
        .times_finite(&QMonomial::neg_q(1), 1, n, 1)
        .times_finite(&QMonomial::q(3), 2, n, -3);
    p
}

/// The `n`-th `q`-summand at `q = 1 - ε` against its classical limit.
pub fn summand_limit_check(n: u64, eps: &[f64]) -> Result<LimitExperiment> {
    if n > 10 {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds 10")));
    }
    check_schedule(eps)?;
    let cfg = LimitConfig::default();
    let p = q_summand(n);
    let target = classical_summand(n).to_f64().unwrap_or(f64::NAN);
    let values = eps.iter().map(|e| p.eval_real(1.0 - e, cfg.tol, cfg.max_depth)).collect::<Result<Vec<_>>>()?;
    Ok(finish(&format!("qid-summand-{n}"), eps, target, values, false))
}

/// `(1/2)_n / n! = C(2n, n) / 4^n` exactly for every `n ≤ n_max`.
pub fn half_pochhammer_check(n_max: u64) -> bool {
    let mut lhs = Rational::one();
    (0..=n_max).all(|n| {
        if n > 0 {
            lhs *= Rational::new(BigInt::from(2 * n - 1), BigInt::from(2 * n));
        }
        let rhs = Rational::new(binomial(BigInt::from(2 * n), BigInt::from(n)), BigInt::from(4).pow(n as u32));
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert_eq!(classical_series("leibniz", 1).unwrap(), 1.0);
        assert!((classical_series("guillera", 40).unwrap() - PI * PI / 2.0).abs() < 1e-10);
        assert!((classical_series("q2-limit", 40).unwrap() - PI * PI / 16.0).abs() < 1e-10);
        assert!((classical_series("zeilberger", 30).unwrap() - PI * PI / 6.0).abs() < 1e-10);
        assert!(matches!(classical_series("nope", 3), Err(Error::UnknownName(_))));
        assert!(classical_series("leibniz", 0).is_err());
    }

    #[test]
    fn leibniz_partial_sums_alternate() {
        let t = ClassicalSeries::Leibniz.target();
        let a = classical_series("leibniz", 100).unwrap() - t;
        let b = classical_series("leibniz", 101).unwrap() - t;
        assert!(a < 0.0 && b > 0.0 && b.abs() < a.abs());
    }

    #[test]
    fn gamma_half_limit() {
        let e = q_limit("gamma-half", &[0.1, 0.03, 0.01, 0.003]).unwrap();
        assert!(e.strictly_decreasing(), "{:?}", e.errors);
        let e = q_limit("gamma-half", &[1e-3]).unwrap();
        assert!(e.final_error() < 1e-2);
        let far = q_limit("gamma-half", &[0.5]).unwrap();
        assert!(far.values[0].is_finite() && far.final_error() > 0.1);
    }

    #[test]
    fn pi2_sides_agree_numerically() {
        let eps = [0.1, 0.01];
        let l = q_limit("pi2.lhs", &eps).unwrap();
        let r = q_limit("pi2.rhs", &eps).unwrap();
        for (a, b) in l.values.iter().zip(&r.values) {
            assert!((a - b).abs() < 1e-9 * b.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn bad_schedules() {
        assert!(q_limit("gamma-half", &[0.01, 0.1]).is_err());
        assert!(q_limit("gamma-half", &[1.5]).is_err());
        assert!(q_limit("gamma-half", &[]).is_err());
        assert!(matches!(q_limit("nope", &[0.1]), Err(Error::UnknownName(_))));
    }

    #[test]
    fn richardson_is_opt_in() {
        let eps = [0.02, 0.01];
        assert!(q_limit("gamma-half", &eps).unwrap().extrapolated.is_none());
        let cfg = LimitConfig { richardson: true, ..LimitConfig::default() };
        let e = q_limit_with("gamma-half", &eps, &cfg).unwrap();
        assert!((e.extrapolated.unwrap() - PI / 2.0).abs() < e.final_error());
    }

    #[test]
    fn summands() {
        assert_eq!(classical_summand(0), Rational::from_integer(2.into()));
        let e = summand_limit_check(0, &[0.1, 0.01, 0.001]).unwrap();
        assert!(e.strictly_decreasing());
        let e = summand_limit_check(3, &[0.1, 0.01, 0.001]).unwrap();
        assert!(e.final_error() < 1e-2 * e.target);
        assert!(summand_limit_check(11, &[0.1]).is_err());
    }

    #[test]
    fn half_pochhammer() {
        assert!(half_pochhammer_check(50));
    }
}
