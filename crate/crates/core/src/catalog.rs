//! Registry of identities, each with two independently built sides.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperphi::{self, GlWhich};
use crate::qproducts::{self, QMonomial};
use crate::series::{Comparison, ExponentQ, LaurentSeries};
use crate::Rational;

/// The three Lambert double sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambertKind {
    /// `Σ_k (-1)^k Σ_m q^{k+(2k+1)m}`
    Pi1,
    /// `Σ_k (-1)^k Σ_m q^{k(k+3)/2+(2k+1)m}`
    Pi2,
    /// `½ Σ_n Σ_m (m+1) q^{2n+(2n+1)m}`
    Q2Rhs,
}

impl FromStr for LambertKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi1" => Ok(LambertKind::Pi1),
            "pi2" => Ok(LambertKind::Pi2),
            "q2rhs" => Ok(LambertKind::Q2Rhs),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Expands a Lambert double sum through the geometric series.
pub fn lambert_expand(kind: LambertKind, order: i64) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument(format!("order {order} must be positive")));
    }
    let mut c = vec![0i64; order as usize];
    let mut k = 0i64;
    loop {
        let (base, step, sign, weight_step) = match kind {
            LambertKind::Pi1 => (k, 2 * k + 1, if k % 2 == 0 { 1 } else { -1 }, 0),
            LambertKind::Pi2 => (k * (k + 3) / 2, 2 * k + 1, if k % 2 == 0 { 1 } else { -1 }, 0),
            LambertKind::Q2Rhs => (2 * k, 2 * k + 1, 1, 1),
        };
        if base >= order {
            break;
        }
        let (mut e, mut w) = (base, 1i64);
        while e < order {
            c[e as usize] += sign * w;
            e += step;
            w += weight_step;
        }
        k += 1;
    }
    let half = match kind {
        LambertKind::Q2Rhs => Rational::new(1.into(), 2.into()),
        _ => Rational::from_integer(1.into()),
    };
    let v = c.into_iter().map(|x| Rational::from_integer(x.into()) * &half).collect();
    LaurentSeries::new(1, 0, v)
}

/// Side names accepted by [`named_side`].
pub const SIDE_NAMES: &[&str] = &[
    "pi1.lhs", "pi1.rhs", "pi2.lhs", "pi2.rhs", "gl1.lhs", "gl1.rhs", "gl2.lhs", "gl2.rhs", "qid.lhs", "qid.rhs",
    "q2.lhs", "q2.rhs", "psi.sum", "psi.product",
];

/// Expands one named side of a catalog identity.
pub fn named_side(name: &str, order: i64) -> Result<LaurentSeries> {
    match name {
        "pi1.lhs" => lambert_expand(LambertKind::Pi1, order),
        "pi2.lhs" => lambert_expand(LambertKind::Pi2, order),
        "gl1.lhs" => hyperphi::gl_lhs(GlWhich::One, order),
        "gl2.lhs" => hyperphi::gl_lhs(GlWhich::Two, order),
        "qid.lhs" => hyperphi::qid_lhs(order),
        "q2.lhs" => hyperphi::q2_lhs(order),
        "psi.sum" => Ok(qproducts::psi_sum(order)),
        "psi.product" => Ok(qproducts::psi_product(order)),
        _ => qproducts::product_side(name, order),
    }
}

/// A side builder: q-order in, series out.
pub type Builder = Arc<dyn Fn(i64) -> Result<LaurentSeries> + Send + Sync>;

/// One pair of sides to compare, labelled for reports.
#[derive(Clone)]
pub struct SidePair {
    pub label: String,
    pub lhs: Builder,
    pub rhs: Builder,
}

impl SidePair {
    pub fn new<L, R>(label: impl Into<String>, lhs: L, rhs: R) -> Self
    where
        L: Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static,
        R: Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static,
    {
        SidePair { label: label.into(), lhs: Arc::new(lhs), rhs: Arc::new(rhs) }
    }
}

impl fmt::Debug for SidePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SidePair").field("label", &self.label).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub struct IdentityEntry {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub default_order: i64,
    /// Every pair must agree; single identities have one, grids one per point.
    pub pairs: Vec<SidePair>,
}

impl IdentityEntry {
    pub fn new(id: &str, description: &str, anchor: &str, default_order: i64, pairs: Vec<SidePair>) -> Self {
        IdentityEntry {
            id: id.to_string(),
            description: description.to_string(),
            anchor: anchor.to_string(),
            default_order,
            pairs,
        }
    }

    /// A copy whose right sides carry an extra `delta * q^exponent`.
    pub fn perturbed(&self, exponent: i64, delta: Rational) -> IdentityEntry {
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                let rhs = p.rhs.clone();
                let delta = delta.clone();
                SidePair {
                    label: p.label.clone(),
                    lhs: p.lhs.clone(),
                    rhs: Arc::new(move |order| {
                        let s = rhs(order)?;
                        let bump = LaurentSeries::monomial(
                            delta.clone(),
                            ExponentQ::integer(exponent),
                            s.scale(),
                            s.order(),
                        )?;
                        s.checked_add(&bump)
                    }),
                }
            })
            .collect();
        IdentityEntry { id: format!("{}~perturbed", self.id), pairs, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Mismatch => "mismatch",
            Status::Error => "error",
        })
    }
}

/// First differing coefficient; exact values as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstMismatch {
    /// Pair label (grid point) when the entry has more than one pair.
    pub point: Option<String>,
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<FirstMismatch>,
    pub elapsed_ms: u64,
    pub diagnostics: Option<String>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub const CSV_HEADER: &'static str = "id,order,status,point,exponent,lhs,rhs,elapsed_ms,diagnostics";

    pub fn csv_row(&self) -> String {
        let m = self.first_mismatch.as_ref();
        let field = |s: Option<&str>| {
            let s = s.unwrap_or("");
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        [
            field(Some(&self.id)),
            self.order.to_string(),
            self.status.to_string(),
            field(m.and_then(|m| m.point.as_deref())),
            field(m.map(|m| m.exponent.as_str())),
            field(m.map(|m| m.lhs.as_str())),
            field(m.map(|m| m.rhs.as_str())),
            self.elapsed_ms.to_string(),
            field(self.diagnostics.as_deref()),
        ]
        .join(",")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<14} order {:<5} {:<9} {:>6} ms", self.id, self.order, self.status, self.elapsed_ms)?;
        if let Some(m) = &self.first_mismatch {
            if let Some(p) = &m.point {
                write!(f, "  [{p}]")?;
            }
            write!(f, "  first mismatch at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs)?;
        }
        if let Some(d) = &self.diagnostics {
            write!(f, "  ({d})")?;
        }
        Ok(())
    }
}

/// Builds and compares every pair of `entry` at `order`.
pub fn verify_entry(entry: &IdentityEntry, order: i64) -> VerificationReport {
    let start = Instant::now();
    let report = |status, first_mismatch, diagnostics| VerificationReport {
        id: entry.id.clone(),
        order,
        status,
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis() as u64,
        diagnostics,
    };
    if order < 1 {
        return report(Status::Error, None, Some(format!("order {order} must be positive")));
    }
    let labelled = entry.pairs.len() > 1;
    for pair in &entry.pairs {
        let outcome = (pair.lhs)(order).and_then(|l| l.eq_to_order(&(pair.rhs)(order)?, order));
        match outcome {
            Ok(Comparison::Equal) => {}
            Ok(Comparison::Mismatch(m)) => {
                let fm = FirstMismatch {
                    point: labelled.then(|| pair.label.clone()),
                    exponent: m.exponent.to_string(),
                    lhs: m.lhs.to_string(),
                    rhs: m.rhs.to_string(),
                };
                return report(Status::Mismatch, Some(fm), None);
            }
            Err(e) => return report(Status::Error, None, Some(format!("{}: {e}", pair.label))),
        }
    }
    report(Status::Verified, None, None)
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<IdentityEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    /// The builtin identities in registration order.
    pub fn builtin() -> Self {
        let mut c = Catalog::new();
        c.register_builtin().expect("builtin ids are distinct");
        c
    }

    pub fn register(&mut self, entry: IdentityEntry) -> Result<()> {
        if self.get(&entry.id).is_some() {
            return Err(Error::DuplicateId(entry.id));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn register_builtin(&mut self) -> Result<()> {
        for e in builtin_entries() {
            self.register(e)?;
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&IdentityEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn entries(&self) -> &[IdentityEntry] {
        &self.entries
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn verify(&self, id: &str, order: Option<i64>) -> Result<VerificationReport> {
        let e = self.get(id).ok_or_else(|| Error::UnknownName(id.to_string()))?;
        Ok(verify_entry(e, order.unwrap_or(e.default_order)))
    }

    /// Runs every entry concurrently; reports come back in registration order.
    pub fn verify_all(&self, order_override: Option<i64>) -> Vec<VerificationReport> {
        self.entries
            .par_iter()
            .map(|e| verify_entry(e, order_override.unwrap_or(e.default_order)))
            .collect()
    }
}

fn pair(label: &str, lhs: &'static str, rhs: &'static str) -> SidePair {
    SidePair::new(label, move |o| named_side(lhs, o), move |o| named_side(rhs, o))
}

/// `ψ(q) ψ(q^4)` from the theta sum.
fn psi_psi4(order: i64) -> Result<LaurentSeries> {
    let psi = qproducts::psi_sum(order);
    let psi4 = qproducts::psi_sum(order).substitute_power(4.into())?;
    Ok(psi.checked_mul(&psi4)?.truncated(order))
}

fn ck2_grid() -> Vec<SidePair> {
    let h = ExponentQ::new(1, 2);
    let points = [QMonomial::q(1), QMonomial::q(2), QMonomial::q(h), QMonomial::neg_q(1)];
    points
        .into_iter()
        .map(|d| {
            let d2 = d.clone();
            SidePair::new(
                format!("d={d}"),
                move |o| hyperphi::ck2_lhs(&d, o),
                move |o| hyperphi::ck2_rhs(&d2, o),
            )
        })
        .collect()
}

fn red_grid() -> Vec<SidePair> {
    let mut out = Vec::new();
    for n in 1..=4u32 {
        for d in [QMonomial::q(2), QMonomial::q(4), QMonomial::q(-2 * n as i64)] {
            let d2 = d.clone();
            out.push(SidePair::new(
                format!("N={n},d={d}"),
                move |o| hyperphi::red_lhs(n, &d, o),
                move |o| hyperphi::red_rhs(n, &d2, o),
            ));
        }
    }
    out
}

fn builtin_entries() -> Vec<IdentityEntry> {
    use hyperphi::*;
    vec![
        IdentityEntry::new(
            "pi1",
            "q-Leibniz: Σ (-q)^k/(1-q^{2k+1}) = (q^4;q^4)²/(q^2;q^4)²",
            "q-analogue of Leibniz's series for π/4",
            1000,
            vec![
                pair("lambert/product", "pi1.lhs", "pi1.rhs"),
                SidePair::new("summand/product", pi1_summand_lhs, |o| named_side("pi1.rhs", o)),
            ],
        ),
        IdentityEntry::new(
            "pi2",
            "Σ (-1)^k q^{k(k+3)/2}/(1-q^{2k+1}) = (q^2;q^2)(q^8;q^8)/((q;q^2)(q^4;q^8))",
            "alternating sum over q^{k(k+3)/2}/(1-q^{2k+1}) as a theta quotient",
            1000,
            vec![
                pair("lambert/product", "pi2.lhs", "pi2.rhs"),
                SidePair::new("lambert/psi-psi4", |o| named_side("pi2.lhs", o), psi_psi4),
                SidePair::new("summand/product", pi2_summand_lhs, |o| named_side("pi2.rhs", o)),
                SidePair::new("summand/psi-psi4", pi2_summand_lhs, psi_psi4),
                SidePair::new("lambert/summand", |o| named_side("pi2.lhs", o), pi2_summand_lhs),
                SidePair::new("product/psi-psi4", |o| named_side("pi2.rhs", o), psi_psi4),
            ],
        ),
        IdentityEntry::new(
            "gl1",
            "Σ q^{n²}(1-q^{6n+1})/(1-q) (q;q^2)²_n(q^2;q^4)_n/(q^4;q^4)³_n = (1+q)(q^2;q^4)(q^6;q^4)/(q^4;q^4)²",
            "q-analogue of a 6n+1 series for 4/π",
            300,
            vec![pair("direct", "gl1.lhs", "gl1.rhs")],
        ),
        IdentityEntry::new(
            "gl2",
            "Σ (-1)^n q^{3n²}(1-q^{6n+1})/(1-q) (q;q^2)³_n/(q^4;q^4)³_n = (q^3;q^4)(q^5;q^4)/(q^4;q^4)²",
            "q-analogue of a 6n+1 series for 2√2/π",
            300,
            vec![pair("direct", "gl2.lhs", "gl2.rhs")],
        ),
        IdentityEntry::new(
            "q2",
            "Σ q^{2n(n+1)}(1+q^{2n+2}-2q^{4n+3})(q^2;q^2)³_n/((q;q^2)³_{n+1}(-1;q)_{2n+3}) = ½ Σ q^{2n}/(1-q^{2n+1})²",
            "q-analogue of ¼Σ(3n+2)2^{4n}n!⁶/(2n+1)!³ = π²/16",
            300,
            vec![
                pair("summand/lambert", "q2.lhs", "q2.rhs"),
                SidePair::new("wz-column/summand", |o| Ok(crate::wz::q2_via_wz(o)?.0), |o| named_side("q2.lhs", o)),
                SidePair::new("wz-row/lambert", |o| Ok(crate::wz::q2_via_wz(o)?.1), |o| named_side("q2.rhs", o)),
            ],
        ),
        IdentityEntry::new(
            "qid",
            "Σ q^{n(n+1)/2}(1-q^{3n+2})/(1-q) (q;q)³(-q;q)/(q^3;q^2)³ = (1-q)²(q^2;q^2)⁴/(q;q^2)⁴",
            "q-analogue of Σ(3n+2)16^{n+1}/(2(n+1)³C(2n+2,n+1)³) = π²/4",
            300,
            vec![pair("direct", "qid.lhs", "qid.rhs")],
        ),
        IdentityEntry::new(
            "gauss-psi",
            "Σ q^{n(n+1)/2} = (q^2;q^2)/(q;q^2)",
            "Gauss's theta product for ψ",
            1000,
            vec![pair("direct", "psi.sum", "psi.product")],
        ),
        IdentityEntry::new(
            "sum-2phi2",
            "2φ2[q,q;-q^2,-q^3;q^2,q^3] = (-q^4;q^4)²/(-q^3;q^2)",
            "2φ2 summation with a = q, b = q^3 in base q^2",
            300,
            vec![SidePair::new("direct", sum_2phi2_lhs, sum_2phi2_rhs)],
        ),
        IdentityEntry::new(
            "reduced-3phi3",
            "(q^3;q^2)² 3φ3[q,√q,-√q;-q^{3/2},q^{3/2},0;q,q^2] = (q^2;q^2)(q^4;q^2) 2φ2[...]",
            "b → 0 limit of the quadratic transformation",
            300,
            vec![SidePair::new("direct", reduced_3phi3_lhs, reduced_3phi3_rhs)],
        ),
        IdentityEntry::new(
            "ck2-grid",
            "quadratic transformation at a = q^2, b = c = q over sampled d",
            "quadratic transformation with a = q^2 and b = c = q",
            80,
            ck2_grid(),
        ),
        IdentityEntry::new(
            "red-grid",
            "terminating quadratic summation at a = b = q over (N, d)",
            "terminating quadratic summation with a = b = q",
            80,
            red_grid(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &LaurentSeries, n: i64) -> Vec<i64> {
        s.q_coeffs_upto(n).iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn lambert_prefixes() {
        assert_eq!(ints(&lambert_expand(LambertKind::Pi2, 6).unwrap(), 6), [1, 1, 0, 1, 1, 1]);
        assert_eq!(ints(&lambert_expand(LambertKind::Pi1, 3).unwrap(), 3), [1, 0, 2]);
        let q2 = lambert_expand(LambertKind::Q2Rhs, 4).unwrap();
        assert_eq!(q2.q_coeff(0), Some(Rational::new(1.into(), 2.into())));
        // 1/2 (1 + 2q + 3q^2 + q^2 + ...) with the n = 1 term starting at q^2
        assert_eq!(q2.q_coeff(2), Some(Rational::from_integer(2.into())));
        assert!(lambert_expand(LambertKind::Pi1, 0).is_err());
    }

    #[test]
    fn pi1_matches_psi_q2_squared() {
        let psi = qproducts::psi_sum(80).substitute_power(2.into()).unwrap();
        let sq = psi.checked_mul(&psi).unwrap();
        assert!(lambert_expand(LambertKind::Pi1, 80).unwrap().eq_to_order(&sq, 80).unwrap().is_equal());
    }

    #[test]
    fn registry_basics() {
        let c = Catalog::builtin();
        assert_eq!(c.len(), 11);
        assert!(c.get("pi2").unwrap().anchor.contains("theta"));
        assert!(c.get("unknown").is_none());
        let mut c2 = c.clone();
        let dup = c.get("pi1").unwrap().clone();
        assert!(matches!(c2.register(dup), Err(Error::DuplicateId(_))));
        assert!(Catalog::new().verify_all(None).is_empty());
        assert!(matches!(c.verify("nope", None), Err(Error::UnknownName(_))));
    }

    #[test]
    fn qid_prefix() {
        let c = Catalog::builtin();
        assert!(c.verify("qid", Some(11)).unwrap().is_verified());
        let l = named_side("qid.lhs", 11).unwrap();
        assert_eq!(ints(&l, 11), [1, 2, -1, 0, 3, -6, 3, 8, -16, 8, 10]);
    }

    #[test]
    fn all_verify_at_low_order() {
        for r in Catalog::builtin().verify_all(Some(5)) {
            assert!(r.is_verified(), "{r}");
        }
    }

    #[test]
    fn perturbed_entry_reports_mismatch() {
        let c = Catalog::builtin();
        let bad = c.get("gauss-psi").unwrap().perturbed(5, Rational::from_integer(1.into()));
        let r = verify_entry(&bad, 20);
        assert_eq!(r.status, Status::Mismatch);
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.exponent.as_str(), m.lhs.as_str(), m.rhs.as_str()), ("5", "0", "1"));
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify_entry(&Catalog::builtin().get("gauss-psi").unwrap().perturbed(3, Rational::from_integer(2.into())), 10);
        let s = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(s.starts_with("{\"id\":"));
        assert_eq!(r.csv_row().split(',').count(), VerificationReport::CSV_HEADER.split(',').count());
    }

    #[test]
    fn error_status_on_bad_order() {
        let r = Catalog::builtin().verify("pi1", Some(0)).unwrap();
        assert_eq!(r.status, Status::Error);
        assert!(r.first_mismatch.is_none());
    }
}
