//! Triangular numbers, the counts t₂ and r₂, and their divisor-sum formulas.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{lambert_expand, LambertKind};
use crate::error::Result;
use crate::series::Comparison;
use crate::Rational;

/// One row of the t₂ table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSumResult {
    pub n: u64,
    pub brute: u64,
    pub formula: i64,
}

impl DivisorSumResult {
    pub fn matches(&self) -> bool {
        self.brute as i64 == self.formula
    }
}

pub fn triangular(x: u64) -> u64 {
    x.checked_mul(x + 1).expect("triangular number overflows u64") / 2
}

/// Number of `(x, y) ∈ ℕ²` with `T_x + 4 T_y = n`.
pub fn t2_brute(n: u64) -> u64 {
    let mut count = 0;
    let mut y = 0;
    while 4 * triangular(y) <= n {
        let rest = n - 4 * triangular(y);
        let mut x = 0;
        while triangular(x) <= rest {
            if triangular(x) == rest {
                count += 1;
            }
            x += 1;
        }
        y += 1;
    }
    count
}

fn odd_sign(d: u64) -> i64 {
    if d % 4 == 1 {
        1
    } else {
        -1
    }
}

/// `Σ (-1)^((d-1)/2)` over divisors `d` of `8n+5` with `d² < 8n+5`.
pub fn t2_formula(n: u64) -> i64 {
    let m = n.checked_mul(8).and_then(|x| x.checked_add(5)).expect("8n+5 overflows u64");
    let mut s = 0;
    let mut d = 1;
    while d * d < m {
        if m.is_multiple_of(d) {
            s += odd_sign(d);
        }
        d += 1;
    }
    s
}

/// Lattice points on the circle `x² + y² = m`.
pub fn r2_brute(m: u64) -> u64 {
    let mut count = 0;
    let mut x: u64 = 0;
    while x * x <= m {
        let rest = m - x * x;
        let y = rest.isqrt();
        if y * y == rest {
            // signs of x and y, without double-counting zeros
            count += match (x == 0, y == 0) {
                (true, true) => 1,
                (true, false) | (false, true) => 2,
                (false, false) => 4,
            };
        }
        x += 1;
    }
    count
}

/// `4 Σ_{odd d | m} (-1)^((d-1)/2)`, and 1 at `m = 0` (constant term of `θ(q)²`).
pub fn r2_formula(m: u64) -> i64 {
    if m == 0 {
        return 1;
    }
    let mut s = 0;
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let e = m / d;
            if d % 2 == 1 {
                s += odd_sign(d);
            }
            if e != d && e % 2 == 1 {
                s += odd_sign(e);
            }
        }
        d += 1;
    }
    4 * s
}

/// Rows `n = 0..count` of the t₂ table, computed in parallel.
pub fn t2_table(count: u64) -> Vec<DivisorSumResult> {
    (0..count)
        .into_par_iter()
        .map(|n| DivisorSumResult { n, brute: t2_brute(n), formula: t2_formula(n) })
        .collect()
}

/// Checks every coefficient below `order` of the Lambert double sum against
/// the divisor-sum formula.
pub fn lambert_coefficient_check(order: i64) -> Result<Comparison> {
    let s = lambert_expand(LambertKind::Pi2, order)?;
    let formula: Vec<Rational> = (0..order)
        .map(|n| Rational::from_integer(t2_formula(n as u64).into()))
        .collect();
    let f = crate::LaurentSeries::new(1, 0, formula)?;
    s.eq_to_order(&f, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_values() {
        assert_eq!(triangular(0), 0);
        assert_eq!(triangular(4), 10);
        assert_eq!(triangular(10), 55);
    }

    #[test]
    fn t2_examples() {
        assert_eq!(t2_brute(0), 1);
        assert_eq!(t2_brute(2), 0);
        assert_eq!(t2_brute(5), 1);
        assert_eq!(t2_formula(2), 0);
        assert_eq!(t2_formula(4), 1);
        assert_eq!(t2_formula(5), 1);
    }

    #[test]
    fn r2_examples() {
        for (m, r) in [(0, 1), (5, 8), (3, 0), (25, 12), (1, 4)] {
            assert_eq!(r2_brute(m), r);
            assert_eq!(r2_formula(m), r as i64);
        }
    }

    #[test]
    fn bijection_step() {
        for n in 0..300 {
            assert_eq!(8 * t2_brute(n), r2_brute(8 * n + 5), "n = {n}");
        }
    }

    #[test]
    fn lambert_agrees() {
        assert!(lambert_coefficient_check(1).unwrap().is_equal());
        assert!(lambert_coefficient_check(300).unwrap().is_equal());
    }
}
