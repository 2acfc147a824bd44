//! Genocchi, poly-Bernoulli and C-poly-Bernoulli numbers, extracted exactly
//! from their exponential generating functions.
//!
//! Index convention: [`c_number`]`(n, k)` is `C_n^{(-k-1)}`, the number of
//! barred Callan sequences with `k` blue and `n` red elements.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::series::{
    exp_minus_one, exp_series, one_minus_exp_neg, polylog_series, Rational, TruncatedSeries,
};

/// Exact signed integer count.
pub type SignedCount = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("{family} at {index} extracted a non-integer value {value}")]
    NonInteger {
        family: &'static str,
        index: String,
        value: Rational,
    },
    #[error("{family} at {index} extracted a non-positive value {value}")]
    NonPositive {
        family: &'static str,
        index: String,
        value: BigInt,
    },
}

fn integral(
    family: &'static str,
    index: String,
    value: Rational,
) -> Result<SignedCount, NumberError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(NumberError::NonInteger {
            family,
            index,
            value,
        })
    }
}

/// `2t / (e^t + 1)` at order `n`.
pub fn genocchi_series(order: usize) -> TruncatedSeries {
    let num = TruncatedSeries::variable(order).scale(&Rational::from_integer(2.into()));
    let den = exp_series(order)
        .add(&TruncatedSeries::one(order))
        .expect("same order");
    num.divide(&den)
        .expect("denominator has unit constant term")
}

/// Genocchi number `G_n`.
pub fn genocchi(n: usize) -> Result<SignedCount, NumberError> {
    let value = genocchi_series(n).egf_coefficient(n).expect("n <= order");
    integral("genocchi", format!("n={n}"), value)
}

/// `G_0..=G_max` from a single series expansion.
pub fn genocchi_list(max: usize) -> Result<Vec<SignedCount>, NumberError> {
    let s = genocchi_series(max);
    (0..=max)
        .map(|n| {
            integral(
                "genocchi",
                format!("n={n}"),
                s.egf_coefficient(n).expect("n <= order"),
            )
        })
        .collect()
}

/// `Li_k(1 - e^{-t})`; its valuation is 1 whenever `order >= 1`.
fn polylog_at_one_minus_exp_neg(k: i64, order: usize) -> TruncatedSeries {
    polylog_series(k, order)
        .compose(&one_minus_exp_neg(order))
        .expect("inner series has zero constant term")
}

/// `Li_k(1 - e^{-t}) / (1 - e^{-t})` at order `order`.
pub fn poly_bernoulli_b_series(k: i64, order: usize) -> TruncatedSeries {
    let n = order + 1;
    polylog_at_one_minus_exp_neg(k, n)
        .divide(&one_minus_exp_neg(n))
        .expect("valuations match")
}

/// `Li_k(1 - e^{-t}) / (e^t - 1)` at order `order`.
pub fn poly_bernoulli_c_series(k: i64, order: usize) -> TruncatedSeries {
    let n = order + 1;
    polylog_at_one_minus_exp_neg(k, n)
        .divide(&exp_minus_one(n))
        .expect("valuations match")
}

/// Poly-Bernoulli number `B_n^{(k)}`.
pub fn poly_bernoulli_b(n: usize, k: i64) -> Rational {
    poly_bernoulli_b_series(k, n)
        .egf_coefficient(n)
        .expect("n <= order")
}

/// C-poly-Bernoulli number `C_n^{(k)}`.
pub fn poly_bernoulli_c(n: usize, k: i64) -> Rational {
    poly_bernoulli_c_series(k, n)
        .egf_coefficient(n)
        .expect("n <= order")
}

/// Positive integer `C_n^k = C_n^{(-k-1)}`.
pub fn c_number(n: usize, k: usize) -> Result<SignedCount, NumberError> {
    let index = format!("n={n},k={k}");
    let value = integral(
        "c_number",
        index.clone(),
        poly_bernoulli_c(n, -(k as i64) - 1),
    )?;
    if !value.is_positive() {
        return Err(NumberError::NonPositive {
            family: "c_number",
            index,
            value,
        });
    }
    Ok(value)
}

/// Rows `n = 0..=max_n`, columns `k = 0..=max_k` of [`c_number`].
///
/// One series per column; every row of a column is read from it.
pub fn c_table(max_n: usize, max_k: usize) -> Result<Vec<Vec<SignedCount>>, NumberError> {
    let mut table = vec![Vec::with_capacity(max_k + 1); max_n + 1];
    for k in 0..=max_k {
        let s = poly_bernoulli_c_series(-(k as i64) - 1, max_n);
        for (n, row) in table.iter_mut().enumerate() {
            let index = format!("n={n},k={k}");
            let value = integral(
                "c_number",
                index.clone(),
                s.egf_coefficient(n).expect("n <= order"),
            )?;
            if !value.is_positive() {
                return Err(NumberError::NonPositive {
                    family: "c_number",
                    index,
                    value,
                });
            }
            row.push(value);
        }
    }
    Ok(table)
}

/// Ordinary Bernoulli number with `B_1 = -1/2`, from `t / (e^t - 1)`.
pub fn bernoulli(n: usize) -> Rational {
    let order = n + 1;
    TruncatedSeries::variable(order)
        .divide(&exp_minus_one(order))
        .expect("valuations match")
        .egf_coefficient(n)
        .expect("n <= order")
}

/// `(-1)^j` as a count.
pub fn alternating_sign(j: usize) -> SignedCount {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Stirling numbers of the second kind by the triangle recurrence.
    fn stirling2(n: usize, k: usize) -> BigInt {
        let mut row = vec![int(1)];
        for i in 1..=n {
            let mut next = vec![int(0); i + 1];
            for j in 1..=i {
                let keep = if j < i { &row[j] * j } else { int(0) };
                next[j] = keep + &row[j - 1];
            }
            row = next;
        }
        row.get(k).cloned().unwrap_or_else(|| int(0))
    }

    /// Double-surjection expansion of `B_n^{(-k)}`.
    fn pb_closed_form(n: usize, k: usize) -> BigInt {
        (0..=n.min(k))
            .map(|m| {
                let f = crate::series::factorial(m);
                &f * &f * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1)
            })
            .sum()
    }

    #[test]
    fn genocchi_first_values() {
        assert_eq!(genocchi(1).unwrap(), int(1));
        assert_eq!(genocchi(8).unwrap(), int(17));
        assert_eq!(genocchi(10).unwrap(), int(-155));
        for m in 1..=10 {
            assert_eq!(genocchi(2 * m + 1).unwrap(), int(0));
        }
    }

    #[test]
    fn genocchi_integral_up_to_40() {
        let list = genocchi_list(40).unwrap();
        assert_eq!(list.len(), 41);
        assert_eq!(list[12], int(2073));
        assert_eq!(list[14], int(-38227));
    }

    #[test]
    fn poly_bernoulli_b_matches_closed_form() {
        assert_eq!(poly_bernoulli_b(2, -2), Rational::from_integer(int(14)));
        for n in 0..=7 {
            for k in 0..=7 {
                let v = poly_bernoulli_b(n, -(k as i64));
                assert!(v.is_integer());
                assert_eq!(v.to_integer(), pb_closed_form(n, k), "B_{n}^(-{k})");
            }
        }
    }

    #[test]
    fn poly_bernoulli_b_two_orders_agree() {
        for n in 0..=6 {
            let low = poly_bernoulli_b_series(-2, n).egf_coefficient(n).unwrap();
            let high = poly_bernoulli_b_series(-2, n + 5)
                .egf_coefficient(n)
                .unwrap();
            assert_eq!(low, high);
        }
    }

    #[test]
    fn poly_bernoulli_b_at_zero_is_one() {
        for k in -4..=4 {
            assert_eq!(poly_bernoulli_b(0, k), Rational::from_integer(int(1)));
        }
    }

    #[test]
    fn poly_bernoulli_c_examples() {
        assert_eq!(poly_bernoulli_c(0, -1), Rational::from_integer(int(1)));
        assert_eq!(poly_bernoulli_c(1, 1), Rational::new(int(-1), int(2)));
        assert_eq!(poly_bernoulli_c(2, -3), Rational::from_integer(int(31)));
        for n in 0..=8 {
            assert_eq!(poly_bernoulli_c(n, 1), bernoulli(n));
        }
    }

    #[test]
    fn c_number_examples() {
        assert_eq!(c_number(1, 2).unwrap(), int(7));
        assert_eq!(c_number(5, 5).unwrap(), int(1441923));
        assert_eq!(c_number(0, 4).unwrap(), int(1));
    }

    #[test]
    fn c_table_is_symmetric_and_matches_pointwise() {
        let t = c_table(8, 8).unwrap();
        for (n, row) in t.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                assert_eq!(*value, t[k][n]);
            }
        }
        assert_eq!(t[3][4], c_number(3, 4).unwrap());
        let row1: Vec<BigInt> = [1, 3, 7, 15, 31, 63].iter().map(|&v| int(v)).collect();
        assert_eq!(t[1][..6], row1[..]);
    }

    #[test]
    fn integral_reports_non_integers() {
        let err = integral("test", "n=1".into(), Rational::new(int(1), int(2))).unwrap_err();
        assert!(matches!(err, NumberError::NonInteger { .. }));
    }

    #[test]
    fn pb_zero_sum_holds_from_one() {
        let s0: Rational = (0..=0).map(|j| poly_bernoulli_b(0 - j, -(j as i64))).sum();
        assert_eq!(s0, Rational::from_integer(int(1)));
        for n in 1..=12 {
            let s: Rational = (0..=n)
                .map(|j| {
                    Rational::from_integer(alternating_sign(j))
                        * poly_bernoulli_b(n - j, -(j as i64))
                })
                .sum();
            assert_eq!(s, Rational::from_integer(int(0)), "n={n}");
        }
    }
}
