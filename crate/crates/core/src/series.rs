//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients `c_0..=c_N` of
//! `t^0..t^N`. Every operation is exact; nothing here touches floating point.
//! Binary operations require both operands to share the same order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("quotient is not a power series: numerator valuation {numerator} < denominator valuation {denominator}")]
    NotASeriesQuotient {
        numerator: usize,
        denominator: usize,
    },
    #[error("division by a series that vanishes up to its truncation order")]
    DivisionByZero,
    #[error("inner series of a composition must have zero constant term")]
    InvalidComposition,
    #[error("coefficient index {index} exceeds series order {order}")]
    OutOfRange { index: usize, order: usize },
}

/// Prefix `c_0 + c_1 t + ... + c_N t^N` of a formal power series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The series `t` (zero if `order == 0`).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from explicit coefficients; missing trailing
    /// coefficients are zero and surplus ones are truncated.
    pub fn from_coeffs<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        Self::from_coeffs(
            order,
            coeffs.into_iter().map(|c| Rational::from_integer(c.into())),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Same series reported at a smaller (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Quotient `f / g` as a power series.
    ///
    /// Common powers of `t` are cancelled first: with `v = valuation(g)` the
    /// result has order `f.order() - v` and satisfies `q * g = f` up to that
    /// order.
    pub fn divide(&self, g: &Self) -> Result<Self, SeriesError> {
        self.check_order(g)?;
        let v = g.valuation().ok_or(SeriesError::DivisionByZero)?;
        if let Some(vf) = self.valuation() {
            if vf < v {
                return Err(SeriesError::NotASeriesQuotient {
                    numerator: vf,
                    denominator: v,
                });
            }
        }
        let order = self.order() - v;
        let num = &self.coeffs[v..];
        let den = &g.coeffs[v..];
        let lead_inv = den[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let mut acc = num[i].clone();
            for j in 1..=i {
                if !den[j].is_zero() {
                    acc -= &den[j] * &q[i - j];
                }
            }
            q.push(acc * &lead_inv);
        }
        Ok(Self { coeffs: q })
    }

    /// `self(inner(t))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InvalidComposition);
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `n! * c_n`, the coefficient read as an exponential generating function.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational, SeriesError> {
        if n > self.order() {
            return Err(SeriesError::OutOfRange {
                index: n,
                order: self.order(),
            });
        }
        Ok(&self.coeffs[n] * Rational::from_integer(factorial(n)))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{sign}")?;
            if !first {
                f.write_str(" ")?;
            }
            match i {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*t", c.abs())?,
                _ => write!(f, "{}*t^{i}", c.abs())?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `e^t = sum t^n / n!`.
pub fn exp_series(order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = BigInt::one();
    for n in 0..=order {
        if n > 0 {
            fact *= n;
        }
        coeffs.push(Rational::new(BigInt::one(), fact.clone()));
    }
    TruncatedSeries { coeffs }
}

/// `e^{-t}`.
pub fn exp_neg_series(order: usize) -> TruncatedSeries {
    let mut s = exp_series(order);
    for (n, c) in s.coeffs.iter_mut().enumerate() {
        if n % 2 == 1 {
            *c = -c.clone();
        }
    }
    s
}

/// `1 - e^{-t}`, the argument fed to the polylogarithm.
pub fn one_minus_exp_neg(order: usize) -> TruncatedSeries {
    let mut s = exp_neg_series(order).neg();
    s.coeffs[0] += Rational::one();
    s
}

/// `e^t - 1`.
pub fn exp_minus_one(order: usize) -> TruncatedSeries {
    let mut s = exp_series(order);
    s.coeffs[0] = Rational::zero();
    s
}

/// `Li_k(z) = sum_{m >= 1} z^m / m^k`, truncated at `z^order`.
pub fn polylog_series(k: i64, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let exp = k.unsigned_abs() as usize;
    for m in 1..=order {
        let power = num_traits::pow(BigInt::from(m), exp);
        s.coeffs[m] = if k >= 0 {
            Rational::new(BigInt::one(), power)
        } else {
            Rational::from_integer(power)
        };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        let a = TruncatedSeries::from_ints(2, [1, 1]);
        let b = TruncatedSeries::from_ints(2, [1, -1]);
        assert_eq!(a.add(&b).unwrap(), TruncatedSeries::from_ints(2, [2, 0, 0]));
        assert_eq!(a.add(&TruncatedSeries::zero(2)).unwrap(), a);
        let t = TruncatedSeries::from_ints(2, [0, 1]);
        let t2 = TruncatedSeries::from_ints(2, [0, 0, 1]);
        assert_eq!(
            t.add(&t2).unwrap(),
            TruncatedSeries::from_ints(2, [0, 1, 1])
        );
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(
            a.add(&b),
            Err(SeriesError::OrderMismatch { left: 2, right: 3 })
        );
        assert!(a.mul(&b).is_err());
        assert!(a.divide(&b).is_err());
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = TruncatedSeries::from_ints(2, [1, 1]);
        let b = TruncatedSeries::from_ints(2, [1, -1]);
        assert_eq!(
            a.mul(&b).unwrap(),
            TruncatedSeries::from_ints(2, [1, 0, -1])
        );
        assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);
        // e^t * e^t = e^{2t}; hand convolution: 1, 2, 2, 4/3
        let e = exp_series(3);
        let sq = e.mul(&e).unwrap();
        assert_eq!(sq.coeffs(), &[r(1, 1), r(2, 1), r(2, 1), r(4, 3)]);
    }

    #[test]
    fn divide_examples() {
        let t = TruncatedSeries::variable(3);
        assert_eq!(t.divide(&t).unwrap(), TruncatedSeries::one(2));

        let f = TruncatedSeries::from_coeffs(2, [r(0, 1), r(1, 1), r(-1, 2)]);
        let g = TruncatedSeries::variable(2);
        let q = f.divide(&g).unwrap();
        assert_eq!(q.coeffs(), &[r(1, 1), r(-1, 2)]);

        // 2t / (e^t + 1)
        let n = 10;
        let num = TruncatedSeries::variable(n).scale(&r(2, 1));
        let mut den = exp_series(n);
        den = den.add(&TruncatedSeries::one(n)).unwrap();
        let g = num.divide(&den).unwrap();
        let got: Vec<Rational> = (0..=n).map(|i| g.egf_coefficient(i).unwrap()).collect();
        let want: Vec<Rational> = [0, 1, -1, 0, 1, 0, -3, 0, 17, 0, -155]
            .iter()
            .map(|&v| r(v, 1))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn divide_errors() {
        let one = TruncatedSeries::one(3);
        let t = TruncatedSeries::variable(3);
        assert_eq!(
            one.divide(&t),
            Err(SeriesError::NotASeriesQuotient {
                numerator: 0,
                denominator: 1
            })
        );
        assert_eq!(
            one.divide(&TruncatedSeries::zero(3)),
            Err(SeriesError::DivisionByZero)
        );
    }

    #[test]
    fn compose_examples() {
        let g = TruncatedSeries::from_ints(3, [0, 1, 1]);
        assert_eq!(TruncatedSeries::variable(3).compose(&g).unwrap(), g);
        let z2 = TruncatedSeries::from_ints(3, [0, 0, 1]);
        assert_eq!(
            z2.compose(&g).unwrap(),
            TruncatedSeries::from_ints(3, [0, 0, 1, 2])
        );
        assert_eq!(
            z2.compose(&TruncatedSeries::one(3)),
            Err(SeriesError::InvalidComposition)
        );
    }

    #[test]
    fn compose_polylog_matches_termwise_sum() {
        // Li_{-1}(u) with u = 1 - e^{-t}: compare with sum_{m=1}^{N} m u^m
        // accumulated by repeated mul/add.
        let n = 8;
        let u = one_minus_exp_neg(n);
        let via_compose = polylog_series(-1, n).compose(&u).unwrap();
        let mut power = TruncatedSeries::one(n);
        let mut termwise = TruncatedSeries::zero(n);
        for m in 1..=n {
            power = power.mul(&u).unwrap();
            termwise = termwise.add(&power.scale(&r(m as i64, 1))).unwrap();
        }
        assert_eq!(via_compose, termwise);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp_series(0), TruncatedSeries::one(0));
        assert_eq!(
            exp_series(3).coeffs(),
            &[r(1, 1), r(1, 1), r(1, 2), r(1, 6)]
        );
        assert_eq!(
            exp_series(6).mul(&exp_neg_series(6)).unwrap(),
            TruncatedSeries::one(6)
        );
        assert_eq!(
            exp_minus_one(4)
                .add(&one_minus_exp_neg(4))
                .unwrap()
                .coeff(0),
            r(0, 1)
        );
    }

    #[test]
    fn polylog_examples() {
        assert_eq!(
            polylog_series(1, 3).coeffs(),
            &[r(0, 1), r(1, 1), r(1, 2), r(1, 3)]
        );
        assert_eq!(
            polylog_series(-1, 3),
            TruncatedSeries::from_ints(3, [0, 1, 2, 3])
        );
        assert_eq!(
            polylog_series(0, 2),
            TruncatedSeries::from_ints(2, [0, 1, 1])
        );
    }

    #[test]
    fn egf_coefficient_examples() {
        assert_eq!(exp_series(5).egf_coefficient(4).unwrap(), r(1, 1));
        assert_eq!(
            exp_series(2).egf_coefficient(3),
            Err(SeriesError::OutOfRange { index: 3, order: 2 })
        );
        // Li_{-3}(1 - e^{-t}) / (e^t - 1) at n = 2
        let n = 3;
        let f = polylog_series(-3, n)
            .compose(&one_minus_exp_neg(n))
            .unwrap();
        let c = f.divide(&exp_minus_one(n)).unwrap();
        assert_eq!(c.egf_coefficient(2).unwrap(), r(31, 1));
    }

    #[test]
    fn display_is_readable() {
        let s = TruncatedSeries::from_coeffs(2, [r(1, 1), r(-1, 2)]);
        assert_eq!(s.to_string(), "1 - 1/2*t + O(t^3)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(t^2)");
    }
}
