//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `x^0 ..= x^N`.
//! Binary operations truncate to the smaller order of their operands, so a
//! result never claims more precision than its inputs carry. Division and
//! square roots shift out common powers of `x` first and lose the
//! corresponding number of known coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("denominator is not a unit after shifting out x^{valuation} (numerator {numerator})")]
    DivisionByNonUnit {
        valuation: usize,
        numerator: String,
    },
    #[error("constant term {0} is not the square of a rational")]
    NonSquareConstantTerm(String),
    #[error("series of valuation {0} has no square root with integral exponents")]
    OddValuation(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^k`, or zero when `k` exceeds the order.
    pub fn monomial(k: usize, c: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `x^k`.
    pub fn x_pow(k: usize, order: usize) -> Self {
        Series::monomial(k, BigRational::one(), order)
    }

    /// Builds a series from coefficients `c_0, c_1, ...`; the order is
    /// `coeffs.len() - 1`.
    ///
    /// # Panics
    /// On an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least x^0");
        Series { coeffs }
    }

    /// Integer coefficients, zero-padded or truncated to `order`.
    pub fn from_integers<T: Into<BigInt> + Clone>(values: &[T], order: usize) -> Self {
        let mut s = Series::zero(order);
        for (c, v) in s.coeffs.iter_mut().zip(values) {
            *c = BigRational::from_integer(v.clone().into());
        }
        s
    }

    /// Expansion of the rational function `num(x) / den(x)` given by
    /// integer polynomial coefficients (lowest degree first).
    pub fn rational_function(num: &[i64], den: &[i64], order: usize) -> Result<Self, SeriesError> {
        let pad = den.iter().position(|&c| c != 0).unwrap_or(0);
        let n = Series::from_integers(num, order + pad);
        let d = Series::from_integers(den, order + pad);
        n.div(&d)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: BigRational) {
        self.coeffs[n] = value;
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `order`. Raising the order is not allowed:
    /// the missing coefficients are unknown, not zero.
    ///
    /// # Panics
    /// When `order` exceeds the current order.
    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Treats the stored coefficients as an exact polynomial and pads it
    /// with zeros up to `order`.
    pub fn extend_as_polynomial(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        coeffs.truncate(order + 1);
        Series { coeffs }
    }

    /// Coefficients as integers; `None` if any is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Coefficients as `u64` counts; `None` if any is fractional, negative
    /// or too large.
    pub fn to_counts(&self) -> Option<Vec<u64>> {
        self.to_integers()?.iter().map(|c| c.to_u64()).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut out = Series::zero(self.order());
        for i in k..=self.order() {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Divides by `x^k`; the order drops by `k`.
    fn shift_down(&self, k: usize) -> Series {
        Series {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    fn inverse_unit(&self) -> Series {
        let c0 = &self.coeffs[0];
        debug_assert!(!c0.is_zero());
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -acc * &inv0;
        }
        Series { coeffs: out }
    }

    /// Exact division. Common powers of `x` are shifted out of numerator
    /// and denominator, so the quotient is known to
    /// `min(order) - valuation(den)`.
    pub fn div(&self, den: &Series) -> Result<Series, SeriesError> {
        let order = self.order().min(den.order());
        let non_unit = |valuation| SeriesError::DivisionByNonUnit {
            valuation,
            numerator: self.to_string(),
        };
        let v = den.truncate(order).valuation().ok_or_else(|| non_unit(order + 1))?;
        let num = self.truncate(order);
        if num.coeffs[..v].iter().any(|c| !c.is_zero()) {
            return Err(non_unit(v));
        }
        let num = num.shift_down(v);
        let den = den.truncate(order).shift_down(v);
        Ok(&num * &den.inverse_unit())
    }

    /// Square root with positive leading coefficient. A series `x^(2m) t`
    /// with `t(0) != 0` has root `x^m sqrt(t)`, known to order `N - m`.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let Some(v) = self.valuation() else {
            return Ok(self.clone());
        };
        if v % 2 == 1 {
            return Err(SeriesError::OddValuation(v));
        }
        let m = v / 2;
        let t = self.shift_down(v);
        let r0 = rational_sqrt(&t.coeffs[0])
            .ok_or_else(|| SeriesError::NonSquareConstantTerm(t.coeffs[0].to_string()))?;
        let n = t.order();
        let two_r0 = &r0 * rat(2);
        let mut r = vec![BigRational::zero(); n + 1];
        r[0] = r0;
        for k in 1..=n {
            let mut acc = t.coeffs[k].clone();
            for i in 1..k {
                acc -= &r[i] * &r[k - i];
            }
            r[k] = acc / &two_r0;
        }
        let root = Series { coeffs: r };
        Ok(root.extend_as_polynomial(n + m).shift_up(m))
    }

    /// `(a + b*s) / (c + d*s)`.
    pub fn moebius(
        a: &Series,
        b: &Series,
        c: &Series,
        d: &Series,
        s: &Series,
    ) -> Result<Series, SeriesError> {
        let num = a + &(b * s);
        let den = c + &(d * s);
        num.div(&den)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

/// Renders as `1 + 2*x + x^3 + O(x^4)`.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        -&self
    }
}
