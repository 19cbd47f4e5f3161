//! Scalar types for hyperbolicity constants and bound formulas.
//!
//! The bound formulas only need field arithmetic, comparison and a ceiling,
//! so they are written once against [`Scalar`]. Exact rationals are the
//! default; `f64` is available for quick estimates.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_u64(n: u64) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    /// Smallest integer `>= self`, or `None` when negative or too large.
    fn ceil_u64(&self) -> Option<u64>;

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static,
{
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(I::from_i64(num).expect("numerator fits"), I::from_i64(den).expect("denominator fits"))
    }

    fn ceil_u64(&self) -> Option<u64> {
        if self.is_negative() {
            return None;
        }
        self.ceil().to_integer().to_u64()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn ceil_u64(&self) -> Option<u64> {
        if !self.is_finite() || *self < 0.0 || *self >= u64::MAX as f64 {
            return None;
        }
        Some(self.ceil() as u64)
    }
}

/// Parses `p`, `p/q` or a decimal such as `1.5` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Ratio<i64>> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let den = 10i64.pow(digits);
        let neg = int.starts_with('-');
        let int: i64 = if int == "-" || int.is_empty() { 0 } else { int.parse().ok()? };
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        let num = int.abs() * den + frac;
        return Some(Ratio::new(if neg { -num } else { num }, den));
    }
    t.parse::<i64>().ok().map(Ratio::from_integer)
}
