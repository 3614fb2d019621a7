use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Univariate Laurent series known exactly through degree `order`.
///
/// `lower` is a valuation bound: every coefficient below it is zero.
#[derive(Clone)]
pub struct Truncation {
    lower: i64,
    order: i64,
    coeffs: Vec<BigRational>,
}

impl Truncation {
    pub fn zero(lower: i64, order: i64) -> Result<Self> {
        if lower > order {
            return Err(Error::EmptyWindow { lower, order });
        }
        Ok(Truncation { lower, order, coeffs: vec![BigRational::zero(); (order - lower + 1) as usize] })
    }

    /// Series from `(degree, coefficient)` pairs; terms above `order` are dropped.
    pub fn from_terms<I>(lower: i64, order: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut t = Truncation::zero(lower, order)?;
        for (d, c) in terms {
            if d > order {
                continue;
            }
            if d < lower {
                return Err(Error::OutOfWindow { degree: d, lower, order });
            }
            t.coeffs[(d - lower) as usize] += c;
        }
        Ok(t)
    }

    pub fn from_ints(lower: i64, order: i64, coeffs: &[i64]) -> Result<Self> {
        Truncation::from_terms(
            lower,
            order,
            coeffs.iter().enumerate().map(|(i, &c)| (lower + i as i64, BigRational::from_integer(c.into()))),
        )
    }

    /// Kernel polynomial viewed as a series known through `order`.
    pub fn from_poly(p: &Poly, order: i64) -> Self {
        let lower = p.valuation().map_or(order, |v| v.min(order));
        Truncation::from_terms(lower, order, p.terms().map(|(d, c)| (d, BigRational::from_integer(c.into()))))
            .expect("window derived from the polynomial itself")
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coefficient(&self, d: i64) -> Result<BigRational> {
        if d < self.lower || d > self.order {
            return Err(Error::OutOfWindow { degree: d, lower: self.lower, order: self.order });
        }
        Ok(self.coeffs[(d - self.lower) as usize].clone())
    }

    /// Like [`coefficient`](Self::coefficient) but zero below the valuation bound.
    pub fn coefficient_or_zero(&self, d: i64) -> Result<BigRational> {
        if d < self.lower && d <= self.order {
            return Ok(BigRational::zero());
        }
        self.coefficient(d)
    }

    /// Nonzero `(degree, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.lower + i as i64, c))
    }

    /// Dense coefficient list over `[from, order]`, zero-filled below `lower`.
    pub fn dense_from(&self, from: i64) -> Vec<BigRational> {
        (from..=self.order).map(|d| self.coefficient_or_zero(d).unwrap_or_default()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Lowers the order, keeping the lower bound when possible.
    pub fn with_order(&self, order: i64) -> Result<Self> {
        let order = order.min(self.order);
        let lower = self.lower.min(order);
        Truncation::from_terms(lower, order, self.terms().map(|(d, c)| (d, c.clone())))
    }

    pub fn add(&self, o: &Truncation) -> Result<Truncation> {
        let lower = self.lower.min(o.lower);
        let order = self.order.min(o.order);
        Truncation::from_terms(
            lower,
            order,
            self.terms().chain(o.terms()).map(|(d, c)| (d, c.clone())),
        )
    }

    pub fn sub(&self, o: &Truncation) -> Result<Truncation> {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Truncation {
        Truncation { lower: self.lower, order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &Truncation) -> Result<Truncation> {
        let lower = self.lower + o.lower;
        let order = (self.order + o.lower).min(o.order + self.lower);
        let mut r = Truncation::zero(lower, order)?;
        for (d1, c1) in self.terms() {
            for (d2, c2) in o.terms() {
                let d = d1 + d2;
                if d <= order {
                    r.coeffs[(d - lower) as usize] += c1 * c2;
                }
            }
        }
        Ok(r)
    }

    /// First degree in the common window where the two series differ.
    ///
    /// The window runs from the smaller lower bound to the smaller order.
    pub fn first_mismatch(&self, o: &Truncation) -> Option<i64> {
        let lo = self.lower.min(o.lower);
        let hi = self.order.min(o.order);
        (lo..=hi).find(|&d| self.coefficient_or_zero(d).ok() != o.coefficient_or_zero(d).ok())
    }

    /// Coefficients as integers when all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms().map(|(d, c)| c.is_integer().then(|| (d, c.to_integer()))).collect()
    }
}

impl PartialEq for Truncation {
    fn eq(&self, o: &Truncation) -> bool {
        self.order == o.order && self.first_mismatch(o).is_none()
    }
}

impl fmt::Debug for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.terms() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (_, true) => write!(f, "t^{d}")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, false) => write!(f, "{a}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_window() {
        let a = Truncation::from_ints(0, 3, &[1, 1, 1, 1]).unwrap();
        let b = Truncation::from_ints(-1, 2, &[1, 0, 0, 1]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!((p.lower(), p.order()), (-1, 2));
    }

    #[test]
    fn one_plus_t_times_one_minus_t() {
        let a = Truncation::from_ints(0, 2, &[1, 1]).unwrap();
        let b = Truncation::from_ints(0, 2, &[1, -1]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Truncation::from_ints(0, 2, &[1, 0, -1]).unwrap());
    }

    #[test]
    fn out_of_window() {
        let a = Truncation::from_ints(0, 1, &[1, 1]).unwrap();
        assert!(matches!(a.coefficient(5), Err(Error::OutOfWindow { .. })));
        assert_eq!(a.coefficient(1).unwrap(), BigRational::one());
    }
}
