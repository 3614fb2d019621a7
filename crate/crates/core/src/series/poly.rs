//! Dense univariate Laurent polynomials over `i128` with checked arithmetic.
//!
//! This is the kernel used inside localization sums. Every operation that can
//! overflow returns [`Error::Overflow`] instead of wrapping.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn cadd(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn cmul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `sum_i c[i] t^(lo + i)`, kept trimmed (no zero at either end).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    lo: i64,
    c: Vec<i128>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i128) -> Self {
        Poly::monomial(0, c)
    }

    pub fn monomial(d: i64, c: i128) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        Poly { lo: d, c: vec![c] }
    }

    /// Builds from a dense slice starting at degree `lo`.
    pub fn from_dense(lo: i64, c: Vec<i128>) -> Self {
        let mut p = Poly { lo, c };
        p.trim();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i128)>>(terms: I) -> Result<Self> {
        let mut p = Poly::zero();
        for (d, c) in terms {
            p.add_monomial(d, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.c.len() as i64 - 1)
    }

    pub fn coeff(&self, d: i64) -> i128 {
        let i = d - self.lo;
        if i < 0 || i >= self.c.len() as i64 {
            0
        } else {
            self.c[i as usize]
        }
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.lo + i as i64, *c))
    }

    fn trim(&mut self) {
        let Some(first) = self.c.iter().position(|&x| x != 0) else {
            self.c.clear();
            self.lo = 0;
            return;
        };
        let last = self.c.iter().rposition(|&x| x != 0).unwrap();
        self.c.truncate(last + 1);
        if first > 0 {
            self.c.drain(..first);
            self.lo += first as i64;
        }
    }

    /// Grows storage so that degrees `lo..=hi` are addressable.
    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![0; (hi - lo + 1) as usize];
            return;
        }
        if lo < self.lo {
            let extra = (self.lo - lo) as usize;
            let mut v = vec![0; extra];
            v.extend_from_slice(&self.c);
            self.c = v;
            self.lo = lo;
        }
        let top = self.lo + self.c.len() as i64 - 1;
        if hi > top {
            self.c.resize(self.c.len() + (hi - top) as usize, 0);
        }
    }

    pub fn add_monomial(&mut self, d: i64, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        self.reserve_range(d, d);
        let i = (d - self.lo) as usize;
        self.c[i] = cadd(self.c[i], c)?;
        self.trim();
        Ok(())
    }

    /// `self += scale * t^shift * other`.
    pub fn add_scaled(&mut self, other: &Poly, shift: i64, scale: i128) -> Result<()> {
        if other.is_zero() || scale == 0 {
            return Ok(());
        }
        let lo = other.lo + shift;
        let hi = lo + other.c.len() as i64 - 1;
        self.reserve_range(lo, hi);
        let off = (lo - self.lo) as usize;
        for (i, &x) in other.c.iter().enumerate() {
            self.c[off + i] = cadd(self.c[off + i], cmul(x, scale)?)?;
        }
        self.trim();
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let mut r = self.clone();
        r.add_scaled(other, 0, 1)?;
        Ok(r)
    }

    pub fn neg(&self) -> Poly {
        Poly { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn shift(&self, s: i64) -> Poly {
        Poly { lo: self.lo + s, c: self.c.clone() }
    }

    /// Drops every term of degree greater than `hi`.
    pub fn truncate_above(&mut self, hi: i64) {
        if self.is_zero() {
            return;
        }
        if hi < self.lo {
            *self = Poly::zero();
            return;
        }
        let keep = (hi - self.lo + 1) as usize;
        if keep < self.c.len() {
            self.c.truncate(keep);
            self.trim();
        }
    }

    /// Product, keeping only degrees `<= hi`.
    pub fn mul_trunc(&self, other: &Poly, hi: i64) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let lo = self.lo + other.lo;
        if lo > hi {
            return Ok(Poly::zero());
        }
        let len = ((hi - lo + 1) as usize).min(self.c.len() + other.c.len() - 1);
        let mut out = vec![0i128; len];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate().take(len - i) {
                out[i + j] = cadd(out[i + j], cmul(a, b)?)?;
            }
        }
        Ok(Poly::from_dense(lo, out))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) => self.mul_trunc(other, a + b),
            _ => Ok(Poly::zero()),
        }
    }
}

/// `prod_e 1/(1 - t^e)` for nonzero integers `e`, held in the normal form
/// `sign * t^lead * prod_p 1/(1 - t^p)` with every `p > 0`.
#[derive(Clone, Debug)]
pub struct InvLambda {
    pub sign: i128,
    pub lead: i64,
    pub parts: Vec<i64>,
}

impl InvLambda {
    /// Errors with `DegenerateGrading` when some exponent is zero.
    pub fn new<I: IntoIterator<Item = i64>>(exps: I) -> Result<Self> {
        let mut sign = 1i128;
        let mut lead = 0i64;
        let mut parts = Vec::new();
        for e in exps {
            match e.cmp(&0) {
                std::cmp::Ordering::Equal => {
                    return Err(Error::DegenerateGrading(
                        "a cotangent weight has grade 0".into(),
                    ))
                }
                std::cmp::Ordering::Greater => parts.push(e),
                std::cmp::Ordering::Less => {
                    // 1/(1 - t^-a) = -t^a / (1 - t^a)
                    sign = -sign;
                    lead -= e;
                    parts.push(-e);
                }
            }
        }
        parts.sort_unstable();
        Ok(InvLambda { sign, lead, parts })
    }

    /// Exact expansion through degree `order`.
    pub fn expand(&self, order: i64) -> Result<Poly> {
        if order < self.lead {
            return Ok(Poly::zero());
        }
        let len = (order - self.lead + 1) as usize;
        let mut a = vec![0i128; len];
        a[0] = self.sign;
        for &p in &self.parts {
            let p = p as usize;
            for i in p..len {
                a[i] = cadd(a[i], a[i - p])?;
            }
        }
        Ok(Poly::from_dense(self.lead, a))
    }
}
