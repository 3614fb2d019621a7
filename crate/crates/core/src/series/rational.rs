use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::character::{Character, Exponent, Grading};
use super::truncation::Truncation;
use crate::error::{Error, Result};

/// `numerator * prod (1 - x^e)^(-m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCharacter {
    num: Character,
    den: BTreeMap<Exponent, u32>,
}

impl RationalCharacter {
    pub fn new<I: IntoIterator<Item = (Exponent, u32)>>(num: Character, den: I) -> Result<Self> {
        let mut r = RationalCharacter::from_character(num);
        for (e, m) in den {
            r.push_den(e, m)?;
        }
        Ok(r)
    }

    pub fn from_character(num: Character) -> Self {
        RationalCharacter { num, den: BTreeMap::new() }
    }

    fn push_den(&mut self, e: Exponent, m: u32) -> Result<()> {
        if e.is_zero() {
            return Err(Error::InvalidSpec("denominator exponent must be nonzero".into()));
        }
        if e.rank() != self.num.rank() && !(self.num.is_zero() && self.num.rank() == 0) {
            return Err(Error::InvalidSpec("denominator rank differs from numerator".into()));
        }
        if m > 0 {
            *self.den.entry(e).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Character {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Exponent, u32)> {
        self.den.iter().map(|(e, m)| (e, *m))
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn with_rank(mut self, rank: usize) -> Result<Self> {
        self.num = self.num.with_rank(rank)?;
        if self.den.keys().any(|e| e.rank() != rank) {
            return Err(Error::InvalidSpec("denominator rank mismatch".into()));
        }
        Ok(self)
    }

    /// `prod (1 - x^e)^m` as a character.
    pub fn den_product(&self) -> Character {
        let rank = self.rank();
        let mut r = Character::one(rank);
        for (e, &m) in &self.den {
            let f = &Character::one(rank) - &Character::monomial(e.clone(), 1);
            r = &r * &f.pow(m);
        }
        r
    }

    pub fn mul_character(&self, c: &Character) -> RationalCharacter {
        RationalCharacter { num: &self.num * c, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RationalCharacter) -> RationalCharacter {
        let mut r = RationalCharacter { num: &self.num * &o.num, den: self.den.clone() };
        for (e, &m) in &o.den {
            *r.den.entry(e.clone()).or_insert(0) += m;
        }
        r
    }

    pub fn restrict(&self, g: &Grading) -> Result<RationalCharacter> {
        let mut r = RationalCharacter::from_character(self.num.restrict(g));
        for (e, &m) in &self.den {
            let d = g.grade(e);
            if d == 0 {
                return Err(Error::ZeroGradeDenominator);
            }
            r.push_den(Exponent(vec![d]), m)?;
        }
        Ok(r)
    }

    /// Laurent expansion about `t = 0` of a univariate rational character.
    pub fn expand(&self, order: i64) -> Result<Truncation> {
        assert_eq!(self.rank(), 1, "expand needs a univariate rational character");
        // Normalize 1/(1 - t^-a) = -t^a/(1 - t^a).
        let mut num = self.num.clone();
        let mut parts: Vec<(i64, u32)> = Vec::new();
        for (e, &m) in &self.den {
            let d = e.0[0];
            if d < 0 {
                let sign = if m % 2 == 1 { -1 } else { 1 };
                num = num.shift(&Exponent(vec![-d * m as i64])).scale(&BigInt::from(sign));
                parts.push((-d, m));
            } else {
                parts.push((d, m));
            }
        }
        let Some((lo, _)) = num.grade_range(&Grading::univariate()) else {
            return Truncation::zero(order, order);
        };
        let lower = lo.min(order);
        if order < lo {
            return Truncation::zero(lower, order);
        }
        let len = (order - lo + 1) as usize;
        let mut geo = vec![BigInt::zero(); len];
        geo[0] = BigInt::one();
        for &(p, m) in &parts {
            let p = p as usize;
            for _ in 0..m {
                for i in p..len {
                    let prev = geo[i - p].clone();
                    geo[i] += prev;
                }
            }
        }
        let mut terms = Vec::new();
        for (e, c) in num.terms() {
            let a = e.0[0];
            for (i, g) in geo.iter().enumerate() {
                let d = a + i as i64;
                if d > order {
                    break;
                }
                if !g.is_zero() {
                    terms.push((d, BigRational::from_integer(c * g)));
                }
            }
        }
        Truncation::from_terms(lower, order, terms)
    }

    /// Multivariate expansion keeping monomials of grade `<= bound`.
    ///
    /// Every denominator exponent must have positive grade under `g`.
    pub fn truncate(&self, g: &Grading, bound: i64) -> Result<Character> {
        let rank = self.rank();
        let mut parts = Vec::new();
        for (e, &m) in &self.den {
            let d = g.grade(e);
            if d <= 0 {
                return Err(Error::DegenerateGrading(format!(
                    "denominator weight {:?} has non-positive grade {d}",
                    e.0
                )));
            }
            for _ in 0..m {
                parts.push(e.clone());
            }
        }
        let lo = match self.num.grade_range(g) {
            Some((lo, _)) => lo,
            None => return Ok(Character::zero(rank)),
        };
        // Geometric part, pruned at bound - lo.
        let cap = bound - lo;
        let mut geo = if cap >= 0 { Character::one(rank) } else { Character::zero(rank) };
        for e in &parts {
            let mut acc = Character::zero(rank);
            for (x, c) in geo.terms() {
                let mut k = 0i64;
                loop {
                    let y = x.add(&e.scale(k));
                    if g.grade(&y) > cap {
                        break;
                    }
                    acc.add_term(y, c.clone());
                    k += 1;
                }
            }
            geo = acc;
        }
        Ok((&self.num * &geo).filter_grade(g, i64::MIN, bound))
    }
}

/// An infinite character stored as a rational part plus a finite correction,
/// for example `B = Z + z^6 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCharacter {
    pub rational: RationalCharacter,
    pub correction: Character,
}

impl SeriesCharacter {
    pub fn new(rational: RationalCharacter, correction: Character) -> Self {
        SeriesCharacter { rational, correction }
    }

    pub fn finite(c: Character) -> Self {
        let rank = c.rank();
        SeriesCharacter { rational: RationalCharacter::from_character(Character::zero(rank)), correction: c }
    }

    pub fn rank(&self) -> usize {
        self.rational.rank()
    }

    /// Single fraction `(num + correction * den) / den`.
    pub fn to_rational(&self) -> RationalCharacter {
        let num = &self.rational.num + &(&self.correction * &self.rational.den_product());
        RationalCharacter { num, den: self.rational.den.clone() }
    }

    pub fn truncate(&self, g: &Grading, bound: i64) -> Result<Character> {
        Ok(&self.rational.truncate(g, bound)? + &self.correction.filter_grade(g, i64::MIN, bound))
    }

    pub fn restrict(&self, g: &Grading) -> Result<RationalCharacter> {
        self.to_rational().restrict(g)
    }

    /// Same rational part; returns `self - other` as a finite character when
    /// the rational parts agree.
    pub fn finite_difference(&self, other: &SeriesCharacter) -> Option<Character> {
        (self.rational == other.rational).then(|| &self.correction - &other.correction)
    }
}
