use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Exponent vector of a torus monomial; negative entries allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    pub fn unit(rank: usize, var: usize) -> Self {
        let mut v = vec![0; rank];
        v[var] = 1;
        Exponent(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }
}

/// One-parameter subgroup `x_i = t^{w_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading(pub Vec<i64>);

impl Grading {
    pub fn new(w: Vec<i64>) -> Self {
        Grading(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn grade(&self, e: &Exponent) -> i64 {
        debug_assert_eq!(e.rank(), self.rank(), "grading rank mismatch");
        e.0.iter().zip(&self.0).map(|(a, w)| a * w).sum()
    }

    /// The identity grading on a univariate torus.
    pub fn univariate() -> Self {
        Grading(vec![1])
    }
}

/// Finite integer combination of torus monomials.
///
/// Zero coefficients are never stored. Mixing characters of different rank
/// panics, except that a zero character of rank 0 adapts to its partner.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    rank: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Character::monomial(Exponent::zero(rank), 1)
    }

    pub fn monomial(e: Exponent, c: impl Into<BigInt>) -> Self {
        let mut ch = Character::zero(e.rank());
        ch.add_term(e, c.into());
        ch
    }

    /// Univariate monomial `c t^d`.
    pub fn t(d: i64, c: impl Into<BigInt>) -> Self {
        Character::monomial(Exponent(vec![d]), c)
    }

    pub fn from_terms<I, C>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut ch = Character::zero(rank);
        for (e, c) in terms {
            ch.add_term(e, c.into());
        }
        ch
    }

    /// Builds from plain exponent vectors.
    pub fn from_vecs(rank: usize, terms: &[(i64, &[i64])]) -> Self {
        Character::from_terms(rank, terms.iter().map(|(c, e)| (Exponent(e.to_vec()), *c)))
    }

    /// Sum of the given monomials with coefficient one each.
    pub fn sum_of(rank: usize, exps: impl IntoIterator<Item = Exponent>) -> Self {
        Character::from_terms(rank, exps.into_iter().map(|e| (e, 1)))
    }

    /// Re-ranks an empty rank-0 character; no-op otherwise.
    pub fn with_rank(mut self, rank: usize) -> Result<Self> {
        if self.terms.is_empty() {
            self.rank = rank;
        }
        if self.rank != rank {
            return Err(Error::InvalidSpec(format!(
                "character of rank {} where rank {} was expected",
                self.rank, rank
            )));
        }
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of distinct weights. `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Exponent::zero(self.rank))
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        assert_eq!(e.rank(), self.rank, "exponent rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn unify(&self, other: &Character) -> usize {
        match (self.rank, other.rank) {
            (a, b) if a == b => a,
            (0, b) if self.is_zero() => b,
            (a, 0) if other.is_zero() => a,
            (a, b) => panic!("character rank mismatch: {a} vs {b}"),
        }
    }

    pub fn dual(&self) -> Character {
        Character {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.neg(), c.clone())).collect(),
        }
    }

    pub fn dim(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exponent of `prod_I x^(a_I I)`.
    pub fn det(&self) -> Exponent {
        let mut acc = vec![0i64; self.rank];
        for (e, c) in &self.terms {
            let c = c.to_i64().expect("determinant multiplicity fits in i64");
            for (a, x) in acc.iter_mut().zip(&e.0) {
                *a += c * x;
            }
        }
        Exponent(acc)
    }

    pub fn scale(&self, k: &BigInt) -> Character {
        if k.is_zero() {
            return Character::zero(self.rank);
        }
        Character {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn shift(&self, by: &Exponent) -> Character {
        Character {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.add(by), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Character {
        let mut r = Character::one(self.rank);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Maps each monomial to `t^grade`.
    pub fn restrict(&self, g: &Grading) -> Character {
        let mut r = Character::zero(1);
        for (e, c) in &self.terms {
            r.add_term(Exponent(vec![g.grade(e)]), c.clone());
        }
        r
    }

    /// Keeps monomials whose grade lies in `[lo, hi]`.
    pub fn filter_grade(&self, g: &Grading, lo: i64, hi: i64) -> Character {
        Character {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (lo..=hi).contains(&g.grade(e)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Permutes variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Character {
        Character {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent(perm.iter().map(|&p| e.0[p]).collect()), c.clone()))
                .collect(),
        }
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Univariate character as a dense kernel polynomial.
    pub fn to_poly(&self) -> Result<Poly> {
        assert_eq!(self.rank, 1, "to_poly needs a univariate character");
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| c.to_i128().map(|c| (e.0[0], c)).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_poly(p: &Poly) -> Character {
        Character::from_terms(1, p.terms().map(|(d, c)| (Exponent(vec![d]), c)))
    }

    /// Lowest and highest grade of any monomial.
    pub fn grade_range(&self, g: &Grading) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| g.grade(e));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Character {
    /// Renders with the given variable names (`x1, x2, ...` or `t` when omitted).
    pub fn format_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| {
                    let name = match names.get(v) {
                        Some(n) => n.to_string(),
                        None if e.rank() == 1 => "t".into(),
                        None => format!("x{}", v + 1),
                    };
                    if x == 1 { name } else { format!("{name}^{x}") }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{a}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

impl Add<&Character> for &Character {
    type Output = Character;
    fn add(self, o: &Character) -> Character {
        let mut r = self.clone();
        r.rank = self.unify(o);
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub<&Character> for &Character {
    type Output = Character;
    fn sub(self, o: &Character) -> Character {
        let mut r = self.clone();
        r.rank = self.unify(o);
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Mul<&Character> for &Character {
    type Output = Character;
    fn mul(self, o: &Character) -> Character {
        let mut r = Character::zero(self.unify(o));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.add(e2), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Character> for Character {
            type Output = Character;
            fn $m(self, o: Character) -> Character {
                (&self).$m(&o)
            }
        }
        impl $tr<&Character> for Character {
            type Output = Character;
            fn $m(self, o: &Character) -> Character {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        -&self
    }
}
