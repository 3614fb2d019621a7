//! Truncated q-products: Pochhammer symbols and the theta function.
//! Bivariate results use variables `(q, z)`.

use crate::error::{Error, Result};
use crate::series::{Character, Exponent, Grading, RationalCharacter, Truncation};

fn qgrade() -> Grading {
    Grading(vec![1, 0])
}

/// `(q^a; q)_∞` through `q^N`, for `a >= 1`.
pub fn pochhammer_q(a: i64, order: i64) -> Result<Truncation> {
    if a < 1 {
        return Err(Error::InvalidSpec("(q^a; q) needs a >= 1 here".into()));
    }
    let mut p = Character::one(1);
    for i in a..=order.max(a - 1) {
        p = (&p * &(Character::one(1) - Character::t(i, 1))).filter_grade(&Grading::univariate(), i64::MIN, order);
    }
    let r = RationalCharacter::from_character(p);
    r.expand(order)
}

/// `1/(q; q)_∞` through `q^N`.
pub fn inverse_pochhammer(order: i64) -> Result<Truncation> {
    RationalCharacter::new(Character::one(1), (1..=order.max(1)).map(|i| (Exponent(vec![i]), 1)))?.expand(order)
}

/// `(x; q)_∞` for a monomial `x` of q-degree `>= 0`, through q-degree `N`.
pub fn pochhammer(x: &Exponent, order: i64) -> Result<Character> {
    let g = qgrade();
    let d = g.grade(x);
    if d < 0 {
        return Err(Error::InvalidSpec("x must have nonnegative q-degree".into()));
    }
    if x.is_zero() {
        return Ok(Character::zero(2));
    }
    let mut p = Character::one(2);
    for i in 0..=(order - d) {
        let factor = Character::one(2) - Character::monomial(x.add(&Exponent(vec![i, 0])), 1);
        p = (&p * &factor).filter_grade(&g, i64::MIN, order);
    }
    Ok(p)
}

/// `θ(x; q) = (q;q)_∞ (xq;q)_∞ (x^{-1};q)_∞` for `x` of q-degree 0.
pub fn theta(x: &Exponent, order: i64) -> Result<Character> {
    if qgrade().grade(x) != 0 {
        return Err(Error::InvalidSpec("theta argument must have q-degree 0".into()));
    }
    let q = Exponent(vec![1, 0]);
    let a = pochhammer(&q, order)?;
    let b = pochhammer(&x.add(&q), order)?;
    let c = pochhammer(&x.neg(), order)?;
    Ok((&(&a * &b).filter_grade(&qgrade(), i64::MIN, order) * &c).filter_grade(&qgrade(), i64::MIN, order))
}

/// `sum_{|k|<=K} (z^{4k} q^{2k^2+k} - z^{4k-2} q^{2k^2-k})` through q-degree `N`.
pub fn theta_sum(kmax: i64, order: i64) -> Character {
    let mut c = Character::zero(2);
    for k in -kmax..=kmax {
        c.add_term(Exponent(vec![2 * k * k + k, 4 * k]), 1.into());
        c.add_term(Exponent(vec![2 * k * k - k, 4 * k - 2]), (-1).into());
    }
    c.filter_grade(&qgrade(), i64::MIN, order)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct JtpRow {
    pub q_degree: i64,
    /// Coefficient of `q^d` in the theta sum, as a Laurent polynomial in `z`.
    pub sum: String,
    pub product: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct JtpReport {
    pub order: i64,
    pub range: i64,
    pub rows: Vec<JtpRow>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<i64>,
}

fn q_slice(c: &Character, d: i64) -> Character {
    let z = Grading(vec![0, 1]);
    let mut out = Character::zero(1);
    for (e, v) in c.filter_grade(&qgrade(), d, d).terms() {
        out.add_term(Exponent(vec![z.grade(e)]), v.clone());
    }
    out
}

/// Theta sum over `|k| <= range` against `θ(z^2; q)`, one row per q-degree.
pub fn jtp_table(range: i64, order: i64) -> Result<JtpReport> {
    let sum = theta_sum(range, order);
    let prod = theta(&Exponent(vec![0, 2]), order)?;
    let rows: Vec<JtpRow> = (0..=order)
        .map(|d| {
            let (a, b) = (q_slice(&sum, d), q_slice(&prod, d));
            JtpRow { q_degree: d, sum: a.format_with(&["z"]), product: b.format_with(&["z"]), matches: a == b }
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.matches).map(|r| r.q_degree);
    Ok(JtpReport { order, range, matches: first_mismatch.is_none(), first_mismatch, rows })
}
