//! λ-operations: w-generating series, total λ-classes, elementary symmetric
//! functions evaluated on characters.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Character, Exponent, Grading, Poly, RationalCharacter};

/// `sum_j (-w)^j λ^j(γ)` through `w^J`; stores `λ^0 .. λ^J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSeries {
    lambdas: Vec<Character>,
}

impl WSeries {
    pub fn order(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// `λ^j(γ)`.
    pub fn lambda(&self, j: usize) -> &Character {
        &self.lambdas[j]
    }

    /// Coefficient of `w^j`, which is `(-1)^j λ^j`.
    pub fn w_coefficient(&self, j: usize) -> Character {
        if j.is_multiple_of(2) {
            self.lambdas[j].clone()
        } else {
            -&self.lambdas[j]
        }
    }

    /// Product of two w-series, truncated at the smaller order.
    pub fn mul(&self, o: &WSeries) -> WSeries {
        let jmax = self.order().min(o.order());
        let rank = self.lambdas[0].rank();
        let mut out = vec![Character::zero(rank); jmax + 1];
        for (i, a) in self.lambdas.iter().enumerate().take(jmax + 1) {
            for (k, b) in o.lambdas.iter().enumerate().take(jmax + 1 - i) {
                out[i + k] = &out[i + k] + &(a * b);
            }
        }
        WSeries { lambdas: out }
    }
}

/// Splits a character into `(monomial, multiplicity)` factors sorted by grade.
fn factors(gamma: &Character, g: Option<&Grading>) -> Vec<(Exponent, i64, BigInt)> {
    let mut f: Vec<_> = gamma
        .terms()
        .map(|(e, c)| (e.clone(), g.map_or(0, |g| g.grade(e)), c.clone()))
        .collect();
    f.sort_by_key(|(_, d, _)| *d);
    f
}

fn lambda_w_impl(gamma: &Character, jmax: usize, prune: Option<(&Grading, i64)>) -> WSeries {
    let rank = gamma.rank();
    let mut w: Vec<Character> = vec![Character::zero(rank); jmax + 1];
    w[0] = Character::one(rank);
    let fs = factors(gamma, prune.map(|(g, _)| g));
    for (idx, (x, _, a)) in fs.iter().enumerate() {
        let mono = Character::monomial(x.clone(), 1);
        let times = a.abs().to_u64().expect("multiplicity fits in u64");
        for _ in 0..times {
            if a.is_positive() {
                for j in (1..=jmax).rev() {
                    let d = &w[j - 1] * &mono;
                    w[j] = &w[j] - &d;
                }
            } else {
                for j in 1..=jmax {
                    let d = &w[j - 1] * &mono;
                    w[j] = &w[j] + &d;
                }
            }
        }
        if let Some((g, bound)) = prune {
            let next_min = fs.get(idx + 1).map_or(0, |(_, d, _)| (*d).min(0));
            for (j, c) in w.iter_mut().enumerate() {
                let cap = bound - (jmax - j) as i64 * next_min;
                *c = c.filter_grade(g, i64::MIN, cap);
            }
        }
    }
    let lambdas = w
        .into_iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 0 { c } else { -c })
        .collect();
    WSeries { lambdas }
}

/// `prod_I (1 - w x^I)^(a_I)` modulo `w^(J+1)`.
pub fn lambda_w_series(gamma: &Character, jmax: usize) -> WSeries {
    lambda_w_impl(gamma, jmax, None)
}

/// As [`lambda_w_series`], dropping monomials that can only end above `bound`
/// in grade. Coefficients of grade `<= bound` are exact.
pub fn lambda_w_series_pruned(gamma: &Character, jmax: usize, g: &Grading, bound: i64) -> WSeries {
    lambda_w_impl(gamma, jmax, Some((g, bound)))
}

/// `λ(γ) = prod_I (1 - x^I)^(a_I)` in factored form.
pub fn lambda_total(gamma: &Character) -> Result<RationalCharacter> {
    let rank = gamma.rank();
    let mut num = Character::one(rank);
    let mut den = Vec::new();
    for (e, c) in gamma.terms() {
        if e.is_zero() {
            return Err(Error::UnitWeight);
        }
        let m = c.abs().to_u32().ok_or(Error::Overflow)?;
        if c.is_positive() {
            let f = &Character::one(rank) - &Character::monomial(e.clone(), 1);
            num = &num * &f.pow(m);
        } else {
            den.push((e.clone(), m));
        }
    }
    RationalCharacter::new(num, den)
}

/// Integer combination of products `e_{i1} ... e_{ik}`; the empty product is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymFun {
    pub terms: Vec<SymTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTerm {
    pub coeff: i64,
    pub indices: Vec<usize>,
}

impl SymFun {
    pub fn one() -> Self {
        SymFun { terms: vec![SymTerm { coeff: 1, indices: vec![] }] }
    }

    /// The elementary monomial `e_{i1} ... e_{ik}`.
    pub fn e(indices: &[usize]) -> Self {
        SymFun { terms: vec![SymTerm { coeff: 1, indices: indices.to_vec() }] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.iter().flat_map(|t| &t.indices).any(|&i| i == 0) {
            return Err(Error::InvalidSpec("elementary indices must be positive".into()));
        }
        Ok(())
    }

    pub fn max_index(&self) -> usize {
        self.terms.iter().flat_map(|t| t.indices.iter().copied()).max().unwrap_or(0)
    }

    /// Short label such as `e1^2 - 2*e2`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mono = if t.indices.is_empty() {
                    "1".to_string()
                } else {
                    t.indices.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("*")
                };
                if t.coeff == 1 { mono } else { format!("{}*{mono}", t.coeff) }
            })
            .collect();
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }
}

/// Substitutes `λ^i(γ)` for `e_i`.
pub fn eval_symfun(f: &SymFun, gamma: &Character, jmax: usize) -> Result<Character> {
    f.validate()?;
    if f.max_index() > jmax {
        return Err(Error::IndexTooLarge { index: f.max_index(), max: jmax });
    }
    let w = lambda_w_series(gamma, jmax);
    let mut r = Character::zero(gamma.rank());
    for t in &f.terms {
        let mut p = Character::one(gamma.rank());
        for &i in &t.indices {
            p = &p * w.lambda(i);
        }
        r = &r + &p.scale(&BigInt::from(t.coeff));
    }
    Ok(r)
}

/// `γ_{A,m} = det(A)^m f(A)`.
pub fn gamma_am(a: &Character, m: i64, f: &SymFun) -> Result<Character> {
    let det = a.det().scale(m);
    Ok(eval_symfun(f, a, f.max_index())?.shift(&det))
}

/// Restricted λ-series: `prod (1 - w t^d)^c` over `(d, c)`, as the list of
/// w-coefficients `[w^0] .. [w^J]` (signs included).
///
/// Terms that can only contribute above degree `hi` are dropped.
pub fn lambda_w_restricted(weights: &[(i64, i128)], jmax: usize, hi: i64) -> Result<Vec<Poly>> {
    let mut ws: Vec<(i64, i128)> = weights.iter().copied().filter(|(_, c)| *c != 0).collect();
    ws.sort_unstable();
    let mut w = vec![Poly::zero(); jmax + 1];
    w[0] = Poly::constant(1);
    for (idx, &(d, c)) in ws.iter().enumerate() {
        for _ in 0..c.unsigned_abs() {
            if c > 0 {
                for j in (1..=jmax).rev() {
                    if w[j - 1].is_zero() {
                        continue;
                    }
                    let prev = std::mem::take(&mut w[j - 1]);
                    w[j].add_scaled(&prev, d, -1)?;
                    w[j - 1] = prev;
                }
            } else {
                for j in 1..=jmax {
                    if w[j - 1].is_zero() {
                        continue;
                    }
                    let prev = std::mem::take(&mut w[j - 1]);
                    w[j].add_scaled(&prev, d, 1)?;
                    w[j - 1] = prev;
                }
            }
        }
        let next_min = ws.get(idx + 1).map_or(0, |(d, _)| (*d).min(0));
        for (j, p) in w.iter_mut().enumerate() {
            p.truncate_above(hi - (jmax - j) as i64 * next_min);
        }
    }
    Ok(w)
}

/// Elementary symmetric polynomials `e_0 .. e_J` of `t^{d}` over `grades`.
pub fn elementary_restricted(grades: &[i64], jmax: usize) -> Result<Vec<Poly>> {
    let ws: Vec<(i64, i128)> = grades.iter().map(|&d| (d, 1)).collect();
    let w = lambda_w_restricted(&ws, jmax, i64::MAX / 4)?;
    Ok(w.into_iter().enumerate().map(|(j, p)| if j % 2 == 0 { p } else { p.neg() }).collect())
}

/// `det(U)^m f(U)` for `U = sum_i t^{grades_i}`.
pub fn gamma_restricted(f: &SymFun, m: i64, grades: &[i64]) -> Result<Poly> {
    let e = elementary_restricted(grades, f.max_index())?;
    let mut r = Poly::zero();
    for t in &f.terms {
        let mut p = Poly::constant(1);
        for &i in &t.indices {
            p = p.mul(&e[i])?;
        }
        r.add_scaled(&p, 0, t.coeff as i128)?;
    }
    Ok(r.shift(m * grades.iter().sum::<i64>()))
}

/// Converts a restricted character to kernel weights `(grade, multiplicity)`.
pub fn kernel_weights(c: &Character) -> Result<Vec<(i64, i128)>> {
    c.to_poly().map(|p| p.terms().collect())
}
