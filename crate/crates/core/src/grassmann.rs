//! Fixed points and localization on finite Grassmannians `G_{n,Z}` of
//! codimension-`n` subspaces, plus the constant-term operators for `n = 1`
//! and Martin's formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel;
use crate::plethysm::lambda_w_restricted;
use crate::series::{Character, Exponent, Grading, InvLambda, Poly, Truncation};

/// Weights of a finite representation, listed with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightList {
    rank: usize,
    weights: Vec<Exponent>,
}

impl WeightList {
    pub fn new(rank: usize, weights: Vec<Exponent>) -> Result<Self> {
        if weights.iter().any(|w| w.rank() != rank) {
            return Err(Error::InvalidSpec("weight of the wrong rank".into()));
        }
        Ok(WeightList { rank, weights })
    }

    /// Univariate weights `t^{w}`.
    pub fn univariate(ws: &[i64]) -> Self {
        WeightList { rank: 1, weights: ws.iter().map(|&w| Exponent(vec![w])).collect() }
    }

    /// Expands a character with nonnegative coefficients into its weights.
    pub fn from_character(c: &Character) -> Result<Self> {
        let mut weights = Vec::new();
        for (e, m) in c.terms() {
            let m = m.to_usize().ok_or_else(|| {
                Error::InvalidSpec(format!("weight {:?} has negative multiplicity", e.0))
            })?;
            weights.extend(std::iter::repeat_n(e.clone(), m));
        }
        Ok(WeightList { rank: c.rank(), weights })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Exponent] {
        &self.weights
    }

    pub fn total(&self) -> Character {
        Character::sum_of(self.rank, self.weights.iter().cloned())
    }

    pub fn grades(&self, g: &Grading) -> Vec<i64> {
        self.weights.iter().map(|w| g.grade(w)).collect()
    }

    /// Restricted grades, failing when two weights collide.
    pub fn distinct_grades(&self, g: &Grading) -> Result<Vec<i64>> {
        let gr = self.grades(g);
        let mut idx: Vec<usize> = (0..gr.len()).collect();
        idx.sort_by_key(|&i| gr[i]);
        if let Some(w) = idx.windows(2).find(|w| gr[w[0]] == gr[w[1]]) {
            let (a, b) = (&self.weights[w[0]], &self.weights[w[1]]);
            let msg = if a == b {
                format!("weight {:?} occurs twice; no grading separates it", a.0)
            } else {
                format!(
                    "weights {:?} and {:?} both restrict to t^{}; try grading {:?}",
                    a.0,
                    b.0,
                    gr[w[0]],
                    self.suggest_grading().0
                )
            };
            return Err(Error::DegenerateGrading(msg));
        }
        Ok(gr)
    }

    /// `(1, B, B^2, ...)` with `B = 2 max|exponent| + 1`; separates any
    /// distinct weights of the list (balanced base-`B` digits).
    pub fn suggest_grading(&self) -> Grading {
        let top = self.weights.iter().flat_map(|w| w.0.iter()).map(|x| x.abs()).max().unwrap_or(0);
        let base = 2 * top + 1;
        Grading((0..self.rank as u32).map(|i| base.pow(i)).collect())
    }
}

/// A torus-fixed point: the quotient `U_S` spanned by the weights in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub subset: Vec<usize>,
    pub u: Character,
    pub v: Character,
}

/// All `n`-subsets of `0..d` in lexicographic order.
pub fn subsets(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] != i + d - n) else {
            return out;
        };
        cur[i] += 1;
        for k in i + 1..n {
            cur[k] = cur[k - 1] + 1;
        }
    }
}

fn check_rank(n: i64, d: usize) -> Result<usize> {
    if n < 0 || n as usize > d {
        return Err(Error::BadRank { n, dim: d });
    }
    Ok(n as usize)
}

pub fn enumerate_fixed_points(z: &WeightList, n: i64) -> Result<Vec<FixedPoint>> {
    let n = check_rank(n, z.len())?;
    Ok(subsets(z.len(), n)
        .into_iter()
        .map(|s| {
            let mut u = Character::zero(z.rank);
            let mut v = Character::zero(z.rank);
            let mut it = s.iter().peekable();
            for (i, w) in z.weights.iter().enumerate() {
                if it.peek() == Some(&&i) {
                    it.next();
                    u.add_term(w.clone(), BigInt::from(1));
                } else {
                    v.add_term(w.clone(), BigInt::from(1));
                }
            }
            FixedPoint { subset: s, u, v }
        })
        .collect())
}

/// `T_p X = U_S · V_S^*`.
pub fn tangent_character(p: &FixedPoint) -> Character {
    &p.u * &p.v.dual()
}

/// Restricted cotangent weights `v - u` at a subset, in normal form.
pub fn cotangent_inverse(grades: &[i64], subset: &[usize]) -> Result<InvLambda> {
    let mut inside = vec![false; grades.len()];
    for &i in subset {
        inside[i] = true;
    }
    let mut exps = Vec::with_capacity(subset.len() * (grades.len() - subset.len()));
    for &i in subset {
        for (j, &gv) in grades.iter().enumerate() {
            if !inside[j] {
                exps.push(gv - grades[i]);
            }
        }
    }
    InvLambda::new(exps)
}

/// Per-fixed-point integrand for [`localize_batch`]: given the subset and the
/// highest degree that can still matter, return the restricted integrands.
pub trait Integrand: Sync {
    fn eval(&self, subset: &[usize], hi: i64) -> Result<Vec<Poly>>;
}

impl<F> Integrand for F
where
    F: Fn(&[usize], i64) -> Result<Vec<Poly>> + Sync,
{
    fn eval(&self, subset: &[usize], hi: i64) -> Result<Vec<Poly>> {
        self(subset, hi)
    }
}

/// One fixed point's localization terms, each known exactly through `order`.
pub fn localize_point<I: Integrand + ?Sized>(
    grades: &[i64],
    subset: &[usize],
    order: i64,
    integrand: &I,
) -> Result<Vec<Poly>> {
    let inv = cotangent_inverse(grades, subset)?;
    let ps = integrand.eval(subset, order - inv.lead)?;
    let Some(minv) = ps.iter().filter_map(Poly::valuation).min() else {
        return Ok(vec![Poly::zero(); ps.len()]);
    };
    let series = inv.expand(order - minv)?;
    ps.iter().map(|p| p.mul_trunc(&series, order)).collect()
}

/// `sum_S integrand_i(S) / λ(T*_S)` for each slot `i`, exact through `order`.
///
/// `grades` must be pairwise distinct. Runs on the configured strategy.
pub fn localize_batch<I: Integrand + ?Sized>(
    grades: &[i64],
    n: usize,
    order: i64,
    width: usize,
    integrand: &I,
) -> Result<Vec<Poly>> {
    let points = subsets(grades.len(), n);
    parallel::try_fold_reduce(
        &points,
        || vec![Poly::zero(); width],
        |mut acc, s| {
            let terms = localize_point(grades, s, order, integrand)?;
            for (a, t) in acc.iter_mut().zip(&terms) {
                a.add_scaled(t, 0, 1)?;
            }
            Ok(acc)
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                x.add_scaled(y, 0, 1)?;
            }
            Ok(a)
        },
    )
}

/// `χ_{G_{n,Z}}(γ(U))` by localization, exact through `order`.
pub fn euler_localized<F>(z: &WeightList, n: i64, gamma: F, g: &Grading, order: i64) -> Result<Truncation>
where
    F: Fn(&Character) -> Result<Character> + Sync,
{
    let n = check_rank(n, z.len())?;
    let grades = z.distinct_grades(g)?;
    let integrand = |s: &[usize], _hi: i64| -> Result<Vec<Poly>> {
        let u = Character::sum_of(z.rank, s.iter().map(|&i| z.weights[i].clone()));
        Ok(vec![gamma(&u)?.restrict(g).to_poly()?])
    };
    let sum = localize_batch(&grades, n, order, 1, &integrand)?;
    Ok(Truncation::from_poly(&sum[0], order))
}

/// Complete homogeneous polynomials `h_0 .. h_J` of `t^{w}` over `grades`.
pub fn complete_restricted(grades: &[i64], jmax: usize) -> Result<Vec<Poly>> {
    let ws: Vec<(i64, i128)> = grades.iter().map(|&d| (d, -1)).collect();
    lambda_w_restricted(&ws, jmax, i64::MAX / 4)
}

fn univariate_terms(f: &Character) -> Vec<(i64, BigInt)> {
    assert_eq!(f.rank(), 1, "f must be a Laurent polynomial in one variable x");
    f.terms().map(|(e, c)| (e.0[0], c.clone())).collect()
}

fn poly_sum_to_truncation(terms: Vec<(i64, BigInt)>, order: i64) -> Truncation {
    let lower = terms.iter().map(|(d, _)| *d).min().unwrap_or(order).min(order);
    Truncation::from_terms(lower, order, terms.into_iter().map(|(d, c)| (d, BigRational::from_integer(c))))
        .expect("lower bound taken from the terms")
}

fn scaled_poly_terms(p: &Poly, c: &BigInt, shift: i64, out: &mut Vec<(i64, BigInt)>) {
    out.extend(p.terms().map(|(d, x)| (d + shift, c * BigInt::from(x))));
}

/// `ξ⁰(f) = [x⁰] fl_{x^{-1}} f(x) prod_i (1 - t^{w_i}/x)^{-1}`.
pub fn xi0(f: &Character, z: &WeightList, g: &Grading, order: i64) -> Result<Truncation> {
    let grades = z.grades(g);
    let terms = univariate_terms(f);
    let amax = terms.iter().map(|(a, _)| *a).max().unwrap_or(0).max(0) as usize;
    let h = complete_restricted(&grades, amax)?;
    let mut out = Vec::new();
    for (a, c) in &terms {
        if *a >= 0 {
            scaled_poly_terms(&h[*a as usize], c, 0, &mut out);
        }
    }
    Ok(poly_sum_to_truncation(out, order))
}

/// `ξ^d(f)`, normalized so that `ξ⁰ + (-1)^d ξ^d` equals the residue sum:
/// `ξ^d(f) = (-1)^(d+1) [x⁰] fl_x f(x) prod_i (1 - t^{w_i}/x)^{-1}`.
pub fn xid(f: &Character, z: &WeightList, g: &Grading, order: i64) -> Result<Truncation> {
    let grades = z.grades(g);
    let d = grades.len() as i64;
    let neg: Vec<i64> = grades.iter().map(|w| -w).collect();
    let shift: i64 = neg.iter().sum();
    let terms = univariate_terms(f);
    let bmax = terms.iter().map(|(a, _)| -a - d).max().unwrap_or(-1).max(0) as usize;
    let h = complete_restricted(&neg, bmax)?;
    // fl_x: prod (1 - t^w/x)^{-1} = (-1)^d x^d t^{-Σw} prod (1 - x t^{-w})^{-1};
    // the (-1)^d cancels against the normalization, leaving a minus sign.
    let mut out = Vec::new();
    for (a, c) in &terms {
        let b = -a - d;
        if b >= 0 {
            scaled_poly_terms(&h[b as usize], &-c, shift, &mut out);
        }
    }
    Ok(poly_sum_to_truncation(out, order))
}

/// Identity check result, serialized as the documented report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub order: i64,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<i64>,
}

impl IdentityReport {
    pub fn compare(identity: &str, order: i64, a: &Truncation, b: &Truncation) -> Self {
        let first_mismatch = a.first_mismatch(b);
        IdentityReport { identity: identity.into(), order, matches: first_mismatch.is_none(), first_mismatch }
    }
}

/// Checks `ξ⁰(f) + (-1)^d ξ^d(f)` against the localization sum on `P(Z)`.
pub fn residue_sum_check(f: &Character, z: &WeightList, g: &Grading, order: i64) -> Result<IdentityReport> {
    let d = z.len();
    let a = xi0(f, z, g, order)?;
    let b = xid(f, z, g, order)?;
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let lhs = a.add(&b.scale(&BigRational::from_integer(sign.into())))?;
    let rhs = euler_localized(z, 1, |u: &Character| Ok(eval_laurent_at(f, u)), g, order)?;
    Ok(IdentityReport::compare("residue-sum", order, &lhs, &rhs))
}

/// `f(u)` for a univariate `f` and a single weight `u`.
fn eval_laurent_at(f: &Character, u: &Character) -> Character {
    let (e, _) = u.terms().next().expect("n = 1 fixed point has one weight");
    let mut r = Character::zero(u.rank());
    for (a, c) in f.terms() {
        r.add_term(e.scale(a.0[0]), c.clone());
    }
    r
}

/// Which operator Martin's formula applies per variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MartinMethod {
    /// Residue sum at the poles `x = t^{w_j}`.
    Localized,
    /// `ξ⁰` in each variable.
    BorelWeil,
}

/// `Δ_x = prod_{i≠j} (1 - x_i/x_j)`.
pub fn vandermonde_delta(n: usize) -> Character {
    let mut d = Character::one(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let e = Exponent::unit(n, i).sub(&Exponent::unit(n, j));
                d = &d * &(&Character::one(n) - &Character::monomial(e, 1));
            }
        }
    }
    d
}

pub fn is_symmetric(f: &Character) -> bool {
    let n = f.rank();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        f.permute(&perm) == *f
    })
}

/// `det^m · f(x_1..x_n)` as a polynomial in the `x` variables.
pub fn symfun_in_x(f: &crate::plethysm::SymFun, n: usize, m: i64) -> Result<Character> {
    let xs = Character::sum_of(n, (0..n).map(|i| Exponent::unit(n, i)));
    crate::plethysm::gamma_am(&xs, m, f)
}

/// `1/n! ξ_{x_1} ... ξ_{x_n} f(x) Δ_x`.
pub fn martin_chi(
    z: &WeightList,
    n: usize,
    f: &Character,
    g: &Grading,
    order: i64,
    method: MartinMethod,
) -> Result<Truncation> {
    if f.rank() != n {
        return Err(Error::InvalidSpec(format!("f has {} variables, expected {n}", f.rank())));
    }
    if !is_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    check_rank(n as i64, z.len())?;
    let fd = f * &vandermonde_delta(n);
    let nfact: BigInt = (1..=n as u64).product::<u64>().into();
    let sum = match method {
        MartinMethod::Localized => martin_localized(z, n, &fd, g, order)?,
        MartinMethod::BorelWeil => martin_borel_weil(z, &fd, g, order)?,
    };
    Ok(sum.scale(&BigRational::new(BigInt::from(1), nfact)))
}

fn martin_localized(z: &WeightList, n: usize, fd: &Character, g: &Grading, order: i64) -> Result<Truncation> {
    let grades = z.distinct_grades(g)?;
    let d = grades.len();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &tuples {
            for j in (0..d).filter(|j| !t.contains(j)) {
                let mut u = t.clone();
                u.push(j);
                next.push(u);
            }
        }
        tuples = next;
    }
    let total = parallel::try_fold_reduce(
        &tuples,
        Poly::zero,
        |mut acc, tup| {
            let gr = Grading(tup.iter().map(|&j| grades[j]).collect());
            let num = fd.restrict(&gr).to_poly()?;
            let mut exps = Vec::new();
            for &j in tup {
                for (i, &w) in grades.iter().enumerate() {
                    if i != j {
                        exps.push(w - grades[j]);
                    }
                }
            }
            let inv = InvLambda::new(exps)?;
            if let Some(v) = num.valuation() {
                let s = inv.expand(order - v)?;
                acc.add_scaled(&num.mul_trunc(&s, order)?, 0, 1)?;
            }
            Ok(acc)
        },
        |mut a, b| {
            a.add_scaled(&b, 0, 1)?;
            Ok(a)
        },
    )?;
    Ok(Truncation::from_poly(&total, order))
}

fn martin_borel_weil(z: &WeightList, fd: &Character, g: &Grading, order: i64) -> Result<Truncation> {
    let grades = z.grades(g);
    let amax = fd.terms().flat_map(|(e, _)| e.0.iter().copied()).max().unwrap_or(0).max(0) as usize;
    let h = complete_restricted(&grades, amax)?;
    let mut acc = Poly::zero();
    for (e, c) in fd.terms() {
        if e.0.iter().any(|&a| a < 0) {
            continue;
        }
        let mut p = Poly::constant(c.to_i128().ok_or(Error::Overflow)?);
        for &a in &e.0 {
            p = p.mul(&h[a as usize])?;
        }
        acc.add_scaled(&p, 0, 1)?;
    }
    acc.truncate_above(order);
    Ok(Truncation::from_poly(&acc, order))
}
