//! Both sides of the projection formula
//! `χ_Y(γ) = sum_j (-1)^j χ_X(γ λ^j(E))`, the hypotheses checker, and the
//! valuation bound.

mod conditions;
mod report;

pub use conditions::{check_conditions, ConditionReport, ConditionResult};
pub use report::{TraceEntry, VerificationReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{localize_batch, WeightList};
use crate::models::{y_fixed_points, ExampleSpec};
use crate::plethysm::{gamma_am, gamma_restricted, lambda_w_restricted};
use crate::series::{Character, Grading, InvLambda, Poly, Truncation};

/// Truncation parameters of one RHS evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cutoffs {
    /// Grade bound of `Z_{≤k}`.
    pub k: i64,
    /// Grade bound of `B_{≤l}`.
    pub l: i64,
    /// Highest λ-degree summed.
    #[serde(rename = "J")]
    pub j: usize,
    /// Series order (t-degree).
    #[serde(rename = "N")]
    pub n: i64,
    /// Condition-check window.
    #[serde(rename = "W")]
    pub w: i64,
}

/// How `(k, l, J)` grow between rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Schedule {
    pub start: Cutoffs,
    pub step_k: i64,
    pub step_l: i64,
    pub step_j: usize,
    /// Maximum number of rounds.
    pub budget: usize,
    /// Run one extra round after stabilization and record whether it agrees.
    pub confirm: bool,
}

impl Schedule {
    /// Default schedule for `spec` at t-order `order`.
    ///
    /// `k` and `l` start two past the order; `J` starts at `order / s` where
    /// `s` is the larger of the example's order scale and the smallest
    /// positive restricted grade of `Z`. Each round adds 2 to `k`, `l` and 1
    /// to `J`.
    pub fn for_spec(spec: &ExampleSpec, g: &Grading, order: i64, window: i64, budget: usize) -> Result<Schedule> {
        let z = spec.z_truncated(g, order.max(1))?;
        let gmin = z.terms().map(|(e, _)| g.grade(e)).filter(|&d| d > 0).min().unwrap_or(1);
        let s = gmin.max(spec.order_scale).max(1);
        let j0 = ((order.max(0) + s - 1) / s).max(1) as usize;
        Ok(Schedule {
            start: Cutoffs { k: order + 2, l: order + 2, j: j0, n: order, w: window },
            step_k: 2,
            step_l: 2,
            step_j: 1,
            budget: budget.max(1),
            confirm: false,
        })
    }

    /// Cutoffs of round `r`, with `k` capped at `cap`.
    pub fn round(&self, r: usize, cap: i64) -> (Cutoffs, bool) {
        let mut c = self.start;
        let k = c.k + self.step_k * r as i64;
        c.k = k.min(cap);
        c.l += self.step_l * r as i64;
        c.j += self.step_j * r;
        (c, k > cap)
    }
}

/// `χ_Y(γ)`: localization over Y-side fixed points with the virtual cotangent.
pub fn lhs_chi_y(spec: &ExampleSpec, g: &Grading, order: i64) -> Result<Truncation> {
    let points = y_fixed_points(spec)?;
    let mut acc = Poly::zero();
    for p in &points {
        acc.add_scaled(&y_term(spec, &p.u, &p.cotangent, g, order)?, 0, 1)?;
    }
    Ok(Truncation::from_poly(&acc, order))
}

/// `γ(U) / λ(T*)` for a virtual cotangent `T*`, restricted and expanded.
pub fn y_term(spec: &ExampleSpec, u: &Character, cot: &Character, g: &Grading, order: i64) -> Result<Poly> {
    let gamma = gamma_am(u, spec.m, &spec.f)?.restrict(g).to_poly()?;
    let cot_r = cot.restrict(g).to_poly()?;
    let mut parts = Vec::new();
    let mut num = Poly::constant(1);
    for (d, c) in cot_r.terms() {
        if d == 0 {
            return Err(Error::DegenerateGrading(format!("virtual cotangent at {u} has a weight of grade 0")));
        }
        if c > 0 {
            parts.extend(std::iter::repeat_n(d, c as usize));
        } else {
            let f = Poly::from_terms([(0, 1), (d, -1)])?;
            for _ in 0..(-c) {
                num = num.mul(&f)?;
            }
        }
    }
    let inv = InvLambda::new(parts)?;
    let top = gamma.mul(&num)?;
    let Some(v) = top.valuation() else { return Ok(Poly::zero()) };
    top.mul_trunc(&inv.expand(order - v)?, order)
}

/// Restricted data shared by every fixed point of one RHS evaluation.
struct RhsKernel {
    grades: Vec<i64>,
    a: Poly,
    b: Poly,
    c: Poly,
    m: i64,
    f: crate::plethysm::SymFun,
    jmax: usize,
}

impl RhsKernel {
    fn new(spec: &ExampleSpec, cut: &Cutoffs, g: &Grading) -> Result<(RhsKernel, WeightList)> {
        let z = spec.weight_list(g, cut.k)?;
        let grades = z.distinct_grades(g)?;
        if spec.grassmann_rank() > grades.len() {
            return Err(Error::BadRank { n: spec.grassmann_rank() as i64, dim: grades.len() });
        }
        let b = spec.b_truncated(g, cut.l)?;
        Ok((
            RhsKernel {
                grades,
                a: spec.a.restrict(g).to_poly()?,
                b: b.restrict(g).to_poly()?,
                c: spec.c.restrict(g).to_poly()?,
                m: spec.m,
                f: spec.f.clone(),
                jmax: cut.j,
            },
            z,
        ))
    }

    /// `γ(U) · [w^j] λ_w(E_U)` for `j = 0..=J`, dropping degrees above `hi`.
    fn integrand(&self, subset: &[usize], hi: i64) -> Result<Vec<Poly>> {
        let ug: Vec<i64> = subset.iter().map(|&i| self.grades[i]).collect();
        let gamma = gamma_restricted(&self.f, self.m, &ug)?;
        let Some(gv) = gamma.valuation() else {
            return Ok(vec![Poly::zero(); self.jmax + 1]);
        };
        let u = Poly::from_terms(ug.iter().map(|&d| (d, 1)))?;
        let ud = Poly::from_terms(ug.iter().map(|&d| (-d, 1)))?;
        let uu = u.mul(&ud)?;
        let mut e = self.a.mul(&u)?;
        e.add_scaled(&self.b.mul(&ud)?, 0, 1)?;
        e.add_scaled(&self.c.mul(&uu)?, 0, 1)?;
        let weights: Vec<(i64, i128)> = e.terms().collect();
        let lam = lambda_w_restricted(&weights, self.jmax, hi - gv)?;
        lam.iter().map(|p| gamma.mul_trunc(p, hi)).collect()
    }
}

/// `χ_{X_k}(γ · [w^j] λ_w(E))` for every `j <= J`; the RHS is their sum.
pub fn rhs_components(spec: &ExampleSpec, cut: &Cutoffs, g: &Grading) -> Result<Vec<Truncation>> {
    let (kernel, _) = RhsKernel::new(spec, cut, g)?;
    let integrand = |s: &[usize], hi: i64| kernel.integrand(s, hi);
    let sums = localize_batch(&kernel.grades, spec.grassmann_rank(), cut.n, cut.j + 1, &integrand)?;
    Ok(sums.iter().map(|p| Truncation::from_poly(p, cut.n)).collect())
}

/// `χ_{X_k}(γ λ^j(E_{k,l}))`.
pub fn rhs_term(spec: &ExampleSpec, j: usize, cut: &Cutoffs, g: &Grading) -> Result<Truncation> {
    let mut c = *cut;
    c.j = j;
    let comps = rhs_components(spec, &c, g)?;
    let s = if j.is_multiple_of(2) { 1 } else { -1 };
    Ok(comps[j].scale(&num_rational::BigRational::from_integer(s.into())))
}

/// RHS at fixed cutoffs.
pub fn rhs_at(spec: &ExampleSpec, cut: &Cutoffs, g: &Grading) -> Result<Truncation> {
    let comps = rhs_components(spec, cut, g)?;
    let mut acc = Truncation::zero(cut.n, cut.n)?;
    for c in &comps {
        acc = acc.add(c)?;
    }
    Ok(acc)
}

/// Per-fixed-point RHS contributions, for diagnostics and valuation checks.
pub fn rhs_point_terms(spec: &ExampleSpec, cut: &Cutoffs, g: &Grading) -> Result<Vec<(Character, Vec<Poly>)>> {
    let (kernel, z) = RhsKernel::new(spec, cut, g)?;
    let integrand = |s: &[usize], hi: i64| kernel.integrand(s, hi);
    crate::grassmann::subsets(kernel.grades.len(), spec.grassmann_rank())
        .into_iter()
        .map(|s| {
            let u = Character::sum_of(z.rank(), s.iter().map(|&i| z.weights()[i].clone()));
            let terms = crate::grassmann::localize_point(&kernel.grades, &s, cut.n, &integrand)?;
            Ok((u, terms))
        })
        .collect()
}

/// Escalates `(k, l, J)` until two successive rounds agree through `N`.
pub fn rhs_sum(spec: &ExampleSpec, schedule: &Schedule, g: &Grading) -> Result<(Truncation, Vec<TraceEntry>, Cutoffs)> {
    let last = schedule.start.k + schedule.step_k * schedule.budget as i64 + 2;
    let cap = spec.collision_free_cap(g, last)?;
    if cap < schedule.start.k {
        return Err(Error::DegenerateGrading(format!(
            "weights of Z collide at grade {} but the series needs Z up to grade {}; choose a more generic grading",
            cap + 1,
            schedule.start.k
        )));
    }
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut prev: Option<Truncation> = None;
    for r in 0..schedule.budget {
        let (cut, capped) = schedule.round(r, cap);
        let rhs = rhs_at(spec, &cut, g)?;
        let changed_at = prev.as_ref().map(|p| p.first_mismatch(&rhs));
        trace.push(TraceEntry { round: r, k: cut.k, l: cut.l, j: cut.j, k_capped: capped, changed_at: changed_at.flatten(), confirm: false });
        if changed_at == Some(None) {
            if schedule.confirm {
                let (c2, capped2) = schedule.round(r + 1, cap);
                let again = rhs_at(spec, &c2, g)?;
                trace.push(TraceEntry { round: r + 1, k: c2.k, l: c2.l, j: c2.j, k_capped: capped2, changed_at: rhs.first_mismatch(&again), confirm: true });
            }
            return Ok((rhs, trace, cut));
        }
        prev = Some(rhs);
    }
    Err(Error::NoStabilization { rounds: schedule.budget })
}

/// `o_i = m i + sum_{j<=-i} a_j (i+j) + sum_{j<=i} b_j (j-i) - sum_{j<=i} d_j (j-i)`
/// over the restricted coefficient sequences of `A`, `B`, `Z`.
pub fn valuation_bound(spec: &ExampleSpec, g: &Grading, m: i64, i: i64) -> Result<i64> {
    let a = spec.a.restrict(g).to_poly()?;
    let b = spec.b_truncated(g, i)?.restrict(g).to_poly()?;
    let d = spec.z_truncated(g, i)?.restrict(g).to_poly()?;
    let mut o = m as i128 * i as i128;
    for (j, c) in a.terms() {
        if j <= -i {
            o += c * (i + j) as i128;
        }
    }
    for (j, c) in b.terms() {
        if j <= i {
            o += c * (j - i) as i128;
        }
    }
    for (j, c) in d.terms() {
        if j <= i {
            o -= c * (j - i) as i128;
        }
    }
    i64::try_from(o).map_err(|_| Error::Overflow)
}

/// Runs both sides and compares them.
///
/// Callers are expected to have run [`check_conditions`] first.
pub fn verify_projection(spec: &ExampleSpec, schedule: &Schedule, g: &Grading) -> Result<VerificationReport> {
    let order = schedule.start.n;
    let lhs = lhs_chi_y(spec, g, order)?;
    let (rhs, trace, cut) = rhs_sum(spec, schedule, g)?;
    Ok(VerificationReport::new(spec, g, cut, lhs, rhs, trace))
}

/// Outcome of an m-scan: per-m match flags (no stabilization counts as no
/// match) and the least `m0` in the range with a match for every scanned
/// `m >= m0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdScan {
    pub results: Vec<(i64, bool)>,
    pub m0: Option<i64>,
}

/// Runs [`verify_projection`] for each `m` in `ms` (ascending).
pub fn m_threshold(spec: &ExampleSpec, g: &Grading, order: i64, budget: usize, ms: &[i64]) -> Result<ThresholdScan> {
    let mut results = Vec::with_capacity(ms.len());
    for &m in ms {
        let mut s = spec.clone();
        s.m = m;
        let sched = Schedule::for_spec(&s, g, order, order, budget)?;
        let ok = match verify_projection(&s, &sched, g) {
            Ok(r) => r.matches,
            Err(Error::NoStabilization { .. }) => false,
            Err(e) => return Err(e),
        };
        results.push((m, ok));
    }
    let m0 = results.iter().rposition(|r| !r.1).map_or(results.first().map(|r| r.0), |i| results.get(i + 1).map(|r| r.0));
    Ok(ThresholdScan { results, m0 })
}
