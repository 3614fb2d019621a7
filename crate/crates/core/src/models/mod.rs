//! The bundled examples: data `(Z, A, B, C)`, γ-family, and the Y-side
//! fixed points with their virtual cotangent characters.

pub mod affine;
pub mod curve;
pub mod hilbert;
pub mod lemma;
pub mod qseries;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use affine::{affine_fixed_points, affine_u, affine_w, affine_y_cotangent, taff, tsato};
pub use curve::{curve_fixed_points, curve_stable_truncation, curve_virtual_cotangent, SemigroupIdeal};
pub use hilbert::{
    coloring_counts, hilb_cotangent, hilb_fixed_points, hilb_stable_truncation, is_young_diagram, lattice_points,
    partitions, plane_truncation, Partition,
};
pub use lemma::{vanishing_lemma_check, LemmaFailure, LemmaReport};
pub use qseries::{inverse_pochhammer, jtp_table, pochhammer, pochhammer_q, theta, theta_sum, JtpReport, JtpRow};

use crate::error::{Error, Result};
use crate::grassmann::{subsets, tangent_character, WeightList};
use crate::plethysm::SymFun;
use crate::series::{
    Character, CharacterJson, Exponent, Grading, RationalCharacter, SeriesCharacter, SeriesJson,
};

/// Which Y-side enumerator an example uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YModel {
    HilbertPlane,
    CuspCurve,
    AffineSl2,
    /// Fixed points of `X_k` where `λ(E)` does not vanish, found by search.
    Generic,
}

/// A complete instance of the projection formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSpec {
    pub name: String,
    pub vars: Vec<String>,
    pub z: SeriesCharacter,
    pub a: Character,
    pub b: SeriesCharacter,
    pub c: Character,
    /// Localization grading; must make all fixed points isolated.
    pub grading: Grading,
    /// A grading positive on every denominator, used for truncations that do
    /// not depend on the localization grading.
    pub natural: Grading,
    pub n: usize,
    pub m: i64,
    pub f: SymFun,
    pub model: YModel,
    /// Smallest m for which the formula is expected to hold.
    pub min_m: i64,
    /// t-degrees per unit of the example's own series variable.
    pub order_scale: i64,
}

fn e2(a: i64, b: i64) -> Exponent {
    Exponent(vec![a, b])
}

/// Built-in example names.
pub const EXAMPLES: [&str; 3] = ["hilbert-plane", "cusp-curve", "affine-sl2"];

pub fn hilbert_plane(n: usize, m: i64, f: SymFun) -> ExampleSpec {
    let z = RationalCharacter::new(Character::one(2), [(e2(1, 0), 1), (e2(0, 1), 1)]).unwrap();
    let mm = Character::from_vecs(2, &[(1, &[0, 0]), (-1, &[1, 0]), (-1, &[0, 1]), (1, &[1, 1])]);
    ExampleSpec {
        name: "hilbert-plane".into(),
        vars: vec!["z1".into(), "z2".into()],
        z: SeriesCharacter::new(z.clone(), Character::zero(2)),
        a: Character::from_vecs(2, &[(-1, &[1, 1])]),
        b: SeriesCharacter::new(z, -Character::one(2)),
        c: mm - Character::one(2),
        grading: Grading(vec![1, 13]),
        natural: Grading(vec![1, 1]),
        n,
        m,
        f,
        model: YModel::HilbertPlane,
        min_m: 0,
        order_scale: 1,
    }
}

pub fn cusp_curve(n: usize, m: i64, f: SymFun) -> ExampleSpec {
    let one = Character::one(1);
    let z = RationalCharacter::new(&one - &Character::t(6, 1), [(Exponent(vec![2]), 1), (Exponent(vec![3]), 1)])
        .unwrap();
    let mm = Character::from_vecs(1, &[(1, &[0]), (-1, &[2]), (-1, &[3]), (1, &[5])]);
    ExampleSpec {
        name: "cusp-curve".into(),
        vars: vec!["z".into()],
        z: SeriesCharacter::new(z.clone(), Character::zero(1)),
        a: Character::t(5, -1),
        b: SeriesCharacter::new(z, &Character::t(6, 1) - &one),
        c: mm - one,
        grading: Grading::univariate(),
        natural: Grading::univariate(),
        n,
        m,
        f,
        model: YModel::CuspCurve,
        min_m: 1,
        order_scale: 1,
    }
}

pub fn affine_sl2(n: usize, m: i64, f: SymFun) -> ExampleSpec {
    let w = affine_w(n as i64);
    let z = RationalCharacter::new(w.clone(), [(e2(1, 0), 1)]).unwrap();
    ExampleSpec {
        name: "affine-sl2".into(),
        vars: vec!["q".into(), "z".into()],
        z: SeriesCharacter::new(z.clone(), Character::zero(2)),
        a: Character::zero(2),
        b: SeriesCharacter::new(z, -w),
        c: Character::from_vecs(2, &[(-1, &[1, 0])]),
        grading: Grading(vec![3, 1]),
        natural: Grading(vec![1, 0]),
        n,
        m,
        f,
        model: YModel::AffineSl2,
        min_m: 0,
        order_scale: 3,
    }
}

/// User spec wire format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecJson {
    #[serde(default)]
    pub name: Option<String>,
    pub vars: Vec<String>,
    #[serde(rename = "Z")]
    pub z: SeriesJson,
    #[serde(rename = "A")]
    pub a: CharacterJson,
    #[serde(rename = "B")]
    pub b: SeriesJson,
    #[serde(rename = "C")]
    pub c: CharacterJson,
    pub n: usize,
    pub m: i64,
    #[serde(default = "SymFun::one")]
    pub f: SymFun,
    pub grading: Vec<i64>,
    #[serde(default)]
    pub natural: Option<Vec<i64>>,
    #[serde(default)]
    pub min_m: Option<i64>,
}

impl ExampleSpec {
    /// A built-in example; `order` is the t-order the caller intends to use.
    pub fn builtin(name: &str, n: usize, m: i64, f: SymFun, order: i64) -> Result<ExampleSpec> {
        let mut spec = match name {
            "hilbert-plane" => hilbert_plane(n, m, f),
            "cusp-curve" => cusp_curve(n, m, f),
            "affine-sl2" => affine_sl2(n, m, f),
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown example {other:?}; expected one of {}",
                    EXAMPLES.join(", ")
                )))
            }
        };
        if spec.model == YModel::HilbertPlane {
            spec.grading = Grading(vec![1, order + 3]);
        }
        Ok(spec)
    }

    pub fn from_json(j: &SpecJson) -> Result<ExampleSpec> {
        let rank = j.vars.len();
        if rank == 0 {
            return Err(Error::InvalidSpec("at least one torus variable is required".into()));
        }
        if j.grading.len() != rank {
            return Err(Error::InvalidSpec(format!("grading has {} entries for {rank} variables", j.grading.len())));
        }
        if j.grading.iter().all(|&w| w == 0) {
            return Err(Error::InvalidSpec("grading must be nonzero".into()));
        }
        j.f.validate()?;
        let natural = j.natural.clone().unwrap_or_else(|| j.grading.clone());
        if natural.len() != rank {
            return Err(Error::InvalidSpec("natural grading has the wrong length".into()));
        }
        Ok(ExampleSpec {
            name: j.name.clone().unwrap_or_else(|| "user".into()),
            vars: j.vars.clone(),
            z: SeriesCharacter::from_json(&j.z, rank)?,
            a: Character::from_json(&j.a, rank)?,
            b: SeriesCharacter::from_json(&j.b, rank)?,
            c: Character::from_json(&j.c, rank)?,
            grading: Grading(j.grading.clone()),
            natural: Grading(natural),
            n: j.n,
            m: j.m,
            f: j.f.clone(),
            model: YModel::Generic,
            min_m: j.min_m.unwrap_or(0),
            order_scale: 1,
        })
    }

    pub fn from_json_str(s: &str) -> Result<ExampleSpec> {
        let j: SpecJson = serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        ExampleSpec::from_json(&j)
    }

    pub fn to_json(&self) -> SpecJson {
        SpecJson {
            name: Some(self.name.clone()),
            vars: self.vars.clone(),
            z: self.z.to_json(),
            a: self.a.to_json(),
            b: self.b.to_json(),
            c: self.c.to_json(),
            n: self.n,
            m: self.m,
            f: self.f.clone(),
            grading: self.grading.0.clone(),
            natural: Some(self.natural.0.clone()),
            min_m: Some(self.min_m),
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Rank of the quotient `U` on the ambient Grassmannian. The affine
    /// model lives on `G_{2n,Z}`; everything else on `G_{n,Z}`.
    pub fn grassmann_rank(&self) -> usize {
        match self.model {
            YModel::AffineSl2 => 2 * self.n,
            _ => self.n,
        }
    }

    /// `Z_{≤k}` under `g`.
    pub fn z_truncated(&self, g: &Grading, k: i64) -> Result<Character> {
        self.z.truncate(g, k)
    }

    pub fn b_truncated(&self, g: &Grading, l: i64) -> Result<Character> {
        self.b.truncate(g, l)
    }

    pub fn weight_list(&self, g: &Grading, k: i64) -> Result<WeightList> {
        WeightList::from_character(&self.z_truncated(g, k)?)
    }

    /// Largest `k <= limit` for which `Z_{≤k}` restricts injectively under `g`.
    pub fn collision_free_cap(&self, g: &Grading, limit: i64) -> Result<i64> {
        let z = self.z_truncated(g, limit)?;
        let mut seen = BTreeSet::new();
        let mut grades: Vec<i64> = Vec::new();
        for (e, c) in z.terms() {
            if *c != 1.into() {
                return Err(Error::DegenerateGrading(format!("weight {:?} has multiplicity {c}", e.0)));
            }
            grades.push(g.grade(e));
        }
        grades.sort_unstable();
        for d in grades {
            if !seen.insert(d) {
                return Ok(d - 1);
            }
        }
        Ok(limit)
    }

    /// `Z - B` when it is a finite character.
    pub fn z_minus_b(&self) -> Option<Character> {
        self.z.finite_difference(&self.b)
    }
}

/// `E_U = A U + B_{≤l} U* + C U U*`, with `B` truncated under `g`.
pub fn e_at_graded(u: &Character, spec: &ExampleSpec, g: &Grading, l: i64) -> Result<Character> {
    let ud = u.dual();
    let b = spec.b_truncated(g, l)?;
    Ok(&(&(&spec.a * u) + &(&b * &ud)) + &(&(&spec.c * u) * &ud))
}

/// Constant term of `E_U`, given `B` already truncated past every weight of
/// `U`: `sum_u a_{-u} + sum_u b_u + sum_{u,v} c_{v-u}`.
pub fn e_constant_term(u: &Character, spec: &ExampleSpec, b: &Character) -> BigInt {
    let mut ct = BigInt::from(0);
    for (x, mx) in u.terms() {
        ct += mx * (spec.a.coeff(&x.neg()) + b.coeff(x));
        for (y, my) in u.terms() {
            ct += mx * my * spec.c.coeff(&y.sub(x));
        }
    }
    ct
}

/// [`e_at_graded`] with the example's natural grading.
pub fn e_at(u: &Character, spec: &ExampleSpec, l: i64) -> Result<Character> {
    e_at_graded(u, spec, &spec.natural, l)
}

/// `T*X - E` at the quotient `U`, in the limit of large truncations:
/// `U*(Z - B) - A U - (1 + C) U U*`.
pub fn virtual_cotangent(u: &Character, spec: &ExampleSpec) -> Result<Character> {
    let Some(zb) = spec.z_minus_b() else {
        return virtual_cotangent_truncated(u, spec);
    };
    let one_c = &Character::one(u.rank()) + &spec.c;
    Ok(&(&(&u.dual() * &zb) - &(&spec.a * u)) - &(&(&one_c * u) * &u.dual()))
}

fn truncated_cotangent_at(u: &Character, spec: &ExampleSpec, k: i64) -> Result<Character> {
    let z = spec.z_truncated(&spec.natural, k)?;
    let v = &z - u;
    if !v.all_nonnegative() {
        return Err(Error::Unstable { k, detail: "truncation does not contain U".into() });
    }
    let p = crate::grassmann::FixedPoint { subset: vec![], u: u.clone(), v };
    Ok(&tangent_character(&p).dual() - &e_at(u, spec, k)?)
}

/// `T*X_{≤k} - E_{≤k}` with `k` raised until two successive values agree.
pub fn virtual_cotangent_truncated(u: &Character, spec: &ExampleSpec) -> Result<Character> {
    let top = u.grade_range(&spec.natural).map_or(0, |r| r.1).max(0);
    let mut prev: Option<Character> = None;
    for k in top..top + 64 {
        let Ok(c) = truncated_cotangent_at(u, spec, k) else { continue };
        if prev.as_ref() == Some(&c) {
            return Ok(c);
        }
        prev = Some(c);
    }
    Err(Error::Unstable { k: top + 64, detail: "virtual cotangent did not stabilize".into() })
}

/// A Y-side fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoint {
    pub label: String,
    pub u: Character,
    pub cotangent: Character,
}

/// Y-side fixed points with their (virtual) cotangent characters.
pub fn y_fixed_points(spec: &ExampleSpec) -> Result<Vec<YPoint>> {
    let n = spec.n;
    match spec.model {
        YModel::HilbertPlane => hilb_fixed_points(n)
            .into_iter()
            .map(|(mu, u)| {
                let cotangent = hilb_cotangent(&mu, hilb_stable_truncation(n))?;
                Ok(YPoint { label: mu.to_string(), u, cotangent })
            })
            .collect(),
        YModel::CuspCurve => curve_fixed_points(n)
            .into_iter()
            .map(|(s, u)| {
                let cotangent = curve_virtual_cotangent(&s, curve_stable_truncation(n))?;
                Ok(YPoint { label: s.to_string(), u, cotangent })
            })
            .collect(),
        YModel::AffineSl2 => affine_fixed_points(n as i64, n as i64)?
            .into_iter()
            .map(|(k, u)| {
                let cotangent = virtual_cotangent(&u, spec)?;
                Ok(YPoint { label: format!("U_{k}"), u, cotangent })
            })
            .collect(),
        YModel::Generic => generic_y_points(spec, 48),
    }
}

fn surviving_points(spec: &ExampleSpec, z: &Character, b: &Character) -> Result<BTreeSet<Vec<Exponent>>> {
    let z = WeightList::from_character(z)?;
    let mut out = BTreeSet::new();
    if spec.n > z.len() {
        return Ok(out);
    }
    for s in subsets(z.len(), spec.n) {
        let u = Character::sum_of(z.rank(), s.iter().map(|&i| z.weights()[i].clone()));
        let c = e_constant_term(&u, spec, b);
        if c < 0.into() {
            return Err(Error::InvalidSpec(format!("E has negative constant term {c} at U = {u}; λ(E) has a pole")));
        }
        if c == 0.into() {
            out.insert(u.terms().map(|(e, _)| e.clone()).collect());
        }
    }
    Ok(out)
}

/// Searches `X_k` fixed points where `λ(E)` survives, raising `k` until the
/// set stops changing (the finiteness surrogate for condition (e)).
pub fn generic_y_points(spec: &ExampleSpec, kmax: i64) -> Result<Vec<YPoint>> {
    let g = &spec.natural;
    let (zmax, bmax) = (spec.z_truncated(g, kmax)?, spec.b_truncated(g, kmax)?);
    let mut prev: Option<BTreeSet<Vec<Exponent>>> = None;
    for k in 0..=kmax {
        let cur = surviving_points(spec, &zmax.filter_grade(g, i64::MIN, k), &bmax.filter_grade(g, i64::MIN, k))?;
        if !cur.is_empty() && prev.as_ref() == Some(&cur) {
            return cur
                .into_iter()
                .map(|ws| {
                    let u = Character::sum_of(spec.rank(), ws);
                    let cotangent = virtual_cotangent(&u, spec)?;
                    Ok(YPoint { label: format!("{u}"), u, cotangent })
                })
                .collect();
        }
        prev = Some(cur);
    }
    Err(Error::Unstable { k: kmax, detail: "set of contributing fixed points did not stabilize".into() })
}
