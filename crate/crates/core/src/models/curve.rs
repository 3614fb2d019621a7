//! Hilbert scheme of points on the cusp `y^2 = x^3`: monomial ideals of
//! `C[u^2, u^3]` indexed by semigroup ideals.

use super::ExampleSpec;
use crate::error::{Error, Result};
use crate::grassmann::{tangent_character, FixedPoint};
use crate::series::{Character, Exponent, Grading};

/// A co-finite `S ⊂ {0, 2, 3, ...}` with `S + 2 ⊆ S` and `S + 3 ⊆ S`,
/// stored by its complement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupIdeal {
    pub complement: Vec<i64>,
}

impl SemigroupIdeal {
    pub fn colength(&self) -> usize {
        self.complement.len()
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= 0 && i != 1 && !self.complement.contains(&i)
    }

    /// `U_S = sum_{i in Γ \ S} z^i`.
    pub fn quotient_character(&self) -> Character {
        Character::sum_of(1, self.complement.iter().map(|&i| Exponent(vec![i])))
    }

    fn is_ideal(&self) -> bool {
        let top = self.complement.iter().copied().max().unwrap_or(0);
        (0..=top).filter(|&s| self.contains(s)).all(|s| self.contains(s + 2) && self.contains(s + 3))
    }
}

impl std::fmt::Display for SemigroupIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self.complement.iter().map(|i| i.to_string()).collect();
        write!(f, "Γ∖{{{}}}", c.join(","))
    }
}

/// All ideals of colength `n`, searched among complements inside
/// `{0, ..., 2n+2}`.
pub fn curve_fixed_points(n: usize) -> Vec<(SemigroupIdeal, Character)> {
    let pool: Vec<i64> = (0..=2 * n as i64 + 2).filter(|&i| i != 1).collect();
    crate::grassmann::subsets(pool.len(), n)
        .into_iter()
        .map(|s| SemigroupIdeal { complement: s.iter().map(|&i| pool[i]).collect() })
        .filter(SemigroupIdeal::is_ideal)
        .map(|s| {
            let u = s.quotient_character();
            (s, u)
        })
        .collect()
}

fn virtual_cotangent_at(u: &Character, spec: &ExampleSpec, k: i64) -> Result<Character> {
    let g = Grading::univariate();
    let z = spec.z.truncate(&g, k)?;
    let v = &z - u;
    if !v.all_nonnegative() {
        return Err(Error::Unstable { k, detail: "truncation does not contain U".into() });
    }
    let p = FixedPoint { subset: vec![], u: u.clone(), v };
    let e = super::e_at_graded(u, spec, &g, k)?;
    Ok(&tangent_character(&p).dual() - &e)
}

/// `T*_S X_{≤k} - E_S`, checked against truncation `k + 1`.
pub fn curve_virtual_cotangent(s: &SemigroupIdeal, k: i64) -> Result<Character> {
    let spec = super::cusp_curve(s.colength(), 1, crate::plethysm::SymFun::one());
    let u = s.quotient_character();
    let a = virtual_cotangent_at(&u, &spec, k)?;
    let b = virtual_cotangent_at(&u, &spec, k + 1)?;
    if a != b {
        return Err(Error::Unstable { k, detail: format!("virtual cotangent at {s} changes between k and k+1") });
    }
    Ok(a)
}

/// Truncation at which [`curve_virtual_cotangent`] is exact.
pub fn curve_stable_truncation(n: usize) -> i64 {
    (2 * n as i64 + 2).max(6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_colengths() {
        let one: Vec<_> = curve_fixed_points(1).into_iter().map(|(s, _)| s.complement).collect();
        assert_eq!(one, vec![vec![0]]);
        let two: Vec<_> = curve_fixed_points(2).into_iter().map(|(s, _)| s.complement).collect();
        assert_eq!(two, vec![vec![0, 2], vec![0, 3]]);
    }
}
