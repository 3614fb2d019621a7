//! Exhaustive check of the plane vanishing lemma on a lattice window.

use num_bigint::BigInt;
use serde::Serialize;

use super::hilbert::{coloring_counts, is_young_diagram, partitions, Partition};
use super::{e_at, hilbert_plane, virtual_cotangent};
use crate::error::Result;
use crate::grassmann::subsets;
use crate::plethysm::SymFun;
use crate::series::{Character, Exponent};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub points: Vec<(i64, i64)>,
    pub constant_term: String,
    pub coloring: i64,
    pub young: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub k: i64,
    pub subsets: usize,
    pub vanishing: usize,
    pub partitions: usize,
    /// Subsets where the constant term is negative, disagrees with the
    /// coloring count, or vanishes off the Young diagrams (or vice versa).
    pub failures: Vec<LemmaFailure>,
    /// Diagrams whose cotangent fails `T*(μ') = swap T*(μ)`.
    pub symmetry_failures: Vec<String>,
    pub passed: bool,
}

fn swap(c: &Character) -> Character {
    c.permute(&[1, 0])
}

fn diagram_character(mu: &Partition, transposed: bool) -> Character {
    let u = mu.quotient_character();
    if transposed {
        swap(&u)
    } else {
        u
    }
}

/// Classifies every `n`-subset of lattice points of total degree `<= k`.
///
/// With `inject_transpose`, the conjugate diagram is built with the row and
/// column roles exchanged; the symmetry check must then fail for `n >= 2`.
pub fn vanishing_lemma_check(n: usize, k: i64, inject_transpose: bool) -> Result<LemmaReport> {
    let spec = hilbert_plane(n, 0, SymFun::one());
    let pts: Vec<(i64, i64)> = (0..=k).flat_map(|a| (0..=k - a).map(move |b| (a, b))).collect();
    let l = k + 2;
    let mut failures = Vec::new();
    let mut count = 0;
    let mut vanishing = 0;
    for s in subsets(pts.len(), n) {
        let u: Vec<(i64, i64)> = s.iter().map(|&i| pts[i]).collect();
        let ch = Character::sum_of(2, u.iter().map(|&(a, b)| Exponent(vec![a, b])));
        let ct = e_at(&ch, &spec, l)?.constant_term();
        let (x0, x1) = coloring_counts(&u);
        let coloring = x1 as i64 - x0 as i64;
        let young = is_young_diagram(&u);
        let zero = ct == BigInt::from(0);
        if ct < BigInt::from(0) || BigInt::from(coloring) != ct || zero != young {
            failures.push(LemmaFailure { points: u, constant_term: ct.to_string(), coloring, young });
        }
        vanishing += zero as usize;
        count += 1;
    }
    let mut symmetry_failures = Vec::new();
    for mu in partitions(n) {
        let a = virtual_cotangent(&diagram_character(&mu, false), &spec)?;
        let b = virtual_cotangent(&diagram_character(&mu.transpose(), inject_transpose), &spec)?;
        if b != swap(&a) {
            symmetry_failures.push(mu.to_string());
        }
    }
    let passed = failures.is_empty() && symmetry_failures.is_empty();
    Ok(LemmaReport {
        n,
        k,
        subsets: count,
        vanishing,
        partitions: partitions(n).len(),
        failures,
        symmetry_failures,
        passed,
    })
}
