//! Hilbert scheme of points in the plane: partitions, `U_μ`, the cotangent
//! character from the Ext pairing, and the box-colouring count.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::series::{Character, Exponent, Grading};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Boxes `(i, j)` = (row, column).
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// `U_μ = sum_{(i,j) in μ} z1^j z2^i`.
    pub fn quotient_character(&self) -> Character {
        Character::sum_of(2, self.boxes().into_iter().map(|(i, j)| Exponent(vec![j as i64, i as i64])))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn hilb_fixed_points(n: usize) -> Vec<(Partition, Character)> {
    partitions(n).into_iter().map(|p| {
        let u = p.quotient_character();
        (p, u)
    }).collect()
}

/// Monomials `z1^a z2^b` with `a + b <= k`.
pub fn plane_truncation(k: i64) -> Character {
    Character::sum_of(2, (0..=k).flat_map(|a| (0..=k - a).map(move |b| Exponent(vec![a, b]))))
}

fn m_plane() -> Character {
    Character::from_vecs(2, &[(1, &[0, 0]), (-1, &[1, 0]), (-1, &[0, 1]), (1, &[1, 1])])
}

fn cotangent_at(u: &Character, n: usize, k: i64) -> Character {
    let z = plane_truncation(k);
    let v = &z - u;
    // T = (z1 z2)^{-1} M (Z*Z - V*V), i.e. χ(R,R) - χ(I,I)
    let inner = &(&z.dual() * &z) - &(&v.dual() * &v);
    let t = (&m_plane() * &inner).shift(&Exponent(vec![-1, -1]));
    let w = k - n as i64 - 1;
    t.dual().filter_grade(&Grading(vec![1, 1]), -w, w)
}

/// Cotangent character of the Hilbert scheme at `I_μ`, computed from the
/// truncated Ext pairing. Terms of total degree beyond `k - n - 1` are
/// truncation artifacts and are cut; the result must then agree with
/// truncations `k + 1` and `k + 2`.
pub fn hilb_cotangent(mu: &Partition, k: i64) -> Result<Character> {
    let u = mu.quotient_character();
    let n = mu.size();
    if k - n as i64 - 1 < 1 {
        return Err(Error::Unstable { k, detail: "truncation window is empty".into() });
    }
    let a = cotangent_at(&u, n, k);
    for k2 in [k + 1, k + 2] {
        if cotangent_at(&u, n, k2) != a {
            return Err(Error::Unstable { k, detail: format!("cotangent at {mu} changes at truncation {k2}") });
        }
    }
    Ok(a)
}

/// Smallest truncation at which [`hilb_cotangent`] is exact.
pub fn hilb_stable_truncation(n: usize) -> i64 {
    2 * n as i64 + 2
}

/// `(x0, x1)` for the colouring where the box with lower-left corner `(i, j)`
/// is white iff `z1^i z2^j` is a weight of `V = Z - U`.
///
/// `x0` counts vertices whose north-east box is black and south-west box is
/// white; `x1` counts edges whose north/east box is black and south/west box
/// is white. Only boxes of `U` can be black next to a white box.
pub fn coloring_counts(u: &[(i64, i64)]) -> (usize, usize) {
    let set: BTreeSet<(i64, i64)> = u.iter().copied().collect();
    let white = |p: (i64, i64)| p.0 >= 0 && p.1 >= 0 && !set.contains(&p);
    let mut x0 = 0;
    let mut x1 = 0;
    for &(a, b) in &set {
        if a < 0 || b < 0 {
            continue;
        }
        if white((a - 1, b - 1)) {
            x0 += 1;
        }
        if white((a - 1, b)) {
            x1 += 1;
        }
        if white((a, b - 1)) {
            x1 += 1;
        }
    }
    (x0, x1)
}

/// Whether a finite set of lattice points is the box set of a partition
/// (down-closed in the quadrant).
pub fn is_young_diagram(u: &[(i64, i64)]) -> bool {
    let set: BTreeSet<(i64, i64)> = u.iter().copied().collect();
    set.iter().all(|&(a, b)| {
        a >= 0 && b >= 0 && (a == 0 || set.contains(&(a - 1, b))) && (b == 0 || set.contains(&(a, b - 1)))
    })
}

/// Lattice points of a character `sum z1^i z2^j` with unit coefficients.
pub fn lattice_points(u: &Character) -> Vec<(i64, i64)> {
    u.terms().map(|(e, _)| (e.0[0], e.0[1])).collect()
}
