//! The affine Grassmannian model: `X^(n) = G_{2n,Z}` with
//! `Z = q^{-n}(z + z^{-1})/(1 - q)`, variables ordered `(q, z)`.

use crate::error::{Error, Result};
use crate::series::{Character, Exponent, Grading};

fn qz(q: i64, z: i64) -> Exponent {
    Exponent(vec![q, z])
}

/// `U_k = sum_{-n<=i<=k-1} z q^i + sum_{-n<=i<=-k-1} z^{-1} q^i` for `|k| <= K`.
pub fn affine_fixed_points(n: i64, kmax: i64) -> Result<Vec<(i64, Character)>> {
    if kmax > n || kmax < 0 {
        return Err(Error::BadRange { k: kmax, max: n });
    }
    Ok((-kmax..=kmax).map(|k| (k, affine_u(n, k))).collect())
}

pub fn affine_u(n: i64, k: i64) -> Character {
    let plus = (-n..k).map(|i| qz(i, 1));
    let minus = (-n..-k).map(|i| qz(i, -1));
    Character::sum_of(2, plus.chain(minus))
}

/// `W = q^{-n}(z + z^{-1})`.
pub fn affine_w(n: i64) -> Character {
    Character::sum_of(2, [qz(-n, 1), qz(-n, -1)])
}

/// Keeps monomials of q-degree `<= d`.
pub fn q_truncate(c: &Character, d: i64) -> Character {
    c.filter_grade(&Grading(vec![1, 0]), i64::MIN, d)
}

/// `q/(1-q) (z^2 + 1 + z^{-2})` through q-degree `d`.
pub fn taff(d: i64) -> Character {
    Character::sum_of(2, (1..=d).flat_map(|i| [qz(i, 2), qz(i, 0), qz(i, -2)]))
}

/// `q/(1-q)^2 (z^2 + 2 + z^{-2})` through q-degree `d`.
pub fn tsato(d: i64) -> Character {
    let mut c = Character::zero(2);
    for i in 1..=d {
        for (e, m) in [(2, 1), (0, 2), (-2, 1)] {
            c.add_term(qz(i, e), (i * m).into());
        }
    }
    c
}

/// Y-side cotangent at `U_k`, defined as `T*_k X^(n) - E_k - q/(1-q)` and
/// kept through q-degree `n`.
pub fn affine_y_cotangent(n: i64, k: i64) -> Result<Character> {
    if k.abs() > n {
        return Err(Error::BadRange { k, max: n });
    }
    let spec = super::affine_sl2(n as usize, 0, crate::plethysm::SymFun::one());
    let u = affine_u(n, k);
    let t = super::virtual_cotangent(&u, &spec)?;
    let qgeo = Character::sum_of(2, (1..=n).map(|i| qz(i, 0)));
    Ok(q_truncate(&(&t - &qgeo), n))
}
