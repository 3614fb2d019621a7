//! Serde wire formats. Big integers travel as decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Character, Exponent, RationalCharacter, SeriesCharacter, Truncation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Str(String),
    Int(i64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    coeff: Coeff,
    pub exps: Vec<i64>,
}

impl TermJson {
    pub fn coeff(&self) -> Result<BigInt> {
        match &self.coeff {
            Coeff::Int(i) => Ok(BigInt::from(*i)),
            Coeff::Str(s) => BigInt::from_str(s.trim())
                .map_err(|_| Error::InvalidSpec(format!("bad integer coefficient {s:?}"))),
        }
    }
}

pub type CharacterJson = Vec<TermJson>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DenJson {
    pub exps: Vec<i64>,
    pub mult: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: CharacterJson,
    #[serde(default)]
    pub den: Vec<DenJson>,
}

/// Either a plain character or a rational part plus finite correction.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesJson {
    Finite(CharacterJson),
    Rational {
        num: CharacterJson,
        #[serde(default)]
        den: Vec<DenJson>,
        #[serde(default)]
        correction: CharacterJson,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TruncationJson {
    pub lower: i64,
    pub order: i64,
    pub coeffs: Vec<String>,
}

impl Character {
    pub fn to_json(&self) -> CharacterJson {
        self.terms()
            .map(|(e, c)| TermJson { coeff: Coeff::Str(c.to_string()), exps: e.0.clone() })
            .collect()
    }

    /// Reads a character; `rank` is needed when the list may be empty.
    pub fn from_json(terms: &[TermJson], rank: usize) -> Result<Character> {
        let mut ch = Character::zero(rank);
        for t in terms {
            if t.exps.len() != rank {
                return Err(Error::InvalidSpec(format!(
                    "exponent {:?} has length {}, expected {rank}",
                    t.exps,
                    t.exps.len()
                )));
            }
            ch.add_term(Exponent(t.exps.clone()), t.coeff()?);
        }
        Ok(ch)
    }
}

impl RationalCharacter {
    pub fn to_json(&self) -> RationalJson {
        RationalJson {
            num: self.numerator().to_json(),
            den: self.denominator().map(|(e, m)| DenJson { exps: e.0.clone(), mult: m }).collect(),
        }
    }

    pub fn from_json(j: &RationalJson, rank: usize) -> Result<RationalCharacter> {
        let num = Character::from_json(&j.num, rank)?;
        let den = j
            .den
            .iter()
            .map(|d| {
                if d.exps.len() != rank {
                    Err(Error::InvalidSpec(format!("denominator exponent {:?} has wrong length", d.exps)))
                } else {
                    Ok((Exponent(d.exps.clone()), d.mult))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        RationalCharacter::new(num, den)
    }
}

impl SeriesCharacter {
    pub fn to_json(&self) -> SeriesJson {
        let r = self.rational.to_json();
        SeriesJson::Rational { num: r.num, den: r.den, correction: self.correction.to_json() }
    }

    pub fn from_json(j: &SeriesJson, rank: usize) -> Result<SeriesCharacter> {
        match j {
            SeriesJson::Finite(c) => Ok(SeriesCharacter::finite(Character::from_json(c, rank)?)),
            SeriesJson::Rational { num, den, correction } => Ok(SeriesCharacter::new(
                RationalCharacter::from_json(&RationalJson { num: num.clone(), den: den.clone() }, rank)?,
                Character::from_json(correction, rank)?,
            )),
        }
    }
}

impl Truncation {
    pub fn to_json(&self) -> TruncationJson {
        TruncationJson {
            lower: self.lower(),
            order: self.order(),
            coeffs: self.dense_from(self.lower()).iter().map(|c| c.to_string()).collect(),
        }
    }
}
