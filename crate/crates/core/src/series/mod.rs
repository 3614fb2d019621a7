//! Characters, rational characters, gradings and truncated series.

mod character;
mod json;
pub mod poly;
mod rational;
mod truncation;

pub use character::{Character, Exponent, Grading};
pub use json::{CharacterJson, RationalJson, SeriesJson, TermJson, TruncationJson};
pub use poly::{InvLambda, Poly};
pub use rational::{RationalCharacter, SeriesCharacter};
pub use truncation::Truncation;
