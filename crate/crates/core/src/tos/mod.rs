//! Well-typed de Bruijn core syntax of the theory of signatures, with the
//! explicit substitution calculus, normalization by evaluation and
//! conversion checking.

pub mod nbe;
pub mod pretty;
pub mod subst;
pub mod syntax;
pub mod verify;

pub use subst::{Sub, SubItem};
pub use syntax::*;

use serde::Serialize;

/// The profile of a signature file fixes the set of legal type and term
/// formers and the flavor of equality emitted by the interpretations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Profile {
    #[serde(rename = "simple")]
    Simple,
    #[serde(rename = "fqii")]
    Fqii,
    #[serde(rename = "hiit-strict")]
    HiitStrict,
    #[serde(rename = "hiit-weak")]
    HiitWeak,
}

impl Profile {
    pub fn token(self) -> &'static str {
        match self {
            Profile::Simple => "simple",
            Profile::Fqii => "fqii",
            Profile::HiitStrict => "hiit-strict",
            Profile::HiitWeak => "hiit-weak",
        }
    }

    pub fn is_hiit(self) -> bool {
        matches!(self, Profile::HiitStrict | Profile::HiitWeak)
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}
