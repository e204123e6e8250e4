//! sigforge: a compiler and library for algebraic/inductive signature files.
//!
//! A `.sig` file declares a typing context of a small dependent theory of
//! signatures under one of four profiles (`simple`, `fqii`, `hiit-strict`,
//! `hiit-weak`). The library parses and elaborates such files, derives the
//! types of algebras, morphisms, displayed algebras, sections and
//! induction/recursion principles as terms of a small target type theory,
//! and (for the simple profile) evaluates recursors and eliminators over
//! term algebras with concrete integer carriers.

pub mod amds;
pub mod diag;
pub mod elab;
pub mod inner;
pub mod pipeline;
pub mod surface;
pub mod term_algebra;
pub mod tos;

pub use diag::{Code, Diagnostic, Span};
pub use tos::Profile;
