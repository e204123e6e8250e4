//! The target "inner" type theory that interpretations are emitted into:
//! a small dependent theory with pi and sigma types, a unit, proof-relevant
//! path equality with the usual groupoid vocabulary, and a proof-irrelevant
//! strict equality. Comes with a validating checker, an Agda-flavored
//! printer, a stable ASCII printer, and a reader for the ASCII dialect.

mod check;
mod print;
mod read;
mod syntax;

pub use check::{check_type, check_unit, conv, infer, normalize, with_fuel, CheckCx, InnerErr};
pub use print::{print_unit, Style};
pub use read::{parse_ascii_def, parse_ascii_expr};
pub use syntax::*;
