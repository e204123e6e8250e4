//! Surface syntax of `.sig` files: lexing, parsing and printing.
//!
//! The surface language is name-based and untyped; profile legality and
//! scoping are the elaborator's business. Grammar sketch:
//!
//! ```text
//! file    ::= "profile" PROFILE extern* "signature" IDENT "where" entry*
//! extern  ::= "extern" IDENT ":" extkind
//! extkind ::= "Type" | IDENT ("->" IDENT)*
//! entry   ::= IDENT ":" expr
//! expr    ::= "(" IDENT+ ":" expr ")" ("->" | "*>" | "~>") expr
//!           | app (("->" | "*>" | "~>") expr)?
//! app     ::= atom atom*
//!           | "El" atom | "Id" atom atom | "ID" atom atom
//!           | "Sg" "(" IDENT ":" expr ")" app
//!           | "proj1" atom | "proj2" atom
//!           | "J" "(" IDENT IDENT "." expr ")" atom atom
//! atom    ::= IDENT | "iota" | "U" | "Top" | "tt" | "refl"
//!           | "(" expr ")" | "(" expr "," expr ")"
//! ```
//!
//! Comments run from `--` to end of line. Entries are newline-separated;
//! an entry may span lines while inside unbalanced parentheses.

mod ast;
mod lexer;
mod parser;
mod print;

pub use ast::{Entry, ExternDeclSurf, ExternKindSurf, RawExpr, RawNode, SigFile};
pub use parser::{parse_file, parse_term_expr};
pub use print::{pretty, raw_eq, sig_eq};
