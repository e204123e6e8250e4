use crate::diag::Span;
use crate::tos::Profile;

/// A parsed `.sig` file. Entry order equals source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigFile {
    pub profile: Profile,
    pub profile_span: Span,
    pub name: String,
    pub externs: Vec<ExternDeclSurf>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternDeclSurf {
    pub name: String,
    pub kind: ExternKindSurf,
    pub span: Span,
}

/// Extern declarations are either opaque types (`extern A : Type`) or
/// first-order constants over previously declared extern types
/// (`extern suc0 : Nat0 -> Nat0`, `extern zero0 : Nat0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternKindSurf {
    Type,
    Term { params: Vec<String>, ret: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub name_span: Span,
    pub ty: RawExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawExpr {
    pub node: RawNode,
    pub span: Span,
}

impl RawExpr {
    pub fn new(node: RawNode, span: Span) -> RawExpr {
        RawExpr { node, span }
    }
}

/// Surface formers. Binders named `_` are throwaway. Application is kept
/// uniform; the elaborator decides between internal and external application
/// from the head's type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawNode {
    Var(String),
    Iota,
    U,
    Top,
    Tt,
    Refl,
    El(Box<RawExpr>),
    /// `(x : a) -> B`; internal product (simple-profile `iota -> B` included).
    PiInt {
        binder: String,
        dom: Box<RawExpr>,
        cod: Box<RawExpr>,
    },
    /// `(x : A) *> B`; product over an external type, at the level of types.
    PiExt {
        binder: String,
        dom: Box<RawExpr>,
        cod: Box<RawExpr>,
    },
    /// `(x : A) ~> b`; product over an external type, inside the universe.
    PiSmallExt {
        binder: String,
        dom: Box<RawExpr>,
        cod: Box<RawExpr>,
    },
    /// `Id t u`: large under fqii in type position, small in universe
    /// position under the hiit profiles; resolved by the elaborator.
    Id(Box<RawExpr>, Box<RawExpr>),
    /// `ID t u`: large identity of the weak profile.
    IdCap(Box<RawExpr>, Box<RawExpr>),
    /// `J (x p. T) pr q`
    J {
        binder_tm: String,
        binder_path: String,
        motive: Box<RawExpr>,
        pr_case: Box<RawExpr>,
        path: Box<RawExpr>,
    },
    /// `Sg (x : a) b`
    Sg {
        binder: String,
        dom: Box<RawExpr>,
        cod: Box<RawExpr>,
    },
    /// `(t , u)`
    Pair(Box<RawExpr>, Box<RawExpr>),
    Proj1(Box<RawExpr>),
    Proj2(Box<RawExpr>),
    App(Box<RawExpr>, Box<RawExpr>),
    /// `reflect` is recognized so that its use reports a profile error
    /// rather than an unknown name.
    Reflect,
}
