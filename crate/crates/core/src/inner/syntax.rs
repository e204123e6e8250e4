use std::rc::Rc;

use crate::tos::{ExternId, Profile};

pub type RcITm = Rc<ITm>;
pub type Name = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sort {
    /// The innermost universe of the weak hiit semantics.
    U0,
    U1,
    /// The inner-type universe of the hiit semantics.
    Ty0,
    /// The set universe of the simple and fqii semantics; also the outer
    /// layer that strict equalities inhabit. Cumulativity runs
    /// `U0 <= U1 <= Ty0 <= Set`.
    Set,
}

/// Terms and types share one syntax; de Bruijn indices. Binder names are
/// printing hints only and are ignored by alpha comparison, as are the
/// annotations on lambdas, pairs and refl.
#[derive(Debug, Clone)]
pub enum ITm {
    Sort(Sort),
    /// Reference to an extern (opaque type or first-order constant).
    Ext(ExternId),
    Var(usize),
    Pi(Name, RcITm, RcITm),
    Lam(Name, RcITm, RcITm),
    App(RcITm, RcITm),
    Sg(Name, RcITm, RcITm),
    /// Pair annotated with its sigma type.
    Pair(RcITm, RcITm, RcITm),
    Proj1(RcITm),
    Proj2(RcITm),
    Unit,
    UnitVal,
    /// Proof-relevant equality `t = u` at type `A`.
    Path(RcITm, RcITm, RcITm),
    /// Proof-irrelevant outer equality `t ≡ u`. The annotation records the
    /// left endpoint's type; endpoints may live at different types (the
    /// strict equality of the source semantics is extensional, which
    /// licenses transport-free statements).
    StrictEq(RcITm, RcITm, RcITm),
    Refl {
        strict: bool,
        ty: RcITm,
        tm: RcITm,
    },
    /// Transport along a path: `tr motive p x`.
    Tr {
        motive: RcITm,
        path: RcITm,
        point: RcITm,
    },
    /// `ap f p : f x = f y` for non-dependent `f`.
    Ap {
        f: RcITm,
        path: RcITm,
    },
    /// `apd f p : tr B p (f x) = f y` for dependent `f`.
    Apd {
        f: RcITm,
        path: RcITm,
    },
    /// Based path induction; the motive is a two-argument function.
    J {
        motive: RcITm,
        pr: RcITm,
        path: RcITm,
    },
    /// Strong function extensionality, primitive.
    Funext {
        f: RcITm,
        g: RcITm,
        h: RcITm,
    },
    Happly {
        path: RcITm,
        arg: RcITm,
    },
    Inv(RcITm),
    Comp(RcITm, RcITm),
}

/// One emitted interpretation: named definitions, each a closed type-valued
/// telescope over explicit parameters, plus header data for printing.
/// `agda_names` maps generated ascii names to their Agda-style renderings
/// (superscript component suffixes, subscript copy indices).
#[derive(Debug, Clone)]
pub struct EmitUnit {
    pub profile: Profile,
    pub sig_name: String,
    pub source_hash: String,
    pub defs: Vec<EmitDef>,
    pub agda_names: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct EmitDef {
    pub name: String,
    pub params: Vec<(Name, RcITm)>,
    pub body: RcITm,
}

pub fn rc(t: ITm) -> RcITm {
    Rc::new(t)
}

pub fn var(i: usize) -> RcITm {
    rc(ITm::Var(i))
}

pub fn app(f: RcITm, a: RcITm) -> RcITm {
    rc(ITm::App(f, a))
}

pub fn apps(f: RcITm, args: impl IntoIterator<Item = RcITm>) -> RcITm {
    args.into_iter().fold(f, app)
}

/// Shift free variables >= cutoff by `by`.
pub fn shift(t: &RcITm, by: usize, cutoff: usize) -> RcITm {
    if by == 0 {
        return t.clone();
    }
    map_vars(t, cutoff, &mut |i, c| {
        if i >= c {
            var(i + by)
        } else {
            var(i)
        }
    })
}

/// Substitute `image` (over the outer context) for variable 0, shifting
/// the rest down.
pub fn subst1(t: &RcITm, image: &RcITm) -> RcITm {
    map_vars(t, 0, &mut |i, c| {
        use std::cmp::Ordering::*;
        match i.cmp(&c) {
            Less => var(i),
            Equal => shift(image, c, 0),
            Greater => var(i - 1),
        }
    })
}

fn map_vars(t: &RcITm, cutoff: usize, f: &mut impl FnMut(usize, usize) -> RcITm) -> RcITm {
    match &**t {
        ITm::Sort(_) | ITm::Ext(_) | ITm::Unit | ITm::UnitVal => t.clone(),
        ITm::Var(i) => f(*i, cutoff),
        ITm::Pi(x, a, b) => rc(ITm::Pi(
            x.clone(),
            map_vars(a, cutoff, f),
            map_vars(b, cutoff + 1, f),
        )),
        ITm::Lam(x, a, b) => rc(ITm::Lam(
            x.clone(),
            map_vars(a, cutoff, f),
            map_vars(b, cutoff + 1, f),
        )),
        ITm::App(g, a) => rc(ITm::App(map_vars(g, cutoff, f), map_vars(a, cutoff, f))),
        ITm::Sg(x, a, b) => rc(ITm::Sg(
            x.clone(),
            map_vars(a, cutoff, f),
            map_vars(b, cutoff + 1, f),
        )),
        ITm::Pair(s, a, b) => rc(ITm::Pair(
            map_vars(s, cutoff, f),
            map_vars(a, cutoff, f),
            map_vars(b, cutoff, f),
        )),
        ITm::Proj1(x) => rc(ITm::Proj1(map_vars(x, cutoff, f))),
        ITm::Proj2(x) => rc(ITm::Proj2(map_vars(x, cutoff, f))),
        ITm::Path(a, x, y) => rc(ITm::Path(
            map_vars(a, cutoff, f),
            map_vars(x, cutoff, f),
            map_vars(y, cutoff, f),
        )),
        ITm::StrictEq(a, x, y) => rc(ITm::StrictEq(
            map_vars(a, cutoff, f),
            map_vars(x, cutoff, f),
            map_vars(y, cutoff, f),
        )),
        ITm::Refl { strict, ty, tm } => rc(ITm::Refl {
            strict: *strict,
            ty: map_vars(ty, cutoff, f),
            tm: map_vars(tm, cutoff, f),
        }),
        ITm::Tr { motive, path, point } => rc(ITm::Tr {
            motive: map_vars(motive, cutoff, f),
            path: map_vars(path, cutoff, f),
            point: map_vars(point, cutoff, f),
        }),
        ITm::Ap { f: g, path } => rc(ITm::Ap {
            f: map_vars(g, cutoff, f),
            path: map_vars(path, cutoff, f),
        }),
        ITm::Apd { f: g, path } => rc(ITm::Apd {
            f: map_vars(g, cutoff, f),
            path: map_vars(path, cutoff, f),
        }),
        ITm::J { motive, pr, path } => rc(ITm::J {
            motive: map_vars(motive, cutoff, f),
            pr: map_vars(pr, cutoff, f),
            path: map_vars(path, cutoff, f),
        }),
        ITm::Funext { f: g, g: h, h: k } => rc(ITm::Funext {
            f: map_vars(g, cutoff, f),
            g: map_vars(h, cutoff, f),
            h: map_vars(k, cutoff, f),
        }),
        ITm::Happly { path, arg } => rc(ITm::Happly {
            path: map_vars(path, cutoff, f),
            arg: map_vars(arg, cutoff, f),
        }),
        ITm::Inv(p) => rc(ITm::Inv(map_vars(p, cutoff, f))),
        ITm::Comp(p, q) => rc(ITm::Comp(map_vars(p, cutoff, f), map_vars(q, cutoff, f))),
    }
}

/// Alpha equality: structural on de Bruijn shapes; binder names and the
/// annotations on lambdas, pairs and refl are not compared.
pub fn alpha_eq(a: &ITm, b: &ITm) -> bool {
    match (a, b) {
        (ITm::Sort(x), ITm::Sort(y)) => x == y,
        (ITm::Ext(x), ITm::Ext(y)) => x == y,
        (ITm::Var(x), ITm::Var(y)) => x == y,
        (ITm::Pi(_, a1, b1), ITm::Pi(_, a2, b2)) | (ITm::Sg(_, a1, b1), ITm::Sg(_, a2, b2)) => {
            alpha_eq(a1, a2) && alpha_eq(b1, b2)
        }
        (ITm::Lam(_, _, b1), ITm::Lam(_, _, b2)) => alpha_eq(b1, b2),
        (ITm::App(f1, a1), ITm::App(f2, a2)) => alpha_eq(f1, f2) && alpha_eq(a1, a2),
        (ITm::Pair(_, x1, y1), ITm::Pair(_, x2, y2)) => alpha_eq(x1, x2) && alpha_eq(y1, y2),
        (ITm::Proj1(x), ITm::Proj1(y)) | (ITm::Proj2(x), ITm::Proj2(y)) | (ITm::Inv(x), ITm::Inv(y)) => {
            alpha_eq(x, y)
        }
        (ITm::Unit, ITm::Unit) | (ITm::UnitVal, ITm::UnitVal) => true,
        // the type component is determined by the endpoints in any
        // well-typed comparison and is elided by the printers
        (ITm::Path(_, x1, y1), ITm::Path(_, x2, y2))
        | (ITm::StrictEq(_, x1, y1), ITm::StrictEq(_, x2, y2)) => {
            alpha_eq(x1, x2) && alpha_eq(y1, y2)
        }
        // annotations and the strictness marker are elided in printing;
        // proofs of either equality are irrelevant
        (ITm::Refl { .. }, ITm::Refl { .. }) => true,
        (
            ITm::Tr { motive: m1, path: p1, point: x1 },
            ITm::Tr { motive: m2, path: p2, point: x2 },
        ) => alpha_eq(m1, m2) && alpha_eq(p1, p2) && alpha_eq(x1, x2),
        (ITm::Ap { f: f1, path: p1 }, ITm::Ap { f: f2, path: p2 })
        | (ITm::Apd { f: f1, path: p1 }, ITm::Apd { f: f2, path: p2 }) => {
            alpha_eq(f1, f2) && alpha_eq(p1, p2)
        }
        (
            ITm::J { motive: m1, pr: r1, path: p1 },
            ITm::J { motive: m2, pr: r2, path: p2 },
        ) => alpha_eq(m1, m2) && alpha_eq(r1, r2) && alpha_eq(p1, p2),
        (
            ITm::Funext { f: f1, g: g1, h: h1 },
            ITm::Funext { f: f2, g: g2, h: h2 },
        ) => alpha_eq(f1, f2) && alpha_eq(g1, g2) && alpha_eq(h1, h2),
        (ITm::Happly { path: p1, arg: a1 }, ITm::Happly { path: p2, arg: a2 }) => {
            alpha_eq(p1, p2) && alpha_eq(a1, a2)
        }
        (ITm::Comp(p1, q1), ITm::Comp(p2, q2)) => alpha_eq(p1, p2) && alpha_eq(q1, q2),
        _ => false,
    }
}
