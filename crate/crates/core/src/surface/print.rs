use super::ast::*;

/// Deterministic printer whose output re-parses to a structurally equal
/// tree (spans aside).
pub fn pretty(file: &SigFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("profile {}\n", file.profile.token()));
    for e in &file.externs {
        match &e.kind {
            ExternKindSurf::Type => out.push_str(&format!("extern {} : Type\n", e.name)),
            ExternKindSurf::Term { params, ret } => {
                let mut kind = params.join(" -> ");
                if !kind.is_empty() {
                    kind.push_str(" -> ");
                }
                kind.push_str(ret);
                out.push_str(&format!("extern {} : {}\n", e.name, kind));
            }
        }
    }
    out.push_str(&format!("signature {} where\n", file.name));
    for e in &file.entries {
        out.push_str(&format!("  {} : {}\n", e.name, expr(&e.ty, Prec::Arrow)));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Arrow,
    App,
    Atom,
}

fn expr(e: &RawExpr, prec: Prec) -> String {
    let (s, mine) = match &e.node {
        RawNode::Var(x) => (x.clone(), Prec::Atom),
        RawNode::Iota => ("iota".into(), Prec::Atom),
        RawNode::U => ("U".into(), Prec::Atom),
        RawNode::Top => ("Top".into(), Prec::Atom),
        RawNode::Tt => ("tt".into(), Prec::Atom),
        RawNode::Refl => ("refl".into(), Prec::Atom),
        RawNode::Reflect => ("reflect".into(), Prec::Atom),
        RawNode::El(t) => (format!("El {}", expr(t, Prec::Atom)), Prec::App),
        RawNode::PiInt { binder, dom, cod } => (arrow(binder, dom, cod, "->"), Prec::Arrow),
        RawNode::PiExt { binder, dom, cod } => (arrow(binder, dom, cod, "*>"), Prec::Arrow),
        RawNode::PiSmallExt { binder, dom, cod } => (arrow(binder, dom, cod, "~>"), Prec::Arrow),
        RawNode::Id(a, b) => (
            format!("Id {} {}", expr(a, Prec::Atom), expr(b, Prec::Atom)),
            Prec::App,
        ),
        RawNode::IdCap(a, b) => (
            format!("ID {} {}", expr(a, Prec::Atom), expr(b, Prec::Atom)),
            Prec::App,
        ),
        RawNode::J {
            binder_tm,
            binder_path,
            motive,
            pr_case,
            path,
        } => (
            format!(
                "J ({} {}. {}) {} {}",
                binder_tm,
                binder_path,
                expr(motive, Prec::Arrow),
                expr(pr_case, Prec::Atom),
                expr(path, Prec::Atom)
            ),
            Prec::App,
        ),
        RawNode::Sg { binder, dom, cod } => (
            format!(
                "Sg ({} : {}) {}",
                binder,
                expr(dom, Prec::Arrow),
                expr(cod, Prec::Atom)
            ),
            Prec::App,
        ),
        RawNode::Pair(a, b) => (
            format!("({} , {})", expr(a, Prec::Arrow), expr(b, Prec::Arrow)),
            Prec::Atom,
        ),
        RawNode::Proj1(t) => (format!("proj1 {}", expr(t, Prec::Atom)), Prec::App),
        RawNode::Proj2(t) => (format!("proj2 {}", expr(t, Prec::Atom)), Prec::App),
        RawNode::App(f, a) => (
            format!("{} {}", expr(f, Prec::App), expr(a, Prec::Atom)),
            Prec::App,
        ),
    };
    if mine < prec {
        format!("({s})")
    } else {
        s
    }
}

fn arrow(binder: &str, dom: &RawExpr, cod: &RawExpr, op: &str) -> String {
    if binder == "_" {
        format!("{} {} {}", expr(dom, Prec::App), op, expr(cod, Prec::Arrow))
    } else {
        format!(
            "({} : {}) {} {}",
            binder,
            expr(dom, Prec::Arrow),
            op,
            expr(cod, Prec::Arrow)
        )
    }
}

/// Structural comparison ignoring spans, used by round-trip tests.
pub fn raw_eq(a: &RawExpr, b: &RawExpr) -> bool {
    use RawNode::*;
    match (&a.node, &b.node) {
        (Var(x), Var(y)) => x == y,
        (Iota, Iota) | (U, U) | (Top, Top) | (Tt, Tt) | (Refl, Refl) | (Reflect, Reflect) => true,
        (El(x), El(y)) => raw_eq(x, y),
        (
            PiInt { binder: b1, dom: d1, cod: c1 },
            PiInt { binder: b2, dom: d2, cod: c2 },
        )
        | (
            PiExt { binder: b1, dom: d1, cod: c1 },
            PiExt { binder: b2, dom: d2, cod: c2 },
        )
        | (
            PiSmallExt { binder: b1, dom: d1, cod: c1 },
            PiSmallExt { binder: b2, dom: d2, cod: c2 },
        )
        | (
            Sg { binder: b1, dom: d1, cod: c1 },
            Sg { binder: b2, dom: d2, cod: c2 },
        ) => b1 == b2 && raw_eq(d1, d2) && raw_eq(c1, c2),
        (Id(x1, y1), Id(x2, y2)) | (IdCap(x1, y1), IdCap(x2, y2)) => {
            raw_eq(x1, x2) && raw_eq(y1, y2)
        }
        (
            J {
                binder_tm: t1,
                binder_path: p1,
                motive: m1,
                pr_case: c1,
                path: q1,
            },
            J {
                binder_tm: t2,
                binder_path: p2,
                motive: m2,
                pr_case: c2,
                path: q2,
            },
        ) => t1 == t2 && p1 == p2 && raw_eq(m1, m2) && raw_eq(c1, c2) && raw_eq(q1, q2),
        (Pair(x1, y1), Pair(x2, y2)) => raw_eq(x1, x2) && raw_eq(y1, y2),
        (Proj1(x), Proj1(y)) | (Proj2(x), Proj2(y)) => raw_eq(x, y),
        (App(f1, a1), App(f2, a2)) => raw_eq(f1, f2) && raw_eq(a1, a2),
        _ => false,
    }
}

pub fn sig_eq(a: &SigFile, b: &SigFile) -> bool {
    a.profile == b.profile
        && a.name == b.name
        && a.externs.len() == b.externs.len()
        && a.externs
            .iter()
            .zip(&b.externs)
            .all(|(x, y)| x.name == y.name && x.kind == y.kind)
        && a.entries.len() == b.entries.len()
        && a.entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| x.name == y.name && raw_eq(&x.ty, &y.ty))
}
