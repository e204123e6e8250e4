//! Printing of core types and terms, for diagnostics and tests. Context
//! entry names are reused; inner binders get fresh numbered names.

use super::syntax::*;

pub fn print_ty(ctx: &Ctx, ty: &Ty) -> String {
    let mut names: Vec<String> = ctx.entries().iter().map(|e| e.name.clone()).collect();
    ty_str(ctx, &mut names, ty, Prec::Arrow)
}

pub fn print_tm(ctx: &Ctx, t: &Tm) -> String {
    let mut names: Vec<String> = ctx.entries().iter().map(|e| e.name.clone()).collect();
    tm_str(ctx, &mut names, t, Prec::Arrow)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Arrow,
    App,
    Atom,
}

fn fresh(names: &[String], hint: &str) -> String {
    let base = if hint == "_" || hint.is_empty() { "x" } else { hint };
    let mut cand = base.to_string();
    let mut k = 0usize;
    while names.iter().any(|n| n == &cand) {
        k += 1;
        cand = format!("{base}{k}");
    }
    cand
}

fn wrap(s: String, mine: Prec, want: Prec) -> String {
    if mine < want {
        format!("({s})")
    } else {
        s
    }
}

fn ty_str(ctx: &Ctx, names: &mut Vec<String>, ty: &Ty, want: Prec) -> String {
    match ty {
        Ty::SIota => "iota".to_string(),
        Ty::SArrow(c) => wrap(
            format!("iota -> {}", ty_str(ctx, names, c, Prec::Arrow)),
            Prec::Arrow,
            want,
        ),
        Ty::U => "U".to_string(),
        Ty::El(a) => wrap(
            format!("El {}", tm_str(ctx, names, a, Prec::Atom)),
            Prec::App,
            want,
        ),
        Ty::Pi(a, b) => {
            let dom = tm_str(ctx, names, a, Prec::Arrow);
            let name = fresh(names, "x");
            names.push(name.clone());
            let cod = ty_str(ctx, names, b, Prec::Arrow);
            names.pop();
            wrap(format!("({name} : {dom}) -> {cod}"), Prec::Arrow, want)
        }
        Ty::PiExt(e, b) => {
            let dom = ctx.externs.name(*e).to_string();
            let name = fresh(names, "x");
            names.push(name.clone());
            let cod = ty_str(ctx, names, b, Prec::Arrow);
            names.pop();
            wrap(format!("({name} : {dom}) *> {cod}"), Prec::Arrow, want)
        }
        Ty::IdLarge(_, t, u) => wrap(
            format!(
                "Id {} {}",
                tm_str(ctx, names, t, Prec::Atom),
                tm_str(ctx, names, u, Prec::Atom)
            ),
            Prec::App,
            want,
        ),
        Ty::IdWeak(_, t, u) => wrap(
            format!(
                "ID {} {}",
                tm_str(ctx, names, t, Prec::Atom),
                tm_str(ctx, names, u, Prec::Atom)
            ),
            Prec::App,
            want,
        ),
    }
}

fn ext_str(ctx: &Ctx, names: &[String], e: &ExtArg, want: Prec) -> String {
    match e {
        ExtArg::Var(ix) => names
            .get(names.len().wrapping_sub(1 + ix))
            .cloned()
            .unwrap_or_else(|| format!("@{ix}")),
        ExtArg::Cst(id, args) if args.is_empty() => ctx.externs.name(*id).to_string(),
        ExtArg::Cst(id, args) => {
            let mut s = ctx.externs.name(*id).to_string();
            for a in args {
                s.push(' ');
                s.push_str(&ext_str(ctx, names, a, Prec::Atom));
            }
            wrap(s, Prec::App, want)
        }
    }
}

fn tm_str(ctx: &Ctx, names: &mut Vec<String>, t: &Tm, want: Prec) -> String {
    match &t.node {
        TmNode::Var(ix) => names
            .get(names.len().wrapping_sub(1 + ix))
            .cloned()
            .unwrap_or_else(|| format!("@{ix}")),
        TmNode::App(f, a) => wrap(
            format!(
                "{} {}",
                tm_str(ctx, names, f, Prec::App),
                tm_str(ctx, names, a, Prec::Atom)
            ),
            Prec::App,
            want,
        ),
        TmNode::Lam(b) | TmNode::LamExtLarge(b) | TmNode::LamExtSmall(b) => {
            let name = fresh(names, "x");
            names.push(name.clone());
            let body = tm_str(ctx, names, b, Prec::Arrow);
            names.pop();
            wrap(format!("\\{name}. {body}"), Prec::Arrow, want)
        }
        TmNode::AppExtLarge(f, e) | TmNode::AppExtSmall(f, e) => wrap(
            format!(
                "{} {}",
                tm_str(ctx, names, f, Prec::App),
                ext_str(ctx, names, e, Prec::Atom)
            ),
            Prec::App,
            want,
        ),
        TmNode::Top => "Top".to_string(),
        TmNode::Tt => "tt".to_string(),
        TmNode::Sg(a, b) => {
            let dom = tm_str(ctx, names, a, Prec::Arrow);
            let name = fresh(names, "x");
            names.push(name.clone());
            let cod = tm_str(ctx, names, b, Prec::Atom);
            names.pop();
            wrap(format!("Sg ({name} : {dom}) {cod}"), Prec::App, want)
        }
        TmNode::Pair(a, b) => format!(
            "({} , {})",
            tm_str(ctx, names, a, Prec::Arrow),
            tm_str(ctx, names, b, Prec::Arrow)
        ),
        TmNode::Proj1(x) => wrap(
            format!("proj1 {}", tm_str(ctx, names, x, Prec::Atom)),
            Prec::App,
            want,
        ),
        TmNode::Proj2(x) => wrap(
            format!("proj2 {}", tm_str(ctx, names, x, Prec::Atom)),
            Prec::App,
            want,
        ),
        TmNode::IdSmall(_, x, y) => wrap(
            format!(
                "Id {} {}",
                tm_str(ctx, names, x, Prec::Atom),
                tm_str(ctx, names, y, Prec::Atom)
            ),
            Prec::App,
            want,
        ),
        TmNode::PiSmallExt(e, f) => {
            let dom = ctx.externs.name(*e).to_string();
            let name = fresh(names, "x");
            names.push(name.clone());
            let cod = tm_str(ctx, names, f, Prec::Arrow);
            names.pop();
            wrap(format!("({name} : {dom}) ~> {cod}"), Prec::Arrow, want)
        }
        TmNode::Refl => "refl".to_string(),
        TmNode::JSmall(m, pr, p) | TmNode::JWeak(m, pr, p) => {
            let n1 = fresh(names, "y");
            names.push(n1.clone());
            let n2 = fresh(names, "q");
            names.push(n2.clone());
            let motive = ty_str(ctx, names, m, Prec::Arrow);
            names.pop();
            names.pop();
            wrap(
                format!(
                    "J ({n1} {n2}. {motive}) {} {}",
                    tm_str(ctx, names, pr, Prec::Atom),
                    tm_str(ctx, names, p, Prec::Atom)
                ),
                Prec::App,
                want,
            )
        }
    }
}
