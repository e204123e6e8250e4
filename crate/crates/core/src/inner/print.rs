//! Deterministic printing of emitted units. Two dialects:
//!
//! - `Style::Agda`: Agda-flavored, with `Σ A λ x →`, `→`, superscript
//!   component suffixes, and unicode sorts. Best-effort: not guaranteed to
//!   load in Agda unmodified.
//! - `Style::Ascii`: the stable dialect used by golden tests and readable
//!   back by the internal reader. Sigma telescopes print as
//!   `(x : A) * B`, paths as `t = u`, strict equalities as `t ≡ u`.

use super::syntax::*;
use crate::tos::ExternTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Agda,
    Ascii,
}

pub fn print_unit(unit: &EmitUnit, externs: &ExternTable, style: Style) -> String {
    let mut out = String::new();
    out.push_str(&format!("-- signature: {}\n", unit.sig_name));
    out.push_str(&format!("-- profile: {}\n", unit.profile.token()));
    out.push_str(&format!("-- source-hash: {}\n", unit.source_hash));
    let cx = PrintCx {
        externs,
        style,
        agda_names: &unit.agda_names,
    };
    for def in &unit.defs {
        out.push('\n');
        let mut names: Vec<String> = Vec::new();
        let mut line = cx.name(&def.name);
        for (pname, pty) in &def.params {
            line.push_str(&format!(
                " ({} : {})",
                cx.name(pname),
                expr(pty, &names, &cx, P_ARROW)
            ));
            names.push(pname.clone());
        }
        line.push_str(" = ");
        line.push_str(&expr(&def.body, &names, &cx, P_ARROW));
        out.push_str(&line);
        out.push('\n');
    }
    out
}

struct PrintCx<'a> {
    externs: &'a ExternTable,
    style: Style,
    agda_names: &'a [(String, String)],
}

impl PrintCx<'_> {
    fn name(&self, ascii: &str) -> String {
        if self.style == Style::Agda {
            if let Some((_, agda)) = self.agda_names.iter().find(|(a, _)| a == ascii) {
                return agda.clone();
            }
        }
        ascii.to_string()
    }
}

/// Binder names that would capture an outer name are renamed for display;
/// the pushed scope name matches what is printed, so reading back resolves
/// to the same variables.
fn scoped(names: &[String], hint: &str) -> String {
    let base = if hint.is_empty() { "x" } else { hint };
    if base != "_" && !names.iter().any(|n| n == base) {
        return base.to_string();
    }
    if base == "_" {
        return "_".to_string();
    }
    let mut k = 2usize;
    loop {
        let cand = format!("{base}{k}");
        if !names.iter().any(|n| n == &cand) {
            return cand;
        }
        k += 1;
    }
}

const P_ARROW: u8 = 0;
const P_EQ: u8 = 1;
const P_SIGMA: u8 = 2;
const P_APP: u8 = 3;
const P_ATOM: u8 = 4;

fn paren(s: String, mine: u8, want: u8) -> String {
    if mine < want {
        format!("({s})")
    } else {
        s
    }
}

fn sort_str(s: Sort, style: Style) -> &'static str {
    match (s, style) {
        (Sort::Set, _) => "Set",
        (Sort::Ty0, Style::Agda) => "Ty₀",
        (Sort::Ty0, Style::Ascii) => "Ty0",
        (Sort::U0, Style::Agda) => "U₀",
        (Sort::U0, Style::Ascii) => "U0",
        (Sort::U1, Style::Agda) => "U₁",
        (Sort::U1, Style::Ascii) => "U1",
    }
}

fn expr(t: &RcITm, names: &[String], cx: &PrintCx<'_>, want: u8) -> String {
    let agda = cx.style == Style::Agda;
    match &**t {
        ITm::Sort(s) => sort_str(*s, cx.style).to_string(),
        ITm::Ext(id) => cx.externs.name(*id).to_string(),
        ITm::Var(ix) => {
            let raw = names
                .get(names.len().wrapping_sub(1 + ix))
                .cloned()
                .unwrap_or_else(|| format!("@{ix}"));
            cx.name(&raw)
        }
        ITm::Unit => if agda { "⊤".into() } else { "Top".into() },
        ITm::UnitVal => "tt".to_string(),
        ITm::Pi(x, a, b) => {
            let arrow = if agda { "→" } else { "->" };
            let shown = scoped(names, x);
            let head = if x == "_" || !occurs0(b) {
                format!("{} {arrow} ", expr(a, names, cx, P_EQ))
            } else {
                format!("({} : {}) {arrow} ", cx.name(&shown), expr(a, names, cx, P_ARROW))
            };
            let mut names2 = names.to_vec();
            names2.push(if x == "_" || !occurs0(b) { "_".into() } else { shown });
            paren(format!("{head}{}", expr(b, &names2, cx, P_ARROW)), P_ARROW, want)
        }
        ITm::Sg(x, a, b) => {
            let shown = scoped(names, x);
            let mut names2 = names.to_vec();
            names2.push(shown.clone());
            if agda {
                // a non-sigma tail prints parenthesized when complex,
                // matching the flat telescope presentation
                let tail_prec = if matches!(&**b, ITm::Sg(_, _, _)) {
                    P_ARROW
                } else {
                    P_EQ
                };
                paren(
                    format!(
                        "Σ {} λ {} → {}",
                        expr(a, names, cx, P_ATOM),
                        cx.name(&shown),
                        expr(b, &names2, cx, tail_prec)
                    ),
                    P_ARROW,
                    want,
                )
            } else {
                paren(
                    format!(
                        "({} : {}) * {}",
                        cx.name(&shown),
                        expr(a, names, cx, P_ARROW),
                        expr(b, &names2, cx, P_SIGMA)
                    ),
                    P_SIGMA,
                    want,
                )
            }
        }
        ITm::Lam(x, a, b) => {
            let shown = scoped(names, x);
            let mut names2 = names.to_vec();
            names2.push(shown.clone());
            if agda {
                format!("(λ {} → {})", cx.name(&shown), expr(b, &names2, cx, P_ARROW))
            } else {
                format!(
                    "(\\({} : {}) -> {})",
                    cx.name(&shown),
                    expr(a, names, cx, P_ARROW),
                    expr(b, &names2, cx, P_ARROW)
                )
            }
        }
        ITm::App(f, a) => paren(
            format!("{} {}", expr(f, names, cx, P_APP), expr(a, names, cx, P_ATOM)),
            P_APP,
            want,
        ),
        ITm::Pair(_, a, b) => format!(
            "({} , {})",
            expr(a, names, cx, P_ARROW),
            expr(b, names, cx, P_ARROW)
        ),
        ITm::Proj1(x) => paren(
            format!("proj1 {}", expr(x, names, cx, P_ATOM)),
            P_APP,
            want,
        ),
        ITm::Proj2(x) => paren(
            format!("proj2 {}", expr(x, names, cx, P_ATOM)),
            P_APP,
            want,
        ),
        ITm::Path(_, x, y) => paren(
            format!(
                "{} = {}",
                expr(x, names, cx, P_APP),
                expr(y, names, cx, P_APP)
            ),
            P_EQ,
            want,
        ),
        ITm::StrictEq(_, x, y) => paren(
            format!(
                "{} ≡ {}",
                expr(x, names, cx, P_APP),
                expr(y, names, cx, P_APP)
            ),
            P_EQ,
            want,
        ),
        ITm::Refl { .. } => "refl".to_string(),
        ITm::Tr { motive, path, point } => paren(
            format!(
                "tr {} {} {}",
                expr(motive, names, cx, P_ATOM),
                expr(path, names, cx, P_ATOM),
                expr(point, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::Ap { f, path } => paren(
            format!(
                "ap {} {}",
                expr(f, names, cx, P_ATOM),
                expr(path, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::Apd { f, path } => paren(
            format!(
                "apd {} {}",
                expr(f, names, cx, P_ATOM),
                expr(path, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::J { motive, pr, path } => paren(
            format!(
                "J {} {} {}",
                expr(motive, names, cx, P_ATOM),
                expr(pr, names, cx, P_ATOM),
                expr(path, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::Funext { f, g, h } => paren(
            format!(
                "funext {} {} {}",
                expr(f, names, cx, P_ATOM),
                expr(g, names, cx, P_ATOM),
                expr(h, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::Happly { path, arg } => paren(
            format!(
                "happly {} {}",
                expr(path, names, cx, P_ATOM),
                expr(arg, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
        ITm::Inv(p) => paren(format!("inv {}", expr(p, names, cx, P_ATOM)), P_APP, want),
        ITm::Comp(p, q) => paren(
            format!(
                "comp {} {}",
                expr(p, names, cx, P_ATOM),
                expr(q, names, cx, P_ATOM)
            ),
            P_APP,
            want,
        ),
    }
}

fn occurs0(t: &RcITm) -> bool {
    fn go(t: &ITm, ix: usize) -> bool {
        match t {
            ITm::Var(i) => *i == ix,
            ITm::Sort(_) | ITm::Ext(_) | ITm::Unit | ITm::UnitVal => false,
            ITm::Pi(_, a, b) | ITm::Lam(_, a, b) | ITm::Sg(_, a, b) => {
                go(a, ix) || go(b, ix + 1)
            }
            ITm::App(f, a) | ITm::Comp(f, a) => go(f, ix) || go(a, ix),
            ITm::Pair(s, a, b) => go(s, ix) || go(a, ix) || go(b, ix),
            ITm::Proj1(x) | ITm::Proj2(x) | ITm::Inv(x) => go(x, ix),
            ITm::Path(a, x, y) | ITm::StrictEq(a, x, y) => go(a, ix) || go(x, ix) || go(y, ix),
            ITm::Refl { ty, tm, .. } => go(ty, ix) || go(tm, ix),
            ITm::Tr { motive, path, point } => go(motive, ix) || go(path, ix) || go(point, ix),
            ITm::Ap { f, path } | ITm::Apd { f, path } => go(f, ix) || go(path, ix),
            ITm::J { motive, pr, path } => go(motive, ix) || go(pr, ix) || go(path, ix),
            ITm::Funext { f, g, h } => go(f, ix) || go(g, ix) || go(h, ix),
            ITm::Happly { path, arg } => go(path, ix) || go(arg, ix),
        }
    }
    go(t, 0)
}
