use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::diag::{Code, Diagnostic, Span};
use crate::tos::Profile;

/// Parses a `.sig` file. Total and deterministic: the same bytes always
/// produce the same tree or the same diagnostic.
pub fn parse_file(source: &str) -> Result<SigFile, Diagnostic> {
    let toks = lex(source)?;
    let toks = strip_nested_newlines(toks);
    Parser { toks, pos: 0 }.file(source.len())
}

/// Parses a standalone expression (the `--term` argument of evaluation).
pub fn parse_term_expr(source: &str) -> Result<RawExpr, Diagnostic> {
    let toks = lex(source)?;
    let toks: Vec<_> = toks
        .into_iter()
        .filter(|t| !matches!(t.tok, Tok::Newline))
        .collect();
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr(source.len())?;
    if let Some(t) = p.peek() {
        return Err(Diagnostic::new(
            Code::EParse,
            format!("trailing {:?} after the expression", t.tok),
        )
        .with_span(t.span));
    }
    Ok(e)
}

/// Newlines inside unbalanced parentheses are insignificant; drop them so
/// that entries may span lines. Consecutive separators collapse.
fn strip_nested_newlines(toks: Vec<Token>) -> Vec<Token> {
    let mut depth = 0usize;
    let mut out: Vec<Token> = Vec::with_capacity(toks.len());
    for t in toks {
        match t.tok {
            Tok::LParen => {
                depth += 1;
                out.push(t);
            }
            Tok::RParen => {
                depth = depth.saturating_sub(1);
                out.push(t);
            }
            Tok::Newline => {
                if depth == 0 && !matches!(out.last(), None | Some(Token { tok: Tok::Newline, .. }))
                {
                    out.push(t);
                }
            }
            _ => out.push(t),
        }
    }
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const EXPR_KEYWORDS: &[&str] = &[
    "El", "Id", "ID", "J", "Sg", "proj1", "proj2", "iota", "ι", "U", "Top", "tt", "refl",
    "reflect",
];

const RESERVED: &[&str] = &["profile", "signature", "where", "extern", "Type"];

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&Token> {
        self.toks.get(self.pos + off)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self, eof: usize) -> Span {
        match self.peek() {
            Some(t) => t.span,
            None => Span::new(eof.saturating_sub(1), eof.max(1)),
        }
    }

    fn err(&self, msg: impl Into<String>, eof: usize) -> Diagnostic {
        Diagnostic::new(Code::EParse, msg).with_span(self.here(eof))
    }

    fn expect_ident(&mut self, what: &str, eof: usize) -> Result<(String, Span), Diagnostic> {
        match self.next() {
            Some(Token {
                tok: Tok::Ident(s),
                span,
            }) => Ok((s, span)),
            Some(t) => Err(Diagnostic::new(
                Code::EParse,
                format!("expected {what}, found {:?}", t.tok),
            )
            .with_span(t.span)),
            None => Err(Diagnostic::new(Code::EParse, format!("expected {what}, found end of file"))
                .with_span(Span::new(eof.saturating_sub(1), eof.max(1)))),
        }
    }

    fn expect_tok(&mut self, tok: Tok, what: &str, eof: usize) -> Result<Span, Diagnostic> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(t.span),
            Some(t) => Err(Diagnostic::new(
                Code::EParse,
                format!("expected {what}, found {:?}", t.tok),
            )
            .with_span(t.span)),
            None => Err(Diagnostic::new(Code::EParse, format!("expected {what}, found end of file"))
                .with_span(Span::new(eof.saturating_sub(1), eof.max(1)))),
        }
    }

    fn eat_newlines(&mut self) {
        while matches!(self.peek(), Some(Token { tok: Tok::Newline, .. })) {
            self.pos += 1;
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if let Some(Token { tok: Tok::Ident(s), .. }) = self.peek() {
            if s == kw {
                self.pos += 1;
                return true;
            }
        }
        false
    }

    fn file(mut self, eof: usize) -> Result<SigFile, Diagnostic> {
        self.eat_newlines();
        if !self.keyword("profile") {
            return Err(Diagnostic::new(
                Code::EProfileMissing,
                "file must start with a `profile` header (simple | fqii | hiit-strict | hiit-weak)",
            )
            .with_span(self.here(eof)));
        }
        let (pname, pspan) = self.expect_ident("profile name", eof)?;
        let profile = match pname.as_str() {
            "simple" => Profile::Simple,
            "fqii" => Profile::Fqii,
            "hiit-strict" => Profile::HiitStrict,
            "hiit-weak" => Profile::HiitWeak,
            other => {
                return Err(Diagnostic::new(
                    Code::EProfileMissing,
                    format!("unknown profile `{other}` (expected simple | fqii | hiit-strict | hiit-weak)"),
                )
                .with_span(pspan))
            }
        };
        self.eat_newlines();

        let mut externs: Vec<ExternDeclSurf> = Vec::new();
        while self.keyword("extern") {
            let (name, nspan) = self.expect_ident("extern name", eof)?;
            self.expect_tok(Tok::Colon, "':'", eof)?;
            let kind = self.extern_kind(eof)?;
            if externs.iter().any(|e| e.name == name) {
                return Err(Diagnostic::new(
                    Code::EDupName,
                    format!("duplicate extern name `{name}`"),
                )
                .with_span(nspan));
            }
            externs.push(ExternDeclSurf {
                name,
                kind,
                span: nspan,
            });
            self.eat_newlines();
        }

        if !self.keyword("signature") {
            return Err(self.err("expected `signature <name> where`", eof));
        }
        let (name, _) = self.expect_ident("signature name", eof)?;
        if !self.keyword("where") {
            return Err(self.err("expected `where`", eof));
        }
        self.eat_newlines();

        let mut entries: Vec<Entry> = Vec::new();
        while self.peek().is_some() {
            let (ename, espan) = self.expect_ident("entry name", eof)?;
            if RESERVED.contains(&ename.as_str()) || EXPR_KEYWORDS.contains(&ename.as_str()) {
                return Err(Diagnostic::new(
                    Code::EParse,
                    format!("`{ename}` is a reserved word and cannot name an entry"),
                )
                .with_span(espan));
            }
            if entries.iter().any(|e| e.name == ename)
                || externs.iter().any(|e| e.name == ename)
            {
                return Err(Diagnostic::new(
                    Code::EDupName,
                    format!("duplicate entry name `{ename}`"),
                )
                .with_span(espan));
            }
            self.expect_tok(Tok::Colon, "':'", eof)?;
            let ty = self.expr(eof)?;
            match self.peek() {
                None => {}
                Some(Token { tok: Tok::Newline, .. }) => {
                    self.pos += 1;
                }
                Some(t) => {
                    return Err(Diagnostic::new(
                        Code::EParse,
                        format!("unexpected {:?} after entry type", t.tok),
                    )
                    .with_span(t.span))
                }
            }
            entries.push(Entry {
                name: ename,
                name_span: espan,
                ty,
            });
            self.eat_newlines();
        }

        Ok(SigFile {
            profile,
            profile_span: pspan,
            name,
            externs,
            entries,
        })
    }

    fn extern_kind(&mut self, eof: usize) -> Result<ExternKindSurf, Diagnostic> {
        let mut names = vec![self.expect_ident("extern kind", eof)?.0];
        while matches!(self.peek(), Some(Token { tok: Tok::Arrow, .. })) {
            self.pos += 1;
            names.push(self.expect_ident("extern kind", eof)?.0);
        }
        if names.len() == 1 && names[0] == "Type" {
            return Ok(ExternKindSurf::Type);
        }
        let ret = names.pop().unwrap();
        if names.iter().chain(std::iter::once(&ret)).any(|n| n == "Type") {
            return Err(self.err("`Type` cannot appear inside an extern constant kind", eof));
        }
        Ok(ExternKindSurf::Term { params: names, ret })
    }

    /// `(x1 .. xn : A) -> B` style binder groups, or an application chain
    /// followed by an optional non-dependent arrow.
    fn expr(&mut self, eof: usize) -> Result<RawExpr, Diagnostic> {
        if self.binder_ahead() {
            let open = self.expect_tok(Tok::LParen, "'('", eof)?;
            let mut binders = Vec::new();
            while let Some(Token { tok: Tok::Ident(_), .. }) = self.peek() {
                binders.push(self.expect_ident("binder", eof)?.0);
            }
            self.expect_tok(Tok::Colon, "':'", eof)?;
            let dom = self.expr(eof)?;
            self.expect_tok(Tok::RParen, "')'", eof)?;
            let op = match self.next() {
                Some(Token { tok: Tok::Arrow, .. }) => ArrowOp::Int,
                Some(Token { tok: Tok::ArrowExt, .. }) => ArrowOp::Ext,
                Some(Token { tok: Tok::ArrowSmall, .. }) => ArrowOp::Small,
                Some(t) => {
                    return Err(Diagnostic::new(
                        Code::EParse,
                        "a binder group must be followed by '->', '*>' or '~>'",
                    )
                    .with_span(t.span))
                }
                None => return Err(self.err("expected arrow after binder group", eof)),
            };
            let cod = self.expr(eof)?;
            let span = open.join(cod.span);
            let mut out = cod;
            for b in binders.into_iter().rev() {
                out = mk_arrow(op, b, dom.clone(), out, span);
            }
            Ok(out)
        } else {
            let head = self.app(eof)?;
            let op = match self.peek() {
                Some(Token { tok: Tok::Arrow, .. }) => Some(ArrowOp::Int),
                Some(Token { tok: Tok::ArrowExt, .. }) => Some(ArrowOp::Ext),
                Some(Token { tok: Tok::ArrowSmall, .. }) => Some(ArrowOp::Small),
                _ => None,
            };
            match op {
                None => Ok(head),
                Some(op) => {
                    self.pos += 1;
                    let cod = self.expr(eof)?;
                    let span = head.span.join(cod.span);
                    Ok(mk_arrow(op, "_".to_string(), head, cod, span))
                }
            }
        }
    }

    fn binder_ahead(&self) -> bool {
        if !matches!(self.peek(), Some(Token { tok: Tok::LParen, .. })) {
            return false;
        }
        let mut i = 1;
        let mut saw_ident = false;
        while let Some(t) = self.peek_at(i) {
            match &t.tok {
                Tok::Ident(_) => {
                    saw_ident = true;
                    i += 1;
                }
                Tok::Colon => return saw_ident,
                _ => return false,
            }
        }
        false
    }

    fn app(&mut self, eof: usize) -> Result<RawExpr, Diagnostic> {
        let head = match self.peek() {
            Some(Token { tok: Tok::Ident(s), span }) => {
                let (s, span) = (s.clone(), *span);
                match s.as_str() {
                    "El" => {
                        self.pos += 1;
                        let arg = self.atom(eof)?;
                        let sp = span.join(arg.span);
                        RawExpr::new(RawNode::El(Box::new(arg)), sp)
                    }
                    "Id" => {
                        self.pos += 1;
                        let a = self.atom(eof)?;
                        let b = self.atom(eof)?;
                        let sp = span.join(b.span);
                        RawExpr::new(RawNode::Id(Box::new(a), Box::new(b)), sp)
                    }
                    "ID" => {
                        self.pos += 1;
                        let a = self.atom(eof)?;
                        let b = self.atom(eof)?;
                        let sp = span.join(b.span);
                        RawExpr::new(RawNode::IdCap(Box::new(a), Box::new(b)), sp)
                    }
                    "proj1" | "proj2" => {
                        self.pos += 1;
                        let a = self.atom(eof)?;
                        let sp = span.join(a.span);
                        if s == "proj1" {
                            RawExpr::new(RawNode::Proj1(Box::new(a)), sp)
                        } else {
                            RawExpr::new(RawNode::Proj2(Box::new(a)), sp)
                        }
                    }
                    "Sg" => {
                        self.pos += 1;
                        self.expect_tok(Tok::LParen, "'('", eof)?;
                        let (binder, _) = self.expect_ident("binder", eof)?;
                        self.expect_tok(Tok::Colon, "':'", eof)?;
                        let dom = self.expr(eof)?;
                        self.expect_tok(Tok::RParen, "')'", eof)?;
                        let cod = self.atom(eof)?;
                        let sp = span.join(cod.span);
                        RawExpr::new(
                            RawNode::Sg {
                                binder,
                                dom: Box::new(dom),
                                cod: Box::new(cod),
                            },
                            sp,
                        )
                    }
                    "J" => {
                        self.pos += 1;
                        self.expect_tok(Tok::LParen, "'('", eof)?;
                        let (binder_tm, _) = self.expect_ident("motive binder", eof)?;
                        let (binder_path, _) = self.expect_ident("motive path binder", eof)?;
                        self.expect_tok(Tok::Dot, "'.'", eof)?;
                        let motive = self.expr(eof)?;
                        self.expect_tok(Tok::RParen, "')'", eof)?;
                        let pr_case = self.atom(eof)?;
                        let path = self.atom(eof)?;
                        let sp = span.join(path.span);
                        RawExpr::new(
                            RawNode::J {
                                binder_tm,
                                binder_path,
                                motive: Box::new(motive),
                                pr_case: Box::new(pr_case),
                                path: Box::new(path),
                            },
                            sp,
                        )
                    }
                    _ => self.atom(eof)?,
                }
            }
            _ => self.atom(eof)?,
        };

        let mut out = head;
        loop {
            let arg_ahead = match self.peek() {
                Some(Token { tok: Tok::Ident(s), .. }) => {
                    !matches!(s.as_str(), "El" | "Id" | "ID" | "J" | "Sg" | "proj1" | "proj2")
                }
                Some(Token { tok: Tok::LParen, .. }) => true,
                _ => false,
            };
            if !arg_ahead {
                break;
            }
            let arg = self.atom(eof)?;
            let sp = out.span.join(arg.span);
            out = RawExpr::new(RawNode::App(Box::new(out), Box::new(arg)), sp);
        }
        Ok(out)
    }

    fn atom(&mut self, eof: usize) -> Result<RawExpr, Diagnostic> {
        match self.next() {
            Some(Token { tok: Tok::Ident(s), span }) => {
                let node = match s.as_str() {
                    "iota" | "ι" => RawNode::Iota,
                    "U" => RawNode::U,
                    "Top" => RawNode::Top,
                    "tt" => RawNode::Tt,
                    "refl" => RawNode::Refl,
                    "reflect" => RawNode::Reflect,
                    "El" | "Id" | "ID" | "J" | "Sg" | "proj1" | "proj2" => {
                        return Err(Diagnostic::new(
                            Code::EParse,
                            format!("`{s}` takes arguments; parenthesize the whole form here"),
                        )
                        .with_span(span))
                    }
                    _ if RESERVED.contains(&s.as_str()) => {
                        return Err(Diagnostic::new(
                            Code::EParse,
                            format!("`{s}` is a reserved word"),
                        )
                        .with_span(span))
                    }
                    _ => RawNode::Var(s),
                };
                Ok(RawExpr::new(node, span))
            }
            Some(Token { tok: Tok::LParen, span }) => {
                let first = self.expr(eof)?;
                match self.next() {
                    Some(Token { tok: Tok::RParen, span: rp }) => {
                        let mut e = first;
                        e.span = span.join(rp);
                        Ok(e)
                    }
                    Some(Token { tok: Tok::Comma, .. }) => {
                        let second = self.expr(eof)?;
                        let rp = self.expect_tok(Tok::RParen, "')'", eof)?;
                        Ok(RawExpr::new(
                            RawNode::Pair(Box::new(first), Box::new(second)),
                            span.join(rp),
                        ))
                    }
                    Some(t) => Err(Diagnostic::new(
                        Code::EParse,
                        format!("expected ')' or ',', found {:?}", t.tok),
                    )
                    .with_span(t.span)),
                    None => Err(self.err("unclosed '('", eof)),
                }
            }
            Some(t) => Err(Diagnostic::new(
                Code::EParse,
                format!("expected an expression, found {:?}", t.tok),
            )
            .with_span(t.span)),
            None => Err(self.err("expected an expression, found end of input", eof)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArrowOp {
    Int,
    Ext,
    Small,
}

fn mk_arrow(op: ArrowOp, binder: String, dom: RawExpr, cod: RawExpr, span: Span) -> RawExpr {
    let node = match op {
        ArrowOp::Int => RawNode::PiInt {
            binder,
            dom: Box::new(dom),
            cod: Box::new(cod),
        },
        ArrowOp::Ext => RawNode::PiExt {
            binder,
            dom: Box::new(dom),
            cod: Box::new(cod),
        },
        ArrowOp::Small => RawNode::PiSmallExt {
            binder,
            dom: Box::new(dom),
            cod: Box::new(cod),
        },
    };
    RawExpr::new(node, span)
}
