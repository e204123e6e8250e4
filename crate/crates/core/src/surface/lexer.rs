use crate::diag::{Code, Diagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Newline,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Arrow,      // ->
    ArrowExt,   // *>
    ArrowSmall, // ~>
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Identifier characters: alphanumerics, `_`, `'`, and a few mathematical
/// glyphs so that names like `S1'` or unicode `ι` work.
fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut toks = Vec::new();
    let mut chars = source.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::Newline,
                    span: Span::new(start, start + 1),
                });
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '-')) => {
                        // comment to end of line
                        for (_, c2) in chars.by_ref() {
                            if c2 == '\n' {
                                toks.push(Token {
                                    tok: Tok::Newline,
                                    span: Span::new(start, start + 1),
                                });
                                break;
                            }
                        }
                    }
                    Some(&(i, '>')) => {
                        chars.next();
                        toks.push(Token {
                            tok: Tok::Arrow,
                            span: Span::new(start, i + 1),
                        });
                    }
                    // hyphenated identifiers like `hiit-strict`: only when the
                    // '-' directly continues an identifier
                    Some(&(_, c2))
                        if is_ident_char(c2)
                            && matches!(toks.last(),
                                Some(Token { tok: Tok::Ident(_), span }) if span.end == start) =>
                    {
                        let mut end = start + 1;
                        let mut tail = String::from("-");
                        while let Some(&(i, c3)) = chars.peek() {
                            if is_ident_char(c3) {
                                tail.push(c3);
                                end = i + c3.len_utf8();
                                chars.next();
                            } else {
                                break;
                            }
                        }
                        if let Some(Token {
                            tok: Tok::Ident(name),
                            span,
                        }) = toks.last_mut()
                        {
                            name.push_str(&tail);
                            span.end = end;
                        }
                    }
                    _ => {
                        return Err(Diagnostic::new(Code::ELex, "stray '-'; expected '->' or '--'")
                            .with_span(Span::new(start, start + 1)))
                    }
                }
            }
            '*' => {
                chars.next();
                match chars.peek() {
                    Some(&(i, '>')) => {
                        chars.next();
                        toks.push(Token {
                            tok: Tok::ArrowExt,
                            span: Span::new(start, i + 1),
                        });
                    }
                    _ => {
                        return Err(Diagnostic::new(Code::ELex, "stray '*'; expected '*>'")
                            .with_span(Span::new(start, start + 1)))
                    }
                }
            }
            '~' => {
                chars.next();
                match chars.peek() {
                    Some(&(i, '>')) => {
                        chars.next();
                        toks.push(Token {
                            tok: Tok::ArrowSmall,
                            span: Span::new(start, i + 1),
                        });
                    }
                    _ => {
                        return Err(Diagnostic::new(Code::ELex, "stray '~'; expected '~>'")
                            .with_span(Span::new(start, start + 1)))
                    }
                }
            }
            '(' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::LParen,
                    span: Span::new(start, start + 1),
                });
            }
            ')' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::RParen,
                    span: Span::new(start, start + 1),
                });
            }
            ':' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::Colon,
                    span: Span::new(start, start + 1),
                });
            }
            ',' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::Comma,
                    span: Span::new(start, start + 1),
                });
            }
            '.' => {
                chars.next();
                toks.push(Token {
                    tok: Tok::Dot,
                    span: Span::new(start, start + 1),
                });
            }
            c if is_ident_char(c) => {
                let mut end = start;
                let mut name = String::new();
                while let Some(&(i, c2)) = chars.peek() {
                    if is_ident_char(c2) {
                        name.push(c2);
                        end = i + c2.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Token {
                    tok: Tok::Ident(name),
                    span: Span::new(start, end),
                });
            }
            other => {
                return Err(Diagnostic::new(
                    Code::ELex,
                    format!("unexpected character '{other}'"),
                )
                .with_span(Span::new(start, start + other.len_utf8())))
            }
        }
    }
    Ok(toks)
}
