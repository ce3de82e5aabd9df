//! Recursive-descent parser for the concrete term syntax.
//!
//! ```text
//! term  := atom ("." term)?
//! atom  := "id" "{" obj "}" | "lookup" "[" ix "]" | "update" "[" ix "]"
//!        | "constructor" "[" ix "]" | "recovery" "[" ix "]"
//!        | "raise" "[" ix "]" "{" obj "}"
//!        | ("prl" | "prr" | "inl" | "inr") "{" obj "," obj "}"
//!        | ("pair" | "case") "(" term "," term ")"
//!        | "handle" "(" term ("," ix "=>" term)* ")"
//!        | "(" term ")"
//! obj   := "st" | "exc" | "val" "[" ix "]" | "par" "[" ix "]"
//!        | ("prod" | "sum") "{" obj "," obj "}"
//! ```

use crate::error::{Error, Result};

use super::{Obj, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(char),
    FatArrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::FatArrow => "`=>`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(ident),
                line: l,
                column: col,
            });
            continue;
        }
        chars.next();
        column += 1;
        let tok = match c {
            '.' | '{' | '}' | '[' | ']' | '(' | ')' | ',' => Tok::Sym(c),
            '=' if chars.peek() == Some(&'>') => {
                chars.next();
                column += 1;
                Tok::FatArrow
            }
            other => {
                return Err(Error::Syntax {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: String) -> Error {
        Error::Syntax {
            line: at.line,
            column: at.column,
            message,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected `{c}`, found {}", t.tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok(s.clone()),
            other => Err(self.error_at(&t, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn bracketed_ix(&mut self) -> Result<String> {
        self.expect('[')?;
        let ix = self.ident("an index")?;
        self.expect(']')?;
        Ok(ix)
    }

    fn obj_pair(&mut self) -> Result<(Obj, Obj)> {
        self.expect('{')?;
        let a = self.obj()?;
        self.expect(',')?;
        let b = self.obj()?;
        self.expect('}')?;
        Ok((a, b))
    }

    fn term_pair(&mut self) -> Result<(Term, Term)> {
        self.expect('(')?;
        let a = self.term()?;
        self.expect(',')?;
        let b = self.term()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn obj(&mut self) -> Result<Obj> {
        let t = self.next();
        let Tok::Ident(word) = &t.tok else {
            return Err(self.error_at(
                &t,
                format!("expected an object, found {}", t.tok.describe()),
            ));
        };
        Ok(match word.as_str() {
            "st" => Obj::St,
            "exc" => Obj::Exc,
            "val" => Obj::val(self.bracketed_ix()?),
            "par" => Obj::par(self.bracketed_ix()?),
            "prod" => {
                let (a, b) = self.obj_pair()?;
                Obj::prod(a, b)
            }
            "sum" => {
                let (a, b) = self.obj_pair()?;
                Obj::sum(a, b)
            }
            other => return Err(self.error_at(&t, format!("unknown object `{other}`"))),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let first = self.atom()?;
        if self.peek().tok == Tok::Sym('.') {
            self.next();
            let rest = self.term()?;
            Ok(Term::compose(first, rest))
        } else {
            Ok(first)
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let t = self.next();
        let word = match &t.tok {
            Tok::Sym('(') => {
                let inner = self.term()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Tok::Ident(word) => word.clone(),
            other => {
                return Err(
                    self.error_at(&t, format!("expected a term, found {}", other.describe()))
                )
            }
        };
        Ok(match word.as_str() {
            "id" => {
                self.expect('{')?;
                let o = self.obj()?;
                self.expect('}')?;
                Term::Id(o)
            }
            "lookup" => Term::Lookup(self.bracketed_ix()?),
            "update" => Term::Update(self.bracketed_ix()?),
            "constructor" => Term::Constructor(self.bracketed_ix()?),
            "recovery" => Term::Recovery(self.bracketed_ix()?),
            "raise" => {
                let ix = self.bracketed_ix()?;
                self.expect('{')?;
                let y = self.obj()?;
                self.expect('}')?;
                Term::Raise(ix, y)
            }
            "prl" => {
                let (a, b) = self.obj_pair()?;
                Term::Prl(a, b)
            }
            "prr" => {
                let (a, b) = self.obj_pair()?;
                Term::Prr(a, b)
            }
            "inl" => {
                let (a, b) = self.obj_pair()?;
                Term::Inl(a, b)
            }
            "inr" => {
                let (a, b) = self.obj_pair()?;
                Term::Inr(a, b)
            }
            "pair" => {
                let (f, g) = self.term_pair()?;
                Term::pair(f, g)
            }
            "case" => {
                let (f, g) = self.term_pair()?;
                Term::case(f, g)
            }
            "handle" => {
                self.expect('(')?;
                let body = self.term()?;
                let mut handlers = Vec::new();
                while self.peek().tok == Tok::Sym(',') {
                    self.next();
                    let ix = self.ident("a handler index")?;
                    let arrow = self.next();
                    if arrow.tok != Tok::FatArrow {
                        return Err(self.error_at(
                            &arrow,
                            format!("expected `=>`, found {}", arrow.tok.describe()),
                        ));
                    }
                    handlers.push((ix, self.term()?));
                }
                self.expect(')')?;
                Term::handle(body, handlers)
            }
            other => return Err(self.error_at(&t, format!("unknown identifier `{other}`"))),
        })
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            Err(self.error_at(
                &t,
                format!("unexpected {} after the end of the term", t.tok.describe()),
            ))
        }
    }
}

pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_obj(src: &str) -> Result<Obj> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let o = p.obj()?;
    p.finish()?;
    Ok(o)
}
