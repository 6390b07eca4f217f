use super::bracket::{compile, Expr};
use super::Term;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    S,
    K,
    Var(String),
    Lambda,
    Dot,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            'S' => out.push(Tok::S),
            'K' => out.push(Tok::K),
            '\\' | 'λ' => out.push(Tok::Lambda),
            '.' => out.push(Tok::Dot),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            c if c.is_ascii_lowercase() || c == '_' => {
                let mut name = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Var(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc: Option<Expr> = None;
        loop {
            let item = match self.peek() {
                Some(Tok::Lambda) => {
                    let lam = self.lambda()?;
                    return Ok(match acc {
                        Some(f) => Expr::app(f, lam),
                        None => lam,
                    });
                }
                Some(Tok::S | Tok::K | Tok::Var(_) | Tok::Open) => self.atom()?,
                _ => break,
            };
            acc = Some(match acc {
                Some(f) => Expr::app(f, item),
                None => item,
            });
        }
        acc.ok_or_else(|| Error::Parse(format!("expected a term at token {}", self.pos)))
    }

    fn lambda(&mut self) -> Result<Expr> {
        self.bump();
        let mut vars = Vec::new();
        while let Some(Tok::Var(_)) = self.peek() {
            if let Some(Tok::Var(x)) = self.bump() {
                vars.push(x);
            }
        }
        if vars.is_empty() {
            return Err(Error::Parse("λ without a variable".into()));
        }
        if self.bump() != Some(Tok::Dot) {
            return Err(Error::Parse("expected '.' after λ binders".into()));
        }
        let body = self.expr()?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        Ok(Expr::lams(&names, body))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::S) => Ok(Expr::Const(Term::S)),
            Some(Tok::K) => Ok(Expr::Const(Term::K)),
            Some(Tok::Var(x)) => Ok(Expr::Var(x)),
            Some(Tok::Open) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

pub fn parse_term(src: &str) -> Result<Term> {
    compile(parse_expr(src)?)
}
