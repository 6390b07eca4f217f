use std::collections::BTreeMap;

use super::Term;
use crate::error::{Error, Result};

/// λ-terms over S and K with embedded closed codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Const(Term),
    App(Box<Expr>, Box<Expr>),
    Lam(String, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_owned())
    }

    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: &str, body: Expr) -> Expr {
        Expr::Lam(x.to_owned(), Box::new(body))
    }

    /// `λx₁. … λxₙ. body`.
    pub fn lams(xs: &[&str], body: Expr) -> Expr {
        xs.iter().rev().fold(body, |b, x| Expr::lam(x, b))
    }

    pub fn apps(f: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(f, Expr::app)
    }

    /// Replaces free variables bound in `env` by their codes.
    pub fn substitute(self, env: &BTreeMap<String, Term>) -> Expr {
        match self {
            Expr::Var(x) => match env.get(&x) {
                Some(t) => Expr::Const(t.clone()),
                None => Expr::Var(x),
            },
            Expr::Const(t) => Expr::Const(t),
            Expr::App(f, a) => Expr::app(f.substitute(env), a.substitute(env)),
            Expr::Lam(x, body) => {
                if env.contains_key(&x) {
                    let mut inner = env.clone();
                    inner.remove(&x);
                    Expr::lam(&x, body.substitute(&inner))
                } else {
                    Expr::lam(&x, body.substitute(env))
                }
            }
        }
    }
}

// Intermediate form: λ-free, closed subtrees collapsed into a code.
enum CExpr {
    Var(String),
    Code(Term),
    App(Box<CExpr>, Box<CExpr>),
}

fn capp(f: CExpr, a: CExpr) -> CExpr {
    match (f, a) {
        (CExpr::Code(f), CExpr::Code(a)) => CExpr::Code(Term::app(f, a)),
        (f, a) => CExpr::App(Box::new(f), Box::new(a)),
    }
}

fn occurs(x: &str, c: &CExpr) -> bool {
    match c {
        CExpr::Var(y) => x == y,
        CExpr::Code(_) => false,
        CExpr::App(f, a) => occurs(x, f) || occurs(x, a),
    }
}

fn identity() -> Term {
    Term::S.apply_all([Term::K, Term::K])
}

/// `[x]c` by the three standard rules.
fn abstract_var(x: &str, c: CExpr) -> CExpr {
    if !occurs(x, &c) {
        return capp(CExpr::Code(Term::K), c);
    }
    match c {
        CExpr::Var(_) => CExpr::Code(identity()),
        CExpr::App(f, a) => capp(
            capp(CExpr::Code(Term::S), abstract_var(x, *f)),
            abstract_var(x, *a),
        ),
        CExpr::Code(_) => unreachable!("codes are closed"),
    }
}

fn eliminate(e: Expr) -> CExpr {
    match e {
        Expr::Var(x) => CExpr::Var(x),
        Expr::Const(t) => CExpr::Code(t),
        Expr::App(f, a) => capp(eliminate(*f), eliminate(*a)),
        Expr::Lam(x, body) => abstract_var(&x, eliminate(*body)),
    }
}

fn first_var(c: &CExpr) -> Option<&str> {
    match c {
        CExpr::Var(x) => Some(x),
        CExpr::Code(_) => None,
        CExpr::App(f, a) => first_var(f).or_else(|| first_var(a)),
    }
}

/// Compiles a closed λ-term to SK.
pub fn compile(e: Expr) -> Result<Term> {
    let c = eliminate(e);
    match c {
        CExpr::Code(t) => Ok(t),
        other => Err(Error::UnboundVariable(first_var(&other).unwrap_or("?").to_owned())),
    }
}

/// `[var] body` compiled to a closed code.
pub fn bracket_abstract(var: &str, body: Expr) -> Result<Term> {
    compile(Expr::lam(var, body))
}

/// Parses and compiles `src`, resolving free names through `env`.
pub fn compile_with(src: &str, env: &BTreeMap<String, Term>) -> Result<Term> {
    compile(super::parse::parse_expr(src)?.substitute(env))
}
