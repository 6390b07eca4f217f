use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A closed SK combinator term. Subterms are shared, so cloning is cheap.
///
/// The derived order puts `S < K < App` and compares applications by
/// function first, then argument.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    S,
    K,
    App(Arc<App>),
}

#[derive(Eq, PartialOrd, Ord)]
pub struct App {
    fun: Term,
    arg: Term,
    size: usize,
}

impl PartialEq for App {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.fun == other.fun && self.arg == other.arg
    }
}

impl std::hash::Hash for App {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.fun.hash(state);
        self.arg.hash(state);
    }
}

impl Drop for App {
    // Long spines would otherwise overflow the stack on drop.
    fn drop(&mut self) {
        let mut stack: Vec<Arc<App>> = Vec::new();
        for t in [std::mem::replace(&mut self.fun, Term::S), std::mem::replace(&mut self.arg, Term::S)] {
            if let Term::App(a) = t {
                stack.push(a);
            }
        }
        while let Some(a) = stack.pop() {
            if let Ok(mut inner) = Arc::try_unwrap(a) {
                for t in [std::mem::replace(&mut inner.fun, Term::S), std::mem::replace(&mut inner.arg, Term::S)] {
                    if let Term::App(a) = t {
                        stack.push(a);
                    }
                }
            }
        }
    }
}

impl Term {
    pub fn app(fun: Term, arg: Term) -> Term {
        let size = fun.size().saturating_add(arg.size());
        Term::App(Arc::new(App { fun, arg, size }))
    }

    /// Applies `self` to each argument in turn.
    pub fn apply_all<I: IntoIterator<Item = Term>>(self, args: I) -> Term {
        args.into_iter().fold(self, Term::app)
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            Term::S | Term::K => 1,
            Term::App(a) => a.size,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::App(a) => Some((&a.fun, &a.arg)),
            _ => None,
        }
    }

    /// Splits into the head combinator and its arguments, leftmost first.
    pub fn spine(&self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(a) = cur {
            args.push(a.arg.clone());
            cur = &a.fun;
        }
        args.reverse();
        (cur.clone(), args)
    }

    /// True when no weak redex occurs anywhere in the term.
    pub fn is_normal(&self) -> bool {
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            let mut n = 0;
            let mut cur = t;
            while let Term::App(a) = cur {
                todo.push(&a.arg);
                n += 1;
                cur = &a.fun;
            }
            let arity = if matches!(cur, Term::K) { 2 } else { 3 };
            if n >= arity {
                return false;
            }
        }
        true
    }

    /// Parses the textual syntax, compiling any λ-abstractions.
    pub fn parse(src: &str) -> crate::Result<Term> {
        super::parse::parse_term(src)
    }
}

/// Size first, then the structural order.
pub fn size_lex_cmp(a: &Term, b: &Term) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.cmp(b))
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::S => f.write_str("S"),
        Term::K => f.write_str("K"),
        Term::App(a) => {
            write_term(&a.fun, f)?;
            f.write_str(" ")?;
            if a.arg.as_app().is_some() {
                f.write_str("(")?;
                write_term(&a.arg, f)?;
                f.write_str(")")
            } else {
                write_term(&a.arg, f)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Term::parse(&s).map_err(serde::de::Error::custom)
    }
}
