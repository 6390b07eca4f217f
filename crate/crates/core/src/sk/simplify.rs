//! Symbolic simplification of codes: `c` is replaced by `[x] N` where `N`
//! is the normal form of `c x` computed with `x` an inert variable.
//! Reducing under arguments is still weak reduction, so by confluence the
//! new code has the same normal form as `c` on every argument where `c`
//! has one. Composite codes built from structural pieces otherwise copy
//! unevaluated arguments and get exponentially slow under normal order.

use std::rc::Rc;

use super::Term;

#[derive(Clone)]
enum Open {
    S,
    K,
    X,
    App(Rc<Open>, Rc<Open>, usize),
}

impl Open {
    fn size(&self) -> usize {
        match self {
            Open::App(_, _, n) => *n,
            _ => 1,
        }
    }

    fn app(f: Open, a: Open) -> Open {
        let n = f.size().saturating_add(a.size());
        Open::App(Rc::new(f), Rc::new(a), n)
    }

    fn from_term(t: &Term) -> Open {
        match t.as_app() {
            None if *t == Term::S => Open::S,
            None => Open::K,
            Some((f, a)) => Open::app(Open::from_term(f), Open::from_term(a)),
        }
    }

    fn spine(&self) -> (Open, Vec<Open>) {
        let mut args = Vec::new();
        let mut cur = self.clone();
        while let Open::App(f, a, _) = cur {
            args.push((*a).clone());
            cur = (*f).clone();
        }
        args.reverse();
        (cur, args)
    }

    fn has_x(&self) -> bool {
        match self {
            Open::X => true,
            Open::App(f, a, _) => f.has_x() || a.has_x(),
            _ => false,
        }
    }

    fn closed(&self) -> Term {
        match self {
            Open::S => Term::S,
            Open::K => Term::K,
            Open::X => unreachable!("closed subterm"),
            Open::App(f, a, _) => Term::app(f.closed(), a.closed()),
        }
    }
}

/// `[x] t` with the standard rules plus `[x](t x) = t` for `x ∉ t`.
fn abstract_x(t: &Open) -> Term {
    if !t.has_x() {
        return Term::app(Term::K, t.closed());
    }
    match t {
        Open::X => Term::S.apply_all([Term::K, Term::K]),
        Open::App(f, a, _) => {
            if matches!(**a, Open::X) && !f.has_x() {
                return f.closed();
            }
            Term::S.apply_all([abstract_x(f), abstract_x(a)])
        }
        _ => unreachable!("leaf without x"),
    }
}

struct Limits {
    steps: u64,
    max_size: usize,
}

fn normalize(t: Open, lim: &mut Limits, depth: usize) -> Option<Open> {
    if depth > 2000 {
        return None;
    }
    let (mut head, args) = t.spine();
    let mut args: Vec<Open> = args.into_iter().rev().collect();
    loop {
        let arity = match head {
            Open::K => 2,
            Open::S => 3,
            _ => break,
        };
        if args.len() < arity {
            break;
        }
        lim.steps = lim.steps.checked_sub(1)?;
        let x = args.pop()?;
        let y = args.pop()?;
        let contracted = if arity == 2 {
            x
        } else {
            let z = args.pop()?;
            Open::app(Open::app(x, z.clone()), Open::app(y, z))
        };
        let (h, more) = contracted.spine();
        head = h;
        args.extend(more.into_iter().rev());
        if args.iter().map(Open::size).fold(1, usize::saturating_add) > lim.max_size {
            return None;
        }
    }
    let mut out = head;
    while let Some(a) = args.pop() {
        out = Open::app(out, normalize(a, lim, depth + 1)?);
    }
    Some(out)
}

/// The simplified form of `code`, or `None` when symbolic normalization
/// does not finish within `steps` contractions and `max_size` leaves.
pub fn simplify_code(code: &Term, steps: u64, max_size: usize) -> Option<Term> {
    let mut lim = Limits { steps, max_size };
    let body = normalize(Open::app(Open::from_term(code), Open::X), &mut lim, 0)?;
    Some(abstract_x(&body))
}

/// Contraction limit used by [`simplified`].
pub const SIMPLIFY_STEPS: u64 = 200_000;

/// [`simplify_code`] at the default limits, keeping `code` when
/// simplification gives up.
pub fn simplified(code: &Term) -> Term {
    simplify_code(code, SIMPLIFY_STEPS, super::MAX_TERM_SIZE).unwrap_or_else(|| code.clone())
}
