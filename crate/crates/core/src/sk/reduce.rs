use serde::{Deserialize, Serialize};

use super::Term;
use crate::error::{Error, Result};

/// Terms growing past this many leaves during reduction are treated as
/// divergent: the outcome is reported as exhausted whatever the budget.
pub const MAX_TERM_SIZE: usize = 1 << 16;

pub const DEFAULT_BUDGET: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct EvalBudget {
    max_steps: u64,
}

impl EvalBudget {
    pub fn new(max_steps: u64) -> Result<Self> {
        if max_steps == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(EvalBudget { max_steps })
    }

    pub fn max_steps(self) -> u64 {
        self.max_steps
    }

    /// Budget for running two tracked computations one after the other.
    pub fn sum(self, other: EvalBudget) -> EvalBudget {
        EvalBudget {
            max_steps: self.max_steps.saturating_add(other.max_steps),
        }
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_steps: DEFAULT_BUDGET,
        }
    }
}

impl TryFrom<u64> for EvalBudget {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        EvalBudget::new(n)
    }
}

impl From<EvalBudget> for u64 {
    fn from(b: EvalBudget) -> u64 {
        b.max_steps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EvalOutcome {
    Normal { term: Term, steps: u64 },
    BudgetExhausted { steps: u64 },
}

impl EvalOutcome {
    pub fn normal(self) -> Option<Term> {
        match self {
            EvalOutcome::Normal { term, .. } => Some(term),
            EvalOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            EvalOutcome::Normal { steps, .. } | EvalOutcome::BudgetExhausted { steps } => *steps,
        }
    }
}

struct Frame {
    head: Term,
    done: Vec<Term>,
    /// Remaining arguments, next one on top.
    pending: Vec<Term>,
}

/// Weak leftmost-outermost reduction to full normal form, one step per
/// `K` or `S` contraction.
pub fn reduce(t: &Term, b: EvalBudget) -> EvalOutcome {
    let mut steps = 0u64;
    let mut stack: Vec<Frame> = Vec::new();
    let mut current = t.clone();
    loop {
        let (mut head, mut args) = current.spine();
        args.reverse();
        loop {
            let arity = match head {
                Term::K => 2,
                Term::S => 3,
                Term::App(_) => unreachable!("spine head is a combinator"),
            };
            if args.len() < arity {
                break;
            }
            if steps >= b.max_steps {
                return EvalOutcome::BudgetExhausted { steps };
            }
            steps += 1;
            let x = args.pop().expect("arity");
            let y = args.pop().expect("arity");
            let contracted = if arity == 2 {
                x
            } else {
                let z = args.pop().expect("arity");
                Term::app(Term::app(x, z.clone()), Term::app(y, z))
            };
            let (h, more) = contracted.spine();
            head = h;
            args.extend(more.into_iter().rev());
            let size = args.iter().map(Term::size).fold(1, usize::saturating_add);
            if size > MAX_TERM_SIZE {
                return EvalOutcome::BudgetExhausted { steps };
            }
        }
        let mut value = match args.pop() {
            None => Some(head),
            Some(first) => {
                stack.push(Frame {
                    head,
                    done: Vec::new(),
                    pending: args,
                });
                current = first;
                None
            }
        };
        while let Some(v) = value.take() {
            let Some(frame) = stack.last_mut() else {
                return EvalOutcome::Normal { term: v, steps };
            };
            frame.done.push(v);
            if let Some(next) = frame.pending.pop() {
                current = next;
            } else {
                let frame = stack.pop().expect("frame");
                value = Some(frame.head.apply_all(frame.done));
            }
        }
    }
}

pub fn apply(a: &Term, x: &Term, b: EvalBudget) -> EvalOutcome {
    reduce(&Term::app(a.clone(), x.clone()), b)
}
