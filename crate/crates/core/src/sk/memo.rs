use std::collections::HashMap;

use super::{apply, EvalBudget, Term};

/// Memoized application at a fixed budget, for searches that apply many
/// candidate codes to the same arguments.
#[derive(Debug)]
pub struct MemoApply {
    budget: EvalBudget,
    cache: HashMap<(Term, Term), Option<Term>>,
}

impl MemoApply {
    pub fn new(budget: EvalBudget) -> Self {
        MemoApply {
            budget,
            cache: HashMap::new(),
        }
    }

    pub fn budget(&self) -> EvalBudget {
        self.budget
    }

    /// `a · x` in normal form, or `None` when the budget runs out.
    pub fn apply(&mut self, a: &Term, x: &Term) -> Option<Term> {
        if let Some(r) = self.cache.get(&(a.clone(), x.clone())) {
            return r.clone();
        }
        let r = apply(a, x, self.budget).normal();
        self.cache.insert((a.clone(), x.clone()), r.clone());
        r
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caches_results() {
        let mut m = MemoApply::new(EvalBudget::default());
        assert_eq!(m.apply(&Term::K, &Term::S), Some(Term::app(Term::K, Term::S)));
        assert_eq!(m.apply(&Term::K, &Term::S), Some(Term::app(Term::K, Term::S)));
        assert_eq!(m.len(), 1);
    }
}
