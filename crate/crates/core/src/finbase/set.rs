use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite set of opaque string labels, kept sorted and duplicate free.
///
/// Objects compare by their label lists, so every construction that builds
/// a set from the same data produces an equal set.
#[derive(Clone, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    elements: Arc<[String]>,
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.elements, &other.elements) || self.elements == other.elements
    }
}

/// Checks the label grammar used by the derived label schemes: non-empty,
/// balanced brackets, and no `,` or `↦` outside brackets. Pair and function
/// graph labels decode uniquely under this condition.
pub fn is_valid_label(label: &str) -> bool {
    if label.is_empty() {
        return false;
    }
    let mut stack = Vec::new();
    for c in label.chars() {
        match c {
            '(' | '[' | '{' => stack.push(c),
            ')' | ']' | '}' => {
                let open = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                if stack.pop() != Some(open) {
                    return false;
                }
            }
            ',' | '↦' if stack.is_empty() => return false,
            _ => {}
        }
    }
    stack.is_empty()
}

impl FinSet {
    /// Builds a set from arbitrary labels, sorting them.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        if let Some(bad) = v.iter().find(|l| !is_valid_label(l)) {
            return Err(Error::InvalidLabel(bad.clone()));
        }
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(FinSet { elements: v.into() })
    }

    /// Builds a set from labels the caller guarantees to be valid and
    /// distinct; they are sorted here.
    pub(crate) fn from_labels_unchecked(mut v: Vec<String>) -> Self {
        v.sort();
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]), "duplicate labels");
        FinSet { elements: v.into() }
    }

    pub fn empty() -> Self {
        FinSet {
            elements: Vec::new().into(),
        }
    }

    pub fn singleton(label: impl Into<String>) -> Result<Self> {
        FinSet::new([label.into()])
    }

    /// `{"0", "1", ..., "n-1"}`, sorted as strings.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        FinSet::from_labels_unchecked((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements
            .binary_search_by(|probe| probe.as_str().cmp(label))
            .ok()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.elements.iter().map(String::as_str)
    }

    /// The subset on the given indices (any order, no duplicates).
    pub fn subset(&self, indices: &[usize]) -> FinSet {
        FinSet::from_labels_unchecked(indices.iter().map(|&i| self.elements[i].clone()).collect())
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

pub(crate) fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

pub(crate) fn graph_label<'a>(entries: impl Iterator<Item = (&'a str, &'a str)>) -> String {
    let body: Vec<String> = entries.map(|(k, v)| format!("{k}↦{v}")).collect();
    format!("{{{}}}", body.join(","))
}
