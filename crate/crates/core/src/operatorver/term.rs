use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::exactalg::RatFunc;
use crate::typecore::labels;

/// Most distinct operator symbols a term may carry.
pub const MAX_OPERATORS: usize = 4;

/// Commutative operator word: `counts[i]` applications of operator `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub [u8; MAX_OPERATORS]);

impl Word {
    pub fn single(op: usize, n: u8) -> Word {
        let mut w = Word::default();
        w.0[op] = n;
        w
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, op: usize) -> u8 {
        self.0[op]
    }

    pub fn plus(&self, op: usize, n: u8) -> Word {
        let mut w = *self;
        w.0[op] += n;
        w
    }

    /// Removes one `op`; `None` if absent.
    pub fn minus(&self, op: usize) -> Option<Word> {
        let mut w = *self;
        w.0[op] = w.0[op].checked_sub(1)?;
        Some(w)
    }

    pub fn join(&self, other: &Word) -> Word {
        let mut w = *self;
        for (a, b) in w.0.iter_mut().zip(other.0) {
            *a += b;
        }
        w
    }

    /// Componentwise `≤`.
    pub fn divides(&self, other: &Word) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// All words componentwise below `self`, in ascending order.
    pub fn divisors(&self) -> Vec<Word> {
        let mut out = vec![Word::default()];
        for op in 0..MAX_OPERATORS {
            out = out
                .into_iter()
                .flat_map(|w| (0..=self.0[op]).map(move |k| w.plus(op, k)))
                .collect();
        }
        out.sort();
        out
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Word) -> Word {
        let mut w = *self;
        for (a, b) in w.0.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        w
    }
}

/// Product tree with operator words on leaves and internal nodes. Leaves
/// are variables `0, 1, 2` (`x, y, z`) in left-to-right order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Leaf {
        var: u8,
        word: Word,
    },
    Node {
        gen: usize,
        word: Word,
        left: Box<Term>,
        right: Box<Term>,
    },
}

impl Term {
    pub fn var(var: u8) -> Term {
        Term::Leaf {
            var,
            word: Word::default(),
        }
    }

    pub fn node(gen: usize, word: Word, left: Term, right: Term) -> Term {
        Term::Node {
            gen,
            word,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn word(&self) -> Word {
        match self {
            Term::Leaf { word, .. } | Term::Node { word, .. } => *word,
        }
    }

    pub fn with_word(&self, w: Word) -> Term {
        let mut t = self.clone();
        match &mut t {
            Term::Leaf { word, .. } | Term::Node { word, .. } => *word = w,
        }
        t
    }

    pub fn wrap(&self, op: usize) -> Term {
        self.with_word(self.word().plus(op, 1))
    }

    /// Words on the leaves, left to right.
    pub fn leaf_words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Word>) {
        match self {
            Term::Leaf { word, .. } => out.push(*word),
            Term::Node { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Longest word anywhere in the tree.
    pub fn max_word_len(&self) -> usize {
        match self {
            Term::Leaf { word, .. } => word.len(),
            Term::Node {
                word, left, right, ..
            } => word
                .len()
                .max(left.max_word_len())
                .max(right.max_word_len()),
        }
    }

    /// Renders with generator labels and operator names, e.g.
    /// `(x ≺ P(y)) ≻ z`.
    pub fn render(&self, gens: &[String], ops: &[String]) -> String {
        let mut s = String::new();
        self.render_into(&mut s, gens, ops, true);
        s
    }

    fn render_into(&self, s: &mut String, gens: &[String], ops: &[String], top: bool) {
        let wraps: Vec<&str> = (0..MAX_OPERATORS)
            .flat_map(|op| std::iter::repeat_n(op, self.word().count(op) as usize))
            .map(|op| ops.get(op).map(String::as_str).unwrap_or("?"))
            .collect();
        for w in &wraps {
            let _ = write!(s, "{w}(");
        }
        match self {
            Term::Leaf { var, .. } => s.push(['x', 'y', 'z', 'w'][*var as usize % 4]),
            Term::Node {
                gen, left, right, ..
            } => {
                let paren = !top && wraps.is_empty();
                if paren {
                    s.push('(');
                }
                left.render_into(s, gens, ops, false);
                let label = gens
                    .get(*gen)
                    .map(|g| labels::display_label(g))
                    .unwrap_or_else(|| gen.to_string());
                let _ = write!(s, " {label} ");
                right.render_into(s, gens, ops, false);
                if paren {
                    s.push(')');
                }
            }
        }
        for _ in &wraps {
            s.push(')');
        }
    }
}

/// Linear combination of terms over `Q(λ)`; zero coefficients are never
/// stored.
pub type Lincomb = BTreeMap<Term, RatFunc>;

pub fn add_term(c: &mut Lincomb, t: Term, coef: RatFunc) {
    if coef.is_zero() {
        return;
    }
    match c.remove(&t) {
        Some(old) => {
            let sum = old + &coef;
            if !sum.is_zero() {
                c.insert(t, sum);
            }
        }
        None => {
            c.insert(t, coef);
        }
    }
}

pub fn add_scaled(acc: &mut Lincomb, other: &Lincomb, scale: &RatFunc) {
    for (t, c) in other {
        add_term(acc, t.clone(), c.clone() * scale);
    }
}

pub fn single(t: Term) -> Lincomb {
    let mut c = Lincomb::new();
    c.insert(t, RatFunc::one());
    c
}

/// `a − b`.
pub fn difference(a: &Lincomb, b: &Lincomb) -> Lincomb {
    let mut out = a.clone();
    add_scaled(&mut out, b, &-RatFunc::one());
    out
}

/// Renders `c₁·t₁ + c₂·t₂ + …`; `0` when empty.
pub fn render_lincomb(c: &Lincomb, gens: &[String], ops: &[String]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|(t, k)| {
            let body = t.render(gens, ops);
            if k.is_one() {
                body
            } else {
                format!("{k}·{body}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_divisors() {
        let w = Word::single(0, 2).plus(1, 1);
        assert_eq!(w.divisors().len(), 6);
        assert!(w.divisors().iter().all(|d| d.divides(&w)));
    }

    #[test]
    fn render_nested() {
        let gens = vec!["lt".to_string(), "gt".to_string()];
        let ops = vec!["P".to_string()];
        let inner = Term::node(0, Word::single(0, 1), Term::var(0), Term::var(1).wrap(0));
        let t = Term::node(1, Word::default(), inner, Term::var(2));
        assert_eq!(t.render(&gens, &ops), "P(x ≺ P(y)) ≻ z");
        let t = Term::node(
            1,
            Word::default(),
            Term::node(0, Word::default(), Term::var(0), Term::var(1)),
            Term::var(2),
        );
        assert_eq!(t.render(&gens, &ops), "(x ≺ y) ≻ z");
    }
}
