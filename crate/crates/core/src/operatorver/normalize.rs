use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use super::term::{add_scaled, add_term, Lincomb, Term, Word, MAX_OPERATORS};
use crate::exactalg::{RatFunc, Rational};
use crate::Error;

pub const DEFAULT_NESTING_CAP: usize = 6;
pub const DEFAULT_STEP_BUDGET: usize = 100_000;

/// Weight of a Rota-Baxter operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    /// The indeterminate `λ`.
    Formal,
    Value(Rational),
}

impl Weight {
    pub fn scalar(&self) -> RatFunc {
        match self {
            Weight::Formal => RatFunc::lambda(),
            Weight::Value(q) => RatFunc::constant(q.clone()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Formal => f.write_str("λ"),
            Weight::Value(q) => write!(f, "{q}"),
        }
    }
}

/// Rewrite rule for `O(u) ∘ O(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Law {
    /// `P(u)∘P(v) → P(P(u)∘v) + P(u∘P(v)) + w·P(u∘v)`
    RotaBaxter(Weight),
    /// `N(u)∘N(v) → N(N(u)∘v) + N(u∘N(v)) − N(N(u∘v))`
    Nijenhuis,
    /// `P(u)∘P(v) → P(u∘P(v))`
    LeftRotaBaxter,
    /// `P(u)∘P(v) → P(P(u)∘v)`
    RightRotaBaxter,
}

impl Law {
    pub fn symbol(&self) -> &'static str {
        match self {
            Law::Nijenhuis => "N",
            _ => "P",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::RotaBaxter(w) => write!(f, "rota-baxter(weight {w})"),
            Law::Nijenhuis => f.write_str("nijenhuis"),
            Law::LeftRotaBaxter => f.write_str("left rota-baxter"),
            Law::RightRotaBaxter => f.write_str("right rota-baxter"),
        }
    }
}

/// One rewrite product: `coef · node(word + extra·op, left − l_op, right − r_op)`.
struct Rewrite {
    coef: RatFunc,
    extra: u8,
    drop_left: bool,
    drop_right: bool,
}

fn rewrites(law: &Law) -> Vec<Rewrite> {
    let one = RatFunc::one;
    let r = |coef: RatFunc, extra, drop_left, drop_right| Rewrite {
        coef,
        extra,
        drop_left,
        drop_right,
    };
    match law {
        Law::RotaBaxter(w) => {
            let mut v = vec![r(one(), 1, false, true), r(one(), 1, true, false)];
            let w = w.scalar();
            if !w.is_zero() {
                v.push(r(w, 1, true, true));
            }
            v
        }
        Law::Nijenhuis => vec![
            r(one(), 1, false, true),
            r(one(), 1, true, false),
            r(-one(), 2, true, true),
        ],
        Law::LeftRotaBaxter => vec![r(one(), 1, true, false)],
        Law::RightRotaBaxter => vec![r(one(), 1, false, true)],
    }
}

/// Operator index with a redex at a node with these children, if any.
fn redex(laws: &[Law], left: &Term, right: &Term) -> Option<usize> {
    (0..laws.len()).find(|&op| left.word().count(op) > 0 && right.word().count(op) > 0)
}

/// Whether no product has both operands wrapped by the same operator.
pub fn is_normal(t: &Term, laws: &[Law]) -> bool {
    match t {
        Term::Leaf { .. } => true,
        Term::Node { left, right, .. } => {
            redex(laws, left, right).is_none() && is_normal(left, laws) && is_normal(right, laws)
        }
    }
}

/// Limits applied while rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub nesting_cap: usize,
    pub step_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nesting_cap: DEFAULT_NESTING_CAP,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

fn check_cap(t: &Term, limits: &Limits) -> Result<(), Error> {
    if t.max_word_len() > limits.nesting_cap {
        Err(Error::NestingCapExceeded)
    } else {
        Ok(())
    }
}

/// Innermost-leftmost normalizer with memoized normal forms. Operator `i`
/// obeys `laws[i]`.
pub struct Normalizer<'a> {
    laws: &'a [Law],
    rules: Vec<Vec<Rewrite>>,
    limits: Limits,
    steps: usize,
    memo: HashMap<Term, Lincomb>,
}

impl<'a> Normalizer<'a> {
    pub fn new(laws: &'a [Law], limits: Limits) -> Result<Self, Error> {
        if laws.len() > MAX_OPERATORS {
            return Err(Error::Structure(format!(
                "at most {MAX_OPERATORS} operators are supported"
            )));
        }
        Ok(Normalizer {
            laws,
            rules: laws.iter().map(rewrites).collect(),
            limits,
            steps: 0,
            memo: HashMap::new(),
        })
    }

    /// Rewrites applied so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn normalize(&mut self, c: &Lincomb) -> Result<Lincomb, Error> {
        let mut out = Lincomb::new();
        for (t, k) in c {
            let nf = self.normalize_term(t)?;
            add_scaled(&mut out, &nf, k);
        }
        Ok(out)
    }

    pub fn normalize_term(&mut self, t: &Term) -> Result<Lincomb, Error> {
        check_cap(t, &self.limits)?;
        if let Some(nf) = self.memo.get(t) {
            return Ok(nf.clone());
        }
        let nf = match t {
            Term::Leaf { .. } => super::term::single(t.clone()),
            Term::Node {
                gen,
                word,
                left,
                right,
            } => {
                let l = self.normalize_term(left)?;
                let r = self.normalize_term(right)?;
                let mut out = Lincomb::new();
                for (lt, lc) in &l {
                    for (rt, rc) in &r {
                        let root = self.reduce_root(*gen, *word, lt.clone(), rt.clone())?;
                        add_scaled(&mut out, &root, &(lc.clone() * rc));
                    }
                }
                out
            }
        };
        self.memo.insert(t.clone(), nf.clone());
        Ok(nf)
    }

    /// Children are normal; rewrites at the root until no redex remains.
    fn reduce_root(
        &mut self,
        gen: usize,
        word: Word,
        left: Term,
        right: Term,
    ) -> Result<Lincomb, Error> {
        let Some(op) = redex(self.laws, &left, &right) else {
            let t = Term::node(gen, word, left, right);
            check_cap(&t, &self.limits)?;
            return Ok(super::term::single(t));
        };
        self.steps += 1;
        if self.steps > self.limits.step_budget {
            return Err(Error::BudgetExhausted);
        }
        let mut out = Lincomb::new();
        for i in 0..self.rules[op].len() {
            let rw = &self.rules[op][i];
            let (coef, extra) = (rw.coef.clone(), rw.extra);
            let l = if rw.drop_left {
                drop(&left, op)
            } else {
                left.clone()
            };
            let r = if rw.drop_right {
                drop(&right, op)
            } else {
                right.clone()
            };
            let sub = self.reduce_root(gen, word.plus(op, extra), l, r)?;
            add_scaled(&mut out, &sub, &coef);
        }
        Ok(out)
    }
}

fn drop(t: &Term, op: usize) -> Term {
    t.with_word(
        t.word()
            .minus(op)
            .expect("redex operand carries the operator"),
    )
}

/// Rewrites the outermost redex, preferring right subtrees, once.
fn rewrite_once(t: &Term, laws: &[Law]) -> Option<Vec<(RatFunc, Term)>> {
    let Term::Node {
        gen,
        word,
        left,
        right,
    } = t
    else {
        return None;
    };
    if let Some(op) = redex(laws, left, right) {
        return Some(
            rewrites(&laws[op])
                .into_iter()
                .map(|rw| {
                    let l = if rw.drop_left {
                        drop(left, op)
                    } else {
                        (**left).clone()
                    };
                    let r = if rw.drop_right {
                        drop(right, op)
                    } else {
                        (**right).clone()
                    };
                    (rw.coef, Term::node(*gen, word.plus(op, rw.extra), l, r))
                })
                .collect(),
        );
    }
    if let Some(rs) = rewrite_once(right, laws) {
        return Some(
            rs.into_iter()
                .map(|(c, r)| (c, Term::node(*gen, *word, (**left).clone(), r)))
                .collect(),
        );
    }
    rewrite_once(left, laws).map(|ls| {
        ls.into_iter()
            .map(|(c, l)| (c, Term::node(*gen, *word, l, (**right).clone())))
            .collect()
    })
}

/// Outermost-rightmost normalization, one rewrite at a time and without
/// memoization. Kept as an independent reference for [`Normalizer`].
pub fn normalize_outermost(c: &Lincomb, laws: &[Law], limits: Limits) -> Result<Lincomb, Error> {
    let mut current = c.clone();
    let mut steps = 0usize;
    loop {
        let found = current
            .iter()
            .find_map(|(t, k)| rewrite_once(t, laws).map(|rs| (t.clone(), k.clone(), rs)));
        let Some((t, k, rs)) = found else {
            return Ok(current);
        };
        steps += 1;
        if steps > limits.step_budget {
            return Err(Error::BudgetExhausted);
        }
        current.remove(&t);
        for (c, nt) in rs {
            check_cap(&nt, &limits)?;
            add_term(&mut current, nt, c * &k);
        }
    }
}
