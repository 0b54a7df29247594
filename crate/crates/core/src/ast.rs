//! Abstract syntax for two-variable counting problems: predicates with
//! weights, formulas over the variables `x` and `y`, axiom declarations,
//! cardinality constraints and evidence.

use num_bigint::BigInt;
use std::fmt;

/// Index of a predicate in a [`Vocabulary`].
pub type PredId = usize;

/// The two variable names admitted by the fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// A term is a variable or a domain position (positive integer constant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Const(u32),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v.name()),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// What role a predicate plays in the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredKind {
    /// A user predicate carrying weights and free interpretation.
    Ordinary,
    /// The built-in total order, spelled `leq`.
    Order,
    /// `pred<s>`: relates elements exactly `s` apart in the order.
    Predecessor(u32),
    /// `cirpred`: the immediate predecessor closed into a cycle.
    CyclicPredecessor,
    /// Introduced by existential elimination; carries negative false-weight.
    Skolem,
    /// Introduced internally (definitional rewrites, generators).
    Auxiliary,
}

impl PredKind {
    /// Order-like predicates have a fixed interpretation on the ordered domain.
    pub fn is_builtin_order(self) -> bool {
        matches!(
            self,
            PredKind::Order | PredKind::Predecessor(_) | PredKind::CyclicPredecessor
        )
    }
}

/// A weight as written in the input: an exact rational, a decimal literal,
/// or `exp(<decimal>)` (float ring only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightLiteral {
    Rational(BigInt, BigInt),
    Decimal(String),
    Exp(String),
}

impl WeightLiteral {
    pub fn one() -> Self {
        WeightLiteral::Rational(BigInt::from(1), BigInt::from(1))
    }

    pub fn minus_one() -> Self {
        WeightLiteral::Rational(BigInt::from(-1), BigInt::from(1))
    }

    pub fn integer(n: i64) -> Self {
        WeightLiteral::Rational(BigInt::from(n), BigInt::from(1))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, WeightLiteral::Rational(p, q) if p == q)
    }
}

impl fmt::Display for WeightLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightLiteral::Rational(p, q) => {
                if q == &BigInt::from(1) {
                    write!(f, "{p}")
                } else {
                    write!(f, "{p}/{q}")
                }
            }
            WeightLiteral::Decimal(s) => write!(f, "{s}"),
            WeightLiteral::Exp(s) => write!(f, "exp({s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    pub name: String,
    pub arity: u8,
    pub kind: PredKind,
    pub weight_pos: WeightLiteral,
    pub weight_neg: WeightLiteral,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: u8) -> Self {
        Predicate {
            name: name.into(),
            arity,
            kind: PredKind::Ordinary,
            weight_pos: WeightLiteral::one(),
            weight_neg: WeightLiteral::one(),
        }
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weight_pos.is_one() && self.weight_neg.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub pred: PredId,
    pub args: Vec<Term>,
}

/// Quantifier-free and quantified formulas over at most two variables.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: PredId, args: Vec<Term>) -> Self {
        Formula::Atom(Atom { pred, args })
    }

    pub fn not(inner: Formula) -> Self {
        Formula::Not(Box::new(inner))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    /// Conjoin a list; an empty list is not representable, so callers pass
    /// at least one conjunct.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        let mut it = parts.into_iter();
        let first = it.next().expect("conj of empty list");
        it.fold(first, Formula::and)
    }

    pub fn disj(parts: Vec<Formula>) -> Formula {
        let mut it = parts.into_iter();
        let first = it.next().expect("disj of empty list");
        it.fold(first, Formula::or)
    }

    /// Collect the conjuncts of a top-level conjunction tree.
    pub fn flatten_and(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn flatten_or(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(inner) => inner.for_each_atom(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.for_each_atom(f),
        }
    }

    pub fn mentions_pred(&self, pred: PredId) -> bool {
        let mut found = false;
        self.for_each_atom(&mut |a| found |= a.pred == pred);
        found
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Not(inner) => inner.has_quantifier(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.has_quantifier() || b.has_quantifier(),
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }

    /// Does the formula mention the variable outside of quantifier rebinding?
    pub fn mentions_var(&self, v: Var) -> bool {
        match self {
            Formula::Atom(a) => a.args.iter().any(|t| *t == Term::Var(v)),
            Formula::Not(inner) => inner.mentions_var(v),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.mentions_var(v) || b.mentions_var(v),
            Formula::Forall(q, body) | Formula::Exists(q, body) => {
                *q != v && body.mentions_var(v)
            }
        }
    }

    /// Swap the roles of `x` and `y` everywhere, including quantifiers.
    pub fn swap_vars(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                pred: a.pred,
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Term::Var(v.other()),
                        c => *c,
                    })
                    .collect(),
            }),
            Formula::Not(inner) => Formula::not(inner.swap_vars()),
            Formula::And(a, b) => Formula::and(a.swap_vars(), b.swap_vars()),
            Formula::Or(a, b) => Formula::or(a.swap_vars(), b.swap_vars()),
            Formula::Implies(a, b) => Formula::implies(a.swap_vars(), b.swap_vars()),
            Formula::Iff(a, b) => Formula::iff(a.swap_vars(), b.swap_vars()),
            Formula::Forall(v, body) => Formula::forall(v.other(), body.swap_vars()),
            Formula::Exists(v, body) => Formula::exists(v.other(), body.swap_vars()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparator::Eq => write!(f, "="),
            Comparator::Le => write!(f, "<="),
            Comparator::Ge => write!(f, ">="),
        }
    }
}

impl Comparator {
    pub fn holds(self, value: u64, bound: u64) -> bool {
        match self {
            Comparator::Eq => value == bound,
            Comparator::Le => value <= bound,
            Comparator::Ge => value >= bound,
        }
    }
}

/// `|P| <op> bound` over the number of true ground atoms of `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityConstraint {
    pub pred: PredId,
    pub comparator: Comparator,
    pub bound: u64,
}

/// The non-logical axiom attached to the sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// `linear(leq, pred<s1>, ..., pred<sk>)`; the set holds the declared orders.
    Linear { orders: Vec<u32> },
    /// `linear(leq, cirpred)`.
    LinearCyclic,
}

impl Axiom {
    /// Highest predecessor order the state must track (0 for plain `linear`).
    pub fn max_order(&self) -> u32 {
        match self {
            Axiom::Linear { orders } => orders.iter().copied().max().unwrap_or(0),
            Axiom::LinearCyclic => 1,
        }
    }
}

/// A signed ground unary literal `P(c)` / `~P(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub pred: PredId,
    pub position: u32,
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingMode {
    Rational,
    Float,
}

impl Default for RingMode {
    fn default() -> Self {
        RingMode::Rational
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpecOptions {
    pub ring: RingMode,
    /// When set, the order is pinned to `1 <= 2 <= ... <= n` and no
    /// factorial factor is applied.
    pub fixed_order: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocabulary {
    pub preds: Vec<Predicate>,
}

impl Vocabulary {
    pub fn lookup(&self, name: &str) -> Option<PredId> {
        self.preds.iter().position(|p| p.name == name)
    }

    pub fn add(&mut self, pred: Predicate) -> PredId {
        debug_assert!(self.lookup(&pred.name).is_none(), "duplicate predicate");
        self.preds.push(pred);
        self.preds.len() - 1
    }

    pub fn get(&self, id: PredId) -> &Predicate {
        &self.preds[id]
    }

    /// A name not yet in the vocabulary, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.lookup(base).is_none() {
            return base.to_string();
        }
        let mut i = 0;
        loop {
            let candidate = format!("{base}{i}");
            if self.lookup(&candidate).is_none() {
                return candidate;
            }
            i += 1;
        }
    }

    /// Number of ground atoms of `pred` over a domain of size `n`.
    pub fn ground_atom_count(&self, pred: PredId, n: u64) -> u64 {
        match self.preds[pred].arity {
            1 => n,
            2 => n * n,
            _ => unreachable!("arity is 1 or 2"),
        }
    }
}

/// A parsed problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceSpec {
    pub vocab: Vocabulary,
    pub formula: Formula,
    pub axiom: Option<Axiom>,
    pub cardinalities: Vec<CardinalityConstraint>,
    pub domain_size: u32,
    pub evidence: Vec<Evidence>,
    pub options: SpecOptions,
}

impl SentenceSpec {
    pub fn pred_id(&self, name: &str) -> Option<PredId> {
        self.vocab.lookup(name)
    }
}
