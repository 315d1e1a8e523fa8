//! Straight-line programs over free-group variables `z₀, z₁, …`.
//!
//! A [`WordExpr`] is an immutable DAG; shared subterms are evaluated once per
//! call. Exponent sums (the image in the abelianization) are cached per node.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::groups::Signature;
use crate::words::Word;

pub const DEFAULT_BUDGET: usize = 5_000_000;

/// The default syllable budget, overridable through `VERBA_BUDGET`.
pub fn default_budget() -> usize {
    std::env::var("VERBA_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SlpError {
    #[error("node {node} needs {length} syllables, over the budget of {budget} (length bound {bound})")]
    BudgetExceeded { node: usize, length: usize, budget: usize, bound: BigUint },
    #[error("expression uses variable {var} but only {given} values were supplied")]
    BadArity { var: u32, given: usize },
    #[error("dump line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug)]
pub enum Op {
    Var(u32),
    One,
    Mul(WordExpr, WordExpr),
    Inv(WordExpr),
    Pow(WordExpr, i64),
    Comm(WordExpr, WordExpr),
}

#[derive(Debug)]
struct Node {
    op: Op,
    /// Sparse nonzero exponent sums, sorted by variable.
    sums: Vec<(u32, BigInt)>,
}

#[derive(Clone)]
pub struct WordExpr(Arc<Node>);

fn merge_sums(a: &[(u32, BigInt)], b: &[(u32, BigInt)]) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = &a[i].1 + &b[j].1;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl WordExpr {
    fn new(op: Op) -> Self {
        let sums = match &op {
            Op::Var(i) => vec![(*i, BigInt::one())],
            Op::One | Op::Comm(..) => Vec::new(),
            Op::Mul(a, b) => merge_sums(&a.0.sums, &b.0.sums),
            Op::Inv(a) => a.0.sums.iter().map(|(i, s)| (*i, -s)).collect(),
            Op::Pow(a, e) if *e == 0 => Vec::new(),
            Op::Pow(a, e) => a.0.sums.iter().map(|(i, s)| (*i, s * BigInt::from(*e))).collect(),
        };
        WordExpr(Arc::new(Node { op, sums }))
    }

    pub fn var(i: u32) -> Self {
        Self::new(Op::Var(i))
    }

    pub fn one() -> Self {
        Self::new(Op::One)
    }

    pub fn mul(a: &WordExpr, b: &WordExpr) -> Self {
        Self::new(Op::Mul(a.clone(), b.clone()))
    }

    pub fn inv(a: &WordExpr) -> Self {
        Self::new(Op::Inv(a.clone()))
    }

    pub fn pow(a: &WordExpr, e: i64) -> Self {
        Self::new(Op::Pow(a.clone(), e))
    }

    pub fn comm(a: &WordExpr, b: &WordExpr) -> Self {
        Self::new(Op::Comm(a.clone(), b.clone()))
    }

    /// Left-nested product; the empty product is `One`.
    pub fn product(parts: &[WordExpr]) -> Self {
        let mut it = parts.iter();
        let Some(first) = it.next() else { return Self::one() };
        it.fold(first.clone(), |acc, p| Self::mul(&acc, p))
    }

    pub fn op(&self) -> &Op {
        &self.0.op
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    fn children(&self) -> Vec<&WordExpr> {
        match &self.0.op {
            Op::Var(_) | Op::One => vec![],
            Op::Inv(a) | Op::Pow(a, _) => vec![a],
            Op::Mul(a, b) | Op::Comm(a, b) => vec![a, b],
        }
    }

    pub fn exponent_sum(&self, i: u32) -> BigInt {
        self.0.sums.iter().find(|(v, _)| *v == i).map(|(_, s)| s.clone()).unwrap_or_default()
    }

    pub fn exponent_sums(&self, n: usize) -> Vec<BigInt> {
        (0..n as u32).map(|i| self.exponent_sum(i)).collect()
    }

    /// True when the expression lies in the commutator subgroup of the free group.
    pub fn exponent_sums_vanish(&self) -> bool {
        self.0.sums.is_empty()
    }

    /// Distinct nodes in post-order (children before parents).
    pub fn topo_order(&self) -> Vec<WordExpr> {
        let mut seen: HashMap<*const Node, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut stack: Vec<(WordExpr, bool)> = vec![(self.clone(), false)];
        while let Some((e, expanded)) = stack.pop() {
            if seen.contains_key(&e.key()) {
                continue;
            }
            if expanded {
                seen.insert(e.key(), ());
                out.push(e);
            } else {
                stack.push((e.clone(), true));
                for c in e.children().into_iter().rev() {
                    if !seen.contains_key(&c.key()) {
                        stack.push((c.clone(), false));
                    }
                }
            }
        }
        out
    }

    /// One more than the largest variable index used.
    pub fn num_vars(&self) -> usize {
        self.topo_order()
            .iter()
            .filter_map(|e| match e.op() {
                Op::Var(i) => Some(*i as usize + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        self.topo_order().len()
    }

    /// Upper bound on the syllable length of the value, given the input lengths.
    pub fn length_upper_bound(&self, input_lengths: &[u64]) -> BigUint {
        let order = self.topo_order();
        let mut memo: HashMap<*const Node, BigUint> = HashMap::with_capacity(order.len());
        for e in &order {
            let get = |c: &WordExpr| memo[&c.key()].clone();
            let b = match e.op() {
                Op::Var(i) => BigUint::from(input_lengths.get(*i as usize).copied().unwrap_or(0)),
                Op::One => BigUint::zero(),
                Op::Mul(a, b) => get(a) + get(b),
                Op::Inv(a) => get(a),
                Op::Pow(a, k) => get(a) * BigUint::from(k.unsigned_abs()),
                Op::Comm(a, b) => (get(a) + get(b)) * 2u32,
            };
            memo.insert(e.key(), b);
        }
        memo.remove(&self.key()).unwrap_or_default()
    }

    /// Replaces `Var(i)` by `args[i]`.
    pub fn substitute(&self, args: &[WordExpr]) -> Result<WordExpr, SlpError> {
        let order = self.topo_order();
        let mut memo: HashMap<*const Node, WordExpr> = HashMap::with_capacity(order.len());
        for e in &order {
            let get = |c: &WordExpr| memo[&c.key()].clone();
            let v = match e.op() {
                Op::Var(i) => {
                    args.get(*i as usize).cloned().ok_or(SlpError::BadArity { var: *i, given: args.len() })?
                }
                Op::One => e.clone(),
                Op::Mul(a, b) => WordExpr::mul(&get(a), &get(b)),
                Op::Inv(a) => WordExpr::inv(&get(a)),
                Op::Pow(a, k) => WordExpr::pow(&get(a), *k),
                Op::Comm(a, b) => WordExpr::comm(&get(a), &get(b)),
            };
            memo.insert(e.key(), v);
        }
        Ok(memo.remove(&self.key()).expect("root is evaluated last"))
    }

    /// Evaluates in any group described by a [`Target`].
    pub fn evaluate_in<T: Target>(&self, target: &T, assignment: &[T::Elem]) -> Result<T::Elem, SlpError> {
        let order = self.topo_order();
        let mut memo: HashMap<*const Node, T::Elem> = HashMap::with_capacity(order.len());
        for e in &order {
            let get = |c: &WordExpr| &memo[&c.key()];
            let v = match e.op() {
                Op::Var(i) => assignment
                    .get(*i as usize)
                    .cloned()
                    .ok_or(SlpError::BadArity { var: *i, given: assignment.len() })?,
                Op::One => target.one(),
                Op::Mul(a, b) => target.mul(get(a), get(b)),
                Op::Inv(a) => target.inv(get(a)),
                Op::Pow(a, k) => target.pow(get(a), *k),
                Op::Comm(a, b) => {
                    let (x, y) = (get(a), get(b));
                    let xy = target.mul(x, y);
                    let yx = target.mul(y, x);
                    target.mul(&target.inv(&yx), &xy)
                }
            };
            memo.insert(e.key(), v);
        }
        Ok(memo.remove(&self.key()).expect("root is evaluated last"))
    }

    /// Exact evaluation in a free product, failing once any node exceeds `budget` syllables.
    pub fn evaluate(&self, sig: &Signature, assignment: &[Word], budget: usize) -> Result<Word, SlpError> {
        let order = self.topo_order();
        let mut memo: HashMap<*const Node, Word> = HashMap::with_capacity(order.len());
        for (id, e) in order.iter().enumerate() {
            let get = |c: &WordExpr| &memo[&c.key()];
            let over = |length: usize| SlpError::BudgetExceeded {
                node: id,
                length,
                budget,
                bound: e.length_upper_bound(&assignment.iter().map(|w| w.len() as u64).collect::<Vec<_>>()),
            };
            let v = match e.op() {
                Op::Var(i) => assignment
                    .get(*i as usize)
                    .cloned()
                    .ok_or(SlpError::BadArity { var: *i, given: assignment.len() })?,
                Op::One => Word::one(),
                Op::Mul(a, b) => sig.mul(get(a), get(b)),
                Op::Inv(a) => sig.inv(get(a)),
                Op::Pow(a, k) => {
                    let len = sig.pow_len(get(a), *k);
                    if len > budget {
                        return Err(over(len));
                    }
                    sig.pow(get(a), *k)
                }
                Op::Comm(a, b) => sig.comm(get(a), get(b)),
            };
            if v.len() > budget {
                return Err(over(v.len()));
            }
            memo.insert(e.key(), v);
        }
        Ok(memo.remove(&self.key()).expect("root is evaluated last"))
    }

    /// Text dump: one `id := op args` line per node, children first; the root is last.
    pub fn to_dump(&self) -> String {
        let order = self.topo_order();
        let ids: HashMap<*const Node, usize> = order.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        let mut out = String::new();
        for (i, e) in order.iter().enumerate() {
            let id = |c: &WordExpr| ids[&c.key()];
            let line = match e.op() {
                Op::Var(v) => format!("{i} := var {v}"),
                Op::One => format!("{i} := one"),
                Op::Mul(a, b) => format!("{i} := mul {} {}", id(a), id(b)),
                Op::Inv(a) => format!("{i} := inv {}", id(a)),
                Op::Pow(a, k) => format!("{i} := pow {} {k}", id(a)),
                Op::Comm(a, b) => format!("{i} := comm {} {}", id(a), id(b)),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<WordExpr, SlpError> {
        let mut nodes: HashMap<usize, WordExpr> = HashMap::new();
        let mut last = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| SlpError::Parse { line: lineno + 1, msg: msg.to_string() };
            let (id, rhs) = line.split_once(":=").ok_or_else(|| err("expected `id := op args`"))?;
            let id: usize = id.trim().parse().map_err(|_| err("bad node id"))?;
            let toks: Vec<&str> = rhs.split_whitespace().collect();
            let num = |k: usize| -> Result<i64, SlpError> {
                toks.get(k).and_then(|t| t.parse().ok()).ok_or_else(|| err("bad argument"))
            };
            let node = |k: usize| -> Result<WordExpr, SlpError> {
                let r = num(k)?;
                nodes.get(&(r as usize)).cloned().ok_or_else(|| err("reference to an undefined node"))
            };
            let e = match toks.first().copied() {
                Some("var") => WordExpr::var(num(1)? as u32),
                Some("one") => WordExpr::one(),
                Some("mul") => WordExpr::mul(&node(1)?, &node(2)?),
                Some("inv") => WordExpr::inv(&node(1)?),
                Some("pow") => WordExpr::pow(&node(1)?, num(2)?),
                Some("comm") => WordExpr::comm(&node(1)?, &node(2)?),
                _ => return Err(err("unknown op")),
            };
            nodes.insert(id, e.clone());
            last = Some(e);
        }
        last.ok_or(SlpError::Parse { line: 0, msg: "empty dump".to_string() })
    }

    pub fn stats(&self, input_lengths: &[u64]) -> SlpStats {
        let vars = self.num_vars();
        SlpStats {
            nodes: self.node_count(),
            vars,
            exponent_sums: self.exponent_sums(vars),
            length_bound: self.length_upper_bound(input_lengths),
        }
    }
}

/// Summary numbers of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpStats {
    pub nodes: usize,
    pub vars: usize,
    pub exponent_sums: Vec<BigInt>,
    pub length_bound: BigUint,
}

impl PartialEq for WordExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (self.op(), other.op()) {
            (Op::Var(a), Op::Var(b)) => a == b,
            (Op::One, Op::One) => true,
            (Op::Mul(a, b), Op::Mul(c, d)) | (Op::Comm(a, b), Op::Comm(c, d)) => a == c && b == d,
            (Op::Inv(a), Op::Inv(b)) => a == b,
            (Op::Pow(a, k), Op::Pow(b, l)) => k == l && a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op() {
            Op::Var(i) => write!(f, "Var({i})"),
            Op::One => write!(f, "One"),
            Op::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            Op::Inv(a) => write!(f, "Inv({a:?})"),
            Op::Pow(a, k) => write!(f, "Pow({a:?}, {k})"),
            Op::Comm(a, b) => write!(f, "Comm({a:?}, {b:?})"),
        }
    }
}

/// Infix form such as `z0 (z1)^2 [z0, z1]`. Shared subterms are printed in
/// full at each use, so this is only meant for small expressions.
impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op() {
            Op::Var(i) => write!(f, "z{i}"),
            Op::One => write!(f, "1"),
            Op::Mul(a, b) => write!(f, "{a} {b}"),
            Op::Inv(a) => write!(f, "({a})^-1"),
            Op::Pow(a, k) => write!(f, "({a})^{k}"),
            Op::Comm(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// A group in which expressions can be evaluated.
pub trait Target {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Binary powering.
    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Unbudgeted evaluation in a free product.
impl Target for Signature {
    type Elem = Word;

    fn one(&self) -> Word {
        Word::one()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        Signature::mul(self, a, b)
    }

    fn inv(&self, a: &Word) -> Word {
        Signature::inv(self, a)
    }

    fn pow(&self, a: &Word, e: i64) -> Word {
        Signature::pow(self, a, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> WordExpr {
        WordExpr::var(i)
    }

    #[test]
    fn exponent_sums() {
        let c = WordExpr::comm(&v(0), &v(1));
        assert!(c.exponent_sums(2).iter().all(Zero::is_zero));
        let p = WordExpr::pow(&v(0), 7);
        assert_eq!(p.exponent_sums(2), vec![BigInt::from(7), BigInt::zero()]);
        let m = WordExpr::mul(&v(0), &WordExpr::inv(&v(0)));
        assert_eq!(m.exponent_sum(0), BigInt::zero());
        assert!(m.exponent_sums_vanish());
    }

    #[test]
    fn evaluation() {
        let sig = Signature::cyclic(&[2, 2, 2]).unwrap();
        let x = sig.parse_word("a b").unwrap();
        let y = sig.parse_word("b c").unwrap();
        let c = WordExpr::comm(&v(0), &v(1));
        assert_eq!(c.evaluate(&sig, &[x.clone(), y.clone()], 100).unwrap(), sig.parse_word("b a c b a c").unwrap());
        assert_eq!(WordExpr::one().evaluate(&sig, std::slice::from_ref(&x), 100).unwrap(), Word::one());
        let big = WordExpr::pow(&c, 1000);
        assert!(matches!(big.evaluate(&sig, &[x.clone(), y.clone()], 10), Err(SlpError::BudgetExceeded { .. })));
        assert_eq!(WordExpr::var(3).evaluate(&sig, &[x], 10), Err(SlpError::BadArity { var: 3, given: 1 }));
        // The generic path agrees with the budgeted one.
        let e = WordExpr::mul(&WordExpr::pow(&c, 3), &WordExpr::inv(&v(0)));
        let a = [sig.parse_word("a b c").unwrap(), sig.parse_word("c a").unwrap()];
        assert_eq!(e.evaluate_in(&sig, &a).unwrap(), e.evaluate(&sig, &a, 1000).unwrap());
    }

    #[test]
    fn length_bounds() {
        assert_eq!(WordExpr::pow(&v(0), 10).length_upper_bound(&[2]), BigUint::from(20u32));
        assert_eq!(WordExpr::one().length_upper_bound(&[]), BigUint::zero());
        let c = WordExpr::comm(&v(0), &v(1));
        assert_eq!(c.length_upper_bound(&[2, 3]), BigUint::from(10u32));
    }

    #[test]
    fn dump_round_trip() {
        let c = WordExpr::comm(&WordExpr::pow(&v(0), 10), &v(1));
        let e = WordExpr::product(&[c.clone(), v(0), c.clone(), WordExpr::inv(&v(1)), WordExpr::one()]);
        let dump = e.to_dump();
        assert_eq!(dump.lines().count(), e.node_count());
        assert!(dump.lines().next().unwrap().starts_with("0 := var 0"));
        let back = WordExpr::from_dump(&dump).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.node_count(), e.node_count());
        assert!(WordExpr::from_dump("0 := mul 1 2").is_err());
        assert!(WordExpr::from_dump("0 := frob").is_err());
    }

    #[test]
    fn substitution() {
        let c = WordExpr::comm(&v(0), &v(1));
        let s = c.substitute(&[WordExpr::pow(&v(2), 2), v(0)]).unwrap();
        assert_eq!(s, WordExpr::comm(&WordExpr::pow(&v(2), 2), &v(0)));
        assert!(matches!(c.substitute(&[v(0)]), Err(SlpError::BadArity { var: 1, given: 1 })));
    }

    #[test]
    fn budget_env_default() {
        assert!(default_budget() > 0);
    }
}
