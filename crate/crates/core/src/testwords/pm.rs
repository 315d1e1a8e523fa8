//! `P`, `P′`, `P″` over the tuple `x̃`, and `M`, `M′`, `M″` over the tuple `x̂`
//! with its witness words.

use crate::groups::Signature;
use crate::slp::WordExpr;
use crate::words::Word;

use super::ewords::{check_chain, choose_j_constants_partial, e_k, j_k, tilde_values, JConstants};
use super::family::{t_prime_partial, t_words_partial, TPrimeFamily, TWordFamily};
use super::{BuildOptions, Constant, TestWordError};

#[derive(Clone, Debug)]
pub struct PWords {
    pub n: usize,
    pub j: JConstants,
    /// `W₀, Ŵ₀, …, W_{n−1}, Ŵ_{n−1}, E, Ê` over `z₀,…,z_{n−1}`.
    pub constituents: Vec<WordExpr>,
    /// Their values at `x̄`, when the constants are certified and fit.
    pub x_tilde: Vec<Option<Word>>,
    /// Conditions F1–F5 that were checked on evaluated constituents.
    pub f_checks: Vec<String>,
    pub t_family: TWordFamily,
    pub t_prime: TPrimeFamily,
    pub p: WordExpr,
    pub p_prime: WordExpr,
    pub p_double: WordExpr,
}

impl PWords {
    pub fn manifest(&self) -> Vec<(String, Constant)> {
        let mut out = self.j.manifest();
        out.extend(self.t_family.manifest("T."));
        out.extend(self.t_prime.mirror.manifest("Tmirror."));
        out
    }
}

/// `W_i(z̄) = J_k̄(z̄, z_i)` etc., in the order of `x̃`.
fn constituents(n: usize, j: &JConstants) -> Result<Vec<WordExpr>, TestWordError> {
    let (k, kh) = (j.k_tuple(), j.k_hat_tuple());
    let (jk, jkh) = (j_k(&k, n)?, j_k(&kh, n)?);
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        let args: Vec<WordExpr> = (0..n).chain([i]).map(|v| WordExpr::var(v as u32)).collect();
        out.push(jk.substitute(&args)?);
        out.push(jkh.substitute(&args)?);
    }
    out.push(e_k(&k[..n], n)?);
    out.push(e_k(&kh[..n], n)?);
    Ok(out)
}

/// F1–F5 on `x̃`: all entries hyperbolic and neighbours noncommuting.
fn check_f(sig: &Signature, xt: &[Word]) -> Result<Vec<String>, TestWordError> {
    let n = (xt.len() - 2) / 2;
    for (idx, w) in xt.iter().enumerate() {
        if !sig.is_hyperbolic(w) {
            return Err(TestWordError::PropertyViolated(format!("F1: entry {idx} of the tilde tuple is elliptic")));
        }
    }
    for (idx, p) in xt.windows(2).enumerate() {
        if sig.commutes(&p[0], &p[1]) {
            let label = match idx {
                _ if idx == 2 * n - 1 => "F4",
                _ if idx == 2 * n => "F5",
                _ if idx % 2 == 0 => "F2",
                _ => "F3",
            };
            return Err(TestWordError::PropertyViolated(format!("{label}: entries {idx}, {} commute", idx + 1)));
        }
    }
    Ok(["F1", "F2", "F3", "F4", "F5"].map(String::from).to_vec())
}

/// `P`-words over a tuple whose entries may be unknown.
pub fn p_words_partial(sig: &Signature, x: &[Option<Word>], opts: &BuildOptions) -> Result<PWords, TestWordError> {
    let n = x.len();
    let (j, _stopped) = choose_j_constants_partial(sig, x, opts)?;
    let cons = constituents(n, &j)?;
    let known: Option<Vec<Word>> = x.iter().cloned().collect();
    let mut x_tilde = vec![None; 2 * n + 2];
    let mut f_checks = Vec::new();
    if let (true, Some(xs)) = (j.all_certified(), known) {
        match tilde_values(sig, &xs, &j, opts.budget) {
            Ok(vals) => {
                f_checks = check_f(sig, &vals)?;
                x_tilde = vals.into_iter().map(Some).collect();
            }
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
    }
    let t_family = t_words_partial(sig, &x_tilde, 2 * n + 2, opts)?;
    let t_prime = t_prime_partial(sig, &x_tilde, opts)?;
    let p = t_family.top().substitute(&cons)?;
    let p_prime = t_prime.t_prime.substitute(&cons)?;
    let p_double = t_prime.t_double.substitute(&cons)?;
    Ok(PWords { n, j, constituents: cons, x_tilde, f_checks, t_family, t_prime, p, p_prime, p_double })
}

pub fn p_words(sig: &Signature, x: &[Word], opts: &BuildOptions) -> Result<PWords, TestWordError> {
    check_chain(sig, x)?;
    let xs: Vec<Option<Word>> = x.iter().cloned().map(Some).collect();
    p_words_partial(sig, &xs, opts)
}

/// A word of `⟨x̄⟩` together with a free word `f` with `f(x̄)` equal to it.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub expr: WordExpr,
    pub value: Word,
    /// The free word as `(variable, ±1)` letters.
    pub letters: Vec<(u32, i8)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witnesses {
    pub w: Witness,
    pub u1: Witness,
    pub u2: Witness,
    pub s: Witness,
}

/// Reduced free words over `z_i^{±1}` by size, each size sorted by the length
/// of the value at `x̄` (ties keep lexicographic order).
fn free_candidates(sig: &Signature, x: &[Word], max_size: usize) -> Vec<Witness> {
    let n = x.len() as u32;
    let inv: Vec<Word> = x.iter().map(|w| sig.inv(w)).collect();
    let letter_value = |(v, e): (u32, i8)| if e > 0 { &x[v as usize] } else { &inv[v as usize] };
    let mut out = Vec::new();
    let mut level: Vec<(Vec<(u32, i8)>, Word)> = vec![(Vec::new(), Word::one())];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for (letters, value) in &level {
            for v in 0..n {
                for e in [1i8, -1] {
                    if letters.last() == Some(&(v, -e)) {
                        continue;
                    }
                    let mut l = letters.clone();
                    l.push((v, e));
                    next.push((l, sig.mul(value, letter_value((v, e)))));
                }
            }
        }
        let mut sorted: Vec<usize> = (0..next.len()).collect();
        sorted.sort_by_key(|&i| next[i].1.len());
        for i in sorted {
            let (letters, value) = &next[i];
            let parts: Vec<WordExpr> = letters
                .iter()
                .map(|&(v, e)| if e > 0 { WordExpr::var(v) } else { WordExpr::inv(&WordExpr::var(v)) })
                .collect();
            out.push(Witness { expr: WordExpr::product(&parts), value: value.clone(), letters: letters.clone() });
        }
        level = next;
    }
    out
}

fn exhausted(what: &str, size: usize) -> TestWordError {
    TestWordError::SearchExhausted { what: what.into(), tried: format!("free words of size <= {size}") }
}

/// Finds `w`, `u₁`, `u₂`, `s` as in the construction of `x̂`; first satisfier
/// in enumeration order wins.
pub fn find_witnesses(sig: &Signature, x: &[Word], max_size: usize) -> Result<Witnesses, TestWordError> {
    let cands = free_candidates(sig, x, max_size);
    let w = cands
        .iter()
        .find(|c| !c.value.is_one() && x.iter().all(|xi| !sig.mul(xi, &c.value).is_one()))
        .ok_or_else(|| exhausted("w", max_size))?
        .clone();
    let xw: Vec<Word> = x.iter().map(|xi| sig.mul(xi, &w.value)).collect();
    let fits = |u: &Word| sig.is_hyperbolic(u) && !sig.commutes(&w.value, u) && xw.iter().all(|a| !sig.commutes(a, u));
    let u1 = cands.iter().find(|c| fits(&c.value)).ok_or_else(|| exhausted("u1", max_size))?.clone();
    let u2 = cands
        .iter()
        .find(|c| fits(&c.value) && !sig.commutes(&u1.value, &c.value))
        .ok_or_else(|| exhausted("u2", max_size))?
        .clone();
    let dotted = dotted_values(sig, &xw, &w.value, &u1.value, &u2.value);
    let s = cands
        .iter()
        .find(|c| sig.is_hyperbolic(&c.value) && dotted.iter().all(|d| !sig.commutes(d, &c.value)))
        .ok_or_else(|| exhausted("s", max_size))?
        .clone();
    Ok(Witnesses { w, u1, u2, s })
}

/// `(ẋ₀₁, ẋ₀₂, …, [w,u₁], [w,u₂], u₁, u₂)` with `ẋ_{ij} = [x_i w, u_j]`.
fn dotted_values(sig: &Signature, xw: &[Word], w: &Word, u1: &Word, u2: &Word) -> Vec<Word> {
    let mut out = Vec::with_capacity(2 * xw.len() + 4);
    for a in xw {
        out.push(sig.comm(a, u1));
        out.push(sig.comm(a, u2));
    }
    out.extend([sig.comm(w, u1), sig.comm(w, u2), u1.clone(), u2.clone()]);
    out
}

/// Inserts `s` between neighbours of `dotted`, except between the last two.
pub fn build_x_hat<T: Clone>(dotted: &[T], s: &T) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * dotted.len());
    for (idx, d) in dotted.iter().enumerate() {
        out.push(d.clone());
        if idx + 2 < dotted.len() {
            out.push(s.clone());
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct MWords {
    pub witnesses: Witnesses,
    pub x_hat: Vec<Word>,
    /// Free words `f` with `f(x̄)` equal to the entries of `x̂`.
    pub x_hat_exprs: Vec<WordExpr>,
    pub p: PWords,
    pub m: WordExpr,
    pub m_prime: WordExpr,
    pub m_double: WordExpr,
}

impl MWords {
    pub fn manifest(&self) -> Vec<(String, Constant)> {
        self.p.manifest().into_iter().map(|(k, c)| (format!("P.{k}"), c)).collect()
    }
}

pub fn m_words(sig: &Signature, x: &[Word], opts: &BuildOptions) -> Result<MWords, TestWordError> {
    let n = x.len();
    if n == 0 {
        return Err(TestWordError::BadArity { expected: 1, given: 0 });
    }
    let witnesses = find_witnesses(sig, x, opts.witness_size)?;
    let Witnesses { w, u1, u2, s } = &witnesses;
    let xw: Vec<Word> = x.iter().map(|xi| sig.mul(xi, &w.value)).collect();
    let dotted = dotted_values(sig, &xw, &w.value, &u1.value, &u2.value);
    let x_hat = build_x_hat(&dotted, &s.value);
    check_chain(sig, &x_hat).map_err(|e| TestWordError::PropertyViolated(format!("x-hat tuple: {e}")))?;

    let mut dotted_exprs = Vec::with_capacity(dotted.len());
    for i in 0..n {
        let zw = WordExpr::mul(&WordExpr::var(i as u32), &w.expr);
        dotted_exprs.push(WordExpr::comm(&zw, &u1.expr));
        dotted_exprs.push(WordExpr::comm(&zw, &u2.expr));
    }
    dotted_exprs.extend([
        WordExpr::comm(&w.expr, &u1.expr),
        WordExpr::comm(&w.expr, &u2.expr),
        u1.expr.clone(),
        u2.expr.clone(),
    ]);
    let x_hat_exprs = build_x_hat(&dotted_exprs, &s.expr);

    let xs: Vec<Option<Word>> = x_hat.iter().cloned().map(Some).collect();
    let p = p_words_partial(sig, &xs, opts)?;
    let m = p.p.substitute(&x_hat_exprs)?;
    let m_prime = p.p_prime.substitute(&x_hat_exprs)?;
    let m_double = p.p_double.substitute(&x_hat_exprs)?;
    Ok(MWords { witnesses, x_hat, x_hat_exprs, p, m, m_prime, m_double })
}
