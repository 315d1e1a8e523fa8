//! Iterated commutators `E_n`, `E_k̄` and the words `J_k̄`, plus the growth
//! searches that fix `k̄` and `k̂̄`.

use crate::groups::Signature;
use crate::slp::WordExpr;
use crate::words::Word;

use super::{BuildOptions, Constant, TestWordError};

/// `E₂ = [z₀², z₁²]`, `E_n = [E_{n−1}², z_{n−1}²]`, over the given operands.
pub fn e_n(exprs: &[WordExpr]) -> Result<WordExpr, TestWordError> {
    if exprs.len() < 2 {
        return Err(TestWordError::BadArity { expected: 2, given: exprs.len() });
    }
    let mut e = exprs[0].clone();
    for z in &exprs[1..] {
        e = WordExpr::comm(&WordExpr::pow(&e, 2), &WordExpr::pow(z, 2));
    }
    Ok(e)
}

fn positive(k: &[u64]) -> Result<(), TestWordError> {
    if k.contains(&0) {
        return Err(TestWordError::PropertyViolated("exponent constants must be positive".into()));
    }
    Ok(())
}

/// `E_{k̄[n,0]}(z₀,…,z_{n−1})`: `z₀^{k₀}` for `n = 1`, then
/// `[E_{k̄[j−1,0]}², z_{j−1}^{2k_{j−1}}]`.
pub fn e_k(k: &[u64], n: usize) -> Result<WordExpr, TestWordError> {
    if n == 0 || k.len() != n {
        return Err(TestWordError::BadArity { expected: n.max(1), given: k.len() });
    }
    positive(k)?;
    let mut e = WordExpr::pow(&WordExpr::var(0), k[0] as i64);
    for (j, &kj) in k.iter().enumerate().skip(1) {
        e = WordExpr::comm(&WordExpr::pow(&e, 2), &WordExpr::pow(&WordExpr::var(j as u32), 2 * kj as i64));
    }
    Ok(e)
}

/// `J_k̄(z₀,…,z_n) = [E_{k̄[n,0]}^{2m₂}, z_n²]` with `k̄ = (k₀,…,k_{n−2}, m₁, m₂)`.
pub fn j_k(k: &[u64], n: usize) -> Result<WordExpr, TestWordError> {
    if n < 2 || k.len() != n + 1 {
        return Err(TestWordError::BadArity { expected: n + 1, given: k.len() });
    }
    positive(k)?;
    let e = e_k(&k[..n], n)?;
    Ok(WordExpr::comm(&WordExpr::pow(&e, 2 * k[n] as i64), &WordExpr::pow(&WordExpr::var(n as u32), 2)))
}

fn comm_checked(sig: &Signature, a: &Word, b: &Word, budget: usize, what: &str) -> Result<Word, TestWordError> {
    let length = 2 * (a.len() + b.len());
    if length > budget {
        return Err(TestWordError::BudgetExceeded { what: what.into(), length, budget });
    }
    Ok(sig.comm(a, b))
}

fn pow_checked(sig: &Signature, a: &Word, e: i64, budget: usize, what: &str) -> Result<Word, TestWordError> {
    let length = sig.pow_len(a, e);
    if length > budget {
        return Err(TestWordError::BudgetExceeded { what: what.into(), length, budget });
    }
    Ok(sig.pow(a, e))
}

/// The values `E_{k̄[j,0]}(x₀,…,x_{j−1})` for `j = 1,…,|k̄|`.
pub fn e_k_values(sig: &Signature, x: &[Word], k: &[u64], budget: usize) -> Result<Vec<Word>, TestWordError> {
    if k.is_empty() || x.len() < k.len() {
        return Err(TestWordError::BadArity { expected: k.len().max(1), given: x.len() });
    }
    positive(k)?;
    let mut out = vec![pow_checked(sig, &x[0], k[0] as i64, budget, "E[1,0]")?];
    for j in 1..k.len() {
        let what = format!("E[{},0]", j + 1);
        let prev = pow_checked(sig, &out[j - 1], 2, budget, &what)?;
        let z = pow_checked(sig, &x[j], 2 * k[j] as i64, budget, &what)?;
        out.push(comm_checked(sig, &prev, &z, budget, &what)?);
    }
    Ok(out)
}

fn e_top(sig: &Signature, x: &[Word], k: &[u64], budget: usize) -> Result<Word, TestWordError> {
    Ok(e_k_values(sig, x, k, budget)?.pop().expect("nonempty"))
}

/// `J_k̄(x₀,…,x_{n−1}, y)` given the value `E = E_{k̄[n,0]}(x̄)`.
fn j_value(sig: &Signature, e: &Word, m2: u64, y: &Word, budget: usize) -> Result<Word, TestWordError> {
    let p = pow_checked(sig, e, 2 * m2 as i64, budget, "J")?;
    let y2 = sig.pow(y, 2);
    comm_checked(sig, &p, &y2, budget, "J")
}

fn rad(sig: &Signature, w: &Word) -> Option<usize> {
    sig.radical_length(w).ok()
}

/// The constants of the two tuples `k̄ = (k₀,…,k_{n−2}, m₁, m₂)` and
/// `k̂̄ = (k₀,…,k_{n−2}, m̂₁, m̂₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JConstants {
    pub ks: Vec<Constant>,
    pub m1: Constant,
    pub m2: Constant,
    pub m1_hat: Constant,
    pub m2_hat: Constant,
}

impl JConstants {
    fn unresolved(n: usize, why: &str) -> Self {
        let u = || Constant::unresolved(why);
        Self { ks: (0..n - 1).map(|_| u()).collect(), m1: u(), m2: u(), m1_hat: u(), m2_hat: u() }
    }

    pub fn k_tuple(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.ks.iter().map(|c| c.value).collect();
        v.extend([self.m1.value, self.m2.value]);
        v
    }

    pub fn k_hat_tuple(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.ks.iter().map(|c| c.value).collect();
        v.extend([self.m1_hat.value, self.m2_hat.value]);
        v
    }

    pub fn all_certified(&self) -> bool {
        self.ks.iter().chain([&self.m1, &self.m2, &self.m1_hat, &self.m2_hat]).all(Constant::is_certified)
    }

    pub fn manifest(&self) -> Vec<(String, Constant)> {
        let mut out: Vec<(String, Constant)> =
            self.ks.iter().enumerate().map(|(i, c)| (format!("k{i}"), c.clone())).collect();
        out.push(("m1".into(), self.m1.clone()));
        out.push(("m2".into(), self.m2.clone()));
        out.push(("m1_hat".into(), self.m1_hat.clone()));
        out.push(("m2_hat".into(), self.m2_hat.clone()));
        out
    }
}

pub(crate) fn check_chain(sig: &Signature, x: &[Word]) -> Result<(), TestWordError> {
    for w in x {
        if !sig.is_hyperbolic(w) {
            return Err(TestWordError::NotHyperbolic(w.to_string()));
        }
    }
    for p in x.windows(2) {
        if sig.commutes(&p[0], &p[1]) {
            return Err(TestWordError::CommutingPair(format!("{}, {}", p[0], p[1])));
        }
    }
    Ok(())
}

/// Smallest `t ∈ 1..=cap` accepted by `pred`.
fn first_t(
    cap: u64,
    what: &str,
    mut pred: impl FnMut(u64) -> Result<bool, TestWordError>,
) -> Result<u64, TestWordError> {
    for t in 1..=cap {
        if pred(t)? {
            return Ok(t);
        }
    }
    Err(TestWordError::SearchExhausted { what: what.into(), tried: format!("1..={cap}") })
}

/// Runs the growth searches, certifying as many constants as the budget
/// allows. The error, if any, is the one that stopped the search; every
/// constant after that point is a placeholder.
pub(crate) fn choose_j_constants_partial(
    sig: &Signature,
    x: &[Option<Word>],
    opts: &BuildOptions,
) -> Result<(JConstants, Option<TestWordError>), TestWordError> {
    let n = x.len();
    if n < 2 {
        return Err(TestWordError::BadArity { expected: 2, given: n });
    }
    let Some(x) = x.iter().cloned().collect::<Option<Vec<Word>>>() else {
        return Ok((JConstants::unresolved(n, "tuple not evaluated"), None));
    };
    check_chain(sig, &x)?;
    let mut out = JConstants::unresolved(n, "search stopped earlier");
    match search(sig, &x, opts, &mut out) {
        Ok(()) => Ok((out, None)),
        Err(e) => {
            let why = e.to_string();
            for c in out.ks.iter_mut().chain([&mut out.m1, &mut out.m2, &mut out.m1_hat, &mut out.m2_hat]) {
                if !c.is_certified() {
                    *c = Constant::unresolved(why.clone());
                }
            }
            Ok((out, Some(e)))
        }
    }
}

fn search(sig: &Signature, x: &[Word], opts: &BuildOptions, out: &mut JConstants) -> Result<(), TestWordError> {
    let n = x.len();
    let budget = opts.budget;
    let cap = opts.search_cap;
    let mut ks = vec![1u64];
    out.ks[0] = Constant::certified(1);
    for j in 2..n {
        let target = rad(sig, &x[j]).expect("hyperbolic");
        let t = first_t(cap, &format!("k{}", j - 1), |t| {
            let mut kk = ks.clone();
            kk.push(t);
            Ok(rad(sig, &e_top(sig, x, &kk, budget)?).is_some_and(|r| r > target))
        })?;
        ks.push(t);
        out.ks[j - 1] = Constant::certified(t);
    }
    let with = |t: u64| {
        let mut kk = ks.clone();
        kk.push(t);
        kk
    };
    let big_m = x.iter().map(|w| rad(sig, w).expect("hyperbolic")).max().unwrap_or(0);
    let m1 = first_t(cap, "m1", |t| Ok(rad(sig, &e_top(sig, x, &with(t), budget)?).is_some_and(|r| r > big_m)))?;
    out.m1 = Constant::certified(m1);
    let e = e_top(sig, x, &with(m1), budget)?;
    let re = rad(sig, &e).expect("checked");
    let m1h = first_t(cap, "m1_hat", |t| Ok(rad(sig, &e_top(sig, x, &with(t), budget)?).is_some_and(|r| r > re)))?;
    out.m1_hat = Constant::certified(m1h);
    let e_hat = e_top(sig, x, &with(m1h), budget)?;
    let re_hat = rad(sig, &e_hat).expect("checked");

    let j_rads = |e: &Word, m2: u64| -> Result<Option<Vec<usize>>, TestWordError> {
        let mut v = Vec::with_capacity(n);
        for xi in x {
            match rad(sig, &j_value(sig, e, m2, xi, budget)?) {
                Some(r) => v.push(r),
                None => return Ok(None),
            }
        }
        Ok(Some(v))
    };
    let m2 = first_t(cap, "m2", |t| Ok(j_rads(&e, t)?.is_some_and(|v| v.iter().all(|&r| r > re_hat))))?;
    out.m2 = Constant::certified(m2);
    let max_j = j_rads(&e, m2)?.expect("checked").into_iter().max().unwrap_or(0);
    let m2h = first_t(cap, "m2_hat", |t| Ok(j_rads(&e_hat, t)?.is_some_and(|v| v.iter().all(|&r| r > max_j))))?;
    out.m2_hat = Constant::certified(m2h);
    Ok(())
}

/// Rechecks `min_i |J_k̄(x̄,xᵢ)|_r > |Ê|_r > |E|_r > max_i |xᵢ|_r` and
/// `min_i |J_k̂̄(x̄,xᵢ)|_r > max_i |J_k̄(x̄,xᵢ)|_r` on the given tuples.
pub fn verify_j_constants(
    sig: &Signature,
    x: &[Word],
    k: &[u64],
    k_hat: &[u64],
    budget: usize,
) -> Result<bool, TestWordError> {
    let n = x.len();
    let e = e_top(sig, x, &k[..n], budget)?;
    let e_hat = e_top(sig, x, &k_hat[..n], budget)?;
    let (Some(re), Some(re_hat)) = (rad(sig, &e), rad(sig, &e_hat)) else {
        return Ok(false);
    };
    let big_m = x.iter().filter_map(|w| rad(sig, w)).max().unwrap_or(0);
    let mut jr = Vec::new();
    let mut jr_hat = Vec::new();
    for xi in x {
        let (Some(a), Some(b)) =
            (rad(sig, &j_value(sig, &e, k[n], xi, budget)?), rad(sig, &j_value(sig, &e_hat, k_hat[n], xi, budget)?))
        else {
            return Ok(false);
        };
        jr.push(a);
        jr_hat.push(b);
    }
    let min_j = *jr.iter().min().expect("n >= 2");
    let max_j = *jr.iter().max().expect("n >= 2");
    Ok(min_j > re_hat && re_hat > re && re > big_m && *jr_hat.iter().min().expect("n >= 2") > max_j)
}

/// Both tuples, with every defining inequality certified.
pub fn choose_j_constants(sig: &Signature, x: &[Word], opts: &BuildOptions) -> Result<JConstants, TestWordError> {
    let xs: Vec<Option<Word>> = x.iter().cloned().map(Some).collect();
    let (c, err) = choose_j_constants_partial(sig, &xs, opts)?;
    if let Some(e) = err {
        return Err(e);
    }
    if !verify_j_constants(sig, x, &c.k_tuple(), &c.k_hat_tuple(), opts.budget)? {
        return Err(TestWordError::PropertyViolated("J-constant inequalities fail on recheck".into()));
    }
    Ok(c)
}

/// The values `U = E(x̄)`, `V = Ê(x̄)`, `Xᵢ = J_k̄(x̄,xᵢ)`, `X̂ᵢ = J_k̂̄(x̄,xᵢ)`
/// arranged as `(X₀, X̂₀, …, X_{n−1}, X̂_{n−1}, U, V)`.
pub(crate) fn tilde_values(
    sig: &Signature,
    x: &[Word],
    c: &JConstants,
    budget: usize,
) -> Result<Vec<Word>, TestWordError> {
    let n = x.len();
    let (k, kh) = (c.k_tuple(), c.k_hat_tuple());
    let u = e_top(sig, x, &k[..n], budget)?;
    let v = e_top(sig, x, &kh[..n], budget)?;
    let mut out = Vec::with_capacity(2 * n + 2);
    for xi in x {
        out.push(j_value(sig, &u, k[n], xi, budget)?);
        out.push(j_value(sig, &v, kh[n], xi, budget)?);
    }
    out.push(u);
    out.push(v);
    Ok(out)
}
