//! The nested words `T_{x̄[j,i]}` and the mirrored pair `T′`, `T″`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::groups::Signature;
use crate::slp::WordExpr;
use crate::words::Word;

use super::axis::{kappa_data, l2, l2_vars};
use super::ewords::check_chain;
use super::{BuildOptions, Constant, TestWordError};

/// `T_{x̄[j,i]}` for `1 ≤ j ≤ depth`, `0 ≤ i ≤ n − j`, over the variables
/// `z₀,…,z_{n−1}`, with the constants `m_{j,i}` and the values
/// `X_{j,i} = T_{x̄[j,i]}(x̄)` that fit the budget.
#[derive(Clone, Debug)]
pub struct TWordFamily {
    pub n: usize,
    pub depth: usize,
    pub base: Vec<Option<Word>>,
    pub exprs: BTreeMap<(usize, usize), WordExpr>,
    pub constants: BTreeMap<(usize, usize), Constant>,
    pub values: BTreeMap<(usize, usize), Word>,
    /// Pairs `(j, i)` at which hyperbolicity of `X_{j,i}` and noncommutation of
    /// `X_{j−1,i}`, `X_{j−1,i+1}` were checked.
    pub e1_checked: Vec<(usize, usize)>,
}

impl TWordFamily {
    pub fn expr(&self, j: usize, i: usize) -> &WordExpr {
        &self.exprs[&(j, i)]
    }

    /// `T_{x̄[depth,0]}`; for a full family this is `T_x̄`.
    pub fn top(&self) -> &WordExpr {
        self.expr(self.depth, 0)
    }

    pub fn value(&self, j: usize, i: usize) -> Option<&Word> {
        self.values.get(&(j, i))
    }

    pub fn constant(&self, j: usize, i: usize) -> Option<&Constant> {
        self.constants.get(&(j, i))
    }

    pub fn all_certified(&self) -> bool {
        self.constants.values().all(Constant::is_certified)
    }

    pub fn manifest(&self, prefix: &str) -> Vec<(String, Constant)> {
        self.constants.iter().map(|(&(j, i), c)| (format!("{prefix}m_{j},{i}"), c.clone())).collect()
    }
}

fn unresolved(why: &str) -> Constant {
    Constant::unresolved(why)
}

/// Builds the family over a tuple whose entries may be unknown; constants
/// that need unknown or oversized operands become placeholders.
pub fn t_words_partial(
    sig: &Signature,
    base: &[Option<Word>],
    depth: usize,
    opts: &BuildOptions,
) -> Result<TWordFamily, TestWordError> {
    let n = base.len();
    if n < 2 || depth < 1 || depth > n {
        return Err(TestWordError::BadArity { expected: n.max(2), given: depth });
    }
    let mut fam = TWordFamily {
        n,
        depth,
        base: base.to_vec(),
        exprs: BTreeMap::new(),
        constants: BTreeMap::new(),
        values: BTreeMap::new(),
        e1_checked: Vec::new(),
    };
    // Whether every constant inside T_{j,i} is certified.
    let mut sound: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for (i, b) in base.iter().enumerate() {
        fam.exprs.insert((1, i), WordExpr::var(i as u32));
        sound.insert((1, i), true);
        if let Some(w) = b {
            fam.values.insert((1, i), w.clone());
        }
    }
    let base_lengths: Option<Vec<u64>> = base.iter().map(|b| b.as_ref().map(|w| w.len() as u64)).collect();

    for j in 2..=depth {
        for i in 0..=n - j {
            let prev = if i == 0 { None } else { Some(fam.constants[&(j, i - 1)].clone()) };
            let m = choose_m(sig, &fam, &sound, base_lengths.as_deref(), j, i, prev.as_ref(), opts)?;

            let left = fam.expr(j - 1, i).clone();
            let left = match &prev {
                Some(c) => WordExpr::pow(&left, c.as_exponent()),
                None => left,
            };
            let right = WordExpr::pow(fam.expr(j - 1, i + 1), m.as_exponent());
            fam.exprs.insert((j, i), l2(&left, &right));
            let ok = m.is_certified()
                && prev.as_ref().is_none_or(Constant::is_certified)
                && sound[&(j - 1, i)]
                && sound[&(j - 1, i + 1)];
            sound.insert((j, i), ok);

            if ok {
                if let (Some(a), Some(b)) = (fam.value(j - 1, i), fam.value(j - 1, i + 1)) {
                    let pa = prev.as_ref().map_or(1, Constant::as_exponent);
                    let bound = 2 * (sig.pow_len(a, 10 * pa) + sig.pow_len(b, 10 * m.as_exponent()));
                    if bound <= opts.budget {
                        let args = [sig.pow(a, pa), sig.pow(b, m.as_exponent())];
                        match l2_vars().evaluate(sig, &args, opts.budget) {
                            Ok(v) => {
                                if !sig.is_hyperbolic(&v) {
                                    return Err(TestWordError::PropertyViolated(format!(
                                        "X_{j},{i} is not hyperbolic"
                                    )));
                                }
                                if sig.commutes(a, b) {
                                    return Err(TestWordError::PropertyViolated(format!(
                                        "X_{},{} and X_{},{} commute",
                                        j - 1,
                                        i,
                                        j - 1,
                                        i + 1
                                    )));
                                }
                                fam.e1_checked.push((j, i));
                                fam.values.insert((j, i), v);
                            }
                            Err(crate::slp::SlpError::BudgetExceeded { .. }) => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                }
            }
            fam.constants.insert((j, i), m);
        }
    }
    Ok(fam)
}

#[allow(clippy::too_many_arguments)]
fn choose_m(
    sig: &Signature,
    fam: &TWordFamily,
    sound: &BTreeMap<(usize, usize), bool>,
    base_lengths: Option<&[u64]>,
    j: usize,
    i: usize,
    prev: Option<&Constant>,
    opts: &BuildOptions,
) -> Result<Constant, TestWordError> {
    if prev.is_some_and(|c| !c.is_certified()) {
        return Ok(unresolved("previous constant unresolved"));
    }
    let (Some(a), Some(b)) = (fam.value(j - 1, i), fam.value(j - 1, i + 1)) else {
        return Ok(unresolved("operands not evaluated"));
    };
    let n_arg = if i == 0 {
        1
    } else if let Some(v) = fam.value(j, i - 1) {
        v.len() as u64
    } else if let (true, Some(lens)) = (sound[&(j, i - 1)], base_lengths) {
        // |X_{j,i−1}| is out of reach; a larger N still certifies the constant.
        match fam.expr(j, i - 1).length_upper_bound(lens).to_u64() {
            Some(b) => b,
            None => return Ok(unresolved("length bound overflows")),
        }
    } else {
        return Ok(unresolved("length of the left neighbour unknown"));
    };
    let x1 = match prev {
        Some(c) => {
            let len = sig.pow_len(a, c.as_exponent());
            if len > opts.budget {
                return Ok(unresolved(format!("operand needs {len} syllables").as_str()));
            }
            sig.pow(a, c.as_exponent())
        }
        None => a.clone(),
    };
    match kappa_data(sig, n_arg, &x1, b, opts.kappa()) {
        Ok(d) => Ok(Constant::certified(d.k)),
        Err(e @ (TestWordError::BudgetExceeded { .. } | TestWordError::SearchExhausted { .. })) => {
            Ok(unresolved(&e.to_string()))
        }
        Err(e) => Err(e),
    }
}

/// The family `T_{x̄[j,i]}` for `j ≤ n`, with constants chosen by `κ`.
pub fn t_words(sig: &Signature, x: &[Word], opts: &BuildOptions) -> Result<TWordFamily, TestWordError> {
    check_chain(sig, x)?;
    let base: Vec<Option<Word>> = x.iter().cloned().map(Some).collect();
    t_words_partial(sig, &base, x.len(), opts)
}

/// `(x₀,…,x_{n−1},x_{n−2},…,x₀)`.
pub fn mirror_tuple<T: Clone>(x: &[T]) -> Vec<T> {
    let mut v = x.to_vec();
    v.extend(x.iter().rev().skip(1).cloned());
    v
}

/// `T′ = T_{x̂[2n−2,0]}` and `T″ = T_{x̂[2n−2,1]}` over the mirrored tuple,
/// with position `p` read as `z_p` for `p < n` and `z_{2n−2−p}` beyond.
#[derive(Clone, Debug)]
pub struct TPrimeFamily {
    pub mirror: TWordFamily,
    pub t_prime: WordExpr,
    pub t_double: WordExpr,
}

pub(crate) fn t_prime_partial(
    sig: &Signature,
    base: &[Option<Word>],
    opts: &BuildOptions,
) -> Result<TPrimeFamily, TestWordError> {
    let n = base.len();
    if n < 2 {
        return Err(TestWordError::BadArity { expected: 2, given: n });
    }
    let hat = mirror_tuple(base);
    let mirror = t_words_partial(sig, &hat, 2 * n - 2, opts)?;
    let args: Vec<WordExpr> =
        (0..2 * n - 1).map(|p| WordExpr::var(if p < n { p } else { 2 * n - 2 - p } as u32)).collect();
    let t_prime = mirror.expr(2 * n - 2, 0).substitute(&args)?;
    let t_double = mirror.expr(2 * n - 2, 1).substitute(&args)?;
    Ok(TPrimeFamily { mirror, t_prime, t_double })
}

pub fn t_prime_words(sig: &Signature, x: &[Word], opts: &BuildOptions) -> Result<TPrimeFamily, TestWordError> {
    check_chain(sig, x)?;
    let base: Vec<Option<Word>> = x.iter().cloned().map(Some).collect();
    t_prime_partial(sig, &base, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk() -> (Signature, Vec<Word>) {
        let sig = Signature::cyclic(&[2, 3]).unwrap();
        let x = vec![sig.parse_word("a b").unwrap(), sig.parse_word("a b^2").unwrap()];
        (sig, x)
    }

    #[test]
    fn base_case_shape() {
        let (sig, x) = desk();
        let fam = t_words(&sig, &x, &BuildOptions::default()).unwrap();
        let m = fam.constant(2, 0).unwrap();
        assert!(m.is_certified());
        let expected = l2(&WordExpr::var(0), &WordExpr::pow(&WordExpr::var(1), m.as_exponent()));
        assert_eq!(fam.top(), &expected);
        assert!(fam.top().exponent_sums_vanish());
        assert!(fam.value(2, 0).is_some());
        assert_eq!(fam.e1_checked, vec![(2, 0)]);
    }

    #[test]
    fn commuting_pair_collapses() {
        let (sig, x) = desk();
        let fam = t_words(&sig, &x, &BuildOptions::default()).unwrap();
        let y = [x[0].clone(), sig.pow(&x[0], 2)];
        assert!(fam.top().evaluate(&sig, &y, 1 << 22).unwrap().is_one());
    }

    #[test]
    fn mirror_layout() {
        assert_eq!(mirror_tuple(&[0, 1, 2]), vec![0, 1, 2, 1, 0]);
        assert_eq!(mirror_tuple(&[0, 1]), vec![0, 1, 0]);
    }

    #[test]
    fn primes_have_zero_exponent_sums() {
        let (sig, x) = desk();
        let tp = t_prime_words(&sig, &x, &BuildOptions::with_budget(200_000)).unwrap();
        assert!(tp.t_prime.exponent_sums_vanish());
        assert!(tp.t_double.exponent_sums_vanish());
        assert_eq!(tp.t_prime.num_vars(), 2);
    }

    #[test]
    fn rejects_bad_tuples() {
        let (sig, x) = desk();
        let bad = [x[0].clone(), sig.pow(&x[0], 3)];
        assert!(matches!(t_words(&sig, &bad, &BuildOptions::default()), Err(TestWordError::CommutingPair(_))));
        let ell = [sig.parse_word("a").unwrap(), x[0].clone()];
        assert!(matches!(t_words(&sig, &ell, &BuildOptions::default()), Err(TestWordError::NotHyperbolic(_))));
    }
}
