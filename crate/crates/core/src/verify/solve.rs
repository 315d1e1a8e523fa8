//! Brute-force solving of systems `w_i(z̄) = h_i` and the reduction of such a
//! system to a single `M`-equation.

use rand::Rng;

use crate::groups::Signature;
use crate::slp::WordExpr;
use crate::testwords::{m_words, BuildOptions};
use crate::words::Word;

use super::enumerate::enumerate_words;
use super::quotient::Quotient;
use super::report::{run_check, timed, Outcome, SuiteReport};
use super::sampling::{noncommuting_pair, random_word_upto};

/// Budget for evaluating a candidate assignment; the words involved are short.
const CANDIDATE_BUDGET: usize = 1 << 16;
/// Largest assignment space the demo suite enumerates.
const SEARCH_SPACE: usize = 200_000;

fn num_vars(system: &[(WordExpr, Word)]) -> usize {
    system.iter().map(|(e, _)| e.num_vars()).max().unwrap_or(0)
}

fn satisfies(sig: &Signature, system: &[(WordExpr, Word)], z: &[Word]) -> bool {
    system.iter().all(|(e, h)| e.evaluate(sig, z, CANDIDATE_BUDGET).is_ok_and(|v| v == *h))
}

/// First assignment in lexicographic order over `enumerate_words(max_len)`
/// satisfying every equation, if any.
pub fn solve_equation_system(sig: &Signature, system: &[(WordExpr, Word)], max_len: usize) -> Option<Vec<Word>> {
    let n = num_vars(system);
    let words: Vec<Word> = enumerate_words(sig, max_len).collect();
    let mut idx = vec![0usize; n];
    loop {
        let z: Vec<Word> = idx.iter().map(|&i| words[i].clone()).collect();
        if satisfies(sig, system, &z) {
            return Some(z);
        }
        // Odometer step; the last variable moves fastest.
        let mut p = n;
        loop {
            if p == 0 {
                return None;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < words.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// `M(w_0(z̄), …, w_{n−1}(z̄), ż₁, z̈₂)` over `z̄` followed by the two new
/// variables, where `M` is built for `(h_0, …, h_{n−1}, u₁, u₂)`. Returns the
/// left side and `M` itself.
pub fn m_equation(
    sig: &Signature,
    system: &[(WordExpr, Word)],
    u: (&Word, &Word),
    opts: &BuildOptions,
) -> Result<(WordExpr, WordExpr), crate::testwords::TestWordError> {
    let v = num_vars(system) as u32;
    let mut x: Vec<Word> = system.iter().map(|(_, h)| h.clone()).collect();
    x.extend([u.0.clone(), u.1.clone()]);
    let mw = m_words(sig, &x, opts)?;
    let mut args: Vec<WordExpr> = system.iter().map(|(e, _)| e.clone()).collect();
    args.extend([WordExpr::var(v), WordExpr::var(v + 1)]);
    Ok((mw.m.substitute(&args)?, mw.m))
}

/// A random free word in `vars` variables with `1..=size` letters.
fn random_free_word<R: Rng>(rng: &mut R, vars: u32, size: usize) -> WordExpr {
    let len = rng.gen_range(1..=size);
    let parts: Vec<WordExpr> = (0..len)
        .map(|_| {
            let z = WordExpr::var(rng.gen_range(0..vars));
            match rng.gen_range(0..3) {
                0 => WordExpr::inv(&z),
                1 => WordExpr::pow(&z, 2),
                _ => z,
            }
        })
        .collect();
    WordExpr::product(&parts)
}

/// Planted systems with their solution.
fn planted_system<R: Rng>(sig: &Signature, rng: &mut R, vars: u32) -> (Vec<(WordExpr, Word)>, Vec<Word>) {
    let z: Vec<Word> = (0..vars).map(|_| random_word_upto(sig, rng, 3)).collect();
    let eqs = rng.gen_range(1..=3);
    let mut system: Vec<(WordExpr, Word)> = (0..eqs)
        .map(|_| {
            let e = random_free_word(rng, vars, 3);
            let h = e.evaluate(sig, &z, CANDIDATE_BUDGET).expect("short words");
            (e, h)
        })
        .collect();
    // Every variable appears somewhere, so the arity is `vars`.
    let last = WordExpr::var(vars - 1);
    let h = last.evaluate(sig, &z, CANDIDATE_BUDGET).expect("short words");
    if system.iter().all(|(e, _)| e.num_vars() < vars as usize) {
        system.push((last, h));
    }
    (system, z)
}

fn show_system(system: &[(WordExpr, Word)]) -> String {
    system.iter().map(|(e, h)| format!("{e} = {h}")).collect::<Vec<_>>().join("; ")
}

/// Planted solvable systems, the unsolvable `z₀² = a` when `a` has order 2
/// and no square root, and the single-equation reduction on small instances.
pub fn solve_suite(sig: &Signature, samples: u64, seed: u64, max_len: usize, budget: usize) -> SuiteReport {
    timed("solve-demo", &sig.to_string(), seed, |r| {
        let space = enumerate_words(sig, max_len).count();
        let max_vars = if space.saturating_mul(space) <= SEARCH_SPACE { 2 } else { 1 };
        r.push(run_check("planted", samples, seed, |_, rng| {
            let vars = rng.gen_range(1..=max_vars);
            let (system, z) = planted_system(sig, rng, vars);
            let inputs = show_system(&system);
            let planted = z.iter().map(Word::to_string).collect::<Vec<_>>().join(", ");
            match solve_equation_system(sig, &system, max_len.max(3)) {
                Some(found) if satisfies(sig, &system, &found) => Outcome::Pass,
                Some(found) => {
                    Outcome::fail(&[&inputs, &planted], format!("{found:?}"), "an assignment satisfying every equation")
                }
                None => Outcome::fail(&[&inputs, &planted], "no solution", "a solution (one is planted)"),
            }
        }));
        if let Some(a) = nonsquare_involution(sig) {
            let sq = WordExpr::pow(&WordExpr::var(0), 2);
            let found = solve_equation_system(sig, &[(sq, a.clone())], max_len);
            let ok = found.is_none();
            r.push(run_check("nonsquare", 1, seed, |_, _| {
                Outcome::check(ok, || Outcome::fail(&[&a], format!("{found:?}"), "no solution"))
            }));
        } else {
            r.notes.push("no factor has an involution to plant z0^2 = a".into());
        }
        let m_trials = samples.min(3);
        r.push(run_check("M-reduction", m_trials, seed, |_, rng| {
            let (system, z) = planted_system(sig, rng, 1);
            let Some((u1, u2)) = noncommuting_pair(sig, rng, 3) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let opts = BuildOptions { budget, ..BuildOptions::default() };
            let (lhs, m) = match m_equation(sig, &system, (&u1, &u2), &opts) {
                Ok(p) => p,
                Err(e) => return Outcome::vacuous(format!("M not built: {e}")),
            };
            let inputs = show_system(&system);
            if !lhs.exponent_sums_vanish() {
                return Outcome::fail(&[&inputs], "nonzero exponent sums", "lhs in the commutator subgroup");
            }
            let mut x: Vec<Word> = system.iter().map(|(_, h)| h.clone()).collect();
            x.extend([u1.clone(), u2.clone()]);
            let mut zu = z.clone();
            zu.extend([u1.clone(), u2.clone()]);
            for _ in 0..4 {
                let q = Quotient::random(sig, rng, (8, 24));
                let at_z: Vec<_> = zu.iter().map(|w| q.image(w)).collect();
                let at_x: Vec<_> = x.iter().map(|w| q.image(w)).collect();
                let (Ok(l), Ok(rhs)) = (lhs.evaluate_in(&q.group, &at_z), m.evaluate_in(&q.group, &at_x)) else {
                    return Outcome::fail(&[&inputs], "evaluation error", "both sides evaluate");
                };
                if l != rhs {
                    return Outcome::fail(
                        &[&inputs, &u1, &u2],
                        "sides differ in a quotient",
                        "planted solution satisfies the M-equation",
                    );
                }
            }
            Outcome::Pass
        }));
        r.notes
            .push(format!("assignments drawn from {space} words of length <= {max_len}; up to {max_vars} variables"));
    })
}

/// A syllable `a` of order 2 that is not a square inside its factor; then
/// `z² = a` has no solution in the free product.
fn nonsquare_involution(sig: &Signature) -> Option<Word> {
    for (i, f) in sig.factors().iter().enumerate() {
        for a in 1..f.order() as u32 {
            if f.elem_order(a) == 2 && (0..f.order() as u32).all(|g| f.mul(g, g) != a) {
                let name = sig.factor_name(i)?;
                return sig.parse_word(&format!("{name}^{a}")).ok();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z23() -> Signature {
        Signature::parse("Z2*Z3").unwrap()
    }

    #[test]
    fn single_variable_identity() {
        let sig = z23();
        let h = sig.parse_word("a b a").unwrap();
        assert_eq!(solve_equation_system(&sig, &[(WordExpr::var(0), h.clone())], 3), Some(vec![h]));
    }

    #[test]
    fn square_root_of_ab_squared() {
        let sig = z23();
        let rhs = sig.pow(&sig.parse_word("a b").unwrap(), 2);
        let z = solve_equation_system(&sig, &[(WordExpr::pow(&WordExpr::var(0), 2), rhs.clone())], 2).unwrap();
        assert_eq!(sig.pow(&z[0], 2), rhs);
    }

    #[test]
    fn a_is_not_a_square() {
        let sig = z23();
        let a = sig.parse_word("a").unwrap();
        assert_eq!(nonsquare_involution(&sig), Some(a.clone()));
        assert_eq!(solve_equation_system(&sig, &[(WordExpr::pow(&WordExpr::var(0), 2), a)], 4), None);
    }

    #[test]
    fn suite_passes() {
        let r = solve_suite(&z23(), 10, 2, 4, 50_000);
        assert!(r.passed(), "{r}");
        assert_eq!(r.check("nonsquare").unwrap().passed, 1);
    }
}
