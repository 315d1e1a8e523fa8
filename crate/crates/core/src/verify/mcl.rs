//! Commutators of hyperbolic elements: C1–C5 and the squares in `Z2*Z2*Z2`.

use rand::Rng;

use crate::groups::Signature;
use crate::words::{Syllable, Word};

use super::report::{run_check, timed, Outcome, SuiteReport};
use super::sampling::{noncommuting_pair, random_hyperbolic, random_word_upto};

/// The proof's data for C4 with `X2` replaced by its root `f⁻¹·B∘f`.
#[derive(Clone, Debug)]
pub struct C4Threshold {
    pub b: Word,
    pub f: Word,
    pub k: usize,
    pub e1: Word,
    pub e2: Word,
    pub n_threshold: usize,
}

/// `k = ⌈|a|/|B|⌉ + 2` with `a = f X1ⁿ f⁻¹`, `E1 = Bᵏa⁻¹B⁻ᵏ`, `E2 = B⁻ᵏaBᵏ`
/// and `N = ⌈(2k + 3 + (|E1| + |E2|)/|B|)/n⌉`.
pub fn c4_threshold(sig: &Signature, x1: &Word, x2: &Word, n: usize) -> Option<C4Threshold> {
    let root = sig.centralizer_generator(x2).ok()?;
    let d = sig.hyperbolic_decompose(&root).ok()?;
    let (b, f) = (d.a, d.f);
    let a = sig.conj(&sig.pow(x1, n as i64), &sig.inv(&f));
    let k = a.len().div_ceil(b.len()) + 2;
    let bk = sig.pow(&b, k as i64);
    let bki = sig.inv(&bk);
    let e1 = sig.mul_all(&[&bk, &sig.inv(&a), &bki]);
    let e2 = sig.mul_all(&[&bki, &a, &bk]);
    let num = (2 * k + 3) * b.len() + e1.len() + e2.len();
    let n_threshold = num.div_ceil(n * b.len());
    Some(C4Threshold { b, f, k, e1, e2, n_threshold })
}

fn single_syllable_of(w: &Word, factor: u32) -> bool {
    w.len() == 1 && w.syllables()[0].factor == factor
}

fn nonabelian_factors(sig: &Signature) -> Vec<u32> {
    (0..sig.num_factors() as u32).filter(|&f| !sig.factor(f).is_abelian()).collect()
}

/// Checks `[(ab)^{k1}, (bc)^{k2}] = ((ba)^{k1}(cb)^{k2−1}c)²` in `Z2*Z2*Z2`.
pub fn observation_identity(k1: usize, k2: usize) -> Result<(Word, Word), (Word, Word)> {
    let sig = Signature::cyclic(&[2, 2, 2]).expect("valid");
    let w = |s: &str| sig.parse_word(s).expect("literal");
    let lhs = sig.comm(&sig.pow(&w("a b"), k1 as i64), &sig.pow(&w("b c"), k2 as i64));
    let inner = sig.mul_all(&[&sig.pow(&w("b a"), k1 as i64), &sig.pow(&w("c b"), k2 as i64 - 1), &w("c")]);
    let rhs = sig.pow(&inner, 2);
    if lhs == rhs {
        Ok((lhs, rhs))
    } else {
        Err((lhs, rhs))
    }
}

/// C1–C5 and the Observation identity. C1 is vacuous unless some factor is
/// nonabelian.
pub fn mcl_suite(sig: &Signature, samples: u64, seed: u64) -> SuiteReport {
    timed("mcl", &sig.to_string(), seed, |r| {
        let nonabelian = nonabelian_factors(sig);
        if nonabelian.is_empty() {
            r.notes.push("C1: every factor is abelian, so no commutator is elliptic and nontrivial".into());
        }
        r.push(run_check("C1", samples, seed, |t, rng| {
            let (x1, x2) = if t % 2 == 0 && !nonabelian.is_empty() {
                // Two noncommuting elements of one nonabelian factor, conjugated.
                let f = nonabelian[rng.gen_range(0..nonabelian.len())];
                let g = sig.factor(f);
                let ord = g.order() as u32;
                let (h1, h2) = loop {
                    let (h1, h2) = (rng.gen_range(1..ord), rng.gen_range(1..ord));
                    if g.mul(h1, h2) != g.mul(h2, h1) {
                        break (h1, h2);
                    }
                };
                let c = random_word_upto(sig, rng, 4);
                let s = |h| Word::from_reduced(vec![Syllable::new(f, h)]);
                (sig.conj(&s(h1), &c), sig.conj(&s(h2), &c))
            } else {
                (random_word_upto(sig, rng, 5), random_word_upto(sig, rng, 5))
            };
            let c = sig.comm(&x1, &x2);
            if c.is_one() || sig.is_hyperbolic(&c) {
                return Outcome::vacuous("[X1, X2] is trivial or hyperbolic");
            }
            // c = f⁻¹·s·f lies in H_a^f for the factor a of s.
            let (core, f) = sig.cyclic_reduce(&c);
            let factor = core.syllables()[0].factor;
            let fi = sig.inv(&f);
            let ok = [&x1, &x2].iter().all(|x| single_syllable_of(&sig.conj(x, &fi), factor));
            Outcome::check(ok, || {
                Outcome::fail(&[&x1, &x2, &f], &c, "X1, X2 in the conjugate factor containing [X1, X2]")
            })
        }));
        r.push(run_check("C2", samples, seed, |_, rng| {
            let x = random_hyperbolic(sig, rng, 8);
            let root = sig.centralizer_generator(&x).expect("hyperbolic");
            let nz = |rng: &mut rand_chacha::ChaCha8Rng| {
                let e: i64 = rng.gen_range(1..=4);
                if rng.gen_bool(0.5) {
                    e
                } else {
                    -e
                }
            };
            let (x1, x2) = (sig.pow(&root, nz(rng)), sig.pow(&root, nz(rng)));
            let (r1, r2) = (sig.radical_length(&x1).unwrap(), sig.radical_length(&x2).unwrap());
            let ok = sig.commutes(&x1, &x2)
                && r1 == r2
                && sig.radical_length(&sig.pow(&x, 2)).unwrap() == sig.radical_length(&x).unwrap();
            Outcome::check(ok, || {
                Outcome::fail(&[&x1, &x2], format!("|X1|_r={r1} |X2|_r={r2}"), "equal radical lengths")
            })
        }));
        r.push(run_check("C3", samples, seed, |_, rng| {
            let Some((x1, x2)) = noncommuting_pair(sig, rng, 6) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let (c1, c2) = (sig.central_length(&x1), sig.central_length(&x2));
            for n in 2..=3usize {
                let c = sig.comm(&sig.pow(&x1, n as i64), &sig.pow(&x2, n as i64));
                let lhs = sig.central_length(&c);
                if lhs <= 2 * (n - 1) * (c1 + c2) {
                    return Outcome::fail(&[&x1, &x2, &n], lhs, format!("> {}", 2 * (n - 1) * (c1 + c2)));
                }
            }
            Outcome::Pass
        }));
        r.push(run_check("C4", samples, seed, |_, rng| {
            let Some((x1, x2)) = noncommuting_pair(sig, rng, 5) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let n = rng.gen_range(2..=3usize);
            let th = c4_threshold(sig, &x1, &x2, n).expect("hyperbolic");
            let root = sig.centralizer_generator(&x2).expect("hyperbolic");
            let xn = sig.pow(&x1, n as i64);
            for m in th.n_threshold + 1..=th.n_threshold + 4 {
                let g = sig.comm(&xn, &sig.pow(&root, (n * m) as i64));
                let d = sig.hyperbolic_decompose(&g);
                let Ok(d) = d else {
                    return Outcome::fail(&[&x1, &x2, &n, &m], "elliptic", "hyperbolic commutator");
                };
                if d.k > 2 {
                    return Outcome::fail(&[&x1, &x2, &n, &m], format!("exponent {}", d.k), "exponent <= 2");
                }
                if m > 2 * th.k {
                    let expect = 2 * (m * n - 2 * th.k) * th.b.len() + th.e1.len() + th.e2.len();
                    let got = sig.central_length(&g);
                    if got != expect {
                        return Outcome::fail(
                            &[&x1, &x2, &n, &m],
                            got,
                            format!("|g|_c = 2(mn-2k)|B| + |E1| + |E2| = {expect}"),
                        );
                    }
                }
            }
            Outcome::Pass
        }));
        r.push(run_check("C5", samples, seed, |_, rng| {
            let Some((x1, x2)) = noncommuting_pair(sig, rng, 4) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let n = rng.gen_range(2..=3usize);
            let bound = rng.gen_range(1..=40usize);
            let th = c4_threshold(sig, &x1, &x2, n).expect("hyperbolic");
            let cap = th.n_threshold.max(2 * th.k) + bound + 1;
            let xn = sig.pow(&x1, n as i64);
            let radical = |m: usize| sig.radical_length(&sig.comm(&xn, &sig.pow(&x2, (n * m) as i64))).unwrap_or(0);
            match (1..=cap).find(|&m| radical(m) > bound) {
                Some(_) if radical(cap) > bound => Outcome::Pass,
                found => Outcome::fail(
                    &[&x1, &x2, &n, &bound],
                    format!("first m {found:?}, |.|_r at cap {cap} = {}", radical(cap)),
                    format!("|[X1^n, X2^nm]|_r > {bound}"),
                ),
            }
        }));
        r.push(run_check("observation", 25, seed, |t, _| {
            let (k1, k2) = (t as usize / 5 + 1, t as usize % 5 + 1);
            match observation_identity(k1, k2) {
                Ok((lhs, _)) => {
                    let sig3 = Signature::cyclic(&[2, 2, 2]).expect("valid");
                    let e = sig3.hyperbolic_decompose(&lhs).map(|d| d.k).unwrap_or(0);
                    Outcome::check(e == 2, || {
                        Outcome::fail(&[&k1, &k2], format!("exponent {e}"), "a square, exponent exactly 2")
                    })
                }
                Err((lhs, rhs)) => Outcome::fail(
                    &[&k1, &k2],
                    format!("{lhs} vs {rhs}"),
                    "[(ab)^k1, (bc)^k2] = ((ba)^k1 (cb)^(k2-1) c)^2",
                ),
            }
        }));
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_values() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let x1 = sig.parse_word("a b").unwrap();
        let x2 = sig.parse_word("a b^2").unwrap();
        let c = sig.comm(&sig.pow(&x1, 2), &sig.pow(&x2, 2));
        assert!(sig.central_length(&c) > 2 * (sig.central_length(&x1) + sig.central_length(&x2)));
        let th = c4_threshold(&sig, &x1, &x2, 2).unwrap();
        assert_eq!(th.b, x2);
        assert!(th.f.is_one());
        // a = (ab)², k = ⌈4/2⌉ + 2.
        assert_eq!(th.k, 4);
    }

    #[test]
    fn observation_holds() {
        assert_eq!(observation_identity(1, 1).unwrap().0.to_string(), "b a c b a c");
        for k1 in 1..=5 {
            for k2 in 1..=5 {
                assert!(observation_identity(k1, k2).is_ok());
            }
        }
    }

    fn s3_times_z2() -> Signature {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> =
            perms.iter().map(|p| perms.iter().map(|q| idx([q[p[0]], q[p[1]], q[p[2]]])).collect()).collect();
        let s3 = crate::groups::FactorGroup::from_table(&table).unwrap();
        Signature::new(vec![s3, crate::groups::FactorGroup::cyclic(2).unwrap()]).unwrap()
    }

    #[test]
    fn c1_with_a_nonabelian_factor() {
        let sig = s3_times_z2();
        let r = mcl_suite(&sig, 60, 4);
        assert!(r.passed(), "{r}");
        assert!(r.check("C1").unwrap().passed >= 30);
    }

    #[test]
    fn suite_passes() {
        for spec in ["Z2*Z3", "Z2*Z2*Z2", "Z3*Z3"] {
            let sig = Signature::parse(spec).unwrap();
            let r = mcl_suite(&sig, 40, 9);
            assert!(r.passed(), "{r}");
        }
    }
}
