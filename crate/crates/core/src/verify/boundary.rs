//! Whether reduction of `A^k f B^m`-shaped words reaches their end syllables.

use rand::Rng;

use crate::groups::Signature;
use crate::words::{reduce_tracking_ends, Syllable, Word};

use super::report::{run_check, timed, Outcome, SuiteReport};
use super::sampling::{random_hyperbolic, random_simple, random_word};

fn concat(parts: &[&Word]) -> Vec<Syllable> {
    parts.iter().flat_map(|w| w.syllables().iter().copied()).collect()
}

fn cat_words(a: &Word, b: &Word) -> Word {
    Word::from_reduced(concat(&[a, b]))
}

/// Whether `w = B^e` for some integer `e`, returning `e`.
fn power_of(sig: &Signature, w: &Word, b: &Word) -> Option<i64> {
    if !w.len().is_multiple_of(b.len()) {
        return None;
    }
    let e = (w.len() / b.len()) as i64;
    [e, -e].into_iter().find(|&e| sig.pow(b, e) == *w)
}

/// The split `A ≡ C1⁻¹·C2⁻¹`, `B ≡ C1·C2` and exponents `α, β` with
/// `f = A^{−α}C2B^{−β} = C2B^{α−β} = A^{−α+β−1}C1⁻¹`, if any cut of `B` admits them.
fn f2t_witness(sig: &Signature, a: &Word, b: &Word, f: &Word) -> Option<(Word, Word, i64, i64)> {
    for r in 0..=b.len() {
        let (c1, c2) = (b.slice(0, r), b.slice(r, b.len()));
        let (c1i, c2i) = (sig.inv(&c1), sig.inv(&c2));
        if concat(&[&c1i, &c2i]) != a.syllables() {
            continue;
        }
        let Some(e) = power_of(sig, &sig.mul(&c2i, f), b) else {
            continue;
        };
        let (alpha, beta) = (0, -e);
        let f1 = sig.mul_all(&[&sig.pow(a, -alpha), &c2, &sig.pow(b, -beta)]);
        let f2 = sig.mul(&c2, &sig.pow(b, alpha - beta));
        let f3 = sig.mul(&sig.pow(a, -alpha + beta - 1), &c1i);
        if f1 == *f && f2 == *f && f3 == *f {
            return Some((c1, c2, alpha, beta));
        }
    }
    None
}

/// F2TLem1, both items of LemBFLL and LemIvanAdd.
pub fn boundary_suite(sig: &Signature, samples: u64, seed: u64) -> SuiteReport {
    timed("boundary", &sig.to_string(), seed, |r| {
        r.push(run_check("F2TLem1", samples, seed, |t, rng| {
            let (a, b, f) = if t % 2 == 0 {
                // Planted: A ≡ C1⁻¹C2⁻¹ for a cut of B and f = A^{−α}C2B^{−β}.
                let b = random_simple(sig, rng, 6);
                let cut = rng.gen_range(0..=b.len());
                let (c1, c2) = (b.slice(0, cut), b.slice(cut, b.len()));
                let a = cat_words(&sig.inv(&c1), &sig.inv(&c2));
                let (al, be) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
                let f = sig.mul_all(&[&sig.pow(&a, -al), &c2, &sig.pow(&b, -be)]);
                (a, b, f)
            } else {
                let len = rng.gen_range(0..=6);
                (random_simple(sig, rng, 6), random_simple(sig, rng, 6), random_word(sig, rng, len))
            };
            let (la, lb, lf) = (a.len(), b.len(), f.len());
            let k = (lf + lb).div_ceil(la) + 1 + rng.gen_range(0..=1);
            let m = (lf + la).div_ceil(lb) + 1 + rng.gen_range(0..=1);
            let raw = concat(&[&a.repeat_cyclic(k), &f, &b.repeat_cyclic(m)]);
            let (_, first, last) = reduce_tracking_ends(sig, &raw);
            if first && last {
                return Outcome::vacuous("end syllables untouched");
            }
            match f2t_witness(sig, &a, &b, &f) {
                Some(_) => Outcome::Pass,
                None => Outcome::fail(
                    &[&a, &b, &f, &k, &m],
                    "no C1, C2, alpha, beta",
                    "A = C1^-1 C2^-1, B = C1 C2, f = A^-a C2 B^-b",
                ),
            }
        }));
        r.push(run_check("LemBFLL-1", samples, seed, |_, rng| {
            let a = random_hyperbolic(sig, rng, 8);
            let b = random_simple(sig, rng, 6);
            let k = a.len().div_ceil(b.len()) + 2 + rng.gen_range(0..=1);
            let bk = b.repeat_cyclic(k);
            let (_, first, last) = reduce_tracking_ends(sig, &concat(&[&bk, &a, &bk]));
            Outcome::check(first && last, || {
                Outcome::fail(&[&a, &b, &k], format!("first {first}, last {last}"), "both end syllables survive")
            })
        }));
        r.push(run_check("LemBFLL-2", samples, seed, |t, rng| {
            let b = random_simple(sig, rng, 6);
            let a = if t % 8 == 7 {
                sig.pow(&b, rng.gen_range(1..=3))
            } else {
                let len = rng.gen_range(1..=8);
                random_word(sig, rng, len)
            };
            if sig.commutes(&a, &b) {
                return Outcome::vacuous("[a, B] = 1");
            }
            let k = a.len().div_ceil(b.len()) + 2 + rng.gen_range(0..=1);
            let raw = concat(&[&sig.inv(&b).repeat_cyclic(k), &a, &b.repeat_cyclic(k)]);
            let (_, first, last) = reduce_tracking_ends(sig, &raw);
            Outcome::check(first && last, || {
                Outcome::fail(&[&a, &b, &k], format!("first {first}, last {last}"), "both end syllables survive")
            })
        }));
        r.push(run_check("LemIvanAdd", samples, seed, |_, rng| {
            let a = random_simple(sig, rng, 5);
            let b = loop {
                let b = random_simple(sig, rng, a.len() + 5);
                if b.len() > a.len() {
                    break b;
                }
            };
            let len = rng.gen_range(0..=8);
            let f = random_word(sig, rng, len);
            let k = f.len() / b.len() + 1;
            let outer = b.repeat_cyclic(6 * k + 8);
            let fi = sig.inv(&f);
            for l in 1..=5 {
                let raw = concat(&[&outer, &fi, &a.repeat_cyclic(l), &f, &outer]);
                let (_, first, last) = reduce_tracking_ends(sig, &raw);
                if !(first && last) {
                    return Outcome::fail(
                        &[&a, &b, &f, &k, &l],
                        format!("first {first}, last {last}"),
                        "both end syllables survive",
                    );
                }
            }
            Outcome::Pass
        }));
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_on_planted_instance() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let b = sig.parse_word("a b").unwrap();
        // Cut after `a`: C1 = a, C2 = b, A = a b^2.
        let a = sig.parse_word("a b^2").unwrap();
        let f = sig.mul(&sig.parse_word("b").unwrap(), &sig.pow(&b, 2));
        let (c1, c2, al, be) = f2t_witness(&sig, &a, &b, &f).unwrap();
        assert_eq!((c1.to_string(), c2.to_string()), ("a".into(), "b".into()));
        assert_eq!(al - be, 2);
        assert!(f2t_witness(&sig, &b, &b, &f).is_none());
    }

    #[test]
    fn suite_passes() {
        for spec in ["Z2*Z3", "Z2*Z2*Z2", "Z4*Z3"] {
            let sig = Signature::parse(spec).unwrap();
            let r = boundary_suite(&sig, 80, 3);
            assert!(r.passed(), "{r}");
            assert!(r.check("F2TLem1").unwrap().passed > 0);
        }
    }
}
