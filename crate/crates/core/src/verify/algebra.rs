//! The `words` and `finewilf` suites.

use rand::Rng;

use crate::groups::Signature;
use crate::periodic::{
    fine_wilf_split, is_periodic, occurrences_aligned, p3_inverse_periodic, p4_double_periodic,
    sandwiched_segments_are_powers,
};
use crate::words::{Syllable, Word};

use super::report::{run_check, timed, Outcome, SuiteReport};
use super::sampling::{random_hyperbolic, random_raw, random_simple, random_word, random_word_upto};

/// Associativity, inverses, reduction, length laws, decompositions,
/// conjugacy witnesses and the print/parse round trip.
pub fn words_suite(sig: &Signature, samples: u64, seed: u64) -> SuiteReport {
    timed("words", &sig.to_string(), seed, |r| {
        r.push(run_check("associativity", samples, seed, |_, rng| {
            let [u, v, w] = [(); 3].map(|_| random_word_upto(sig, rng, 8));
            let left = sig.mul(&sig.mul(&u, &v), &w);
            let right = sig.mul(&u, &sig.mul(&v, &w));
            Outcome::check(left == right, || {
                Outcome::fail(&[&u, &v, &w], format!("{left} vs {right}"), "(uv)w = u(vw)")
            })
        }));
        r.push(run_check("inverse", samples, seed, |_, rng| {
            let u = random_word_upto(sig, rng, 10);
            let ui = sig.inv(&u);
            let ok = sig.mul(&u, &ui).is_one() && sig.mul(&ui, &u).is_one() && sig.inv(&ui) == u;
            Outcome::check(ok, || Outcome::fail(&[&u], &ui, "u u^-1 = u^-1 u = 1"))
        }));
        r.push(run_check("reduce-idempotence", samples, seed, |_, rng| {
            let len = rng.gen_range(0..=12);
            let raw = random_raw(sig, rng, len);
            let w = sig.reduce(&raw).expect("in range");
            let again = sig.reduce(w.syllables()).expect("in range");
            // Oracle: multiply the raw syllables one at a time.
            let by_mul = raw
                .iter()
                .filter(|s| s.letter != 0)
                .fold(Word::one(), |acc, s| sig.mul(&acc, &Word::from_reduced(vec![*s])));
            let ok = sig.check(&w).is_ok() && again == w && by_mul == w;
            Outcome::check(ok, || {
                Outcome::fail(&[&raw_text(&raw)], &w, "reduced, fixed by reduce, equal to the product")
            })
        }));
        r.push(run_check("length-laws", samples, seed, |_, rng| {
            let w = random_hyperbolic(sig, rng, 8);
            let k = rng.gen_range(1..=6);
            let wk = sig.pow(&w, k);
            let (c, ck) = (sig.central_length(&w), sig.central_length(&wk));
            let (rl, rk) = (sig.radical_length(&w).unwrap(), sig.radical_length(&wk).unwrap());
            let ok = ck == k as usize * c && rk == rl && rl <= c && c <= w.len() && sig.pow_len(&w, k) == wk.len();
            Outcome::check(ok, || {
                Outcome::fail(
                    &[&w, &k],
                    format!("|w|={} |w|_c={c} |w|_r={rl} |w^k|_c={ck} |w^k|_r={rk}", w.len()),
                    "length laws",
                )
            })
        }));
        r.push(run_check("decomposition", samples, seed, |_, rng| {
            let w = random_hyperbolic(sig, rng, 10);
            let d = sig.hyperbolic_decompose(&w).unwrap();
            let expect = 2 * d.f.len() + d.k * d.a.len();
            let ok = sig.reassemble(&d) == w && sig.is_simple(&d.a) && (w.len() == expect || w.len() + 1 == expect);
            Outcome::check(ok, || {
                Outcome::fail(&[&w], format!("A={} k={} f={}", d.a, d.k, d.f), "w = f^-1 A^k f, A simple")
            })
        }));
        r.push(run_check("conjugacy", samples, seed, |_, rng| {
            let u = random_word_upto(sig, rng, 6);
            let g = random_word_upto(sig, rng, 5);
            let v = sig.conj(&u, &g);
            match sig.are_conjugate(&u, &v) {
                Some(x) if sig.conj(&u, &x) == v => {}
                other => {
                    return Outcome::fail(&[&u, &g], format!("{other:?}"), "a witness x with x^-1 u x = v");
                }
            }
            // A second, unrelated word: any witness returned must be genuine.
            let w = random_word_upto(sig, rng, 6);
            match (sig.are_conjugate(&u, &w), sig.are_conjugate(&w, &u)) {
                (Some(x), _) if sig.conj(&u, &x) != w => Outcome::fail(&[&u, &w], &x, "x^-1 u x = w"),
                (a, b) if a.is_some() != b.is_some() => {
                    Outcome::fail(&[&u, &w], format!("{a:?} / {b:?}"), "conjugacy is symmetric")
                }
                _ => Outcome::Pass,
            }
        }));
        r.push(run_check("round-trip", samples, seed, |_, rng| {
            let len = rng.gen_range(0..=10);
            let w = random_word(sig, rng, len);
            let text = w.to_string();
            match sig.parse_word(&text) {
                Ok(p) if p == w => Outcome::Pass,
                other => Outcome::fail(&[&text], format!("{other:?}"), "parse(print(w)) = w"),
            }
        }));
    })
}

fn raw_text(raw: &[Syllable]) -> String {
    raw.iter().map(|s| format!("{}:{}", s.factor, s.letter)).collect::<Vec<_>>().join(" ")
}

/// Start offsets of `pat` in `text` by direct comparison.
fn naive_occurrences(pat: &[Syllable], text: &[Syllable]) -> Vec<usize> {
    if pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len()).filter(|&i| &text[i..i + pat.len()] == pat).collect()
}

/// Cuts `r` with `B[r..]·B[..r] = target`, by scanning every position.
fn rotation_cuts(b: &Word, target: &Word) -> Vec<usize> {
    let s = b.syllables();
    (1..=s.len())
        .filter(|&r| {
            let mut rot = s[r..].to_vec();
            rot.extend_from_slice(&s[..r]);
            rot == target.syllables()
        })
        .collect()
}

/// A reduced word equal to its own inverse: `g⁻¹ t g` with `t` an involution
/// syllable. `None` if no factor has even order.
fn random_involution_word<R: Rng>(sig: &Signature, rng: &mut R, conj_len: usize) -> Option<Word> {
    let evens: Vec<u32> = (0..sig.num_factors() as u32).filter(|&f| sig.factor(f).order().is_multiple_of(2)).collect();
    let f = *evens.get(rng.gen_range(0..evens.len().max(1)))?;
    let g = sig.factor(f);
    let invs: Vec<u32> = (1..g.order() as u32).filter(|&x| g.mul(x, x) == 0).collect();
    let t = Syllable::new(f, invs[rng.gen_range(0..invs.len())]);
    let mut conj: Vec<Syllable> = Vec::new();
    let mut prev = f;
    for _ in 0..conj_len {
        let s = super::sampling::random_syllable(sig, rng, Some(prev));
        prev = s.factor;
        conj.push(s);
    }
    let c = Word::from_reduced(conj.clone());
    let mut s: Vec<Syllable> = sig.inv(&c).into_syllables();
    s.push(t);
    s.extend(conj);
    Some(Word::from_reduced(s))
}

/// `B = C1·C2` with `C1² = C2² = 1`, so that `B⁻¹ = C2·C1` is `B`-periodic.
fn p3_instance<R: Rng>(sig: &Signature, rng: &mut R) -> Option<(Word, Word, Word)> {
    for _ in 0..50 {
        let (l1, l2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let c1 = random_involution_word(sig, rng, l1)?;
        let c2 = random_involution_word(sig, rng, l2)?;
        let mut s = c1.syllables().to_vec();
        s.extend_from_slice(c2.syllables());
        if !crate::words::is_reduced(&s) {
            continue;
        }
        let b = Word::from_reduced(s);
        if sig.is_simple(&b) {
            return Some((b, c1, c2));
        }
    }
    None
}

/// Periodicity lemmas P1–P4 and the Fine–Wilf split.
pub fn finewilf_suite(sig: &Signature, samples: u64, seed: u64) -> SuiteReport {
    timed("finewilf", &sig.to_string(), seed, |r| {
        r.push(run_check("P1", samples, seed, |_, rng| {
            let b = random_simple(sig, rng, 7);
            let k = rng.gen_range(1..=8);
            let power = b.repeat_cyclic(k);
            let occ = naive_occurrences(b.syllables(), power.syllables());
            let ok = occ.iter().all(|o| o % b.len() == 0) && occ.len() == k && occurrences_aligned(&b, k);
            Outcome::check(ok, || Outcome::fail(&[&b, &k], format!("{occ:?}"), "occurrences at multiples of |B|"))
        }));
        r.push(run_check("P2", samples, seed, |_, rng| {
            let b = random_simple(sig, rng, 7);
            let k = rng.gen_range(2..=8);
            let power = b.repeat_cyclic(k);
            let (n, p) = (b.len(), power.syllables());
            // Every window T = B·U·B of B^k, found by scanning all start/end pairs.
            for i in 0..p.len() {
                for j in i + 2 * n..=p.len() {
                    let t = &p[i..j];
                    if t[..n] == *b.syllables() && t[t.len() - n..] == *b.syllables() {
                        let u = &t[n..t.len() - n];
                        let m = u.len() / n;
                        if u.len() % n != 0 || u != b.repeat_cyclic(m).syllables() || m > k - 2 {
                            return Outcome::fail(
                                &[&b, &k, &i, &j],
                                Word::from_reduced(u.to_vec()),
                                "U = B^m, m <= k-2",
                            );
                        }
                    }
                }
            }
            Outcome::check(sandwiched_segments_are_powers(&b, k), || {
                Outcome::fail(&[&b, &k], "library scan disagrees", "U = B^m")
            })
        }));
        r.push(run_check("P3", samples, seed, |t, rng| {
            let (b, planted) = if t % 2 == 0 {
                match p3_instance(sig, rng) {
                    Some((b, c1, c2)) => (b, Some((c1, c2))),
                    None => return Outcome::vacuous("no factor of even order"),
                }
            } else {
                (random_simple(sig, rng, 8), None)
            };
            let b_inv = sig.inv(&b);
            let periodic = is_periodic(sig, &b_inv, &b).unwrap();
            let cuts = rotation_cuts(&b, &b_inv);
            if planted.is_some() && !periodic {
                return Outcome::fail(&[&b], "B^-1 not B-periodic", "planted instance is periodic");
            }
            if cuts.len() > 1 || cuts.is_empty() == periodic {
                return Outcome::fail(
                    &[&b],
                    format!("cuts {cuts:?}, periodic {periodic}"),
                    "exactly one cut iff B^-1 is B-periodic",
                );
            }
            match (p3_inverse_periodic(sig, &b), periodic) {
                (Ok(s), true) => {
                    let mut cat = s.c1.syllables().to_vec();
                    cat.extend_from_slice(s.c2.syllables());
                    let mut rev = s.c2.syllables().to_vec();
                    rev.extend_from_slice(s.c1.syllables());
                    let ok = cat == b.syllables()
                        && rev == b_inv.syllables()
                        && sig.mul(&s.c1, &s.c1).is_one()
                        && sig.mul(&s.c2, &s.c2).is_one()
                        && cuts == [s.c1.len()]
                        && planted.as_ref().is_none_or(|(c1, c2)| *c1 == s.c1 && *c2 == s.c2);
                    Outcome::check(ok, || {
                        Outcome::fail(
                            &[&b],
                            format!("C1={} C2={}", s.c1, s.c2),
                            "B = C1 C2, B^-1 = C2 C1, C1^2 = C2^2 = 1",
                        )
                    })
                }
                (Err(_), false) => Outcome::Pass,
                (res, _) => Outcome::fail(&[&b], format!("{res:?}"), "split exactly when B^-1 is B-periodic"),
            }
        }));
        r.push(run_check("P4", samples, seed, |t, rng| {
            let a = random_simple(sig, rng, 7);
            let n = a.len();
            let b = if t % 4 == 3 { random_simple(sig, rng, 7) } else { a.rotate(rng.gen_range(0..n)) };
            // U: a window of A^∞ of length at least |A|+|B|−1.
            let extra = rng.gen_range(0..=n);
            let len = n + b.len() - 1 + extra;
            let off = rng.gen_range(0..n);
            let u = a.repeat_cyclic(len / n + 3).slice(off, off + len);
            let b_periodic = is_periodic(sig, &u, &b).unwrap();
            match p4_double_periodic(sig, &a, &b, &u) {
                Ok(s) => {
                    let mut ab = s.c1.syllables().to_vec();
                    ab.extend_from_slice(s.c2.syllables());
                    let mut ba = s.c2.syllables().to_vec();
                    ba.extend_from_slice(s.c1.syllables());
                    let cuts = rotation_cuts(&a, &b);
                    let starts_both =
                        u.syllables().starts_with(a.syllables()) && u.syllables().starts_with(b.syllables());
                    let ok = b_periodic
                        && ab == a.syllables()
                        && ba == b.syllables()
                        && cuts == [s.c1.len()]
                        && (!starts_both || a == b);
                    Outcome::check(ok, || {
                        Outcome::fail(
                            &[&a, &b, &u],
                            format!("C1={} C2={} cuts {cuts:?}", s.c1, s.c2),
                            "A = C1 C2, B = C2 C1, unique",
                        )
                    })
                }
                Err(e) if b_periodic => Outcome::fail(&[&a, &b, &u], e, "a split for a doubly periodic segment"),
                Err(_) => Outcome::vacuous("U is not B-periodic"),
            }
        }));
        r.push(run_check("fine-wilf", samples, seed, |_, rng| {
            let a = random_simple(sig, rng, 6);
            let n = a.len();
            let rot = rng.gen_range(0..n);
            let (k1, k2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let w1 = a.repeat_cyclic(k1);
            let w2 = a.rotate(rot).repeat_cyclic(k2);
            let len = 2 * n - 1 + rng.gen_range(0..=n);
            let off = rng.gen_range(0..n);
            let u = a.repeat_cyclic(len / n + 3).slice(off, off + len);
            match fine_wilf_split(sig, &w1, &w2, &u) {
                Ok((s, m1, m2)) => {
                    let mut cat = s.c1.syllables().to_vec();
                    cat.extend_from_slice(s.c2.syllables());
                    let mut rev = s.c2.syllables().to_vec();
                    rev.extend_from_slice(s.c1.syllables());
                    let ok = cat == a.syllables() && rev == a.rotate(rot).syllables() && m1 == k1 && m2 == k2;
                    Outcome::check(ok, || {
                        Outcome::fail(
                            &[&w1, &w2, &u],
                            format!("C1={} C2={} m1={m1} m2={m2}", s.c1, s.c2),
                            "w1 = (C1C2)^m1, w2 = (C2C1)^m2",
                        )
                    })
                }
                Err(e) => Outcome::fail(&[&w1, &w2, &u], e, "a common split"),
            }
        }));
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_groups() {
        for spec in ["Z5*Z2", "Z2*Z2*Z2", "Z2*Z3"] {
            let sig = Signature::parse(spec).unwrap();
            let r = words_suite(&sig, 60, 1);
            assert!(r.passed(), "{r}");
            let r = finewilf_suite(&sig, 60, 1);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn p3_instances_are_planted_correctly() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let mut rng = super::super::report::trial_rng(0, "p3", 0);
        let (b, c1, c2) = p3_instance(&sig, &mut rng).unwrap();
        assert_eq!(sig.inv(&b), sig.mul(&c2, &c1));
        assert!(sig.mul(&c1, &c1).is_one());
    }
}
