//! Bass–Serre tree checks: translation length, distances against a BFS ball,
//! axis overlaps and the commutator bound.

use num_rational::Ratio;
use rand::Rng;

use crate::groups::Signature;
use crate::tree::{
    act, axis_overlap, bfs, default_window, distance, translation_length, Ball, Overlap, TreeError, TreeVertex,
};
use crate::words::Word;

use super::report::{run_check, timed, Outcome, SuiteReport};
use super::sampling::{noncommuting_pair, random_hyperbolic};

pub const ORACLE_RADIUS: usize = 12;
const BALL_CAP: usize = 2_000_000;

/// Minimal displacement of `h` over ball vertices whose image stays in the
/// ball, measured along BFS parent paths; in edges.
fn ball_displacement(sig: &Signature, ball: &Ball, h: &Word) -> Option<usize> {
    ball.vertices
        .iter()
        .enumerate()
        .filter_map(|(i, v)| ball.index.get(&act(sig, h, v)).map(|&j| ball.tree_distance(i, j)))
        .min()
}

/// Overlap length in syllable units; disjoint axes give zero. Doubles the
/// window a few times before giving up.
pub fn overlap_with_retry(sig: &Signature, x1: &Word, x2: &Word) -> Result<Option<Overlap>, TreeError> {
    let mut window = default_window(sig, x1, x2);
    let mut last = None;
    for _ in 0..4 {
        match axis_overlap(sig, x1, x2, window) {
            Err(e @ TreeError::WindowTooSmall { .. }) => {
                last = Some(e);
                window *= 2;
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

pub fn tree_suite(sig: &Signature, samples: u64, seed: u64) -> SuiteReport {
    timed("tree", &sig.to_string(), seed, |r| {
        let ball = bfs(sig, &TreeVertex::element(Word::one()), ORACLE_RADIUS, BALL_CAP);
        let ball = match ball {
            Ok(b) => Some(b),
            Err(e) => {
                r.notes.push(format!("BFS oracle skipped: {e}"));
                None
            }
        };
        r.push(run_check("translation-length", samples, seed, |_, rng| {
            let h = loop {
                let h = random_hyperbolic(sig, rng, 8);
                if sig.central_length(&h) <= 6 {
                    break h;
                }
            };
            let c = sig.central_length(&h);
            let tl = match translation_length(sig, &h) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(&[&h], e, "a translation length"),
            };
            if tl != Ratio::from_integer(c as u64) {
                return Outcome::fail(&[&h], tl, format!("|h|_c = {c}"));
            }
            // BFS cross-check when an axis vertex and its image fit in the ball.
            let (core, f) = sig.cyclic_reduce(&h);
            if let Some(ball) = &ball {
                if c <= 4 && 2 * (f.len() + core.len()) <= ORACLE_RADIUS {
                    let d = ball_displacement(sig, ball, &h);
                    if d != Some(2 * c) {
                        return Outcome::fail(&[&h], format!("{d:?} edges"), format!("{} edges", 2 * c));
                    }
                }
            }
            Outcome::Pass
        }));
        if let Some(ball) = &ball {
            let n = ball.vertices.len();
            r.push(run_check("distance", samples, seed, |_, rng| {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let (v1, v2) = (&ball.vertices[i], &ball.vertices[j]);
                let (d, oracle) = (distance(sig, v1, v2), ball.tree_distance(i, j));
                Outcome::check(d == oracle, || Outcome::fail(&[v1, v2], d, oracle))
            }));
        }
        r.push(run_check("GaoT1", samples, seed, |_, rng| {
            let Some((x1, x2)) = noncommuting_pair(sig, rng, 6) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let bound = sig.radical_length(&x1).unwrap() + sig.radical_length(&x2).unwrap() - 1;
            match overlap_with_retry(sig, &x1, &x2) {
                Ok(None) => Outcome::Pass,
                Ok(Some(Overlap::Segment(len))) => Outcome::check(len <= Ratio::from_integer(bound as u64), || {
                    Outcome::fail(&[&x1, &x2], len, format!("<= |X1|_r + |X2|_r - 1 = {bound}"))
                }),
                Ok(Some(Overlap::Unbounded)) => Outcome::fail(&[&x1, &x2], "coinciding axes", "a bounded overlap"),
                Err(e @ TreeError::WindowTooSmall { .. }) => Outcome::vacuous(e.to_string()),
                Err(e) => Outcome::fail(&[&x1, &x2], e, "an overlap"),
            }
        }));
        r.push(run_check("AddIIICILL", samples, seed, |_, rng| {
            let Some((x1, x2)) = noncommuting_pair(sig, rng, 6) else {
                return Outcome::vacuous("no noncommuting hyperbolic pair");
            };
            let overlap = match overlap_with_retry(sig, &x1, &x2) {
                Ok(None) => Ratio::from_integer(0),
                Ok(Some(Overlap::Segment(len))) => len,
                Ok(Some(Overlap::Unbounded)) => {
                    return Outcome::fail(&[&x1, &x2], "coinciding axes", "a bounded overlap")
                }
                Err(e @ TreeError::WindowTooSmall { .. }) => return Outcome::vacuous(e.to_string()),
                Err(e) => return Outcome::fail(&[&x1, &x2], e, "an overlap"),
            };
            let (c1, c2) = (sig.central_length(&x1) as u64, sig.central_length(&x2) as u64);
            for k in 2..=3i64 {
                let lhs = sig.central_length(&sig.comm(&sig.pow(&x1, k), &sig.pow(&x2, k)));
                // 2(k|X1|_c + k|X2|_c − |I|), possibly negative, compared as a rational.
                let rhs = (Ratio::from_integer(k as u64 * (c1 + c2))
                    - overlap.min(Ratio::from_integer(k as u64 * (c1 + c2))))
                    * 2;
                if Ratio::from_integer(lhs as u64) < rhs {
                    return Outcome::fail(&[&x1, &x2, &k, &overlap], lhs, format!(">= {rhs}"));
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
    fn suite_passes() {
        for spec in ["Z2*Z3", "Z2*Z2*Z2"] {
            let sig = Signature::parse(spec).unwrap();
            let r = tree_suite(&sig, 100, 7);
            assert!(r.passed(), "{r}");
            assert!(r.check("distance").is_some());
        }
    }

    #[test]
    fn ball_displacement_matches_closed_form() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let ball = bfs(&sig, &TreeVertex::element(Word::one()), ORACLE_RADIUS, BALL_CAP).unwrap();
        let h = sig.parse_word("a b").unwrap();
        assert_eq!(ball_displacement(&sig, &ball, &h), Some(4));
        // Central length 4 after merging the outer b's.
        let h = sig.parse_word("b a b a b").unwrap();
        assert_eq!(ball_displacement(&sig, &ball, &h), Some(8));
    }
}
