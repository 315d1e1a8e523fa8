//! Random words, hyperbolic elements and noncommuting pairs.

use rand::Rng;

use crate::groups::Signature;
use crate::words::{Syllable, Word};

const ATTEMPTS: usize = 200;

pub fn random_syllable<R: Rng>(sig: &Signature, rng: &mut R, avoid: Option<u32>) -> Syllable {
    let n = sig.num_factors() as u32;
    let factor = match avoid {
        Some(a) => {
            let f = rng.gen_range(0..n - 1);
            if f >= a {
                f + 1
            } else {
                f
            }
        }
        None => rng.gen_range(0..n),
    };
    let order = sig.factor(factor).order() as u32;
    Syllable::new(factor, rng.gen_range(1..order))
}

/// A uniformly built reduced word of exactly `len` syllables.
pub fn random_word<R: Rng>(sig: &Signature, rng: &mut R, len: usize) -> Word {
    let mut s: Vec<Syllable> = Vec::with_capacity(len);
    for _ in 0..len {
        let next = random_syllable(sig, rng, s.last().map(|x| x.factor));
        s.push(next);
    }
    Word::from_reduced(s)
}

/// A reduced word with length drawn from `0..=max_len`.
pub fn random_word_upto<R: Rng>(sig: &Signature, rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word(sig, rng, len)
}

/// Raw syllables that may repeat factors and use identity letters.
pub fn random_raw<R: Rng>(sig: &Signature, rng: &mut R, len: usize) -> Vec<Syllable> {
    (0..len)
        .map(|_| {
            let f = rng.gen_range(0..sig.num_factors() as u32);
            Syllable::new(f, rng.gen_range(0..sig.factor(f).order() as u32))
        })
        .collect()
}

/// Rejection-samples a word of length in `[2, max_len]` with `|·|_c ≥ 2`.
pub fn random_hyperbolic<R: Rng>(sig: &Signature, rng: &mut R, max_len: usize) -> Word {
    let max_len = max_len.max(2);
    loop {
        let len = rng.gen_range(2..=max_len);
        let w = random_word(sig, rng, len);
        if sig.is_hyperbolic(&w) {
            return w;
        }
    }
}

/// The primitive period of the core of a random hyperbolic element.
pub fn random_simple<R: Rng>(sig: &Signature, rng: &mut R, max_len: usize) -> Word {
    let h = random_hyperbolic(sig, rng, max_len);
    sig.hyperbolic_decompose(&h).expect("hyperbolic").a
}

/// Two noncommuting hyperbolic elements, or `None` if none turned up. In
/// `Z2*Z2` every pair of hyperbolic elements commutes.
pub fn noncommuting_pair<R: Rng>(sig: &Signature, rng: &mut R, max_len: usize) -> Option<(Word, Word)> {
    for _ in 0..ATTEMPTS {
        let x1 = random_hyperbolic(sig, rng, max_len);
        let x2 = random_hyperbolic(sig, rng, max_len);
        // Commuting hyperbolics have equal radical length; skip the product test otherwise.
        let r1 = sig.radical_length(&x1).expect("hyperbolic");
        let r2 = sig.radical_length(&x2).expect("hyperbolic");
        if r1 != r2 || !sig.commutes(&x1, &x2) {
            return Some((x1, x2));
        }
    }
    None
}

/// A chain `(x₀,…,x_{n−1})` of hyperbolic elements with consecutive entries
/// not commuting.
pub fn noncommuting_chain<R: Rng>(sig: &Signature, rng: &mut R, n: usize, max_len: usize) -> Option<Vec<Word>> {
    let (a, b) = noncommuting_pair(sig, rng, max_len)?;
    let mut x = vec![a, b];
    while x.len() < n {
        let last = x.last().expect("nonempty").clone();
        let next = (0..ATTEMPTS).map(|_| random_hyperbolic(sig, rng, max_len)).find(|y| !sig.commutes(&last, y))?;
        x.push(next);
    }
    x.truncate(n);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_meet_their_contracts() {
        let sig = Signature::cyclic(&[2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = random_word(&sig, &mut rng, 5);
            assert_eq!(w.len(), 5);
            assert!(sig.check(&w).is_ok());
            let h = random_hyperbolic(&sig, &mut rng, 6);
            assert!(sig.central_length(&h) >= 2 && h.len() <= 6);
            assert!(sig.is_simple(&random_simple(&sig, &mut rng, 6)));
            let (x1, x2) = noncommuting_pair(&sig, &mut rng, 4).unwrap();
            assert!(!sig.commutes(&x1, &x2));
        }
    }

    #[test]
    fn infinite_dihedral_has_no_pairs() {
        let dd = Signature::cyclic(&[2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(noncommuting_pair(&dd, &mut rng, 6).is_none());
        let sig = Signature::cyclic(&[2, 2, 2]).unwrap();
        let x = noncommuting_chain(&sig, &mut rng, 4, 4).unwrap();
        assert!(x.windows(2).all(|p| !sig.commutes(&p[0], &p[1])));
    }
}
