use crate::groups::Signature;
use crate::words::{Syllable, Word};

/// All reduced words of length at most `max_len`, in shortlex order.
pub fn enumerate_words(sig: &Signature, max_len: usize) -> WordEnumerator<'_> {
    WordEnumerator { sig, max_len, level: vec![Word::one()], next_level: Vec::new(), idx: 0, len: 0 }
}

pub struct WordEnumerator<'a> {
    sig: &'a Signature,
    max_len: usize,
    level: Vec<Word>,
    next_level: Vec<Word>,
    idx: usize,
    len: usize,
}

impl Iterator for WordEnumerator<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if let Some(w) = self.level.get(self.idx) {
                self.idx += 1;
                if self.len < self.max_len {
                    // Extending a prefix-ordered level keeps lexicographic order.
                    let last = w.last().map(|s| s.factor);
                    for f in 0..self.sig.num_factors() as u32 {
                        if Some(f) == last {
                            continue;
                        }
                        for l in 1..self.sig.factor(f).order() as u32 {
                            let mut s = w.syllables().to_vec();
                            s.push(Syllable::new(f, l));
                            self.next_level.push(Word::from_reduced(s));
                        }
                    }
                }
                return Some(w.clone());
            }
            if self.next_level.is_empty() {
                return None;
            }
            self.level = std::mem::take(&mut self.next_level);
            self.idx = 0;
            self.len += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let dd = Signature::cyclic(&[2, 2]).unwrap();
        let words: Vec<String> = enumerate_words(&dd, 1).map(|w| w.to_string()).collect();
        assert_eq!(words, ["1", "a", "b"]);
        let words: Vec<String> = enumerate_words(&dd, 2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["1", "a", "b", "a b", "b a"]);
        let z5 = Signature::cyclic(&[5, 2]).unwrap();
        assert_eq!(enumerate_words(&z5, 2).count(), 14);
        let all: Vec<Word> = enumerate_words(&z5, 4).collect();
        assert!(all.windows(2).all(|p| p[0].shortlex_cmp(&p[1]).is_lt()));
    }
}
