//! Reduced words in a free product: normal forms, products, lengths,
//! hyperbolic decompositions, roots and conjugacy.

use std::cmp::Ordering;
use std::fmt;

use crate::groups::{Elem, Signature};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syllable {position}: unknown factor {factor}")]
    UnknownFactor { position: usize, factor: u32 },
    #[error("syllable {position}: letter {letter} out of range for factor {factor}")]
    LetterOutOfRange { position: usize, factor: u32, letter: Elem },
    #[error("word is not reduced or does not belong to this signature")]
    SignatureMismatch,
    #[error("word is not hyperbolic")]
    NotHyperbolic,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A letter of a word: a nonidentity element of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: u32,
    pub letter: Elem,
}

impl Syllable {
    pub const fn new(factor: u32, letter: Elem) -> Self {
        Self { factor, letter }
    }
}

/// A reduced syllable sequence. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Syllable>);

impl Word {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// Wraps syllables that are already known to be reduced.
    pub fn from_reduced(syllables: Vec<Syllable>) -> Self {
        debug_assert!(is_reduced(&syllables));
        Self(syllables)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Syllable> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Syllable> {
        self.0.last().copied()
    }

    /// First and last syllables lie in different factors (or `|w| ≤ 1`).
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) if self.0.len() >= 2 => a.factor != b.factor,
            _ => true,
        }
    }

    /// Shortlex order: shorter first, then lexicographic on (factor, letter).
    pub fn shortlex_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Subword `[start, end)`; a contiguous piece of a reduced word is reduced.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// `self` repeated `k` times, for cyclically reduced words with `|w| ≥ 2`.
    pub fn repeat_cyclic(&self, k: usize) -> Word {
        debug_assert!(self.len() < 2 || self.is_cyclically_reduced());
        Word(self.0.repeat(k))
    }

    /// Cyclic rotation: `w[r..] w[..r]`.
    pub fn rotate(&self, r: usize) -> Word {
        let mut v = self.0[r..].to_vec();
        v.extend_from_slice(&self.0[..r]);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if s.factor < 26 {
                let c = (b'a' + s.factor as u8) as char;
                if s.letter == 1 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}^{}", s.letter)?;
                }
            } else {
                write!(f, "{}:{}", s.factor, s.letter)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

pub fn is_reduced(s: &[Syllable]) -> bool {
    s.iter().all(|x| x.letter != 0) && s.windows(2).all(|w| w[0].factor != w[1].factor)
}

/// The unique triple with `w = f⁻¹·Aᵏ∘f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypDecomposition {
    pub a: Word,
    pub k: usize,
    pub f: Word,
}

/// KMP failure function.
pub(crate) fn prefix_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut j = pi[i - 1];
        while j > 0 && s[i] != s[j] {
            j = pi[j - 1];
        }
        if s[i] == s[j] {
            j += 1;
        }
        pi[i] = j;
    }
    pi
}

/// All start offsets of `pat` in `text` (KMP).
pub(crate) fn find_all<T: PartialEq>(pat: &[T], text: &[T]) -> Vec<usize> {
    if pat.is_empty() {
        return (0..=text.len()).collect();
    }
    let pi = prefix_function(pat);
    let mut out = Vec::new();
    let mut j = 0;
    for (i, c) in text.iter().enumerate() {
        while j > 0 && *c != pat[j] {
            j = pi[j - 1];
        }
        if *c == pat[j] {
            j += 1;
        }
        if j == pat.len() {
            out.push(i + 1 - j);
            j = pi[j - 1];
        }
    }
    out
}

/// Length of the primitive root of `s` as a sequence (`s = rootᵏ`).
pub(crate) fn primitive_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let p = n - prefix_function(s)[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

impl Signature {
    /// Checks that `w` is reduced and all its syllables belong to this signature.
    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        for (position, s) in w.0.iter().enumerate() {
            self.check_syllable(position, *s)?;
            if s.letter == 0 {
                return Err(WordError::SignatureMismatch);
            }
        }
        if is_reduced(&w.0) {
            Ok(())
        } else {
            Err(WordError::SignatureMismatch)
        }
    }

    fn check_syllable(&self, position: usize, s: Syllable) -> Result<(), WordError> {
        if s.factor as usize >= self.num_factors() {
            return Err(WordError::UnknownFactor { position, factor: s.factor });
        }
        if s.letter as usize >= self.factor(s.factor).order() {
            return Err(WordError::LetterOutOfRange { position, factor: s.factor, letter: s.letter });
        }
        Ok(())
    }

    /// Reduces a raw syllable sequence; identity letters are allowed.
    pub fn reduce(&self, raw: &[Syllable]) -> Result<Word, WordError> {
        for (position, s) in raw.iter().enumerate() {
            self.check_syllable(position, *s)?;
        }
        let mut out = Vec::with_capacity(raw.len());
        self.push_all(&mut out, raw);
        Ok(Word(out))
    }

    fn push_syllable(&self, acc: &mut Vec<Syllable>, s: Syllable) {
        if s.letter == 0 {
            return;
        }
        match acc.last_mut() {
            Some(top) if top.factor == s.factor => {
                let m = self.factor(s.factor).mul(top.letter, s.letter);
                if m == 0 {
                    acc.pop();
                } else {
                    top.letter = m;
                }
            }
            _ => acc.push(s),
        }
    }

    fn push_all(&self, acc: &mut Vec<Syllable>, raw: &[Syllable]) {
        for &s in raw {
            self.push_syllable(acc, s);
        }
    }

    /// Appends a reduced word to a reduced accumulator. Cancellation only
    /// happens at the junction, so the tail is copied in one piece.
    pub(crate) fn mul_into(&self, acc: &mut Vec<Syllable>, v: &[Syllable]) {
        let mut i = 0;
        while i < v.len() {
            match acc.last_mut() {
                Some(top) if top.factor == v[i].factor => {
                    let m = self.factor(top.factor).mul(top.letter, v[i].letter);
                    i += 1;
                    if m == 0 {
                        acc.pop();
                    } else {
                        top.letter = m;
                        break;
                    }
                }
                _ => break,
            }
        }
        acc.extend_from_slice(&v[i..]);
    }

    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        let mut acc = Vec::with_capacity(u.len() + v.len());
        acc.extend_from_slice(&u.0);
        self.mul_into(&mut acc, &v.0);
        Word(acc)
    }

    /// Product of several reduced words.
    pub fn mul_all(&self, parts: &[&Word]) -> Word {
        let mut acc = Vec::with_capacity(parts.iter().map(|w| w.len()).sum());
        for p in parts {
            self.mul_into(&mut acc, &p.0);
        }
        Word(acc)
    }

    pub fn inv(&self, u: &Word) -> Word {
        Word(u.0.iter().rev().map(|s| Syllable::new(s.factor, self.factor(s.factor).inv(s.letter))).collect())
    }

    /// `g⁻¹ u g`.
    pub fn conj(&self, u: &Word, g: &Word) -> Word {
        self.mul_all(&[&self.inv(g), u, g])
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn comm(&self, x: &Word, y: &Word) -> Word {
        self.mul_all(&[&self.inv(x), &self.inv(y), x, y])
    }

    pub fn commutes(&self, x: &Word, y: &Word) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// `uⁿ`, built from the cyclic decomposition in time linear in the output.
    pub fn pow(&self, u: &Word, n: i64) -> Word {
        if n == 0 || u.is_one() {
            return Word::one();
        }
        let u = if n < 0 { self.inv(u) } else { u.clone() };
        let n = n.unsigned_abs() as usize;
        let (core, f) = self.cyclic_reduce(&u);
        let f_inv = self.inv(&f);
        if core.len() == 1 {
            let s = core.0[0];
            let letter = self.factor(s.factor).pow(s.letter, n as i64);
            if letter == 0 {
                return Word::one();
            }
            let mut v = f_inv.0;
            v.push(Syllable::new(s.factor, letter));
            v.extend_from_slice(&f.0);
            return Word(v);
        }
        let mut v = Vec::with_capacity(2 * f.len() + n * core.len());
        v.extend_from_slice(&f_inv.0);
        for _ in 0..n {
            v.extend_from_slice(&core.0);
        }
        self.mul_into(&mut v, &f.0);
        Word(v)
    }

    /// Exact `|uⁿ|` without building the power.
    pub fn pow_len(&self, u: &Word, n: i64) -> usize {
        if n == 0 || u.is_one() {
            return 0;
        }
        let (core, f) = self.cyclic_reduce(u);
        let n = n.unsigned_abs() as usize;
        if core.len() == 1 {
            let s = core.0[0];
            let g = self.factor(s.factor);
            if g.pow(s.letter, (n % g.elem_order(s.letter)) as i64) == 0 {
                return 0;
            }
            return 2 * f.len() + 1;
        }
        let merged = matches!((core.last(), f.first()), (Some(a), Some(b)) if a.factor == b.factor);
        n * core.len() + 2 * f.len() - usize::from(merged)
    }

    /// Returns `(core, f)` with `w = f⁻¹·core·f` and `core` cyclically reduced.
    pub fn cyclic_reduce(&self, w: &Word) -> (Word, Word) {
        let s = &w.0;
        let n = s.len();
        let mut i = 0;
        while n - 2 * i >= 2 && s[i].factor == s[n - 1 - i].factor {
            let g = self.factor(s[i].factor);
            if g.mul(s[i].letter, s[n - 1 - i].letter) != 0 {
                break;
            }
            i += 1;
        }
        let u = &s[i..n - i];
        let g = &s[n - i..];
        let p = u.len();
        if p >= 2 && u[0].factor == u[p - 1].factor {
            // One merge: w = f⁻¹·(u₂…u_{p-1}(u_p u₁))∘f with f = u₁⁻¹ g.
            let fac = self.factor(u[0].factor);
            let mut core = u[1..p - 1].to_vec();
            core.push(Syllable::new(u[0].factor, fac.mul(u[p - 1].letter, u[0].letter)));
            let mut f = vec![Syllable::new(u[0].factor, fac.inv(u[0].letter))];
            f.extend_from_slice(g);
            (Word(core), Word(f))
        } else {
            (Word(u.to_vec()), Word(g.to_vec()))
        }
    }

    pub fn central_length(&self, w: &Word) -> usize {
        let s = &w.0;
        let n = s.len();
        let mut i = 0;
        while n - 2 * i >= 2 && s[i].factor == s[n - 1 - i].factor {
            if self.factor(s[i].factor).mul(s[i].letter, s[n - 1 - i].letter) != 0 {
                return n - 2 * i - 1;
            }
            i += 1;
        }
        n - 2 * i
    }

    pub fn is_hyperbolic(&self, w: &Word) -> bool {
        self.central_length(w) >= 2
    }

    pub fn hyperbolic_decompose(&self, w: &Word) -> Result<HypDecomposition, WordError> {
        let (core, f) = self.cyclic_reduce(w);
        if core.len() < 2 {
            return Err(WordError::NotHyperbolic);
        }
        let p = primitive_period(&core.0);
        let k = core.len() / p;
        let mut a = core.0;
        a.truncate(p);
        Ok(HypDecomposition { a: Word(a), k, f })
    }

    /// `f⁻¹·Aᵏ∘f`, re-reduced.
    pub fn reassemble(&self, d: &HypDecomposition) -> Word {
        let mut v = self.inv(&d.f).0;
        v.extend(std::iter::repeat_n(d.a.0.iter().copied(), d.k).flatten());
        self.mul_into(&mut v, &d.f.0);
        Word(v)
    }

    pub fn radical_length(&self, w: &Word) -> Result<usize, WordError> {
        Ok(self.hyperbolic_decompose(w)?.a.len())
    }

    /// Cyclically reduced, `|w| ≥ 2`, and not a proper power.
    pub fn is_simple(&self, w: &Word) -> bool {
        w.len() >= 2 && w.is_cyclically_reduced() && primitive_period(&w.0) == w.len()
    }

    /// The unique `h` with `hⁿ = w`, if `n` divides the exponent of `w`.
    pub fn root(&self, w: &Word, n: usize) -> Result<Option<Word>, WordError> {
        let d = self.hyperbolic_decompose(w)?;
        if n == 0 || d.k % n != 0 {
            return Ok(None);
        }
        Ok(Some(self.reassemble(&HypDecomposition { k: d.k / n, ..d })))
    }

    /// `f⁻¹·A∘f`, which generates the centralizer of a hyperbolic `w`.
    pub fn centralizer_generator(&self, w: &Word) -> Result<Word, WordError> {
        let d = self.hyperbolic_decompose(w)?;
        Ok(self.reassemble(&HypDecomposition { k: 1, ..d }))
    }

    /// A witness `g` with `g⁻¹ u g = v`, or `None` if `u` and `v` are not conjugate.
    pub fn are_conjugate(&self, u: &Word, v: &Word) -> Option<Word> {
        let (cu, fu) = self.cyclic_reduce(u);
        let (cv, fv) = self.cyclic_reduce(v);
        if cu.len() != cv.len() {
            return None;
        }
        let fu_inv = self.inv(&fu);
        match cu.len() {
            0 => Some(Word::one()),
            1 => {
                let (a, b) = (cu.0[0], cv.0[0]);
                if a.factor != b.factor {
                    return None;
                }
                let t = self.factor(a.factor).conjugacy_in_factor(a.letter, b.letter)?;
                let t = Word(if t == 0 { vec![] } else { vec![Syllable::new(a.factor, t)] });
                Some(self.mul_all(&[&fu_inv, &t, &fv]))
            }
            n => {
                // Rotations r with cv = cu[r..] cu[..r], i.e. occurrences of cv in cu·cu.
                let mut doubled = cu.0.clone();
                doubled.extend_from_slice(&cu.0[..n - 1]);
                let slack = fu.len() + fv.len();
                let mut best: Option<Word> = None;
                for r in find_all(&cv.0, &doubled) {
                    if let Some(b) = &best {
                        if r > b.len() + slack {
                            break;
                        }
                    }
                    let c1 = Word(cu.0[..r].to_vec());
                    let x = self.mul_all(&[&fu_inv, &c1, &fv]);
                    if best.as_ref().is_none_or(|b| x.len() < b.len()) {
                        best = Some(x);
                    }
                }
                best
            }
        }
    }

    /// Parses a word literal such as `a^2 b c` or `0:1 1:1`; `1` is the identity.
    pub fn parse_raw(&self, text: &str) -> Result<Vec<Syllable>, WordError> {
        let mut raw = Vec::new();
        let mut pos = 0;
        for token in text.split_whitespace() {
            let start = pos + text[pos..].find(token).unwrap_or(0);
            pos = start + token.len();
            let err = |msg: String| WordError::Parse { pos: start, msg };
            if token == "1" {
                continue;
            }
            let (factor, letter) = if let Some((f, e)) = token.split_once(':') {
                let f = f.parse::<u32>().map_err(|_| err(format!("bad factor index `{f}`")))?;
                let e = e.parse::<Elem>().map_err(|_| err(format!("bad element index `{e}`")))?;
                (f, e)
            } else {
                let mut chars = token.chars();
                let c = chars.next().unwrap_or(' ');
                let f = self.factor_by_name(c).ok_or_else(|| err(format!("unknown factor name `{c}`")))? as u32;
                let rest = chars.as_str();
                let e = if rest.is_empty() {
                    1
                } else {
                    let e = rest.strip_prefix('^').ok_or_else(|| err(format!("unexpected `{rest}`")))?;
                    e.parse::<Elem>().map_err(|_| err(format!("bad exponent `{e}`")))?
                };
                (f, e)
            };
            let s = Syllable::new(factor, letter);
            self.check_syllable(raw.len(), s).map_err(|e| err(e.to_string()))?;
            raw.push(s);
        }
        Ok(raw)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let raw = self.parse_raw(text)?;
        self.reduce(&raw)
    }
}

/// Stack reduction that records whether the first and last input syllables
/// survive untouched (neither cancelled nor merged).
pub fn reduce_tracking_ends(sig: &Signature, raw: &[Syllable]) -> (Word, bool, bool) {
    let mut stack: Vec<(Syllable, Option<usize>)> = Vec::with_capacity(raw.len());
    for (i, &s) in raw.iter().enumerate() {
        if s.letter == 0 {
            continue;
        }
        match stack.last_mut() {
            Some((top, origin)) if top.factor == s.factor => {
                let m = sig.factor(s.factor).mul(top.letter, s.letter);
                if m == 0 {
                    stack.pop();
                } else {
                    top.letter = m;
                    *origin = None;
                }
            }
            _ => stack.push((s, Some(i))),
        }
    }
    let first = stack.first().is_some_and(|(_, o)| *o == Some(0));
    let last = stack.last().is_some_and(|(_, o)| *o == Some(raw.len() - 1));
    (Word(stack.into_iter().map(|(s, _)| s).collect()), first, last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z2z2() -> Signature {
        Signature::cyclic(&[2, 2, 2]).unwrap()
    }

    fn w(sig: &Signature, s: &str) -> Word {
        sig.parse_word(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let sig = Signature::cyclic(&[5, 2]).unwrap();
        let raw = sig.parse_raw("b a^4 a^3 b").unwrap();
        assert_eq!(sig.reduce(&raw).unwrap(), w(&sig, "b a^2 b"));
        assert_eq!(sig.reduce(&[]).unwrap(), Word::one());
        let raw = sig.parse_raw("a b b a^4").unwrap();
        assert_eq!(sig.reduce(&raw).unwrap(), Word::one());
        assert_eq!(sig.reduce(&[Syllable::new(2, 1)]), Err(WordError::UnknownFactor { position: 0, factor: 2 }));
        assert_eq!(
            sig.reduce(&[Syllable::new(0, 1), Syllable::new(1, 2)]),
            Err(WordError::LetterOutOfRange { position: 1, factor: 1, letter: 2 })
        );
    }

    #[test]
    fn arithmetic_examples() {
        let sig = z2z2z2();
        assert_eq!(sig.comm(&w(&sig, "a b"), &w(&sig, "b c")), w(&sig, "b a c b a c"));
        let u = w(&sig, "a b c a");
        assert!(sig.mul(&u, &sig.inv(&u)).is_one());
        let d = Signature::cyclic(&[2, 2]).unwrap();
        assert_eq!(d.pow(&w(&d, "a b"), 3), w(&d, "a b a b a b"));
        assert_eq!(d.pow(&w(&d, "a b"), -1), w(&d, "b a"));
        assert_eq!(d.pow(&w(&d, "a"), 2), Word::one());
        let z5 = Signature::cyclic(&[5, 2]).unwrap();
        // Merge-case power: (a b a)³ = a (b a²)³ a⁴ = a b a² b a² b a².
        let x = w(&z5, "a b a");
        let naive = z5.mul_all(&[&x, &x, &x]);
        assert_eq!(z5.pow(&x, 3), naive);
        assert_eq!(z5.pow_len(&x, 3), naive.len());
        assert_eq!(z5.pow(&w(&z5, "b a^2 b"), 5), Word::one());
        assert_eq!(z5.pow_len(&w(&z5, "b a^2 b"), 5), 0);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let sig = z2z2z2();
        let (core, f) = sig.cyclic_reduce(&w(&sig, "a b c b a"));
        assert_eq!((core, f), (w(&sig, "c"), w(&sig, "b a")));
        assert_eq!(sig.central_length(&w(&sig, "b a c b a c")), 6);
        assert_eq!(sig.central_length(&Word::one()), 0);
        assert!(!sig.is_hyperbolic(&w(&sig, "a b c b a")));
        assert!(sig.is_hyperbolic(&w(&sig, "b a c b a c")));
        assert!(!sig.is_hyperbolic(&Word::one()));
        // Merge case: a b a² in Z5*Z2 is conjugate to b a³.
        let z5 = Signature::cyclic(&[5, 2]).unwrap();
        let x = w(&z5, "a b a^2");
        let (core, f) = z5.cyclic_reduce(&x);
        assert_eq!(core, w(&z5, "b a^3"));
        assert_eq!(z5.conj(&core, &f), x);
        assert_eq!(z5.central_length(&x), 2);
    }

    #[test]
    fn decomposition_examples() {
        let sig = z2z2z2();
        let x = w(&sig, "b a c a c a c b");
        let d = sig.hyperbolic_decompose(&x).unwrap();
        assert_eq!(d, HypDecomposition { a: w(&sig, "a c"), k: 3, f: w(&sig, "b") });
        assert_eq!(x.len(), d.k * d.a.len() + 2 * d.f.len());
        assert_eq!(sig.reassemble(&d), x);
        let d = sig.hyperbolic_decompose(&w(&sig, "b a c b a c")).unwrap();
        assert_eq!(d, HypDecomposition { a: w(&sig, "b a c"), k: 2, f: Word::one() });
        assert_eq!(sig.radical_length(&w(&sig, "b a c b a c")), Ok(3));
        let dd = Signature::cyclic(&[2, 2]).unwrap();
        let d = dd.hyperbolic_decompose(&w(&dd, "a b a b a b")).unwrap();
        assert_eq!((d.a, d.k, d.f), (w(&dd, "a b"), 3, Word::one()));
        assert_eq!(sig.hyperbolic_decompose(&w(&sig, "a")), Err(WordError::NotHyperbolic));
    }

    #[test]
    fn simple_roots_centralizers() {
        let sig = z2z2z2();
        assert!(sig.is_simple(&w(&sig, "b a c")));
        assert!(!sig.is_simple(&w(&sig, "b a c b a c")));
        let z5 = Signature::cyclic(&[5, 2]).unwrap();
        assert!(z5.is_simple(&w(&z5, "a b")));
        let x = w(&sig, "b a c a c a c b");
        assert_eq!(sig.root(&x, 3).unwrap(), Some(w(&sig, "b a c b")));
        let y = w(&sig, "b a c b a c");
        assert_eq!(sig.root(&y, 2).unwrap(), Some(w(&sig, "b a c")));
        assert_eq!(sig.root(&y, 4).unwrap(), None);
        assert_eq!(sig.centralizer_generator(&y).unwrap(), w(&sig, "b a c"));
        assert_eq!(sig.centralizer_generator(&x).unwrap(), w(&sig, "b a c b"));
        let dd = Signature::cyclic(&[2, 2]).unwrap();
        assert_eq!(dd.centralizer_generator(&w(&dd, "a b a b a b")).unwrap(), w(&dd, "a b"));
    }

    #[test]
    fn centralizer_oracle() {
        // Everything of length ≤ 4 commuting with bacbac is a power of bac.
        let sig = z2z2z2();
        let x = w(&sig, "b a c b a c");
        let g = sig.centralizer_generator(&x).unwrap();
        let powers: Vec<Word> = (-3..=3).map(|k| sig.pow(&g, k)).collect();
        for c in crate::verify::enumerate_words(&sig, 4) {
            if sig.commutes(&c, &x) {
                assert!(powers.contains(&c), "{c} commutes but is not a power");
            }
        }
    }

    #[test]
    fn conjugacy_examples() {
        let sig = z2z2z2();
        let (u, v) = (w(&sig, "b a c b a c"), w(&sig, "a c b a c b"));
        let g = sig.are_conjugate(&u, &v).unwrap();
        assert_eq!(g, w(&sig, "b"));
        assert_eq!(sig.conj(&u, &g), v);
        // g⁻¹ (abcba) g = c forces g = ab.
        let u = w(&sig, "a b c b a");
        let g = sig.are_conjugate(&u, &w(&sig, "c")).unwrap();
        assert_eq!(g, w(&sig, "a b"));
        assert_eq!(sig.conj(&u, &g), w(&sig, "c"));
        let z5 = Signature::cyclic(&[5, 2]).unwrap();
        let g = z5.are_conjugate(&w(&z5, "a b"), &w(&z5, "b a")).unwrap();
        assert_eq!(g, w(&z5, "a"));
        assert_eq!(z5.are_conjugate(&w(&z5, "a b"), &w(&z5, "a^2 b")), None);
        assert_eq!(z5.are_conjugate(&w(&z5, "a"), &w(&z5, "b")), None);
        assert_eq!(z5.are_conjugate(&w(&z5, "a"), &w(&z5, "a^2")), None);
    }

    #[test]
    fn parse_and_display() {
        let sig = Signature::cyclic(&[5, 2, 3]).unwrap();
        let x = w(&sig, "a^2 b c^2");
        assert_eq!(x.to_string(), "a^2 b c^2");
        assert_eq!(w(&sig, &x.to_string()), x);
        assert_eq!(w(&sig, "0:2 1:1"), w(&sig, "a^2 b"));
        assert_eq!(w(&sig, "1"), Word::one());
        assert_eq!(Word::one().to_string(), "1");
        assert!(matches!(sig.parse_word("a d"), Err(WordError::Parse { pos: 2, .. })));
        assert!(matches!(sig.parse_word("a^7"), Err(WordError::Parse { pos: 0, .. })));
        assert!(matches!(sig.parse_word("a b^x"), Err(WordError::Parse { pos: 2, .. })));
    }

    #[test]
    fn tracking_ends() {
        let sig = z2z2z2();
        let raw = sig.parse_raw("a b b c").unwrap();
        let (x, first, last) = reduce_tracking_ends(&sig, &raw);
        assert_eq!(x, w(&sig, "a c"));
        assert!(first && last);
        let raw = sig.parse_raw("a b b a c").unwrap();
        let (_, first, last) = reduce_tracking_ends(&sig, &raw);
        assert!(!first && last);
    }

    #[test]
    fn primitive_periods() {
        assert_eq!(primitive_period(&[1, 2, 1, 2]), 2);
        assert_eq!(primitive_period(&[1, 2, 1]), 3);
        assert_eq!(primitive_period::<u8>(&[]), 0);
        assert_eq!(find_all(&[1, 2], &[1, 2, 1, 2, 1]), vec![0, 2]);
    }
}
