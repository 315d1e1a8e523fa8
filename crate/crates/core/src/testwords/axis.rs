//! `L₂`, the normalization of `[X1¹⁰, X2^{10k}]` to a power of a simple word,
//! the search for `κ`, and the block structure of a conjugate of `L₂(X1, X2ᵏ)`.

use crate::groups::Signature;
use crate::slp::WordExpr;
use crate::words::Word;

use super::TestWordError;

/// `c⁵⁰⁰⁰ e0 c²⁰⁰ e1 c⁴⁰⁰ e0⁻¹ c⁶⁰⁰ e1⁻¹ c⁵⁰⁰⁰` with `c = [e0¹⁰, e1¹⁰]`.
pub fn l2(e0: &WordExpr, e1: &WordExpr) -> WordExpr {
    let c = WordExpr::comm(&WordExpr::pow(e0, 10), &WordExpr::pow(e1, 10));
    let c5000 = WordExpr::pow(&c, 5000);
    WordExpr::product(&[
        c5000.clone(),
        e0.clone(),
        WordExpr::pow(&c, 200),
        e1.clone(),
        WordExpr::pow(&c, 400),
        WordExpr::inv(e0),
        WordExpr::pow(&c, 600),
        WordExpr::inv(e1),
        c5000,
    ])
}

/// `L₂(z₀, z₁)`.
pub fn l2_vars() -> WordExpr {
    l2(&WordExpr::var(0), &WordExpr::var(1))
}

/// `[X1¹⁰, X2^{10k}] = B^l` after conjugation by `s`, with `Yᵢ = Xᵢˢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorAxisData {
    pub b: Word,
    pub l: usize,
    pub s: Word,
    pub y1: Word,
    pub y2: Word,
    pub k: u64,
    /// The commutator `[X1¹⁰, X2^{10k}]` itself.
    pub c: Word,
    /// The conjugator of the hyperbolic decomposition of `c`.
    pub f: Word,
    /// `s = f⁻¹·Bʲ`.
    pub j: i64,
}

impl CommutatorAxisData {
    pub fn b_len(&self) -> usize {
        self.b.len()
    }

    /// `|B^l|`, which is `l·|B|` since `B` is cyclically reduced.
    pub fn bl_len(&self) -> usize {
        self.l * self.b.len()
    }

    /// The three conditions `l ∈ {1,2}`, `|B| > N`, `4|B| > |s|`.
    pub fn meets_v3(&self, n: u64) -> bool {
        (1..=2).contains(&self.l) && self.b.len() as u64 > n && 4 * self.b.len() > self.s.len()
    }
}

pub(crate) fn check_pair(sig: &Signature, x1: &Word, x2: &Word) -> Result<(), TestWordError> {
    for x in [x1, x2] {
        if !sig.is_hyperbolic(x) {
            return Err(TestWordError::NotHyperbolic(x.to_string()));
        }
    }
    if sig.commutes(x1, x2) {
        return Err(TestWordError::CommutingPair(format!("{x1}, {x2}")));
    }
    Ok(())
}

fn commutator_len_bound(sig: &Signature, x1: &Word, x2: &Word, k: u64) -> usize {
    let e = 10i64.saturating_mul(k as i64);
    2 * sig.pow_len(x1, 10) + 2 * sig.pow_len(x2, e)
}

/// Computes `B`, `l` and a conjugator `s = f⁻¹Bʲ` (`|j| ≤ 2l+4`, scanned as
/// `0, 1, −1, 2, …`) satisfying the three normalization conditions.
pub fn commutator_axis_data(
    sig: &Signature,
    x1: &Word,
    x2: &Word,
    k: u64,
    budget: usize,
) -> Result<CommutatorAxisData, TestWordError> {
    check_pair(sig, x1, x2)?;
    if k == 0 {
        return Err(TestWordError::PropertyViolated("k must be positive".into()));
    }
    let bound = commutator_len_bound(sig, x1, x2, k);
    if bound > budget {
        return Err(TestWordError::BudgetExceeded { what: format!("[X1^10, X2^{}]", 10 * k), length: bound, budget });
    }
    let x2k = sig.pow(x2, k as i64);
    let c = sig.comm(&sig.pow(x1, 10), &sig.pow(&x2k, 10));
    let d = sig
        .hyperbolic_decompose(&c)
        .map_err(|_| TestWordError::PropertyViolated(format!("[X1^10, X2^{}] is elliptic", 10 * k)))?;
    let (b, l, f) = (d.a, d.k, d.f);
    let cc = l * b.len();
    let bl = sig.pow(&b, l as i64);
    let f_inv = sig.inv(&f);
    let range = 2 * l as i64 + 4;
    for step in 0..=2 * range {
        let j = if step % 2 == 1 { (step + 1) / 2 } else { -(step / 2) };
        let s = sig.mul(&f_inv, &sig.pow(&b, j));
        let y1 = sig.conj(x1, &s);
        let y2 = sig.conj(x2, &s);
        let y2k = sig.pow(&y2, k as i64);
        if 4 * cc <= y1.len().max(y2k.len()) {
            continue;
        }
        if sig.commutes(&y1, &b) || sig.commutes(&y2, &b) {
            continue;
        }
        if sig.comm(&sig.pow(&y1, 10), &sig.pow(&y2k, 10)) != bl {
            return Err(TestWordError::PropertyViolated(format!("[Y1^10, Y2^10k] != B^l for s = {s}")));
        }
        return Ok(CommutatorAxisData { b, l, s, y1, y2, k, c, f, j });
    }
    Err(TestWordError::SearchExhausted { what: "s = f^-1 B^j".into(), tried: format!("|j| <= {range}") })
}

#[derive(Clone, Copy, Debug)]
pub struct KappaOptions {
    /// How many values of `k` to try past the first admissible one.
    pub window: u64,
    pub budget: usize,
}

impl Default for KappaOptions {
    fn default() -> Self {
        Self { window: 64, budget: crate::slp::default_budget() }
    }
}

/// Smallest `k` with `2|X1¹⁰| + 4|f₂| + 20k|X2|_c > N`, where `f₂` is the
/// conjugator of the cyclic core of `X2`. Below it `|B| ≤ |c| ≤ N`.
fn kappa_start(sig: &Signature, n: u64, x1: &Word, x2: &Word) -> u64 {
    let (core2, f2) = sig.cyclic_reduce(x2);
    let a = (2 * sig.pow_len(x1, 10) + 4 * f2.len()) as u64;
    let per = 20 * core2.len() as u64;
    if a + per > n {
        1
    } else {
        (n - a) / per + 1
    }
}

/// The smallest `k` (from the admissible start, within the window) at which
/// `l ∈ {1,2}`, `|B| > N` and `4|B| > |s|` hold, with its axis data.
pub fn kappa_data(
    sig: &Signature,
    n: u64,
    x1: &Word,
    x2: &Word,
    opts: KappaOptions,
) -> Result<CommutatorAxisData, TestWordError> {
    check_pair(sig, x1, x2)?;
    let start = kappa_start(sig, n, x1, x2);
    let end = start + opts.window;
    for k in start..=end {
        match commutator_axis_data(sig, x1, x2, k, opts.budget) {
            Ok(d) if d.meets_v3(n) => return Ok(d),
            Ok(_) | Err(TestWordError::SearchExhausted { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Err(TestWordError::SearchExhausted { what: format!("kappa({n})"), tried: format!("k in {start}..={end}") })
}

pub fn kappa(sig: &Signature, n: u64, x1: &Word, x2: &Word, opts: KappaOptions) -> Result<u64, TestWordError> {
    kappa_data(sig, n, x1, x2, opts).map(|d| d.k)
}

/// `W = L₂(X1, X2ᵏ)^g` with `g = s·B^{4990l}`, cut as `T₁R₁T₂R₂T₃R₃T₄R₄`.
#[derive(Clone, Debug)]
pub struct WStructure {
    pub data: CommutatorAxisData,
    pub t: [Word; 4],
    pub r: [Word; 4],
    pub conjugator: Word,
    pub w: Word,
    pub l2_value: Word,
}

impl WStructure {
    pub fn t_bounds_hold(&self) -> bool {
        let bl = self.data.bl_len();
        self.t.iter().all(|t| 4 * bl < t.len() && t.len() < 25 * bl)
    }

    pub fn w_bounds_hold(&self) -> bool {
        let bl = self.data.bl_len();
        11136 * bl < self.w.len() && self.w.len() < 11220 * bl
    }

    /// Every `Tᵢ` starts with the first syllable of `B` and ends with its last.
    pub fn t_ends_hold(&self) -> bool {
        let b = &self.data.b;
        self.t.iter().all(|t| t.first() == b.first() && t.last() == b.last())
    }
}

pub fn w_structure(sig: &Signature, x1: &Word, x2: &Word, k: u64, budget: usize) -> Result<WStructure, TestWordError> {
    let data = commutator_axis_data(sig, x1, x2, k, budget)?;
    let x2k = sig.pow(x2, k as i64);
    let l2_value = l2_vars().evaluate(sig, &[x1.clone(), x2k], budget)?;
    let d = sig
        .hyperbolic_decompose(&l2_value)
        .map_err(|_| TestWordError::PropertyViolated("L2 value is elliptic".into()))?;
    if d.k != 1 {
        return Err(TestWordError::PropertyViolated(format!("L2 value is a proper power (exponent {})", d.k)));
    }
    let (b, l) = (&data.b, data.l as i64);
    let conjugator = sig.mul(&data.s, &sig.pow(b, 4990 * l));
    let w = sig.conj(&l2_value, &conjugator);

    let b10 = sig.pow(b, 10 * l);
    let y2k = sig.pow(&data.y2, k as i64);
    let ys = [data.y1.clone(), y2k.clone(), sig.inv(&data.y1), sig.inv(&y2k)];
    let t = ys.map(|y| sig.mul_all(&[&b10, &y, &b10]));
    let r = [180, 380, 580, 9980].map(|e| sig.pow(b, e * l));

    let mut raw = Vec::with_capacity(w.len());
    for (ti, ri) in t.iter().zip(&r) {
        raw.extend_from_slice(ti.syllables());
        raw.extend_from_slice(ri.syllables());
    }
    if !crate::words::is_reduced(&raw) || raw != w.syllables() {
        return Err(TestWordError::StructureMismatch("W is not the graphical product T1R1T2R2T3R3T4R4".into()));
    }
    Ok(WStructure { data, t, r, conjugator, w, l2_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z2z3() -> Signature {
        Signature::cyclic(&[2, 3]).unwrap()
    }

    #[test]
    fn l2_shape() {
        let e = l2_vars();
        assert_eq!(e.exponent_sums(2), vec![BigInt::from(0), BigInt::from(0)]);
        let sig = z2z3();
        let x = sig.parse_word("a b").unwrap();
        let y = sig.pow(&x, 3);
        assert!(e.evaluate(&sig, &[x, y], 1000).unwrap().is_one());
    }

    #[test]
    fn axis_data_invariants() {
        let sig = z2z3();
        let x1 = sig.parse_word("a b").unwrap();
        let x2 = sig.parse_word("a b^2").unwrap();
        let d = commutator_axis_data(&sig, &x1, &x2, 1, 1 << 20).unwrap();
        assert!(sig.is_simple(&d.b));
        let y2k = sig.pow(&d.y2, 1);
        assert_eq!(sig.comm(&sig.pow(&d.y1, 10), &sig.pow(&y2k, 10)), sig.pow(&d.b, d.l as i64));
        assert!(4 * sig.central_length(&d.c) > d.y1.len().max(y2k.len()));
        assert!(!sig.commutes(&d.y1, &d.b) && !sig.commutes(&d.y2, &d.b));
        assert_eq!(sig.conj(&d.c, &d.s), sig.pow(&d.b, d.l as i64));
    }

    #[test]
    fn axis_data_errors() {
        let sig = z2z3();
        let x1 = sig.parse_word("a b").unwrap();
        let cube = sig.pow(&x1, 3);
        assert!(matches!(commutator_axis_data(&sig, &x1, &cube, 1, 1 << 20), Err(TestWordError::CommutingPair(_))));
        let a = sig.parse_word("a").unwrap();
        assert!(matches!(commutator_axis_data(&sig, &a, &x1, 1, 1 << 20), Err(TestWordError::NotHyperbolic(_))));
        assert!(matches!(kappa(&sig, 1, &x1, &cube, KappaOptions::default()), Err(TestWordError::CommutingPair(_))));
    }

    #[test]
    fn kappa_small_and_monotone() {
        let sig = z2z3();
        let x1 = sig.parse_word("a b").unwrap();
        let x2 = sig.parse_word("a b^2").unwrap();
        let opts = KappaOptions::default();
        let d = kappa_data(&sig, 1, &x1, &x2, opts).unwrap();
        assert!(d.meets_v3(1));
        assert!(d.k <= 3);
        let mut last = 0;
        for n in [1, 10, 50, 200, 1000] {
            let k = kappa(&sig, n, &x1, &x2, opts).unwrap();
            assert!(k >= last);
            last = k;
        }
    }

    #[test]
    fn w_structure_small() {
        let sig = z2z3();
        let x1 = sig.parse_word("a b").unwrap();
        let x2 = sig.parse_word("a b^2").unwrap();
        let ws = w_structure(&sig, &x1, &x2, 1, 5_000_000).unwrap();
        assert!(ws.t_bounds_hold() && ws.w_bounds_hold() && ws.t_ends_hold());
        assert_eq!(sig.conj(&ws.l2_value, &ws.conjugator), ws.w);
    }
}
