//! The Bass–Serre tree of a free product, realised as a bipartite tree on
//! element-vertices `g` and coset-vertices `gH_a`. Lengths are in syllable units, edges / 2.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;

use crate::groups::Signature;
use crate::words::{Syllable, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("ball exceeds {cap} vertices")]
    BallTooLarge { cap: usize },
    #[error("axis overlap reaches the window boundary (window {window})")]
    WindowTooSmall { window: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeVertex {
    Element(Word),
    /// `rep·H_factor` with `rep` carrying no trailing syllable in `factor`.
    Coset {
        rep: Word,
        factor: u32,
    },
}

impl TreeVertex {
    pub fn element(w: Word) -> Self {
        TreeVertex::Element(w)
    }

    /// The coset `w·H_factor` with its canonical representative.
    pub fn coset(w: Word, factor: u32) -> Self {
        let rep = match w.last() {
            Some(s) if s.factor == factor => w.slice(0, w.len() - 1),
            _ => w,
        };
        TreeVertex::Coset { rep, factor }
    }

    pub fn rep(&self) -> &Word {
        match self {
            TreeVertex::Element(w) | TreeVertex::Coset { rep: w, .. } => w,
        }
    }

    pub fn is_element(&self) -> bool {
        matches!(self, TreeVertex::Element(_))
    }
}

impl std::fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeVertex::Element(w) => write!(f, "{w}"),
            TreeVertex::Coset { rep, factor } => {
                let name = if *factor < 26 { ((b'a' + *factor as u8) as char).to_string() } else { factor.to_string() };
                if rep.is_one() {
                    write!(f, "H_{name}")
                } else {
                    write!(f, "({rep})H_{name}")
                }
            }
        }
    }
}

/// A finite piece of an axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisSegment {
    pub vertices: Vec<TreeVertex>,
    pub paper_length: Ratio<u64>,
}

/// Overlap of two axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// The axes coincide.
    Unbounded,
    /// A common segment of this length in syllable units.
    Segment(Ratio<u64>),
}

pub fn syllable_units(edges: usize) -> Ratio<u64> {
    Ratio::new(edges as u64, 2)
}

/// Left action `v ↦ h·v`.
pub fn act(sig: &Signature, h: &Word, v: &TreeVertex) -> TreeVertex {
    match v {
        TreeVertex::Element(g) => TreeVertex::Element(sig.mul(h, g)),
        TreeVertex::Coset { rep, factor } => TreeVertex::coset(sig.mul(h, rep), *factor),
    }
}

/// Drops a leading syllable of `w` if it lies in `factor`.
fn strip_leading(w: &Word, factor: u32) -> Word {
    match w.first() {
        Some(s) if s.factor == factor => w.slice(1, w.len()),
        _ => w.clone(),
    }
}

/// Exact edge distance from the syllable structure of `rep1⁻¹·rep2`.
pub fn distance(sig: &Signature, v1: &TreeVertex, v2: &TreeVertex) -> usize {
    use TreeVertex::*;
    match (v1, v2) {
        (Element(g1), Element(g2)) => 2 * sig.mul(&sig.inv(g1), g2).len(),
        (Element(g), Coset { rep, factor }) | (Coset { rep, factor }, Element(g)) => {
            let c = TreeVertex::coset(sig.mul(&sig.inv(g), rep), *factor);
            2 * c.rep().len() + 1
        }
        (Coset { rep: u1, factor: a }, Coset { rep: u2, factor: b }) => {
            let c = TreeVertex::coset(sig.mul(&sig.inv(u1), u2), *b);
            let c = strip_leading(c.rep(), *a);
            if c.is_one() {
                if a == b {
                    0
                } else {
                    2
                }
            } else {
                2 * c.len() + 2
            }
        }
    }
}

pub fn neighbors(sig: &Signature, v: &TreeVertex) -> Vec<TreeVertex> {
    match v {
        TreeVertex::Element(g) => (0..sig.num_factors() as u32).map(|a| TreeVertex::coset(g.clone(), a)).collect(),
        TreeVertex::Coset { rep, factor } => (0..sig.factor(*factor).order() as u32)
            .map(|h| {
                let mut s = rep.syllables().to_vec();
                if h != 0 {
                    s.push(Syllable::new(*factor, h));
                }
                TreeVertex::Element(Word::from_reduced(s))
            })
            .collect(),
    }
}

/// Breadth-first ball with parent pointers; the oracle for distances.
#[derive(Clone, Debug)]
pub struct Ball {
    pub vertices: Vec<TreeVertex>,
    pub depth: Vec<usize>,
    pub parent: Vec<usize>,
    pub index: HashMap<TreeVertex, usize>,
}

impl Ball {
    /// Distance between two ball vertices along BFS-tree paths.
    pub fn tree_distance(&self, mut i: usize, mut j: usize) -> usize {
        let mut d = 0;
        while self.depth[i] > self.depth[j] {
            i = self.parent[i];
            d += 1;
        }
        while self.depth[j] > self.depth[i] {
            j = self.parent[j];
            d += 1;
        }
        while i != j {
            i = self.parent[i];
            j = self.parent[j];
            d += 2;
        }
        d
    }
}

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

pub fn bfs(sig: &Signature, center: &TreeVertex, radius: usize, cap: usize) -> Result<Ball, TreeError> {
    let mut ball = Ball { vertices: vec![center.clone()], depth: vec![0], parent: vec![0], index: HashMap::new() };
    ball.index.insert(center.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if ball.depth[i] == radius {
            continue;
        }
        for nb in neighbors(sig, &ball.vertices[i].clone()) {
            if ball.index.contains_key(&nb) {
                continue;
            }
            if ball.vertices.len() == cap {
                return Err(TreeError::BallTooLarge { cap });
            }
            let j = ball.vertices.len();
            ball.index.insert(nb.clone(), j);
            ball.vertices.push(nb);
            ball.depth.push(ball.depth[i] + 1);
            ball.parent.push(i);
            queue.push_back(j);
        }
    }
    Ok(ball)
}

/// All vertices within `radius` edges of `center`.
pub fn bfs_ball(sig: &Signature, center: &TreeVertex, radius: usize) -> Result<HashSet<TreeVertex>, TreeError> {
    Ok(bfs(sig, center, radius, DEFAULT_BALL_CAP)?.vertices.into_iter().collect())
}

/// The invariant line of `h = f⁻¹·A∘f` for `k ∈ [−window, window]`, built from
/// the vertices `f⁻¹Aᵏs₁⋯sᵢH` interleaved with the element-vertices `f⁻¹Aᵏs₁⋯sᵢ`.
pub fn axis(sig: &Signature, h: &Word, window: usize) -> Result<AxisSegment, TreeError> {
    let (core, f) = sig.cyclic_reduce(h);
    if core.len() < 2 {
        return Err(TreeError::NotHyperbolic);
    }
    let s = core.syllables();
    let n = s.len();
    let last_factor = s[n - 1].factor;
    let w = window as i64;
    let mut p = sig.mul(&sig.inv(&f), &sig.pow(&core, -w));
    let mut vertices = Vec::with_capacity(2 * n * (2 * window + 1) + 1);
    for _ in -w..=w {
        for i in 0..n {
            let factor = if i == 0 { last_factor } else { s[i - 1].factor };
            vertices.push(TreeVertex::coset(p.clone(), factor));
            vertices.push(TreeVertex::Element(p.clone()));
            p = sig.mul(&p, &Word::from_reduced(vec![s[i]]));
        }
    }
    vertices.push(TreeVertex::coset(p, last_factor));
    let edges = vertices.len() - 1;
    Ok(AxisSegment { vertices, paper_length: syllable_units(edges) })
}

/// Minimal displacement along the axis, in syllable units.
pub fn translation_length(sig: &Signature, h: &Word) -> Result<Ratio<u64>, TreeError> {
    let seg = axis(sig, h, 0)?;
    let min = seg.vertices.iter().map(|v| distance(sig, v, &act(sig, h, v))).min().unwrap_or(0);
    Ok(syllable_units(min))
}

/// Default window for [`axis_overlap`]: generous enough to contain the
/// common segment of two noncommuting axes near their conjugators.
pub fn default_window(sig: &Signature, h1: &Word, h2: &Word) -> usize {
    let (c1, f1) = sig.cyclic_reduce(h1);
    let (c2, f2) = sig.cyclic_reduce(h2);
    2 * (c1.len() + c2.len() + f1.len() + f2.len())
}

/// Length of the common segment of the axes of `h1` and `h2`.
pub fn axis_overlap(sig: &Signature, h1: &Word, h2: &Word, window: usize) -> Result<Option<Overlap>, TreeError> {
    let a1 = axis(sig, h1, window)?;
    let a2 = axis(sig, h2, window)?;
    if sig.commutes(h1, h2) {
        return Ok(Some(Overlap::Unbounded));
    }
    let on2: HashMap<&TreeVertex, usize> = a2.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let common: Vec<(usize, usize)> =
        a1.vertices.iter().enumerate().filter_map(|(i, v)| on2.get(v).map(|&j| (i, j))).collect();
    let (Some(first), Some(last)) = (common.first(), common.last()) else {
        return Ok(None);
    };
    let (end1, end2) = (a1.vertices.len() - 1, a2.vertices.len() - 1);
    let touches = |&(i, j): &(usize, usize)| i == 0 || i == end1 || j == 0 || j == end2;
    if touches(first) || touches(last) {
        return Err(TreeError::WindowTooSmall { window });
    }
    Ok(Some(Overlap::Segment(syllable_units(last.0 - first.0))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z3() -> Signature {
        Signature::cyclic(&[2, 3]).unwrap()
    }

    fn w(sig: &Signature, s: &str) -> Word {
        sig.parse_word(s).unwrap()
    }

    fn el(sig: &Signature, s: &str) -> TreeVertex {
        TreeVertex::Element(w(sig, s))
    }

    fn co(sig: &Signature, s: &str, f: u32) -> TreeVertex {
        TreeVertex::coset(w(sig, s), f)
    }

    #[test]
    fn action_examples() {
        let sig = z2z3();
        assert_eq!(act(&sig, &w(&sig, "b"), &co(&sig, "1", 0)), co(&sig, "b", 0));
        assert_eq!(act(&sig, &w(&sig, "a"), &co(&sig, "a", 0)), co(&sig, "1", 0));
        assert_eq!(act(&sig, &w(&sig, "a b"), &el(&sig, "1")), el(&sig, "a b"));
    }

    #[test]
    fn distance_examples() {
        let sig = z2z3();
        assert_eq!(distance(&sig, &co(&sig, "1", 0), &co(&sig, "1", 1)), 2);
        assert_eq!(distance(&sig, &el(&sig, "1"), &el(&sig, "a b")), 4);
        let v = co(&sig, "a b", 0);
        assert_eq!(distance(&sig, &v, &v), 0);
    }

    #[test]
    fn balls() {
        let sig = z2z3();
        let one = el(&sig, "1");
        let b1 = bfs_ball(&sig, &one, 1).unwrap();
        assert_eq!(b1.len(), 3);
        assert!(b1.contains(&co(&sig, "1", 0)) && b1.contains(&co(&sig, "1", 1)));
        let b2 = bfs_ball(&sig, &one, 2).unwrap();
        assert_eq!(b2.len(), 6);
        for x in ["a", "b", "b^2"] {
            assert!(b2.contains(&el(&sig, x)));
        }
        assert_eq!(bfs_ball(&sig, &one, 0).unwrap().len(), 1);
        assert_eq!(bfs(&sig, &one, 10, 5).unwrap_err(), TreeError::BallTooLarge { cap: 5 });
    }

    #[test]
    fn closed_form_matches_bfs() {
        for sig in [z2z3(), Signature::cyclic(&[2, 2, 2]).unwrap(), Signature::cyclic(&[3, 4]).unwrap()] {
            let ball = bfs(&sig, &el(&sig, "1"), 7, DEFAULT_BALL_CAP).unwrap();
            let n = ball.vertices.len();
            for i in (0..n).step_by(3) {
                for j in (0..n).step_by(7) {
                    let (u, v) = (&ball.vertices[i], &ball.vertices[j]);
                    assert_eq!(distance(&sig, u, v), ball.tree_distance(i, j), "{u} {v}");
                }
            }
        }
    }

    #[test]
    fn axis_examples() {
        let sig = z2z3();
        let h = w(&sig, "a b");
        let seg = axis(&sig, &h, 1).unwrap();
        // The k = 0 period: H_b, 1, H_a, a, (ab)H_b.
        let mid = &seg.vertices[4..9];
        assert_eq!(mid, &[co(&sig, "1", 1), el(&sig, "1"), co(&sig, "1", 0), el(&sig, "a"), co(&sig, "a b", 1)]);
        for pair in seg.vertices.windows(2) {
            assert_eq!(distance(&sig, &pair[0], &pair[1]), 1);
            assert_ne!(pair[0].is_element(), pair[1].is_element());
        }
        // h shifts every vertex one period along.
        for i in 0..seg.vertices.len() - 4 {
            assert_eq!(act(&sig, &h, &seg.vertices[i]), seg.vertices[i + 4]);
        }
        let seg0 = axis(&sig, &h, 0).unwrap();
        assert_eq!(seg0.vertices.len() - 1, 2 * 2);
        assert_eq!(seg0.paper_length, Ratio::from_integer(2));
        assert_eq!(axis(&sig, &w(&sig, "a"), 1), Err(TreeError::NotHyperbolic));
    }

    #[test]
    fn translation_lengths() {
        let sig = z2z3();
        assert_eq!(translation_length(&sig, &w(&sig, "a b")).unwrap(), Ratio::from_integer(2));
        assert_eq!(translation_length(&sig, &w(&sig, "a b a b a b")).unwrap(), Ratio::from_integer(6));
        let s3 = Signature::cyclic(&[2, 2, 2]).unwrap();
        assert_eq!(translation_length(&s3, &w(&s3, "b a c b a c")).unwrap(), Ratio::from_integer(6));
        // Conjugated and merge-case inputs.
        let x = w(&sig, "b a b a b");
        assert_eq!(translation_length(&sig, &x).unwrap(), Ratio::from_integer(sig.central_length(&x) as u64));
    }

    #[test]
    fn overlaps() {
        let sig = z2z3();
        let h = w(&sig, "a b");
        assert_eq!(axis_overlap(&sig, &h, &h, 4).unwrap(), Some(Overlap::Unbounded));
        let h2 = w(&sig, "b a");
        let win = default_window(&sig, &h, &h2);
        match axis_overlap(&sig, &h, &h2, win).unwrap() {
            Some(Overlap::Segment(len)) => assert!(len <= Ratio::from_integer(3)),
            Some(Overlap::Unbounded) => panic!("ab and ba do not commute"),
            None => {}
        }
        let s3 = Signature::cyclic(&[2, 2, 2]).unwrap();
        let (x, y) = (w(&s3, "a b"), w(&s3, "c a b c"));
        let win = default_window(&s3, &x, &y);
        let o = axis_overlap(&s3, &x, &y, win).unwrap();
        assert!(matches!(o, None | Some(Overlap::Segment(_))));
        if let Some(Overlap::Segment(len)) = o {
            assert_eq!(len, Ratio::from_integer(0));
        }
    }

    #[test]
    fn isometries_and_stabilizers() {
        let sig = z2z3();
        let ball = bfs(&sig, &el(&sig, "1"), 4, DEFAULT_BALL_CAP).unwrap();
        let words: Vec<Word> = crate::verify::enumerate_words(&sig, 3).collect();
        for g in &words {
            for (i, u) in ball.vertices.iter().enumerate().step_by(2) {
                let v = &ball.vertices[(i * 7 + 3) % ball.vertices.len()];
                assert_eq!(distance(&sig, &act(&sig, g, u), &act(&sig, g, v)), distance(&sig, u, v));
            }
            // Stabilizer of uH_a is the conjugate u H_a u⁻¹.
            for v in &ball.vertices {
                if let TreeVertex::Coset { rep, factor } = v {
                    let fixes = act(&sig, g, v) == *v;
                    let c = sig.mul_all(&[&sig.inv(rep), g, rep]);
                    let inside = c.is_one() || (c.len() == 1 && c.first().unwrap().factor == *factor);
                    assert_eq!(fixes, inside);
                }
            }
            // Element-vertex stabilizers, hence edge stabilizers, are trivial.
            if !g.is_one() {
                for v in &ball.vertices {
                    if v.is_element() && act(&sig, g, v) == *v {
                        panic!("{g} fixes element vertex {v}");
                    }
                }
            }
        }
    }
}
