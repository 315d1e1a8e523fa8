//! Finite permutation images of a free product, for certifying that two
//! huge elements differ without writing them out.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::groups::Signature;
use crate::slp::Target;
use crate::words::Word;

/// A permutation of `0..n` as its image list. Products act on the right:
/// `(p·q)(x) = q(p(x))`, matching the reading order of words.
pub type Perm = Vec<u32>;

#[derive(Clone, Debug)]
pub struct PermGroup {
    pub degree: usize,
}

impl Target for PermGroup {
    type Elem = Perm;

    fn one(&self) -> Perm {
        (0..self.degree as u32).collect()
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.iter().map(|&x| b[x as usize]).collect()
    }

    fn inv(&self, a: &Perm) -> Perm {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        out
    }
}

/// A homomorphism from the free product onto a permutation group, given by
/// the images of every factor element.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// `images[f][g]` is the image of element `g` of factor `f`.
    pub images: Vec<Vec<Perm>>,
}

impl Quotient {
    /// Each factor acts by right multiplication on a random number of copies
    /// of itself and fixes the remaining points; the action is then
    /// relabelled by a random permutation, independently per factor.
    pub fn random<R: Rng>(sig: &Signature, rng: &mut R, degree_range: (usize, usize)) -> Self {
        let max_order = sig.factors().iter().map(|f| f.order()).max().unwrap_or(2);
        let degree = rng.gen_range(degree_range.0..=degree_range.1).max(max_order);
        let group = PermGroup { degree };
        let mut images = Vec::with_capacity(sig.num_factors());
        for fg in sig.factors() {
            let ord = fg.order();
            let copies = rng.gen_range(1..=degree / ord);
            let mut relabel: Vec<u32> = (0..degree as u32).collect();
            relabel.shuffle(rng);
            let per_elem = (0..ord as u32)
                .map(|g| {
                    let mut p: Perm = (0..degree as u32).collect();
                    for c in 0..copies {
                        for h in 0..ord {
                            let to = fg.mul(h as u32, g) as usize;
                            p[relabel[c * ord + h] as usize] = relabel[c * ord + to];
                        }
                    }
                    p
                })
                .collect();
            images.push(per_elem);
        }
        Self { group, images }
    }

    pub fn image(&self, w: &Word) -> Perm {
        w.syllables()
            .iter()
            .fold(self.group.one(), |acc, s| self.group.mul(&acc, &self.images[s.factor as usize][s.letter as usize]))
    }
}

/// Whether `z` is a power of `x`: `z` must rotate every cycle of `x` by a
/// fixed offset, and the offsets must agree modulo common cycle lengths.
pub fn in_cyclic_subgroup(x: &Perm, z: &Perm) -> bool {
    let n = x.len();
    let mut seen = vec![false; n];
    let mut constraints: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut p = x[start] as usize;
        while p != start {
            seen[p] = true;
            cycle.push(p);
            p = x[p] as usize;
        }
        let len = cycle.len();
        let Some(r) = cycle.iter().position(|&q| q == z[start] as usize) else {
            return false;
        };
        if (0..len).any(|i| z[cycle[i]] as usize != cycle[(i + r) % len]) {
            return false;
        }
        if len > 1 {
            constraints.push((r, len));
        }
    }
    constraints.sort_by_key(|c| c.1);
    constraints.dedup();
    for (i, &(r1, c1)) in constraints.iter().enumerate() {
        for &(r2, c2) in &constraints[i + 1..] {
            let g = c1.gcd(&c2);
            if r1 % g != r2 % g {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn images_respect_relations() {
        let sig = Signature::cyclic(&[2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let q = Quotient::random(&sig, &mut rng, (6, 20));
            let one = q.group.one();
            let a = q.image(&sig.parse_word("a").unwrap());
            let b = q.image(&sig.parse_word("b").unwrap());
            assert_eq!(q.group.mul(&a, &a), one);
            assert_eq!(q.group.pow(&b, 3), one);
            let u = sig.parse_word("a b a b^2").unwrap();
            let v = sig.parse_word("b a b").unwrap();
            let uv = sig.mul(&u, &v);
            assert_eq!(q.image(&uv), q.group.mul(&q.image(&u), &q.image(&v)));
        }
    }

    #[test]
    fn cyclic_membership_matches_enumeration() {
        let g = PermGroup { degree: 7 };
        // x = (0 1 2)(3 4 5 6)
        let x: Perm = vec![1, 2, 0, 4, 5, 6, 3];
        let powers: Vec<Perm> = (0..12).map(|e| g.pow(&x, e)).collect();
        for p in &powers {
            assert!(in_cyclic_subgroup(&x, p));
        }
        // Rotate the 3-cycle by 1 and the 4-cycle by 2: 1 ≢ 2 mod gcd(3,4)=1 is
        // fine, so this is a power; a transposition is not.
        let z: Perm = vec![1, 2, 0, 5, 6, 3, 4];
        assert!(powers.contains(&z) && in_cyclic_subgroup(&x, &z));
        let t: Perm = vec![1, 0, 2, 3, 4, 5, 6];
        assert!(!in_cyclic_subgroup(&x, &t));
        // (0 1)(2 3 4 5): rotating both by 1 is x itself; by (1, 2) is not a power.
        let y: Perm = vec![1, 0, 3, 4, 5, 2, 6];
        let w: Perm = vec![1, 0, 4, 5, 2, 3, 6];
        assert!(in_cyclic_subgroup(&y, &y));
        assert!(!in_cyclic_subgroup(&y, &w));
    }
}
