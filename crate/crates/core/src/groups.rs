//! Finite factor groups given by Cayley tables, and signatures of free products.

use std::fmt;
use std::path::Path;

/// Index of an element inside a factor group. The identity is always `0`.
pub type Elem = u32;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("a free product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("factor {index} is trivial")]
    TrivialFactor { index: usize },
    #[error("bad group spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// A finite group as a Cayley table with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactorGroup {
    id: usize,
    order: usize,
    mult: Vec<Elem>,
    inv: Vec<Elem>,
    /// Label of the source table, kept for display (`Z5`, `table`).
    label: String,
}

impl fmt::Debug for FactorGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactorGroup({}, id {})", self.label, self.id)
    }
}

impl FactorGroup {
    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidOrder(n));
        }
        let mult = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as Elem)).collect();
        let inv = (0..n).map(|i| ((n - i) % n) as Elem).collect();
        Ok(Self { id: 0, order: n, mult, inv, label: format!("Z{n}") })
    }

    /// Validates a Cayley table and re-indexes it so that the identity is `0`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), order: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order: n });
                }
            }
        }
        let e = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)).ok_or(GroupError::NoIdentity)?;
        // Swap labels 0 and e so that the identity becomes 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mult = vec![0 as Elem; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[relabel(i) * n + relabel(j)] = relabel(table[i][j]) as Elem;
            }
        }
        let mut inv = vec![0 as Elem; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mult[g * n + h] == 0 && mult[h * n + g] == 0)
                .ok_or(GroupError::NoInverse(relabel(g)))?;
            inv[g] = h as Elem;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if mult[ab * n + c] != mult[a * n + bc] {
                        return Err(GroupError::NonAssociative(relabel(a), relabel(b), relabel(c)));
                    }
                }
            }
        }
        Ok(Self { id: 0, order: n, mult, inv, label: "table".to_string() })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `a^e` for any integer exponent.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let (mut base, mut e) = if e < 0 { (self.inv(a), e.unsigned_abs()) } else { (a, e as u64) };
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Order of the element `a`.
    pub fn elem_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest `t` with `t⁻¹ g t = h`, if any.
    pub fn conjugacy_in_factor(&self, g: Elem, h: Elem) -> Option<Elem> {
        (0..self.order as Elem).find(|&t| self.mul(self.mul(self.inv(t), g), t) == h)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| self.mult[a * n + b] == self.mult[b * n + a]))
    }
}

/// Validates `n ≥ 2` and builds the cyclic group.
pub fn make_cyclic(n: usize) -> Result<FactorGroup, GroupError> {
    FactorGroup::cyclic(n)
}

pub fn make_from_table(table: &[Vec<usize>]) -> Result<FactorGroup, GroupError> {
    FactorGroup::from_table(table)
}

pub fn conjugacy_in_factor(f: &FactorGroup, g: Elem, h: Elem) -> Option<Elem> {
    f.conjugacy_in_factor(g, h)
}

/// An ordered list of at least two nontrivial factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    factors: Vec<FactorGroup>,
}

impl Signature {
    pub fn new(factors: Vec<FactorGroup>) -> Result<Self, GroupError> {
        if factors.len() < 2 {
            return Err(GroupError::TooFewFactors(factors.len()));
        }
        let mut factors = factors;
        for (i, f) in factors.iter_mut().enumerate() {
            if f.order < 2 {
                return Err(GroupError::TrivialFactor { index: i });
            }
            f.id = i;
        }
        Ok(Self { factors })
    }

    /// Free product of cyclic groups of the given orders.
    pub fn cyclic(orders: &[usize]) -> Result<Self, GroupError> {
        Self::new(orders.iter().map(|&n| FactorGroup::cyclic(n)).collect::<Result<_, _>>()?)
    }

    /// Parses `Z2*Z2*Z3`; `table:<file>` is read from disk.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("table:") {
            return Self::from_table_file(Path::new(path));
        }
        let bad = |reason: String| GroupError::BadSpec { spec: spec.to_string(), reason };
        let mut factors = Vec::new();
        for part in spec.split('*') {
            let part = part.trim();
            let n = part
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("expected a factor like `Z3`, got `{part}`")))?;
            factors.push(FactorGroup::cyclic(n)?);
        }
        Self::new(factors)
    }

    pub fn from_table_file(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::BadSpec { spec: path.display().to_string(), reason: e.to_string() })?;
        Self::from_table_text(&text)
    }

    /// Blocks of `order n` followed by `n` rows of `n` integers.
    pub fn from_table_text(text: &str) -> Result<Self, GroupError> {
        let bad = |reason: String| GroupError::BadSpec { spec: "table".to_string(), reason };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut factors = Vec::new();
        while let Some(header) = lines.next() {
            let n = header
                .strip_prefix("order")
                .and_then(|n| n.trim().parse::<usize>().ok())
                .ok_or_else(|| bad(format!("expected `order n`, got `{header}`")))?;
            let mut table = Vec::with_capacity(n);
            for r in 0..n {
                let row = lines.next().ok_or_else(|| bad(format!("missing row {r} of a block of order {n}")))?;
                let row = row
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(row);
            }
            factors.push(FactorGroup::from_table(&table)?);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[FactorGroup] {
        &self.factors
    }

    #[inline]
    pub fn factor(&self, i: u32) -> &FactorGroup {
        &self.factors[i as usize]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Display name of factor `i`: `a`, `b`, … for the first 26 factors.
    pub fn factor_name(&self, i: usize) -> Option<char> {
        (i < 26).then(|| (b'a' + i as u8) as char)
    }

    pub fn factor_by_name(&self, c: char) -> Option<usize> {
        let i = (c as u32).checked_sub('a' as u32)? as usize;
        (c.is_ascii_lowercase() && i < self.factors.len()).then_some(i)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.factors.iter().map(|g| g.label.clone()).collect();
        write!(f, "{}", parts.join("*"))
    }
}
