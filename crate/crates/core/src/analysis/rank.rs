use std::fmt;

use serde::{Serialize, Serializer};

use crate::group::{commutator, CayleyTable, Elem, ElementSet};

/// Word length, or `Infinite` for elements outside the generated subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }
}

impl std::ops::Add for Rank {
    type Output = Rank;

    fn add(self, rhs: Rank) -> Rank {
        match (self, rhs) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Infinite,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(r) => s.serialize_u32(*r),
            Rank::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTable {
    /// The base set after closing it under inverses.
    pub base: ElementSet,
    /// Whether inverses had to be added to the given set.
    pub symmetrized: bool,
    pub rank: Vec<Rank>,
    /// Largest finite rank.
    pub diameter: u32,
}

impl RankTable {
    pub fn get(&self, g: Elem) -> Rank {
        self.rank[g as usize]
    }
}

/// Breadth-first distances from the identity in the Cayley graph of
/// `<c>` with respect to `c` (closed under inverses).
pub fn rank_of(g: &CayleyTable, c: &ElementSet) -> RankTable {
    let mut base = c.clone();
    let mut symmetrized = false;
    for x in c.iter() {
        symmetrized |= base.insert(g.inv(x));
    }
    let steps: Vec<Elem> = base.iter().filter(|&x| x != 0).collect();
    let mut rank = vec![Rank::Infinite; g.order()];
    rank[0] = Rank::Finite(0);
    let mut frontier = vec![0 as Elem];
    let mut d = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &s in &steps {
                let y = g.mul(x, s);
                if rank[y as usize] == Rank::Infinite {
                    rank[y as usize] = Rank::Finite(d + 1);
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            d += 1;
        }
        frontier = next;
    }
    RankTable { base, symmetrized, rank, diameter: d }
}

/// The set of all commutators `[a, b]`.
pub fn commutator_set(g: &CayleyTable) -> ElementSet {
    let mut s = ElementSet::empty(g.order());
    for a in g.elements() {
        for b in g.elements() {
            s.insert(commutator(g, a, b));
        }
    }
    s
}

/// Rank of `x` with respect to the set of all commutators.
pub fn commutator_width(g: &CayleyTable, x: Elem) -> Rank {
    rank_of(g, &commutator_set(g)).get(x)
}
