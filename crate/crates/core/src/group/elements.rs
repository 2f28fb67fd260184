use serde::{Serialize, Serializer};

/// A subset of `0..n`, stored as a bitmap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: usize,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { n, bits: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(n: usize, items: I) -> Self {
        let mut s = Self::empty(n);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Universe size the set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        x < self.n && self.bits[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Returns true when `x` was not yet present.
    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let x = x as usize;
        assert!(x < self.n, "element {x} outside universe {}", self.n);
        let word = &mut self.bits[x >> 6];
        let mask = 1u64 << (x & 63);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn remove(&mut self, x: u32) {
        let x = x as usize;
        if x < self.n {
            self.bits[x >> 6] &= !(1u64 << (x & 63));
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((wi as u32) * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }

    /// Image under an element map `x -> map[x]`.
    pub fn map(&self, map: &[u32]) -> ElementSet {
        ElementSet::from_elements(map.len(), self.iter().map(|x| map[x as usize]))
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
