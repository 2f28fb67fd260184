//! Side-agnostic tuple refinement.
//!
//! A [`TupleColoring`] holds the colours of `k`-tuples over one or more
//! structures ("sides") laid out back to back. Tuples of a side with `n`
//! points are ranked in mixed radix, first entry most significant. Colour
//! ids are dense and are always the rank of the colour's signature among all
//! distinct signatures of the round, so ids are a function of the coloured
//! structures alone and never of the tuple order or the thread schedule.

use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

use super::lanes;

const CHUNK: usize = 2048;

/// How a refinement round turns a tuple's neighbourhood into an id.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureMode {
    /// The full sorted multiset (or set) of substitution colour vectors.
    #[default]
    Exact,
    /// A 128-bit additive hash of that multiset. The induced partition can
    /// only be coarser than the exact one (on a hash collision), so any
    /// "distinguished" verdict stays sound.
    Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleColoring {
    k: usize,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    colors: Vec<u32>,
    classes: usize,
    round: u32,
}

/// Number of tuple records for the given side sizes, saturating.
pub fn tuple_records(sizes: &[usize], k: usize) -> u128 {
    sizes
        .iter()
        .map(|&n| (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b))
}

pub fn check_budget(sizes: &[usize], k: usize, budget: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::DimensionZero);
    }
    let records = tuple_records(sizes, k);
    if records > budget as u128 {
        return Err(Error::MemoryBudget { records, budget });
    }
    Ok(())
}

impl TupleColoring {
    /// Colours every tuple by the rank of `key(side, tuple index)`.
    pub fn from_keys<K, F>(k: usize, sizes: &[usize], key: F) -> TupleColoring
    where
        K: Ord + Hash + Send + Sync,
        F: Fn(usize, usize) -> K + Sync + Send,
    {
        let offsets = offsets_for(sizes, k);
        let total = *offsets.last().unwrap();
        let (colors, classes) = intern_ranked(total, |start, end| {
            (start..end)
                .map(|g| {
                    let s = side_of(&offsets, g);
                    key(s, g - offsets[s])
                })
                .collect()
        });
        TupleColoring { k, sizes: sizes.to_vec(), offsets, colors, classes, round: 1 }
    }

    /// Like [`from_keys`](Self::from_keys) but hands the key function a
    /// chunk `[start, end)` of global tuple indices together with a
    /// per-chunk scratch value, for keys that need working buffers.
    pub fn from_chunk_keys<K, S, I, F>(k: usize, sizes: &[usize], init: I, key: F) -> TupleColoring
    where
        K: Ord + Hash + Send + Sync,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, usize, usize) -> K + Sync + Send,
    {
        let offsets = offsets_for(sizes, k);
        let total = *offsets.last().unwrap();
        let (colors, classes) = intern_ranked(total, |start, end| {
            let mut scratch = init();
            (start..end)
                .map(|g| {
                    let s = side_of(&offsets, g);
                    key(&mut scratch, s, g - offsets[s])
                })
                .collect()
        });
        TupleColoring { k, sizes: sizes.to_vec(), offsets, colors, classes, round: 1 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sides(&self) -> usize {
        self.sizes.len()
    }

    pub fn side_size(&self, side: usize) -> usize {
        self.sizes[side]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn all_colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn side_colors(&self, side: usize) -> &[u32] {
        &self.colors[self.offsets[side]..self.offsets[side + 1]]
    }

    pub fn tuple_index(&self, side: usize, tuple: &[u32]) -> usize {
        let n = self.sizes[side];
        tuple.iter().fold(0, |acc, &x| acc * n + x as usize)
    }

    pub fn color_of(&self, side: usize, tuple: &[u32]) -> u32 {
        self.side_colors(side)[self.tuple_index(side, tuple)]
    }

    /// Colour of the diagonal tuple `(v, ..., v)` for every point `v`.
    pub fn diagonal(&self, side: usize) -> Vec<u32> {
        let n = self.sizes[side];
        let step: usize = (0..self.k).fold(0, |acc, _| acc * n + 1);
        let cols = self.side_colors(side);
        (0..n).map(|v| cols[v * step]).collect()
    }

    /// Sorted `(colour, multiplicity)` pairs of one side.
    pub fn histogram(&self, side: usize) -> Vec<(u32, u64)> {
        let mut counts = vec![0u64; self.classes];
        for &c in self.side_colors(side) {
            counts[c as usize] += 1;
        }
        counts.into_iter().enumerate().filter(|&(_, m)| m > 0).map(|(c, m)| (c as u32, m)).collect()
    }

    /// Re-ranks the colouring after folding extra per-point tokens into
    /// every tuple: the new key of `(v_1..v_k)` is
    /// `(old colour, token(v_1), ..., token(v_k))`.
    pub fn with_point_tokens(&self, tokens: &[&[u64]]) -> TupleColoring {
        assert_eq!(tokens.len(), self.sides());
        let mut all: Vec<u64> = tokens.iter().flat_map(|t| t.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        if all.len() <= 1 {
            return self.clone();
        }
        let ranks: Vec<Vec<u32>> = tokens
            .iter()
            .map(|t| t.iter().map(|x| all.binary_search(x).unwrap() as u32).collect())
            .collect();
        let bits = bits_for(all.len());
        assert!(bits as usize * self.k <= 128, "too many distinct tokens");
        let keys: Vec<u128> = par::map_range(self.colors.len(), |g| {
            let s = side_of(&self.offsets, g);
            let n = self.sizes[s];
            let mut t = g - self.offsets[s];
            let mut key = 0u128;
            for pos in 0..self.k {
                key |= (ranks[s][t % n] as u128) << (bits as usize * pos);
                t /= n;
            }
            key
        });
        let (colors, classes) = split_ranks(&self.colors, self.classes, &keys);
        TupleColoring { colors, classes, ..self.clone() }
    }

    /// True when both colourings induce the same partition.
    pub fn same_partition(&self, other: &TupleColoring) -> bool {
        if self.colors.len() != other.colors.len() || self.classes != other.classes {
            return false;
        }
        let mut map = vec![u32::MAX; self.classes];
        for (&a, &b) in self.colors.iter().zip(&other.colors) {
            let slot = &mut map[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }
}

fn offsets_for(sizes: &[usize], k: usize) -> Vec<usize> {
    let mut offsets = vec![0];
    for &n in sizes {
        let last = *offsets.last().unwrap();
        offsets.push(last + n.pow(k as u32));
    }
    offsets
}

#[inline]
fn side_of(offsets: &[usize], g: usize) -> usize {
    let mut s = 0;
    while g >= offsets[s + 1] {
        s += 1;
    }
    s
}

/// Dense rank of every key among the distinct keys.
pub(crate) fn dense_ranks<K: Ord + Copy + Hash + Send + Sync>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut first: FxHashMap<K, u32> = FxHashMap::default();
    let provisional: Vec<u32> = keys
        .iter()
        .map(|&k| {
            let next = first.len() as u32;
            *first.entry(k).or_insert(next)
        })
        .collect();
    let mut distinct: Vec<(K, u32)> = first.into_iter().collect();
    par::sort_unstable(&mut distinct);
    let mut translate = vec![0u32; distinct.len()];
    for (rank, &(_, id)) in distinct.iter().enumerate() {
        translate[id as usize] = rank as u32;
    }
    let ranks = provisional.into_iter().map(|id| translate[id as usize]).collect();
    (ranks, distinct.len())
}

/// Dense rank of `(old[i], key[i])` among all such pairs, for a refinement
/// of the partition given by `old`. Buckets by old colour and sorts each
/// bucket on its own.
pub(crate) fn split_ranks<K: Ord + Copy>(old: &[u32], old_classes: usize, keys: &[K]) -> (Vec<u32>, usize) {
    let mut start = vec![0u32; old_classes + 1];
    for &c in old {
        start[c as usize + 1] += 1;
    }
    for i in 0..old_classes {
        start[i + 1] += start[i];
    }
    let mut order = vec![0u32; old.len()];
    let mut fill = start.clone();
    for (i, &c) in old.iter().enumerate() {
        order[fill[c as usize] as usize] = i as u32;
        fill[c as usize] += 1;
    }
    let mut ranks = vec![0u32; old.len()];
    let mut next = 0u32;
    for c in 0..old_classes {
        let bucket = &mut order[start[c] as usize..start[c + 1] as usize];
        if bucket.len() > 1 {
            bucket.sort_unstable_by_key(|&i| keys[i as usize]);
        }
        for (j, &i) in bucket.iter().enumerate() {
            if j > 0 && keys[bucket[j - 1] as usize] != keys[i as usize] {
                next += 1;
            }
            ranks[i as usize] = next;
        }
        if !bucket.is_empty() {
            next += 1;
        }
    }
    (ranks, next as usize)
}

/// Computes keys chunk by chunk, deduplicates them locally, then ranks the
/// distinct keys globally. Only one copy of each distinct key per chunk is
/// ever alive, which keeps large signatures affordable.
pub(crate) fn intern_ranked<K, F>(total: usize, keys: F) -> (Vec<u32>, usize)
where
    K: Ord + Hash + Send + Sync,
    F: Fn(usize, usize) -> Vec<K> + Sync + Send,
{
    let chunks: Vec<(Vec<K>, Vec<u32>)> = par::map_chunks(total, CHUNK, |start, end| {
        let mut local: FxHashMap<K, u32> = FxHashMap::default();
        let ids: Vec<u32> = keys(start, end)
            .into_iter()
            .map(|key| {
                let next = local.len() as u32;
                *local.entry(key).or_insert(next)
            })
            .collect();
        let mut distinct: Vec<(K, u32)> = local.into_iter().collect();
        distinct.sort_unstable_by_key(|&(_, id)| id);
        (distinct.into_iter().map(|(key, _)| key).collect(), ids)
    });
    let mut refs: Vec<(u32, u32)> = Vec::new();
    for (c, (distinct, _)) in chunks.iter().enumerate() {
        refs.extend((0..distinct.len() as u32).map(|i| (c as u32, i)));
    }
    let key = |&(c, i): &(u32, u32)| &chunks[c as usize].0[i as usize];
    #[cfg(feature = "parallel")]
    {
        use rayon::slice::ParallelSliceMut;
        refs.par_sort_unstable_by(|a, b| key(a).cmp(key(b)));
    }
    #[cfg(not(feature = "parallel"))]
    refs.sort_unstable_by(|a, b| key(a).cmp(key(b)));
    let mut translate: Vec<Vec<u32>> = chunks.iter().map(|(d, _)| vec![0; d.len()]).collect();
    let mut rank = 0u32;
    for (i, r) in refs.iter().enumerate() {
        if i > 0 && key(&refs[i - 1]) != key(r) {
            rank += 1;
        }
        translate[r.0 as usize][r.1 as usize] = rank;
    }
    let classes = if refs.is_empty() { 0 } else { rank as usize + 1 };
    let mut colors = Vec::with_capacity(total);
    for (c, (_, ids)) in chunks.iter().enumerate() {
        colors.extend(ids.iter().map(|&id| translate[c][id as usize]));
    }
    (colors, classes)
}

fn bits_for(classes: usize) -> u32 {
    (usize::BITS - classes.saturating_sub(1).leading_zeros()).max(1)
}

#[inline]
fn mix64(v: u64, seed: u64) -> u64 {
    let mut z = (v ^ seed).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^ (z >> 32)
}

/// A packed substitution vector: `k` colour ids of `bits` bits each.
trait Packed: Copy + Ord + Hash + Default + Send + Sync {
    fn push(self, bits: u32, c: u32) -> Self;
    fn words(self) -> (u64, u64);
}

impl Packed for u64 {
    #[inline]
    fn push(self, bits: u32, c: u32) -> Self {
        (self << bits) | c as u64
    }

    #[inline]
    fn words(self) -> (u64, u64) {
        (self, 0)
    }
}

impl Packed for u128 {
    #[inline]
    fn push(self, bits: u32, c: u32) -> Self {
        (self << bits) | c as u128
    }

    #[inline]
    fn words(self) -> (u64, u64) {
        (self as u64, (self >> 64) as u64)
    }
}

#[inline]
fn mix_packed<P: Packed>(v: P) -> u128 {
    let (lo, hi) = v.words();
    let a = mix64(lo ^ hi.rotate_left(17), 0x5851_F42D_4C95_7F2D);
    let b = mix64(lo.rotate_left(32) ^ hi, 0x1405_7B7E_F767_814F);
    ((a as u128) << 64) | b as u128
}

/// Fills `vals[x]` with the packed colour vector
/// `(c(t(1/x)), ..., c(t(k/x)))`.
#[inline]
fn fill<P: Packed>(vals: &mut Vec<P>, colors: &[u32], t: usize, n: usize, powers: &[usize], bits: u32) {
    vals.clear();
    vals.resize(n, P::default());
    for &p in powers {
        let digit = (t / p) % n;
        let base = t - digit * p;
        if p == 1 {
            for (v, &c) in vals.iter_mut().zip(&colors[base..base + n]) {
                *v = v.push(bits, c);
            }
        } else {
            for (x, v) in vals.iter_mut().enumerate() {
                *v = v.push(bits, colors[base + x * p]);
            }
        }
    }
}

/// One refinement round: every tuple's new colour is determined by its old
/// colour and the multiset (counting) or set (count-free) of its
/// substitution vectors. Tuples alone in their class keep an empty
/// signature, which leaves the partition sequence unchanged.
pub fn refine_round(c: &TupleColoring, counting: bool, mode: SignatureMode) -> Result<TupleColoring> {
    let bits = bits_for(c.classes);
    let width = bits as usize * c.k;
    let (colors, classes) = if width <= 64 {
        refine_packed::<u64>(c, bits, counting, mode)
    } else if width <= 128 {
        refine_packed::<u128>(c, bits, counting, mode)
    } else {
        return Err(Error::DimensionTooLarge(c.k));
    };
    Ok(TupleColoring {
        k: c.k,
        sizes: c.sizes.clone(),
        offsets: c.offsets.clone(),
        colors,
        classes,
        round: c.round + 1,
    })
}

fn refine_packed<P: Packed>(c: &TupleColoring, bits: u32, counting: bool, mode: SignatureMode) -> (Vec<u32>, usize) {
    let powers: Vec<Vec<usize>> =
        c.sizes.iter().map(|&n| (0..c.k).map(|i| n.pow((c.k - 1 - i) as u32)).collect()).collect();
    let total = c.colors.len();
    let mut class_size = vec![0u32; c.classes];
    for &col in &c.colors {
        class_size[col as usize] += 1;
    }
    let single = |g: usize| class_size[c.colors[g] as usize] == 1;
    match mode {
        SignatureMode::Exact => intern_ranked(total, |start, end| {
            let mut vals: Vec<P> = Vec::new();
            (start..end)
                .map(|g| {
                    if single(g) {
                        return (c.colors[g], Box::default());
                    }
                    let s = side_of(&c.offsets, g);
                    let side = &c.colors[c.offsets[s]..c.offsets[s + 1]];
                    fill(&mut vals, side, g - c.offsets[s], c.sizes[s], &powers[s], bits);
                    vals.sort_unstable();
                    if !counting {
                        vals.dedup();
                    }
                    (c.colors[g], vals.clone().into_boxed_slice())
                })
                .collect()
        }),
        SignatureMode::Fingerprint if counting && c.k <= 4 && bits as usize * c.k <= 64 => {
            let mut keys: Vec<u128> = Vec::with_capacity(total);
            for (s, &n) in c.sizes.iter().enumerate() {
                let side = &c.colors[c.offsets[s]..c.offsets[s + 1]];
                let kernel = lanes::SideKernel::new(side, n, c.k, bits).expect("checked above");
                let chunk = n * CHUNK.div_ceil(n);
                let fps = par::map_chunks(side.len(), chunk, |start, end| kernel.chunk(&class_size, start, end));
                keys.extend(fps.into_iter().flatten());
            }
            split_ranks(&c.colors, c.classes, &keys)
        }
        SignatureMode::Fingerprint => {
            let keys: Vec<(u32, u128)> = par::map_chunks(total, CHUNK, |start, end| {
                let mut vals: Vec<P> = Vec::new();
                (start..end)
                    .map(|g| {
                        if single(g) {
                            return (c.colors[g], 0);
                        }
                        let s = side_of(&c.offsets, g);
                        let side = &c.colors[c.offsets[s]..c.offsets[s + 1]];
                        fill(&mut vals, side, g - c.offsets[s], c.sizes[s], &powers[s], bits);
                        if !counting {
                            vals.sort_unstable();
                            vals.dedup();
                        }
                        let fp = vals.iter().fold(0u128, |acc, &v| acc.wrapping_add(mix_packed(v)));
                        (c.colors[g], fp)
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
            dense_ranks(&keys)
        }
    }
}
