use super::{ColoredGroup, TupleColoring, Version};
use crate::error::{Error, Result};
use crate::group::{marked_cayley_signature, CayleyTable, Elem, MarkedScratch};

fn digits(t: usize, n: usize, k: usize, out: &mut [Elem]) {
    let mut t = t;
    for slot in out[..k].iter_mut().rev() {
        *slot = (t % n) as Elem;
        t /= n;
    }
}

/// Equality and multiplication pattern of a tuple, one bit per index pair
/// `(i, j)` with `i < j` followed by one bit per triple `(i, j, l)`.
fn pattern_bits(g: &CayleyTable, t: &[Elem], out: &mut Vec<u64>) {
    let k = t.len();
    let mut bit = 0usize;
    let mut push = |out: &mut Vec<u64>, on: bool| {
        if bit % 64 == 0 {
            out.push(0);
        }
        if on {
            *out.last_mut().unwrap() |= 1 << (bit % 64);
        }
        bit += 1;
    };
    for i in 0..k {
        for j in i + 1..k {
            push(out, t[i] == t[j]);
        }
    }
    for i in 0..k {
        for j in 0..k {
            let p = g.mul(t[i], t[j]);
            for &x in t {
                push(out, p == x);
            }
        }
    }
}

/// Uncoloured initial colouring of the `k`-tuples of every group in
/// `groups`, in one shared id space.
pub fn structure_coloring(groups: &[&CayleyTable], k: usize, version: Version) -> Result<TupleColoring> {
    if k == 0 {
        return Err(Error::DimensionZero);
    }
    let sizes: Vec<usize> = groups.iter().map(|g| g.order()).collect();
    let max_n = sizes.iter().copied().max().unwrap_or(0);
    let coloring = match version {
        Version::I => TupleColoring::from_chunk_keys(
            k,
            &sizes,
            || vec![0 as Elem; k],
            |buf, s, t| {
                digits(t, sizes[s], k, buf);
                let mut key = Vec::with_capacity(1 + (k * k * (k + 1)) / 64);
                pattern_bits(groups[s], buf, &mut key);
                key.into_boxed_slice()
            },
        ),
        Version::II => TupleColoring::from_chunk_keys(
            k,
            &sizes,
            || (vec![0 as Elem; k], MarkedScratch::new(max_n)),
            |(buf, scratch), s, t| {
                digits(t, sizes[s], k, buf);
                let mut key = Vec::new();
                marked_cayley_signature(groups[s], buf, scratch, &mut key);
                key.into_boxed_slice()
            },
        ),
    };
    Ok(coloring)
}

/// Initial colouring of two coloured groups sharing one dictionary.
pub fn initial_coloring(a: &ColoredGroup, b: &ColoredGroup, k: usize, version: Version) -> Result<TupleColoring> {
    initial_coloring_multi(&[a, b], k, version)
}

pub fn initial_coloring_multi(sides: &[&ColoredGroup], k: usize, version: Version) -> Result<TupleColoring> {
    let groups: Vec<&CayleyTable> = sides.iter().map(|c| c.group()).collect();
    let base = structure_coloring(&groups, k, version)?;
    let tokens: Vec<&[u64]> = sides.iter().map(|c| c.colors()).collect();
    Ok(base.with_point_tokens(&tokens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, marked_isomorphism};

    #[test]
    fn version_two_k1_colours_by_order() {
        let g = make_cyclic(12);
        let c = structure_coloring(&[&g], 1, Version::II).unwrap();
        let colors = c.side_colors(0);
        for x in 0..12u32 {
            for y in 0..12u32 {
                let same = g.orders()[x as usize] == g.orders()[y as usize];
                assert_eq!(colors[x as usize] == colors[y as usize], same);
            }
        }
    }

    #[test]
    fn version_two_matches_pairwise_marked_isomorphism() {
        let g = make_dihedral(4);
        let h = make_cyclic(8);
        let c = structure_coloring(&[&g, &h], 2, Version::II).unwrap();
        let pairs: Vec<(usize, Elem, Elem)> = (0..8)
            .flat_map(|a| (0..8).map(move |b| (a, b)))
            .flat_map(|(a, b)| [(0, a, b), (1, a, b)])
            .collect();
        for &(s1, a1, b1) in &pairs {
            for &(s2, a2, b2) in pairs.iter().step_by(5) {
                let ga = if s1 == 0 { &g } else { &h };
                let gb = if s2 == 0 { &g } else { &h };
                let iso = marked_isomorphism(ga, &[a1, b1], gb, &[a2, b2]);
                assert_eq!(c.color_of(s1, &[a1, b1]) == c.color_of(s2, &[a2, b2]), iso);
            }
        }
    }

    #[test]
    fn version_one_idempotent_pattern() {
        // (g, g) with g*g = g only for the identity
        let g = make_cyclic(5);
        let c = structure_coloring(&[&g], 2, Version::I).unwrap();
        assert_ne!(c.color_of(0, &[0, 0]), c.color_of(0, &[1, 1]));
        assert_eq!(c.color_of(0, &[2, 2]), c.color_of(0, &[1, 1]));
    }
}
