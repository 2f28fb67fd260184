//! Test-side oracles written against the raw table only.

#![allow(dead_code)]

use wlgroup::group::{
    direct_product, make_abelian, make_alternating, make_cyclic, make_dihedral, make_symmetric, Elem,
};
use wlgroup::iso::q8;
use wlgroup::CayleyTable;

pub fn is_isomorphism(g: &CayleyTable, h: &CayleyTable, map: &[Elem]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in map {
        if x as usize >= n || std::mem::replace(&mut hit[x as usize], true) {
            return false;
        }
    }
    (0..n as Elem).all(|a| (0..n as Elem).all(|b| map[g.mul(a, b) as usize] == h.mul(map[a as usize], map[b as usize])))
}

/// Identity-fixing permutation of `0..n` from a shuffle seed.
pub fn perm_from_seed(n: usize, seed: u64) -> Vec<Elem> {
    let mut rest: Vec<Elem> = (1..n as Elem).collect();
    let mut s = seed | 1;
    for i in (1..rest.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        rest.swap(i, (s % (i as u64 + 1)) as usize);
    }
    std::iter::once(0).chain(rest).collect()
}

/// The table with element `x` renamed `perm[x]`, built cell by cell.
pub fn renamed(g: &CayleyTable, perm: &[Elem]) -> CayleyTable {
    let n = g.order();
    let mut flat = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            flat[perm[a] as usize * n + perm[b] as usize] = perm[g.mul(a as Elem, b as Elem) as usize];
        }
    }
    CayleyTable::from_flat(n, flat, "renamed").expect("a relabelled group is a group")
}

fn order_of(g: &CayleyTable, x: Elem) -> usize {
    let (mut y, mut m) = (x, 1);
    while y != 0 {
        y = g.mul(y, x);
        m += 1;
    }
    m
}

fn closure(g: &CayleyTable, gens: &[Elem]) -> Vec<bool> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut stack = vec![0 as Elem];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !std::mem::replace(&mut inside[y as usize], true) {
                stack.push(y);
            }
        }
    }
    inside
}

/// Extends generator images to a map by walking words; `None` on conflict.
fn extend(g: &CayleyTable, h: &CayleyTable, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let n = g.order();
    let mut map = vec![Elem::MAX; n];
    map[0] = 0;
    let mut stack = vec![0 as Elem];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.mul(x, s), h.mul(map[x as usize], t));
            match map[y as usize] {
                Elem::MAX => {
                    map[y as usize] = fy;
                    stack.push(y);
                }
                old if old != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// Brute-force isomorphism search over images of a greedy generating set.
pub fn brute_isomorphism(g: &CayleyTable, h: &CayleyTable) -> Option<Vec<Elem>> {
    let n = g.order();
    if h.order() != n {
        return None;
    }
    let (og, oh): (Vec<usize>, Vec<usize>) =
        ((0..n as Elem).map(|x| order_of(g, x)).collect(), (0..n as Elem).map(|x| order_of(h, x)).collect());
    let (mut sg, mut sh) = (og.clone(), oh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let mut gens = Vec::new();
    let mut inside = closure(g, &gens);
    for x in 0..n as Elem {
        if !inside[x as usize] {
            gens.push(x);
            inside = closure(g, &gens);
        }
    }
    fn search(
        g: &CayleyTable,
        h: &CayleyTable,
        gens: &[Elem],
        og: &[usize],
        oh: &[usize],
        images: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if images.len() == gens.len() {
            let map = extend(g, h, gens, images)?;
            return is_isomorphism(g, h, &map).then_some(map);
        }
        let want = og[gens[images.len()] as usize];
        for y in 0..h.order() as Elem {
            if oh[y as usize] == want {
                images.push(y);
                if let Some(m) = search(g, h, gens, og, oh, images) {
                    return Some(m);
                }
                images.pop();
            }
        }
        None
    }
    search(g, h, &gens, &og, &oh, &mut Vec::new())
}

/// A mixed pool of small groups, Abelian and not.
pub fn pool() -> Vec<CayleyTable> {
    let s3 = make_symmetric(3).unwrap();
    vec![
        make_cyclic(1),
        make_cyclic(6),
        make_abelian(&[2, 3]).unwrap(),
        s3.clone(),
        make_cyclic(8),
        make_abelian(&[2, 4]).unwrap(),
        make_abelian(&[2, 2, 2]).unwrap(),
        make_dihedral(4),
        q8(),
        make_dihedral(6),
        make_alternating(4).unwrap(),
        direct_product(&s3, &make_cyclic(2)).unwrap(),
        make_cyclic(12),
        make_abelian(&[2, 6]).unwrap(),
        make_abelian(&[4, 4]).unwrap(),
        make_abelian(&[2, 8]).unwrap(),
        make_dihedral(8),
        direct_product(&q8(), &make_cyclic(2)).unwrap(),
        make_symmetric(4).unwrap(),
        direct_product(&make_dihedral(4), &make_cyclic(3)).unwrap(),
    ]
}

/// Number of isomorphisms `g -> h`, by trying every image tuple of a greedy
/// generating set.
pub fn brute_count(g: &CayleyTable, h: &CayleyTable) -> u64 {
    let n = g.order();
    if h.order() != n {
        return 0;
    }
    let mut gens = Vec::new();
    let mut inside = closure(g, &gens);
    for x in 0..n as Elem {
        if !inside[x as usize] {
            gens.push(x);
            inside = closure(g, &gens);
        }
    }
    let mut count = 0;
    let mut images = vec![0 as Elem; gens.len()];
    loop {
        if let Some(map) = extend(g, h, &gens, &images) {
            if is_isomorphism(g, h, &map) {
                count += 1;
            }
        }
        let mut p = 0;
        loop {
            if p == images.len() {
                return count;
            }
            images[p] += 1;
            if (images[p] as usize) < n {
                break;
            }
            images[p] = 0;
            p += 1;
        }
    }
}
