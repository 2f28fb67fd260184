use std::time::Instant;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{find_isomorphism, verify_isomorphism, Method};
use crate::analysis::{is_semisimple, socle_factors, SocleData};
use crate::error::{Error, Result};
use crate::group::{marked_isomorphism, marked_map, subgroup_table, CayleyTable, Elem, ElementSet, SubgroupBuilder};
use crate::par;
use crate::wl::{check_budget, refine_round, structure_coloring, SignatureMode, TupleColoring, Version, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ListMode {
    /// WL below `wl_limit`, extension above.
    #[default]
    Auto,
    /// Individualize socle generators and refine with counting k-WL
    /// Version II until every element has its own colour.
    Wl,
    /// Extend the socle map by conjugation and check it on generators.
    Extension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ListConfig {
    pub mode: ListMode,
    /// WL dimension in [`ListMode::Wl`].
    pub k: usize,
    pub signature: SignatureMode,
    /// Largest order handled by WL in [`ListMode::Auto`].
    pub wl_limit: usize,
    /// Orders up to this bound get every witness checked on all products.
    pub verify_limit: usize,
    /// Minimum number of witnesses checked on all products above
    /// `verify_limit`.
    pub sample: usize,
    /// Candidates processed per parallel batch.
    pub batch: usize,
}

impl Default for ListConfig {
    fn default() -> Self {
        ListConfig {
            mode: ListMode::Auto,
            k: 3,
            signature: SignatureMode::Fingerprint,
            wl_limit: 60, verify_limit: 512, sample: 1000, batch: 256 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IsoList {
    pub mode: ListMode,
    pub method: Option<Method>,
    /// Socle isomorphisms tried.
    pub candidates: u64,
    pub count: u64,
    /// Witnesses checked on all `n^2` products.
    pub fully_verified: u64,
    /// Largest number of WL rounds over all candidates.
    pub max_rounds: u32,
    /// Candidates whose WL colouring stabilized without separating all
    /// elements; these are decided by extension instead.
    pub inconclusive: u64,
    /// Why the list is empty without enumeration, if it is.
    pub evidence: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub isomorphisms: Vec<Vec<Elem>>,
    pub elapsed_ms: f64,
}

impl IsoList {
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

/// A generating pair of the subgroup `s`.
fn generating_pair(g: &CayleyTable, s: &ElementSet) -> (Elem, Elem) {
    let mut elems = s.to_vec();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.orders()[x as usize]), x));
    for &a in &elems {
        for &b in &elems {
            let mut sub = SubgroupBuilder::new(g);
            sub.add(a);
            sub.add(b);
            if sub.len() == s.len() {
                return (a, b);
            }
        }
    }
    unreachable!("non-Abelian simple groups are 2-generated")
}

fn fingerprint(map: &[Elem]) -> u128 {
    let (mut a, mut b) = (0x243f_6a88_85a3_08d3u64, 0x1319_8a2e_0370_7344u64);
    for &x in map {
        a = (a ^ x as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(29);
        b = (b.wrapping_add(x as u64)).wrapping_mul(0xbf58_476d_1ce4_e5b9) ^ (b >> 31);
    }
    ((a as u128) << 64) | b as u128
}

/// Homomorphism check against a generating set plus bijectivity. A map with
/// `f(s x) = f(s) f(x)` for every generator `s` and every `x` is a
/// homomorphism.
fn check_on_generators(g: &CayleyTable, h: &CayleyTable, map: &[Elem]) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    if map.iter().any(|&y| y as usize >= n || std::mem::replace(&mut seen[y as usize], true)) {
        return false;
    }
    g.generators()
        .iter()
        .all(|&s| g.elements().all(|x| map[g.mul(s, x) as usize] == h.mul(map[s as usize], map[x as usize])))
}

struct Setup {
    /// `(a_i, b_i)` per socle factor of `G`, flattened.
    gens: Vec<Elem>,
    /// Factor permutations respecting iso classes.
    bijections: Vec<Vec<usize>>,
    /// `pairs[i][j]`: images of `(a_i, b_i)` in factor `j` of `H` that
    /// extend to an isomorphism of the factors.
    pairs: Vec<Vec<Vec<(Elem, Elem)>>>,
    /// Coset representatives of `Soc(G)` in `G`, excluding the socle itself.
    reps: Vec<Elem>,
    soc_g: ElementSet,
}

impl Setup {
    fn candidates_per(&self, psi: &[usize]) -> u64 {
        psi.iter().enumerate().map(|(i, &j)| self.pairs[i][j].len() as u64).product()
    }

    fn total(&self) -> u64 {
        self.bijections.iter().map(|p| self.candidates_per(p)).sum()
    }

    /// Images of `gens` for candidate number `idx` (in enumeration order).
    fn images(&self, mut idx: u64) -> Vec<Elem> {
        for psi in &self.bijections {
            let c = self.candidates_per(psi);
            if idx >= c {
                idx -= c;
                continue;
            }
            let mut out = vec![0; self.gens.len()];
            for i in (0..psi.len()).rev() {
                let list = &self.pairs[i][psi[i]];
                let (a, b) = list[(idx % list.len() as u64) as usize];
                idx /= list.len() as u64;
                out[2 * i] = a;
                out[2 * i + 1] = b;
            }
            return out;
        }
        unreachable!("candidate index out of range")
    }
}

fn class_bijections(classes_g: &[Vec<usize>], match_h: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![usize::MAX; m]];
    for (cg, ch) in classes_g.iter().zip(match_h) {
        let mut next = Vec::new();
        for partial in &out {
            for perm in permutations(ch) {
                let mut p = partial.clone();
                for (&i, &j) in cg.iter().zip(&perm) {
                    p[i] = j;
                }
                next.push(p);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn factor_table(g: &CayleyTable, f: &ElementSet) -> CayleyTable {
    subgroup_table(g, f).expect("socle factor is a subgroup").0
}

/// Matches iso classes of `G`'s factors to those of `H`'s, or explains
/// the mismatch.
fn match_classes(g: &CayleyTable, dg: &SocleData, h: &CayleyTable, dh: &SocleData) -> std::result::Result<Vec<Vec<usize>>, String> {
    if dg.factors.len() != dh.factors.len() {
        return Err(format!("socle factor counts differ ({} vs {})", dg.factors.len(), dh.factors.len()));
    }
    let tg: Vec<CayleyTable> = dg.iso_classes.iter().map(|c| factor_table(g, &dg.factors[c[0]])).collect();
    let th: Vec<CayleyTable> = dh.iso_classes.iter().map(|c| factor_table(h, &dh.factors[c[0]])).collect();
    let mut used = vec![false; th.len()];
    let mut out = Vec::new();
    for (cg, t) in dg.iso_classes.iter().zip(&tg) {
        let hit = (0..th.len()).find(|&j| {
            !used[j] && dh.iso_classes[j].len() == cg.len() && find_isomorphism(t, &th[j]).is_some()
        });
        match hit {
            Some(j) => {
                used[j] = true;
                out.push(dh.iso_classes[j].clone());
            }
            None => return Err(format!("no matching socle factor class for a class of size {}", cg.len())),
        }
    }
    Ok(out)
}

fn setup(g: &CayleyTable, dg: &SocleData, h: &CayleyTable, dh: &SocleData, matched: &[Vec<usize>]) -> Setup {
    let pairs_g: Vec<(Elem, Elem)> = dg.factors.iter().map(|f| generating_pair(g, f)).collect();
    let gens: Vec<Elem> = pairs_g.iter().flat_map(|&(a, b)| [a, b]).collect();
    let m = dg.factors.len();
    let mut class_of_h = vec![usize::MAX; m];
    for (c, members) in matched.iter().enumerate() {
        for &j in members {
            class_of_h[j] = c;
        }
    }
    let mut class_of_g = vec![usize::MAX; m];
    for (c, members) in dg.iso_classes.iter().enumerate() {
        for &i in members {
            class_of_g[i] = c;
        }
    }
    let o = h.orders();
    let pairs = (0..m)
        .map(|i| {
            let (a, b) = pairs_g[i];
            let want = (g.orders()[a as usize], g.orders()[b as usize], g.orders()[g.mul(a, b) as usize]);
            (0..m)
                .map(|j| {
                    if class_of_h[j] != class_of_g[i] {
                        return Vec::new();
                    }
                    let elems = dh.factors[j].to_vec();
                    let rows: Vec<Vec<(Elem, Elem)>> = par::map_range(elems.len(), |x| {
                        let a2 = elems[x];
                        if o[a2 as usize] != want.0 {
                            return Vec::new();
                        }
                        elems
                            .iter()
                            .filter(|&&b2| {
                                o[b2 as usize] == want.1
                                    && o[h.mul(a2, b2) as usize] == want.2
                                    && marked_isomorphism(g, &[a, b], h, &[a2, b2])
                            })
                            .map(|&b2| (a2, b2))
                            .collect()
                    });
                    rows.into_iter().flatten().collect()
                })
                .collect()
        })
        .collect();
    let mut seen = dg.socle.clone();
    let mut reps = Vec::new();
    for x in g.elements() {
        if !seen.contains(x) {
            reps.push(x);
            for s in dg.socle.iter() {
                seen.insert(g.mul(x, s));
            }
        }
    }
    Setup { gens, bijections: class_bijections(&dg.iso_classes, matched, m), pairs, reps, soc_g: dg.socle.clone() }
}

/// Extends the socle map given by `images` to `G` by conjugation.
fn extend(g: &CayleyTable, h: &CayleyTable, s: &Setup, images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = marked_map(g, &s.gens, h, images)?;
    let soc: Vec<Elem> = s.soc_g.iter().collect();
    for &x in &s.reps {
        let targets: Vec<Elem> = s.gens.iter().map(|&t| map[g.conj(x, t) as usize]).collect();
        let y = h.elements().find(|&y| images.iter().zip(&targets).all(|(&fi, &t)| h.conj(y, fi) == t))?;
        for &z in &soc {
            map[g.mul(x, z) as usize] = h.mul(y, map[z as usize]);
        }
    }
    if map.contains(&u32::MAX) {
        return None;
    }
    Some(map)
}

enum Outcome {
    Accepted(Vec<Elem>, u32),
    Rejected(u32),
    Inconclusive(Option<Vec<Elem>>, u32),
}

/// Refines until every element has its own diagonal colour or the
/// partition is stable.
fn refine_to_discrete(init: TupleColoring, n: usize, mode: SignatureMode) -> Result<(Vec<u32>, u32, bool)> {
    let mut c = init;
    loop {
        let diag = c.diagonal(0);
        let mut seen = FxHashSet::default();
        if diag.iter().all(|&x| seen.insert(x)) {
            return Ok((diag, c.round(), true));
        }
        let next = refine_round(&c, true, mode)?;
        if next.classes() == c.classes() {
            return Ok((diag, c.round(), false));
        }
        c = next;
        debug_assert!(seen.len() <= n);
    }
}

fn tokens_for(n: usize, elems: &[Elem]) -> Vec<u64> {
    let mut t = vec![0u64; n];
    for (i, &x) in elems.iter().enumerate() {
        t[x as usize] = i as u64 + 1;
    }
    t
}

/// Colour ids are canonical, so `G`'s side is refined once and each
/// candidate only refines `H`'s side; equal ids then name matching
/// elements, and the induced map is verified.
struct WlSides {
    base_h: TupleColoring,
    colors_g: Option<Vec<u32>>,
    rounds_g: u32,
    mode: SignatureMode,
}

fn wl_candidate(g: &CayleyTable, h: &CayleyTable, s: &Setup, w: &WlSides, images: &[Elem]) -> Result<Outcome> {
    let Some(cg) = &w.colors_g else {
        return Ok(Outcome::Inconclusive(extend(g, h, s, images), w.rounds_g));
    };
    let init = w.base_h.with_point_tokens(&[&tokens_for(h.order(), images)]);
    let (ch, rounds, discrete) = refine_to_discrete(init, h.order(), w.mode)?;
    let rounds = rounds.max(w.rounds_g);
    if !discrete {
        return Ok(Outcome::Inconclusive(extend(g, h, s, images), rounds));
    }
    let mut by_color: FxHashMap<u32, Elem> = FxHashMap::default();
    for (y, &c) in ch.iter().enumerate() {
        by_color.insert(c, y as Elem);
    }
    let map: Option<Vec<Elem>> = cg.iter().map(|c| by_color.get(c).copied()).collect();
    match map {
        Some(map) if verify_isomorphism(g, h, &map) => Ok(Outcome::Accepted(map, rounds)),
        _ => Ok(Outcome::Rejected(rounds)),
    }
}

/// Every isomorphism `G -> H` for semisimple `G`, collected in memory.
pub fn semisimple_iso_list(g: &CayleyTable, h: &CayleyTable) -> Result<IsoList> {
    let mut all = Vec::new();
    let mut list = semisimple_iso_list_with(g, h, &ListConfig::default(), &mut |m| {
        all.push(m.to_vec());
        true
    })?;
    list.isomorphisms = all;
    Ok(list)
}

/// Streams every isomorphism `G -> H` to `sink`, in enumeration order:
/// socle factor bijections (lexicographic), then generator images. The
/// enumeration stops early when `sink` returns `false`.
pub fn semisimple_iso_list_with(
    g: &CayleyTable,
    h: &CayleyTable,
    cfg: &ListConfig,
    sink: &mut dyn FnMut(&[Elem]) -> bool,
) -> Result<IsoList> {
    let started = Instant::now();
    if !is_semisimple(g) {
        return Err(Error::NotSemisimple);
    }
    let n = g.order();
    let mode = match cfg.mode {
        ListMode::Auto if n <= cfg.wl_limit => ListMode::Wl,
        ListMode::Auto => ListMode::Extension,
        m => m,
    };
    let mut list = IsoList { mode, method: Some(Method::Semisimple), ..IsoList::default() };
    let finish = |mut list: IsoList| {
        list.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        Ok(list)
    };
    if h.order() != n {
        list.evidence = Some(format!("orders differ ({} vs {})", n, h.order()));
        return finish(list);
    }
    if !is_semisimple(h) {
        list.evidence = Some("second group is not semisimple".into());
        return finish(list);
    }
    let (dg, dh) = (socle_factors(g)?, socle_factors(h)?);
    let matched = match match_classes(g, &dg, h, &dh) {
        Ok(m) => m,
        Err(e) => {
            list.evidence = Some(e);
            return finish(list);
        }
    };
    let s = setup(g, &dg, h, &dh, &matched);
    let total = s.total();
    list.candidates = total;
    let sides = match mode {
        ListMode::Wl => {
            check_budget(&[n], cfg.k, DEFAULT_BUDGET)?;
            let base_g = structure_coloring(&[g], cfg.k, Version::II)?;
            let init = base_g.with_point_tokens(&[&tokens_for(n, &s.gens)]);
            let (colors, rounds_g, discrete) = refine_to_discrete(init, n, cfg.signature)?;
            Some(WlSides {
                base_h: structure_coloring(&[h], cfg.k, Version::II)?,
                colors_g: discrete.then_some(colors),
                rounds_g,
                mode: cfg.signature,
            })
        }
        _ => None,
    };
    let stride = if n <= cfg.verify_limit { 1 } else { (total / cfg.sample.max(1) as u64).max(1) };
    let mut dedup: FxHashSet<u128> = FxHashSet::default();
    let batch = cfg.batch.max(1) as u64;
    let mut start = 0u64;
    while start < total {
        let len = batch.min(total - start);
        let outcomes: Vec<Result<Outcome>> = par::map_range(len as usize, |i| {
            let images = s.images(start + i as u64);
            match &sides {
                Some(w) => wl_candidate(g, h, &s, w, &images),
                None => Ok(match extend(g, h, &s, &images) {
                    Some(m) if check_on_generators(g, h, &m) => Outcome::Accepted(m, 0),
                    _ => Outcome::Rejected(0),
                }),
            }
        });
        for (i, o) in outcomes.into_iter().enumerate() {
            let map = match o? {
                Outcome::Accepted(m, r) => {
                    list.max_rounds = list.max_rounds.max(r);
                    m
                }
                Outcome::Rejected(r) => {
                    list.max_rounds = list.max_rounds.max(r);
                    continue;
                }
                Outcome::Inconclusive(m, r) => {
                    list.max_rounds = list.max_rounds.max(r);
                    list.inconclusive += 1;
                    match m {
                        Some(m) if check_on_generators(g, h, &m) => m,
                        _ => continue,
                    }
                }
            };
            if !dedup.insert(fingerprint(&map)) {
                continue;
            }
            let idx = start + i as u64;
            if mode == ListMode::Wl || idx % stride == 0 {
                assert!(verify_isomorphism(g, h, &map), "listed map failed full verification");
                list.fully_verified += 1;
            }
            list.count += 1;
            if !sink(&map) {
                return finish(list);
            }
        }
        start += len;
    }
    if list.count == 0 {
        list.evidence = Some("no socle isomorphism extends".into());
    }
    finish(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_alternating, make_cyclic, make_symmetric};

    #[test]
    fn a5_has_120() {
        let a5 = make_alternating(5).unwrap();
        let cfg = ListConfig { mode: ListMode::Extension, ..ListConfig::default() };
        let mut maps = Vec::new();
        let list = semisimple_iso_list_with(&a5, &a5, &cfg, &mut |m| {
            maps.push(m.to_vec());
            true
        })
        .unwrap();
        assert_eq!(list.count, 120);
        assert_eq!(list.candidates, 120);
        assert_eq!(list.fully_verified, 120);
        assert!(maps.iter().all(|m| verify_isomorphism(&a5, &a5, m)));
    }

    #[test]
    fn wl_mode_discretizes_a5() {
        let a5 = make_alternating(5).unwrap();
        let mut first = Vec::new();
        for mode in [ListMode::Wl, ListMode::Extension] {
            let cfg = ListConfig { mode, batch: 4, ..ListConfig::default() };
            let mut maps = Vec::new();
            let list = semisimple_iso_list_with(&a5, &a5, &cfg, &mut |m| {
                maps.push(m.to_vec());
                maps.len() < 4
            })
            .unwrap();
            assert_eq!(list.inconclusive, 0);
            first.push(maps);
        }
        assert_eq!(first[0], first[1]);
    }

    #[test]
    fn a5_vs_cyclic_is_empty() {
        let a5 = make_alternating(5).unwrap();
        let list = semisimple_iso_list(&a5, &make_cyclic(60)).unwrap();
        assert!(list.is_empty());
        assert!(list.evidence.is_some());
        assert_eq!(semisimple_iso_list(&make_cyclic(60), &a5).unwrap_err(), Error::NotSemisimple);
    }

    #[test]
    fn s5_lists_its_automorphisms() {
        let s5 = make_symmetric(5).unwrap();
        let mut by_mode = Vec::new();
        for mode in [ListMode::Auto, ListMode::Extension] {
            let cfg = ListConfig { mode, ..ListConfig::default() };
            let mut maps = Vec::new();
            let list = semisimple_iso_list_with(&s5, &s5, &cfg, &mut |m| {
                maps.push(m.to_vec());
                true
            })
            .unwrap();
            assert_eq!(list.count, 120);
            by_mode.push(maps);
        }
        assert_eq!(by_mode[0], by_mode[1]);
    }
}
