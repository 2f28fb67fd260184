use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    normal_closure_within, subgroup_closure, subgroup_table, CayleyTable, Elem, ElementSet, SubgroupBuilder,
};
use crate::iso::find_isomorphism;
use crate::par;

#[derive(Clone, Debug, Serialize)]
pub struct SocleData {
    /// The simple direct factors of the socle, ordered by smallest member.
    pub factors: Vec<ElementSet>,
    pub socle: ElementSet,
    /// Factor indices grouped by isomorphism type.
    pub iso_classes: Vec<Vec<usize>>,
}

fn span_generators(g: &CayleyTable, s: &ElementSet) -> Vec<Elem> {
    let mut b = SubgroupBuilder::new(g);
    b.extend(s.iter());
    b.generators().to_vec()
}

fn commute_elementwise(g: &CayleyTable, a: &[Elem], b: &[Elem]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// Conjugacy classes of the subgroup with elements `elems` and generators
/// `gens`, as lists of elements.
fn classes_within(g: &CayleyTable, elems: &ElementSet, gens: &[Elem]) -> Vec<Vec<Elem>> {
    let mut seen = ElementSet::empty(g.order());
    let mut out = Vec::new();
    for x in elems.iter() {
        if !seen.insert(x) {
            continue;
        }
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &s in gens {
                let c = g.conj(s, y);
                if seen.insert(c) {
                    class.push(c);
                }
            }
            i += 1;
        }
        out.push(class);
    }
    out
}

/// Whether the subgroup `s` of `g` is simple: every non-identity element
/// has normal closure `s` inside `s`.
pub fn is_simple(g: &CayleyTable, s: &ElementSet) -> bool {
    if s.len() < 2 {
        return false;
    }
    let gens = span_generators(g, s);
    if commute_elementwise(g, &gens, &gens) {
        let m = s.len();
        return m >= 2 && (2..m).all(|d| m % d != 0);
    }
    let elems = s.to_vec();
    classes_within(g, s, &gens)
        .iter()
        .filter(|c| c[0] != 0)
        .all(|c| normal_closure_within(g, &elems, &c[..1]).len() == s.len())
}

/// Whether `g` has no non-trivial Abelian normal subgroup.
pub fn is_semisimple(g: &CayleyTable) -> bool {
    let full = ElementSet::full(g.order());
    let classes = classes_within(g, &full, g.generators());
    let all: Vec<Elem> = g.elements().collect();
    classes.iter().filter(|c| c[0] != 0).all(|c| {
        let ncl = normal_closure_within(g, &all, &c[..1]);
        let gens = span_generators(g, &ncl);
        !commute_elementwise(g, &gens, &gens)
    })
}

fn group_iso_classes(g: &CayleyTable, factors: &[ElementSet]) -> Vec<Vec<usize>> {
    let tables: Vec<CayleyTable> = factors.iter().map(|f| subgroup_table(g, f).expect("factor is a subgroup").0).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        match classes.iter_mut().find(|c| find_isomorphism(&tables[c[0]], t).is_some()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

fn assemble(g: &CayleyTable, mut factors: Vec<ElementSet>) -> SocleData {
    factors.sort_by_key(|f| f.iter().find(|&x| x != 0));
    factors.dedup();
    let mut union = ElementSet::empty(g.order());
    for f in &factors {
        union.union_with(f);
    }
    let socle = subgroup_closure(g, &union);
    let iso_classes = group_iso_classes(g, &factors);
    SocleData { factors, socle, iso_classes }
}

/// Simple direct factors of the socle of a semisimple group.
///
/// Minimal normal subgroups are the inclusion-minimal normal closures of
/// single elements. Each one is a power `T^k` of a simple group, and its
/// factors are the smallest normal closures of single elements taken inside
/// it.
pub fn socle_factors(g: &CayleyTable) -> Result<SocleData> {
    if !is_semisimple(g) {
        return Err(Error::NotSemisimple);
    }
    let n = g.order();
    let all: Vec<Elem> = g.elements().collect();
    let reps: Vec<Elem> = classes_within(g, &ElementSet::full(n), g.generators())
        .into_iter()
        .map(|c| c[0])
        .filter(|&x| x != 0)
        .collect();
    let mut closures: Vec<ElementSet> = par::map_range(reps.len(), |i| normal_closure_within(g, &all, &reps[i..=i]));
    closures.sort_by_key(|c| c.len());
    closures.dedup();
    let minimal: Vec<&ElementSet> = closures
        .iter()
        .filter(|c| !closures.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
        .collect();
    let mut factors = Vec::new();
    for m in minimal {
        let gens = span_generators(g, m);
        let elems = m.to_vec();
        let inner: Vec<ElementSet> = classes_within(g, m, &gens)
            .iter()
            .filter(|c| c[0] != 0)
            .map(|c| normal_closure_within(g, &elems, &c[..1]))
            .collect();
        let smallest = inner.iter().map(ElementSet::len).min().unwrap_or(0);
        factors.extend(inner.into_iter().filter(|f| f.len() == smallest));
    }
    Ok(assemble(g, factors))
}

/// Reference search over all two-generated subgroups: `S = <a, b>` is a
/// factor when it is non-Abelian simple and every conjugate of `S` is
/// either `S` or commutes with it elementwise and meets it trivially.
/// Quadratic in the group order; meant for cross-checking.
pub fn socle_factors_reference(g: &CayleyTable) -> Result<SocleData> {
    if !is_semisimple(g) {
        return Err(Error::NotSemisimple);
    }
    let n = g.order();
    let rows: Vec<Vec<ElementSet>> = par::map_range(n, |a| {
        let mut seen: FxHashSet<ElementSet> = FxHashSet::default();
        for b in a..n {
            let mut s = SubgroupBuilder::new(g);
            s.add(a as Elem);
            s.add(b as Elem);
            seen.insert(s.into_set());
        }
        seen.into_iter().collect()
    });
    let mut candidates: Vec<ElementSet> = rows.into_iter().flatten().collect();
    candidates.sort_by(|a, b| a.to_vec().cmp(&b.to_vec()));
    candidates.dedup();
    let factors: Vec<ElementSet> = candidates
        .into_iter()
        .filter(|s| {
            let gens = span_generators(g, s);
            !commute_elementwise(g, &gens, &gens) && is_simple(g, s) && is_factor(g, s, &gens)
        })
        .collect();
    Ok(assemble(g, factors))
}

fn is_factor(g: &CayleyTable, s: &ElementSet, gens: &[Elem]) -> bool {
    let mut orbit = vec![s.clone()];
    let mut i = 0;
    while i < orbit.len() {
        for &x in g.generators() {
            let c = ElementSet::from_elements(g.order(), orbit[i].iter().map(|y| g.conj(x, y)));
            if !orbit.contains(&c) {
                orbit.push(c);
            }
        }
        i += 1;
    }
    orbit.iter().skip(1).all(|t| {
        let tg = span_generators(g, t);
        t.intersection(s).len() == 1 && commute_elementwise(g, &tg, gens)
    })
}
