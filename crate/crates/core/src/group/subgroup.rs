use super::{CayleyTable, Elem, ElementSet};
use crate::error::{Error, Result};

/// Incrementally grown subgroup: adding a generator closes the current
/// element list under right multiplication by every generator so far.
#[derive(Clone, Debug)]
pub struct SubgroupBuilder<'g> {
    group: &'g CayleyTable,
    members: ElementSet,
    list: Vec<Elem>,
    gens: Vec<Elem>,
}

impl<'g> SubgroupBuilder<'g> {
    pub fn new(group: &'g CayleyTable) -> Self {
        let mut members = ElementSet::empty(group.order());
        members.insert(0);
        SubgroupBuilder { group, members, list: vec![0], gens: Vec::new() }
    }

    /// Adds `g`; returns whether the subgroup grew.
    pub fn add(&mut self, g: Elem) -> bool {
        if self.members.contains(g) {
            return false;
        }
        self.gens.push(g);
        let old_len = self.list.len();
        let mut i = 0;
        while i < self.list.len() {
            let e = self.list[i];
            if i < old_len {
                let p = self.group.mul(e, g);
                if self.members.insert(p) {
                    self.list.push(p);
                }
            } else {
                for gi in 0..self.gens.len() {
                    let p = self.group.mul(e, self.gens[gi]);
                    if self.members.insert(p) {
                        self.list.push(p);
                    }
                }
            }
            i += 1;
        }
        true
    }

    pub fn extend<I: IntoIterator<Item = Elem>>(&mut self, items: I) {
        for g in items {
            self.add(g);
        }
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(g)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_everything(&self) -> bool {
        self.list.len() == self.group.order()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> &[Elem] {
        &self.list
    }

    pub fn set(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_set(self) -> ElementSet {
        self.members
    }
}

/// Smallest subgroup containing `s`.
pub fn subgroup_closure(g: &CayleyTable, s: &ElementSet) -> ElementSet {
    let mut b = SubgroupBuilder::new(g);
    b.extend(s.iter());
    b.into_set()
}

/// Smallest normal subgroup containing `s`.
pub fn normal_closure(g: &CayleyTable, s: &ElementSet) -> ElementSet {
    normal_closure_of(g, s.iter()).into_set()
}

pub(crate) fn normal_closure_of<I: IntoIterator<Item = Elem>>(g: &CayleyTable, s: I) -> SubgroupBuilder<'_> {
    let mut b = SubgroupBuilder::new(g);
    b.extend(s);
    let ggens = g.generators();
    loop {
        let mut grew = false;
        let mut idx = 0;
        while idx < b.generators().len() {
            let t = b.generators()[idx];
            for &x in ggens {
                grew |= b.add(g.conj(x, t));
            }
            idx += 1;
        }
        if !grew {
            return b;
        }
    }
}

/// Normal closure of `s` inside the subgroup whose elements are `within`.
pub fn normal_closure_within(g: &CayleyTable, within: &[Elem], s: &[Elem]) -> ElementSet {
    let mut b = SubgroupBuilder::new(g);
    b.extend(s.iter().copied());
    let wgens = generators_of(g, within);
    loop {
        let mut grew = false;
        let mut idx = 0;
        while idx < b.generators().len() {
            let t = b.generators()[idx];
            for &x in &wgens {
                grew |= b.add(g.conj(x, t));
            }
            idx += 1;
        }
        if !grew {
            return b.into_set();
        }
    }
}

/// A generating set for the subgroup whose elements are `elems`.
pub(crate) fn generators_of(g: &CayleyTable, elems: &[Elem]) -> Vec<Elem> {
    let mut b = SubgroupBuilder::new(g);
    for &x in elems {
        b.add(x);
    }
    b.generators().to_vec()
}

pub(crate) fn greedy_generators(g: &CayleyTable) -> Vec<Elem> {
    let n = g.order();
    let mut current = SubgroupBuilder::new(g);
    while current.len() < n {
        // An element inside an already-evaluated candidate closure cannot
        // grow the subgroup further than that candidate did.
        let mut covered = current.set().clone();
        let mut best: Option<(usize, Elem)> = None;
        for x in 0..n as Elem {
            if covered.contains(x) {
                continue;
            }
            let mut trial = current.clone();
            trial.add(x);
            let size = trial.len();
            covered.union_with(trial.set());
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, x));
                if size == n {
                    break;
                }
            }
        }
        let (_, x) = best.expect("proper subgroup has an element outside it");
        current.add(x);
    }
    current.generators().to_vec()
}

/// The subgroup `s` as a standalone table. Element `i` of the result is the
/// `i`-th smallest member of `s`, returned alongside.
pub fn subgroup_table(g: &CayleyTable, s: &ElementSet) -> Result<(CayleyTable, Vec<Elem>)> {
    let elems = s.to_vec();
    if elems.first() != Some(&0) {
        return Err(Error::InvalidParameter("subset does not contain the identity".into()));
    }
    let m = elems.len();
    let mut index = vec![u32::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        index[x as usize] = i as u32;
    }
    let mut table = Vec::with_capacity(m * m);
    for &a in &elems {
        for &b in &elems {
            let p = index[g.mul(a, b) as usize];
            if p == u32::MAX {
                return Err(Error::InvalidParameter("subset is not closed under products".into()));
            }
            table.push(p);
        }
    }
    Ok((CayleyTable::from_trusted(m, table, format!("{}[sub {}]", g.label(), m)), elems))
}

pub fn element_order(g: &CayleyTable, x: Elem) -> Result<u32> {
    g.check_element(x)?;
    Ok(g.orders()[x as usize])
}

/// `[a, b] = a^-1 b^-1 a b`
#[inline]
pub fn commutator(g: &CayleyTable, a: Elem, b: Elem) -> Elem {
    g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
}

pub fn is_abelian(g: &CayleyTable) -> bool {
    let gens = g.generators();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn center(g: &CayleyTable) -> ElementSet {
    let gens = g.generators();
    ElementSet::from_elements(
        g.order(),
        g.elements().filter(|&z| gens.iter().all(|&x| g.mul(z, x) == g.mul(x, z))),
    )
}

pub fn centralizer(g: &CayleyTable, x: Elem) -> ElementSet {
    ElementSet::from_elements(g.order(), g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)))
}

pub fn commutator_subgroup(g: &CayleyTable) -> ElementSet {
    let gens = g.generators();
    let comms: Vec<Elem> =
        gens.iter().flat_map(|&a| gens.iter().map(move |&b| commutator(g, a, b))).collect();
    normal_closure_of(g, comms).into_set()
}

/// Whether the subset `s` is a normal subgroup.
pub fn is_normal(g: &CayleyTable, s: &ElementSet) -> bool {
    if subgroup_closure(g, s) != *s {
        return false;
    }
    let gens = g.generators();
    s.iter().all(|t| gens.iter().all(|&x| s.contains(g.conj(x, t))))
}

/// Conjugacy classes, each sorted, listed by smallest member.
pub fn conjugacy_classes(g: &CayleyTable) -> Vec<Vec<Elem>> {
    let n = g.order();
    let gens = g.generators();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n as Elem {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for &s in gens {
                let c = g.conj(s, y);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    class.push(c);
                }
            }
            i += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}
