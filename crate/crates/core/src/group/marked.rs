use super::{CayleyTable, Elem};

/// Decides whether `gs[i] -> hs[i]` extends to an isomorphism
/// `<gs> -> <hs>`.
///
/// Both subgroups are enumerated breadth-first by the same word schedule
/// (right multiplication by the tuple entries in order) while a partial
/// bijection is maintained; a word landing on a known element on one side
/// and a new element on the other, or on different known images, is a
/// conflict. A conflict-free run yields a bijection that commutes with
/// right multiplication by the generators, which makes it a homomorphism.
pub fn marked_isomorphism(g: &CayleyTable, gs: &[Elem], h: &CayleyTable, hs: &[Elem]) -> bool {
    if gs.len() != hs.len() {
        return false;
    }
    let mut fwd = vec![u32::MAX; g.order()];
    let mut back = vec![u32::MAX; h.order()];
    let mut queue: Vec<(Elem, Elem)> = vec![(0, 0)];
    fwd[0] = 0;
    back[0] = 0;
    let mut i = 0;
    while i < queue.len() {
        let (a, b) = queue[i];
        for (&x, &y) in gs.iter().zip(hs) {
            let p = g.mul(a, x);
            let q = h.mul(b, y);
            match (fwd[p as usize], back[q as usize]) {
                (u32::MAX, u32::MAX) => {
                    fwd[p as usize] = q;
                    back[q as usize] = p;
                    queue.push((p, q));
                }
                (img, pre) if img == q && pre == p => {}
                _ => return false,
            }
        }
        i += 1;
    }
    true
}

/// Like [`marked_isomorphism`] but returns the isomorphism as a map on
/// `G` (entries outside `<gs>` are `u32::MAX`).
pub fn marked_map(g: &CayleyTable, gs: &[Elem], h: &CayleyTable, hs: &[Elem]) -> Option<Vec<Elem>> {
    if gs.len() != hs.len() {
        return None;
    }
    let mut fwd = vec![u32::MAX; g.order()];
    let mut back = vec![u32::MAX; h.order()];
    let mut queue: Vec<Elem> = vec![0];
    fwd[0] = 0;
    back[0] = 0;
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        let b = fwd[a as usize];
        for (&x, &y) in gs.iter().zip(hs) {
            let p = g.mul(a, x);
            let q = h.mul(b, y);
            match (fwd[p as usize], back[q as usize]) {
                (u32::MAX, u32::MAX) => {
                    fwd[p as usize] = q;
                    back[q as usize] = p;
                    queue.push(p);
                }
                (img, pre) if img == q && pre == p => {}
                _ => return None,
            }
        }
        i += 1;
    }
    Some(fwd)
}

/// Reusable buffers for [`marked_cayley_signature`].
#[derive(Clone, Debug, Default)]
pub struct MarkedScratch {
    pos: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    list: Vec<Elem>,
}

impl MarkedScratch {
    pub fn new(n: usize) -> Self {
        MarkedScratch { pos: vec![0; n], stamp: vec![0; n], epoch: 0, list: Vec::with_capacity(n) }
    }
}

/// Appends a canonical description of the marked subgroup `<tuple>` to
/// `out`: its size followed by the right-multiplication table of the
/// tuple entries over the breadth-first word enumeration seeded by the
/// tuple. Two tuples produce the same description exactly when
/// [`marked_isomorphism`] holds between them.
pub fn marked_cayley_signature(g: &CayleyTable, tuple: &[Elem], scratch: &mut MarkedScratch, out: &mut Vec<u64>) {
    if scratch.pos.len() < g.order() {
        *scratch = MarkedScratch::new(g.order());
    }
    scratch.epoch = scratch.epoch.wrapping_add(1);
    if scratch.epoch == 0 {
        scratch.stamp.fill(0);
        scratch.epoch = 1;
    }
    let epoch = scratch.epoch;
    scratch.list.clear();
    scratch.list.push(0);
    scratch.stamp[0] = epoch;
    scratch.pos[0] = 0;
    let header = out.len();
    out.push(0);
    let mut i = 0;
    while i < scratch.list.len() {
        let e = scratch.list[i];
        for &x in tuple {
            let p = g.mul(e, x) as usize;
            if scratch.stamp[p] != epoch {
                scratch.stamp[p] = epoch;
                scratch.pos[p] = scratch.list.len() as u32;
                scratch.list.push(p as Elem);
            }
            out.push(scratch.pos[p] as u64);
        }
        i += 1;
    }
    out[header] = scratch.list.len() as u64;
}
