use std::time::Instant;

use serde::Serialize;

use super::{verify_isomorphism, IsoVerdict, Method, Status};
use crate::analysis::is_semisimple;
use crate::error::{Error, Result};
use crate::group::{commutator, marked_isomorphism, marked_map, CayleyTable, Elem};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    /// Largest order accepted by [`oracle_isomorphic`].
    pub cap: usize,
    /// Largest order accepted by [`oracle_isomorphism_count`].
    pub count_cap: usize,
    /// Count cap when `G` is semisimple.
    pub semisimple_count_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: 512, count_cap: 256, semisimple_count_cap: 5040 }
    }
}

fn centralizer_sizes(g: &CayleyTable) -> Vec<u32> {
    let n = g.order();
    par::map_range(n, |a| {
        let row = g.row(a as Elem);
        (0..n).filter(|&b| row[b] == g.mul(b as Elem, a as Elem)).count() as u32
    })
}

/// Generator-enumeration search. `G` is generated by a fixed tuple chosen
/// greedily; images are drawn from elements of `H` with the same order and
/// centralizer size, pruned by pairwise product and commutator orders and by
/// marked isomorphism of every prefix.
struct Search<'a> {
    g: &'a CayleyTable,
    h: &'a CayleyTable,
    gens: Vec<Elem>,
    cand: Vec<Vec<Elem>>,
    /// `pair[i][j]` for `j < i`: orders of `g_j g_i` and `[g_j, g_i]`.
    pair: Vec<Vec<(u32, u32)>>,
}

impl<'a> Search<'a> {
    /// `None` when the element invariants already differ.
    fn new(g: &'a CayleyTable, h: &'a CayleyTable) -> Option<Self> {
        if g.order() != h.order() {
            return None;
        }
        let (cg, ch) = (centralizer_sizes(g), centralizer_sizes(h));
        let key = |t: &CayleyTable, c: &[u32], x: Elem| (t.orders()[x as usize], c[x as usize]);
        let mut kg: Vec<_> = g.elements().map(|x| key(g, &cg, x)).collect();
        let mut kh: Vec<_> = h.elements().map(|x| key(h, &ch, x)).collect();
        kg.sort_unstable();
        kh.sort_unstable();
        if kg != kh {
            return None;
        }
        let gens = g.generators().to_vec();
        let cand = gens
            .iter()
            .map(|&x| {
                let want = key(g, &cg, x);
                h.elements().filter(|&y| key(h, &ch, y) == want).collect()
            })
            .collect();
        let pair = (0..gens.len())
            .map(|i| (0..i).map(|j| pair_key(g, gens[j], gens[i])).collect())
            .collect();
        Some(Search { g, h, gens, cand, pair })
    }

    fn admissible(&self, imgs: &[Elem], c: Elem) -> bool {
        let i = imgs.len();
        if (0..i).any(|j| pair_key(self.h, imgs[j], c) != self.pair[i][j]) {
            return false;
        }
        let mut prefix = imgs.to_vec();
        prefix.push(c);
        i + 1 == self.gens.len() || marked_isomorphism(self.g, &self.gens[..=i], self.h, &prefix)
    }

    /// Depth-first over image tuples below `imgs`; `visit` receives each
    /// complete isomorphism and returns whether to continue.
    fn run(&self, imgs: &mut Vec<Elem>, visit: &mut dyn FnMut(Vec<Elem>) -> bool) -> bool {
        let i = imgs.len();
        if i == self.gens.len() {
            return match marked_map(self.g, &self.gens, self.h, imgs) {
                Some(map) if map.iter().all(|&x| x != u32::MAX) => visit(map),
                _ => true,
            };
        }
        for &c in &self.cand[i] {
            if self.admissible(imgs, c) {
                imgs.push(c);
                let go_on = self.run(imgs, visit);
                imgs.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

fn pair_key(g: &CayleyTable, a: Elem, b: Elem) -> (u32, u32) {
    let o = g.orders();
    (o[g.mul(a, b) as usize], o[commutator(g, a, b) as usize])
}

/// An isomorphism `G -> H` as an element map, if one exists. No order cap.
pub fn find_isomorphism(g: &CayleyTable, h: &CayleyTable) -> Option<Vec<Elem>> {
    let search = Search::new(g, h)?;
    if g.order() == 1 {
        return Some(vec![0]);
    }
    let mut found = None;
    search.run(&mut Vec::new(), &mut |map| {
        found = Some(map);
        false
    });
    found
}

/// Brute-force isomorphism test by generator enumeration.
pub fn oracle_isomorphic(g: &CayleyTable, h: &CayleyTable, cfg: &OracleConfig) -> Result<IsoVerdict> {
    let started = Instant::now();
    if g.order() != h.order() {
        let evidence = format!("orders differ ({} vs {})", g.order(), h.order());
        return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Order, started));
    }
    if g.order() > cfg.cap {
        return Err(Error::OracleCapExceeded { order: g.order(), cap: cfg.cap });
    }
    let status = match find_isomorphism(g, h) {
        Some(witness) => {
            assert!(verify_isomorphism(g, h, &witness), "oracle produced an invalid witness");
            Status::Isomorphic { witness }
        }
        None => Status::NonIsomorphic { evidence: "generator images exhausted".into() },
    };
    Ok(IsoVerdict::new(status, Method::Oracle, started))
}

/// Exact number of isomorphisms `G -> H`.
pub fn oracle_isomorphism_count(g: &CayleyTable, h: &CayleyTable, cfg: &OracleConfig) -> Result<u64> {
    let n = g.order();
    if n != h.order() {
        return Ok(0);
    }
    if n > cfg.count_cap && (n > cfg.semisimple_count_cap || !is_semisimple(g)) {
        return Err(Error::OracleCapExceeded { order: n, cap: cfg.count_cap });
    }
    if n == 1 {
        return Ok(1);
    }
    let Some(search) = Search::new(g, h) else { return Ok(0) };
    let counts = par::map_range(search.cand[0].len(), |i| {
        let c = search.cand[0][i];
        let mut count = 0u64;
        if search.admissible(&[], c) {
            search.run(&mut vec![c], &mut |_| {
                count += 1;
                true
            });
        }
        count
    });
    Ok(counts.into_iter().sum())
}
