use rustc_hash::FxHashMap;

use super::{CayleyTable, Elem};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 5040;

/// Group constructors sharing one order cap.
#[derive(Clone, Copy, Debug)]
pub struct Constructors {
    pub order_cap: usize,
}

impl Default for Constructors {
    fn default() -> Self {
        Constructors { order_cap: DEFAULT_ORDER_CAP }
    }
}

impl Constructors {
    fn check(&self, order: u128) -> Result<usize> {
        if order > self.order_cap as u128 {
            Err(Error::OrderCapExceeded { order, cap: self.order_cap })
        } else {
            Ok(order as usize)
        }
    }

    pub fn cyclic(&self, m: usize) -> Result<CayleyTable> {
        if m == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        let m = self.check(m as u128)?;
        let table = (0..m).flat_map(|i| (0..m).map(move |j| ((i + j) % m) as Elem)).collect();
        Ok(CayleyTable::from_trusted(m, table, format!("cyclic:{m}")))
    }

    /// Direct product of cyclic groups, encoded in mixed radix with the first
    /// factor most significant.
    pub fn abelian(&self, factors: &[usize]) -> Result<CayleyTable> {
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidParameter(format!("invariant factor {bad} < 2")));
        }
        self.check(factors.iter().map(|&f| f as u128).product())?;
        let mut acc = self.cyclic(1)?;
        for &f in factors {
            acc = self.direct_product(&acc, &self.cyclic(f)?)?;
        }
        let label = format!(
            "abelian:{}",
            factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
        );
        Ok(acc.with_label(label))
    }

    /// Dihedral group of order `2m`; `r^i s^e` is stored at `e*m + i`.
    pub fn dihedral(&self, m: usize) -> Result<CayleyTable> {
        if m == 0 {
            return Err(Error::InvalidParameter("dihedral group with m = 0".into()));
        }
        let n = self.check(2 * m as u128)?;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (ea, ia) = (a / m, a % m);
            for b in 0..n {
                let (eb, ib) = (b / m, b % m);
                let rot = if ea == 0 { (ia + ib) % m } else { (ia + m - ib) % m };
                table[a * n + b] = (((ea + eb) % 2) * m + rot) as Elem;
            }
        }
        Ok(CayleyTable::from_trusted(n, table, format!("dihedral:{m}")))
    }

    /// Symmetric group on `m` points, permutations in lexicographic order,
    /// with `(g*h)(x) = g(h(x))`.
    pub fn symmetric(&self, m: usize) -> Result<CayleyTable> {
        self.check(factorial(m)?)?;
        Ok(perm_group(all_perms(m), format!("sym:{m}")))
    }

    pub fn alternating(&self, m: usize) -> Result<CayleyTable> {
        let order = if m < 2 { 1 } else { factorial(m)? / 2 };
        self.check(order)?;
        let perms = all_perms(m).into_iter().filter(|p| is_even(p)).collect();
        Ok(perm_group(perms, format!("alt:{m}")))
    }

    /// The group generated by permutations of `0..m` (each given as its
    /// image list), with `(g*h)(x) = g(h(x))`. Elements are numbered in
    /// breadth-first order from the identity.
    pub fn permutation_group(&self, gens: &[Vec<u8>]) -> Result<CayleyTable> {
        let m = gens.first().map_or(0, |p| p.len());
        for p in gens {
            let mut seen = vec![false; m];
            if p.len() != m || p.iter().any(|&x| x as usize >= m || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::InvalidParameter("generator is not a permutation of a common set".into()));
            }
        }
        let mut perms: Vec<Vec<u8>> = vec![(0..m as u8).collect()];
        let mut index: FxHashMap<Vec<u8>, usize> = FxHashMap::default();
        index.insert(perms[0].clone(), 0);
        let mut i = 0;
        while i < perms.len() {
            for s in gens {
                let next: Vec<u8> = (0..m).map(|x| perms[i][s[x] as usize]).collect();
                if !index.contains_key(&next) {
                    if perms.len() >= self.order_cap {
                        return Err(Error::OrderCapExceeded { order: perms.len() as u128 + 1, cap: self.order_cap });
                    }
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                }
            }
            i += 1;
        }
        Ok(perm_group(perms, format!("perm:{}", gens.len())))
    }

    /// `G x H` with `(i, j)` stored at `i*|H| + j`.
    pub fn direct_product(&self, g: &CayleyTable, h: &CayleyTable) -> Result<CayleyTable> {
        let (ng, nh) = (g.order(), h.order());
        let n = self.check(ng as u128 * nh as u128)?;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (ga, ha) = ((a / nh) as Elem, (a % nh) as Elem);
            for b in 0..n {
                let (gb, hb) = ((b / nh) as Elem, (b % nh) as Elem);
                table[a * n + b] = g.mul(ga, gb) * nh as Elem + h.mul(ha, hb);
            }
        }
        Ok(CayleyTable::from_trusted(n, table, format!("({})x({})", g.label(), h.label())))
    }

    /// `H ⋉ N` with `(h1, n1)(h2, n2) = (h1 h2, θ_{h2^-1}(n1) n2)` and
    /// `(h, n)` stored at `h*|N| + n`.
    pub fn semidirect_product(&self, h: &CayleyTable, n: &CayleyTable, theta: &Action) -> Result<CayleyTable> {
        if theta.map.len() != h.order() || theta.map.first().is_some_and(|p| p.len() != n.order()) {
            return Err(Error::InvalidAction("action does not match the given groups".into()));
        }
        theta.validate(h, n)?;
        let (nh, nn) = (h.order(), n.order());
        let total = self.check(nh as u128 * nn as u128)?;
        let mut table = vec![0; total * total];
        for a in 0..total {
            let (h1, n1) = ((a / nn) as Elem, (a % nn) as Elem);
            for b in 0..total {
                let (h2, n2) = ((b / nn) as Elem, (b % nn) as Elem);
                let twisted = theta.apply(h.inv(h2), n1);
                table[a * total + b] = h.mul(h1, h2) * nn as Elem + n.mul(twisted, n2);
            }
        }
        Ok(CayleyTable::from_trusted(
            total,
            table,
            format!("({})sdp({})", h.label(), n.label()),
        ))
    }
}

fn factorial(m: usize) -> Result<u128> {
    if m > 30 {
        return Err(Error::OrderCapExceeded { order: u128::MAX, cap: DEFAULT_ORDER_CAP });
    }
    Ok((1..=m as u128).product())
}

fn all_perms(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..m as u8).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn perm_group(perms: Vec<Vec<u8>>, label: String) -> CayleyTable {
    let n = perms.len();
    let index: FxHashMap<&[u8], Elem> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as Elem)).collect();
    let mut table = vec![0; n * n];
    let mut buf = vec![0u8; perms.first().map_or(0, |p| p.len())];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            for (x, slot) in buf.iter_mut().enumerate() {
                *slot = pa[pb[x] as usize];
            }
            table[a * n + b] = index[buf.as_slice()];
        }
    }
    CayleyTable::from_trusted(n, table, label)
}

pub fn make_cyclic(m: usize) -> CayleyTable {
    Constructors::default().cyclic(m).expect("cyclic order within cap")
}

pub fn make_abelian(factors: &[usize]) -> Result<CayleyTable> {
    Constructors::default().abelian(factors)
}

pub fn make_dihedral(m: usize) -> CayleyTable {
    Constructors::default().dihedral(m).expect("dihedral order within cap")
}

pub fn make_symmetric(m: usize) -> Result<CayleyTable> {
    Constructors::default().symmetric(m)
}

pub fn make_alternating(m: usize) -> Result<CayleyTable> {
    Constructors::default().alternating(m)
}

pub fn permutation_group(gens: &[Vec<u8>]) -> Result<CayleyTable> {
    Constructors::default().permutation_group(gens)
}

pub fn direct_product(g: &CayleyTable, h: &CayleyTable) -> Result<CayleyTable> {
    Constructors::default().direct_product(g, h)
}

pub fn semidirect_product(h: &CayleyTable, n: &CayleyTable, theta: &Action) -> Result<CayleyTable> {
    Constructors::default().semidirect_product(h, n, theta)
}

/// A homomorphism `θ: H -> Aut(N)`, stored as one permutation of `N` per
/// element of `H`, with `θ_{ab} = θ_a ∘ θ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    map: Vec<Vec<Elem>>,
}

impl Action {
    pub fn new(h: &CayleyTable, n: &CayleyTable, map: Vec<Vec<Elem>>) -> Result<Action> {
        if map.len() != h.order() || map.iter().any(|p| p.len() != n.order()) {
            return Err(Error::InvalidAction("wrong dimensions".into()));
        }
        let a = Action { map };
        a.validate(h, n)?;
        Ok(a)
    }

    pub fn trivial(h: &CayleyTable, n: &CayleyTable) -> Action {
        Action { map: vec![(0..n.order() as Elem).collect(); h.order()] }
    }

    /// Extends images of generators of `H` to the whole action, failing if
    /// the prescribed images are inconsistent with the relations of `H`.
    pub fn from_generators(h: &CayleyTable, n: &CayleyTable, gens: &[(Elem, Vec<Elem>)]) -> Result<Action> {
        let nn = n.order();
        let mut map: Vec<Option<Vec<Elem>>> = vec![None; h.order()];
        map[0] = Some((0..nn as Elem).collect());
        let mut queue = vec![0 as Elem];
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            for (s, perm) in gens {
                if perm.len() != nn {
                    return Err(Error::InvalidAction("generator image has wrong length".into()));
                }
                let base = map[e as usize].as_ref().unwrap();
                let composed: Vec<Elem> = (0..nn).map(|x| base[perm[x] as usize]).collect();
                let target = h.mul(e, *s) as usize;
                match &map[target] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidAction(format!(
                            "generator images violate a relation at element {target}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        map[target] = Some(composed);
                        queue.push(target as Elem);
                    }
                }
            }
            i += 1;
        }
        let map: Option<Vec<Vec<Elem>>> = map.into_iter().collect();
        let map = map.ok_or_else(|| Error::InvalidAction("generators do not generate H".into()))?;
        Action::new(h, n, map)
    }

    #[inline]
    pub fn apply(&self, h: Elem, x: Elem) -> Elem {
        self.map[h as usize][x as usize]
    }

    pub fn images(&self) -> &[Vec<Elem>] {
        &self.map
    }

    fn validate(&self, h: &CayleyTable, n: &CayleyTable) -> Result<()> {
        let nn = n.order();
        if self.map[0].iter().enumerate().any(|(i, &x)| x as usize != i) {
            return Err(Error::InvalidAction("identity of H does not act trivially".into()));
        }
        for (hi, p) in self.map.iter().enumerate() {
            let mut seen = vec![false; nn];
            for &x in p {
                if x as usize >= nn || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidAction(format!("image of {hi} is not a permutation")));
                }
            }
            if p[0] != 0 {
                return Err(Error::InvalidAction(format!("image of {hi} moves the identity")));
            }
            for a in 0..nn as Elem {
                for b in 0..nn as Elem {
                    if p[n.mul(a, b) as usize] != n.mul(p[a as usize], p[b as usize]) {
                        return Err(Error::InvalidAction(format!("image of {hi} is not an automorphism")));
                    }
                }
            }
        }
        for a in 0..h.order() as Elem {
            for b in 0..h.order() as Elem {
                let ab = &self.map[h.mul(a, b) as usize];
                let (pa, pb) = (&self.map[a as usize], &self.map[b as usize]);
                if (0..nn).any(|x| ab[x] != pa[pb[x] as usize]) {
                    return Err(Error::InvalidAction(format!("θ({a}·{b}) ≠ θ({a})∘θ({b})")));
                }
            }
        }
        Ok(())
    }
}
