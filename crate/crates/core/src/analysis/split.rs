use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, is_abelian, is_normal, CayleyTable, Elem, ElementSet};

#[derive(Clone, Debug, Serialize)]
pub struct Quotient {
    #[serde(skip)]
    pub table: CayleyTable,
    /// Coset index of every element of the original group.
    pub coset_of: Vec<Elem>,
    /// Smallest element of every coset; cosets are sorted by it.
    pub reps: Vec<Elem>,
}

/// The quotient `G/N` over coset representatives.
pub fn quotient(g: &CayleyTable, n: &ElementSet) -> Result<Quotient> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let members = n.to_vec();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(x);
        for &m in &members {
            coset_of[g.mul(x, m) as usize] = c;
        }
    }
    let q = reps.len();
    let table = reps
        .iter()
        .flat_map(|&a| reps.iter().map(move |&b| (a, b)))
        .map(|(a, b)| coset_of[g.mul(a, b) as usize])
        .collect();
    let table = CayleyTable::from_trusted(q, table, format!("{}/[{}]", g.label(), members.len()));
    Ok(Quotient { table, coset_of, reps })
}

fn prime_powers(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    (1..m.max(2)).find(|&u| (a * u) % m == 1 % m).unwrap_or(0)
}

/// Whether `<x>` has a complement in the Abelian group `a`, decided one
/// Sylow component at a time: the `p`-part `x_p` splits off exactly when no
/// `y` of `p`-power order satisfies `|x_p y^p| < |x_p|`.
pub fn splits_from_abelian(a: &CayleyTable, x: Elem) -> Result<bool> {
    a.check_element(x)?;
    if !is_abelian(a) {
        return Err(Error::NotAbelian);
    }
    let orders = a.orders();
    let o = orders[x as usize] as u64;
    for (p, e) in prime_powers(o) {
        let pa = p.pow(e);
        let rest = o / pa;
        let xp = a.power(x, rest * inverse_mod(rest % pa, pa));
        let target = orders[xp as usize];
        let drops = a.elements().any(|y| {
            let oy = orders[y as usize] as u64;
            oy.is_power_of_prime(p) && orders[a.mul(xp, a.power(y, p)) as usize] < target
        });
        if drops {
            return Ok(false);
        }
    }
    Ok(true)
}

trait PrimePower {
    fn is_power_of_prime(self, p: u64) -> bool;
}

impl PrimePower for u64 {
    fn is_power_of_prime(mut self, p: u64) -> bool {
        while self % p == 0 {
            self /= p;
        }
        self == 1
    }
}

/// Whether the central element `z` splits from `g`: `z` must lie outside
/// `[G, G]` and its coset must split from the abelianization.
pub fn splits_from_group(g: &CayleyTable, z: Elem) -> Result<bool> {
    g.check_element(z)?;
    if g.elements().any(|x| g.mul(x, z) != g.mul(z, x)) {
        return Err(Error::NotCentral(z as usize));
    }
    if z == 0 {
        return Ok(true);
    }
    let comm = commutator_subgroup(g);
    if comm.contains(z) {
        return Ok(false);
    }
    let q = quotient(g, &comm)?;
    splits_from_abelian(&q.table, q.coset_of[z as usize])
}
