use std::collections::BTreeMap;
use std::time::Instant;

use super::{verify_isomorphism, IsoVerdict, Method, Status};
use crate::error::{Error, Result};
use crate::group::{is_abelian, marked_map, CayleyTable, Elem, SubgroupBuilder};

fn order_multiset(g: &CayleyTable) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &o in g.orders() {
        *m.entry(o).or_insert(0) += 1;
    }
    m
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_power_of(mut x: u32, p: u32) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

/// Smallest `m >= 1` with `y^m` in `b`.
fn coset_order(g: &CayleyTable, b: &SubgroupBuilder, y: Elem) -> u32 {
    let mut x = y;
    let mut m = 1;
    while !b.contains(x) {
        x = g.mul(x, y);
        m += 1;
    }
    m
}

/// A basis of the Abelian group `g`: independent elements of prime-power
/// order whose cyclic subgroups multiply directly to `g`. Sorted by prime,
/// then by decreasing order.
pub fn abelian_basis(g: &CayleyTable) -> Result<Vec<Elem>> {
    if !is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let orders = g.orders();
    let mut basis = Vec::new();
    for p in prime_factors(g.order()) {
        let sylow: Vec<Elem> = g.elements().filter(|&x| is_power_of(orders[x as usize], p as u32)).collect();
        let mut b = SubgroupBuilder::new(g);
        while b.len() < sylow.len() {
            let m = sylow.iter().map(|&y| coset_order(g, &b, y)).max().expect("Sylow subgroup is non-empty");
            // Any element of maximal coset order can be corrected by an
            // m-th root inside the current span.
            let pick = sylow.iter().filter(|&&y| coset_order(g, &b, y) == m).find_map(|&y| {
                let target = g.power(y, m as u64);
                let root = b.elements().iter().copied().find(|&c| g.power(c, m as u64) == target)?;
                Some(g.mul(y, g.inv(root)))
            });
            let x = pick.expect("a maximal coset has a representative of the same order");
            debug_assert_eq!(orders[x as usize], m);
            basis.push(x);
            b.add(x);
        }
    }
    Ok(basis)
}

/// Abelian isomorphism test by element-order multisets, with a witness
/// built from matched bases.
pub fn abelian_iso(g: &CayleyTable, h: &CayleyTable) -> Result<IsoVerdict> {
    let started = Instant::now();
    if !is_abelian(g) || !is_abelian(h) {
        return Err(Error::NotAbelian);
    }
    if g.order() != h.order() {
        let evidence = format!("orders differ ({} vs {})", g.order(), h.order());
        return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Abelian, started));
    }
    let (mg, mh) = (order_multiset(g), order_multiset(h));
    if mg != mh {
        let k = mg.keys().chain(mh.keys()).copied().find(|k| mg.get(k) != mh.get(k)).expect("multisets differ");
        let (a, b) = (mg.get(&k).copied().unwrap_or(0), mh.get(&k).copied().unwrap_or(0));
        let evidence = format!("elements of order {k}: {a} vs {b}");
        return Ok(IsoVerdict::new(Status::NonIsomorphic { evidence }, Method::Abelian, started));
    }
    let (bg, bh) = (abelian_basis(g)?, abelian_basis(h)?);
    let og: Vec<u32> = bg.iter().map(|&x| g.orders()[x as usize]).collect();
    let oh: Vec<u32> = bh.iter().map(|&x| h.orders()[x as usize]).collect();
    assert_eq!(og, oh, "equal order multisets give matching bases");
    let witness = marked_map(g, &bg, h, &bh).expect("matched bases extend to an isomorphism");
    assert!(verify_isomorphism(g, h, &witness), "basis witness failed verification");
    Ok(IsoVerdict::new(Status::Isomorphic { witness }, Method::Abelian, started))
}
