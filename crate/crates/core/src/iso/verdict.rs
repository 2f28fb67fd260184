use std::time::Instant;

use serde::Serialize;

use crate::group::{CayleyTable, Elem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Order,
    Abelian,
    Semisimple,
    Wl,
    Canon,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Isomorphic { witness: Vec<Elem> },
    NonIsomorphic { evidence: String },
    WlIndistinguishable { k: usize, rounds: u32, version: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoVerdict {
    #[serde(flatten)]
    pub status: Status,
    pub method: Method,
    pub elapsed_ms: f64,
}

impl IsoVerdict {
    pub(crate) fn new(status: Status, method: Method, started: Instant) -> Self {
        IsoVerdict { status, method, elapsed_ms: started.elapsed().as_secs_f64() * 1e3 }
    }

    /// `Some(true)` / `Some(false)` for a decided pair, `None` when only WL
    /// indistinguishability is known.
    pub fn decided(&self) -> Option<bool> {
        match self.status {
            Status::Isomorphic { .. } => Some(true),
            Status::NonIsomorphic { .. } => Some(false),
            Status::WlIndistinguishable { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match &self.status {
            Status::Isomorphic { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Whether `map` is a bijection `G -> H` respecting all `n^2` products.
pub fn verify_isomorphism(g: &CayleyTable, h: &CayleyTable, map: &[Elem]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
            return false;
        }
    }
    (0..n as Elem).all(|a| {
        let ra = g.row(a);
        let ma = map[a as usize];
        (0..n).all(|b| map[ra[b] as usize] == h.mul(ma, map[b]))
    })
}
