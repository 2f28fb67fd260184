use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    commutator_subgroup, direct_product, make_abelian, make_alternating, make_cyclic, make_dihedral, make_symmetric,
    semidirect_product, Action, CayleyTable, Elem,
};

#[derive(Clone, Debug, Serialize)]
pub struct NamedGroup {
    pub name: String,
    #[serde(skip)]
    pub table: CayleyTable,
}

impl NamedGroup {
    pub fn new(name: impl Into<String>, table: CayleyTable) -> Self {
        let name = name.into();
        NamedGroup { table: table.with_label(name.clone()), name }
    }
}

/// The quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
pub fn q8() -> CayleyTable {
    const T: [[Elem; 8]; 8] = [
        [0, 1, 2, 3, 4, 5, 6, 7],
        [1, 0, 3, 2, 5, 4, 7, 6],
        [2, 3, 1, 0, 6, 7, 5, 4],
        [3, 2, 0, 1, 7, 6, 4, 5],
        [4, 5, 7, 6, 1, 0, 2, 3],
        [5, 4, 6, 7, 0, 1, 3, 2],
        [6, 7, 4, 5, 3, 2, 1, 0],
        [7, 6, 5, 4, 2, 3, 0, 1],
    ];
    CayleyTable::from_flat(8, T.iter().flatten().copied().collect(), "q8").expect("literal Q8 table")
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Invariant-factor lists `d_1 | d_2 | ... | d_r` of every Abelian group of
/// order `n`, one per isomorphism type. The cyclic group is `[n]`, the
/// trivial group `[]`.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    let mut types: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in primes {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                // Largest exponents go into the largest invariant factors.
                let len = t.len().max(part.len());
                let mut merged = vec![1usize; len];
                for (i, &d) in t.iter().rev().enumerate() {
                    merged[len - 1 - i] *= d;
                }
                for (i, &x) in part.iter().enumerate() {
                    merged[len - 1 - i] *= p.pow(x);
                }
                next.push(merged);
            }
        }
        types = next;
    }
    types.sort();
    types
}

fn abelian_name(t: &[usize]) -> String {
    match t {
        [] => "cyclic:1".into(),
        [m] => format!("cyclic:{m}"),
        _ => format!("abelian:{}", t.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")),
    }
}

/// Every Abelian group of order at most `max_order`, one per isomorphism
/// type, named by its constructor spec.
pub fn abelian_corpus(max_order: usize) -> Vec<NamedGroup> {
    (1..=max_order)
        .flat_map(abelian_types)
        .map(|t| {
            let table = if t.is_empty() { make_cyclic(1) } else { make_abelian(&t).expect("within cap") };
            NamedGroup::new(abelian_name(&t), table)
        })
        .collect()
}

/// Groups from every shipped constructor with order at most `max_order`:
/// all Abelian types, dihedral, symmetric, alternating, Q8, and a few
/// direct and semidirect products.
pub fn small_corpus(max_order: usize) -> Vec<NamedGroup> {
    let mut out = abelian_corpus(max_order);
    for m in 3..=max_order / 2 {
        out.push(NamedGroup::new(format!("dihedral:{m}"), make_dihedral(m)));
    }
    for m in 3..=5 {
        let f: usize = (1..=m).product();
        if f <= max_order {
            out.push(NamedGroup::new(format!("sym:{m}"), make_symmetric(m).expect("within cap")));
        }
        if f / 2 <= max_order {
            out.push(NamedGroup::new(format!("alt:{m}"), make_alternating(m).expect("within cap")));
        }
    }
    if max_order >= 8 {
        out.push(NamedGroup::new("q8", q8()));
    }
    let s3 = make_symmetric(3).expect("small");
    let products = [
        ("dp:sym:3xcyclic:2", 12, (&s3, make_cyclic(2))),
        ("dp:q8xcyclic:2", 16, (&q8(), make_cyclic(2))),
        ("dp:sym:3xcyclic:3", 18, (&s3, make_cyclic(3))),
        ("dp:sym:3xsym:3", 36, (&s3, s3.clone())),
        ("dp:dihedral:4xcyclic:3", 24, (&make_dihedral(4), make_cyclic(3))),
    ];
    for (name, order, (a, b)) in products {
        if order <= max_order {
            out.push(NamedGroup::new(name, direct_product(a, &b).expect("within cap")));
        }
    }
    for pair in semidirect_corpus() {
        for g in [pair.first, pair.second] {
            if g.table.order() <= max_order && !out.iter().any(|x| x.name == g.name) {
                out.push(g);
            }
        }
    }
    out
}

/// The pair `G_n = (Z/2)^n x (Z/4)^n`, `H_n = (Z/2)^(n-2) x (Z/4)^(n+1)`.
pub fn countfree_family(n: usize) -> Result<(CayleyTable, CayleyTable)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("count-free family needs n >= 2, got {n}")));
    }
    let g: Vec<usize> = [2].repeat(n).into_iter().chain([4].repeat(n)).collect();
    let h: Vec<usize> = [2].repeat(n - 2).into_iter().chain([4].repeat(n + 1)).collect();
    Ok((make_abelian(&g)?, make_abelian(&h)?))
}

/// Two coprime semidirect products `H ⋉ N` over the same `H` and `N` with
/// inequivalent actions.
#[derive(Clone, Debug, Serialize)]
pub struct SemidirectPair {
    pub name: String,
    pub first: NamedGroup,
    pub second: NamedGroup,
}

/// The permutation of `(Z/p)^2` (encoded `a*p + b`) induced by the matrix
/// `m` acting on column vectors.
pub fn matrix_action(p: usize, m: [[usize; 2]; 2]) -> Vec<Elem> {
    (0..p * p)
        .map(|x| {
            let (a, b) = (x / p, x % p);
            let c = (m[0][0] * a + m[0][1] * b) % p;
            let d = (m[1][0] * a + m[1][1] * b) % p;
            (c * p + d) as Elem
        })
        .collect()
}

/// Multiplication by `u` on `Z/p`.
pub fn scalar_action(p: usize, u: usize) -> Vec<Elem> {
    (0..p).map(|x| (x * u % p) as Elem).collect()
}

/// Named actions of the coprime corpus: `(H, N, action-id, generator image)`
/// where `H` is cyclic with generator 1, plus the sign action of S3 on Z/7.
pub fn catalog_actions() -> Vec<(&'static str, &'static str, &'static str, Vec<Elem>)> {
    vec![
        ("cyclic:2", "cyclic:7", "inv", scalar_action(7, 6)),
        ("cyclic:3", "cyclic:7", "mul2", scalar_action(7, 2)),
        ("cyclic:2", "abelian:7,7", "diag1m1", matrix_action(7, [[1, 0], [0, 6]])),
        ("cyclic:2", "abelian:7,7", "neg", matrix_action(7, [[6, 0], [0, 6]])),
        ("cyclic:3", "abelian:7,7", "diag22", matrix_action(7, [[2, 0], [0, 2]])),
        ("cyclic:3", "abelian:7,7", "diag24", matrix_action(7, [[2, 0], [0, 4]])),
        ("cyclic:2", "abelian:5,5", "diag1m1", matrix_action(5, [[1, 0], [0, 4]])),
        ("cyclic:2", "abelian:5,5", "neg", matrix_action(5, [[4, 0], [0, 4]])),
        ("cyclic:3", "abelian:5,5", "rot3", matrix_action(5, [[0, 4], [1, 4]])),
    ]
}

/// The action of the group `h` on `n` named `id`: `"trivial"`, `"sign"`
/// (elements outside the commutator subgroup act by inversion, Abelian `N`
/// only), or a catalog entry.
pub fn named_action(h_spec: &str, h: &CayleyTable, n_spec: &str, n: &CayleyTable, id: &str) -> Result<Action> {
    match id {
        "trivial" => Ok(Action::trivial(h, n)),
        "sign" => {
            let even = commutator_subgroup(h);
            let inv: Vec<Elem> = n.elements().map(|x| n.inv(x)).collect();
            let ident: Vec<Elem> = n.elements().collect();
            let map = h.elements().map(|x| if even.contains(x) { ident.clone() } else { inv.clone() }).collect();
            Action::new(h, n, map)
        }
        _ => {
            let (_, _, _, perm) = catalog_actions()
                .into_iter()
                .find(|(hs, ns, name, _)| *hs == h_spec && *ns == n_spec && *name == id)
                .ok_or_else(|| Error::InvalidAction(format!("no action {id:?} of {h_spec} on {n_spec}")))?;
            Action::from_generators(h, n, &[(1, perm)])
        }
    }
}

fn build_sdp(h_spec: &str, h: &CayleyTable, n_spec: &str, n: &CayleyTable, id: &str) -> NamedGroup {
    let theta = named_action(h_spec, h, n_spec, n, id).expect("catalog action is valid");
    let name = format!("sdp:{h_spec}:{n_spec}:{id}");
    NamedGroup::new(name, semidirect_product(h, n, &theta).expect("within cap"))
}

/// Coprime pairs `H ⋉ N` with `H` in {Z/2, Z/3, S3} and `N` in
/// {Z/7, (Z/5)^2, (Z/7)^2}, each realized by two inequivalent actions.
pub fn semidirect_corpus() -> Vec<SemidirectPair> {
    let group = |spec: &str| -> CayleyTable {
        match spec {
            "cyclic:2" => make_cyclic(2),
            "cyclic:3" => make_cyclic(3),
            "cyclic:7" => make_cyclic(7),
            "sym:3" => make_symmetric(3).expect("small"),
            "abelian:5,5" => make_abelian(&[5, 5]).expect("small"),
            "abelian:7,7" => make_abelian(&[7, 7]).expect("small"),
            _ => unreachable!("unknown corpus spec {spec}"),
        }
    };
    let pairs = [
        ("cyclic:2", "cyclic:7", "trivial", "inv"),
        ("cyclic:3", "cyclic:7", "trivial", "mul2"),
        ("sym:3", "cyclic:7", "trivial", "sign"),
        ("cyclic:2", "abelian:5,5", "diag1m1", "neg"),
        ("cyclic:3", "abelian:5,5", "trivial", "rot3"),
        ("cyclic:2", "abelian:7,7", "diag1m1", "neg"),
        ("cyclic:3", "abelian:7,7", "diag22", "diag24"),
    ];
    pairs
        .iter()
        .map(|&(hs, ns, a, b)| {
            let (h, n) = (group(hs), group(ns));
            SemidirectPair {
                name: format!("{hs} on {ns}: {a} vs {b}"),
                first: build_sdp(hs, &h, ns, &n, a),
                second: build_sdp(hs, &h, ns, &n, b),
            }
        })
        .collect()
}
