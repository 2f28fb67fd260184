mod common;

use std::collections::HashSet;

use common::{brute_count, is_isomorphism, perm_from_seed, renamed};
use wlgroup::gadget::{build_gadget_graph_with, GadgetShape, Kind};
use wlgroup::group::{make_abelian, make_alternating, make_cyclic, make_dihedral, make_symmetric, Elem};
use wlgroup::iso::{countfree_family, oracle_isomorphism_count, q8, semisimple_iso_list, OracleConfig};
use wlgroup::wl::{ColoredGroup, DEFAULT_BUDGET};

#[test]
fn a5_listing_matches_brute_force_count() {
    let a5 = make_alternating(5).unwrap();
    let twin = renamed(&a5, &perm_from_seed(60, 99));
    let list = semisimple_iso_list(&a5, &twin).unwrap();
    assert_eq!(list.count, brute_count(&a5, &twin));
    assert_eq!(list.count, 120);
    let distinct: HashSet<&Vec<Elem>> = list.isomorphisms.iter().collect();
    assert_eq!(distinct.len(), 120);
    assert!(list.isomorphisms.iter().all(|m| is_isomorphism(&a5, &twin, m)));
}

#[test]
fn oracle_counts_match_brute_force() {
    let cfg = OracleConfig::default();
    for g in [make_cyclic(8), make_symmetric(3).unwrap(), make_dihedral(4), q8(), make_abelian(&[2, 4]).unwrap()] {
        let h = renamed(&g, &perm_from_seed(g.order(), 7));
        assert_eq!(oracle_isomorphism_count(&g, &h, &cfg).unwrap(), brute_count(&g, &h));
    }
}

#[test]
fn countfree_pair_involution_counts() {
    let (g, h) = countfree_family(2).unwrap();
    let involutions = |t: &wlgroup::CayleyTable| (1..t.order() as Elem).filter(|&x| t.mul(x, x) == 0).count();
    assert_eq!((g.order(), h.order()), (64, 64));
    assert_eq!((involutions(&g), involutions(&h)), (15, 7));
}

#[test]
fn gadget_graph_shape() {
    for g in [make_cyclic(4), make_symmetric(3).unwrap(), q8()] {
        let n = g.order();
        let cg = ColoredGroup::uncolored(&g);
        for shape in [GadgetShape::Listed, GadgetShape::Connected] {
            let gg = build_gadget_graph_with(&cg, shape, DEFAULT_BUDGET).unwrap();
            let graph = gg.graph();
            assert_eq!(graph.vertex_count(), n + 4 * n * n);
            assert_eq!(graph.edge_count(), shape.edges_per_gadget() * n * n);
            for x in 0..n as Elem {
                for y in 0..n as Elem {
                    let v = |k| gg.vertex(k, x, y);
                    let xy = g.mul(x, y);
                    assert!(graph.adjacent(x, v(Kind::A)));
                    assert!(graph.adjacent(y, v(Kind::B)));
                    assert!(graph.adjacent(v(Kind::B), v(Kind::C)));
                    assert!(graph.adjacent(v(Kind::C), v(Kind::D)));
                    assert!(graph.adjacent(xy, v(Kind::D)));
                    assert_eq!(graph.adjacent(v(Kind::A), v(Kind::B)), shape == GadgetShape::Connected);
                }
            }
        }
    }
}
