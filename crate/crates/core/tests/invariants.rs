mod common;

use common::{brute_isomorphism, is_isomorphism, perm_from_seed, pool, renamed};
use proptest::prelude::*;
use wlgroup::group::{is_abelian, subgroup_closure, Elem};
use wlgroup::iso::{abelian_corpus, abelian_iso, auto_pipeline, canonical_form, AutoConfig, CanonConfig};
use wlgroup::wl::{refine_round, run_wl, structure_coloring, ColoredGroup, SignatureMode, Version, WlConfig};
use wlgroup::{CayleyTable, ElementSet};

fn pick(i: usize) -> CayleyTable {
    let p = pool();
    p[i % p.len()].clone()
}

fn version(v: bool) -> Version {
    if v {
        Version::II
    } else {
        Version::I
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabel_matches_cellwise_renaming(i in 0usize..64, seed in any::<u64>()) {
        let g = pick(i);
        let perm = perm_from_seed(g.order(), seed);
        let r = g.relabel(&perm).unwrap();
        let expected = renamed(&g, &perm);
        prop_assert_eq!(r.flat(), expected.flat());
        prop_assert!(is_isomorphism(&g, &r, &perm));
        let mut inv = vec![0 as Elem; perm.len()];
        for (x, &p) in perm.iter().enumerate() {
            inv[p as usize] = x as Elem;
        }
        let back = r.relabel(&inv).unwrap();
        prop_assert_eq!(back.flat(), g.flat());
    }

    #[test]
    fn cay_text_round_trips(i in 0usize..64, seed in any::<u64>()) {
        let g = pick(i).relabel(&perm_from_seed(pick(i).order(), seed)).unwrap();
        let back = CayleyTable::from_cay_str(&g.to_cay_string(), false).unwrap();
        prop_assert_eq!(back.flat(), g.flat());
    }

    #[test]
    fn closure_is_idempotent_and_closed(i in 0usize..64, picks in proptest::collection::vec(any::<u32>(), 0..3)) {
        let g = pick(i);
        let n = g.order();
        let s = ElementSet::from_elements(n, picks.iter().map(|&x| x % n as u32));
        let c = subgroup_closure(&g, &s);
        prop_assert!(s.is_subset(&c));
        prop_assert_eq!(subgroup_closure(&g, &c).to_vec(), c.to_vec());
        for a in c.iter() {
            for b in c.iter() {
                prop_assert!(c.contains(g.mul(a, b)));
            }
        }
        prop_assert_eq!(n % c.len(), 0);
    }

    #[test]
    fn wl_never_separates_relabelled_twins(
        i in 0usize..64, seed in any::<u64>(), k in 1usize..=2, v in any::<bool>(), counting in any::<bool>()
    ) {
        let g = pick(i);
        let h = renamed(&g, &perm_from_seed(g.order(), seed));
        let cfg = WlConfig::new(k, version(v)).counting(counting);
        let r = run_wl(&ColoredGroup::uncolored(&g), &ColoredGroup::uncolored(&h), &cfg).unwrap();
        prop_assert!(!r.distinguished);
        prop_assert!(r.stabilized);
    }

    #[test]
    fn fingerprint_partitions_equal_exact_partitions(
        i in 0usize..64, j in 0usize..64, k in 1usize..=3, v in any::<bool>(), counting in any::<bool>()
    ) {
        let (g, h) = (pick(i), pick(j));
        prop_assume!(k < 3 || g.order() * h.order() <= 256);
        let init = structure_coloring(&[&g, &h], k, version(v)).unwrap();
        let (mut a, mut b) = (init.clone(), init);
        for _ in 0..4 {
            a = refine_round(&a, counting, SignatureMode::Exact).unwrap();
            b = refine_round(&b, counting, SignatureMode::Fingerprint).unwrap();
            prop_assert!(a.same_partition(&b));
        }
    }

    #[test]
    fn refinement_only_splits_classes(i in 0usize..64, k in 1usize..=2, v in any::<bool>()) {
        let g = pick(i);
        let c0 = structure_coloring(&[&g], k, version(v)).unwrap();
        let c1 = refine_round(&c0, true, SignatureMode::Exact).unwrap();
        prop_assert!(c1.classes() >= c0.classes());
        let mut parent = vec![u32::MAX; c1.classes()];
        for (&old, &new) in c0.all_colors().iter().zip(c1.all_colors()) {
            let slot = &mut parent[new as usize];
            prop_assert!(*slot == u32::MAX || *slot == old);
            *slot = old;
        }
    }

    #[test]
    fn canonical_form_ignores_labelling(i in 0usize..64, seed in any::<u64>()) {
        let g = pick(i);
        prop_assume!(g.order() <= 16);
        let h = renamed(&g, &perm_from_seed(g.order(), seed));
        let cfg = CanonConfig::default();
        let (a, b) = (canonical_form(&g, &cfg).unwrap(), canonical_form(&h, &cfg).unwrap());
        prop_assert_eq!(a.table.flat(), b.table.flat());
        prop_assert_eq!(&a.psi, &b.psi);
        prop_assert!(is_isomorphism(&g, &a.table, &a.labeling));
    }
}

#[test]
fn abelian_test_agrees_with_brute_force() {
    let groups = abelian_corpus(32);
    for (x, g) in groups.iter().enumerate() {
        for h in &groups[x..] {
            if g.table.order() != h.table.order() {
                continue;
            }
            let want = brute_isomorphism(&g.table, &h.table).is_some();
            let got = abelian_iso(&g.table, &h.table).unwrap();
            assert_eq!(got.decided(), Some(want), "{} vs {}", g.name, h.name);
            if let Some(w) = got.witness() {
                assert!(is_isomorphism(&g.table, &h.table, w));
            }
        }
    }
}

#[test]
fn auto_pipeline_agrees_with_brute_force() {
    let groups = pool();
    let cfg = AutoConfig::default();
    for (x, g) in groups.iter().enumerate() {
        for (y, h) in groups.iter().enumerate().skip(x) {
            if g.order() != h.order() {
                continue;
            }
            let h = renamed(h, &perm_from_seed(h.order(), (x * 31 + y) as u64));
            let want = brute_isomorphism(g, &h).is_some();
            let v = auto_pipeline(g, &h, &cfg).unwrap();
            assert_eq!(v.decided(), Some(want), "pool {x} vs {y}");
            if let Some(w) = v.witness() {
                assert!(is_isomorphism(g, &h, w));
            }
        }
    }
}

#[test]
fn brute_force_oracle_sanity() {
    let groups = pool();
    let (d4, q8) = (&groups[7], &groups[8]);
    assert!(brute_isomorphism(d4, q8).is_none());
    assert!(brute_isomorphism(&groups[1], &groups[2]).is_some());
    assert!(!is_abelian(d4));
}
