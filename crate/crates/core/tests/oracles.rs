//! Library results checked against independent brute-force oracles.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use bipref::birelation::enumerate_birelation_bits;
use bipref::topology::enumerate_preorders_bounded;
use bipref::{
    enumerate_birelations, enumerate_relations, enumerate_topologies, is_continuous, tau_of,
    BiRelation, Carrier, FinRelation, FinTopology, Subset,
};

fn c(n: usize) -> Carrier {
    Carrier::new(n).unwrap()
}

fn table(r: &FinRelation) -> Vec<Vec<bool>> {
    let n = r.len();
    (0..n)
        .map(|x| (0..n).map(|y| r.contains(x, y)).collect())
        .collect()
}

/// Families of subsets, as bitmasks over the `2^n` subsets, satisfying the
/// axioms directly.
fn brute_force_topologies(n: usize) -> BTreeSet<Vec<u64>> {
    let subsets = 1usize << n;
    let full = (subsets - 1) as u64;
    let mut out = BTreeSet::new();
    for family in 0u64..1 << subsets {
        let has = |s: u64| family >> s & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<u64> = (0..subsets as u64).filter(|&s| has(s)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| has(a | b) && has(a & b)));
        if closed {
            out.insert(members);
        }
    }
    out
}

fn as_masks(t: &FinTopology) -> Vec<u64> {
    let mut v: Vec<u64> = t.opens().iter().map(|s| s.bits().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn topology_enumeration_matches_brute_force_family_filter() {
    for (n, expected) in [(1, 1), (2, 4), (3, 29)] {
        let brute = brute_force_topologies(n);
        assert_eq!(brute.len(), expected);
        let listed = enumerate_topologies(c(n)).unwrap();
        assert_eq!(listed.len(), expected);
        let ours: BTreeSet<Vec<u64>> = listed.iter().map(as_masks).collect();
        assert_eq!(ours.len(), listed.len(), "duplicates at n={n}");
        assert_eq!(ours, brute);
    }
}

#[test]
fn preorder_count_on_four_points() {
    assert_eq!(enumerate_preorders_bounded(c(4), 4).unwrap().len(), 355);
    assert_eq!(enumerate_topologies(c(4)).unwrap().len(), 355);
}

#[test]
fn subbasis_closure_is_the_least_topology() {
    for n in 1..=3 {
        let all = enumerate_topologies(c(n)).unwrap();
        let subsets: Vec<Subset> = (0..1u64 << n).map(|b| Subset::from_bits(n, b)).collect();
        // Every pair of subsets as a subbasis.
        for a in &subsets {
            for b in &subsets {
                let t = FinTopology::from_subbasis(c(n), [a.clone(), b.clone()]).unwrap();
                let containing: Vec<&FinTopology> = all
                    .iter()
                    .filter(|s| s.is_open(a) && s.is_open(b))
                    .collect();
                let least: Vec<Subset> = subsets
                    .iter()
                    .filter(|u| containing.iter().all(|s| s.is_open(u)))
                    .cloned()
                    .collect();
                assert_eq!(t.opens(), least.as_slice());
            }
        }
    }
}

#[test]
fn transitivity_against_triple_loop() {
    for n in 1..=3 {
        for r in enumerate_relations(c(n)).unwrap() {
            let m = table(&r);
            let looped =
                (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(m[x][y] && m[y][z]) || m[x][z])));
            assert_eq!(r.is_transitive(), looped);
            assert_eq!(r.compose(&r).unwrap().is_subset(&r), looped);
            assert_eq!(r.transitivity_witness().is_none(), looped);
        }
    }
}

#[test]
fn negative_transitivity_reformulation() {
    for n in 1..=3 {
        for r in enumerate_relations(c(n)).unwrap() {
            let m = table(&r);
            let reformulated =
                (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !m[x][z] || m[x][y] || m[y][z])));
            assert_eq!(r.is_negatively_transitive(), reformulated);
        }
    }
}

#[test]
fn composition_follows_the_documented_convention() {
    // (y,x) ∈ R∘R' iff some z has (y,z) ∈ R' and (z,x) ∈ R.
    let r = FinRelation::from_pairs(c(3), [(1, 2)]).unwrap();
    let r_prime = FinRelation::from_pairs(c(3), [(0, 1)]).unwrap();
    let comp = r.compose(&r_prime).unwrap();
    assert_eq!(comp.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
    assert!(r_prime.compose(&r).unwrap().is_empty());
    for n in 1..=2 {
        for a in enumerate_relations(c(n)).unwrap() {
            for b in enumerate_relations(c(n)).unwrap() {
                let (ma, mb) = (table(&a), table(&b));
                let got = a.compose(&b).unwrap();
                for y in 0..n {
                    for x in 0..n {
                        let want = (0..n).any(|z| mb[y][z] && ma[z][x]);
                        assert_eq!(got.contains(y, x), want);
                    }
                }
            }
        }
    }
}

fn semi_transitive_loop(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    let p = |x: usize, y: usize| m[x][y] && !m[y][x];
    let i = |x: usize, y: usize| m[x][y] && m[y][x];
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| (!(i(x, y) && p(y, z)) || p(x, z)) && (!(p(x, y) && i(y, z)) || p(x, z)))
        })
    })
}

#[test]
fn semi_transitivity_against_loop() {
    for n in 1..=3 {
        for r in enumerate_relations(c(n)).unwrap() {
            assert_eq!(r.is_semi_transitive(), semi_transitive_loop(&table(&r)));
        }
    }
}

/// The three conditions spelled out over incidence tables.
fn bi_semi_transitive_loop(b: &BiRelation) -> bool {
    let h = table(b.hard());
    let s = table(b.soft());
    let n = h.len();
    let ph = |x: usize, y: usize| h[x][y] && !h[y][x];
    let ps = |x: usize, y: usize| s[x][y] && !s[y][x];
    let is = |x: usize, y: usize| s[x][y] && s[y][x];
    let cond1 = semi_transitive_loop(&h);
    let mut cond2 = true;
    let mut cond3 = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if (is(x, y) && h[y][z]) || (h[x][y] && is(y, z)) {
                    cond2 &= s[x][z];
                }
                if ph(x, z) && ((ps(x, y) && is(y, z)) || (is(x, y) && ps(y, z))) {
                    cond3 &= ps(x, z);
                }
            }
        }
    }
    cond1 && cond2 && cond3
}

#[test]
fn bi_semi_transitivity_against_loop() {
    for n in 1..=3 {
        for b in enumerate_birelations(c(n)).unwrap() {
            assert_eq!(b.is_semi_transitive(), bi_semi_transitive_loop(&b), "{b:?}");
        }
    }
}

#[test]
fn diagonal_reduction_law() {
    for n in 1..=3 {
        for r in enumerate_relations(c(n)).unwrap() {
            let reduced = r.is_semi_transitive() && r.symmetric_part().is_transitive();
            assert_eq!(BiRelation::diagonal(r).is_semi_transitive(), reduced);
        }
    }
}

#[test]
fn birelation_counts_match_closed_form() {
    // Per diagonal entry 3 choices, per unordered pair 7.
    for n in 1..=4usize {
        let expected = 3u64.pow(n as u32) * 7u64.pow((n * (n - 1) / 2) as u32);
        assert_eq!(
            enumerate_birelation_bits(c(n)).unwrap().count() as u64,
            expected
        );
        if n <= 3 {
            assert_eq!(
                enumerate_birelations(c(n)).unwrap().count() as u64,
                expected
            );
        }
    }
}

#[test]
fn birelation_enumeration_matches_pair_filter() {
    for n in 1..=2 {
        let mut filtered = Vec::new();
        for h in enumerate_relations(c(n)).unwrap() {
            for s in enumerate_relations(c(n)).unwrap() {
                let hs = h.is_subset(&s);
                let strict = s.asymmetric_part().is_subset(&h.asymmetric_part());
                if hs && strict {
                    filtered.push((table(&h), table(&s)));
                }
            }
        }
        let ours: Vec<_> = enumerate_birelations(c(n))
            .unwrap()
            .map(|b| (table(b.hard()), table(b.soft())))
            .collect();
        filtered.sort();
        let mut sorted = ours.clone();
        sorted.sort();
        assert_eq!(sorted, filtered);
    }
}

#[test]
fn section_identity_against_loop() {
    let mut checked = 0;
    for b in enumerate_birelations(c(3)).unwrap() {
        if !b.is_nontrivial() || !b.is_semi_transitive() {
            continue;
        }
        let h = table(b.hard());
        let s = table(b.soft());
        let ps = |x: usize, y: usize| s[x][y] && !s[y][x];
        for y in 0..3 {
            for x in 0..3 {
                if !ps(y, x) {
                    continue;
                }
                let left: Vec<bool> = (0..3).map(|w| h[y][w] || h[w][x]).collect();
                let right: Vec<bool> = (0..3).map(|w| ps(y, w) || ps(w, x)).collect();
                assert_eq!(b.section_union_identity(y, x).unwrap(), left == right);
                assert_eq!(left, right, "{b:?} at ({y}, {x})");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn tau_containment_equals_continuity() {
    for n in 1..=3 {
        let tops = enumerate_topologies(c(n)).unwrap();
        for b in enumerate_birelations(c(n)).unwrap() {
            let tau = tau_of(&b);
            for t in &tops {
                assert_eq!(tau.is_coarser_than(t), is_continuous(&b, t).unwrap());
            }
        }
    }
}

#[test]
fn connectedness_matches_preorder_graph() {
    for n in 1..=3 {
        for t in enumerate_topologies(c(n)).unwrap() {
            let q = t.specialization_preorder();
            assert_eq!(t.is_connected(), q.comparability_connected());
            assert_eq!(FinTopology::from_preorder(&q), t);
        }
    }
}

#[test]
fn sen_lemma_against_loops() {
    for n in 1..=3 {
        for r in enumerate_relations(c(n)).unwrap() {
            let m = table(&r);
            let p = |x: usize, y: usize| m[x][y] && !m[y][x];
            let i = |x: usize, y: usize| m[x][y] && m[y][x];
            let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
                (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f(x, y, z))))
            };
            let complete = (0..n).all(|x| (0..n).all(|y| m[x][y] || m[y][x]));
            let semi = semi_transitive_loop(&m);
            let i_trans = all3(&|x, y, z| !(i(x, y) && i(y, z)) || i(x, z));
            let p_trans = all3(&|x, y, z| !(p(x, y) && p(y, z)) || p(x, z));
            let p_neg = all3(&|x, y, z| p(x, y) || p(y, z) || !p(x, z));
            let trans = all3(&|x, y, z| !(m[x][y] && m[y][z]) || m[x][z]);
            assert!(!(complete && semi) || i_trans);
            assert!(!p_neg || (p_trans && semi));
            assert_eq!(trans, semi && p_trans && i_trans);
            assert!(r.sen_check().satisfied());
        }
    }
}
