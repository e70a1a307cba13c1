use latin_census::bipartite::{
    canonical_form, factorization_count, factorization_count_with, parse_graph, write_graph, BipartiteGraph,
    CanonicalKey, EdgeRule, FactorizationMemo,
};
use latin_census::latin::{
    autoparatopism_group_order, enumerate_reduced, has_nontrivial_autoparatopism, parse_rectangle,
    write_rectangle, Conjugate, LatinRectangle, Paratopism, Permutation,
};
use latin_census::permanent::permanent_int;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

fn perm0(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

fn permutation(rng: &mut StdRng, n: usize) -> Permutation {
    Permutation::from_images(&perm0(rng, n).iter().map(|x| x + 1).collect::<Vec<_>>()).unwrap()
}

fn paratopism(rng: &mut StdRng, n: usize) -> Paratopism {
    let c = Conjugate::ALL[rng.gen_range(0..6)];
    Paratopism::new(c, permutation(rng, n), permutation(rng, n), permutation(rng, n)).unwrap()
}

fn square(rng: &mut StdRng, n: usize) -> LatinRectangle {
    let l = enumerate_reduced(n, n).unwrap().nth(rng.gen_range(0..[1, 1, 1, 4, 56, 9408][n - 1])).unwrap();
    l.apply_paratopism(&paratopism(rng, n)).unwrap()
}

fn rectangle(rng: &mut StdRng, n: usize, k: usize) -> LatinRectangle {
    LatinRectangle::new(&square(rng, n).rows()[..k]).unwrap()
}

fn arb_rectangle() -> impl Strategy<Value = LatinRectangle> {
    (1usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=n);
        rectangle(&mut rng, n, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_law(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = square(&mut rng, n);
        let (p1, p2) = (paratopism(&mut rng, n), paratopism(&mut rng, n));
        let lhs = l.apply_paratopism(&p1).unwrap().apply_paratopism(&p2).unwrap();
        prop_assert_eq!(lhs, l.apply_paratopism(&p2.compose(&p1)).unwrap());
    }

    #[test]
    fn reduce_is_idempotent(l in arb_rectangle()) {
        let r = l.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r);
    }

    #[test]
    fn reduction_relabels_the_graph(l in arb_rectangle()) {
        let g = l.to_bipartite();
        prop_assert_eq!(g.degree(), Some(l.rows_count()));
        prop_assert_eq!(canonical_form(&l.reduce().to_bipartite()).key, canonical_form(&g).key);
    }

    #[test]
    fn canonical_form_invariant(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = BipartiteGraph::from_rows(n, (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect()).unwrap();
        let f = canonical_form(&g);
        let mut h = g.relabel(&perm0(&mut rng, n), &perm0(&mut rng, n));
        if rng.gen_bool(0.5) {
            h = h.transpose();
        }
        prop_assert_eq!(canonical_form(&h), f.clone());
        prop_assert_eq!(canonical_form(&f.graph()), f);
    }

    #[test]
    fn edge_rule_independence(n in 2usize..=6, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=n);
        let g = rectangle(&mut rng, n, k).to_bipartite();
        let base = factorization_count(&g, &FactorizationMemo::new()).unwrap();
        let seeded = factorization_count_with(&g, &FactorizationMemo::new(), EdgeRule::Seeded(seed)).unwrap();
        prop_assert_eq!(base, seeded);
    }

    #[test]
    fn group_order_is_a_paratopy_invariant(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = square(&mut rng, n);
        let m = l.apply_paratopism(&paratopism(&mut rng, n)).unwrap();
        prop_assert_eq!(autoparatopism_group_order(&l).unwrap(), autoparatopism_group_order(&m).unwrap());
        prop_assert_eq!(
            has_nontrivial_autoparatopism(&l).unwrap(),
            has_nontrivial_autoparatopism(&m.reduce()).unwrap()
        );
    }

    #[test]
    fn text_formats_round_trip(l in arb_rectangle(), seed in any::<u64>()) {
        prop_assert_eq!(parse_rectangle(&write_rectangle(&l)).unwrap(), l.clone());
        let g = l.to_bipartite();
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g.clone());
        let mut rng = StdRng::seed_from_u64(seed);
        let irregular = BipartiteGraph::from_rows(g.n(), (0..g.n()).map(|_| rng.gen_range(0..1u32 << g.n())).collect()).unwrap();
        prop_assert_eq!(parse_graph(&write_graph(&irregular)).unwrap(), irregular);
        let key = canonical_form(&g).key;
        prop_assert_eq!(CanonicalKey::from_hex(&key.to_hex()).unwrap(), key);
    }
}

// Oracle for the permanent: the sum over all 24 permutations, on every 4x4 matrix over {-1, 0, 1}.
#[test]
fn permanent_exhaustive_order_four() {
    let perms: Vec<Vec<usize>> = Permutation::all(4).iter().map(|p| (1..=4).map(|i| p.apply(i) - 1).collect()).collect();
    let mismatches: usize = (0..3u32.pow(12))
        .into_par_iter()
        .map(|high| {
            let mut m = vec![vec![0i64; 4]; 4];
            let mut bad = 0;
            for low in 0..81u32 {
                let mut c = high * 81 + low;
                for cell in 0..16 {
                    m[cell / 4][cell % 4] = (c % 3) as i64 - 1;
                    c /= 3;
                }
                let def: i128 = perms.iter().map(|p| (0..4).map(|i| m[i][p[i]] as i128).product::<i128>()).sum();
                bad += (permanent_int(&m).unwrap() != def) as usize;
            }
            bad
        })
        .sum();
    assert_eq!(mismatches, 0);
}
