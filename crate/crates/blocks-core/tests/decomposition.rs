//! Validation of the product-decomposition pipeline: the worked small
//! examples with exact factor data, the cardinality and block-correspondence
//! invariants, and an exhaustive factorize-vs-oracle sweep at small rank.

use blocks_core::blocks::{block_decomposition_oracle, decomposition_from_graph, linkage_graph};
use blocks_core::decomposition::{factorize, normalize_for_split, split, ChildSystem, FactorTree};
use blocks_core::rootsys::{Family, ParabolicData, RootSystem};
use blocks_core::separability::all_separable_pairs;
use blocks_core::weights::{canonical_dominant, enumerate_coset, singular_set, Weight};

fn complement_subset(ns: usize, excluded: &[usize]) -> Vec<usize> {
    (1..=ns).filter(|i| !excluded.contains(i)).collect()
}

/// Block index of a weight within a child system's coset of `bar`.
fn child_block(child: &ChildSystem, bar: &Weight, w: &Weight) -> usize {
    match child.rs() {
        None => {
            assert_eq!(w, bar, "rootless factor weight mismatch");
            0
        }
        Some(rs) => {
            let pd = ParabolicData::new(rs, &child.included);
            let graph = linkage_graph(&pd, bar);
            let dec = decomposition_from_graph(&graph);
            let idx = graph
                .vertices
                .iter()
                .position(|v| v == w)
                .unwrap_or_else(|| panic!("factor weight {w} not in coset of {bar}"));
            dec.blocks.iter().position(|b| b.contains(&idx)).unwrap()
        }
    }
}

/// Full consistency check of one system: factorized block count against the
/// oracle; on the top split, coset cardinality and the block correspondence
/// (two parent weights share a block iff they share a side and both factor
/// weights share a block).
fn check_system(pd: &ParabolicData, lambda_bar: &Weight) -> FactorTree {
    let coset = enumerate_coset(pd, lambda_bar);
    assert!(!coset.is_empty());
    let tree = factorize(pd, lambda_bar).unwrap();
    let oracle = block_decomposition_oracle(pd, lambda_bar);
    assert_eq!(
        tree.block_count_product(),
        oracle.oracle_count as u64,
        "{:?} I={:?} λ̄={lambda_bar}: leaves predict {}, oracle {}",
        pd.rs,
        pd.included,
        tree.block_count_product(),
        oracle.oracle_count
    );
    assert!(tree.leaves().len() >= 1);

    let Some(sp) = &tree.split else { return tree };
    let fs = &sp.factor;

    // Coordinate sets are disjoint except for the shared coordinate of an
    // odd D split.
    let shared: Vec<usize> = fs.h1.iter().filter(|c| fs.h2.contains(c)).copied().collect();
    if fs.d_odd {
        assert_eq!(shared, vec![pd.rs.rank]);
    } else {
        assert!(shared.is_empty(), "overlapping factors: {shared:?}");
    }

    // Cardinality: |coset| = |C1|·|C2| (+ the minus side for a nontrivial
    // even D split).
    assert_eq!(
        fs.coset_cardinality(),
        coset.len(),
        "{:?} I={:?} λ̄={lambda_bar}: cardinality",
        pd.rs,
        pd.included
    );

    // Normalization: w_λ λ = ν, and ν is a fixed point.
    let sd = singular_set(&pd.rs, lambda_bar).unwrap();
    for lam in &coset {
        let (nu, w) = normalize_for_split(pd, &sd, &fs.s, &fs.sbar, lam).unwrap();
        assert_eq!(Weight::from_doubled(w.apply2(&lam.coords2)), nu);
        let (nu2, w2) = normalize_for_split(pd, &sd, &fs.s, &fs.sbar, &nu).unwrap();
        assert_eq!(nu2, nu, "normalization not idempotent");
        assert!(w2.signs.iter().all(|&s| s == 1));
        assert_eq!(w2.perm, (0..pd.rs.rank).collect::<Vec<_>>());
    }

    // Block correspondence through the top split.
    let graph = linkage_graph(pd, lambda_bar);
    let dec = decomposition_from_graph(&graph);
    let keys: Vec<(bool, usize, usize)> = graph
        .vertices
        .iter()
        .map(|v| {
            let (w1, w2, minus) = fs.split_weight(v).unwrap();
            let bars: Vec<&Weight> = fs
                .children
                .iter()
                .map(|c| {
                    if minus {
                        c.lambda_bar_minus.as_ref().unwrap()
                    } else {
                        &c.lambda_bar
                    }
                })
                .collect();
            (
                minus,
                child_block(&fs.children[0], bars[0], &w1),
                child_block(&fs.children[1], bars[1], &w2),
            )
        })
        .collect();
    for x in 0..keys.len() {
        for y in (x + 1)..keys.len() {
            let same = dec.blocks.iter().any(|b| b.contains(&x) && b.contains(&y));
            assert_eq!(
                same,
                keys[x] == keys[y],
                "{:?} I={:?} λ̄={lambda_bar}: correspondence fails at {} / {}",
                pd.rs,
                pd.included,
                graph.vertices[x],
                graph.vertices[y]
            );
        }
    }

    // The composed weight map reaches every leaf.
    let n_leaves = tree.leaves().len();
    for lam in &coset {
        let lw = tree.leaf_weights(lam).unwrap();
        assert_eq!(lw.len(), n_leaves);
    }
    tree
}

#[test]
fn example_gl7() {
    // gl(7), I = {α1, α2, α4}, λ̄ = (3,2,2,2,1,1,1): two simple modules
    // μ = (3,2,1|2,1|2|1) and ν = (3,2,1|2,1|1|2), one block. Splitting along
    // (S, S̄) = ({1,2}, {2,3}) leaves factor weights μ¹ = ν¹ = (3) on
    // coordinate 3 and μ² = (2,1), ν² = (1,2) on coordinates 6,7.
    let rs = RootSystem::new(Family::A, 7).unwrap();
    let pd = ParabolicData::new(rs, &[1, 2, 4]);
    let bar = Weight::from_ints(&[3, 2, 2, 2, 1, 1, 1]);
    let sd = singular_set(&rs, &bar).unwrap();
    assert_eq!(sd.pd.excluded, vec![1, 4]);

    let mu = Weight::from_ints(&[3, 2, 1, 2, 1, 2, 1]);
    let nu = Weight::from_ints(&[3, 2, 1, 2, 1, 1, 2]);
    let coset = enumerate_coset(&pd, &bar);
    assert_eq!(coset, vec![nu.clone(), mu.clone()]);

    let fs = split(&pd, &sd, &[1, 2], &[2, 3]).unwrap();
    assert_eq!(fs.h1, vec![3]);
    assert_eq!(fs.h2, vec![6, 7]);
    assert_eq!(fs.children[0].lambda_bar, Weight::from_ints(&[3]));
    assert_eq!(fs.children[1].lambda_bar, Weight::from_ints(&[2, 1]));
    assert!(fs.children[0].included.is_empty() && fs.children[1].included.is_empty());
    assert!(fs.children[0].j_included.is_empty() && fs.children[1].j_included.is_empty());

    let (m1, m2, side_mu) = fs.split_weight(&mu).unwrap();
    assert_eq!(m1, Weight::from_ints(&[3]));
    assert_eq!(m2, Weight::from_ints(&[2, 1]));
    let (n1, n2, side_nu) = fs.split_weight(&nu).unwrap();
    assert_eq!(n1, Weight::from_ints(&[3]));
    assert_eq!(n2, Weight::from_ints(&[1, 2]));
    assert!(!side_mu && !side_nu);
    assert_eq!(fs.coset_cardinality(), 2);

    let tree = check_system(&pd, &bar);
    assert_eq!(tree.block_count_product(), 1);
}

#[test]
fn example_so13() {
    // so(13) = B_6, Δ∖I = {α4, α6}, λ̄ = (2,1,1,1,0,0): the split along
    // ({1}, {2,3}) yields two so(5) factors on coordinates {3,4} and {5,6},
    // each with I^i = {α1}, J^i = {α2}, and the parent has 4 blocks.
    let rs = RootSystem::new(Family::B, 6).unwrap();
    let pd = ParabolicData::new(rs, &complement_subset(6, &[4, 6]));
    let bar = Weight::from_ints(&[2, 1, 1, 1, 0, 0]);
    let sd = singular_set(&rs, &bar).unwrap();

    let fs = split(&pd, &sd, &[1], &[2, 3]).unwrap();
    assert_eq!(fs.p, 1);
    assert_eq!(fs.h1, vec![3, 4]);
    assert_eq!(fs.h2, vec![5, 6]);
    for (child, bar_i) in fs.children.iter().zip([
        Weight::from_ints(&[2, 0]),
        Weight::from_ints(&[1, 0]),
    ]) {
        assert_eq!(child.family, Family::B);
        assert_eq!(child.rank(), 2);
        assert_eq!(child.included, vec![1]);
        assert_eq!(child.lambda_bar, bar_i);
        assert_eq!(child.j_included, vec![2]);
        assert!(child.lambda_bar_minus.is_none());
    }

    let mu = Weight::from_ints(&[2, 1, 0, -1, 1, 0]);
    let (m1, m2, _) = fs.split_weight(&mu).unwrap();
    assert_eq!(m1, Weight::from_ints(&[2, 0]));
    assert_eq!(m2, Weight::from_ints(&[1, 0]));

    let tree = check_system(&pd, &bar);
    assert_eq!(tree.block_count_product(), 4);
    assert_eq!(tree.leaves().len(), 2);
    // Each so(5) factor is a pseudo-indecomposable two-block leaf.
    for leaf in tree.leaves() {
        assert_eq!(leaf.oracle_count(), 2);
    }
    // μ and ν = the weight with factor weights (0,−2) and (0,−1) are in
    // different blocks (they differ in both factors).
    let nu = Weight::from_ints(&[1, 0, -1, -2, 0, -1]);
    assert!(enumerate_coset(&pd, &bar).contains(&nu));
    let (v1, v2, _) = fs.split_weight(&nu).unwrap();
    assert_eq!(v1, Weight::from_ints(&[0, -2]));
    assert_eq!(v2, Weight::from_ints(&[0, -1]));
    assert!(!blocks_core::blocks::same_block(&pd, &bar, &mu, &nu).unwrap());
}

#[test]
fn example_so18_odd() {
    // so(18) = D_9, Δ∖I = {α4, α6}, λ̄ = (2,2,1,1,1,1,0,0,0): the odd split
    // along ({1,3}, {2,3}) shares coordinate 9 and yields two so(8) factors
    // on {3,4,8,9} and {5,6,7,9}, each with I^i = J^i = {α1, α3, α4};
    // 4 blocks.
    let rs = RootSystem::new(Family::D, 9).unwrap();
    let pd = ParabolicData::new(rs, &complement_subset(9, &[4, 6]));
    let bar = Weight::from_ints(&[2, 2, 1, 1, 1, 1, 0, 0, 0]);
    let sd = singular_set(&rs, &bar).unwrap();
    assert_eq!(sd.pd.excluded, vec![2, 6]);

    let fs = split(&pd, &sd, &[1, 3], &[2, 3]).unwrap();
    assert!(fs.d_odd);
    assert_eq!(fs.p, 1);
    assert_eq!(fs.h, 7);
    assert_eq!(fs.h1, vec![3, 4, 8, 9]);
    assert_eq!(fs.h2, vec![5, 6, 7, 9]);
    for (child, bar_i) in fs.children.iter().zip([
        Weight::from_ints(&[2, 2, 0, 0]),
        Weight::from_ints(&[1, 1, 0, 0]),
    ]) {
        assert_eq!(child.family, Family::D);
        assert_eq!(child.rank(), 4);
        assert_eq!(child.included, vec![1, 3, 4]);
        assert_eq!(child.lambda_bar, bar_i);
        assert_eq!(child.j_included, vec![1, 3, 4]);
    }

    let mu = Weight::from_ints(&[2, 1, 0, -1, 1, 0, 2, 1, 0]);
    let (m1, m2, _) = fs.split_weight(&mu).unwrap();
    assert_eq!(m1, Weight::from_ints(&[2, 0, 2, 0]));
    assert_eq!(m2, Weight::from_ints(&[1, 0, 1, 0]));

    let tree = check_system(&pd, &bar);
    assert_eq!(tree.block_count_product(), 4);
    assert_eq!(tree.leaves().len(), 2);
    assert_eq!(tree.union_splits(), 0);
}

#[test]
fn example_so18_even() {
    // so(18) = D_9, Δ∖I = {α5, α8, α9}, λ̄ = (3,2,2,2,1,1,1,1,−1): the even
    // nontrivial split along ({1}, {2,3}) gives an so(2) factor (3) on
    // coordinate 5 and a D_4 factor; the latter splits again, for three
    // rootless so(2) leaves and 4 = 2² blocks from two union splits.
    let rs = RootSystem::new(Family::D, 9).unwrap();
    let pd = ParabolicData::new(rs, &complement_subset(9, &[5, 8, 9]));
    let bar = Weight::from_ints(&[3, 2, 2, 2, 1, 1, 1, 1, -1]);
    let sd = singular_set(&rs, &bar).unwrap();
    assert!(sd.pd.nonstandard);

    let classes = all_separable_pairs(&pd, &sd).unwrap();
    assert_eq!(classes.nontrivial_classes, 2);

    let fs = split(&pd, &sd, &[1], &[2, 3]).unwrap();
    assert!(fs.d_even_nontrivial);
    assert_eq!(fs.p, 2);
    assert_eq!(fs.g, 1);
    assert_eq!(fs.h1, vec![5]);
    assert_eq!(fs.h2, vec![6, 7, 8, 9]);

    let c1 = &fs.children[0];
    assert!(c1.rs().is_none());
    assert_eq!(c1.lambda_bar, Weight::from_ints(&[3]));
    assert_eq!(c1.lambda_bar_minus, Some(Weight::from_ints(&[-3])));

    let c2 = &fs.children[1];
    assert_eq!(c2.included, vec![1, 2]);
    assert_eq!(c2.lambda_bar, Weight::from_ints(&[2, 1, 1, -1]));
    assert_eq!(c2.lambda_bar_minus, Some(Weight::from_ints(&[2, 1, 1, 1])));
    assert_eq!(c2.j_included, vec![2, 4]);

    let tree = check_system(&pd, &bar);
    assert_eq!(tree.block_count_product(), 4);
    assert_eq!(tree.leaves().len(), 3);
    assert_eq!(tree.union_splits(), 2);
    for leaf in tree.leaves() {
        assert!(leaf.rs().is_none(), "leaf should be rootless so(2)");
        assert_eq!(leaf.rank, 1);
    }

    let mu = Weight::from_ints(&[3, 2, 1, -1, -2, 2, 1, -1, 1]);
    let nu = Weight::from_ints(&[2, 1, -1, -2, -3, 2, 1, -1, -1]);
    assert_eq!(
        tree.leaf_weights(&mu).unwrap(),
        vec![
            Weight::from_ints(&[3]),
            Weight::from_ints(&[2]),
            Weight::from_ints(&[1]),
        ]
    );
    assert_eq!(
        tree.leaf_weights(&nu).unwrap(),
        vec![
            Weight::from_ints(&[-3]),
            Weight::from_ints(&[2]),
            Weight::from_ints(&[-1]),
        ]
    );
    let (_, _, mu_minus) = fs.split_weight(&mu).unwrap();
    let (_, _, nu_minus) = fs.split_weight(&nu).unwrap();
    assert!(!mu_minus && nu_minus);
}

#[test]
fn semisimple_b12_tower() {
    // B_12 with Δ∖I = {α2, α6, α12} and λ̄ = (3,2,2,2,1,1,1,1,1,0,0,0): eight
    // singleton blocks; the factorization's leaf counts multiply to 8.
    let rs = RootSystem::new(Family::B, 12).unwrap();
    let pd = ParabolicData::new(rs, &complement_subset(12, &[2, 6, 12]));
    let bar = Weight::from_ints(&[3, 2, 2, 2, 1, 1, 1, 1, 1, 0, 0, 0]);
    let coset = enumerate_coset(&pd, &bar);
    assert_eq!(coset.len(), 8);
    let tree = factorize(&pd, &bar).unwrap();
    assert_eq!(tree.block_count_product(), 8);
    assert_eq!(
        block_decomposition_oracle(&pd, &bar).oracle_count,
        8,
        "B_12 tower should be semisimple"
    );
}

/// Exhaustive: factorization invariants over all I and realizable J.
fn sweep(rs: RootSystem) -> u64 {
    let ns = rs.num_simple();
    let mut cells = 0u64;
    for imask in 0..(1u32 << ns) {
        let inc: Vec<usize> = (1..=ns).filter(|i| imask & (1 << (i - 1)) != 0).collect();
        let pd = ParabolicData::new(rs, &inc);
        for jmask in 0..(1u32 << ns) {
            let j: Vec<usize> = (1..=ns).filter(|i| jmask & (1 << (i - 1)) != 0).collect();
            let Ok(lambda_bar) = canonical_dominant(&rs, &j) else {
                continue;
            };
            if enumerate_coset(&pd, &lambda_bar).is_empty() {
                continue;
            }
            check_system(&pd, &lambda_bar);
            cells += 1;
        }
    }
    cells
}

#[test]
fn factorize_matches_oracle_type_a() {
    let mut cells = 0;
    for n in 2..=5 {
        cells += sweep(RootSystem::new(Family::A, n).unwrap());
    }
    assert!(cells > 150, "sweep too small: {cells}");
}

#[test]
fn factorize_matches_oracle_type_b() {
    let mut cells = 0;
    for n in 1..=4 {
        cells += sweep(RootSystem::new(Family::B, n).unwrap());
    }
    assert!(cells > 150, "sweep too small: {cells}");
}

#[test]
fn factorize_matches_oracle_type_c() {
    let mut cells = 0;
    for n in 1..=4 {
        cells += sweep(RootSystem::new(Family::C, n).unwrap());
    }
    assert!(cells > 150, "sweep too small: {cells}");
}

#[test]
fn factorize_matches_oracle_type_d() {
    let mut cells = 0;
    for n in 2..=4 {
        cells += sweep(RootSystem::new(Family::D, n).unwrap());
    }
    assert!(cells > 80, "sweep too small: {cells}");
}
