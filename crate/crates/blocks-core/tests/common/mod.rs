//! Shared randomized property checks, used by both the standalone property
//! suite and the acceptance suite.
//!
//! Every function runs at least `cases` randomized cases from a fixed seed
//! and panics on the first violation.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use blocks_core::rootsys::{Family, ParabolicData, Root, RootSystem, SignedPermutation};
use blocks_core::separability::{all_separable_pairs, pair_partial_order, PairClasses};
use blocks_core::weights::{
    canonical_dominant, count_table, enumerate_coset, singular_set, SingularData, Weight,
};

const FAMILIES: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

fn random_root_system(rng: &mut StdRng) -> RootSystem {
    let family = FAMILIES[rng.gen_range(0..4)];
    let rank = rng.gen_range(2..=6);
    RootSystem::new(family, rank).expect("rank ≥ 2 is valid for every family")
}

fn random_weight(rng: &mut StdRng, n: usize) -> Weight {
    Weight::from_ints(&(0..n).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>())
}

fn random_signed_permutation(rng: &mut StdRng, n: usize) -> SignedPermutation {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let signs = (0..n).map(|_| if rng.gen() { 1i8 } else { -1 }).collect();
    SignedPermutation { perm, signs }
}

/// A random system (pd, sd) whose singular set is realizable; the coset may
/// be empty.
fn random_system(rng: &mut StdRng) -> (ParabolicData, SingularData) {
    loop {
        let rs = random_root_system(rng);
        let ns = rs.num_simple();
        let imask: u32 = rng.gen_range(0..(1u32 << ns));
        let jmask: u32 = rng.gen_range(0..(1u32 << ns));
        let inc: Vec<usize> = (1..=ns).filter(|i| imask & (1 << (i - 1)) != 0).collect();
        let j: Vec<usize> = (1..=ns).filter(|i| jmask & (1 << (i - 1)) != 0).collect();
        let Ok(lambda_bar) = canonical_dominant(&rs, &j) else {
            continue;
        };
        let sd = singular_set(&rs, &lambda_bar).expect("canonical dominant weight is admissible");
        return (ParabolicData::new(rs, &inc), sd);
    }
}

/// Like [`random_system`], but with a nonempty coset, which is returned.
fn random_nonempty_system(rng: &mut StdRng) -> (ParabolicData, SingularData, Vec<Weight>) {
    loop {
        let (pd, sd) = random_system(rng);
        let coset = enumerate_coset(&pd, &sd.lambda_bar);
        if !coset.is_empty() {
            return (pd, sd, coset);
        }
    }
}

/// Root reflections are involutions, and agree with their signed-permutation
/// matrices.
pub fn prop_reflection_involution(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for _ in 0..cases {
        let rs = random_root_system(&mut rng);
        let roots = rs.positive_roots();
        let beta = &roots[rng.gen_range(0..roots.len())];
        let x = random_weight(&mut rng, rs.rank);
        let once = beta.reflect2(&x.coords2);
        assert_eq!(
            beta.reflect2(&once),
            x.coords2,
            "s_{beta} is not an involution on {x}"
        );
        let s = SignedPermutation::from_reflection(rs.rank, beta);
        assert_eq!(s.apply2(&x.coords2), once, "matrix of s_{beta} disagrees");
        assert_eq!(
            SignedPermutation::compose(&s, &s),
            SignedPermutation::identity(rs.rank),
            "matrix of s_{beta} is not an involution"
        );
    }
}

/// Signed permutations form a group acting on weights, with multiplicative
/// determinant.
pub fn prop_signed_permutation_group_laws(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..cases {
        let n = rng.gen_range(1..=8);
        let u = random_signed_permutation(&mut rng, n);
        let v = random_signed_permutation(&mut rng, n);
        let w = random_signed_permutation(&mut rng, n);
        let x = random_weight(&mut rng, n);
        let id = SignedPermutation::identity(n);
        assert_eq!(SignedPermutation::compose(&u, &id), u);
        assert_eq!(SignedPermutation::compose(&id, &u), u);
        assert_eq!(SignedPermutation::compose(&u, &u.inverse()), id);
        assert_eq!(SignedPermutation::compose(&u.inverse(), &u), id);
        assert_eq!(
            SignedPermutation::compose(&SignedPermutation::compose(&u, &v), &w),
            SignedPermutation::compose(&u, &SignedPermutation::compose(&v, &w)),
            "composition is not associative"
        );
        assert_eq!(
            SignedPermutation::compose(&u, &v).apply2(&x.coords2),
            u.apply2(&v.apply2(&x.coords2)),
            "apply is not an action"
        );
        assert_eq!(
            SignedPermutation::compose(&u, &v).det(),
            u.det() * v.det(),
            "determinant is not multiplicative"
        );
    }
}

/// Count-table rows sum to the segment sizes and columns to the singular
/// multiplicities, for every weight of the coset.
pub fn prop_count_table_sums(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..cases {
        let (pd, sd, coset) = random_nonempty_system(&mut rng);
        let lam = &coset[rng.gen_range(0..coset.len())];
        let ct = count_table(&pd, &sd, lam);
        assert_eq!(
            ct.row_sums(),
            pd.standard_form().segment_sizes(),
            "row sums ≠ segment sizes for {lam} in {:?} I={:?}",
            pd.rs,
            pd.included
        );
        assert_eq!(
            ct.col_sums(),
            sd.n_bar(),
            "column sums ≠ n̄ for {lam} in {:?} I={:?} J={:?}",
            pd.rs,
            pd.included,
            sd.j_included
        );
    }
}

/// Count tables are invariant under the parabolic Weyl subgroup W_I.
pub fn prop_count_table_w_i_invariance(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for _ in 0..cases {
        let (pd, sd, coset) = random_nonempty_system(&mut rng);
        let lam = &coset[rng.gen_range(0..coset.len())];
        let levi: Vec<Root> = pd.levi_positive_roots();
        let mut moved = lam.coords2.clone();
        if !levi.is_empty() {
            for _ in 0..rng.gen_range(0..=4) {
                let beta = &levi[rng.gen_range(0..levi.len())];
                moved = beta.reflect2(&moved);
            }
        }
        let moved = Weight::from_doubled(moved);
        assert_eq!(
            count_table(&pd, &sd, &moved),
            count_table(&pd, &sd, lam),
            "count table not W_I-invariant: {lam} vs {moved} in {:?} I={:?}",
            pd.rs,
            pd.included
        );
    }
}

fn separable_pairs_of(pd: &ParabolicData, sd: &SingularData) -> PairClasses {
    all_separable_pairs(pd, sd).expect("separable-pair enumeration on a realizable system")
}

/// In family D the separable pairs of one system are homogeneous: all odd or
/// all even.
pub fn prop_d_homogeneity(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut done = 0usize;
    while done < cases {
        let (pd, sd, _) = random_nonempty_system(&mut rng);
        if pd.rs.family != Family::D {
            continue;
        }
        let classes = separable_pairs_of(&pd, &sd);
        let odd_flags: Vec<Option<bool>> = classes.pairs.iter().map(|p| p.odd).collect();
        assert!(
            odd_flags.windows(2).all(|w| w[0] == w[1]),
            "mixed odd/even pairs in {:?} I={:?} J={:?}: {odd_flags:?}",
            pd.rs,
            pd.included,
            sd.j_included
        );
        assert!(odd_flags.iter().all(|f| f.is_some()), "D pair without parity");
        done += 1;
    }
}

/// Two separable pairs with distinct S and distinct S̄ are always comparable.
pub fn prop_pair_comparability(cases: usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut done = 0usize;
    while done < cases {
        let (pd, sd, _) = random_nonempty_system(&mut rng);
        let classes = separable_pairs_of(&pd, &sd);
        for (i, p1) in classes.pairs.iter().enumerate() {
            for p2 in &classes.pairs[i + 1..] {
                // The comparison itself reports a violation as an error.
                pair_partial_order(p1, p2).unwrap_or_else(|e| {
                    panic!("{e} in {:?} I={:?} J={:?}", pd.rs, pd.included, sd.j_included)
                });
            }
        }
        done += 1;
    }
}
