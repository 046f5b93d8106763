//! Validation of the partition pipeline: collapse against a brute-force
//! dominance-maximum oracle, the closed-form examples, the nonemptiness
//! criterion, and the block-count prediction against the linkage-graph
//! oracle at small rank.

use blocks_core::blocks::block_decomposition_oracle;
use blocks_core::partitions::{
    admissible, collapse, compatible_pairs, count_from_partitions, dominance_leq,
    nonempty_criterion, pi_i, richardson, OrbitLabel, Partition,
};
use blocks_core::rootsys::{Family, ParabolicData, RootSystem};
use blocks_core::weights::{canonical_dominant, enumerate_coset};

/// All partitions of n, descending parts.
fn all_partitions(n: u64) -> Vec<Partition> {
    fn rec(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur));
            return;
        }
        let hi = rest.min(max);
        for p in (1..=hi).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Brute-force X-collapse: the unique ⊴-maximal admissible partition ⊴ π.
fn collapse_oracle(pi: &Partition, family: Family) -> Partition {
    let candidates: Vec<Partition> = all_partitions(pi.n())
        .into_iter()
        .filter(|eta| admissible(eta, family) && dominance_leq(eta, pi).unwrap())
        .collect();
    assert!(!candidates.is_empty(), "no admissible partition below {pi}");
    let mut best: Option<Partition> = None;
    for eta in &candidates {
        if candidates
            .iter()
            .all(|other| dominance_leq(other, eta).unwrap())
        {
            assert!(best.is_none() || best.as_ref() == Some(eta), "maximum not unique");
            best = Some(eta.clone());
        }
    }
    best.unwrap_or_else(|| panic!("no dominance maximum below {pi} (not a lattice?)"))
}

#[test]
fn dual_and_dominance_basics() {
    let p = Partition::new(&[4, 2, 1]);
    assert_eq!(p.dual(), Partition::new(&[3, 2, 1, 1]));
    assert_eq!(p.dual().dual(), p);
    assert!(dominance_leq(&Partition::new(&[3, 2, 2]), &Partition::new(&[4, 2, 1])).unwrap());
    assert!(!dominance_leq(&Partition::new(&[4, 2, 1]), &Partition::new(&[3, 2, 2])).unwrap());
    assert!(dominance_leq(&p, &p).unwrap());
    assert!(dominance_leq(&Partition::new(&[3]), &Partition::new(&[2, 2])).is_err());
}

#[test]
fn collapse_matches_bruteforce_maximum() {
    // Every partition of every N ≤ 16. B and D admit any total (all-ones is
    // always admissible); C admits only even totals, matching the 2n it
    // receives from root systems.
    let mut checked = 0u64;
    for n in 1..=16u64 {
        for pi in all_partitions(n) {
            for family in [Family::B, Family::C, Family::D] {
                if family == Family::C && n % 2 == 1 {
                    continue;
                }
                let fast = collapse(&pi, family);
                let slow = collapse_oracle(&pi, family);
                assert_eq!(fast, slow, "{family:?}-collapse of {pi}: {fast} vs {slow}");
                assert!(admissible(&fast, family));
                assert!(dominance_leq(&fast, &pi).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "collapse sweep too small: {checked}");
}

#[test]
fn collapse_is_identity_on_admissible() {
    for n in 1..=12u64 {
        for pi in all_partitions(n) {
            for family in [Family::A, Family::B, Family::C, Family::D] {
                if admissible(&pi, family) {
                    assert_eq!(collapse(&pi, family), pi);
                }
            }
        }
    }
}

#[test]
fn orbit_partitions_closed_form_family() {
    // B_{k(k+1)} with Δ∖I = {α_{i(i+1)}} and Δ∖J = {α_{i²}} for 1 ≤ i ≤ k:
    // π_I = {2k, 2k, …, 2, 2, 1}, π_J = {2k+1, 2k−1, 2k−1, …, 1, 1} (its own
    // dual), 𝒞 = {(2, 2k−1), (4, 2k−3), …, (2k, 1)}, and the system has
    // 2^k blocks.
    for k in 1usize..=3 {
        let n = k * (k + 1);
        let rs = RootSystem::new(Family::B, n).unwrap();
        let ns = rs.num_simple();
        let i_excl: Vec<usize> = (1..=k).map(|i| i * (i + 1)).collect();
        let j_excl: Vec<usize> = (1..=k).map(|i| i * i).collect();
        let inc_i: Vec<usize> = (1..=ns).filter(|x| !i_excl.contains(x)).collect();
        let inc_j: Vec<usize> = (1..=ns).filter(|x| !j_excl.contains(x)).collect();
        let pd_i = ParabolicData::new(rs, &inc_i);
        let pd_j = ParabolicData::new(rs, &inc_j);

        let mut expect_pi: Vec<u64> = Vec::new();
        for v in 1..=k as u64 {
            expect_pi.push(2 * v);
            expect_pi.push(2 * v);
        }
        expect_pi.push(1);
        assert_eq!(pi_i(&pd_i).partition, Partition::new(&expect_pi));

        let mut expect_pj: Vec<u64> = vec![2 * k as u64 + 1];
        for v in 1..=k as u64 {
            expect_pj.push(2 * v - 1);
            expect_pj.push(2 * v - 1);
        }
        let pj = Partition::new(&expect_pj);
        assert_eq!(pi_i(&pd_j).partition, pj);
        assert_eq!(pj.dual(), pj);

        let cc = compatible_pairs(&pd_i, &pd_j);
        let expect_cc: Vec<(usize, usize)> =
            (1..=k).map(|i| (2 * i, 2 * (k - i) + 1)).collect();
        assert_eq!(cc.pairs, expect_cc, "k={k}");
        assert_eq!(cc.classes.len(), k);
        assert_eq!(cc.trivial_classes, 0);
        assert_eq!(count_from_partitions(&pd_i, &pd_j).unwrap(), 1 << k);
    }
}

#[test]
fn very_even_nonemptiness_exception() {
    // D_4 with I = {α_1, α_3} and J = {α_1, α_2, α_3}: both π_I and π_J are
    // very even and mutually dual; the system is nonempty, but the φ-twist
    // J' = {α_1, α_2, α_4} gives an empty system despite passing the
    // dominance test — the very-even label rules it out.
    let rs = RootSystem::new(Family::D, 4).unwrap();
    let pd_i = ParabolicData::new(rs, &[1, 3]);
    let pd_j = ParabolicData::new(rs, &[1, 2, 3]);
    let pd_jp = ParabolicData::new(rs, &[1, 2, 4]);

    let pi = pi_i(&pd_i).partition;
    let pj = pi_i(&pd_j).partition;
    assert_eq!(pi, Partition::new(&[2, 2, 2, 2]));
    assert_eq!(pj, Partition::new(&[4, 4]));
    assert!(pi.is_very_even() && pj.is_very_even());
    assert_eq!(pi, pj.dual());
    assert_eq!(pi_i(&pd_jp).partition, pj);
    assert!(pd_jp.nonstandard);

    assert!(nonempty_criterion(&pd_i, &pd_j).unwrap());
    assert!(!nonempty_criterion(&pd_i, &pd_jp).unwrap());

    // The weight-level systems agree: λ̄ = (1,1,1,1) has singular set J and
    // a nonempty coset; φλ̄ has singular set J' and an empty coset.
    let bar = blocks_core::weights::Weight::from_ints(&[1, 1, 1, 1]);
    assert!(!enumerate_coset(&pd_i, &bar).is_empty());
    assert!(enumerate_coset(&pd_i, &bar.phi()).is_empty());
}

#[test]
fn richardson_labels() {
    // D_4, I = {α_1, α_3}: π_I = (2,2,2,2) very even, dual (4,4) admissible.
    // I standard and 4 | 4, so R_I carries label I; the φ-twist {α_1, α_4}
    // is nonstandard and flips the label.
    let rs = RootSystem::new(Family::D, 4).unwrap();
    let r = richardson(&ParabolicData::new(rs, &[1, 3]));
    assert_eq!(r.partition, Partition::new(&[4, 4]));
    assert_eq!(r.label, OrbitLabel::VeryEvenI);
    let r2 = richardson(&ParabolicData::new(rs, &[1, 4]));
    assert_eq!(r2.partition, Partition::new(&[4, 4]));
    assert_eq!(r2.label, OrbitLabel::VeryEvenII);
    // A non-very-even case: B_2 with I = ∅ has π_I = (1,1,1,1,1), dual (5),
    // whose B-collapse stays (5).
    let rsb = RootSystem::new(Family::B, 2).unwrap();
    let rb = richardson(&ParabolicData::new(rsb, &[]));
    assert_eq!(rb.partition, Partition::new(&[5]));
    assert_eq!(rb.label, OrbitLabel::Plain);
}

/// Exhaustive: partition-pipeline count equals the oracle count, and the
/// nonemptiness criterion equals coset nonemptiness, over all I and all
/// realizable J.
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
            let pd_j = ParabolicData::new(rs, &j);
            let coset = enumerate_coset(&pd, &lambda_bar);
            let nonempty = nonempty_criterion(&pd, &pd_j).unwrap();
            assert_eq!(
                nonempty,
                !coset.is_empty(),
                "{rs:?} I={inc:?} J={j:?}: criterion {nonempty}, coset size {}",
                coset.len()
            );
            let predicted = count_from_partitions(&pd, &pd_j).unwrap();
            let oracle = block_decomposition_oracle(&pd, &lambda_bar).oracle_count as u64;
            assert_eq!(
                predicted, oracle,
                "{rs:?} I={inc:?} J={j:?}: partitions predict {predicted}, oracle {oracle}"
            );
            cells += 1;
        }
    }
    cells
}

#[test]
fn count_matches_oracle_type_a() {
    let mut cells = 0;
    for n in 2..=5 {
        cells += sweep(RootSystem::new(Family::A, n).unwrap());
    }
    assert!(cells > 200, "sweep too small: {cells}");
}

#[test]
fn count_matches_oracle_type_b() {
    let mut cells = 0;
    for n in 1..=4 {
        cells += sweep(RootSystem::new(Family::B, n).unwrap());
    }
    assert!(cells > 200, "sweep too small: {cells}");
}

#[test]
fn count_matches_oracle_type_c() {
    let mut cells = 0;
    for n in 1..=4 {
        cells += sweep(RootSystem::new(Family::C, n).unwrap());
    }
    assert!(cells > 200, "sweep too small: {cells}");
}

#[test]
fn count_matches_oracle_type_d() {
    let mut cells = 0;
    for n in 2..=4 {
        cells += sweep(RootSystem::new(Family::D, n).unwrap());
    }
    assert!(cells > 100, "sweep too small: {cells}");
}
