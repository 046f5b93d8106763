//! Standalone randomized property suite: every check runs at least 10⁴
//! random cases from a fixed seed.

mod common;

const CASES: usize = 10_000;

#[test]
fn reflection_involution() {
    common::prop_reflection_involution(CASES);
}

#[test]
fn signed_permutation_group_laws() {
    common::prop_signed_permutation_group_laws(CASES);
}

#[test]
fn count_table_row_and_column_sums() {
    common::prop_count_table_sums(CASES);
}

#[test]
fn count_table_w_i_invariance() {
    common::prop_count_table_w_i_invariance(CASES);
}

#[test]
fn d_pair_homogeneity() {
    common::prop_d_homogeneity(CASES);
}

#[test]
fn pair_comparability() {
    common::prop_pair_comparability(CASES);
}
