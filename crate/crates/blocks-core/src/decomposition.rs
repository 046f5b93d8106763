//! Product decompositions of strongly separable systems.
//!
//! A strongly separable pair (S, S̄) splits a system into two orthogonal
//! subsystems Φ_1 ⊥ Φ_2 supported on complementary coordinate sets H_1, H_2
//! (for an odd D pair the last coordinate is shared), such that the simple
//! poset of the parent is the product of the posets of the two children —
//! except for a nontrivial even D pair, where it is a disjoint union of two
//! such products distinguished by a φ-twist. Iterating over a minimal strongly
//! separable pair factorizes any system into pseudo-indecomposable leaves
//! whose block counts multiply (with one factor 2 per nontrivial even D
//! split) to the block count of the parent. This gives a fourth,
//! structurally independent route to the block decomposition, cross-checked
//! against the linkage-graph oracle by the test suite.

use serde::{Deserialize, Serialize};

use crate::blocks::block_decomposition_oracle;
use crate::error::CoreError;
use crate::rootsys::{Family, ParabolicData, Root, RootSystem, SignedPermutation};
use crate::separability::{
    all_separable_pairs, is_separable_pair, is_weak_shape, pair_partial_order, PairClasses,
    PairOrder, SeparablePair,
};
use crate::weights::{
    dominant_rep, enumerate_coset, is_phi_i_regular, singular_set, SingularData, Weight,
};

// =============================================================================
// Systems
// =============================================================================

/// A self-contained block-decomposition problem: a classical family, a rank,
/// a parabolic subset I, and a dominant weight λ̄ (which determines J).
///
/// Rank-deficient factors (rank 0 of any family, rank < 2 of family D) have
/// no roots at all: their Weyl group is trivial, their coset is the single
/// weight λ̄, and they contribute exactly one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct System {
    pub family: Family,
    pub rank: usize,
    /// Parabolic subset I as 1-based simple-root indices.
    pub included: Vec<usize>,
    /// Dominant weight defining the singular set J.
    pub lambda_bar: Weight,
    /// Set when the stored data is the φ-twist of the naturally induced data
    /// (applied when the induced λ̄ has a degenerate singularity structure;
    /// the twist preserves the block decomposition).
    pub phi_normalized: bool,
}

impl System {
    /// Build a system, φ-normalizing a degenerate D configuration.
    pub fn new(family: Family, rank: usize, included: Vec<usize>, lambda_bar: Weight) -> System {
        let mut sys = System {
            family,
            rank,
            included,
            lambda_bar,
            phi_normalized: false,
        };
        if family == Family::D {
            if let Some(rs) = sys.rs() {
                if matches!(
                    singular_set(&rs, &sys.lambda_bar),
                    Err(CoreError::DegenerateSingularity)
                ) {
                    sys.included = ParabolicData::phi_subset(rs, &sys.included);
                    sys.lambda_bar = sys.lambda_bar.phi();
                    sys.phi_normalized = true;
                }
            }
        }
        sys
    }

    /// The root system, if the rank admits one.
    pub fn rs(&self) -> Option<RootSystem> {
        RootSystem::new(self.family, self.rank).ok()
    }

    /// Parabolic data, if the rank admits roots.
    pub fn pd(&self) -> Option<ParabolicData> {
        self.rs().map(|rs| ParabolicData::new(rs, &self.included))
    }

    /// The coset Wλ̄ ∩ Λ_I^+ (the single weight λ̄ for rootless systems).
    pub fn coset(&self) -> Vec<Weight> {
        match self.pd() {
            Some(pd) => enumerate_coset(&pd, &self.lambda_bar),
            None => vec![self.lambda_bar.clone()],
        }
    }

    /// The singular set J of λ̄ as simple-root indices.
    pub fn j_included(&self) -> Vec<usize> {
        match self.rs() {
            Some(rs) => (1..=rs.num_simple())
                .filter(|&i| rs.simple_root(i).coroot_pairing2(&self.lambda_bar.coords2) == 0)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Block count via the linkage-graph oracle (1 for rootless systems).
    pub fn oracle_count(&self) -> u64 {
        match self.pd() {
            Some(pd) => block_decomposition_oracle(&pd, &self.lambda_bar).oracle_count as u64,
            None => 1,
        }
    }
}

// =============================================================================
// Normalization ν = w_λ λ
// =============================================================================

/// Remove one copy of each value of `remove` from `vals`; the leftover is
/// returned sorted descending. `None` when a required value is missing.
fn remove_multiset(vals: &[i64], remove: &[i64]) -> Option<Vec<i64>> {
    let mut rest = vals.to_vec();
    for r in remove {
        let pos = rest.iter().position(|x| x == r)?;
        rest.remove(pos);
    }
    rest.sort_unstable_by(|a, b| b.cmp(a));
    Some(rest)
}

/// The standard-form normalization: rearrange each S-segment of λ so the
/// shared values sit in a fixed prefix (the ±a_t pairs for t ∈ S̄, descending)
/// and the leftover values follow, descending. T-segments are untouched.
fn normalize_std(
    pd: &ParabolicData,
    sd: &SingularData,
    s_set: &[usize],
    sbar: &[usize],
    lam: &Weight,
) -> Result<(Weight, SignedPermutation), CoreError> {
    debug_assert!(!pd.nonstandard);
    let n = pd.rs.rank;
    if lam.len() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            got: lam.len(),
        });
    }
    if !is_phi_i_regular(pd, lam) {
        return Err(CoreError::NotRegular {
            weight: lam.to_string(),
        });
    }
    if !is_separable_pair(pd, sd, lam, s_set, sbar) {
        return Err(CoreError::PairNotSeparable {
            s: s_set.to_vec(),
            sbar: sbar.to_vec(),
        });
    }
    let is_a = pd.rs.family == Family::A;
    let m = pd.m;
    let abar: Vec<i64> = sbar.iter().map(|&t| sd.a2[t - 1]).collect();
    let positives: Vec<i64> = abar.iter().copied().filter(|&a| a > 0).collect();

    let mut out = lam.coords2.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for &seg_idx in s_set {
        let seg = pd.segments[seg_idx - 1];
        let idx: Vec<usize> = seg.indices().collect();
        let vals: Vec<i64> = idx.iter().map(|&i| lam.coords2[i - 1]).collect();
        let prefix: Vec<i64> = if is_a {
            abar.clone()
        } else if seg_idx < m {
            // ±a_t pairs, descending: a_1 > … > a_p > −a_p > … > −a_1.
            let mut v = positives.clone();
            v.extend(positives.iter().rev().map(|a| -a));
            v
        } else {
            // Last segment (m ∈ S): the positive values only; Λ_I^+ makes the
            // segment entries nonnegative here.
            positives.clone()
        };
        let rest = remove_multiset(&vals, &prefix).ok_or_else(|| CoreError::PairNotSeparable {
            s: s_set.to_vec(),
            sbar: sbar.to_vec(),
        })?;
        let target: Vec<i64> = prefix.into_iter().chain(rest).collect();
        debug_assert_eq!(target.len(), idx.len());
        // Per-segment permutation: source position j (value vals[j]) moves to
        // the destination k with target[k] = vals[j]. Segment entries of a
        // Λ_I^+-regular weight are pairwise distinct, so this is well defined.
        for (j, &v) in vals.iter().enumerate() {
            let k = target
                .iter()
                .position(|&x| x == v)
                .expect("same multiset on both sides");
            perm[idx[j] - 1] = idx[k] - 1;
        }
        for (k, &i) in idx.iter().enumerate() {
            out[i - 1] = target[k];
        }
    }
    let w = SignedPermutation {
        perm,
        signs: vec![1; n],
    };
    let nu = Weight::from_doubled(out);
    debug_assert_eq!(Weight::from_doubled(w.apply2(&lam.coords2)), nu);
    Ok((nu, w))
}

/// The φ-twist of singular data: the twisted weight defines the twisted J,
/// with identical standard-form block values and sizes. Built directly, since
/// the twisted weight may have the degenerate shape `singular_set` rejects.
fn phi_twist_sd(sd: &SingularData) -> SingularData {
    let j0 = ParabolicData::phi_subset(sd.rs, &sd.j_included);
    SingularData {
        rs: sd.rs,
        pd: ParabolicData::new(sd.rs, &j0),
        j_included: j0,
        a2: sd.a2.clone(),
        lambda_bar: sd.lambda_bar.phi(),
    }
}

/// Normalize λ for the pair (S, S̄): returns ν = w_λ λ with w_λ a product of
/// permutations of the S-segments, such that the shared values of each
/// S-segment occupy a fixed prefix. Idempotent on its own output. For a
/// nonstandard parabolic the computation is conjugated through φ.
pub fn normalize_for_split(
    pd: &ParabolicData,
    sd: &SingularData,
    s_set: &[usize],
    sbar: &[usize],
    lam: &Weight,
) -> Result<(Weight, SignedPermutation), CoreError> {
    if pd.nonstandard {
        let pd0 = pd.standard_form();
        let sd0 = phi_twist_sd(sd);
        let (nu0, w0) = normalize_std(&pd0, &sd0, s_set, sbar, &lam.phi())?;
        let n = pd.rs.rank;
        let mut phi = SignedPermutation::identity(n);
        phi.signs[n - 1] = -1;
        let w = SignedPermutation::compose(&phi, &SignedPermutation::compose(&w0, &phi));
        let nu = nu0.phi();
        debug_assert_eq!(Weight::from_doubled(w.apply2(&lam.coords2)), nu);
        return Ok((nu, w));
    }
    normalize_std(pd, sd, s_set, sbar, lam)
}

// =============================================================================
// Splitting
// =============================================================================

/// One factor of a split: the child subsystem on a parent coordinate set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildSystem {
    pub family: Family,
    /// Parent coordinates H_i carrying the factor, ascending (for an odd D
    /// split both children list the shared last coordinate).
    pub coords: Vec<usize>,
    /// Child parabolic subset I^i in child simple-root indices.
    pub included: Vec<usize>,
    /// The child dominant weight λ̄^i (the plus representative λ̄^i_+ for a
    /// nontrivial even D split).
    pub lambda_bar: Weight,
    /// The minus representative λ̄^i_− = φ(λ̄^i_+) of a nontrivial even D
    /// split; equal to `lambda_bar` exactly when λ^i has a zero entry.
    pub lambda_bar_minus: Option<Weight>,
    /// The child singular set J^i of λ̄^i.
    pub j_included: Vec<usize>,
    /// The recursable system (φ-normalized if the induced data is
    /// degenerate).
    pub system: System,
}

impl ChildSystem {
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn rs(&self) -> Option<RootSystem> {
        RootSystem::new(self.family, self.rank()).ok()
    }

    fn coset_of(&self, bar: &Weight) -> Vec<Weight> {
        match self.rs() {
            Some(rs) => enumerate_coset(&ParabolicData::new(rs, &self.included), bar),
            None => vec![bar.clone()],
        }
    }

    /// The child coset of λ̄^i (the plus side for a nontrivial even D split).
    pub fn coset(&self) -> Vec<Weight> {
        self.coset_of(&self.lambda_bar)
    }

    /// The minus-side coset, when the split carries one.
    pub fn coset_minus(&self) -> Option<Vec<Weight>> {
        self.lambda_bar_minus.as_ref().map(|b| self.coset_of(b))
    }

    /// The dominant representative of a child-coordinate weight.
    fn dominant(&self, w: &Weight) -> Weight {
        match self.rs() {
            Some(rs) => dominant_rep(&rs, w).0,
            None => w.clone(),
        }
    }
}

/// A strongly separable split of one system into two factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSystem {
    pub family: Family,
    pub rank: usize,
    /// Standard-form parent parabolic data used by the construction.
    pub pd: ParabolicData,
    /// Standard-form parent singular data.
    pub sd: SingularData,
    /// Standard-form parent dominant weight.
    pub lambda_bar: Weight,
    /// Set when the input parabolic was nonstandard: incoming weights are
    /// φ-twisted before splitting.
    pub phi_twisted: bool,
    /// The pair (S, S̄).
    pub s: Vec<usize>,
    pub sbar: Vec<usize>,
    /// Number of nonzero shared values (|S̄| itself for family A).
    pub p: usize,
    /// |S ∖ {m}| — the parity bookkeeping count of an even D split.
    pub g: usize,
    /// Boundary index q_{m−1} + p of the rearranged last segment.
    pub h: usize,
    /// Parent coordinate sets of the two factors.
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    /// D with m ∈ S: the last coordinate is shared by both factors.
    pub d_odd: bool,
    /// D with m ∉ S and a nontrivial pair: the parent poset is the disjoint
    /// union of a plus and a (φ-twisted) minus product, not a single product.
    pub d_even_nontrivial: bool,
    /// Exactly two children.
    pub children: Vec<ChildSystem>,
}

/// Child simple roots expressed as parent roots on the coordinate set.
fn child_simple_roots(family: Family, coords: &[usize]) -> Vec<Root> {
    let r = coords.len();
    let mut roots = Vec::new();
    for k in 0..r.saturating_sub(1) {
        roots.push(Root::ei_minus_ej(coords[k], coords[k + 1]));
    }
    match family {
        Family::A => {}
        Family::B => roots.push(Root::ei(coords[r - 1])),
        Family::C => roots.push(Root::two_ei(coords[r - 1])),
        Family::D => roots.push(Root::ei_plus_ej(coords[r - 2], coords[r - 1])),
    }
    roots
}

/// Split a system along a strongly separable pair (S, S̄).
///
/// Validates separability and strength, rearranges a coset weight into the
/// normal form ν, carves out the coordinate sets H_1, H_2, and builds both
/// child systems with their induced parabolic subsets and dominant weights.
pub fn split(
    pd: &ParabolicData,
    sd: &SingularData,
    s_set: &[usize],
    sbar: &[usize],
) -> Result<FactorSystem, CoreError> {
    // Work in the standard form; a nonstandard parabolic is φ-conjugate to it
    // with an identical block structure.
    let phi_twisted = pd.nonstandard;
    let (pd0, sd0) = if phi_twisted {
        (pd.standard_form(), phi_twist_sd(sd))
    } else {
        (pd.clone(), sd.clone())
    };
    let lambda_bar0 = sd0.lambda_bar.clone();
    let coset = enumerate_coset(&pd0, &lambda_bar0);
    let lam = coset.first().ok_or(CoreError::EmptyCoset)?.clone();
    if !is_separable_pair(&pd0, &sd0, &lam, s_set, sbar) {
        return Err(CoreError::PairNotSeparable {
            s: s_set.to_vec(),
            sbar: sbar.to_vec(),
        });
    }
    let family = pd0.rs.family;
    let n = pd0.rs.rank;
    let m = pd0.m;
    let m_bar = sd0.m_bar();
    if family != Family::A && is_weak_shape(family, m, m_bar, s_set, sbar) {
        return Err(CoreError::PairNotStronglySeparable {
            s: s_set.to_vec(),
            sbar: sbar.to_vec(),
        });
    }

    let (nu, _w) = normalize_std(&pd0, &sd0, s_set, sbar, &lam)?;
    let q = |k: usize| -> usize {
        if k == 0 {
            0
        } else {
            pd0.segments[k - 1].hi
        }
    };
    let p = if family == Family::A {
        sbar.len()
    } else {
        sbar.iter().filter(|&&t| sd0.a2[t - 1] != 0).count()
    };
    let g = s_set.iter().filter(|&&x| x != m).count();
    let h = q(m - 1) + p;
    let m_in_s = s_set.contains(&m);
    let t_set: Vec<usize> = (1..=m).filter(|x| !s_set.contains(x)).collect();

    let mut h1: Vec<usize> = Vec::new();
    let mut h2: Vec<usize> = Vec::new();
    let mut d_odd = false;
    match family {
        Family::A => {
            for &s in s_set {
                h1.extend((q(s - 1) + p + 1)..=q(s));
            }
            for &t in &t_set {
                h2.extend((q(t - 1) + 1)..=q(t));
            }
        }
        Family::B | Family::C => {
            for &s in s_set {
                if s < m {
                    h1.extend((q(s - 1) + 2 * p + 1)..=q(s));
                }
            }
            h1.extend((h.min(n) + 1)..=n);
            for &t in &t_set {
                if t < m {
                    h2.extend((q(t - 1) + 1)..=q(t));
                }
            }
            h2.extend((q(m - 1) + 1)..=h.min(n));
        }
        Family::D => {
            if m_in_s {
                d_odd = true;
                for &s in s_set {
                    if s < m {
                        h1.extend((q(s - 1) + 2 * p + 1)..=q(s));
                    }
                }
                h1.extend((h + 1)..=n);
                for &t in &t_set {
                    if t < m {
                        h2.extend((q(t - 1) + 1)..=q(t));
                    }
                }
                h2.extend((q(m - 1) + 1)..=h);
                // The shared last coordinate, carrying the forced zero entry.
                h2.push(n);
            } else {
                for &s in s_set {
                    h1.extend((q(s - 1) + 2 * p + 1)..=q(s));
                }
                for &t in &t_set {
                    h2.extend((q(t - 1) + 1)..=q(t));
                }
            }
        }
    }
    if d_odd {
        debug_assert_eq!(nu.coords2[n - 1], 0, "shared coordinate must carry 0");
    }

    // Trivial/nontrivial classification of an even D pair.
    let d_even = family == Family::D && !m_in_s;
    let trivial = if d_even {
        let classes = all_separable_pairs(&pd0, &sd0)?;
        classes
            .pairs
            .iter()
            .find(|pp| pp.s == s_set && pp.sbar == sbar)
            .map(|pp| pp.trivial)
            .unwrap_or(false)
    } else {
        false
    };
    let d_even_nontrivial = d_even && !trivial;

    let mut children = Vec::with_capacity(2);
    for (which, coords) in [(0usize, &h1), (1usize, &h2)] {
        let r = coords.len();
        let child_rs = RootSystem::new(family, r).ok();
        let mut included: Vec<usize> = Vec::new();
        if let Some(_crs) = child_rs {
            let simples = child_simple_roots(family, coords);
            for (k0, root) in simples.iter().enumerate() {
                let k = k0 + 1;
                let mut inside = pd0.levi_contains(root);
                // Forced memberships across the rearranged last segment.
                if which == 1 && !inside {
                    match family {
                        Family::B | Family::C => {
                            if m_in_s
                                && k == simples.len()
                                && q(m - 1) < h
                                && h < n
                                && coords[r - 1] == h
                            {
                                inside = true;
                            }
                        }
                        Family::D => {
                            if d_odd
                                && k >= simples.len() - 1
                                && r >= 2
                                && q(m - 1) < h
                                && coords[r - 2] == h
                            {
                                inside = true;
                            }
                        }
                        Family::A => {}
                    }
                }
                if inside {
                    included.push(k);
                }
            }
        }
        let lam_i = nu.restrict(coords);
        let bar_raw = match child_rs {
            Some(crs) => dominant_rep(&crs, &lam_i).0,
            None => lam_i.clone(),
        };
        let (bar, bar_minus) = if d_even_nontrivial {
            let alt = bar_raw.phi();
            let plus = if which == 0 {
                // Child 1 takes the representative of smaller sign parity.
                if alt.parity() < bar_raw.parity() {
                    alt
                } else {
                    bar_raw
                }
            } else {
                // Child 2 takes the representative of parity P(λ̄) + p·g.
                let want = ((lambda_bar0.parity() as usize + p * g) % 2) as u8;
                if bar_raw.parity() == want {
                    bar_raw
                } else if alt.parity() == want {
                    alt
                } else {
                    return Err(CoreError::TheoremViolation(format!(
                        "no φ-orbit representative of parity {want} for child weight {lam_i}"
                    )));
                }
            };
            let minus = plus.phi();
            (plus, Some(minus))
        } else {
            (bar_raw, None)
        };
        let j_included: Vec<usize> = match child_rs {
            Some(crs) => (1..=crs.num_simple())
                .filter(|&i| crs.simple_root(i).coroot_pairing2(&bar.coords2) == 0)
                .collect(),
            None => Vec::new(),
        };
        let system = System::new(family, r, included.clone(), bar.clone());
        children.push(ChildSystem {
            family,
            coords: coords.clone(),
            included,
            lambda_bar: bar,
            lambda_bar_minus: bar_minus,
            j_included,
            system,
        });
    }

    // A trivial even D pair must leave at least one factor with a singleton
    // coset; anything else contradicts the classification.
    if d_even && trivial {
        let c1 = children[0].coset().len();
        let c2 = children[1].coset().len();
        if c1 > 1 && c2 > 1 {
            return Err(CoreError::TheoremViolation(format!(
                "trivial even D pair (S={s_set:?}, S̄={sbar:?}) with child cosets of sizes \
                 {c1} and {c2}"
            )));
        }
    }

    Ok(FactorSystem {
        family,
        rank: n,
        pd: pd0,
        sd: sd0,
        lambda_bar: lambda_bar0,
        phi_twisted,
        s: s_set.to_vec(),
        sbar: sbar.to_vec(),
        p,
        g,
        h,
        h1,
        h2,
        d_odd,
        d_even_nontrivial,
        children,
    })
}

impl FactorSystem {
    /// The predicted parent coset cardinality: the product of the child coset
    /// sizes, doubled (plus ⊔ minus) for a nontrivial even D split.
    pub fn coset_cardinality(&self) -> usize {
        let plus: usize = self.children.iter().map(|c| c.coset().len()).product();
        if self.d_even_nontrivial {
            let minus: usize = self
                .children
                .iter()
                .map(|c| c.coset_minus().map(|v| v.len()).unwrap_or(0))
                .product();
            plus + minus
        } else {
            plus
        }
    }

    /// Which side of the disjoint union a weight pair lives on (nontrivial
    /// even D splits only; `false` otherwise).
    fn is_minus_side(&self, w1: &Weight, w2: &Weight) -> Result<bool, CoreError> {
        if !self.d_even_nontrivial {
            return Ok(false);
        }
        for (child, w) in self.children.iter().zip([w1, w2]) {
            let minus = child.lambda_bar_minus.as_ref().expect("nontrivial split");
            if *minus == child.lambda_bar {
                continue; // φ-fixed orbit: this factor cannot distinguish sides
            }
            let d = child.dominant(w);
            if d == child.lambda_bar {
                return Ok(false);
            }
            if d == *minus {
                return Ok(true);
            }
            return Err(CoreError::WeightNotInCoset {
                weight: w.to_string(),
            });
        }
        Ok(false)
    }

    /// Map a parent coset weight to its two factor weights; the flag marks
    /// the minus side of a nontrivial even D split.
    pub fn split_weight(&self, lam: &Weight) -> Result<(Weight, Weight, bool), CoreError> {
        let lam0 = if self.phi_twisted {
            lam.phi()
        } else {
            lam.clone()
        };
        let (nu, _w) = normalize_std(&self.pd, &self.sd, &self.s, &self.sbar, &lam0)?;
        let w1 = nu.restrict(&self.children[0].coords);
        let w2 = nu.restrict(&self.children[1].coords);
        let minus = self.is_minus_side(&w1, &w2)?;
        Ok((w1, w2, minus))
    }
}

// =============================================================================
// Full factorization
// =============================================================================

/// A recursive factorization of a system into pseudo-indecomposable leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorTree {
    pub system: System,
    /// `None` on leaves (pseudo-indecomposable or too small to split).
    pub split: Option<FactorSplit>,
}

/// An interior node: the chosen split and the two child trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSplit {
    pub factor: FactorSystem,
    /// Exactly two subtrees, in (H_1, H_2) order.
    pub children: Vec<FactorTree>,
}

/// The minimal strongly separable pair under (S₁, S̄₁) ≤ (S₂, S̄₂) ⇔ S₁ ⊆ S₂
/// and S̄₁ ⊇ S̄₂, with lexicographic (S, S̄) as the deterministic tie-break.
pub fn choose_split_pair(
    classes: &PairClasses,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, CoreError> {
    let strong: Vec<&SeparablePair> = classes.pairs.iter().filter(|p| p.strong).collect();
    if strong.is_empty() {
        return Ok(None);
    }
    let mut minimal: Vec<&SeparablePair> = Vec::new();
    for &p in &strong {
        let mut is_min = true;
        for &other in &strong {
            if std::ptr::eq(p, other) {
                continue;
            }
            if pair_partial_order(other, p)? == PairOrder::Less {
                is_min = false;
                break;
            }
        }
        if is_min {
            minimal.push(p);
        }
    }
    minimal.sort_by(|a, b| (&a.s, &a.sbar).cmp(&(&b.s, &b.sbar)));
    let chosen = minimal[0];
    Ok(Some((chosen.s.clone(), chosen.sbar.clone())))
}

fn factorize_system(sys: &System) -> Result<FactorTree, CoreError> {
    let leaf = FactorTree {
        system: sys.clone(),
        split: None,
    };
    let Some(pd) = sys.pd() else {
        return Ok(leaf);
    };
    let coset = enumerate_coset(&pd, &sys.lambda_bar);
    if coset.is_empty() {
        return Err(CoreError::EmptyCoset);
    }
    if coset.len() < 2 {
        return Ok(leaf);
    }
    // A child weight with a lone zero coordinate (D) falls outside the
    // standing assumption of the separability calculus; it stays a leaf and
    // its block count is read from the linkage oracle.
    let sd = match singular_set(&pd.rs, &sys.lambda_bar) {
        Ok(sd) => sd,
        Err(CoreError::DegenerateSingularity) => return Ok(leaf),
        Err(e) => return Err(e),
    };
    let classes = all_separable_pairs(&pd, &sd)?;
    let Some((s, sbar)) = choose_split_pair(&classes)? else {
        return Ok(leaf);
    };
    let factor = split(&pd, &sd, &s, &sbar)?;
    let children = factor
        .children
        .iter()
        .map(|c| factorize_system(&c.system))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FactorTree {
        system: sys.clone(),
        split: Some(FactorSplit { factor, children }),
    })
}

/// Fully factorize a system by repeatedly splitting along the minimal
/// strongly separable pair, down to pseudo-indecomposable leaves.
pub fn factorize(pd: &ParabolicData, lambda_bar: &Weight) -> Result<FactorTree, CoreError> {
    let sys = System::new(
        pd.rs.family,
        pd.rs.rank,
        pd.included.clone(),
        lambda_bar.clone(),
    );
    factorize_system(&sys)
}

impl FactorTree {
    /// The pseudo-indecomposable leaf systems, left to right.
    pub fn leaves(&self) -> Vec<&System> {
        match &self.split {
            None => vec![&self.system],
            Some(sp) => sp.children.iter().flat_map(|c| c.leaves()).collect(),
        }
    }

    /// Number of splits whose parent poset is a disjoint union (each
    /// contributes an extra factor 2 to the block count).
    pub fn union_splits(&self) -> usize {
        match &self.split {
            None => 0,
            Some(sp) => {
                usize::from(sp.factor.d_even_nontrivial)
                    + sp.children.iter().map(|c| c.union_splits()).sum::<usize>()
            }
        }
    }

    /// Depth of the factorization tree (0 for a leaf).
    pub fn depth(&self) -> usize {
        match &self.split {
            None => 0,
            Some(sp) => 1 + sp.children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// The factorized block count: the product of the leaf block counts times
    /// 2 per disjoint-union split.
    pub fn block_count_product(&self) -> u64 {
        match &self.split {
            None => self.system.oracle_count(),
            Some(sp) => {
                let mul = if sp.factor.d_even_nontrivial { 2 } else { 1 };
                mul * sp
                    .children
                    .iter()
                    .map(|c| c.block_count_product())
                    .product::<u64>()
            }
        }
    }

    /// The composed weight map: a parent coset weight descends through every
    /// split to one weight per leaf, left to right.
    pub fn leaf_weights(&self, lam: &Weight) -> Result<Vec<Weight>, CoreError> {
        match &self.split {
            None => Ok(vec![lam.clone()]),
            Some(sp) => {
                let (w1, w2, _minus) = sp.factor.split_weight(lam)?;
                let mut out = Vec::new();
                for (child, w) in sp.children.iter().zip([w1, w2]) {
                    let w = if child.system.phi_normalized { w.phi() } else { w };
                    out.extend(child.leaf_weights(&w)?);
                }
                Ok(out)
            }
        }
    }
}

// =============================================================================
// T(λ) tables
// =============================================================================

fn fmt_val2(c2: i64) -> String {
    if c2 % 2 == 0 {
        format!("{}", c2 / 2)
    } else {
        format!("{c2}/2")
    }
}

/// Render the count table T(λ) as a UTF-8 box-drawing grid: one column per
/// nonempty segment, one row per nonzero-or-occupied singular value a_t; the
/// cell (t, s) lists the entries of segment s of absolute value a_t, with a
/// ±a pair abbreviated as "±a".
pub fn render_t_table(pd: &ParabolicData, sd: &SingularData, lam: &Weight) -> String {
    let pd0 = pd.standard_form();
    let lam0 = if pd.nonstandard {
        lam.phi()
    } else {
        lam.clone()
    };
    let is_a = pd.rs.family == Family::A;
    let ncols = pd0.m - usize::from(pd0.segments[pd0.m - 1].is_empty());
    let n_bar = sd.n_bar();
    let nrows = sd.m_bar() - usize::from(*n_bar.last().unwrap_or(&1) == 0);

    let mut cells: Vec<Vec<String>> = Vec::with_capacity(nrows);
    for t in 1..=nrows {
        let a = sd.a2[t - 1];
        let mut row = Vec::with_capacity(ncols);
        for s in 1..=ncols {
            let entries: Vec<i64> = pd0.segments[s - 1]
                .indices()
                .map(|i| lam0.coords2[i - 1])
                .filter(|&e| if is_a { e == a } else { e.abs() == a })
                .collect();
            let text = if entries.len() == 2 && entries[0] == -entries[1] && entries[0] != 0 {
                format!("±{}", fmt_val2(entries[0].abs()))
            } else {
                entries
                    .iter()
                    .map(|&e| fmt_val2(e))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            row.push(text);
        }
        cells.push(row);
    }

    let widths: Vec<usize> = (0..ncols)
        .map(|s| {
            cells
                .iter()
                .map(|row| row[s].chars().count())
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    let rule = |left: char, mid: char, right: char| -> String {
        let mut line = String::new();
        line.push(left);
        for (s, w) in widths.iter().enumerate() {
            for _ in 0..w + 2 {
                line.push('─');
            }
            line.push(if s + 1 == ncols { right } else { mid });
        }
        line.push('\n');
        line
    };
    let mut out = rule('┌', '┬', '┐');
    for (t, row) in cells.iter().enumerate() {
        out.push('│');
        for (s, text) in row.iter().enumerate() {
            let pad = widths[s] - text.chars().count();
            out.push(' ');
            for _ in 0..pad {
                out.push(' ');
            }
            out.push_str(text);
            out.push(' ');
            out.push('│');
        }
        out.push('\n');
        if t + 1 < nrows {
            out.push_str(&rule('├', '┼', '┤'));
        }
    }
    out.push_str(&rule('└', '┴', '┘'));
    out
}
