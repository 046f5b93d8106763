//! Separable pairs (S, S̄) and the block-count predictions they drive.
//!
//! A separable pair couples a set S of segment indices with a set S̄ of
//! singular-value indices so that the count table n_s^λ(a_t) is maximal on
//! S × S̄ and zero on the complementary corner. The collection 𝒟 of all
//! separable pairs of a system, its partial order, and its equivalence
//! classes determine the number of blocks as a power of two — this is the
//! second, independent pipeline cross-checked against the linkage-graph
//! oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rootsys::{Family, ParabolicData};
use crate::weights::{
    count_table, enumerate_coset, max_count, SingularData, Weight,
};

// =============================================================================
// Pairs
// =============================================================================

/// A separable pair (S, S̄) with its classification flags.
///
/// Index sets use 1-based standard-form indices: S ⊆ {1..m} over segments,
/// S̄ ⊆ {1..m̄} over singular values a_t. `trivial` is a property of the
/// equivalence class of the pair and is only meaningful for B/C/D; `odd` is
/// only meaningful for D (Some(true) iff m ∈ S).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparablePair {
    pub s: Vec<usize>,
    pub sbar: Vec<usize>,
    /// Strongly separable: not one of the four weak shapes (A pairs always).
    pub strong: bool,
    /// Member of a trivial equivalence class (B/C/D classification).
    pub trivial: bool,
    /// D only: whether the pair is odd (m ∈ S, equivalently m̄ ∈ S̄).
    pub odd: Option<bool>,
}

/// The collection 𝒟 of all separable pairs of a system, with its equivalence
/// classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClasses {
    pub pairs: Vec<SeparablePair>,
    /// Equivalence classes as sorted index lists into `pairs`.
    pub classes: Vec<Vec<usize>>,
    /// Number of classes containing a trivial pair.
    pub trivial_classes: usize,
    /// Number of classes with no trivial pair.
    pub nontrivial_classes: usize,
}

impl PairClasses {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether any pair is strongly separable.
    pub fn has_strong(&self) -> bool {
        self.pairs.iter().any(|p| p.strong)
    }

    /// Whether any pair is odd (D).
    pub fn has_odd(&self) -> bool {
        self.pairs.iter().any(|p| p.odd == Some(true))
    }
}

/// Relative position of two separable pairs in the partial order
/// (S₁, S̄₁) ≤ (S₂, S̄₂) ⇔ S₁ ⊆ S₂ and S̄₁ ⊇ S̄₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairOrder {
    Less,
    Greater,
    Equal,
    /// Incomparable with a shared S or a shared S̄ — permitted by the theory.
    Unrelated,
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    let bs: BTreeSet<usize> = b.iter().copied().collect();
    a.iter().all(|x| bs.contains(x))
}

/// Compare two separable pairs of the same system.
///
/// Two pairs with distinct S and distinct S̄ are always comparable; an
/// incomparable such pair would falsify the comparability lemma and is
/// surfaced as a `TheoremViolation` finding.
pub fn pair_partial_order(
    p1: &SeparablePair,
    p2: &SeparablePair,
) -> Result<PairOrder, CoreError> {
    let le = subset(&p1.s, &p2.s) && subset(&p2.sbar, &p1.sbar);
    let ge = subset(&p2.s, &p1.s) && subset(&p1.sbar, &p2.sbar);
    match (le, ge) {
        (true, true) => Ok(PairOrder::Equal),
        (true, false) => Ok(PairOrder::Less),
        (false, true) => Ok(PairOrder::Greater),
        (false, false) => {
            let same_s = subset(&p1.s, &p2.s) && subset(&p2.s, &p1.s);
            let same_sbar = subset(&p1.sbar, &p2.sbar) && subset(&p2.sbar, &p1.sbar);
            if same_s || same_sbar {
                Ok(PairOrder::Unrelated)
            } else {
                Err(CoreError::TheoremViolation(format!(
                    "incomparable separable pairs with distinct S and distinct S̄: \
                     (S={:?}, S̄={:?}) vs (S={:?}, S̄={:?})",
                    p1.s, p1.sbar, p2.s, p2.sbar
                )))
            }
        }
    }
}

// =============================================================================
// Separability test
// =============================================================================

/// Whether (S, S̄) is a separable pair for the system at the coset weight λ.
///
/// Conditions: (1) m > 1 and m̄ > 1; (2) n_s^λ(a_t) is maximal for s ∈ S,
/// t ∈ S̄; (3) n_s^λ(a_t) = 0 for s ∉ S, t ∉ S̄; (4) for B/C, m ∈ S iff
/// m̄ ∉ S̄; (5) for D, m ∈ S iff m̄ ∈ S̄. Both index sets must be nonempty.
/// Membership does not depend on the choice of coset weight λ.
pub fn is_separable_pair(
    pd: &ParabolicData,
    sd: &SingularData,
    lam: &Weight,
    s: &[usize],
    sbar: &[usize],
) -> bool {
    let m = pd.m;
    let m_bar = sd.m_bar();
    if s.is_empty() || sbar.is_empty() {
        return false;
    }
    if s.iter().any(|&x| x < 1 || x > m) || sbar.iter().any(|&t| t < 1 || t > m_bar) {
        return false;
    }
    // (1)
    if m <= 1 || m_bar <= 1 {
        return false;
    }
    // (4)/(5)
    let m_in_s = s.contains(&m);
    let mbar_in_sbar = sbar.contains(&m_bar);
    match pd.rs.family {
        Family::A => {}
        Family::B | Family::C => {
            if m_in_s == mbar_in_sbar {
                return false;
            }
        }
        Family::D => {
            if m_in_s != mbar_in_sbar {
                return false;
            }
        }
    }
    // (2) and (3) over the count table.
    let ct = count_table(pd, sd, lam);
    let in_s = |x: usize| s.contains(&x);
    let in_sbar = |t: usize| sbar.contains(&t);
    for ss in 1..=m {
        for t in 1..=m_bar {
            let a_is_zero = sd.a2[t - 1] == 0;
            if in_s(ss) && in_sbar(t) {
                if ct.get(ss, t) != max_count(pd, ss, a_is_zero) {
                    return false;
                }
            } else if !in_s(ss) && !in_sbar(t) && ct.get(ss, t) != 0 {
                return false;
            }
        }
    }
    true
}

/// Whether (S, S̄) has one of the four weak shapes (only defined outside A):
/// ({1..m−1}, {m̄}), ({1..m}, {m̄}), ({m}, {1..m̄−1}), ({m}, {1..m̄}).
pub(crate) fn is_weak_shape(
    family: Family,
    m: usize,
    m_bar: usize,
    s: &[usize],
    sbar: &[usize],
) -> bool {
    if family == Family::A {
        return false;
    }
    let full_s: Vec<usize> = (1..=m).collect();
    let s_head: Vec<usize> = (1..m).collect();
    let full_sbar: Vec<usize> = (1..=m_bar).collect();
    let sbar_head: Vec<usize> = (1..m_bar).collect();
    let only_m = vec![m];
    (s == s_head && sbar == [m_bar])
        || (s == full_s && sbar == [m_bar])
        || (s == only_m && sbar == sbar_head)
        || (s == only_m && sbar == full_sbar)
}

/// Whether the pair is one of the trivial-class anchors:
/// B/C: ({s₀}, {1..m̄}) with s₀ < m, or ({1..m}, {t₀}) with t₀ < m̄;
/// D:   ({s₀}, {1..m̄−1}) with s₀ < m, or ({1..m−1}, {t₀}) with t₀ < m̄.
fn is_trivial_anchor(
    family: Family,
    m: usize,
    m_bar: usize,
    s: &[usize],
    sbar: &[usize],
) -> bool {
    let full_s: Vec<usize> = (1..=m).collect();
    let s_head: Vec<usize> = (1..m).collect();
    let full_sbar: Vec<usize> = (1..=m_bar).collect();
    let sbar_head: Vec<usize> = (1..m_bar).collect();
    match family {
        Family::A => false,
        Family::B | Family::C => {
            (s.len() == 1 && s[0] < m && sbar == full_sbar)
                || (s == full_s && sbar.len() == 1 && sbar[0] < m_bar)
        }
        Family::D => {
            (s.len() == 1 && s[0] < m && sbar == sbar_head)
                || (s == s_head && sbar.len() == 1 && sbar[0] < m_bar)
        }
    }
}

/// Enumerate 𝒟: all separable pairs of the system, with classification and
/// equivalence classes.
///
/// The coset must be nonempty; one coset weight suffices since separability
/// is coset-independent. The equivalence is generated by
/// (S₁, S̄) ∼ (S₂, S̄) for S₁ ⊂ S₂ and (S, S̄₁) ∼ (S, S̄₂) for S̄₁ ⊂ S̄₂,
/// restricted to members of 𝒟.
pub fn all_separable_pairs(
    pd: &ParabolicData,
    sd: &SingularData,
) -> Result<PairClasses, CoreError> {
    let coset = enumerate_coset(pd, &sd.lambda_bar);
    let lam = coset.first().ok_or(CoreError::EmptyCoset)?;
    let m = pd.m;
    let m_bar = sd.m_bar();
    let family = pd.rs.family;

    let mut members: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for smask in 1u64..(1u64 << m) {
        let s: Vec<usize> = (1..=m).filter(|i| smask & (1 << (i - 1)) != 0).collect();
        for tmask in 1u64..(1u64 << m_bar) {
            let sbar: Vec<usize> =
                (1..=m_bar).filter(|t| tmask & (1 << (t - 1)) != 0).collect();
            if is_separable_pair(pd, sd, lam, &s, &sbar) {
                members.push((s.clone(), sbar));
            }
        }
    }

    // Equivalence classes via union-find over the generating relations.
    let k = members.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let (si, ti) = (&members[i].0, &members[i].1);
            let (sj, tj) = (&members[j].0, &members[j].1);
            let related = (ti == tj && (subset(si, sj) || subset(sj, si)))
                || (si == sj && (subset(ti, tj) || subset(tj, ti)));
            if related {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = (ri.min(rj), ri.max(rj));
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut class_of: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
    let mut roots: Vec<usize> = class_of.clone();
    roots.sort_unstable();
    roots.dedup();
    for c in class_of.iter_mut() {
        *c = roots.iter().position(|r| r == c).unwrap();
    }

    // A class is trivial iff it contains an anchor pair.
    let mut class_trivial = vec![false; roots.len()];
    for (i, (s, sbar)) in members.iter().enumerate() {
        if is_trivial_anchor(family, m, m_bar, s, sbar) {
            class_trivial[class_of[i]] = true;
        }
    }

    let pairs: Vec<SeparablePair> = members
        .iter()
        .enumerate()
        .map(|(i, (s, sbar))| SeparablePair {
            s: s.clone(),
            sbar: sbar.clone(),
            strong: !is_weak_shape(family, m, m_bar, s, sbar),
            trivial: class_trivial[class_of[i]],
            odd: (family == Family::D).then(|| s.contains(&m)),
        })
        .collect();

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
    for (i, &c) in class_of.iter().enumerate() {
        classes[c].push(i);
    }
    let trivial_classes = class_trivial.iter().filter(|&&t| t).count();
    Ok(PairClasses {
        pairs,
        nontrivial_classes: classes.len() - trivial_classes,
        trivial_classes,
        classes,
    })
}

// =============================================================================
// Block-count prediction
// =============================================================================

/// Predict the number of blocks from the separable-pair calculus.
///
/// A systems always form a single block. Otherwise the count is a power of
/// two: for B/C, 2^k with k the number of nontrivial classes; for D with an
/// odd pair, 2^(k−1) with k the number of all classes; for D with only even
/// pairs, 2^k with k the number of nontrivial classes. An empty coset has
/// zero blocks. The weakly-separable special cases are verified against the
/// direct (n_m, n̄_m̄) criteria; a mismatch is a `TheoremViolation` finding.
pub fn predicted_block_count(
    pd: &ParabolicData,
    sd: &SingularData,
) -> Result<u64, CoreError> {
    let coset = enumerate_coset(pd, &sd.lambda_bar);
    if coset.is_empty() {
        return Ok(0);
    }
    if pd.rs.family == Family::A {
        return Ok(1);
    }
    let classes = all_separable_pairs(pd, sd)?;
    if classes.is_empty() {
        return Ok(1);
    }

    let n = pd.segment_sizes();
    let n_bar = sd.n_bar();
    let (n_m, nbar_mbar) = (n[pd.m - 1], n_bar[sd.m_bar() - 1]);
    let weakly = !classes.has_strong();

    match pd.rs.family {
        Family::A => unreachable!(),
        Family::B | Family::C => {
            if weakly {
                // Direct criterion: exactly one weak shape can be present and
                // it pins down (n_m, n̄_m̄).
                let ok = n_m == 0 && nbar_mbar == pd.m - 1
                    || nbar_mbar == 0 && n_m == sd.m_bar() - 1;
                if !ok {
                    return Err(CoreError::TheoremViolation(format!(
                        "weakly separable B/C system with (n_m, n̄_m̄) = ({n_m}, {nbar_mbar}), \
                         expected (0, m−1) or (m̄−1, 0)"
                    )));
                }
            }
            Ok(1u64 << classes.nontrivial_classes)
        }
        Family::D => {
            // Homogeneity: all pairs odd or all even.
            let odd_count = classes.pairs.iter().filter(|p| p.odd == Some(true)).count();
            if odd_count != 0 && odd_count != classes.pairs.len() {
                return Err(CoreError::TheoremViolation(
                    "mixed odd and even separable pairs in a D system".into(),
                ));
            }
            if odd_count > 0 {
                if weakly {
                    // Two blocks iff both weak shapes are present iff
                    // (n_m, n̄_m̄) = (m̄, m); cross-check the two readings.
                    let both = classes.classes.len() == 2;
                    let direct = n_m == sd.m_bar() && nbar_mbar == pd.m;
                    if both != direct {
                        return Err(CoreError::TheoremViolation(format!(
                            "weakly separable D system: shape count {} vs \
                             (n_m, n̄_m̄) = ({n_m}, {nbar_mbar})",
                            classes.classes.len()
                        )));
                    }
                }
                Ok(1u64 << (classes.classes.len() - 1))
            } else {
                Ok(1u64 << classes.nontrivial_classes)
            }
        }
    }
}

/// Whether the category is pseudo-indecomposable: it has at least two simple
/// modules and cannot be factored through any strongly separable pair.
pub fn is_pseudo_indecomposable(
    pd: &ParabolicData,
    sd: &SingularData,
) -> Result<bool, CoreError> {
    let coset = enumerate_coset(pd, &sd.lambda_bar);
    if coset.len() < 2 {
        return Err(CoreError::TooFewSimples);
    }
    let classes = all_separable_pairs(pd, sd)?;
    Ok(!classes.has_strong())
}

/// For a pseudo-indecomposable two-block system, decide whether λ and μ lie in
/// the same block by the sign-parity criterion.
///
/// Applicable exactly when the system is weakly separable with
/// (n_m, n̄_m̄) ∈ {(0, m−1), (m̄−1, 0)} for B/C or (n_m, n̄_m̄) = (m̄, m) for D;
/// anything else is `NotTwoBlockCase`. The criterion: λ and μ share a block
/// iff their numbers of negative coordinates have equal parity (standard-form
/// coordinates).
pub fn two_block_membership(
    pd: &ParabolicData,
    sd: &SingularData,
    lam: &Weight,
    mu: &Weight,
) -> Result<bool, CoreError> {
    if pd.rs.family == Family::A {
        return Err(CoreError::NotTwoBlockCase);
    }
    let coset = enumerate_coset(pd, &sd.lambda_bar);
    if coset.len() < 2 {
        return Err(CoreError::TooFewSimples);
    }
    for w in [lam, mu] {
        if !coset.contains(w) {
            return Err(CoreError::WeightNotInCoset {
                weight: w.to_string(),
            });
        }
    }
    let classes = all_separable_pairs(pd, sd)?;
    if classes.is_empty() || classes.has_strong() {
        return Err(CoreError::NotTwoBlockCase);
    }
    let n = pd.segment_sizes();
    let n_bar = sd.n_bar();
    let (n_m, nbar_mbar) = (n[pd.m - 1], n_bar[sd.m_bar() - 1]);
    let two_blocks = match pd.rs.family {
        Family::A => false,
        Family::B | Family::C => {
            n_m == 0 && nbar_mbar == pd.m - 1 || nbar_mbar == 0 && n_m == sd.m_bar() - 1
        }
        Family::D => n_m == sd.m_bar() && nbar_mbar == pd.m,
    };
    if !two_blocks {
        return Err(CoreError::NotTwoBlockCase);
    }
    let (a, b) = if pd.nonstandard {
        (lam.phi(), mu.phi())
    } else {
        (lam.clone(), mu.clone())
    };
    Ok(a.parity() == b.parity())
}
