//! Partitions, nilpotent-orbit combinatorics, and the third block-count
//! pipeline via compatible (k, l) pairs.
//!
//! Nilpotent orbits of the classical families are parameterized by
//! partitions with parity constraints on multiplicities; the parabolic
//! subsets I and J induce partitions π_I, π_J whose duals and collapses
//! decide nonemptiness of the system and — through compatible pairs —
//! reproduce the block count predicted by the separable-pair calculus.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rootsys::{Family, ParabolicData};

// =============================================================================
// Partitions
// =============================================================================

/// A partition: weakly decreasing positive parts (trailing zeros dropped).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<u64>,
}

impl Partition {
    /// Build from arbitrary nonnegative parts: sorts descending, drops zeros.
    pub fn new(parts: &[u64]) -> Partition {
        let mut p: Vec<u64> = parts.iter().copied().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: p }
    }

    /// Total sum of parts.
    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// The k-th part, 1-based; zero beyond the length.
    pub fn part(&self, k: usize) -> u64 {
        if k >= 1 && k <= self.parts.len() {
            self.parts[k - 1]
        } else {
            0
        }
    }

    /// Prefix sum of the first k parts.
    pub fn prefix(&self, k: usize) -> u64 {
        (1..=k).map(|i| self.part(i)).sum()
    }

    /// The dual (transposed) partition: π^t_i = #{j : π_j ≥ i}.
    pub fn dual(&self) -> Partition {
        let max = self.part(1) as usize;
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i as u64).count() as u64)
            .collect();
        Partition { parts }
    }

    /// Whether all parts are even with even multiplicities (the D "very even"
    /// condition).
    pub fn is_very_even(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 0)
            && self
                .parts
                .iter()
                .all(|&p| self.parts.iter().filter(|&&q| q == p).count() % 2 == 0)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Dominance order: π ⊴ η iff every prefix sum of π is at most that of η.
/// Comparing partitions of different totals is an error.
pub fn dominance_leq(pi: &Partition, eta: &Partition) -> Result<bool, CoreError> {
    if pi.n() != eta.n() {
        return Err(CoreError::UnequalN(pi.n(), eta.n()));
    }
    let len = pi.parts.len().max(eta.parts.len());
    Ok((1..=len).all(|k| pi.prefix(k) <= eta.prefix(k)))
}

// =============================================================================
// Collapse
// =============================================================================

/// Whether π satisfies the multiplicity constraint of the family's orbit
/// parameterization: B/D need even parts with even multiplicity, C needs odd
/// parts with even multiplicity; A is unconstrained.
pub fn admissible(pi: &Partition, family: Family) -> bool {
    let bad_parity = match family {
        Family::A => return true,
        Family::B | Family::D => 0,
        Family::C => 1,
    };
    let mut i = 0;
    while i < pi.parts.len() {
        let v = pi.parts[i];
        let mut mult = 0;
        while i < pi.parts.len() && pi.parts[i] == v {
            mult += 1;
            i += 1;
        }
        if v % 2 == bad_parity && mult % 2 == 1 {
            return false;
        }
    }
    true
}

/// The X-collapse π_X: the unique ⊴-largest admissible partition ⊴ π.
///
/// Greedy repair: while some part value of the wrong parity has odd
/// multiplicity, take the largest such value, decrement its last occurrence,
/// and re-add the unit at the earliest later position that keeps the
/// partition weakly decreasing. Validated against a brute-force ⊴-maximum
/// oracle in the test suite.
///
/// The total must admit at least one admissible partition; the only vacuous
/// case is a C-collapse of an odd total, which never arises from a root
/// system (C orbits partition 2n) and panics via the termination guard.
pub fn collapse(pi: &Partition, family: Family) -> Partition {
    if family == Family::A {
        return pi.clone();
    }
    let bad_parity = match family {
        Family::B | Family::D => 0,
        Family::C => 1,
        Family::A => unreachable!(),
    };
    let mut p = pi.parts.clone();
    // Each pass strictly lowers the partition in dominance order, so the
    // number of passes is bounded by the longest chain; n() squared is a
    // comfortable cap.
    let mut guard = (pi.n() * pi.n() + 2) as usize;
    loop {
        // Find the largest wrong-parity value with odd multiplicity.
        let mut target: Option<usize> = None; // last index of that value
        let mut i = 0;
        while i < p.len() {
            let v = p[i];
            let mut j = i;
            while j < p.len() && p[j] == v {
                j += 1;
            }
            if v % 2 == bad_parity && (j - i) % 2 == 1 && target.is_none() {
                target = Some(j - 1);
            }
            i = j;
        }
        let Some(idx) = target else { break };
        p[idx] -= 1;
        let mut placed = false;
        for j in (idx + 1)..p.len() {
            if p[j] + 1 <= p[j - 1] {
                p[j] += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            p.push(1);
        }
        p.retain(|&x| x > 0);
        guard -= 1;
        assert!(guard > 0, "collapse failed to terminate on {pi}");
    }
    Partition::new(&p)
}

// =============================================================================
// Orbit partitions of parabolic subsets
// =============================================================================

/// Disambiguation label for the two D-orbits attached to a very even
/// partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitLabel {
    /// The partition determines the orbit uniquely.
    Plain,
    VeryEvenI,
    VeryEvenII,
}

/// A nilpotent orbit: its partition plus the D very-even label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub partition: Partition,
    pub label: OrbitLabel,
}

/// The partition π_I of the orbit O_I attached to a parabolic subset, using
/// the standard-form segment sizes n_1, …, n_m.
///
/// A: {n_s}. B: {n_s, n_s (s < m), 2n_m + 1}. C: {n_s, n_s (s < m), 2n_m}.
/// D: {n_s, n_s (s < m), 2n_m − 1, 1} when n_m ≥ 2, {n_s, n_s (s < m)} when
/// n_m = 0. For D, a very even π_I labels O_I as I when I is standard and II
/// otherwise.
pub fn pi_i(pd: &ParabolicData) -> Orbit {
    let sizes = pd.segment_sizes();
    let m = pd.m;
    let mut parts: Vec<u64> = Vec::new();
    match pd.rs.family {
        Family::A => {
            parts.extend(sizes.iter().map(|&s| s as u64));
        }
        Family::B | Family::C | Family::D => {
            for &s in &sizes[..m - 1] {
                parts.push(s as u64);
                parts.push(s as u64);
            }
            let n_m = sizes[m - 1] as u64;
            match pd.rs.family {
                Family::B => parts.push(2 * n_m + 1),
                Family::C => parts.push(2 * n_m),
                Family::D => {
                    debug_assert_ne!(n_m, 1, "D last segment has size ≠ 1");
                    if n_m >= 2 {
                        parts.push(2 * n_m - 1);
                        parts.push(1);
                    }
                }
                Family::A => unreachable!(),
            }
        }
    }
    let partition = Partition::new(&parts);
    let label = if pd.rs.family == Family::D && partition.is_very_even() {
        if pd.nonstandard {
            OrbitLabel::VeryEvenII
        } else {
            OrbitLabel::VeryEvenI
        }
    } else {
        OrbitLabel::Plain
    };
    Orbit { partition, label }
}

/// The Richardson orbit R_I: partition (π_I^t)_X, with the D very-even label
/// resolved by the standardness of I and the residue of n mod 4.
pub fn richardson(pd: &ParabolicData) -> Orbit {
    let pi = pi_i(pd).partition;
    let partition = collapse(&pi.dual(), pd.rs.family);
    let label = if pd.rs.family == Family::D && pi.is_very_even() {
        let four_divides = pd.rs.rank % 4 == 0;
        // Label I when (standard ∧ 4|n) or (nonstandard ∧ 4∤n); II otherwise.
        if pd.nonstandard != four_divides {
            OrbitLabel::VeryEvenI
        } else {
            OrbitLabel::VeryEvenII
        }
    } else {
        OrbitLabel::Plain
    };
    Orbit { partition, label }
}

// =============================================================================
// Nonemptiness
// =============================================================================

/// Decide whether the system (Φ, Φ_I, Φ_J) has any simple module at all,
/// purely from partitions.
///
/// The test is π_I ⊴ π_J^t and π_J ⊴ π_I^t, which is exact except in one D
/// configuration: both partitions very even, mutually dual, and the
/// standardness of J mismatched against n mod 4 — that configuration is
/// empty despite passing the dominance test. A nonstandard I is reduced to
/// the standard side by twisting both subsets through φ first.
pub fn nonempty_criterion(
    pd_i: &ParabolicData,
    pd_j: &ParabolicData,
) -> Result<bool, CoreError> {
    debug_assert_eq!(pd_i.rs, pd_j.rs);
    let (pd_i, pd_j) = if pd_i.nonstandard {
        (pd_i.phi(), pd_j.phi())
    } else {
        (pd_i.clone(), pd_j.clone())
    };
    let pi = pi_i(&pd_i).partition;
    let pj = pi_i(&pd_j).partition;
    let dominated = dominance_leq(&pi, &pj.dual())? && dominance_leq(&pj, &pi.dual())?;
    if !dominated {
        return Ok(false);
    }
    if pd_i.rs.family == Family::D
        && pi.is_very_even()
        && pj.is_very_even()
        && pi == pj.dual()
    {
        let four_divides = pd_i.rs.rank % 4 == 0;
        // Exception: empty when J's standardness disagrees with n mod 4.
        if pd_j.nonstandard == four_divides {
            return Ok(false);
        }
    }
    Ok(true)
}

// =============================================================================
// Compatible pairs
// =============================================================================

/// Whether k is compatible with (Φ, Φ_I, Φ_J), per family.
///
/// B: odd k needs (π_J)_2 ≥ k ≥ 2n̄_m̄ + 1 and (π_I)_k ≤ 2n_m + 1; even k
/// needs k ≤ 2n̄_m̄ and (π_I)_k ≥ 2n_m + 1. C is identical except odd k needs
/// (π_I)_k ≤ 2n_m. D: even k needs (π_J)_2 ≥ k ≥ 2n̄_m̄ and (π_I)_k ≥ 2n_m;
/// odd k needs k ≤ 2n̄_m̄ − 1 and (π_I)_k ≤ 2n_m − 1. Always 1 ≤ k ≤ 2m − 1.
pub fn compatible_k(pd_i: &ParabolicData, pd_j: &ParabolicData, k: usize) -> bool {
    let m = pd_i.m;
    if k < 1 || k > 2 * m - 1 {
        return false;
    }
    let pi = pi_i(pd_i).partition;
    let pj = pi_i(pd_j).partition;
    let n_m = *pd_i.segment_sizes().last().unwrap() as i64;
    let nbar_mbar = *pd_j.segment_sizes().last().unwrap() as i64;
    let k_i = k as i64;
    let pi_k = pi.part(k) as i64;
    let pj_2 = pj.part(2) as i64;
    let odd = k % 2 == 1;
    match pd_i.rs.family {
        Family::A => false,
        Family::B => {
            if odd {
                pj_2 >= k_i && k_i >= 2 * nbar_mbar + 1 && pi_k <= 2 * n_m + 1
            } else {
                k_i <= 2 * nbar_mbar && pi_k >= 2 * n_m + 1
            }
        }
        Family::C => {
            if odd {
                pj_2 >= k_i && k_i >= 2 * nbar_mbar + 1 && pi_k <= 2 * n_m
            } else {
                k_i <= 2 * nbar_mbar && pi_k >= 2 * n_m + 1
            }
        }
        Family::D => {
            if odd {
                k_i <= 2 * nbar_mbar - 1 && pi_k <= 2 * n_m - 1
            } else {
                pj_2 >= k_i && k_i >= 2 * nbar_mbar && pi_k >= 2 * n_m
            }
        }
    }
}

/// The set 𝒞 of compatible pairs with its equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatiblePairs {
    /// Members (k, l) of 𝒞 in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    /// Equivalence classes as sorted index lists into `pairs`.
    pub classes: Vec<Vec<usize>>,
    pub trivial_classes: usize,
    pub nontrivial_classes: usize,
}

impl CompatiblePairs {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// D: whether 𝒞 contains an odd compatible pair (odd k).
    pub fn has_odd(&self) -> bool {
        self.pairs.iter().any(|&(k, _)| k % 2 == 1)
    }
}

/// Enumerate 𝒞(Φ, Φ_I, Φ_J): pairs (k, l) satisfying
/// (i) k compatible with (Φ, Φ_I, Φ_J) and Σ_{i≤k}(π_I)_i = Σ_{i≤k}(π_J^t)_i;
/// (ii) l compatible with (Φ, Φ_J, Φ_I) and Σ_{i≤l}(π_J)_i = Σ_{i≤l}(π_I^t)_i;
/// (iii)/(iv) the parity coupling between k and l with the n̄_t count bounds.
///
/// For D with odd k the prefix identity carries a shift of one:
/// Σ_{i≤k}(π_I)_i + 1 = Σ_{i≤k}(π_J^t)_i (and symmetrically for odd l), as
/// the D parts {2n_m − 1, 1} split the odd summand that B/C carry as a
/// single part 2n_m + 1.
///
/// Classes are generated by (k, l) ∼ (k + 2p, l) and (k, l) ∼ (k, l + 2p)
/// within 𝒞. A class is trivial when it contains the anchor (2, 2m̄ − 1) or
/// (2m − 1, 2) for B/C, respectively (2, 2m̄ − 2) or (2m − 2, 2) for D (the
/// images under k = 2|S| − [m ∈ S], l = 2|S̄| − [m̄ ∈ S̄] of the trivial
/// separable-pair anchors).
pub fn compatible_pairs(pd_i: &ParabolicData, pd_j: &ParabolicData) -> CompatiblePairs {
    let family = pd_i.rs.family;
    let m = pd_i.m;
    let m_bar = pd_j.m;
    let pi = pi_i(pd_i).partition;
    let pj = pi_i(pd_j).partition;
    let pit = pi.dual();
    let pjt = pj.dual();
    let n_bar = pd_j.segment_sizes();

    // Prefix-sum identity with the D odd-index shift.
    let shift = |idx: usize| -> u64 {
        if family == Family::D && idx % 2 == 1 {
            1
        } else {
            0
        }
    };

    let mut members: Vec<(usize, usize)> = Vec::new();
    for k in 1..=(2 * m).saturating_sub(1) {
        if !compatible_k(pd_i, pd_j, k) || pi.prefix(k) + shift(k) != pjt.prefix(k) {
            continue;
        }
        // Bounds from the count of J-segments (t < m̄) larger than k.
        let over = 2 * n_bar[..m_bar - 1].iter().filter(|&&t| t > k).count();
        let upto = 2 * n_bar[..m_bar - 1].iter().filter(|&&t| t >= k).count();
        // (iii)/(iv): the parity of l flips between B/C and D.
        let l_even = match family {
            Family::B | Family::C => k % 2 == 1,
            Family::D => k % 2 == 0,
            Family::A => continue,
        };
        let (lo, hi) = if l_even { (over, upto) } else { (over + 1, upto + 1) };
        for l in lo..=hi {
            if l < 1 || (l % 2 == 0) != l_even {
                continue;
            }
            if compatible_k(pd_j, pd_i, l) && pj.prefix(l) + shift(l) == pit.prefix(l) {
                members.push((k, l));
            }
        }
    }
    members.sort_unstable();
    members.dedup();

    // Union-find over the two generating relations: shared l or shared k.
    let count = members.len();
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..count {
        for j in (i + 1)..count {
            let (ki, li) = members[i];
            let (kj, lj) = members[j];
            if ki == kj || li == lj {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = (ri.min(rj), ri.max(rj));
                    parent[hi] = lo;
                }
            }
        }
    }
    let class_of: Vec<usize> = (0..count).map(|i| find(&mut parent, i)).collect();
    let mut roots: Vec<usize> = class_of.clone();
    roots.sort_unstable();
    roots.dedup();

    let anchors: [(usize, usize); 2] = match family {
        Family::B | Family::C => [(2, 2 * m_bar - 1), (2 * m - 1, 2)],
        Family::D => [(2, 2 * m_bar.saturating_sub(1)), (2 * m.saturating_sub(1), 2)],
        Family::A => [(0, 0), (0, 0)],
    };
    let mut class_trivial = vec![false; roots.len()];
    for (i, kl) in members.iter().enumerate() {
        if anchors.contains(kl) {
            let c = roots.iter().position(|&r| r == class_of[i]).unwrap();
            class_trivial[c] = true;
        }
    }

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
    for (i, &c) in class_of.iter().enumerate() {
        let idx = roots.iter().position(|&r| r == c).unwrap();
        classes[idx].push(i);
    }
    let trivial_classes = class_trivial.iter().filter(|&&t| t).count();
    CompatiblePairs {
        pairs: members,
        nontrivial_classes: classes.len() - trivial_classes,
        trivial_classes,
        classes,
    }
}

/// Predict the block count purely from partition data.
///
/// Empty systems have zero blocks; A systems one. Otherwise: B/C give 2^p
/// with p the number of nontrivial classes of 𝒞; D gives 2^(p−1) over all
/// classes when an odd compatible pair exists, else 2^p over nontrivial
/// classes.
pub fn count_from_partitions(
    pd_i: &ParabolicData,
    pd_j: &ParabolicData,
) -> Result<u64, CoreError> {
    if !nonempty_criterion(pd_i, pd_j)? {
        return Ok(0);
    }
    if pd_i.rs.family == Family::A {
        return Ok(1);
    }
    let cc = compatible_pairs(pd_i, pd_j);
    match pd_i.rs.family {
        Family::A => unreachable!(),
        Family::B | Family::C => Ok(1u64 << cc.nontrivial_classes),
        Family::D => {
            if cc.has_odd() {
                Ok(1u64 << (cc.classes.len() - 1))
            } else {
                Ok(1u64 << cc.nontrivial_classes)
            }
        }
    }
}
