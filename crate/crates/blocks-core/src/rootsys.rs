//! Root-system and parabolic bookkeeping.
//!
//! Roots of the classical families are realized as vectors in the coordinate
//! basis e_1, …, e_n:
//!
//! * A_{n−1} — gl_n coordinates: e_i − e_j (i < j);
//! * B_n — additionally e_i + e_j and the short roots e_i;
//! * C_n — additionally e_i + e_j and the long roots 2e_i;
//! * D_n — additionally e_i + e_j.
//!
//! Simple roots are indexed Bourbaki-style: α_i = e_i − e_{i+1} for i < n and
//! α_n = e_n (B), 2e_n (C), e_{n−1} + e_n (D).
//!
//! Weyl group elements are signed permutations; weight coordinates are stored
//! *doubled* (as 2λ_i) so that half-integer weights of B/D stay exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

// =============================================================================
// Families and root systems
// =============================================================================

/// Classical family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Stable one-letter tag.
    pub fn as_char(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Parse a one-letter tag (case-insensitive).
    pub fn from_char(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A classical root system with a fixed coordinate realization.
///
/// `rank` is the number of coordinates n. For family A this is the n of the
/// gl_n convention, i.e. the system is A_{n−1} living in n coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
}

impl RootSystem {
    /// Construct a root system, validating the rank range.
    pub fn new(family: Family, rank: usize) -> Result<RootSystem, CoreError> {
        let min = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(CoreError::InvalidRank {
                family: family.as_char(),
                rank,
            });
        }
        Ok(RootSystem { family, rank })
    }

    /// Number of simple roots: n − 1 for A (gl_n coordinates), n otherwise.
    pub fn num_simple(&self) -> usize {
        match self.family {
            Family::A => self.rank - 1,
            _ => self.rank,
        }
    }

    /// The simple root α_i (1-based).
    pub fn simple_root(&self, i: usize) -> Root {
        let n = self.rank;
        debug_assert!(i >= 1 && i <= self.num_simple());
        if i < n {
            Root::ei_minus_ej(i, i + 1)
        } else {
            match self.family {
                Family::A => unreachable!("A_{{n-1}} has only n-1 simple roots"),
                Family::B => Root::ei(n),
                Family::C => Root::two_ei(n),
                Family::D => Root::ei_plus_ej(n - 1, n),
            }
        }
    }

    /// All positive roots, in a fixed deterministic order.
    ///
    /// Counts: n(n−1)/2 for A_{n−1}, n² for B_n and C_n, n(n−1) for D_n.
    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(Root::ei_minus_ej(i, j));
            }
        }
        if self.family != Family::A {
            for i in 1..=n {
                for j in (i + 1)..=n {
                    out.push(Root::ei_plus_ej(i, j));
                }
            }
        }
        match self.family {
            Family::B => out.extend((1..=n).map(Root::ei)),
            Family::C => out.extend((1..=n).map(Root::two_ei)),
            _ => {}
        }
        out
    }

    /// Whether a root kind is legal in this family.
    pub fn root_is_legal(&self, root: &Root) -> bool {
        let ok_kind = match root.kind {
            RootKind::EiMinusEj => true,
            RootKind::EiPlusEj => self.family != Family::A,
            RootKind::Ei => self.family == Family::B,
            RootKind::TwoEi => self.family == Family::C,
        };
        ok_kind && root.i >= 1 && root.max_index() <= self.rank
    }

    /// Decompose a positive root over the simple basis; returns the
    /// coefficient vector (length = number of simple roots).
    pub fn simple_coeffs(&self, root: &Root) -> Vec<i64> {
        let n = self.rank;
        let mut c = vec![0i64; self.num_simple()];
        let add = |c: &mut Vec<i64>, lo: usize, hi: usize, v: i64| {
            // adds v·(α_lo + … + α_hi); empty when lo > hi
            for k in lo..=hi {
                c[k - 1] += v;
            }
        };
        match (self.family, root.kind) {
            (_, RootKind::EiMinusEj) => add(&mut c, root.i, root.j - 1, 1),
            (Family::B, RootKind::Ei) => add(&mut c, root.i, n, 1),
            (Family::B, RootKind::EiPlusEj) => {
                // e_i + e_j = (e_i − e_j) + 2 e_j
                add(&mut c, root.i, root.j - 1, 1);
                add(&mut c, root.j, n, 2);
            }
            (Family::C, RootKind::TwoEi) => {
                add(&mut c, root.i, n - 1, 2);
                c[n - 1] += 1;
            }
            (Family::C, RootKind::EiPlusEj) => {
                add(&mut c, root.i, root.j - 1, 1);
                add(&mut c, root.j, n - 1, 2);
                c[n - 1] += 1;
            }
            (Family::D, RootKind::EiPlusEj) => {
                if root.j == n {
                    // e_i + e_n = α_i + … + α_{n−2} + α_n
                    add(&mut c, root.i, n - 2, 1);
                    c[n - 1] += 1;
                } else {
                    // e_i + e_j = α_i + … + α_{j−1} + 2(α_j + … + α_{n−2}) + α_{n−1} + α_n
                    add(&mut c, root.i, root.j - 1, 1);
                    add(&mut c, root.j, n - 2, 2);
                    c[n - 2] += 1;
                    c[n - 1] += 1;
                }
            }
            _ => panic!("root {root} illegal in family {}", self.family),
        }
        c
    }
}

// =============================================================================
// Roots
// =============================================================================

/// Root kind in the coordinate realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    /// e_i − e_j (i < j), present in every family.
    EiMinusEj,
    /// e_i + e_j (i < j), present in B/C/D.
    EiPlusEj,
    /// e_i, the short roots of B.
    Ei,
    /// 2e_i, the long roots of C.
    TwoEi,
}

/// A positive root in the coordinate realization. `j` is 0 for the
/// single-index kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub kind: RootKind,
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn ei_minus_ej(i: usize, j: usize) -> Root {
        debug_assert!(i < j);
        Root { kind: RootKind::EiMinusEj, i, j }
    }

    pub fn ei_plus_ej(i: usize, j: usize) -> Root {
        debug_assert!(i < j);
        Root { kind: RootKind::EiPlusEj, i, j }
    }

    pub fn ei(i: usize) -> Root {
        Root { kind: RootKind::Ei, i, j: 0 }
    }

    pub fn two_ei(i: usize) -> Root {
        Root { kind: RootKind::TwoEi, i, j: 0 }
    }

    /// Largest coordinate index used.
    pub fn max_index(&self) -> usize {
        self.i.max(self.j)
    }

    /// The root as a coordinate vector of length n (unit entries, ±2 for 2e_i).
    pub fn to_vec(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        match self.kind {
            RootKind::EiMinusEj => {
                v[self.i - 1] = 1;
                v[self.j - 1] = -1;
            }
            RootKind::EiPlusEj => {
                v[self.i - 1] = 1;
                v[self.j - 1] = 1;
            }
            RootKind::Ei => v[self.i - 1] = 1,
            RootKind::TwoEi => v[self.i - 1] = 2,
        }
        v
    }

    /// Recover ±root from a coordinate vector; returns (root, is_positive).
    /// The vector must be a root of some classical family.
    pub fn from_vec(v: &[i64]) -> Option<(Root, bool)> {
        let nz: Vec<(usize, i64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i + 1, x))
            .collect();
        match nz.as_slice() {
            [(i, 1)] => Some((Root::ei(*i), true)),
            [(i, -1)] => Some((Root::ei(*i), false)),
            [(i, 2)] => Some((Root::two_ei(*i), true)),
            [(i, -2)] => Some((Root::two_ei(*i), false)),
            [(i, a), (j, b)] => match (a, b) {
                (1, -1) => Some((Root::ei_minus_ej(*i, *j), true)),
                (-1, 1) => Some((Root::ei_minus_ej(*i, *j), false)),
                (1, 1) => Some((Root::ei_plus_ej(*i, *j), true)),
                (-1, -1) => Some((Root::ei_plus_ej(*i, *j), false)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Coroot pairing ⟨λ, β∨⟩ on doubled coordinates.
    ///
    /// For integral weights of the appropriate family the result is an exact
    /// integer: λ_i − λ_j, λ_i + λ_j, 2λ_i (for e_i) or λ_i (for 2e_i).
    pub fn coroot_pairing2(&self, coords2: &[i64]) -> i64 {
        let d = |i: usize| coords2[i - 1];
        match self.kind {
            RootKind::EiMinusEj => {
                let s = d(self.i) - d(self.j);
                debug_assert!(s % 2 == 0);
                s / 2
            }
            RootKind::EiPlusEj => {
                let s = d(self.i) + d(self.j);
                debug_assert!(s % 2 == 0);
                s / 2
            }
            RootKind::Ei => d(self.i),
            RootKind::TwoEi => {
                debug_assert!(d(self.i) % 2 == 0);
                d(self.i) / 2
            }
        }
    }

    /// Reflection s_β on doubled coordinates: swap for e_i−e_j, swap-negate
    /// for e_i+e_j, negate coordinate i for e_i and 2e_i.
    pub fn reflect2(&self, coords2: &[i64]) -> Vec<i64> {
        let mut out = coords2.to_vec();
        match self.kind {
            RootKind::EiMinusEj => out.swap(self.i - 1, self.j - 1),
            RootKind::EiPlusEj => {
                out.swap(self.i - 1, self.j - 1);
                out[self.i - 1] = -out[self.i - 1];
                out[self.j - 1] = -out[self.j - 1];
            }
            RootKind::Ei | RootKind::TwoEi => out[self.i - 1] = -out[self.i - 1],
        }
        out
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::EiMinusEj => write!(f, "e{}-e{}", self.i, self.j),
            RootKind::EiPlusEj => write!(f, "e{}+e{}", self.i, self.j),
            RootKind::Ei => write!(f, "e{}", self.i),
            RootKind::TwoEi => write!(f, "2e{}", self.i),
        }
    }
}

// =============================================================================
// Signed permutations (Weyl group elements)
// =============================================================================

/// A Weyl group element as a signed permutation.
///
/// Action convention: `(wλ)[perm[i]] = signs[i] · λ[i]` (0-based internally).
/// Family constraints: A admits no sign changes; D only an even number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    /// 0-based images: coordinate i is sent to position perm[i].
    pub perm: Vec<usize>,
    /// Per-source-coordinate signs, each ±1.
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    /// The identity element on n coordinates.
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// The reflection s_β as a signed permutation.
    pub fn from_reflection(n: usize, beta: &Root) -> SignedPermutation {
        let mut w = SignedPermutation::identity(n);
        match beta.kind {
            RootKind::EiMinusEj => w.perm.swap(beta.i - 1, beta.j - 1),
            RootKind::EiPlusEj => {
                w.perm.swap(beta.i - 1, beta.j - 1);
                w.signs[beta.i - 1] = -1;
                w.signs[beta.j - 1] = -1;
            }
            RootKind::Ei | RootKind::TwoEi => w.signs[beta.i - 1] = -1,
        }
        w
    }

    /// Validate the sign pattern against a family.
    pub fn check_family(&self, family: Family) -> Result<(), CoreError> {
        let negs = self.signs.iter().filter(|&&s| s < 0).count();
        let ok = match family {
            Family::A => negs == 0,
            Family::B | Family::C => true,
            Family::D => negs % 2 == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::IllegalSigns { family: family.as_char() })
        }
    }

    /// Apply to doubled coordinates.
    pub fn apply2(&self, coords2: &[i64]) -> Vec<i64> {
        assert_eq!(coords2.len(), self.perm.len());
        let mut out = vec![0i64; coords2.len()];
        for i in 0..coords2.len() {
            out[self.perm[i]] = i64::from(self.signs[i]) * coords2[i];
        }
        out
    }

    /// Apply to a root, returning the image as (root, is_positive).
    pub fn apply_root(&self, beta: &Root) -> (Root, bool) {
        let v = beta.to_vec(self.perm.len());
        let mut out = vec![0i64; v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = i64::from(self.signs[i]) * v[i];
        }
        Root::from_vec(&out).expect("signed permutation image of a root is a root")
    }

    /// Group composition: `compose(u, v)` acts as first v, then u.
    pub fn compose(u: &SignedPermutation, v: &SignedPermutation) -> SignedPermutation {
        assert_eq!(u.perm.len(), v.perm.len());
        let n = u.perm.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[i] = u.perm[v.perm[i]];
            signs[i] = v.signs[i] * u.signs[v.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    /// Group inverse.
    pub fn inverse(&self) -> SignedPermutation {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Determinant of the signed permutation matrix: sign(perm)·Πsigns.
    ///
    /// Every reflection has determinant −1, so det(w) = (−1)^{ℓ(w)}; this is
    /// the fast path for length parity.
    pub fn det(&self) -> i8 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1i8;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        for &s in &self.signs {
            sign *= s;
        }
        sign
    }

    /// Length ℓ(w) = |{α ∈ Φ⁺ : wα ∈ −Φ⁺}| over the given positive roots.
    ///
    /// Passing the full positive system gives the length in W; passing Φ_I⁺
    /// gives the restricted length in W_I (for w ∈ W_I).
    pub fn length_over(&self, positive_roots: &[Root]) -> usize {
        positive_roots
            .iter()
            .filter(|beta| !self.apply_root(beta).1)
            .count()
    }

    /// Parity of ℓ(w): 0 for even, 1 for odd (via the determinant).
    pub fn length_parity(&self) -> u8 {
        if self.det() > 0 {
            0
        } else {
            1
        }
    }
}

// =============================================================================
// Parabolic data: segments carved out by Δ \ I
// =============================================================================

/// Structural kind of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// A run of consecutive coordinates linked by e_i − e_{i+1} roots only.
    Run,
    /// The last segment of B/C/D when α_n ∈ I: carries the family's
    /// short/long/fork structure (may be empty).
    Last,
}

/// A segment of coordinates (lo, hi], i.e. indices lo+1 ..= hi (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
    pub kind: SegmentKind,
}

impl Segment {
    /// Number of coordinates in the segment.
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    /// 1-based coordinate indices covered by the segment.
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        (self.lo + 1)..=self.hi
    }
}

/// A parabolic subset I ⊆ Δ together with its derived segment structure.
///
/// For family D the subset is *nonstandard* when α_{n−1} ∉ I but α_n ∈ I; all
/// segment data is then derived from the φ-twisted standard subset
/// (φ swaps α_{n−1} ↔ α_n), and weight-level operations twist through φ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub rs: RootSystem,
    /// The subset I as sorted 1-based simple-root indices, as given.
    pub included: Vec<usize>,
    /// The complement Δ \ I as sorted indices, as given.
    pub excluded: Vec<usize>,
    /// D only: α_{n−1} ∉ I and α_n ∈ I.
    pub nonstandard: bool,
    /// Excluded indices of the standard form (equal to `excluded` unless
    /// nonstandard, in which case n−1 is replaced by n).
    pub std_excluded: Vec<usize>,
    /// Number of segments m.
    pub m: usize,
    /// The m segments of the standard form, in order.
    pub segments: Vec<Segment>,
}

impl ParabolicData {
    /// Derive segment structure from a subset I of simple-root indices.
    pub fn new(rs: RootSystem, included: &[usize]) -> ParabolicData {
        let ns = rs.num_simple();
        let inc: Vec<usize> = {
            let mut v: Vec<usize> = included.iter().copied().filter(|&i| i >= 1 && i <= ns).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let excluded: Vec<usize> = (1..=ns).filter(|i| !inc.contains(i)).collect();
        let n = rs.rank;
        let nonstandard = rs.family == Family::D
            && excluded.contains(&(n - 1))
            && !excluded.contains(&n);
        let std_excluded: Vec<usize> = if nonstandard {
            let mut v: Vec<usize> = excluded.iter().copied().filter(|&q| q != n - 1).collect();
            v.push(n);
            v.sort_unstable();
            v
        } else {
            excluded.clone()
        };

        // Segment boundaries: q_0 = 0 < q_1 < … < q_{m−1}, with the final
        // segment (q_{m−1}, n]. For A every segment is a Run; for B/C/D the
        // final segment is a Last exactly when α_n is not excluded (std form).
        let boundaries = std_excluded.clone();
        let last_kind = match rs.family {
            Family::A => SegmentKind::Run,
            // For B/C/D the final segment carries the family structure; when
            // α_n is excluded the preceding run ends at n and the Last
            // segment (n, n] is empty (n_m = 0).
            _ => SegmentKind::Last,
        };
        let mut segments = Vec::new();
        let mut prev = 0usize;
        for &q in &boundaries {
            segments.push(Segment { lo: prev, hi: q, kind: SegmentKind::Run });
            prev = q;
        }
        segments.push(Segment { lo: prev, hi: n, kind: last_kind });
        let m = segments.len();

        ParabolicData {
            rs,
            included: inc,
            excluded,
            nonstandard,
            std_excluded,
            m,
            segments,
        }
    }

    /// Segment sizes n_1, …, n_m.
    pub fn segment_sizes(&self) -> Vec<usize> {
        self.segments.iter().map(|s| s.len()).collect()
    }

    /// The segment index (1-based) containing coordinate `idx` (1-based), in
    /// the standard form. Coordinates in an empty last segment never match.
    pub fn segment_of(&self, idx: usize) -> usize {
        for (k, seg) in self.segments.iter().enumerate() {
            if idx > seg.lo && idx <= seg.hi {
                return k + 1;
            }
        }
        unreachable!("coordinate {idx} outside all segments")
    }

    /// Whether β lies in the Levi subsystem Φ_I (decided over the *original*
    /// subset I via simple-basis support, so the nonstandard case needs no
    /// special handling).
    pub fn levi_contains(&self, beta: &Root) -> bool {
        let coeffs = self.rs.simple_coeffs(beta);
        coeffs
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || self.included.contains(&(k + 1)))
    }

    /// Positive roots of Φ_I (original subset).
    pub fn levi_positive_roots(&self) -> Vec<Root> {
        self.rs
            .positive_roots()
            .into_iter()
            .filter(|b| self.levi_contains(b))
            .collect()
    }

    /// Positive roots of Φ_I for the standard form (φ-image when nonstandard).
    pub fn std_levi_positive_roots(&self) -> Vec<Root> {
        if !self.nonstandard {
            return self.levi_positive_roots();
        }
        let std_included: Vec<usize> = (1..=self.rs.num_simple())
            .filter(|i| !self.std_excluded.contains(i))
            .collect();
        let std_pd = ParabolicData::new(self.rs, &std_included);
        std_pd.levi_positive_roots()
    }

    /// The φ-twisted subset (D only): swaps membership of α_{n−1} and α_n.
    pub fn phi_subset(rs: RootSystem, included: &[usize]) -> Vec<usize> {
        debug_assert_eq!(rs.family, Family::D);
        let n = rs.rank;
        let mut out: Vec<usize> = included
            .iter()
            .copied()
            .map(|i| {
                if i == n - 1 {
                    n
                } else if i == n {
                    n - 1
                } else {
                    i
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The parabolic for the φ-twisted subset.
    pub fn phi(&self) -> ParabolicData {
        let inc = Self::phi_subset(self.rs, &self.included);
        ParabolicData::new(self.rs, &inc)
    }

    /// The standard-form parabolic (self when already standard).
    pub fn standard_form(&self) -> ParabolicData {
        if self.nonstandard {
            self.phi()
        } else {
            self.clone()
        }
    }
}
