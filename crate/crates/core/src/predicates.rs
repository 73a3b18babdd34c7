//! The three defining properties of the families under study — pairwise
//! intersecting, closed under disjoint even unions, and maximal among odd
//! sets — plus the size-restricted variant. Every check either passes or
//! hands back a small explicit witness, chosen deterministically as the
//! canonically smallest violating tuple so that failures are reproducible
//! and diffable.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::setcore::{enumerate_subsets, SetFamily, SubsetMask, MAX_EXHAUSTIVE_GROUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two members with empty intersection.
    DisjointPair,
    /// member ∪ pair is missing from the family.
    MissingAlgebraicUnion,
    /// An outside odd set with no disjoint member.
    MaximalityWitnessMissing,
    /// A member breaking a uniform-cardinality requirement.
    WrongCardinality,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::DisjointPair => "disjoint-pair",
            ViolationKind::MissingAlgebraicUnion => "missing-algebraic-union",
            ViolationKind::MaximalityWitnessMissing => "maximality-witness-missing",
            ViolationKind::WrongCardinality => "wrong-cardinality",
        }
    }
}

/// A property failure with the sets that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The exhibits, most informative first:
    /// - DisjointPair: the two members
    /// - MissingAlgebraicUnion: the missing union, the member, the 2-subset
    /// - MaximalityWitnessMissing: the outside odd set
    /// - WrongCardinality: the offending member
    pub subjects: Vec<SubsetMask>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind.as_str())?;
        for s in &self.subjects {
            write!(f, " {{{s}}}")?;
        }
        Ok(())
    }
}

fn require_odd_nonempty(family: &SetFamily) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(even) = family.first_even_member() {
        return Err(Error::EvenMemberPresent { member: even.to_string() });
    }
    Ok(())
}

/// Pairwise-intersection check. `None` means every two members meet.
///
/// Members are scanned in canonical order and the inner loop stops as soon
/// as |A|+|B| > n: such pairs intersect by pigeonhole, exactly the shortcut
/// the hand proofs use. The returned pair is the canonically smallest one.
pub fn is_commutative_system(family: &SetFamily) -> Result<Option<Violation>> {
    require_odd_nonempty(family)?;
    let n = family.ground_n() as u32;
    let words = family.words();
    let hit = words
        .par_iter()
        .enumerate()
        .filter_map(|(i, &wa)| {
            let ca = wa.count_ones();
            words[i + 1..].iter().position(|&wb| {
                // sorted by cardinality, so the first overweight partner
                // ends the row — encode "stop" as a fake hit and filter
                ca + wb.count_ones() > n || wa & wb == 0
            })
            .and_then(|off| {
                let wb = words[i + 1 + off];
                if ca + wb.count_ones() > n {
                    None // stopped by pigeonhole, row is clean
                } else {
                    Some((i, i + 1 + off))
                }
            })
        })
        .min();
    Ok(hit.map(|(i, j)| Violation {
        kind: ViolationKind::DisjointPair,
        subjects: vec![
            SubsetMask::from_word(words[i], family.ground_n()),
            SubsetMask::from_word(words[j], family.ground_n()),
        ],
    }))
}

/// Closure under union with disjoint even sets, tested through disjoint
/// 2-subsets only: an even set is a disjoint union of 2-subsets, so closure
/// under 2-subsets gives the full property by induction on cardinality.
/// (The direct all-even-sets quantifier lives in the oracle module as the
/// slow cross-check.)
pub fn is_algebraic_system(family: &SetFamily) -> Result<Option<Violation>> {
    require_odd_nonempty(family)?;
    let n = family.ground_n();
    let ground = (1u64 << n) - 1;
    let words = family.words();
    let hit = words
        .par_iter()
        .enumerate()
        .filter_map(|(idx, &w)| {
            // smallest missing extension pair for this member, by word value
            let mut best: Option<u64> = None;
            let mut rest = ground & !w;
            while rest != 0 {
                let a = rest & rest.wrapping_neg();
                rest ^= a;
                let mut higher = rest;
                while higher != 0 {
                    let b = higher & higher.wrapping_neg();
                    higher ^= b;
                    let pair = a | b;
                    if best.is_some_and(|p| p < pair) {
                        continue;
                    }
                    if !family.contains_word(w | pair) {
                        best = Some(pair);
                    }
                }
            }
            best.map(|pair| (idx, pair))
        })
        .min();
    Ok(hit.map(|(idx, pair)| {
        let w = words[idx];
        Violation {
            kind: ViolationKind::MissingAlgebraicUnion,
            subjects: vec![
                SubsetMask::from_word(w | pair, n),
                SubsetMask::from_word(w, n),
                SubsetMask::from_word(pair, n),
            ],
        }
    }))
}

/// Maximality among odd sets: every odd subset outside the family admits a
/// disjoint member. Assumes the family is already known to be pairwise
/// intersecting (the bundled report runs that check first).
///
/// Scans odd sizes in ascending order; within a size, candidates ascend by
/// word value, so the reported witness is canonically smallest.
pub fn is_maximal_system(family: &SetFamily) -> Result<Option<Violation>> {
    require_odd_nonempty(family)?;
    let n = family.ground_n();
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::GroundTooLargeForEnumeration {
            ground_n: n,
            max: MAX_EXHAUSTIVE_GROUND,
        });
    }
    let words = family.words();
    let mut size = 1u32;
    while size <= n as u32 {
        let layer: Vec<u64> =
            enumerate_subsets(n, size)?.map(|m| m.word()).collect();
        let witness = layer
            .par_iter()
            .filter(|&&cand| !family.contains_word(cand))
            .filter(|&&cand| {
                // no disjoint member ⇒ cand is a witness; members are
                // sorted by cardinality, so stop once |B| can't fit the
                // complement
                !words.iter().any(|&b| {
                    b.count_ones() + size <= n as u32 && b & cand == 0
                })
            })
            .map(|&cand| cand)
            .min();
        if let Some(cand) = witness {
            return Ok(Some(Violation {
                kind: ViolationKind::MaximalityWitnessMissing,
                subjects: vec![SubsetMask::from_word(cand, n)],
            }));
        }
        size += 2;
    }
    Ok(None)
}

/// The size-restricted double property: all members of size s, pairwise
/// intersecting, and maximal among the s-subsets alone.
pub fn is_bicommutative(family: &SetFamily, s: u32) -> Result<Option<Violation>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(bad) = family.iter().find(|m| m.cardinality() != s) {
        return Err(Error::WrongCardinality { expected: s, member: bad.to_string() });
    }
    let n = family.ground_n();
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::GroundTooLargeForEnumeration {
            ground_n: n,
            max: MAX_EXHAUSTIVE_GROUND,
        });
    }
    let words = family.words();

    // intersection scan is vacuous when two s-sets can't avoid each other
    if 2 * s <= n as u32 {
        let hit = words
            .par_iter()
            .enumerate()
            .filter_map(|(i, &wa)| {
                words[i + 1..]
                    .iter()
                    .position(|&wb| wa & wb == 0)
                    .map(|off| (i, i + 1 + off))
            })
            .min();
        if let Some((i, j)) = hit {
            return Ok(Some(Violation {
                kind: ViolationKind::DisjointPair,
                subjects: vec![
                    SubsetMask::from_word(words[i], n),
                    SubsetMask::from_word(words[j], n),
                ],
            }));
        }
    }

    let layer: Vec<u64> = enumerate_subsets(n, s)?.map(|m| m.word()).collect();
    let witness = layer
        .par_iter()
        .filter(|&&cand| !family.contains_word(cand))
        .filter(|&&cand| !words.iter().any(|&b| b & cand == 0))
        .map(|&cand| cand)
        .min();
    Ok(witness.map(|cand| Violation {
        kind: ViolationKind::MaximalityWitnessMissing,
        subjects: vec![SubsetMask::from_word(cand, n)],
    }))
}

/// The bundled verdict on all three properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacsReport {
    pub ground_n: u8,
    pub size: usize,
    pub commutative: bool,
    pub algebraic: bool,
    pub maximal: bool,
    /// Witnesses for whichever properties failed, in the order
    /// commutative, algebraic, maximal.
    pub witnesses: Vec<Violation>,
}

impl MacsReport {
    pub fn all_hold(&self) -> bool {
        self.commutative && self.algebraic && self.maximal
    }
}

/// Run all three property checks and bundle the verdicts. A family passing
/// everything spans a maximal commutative subalgebra of dimension
/// 2^{n-1} + |family| (see the grassmann module).
pub fn verify_macs(family: &SetFamily) -> Result<MacsReport> {
    let mut witnesses = Vec::new();
    let commutative = match is_commutative_system(family)? {
        None => true,
        Some(v) => {
            witnesses.push(v);
            false
        }
    };
    let algebraic = match is_algebraic_system(family)? {
        None => true,
        Some(v) => {
            witnesses.push(v);
            false
        }
    };
    let maximal = match is_maximal_system(family)? {
        None => true,
        Some(v) => {
            witnesses.push(v);
            false
        }
    };
    Ok(MacsReport {
        ground_n: family.ground_n(),
        size: family.len(),
        commutative,
        algebraic,
        maximal,
        witnesses,
    })
}
