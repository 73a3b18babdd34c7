//! Subset and family algebra over `[n]`: the mask/family types, subset
//! enumeration, and the two family operators (single-step join and its
//! closure) that drive every construction in the crate.

mod family;
mod mask;

pub use family::SetFamily;
pub use mask::{set_algebra, SetAlgebra, SubsetMask, MAX_GROUND};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use mask::word_of_ground;

/// Largest ground size for which we are willing to walk all (odd) subsets
/// or materialize a full construction: 2^23 masks is seconds, 2^63 is never.
pub const MAX_EXHAUSTIVE_GROUND: u8 = 24;

// ---------------------------------------------------------------------------
// parameters for the k-indexed constructions

/// Which arithmetic progression the ground size follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundShape {
    /// n = 4k, k ≥ 1
    N4K,
    /// n = 4k+2, k ≥ 1
    N4K2,
    /// n = 4k+7, k ≥ 2
    N4K7,
    /// n = 4k+9, k ≥ 2
    N4K9,
}

/// A validated (variant, k, n) triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    variant: GroundShape,
    k: u64,
    n: u8,
}

impl ConstructionParams {
    pub fn new(variant: GroundShape, k: u64) -> Result<Self> {
        let (min_k, offset) = match variant {
            GroundShape::N4K => (1, 0),
            GroundShape::N4K2 => (1, 2),
            GroundShape::N4K7 => (2, 7),
            GroundShape::N4K9 => (2, 9),
        };
        if k < min_k {
            return Err(Error::InvalidParameter {
                what: "k",
                details: format!("{k} is below the minimum {min_k} for this family"),
            });
        }
        let n = k
            .checked_mul(4)
            .and_then(|v| v.checked_add(offset))
            .unwrap_or(u64::MAX);
        if n > MAX_GROUND as u64 {
            return Err(Error::GroundTooLarge {
                ground_n: n.min(u32::MAX as u64) as u32,
                max: MAX_GROUND as u32,
            });
        }
        Ok(ConstructionParams { variant, k, n: n as u8 })
    }

    pub fn variant(&self) -> GroundShape {
        self.variant
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Guard for operations that materialize the whole family.
    pub fn check_materializable(&self) -> Result<()> {
        if self.n > MAX_EXHAUSTIVE_GROUND {
            return Err(Error::GroundTooLargeForEnumeration {
                ground_n: self.n,
                max: MAX_EXHAUSTIVE_GROUND,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// subset enumeration

/// Stream of all `size`-subsets of `[n]` in canonical (numeric) order.
pub struct SubsetStream {
    next: Option<u64>,
    limit: u64,
    ground_n: u8,
}

impl Iterator for SubsetStream {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = gosper_successor(cur).filter(|&w| w < self.limit);
        Some(SubsetMask::from_word(cur, self.ground_n))
    }
}

/// Next word with the same popcount (Gosper's hack); `None` on overflow.
fn gosper_successor(w: u64) -> Option<u64> {
    if w == 0 {
        return None;
    }
    let lowest = w & w.wrapping_neg();
    let ripple = w.checked_add(lowest)?;
    Some(ripple | (((w ^ ripple) / lowest) >> 2))
}

/// All subsets of `[n]` with the given cardinality, ascending by word value
/// (which, within one cardinality, is the canonical family order).
pub fn enumerate_subsets(n: u8, size: u32) -> Result<SubsetStream> {
    if !(2..=MAX_GROUND).contains(&n) {
        return Err(Error::GroundTooLarge { ground_n: n as u32, max: MAX_GROUND as u32 });
    }
    if size > n as u32 {
        return Err(Error::SizeOutOfRange { size, ground_n: n as u32 });
    }
    let first = if size == 0 { 0 } else { (1u64 << size) - 1 };
    Ok(SubsetStream {
        next: Some(first),
        // a size-0 stream must still yield the empty word once
        limit: if size == 0 { 1 } else { word_of_ground(n) + 1 },
        ground_n: n,
    })
}

/// All `size`-subsets of an arbitrary support word, as raw words.
/// Used by the block constructions, which slice subsets out of windows.
pub(crate) fn subsets_of_word(support: u64, size: u32, ground_n: u8) -> Vec<u64> {
    let t = support.count_ones();
    if size > t {
        return Vec::new();
    }
    let positions: Vec<u32> = {
        let mut v = Vec::with_capacity(t as usize);
        let mut w = support;
        while w != 0 {
            v.push(w.trailing_zeros());
            w &= w - 1;
        }
        v
    };
    debug_assert!(positions.iter().all(|&p| p < ground_n as u32));
    let mut out = Vec::new();
    let mut compact = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let compact_limit = 1u64 << t;
    loop {
        // scatter the compact mask onto the support positions
        let mut scattered = 0u64;
        let mut c = compact;
        while c != 0 {
            let j = c.trailing_zeros();
            scattered |= 1u64 << positions[j as usize];
            c &= c - 1;
        }
        out.push(scattered);
        if size == 0 {
            break;
        }
        match gosper_successor(compact).filter(|&w| w < compact_limit) {
            Some(nextc) => compact = nextc,
            None => break,
        }
    }
    out
}

// ---------------------------------------------------------------------------
// the ∨¹ operator and its closure

/// One join step: the family together with every union of a member and a
/// disjoint 2-subset of `[n]`.
pub fn join_one(family: &SetFamily) -> Result<SetFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.ground_n();
    let ground = word_of_ground(n);
    let mut out = family.words().to_vec();
    for &w in family.words() {
        push_pair_extensions(w, ground, &mut out);
    }
    Ok(SetFamily::from_words(n, out))
}

/// Append `w ∪ {a,b}` for every 2-subset `{a,b}` of the ground disjoint
/// from `w`.
fn push_pair_extensions(w: u64, ground: u64, out: &mut Vec<u64>) {
    let mut rest = ground & !w;
    while rest != 0 {
        let a = rest & rest.wrapping_neg();
        rest ^= a;
        let mut higher = rest;
        while higher != 0 {
            let b = higher & higher.wrapping_neg();
            higher ^= b;
            out.push(w | a | b);
        }
    }
}

/// Least fixed point of `join_one` containing the seed.
///
/// Processed layer by layer (ascending cardinality): a member of size c only
/// ever produces members of size c+2, so one sweep up the cardinality range
/// is a complete closure — no outer fixed-point loop needed.
pub fn cone_closure(seed: &SetFamily) -> Result<SetFamily> {
    if seed.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = seed.ground_n();
    let ground = word_of_ground(n);
    let mut layers: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    for &w in seed.words() {
        layers.entry(w.count_ones()).or_default().push(w);
    }

    // keep intermediate buffers from holding too many duplicates
    const DEDUP_HIGH_WATER: usize = 1 << 23;

    let mut card = *layers.keys().next().expect("nonempty seed");
    while card <= n as u32 {
        let current = match layers.get_mut(&card) {
            Some(v) => {
                v.sort_unstable();
                v.dedup();
                std::mem::take(v)
            }
            None => {
                card += 1;
                continue;
            }
        };
        if card + 2 <= n as u32 {
            let mut next = layers.remove(&(card + 2)).unwrap_or_default();
            for &w in &current {
                push_pair_extensions(w, ground, &mut next);
                if next.len() >= DEDUP_HIGH_WATER {
                    next.sort_unstable();
                    next.dedup();
                }
            }
            layers.insert(card + 2, next);
        }
        layers.insert(card, current);
        card += 1;
    }

    let words: Vec<u64> = layers.into_values().flatten().collect();
    Ok(SetFamily::from_words(n, words))
}
