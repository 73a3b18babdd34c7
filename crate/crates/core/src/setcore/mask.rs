//! Word-backed subsets of `[n] = {1, .., n}`.
//!
//! Element `i` lives at bit position `i - 1`; the ground size `n` is carried
//! alongside the word so that complements and mixed-operand mistakes are
//! caught at the boundary instead of corrupting a scan. All user-facing I/O
//! speaks 1-based labels; only the bit positions are 0-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground size a single word can hold.
pub const MAX_GROUND: u8 = 63;

/// A subset of `[n]` packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u64,
    ground_n: u8,
}

impl SubsetMask {
    /// The empty subset of `[n]`.
    pub fn empty(n: u8) -> Result<Self> {
        if !(2..=MAX_GROUND).contains(&n) {
            return Err(Error::GroundTooLarge { ground_n: n as u32, max: MAX_GROUND as u32 });
        }
        Ok(SubsetMask { bits: 0, ground_n: n })
    }

    /// The full set `[n]`.
    pub fn full(n: u8) -> Result<Self> {
        let mut m = Self::empty(n)?;
        m.bits = word_of_ground(n);
        Ok(m)
    }

    /// Build a mask from 1-based element labels. Duplicates are rejected so
    /// that a typo in a hand-written family is loud.
    pub fn from_indices(indices: &[u32], n: u8) -> Result<Self> {
        let mut m = Self::empty(n)?;
        for &i in indices {
            if i < 1 || i > n as u32 {
                return Err(Error::IndexOutOfRange { index: i, ground_n: n });
            }
            let bit = 1u64 << (i - 1);
            if m.bits & bit != 0 {
                return Err(Error::DuplicateIndex { index: i });
            }
            m.bits |= bit;
        }
        Ok(m)
    }

    /// Rebuild from a raw word already known to fit the ground.
    pub(crate) fn from_word(bits: u64, n: u8) -> Self {
        debug_assert!((2..=MAX_GROUND).contains(&n));
        debug_assert_eq!(bits & !word_of_ground(n), 0, "bits above ground");
        SubsetMask { bits, ground_n: n }
    }

    pub fn ground_n(&self) -> u8 {
        self.ground_n
    }

    /// Raw word; bit `i-1` set means element `i` is present.
    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn cardinality(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Cardinality parity; `true` for odd.
    pub fn has_odd_cardinality(&self) -> bool {
        self.cardinality() % 2 == 1
    }

    pub fn contains(&self, i: u32) -> bool {
        i >= 1 && i <= self.ground_n as u32 && self.bits & (1u64 << (i - 1)) != 0
    }

    /// Ascending 1-based element labels.
    pub fn indices(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        let mut w = self.bits;
        while w != 0 {
            out.push(w.trailing_zeros() + 1);
            w &= w - 1;
        }
        out
    }

    fn check_ground(&self, other: &SubsetMask) -> Result<()> {
        if self.ground_n != other.ground_n {
            return Err(Error::GroundMismatch { left: self.ground_n, right: other.ground_n });
        }
        Ok(())
    }

    pub fn intersection(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.check_ground(other)?;
        Ok(SubsetMask { bits: self.bits & other.bits, ground_n: self.ground_n })
    }

    pub fn union(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.check_ground(other)?;
        Ok(SubsetMask { bits: self.bits | other.bits, ground_n: self.ground_n })
    }

    pub fn difference(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.check_ground(other)?;
        Ok(SubsetMask { bits: self.bits & !other.bits, ground_n: self.ground_n })
    }

    /// Complement within `[n]`.
    pub fn complement(&self) -> SubsetMask {
        SubsetMask { bits: !self.bits & word_of_ground(self.ground_n), ground_n: self.ground_n }
    }

    pub fn is_disjoint_from(&self, other: &SubsetMask) -> Result<bool> {
        self.check_ground(other)?;
        Ok(self.bits & other.bits == 0)
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> Result<bool> {
        self.check_ground(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    /// Canonical sort key: cardinality first, numeric word value second.
    pub fn canonical_key(&self) -> (u32, u64) {
        (self.cardinality(), self.bits)
    }
}

/// All bits of `[n]` set.
pub(crate) fn word_of_ground(n: u8) -> u64 {
    debug_assert!(n <= MAX_GROUND);
    (1u64 << n) - 1
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key()
            .cmp(&other.canonical_key())
            .then(self.ground_n.cmp(&other.ground_n))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    /// Ascending comma-separated 1-based labels, `1,2,5`; empty set prints
    /// as an empty string (the family file format never needs it).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}/[{}]", self, self.ground_n)
    }
}

/// The bundle of elementary set-algebra facts about a pair of masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetAlgebra {
    pub intersection: SubsetMask,
    pub union: SubsetMask,
    pub is_disjoint: bool,
    pub complement_of_a: SubsetMask,
    pub cardinality_of_a: u32,
    /// Cardinality of `a` mod 2.
    pub parity_of_a: u8,
}

/// Evaluate every elementary operation on a pair at once.
pub fn set_algebra(a: &SubsetMask, b: &SubsetMask) -> Result<SetAlgebra> {
    let intersection = a.intersection(b)?;
    Ok(SetAlgebra {
        intersection,
        union: a.union(b)?,
        is_disjoint: intersection.is_empty(),
        complement_of_a: a.complement(),
        cardinality_of_a: a.cardinality(),
        parity_of_a: (a.cardinality() % 2) as u8,
    })
}
