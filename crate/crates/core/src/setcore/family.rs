//! Ordered, deduplicated collections of subsets over a common ground `[n]`.
//!
//! The member list is kept sorted in canonical order (cardinality, then
//! numeric word value) at all times, so equality is structural, membership
//! is a binary search, and serialized output is diffable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::setcore::mask::{word_of_ground, SubsetMask, MAX_GROUND};

#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground_n: u8,
    /// Sorted by (popcount, word), strictly increasing — no duplicates.
    members: Vec<u64>,
}

fn canonical_key(w: u64) -> (u32, u64) {
    (w.count_ones(), w)
}

impl SetFamily {
    pub fn empty(n: u8) -> Result<Self> {
        if !(2..=MAX_GROUND).contains(&n) {
            return Err(Error::GroundTooLarge { ground_n: n as u32, max: MAX_GROUND as u32 });
        }
        Ok(SetFamily { ground_n: n, members: Vec::new() })
    }

    pub fn from_masks(n: u8, masks: &[SubsetMask]) -> Result<Self> {
        let mut fam = Self::empty(n)?;
        let mut words = Vec::with_capacity(masks.len());
        for m in masks {
            if m.ground_n() != n {
                return Err(Error::GroundMismatch { left: n, right: m.ground_n() });
            }
            words.push(m.word());
        }
        fam.set_words(words);
        Ok(fam)
    }

    /// Internal constructor from raw words (already within ground).
    pub(crate) fn from_words(n: u8, words: Vec<u64>) -> Self {
        debug_assert!((2..=MAX_GROUND).contains(&n));
        debug_assert!(words.iter().all(|w| w & !word_of_ground(n) == 0));
        let mut fam = SetFamily { ground_n: n, members: Vec::new() };
        fam.set_words(words);
        fam
    }

    fn set_words(&mut self, mut words: Vec<u64>) {
        words.sort_unstable_by_key(|&w| canonical_key(w));
        words.dedup();
        self.members = words;
    }

    pub fn ground_n(&self) -> u8 {
        self.ground_n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let n = self.ground_n;
        self.members.iter().map(move |&w| SubsetMask::from_word(w, n))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, m: &SubsetMask) -> bool {
        m.ground_n() == self.ground_n && self.contains_word(m.word())
    }

    pub(crate) fn contains_word(&self, w: u64) -> bool {
        self.members.binary_search_by_key(&canonical_key(w), |&v| canonical_key(v)).is_ok()
    }

    /// Union of two families over the same ground.
    pub fn merge(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.ground_n != other.ground_n {
            return Err(Error::GroundMismatch { left: self.ground_n, right: other.ground_n });
        }
        let mut words = self.members.clone();
        words.extend_from_slice(&other.members);
        Ok(SetFamily::from_words(self.ground_n, words))
    }

    /// Members of one cardinality, as their own family.
    pub fn members_of_size(&self, size: u32) -> SetFamily {
        let words = self
            .members
            .iter()
            .copied()
            .filter(|w| w.count_ones() == size)
            .collect();
        SetFamily::from_words(self.ground_n, words)
    }

    /// Histogram of member cardinalities.
    pub fn layer_sizes(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &w in &self.members {
            *h.entry(w.count_ones()).or_insert(0) += 1;
        }
        h
    }

    pub fn all_members_odd(&self) -> bool {
        self.members.iter().all(|w| w.count_ones() % 2 == 1)
    }

    /// First member of even cardinality, if any — the witness for
    /// odd-only preconditions.
    pub(crate) fn first_even_member(&self) -> Option<SubsetMask> {
        self.members
            .iter()
            .find(|w| w.count_ones() % 2 == 0)
            .map(|&w| SubsetMask::from_word(w, self.ground_n))
    }

    // ---- family file format -------------------------------------------
    //
    // Line 1: `n=<int>`; every further non-blank line is one member as
    // ascending comma-separated 1-based labels. Written in canonical
    // order; read in any order. Lines starting with `#` are ignored.

    pub fn write_to<W: Write>(&self, out: &mut W) -> Result<()> {
        write!(out, "{}", self.render())?;
        Ok(())
    }

    /// The file-format text for this family.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n={}", self.ground_n);
        for m in self.iter() {
            let _ = writeln!(s, "{m}");
        }
        s
    }

    pub fn read_from<R: Read>(input: R) -> Result<SetFamily> {
        let reader = BufReader::new(input);
        let mut ground: Option<u8> = None;
        let mut words = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match ground {
                None => {
                    let rest = line.strip_prefix("n=").ok_or(Error::FamilyFile {
                        line: lineno,
                        message: "expected header `n=<int>`".into(),
                    })?;
                    let n: u8 = rest.trim().parse().map_err(|_| Error::FamilyFile {
                        line: lineno,
                        message: format!("bad ground size `{rest}`"),
                    })?;
                    if !(2..=MAX_GROUND).contains(&n) {
                        return Err(Error::FamilyFile {
                            line: lineno,
                            message: format!("ground size {n} out of range 2..={MAX_GROUND}"),
                        });
                    }
                    ground = Some(n);
                }
                Some(n) => {
                    let mut indices = Vec::new();
                    for piece in line.split(',') {
                        let v: u32 = piece.trim().parse().map_err(|_| Error::FamilyFile {
                            line: lineno,
                            message: format!("bad element `{piece}`"),
                        })?;
                        indices.push(v);
                    }
                    let mask = SubsetMask::from_indices(&indices, n).map_err(|e| {
                        Error::FamilyFile { line: lineno, message: e.to_string() }
                    })?;
                    if mask.is_empty() {
                        return Err(Error::FamilyFile {
                            line: lineno,
                            message: "empty member is not representable".into(),
                        });
                    }
                    words.push(mask.word());
                }
            }
        }
        let n = ground.ok_or(Error::FamilyFile { line: 1, message: "missing header".into() })?;
        Ok(SetFamily::from_words(n, words))
    }

    pub fn to_path<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<SetFamily> {
        let f = fs::File::open(path)?;
        SetFamily::read_from(f)
    }
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetFamily(n={}, {} members: ", self.ground_n, self.len())?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if i >= 12 {
                write!(f, "..")?;
                break;
            }
            write!(f, "{{{m}}}")?;
        }
        write!(f, ")")
    }
}
