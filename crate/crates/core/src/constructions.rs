//! The named families, built exactly as described: the seven-line window
//! system and its shifted copies, singleton cones, the two small full-layer
//! examples, the ten-block m-uniform system, and the three large layered
//! systems over n = 4k+7 and n = 4k+9.
//!
//! Block families are generated by signature — "this window pattern joined
//! with that many low elements" — never by filtering a full layer, so the
//! cost tracks the family size rather than binom(n, m).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::setcore::{
    cone_closure, join_one, subsets_of_word, ConstructionParams, GroundShape, SetFamily,
    SubsetMask, MAX_EXHAUSTIVE_GROUND, MAX_GROUND,
};

/// The seven 1-based triples of the window system, before shifting.
/// Any two meet in exactly one point; every point lies on exactly three.
const WINDOW_TRIPLES: [[u32; 3]; 7] = [
    [1, 2, 5],
    [1, 3, 6],
    [1, 4, 7],
    [2, 3, 7],
    [3, 4, 5],
    [5, 6, 7],
    [2, 4, 6],
];

/// The seven lines of the order-2 projective plane laid out on a 7-point
/// window `[offset+1, offset+7]`, over the ground `[offset+7]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoBlock {
    window_offset: u8,
    ground_n: u8,
    triples: [SubsetMask; 7],
}

/// The shifted seven-line system; `offset = 0` is the classical one.
pub fn fano(offset: u32) -> Result<FanoBlock> {
    if offset + 7 > MAX_GROUND as u32 {
        return Err(Error::WindowOverflow { offset });
    }
    let ground_n = (offset + 7) as u8;
    let triples = WINDOW_TRIPLES.map(|t| {
        let shifted = t.map(|i| i + offset);
        SubsetMask::from_indices(&shifted, ground_n).expect("window fits the ground")
    });
    Ok(FanoBlock { window_offset: offset as u8, ground_n, triples })
}

impl FanoBlock {
    pub fn window_offset(&self) -> u8 {
        self.window_offset
    }

    pub fn ground_n(&self) -> u8 {
        self.ground_n
    }

    pub fn triples(&self) -> &[SubsetMask; 7] {
        &self.triples
    }

    /// The window `[offset+1, offset+7]` as a mask.
    pub fn window(&self) -> SubsetMask {
        SubsetMask::from_word(0x7f << self.window_offset, self.ground_n)
    }

    /// The seven lines as a family over `[offset+7]`.
    pub fn as_family(&self) -> SetFamily {
        SetFamily::from_masks(self.ground_n, &self.triples).expect("uniform ground")
    }
}

/// All layers of a family grouped by cardinality, plus the merged whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredFamily {
    ground_n: u8,
    layers: BTreeMap<u32, SetFamily>,
    total: SetFamily,
}

impl LayeredFamily {
    /// Assemble from per-cardinality slices. Layer keys must match member
    /// sizes and the slices must be pairwise disjoint; both are construction
    /// bugs if broken, hence asserts rather than errors.
    pub(crate) fn from_layers(ground_n: u8, parts: Vec<(u32, SetFamily)>) -> LayeredFamily {
        let mut layers = BTreeMap::new();
        let mut words = Vec::new();
        let mut expected_total = 0usize;
        for (card, fam) in parts {
            if fam.is_empty() {
                continue;
            }
            assert_eq!(fam.ground_n(), ground_n, "layer ground mismatch");
            assert!(
                fam.iter().all(|m| m.cardinality() == card),
                "layer {card} holds a member of the wrong size"
            );
            expected_total += fam.len();
            words.extend_from_slice(fam.words());
            let prev = layers.insert(card, fam);
            assert!(prev.is_none(), "duplicate layer {card}");
        }
        let total = SetFamily::from_words(ground_n, words);
        assert_eq!(total.len(), expected_total, "layers overlap");
        LayeredFamily { ground_n, layers, total }
    }

    pub fn ground_n(&self) -> u8 {
        self.ground_n
    }

    pub fn layers(&self) -> &BTreeMap<u32, SetFamily> {
        &self.layers
    }

    pub fn layer(&self, cardinality: u32) -> Option<&SetFamily> {
        self.layers.get(&cardinality)
    }

    /// (cardinality, member count) pairs, ascending.
    pub fn layer_sizes(&self) -> Vec<(u32, usize)> {
        self.layers.iter().map(|(&c, f)| (c, f.len())).collect()
    }

    pub fn total(&self) -> &SetFamily {
        &self.total
    }
}

// ---------------------------------------------------------------------------
// small constructions

/// All odd subsets of `[n]` containing `i`, built as the closure of `{{i}}`.
pub fn cone_singleton(n: u8, i: u32) -> Result<SetFamily> {
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::GroundTooLargeForEnumeration { ground_n: n, max: MAX_EXHAUSTIVE_GROUND });
    }
    let seed = SubsetMask::from_indices(&[i], n)?;
    cone_closure(&SetFamily::from_masks(n, &[seed])?)
}

/// Words of every subset of `[n]` with the given cardinality.
fn full_layer_words(n: u8, size: u32) -> Vec<u64> {
    subsets_of_word((1u64 << n) - 1, size, n)
}

/// Full odd layers `from, from+2, .., n` as (cardinality, family) pairs.
fn full_odd_layers(n: u8, from: u32) -> Vec<(u32, SetFamily)> {
    let mut out = Vec::new();
    let mut j = from;
    while j <= n as u32 {
        out.push((j, SetFamily::from_words(n, full_layer_words(n, j))));
        j += 2;
    }
    out
}

/// n = 4k: the union of the full odd layers from 2k+1 up to 4k−1.
pub fn family_example2(k: u64) -> Result<SetFamily> {
    let params = ConstructionParams::new(GroundShape::N4K, k)?;
    params.check_materializable()?;
    let n = params.n();
    let mut words = Vec::new();
    let mut j = (2 * k + 1) as u32;
    while j < 4 * k as u32 {
        words.extend(full_layer_words(n, j));
        j += 2;
    }
    Ok(SetFamily::from_words(n, words))
}

/// n = 4k+2: the full odd layers from 2k+3 up, plus the (2k+1)-subsets
/// containing the pivot element `i`.
pub fn family_example3(k: u64, i: u32) -> Result<SetFamily> {
    let params = ConstructionParams::new(GroundShape::N4K2, k)?;
    params.check_materializable()?;
    let n = params.n();
    let pivot = SubsetMask::from_indices(&[i], n)?;
    let ground = (1u64 << n) - 1;
    let mut words: Vec<u64> = subsets_of_word(ground & !pivot.word(), 2 * k as u32, n)
        .into_iter()
        .map(|w| w | pivot.word())
        .collect();
    let mut j = (2 * k + 3) as u32;
    while j <= n as u32 {
        words.extend(full_layer_words(n, j));
        j += 2;
    }
    Ok(SetFamily::from_words(n, words))
}

// ---------------------------------------------------------------------------
// the ten-block m-uniform system over n = 4k+7

/// Unions of one word from each side; the sides never overlap.
fn cross(left: &[u64], right: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for &a in left {
        for &b in right {
            debug_assert_eq!(a & b, 0);
            out.push(a | b);
        }
    }
    out
}

/// The ten blocks over n = 4k+7 and their union: every member has size
/// m = 2k+3 and is classified by how it meets the top window of 7 points.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    params: ConstructionParams,
    /// The shifted seven-line system on the window `[4k+1, 4k+7]`.
    pub window_fano: FanoBlock,
    /// Blocks 1..=10 in the construction's order.
    pub blocks: Vec<SetFamily>,
    /// Their (disjoint) union: the m-uniform intersecting system.
    pub merged: SetFamily,
}

impl BlockSystem {
    pub fn k(&self) -> u64 {
        self.params.k()
    }

    pub fn n(&self) -> u8 {
        self.params.n()
    }

    pub fn m(&self) -> u32 {
        (2 * self.params.k() + 3) as u32
    }
}

/// Build the ten blocks: seven "line ∪ 2k low", then window pairs with
/// 2k+1 low, window singletons with 2k+2 low, and pure low (2k+3)-subsets.
pub fn blocks_b(k: u64) -> Result<BlockSystem> {
    let params = ConstructionParams::new(GroundShape::N4K7, k)?;
    params.check_materializable()?;
    let n = params.n();
    let k32 = k as u32;
    let low = (1u64 << (4 * k)) - 1;
    let window_fano = fano(4 * k as u32)?;
    debug_assert_eq!(window_fano.ground_n(), n);
    let window = window_fano.window().word();

    let mut blocks: Vec<SetFamily> = Vec::with_capacity(10);
    for triple in window_fano.triples() {
        let words = cross(&[triple.word()], &subsets_of_word(low, 2 * k32, n));
        blocks.push(SetFamily::from_words(n, words));
    }
    blocks.push(SetFamily::from_words(
        n,
        cross(&subsets_of_word(window, 2, n), &subsets_of_word(low, 2 * k32 + 1, n)),
    ));
    blocks.push(SetFamily::from_words(
        n,
        cross(&subsets_of_word(window, 1, n), &subsets_of_word(low, 2 * k32 + 2, n)),
    ));
    blocks.push(SetFamily::from_words(n, subsets_of_word(low, 2 * k32 + 3, n)));

    let mut words = Vec::new();
    for b in &blocks {
        words.extend_from_slice(b.words());
    }
    let merged = SetFamily::from_words(n, words);
    assert_eq!(
        merged.len(),
        blocks.iter().map(|b| b.len()).sum::<usize>(),
        "blocks must be pairwise disjoint"
    );
    Ok(BlockSystem { params, window_fano, blocks, merged })
}

// ---------------------------------------------------------------------------
// the two layered systems over n = 4k+7

/// The cone construction over n = 4k+7, both as the closed layer
/// description and (asserted equal) as an explicit closure.
#[derive(Debug, Clone)]
pub struct Cone47 {
    pub layers: LayeredFamily,
    /// Seed layer at 2k+1: all (2k+1)-subsets of the low part.
    pub cone_lower: SetFamily,
    /// Seed layer at 2k+3: the union of the seven line blocks.
    pub cone_mid: SetFamily,
    /// The 2k+5 slice of one join step from the full block union.
    pub cone_upper: SetFamily,
    pub blocks: BlockSystem,
}

pub fn cone47(k: u64) -> Result<Cone47> {
    let blocks = blocks_b(k)?;
    let n = blocks.n();
    let k32 = k as u32;
    let low = (1u64 << (4 * k)) - 1;
    let window = blocks.window_fano.window().word();

    let cone_lower = SetFamily::from_words(n, subsets_of_word(low, 2 * k32 + 1, n));
    let cone_mid = {
        let mut words = Vec::new();
        for b in &blocks.blocks[..7] {
            words.extend_from_slice(b.words());
        }
        SetFamily::from_words(n, words)
    };
    let cone_upper = join_one(&blocks.merged)?.members_of_size(2 * k32 + 5);

    // closed description of the 2k+5 layer: any window pattern of at most
    // five points, topped up from the low part
    let upper_layer = {
        let mut words = Vec::new();
        for t in 0..=5u32 {
            if 2 * k32 + 5 < t {
                continue;
            }
            words.extend(cross(
                &subsets_of_word(window, t, n),
                &subsets_of_word(low, 2 * k32 + 5 - t, n),
            ));
        }
        SetFamily::from_words(n, words)
    };

    let mut parts = vec![
        (2 * k32 + 1, cone_lower.clone()),
        (2 * k32 + 3, blocks.merged.clone()),
        (2 * k32 + 5, upper_layer),
    ];
    parts.extend(full_odd_layers(n, 2 * k32 + 7));
    let layers = LayeredFamily::from_layers(n, parts);

    // the layer description must coincide with the actual closure
    let closure = cone_closure(&cone_lower.merge(&cone_mid)?)?;
    assert!(
        &closure == layers.total(),
        "closure of the seed layers disagrees with the closed description"
    );

    Ok(Cone47 { layers, cone_lower, cone_mid, cone_upper, blocks })
}

/// The flat system over n = 4k+7: the block union at 2k+3, every higher
/// odd layer full.
pub fn delta47(k: u64) -> Result<LayeredFamily> {
    let blocks = blocks_b(k)?;
    let n = blocks.n();
    let k32 = k as u32;
    let mut parts = vec![(2 * k32 + 3, blocks.merged)];
    parts.extend(full_odd_layers(n, 2 * k32 + 5));
    Ok(LayeredFamily::from_layers(n, parts))
}

// ---------------------------------------------------------------------------
// the windowed system over n = 4k+9

/// The layered system over n = 4k+9 built around the shifted seven-line
/// window `[4k+3, 4k+9]`, together with all its construction intermediates.
#[derive(Debug, Clone)]
pub struct C49 {
    pub layers: LayeredFamily,
    /// The shifted line system on the top window.
    pub window_fano: FanoBlock,
    /// The seven excluded window 4-subsets, in construction order.
    pub excluded_quads: Vec<SubsetMask>,
    /// The 28 remaining window 4-subsets, labeled in canonical order.
    pub quads: SetFamily,
    /// The eight blocks of the 2k+3 layer.
    pub mid_blocks: Vec<SetFamily>,
    /// The thirty-nine blocks of the 2k+5 layer.
    pub upper_blocks: Vec<SetFamily>,
}

impl C49 {
    pub fn n(&self) -> u8 {
        self.layers.ground_n()
    }
}

/// Window 4-subsets that are *not* reachable as line ∪ point; given here
/// as 1-based window positions (add the window offset to place them).
const EXCLUDED_QUADS: [[u32; 4]; 7] = [
    [1, 2, 6, 7],
    [2, 3, 5, 6],
    [3, 4, 6, 7],
    [1, 3, 5, 7],
    [1, 2, 3, 4],
    [1, 4, 5, 6],
    [2, 4, 5, 7],
];

pub fn c49(k: u64) -> Result<C49> {
    let params = ConstructionParams::new(GroundShape::N4K9, k)?;
    params.check_materializable()?;
    let n = params.n();
    let k32 = k as u32;
    let offset = 4 * k as u32 + 2;
    let low = (1u64 << offset) - 1;
    let window_fano = fano(offset)?;
    debug_assert_eq!(window_fano.ground_n(), n);
    let window = window_fano.window().word();

    let excluded_quads: Vec<SubsetMask> = EXCLUDED_QUADS
        .iter()
        .map(|q| {
            let shifted: Vec<u32> = q.iter().map(|i| i + offset).collect();
            SubsetMask::from_indices(&shifted, n).expect("window fits the ground")
        })
        .collect();
    let quads = {
        let words = subsets_of_word(window, 4, n)
            .into_iter()
            .filter(|&w| !excluded_quads.iter().any(|e| e.word() == w))
            .collect();
        SetFamily::from_words(n, words)
    };
    assert_eq!(quads.len(), 28, "window quads minus exclusions");

    // eight blocks at size 2k+3: line ∪ 2k low, and pure low
    let mut mid_blocks: Vec<SetFamily> = Vec::with_capacity(8);
    for triple in window_fano.triples() {
        let words = cross(&[triple.word()], &subsets_of_word(low, 2 * k32, n));
        mid_blocks.push(SetFamily::from_words(n, words));
    }
    mid_blocks.push(SetFamily::from_words(n, subsets_of_word(low, 2 * k32 + 3, n)));

    // thirty-nine blocks at size 2k+5, by window signature
    let mut upper_blocks: Vec<SetFamily> = Vec::with_capacity(39);
    upper_blocks.push(SetFamily::from_words(n, subsets_of_word(low, 2 * k32 + 5, n)));
    upper_blocks.push(SetFamily::from_words(
        n,
        cross(&subsets_of_word(window, 1, n), &subsets_of_word(low, 2 * k32 + 4, n)),
    ));
    upper_blocks.push(SetFamily::from_words(
        n,
        cross(&subsets_of_word(window, 2, n), &subsets_of_word(low, 2 * k32 + 3, n)),
    ));
    for triple in window_fano.triples() {
        let words = cross(&[triple.word()], &subsets_of_word(low, 2 * k32 + 2, n));
        upper_blocks.push(SetFamily::from_words(n, words));
    }
    for quad in quads.iter() {
        let words = cross(&[quad.word()], &subsets_of_word(low, 2 * k32 + 1, n));
        upper_blocks.push(SetFamily::from_words(n, words));
    }
    upper_blocks.push(SetFamily::from_words(
        n,
        cross(&subsets_of_word(window, 5, n), &subsets_of_word(low, 2 * k32, n)),
    ));
    assert_eq!(upper_blocks.len(), 39);

    let merge_all = |families: &[SetFamily]| -> SetFamily {
        let mut words = Vec::new();
        for f in families {
            words.extend_from_slice(f.words());
        }
        SetFamily::from_words(n, words)
    };
    let mid = merge_all(&mid_blocks);
    let upper = merge_all(&upper_blocks);

    let mut parts = vec![(2 * k32 + 3, mid), (2 * k32 + 5, upper)];
    parts.extend(full_odd_layers(n, 2 * k32 + 7));
    let layers = LayeredFamily::from_layers(n, parts);

    Ok(C49 { layers, window_fano, excluded_quads, quads, mid_blocks, upper_blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::enumerate_subsets;

    fn m(indices: &[u32], n: u8) -> SubsetMask {
        SubsetMask::from_indices(indices, n).unwrap()
    }

    #[test]
    fn classical_window_lines() {
        let f = fano(0).unwrap();
        assert_eq!(f.ground_n(), 7);
        assert_eq!(f.triples()[0], m(&[1, 2, 5], 7));
        assert_eq!(f.triples()[6], m(&[2, 4, 6], 7));
        assert_eq!(f.as_family().len(), 7);
    }

    #[test]
    fn shifted_windows_keep_projective_axioms() {
        for offset in [0u32, 4, 8, 10, 56] {
            let f = fano(offset).unwrap();
            let lines = f.triples();
            for i in 0..7 {
                for j in i + 1..7 {
                    let meet = lines[i].intersection(&lines[j]).unwrap();
                    assert_eq!(meet.cardinality(), 1, "offset={offset} lines {i},{j}");
                }
            }
            for p in offset + 1..=offset + 7 {
                let on = lines.iter().filter(|l| l.contains(p)).count();
                assert_eq!(on, 3, "offset={offset} point {p}");
            }
        }
        assert!(matches!(fano(57), Err(Error::WindowOverflow { offset: 57 })));
    }

    #[test]
    fn shifted_window_at_eight_matches_listing() {
        let f = fano(8).unwrap();
        assert_eq!(f.ground_n(), 15);
        assert_eq!(f.triples()[0], m(&[9, 10, 13], 15));
        assert_eq!(f.window(), m(&[9, 10, 11, 12, 13, 14, 15], 15));
    }

    #[test]
    fn singleton_cone_is_odd_supersets_of_the_pivot() {
        let cone = cone_singleton(5, 2).unwrap();
        assert_eq!(cone.len(), 8);
        assert!(cone.contains(&m(&[1, 2, 3, 4, 5], 5)));

        for n in 2u8..=12 {
            for i in 1..=n as u32 {
                let cone = cone_singleton(n, i).unwrap();
                assert_eq!(cone.len(), 1usize << (n - 2), "n={n} i={i}");
                let direct: Vec<u64> = (0..(1u64 << n))
                    .filter(|w| w.count_ones() % 2 == 1 && w & (1 << (i - 1)) != 0)
                    .collect();
                assert_eq!(cone, SetFamily::from_words(n, direct), "n={n} i={i}");
            }
        }
        assert!(cone_singleton(25, 1).is_err());
        assert!(cone_singleton(5, 6).is_err());
    }

    #[test]
    fn example2_fills_the_upper_odd_layers() {
        let f1 = family_example2(1).unwrap();
        assert_eq!(f1.len(), 4);
        assert!(f1.iter().all(|s| s.cardinality() == 3));

        let f2 = family_example2(2).unwrap();
        assert_eq!(f2.len(), 64); // 2^{n-2} at n=8
        let h = f2.layer_sizes();
        assert_eq!(h.get(&5), Some(&56));
        assert_eq!(h.get(&7), Some(&8));
    }

    #[test]
    fn example3_pins_the_bottom_layer_to_the_pivot() {
        let f = family_example3(1, 1).unwrap();
        assert_eq!(f.len(), 16); // 2^{n-2} at n=6
        let h = f.layer_sizes();
        assert_eq!(h.get(&3), Some(&10));
        assert_eq!(h.get(&5), Some(&6));
        assert!(f.members_of_size(3).iter().all(|s| s.contains(1)));

        for i in 2..=6 {
            assert_eq!(family_example3(1, i).unwrap().len(), 16, "i={i}");
        }
    }

    #[test]
    fn block_sizes_at_k2() {
        let sys = blocks_b(2).unwrap();
        assert_eq!((sys.k(), sys.n(), sys.m()), (2, 15, 7));
        let sizes: Vec<usize> = sys.blocks.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![70, 70, 70, 70, 70, 70, 70, 1176, 196, 8]);
        assert_eq!(sys.merged.len(), 1870);
        assert!(sys.merged.iter().all(|s| s.cardinality() == 7));
    }

    #[test]
    fn cone47_layers_and_seeds_at_k2() {
        let cone = cone47(2).unwrap();
        assert_eq!(
            cone.layers.layer_sizes(),
            vec![(5, 56), (7, 1870), (9, 4585), (11, 1365), (13, 105), (15, 1)]
        );
        assert_eq!(cone.layers.total().len(), 7982);

        // one join step from the lower seed gives exactly the three
        // non-line blocks on top of the seed
        let joined = join_one(&cone.cone_lower).unwrap();
        let expected = cone
            .cone_lower
            .merge(&cone.blocks.blocks[7])
            .unwrap()
            .merge(&cone.blocks.blocks[8])
            .unwrap()
            .merge(&cone.blocks.blocks[9])
            .unwrap();
        assert_eq!(joined, expected);

        // ... so joining the lower seed and adding the line blocks is the
        // same as the lower seed plus all ten blocks
        let lhs = joined.merge(&cone.cone_mid).unwrap();
        let rhs = cone.cone_lower.merge(&cone.blocks.merged).unwrap();
        assert_eq!(lhs, rhs);

        // the 2k+5 slice of the next join step is the closed-form layer
        assert_eq!(&cone.cone_upper, cone.layers.layer(9).unwrap());
    }

    #[test]
    fn delta47_layers_at_k2() {
        let flat = delta47(2).unwrap();
        assert_eq!(
            flat.layer_sizes(),
            vec![(7, 1870), (9, 5005), (11, 1365), (13, 105), (15, 1)]
        );
        assert_eq!(flat.total().len(), 8346);
        assert_eq!(flat.layer(9).unwrap().len(), enumerate_subsets(15, 9).unwrap().count());
    }

    #[test]
    fn c49_layers_at_k2() {
        let c = c49(2).unwrap();
        assert_eq!(c.n(), 17);
        assert_eq!(
            c.layers.layer_sizes(),
            vec![(7, 1590), (9, 15781), (11, 12376), (13, 2380), (15, 136), (17, 1)]
        );
        assert_eq!(c.layers.total().len(), 32264);
        assert_eq!(c.quads.len(), 28);
        assert_eq!(c.mid_blocks.len(), 8);
        assert_eq!(c.upper_blocks.len(), 39);
    }

    #[test]
    fn excluded_quads_complement_to_lines() {
        let c = c49(2).unwrap();
        let window = c.window_fano.window();
        for e in &c.excluded_quads {
            let comp = window.difference(e).unwrap();
            assert!(
                c.window_fano.triples().contains(&comp),
                "complement of {{{e}}} is not a line"
            );
        }
    }

    #[test]
    fn every_line_meets_every_kept_quad() {
        let c = c49(2).unwrap();
        for line in c.window_fano.triples() {
            for quad in c.quads.iter() {
                assert!(!line.is_disjoint_from(&quad).unwrap(), "{line} vs {quad}");
            }
        }
    }

    #[test]
    fn kept_quads_are_exactly_line_extensions() {
        let c = c49(2).unwrap();
        let mut words = Vec::new();
        for line in c.window_fano.triples() {
            let free = c.window_fano.window().difference(line).unwrap();
            for s in free.indices() {
                words.push(line.word() | (1u64 << (s - 1)));
            }
        }
        let extensions = SetFamily::from_words(c.n(), words);
        assert_eq!(extensions, c.quads);
    }
}
