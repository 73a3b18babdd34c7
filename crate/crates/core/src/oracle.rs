//! Independent ground truth for the fast paths: exhaustive family-space
//! search on tiny grounds, a quantifier-literal closure check, seeded
//! random agreement trials, and closed-form versus enumerated layer counts.
//!
//! Everything here is deliberately naive. The value is that these routines
//! share no shortcuts with the code they validate.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{c49, cone47, delta47};
use crate::counts::{count_c49, count_cone47, count_delta47, LayerCounts};
use crate::error::{Error, Result};
use crate::predicates::{is_algebraic_system, verify_macs};
use crate::setcore::{cone_closure, SetFamily};

/// Largest ground for the full family-space search: 2^16 candidate
/// subfamilies at n = 5 is the last comfortable size.
pub const MAX_EXHAUSTIVE_MACS_GROUND: u8 = 5;

/// Largest ground for the all-even-subsets closure scan.
pub const MAX_SLOW_GROUND: u8 = 8;

/// Default seed for random agreement trials, so reruns compare bytes.
pub const DEFAULT_ORACLE_SEED: u64 = 271828;

/// One fast-versus-slow comparison, with both verdicts rendered as text.
#[derive(Debug, Clone)]
pub struct OracleReport {
    /// What was compared, with every parameter (including any seed).
    pub instance: String,
    /// Verdict of the engine under test.
    pub fast_result: String,
    /// Verdict of the independent reference computation.
    pub slow_result: String,
    pub agree: bool,
    /// Wall-clock cost; diagnostic only, never part of comparable output.
    pub elapsed_ms: u128,
}

impl OracleReport {
    fn new(instance: String, fast_result: String, slow_result: String, start: Instant) -> Self {
        let agree = fast_result == slow_result;
        OracleReport { instance, fast_result, slow_result, agree, elapsed_ms: start.elapsed().as_millis() }
    }
}

/// Every subfamily of the odd subsets of `[n]` that passes all three
/// property checks, in canonical order (by size, then member words).
///
/// Candidates with a disjoint pair are pruned by bitmask before the full
/// verification runs; the candidate space is partitioned across workers
/// and survivors are re-sorted, so the output order is deterministic.
pub fn enumerate_all_macs(n: u8) -> Result<Vec<SetFamily>> {
    if n > MAX_EXHAUSTIVE_MACS_GROUND {
        return Err(Error::GroundTooLargeForExhaustion { ground_n: n, max: MAX_EXHAUSTIVE_MACS_GROUND });
    }
    let odd: Vec<u64> = (1..(1u64 << n)).filter(|w| w.count_ones() % 2 == 1).collect();
    let t = odd.len();
    debug_assert!(t <= 16);
    let disjoint_from: Vec<u32> = (0..t)
        .map(|i| (0..t).filter(|&j| odd[i] & odd[j] == 0).fold(0u32, |m, j| m | (1 << j)))
        .collect();

    let survivors: Vec<u32> = (1u32..(1u32 << t))
        .into_par_iter()
        .filter(|&pick| {
            let mut rest = pick;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if disjoint_from[i] & pick != 0 {
                    return false;
                }
            }
            true
        })
        .collect();

    let mut found = Vec::new();
    for pick in survivors {
        let words: Vec<u64> =
            (0..t).filter(|&i| pick & (1 << i) != 0).map(|i| odd[i]).collect();
        let family = SetFamily::from_words(n, words);
        if verify_macs(&family)?.all_hold() {
            found.push(family);
        }
    }
    found.sort_by(|a, b| (a.len(), a.words()).cmp(&(b.len(), b.words())));
    Ok(found)
}

/// Closure under unions with disjoint even sets, checked from the raw
/// definition: every even-sized subset of each member's complement is
/// tried, not just the 2-subsets the fast predicate reduces to.
pub fn slow_algebraic_check(family: &SetFamily) -> Result<bool> {
    let n = family.ground_n();
    if n > MAX_SLOW_GROUND {
        return Err(Error::GroundTooLargeForExhaustion { ground_n: n, max: MAX_SLOW_GROUND });
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(even) = family.first_even_member() {
        return Err(Error::EvenMemberPresent { member: even.to_string() });
    }
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    for member in family.iter() {
        let free = full & !member.word();
        let mut sub = free;
        loop {
            if sub != 0 && sub.count_ones() % 2 == 0 && !family.contains_word(member.word() | sub)
            {
                return Ok(false);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    Ok(true)
}

/// Run the fast and slow closure checks against the same random families
/// and report whether every verdict matched.
///
/// Three quarters of the trials draw a bare random odd family (usually not
/// closed); the rest close the draw first, exercising the `true` branch.
pub fn compare_algebraic_checkers(n: u8, trials: u32, seed: u64) -> Result<OracleReport> {
    if !(2..=MAX_SLOW_GROUND).contains(&n) {
        return Err(Error::InvalidParameter {
            what: "ground size",
            details: format!("agreement trials need 2 <= n <= {MAX_SLOW_GROUND}, got {n}"),
        });
    }
    let start = Instant::now();
    let odd: Vec<u64> = (1..(1u64 << n)).filter(|w| w.count_ones() % 2 == 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fast_closed = 0u32;
    let mut slow_closed = 0u32;
    let mut first_mismatch: Option<(u32, String)> = None;
    for trial in 0..trials {
        let size = 1 + (trial as usize % odd.len().min(12));
        let picks = rand::seq::index::sample(&mut rng, odd.len(), size);
        let mut family =
            SetFamily::from_words(n, picks.iter().map(|i| odd[i]).collect::<Vec<_>>());
        if trial % 4 == 3 {
            family = cone_closure(&family)?;
        }
        let fast = is_algebraic_system(&family)?.is_none();
        let slow = slow_algebraic_check(&family)?;
        if fast {
            fast_closed += 1;
        }
        if slow {
            slow_closed += 1;
        }
        if fast != slow && first_mismatch.is_none() {
            let members: Vec<String> = family.iter().map(|m| format!("{{{m}}}")).collect();
            first_mismatch = Some((trial, members.join(" ")));
        }
    }
    let render = |closed: u32| match &first_mismatch {
        None => format!("{closed} of {trials} families closed"),
        Some((trial, family)) => {
            format!("{closed} of {trials} families closed; first mismatch at trial {trial}: {family}")
        }
    };
    Ok(OracleReport::new(
        format!("closure agreement over [{n}]: {trials} trials, seed {seed}"),
        render(fast_closed),
        render(slow_closed),
        start,
    ))
}

fn render_layer_counts(counts: &LayerCounts) -> String {
    let layers: Vec<String> =
        counts.layers.iter().map(|(card, c)| format!("{card}:{c}")).collect();
    format!("{} | total {}", layers.join(" "), counts.total)
}

fn render_layer_sizes(n: u64, sizes: &[(u32, usize)]) -> String {
    let layers: Vec<String> = sizes.iter().map(|(card, c)| format!("{card}:{c}")).collect();
    let total: usize = sizes.iter().map(|(_, c)| c).sum();
    let _ = n;
    format!("{} | total {}", layers.join(" "), total)
}

/// Materialize the three layered constructions for each `k` and compare
/// every layer size against the closed-form counts.
pub fn crosscheck_counts(k_set: &[u64]) -> Result<Vec<OracleReport>> {
    let mut reports = Vec::with_capacity(3 * k_set.len());
    for &k in k_set {
        let start = Instant::now();
        let cone = cone47(k)?;
        reports.push(OracleReport::new(
            format!("cone47 k={k}: closed-form vs enumerated layer sizes"),
            render_layer_counts(&count_cone47(k)),
            render_layer_sizes(4 * k + 7, &cone.layers.layer_sizes()),
            start,
        ));

        let start = Instant::now();
        let flat = delta47(k)?;
        reports.push(OracleReport::new(
            format!("delta47 k={k}: closed-form vs enumerated layer sizes"),
            render_layer_counts(&count_delta47(k)),
            render_layer_sizes(4 * k + 7, &flat.layer_sizes()),
            start,
        ));

        let start = Instant::now();
        let windowed = c49(k)?;
        reports.push(OracleReport::new(
            format!("c49 k={k}: closed-form vs enumerated layer sizes"),
            render_layer_counts(&count_c49(k)),
            render_layer_sizes(4 * k + 9, &windowed.layers.layer_sizes()),
            start,
        ));
    }
    Ok(reports)
}
