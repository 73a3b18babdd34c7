//! Closed-form cardinalities, ratios, and sequence tables in exact
//! arithmetic. Nothing here enumerates a family; every figure comes from
//! binomial identities, so these functions work far beyond the ground sizes
//! the construction code can materialize — they are the independent side of
//! the fast/slow cross-checks.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact non-negative integer count.
pub type BigCount = BigUint;
/// Exact rational ratio, always reduced.
pub type BigRatio = BigRational;

/// Exact binomial coefficient; zero when `r > n`.
pub fn binom(n: u64, r: u64) -> BigCount {
    if r > n {
        return BigCount::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigCount::one();
    for i in 0..r {
        // exact at every step: the running product of i+1 consecutive
        // integers is divisible by (i+1)!
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

pub fn pow2(e: u64) -> BigCount {
    BigCount::one() << usize::try_from(e).expect("exponent fits usize")
}

/// Σ_{odd j ≥ from} binom(n, j), with `from` odd: the count of all odd
/// subsets of `[n]` of size at least `from`. Computed as 2^{n-1} minus the
/// short odd prefix, stepping binomials incrementally.
pub fn odd_layer_tail(n: u64, from: u64) -> BigCount {
    assert!(from % 2 == 1, "tail must start at an odd size");
    if from > n {
        return BigCount::zero();
    }
    let mut prefix = BigCount::zero();
    let mut b = BigCount::from(n); // binom(n, 1)
    let mut j = 1u64;
    while j < from {
        prefix += &b;
        // binom(n, j+2) from binom(n, j)
        b = b * BigCount::from(n - j) * BigCount::from(n - j - 1)
            / BigCount::from(j + 1)
            / BigCount::from(j + 2);
        j += 2;
    }
    pow2(n - 1) - prefix
}

/// |Cone({i})| over [n]: 2^{n-2}.
pub fn count_cone_singleton(n: u64) -> BigCount {
    assert!(n >= 2, "ground size must be at least 2");
    pow2(n - 2)
}

/// The m-uniform block system over n = 4k+7, m = 2k+3:
/// 7·binom(4k,2k) + 21·binom(4k,2k+1) + 7·binom(4k,2k+2) + binom(4k,2k+3).
pub fn count_am(k: u64) -> BigCount {
    assert!(k >= 2, "k must be at least 2");
    let low = 4 * k;
    BigCount::from(7u32) * binom(low, 2 * k)
        + BigCount::from(21u32) * binom(low, 2 * k + 1)
        + BigCount::from(7u32) * binom(low, 2 * k + 2)
        + binom(low, 2 * k + 3)
}

/// Erdős–Ko–Rado maximum for intersecting (2k+3)-set families over
/// [4k+7]: binom(4k+6, 2k+2).
pub fn ekr_bound(k: u64) -> BigCount {
    assert!(k >= 2, "k must be at least 2");
    binom(4 * k + 6, 2 * k + 2)
}

/// Per-layer counts of a layered family, ascending by cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerCounts {
    pub n: u64,
    /// (cardinality, member count) pairs, ascending.
    pub layers: Vec<(u64, BigCount)>,
    pub total: BigCount,
}

impl LayerCounts {
    fn new(n: u64, layers: Vec<(u64, BigCount)>) -> Self {
        let total = layers.iter().map(|(_, c)| c).sum();
        LayerCounts { n, layers, total }
    }
}

/// Append one entry per full odd layer from `from` up to `n`.
fn push_full_tail(layers: &mut Vec<(u64, BigCount)>, n: u64, from: u64) {
    let mut j = from;
    let mut b = binom(n, j);
    while j <= n {
        layers.push((j, b.clone()));
        if j + 2 > n {
            break;
        }
        b = b * BigCount::from(n - j) * BigCount::from(n - j - 1)
            / BigCount::from(j + 1)
            / BigCount::from(j + 2);
        j += 2;
    }
}

/// Layer counts of the cone closure over n = 4k+7 seeded at sizes 2k+1 and
/// 2k+3: binom(4k,2k+1), the block-system count, the six-term 2k+5 layer,
/// then full odd layers from 2k+7.
pub fn count_cone47(k: u64) -> LayerCounts {
    assert!(k >= 2, "k must be at least 2");
    let n = 4 * k + 7;
    let low = 4 * k;
    let mid_upper: BigCount = (0..=5u64)
        .map(|i| binom(7, i) * binom(low, 2 * k + 5 - i))
        .sum();
    let mut layers = vec![
        (2 * k + 1, binom(low, 2 * k + 1)),
        (2 * k + 3, count_am(k)),
        (2 * k + 5, mid_upper),
    ];
    push_full_tail(&mut layers, n, 2 * k + 7);
    LayerCounts::new(n, layers)
}

/// Layer counts of the flat system over n = 4k+7: the block system at
/// 2k+3, then every odd layer from 2k+5 full.
pub fn count_delta47(k: u64) -> LayerCounts {
    assert!(k >= 2, "k must be at least 2");
    let n = 4 * k + 7;
    let mut layers = vec![(2 * k + 3, count_am(k))];
    push_full_tail(&mut layers, n, 2 * k + 5);
    LayerCounts::new(n, layers)
}

/// Layer counts of the windowed system over n = 4k+9:
/// 7·binom(4k+2,2k) + binom(4k+2,2k+3) at size 2k+3; the six block
/// signatures at size 2k+5; full odd layers from 2k+7.
pub fn count_c49(k: u64) -> LayerCounts {
    assert!(k >= 2, "k must be at least 2");
    let n = 4 * k + 9;
    let low = 4 * k + 2;
    let mid = BigCount::from(7u32) * binom(low, 2 * k) + binom(low, 2 * k + 3);
    let upper = binom(low, 2 * k + 5)
        + BigCount::from(7u32) * binom(low, 2 * k + 4)
        + BigCount::from(21u32) * binom(low, 2 * k + 3)
        + BigCount::from(7u32) * binom(low, 2 * k + 2)
        + BigCount::from(28u32) * binom(low, 2 * k + 1)
        + BigCount::from(21u32) * binom(low, 2 * k);
    let mut layers = vec![(2 * k + 3, mid), (2 * k + 5, upper)];
    push_full_tail(&mut layers, n, 2 * k + 7);
    LayerCounts::new(n, layers)
}

/// count / 2^{n-2}, exact.
pub fn ratio_to_quarter_space(count: &BigCount, n: u64) -> BigRatio {
    assert!(n >= 2);
    BigRatio::new(
        BigInt::from(count.clone()),
        BigInt::from(pow2(n - 2)),
    )
}

/// Render a non-negative rational to 5 significant figures, rounding
/// half-to-even — the precision the reference constants are quoted at.
pub fn to_decimal_5sf(r: &BigRatio) -> String {
    const FIGURES: i64 = 5;
    assert!(!r.is_negative(), "rendering is defined for non-negative ratios");
    if r.is_zero() {
        return "0.0000".into();
    }
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();

    // decimal exponent e with 10^e ≤ r < 10^{e+1}
    let ten = BigUint::from(10u32);
    let mut e: i64 = 0;
    if num >= den {
        let mut scaled = den.clone() * &ten;
        while num >= scaled {
            scaled *= &ten;
            e += 1;
        }
    } else {
        let mut scaled = num.clone() * &ten;
        e = -1;
        while scaled < den {
            scaled *= &ten;
            e -= 1;
        }
    }

    // digits = round_half_even(r · 10^{FIGURES-1-e})
    let shift = FIGURES - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num * ten.pow(shift as u32), den)
    } else {
        (num, den * ten.pow((-shift) as u32))
    };
    let (mut q, rem) = scaled_num.div_rem(&scaled_den);
    let twice = &rem * 2u32;
    if twice > scaled_den || (twice == scaled_den && q.is_odd()) {
        q += 1u32;
    }
    let mut digits = q.to_string();
    if digits.len() as i64 > FIGURES {
        // rounding rippled past the leading digit (e.g. 99999.6)
        digits.truncate(FIGURES as usize);
        e += 1;
    }
    debug_assert_eq!(digits.len() as i64, FIGURES);

    if e >= FIGURES - 1 {
        // integer with possible trailing zeros
        let mut s = digits;
        s.push_str(&"0".repeat((e - (FIGURES - 1)) as usize));
        s
    } else if e >= 0 {
        let point = (e + 1) as usize;
        format!("{}.{}", &digits[..point], &digits[point..])
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    }
}

/// One row of the sequence table: the three family sizes at a common k and
/// their ratios to 2^{n-2}, with comparison and monotonicity flags.
#[derive(Debug, Clone)]
pub struct SequenceRow {
    pub k: u64,
    /// n = 4k+7 (cone and flat systems)
    pub n47: u64,
    pub cone_total: BigCount,
    pub s_ratio: BigRatio,
    pub s_text: String,
    pub s_below_one: bool,
    /// strictly greater than the previous row's s; None on the first row
    pub s_increased: Option<bool>,
    pub delta_total: BigCount,
    pub d_ratio: BigRatio,
    pub d_text: String,
    pub d_above_one: bool,
    pub d_decreased: Option<bool>,
    /// n = 4k+9 (windowed system)
    pub n49: u64,
    pub c_total: BigCount,
    pub kn_ratio: BigRatio,
    pub kn_text: String,
    pub kn_below_one: bool,
    pub kn_increased: Option<bool>,
}

/// The full table for k = 2..=k_max. Monotonicity is reported, not
/// enforced: any violation shows up as a false flag on the offending row.
pub fn sequences(k_max: u64) -> Vec<SequenceRow> {
    assert!(k_max >= 2, "k_max must be at least 2");
    let mut rows: Vec<SequenceRow> = Vec::with_capacity((k_max - 1) as usize);
    for k in 2..=k_max {
        let n47 = 4 * k + 7;
        let n49 = 4 * k + 9;
        let cone = count_cone47(k);
        let delta = count_delta47(k);
        let c = count_c49(k);
        let s_ratio = ratio_to_quarter_space(&cone.total, n47);
        let d_ratio = ratio_to_quarter_space(&delta.total, n47);
        let kn_ratio = ratio_to_quarter_space(&c.total, n49);
        let prev = rows.last();
        let row = SequenceRow {
            k,
            n47,
            s_text: to_decimal_5sf(&s_ratio),
            s_below_one: s_ratio < BigRatio::one(),
            s_increased: prev.map(|p| s_ratio > p.s_ratio),
            d_text: to_decimal_5sf(&d_ratio),
            d_above_one: d_ratio > BigRatio::one(),
            d_decreased: prev.map(|p| d_ratio < p.d_ratio),
            n49,
            kn_text: to_decimal_5sf(&kn_ratio),
            kn_below_one: kn_ratio < BigRatio::one(),
            kn_increased: prev.map(|p| kn_ratio > p.kn_ratio),
            cone_total: cone.total,
            delta_total: delta.total,
            c_total: c.total,
            s_ratio,
            d_ratio,
            kn_ratio,
        };
        rows.push(row);
    }
    rows
}

/// The probe for the limiting ratio 36/64: the four bare binomial ratios
/// binom(4k, 2k+j)/binom(4k+6, 2k+2) for j = 0..=3 (each tends to 1/64),
/// and the block-system count over the bound (their 7/21/7/1-weighted sum,
/// which tends to 36/64 = 0.5625).
pub fn am_over_ekr_components(k: u64) -> (Vec<BigRatio>, BigRatio) {
    let bound = BigInt::from(ekr_bound(k));
    let low = 4 * k;
    let ratios: Vec<BigRatio> = (0..4)
        .map(|j| BigRatio::new(BigInt::from(binom(low, 2 * k + j)), bound.clone()))
        .collect();
    let weights = [7u32, 21, 7, 1];
    let total = ratios
        .iter()
        .zip(weights)
        .map(|(r, w)| r * BigRatio::from(BigInt::from(w)))
        .sum();
    (ratios, total)
}

/// Convenience f64 view for diagnostics only; all assertions use exact values.
pub fn ratio_to_f64(r: &BigRatio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
