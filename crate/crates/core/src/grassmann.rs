//! Signed monomial arithmetic in the rank-n anticommuting algebra and the
//! bridge from odd set families to commutative subalgebras.
//!
//! A basis monomial is determined by its support I ⊆ [n] (generators taken
//! in ascending index order) and a sign. Generators square to zero and
//! anticommute, so a product either dies on overlapping support or is the
//! union support with a sign given by the parity of the inversions between
//! the two factors. Every claim the rest of the crate makes about families
//! — "commutative means pairwise intersecting" above all — bottoms out in
//! the arithmetic here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counts::{pow2, BigCount};
use crate::error::{Error, Result};
use crate::setcore::{SetFamily, SubsetMask};

/// Ground cap for the random-identity check; products of three dense
/// elements at n=10 already juggle thousands of rational terms.
pub const MAX_IDENTITY_GROUND: u8 = 10;

/// Pairwise product scans refuse families beyond this size. This is a far
/// higher ceiling than any witness check needs, but it still keeps the
/// quadratic cost visible at the call site; the biggest constructed family
/// we verify (ground 17) has 32264 members.
pub const MAX_PAIR_SCAN_FAMILY: usize = 40_000;

/// A basis monomial with sign: coeff ∈ {-1, 0, +1} times v_I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedMonomial {
    coeff: i8,
    support: SubsetMask,
}

impl SignedMonomial {
    pub fn new(coeff: i8, support: SubsetMask) -> Self {
        assert!(coeff == -1 || coeff == 0 || coeff == 1, "coeff must be -1, 0 or +1");
        SignedMonomial { coeff, support }
    }

    /// +v_I.
    pub fn positive(support: SubsetMask) -> Self {
        SignedMonomial { coeff: 1, support }
    }

    pub fn zero(n: u8) -> Result<Self> {
        Ok(SignedMonomial { coeff: 0, support: SubsetMask::empty(n)? })
    }

    pub fn coeff(&self) -> i8 {
        self.coeff
    }

    pub fn support(&self) -> SubsetMask {
        self.support
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }
}

/// Parity of inversions between two disjoint supports: the number of pairs
/// (i ∈ a, j ∈ b) with i > j, taken mod 2. This is the sign picked up when
/// the concatenation "a then b" is sorted into ascending order.
fn inversion_parity(a: u64, b: u64) -> u32 {
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (b & ((1u64 << i) - 1)).count_ones();
    }
    inversions % 2
}

/// Product of two signed monomials: zero on overlapping support, otherwise
/// the union support with the inversion sign.
pub fn monomial_product(a: &SignedMonomial, b: &SignedMonomial) -> Result<SignedMonomial> {
    let support = a.support.union(&b.support)?; // also checks grounds
    if a.coeff == 0 || b.coeff == 0 {
        return SignedMonomial::zero(support.ground_n());
    }
    if !a.support.is_disjoint_from(&b.support)? {
        return SignedMonomial::zero(support.ground_n());
    }
    let sign = if inversion_parity(a.support.word(), b.support.word()) == 0 { 1 } else { -1 };
    Ok(SignedMonomial { coeff: a.coeff * b.coeff * sign, support })
}

/// How v_I v_J relates to v_J v_I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRelation {
    /// Both products are zero (supports overlap or a factor is zero).
    ZeroProduct,
    /// v_I v_J = sign · v_J v_I with both products nonzero.
    Sign(i8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommuteCheck {
    pub commute: bool,
    pub relation: SignRelation,
}

/// Decide whether v_I and v_J commute by actually multiplying both ways —
/// this function is deliberately *not* a parity formula, so that the tests
/// comparing it against |I||J| mod 2 check real arithmetic.
pub fn commute_check(i: &SubsetMask, j: &SubsetMask) -> Result<CommuteCheck> {
    let vi = SignedMonomial::positive(*i);
    let vj = SignedMonomial::positive(*j);
    let ij = monomial_product(&vi, &vj)?;
    let ji = monomial_product(&vj, &vi)?;
    let relation = if ij.is_zero() {
        SignRelation::ZeroProduct
    } else {
        SignRelation::Sign(ij.coeff * ji.coeff)
    };
    Ok(CommuteCheck { commute: ij == ji, relation })
}

// ---------------------------------------------------------------------------
// general elements with exact rational coefficients

/// A finite rational combination of basis monomials over a fixed ground.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    ground_n: u8,
    /// support word → nonzero coefficient
    terms: BTreeMap<u64, BigRational>,
}

impl GradedElement {
    pub fn zero(n: u8) -> Result<Self> {
        // reuse the mask constructor's ground validation
        let _ = SubsetMask::empty(n)?;
        Ok(GradedElement { ground_n: n, terms: BTreeMap::new() })
    }

    pub fn from_monomial(m: &SignedMonomial) -> Self {
        let mut el = GradedElement { ground_n: m.support.ground_n(), terms: BTreeMap::new() };
        if m.coeff != 0 {
            el.terms.insert(m.support.word(), BigRational::from_integer(BigInt::from(m.coeff)));
        }
        el
    }

    pub fn ground_n(&self) -> u8 {
        self.ground_n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, support: u64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(support) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn insert_term(&mut self, support: SubsetMask, coeff: BigRational) -> Result<()> {
        if support.ground_n() != self.ground_n {
            return Err(Error::GroundMismatch { left: self.ground_n, right: support.ground_n() });
        }
        self.add_term(support.word(), coeff);
        Ok(())
    }

    fn check_ground(&self, other: &GradedElement) -> Result<()> {
        if self.ground_n != other.ground_n {
            return Err(Error::GroundMismatch { left: self.ground_n, right: other.ground_n });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_ground(other)?;
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_ground(other)?;
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_ground(other)?;
        let mut out = GradedElement { ground_n: self.ground_n, terms: BTreeMap::new() };
        for (&wa, ca) in &self.terms {
            for (&wb, cb) in &other.terms {
                if wa & wb != 0 {
                    continue; // shared generator squares to zero
                }
                let sign = if inversion_parity(wa, wb) == 0 { 1 } else { -1 };
                out.add_term(wa | wb, ca * cb * BigRational::from_integer(BigInt::from(sign)));
            }
        }
        Ok(out)
    }

    /// xy − yx.
    pub fn commutator(&self, other: &GradedElement) -> Result<GradedElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Terms whose support has even cardinality.
    pub fn even_part(&self) -> GradedElement {
        self.filter_parity(0)
    }

    /// Terms whose support has odd cardinality.
    pub fn odd_part(&self) -> GradedElement {
        self.filter_parity(1)
    }

    fn filter_parity(&self, parity: u32) -> GradedElement {
        GradedElement {
            ground_n: self.ground_n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.count_ones() % 2 == parity)
                .map(|(&w, c)| (w, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for GradedElement {
    /// Signed monomial sum, e.g. `+v{1,2} -v{3,4} +1/2 v{5}`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&w, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            let support = SubsetMask::from_word(w, self.ground_n);
            if support.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}v{{{support}}}")?;
            } else {
                write!(f, "{sign}{mag} v{{{support}}}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// the identity and family-bridge checks

fn random_element(n: u8, rng: &mut ChaCha8Rng) -> GradedElement {
    let mut el = GradedElement::zero(n).expect("validated ground");
    let terms = rng.gen_range(3..=8);
    for _ in 0..terms {
        let support = rng.gen_range(0..(1u64 << n));
        let num: i64 = rng.gen_range(-3..=3);
        let den: i64 = rng.gen_range(1..=3);
        el.add_term(support, BigRational::new(BigInt::from(num), BigInt::from(den)));
    }
    el
}

/// Draw random triples and check [[x,y],z] = 0 exactly. Products of
/// commutators land in the even part, which is central, so any failure
/// means the sign arithmetic is broken.
pub fn verify_metabelian_identity(n: u8, trials: u32, seed: u64) -> Result<bool> {
    if n > MAX_IDENTITY_GROUND {
        return Err(Error::GroundTooLarge {
            ground_n: n as u32,
            max: MAX_IDENTITY_GROUND as u32,
        });
    }
    let _ = SubsetMask::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_element(n, &mut rng);
        let y = random_element(n, &mut rng);
        let z = random_element(n, &mut rng);
        let inner = x.commutator(&y)?;
        if !inner.commutator(&z)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the even part plus the span of the family's monomials:
/// 2^{n-1} + |T|. Only defined for odd families, where the sum is direct.
pub fn family_to_dimension(family: &SetFamily) -> Result<BigCount> {
    if let Some(even) = family.first_even_member() {
        return Err(Error::EvenMemberPresent { member: even.to_string() });
    }
    Ok(pow2(family.ground_n() as u64 - 1) + BigCount::from(family.len()))
}

/// Validate the bridge: across every pair of members, the monomials
/// commute exactly when the sets intersect. Each pair is decided by real
/// two-sided products, not by the parity shortcut.
pub fn subalgebra_commutes_iff_intersecting(family: &SetFamily) -> Result<bool> {
    if let Some(even) = family.first_even_member() {
        return Err(Error::EvenMemberPresent { member: even.to_string() });
    }
    if family.len() > MAX_PAIR_SCAN_FAMILY {
        return Err(Error::FamilyTooLarge { size: family.len(), max: MAX_PAIR_SCAN_FAMILY });
    }
    let n = family.ground_n();
    let words = family.words();
    let ok = words.par_iter().enumerate().all(|(idx, &wa)| {
        let a = SubsetMask::from_word(wa, n);
        words[idx..].iter().all(|&wb| {
            let b = SubsetMask::from_word(wb, n);
            let check = commute_check(&a, &b).expect("same ground");
            check.commute == (wa & wb != 0)
        })
    });
    Ok(ok)
}
