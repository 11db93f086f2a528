//! Weights on the compact torus of SO(4), irreducible labels for SO(4) and for
//! its two U(2) subgroups, and multiplicity tables over bounded regions.
//!
//! Coordinates are always integers in the (e₁, e₂) basis. Half-integral spins
//! never appear explicitly: an SO(4) label `(a, b)` carries the spins
//! `(a ± b) / 2` implicitly, and every formula below is written in terms of
//! `a + b` and `a - b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer weight `x·e₁ + y·e₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight {
    pub x: i64,
    pub y: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { x: 0, y: 0 };
    /// α₁ = e₁ + e₂, also the differential of μ₁.
    pub const ALPHA1: Weight = Weight { x: 1, y: 1 };
    /// α₂ = e₁ − e₂.
    pub const ALPHA2: Weight = Weight { x: 1, y: -1 };
    /// χ₁, weight 2e₁.
    pub const CHI1: Weight = Weight { x: 2, y: 0 };
    /// χ₂, weight 2e₂.
    pub const CHI2: Weight = Weight { x: 0, y: 2 };
    /// Highest weight 3(e₁ + e₂) of the minimal K-type of A_q.
    pub const LAMBDA: Weight = Weight { x: 3, y: 3 };

    pub const fn new(x: i64, y: i64) -> Self {
        Weight { x, y }
    }

    /// `max(|x|, |y|)`; the region norm used by every table.
    pub fn norm(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn scale(self, k: i64) -> Self {
        Weight::new(self.x * k, self.y * k)
    }

    pub fn dot(self, other: Weight) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(self, other: Weight) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.x, -self.y)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.end()
    }
}

/// The outer automorphism changing the sign of e₂.
pub trait E2Flip {
    fn e2_flip(&self) -> Self;
}

impl E2Flip for Weight {
    fn e2_flip(&self) -> Self {
        Weight::new(self.x, -self.y)
    }
}

/// Irreducible representation of SO(4) with highest weight `a·e₁ + b·e₂`,
/// `a ≥ |b|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SO4Irrep {
    a: i64,
    b: i64,
}

impl SO4Irrep {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < b.abs() {
            return Err(Error::NotDominant {
                label: format!("SO(4) ({a},{b})"),
                reason: "requires a >= |b|",
            });
        }
        Ok(SO4Irrep { a, b })
    }

    pub fn from_weight(w: Weight) -> Result<Self> {
        Self::new(w.x, w.y)
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn highest_weight(self) -> Weight {
        Weight::new(self.a, self.b)
    }

    /// `2·j₊ = a + b`.
    pub fn twice_j_plus(self) -> i64 {
        self.a + self.b
    }

    /// `2·j₋ = a − b`.
    pub fn twice_j_minus(self) -> i64 {
        self.a - self.b
    }
}

impl E2Flip for SO4Irrep {
    fn e2_flip(&self) -> Self {
        SO4Irrep {
            a: self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for SO4Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Weyl dimension `(2j₊ + 1)(2j₋ + 1)`.
pub fn so4_dim(r: SO4Irrep) -> u64 {
    ((r.twice_j_plus() + 1) * (r.twice_j_minus() + 1)) as u64
}

/// Full weight multiplicities of an SO(4) irrep: the sum of the α₁-string of
/// length `2j₊ + 1` and the α₂-string of length `2j₋ + 1`.
pub fn so4_weight_table(r: SO4Irrep) -> MultiplicityTable<Weight> {
    let hw = r.highest_weight();
    let mut table = MultiplicityTable::new(r.a as u32);
    for p in 0..=r.twice_j_plus() {
        for q in 0..=r.twice_j_minus() {
            table.add(hw - Weight::ALPHA1.scale(p) - Weight::ALPHA2.scale(q), 1);
        }
    }
    table
}

/// Which U(2) ⊂ SO(4).
///
/// `V1` is K ∩ H₁ = K ∩ H₁′ (positive root α₁, center along α₂); `V2` is
/// K ∩ H₂ = K ∩ H₂′ = K ∩ L (positive root α₂, center along α₁).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum U2Variant {
    V1,
    V2,
}

impl U2Variant {
    pub const ALL: [U2Variant; 2] = [U2Variant::V1, U2Variant::V2];

    /// Positive root of the variant.
    pub fn root(self) -> Weight {
        match self {
            U2Variant::V1 => Weight::ALPHA1,
            U2Variant::V2 => Weight::ALPHA2,
        }
    }

    /// Direction pairing to the central character.
    fn central(self) -> Weight {
        match self {
            U2Variant::V1 => Weight::ALPHA2,
            U2Variant::V2 => Weight::ALPHA1,
        }
    }
}

impl E2Flip for U2Variant {
    fn e2_flip(&self) -> Self {
        match self {
            U2Variant::V1 => U2Variant::V2,
            U2Variant::V2 => U2Variant::V1,
        }
    }
}

impl fmt::Display for U2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            U2Variant::V1 => "V1",
            U2Variant::V2 => "V2",
        })
    }
}

/// Irreducible representation of one of the two U(2) subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct U2Irrep {
    variant: U2Variant,
    hw: Weight,
}

impl U2Irrep {
    pub fn new(variant: U2Variant, hw: Weight) -> Result<Self> {
        if variant.root().dot(hw) < 0 {
            return Err(Error::NotDominant {
                label: format!("U(2) {variant} {hw}"),
                reason: match variant {
                    U2Variant::V1 => "requires x + y >= 0",
                    U2Variant::V2 => "requires x - y >= 0",
                },
            });
        }
        Ok(U2Irrep { variant, hw })
    }

    /// Shorthand for a V1 label; panics on a non-dominant weight.
    pub fn v1(x: i64, y: i64) -> Self {
        Self::new(U2Variant::V1, Weight::new(x, y)).expect("V1-dominant weight")
    }

    /// Shorthand for a V2 label; panics on a non-dominant weight.
    pub fn v2(x: i64, y: i64) -> Self {
        Self::new(U2Variant::V2, Weight::new(x, y)).expect("V2-dominant weight")
    }

    pub fn variant(self) -> U2Variant {
        self.variant
    }

    pub fn hw(self) -> Weight {
        self.hw
    }

    pub fn twice_spin(self) -> i64 {
        self.variant.root().dot(self.hw)
    }

    /// Central character, constant along the weight string.
    pub fn center(self) -> i64 {
        self.variant.central().dot(self.hw)
    }

    pub fn dim(self) -> u64 {
        (self.twice_spin() + 1) as u64
    }
}

impl E2Flip for U2Irrep {
    fn e2_flip(&self) -> Self {
        U2Irrep {
            variant: self.variant.e2_flip(),
            hw: self.hw.e2_flip(),
        }
    }
}

impl fmt::Display for U2Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.variant, self.hw)
    }
}

impl Serialize for U2Irrep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("U2Irrep", 2)?;
        st.serialize_field("variant", &self.variant)?;
        st.serialize_field("hw", &self.hw)?;
        st.end()
    }
}

/// Weights of a U(2) irrep, from the highest weight down.
pub fn u2_weight_string(r: U2Irrep) -> Vec<Weight> {
    (0..=r.twice_spin())
        .map(|m| r.hw - r.variant.root().scale(m))
        .collect()
}

/// Keys a [`MultiplicityTable`] may be indexed by.
pub trait TableKey: Ord + Copy + fmt::Display {
    /// Highest weight (or weight) carried by the key.
    fn hw(&self) -> Weight;

    fn norm(&self) -> i64 {
        self.hw().norm()
    }
}

impl TableKey for Weight {
    fn hw(&self) -> Weight {
        *self
    }
}

impl TableKey for U2Irrep {
    fn hw(&self) -> Weight {
        self.hw
    }
}

/// Exact multiplicities on the region `norm ≤ region`.
///
/// Every key inside the region not present in `entries` has multiplicity 0;
/// keys outside the region are never stored, and zero entries are never
/// stored either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable<K: TableKey> {
    region: u32,
    entries: BTreeMap<K, u64>,
}

impl<K: TableKey> MultiplicityTable<K> {
    pub fn new(region: u32) -> Self {
        MultiplicityTable {
            region,
            entries: BTreeMap::new(),
        }
    }

    pub fn region(&self) -> u32 {
        self.region
    }

    pub fn in_region(&self, key: &K) -> bool {
        key.norm() <= self.region as i64
    }

    pub fn get(&self, key: &K) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    /// Adds `mult` at `key`; keys outside the region are dropped.
    pub fn add(&mut self, key: K, mult: u64) {
        if mult == 0 || !self.in_region(&key) {
            return;
        }
        *self.entries.entry(key).or_insert(0) += mult;
    }

    /// Subtracts `mult` at `key`, returning the remaining multiplicity, or
    /// `None` (leaving the table untouched) if that would go negative.
    pub fn checked_sub(&mut self, key: K, mult: u64) -> Option<u64> {
        if mult == 0 {
            return Some(self.get(&key));
        }
        let current = self.get(&key);
        let rest = current.checked_sub(mult)?;
        if rest == 0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, rest);
        }
        Some(rest)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &u64)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// Pointwise sum; the result lives on the smaller of the two regions.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = Self::new(self.region.min(other.region));
        for (k, m) in self.iter().chain(other.iter()) {
            out.add(*k, *m);
        }
        out
    }

    /// `k` copies of the table.
    pub fn times(&self, k: u64) -> Self {
        let mut out = Self::new(self.region);
        for (key, m) in self.iter() {
            out.add(*key, m * k);
        }
        out
    }

    /// Same entries cut down to a smaller region.
    pub fn restricted_to(&self, region: u32) -> Self {
        let mut out = Self::new(region.min(self.region));
        for (k, m) in self.iter() {
            out.add(*k, *m);
        }
        out
    }
}

impl<K: TableKey> FromIterator<(K, u64)> for MultiplicityTable<K> {
    /// Collects into a table whose region is the largest key norm.
    fn from_iter<I: IntoIterator<Item = (K, u64)>>(iter: I) -> Self {
        let items: Vec<_> = iter.into_iter().collect();
        let region = items.iter().map(|(k, _)| k.norm()).max().unwrap_or(0);
        let mut out = Self::new(region as u32);
        for (k, m) in items {
            out.add(k, m);
        }
        out
    }
}

impl<K: TableKey + E2Flip> E2Flip for MultiplicityTable<K> {
    fn e2_flip(&self) -> Self {
        let mut out = Self::new(self.region);
        for (k, m) in self.iter() {
            out.add(k.e2_flip(), *m);
        }
        out
    }
}

/// Function form of [`E2Flip::e2_flip`] on tables.
pub fn e2_flip<K: TableKey + E2Flip>(t: &MultiplicityTable<K>) -> MultiplicityTable<K> {
    t.e2_flip()
}

impl<K: TableKey> Serialize for MultiplicityTable<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            hw: Weight,
            mult: u64,
        }
        let entries: Vec<Entry> = self
            .iter()
            .map(|(k, m)| Entry {
                hw: k.hw(),
                mult: *m,
            })
            .collect();
        let mut st = serializer.serialize_struct("MultiplicityTable", 2)?;
        st.serialize_field("maxNorm", &self.region)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[((i64, i64), u64)]) -> MultiplicityTable<Weight> {
        entries
            .iter()
            .map(|&((x, y), m)| (Weight::new(x, y), m))
            .collect()
    }

    #[test]
    fn so4_dimensions() {
        assert_eq!(so4_dim(SO4Irrep::new(0, 0).unwrap()), 1);
        assert_eq!(so4_dim(SO4Irrep::new(3, 3).unwrap()), 7);
        assert_eq!(so4_dim(SO4Irrep::new(5, 3).unwrap()), 27);
        assert_eq!(so4_dim(SO4Irrep::new(1, 0).unwrap()), 4);
    }

    #[test]
    fn dominance_is_enforced() {
        assert!(SO4Irrep::new(2, 3).is_err());
        assert!(SO4Irrep::new(2, -3).is_err());
        assert!(SO4Irrep::new(3, -3).is_ok());
        assert!(U2Irrep::new(U2Variant::V1, Weight::new(1, -2)).is_err());
        assert!(U2Irrep::new(U2Variant::V2, Weight::new(1, 2)).is_err());
    }

    #[test]
    fn small_weight_tables() {
        let t = so4_weight_table(SO4Irrep::new(0, 0).unwrap());
        assert_eq!(t, table(&[((0, 0), 1)]));

        let t = so4_weight_table(SO4Irrep::new(1, 1).unwrap());
        assert_eq!(t, table(&[((1, 1), 1), ((0, 0), 1), ((-1, -1), 1)]));

        let t = so4_weight_table(SO4Irrep::new(1, -1).unwrap());
        assert_eq!(t, table(&[((1, -1), 1), ((0, 0), 1), ((-1, 1), 1)]));

        // The vector representation: ±e₁, ±e₂.
        let t = so4_weight_table(SO4Irrep::new(1, 0).unwrap());
        assert_eq!(
            t,
            table(&[((1, 0), 1), ((0, 1), 1), ((0, -1), 1), ((-1, 0), 1)])
        );
    }

    #[test]
    fn weight_strings() {
        let s = u2_weight_string(U2Irrep::v1(3, 3));
        let expected: Vec<_> = (-3..=3).rev().map(|d| Weight::new(d, d)).collect();
        assert_eq!(s, expected);

        assert_eq!(
            u2_weight_string(U2Irrep::v1(1, -1)),
            vec![Weight::new(1, -1)]
        );
        assert_eq!(
            u2_weight_string(U2Irrep::v2(2, 0)),
            vec![Weight::new(2, 0), Weight::new(1, 1), Weight::new(0, 2)]
        );
    }

    #[test]
    fn flip_on_tables() {
        let t = table(&[((3, 3), 1)]);
        assert_eq!(t.e2_flip(), table(&[((3, -3), 1)]));
        assert_eq!(e2_flip(&e2_flip(&t)), t);
        assert_eq!(U2Irrep::v1(4, 2).e2_flip(), U2Irrep::v2(4, -2));
    }

    #[test]
    fn table_region_and_sub() {
        let mut t: MultiplicityTable<Weight> = MultiplicityTable::new(2);
        t.add(Weight::new(3, 0), 5);
        assert!(t.is_empty());
        t.add(Weight::new(1, 1), 2);
        assert_eq!(t.checked_sub(Weight::new(1, 1), 3), None);
        assert_eq!(t.get(&Weight::new(1, 1)), 2);
        assert_eq!(t.checked_sub(Weight::new(1, 1), 2), Some(0));
        assert!(t.is_empty());
    }
}
