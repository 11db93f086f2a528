//! Restriction of SO(4) representations and of catalog modules to the two
//! U(2) subgroups, with exact admissibility verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::catalog::{KTypeFamily, ModuleDescriptor};
use crate::error::{Error, Result};
use crate::weights::{so4_weight_table, u2_weight_string, MultiplicityTable, SO4Irrep, U2Irrep, U2Variant, Weight};

/// Subgroups of SL(4,ℝ) whose maximal compact subgroups are the two U(2)'s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subgroup {
    /// `H₁ ≅ Sp(4,ℝ)`.
    Sp,
    /// `H₁′`, the GL subgroup centralizing `Q₁`.
    Gl,
    Sp2,
    Gl2,
}

impl Subgroup {
    pub fn variant(self) -> U2Variant {
        match self {
            Subgroup::Sp | Subgroup::Gl => U2Variant::V1,
            Subgroup::Sp2 | Subgroup::Gl2 => U2Variant::V2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::Sp => "sp",
            Subgroup::Gl => "gl",
            Subgroup::Sp2 => "sp2",
            Subgroup::Gl2 => "gl2",
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp" => Ok(Subgroup::Sp),
            "gl" => Ok(Subgroup::Gl),
            "sp2" => Ok(Subgroup::Sp2),
            "gl2" => Ok(Subgroup::Gl2),
            _ => Err(Error::Parse {
                token: s.to_owned(),
                reason: "expected one of sp, gl, sp2, gl2".to_owned(),
            }),
        }
    }
}

/// Branching of an SO(4) irrep to a U(2) subgroup; every constituent has
/// multiplicity one.
///
/// V1: `(b+t, a−t)`, `0 ≤ t ≤ a−b`. V2: `(t−b, t−a)`, `0 ≤ t ≤ a+b`.
pub fn restrict_so4(r: SO4Irrep, v: U2Variant) -> Vec<(U2Irrep, u64)> {
    let (a, b) = (r.a(), r.b());
    let hws: Vec<Weight> = match v {
        U2Variant::V1 => (0..=a - b).map(|t| Weight::new(b + t, a - t)).collect(),
        U2Variant::V2 => (0..=a + b).map(|t| Weight::new(t - b, t - a)).collect(),
    };
    let mut out: Vec<(U2Irrep, u64)> = hws
        .into_iter()
        .map(|w| (U2Irrep::new(v, w).expect("constituents are dominant"), 1))
        .collect();
    out.sort();
    out
}

pub const ORACLE_LIMIT: i64 = 16;

/// Brute-force branching by peeling weight strings off the SO(4) weight
/// table, highest pairing with the variant's root first.
pub fn restrict_so4_oracle(r: SO4Irrep, v: U2Variant) -> Result<Vec<(U2Irrep, u64)>> {
    if r.a() > ORACLE_LIMIT {
        return Err(Error::OracleGuard {
            a: r.a(),
            limit: ORACLE_LIMIT,
        });
    }
    let root = v.root();
    let mut rest = so4_weight_table(r);
    let mut found: BTreeMap<U2Irrep, u64> = BTreeMap::new();
    while let Some(top) = rest.keys().copied().max_by_key(|w| (root.dot(*w), w.x, w.y)) {
        let irrep = U2Irrep::new(v, top)?;
        for w in u2_weight_string(irrep) {
            if rest.checked_sub(w, 1).is_none() {
                return Err(Error::InternalInconsistency(format!(
                    "weight {w} of {irrep} missing while peeling {r}"
                )));
            }
        }
        *found.entry(irrep).or_insert(0) += 1;
    }
    Ok(found.into_iter().collect())
}

/// Size of a contributor set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContributorCount {
    Finite(u64),
    Infinite,
}

/// The catalog parameters `m` whose K-type contains a given U(2) label:
/// the lattice points `base + j·direction`, `j ≥ 0`, up to `count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContributorSet {
    /// First contributor along `direction`; None when the set is empty.
    pub base: Option<Vec<i64>>,
    /// Primitive direction of the solution line (all zeros for a point).
    pub direction: Vec<i64>,
    pub count: ContributorCount,
}

impl ContributorSet {
    pub fn is_finite(&self) -> bool {
        self.count != ContributorCount::Infinite
    }

    fn empty(k: usize) -> Self {
        ContributorSet {
            base: None,
            direction: vec![0; k],
            count: ContributorCount::Finite(0),
        }
    }
}

/// Linear description of "K-type (a,b) contains the key": one equation
/// `eq·(a,b) = target` plus inequalities `row·(a,b) ≤ bound`.
struct KeyConstraints {
    eq: Weight,
    target: i64,
    rows: [(Weight, i64); 2],
}

fn key_constraints(v: U2Variant, key: Weight) -> KeyConstraints {
    match v {
        // x + y = a + b and b ≤ min(x, y)
        U2Variant::V1 => KeyConstraints {
            eq: Weight::ALPHA1,
            target: key.x + key.y,
            rows: [(Weight::new(0, 1), key.x), (Weight::new(0, 1), key.y)],
        },
        // x − y = a − b and b ≥ max(−x, y)
        U2Variant::V2 => KeyConstraints {
            eq: Weight::ALPHA2,
            target: key.x - key.y,
            rows: [(Weight::new(0, -1), key.x), (Weight::new(0, -1), -key.y)],
        },
    }
}

/// Integer solutions of `p·m = s` as `m0 + j·d`; None if there are none.
fn solve_equation(p: &[i64], s: i64, family: &KTypeFamily) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    match *p {
        [p1] if p1 != 0 => {
            if s % p1 != 0 {
                return Ok(None);
            }
            Ok(Some((vec![s / p1], vec![0])))
        }
        [_] => Ok((s == 0).then(|| (vec![0], vec![1]))),
        [p1, p2] if (p1, p2) != (0, 0) => {
            let e = p1.extended_gcd(&p2);
            let (mut g, mut c1, mut c2) = (e.gcd, e.x, e.y);
            if g < 0 {
                (g, c1, c2) = (-g, -c1, -c2);
            }
            if s % g != 0 {
                return Ok(None);
            }
            let k = s / g;
            Ok(Some((vec![k * c1, k * c2], vec![p2 / g, -p1 / g])))
        }
        _ => Err(Error::Unsupported {
            op: "contributor solver",
            descriptor: format!("family {:?} with a two-dimensional fibre", family),
        }),
    }
}

/// Inequalities `alpha·j ≤ beta` on the line parameter.
fn line_inequalities(
    family: &KTypeFamily,
    c: &KeyConstraints,
    m0: &[i64],
    d: &[i64],
) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = m0.iter().zip(d).map(|(&m, &di)| (-di, m)).collect();
    let at_m0 = family.ktype(m0);
    let dir: Weight = family
        .generators
        .iter()
        .zip(d)
        .fold(Weight::ZERO, |acc, (g, &di)| acc + g.scale(di));
    for (row, bound) in c.rows {
        out.push((row.dot(dir), bound - row.dot(at_m0)));
    }
    out
}

/// Exact contributor set of a K-type family at one U(2) key.
pub fn contributors(family: &KTypeFamily, v: U2Variant, key: Weight) -> Result<ContributorSet> {
    let k = family.generators.len();
    let c = key_constraints(v, key);
    let p: Vec<i64> = family.generators.iter().map(|g| c.eq.dot(*g)).collect();
    let s = c.target - c.eq.dot(family.base);
    let Some((m0, d)) = solve_equation(&p, s, family)? else {
        return Ok(ContributorSet::empty(k));
    };
    let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
    for (alpha, beta) in line_inequalities(family, &c, &m0, &d) {
        if alpha > 0 {
            let b = Integer::div_floor(&beta, &alpha);
            hi = Some(hi.map_or(b, |h| h.min(b)));
        } else if alpha < 0 {
            let b = Integer::div_ceil(&beta, &alpha);
            lo = Some(lo.map_or(b, |l| l.max(b)));
        } else if beta < 0 {
            return Ok(ContributorSet::empty(k));
        }
    }
    let point = |j: i64| -> Vec<i64> { m0.iter().zip(&d).map(|(m, di)| m + j * di).collect() };
    let neg: Vec<i64> = d.iter().map(|x| -x).collect();
    Ok(match (lo, hi) {
        (Some(l), Some(h)) if l > h => ContributorSet::empty(k),
        (Some(l), Some(h)) => ContributorSet {
            base: Some(point(l)),
            direction: d,
            count: ContributorCount::Finite((h - l + 1) as u64),
        },
        (Some(l), None) => ContributorSet {
            base: Some(point(l)),
            direction: d,
            count: ContributorCount::Infinite,
        },
        (None, Some(h)) => ContributorSet {
            base: Some(point(h)),
            direction: neg,
            count: ContributorCount::Infinite,
        },
        // Only reachable for a point solution (d = 0).
        (None, None) => ContributorSet {
            base: Some(m0),
            direction: d,
            count: ContributorCount::Finite(1),
        },
    })
}

/// A key of a restriction whose contributor set is infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfiniteKey {
    pub key: U2Irrep,
    pub family: usize,
    pub contributors: ContributorSet,
}

/// Restriction of a G-module to a U(2) subgroup on `norm ≤ n`.
///
/// Keys with infinitely many contributing K-types are left out of `table`
/// and listed in `infinite`; every other key of the region is exact.
#[derive(Debug, Clone, Serialize)]
pub struct Restriction {
    pub variant: U2Variant,
    pub table: MultiplicityTable<U2Irrep>,
    pub infinite: Vec<InfiniteKey>,
}

impl Restriction {
    pub fn is_finite(&self) -> bool {
        self.infinite.is_empty()
    }
}

/// Dominant U(2) labels of the variant with `norm ≤ n`, in ascending order.
pub fn dominant_keys(v: U2Variant, n: u32) -> Vec<U2Irrep> {
    let n = n as i64;
    let mut out = Vec::new();
    for x in -n..=n {
        for y in -n..=n {
            if let Ok(k) = U2Irrep::new(v, Weight::new(x, y)) {
                out.push(k);
            }
        }
    }
    out.sort();
    out
}

pub fn restrict_module(d: &ModuleDescriptor, v: U2Variant, n: u32) -> Result<Restriction> {
    let families = d.g_families().map_err(|e| match e {
        Error::Unsupported { descriptor, .. } => Error::Unsupported {
            op: "restrict_module",
            descriptor,
        },
        other => other,
    })?;
    let mut table = MultiplicityTable::new(n);
    let mut infinite = Vec::new();
    for key in dominant_keys(v, n) {
        let mut total = 0;
        let mut unbounded = None;
        for (i, (family, mult)) in families.iter().enumerate() {
            let set = contributors(family, v, key.hw())?;
            match set.count {
                ContributorCount::Finite(c) => total += c * mult,
                ContributorCount::Infinite => {
                    unbounded.get_or_insert(InfiniteKey {
                        key,
                        family: i,
                        contributors: set,
                    });
                }
            }
        }
        match unbounded {
            Some(inf) => infinite.push(inf),
            None => table.add(key, total),
        }
    }
    Ok(Restriction {
        variant: v,
        table,
        infinite,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Admissibility {
    Admissible,
    NotAdmissible {
        witness: U2Irrep,
        contributors: ContributorSet,
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Whether the solution line of `family` escapes to infinity in some
/// direction. This depends only on the family and the variant: the
/// inequalities' slopes along the line do not involve the key.
fn unbounded_direction(family: &KTypeFamily, v: U2Variant) -> Result<bool> {
    let c = key_constraints(v, Weight::ZERO);
    let p: Vec<i64> = family.generators.iter().map(|g| c.eq.dot(*g)).collect();
    // Direction of the solution line (the fibre of p·m = const).
    let d = match solve_equation(&p, 0, family)? {
        Some((_, d)) => d,
        None => return Ok(false),
    };
    if d.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    let slopes: Vec<i64> = line_inequalities(family, &c, &vec![0; d.len()], &d)
        .into_iter()
        .map(|(alpha, _)| alpha)
        .collect();
    Ok(slopes.iter().all(|&a| a <= 0) || slopes.iter().all(|&a| a >= 0))
}

/// Exact decision: the restriction is admissible iff no contributor set is
/// infinite. A non-admissible verdict names the smallest constituent of the
/// lowest K-type, whose contributor set contains that K-type and therefore
/// the whole unbounded ray through it.
pub fn admissibility(d: &ModuleDescriptor, v: U2Variant) -> Result<Admissibility> {
    for family in d.g_families()?.into_iter().map(|(f, _)| f) {
        if !unbounded_direction(&family, v)? {
            continue;
        }
        let lowest = SO4Irrep::from_weight(family.base)?;
        let (witness, _) = restrict_so4(lowest, v)
            .into_iter()
            .min_by_key(|(k, _)| (k.hw().norm(), *k))
            .expect("nonempty branching");
        let set = contributors(&family, v, witness.hw())?;
        if set.is_finite() {
            return Err(Error::InternalInconsistency(format!(
                "unbounded family {family:?} but finite contributors at {witness}"
            )));
        }
        return Ok(Admissibility::NotAdmissible {
            witness,
            contributors: set,
        });
    }
    Ok(Admissibility::Admissible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{so4_dim, E2Flip};

    fn aq(m: i64) -> ModuleDescriptor {
        ModuleDescriptor::AqModule(m)
    }

    fn hws(list: &[(U2Irrep, u64)]) -> Vec<(i64, i64)> {
        list.iter().map(|(k, _)| (k.hw().x, k.hw().y)).collect()
    }

    #[test]
    fn so4_examples() {
        let r = SO4Irrep::new(3, 3).unwrap();
        let v2 = restrict_so4(r, U2Variant::V2);
        assert_eq!(hws(&v2), (-3..=3).map(|d| (d, d)).collect::<Vec<_>>());
        let r = SO4Irrep::new(5, 3).unwrap();
        assert_eq!(hws(&restrict_so4(r, U2Variant::V1)), [(3, 5), (4, 4), (5, 3)]);
        for v in U2Variant::ALL {
            assert_eq!(hws(&restrict_so4(SO4Irrep::new(0, 0).unwrap(), v)), [(0, 0)]);
        }
    }

    #[test]
    fn oracle_agrees_and_dims_add_up() {
        for a in 0..=8 {
            for b in -a..=a {
                let r = SO4Irrep::new(a, b).unwrap();
                for v in U2Variant::ALL {
                    let fast = restrict_so4(r, v);
                    assert_eq!(fast, restrict_so4_oracle(r, v).unwrap());
                    let dims: u64 = fast.iter().map(|(k, m)| k.dim() * m).sum();
                    assert_eq!(dims, so4_dim(r));
                }
            }
        }
        assert!(matches!(
            restrict_so4_oracle(SO4Irrep::new(17, 0).unwrap(), U2Variant::V1),
            Err(Error::OracleGuard { .. })
        ));
    }

    #[test]
    fn flip_equivariance() {
        for a in 0..=6 {
            for b in -a..=a {
                let r = SO4Irrep::new(a, b).unwrap();
                let mut flipped: Vec<_> = restrict_so4(r, U2Variant::V1)
                    .into_iter()
                    .map(|(k, m)| (k.e2_flip(), m))
                    .collect();
                flipped.sort();
                assert_eq!(restrict_so4(r.e2_flip(), U2Variant::V2), flipped);
            }
        }
    }

    #[test]
    fn aq_v1_examples() {
        let res = restrict_module(&aq(0), U2Variant::V1, 10).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.table.get(&U2Irrep::v1(5, 5)), 3);
        assert_eq!(res.table.get(&U2Irrep::v1(7, 3)), 1);
        assert_eq!(res.table.get(&U2Irrep::v1(6, 3)), 0);
    }

    #[test]
    fn aq_v2_trivial_key_is_infinite() {
        let [(family, _)] = <[_; 1]>::try_from(aq(0).g_families().unwrap()).unwrap();
        let set = contributors(&family, U2Variant::V2, Weight::ZERO).unwrap();
        assert_eq!(set.count, ContributorCount::Infinite);
        assert_eq!(set.base, Some(vec![0, 0]));
        assert_eq!(set.direction, vec![1, 0]);
        let res = restrict_module(&aq(0), U2Variant::V2, 3).unwrap();
        assert!(!res.is_finite());
        assert!(res.infinite.iter().any(|k| k.key.hw() == Weight::ZERO));
    }

    #[test]
    fn dichotomy() {
        let prime = ModuleDescriptor::AqPrime(0);
        assert!(admissibility(&aq(0), U2Variant::V1).unwrap().is_admissible());
        assert!(admissibility(&prime, U2Variant::V2).unwrap().is_admissible());
        for (d, v) in [(aq(0), U2Variant::V2), (prime, U2Variant::V1)] {
            match admissibility(&d, v).unwrap() {
                Admissibility::NotAdmissible { witness, contributors } => {
                    assert_eq!(witness.hw(), Weight::ZERO);
                    assert_eq!(contributors.count, ContributorCount::Infinite);
                }
                Admissibility::Admissible => panic!("{d} {v} should not be admissible"),
            }
        }
        assert!(admissibility(&ModuleDescriptor::Ladder, U2Variant::V1).unwrap().is_admissible());
        assert!(admissibility(&ModuleDescriptor::Ladder, U2Variant::V2).unwrap().is_admissible());
    }

    #[test]
    fn h_modules_are_rejected() {
        assert!(matches!(
            restrict_module(&ModuleDescriptor::SpSummand(0), U2Variant::V1, 4),
            Err(Error::Unsupported { .. })
        ));
    }
}
