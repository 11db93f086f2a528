//! K-type and K∩H-type families of the modules under study.
//!
//! G-modules (`A_q(m)`, `A_q′(m)`, the ladder) are affine lattice families of
//! SO(4) highest weights, each of multiplicity one. H-modules (the summands
//! of the branching laws) are families of V1 labels.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weights::{MultiplicityTable, SO4Irrep, U2Irrep, U2Variant, Weight};

/// Symbolic name of a module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleDescriptor {
    /// `A_q(m)`, `m ≥ −3`.
    AqModule(i64),
    /// Outer twist of `A_q(m)` (sign change of e₂).
    AqPrime(i64),
    /// The ladder composition factor of `A_q(−3)`.
    Ladder,
    /// Discrete summand of `A_q` restricted to the symplectic subgroup with
    /// minimal type `(3+n, 3+n)`.
    SpSummand(u64),
    /// Multiplicity-free cone `{x+y even, min(x,y) ≥ floor}` of V1 labels.
    /// `SpCone(3+n)` and `SpSummand(n)` have the same types.
    SpCone(u64),
    /// Principal-series summand for the GL subgroup: the ray `min + j(1,1)`.
    GlRay(U2Irrep),
    FiniteSum(Vec<(ModuleDescriptor, u64)>),
}

/// Affine lattice `base + Σ mᵢ·generatorsᵢ`, `mᵢ ≥ 0`, of SO(4) highest
/// weights; the parametrization is injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTypeFamily {
    pub base: Weight,
    pub generators: Vec<Weight>,
}

impl KTypeFamily {
    pub fn ktype(&self, params: &[i64]) -> Weight {
        self.generators
            .iter()
            .zip(params)
            .fold(self.base, |acc, (g, &m)| acc + g.scale(m))
    }

    /// Multiplicity (0 or 1) of the SO(4) label `w`.
    pub fn contains(&self, w: Weight) -> bool {
        let d = w - self.base;
        match self.generators.as_slice() {
            [g] => solve_1d(d, *g).is_some(),
            [g1, g2] => {
                // Cramer's rule for d = m1·g1 + m2·g2.
                let det = g1.x * g2.y - g1.y * g2.x;
                let n1 = d.x * g2.y - d.y * g2.x;
                let n2 = g1.x * d.y - g1.y * d.x;
                det != 0
                    && n1 % det == 0
                    && n2 % det == 0
                    && n1 / det >= 0
                    && n2 / det >= 0
            }
            _ => false,
        }
    }

    /// All members with `norm ≤ n`.
    ///
    /// Members are dominant SO(4) labels, whose norm is the first coordinate,
    /// and every generator has positive first coordinate, so the norm grows
    /// along each parameter.
    pub fn members(&self, n: u32) -> Vec<Weight> {
        debug_assert!(self.generators.iter().all(|g| g.x > 0));
        let n = n as i64;
        let mut out = Vec::new();
        match self.generators.len() {
            1 => {
                let mut m = 0;
                while self.ktype(&[m]).x <= n {
                    out.push(self.ktype(&[m]));
                    m += 1;
                }
            }
            2 => {
                let mut m1 = 0;
                while self.ktype(&[m1, 0]).x <= n {
                    let mut m2 = 0;
                    while self.ktype(&[m1, m2]).x <= n {
                        out.push(self.ktype(&[m1, m2]));
                        m2 += 1;
                    }
                    m1 += 1;
                }
            }
            _ => {}
        }
        out
    }
}

fn solve_1d(d: Weight, g: Weight) -> Option<i64> {
    let m = if g.x != 0 {
        d.x.checked_rem(g.x).filter(|r| *r == 0).map(|_| d.x / g.x)?
    } else {
        d.y.checked_rem(g.y).filter(|r| *r == 0).map(|_| d.y / g.y)?
    };
    (m >= 0 && g.scale(m) == d).then_some(m)
}

impl ModuleDescriptor {
    fn check(&self) -> Result<()> {
        match self {
            ModuleDescriptor::AqModule(m) | ModuleDescriptor::AqPrime(m) if *m < -3 => {
                Err(Error::ParameterOutOfRange { m: *m })
            }
            ModuleDescriptor::GlRay(min) if min.variant() != U2Variant::V1 => {
                Err(Error::NotDominant {
                    label: min.to_string(),
                    reason: "GL ray minimal types are V1 labels",
                })
            }
            ModuleDescriptor::FiniteSum(terms) => terms.iter().try_for_each(|(d, _)| d.check()),
            _ => Ok(()),
        }
    }

    /// True for modules with SO(4) K-types, false for summands of a branching law.
    pub fn is_g_module(&self) -> bool {
        match self {
            ModuleDescriptor::AqModule(_) | ModuleDescriptor::AqPrime(_) | ModuleDescriptor::Ladder => true,
            ModuleDescriptor::FiniteSum(terms) => terms.iter().all(|(d, _)| d.is_g_module()),
            _ => false,
        }
    }

    /// `A_q(−3)` is reducible; the rest of the catalog is irreducible.
    pub fn is_irreducible(&self) -> bool {
        !matches!(
            self,
            ModuleDescriptor::AqModule(-3) | ModuleDescriptor::AqPrime(-3) | ModuleDescriptor::FiniteSum(_)
        )
    }

    /// Affine K-type families with multiplicities; FiniteSums are flattened.
    pub fn g_families(&self) -> Result<Vec<(KTypeFamily, u64)>> {
        self.check()?;
        Ok(match self {
            ModuleDescriptor::AqModule(m) => vec![(
                KTypeFamily {
                    base: Weight::new(3 + m, 3 + m),
                    generators: vec![Weight::ALPHA1, Weight::CHI1],
                },
                1,
            )],
            ModuleDescriptor::AqPrime(m) => vec![(
                KTypeFamily {
                    base: Weight::new(3 + m, -(3 + m)),
                    generators: vec![Weight::ALPHA2, Weight::CHI1],
                },
                1,
            )],
            ModuleDescriptor::Ladder => vec![(
                KTypeFamily {
                    base: Weight::ZERO,
                    generators: vec![Weight::CHI1],
                },
                1,
            )],
            ModuleDescriptor::FiniteSum(terms) => {
                let mut out = Vec::new();
                for (d, k) in terms {
                    for (f, j) in d.g_families()? {
                        out.push((f, j * k));
                    }
                }
                out
            }
            _ => {
                return Err(Error::Unsupported {
                    op: "K-type families",
                    descriptor: self.to_string(),
                })
            }
        })
    }

    /// `A_q ↔ A_q′`; the ladder is fixed. None for H-modules.
    pub fn flipped(&self) -> Option<ModuleDescriptor> {
        match self {
            ModuleDescriptor::AqModule(m) => Some(ModuleDescriptor::AqPrime(*m)),
            ModuleDescriptor::AqPrime(m) => Some(ModuleDescriptor::AqModule(*m)),
            ModuleDescriptor::Ladder => Some(ModuleDescriptor::Ladder),
            ModuleDescriptor::FiniteSum(terms) => terms
                .iter()
                .map(|(d, k)| d.flipped().map(|f| (f, *k)))
                .collect::<Option<Vec<_>>>()
                .map(ModuleDescriptor::FiniteSum),
            _ => None,
        }
    }

    /// Cone with the given floor, named as a symplectic summand when the
    /// floor is at least 3.
    pub fn cone(floor: u64) -> ModuleDescriptor {
        if floor >= 3 {
            ModuleDescriptor::SpSummand(floor - 3)
        } else {
            ModuleDescriptor::SpCone(floor)
        }
    }
}

/// SO(4) K-type multiplicities on `norm ≤ n`.
pub fn ktypes(d: &ModuleDescriptor, n: u32) -> Result<MultiplicityTable<Weight>> {
    let mut out = MultiplicityTable::new(n);
    for (family, k) in d.g_families()? {
        for w in family.members(n) {
            out.add(w, k);
        }
    }
    Ok(out)
}

/// Multiplicity of a single SO(4) K-type, from the membership test.
pub fn ktype_multiplicity(d: &ModuleDescriptor, r: SO4Irrep) -> Result<u64> {
    Ok(d.g_families()?
        .iter()
        .filter(|(f, _)| f.contains(r.highest_weight()))
        .map(|(_, k)| k)
        .sum())
}

/// `A_q(−3) = A_q(−2) + ladder` at the level of K-types.
pub fn composition_factors(d: &ModuleDescriptor) -> Result<Vec<ModuleDescriptor>> {
    match d {
        ModuleDescriptor::AqModule(-3) => Ok(vec![ModuleDescriptor::AqModule(-2), ModuleDescriptor::Ladder]),
        _ => Err(Error::Unsupported {
            op: "composition_factors",
            descriptor: d.to_string(),
        }),
    }
}

fn cone_table(floor: i64, n: u32) -> MultiplicityTable<U2Irrep> {
    let mut out = MultiplicityTable::new(n);
    let n = n as i64;
    for x in floor..=n {
        for y in floor..=n {
            if (x + y) % 2 == 0 {
                out.add(U2Irrep::v1(x, y), 1);
            }
        }
    }
    out
}

/// K∩H-type multiplicities (V1 labels) of an H-module on `norm ≤ n`.
pub fn h_summand_table(d: &ModuleDescriptor, n: u32) -> Result<MultiplicityTable<U2Irrep>> {
    d.check()?;
    match d {
        ModuleDescriptor::SpSummand(k) => Ok(cone_table(3 + *k as i64, n)),
        ModuleDescriptor::SpCone(f) => Ok(cone_table(*f as i64, n)),
        ModuleDescriptor::GlRay(min) => {
            let mut out = MultiplicityTable::new(n);
            let mut w = min.hw();
            while w.norm() <= n as i64 {
                out.add(U2Irrep::v1(w.x, w.y), 1);
                w = w + Weight::ALPHA1;
            }
            Ok(out)
        }
        ModuleDescriptor::FiniteSum(terms) if !terms.is_empty() && !d.is_g_module() => {
            let mut out = MultiplicityTable::new(n);
            for (t, k) in terms {
                out = out.plus(&h_summand_table(t, n)?.times(*k));
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported {
            op: "h_summand_table",
            descriptor: d.to_string(),
        }),
    }
}

pub fn minimal_h_type(d: &ModuleDescriptor) -> Result<U2Irrep> {
    d.check()?;
    match d {
        ModuleDescriptor::SpSummand(k) => Ok(U2Irrep::v1(3 + *k as i64, 3 + *k as i64)),
        ModuleDescriptor::SpCone(f) => Ok(U2Irrep::v1(*f as i64, *f as i64)),
        ModuleDescriptor::GlRay(min) => Ok(*min),
        _ => Err(Error::Unsupported {
            op: "minimal_h_type",
            descriptor: d.to_string(),
        }),
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::AqModule(m) => write!(f, "aq:{m}"),
            ModuleDescriptor::AqPrime(m) => write!(f, "aqprime:{m}"),
            ModuleDescriptor::Ladder => f.write_str("ladder"),
            ModuleDescriptor::SpSummand(n) => write!(f, "sp:{n}"),
            ModuleDescriptor::SpCone(c) => write!(f, "spcone:{c}"),
            ModuleDescriptor::GlRay(min) => write!(f, "glray:{},{}", min.hw().x, min.hw().y),
            ModuleDescriptor::FiniteSum(terms) => {
                for (i, (d, k)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    if *k != 1 {
                        write!(f, "{k}*")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for ModuleDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_err(token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.to_owned(),
        reason: reason.into(),
    }
}

fn parse_int<T: FromStr>(token: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(token, format!("`{s}` is not a valid integer")))
}

fn parse_atom<'a>(token: &'a str) -> Result<ModuleDescriptor> {
    let (head, arg) = match token.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (token, None),
    };
    let need = |a: Option<&'a str>| -> Result<&'a str> {
        a.ok_or_else(|| parse_err(token, format!("`{head}` needs an argument")))
    };
    let d = match head {
        "aq" => ModuleDescriptor::AqModule(parse_int(token, need(arg)?)?),
        "aqprime" => ModuleDescriptor::AqPrime(parse_int(token, need(arg)?)?),
        "ladder" if arg.is_none() => ModuleDescriptor::Ladder,
        "sp" => ModuleDescriptor::SpSummand(parse_int(token, need(arg)?)?),
        "spcone" => ModuleDescriptor::SpCone(parse_int(token, need(arg)?)?),
        "glray" => {
            let a = need(arg)?;
            let (x, y) = a
                .split_once(',')
                .ok_or_else(|| parse_err(token, "expected `glray:<x>,<y>`"))?;
            let hw = Weight::new(parse_int(token, x)?, parse_int(token, y)?);
            ModuleDescriptor::GlRay(U2Irrep::new(U2Variant::V1, hw)?)
        }
        _ => return Err(parse_err(token, "unknown module")),
    };
    d.check()?;
    Ok(d)
}

impl FromStr for ModuleDescriptor {
    type Err = Error;

    /// `aq:<m>`, `aqprime:<m>`, `ladder`, `sp:<n>`, `spcone:<f>`,
    /// `glray:<x>,<y>`, and sums such as `2*aq:0+ladder`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err(s, "empty descriptor"));
        }
        let terms: Vec<&str> = s.split('+').map(str::trim).collect();
        let mut parsed = Vec::with_capacity(terms.len());
        for t in &terms {
            let (k, atom) = match t.split_once('*') {
                Some((k, a)) => (parse_int::<u64>(t, k)?, a.trim()),
                None => (1, *t),
            };
            if k == 0 {
                return Err(parse_err(t, "multiplicity must be positive"));
            }
            parsed.push((parse_atom(atom)?, k));
        }
        if parsed.len() == 1 && parsed[0].1 == 1 {
            return Ok(parsed.pop().expect("one term").0);
        }
        Ok(ModuleDescriptor::FiniteSum(parsed))
    }
}
