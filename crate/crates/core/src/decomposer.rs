//! Peeling decompositions of restricted tables into summand families, the
//! end-to-end branching checks and the pseudo-dual grid.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::branching::{restrict_module, Restriction, Subgroup};
use crate::catalog::{h_summand_table, minimal_h_type, ModuleDescriptor};
use crate::error::{Error, Result};
use crate::report::{set_string, Clause};
use crate::weights::{MultiplicityTable, U2Irrep, U2Variant, Weight};

/// Summand family used for peeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Multiplicity-free cones `{x+y even, min(x,y) ≥ f}` headed by `(f, f)`.
    SpCones,
    /// Slope-one rays headed by an arbitrary V1 label.
    GlRays,
}

impl Family {
    pub fn for_subgroup(s: Subgroup) -> Result<Family> {
        match s {
            Subgroup::Sp => Ok(Family::SpCones),
            Subgroup::Gl => Ok(Family::GlRays),
            other => Err(Error::Unsupported {
                op: "decomposition",
                descriptor: format!("subgroup {other}"),
            }),
        }
    }

    fn legal_minimal_type(self, w: Weight) -> bool {
        match self {
            Family::SpCones => w.x == w.y && w.x >= 0,
            Family::GlRays => true,
        }
    }

    fn member(self, w: Weight) -> ModuleDescriptor {
        match self {
            Family::SpCones => ModuleDescriptor::cone(w.x as u64),
            Family::GlRays => ModuleDescriptor::GlRay(U2Irrep::v1(w.x, w.y)),
        }
    }
}

/// Where cone supports come from during peeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConeSupport {
    /// Take each member's table from the catalog.
    Catalog,
    /// Build each support as the lattice coset above the head, then compare
    /// with the catalog.
    Inferred,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summand {
    pub module: ModuleDescriptor,
    pub mult: u64,
    pub minimal_type: Weight,
}

/// Verified output of a peeling run.
///
/// Every family member's support lies componentwise above its minimal type,
/// so keys inside the region only receive contributions from minimal types
/// inside the region; the whole region is therefore safe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionCertificate {
    pub family: Family,
    /// Sorted by minimal-type norm, then highest weight.
    pub summands: Vec<Summand>,
    pub region: u32,
    pub residual: MultiplicityTable<U2Irrep>,
    pub exact: bool,
}

impl DecompositionCertificate {
    pub fn descriptors(&self) -> Vec<ModuleDescriptor> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }

    pub fn minimal_types(&self) -> BTreeSet<Weight> {
        self.summands.iter().map(|s| s.minimal_type).collect()
    }

    pub fn multiplicity_of(&self, d: &ModuleDescriptor) -> u64 {
        self.summands
            .iter()
            .filter(|s| s.module == *d)
            .map(|s| s.mult)
            .sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.summands.iter().all(|s| s.mult == 1)
    }

    /// Sum of the summands' tables plus the residual.
    pub fn reexpand(&self) -> Result<MultiplicityTable<U2Irrep>> {
        let mut out = self.residual.clone();
        for s in &self.summands {
            out = out.plus(&h_summand_table(&s.module, self.region)?.times(s.mult));
        }
        Ok(out)
    }
}

fn inferred_support(head: Weight, n: u32) -> MultiplicityTable<U2Irrep> {
    let mut out = MultiplicityTable::new(n);
    let n = n as i64;
    for x in head.x..=n {
        for y in head.y..=n {
            if (x + y - head.x - head.y) % 2 == 0 {
                out.add(U2Irrep::v1(x, y), 1);
            }
        }
    }
    out
}

fn member_table(family: Family, mode: ConeSupport, head: Weight, n: u32) -> Result<MultiplicityTable<U2Irrep>> {
    let catalog = h_summand_table(&family.member(head), n)?;
    if family == Family::SpCones && mode == ConeSupport::Inferred {
        let inferred = inferred_support(head, n);
        if inferred != catalog {
            return Err(Error::InternalInconsistency(format!(
                "inferred cone at {head} differs from {}",
                family.member(head)
            )));
        }
        return Ok(inferred);
    }
    Ok(catalog)
}

fn default_order(w: Weight) -> (i64, i64, i64) {
    (w.x.min(w.y), w.x, w.y)
}

pub fn decompose(t: &MultiplicityTable<U2Irrep>, family: Family) -> Result<DecompositionCertificate> {
    decompose_ordered(t, family, ConeSupport::Catalog, default_order)
}

pub fn decompose_with(
    t: &MultiplicityTable<U2Irrep>,
    family: Family,
    mode: ConeSupport,
) -> Result<DecompositionCertificate> {
    decompose_ordered(t, family, mode, default_order)
}

/// Greedy peeling in the order given by `order`, which must be a linear
/// extension of the componentwise order on weights.
pub fn decompose_ordered<O: Ord>(
    t: &MultiplicityTable<U2Irrep>,
    family: Family,
    mode: ConeSupport,
    order: impl Fn(Weight) -> O,
) -> Result<DecompositionCertificate> {
    if let Some(k) = t.keys().find(|k| k.variant() != U2Variant::V1) {
        return Err(Error::Unsupported {
            op: "decompose",
            descriptor: format!("table with {k}"),
        });
    }
    let n = t.region();
    let mut keys: Vec<U2Irrep> = t.keys().copied().collect();
    keys.sort_by_key(|k| order(k.hw()));
    let mut residual = t.clone();
    let mut found: BTreeMap<(i64, Weight), Summand> = BTreeMap::new();
    for key in keys {
        let r = residual.get(&key);
        if r == 0 || !family.legal_minimal_type(key.hw()) {
            continue;
        }
        let member = member_table(family, mode, key.hw(), n)?;
        for (k, m) in member.iter() {
            let needed = m * r;
            if residual.checked_sub(*k, needed).is_none() {
                return Err(Error::FamilyMismatch {
                    key: k.to_string(),
                    residual: residual.get(k),
                    needed,
                });
            }
        }
        let head = key.hw();
        found
            .entry((head.norm(), head))
            .or_insert_with(|| Summand {
                module: family.member(head),
                mult: 0,
                minimal_type: head,
            })
            .mult += r;
    }
    Ok(DecompositionCertificate {
        family,
        summands: found.into_values().collect(),
        region: n,
        exact: residual.is_empty(),
        residual,
    })
}

fn canonical(d: &ModuleDescriptor) -> ModuleDescriptor {
    match d {
        ModuleDescriptor::SpSummand(k) => ModuleDescriptor::cone(k + 3),
        ModuleDescriptor::SpCone(f) => ModuleDescriptor::cone(*f),
        other => other.clone(),
    }
}

fn admissible_restriction(big: &ModuleDescriptor, n: u32) -> Result<Restriction> {
    let res = restrict_module(big, U2Variant::V1, n)?;
    if let Some(inf) = res.infinite.first() {
        return Err(Error::NotAdmissible {
            descriptor: big.to_string(),
            key: inf.key.to_string(),
        });
    }
    Ok(res)
}

/// `dim Hom_H(v, big)`: the multiplicity of `v` in the certified
/// decomposition, computed on the region reaching `v`'s minimal type.
pub fn hom_dimension(v: &ModuleDescriptor, big: &ModuleDescriptor, subgroup: Subgroup) -> Result<u64> {
    let family = Family::for_subgroup(subgroup)?;
    let fits = matches!(
        (family, v),
        (Family::SpCones, ModuleDescriptor::SpSummand(_) | ModuleDescriptor::SpCone(_))
            | (Family::GlRays, ModuleDescriptor::GlRay(_))
    );
    if !fits {
        return Err(Error::Unsupported {
            op: "hom_dimension",
            descriptor: format!("{v} for subgroup {subgroup}"),
        });
    }
    let n = minimal_h_type(v)?.hw().norm() as u32;
    let res = admissible_restriction(big, n)?;
    Ok(decompose(&res.table, family)?.multiplicity_of(&canonical(v)))
}

/// A K-type paired with the summand it heads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPair {
    pub ktype: Weight,
    pub summand: ModuleDescriptor,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridReport {
    pub region: u32,
    /// K∩H-types of the minimal GL-type ↦ symplectic summands.
    pub sp_bijection: Vec<GridPair>,
    /// K∩H-types of the minimal symplectic type ↦ GL summands.
    pub gl_bijection: Vec<GridPair>,
    pub clauses: Vec<Clause>,
}

fn match_sets(ktypes: &MultiplicityTable<U2Irrep>, cert: &DecompositionCertificate) -> Result<Vec<GridPair>> {
    let heads: BTreeMap<Weight, &Summand> = cert.summands.iter().map(|s| (s.minimal_type, s)).collect();
    let types: BTreeSet<Weight> = ktypes.keys().map(|k| k.hw()).collect();
    if let Some(w) = types.iter().find(|w| !heads.contains_key(w)) {
        return Err(Error::GridMismatch {
            key: w.to_string(),
            reason: "K-type heads no summand".to_owned(),
        });
    }
    if let Some(w) = heads.keys().find(|w| !types.contains(w)) {
        return Err(Error::GridMismatch {
            key: w.to_string(),
            reason: "summand head is not a K-type".to_owned(),
        });
    }
    Ok(types
        .iter()
        .map(|w| GridPair {
            ktype: *w,
            summand: heads[w].module.clone(),
        })
        .collect())
}

/// Even-sum points of the square `[3, n]²`.
fn even_square_count(n: u32) -> usize {
    let side = (n as usize + 1).saturating_sub(3);
    (side * side).div_ceil(2)
}

pub const GRID_MIN: u32 = 6;

/// The two bijections between K∩H-types of one minimal type and the
/// summands of the other subgroup's decomposition.
pub fn pseudo_dual_grid(n: u32) -> Result<GridReport> {
    if n < GRID_MIN {
        return Err(Error::RegionTooSmall { n, min: GRID_MIN });
    }
    let aq = ModuleDescriptor::AqModule(0);
    let table = admissible_restriction(&aq, n)?.table;
    let sp_cert = decompose(&table, Family::SpCones)?;
    let gl_cert = decompose(&table, Family::GlRays)?;
    let gl_min = ModuleDescriptor::GlRay(U2Irrep::v1(3, 3));
    let sp_min = ModuleDescriptor::SpSummand(0);
    let sp_bijection = match_sets(&h_summand_table(&gl_min, n)?, &sp_cert)?;
    let gl_bijection = match_sets(&h_summand_table(&sp_min, n)?, &gl_cert)?;

    let diagonal = sp_bijection.iter().enumerate().all(|(j, p)| {
        let j = j as i64;
        p.ktype == Weight::new(3 + j, 3 + j) && p.summand == ModuleDescriptor::SpSummand(j as u64)
    }) && sp_bijection.len() == n as usize - 2;
    let rays = gl_bijection
        .iter()
        .all(|p| p.summand == ModuleDescriptor::GlRay(U2Irrep::v1(p.ktype.x, p.ktype.y)));
    let expected = even_square_count(n);
    let clauses = vec![
        Clause::holds(
            "grid/sp-bijection",
            "K-types of the minimal GL type (3+j,3+j) head exactly the symplectic summands sp:j",
            diagonal,
        ),
        Clause::holds(
            "grid/gl-bijection",
            "each K-type w of sp:0 heads exactly the GL summand glray:w",
            rays,
        ),
        Clause::eq(
            "grid/counts",
            "#K-types of sp:0 = #GL summands = #{3 <= x,y <= N, x+y even}",
            format!("({expected}, {expected})"),
            format!("({}, {})", gl_bijection.len(), gl_cert.summands.len()),
        ),
        Clause::holds(
            "grid/exact",
            "both decompositions have zero residual",
            sp_cert.exact && gl_cert.exact,
        ),
    ];
    Ok(GridReport {
        region: n,
        sp_bijection,
        gl_bijection,
        clauses,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchingReport {
    pub module: ModuleDescriptor,
    pub subgroup: Subgroup,
    pub region: u32,
    pub certificate: DecompositionCertificate,
    pub clauses: Vec<Clause>,
}

fn heads_string(ws: &BTreeSet<Weight>) -> String {
    set_string(ws)
}

/// Expected minimal types of the summands of `A_q(m)`: cone floors
/// `3+m ..= n` for the symplectic subgroup, even-sum labels with
/// `min(x,y) ≥ 3+m` for the GL subgroup.
fn expected_aq_heads(m: i64, family: Family, n: u32) -> BTreeSet<Weight> {
    let n = n as i64;
    let lo = 3 + m;
    match family {
        Family::SpCones => (lo..=n).map(|f| Weight::new(f, f)).collect(),
        Family::GlRays => {
            let mut out = BTreeSet::new();
            for x in lo..=n {
                for y in lo..=n {
                    if (x + y) % 2 == 0 {
                        out.insert(Weight::new(x, y));
                    }
                }
            }
            out
        }
    }
}

fn ladder_heads(family: Family, n: u32) -> BTreeSet<Weight> {
    match family {
        Family::SpCones => [Weight::ZERO].into(),
        Family::GlRays => (0..=n as i64 / 2)
            .flat_map(|t| [Weight::new(2 * t, 0), Weight::new(0, 2 * t)])
            .collect(),
    }
}

/// Minimal types in the explicit list `(3+m₁+m₂+i, 3+m₁+m₂−i)`,
/// `−m₂ ≤ i ≤ m₂`, with norm at most `n`.
fn listed_gl_minimal_types(n: u32) -> BTreeSet<Weight> {
    let n = n as i64;
    let mut out = BTreeSet::new();
    for m1 in 0..=n {
        for m2 in 0..=n {
            for i in -m2..=m2 {
                let w = Weight::new(3 + m1 + m2 + i, 3 + m1 + m2 - i);
                if w.norm() <= n {
                    out.insert(w);
                }
            }
        }
    }
    out
}

/// Restriction, decomposition and clause checks for one (module, subgroup)
/// pair on the region `n`.
pub fn verify_branching(big: &ModuleDescriptor, subgroup: Subgroup, n: u32) -> Result<BranchingReport> {
    let family = Family::for_subgroup(subgroup)?;
    let res = admissible_restriction(big, n)?;
    let cert = decompose(&res.table, family)?;
    let tag = |id: &str| format!("{big}/{subgroup}/{id}");
    let mut clauses = vec![
        Clause::holds(&tag("exact"), "residual vanishes on the region", cert.exact),
        Clause::holds(
            &tag("multiplicity-one"),
            "each summand occurs exactly once",
            cert.is_multiplicity_free(),
        ),
        Clause::holds(
            &tag("reexpansion"),
            "summand tables add up to the restricted table",
            cert.reexpand()? == res.table,
        ),
    ];
    if family == Family::SpCones {
        let inferred = decompose_with(&res.table, family, ConeSupport::Inferred)?;
        clauses.push(Clause::holds(
            &tag("inferred-cones"),
            "peeling with supports inferred from the heads gives the same certificate",
            inferred == cert,
        ));
    }
    let heads = cert.minimal_types();
    match big {
        ModuleDescriptor::AqModule(m) => {
            clauses.push(Clause::eq(
                &tag("minimal-types"),
                "summand minimal types",
                heads_string(&expected_aq_heads(*m, family, n)),
                heads_string(&heads),
            ));
        }
        ModuleDescriptor::Ladder => {
            clauses.push(Clause::eq(
                &tag("minimal-types"),
                "summand minimal types",
                heads_string(&ladder_heads(family, n)),
                heads_string(&heads),
            ));
        }
        _ => {}
    }
    match (big, family) {
        (ModuleDescriptor::AqModule(0), Family::SpCones) => {
            let diag = (3..=n as i64).all(|k| res.table.get(&U2Irrep::v1(k, k)) == (k - 2) as u64);
            clauses.push(Clause::holds(
                &tag("diagonal"),
                "the label (k,k) has multiplicity k-2 for 3 <= k <= N",
                diag,
            ));
            let closed_form = res.table.keys().all(|k| {
                let w = k.hw();
                (w.x + w.y) % 2 == 0 && res.table.get(k) == (w.x.min(w.y) - 2) as u64
            }) && res.table.len() == expected_aq_heads(0, Family::GlRays, n).len();
            clauses.push(Clause::holds(
                &tag("closed-form"),
                "multiplicity min(x,y)-2 on even keys with min >= 3, zero elsewhere",
                closed_form,
            ));
        }
        (ModuleDescriptor::AqModule(0), Family::GlRays) => {
            clauses.push(Clause::eq(
                &tag("listed-minimal-types"),
                "minimal types equal the list (3+m1+m2+i, 3+m1+m2-i), |i| <= m2",
                heads_string(&listed_gl_minimal_types(n)),
                heads_string(&heads),
            ));
        }
        (ModuleDescriptor::Ladder, Family::SpCones) => {
            clauses.push(Clause::eq(
                &tag("irreducible"),
                "a single spherical cone with floor 0",
                "{spcone:0}".to_owned(),
                set_string(cert.descriptors()),
            ));
        }
        (ModuleDescriptor::AqModule(-3), _) => {
            let mut parts: Vec<Summand> = Vec::new();
            for factor in [ModuleDescriptor::AqModule(-2), ModuleDescriptor::Ladder] {
                let t = admissible_restriction(&factor, n)?.table;
                parts.extend(decompose(&t, family)?.summands);
            }
            parts.sort_by_key(|s| (s.minimal_type.norm(), s.minimal_type));
            clauses.push(Clause::holds(
                &tag("factorwise"),
                "summands are the disjoint union of those of A_q(-2) and of the ladder",
                parts == cert.summands,
            ));
        }
        _ => {}
    }
    Ok(BranchingReport {
        module: big.clone(),
        subgroup,
        region: n,
        certificate: cert,
        clauses,
    })
}
