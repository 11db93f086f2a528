//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use branching_core::branching::{
    admissibility, restrict_module, restrict_so4, restrict_so4_oracle, Admissibility, ContributorCount, Subgroup,
};
use branching_core::catalog::{ktypes, ModuleDescriptor};
use branching_core::decomposer::{decompose, pseudo_dual_grid, verify_branching, DecompositionCertificate, Family};
use branching_core::matrix::{pseudo_dual_report, structure_report};
use branching_core::report::all_passed;
use branching_core::weights::{so4_dim, E2Flip, SO4Irrep, U2Variant, Weight};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let s = structure_report().map_err(err)?;
    let p = pseudo_dual_report().map_err(err)?;
    let elapsed = t.elapsed();
    ensure(all_passed(&s.clauses) && all_passed(&p.clauses), || "a structure clause failed".into())?;
    ensure(s.parabolic_dims == [7, 4, 4], || format!("parabolic dims {:?}", s.parabolic_dims))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "{} clauses, dims (l,u,ubar) = (7,4,4), {elapsed:.2?}",
        s.clauses.len() + p.clauses.len()
    ))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut cases = 0;
    for v in [U2Variant::V1, U2Variant::V2] {
        for a in 0..=12 {
            for b in -a..=a {
                let r = SO4Irrep::new(a, b).map_err(err)?;
                let mut fast = restrict_so4(r, v);
                let mut slow = restrict_so4_oracle(r, v).map_err(err)?;
                fast.sort();
                slow.sort();
                ensure(fast == slow, || format!("{r} {v:?}: closed form disagrees with oracle"))?;
                let total: u64 = fast.iter().map(|(k, m)| k.dim() * m).sum();
                ensure(total == so4_dim(r), || format!("{r} {v:?}: dimension {total} != {}", so4_dim(r)))?;
                cases += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} cases per variant, {elapsed:.2?}", cases / 2))
}

fn cone_floors(cert: &DecompositionCertificate) -> Result<Vec<u64>, String> {
    cert.summands
        .iter()
        .map(|s| match s.module {
            ModuleDescriptor::SpSummand(n) => Ok(n + 3),
            ModuleDescriptor::SpCone(f) => Ok(f),
            ref other => Err(format!("unexpected summand {other}")),
        })
        .collect()
}

fn c3(certs: &mut Vec<(String, DecompositionCertificate)>) -> Outcome {
    let n = 60;
    let t = Instant::now();
    let res = restrict_module(&ModuleDescriptor::AqModule(0), U2Variant::V1, n).map_err(err)?;
    ensure(res.is_finite(), || "restriction has infinite keys".into())?;
    let cert = decompose(&res.table, Family::SpCones).map_err(err)?;
    let elapsed = t.elapsed();
    let expected: Vec<ModuleDescriptor> = (0..=57).map(ModuleDescriptor::SpSummand).collect();
    ensure(cert.descriptors() == expected, || format!("summands {:?}", cert.descriptors()))?;
    ensure(cert.summands.iter().all(|s| s.mult == 1), || "a cone has multiplicity > 1".into())?;
    ensure(cert.exact && cert.residual.is_empty(), || "nonzero residual".into())?;
    for k in 3..=n as i64 {
        let m = res.table.get(&branching_core::weights::U2Irrep::v1(k, k));
        ensure(m == (k - 2) as u64, || format!("diagonal ({k},{k}) has {m}, expected {}", k - 2))?;
    }
    within(elapsed, Duration::from_secs(5))?;
    certs.push(("aq:0 sp".into(), cert));
    Ok(format!("floors 0..57, diagonal n-2 on 3..60, residual 0, {elapsed:.2?}"))
}

fn c4(certs: &mut Vec<(String, DecompositionCertificate)>) -> Outcome {
    let n = 60i64;
    let t = Instant::now();
    let res = restrict_module(&ModuleDescriptor::AqModule(0), U2Variant::V1, n as u32).map_err(err)?;
    let cert = decompose(&res.table, Family::GlRays).map_err(err)?;
    let elapsed = t.elapsed();
    let square: BTreeSet<Weight> = (3..=n)
        .flat_map(|x| (3..=n).map(move |y| Weight::new(x, y)))
        .filter(|w| (w.x + w.y) % 2 == 0)
        .collect();
    let mut listed = BTreeSet::new();
    for m1 in 0..=n {
        for m2 in 0..=n {
            for i in -m2..=m2 {
                let w = Weight::new(3 + m1 + m2 + i, 3 + m1 + m2 - i);
                if w.norm() <= n {
                    listed.insert(w);
                }
            }
        }
    }
    let got = cert.minimal_types();
    ensure(got == square, || format!("{} minimal types, expected {}", got.len(), square.len()))?;
    ensure(got == listed, || "minimal types differ from the listed set".into())?;
    ensure(cert.summands.iter().all(|s| s.mult == 1), || "a ray has multiplicity > 1".into())?;
    ensure(cert.exact && cert.residual.is_empty(), || "nonzero residual".into())?;
    within(elapsed, Duration::from_secs(5))?;
    let count = got.len();
    certs.push(("aq:0 gl".into(), cert));
    Ok(format!("{count} rays, listed set matched, residual 0, {elapsed:.2?}"))
}

fn c5() -> Outcome {
    let cases = [
        (ModuleDescriptor::AqModule(0), U2Variant::V1, true),
        (ModuleDescriptor::AqModule(0), U2Variant::V2, false),
        (ModuleDescriptor::AqPrime(0), U2Variant::V1, false),
        (ModuleDescriptor::AqPrime(0), U2Variant::V2, true),
    ];
    let mut witnesses = Vec::new();
    for (d, v, expect) in cases {
        let verdict = admissibility(&d, v).map_err(err)?;
        ensure(verdict.is_admissible() == expect, || format!("{d} {v:?}: wrong verdict"))?;
        if let Admissibility::NotAdmissible { witness, contributors } = verdict {
            ensure(contributors.count == ContributorCount::Infinite, || {
                format!("{d} {v:?}: witness has finitely many contributors")
            })?;
            witnesses.push(format!("{d}/{v:?}@{}", witness.hw()));
        }
    }
    let mut swept = 0;
    for a in 0..=12 {
        for b in -a..=a {
            let r = SO4Irrep::new(a, b).map_err(err)?;
            let mut flipped: Vec<_> = restrict_so4(r, U2Variant::V1)
                .into_iter()
                .map(|(k, m)| (k.e2_flip(), m))
                .collect();
            let mut direct = restrict_so4(r.e2_flip(), U2Variant::V2);
            flipped.sort();
            direct.sort();
            ensure(flipped == direct, || format!("flip fails at {r}"))?;
            swept += 1;
        }
    }
    Ok(format!("witnesses {}, flip checked on {swept} types", witnesses.join(" ")))
}

fn c6(certs: &mut Vec<(String, DecompositionCertificate)>) -> Outcome {
    let n = 40;
    let m3 = ktypes(&ModuleDescriptor::AqModule(-3), n).map_err(err)?;
    let m2 = ktypes(&ModuleDescriptor::AqModule(-2), n).map_err(err)?;
    let ladder = ktypes(&ModuleDescriptor::Ladder, n).map_err(err)?;
    ensure(m3 == m2.plus(&ladder), || "K-types of aq:-3 are not aq:-2 + ladder".into())?;

    let sp = verify_branching(&ModuleDescriptor::Ladder, Subgroup::Sp, n).map_err(err)?;
    ensure(all_passed(&sp.clauses), || "ladder sp report failed".into())?;
    ensure(
        sp.certificate.descriptors() == vec![ModuleDescriptor::SpCone(0)],
        || format!("ladder sp summands {:?}", sp.certificate.descriptors()),
    )?;

    let gl = verify_branching(&ModuleDescriptor::Ladder, Subgroup::Gl, n).map_err(err)?;
    ensure(all_passed(&gl.clauses), || "ladder gl report failed".into())?;
    let axes: BTreeSet<Weight> = (0..=n as i64 / 2)
        .flat_map(|t| [Weight::new(2 * t, 0), Weight::new(0, 2 * t)])
        .collect();
    ensure(gl.certificate.minimal_types() == axes, || "ladder gl minimal types".into())?;

    let whole = verify_branching(&ModuleDescriptor::AqModule(-3), Subgroup::Sp, n).map_err(err)?;
    ensure(all_passed(&whole.clauses), || "aq:-3 sp report failed".into())?;
    let mut floors = cone_floors(&whole.certificate)?;
    floors.sort();
    ensure(floors == (0..=n as u64).collect::<Vec<_>>(), || format!("aq:-3 floors {floors:?}"))?;
    let part = decompose(
        &restrict_module(&ModuleDescriptor::AqModule(-2), U2Variant::V1, n).map_err(err)?.table,
        Family::SpCones,
    )
    .map_err(err)?;
    let mut factorwise = cone_floors(&part)?;
    factorwise.extend(cone_floors(&sp.certificate)?);
    factorwise.sort();
    ensure(floors == factorwise, || "aq:-3 floors differ from the factorwise sum".into())?;

    certs.push(("ladder sp".into(), sp.certificate));
    certs.push(("ladder gl".into(), gl.certificate));
    certs.push(("aq:-3 sp".into(), whole.certificate));
    certs.push(("aq:-2 sp".into(), part));
    Ok(format!("K-type sum, one spherical cone, {} axis rays, floors 0..{n}", axes.len()))
}

fn c7(grid_summands: &mut Vec<(String, Vec<ModuleDescriptor>)>) -> Outcome {
    let t = Instant::now();
    let g = pseudo_dual_grid(20).map_err(err)?;
    let elapsed = t.elapsed();
    ensure(all_passed(&g.clauses), || "a grid clause failed".into())?;
    let (sp, gl) = (g.sp_bijection.len(), g.gl_bijection.len());
    grid_summands.push(("grid sp".into(), g.sp_bijection.into_iter().map(|p| p.summand).collect()));
    grid_summands.push(("grid gl".into(), g.gl_bijection.into_iter().map(|p| p.summand).collect()));
    Ok(format!("{sp} sp pairs, {gl} gl pairs, {elapsed:.2?}"))
}

fn c8(certs: &[(String, DecompositionCertificate)], grid: &[(String, Vec<ModuleDescriptor>)]) -> Outcome {
    let mut checked = 0;
    for (name, cert) in certs {
        ensure(cert.is_multiplicity_free(), || format!("{name} repeats a summand"))?;
        let mut seen = BTreeMap::new();
        for s in &cert.summands {
            *seen.entry(s.module.to_string()).or_insert(0u64) += s.mult;
        }
        ensure(seen.values().all(|&m| m == 1), || format!("{name} repeats a summand"))?;
        checked += 1;
    }
    for (name, summands) in grid {
        let distinct: BTreeSet<String> = summands.iter().map(|d| d.to_string()).collect();
        ensure(distinct.len() == summands.len(), || format!("{name} repeats a summand"))?;
        checked += 1;
    }
    Ok(format!("{checked} certificates"))
}

fn cli_suite(bin: &str, dir: &Path) -> Result<(), String> {
    let o = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["ktypes", "--module", "aq:0", "--max", "12", "--out", &o("ktypes_aq0.tsv")],
        vec!["ktypes", "--module", "ladder", "--max", "12", "--format", "json", "--out", &o("ktypes_ladder.json")],
        vec!["ktypes", "--module", "sp:0", "--max", "12", "--out", &o("ktypes_sp0.tsv")],
        vec!["restrict", "--module", "aq:0", "--subgroup", "sp", "--max", "20", "--format", "json", "--out", &o("restrict_sp.json")],
        vec!["restrict", "--module", "aq:0", "--variant", "V2", "--max", "12", "--format", "json", "--out", &o("restrict_v2.json")],
        vec!["decompose", "--module", "aq:0", "--subgroup", "sp", "--max", "40", "--out", &o("decompose_sp.tsv")],
        vec!["decompose", "--module", "aq:0", "--subgroup", "gl", "--max", "40", "--format", "json", "--out", &o("decompose_gl.json")],
        vec!["admissible", "--module", "aq:0", "--variant", "V1", "--format", "json", "--out", &o("adm_v1.json")],
        vec!["admissible", "--module", "aq:0", "--variant", "V2", "--out", &o("adm_v2.tsv")],
        vec!["verify", "structure", "--out", &o("verify_structure.json")],
        vec!["verify", "branching", "--module", "aq:0", "--subgroup", "sp", "--max", "40", "--out", &o("verify_aq_sp.json")],
        vec!["verify", "branching", "--module", "aq:0", "--subgroup", "gl", "--max", "40", "--out", &o("verify_aq_gl.json")],
        vec!["verify", "branching", "--module", "aq:-3", "--subgroup", "sp", "--max", "40", "--out", &o("verify_aqm3.json")],
        vec!["verify", "branching", "--module", "ladder", "--subgroup", "gl", "--max", "40", "--out", &o("verify_ladder.json")],
        vec!["verify", "grid", "--max", "20", "--out", &o("verify_grid.json")],
        vec!["grid", "--max", "20", "--out", &o("grid.tsv")],
        vec!["figures", "--out", &o("figures")],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(str::to_owned).collect())
    .collect();
    for args in runs {
        let status = Command::new(bin).args(&args).status().map_err(err)?;
        ensure(status.success(), || format!("`{}` exited with {status}", args.join(" ")))?;
    }
    Ok(())
}

fn collect(dir: &Path, prefix: &Path, out: &mut BTreeMap<String, Vec<u8>>) -> std::io::Result<()> {
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect(&path, prefix, out)?;
        } else {
            let rel = path.strip_prefix(prefix).unwrap_or(&path).to_string_lossy().into_owned();
            out.insert(rel, fs::read(&path)?);
        }
    }
    Ok(())
}

fn c9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_sl4-branch");
    let (a, b) = (tempfile::tempdir().map_err(err)?, tempfile::tempdir().map_err(err)?);
    let t = Instant::now();
    cli_suite(bin, a.path())?;
    let first = t.elapsed();
    cli_suite(bin, b.path())?;
    let (mut fa, mut fb) = (BTreeMap::new(), BTreeMap::new());
    collect(a.path(), a.path(), &mut fa).map_err(err)?;
    collect(b.path(), b.path(), &mut fb).map_err(err)?;
    ensure(fa.keys().eq(fb.keys()), || "different file sets".into())?;
    for (name, bytes) in &fa {
        ensure(fb[name] == *bytes, || format!("{name} differs between runs"))?;
    }
    within(first, Duration::from_secs(30))?;
    Ok(format!("{} artifacts identical, suite {first:.2?}", fa.len()))
}

fn main() -> ExitCode {
    let mut certs = Vec::new();
    let mut grid = Vec::new();
    let results: Vec<(u32, Outcome)> = vec![
        (1, c1()),
        (2, c2()),
        (3, c3(&mut certs)),
        (4, c4(&mut certs)),
        (5, c5()),
        (6, c6(&mut certs)),
        (7, c7(&mut grid)),
        (8, c8(&certs, &grid)),
        (9, c9()),
    ];
    let mut failed = false;
    for (i, r) in &results {
        match r {
            Ok(msg) => println!("criterion {i}: PASS ({msg})"),
            Err(msg) => {
                failed = true;
                println!("criterion {i}: FAIL ({msg})");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
