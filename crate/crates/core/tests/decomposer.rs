use branching_core::branching::{restrict_module, Subgroup};
use branching_core::catalog::{h_summand_table, ModuleDescriptor};
use branching_core::decomposer::{
    decompose, decompose_ordered, decompose_with, pseudo_dual_grid, verify_branching, ConeSupport, Family,
};
use branching_core::report::all_passed;
use branching_core::weights::{MultiplicityTable, U2Irrep, U2Variant, Weight};
use proptest::prelude::*;

fn restricted(d: &str, n: u32) -> MultiplicityTable<U2Irrep> {
    restrict_module(&d.parse().unwrap(), U2Variant::V1, n).unwrap().table
}

#[test]
fn aq_minus_three_floors() {
    let cert = decompose(&restricted("aq:-3", 20), Family::SpCones).unwrap();
    assert!(cert.exact);
    let floors: Vec<i64> = cert.summands.iter().map(|s| s.minimal_type.x).collect();
    assert_eq!(floors, (0..=20).collect::<Vec<_>>());
    // min(x,y) + 1 on even keys: one cone for each floor 0..=min.
    let t = restricted("aq:-3", 20);
    assert_eq!(t.get(&U2Irrep::v1(6, 4)), 5);
}

#[test]
fn certificates_reexpand() {
    for d in ["aq:0", "aq:-2", "aq:-3", "ladder", "aq:3"] {
        let t = restricted(d, 16);
        for f in [Family::SpCones, Family::GlRays] {
            let cert = decompose(&t, f).unwrap();
            assert!(cert.exact, "{d} {f:?}");
            assert_eq!(cert.reexpand().unwrap(), t, "{d} {f:?}");
        }
    }
}

#[test]
fn inferred_supports_agree() {
    let t = restricted("aq:-3", 18);
    assert_eq!(
        decompose_with(&t, Family::SpCones, ConeSupport::Inferred).unwrap(),
        decompose(&t, Family::SpCones).unwrap()
    );
}

#[test]
fn branching_reports_at_twenty() {
    for d in ["aq:0", "aq:-2", "aq:-3", "ladder"] {
        for s in [Subgroup::Sp, Subgroup::Gl] {
            let r = verify_branching(&d.parse().unwrap(), s, 20).unwrap();
            assert!(all_passed(&r.clauses), "{d} {s}: {:?}", r.clauses);
        }
    }
    assert!(verify_branching(&ModuleDescriptor::AqModule(0), Subgroup::Sp2, 10).is_err());
}

#[test]
fn grid_examples() {
    let g = pseudo_dual_grid(12).unwrap();
    assert!(all_passed(&g.clauses));
    for (j, p) in g.sp_bijection.iter().enumerate() {
        assert_eq!(p.ktype, Weight::new(3 + j as i64, 3 + j as i64));
        assert_eq!(p.summand, ModuleDescriptor::SpSummand(j as u64));
    }
    assert_eq!(g.gl_bijection.len(), 50);
}

fn floors() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0u64..10, 1u64..4), 0..6)
}

fn rays() -> impl Strategy<Value = Vec<((i64, i64), u64)>> {
    prop::collection::vec(((-5i64..10, 0i64..10), 1u64..3), 0..8)
}

fn linear_extensions() -> impl Strategy<Value = u8> {
    0u8..3
}

fn order_key(choice: u8) -> impl Fn(Weight) -> (i64, i64, i64) {
    move |w: Weight| match choice {
        0 => (w.x.min(w.y), w.x, w.y),
        1 => (w.x + w.y, w.x, w.y),
        _ => (w.x + w.y, -w.x, w.y),
    }
}

proptest! {
    #[test]
    fn random_cone_sums_are_recovered(fs in floors(), choice in linear_extensions()) {
        let n = 14;
        let mut t = MultiplicityTable::new(n);
        let mut expect = std::collections::BTreeMap::new();
        for (f, k) in &fs {
            t = t.plus(&h_summand_table(&ModuleDescriptor::SpCone(*f), n).unwrap().times(*k));
            *expect.entry(*f as i64).or_insert(0) += k;
        }
        let cert = decompose_ordered(&t, Family::SpCones, ConeSupport::Inferred, order_key(choice)).unwrap();
        prop_assert!(cert.exact);
        let got: std::collections::BTreeMap<i64, u64> =
            cert.summands.iter().map(|s| (s.minimal_type.x, s.mult)).collect();
        prop_assert_eq!(got, expect);
        prop_assert_eq!(cert.reexpand().unwrap(), t);
    }

    #[test]
    fn random_ray_sums_are_recovered(rs in rays(), choice in linear_extensions()) {
        let n = 12;
        let mut t = MultiplicityTable::new(n);
        for ((x, y), k) in &rs {
            if let Ok(min) = U2Irrep::new(U2Variant::V1, Weight::new(*x, *y)) {
                t = t.plus(&h_summand_table(&ModuleDescriptor::GlRay(min), n).unwrap().times(*k));
            }
        }
        let cert = decompose_ordered(&t, Family::GlRays, ConeSupport::Catalog, order_key(choice)).unwrap();
        prop_assert!(cert.exact);
        prop_assert_eq!(cert.reexpand().unwrap(), t);
    }

    #[test]
    fn order_independence_on_modules(choice in linear_extensions(), idx in 0usize..4) {
        let d = ["aq:0", "aq:-2", "aq:-3", "ladder"][idx];
        let t = restricted(d, 14);
        for f in [Family::SpCones, Family::GlRays] {
            let base = decompose(&t, f).unwrap();
            let other = decompose_ordered(&t, f, ConeSupport::Catalog, order_key(choice)).unwrap();
            prop_assert_eq!(base, other);
        }
    }
}
