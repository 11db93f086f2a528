use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::subspace::{real_inertia, Field, SubspaceBasis};
use super::{GaussianScalar, Matrix4};
use crate::error::{Error, Result};
use crate::report::{first_failure, set_string, Clause};
use crate::weights::Weight;

/// `Q₁ = diag(J, −J)`, `J = [[0, −1], [1, 0]]`.
pub fn q1() -> Matrix4 {
    Matrix4::from_ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
}

/// `Q₂ = diag(J, J)`; also the elliptic element `x₀`.
pub fn q2() -> Matrix4 {
    Matrix4::from_ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
}

/// The 2×2 block `J`, embedded in the upper-left corner.
pub fn j_block() -> Matrix4 {
    Matrix4::from_ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
}

/// The standard symplectic form `[[0, −I], [I, 0]]`.
pub fn standard_form() -> Matrix4 {
    Matrix4::from_ints([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
}

/// Orthogonal `P` with `P·Q₁·Pᵀ` equal to [`standard_form`].
pub fn conjugator() -> Matrix4 {
    Matrix4::from_ints([[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
}

pub fn gl4_identity() -> Matrix4 {
    Matrix4::identity()
}

/// `E_ij` for `i ≠ j`, then `E_ii − E_{i+1,i+1}`.
pub fn sl4_basis() -> Vec<Matrix4> {
    let mut basis = Vec::with_capacity(15);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                basis.push(Matrix4::unit(i, j));
            }
        }
    }
    for i in 0..3 {
        basis.push(&Matrix4::unit(i, i) - &Matrix4::unit(i + 1, i + 1));
    }
    basis
}

pub fn sl4() -> SubspaceBasis {
    SubspaceBasis::span(Field::Real, sl4_basis())
}

fn gl4() -> SubspaceBasis {
    SubspaceBasis::span(Field::Real, sl4_basis().into_iter().chain([gl4_identity()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InvolutionKind {
    Symplectic,
    Centralizer,
    Theta,
}

/// Differential of an involution of SL(4,ℝ).
#[derive(Debug, Clone)]
pub struct Involution {
    kind: InvolutionKind,
    q: Matrix4,
    q_inv: Matrix4,
}

impl Involution {
    /// `g ↦ Q·(g⁻¹)ᵀ·Q⁻¹`, differential `X ↦ −Q·Xᵀ·Q⁻¹`.
    pub fn symplectic(q: Matrix4) -> Self {
        Self::with_form(InvolutionKind::Symplectic, q)
    }

    /// `g ↦ Q·g·Q⁻¹`.
    pub fn centralizer(q: Matrix4) -> Self {
        Self::with_form(InvolutionKind::Centralizer, q)
    }

    /// Cartan involution `X ↦ −Xᵀ`.
    pub fn theta() -> Self {
        Self::with_form(InvolutionKind::Theta, Matrix4::identity())
    }

    fn with_form(kind: InvolutionKind, q: Matrix4) -> Self {
        let q_inv = q.inverse().expect("form is invertible");
        Involution { kind, q, q_inv }
    }

    pub fn apply(&self, x: &Matrix4) -> Matrix4 {
        match self.kind {
            InvolutionKind::Symplectic => -&(&(&self.q * &x.transpose()) * &self.q_inv),
            InvolutionKind::Centralizer => &(&self.q * x) * &self.q_inv,
            InvolutionKind::Theta => -&x.transpose(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionId {
    Sigma1,
    Sigma2,
    Sigma1p,
    Sigma2p,
    Theta,
}

impl InvolutionId {
    pub const ALL: [InvolutionId; 5] = [
        InvolutionId::Sigma1,
        InvolutionId::Sigma2,
        InvolutionId::Sigma1p,
        InvolutionId::Sigma2p,
        InvolutionId::Theta,
    ];

    pub fn involution(self) -> Involution {
        match self {
            InvolutionId::Sigma1 => Involution::symplectic(q1()),
            InvolutionId::Sigma2 => Involution::symplectic(q2()),
            InvolutionId::Sigma1p => Involution::centralizer(q1()),
            InvolutionId::Sigma2p => Involution::centralizer(q2()),
            InvolutionId::Theta => Involution::theta(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvolutionId::Sigma1 => "sigma1",
            InvolutionId::Sigma2 => "sigma2",
            InvolutionId::Sigma1p => "sigma1p",
            InvolutionId::Sigma2p => "sigma2p",
            InvolutionId::Theta => "theta",
        }
    }
}

fn fixed_of(inv: &Involution) -> SubspaceBasis {
    sl4().kernel_of(|x| &inv.apply(x) - x)
}

/// +1 eigenspace of the involution on sl(4,ℝ), as a real subalgebra.
pub fn fixed_subalgebra(id: InvolutionId) -> SubspaceBasis {
    fixed_of(&id.involution())
}

/// −1 eigenspace of the involution on sl(4,ℝ).
pub fn anti_fixed_subspace(inv: &Involution) -> SubspaceBasis {
    sl4().kernel_of(|x| &inv.apply(x) + x)
}

fn anti_fixed_in_gl4(inv: &Involution) -> SubspaceBasis {
    gl4().kernel_of(|x| &inv.apply(x) + x)
}

/// `q = l ⊕ u` with opposite nilradical `ū`, all inside sl(4,ℂ).
#[derive(Debug, Clone)]
pub struct Parabolic {
    /// Real form `l₀`, the centralizer of `Q₂` in sl(4,ℝ).
    pub l_real: SubspaceBasis,
    pub l: SubspaceBasis,
    pub u: SubspaceBasis,
    pub ubar: SubspaceBasis,
}

/// Eigenspaces of `ad(i·Q₂)` on sl(4,ℂ) for the eigenvalues 0, +2, −2.
pub fn theta_stable_parabolic() -> Parabolic {
    let x = q2().scale(&GaussianScalar::i());
    let g = sl4().complexified();
    let eigen = |lambda: i64| {
        let lam = GaussianScalar::from_int(lambda);
        g.kernel_of(|y| &x.bracket(y) - &y.scale(&lam))
    };
    let x0 = q2();
    let l_real = sl4().kernel_of(|y| x0.bracket(y));
    Parabolic {
        l: l_real.complexified(),
        l_real,
        u: eigen(2),
        ubar: eigen(-2),
    }
}

/// `Z_j = −i·(E_{2j−1,2j} − E_{2j,2j−1})`, the compact Cartan element with
/// `e_j(Z_j) = 1`.
pub fn torus_generators() -> [Matrix4; 2] {
    let mi = -GaussianScalar::i();
    [
        (&Matrix4::unit(0, 1) - &Matrix4::unit(1, 0)).scale(&mi),
        (&Matrix4::unit(2, 3) - &Matrix4::unit(3, 2)).scale(&mi),
    ]
}

/// `diag(1, 1, −1, −1)`, the split Cartan element with `f₁ − f₂` equal to 2.
pub fn split_cartan_element() -> Matrix4 {
    Matrix4::diag([1, 1, -1, -1])
}

/// For a Cartan element made of 2×2 blocks `[[x_j, −i·y_j], [i·y_j, x_j]]`,
/// returns `[(x₁, y₁), (x₂, y₂)]`, i.e. the values `(f_j, e_j)`.
pub fn cartan_coordinates(m: &Matrix4) -> Option<[(GaussianScalar, GaussianScalar); 2]> {
    let zero_off = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0), (3, 1)]
        .iter()
        .all(|&(i, j)| m.get(i, j).is_zero());
    if !zero_off {
        return None;
    }
    let block = |o: usize| {
        let x = m.get(o, o).clone();
        let y = m.get(o + 1, o).clone() * (-GaussianScalar::i());
        let consistent = *m.get(o + 1, o + 1) == x
            && *m.get(o, o + 1) == -&(&y * &GaussianScalar::i());
        consistent.then_some((x, y))
    };
    Some([block(0)?, block(2)?])
}

fn joint_eigenspace(s: &SubspaceBasis, ops: &[(&Matrix4, i64)]) -> SubspaceBasis {
    let maps: Vec<Box<dyn Fn(&Matrix4) -> Matrix4 + '_>> = ops
        .iter()
        .map(|&(op, lambda)| {
            let lam = GaussianScalar::from_int(lambda);
            Box::new(move |v: &Matrix4| &op.bracket(v) - &v.scale(&lam))
                as Box<dyn Fn(&Matrix4) -> Matrix4>
        })
        .collect();
    let refs: Vec<&dyn Fn(&Matrix4) -> Matrix4> = maps.iter().map(|b| b.as_ref()).collect();
    s.complexified().kernel_of_many(&refs)
}

/// Compact-torus weights of a torus-stable subspace with their multiplicities,
/// in decreasing lexicographic order.
///
/// `Z_j` has eigenvalues in {−1, 0, 1} on ℂ⁴, so `ad Z_j` has eigenvalues in
/// −2..=2 on gl(4,ℂ); a subspace is torus-stable iff these joint eigenspaces
/// exhaust it.
pub fn torus_weights(s: &SubspaceBasis) -> Result<Vec<(Weight, usize)>> {
    let [z1, z2] = torus_generators();
    let mut out = Vec::new();
    let mut total = 0;
    for p in (-2..=2).rev() {
        let sp = joint_eigenspace(s, &[(&z1, p)]);
        if sp.dim() == 0 {
            continue;
        }
        for q in (-2..=2).rev() {
            let d = joint_eigenspace(&sp, &[(&z2, q)]).dim();
            if d > 0 {
                out.push((Weight::new(p, q), d));
                total += d;
            }
        }
    }
    if total != s.dim() {
        return Err(Error::NotTorusStable);
    }
    Ok(out)
}

/// Weight of `∧^top s`: the sum of the torus weights of `s`.
pub fn top_exterior_weight(s: &SubspaceBasis) -> Result<Weight> {
    Ok(torus_weights(s)?
        .into_iter()
        .fold(Weight::ZERO, |acc, (w, d)| acc + w.scale(d as i64)))
}

/// A root of the fundamental Cartan `t ⊕ a`: compact part `e` plus
/// `f_diff·(f₁ − f₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootDatum {
    pub e: Weight,
    pub f_diff: i64,
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.e)?;
        match self.f_diff {
            0 => Ok(()),
            1 => f.write_str("+(f1-f2)"),
            -1 => f.write_str("-(f1-f2)"),
            c => write!(f, "{c:+}(f1-f2)"),
        }
    }
}

/// Joint eigen-decomposition under `Z₁`, `Z₂` and the split element.
pub fn root_data(s: &SubspaceBasis) -> Result<Vec<(RootDatum, usize)>> {
    let [z1, z2] = torus_generators();
    let ha = split_cartan_element();
    let [(x1, _), (x2, _)] = cartan_coordinates(&ha).expect("split element is Cartan");
    let fdiff_on_ha = (&x1 - &x2).to_integer().expect("integral");
    let mut out = Vec::new();
    let mut total = 0;
    for p in (-2..=2).rev() {
        let sp = joint_eigenspace(s, &[(&z1, p)]);
        if sp.dim() == 0 {
            continue;
        }
        for q in (-2..=2).rev() {
            let spq = joint_eigenspace(&sp, &[(&z2, q)]);
            if spq.dim() == 0 {
                continue;
            }
            for r in [2, 0, -2] {
                let d = joint_eigenspace(&spq, &[(&ha, r)]).dim();
                if d > 0 {
                    let e = Weight::new(p, q);
                    out.push((RootDatum { e, f_diff: r / fdiff_on_ha }, d));
                    total += d;
                }
            }
        }
    }
    if total != s.dim() {
        return Err(Error::NotTorusStable);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightMult {
    pub weight: Weight,
    pub mult: usize,
}

fn weight_mults(ws: &[(Weight, usize)]) -> Vec<WeightMult> {
    ws.iter()
        .map(|&(weight, mult)| WeightMult { weight, mult })
        .collect()
}

fn weights_string(ws: &[(Weight, usize)]) -> String {
    set_string(ws.iter().map(|(w, d)| format!("{w}x{d}")))
}

/// Record of the checks on the parabolic and on its position relative to the
/// symplectic subalgebra.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub realization: String,
    pub parabolic_dims: [usize; 3],
    pub u_weights: Vec<WeightMult>,
    pub u_roots: Vec<RootDatum>,
    pub u_top_weight: Weight,
    pub clauses: Vec<Clause>,
}

fn block_form_holds(m: &Matrix4) -> bool {
    // (A X; Y −Aᵀ) with X, Y symmetric.
    let ok_d = (0..2).all(|i| (0..2).all(|j| *m.get(2 + i, 2 + j) == -m.get(j, i)));
    let ok_x = *m.get(0, 3) == *m.get(1, 2);
    let ok_y = *m.get(3, 0) == *m.get(2, 1);
    ok_d && ok_x && ok_y
}

struct SymplecticSide {
    label: &'static str,
    h: SubspaceBasis,
    s: SubspaceBasis,
    s_gl: SubspaceBasis,
    s_prime: SubspaceBasis,
}

fn symplectic_side(label: &'static str, form: Matrix4) -> SymplecticSide {
    let sigma = Involution::symplectic(form.clone());
    let sigma_p = Involution::centralizer(form);
    SymplecticSide {
        label,
        h: fixed_of(&sigma),
        s: anti_fixed_subspace(&sigma),
        s_gl: anti_fixed_in_gl4(&sigma),
        s_prime: anti_fixed_subspace(&sigma_p),
    }
}

fn side_clauses(side: &SymplecticSide, par: &Parabolic, k: &SubspaceBasis) -> Vec<Clause> {
    let tag = |id: &str| format!("{}/{id}", side.label);
    let mut out = Vec::new();

    // (a) l ∩ h₁ ≅ sl(2,ℝ) ⊕ iℝ and dim(u ∩ h₁) = 3.
    let lh = par.l_real.intersect(&side.h);
    let center = lh.center();
    let derived = lh.derived();
    out.push(Clause::eq(&tag("l-cap-h1-dim"), "dim(l ∩ h1) = 4", 4, lh.dim()));
    out.push(Clause::eq(&tag("l-cap-h1-center"), "center of l ∩ h1 is one-dimensional", 1, center.dim()));
    out.push(Clause::holds(
        &tag("l-cap-h1-center-compact"),
        "center of l ∩ h1 lies in k (the iR summand)",
        k.contains_all(&center),
    ));
    let inertia = real_inertia(&derived.trace_form());
    out.push(Clause::eq(
        &tag("l-cap-h1-derived-sl2r"),
        "[l ∩ h1, l ∩ h1] is 3-dimensional with trace form of signature (2,1), i.e. sl(2,R)",
        "(3, Some((2, 1, 0)))".to_owned(),
        format!("({}, {:?})", derived.dim(), inertia),
    ));
    out.push(Clause::holds(
        &tag("l-cap-h1-splits"),
        "l ∩ h1 = center ⊕ derived",
        center.meets_trivially(&derived) && center.sum(&derived).same_as(&lh),
    ));
    let uh = par.u.intersect(&side.h);
    out.push(Clause::eq(&tag("u-cap-h1-dim"), "dim(u ∩ h1) = 3", 3, uh.dim()));

    // (d) u ∩ k = u ∩ k ∩ h₁, one-dimensional.
    let uk = par.u.intersect(k);
    let ukh = uk.intersect(&side.h);
    out.push(Clause::eq(
        &tag("u-cap-k"),
        "dim(u ∩ k) = dim(u ∩ k ∩ h1) = 1 and the spaces coincide",
        "(1, 1, true)".to_owned(),
        format!("({}, {}, {})", uk.dim(), ukh.dim(), uk.same_as(&ukh)),
    ));

    // (b) u ∩ s₁ is a line carrying a nontrivial character of l ∩ h₁.
    let us = par.u.intersect(&side.s);
    let lh_c = lh.complexified();
    out.push(Clause::eq(&tag("u-cap-s1-dim"), "dim(u ∩ s1) = 1", 1, us.dim()));
    out.push(Clause::holds(
        &tag("u-cap-s1-character"),
        "l ∩ h1 preserves u ∩ s1 and acts on it nontrivially",
        us.is_stable_under(&lh_c) && us.bracket_image(&lh_c).dim() > 0,
    ));

    // (c) l ∩ s₁ = trivial ⊕ adjoint of l ∩ h₁ (the trivial line is the
    // center of gl(4)).
    let l_gl = par.l_real.sum(&SubspaceBasis::span(Field::Real, [gl4_identity()]));
    let ls = l_gl.intersect(&side.s_gl);
    let invariant = ls.annihilated_by(&lh);
    let moved = ls.bracket_image(&lh);
    let identity_line = SubspaceBasis::span(Field::Real, [gl4_identity()]);
    out.push(Clause::eq(
        &tag("l-cap-s1-split"),
        "l ∩ s1 (in gl(4)) has invariant dimensions {1, 3}",
        "(4, 1, 3)".to_owned(),
        format!("({}, {}, {})", ls.dim(), invariant.dim(), moved.dim()),
    ));
    out.push(Clause::holds(
        &tag("l-cap-s1-trivial-is-center"),
        "the trivial summand is spanned by the identity matrix",
        invariant.same_as(&identity_line),
    ));
    out.push(Clause::holds(
        &tag("l-cap-s1-adjoint"),
        "the 3-dimensional summand is invariant, complementary and has no invariant vectors",
        moved.is_stable_under(&lh)
            && moved.meets_trivially(&invariant)
            && moved.sum(&invariant).same_as(&ls)
            && moved.annihilated_by(&lh).dim() == 0,
    ));
    let ls_sl = par.l_real.intersect(&side.s);
    out.push(Clause::holds(
        &tag("l-cap-s1-sl4-part"),
        "inside sl(4) only the adjoint summand remains (dimension 3)",
        ls_sl.dim() == 3 && ls_sl.same_as(&moved),
    ));

    let usp = par.u.intersect(&side.s_prime);
    out.push(Clause::eq(&tag("u-cap-s1p-dim"), "dim(u ∩ s1') = 2", 2, usp.dim()));
    out
}

/// Verifies the structure of `q` relative to `h₁`; fails with the first
/// clause that does not hold.
///
/// Dimension clauses are checked for `h₁` in both the standard-form
/// realization and the `Q₁` realization. Torus weights are read off in the
/// `Q₁` realization, the one containing the compact torus.
pub fn structure_report() -> Result<StructureReport> {
    let g = sl4();
    let basis = sl4_basis();
    let k = fixed_subalgebra(InvolutionId::Theta);
    let par = theta_stable_parabolic();
    let mut clauses = Vec::new();

    let theta = Involution::theta();
    let squares = InvolutionId::ALL.iter().all(|id| {
        let inv = id.involution();
        basis.iter().all(|b| inv.apply(&inv.apply(b)) == *b)
    });
    clauses.push(Clause::holds(
        "involutions-square",
        "every involution squares to the identity on the 15 basis matrices",
        squares,
    ));
    let commute = InvolutionId::ALL.iter().all(|id| {
        let inv = id.involution();
        basis.iter().all(|b| inv.apply(&theta.apply(b)) == theta.apply(&inv.apply(b)))
    });
    clauses.push(Clause::holds(
        "involutions-commute-theta",
        "every involution commutes with theta",
        commute,
    ));
    let fixed: BTreeMap<&str, SubspaceBasis> = InvolutionId::ALL
        .iter()
        .map(|&id| (id.name(), fixed_subalgebra(id)))
        .collect();
    let dims = set_string(fixed.iter().map(|(n, s)| format!("{n}:{}", s.dim())));
    clauses.push(Clause::eq(
        "fixed-dims",
        "dimensions of the fixed subalgebras",
        "{sigma1:10, sigma1p:7, sigma2:10, sigma2p:7, theta:6}".to_owned(),
        dims,
    ));
    clauses.push(Clause::holds(
        "fixed-bracket-closed",
        "every fixed subspace is a subalgebra",
        fixed.values().all(SubspaceBasis::is_bracket_closed),
    ));

    // Standard-form realization of h₁.
    let p = conjugator();
    let omega = standard_form();
    clauses.push(Clause::holds(
        "conjugator-form",
        "P·Q1·P^T equals the standard symplectic form",
        &(&p * &q1()) * &p.transpose() == omega,
    ));
    let std_side = symplectic_side("standard", omega);
    let q1_side = symplectic_side("q1", q1());
    let conjugated = SubspaceBasis::span(
        Field::Real,
        q1_side.h.basis().iter().map(|b| &(&p * b) * &p.transpose()),
    );
    clauses.push(Clause::holds(
        "conjugator-subalgebra",
        "P·h1·P^T is the standard-form h1",
        conjugated.same_as(&std_side.h),
    ));
    clauses.push(Clause::holds(
        "standard-block-form",
        "standard-form h1 consists of (A X; Y -A^T) with X, Y symmetric",
        std_side.h.basis().iter().all(block_form_holds),
    ));

    // The parabolic.
    let dims = [par.l.dim(), par.u.dim(), par.ubar.dim()];
    clauses.push(Clause::eq(
        "parabolic-dims",
        "dims (l, u, ubar) = (7, 4, 4)",
        "[7, 4, 4]".to_owned(),
        format!("{dims:?}"),
    ));
    let gc = g.complexified();
    let whole = par.l.sum(&par.u).sum(&par.ubar);
    clauses.push(Clause::holds(
        "parabolic-direct-sum",
        "sl(4,C) = l ⊕ u ⊕ ubar",
        whole.same_as(&gc) && dims.iter().sum::<usize>() == 15,
    ));
    clauses.push(Clause::holds(
        "levi-is-kernel",
        "l is the kernel of ad(iQ2)",
        par.l.same_as(&gc.kernel_of(|y| q2().bracket(y))),
    ));
    clauses.push(Clause::holds("u-abelian", "[u, u] = 0", par.u.is_abelian()));
    clauses.push(Clause::holds(
        "q-subalgebra",
        "l is a subalgebra and [l, u] ⊆ u, [l, ubar] ⊆ ubar",
        par.l.is_bracket_closed()
            && par.u.is_stable_under(&par.l)
            && par.ubar.is_stable_under(&par.l),
    ));
    clauses.push(Clause::holds(
        "theta-stable",
        "theta preserves l and u",
        {
            let mapped_u = SubspaceBasis::span(Field::Complex, par.u.basis().iter().map(|b| theta.apply(b)));
            let mapped_l = SubspaceBasis::span(Field::Complex, par.l.basis().iter().map(|b| theta.apply(b)));
            mapped_u.same_as(&par.u) && mapped_l.same_as(&par.l)
        },
    ));

    let u_weights = torus_weights(&par.u)?;
    clauses.push(Clause::eq(
        "u-weights",
        "compact weights of u are (2,0), (1,1) twice, (0,2)",
        "{(2,0)x1, (1,1)x2, (0,2)x1}".to_owned(),
        weights_string(&u_weights),
    ));
    let u_roots: Vec<RootDatum> = root_data(&par.u)?
        .into_iter()
        .flat_map(|(r, d)| std::iter::repeat_n(r, d))
        .collect();
    clauses.push(Clause::eq(
        "u-roots",
        "roots of u: e1+e2±(f1-f2), 2e1, 2e2",
        "{(2,0), (1,1)+(f1-f2), (1,1)-(f1-f2), (0,2)}".to_owned(),
        set_string(&u_roots),
    ));
    let l_roots: Vec<String> = root_data(&par.l)?
        .into_iter()
        .filter(|(r, _)| r.e != Weight::ZERO || r.f_diff != 0)
        .map(|(r, _)| r.to_string())
        .collect();
    clauses.push(Clause::eq(
        "l-roots",
        "roots of l: ±(e1-e2±(f1-f2))",
        "{(1,-1)+(f1-f2), (1,-1)-(f1-f2), (-1,1)+(f1-f2), (-1,1)-(f1-f2)}".to_owned(),
        set_string(l_roots),
    ));
    let u_top_weight = top_exterior_weight(&par.u)?;
    clauses.push(Clause::eq("u-top-weight", "weight of ∧^top u", Weight::new(4, 4), u_top_weight));

    clauses.extend(side_clauses(&std_side, &par, &k));
    clauses.extend(side_clauses(&q1_side, &par, &k));

    // Weights, read in the Q₁ realization.
    let us = par.u.intersect(&q1_side.s);
    clauses.push(Clause::eq(
        "q1/u-cap-s1-weight",
        "u ∩ s1 has weight e1+e2",
        "{(1,1)x1}".to_owned(),
        torus_weights(&us).map_or_else(|e| e.to_string(), |w| weights_string(&w)),
    ));
    let usp = par.u.intersect(&q1_side.s_prime);
    clauses.push(Clause::eq(
        "q1/u-cap-s1p-weights",
        "u ∩ s1' is the sum of characters of weights 2e1 and 2e2",
        "{(2,0)x1, (0,2)x1}".to_owned(),
        torus_weights(&usp).map_or_else(|e| e.to_string(), |w| weights_string(&w)),
    ));
    clauses.push(Clause::eq(
        "q1/u-cap-s1p-top-weight",
        "weight of ∧^top(u ∩ s1')",
        Weight::new(2, 2).to_string(),
        top_exterior_weight(&usp).map_or_else(|e| e.to_string(), |w| w.to_string()),
    ));
    let [z1, z2] = torus_generators();
    let diagonal = &z1 + &z2;
    let std_us = par.u.intersect(&std_side.s);
    clauses.push(Clause::holds(
        "standard/u-cap-s1-central-weight",
        "in the standard realization u ∩ s1 has eigenvalue 2 = (e1+e2)(Z1+Z2) under Z1+Z2",
        joint_eigenspace(&std_us, &[(&diagonal, 2)]).same_as(&std_us),
    ));

    if let Some(bad) = first_failure(&clauses) {
        return Err(Error::StructureVerification {
            clause: format!("{} (expected {}, observed {})", bad.id, bad.expected, bad.observed),
        });
    }
    Ok(StructureReport {
        realization: "h1 in standard form (A X; Y -A^T); weights in the Q1 form".to_owned(),
        parabolic_dims: dims,
        u_weights: weight_mults(&u_weights),
        u_roots,
        u_top_weight,
        clauses,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoDualPair {
    pub tau: InvolutionId,
    pub tau_prime: InvolutionId,
    pub k_cap_h: usize,
    pub p_cap_h: usize,
    pub p_cap_h_prime: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoDualReport {
    pub pairs: Vec<PseudoDualPair>,
    pub clauses: Vec<Clause>,
}

fn multichoose(n: usize, k: usize) -> u64 {
    // C(n + k − 1, k)
    let mut r: u64 = 1;
    for i in 0..k as u64 {
        r = r * (n as u64 + i) / (i + 1);
    }
    r
}

/// Verifies `K ∩ H = K ∩ H′`, `p = p^τ ⊕ p^{τθ}` and the associated graded
/// count behind `U(g) = S(p^{τ′}) S(p^τ) U(k)` through degree 2, for both
/// pseudo dual pairs; also the identifications `L = H₂′` and
/// `K ∩ H₂ = K ∩ H₂′ = K ∩ L`.
pub fn pseudo_dual_report() -> Result<PseudoDualReport> {
    let basis = sl4_basis();
    let g = sl4();
    let k = fixed_subalgebra(InvolutionId::Theta);
    let p = anti_fixed_subspace(&Involution::theta());
    let theta = Involution::theta();
    let mut clauses = Vec::new();
    let mut pairs = Vec::new();

    for (tau, tau_p) in [
        (InvolutionId::Sigma1, InvolutionId::Sigma1p),
        (InvolutionId::Sigma2, InvolutionId::Sigma2p),
    ] {
        let tag = |id: &str| format!("{}/{id}", tau.name());
        let (inv, inv_p) = (tau.involution(), tau_p.involution());
        clauses.push(Clause::holds(
            &tag("tau-prime-is-tau-theta"),
            "tau' = tau ∘ theta on sl(4)",
            basis.iter().all(|b| inv_p.apply(b) == inv.apply(&theta.apply(b))),
        ));
        let h = fixed_subalgebra(tau);
        let hp = fixed_subalgebra(tau_p);
        let kh = k.intersect(&h);
        let khp = k.intersect(&hp);
        clauses.push(Clause::eq(
            &tag("k-cap-h"),
            "k ∩ h = k ∩ h' (dimension 4)",
            "(4, 4, true)".to_owned(),
            format!("({}, {}, {})", kh.dim(), khp.dim(), kh.same_as(&khp)),
        ));
        let ph = p.intersect(&h);
        let php = p.intersect(&hp);
        clauses.push(Clause::eq(
            &tag("p-splits"),
            "p = (p ∩ h) ⊕ (p ∩ h') with 6 + 3 = 9",
            "(6, 3, true)".to_owned(),
            format!(
                "({}, {}, {})",
                ph.dim(),
                php.dim(),
                ph.meets_trivially(&php) && ph.sum(&php).same_as(&p)
            ),
        ));
        let total = php.sum(&ph).sum(&k);
        let graded_ok = (0..=2).all(|d| {
            let mut count = 0;
            for i in 0..=d {
                for j in 0..=d - i {
                    count += multichoose(php.dim(), i)
                        * multichoose(ph.dim(), j)
                        * multichoose(k.dim(), d - i - j);
                }
            }
            count == multichoose(15, d)
        });
        clauses.push(Clause::holds(
            &tag("pbw-degree-2"),
            "g = p^tau' ⊕ p^tau ⊕ k and ordered monomials of degree <= 2 number 136",
            total.same_as(&g) && graded_ok,
        ));
        pairs.push(PseudoDualPair {
            tau,
            tau_prime: tau_p,
            k_cap_h: kh.dim(),
            p_cap_h: ph.dim(),
            p_cap_h_prime: php.dim(),
        });
    }

    let par = theta_stable_parabolic();
    let h2 = fixed_subalgebra(InvolutionId::Sigma2);
    let h2p = fixed_subalgebra(InvolutionId::Sigma2p);
    let kl = k.intersect(&par.l_real);
    clauses.push(Clause::holds(
        "levi-is-h2p",
        "the Levi l0 is h2' (centralizer of Q2)",
        par.l_real.same_as(&h2p),
    ));
    clauses.push(Clause::holds(
        "k-cap-h2-is-k-cap-l",
        "k ∩ h2 = k ∩ h2' = k ∩ l",
        k.intersect(&h2).same_as(&kl) && k.intersect(&h2p).same_as(&kl),
    ));
    let x0 = q2();
    let in_all = [q1(), q2()].iter().all(|q| {
        &(&x0.transpose() * q) * &x0 == *q && &x0 * q == q * &x0
    }) && &x0.transpose() * &x0 == Matrix4::identity();
    clauses.push(Clause::holds(
        "x0-in-all-subgroups",
        "Q2 lies in K and in H1, H2, H1', H2'",
        in_all,
    ));

    if let Some(bad) = first_failure(&clauses) {
        return Err(Error::StructureVerification {
            clause: format!("{} (expected {}, observed {})", bad.id, bad.expected, bad.observed),
        });
    }
    Ok(PseudoDualReport { pairs, clauses })
}
