use serde::Serialize;

use super::linalg::{self, Vector};
use super::mat4::Matrix4;
use super::scalar::GaussianScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }
}

/// Subspace of gl(4, ℂ) given by an independent basis in reduced echelon form.
///
/// A `Real` subspace has a real-rational basis and stands for a real form; its
/// complexification has the same basis and is obtained by flipping the flag.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    basis: Vec<Matrix4>,
    field: Field,
}

impl SubspaceBasis {
    pub fn span<I: IntoIterator<Item = Matrix4>>(field: Field, generators: I) -> Self {
        let rows: Vec<Vector> = generators.into_iter().map(|m| m.to_coords()).collect();
        let ech = linalg::rref(rows, 16);
        let basis: Vec<Matrix4> = ech.rows.iter().map(|r| Matrix4::from_coords(r)).collect();
        debug_assert!(
            field == Field::Complex || basis.iter().all(Matrix4::is_real),
            "real subspace with a non-real generator"
        );
        SubspaceBasis { basis, field }
    }

    pub fn zero(field: Field) -> Self {
        SubspaceBasis {
            basis: Vec::new(),
            field,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix4] {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn complexified(&self) -> Self {
        SubspaceBasis {
            basis: self.basis.clone(),
            field: Field::Complex,
        }
    }

    fn coords(&self) -> Vec<Vector> {
        self.basis.iter().map(Matrix4::to_coords).collect()
    }

    /// Coefficients of `m` in this basis, if `m` lies in the (complex) span.
    pub fn coordinates(&self, m: &Matrix4) -> Option<Vector> {
        if m.is_zero() {
            return Some(vec![GaussianScalar::zero(); self.dim()]);
        }
        linalg::solve_in_span(&self.coords(), &m.to_coords())
    }

    pub fn contains(&self, m: &Matrix4) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn contains_all(&self, other: &SubspaceBasis) -> bool {
        self.contains_matrices(other.basis.iter().cloned())
    }

    /// One rank computation instead of a solve per matrix.
    fn contains_matrices(&self, ms: impl IntoIterator<Item = Matrix4>) -> bool {
        let mut rows = self.coords();
        rows.extend(ms.into_iter().map(|m| m.to_coords()));
        linalg::rank(&rows) == self.dim()
    }

    fn brackets<'a>(&'a self, acting: &'a SubspaceBasis) -> impl Iterator<Item = Matrix4> + 'a {
        acting
            .basis
            .iter()
            .flat_map(move |a| self.basis.iter().map(move |v| a.bracket(v)))
    }

    pub fn same_as(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let field = self.field.join(other.field);
        let mut cols = self.coords();
        cols.extend(other.basis.iter().map(|m| (-m).to_coords()));
        let kernel = linalg::column_kernel(&cols);
        let own = self.coords();
        let gens = kernel
            .iter()
            .map(|k| Matrix4::from_coords(&linalg::combine(&k[..self.dim()], &own)));
        SubspaceBasis::span(field, gens)
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let field = self.field.join(other.field);
        SubspaceBasis::span(field, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `self ∩ other = 0`.
    pub fn meets_trivially(&self, other: &SubspaceBasis) -> bool {
        self.intersect(other).dim() == 0
    }

    /// Elements `v` of `self` with `f(v) = 0`, for a linear `f`.
    pub fn kernel_of<F: Fn(&Matrix4) -> Matrix4>(&self, f: F) -> SubspaceBasis {
        self.kernel_of_many(&[&f as &dyn Fn(&Matrix4) -> Matrix4])
    }

    /// Common kernel of several linear maps restricted to `self`.
    pub fn kernel_of_many(&self, maps: &[&dyn Fn(&Matrix4) -> Matrix4]) -> SubspaceBasis {
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| maps.iter().flat_map(|f| f(b).to_coords()).collect())
            .collect();
        let own = self.coords();
        let gens: Vec<Matrix4> = linalg::column_kernel(&cols)
            .iter()
            .map(|k| Matrix4::from_coords(&linalg::combine(k, &own)))
            .collect();
        SubspaceBasis::span(self.field, gens)
    }

    /// Elements of `self` commuting with everything in `acting`.
    pub fn annihilated_by(&self, acting: &SubspaceBasis) -> SubspaceBasis {
        let maps: Vec<Box<dyn Fn(&Matrix4) -> Matrix4 + '_>> = acting
            .basis
            .iter()
            .map(|a| Box::new(move |v: &Matrix4| a.bracket(v)) as Box<dyn Fn(&Matrix4) -> Matrix4>)
            .collect();
        let refs: Vec<&dyn Fn(&Matrix4) -> Matrix4> = maps.iter().map(|b| b.as_ref()).collect();
        self.kernel_of_many(&refs)
    }

    /// Span of all brackets `[a, v]`, `a ∈ acting`, `v ∈ self`.
    pub fn bracket_image(&self, acting: &SubspaceBasis) -> SubspaceBasis {
        let field = self.field.join(acting.field);
        SubspaceBasis::span(field, self.brackets(acting))
    }

    /// `[self, self] ⊆ self`.
    pub fn is_bracket_closed(&self) -> bool {
        self.contains_matrices(self.brackets(self))
    }

    /// `[acting, self] ⊆ self`.
    pub fn is_stable_under(&self, acting: &SubspaceBasis) -> bool {
        self.contains_matrices(self.brackets(acting))
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket_image(self).dim() == 0
    }

    pub fn center(&self) -> SubspaceBasis {
        self.annihilated_by(self)
    }

    pub fn derived(&self) -> SubspaceBasis {
        self.bracket_image(self)
    }

    /// Gram matrix of the trace form `tr(XY)` on the basis.
    pub fn trace_form(&self) -> Vec<Vec<GaussianScalar>> {
        self.basis
            .iter()
            .map(|x| self.basis.iter().map(|y| (x * y).trace()).collect())
            .collect()
    }
}

/// Inertia `(positive, negative, zero)` of a real symmetric matrix, computed
/// by symmetric Gaussian elimination (congruence).
pub fn real_inertia(gram: &[Vec<GaussianScalar>]) -> Option<(usize, usize, usize)> {
    let mut a: Vec<Vec<GaussianScalar>> = gram.to_vec();
    if a.iter().flatten().any(|v| !v.is_real()) {
        return None;
    }
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        // Bring a nonzero diagonal entry to position k, creating one from an
        // off-diagonal pair if needed.
        if a[k][k].is_zero() {
            if let Some(d) = (k + 1..n).find(|&d| !a[d][d].is_zero()) {
                a.swap(k, d);
                for row in a.iter_mut() {
                    row.swap(k, d);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Replace basis vector k by e_k + e_j.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += &t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += &t;
                }
            }
        }
        if a[k][k].is_zero() {
            // Row and column k vanish.
            k += 1;
            continue;
        }
        match a[k][k].real_sign() {
            Some(1) => pos += 1,
            Some(-1) => neg += 1,
            _ => {}
        }
        let pivot = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in 0..n {
                let t = &f * &a[k][c];
                a[r][c] = &a[r][c] - &t;
            }
            for c in 0..n {
                let t = &f * &a[c][k];
                a[c][r] = &a[c][r] - &t;
            }
        }
        k += 1;
    }
    Some((pos, neg, n - pos - neg))
}
