use std::array;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::GaussianScalar;

/// 4×4 matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix4 {
    m: [[GaussianScalar; 4]; 4],
}

impl Matrix4 {
    pub fn from_fn(f: impl Fn(usize, usize) -> GaussianScalar) -> Self {
        Matrix4 {
            m: array::from_fn(|i| array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| GaussianScalar::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| GaussianScalar::from_int((i == j) as i64))
    }

    /// Matrix unit `E_ij`.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::from_fn(|r, c| GaussianScalar::from_int((r == i && c == j) as i64))
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| GaussianScalar::from_int(rows[i][j]))
    }

    pub fn diag(d: [i64; 4]) -> Self {
        Self::from_fn(|i, j| GaussianScalar::from_int(if i == j { d[i] } else { 0 }))
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianScalar {
        &self.m[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].conj())
    }

    pub fn scale(&self, s: &GaussianScalar) -> Self {
        Self::from_fn(|i, j| &self.m[i][j] * s)
    }

    pub fn trace(&self) -> GaussianScalar {
        (0..4).fold(GaussianScalar::zero(), |acc, i| acc + self.m[i][i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(GaussianScalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.m.iter().flatten().all(GaussianScalar::is_real)
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &Matrix4) -> Matrix4 {
        &(self * other) - &(other * self)
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix4> {
        let mut a: Vec<Vec<GaussianScalar>> = (0..4)
            .map(|i| {
                let mut row: Vec<_> = self.m[i].to_vec();
                row.extend((0..4).map(|j| GaussianScalar::from_int((i == j) as i64)));
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = &GaussianScalar::one() / &a[col][col];
            for v in a[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..4 {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..8 {
                        let t = &f * &a[col][c];
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
        }
        Some(Self::from_fn(|i, j| a[i][j + 4].clone()))
    }

    /// Row-major flattening to 16 coordinates.
    pub fn to_coords(&self) -> Vec<GaussianScalar> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn from_coords(v: &[GaussianScalar]) -> Self {
        assert_eq!(v.len(), 16, "a 4x4 matrix has 16 coordinates");
        Self::from_fn(|i, j| v[4 * i + j].clone())
    }
}

impl Add for &Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| &self.m[i][j] + &rhs.m[i][j])
    }
}

impl Sub for &Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| &self.m[i][j] - &rhs.m[i][j])
    }
}

impl Neg for &Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        Matrix4::from_fn(|i, j| -&self.m[i][j])
    }
}

impl Mul for &Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| {
            (0..4).fold(GaussianScalar::zero(), |acc, k| {
                acc + &self.m[i][k] * &rhs.m[k][j]
            })
        })
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.m.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 3 {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_products() {
        let j = Matrix4::from_ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]);
        let inv = j.inverse().unwrap();
        assert_eq!(inv, -&j);
        assert_eq!(&j * &inv, Matrix4::identity());
        assert!(Matrix4::unit(0, 1).inverse().is_none());
    }

    #[test]
    fn bracket_of_units() {
        // [E_01, E_10] = E_00 - E_11
        let b = Matrix4::unit(0, 1).bracket(&Matrix4::unit(1, 0));
        assert_eq!(b, Matrix4::diag([1, -1, 0, 0]));
        assert!(b.is_traceless());
    }

    #[test]
    fn coordinates_round_trip() {
        let m = Matrix4::from_fn(|i, j| GaussianScalar::from_parts(i as i64, j as i64));
        assert_eq!(Matrix4::from_coords(&m.to_coords()), m);
        assert_eq!(m.conj_transpose().conj_transpose(), m);
    }
}
