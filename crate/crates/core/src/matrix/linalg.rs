//! Exact Gaussian elimination over ℚ(i).

use super::scalar::GaussianScalar;

pub type Vector = Vec<GaussianScalar>;

/// Reduced row echelon form of a set of row vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero rows only, each with a leading 1.
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = &GaussianScalar::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (c, v) in row.iter_mut().enumerate().skip(col) {
                    let t = &f * &pivot_row[c];
                    *v = &*v - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank(rows: &[Vector]) -> usize {
    match rows.first() {
        None => 0,
        Some(first) => rref(rows.to_vec(), first.len()).pivots.len(),
    }
}

/// All coefficient vectors `c` with `Σ c_j · cols[j] = 0`, as a basis of the
/// kernel.
pub fn column_kernel(cols: &[Vector]) -> Vec<Vector> {
    let n = cols.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cols[0].len();
    let rows: Vec<Vector> = (0..m)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let ech = rref(rows, n);
    let free: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianScalar::zero(); n];
            v[f] = GaussianScalar::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Coefficients expressing `target` in the span of `cols`, if it lies there.
pub fn solve_in_span(cols: &[Vector], target: &Vector) -> Option<Vector> {
    let mut extended = cols.to_vec();
    extended.push(target.iter().map(|v| -v).collect());
    let kernel = column_kernel(&extended);
    let last = cols.len();
    let pick = kernel.into_iter().find(|v| !v[last].is_zero())?;
    let scale = &GaussianScalar::one() / &pick[last];
    Some(pick[..last].iter().map(|c| c * &scale).collect())
}

pub fn combine(coeffs: &[GaussianScalar], vectors: &[Vector]) -> Vector {
    let len = vectors.first().map_or(0, Vec::len);
    let mut out = vec![GaussianScalar::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(c * x);
        }
    }
    out
}
