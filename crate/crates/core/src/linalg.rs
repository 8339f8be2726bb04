//! Small dense vector/matrix helpers for dimensions N <= 3 and modest
//! least-squares systems. Row-major storage.

use crate::{DunklError, Real, Result};

pub fn dot(a: &[Real], b: &[Real]) -> Real {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Real]) -> Real {
    dot(a, a)
}

pub fn norm(a: &[Real]) -> Real {
    norm_sq(a).sqrt()
}

pub fn sub(a: &[Real], b: &[Real]) -> Vec<Real> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Real], s: Real) -> Vec<Real> {
    a.iter().map(|x| x * s).collect()
}

pub fn dist(a: &[Real], b: &[Real]) -> Real {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<Real>()
        .sqrt()
}

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<Real>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn at(&self, i: usize, j: usize) -> Real {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Real) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix {
            n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[Real]) -> Vec<Real> {
        let n = self.n;
        (0..n).map(|i| dot(&self.data[i * n..(i + 1) * n], x)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.at(i, j);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> Real {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, Real::max)
    }
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n`, consumed.
pub fn solve_dense(mut a: Vec<Vec<Real>>, mut b: Vec<Real>) -> Result<Vec<Real>> {
    let n = b.len();
    for col in 0..n {
        let (pivot, pv) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pv == 0.0 {
            return Err(DunklError::InvalidArgument("singular system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

/// Weighted least squares `min ||W^(1/2)(A x - y)||` via normal equations.
pub fn least_squares(rows: &[Vec<Real>], y: &[Real], w: &[Real]) -> Result<Vec<Real>> {
    let m = rows.len();
    let p = rows[0].len();
    let mut ata = vec![vec![0.0; p]; p];
    let mut aty = vec![0.0; p];
    for r in 0..m {
        let wr = w[r];
        for i in 0..p {
            let ai = rows[r][i] * wr;
            aty[i] += ai * y[r];
            for j in i..p {
                ata[i][j] += ai * rows[r][j];
            }
        }
    }
    for i in 0..p {
        for j in 0..i {
            ata[i][j] = ata[j][i];
        }
    }
    solve_dense(ata, aty)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_dense(a, vec![5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_products() {
        let id = Matrix::identity(3);
        let m = Matrix {
            n: 3,
            data: vec![1., 2., 0., 0., 1., 4., 1., 0., 1.],
        };
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }
}
