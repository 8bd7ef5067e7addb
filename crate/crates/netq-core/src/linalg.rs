//! Exact linear algebra: fraction-free determinants of polynomial matrices,
//! dense rational matrices, and Gaussian elimination over any scalar field.

use crate::multipoly::MultiPoly;
use crate::num::rat;
use crate::num::{Rat, Scalar};


/// Determinant of a square matrix of polynomials by Bareiss one-step
/// fraction-free elimination. All intermediate divisions are exact, which
/// keeps entry growth polynomial instead of exponential.
pub fn det_poly_matrix<K: Scalar>(m: &[Vec<MultiPoly<K>>]) -> MultiPoly<K> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let vars = if n == 0 {
        panic!("empty matrix");
    } else {
        m[0][0].vars.clone()
    };
    let mut a: Vec<Vec<MultiPoly<K>>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev_pivot = MultiPoly::one(&vars);
    for k in 0..n {
        // pivot search
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        if k == n - 1 {
            break;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&pivot).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t
                    .exact_div(&prev_pivot)
                    .expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(&vars);
        }
        prev_pivot = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant of two polynomials with respect to one variable of
/// their common ring. The entries of the Sylvester matrix live in the
/// remaining variables.
pub fn resultant<K: Scalar>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    var: usize,
) -> Result<MultiPoly<K>, DegenerateResultant> {
    let fd = f.degree_in(var) as usize;
    let gd = g.degree_in(var) as usize;
    if fd == 0 && gd == 0 {
        return Err(DegenerateResultant);
    }
    // res(f, g) with f constant in var: f^{deg g} (and symmetrically)
    if fd == 0 {
        return Ok(f.pow(gd as u32));
    }
    if gd == 0 {
        return Ok(g.pow(fd as u32));
    }
    let fc = f.coeffs_in_var(var);
    let gc = g.coeffs_in_var(var);
    let n = fd + gd;
    let vars = f.vars.clone();
    let zero = MultiPoly::zero(&vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    for row in 0..gd {
        for (i, c) in fc.iter().enumerate() {
            m[row][row + fd - i] = c.clone();
        }
    }
    for row in 0..fd {
        for (i, c) in gc.iter().enumerate() {
            m[gd + row][row + gd - i] = c.clone();
        }
    }
    Ok(det_poly_matrix(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateResultant;

impl std::fmt::Display for DegenerateResultant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "resultant of two polynomials constant in the eliminated variable")
    }
}

impl std::error::Error for DegenerateResultant {}

/// Dense matrix over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![rat(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = rat(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += t;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        gauss(&mut m.data, m.rows, m.cols).len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = rat(1);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.at(i, k).is_zero());
            let Some(p) = pivot else { return rat(0) };
            if p != k {
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(k, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(k, j) = a;
                }
                det = -det;
            }
            let pv = m.at(k, k).clone();
            det *= &pv;
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k) / &pv;
                for j in k..n {
                    let t = m.at(k, j) * &factor;
                    *m.at_mut(i, j) -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = rat(1);
        }
        for k in 0..n {
            let pivot = (k..n).find(|&i| !aug.at(i, k).is_zero())?;
            if pivot != k {
                for j in 0..2 * n {
                    let a = aug.at(pivot, j).clone();
                    let b = aug.at(k, j).clone();
                    *aug.at_mut(pivot, j) = b;
                    *aug.at_mut(k, j) = a;
                }
            }
            let pv = aug.at(k, k).clone();
            for j in 0..2 * n {
                let t = aug.at(k, j) / &pv;
                *aug.at_mut(k, j) = t;
            }
            for i in 0..n {
                if i == k || aug.at(i, k).is_zero() {
                    continue;
                }
                let f = aug.at(i, k).clone();
                for j in 0..2 * n {
                    let t = aug.at(k, j) * &f;
                    *aug.at_mut(i, j) -= t;
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = gauss(&mut m.data, m.rows, m.cols);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = vec![];
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![rat(0); self.cols];
            v[free] = rat(1);
            for &(r, c) in pivots.iter().rev() {
                // row r: m[r][c] * v[c] + sum_{j>c} m[r][j] v[j] = 0
                let mut s = rat(0);
                for j in c + 1..self.cols {
                    if !m.data[r * self.cols + j].is_zero() {
                        s += &m.data[r * self.cols + j] * &v[j];
                    }
                }
                v[c] = -s / &m.data[r * self.cols + c];
            }
            basis.push(v);
        }
        basis
    }
}

/// Row-reduce in place; returns the (row, col) pivot list.
fn gauss(data: &mut [Rat], rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !data[i * cols + c].is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let pv = data[r * cols + c].clone();
        for i in r + 1..rows {
            if data[i * cols + c].is_zero() {
                continue;
            }
            let f = &data[i * cols + c] / &pv;
            for j in c..cols {
                let t = &data[r * cols + j] * &f;
                data[i * cols + j] -= t;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Rank of a matrix over an arbitrary scalar field.
pub fn rank_scalar<K: Scalar>(rows: &mut Vec<Vec<K>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let nrows = rows.len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == nrows {
            break;
        }
        let pivot = (rank..nrows).find(|&i| !rows[i][c].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let pv_inv = rows[rank][c].inv();
        for i in rank + 1..nrows {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].mul(&pv_inv);
            for j in c..cols {
                let t = rows[rank][j].mul(&f);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{poly_q, vars_lmn, PolyQ};
    use crate::num::rat;

    #[test]
    fn det_two_by_two() {
        // [[l, 1], [1, l]] -> l^2 - 1
        let vs = vars_lmn();
        let l = PolyQ::variable(&vs, 0);
        let one = PolyQ::one(&vs);
        let m = vec![vec![l.clone(), one.clone()], vec![one.clone(), l.clone()]];
        let d = det_poly_matrix(&m);
        assert_eq!(d, poly_q(&vs, &[(1, &[2, 0, 0]), (-1, &[0, 0, 0])]));
    }

    #[test]
    fn det_diag_with_zero() {
        let vs = vars_lmn();
        let l = PolyQ::variable(&vs, 0);
        let m_ = PolyQ::variable(&vs, 1);
        let n_ = PolyQ::variable(&vs, 2);
        let z = PolyQ::zero(&vs);
        let m = vec![
            vec![l, z.clone(), z.clone(), z.clone()],
            vec![z.clone(), m_, z.clone(), z.clone()],
            vec![z.clone(), z.clone(), n_, z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone()],
        ];
        assert!(det_poly_matrix(&m).is_zero());
    }

    #[test]
    fn resultant_linear_substitution() {
        // res_y(y^2 - x, y - 1) = 1 - x
        let vs = crate::multipoly::vars_xyz();
        let f = poly_q(&vs, &[(1, &[0, 2, 0]), (-1, &[1, 0, 0])]);
        let g = poly_q(&vs, &[(1, &[0, 1, 0]), (-1, &[0, 0, 0])]);
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r, poly_q(&vs, &[(1, &[0, 0, 0]), (-1, &[1, 0, 0])]));
    }

    #[test]
    fn resultant_common_factor_vanishes() {
        // res_x((x-y) h, (x-y) k) = 0
        let vs = crate::multipoly::vars_xyz();
        let xmy = poly_q(&vs, &[(1, &[1, 0, 0]), (-1, &[0, 1, 0])]);
        let h = poly_q(&vs, &[(1, &[1, 0, 0]), (2, &[0, 0, 1])]);
        let k = poly_q(&vs, &[(3, &[1, 0, 0]), (-1, &[0, 0, 0])]);
        let r = resultant(&xmy.mul(&h), &xmy.mul(&k), 0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = QMat::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
        ]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &v[0] * rat(1) + &v[1] * rat(2) + &v[2] * rat(3);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMat::from_rows(vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(3)],
            vec![rat(1), rat(0), rat(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(3));
    }
}
