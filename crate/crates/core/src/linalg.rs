//! Exact linear algebra over `Q(i)`, plus a sparse solver for systems whose
//! entries are [`Scalar`]s.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Gauss, Scalar};

/// Dense row-major matrix over `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Gauss>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Gauss::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gauss::one());
        }
        m
    }
    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Gauss>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
    pub fn get(&self, i: usize, j: usize) -> &Gauss {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Gauss) {
        self.data[i * self.cols + j] = v;
    }
    pub fn column(&self, j: usize) -> Vec<Gauss> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn mul_vec(&self, v: &[Gauss]) -> Vec<Gauss> {
        (0..self.rows)
            .map(|i| {
                let mut s = Gauss::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s = &s + &(a * &v[j]);
                    }
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Gauss>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Gauss::zero(); self.cols];
            v[free] = Gauss::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Gauss::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves `self · x = b` exactly; `None` if inconsistent.
    pub fn solve(&self, b: &[Gauss]) -> Option<Vec<Gauss>> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Gauss::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("solution is not unique ({free} free unknowns)")]
    NotUnique { free: usize },
    #[error("exact solve would divide by the non-constant scalar {pivot}")]
    NonConstantPivot { pivot: String },
}

/// One sparse equation `Σ coeffs[j]·x_j = rhs`.
#[derive(Clone, Debug, Default)]
pub struct Equation {
    pub coeffs: BTreeMap<usize, Scalar>,
    pub rhs: Scalar,
}

/// Solves a sparse system with [`Scalar`] entries for a unique solution.
///
/// Only pivots that do not depend on `k` or `c` are used. If the remaining
/// system can only be reduced by dividing by a `k`- or `c`-dependent entry the
/// solve fails with [`SolveError::NonConstantPivot`].
pub fn solve_scalar_system(n_unknowns: usize, eqs: Vec<Equation>) -> Result<Vec<Scalar>, SolveError> {
    let mut rows: Vec<Equation> = eqs.into_iter().filter(|e| !(e.coeffs.is_empty() && e.rhs.is_zero())).collect();
    let mut pivot_rows: Vec<(usize, Equation)> = Vec::new();
    loop {
        let mut choice = None;
        'search: for (ri, row) in rows.iter().enumerate() {
            for (&col, v) in &row.coeffs {
                if let Some(g) = v.as_constant() {
                    if !g.is_zero() {
                        choice = Some((ri, col));
                        break 'search;
                    }
                }
            }
        }
        let Some((ri, col)) = choice else { break };
        let mut prow = rows.swap_remove(ri);
        let inv = Scalar::from_gauss(prow.coeffs[&col].as_constant().unwrap().inv().unwrap());
        for v in prow.coeffs.values_mut() {
            *v = &*v * &inv;
        }
        prow.rhs = &prow.rhs * &inv;
        let eliminate = |row: &mut Equation, prow: &Equation| {
            if let Some(f) = row.coeffs.remove(&col) {
                for (&c, v) in &prow.coeffs {
                    if c == col {
                        continue;
                    }
                    let nv = row.coeffs.get(&c).cloned().unwrap_or_default() - &f * v;
                    if nv.is_zero() {
                        row.coeffs.remove(&c);
                    } else {
                        row.coeffs.insert(c, nv);
                    }
                }
                row.rhs = &row.rhs - &(&f * &prow.rhs);
            }
        };
        for row in rows.iter_mut() {
            eliminate(row, &prow);
        }
        for (_, row) in pivot_rows.iter_mut() {
            eliminate(row, &prow);
        }
        rows.retain(|e| !(e.coeffs.is_empty() && e.rhs.is_zero()));
        pivot_rows.push((col, prow));
    }
    for row in &rows {
        if row.coeffs.is_empty() {
            return Err(SolveError::Inconsistent);
        }
    }
    if let Some(row) = rows.first() {
        let pivot = row.coeffs.values().next().unwrap().to_string();
        return Err(SolveError::NonConstantPivot { pivot });
    }
    if pivot_rows.len() < n_unknowns {
        return Err(SolveError::NotUnique { free: n_unknowns - pivot_rows.len() });
    }
    let mut x = vec![Scalar::zero(); n_unknowns];
    for (col, row) in pivot_rows {
        debug_assert!(row.coeffs.len() == 1);
        x[col] = row.rhs;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn g(n: i64) -> Gauss {
        Gauss::int(n)
    }

    #[test]
    fn inverse_and_kernel() {
        let m = Matrix::from_columns(2, &[vec![g(1), g(3)], vec![g(2), g(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &Gauss::int(-2));
        assert_eq!(inv.get(1, 0), &Gauss::real(rat(3, 2)));
        let sing = Matrix::from_columns(2, &[vec![g(1), g(2)], vec![g(2), g(4)]]);
        assert!(sing.inverse().is_none());
        let ker = sing.kernel();
        assert_eq!(ker.len(), 1);
        assert!(sing.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn scalar_system_with_level() {
        // x + y = k, x - y = 1
        let k = Scalar::k();
        let mut e1 = Equation::default();
        e1.coeffs.insert(0, Scalar::one());
        e1.coeffs.insert(1, Scalar::one());
        e1.rhs = k.clone();
        let mut e2 = Equation::default();
        e2.coeffs.insert(0, Scalar::one());
        e2.coeffs.insert(1, Scalar::int(-1));
        e2.rhs = Scalar::one();
        let x = solve_scalar_system(2, vec![e1, e2]).unwrap();
        assert_eq!(x[0], "(1/2)k + 1/2".parse().unwrap());
        assert_eq!(x[1], "(1/2)k - 1/2".parse().unwrap());
    }

    #[test]
    fn refuses_division_by_level() {
        let mut e = Equation::default();
        e.coeffs.insert(0, Scalar::k());
        e.rhs = Scalar::one();
        assert!(matches!(solve_scalar_system(1, vec![e]), Err(SolveError::NonConstantPivot { .. })));
        let mut e = Equation::default();
        e.rhs = Scalar::one();
        assert_eq!(solve_scalar_system(0, vec![e]), Err(SolveError::Inconsistent));
        assert_eq!(solve_scalar_system(1, vec![]), Err(SolveError::NotUnique { free: 1 }));
    }
}
