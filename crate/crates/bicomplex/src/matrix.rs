//! Dense exact linear algebra over the Gaussian rationals.
//!
//! Everything downstream (cohomology dimensions, spectral-sequence pages,
//! decomposition multiplicities) reduces to the four operations exposed
//! here: rank, kernel bases, subquotient dimensions, and ranks of maps
//! induced on subquotients. Matrices act on column vectors; a matrix with
//! zero rows or columns is a legitimate rank-0 linear map.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {width}",
                    row.len()
                )));
            }
        }
        Ok(ExactMatrix {
            rows: height,
            cols: width,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = ExactMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Integer shorthand used heavily in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        }))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Column-wise concatenation `[self | others...]`.
    pub fn hstack(blocks: &[&ExactMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |m| m.rows);
        if blocks.iter().any(|m| m.rows != rows) {
            return Err(Error::Dimension("hstack with differing row counts".into()));
        }
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = ExactMatrix::zero(rows, cols);
        let mut offset = 0;
        for m in blocks {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, offset + j, m.get(i, j).clone());
                }
            }
            offset += m.cols;
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivoting takes the first nonzero entry in column order, which is the
    /// only determinism the exact field needs.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, j).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, j).inv();
            for jj in j..self.cols {
                let v = self.get(r, jj) * &inv;
                self.set(r, jj, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, j).is_zero() {
                    continue;
                }
                let factor = self.get(i, j).clone();
                for jj in j..self.cols {
                    if self.get(r, jj).is_zero() {
                        continue;
                    }
                    let v = self.get(i, jj) - &(&factor * self.get(r, jj));
                    self.set(i, jj, v);
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut r = 0;
        for j in 0..work.cols {
            if r == work.rows {
                break;
            }
            let Some(p) = (r..work.rows).find(|&i| !work.get(i, j).is_zero()) else {
                continue;
            };
            work.swap_rows(r, p);
            for i in (r + 1)..work.rows {
                if work.get(i, j).is_zero() {
                    continue;
                }
                let factor = work.get(i, j) / work.get(r, j);
                for jj in j..work.cols {
                    if work.get(r, jj).is_zero() {
                        continue;
                    }
                    let v = work.get(i, jj) - &(&factor * work.get(r, jj));
                    work.set(i, jj, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Columns form a basis of `ker self`; always `cols - rank` of them.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let mut work = self.clone();
        let pivots = work.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut basis = ExactMatrix::zero(self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            basis.set(f, col, Scalar::one());
            for (row, &p) in pivots.iter().enumerate() {
                basis.set(p, col, -work.get(row, f));
            }
        }
        basis
    }

    /// Inverse of a square matrix, or a domain error if singular.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let mut work = ExactMatrix::hstack(&[self, &ExactMatrix::identity(self.rows)])?;
        let pivots = work.rref_in_place();
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            work.get(i, self.cols + j).clone()
        }))
    }

    /// Solve `self * x = b` when the solution is unique. Returns
    /// `Ok(None)` for an inconsistent system and a domain error when the
    /// kernel is nontrivial (no unique solution).
    pub fn solve_unique(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = ExactMatrix::from_fn(self.rows, 1, |i, _| b[i].clone());
        let mut work = ExactMatrix::hstack(&[self, &rhs])?;
        let pivots = work.rref_in_place();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        if pivots.len() != self.cols {
            return Err(Error::Domain("system is underdetermined".into()));
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = work.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `dim((span U + span W) / span W)` for two spanning sets in the same
/// ambient space (columns are the spanning vectors).
pub fn subquotient_dim(u: &ExactMatrix, w: &ExactMatrix) -> Result<usize> {
    if u.rows() != w.rows() {
        return Err(Error::Dimension(format!(
            "subquotient of spans in different ambient spaces ({} vs {} rows)",
            u.rows(),
            w.rows()
        )));
    }
    Ok(ExactMatrix::hstack(&[u, w])?.rank() - w.rank())
}

/// Rank of the map `(span dom_u + span dom_w)/span dom_w -> ambient/span cod_w`
/// induced by `m`. Requires `m * span dom_w` to be contained in `span cod_w`.
pub fn induced_map_rank(
    m: &ExactMatrix,
    dom_u: &ExactMatrix,
    dom_w: &ExactMatrix,
    cod_w: &ExactMatrix,
) -> Result<usize> {
    let mapped_w = m.mul(dom_w)?;
    if subquotient_dim(&mapped_w, cod_w)? != 0 {
        return Err(Error::InvalidSubquotient(
            "map does not send the denominator into the codomain denominator".into(),
        ));
    }
    subquotient_dim(&m.mul(dom_u)?, cod_w)
}

/// Columns spanning `span u` intersected with `span w`.
pub fn intersect(u: &ExactMatrix, w: &ExactMatrix) -> Result<ExactMatrix> {
    if u.rows() != w.rows() {
        return Err(Error::Dimension(
            "intersection of spans in different ambient spaces".into(),
        ));
    }
    let combined = ExactMatrix::hstack(&[u, w])?;
    let kernel = combined.kernel_basis();
    // A kernel vector (x; y) satisfies Ux = -Wy, so Ux lies in both spans.
    let top = ExactMatrix::from_fn(u.cols(), kernel.cols(), |i, j| kernel.get(i, j).clone());
    u.mul(&top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sc(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn rank_of_empty_and_identity() {
        assert_eq!(ExactMatrix::zero(0, 5).rank(), 0);
        assert_eq!(ExactMatrix::zero(5, 0).rank(), 0);
        assert_eq!(ExactMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn rank_with_gaussian_entries() {
        // Second row is i times the first, so the determinant vanishes.
        let m = ExactMatrix::from_rows(vec![
            vec![sc("1"), sc("i")],
            vec![sc("i"), sc("-1")],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_basis_examples() {
        assert_eq!(ExactMatrix::identity(3).kernel_basis().cols(), 0);
        let z = ExactMatrix::zero(2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);

        let m = ExactMatrix::from_rows(vec![vec![sc("1"), sc("i")]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // Proportional to (-i, 1).
        let ratio = k.get(0, 0) / k.get(1, 0);
        assert_eq!(ratio, sc("-i"));
    }

    #[test]
    fn subquotient_examples() {
        let id = ExactMatrix::identity(2);
        assert_eq!(subquotient_dim(&id, &id).unwrap(), 0);
        assert_eq!(subquotient_dim(&id, &ExactMatrix::zero(2, 0)).unwrap(), 2);
        let w = ExactMatrix::from_int_rows(&[&[1], &[1]]);
        assert_eq!(subquotient_dim(&id, &w).unwrap(), 1);
        assert!(subquotient_dim(&id, &ExactMatrix::zero(3, 1)).is_err());
    }

    #[test]
    fn induced_map_rank_examples() {
        let id = ExactMatrix::identity(2);
        let zero = ExactMatrix::zero(2, 2);
        let none = ExactMatrix::zero(2, 0);
        let e1 = ExactMatrix::from_int_rows(&[&[1], &[0]]);
        assert_eq!(induced_map_rank(&zero, &id, &none, &none).unwrap(), 0);
        assert_eq!(induced_map_rank(&id, &id, &none, &none).unwrap(), 2);
        assert_eq!(induced_map_rank(&id, &id, &e1, &e1).unwrap(), 1);
        // Containment violated: identity does not map e1 into 0.
        assert!(induced_map_rank(&id, &id, &e1, &none).is_err());
    }

    #[test]
    fn intersection() {
        let u = ExactMatrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
        let w = ExactMatrix::from_int_rows(&[&[1, 0], &[1, 0], &[0, 1]]);
        let cap = intersect(&u, &w).unwrap();
        assert_eq!(cap.rank(), 1);
        // The intersection is spanned by (1,1,0).
        assert_eq!(subquotient_dim(&cap, &ExactMatrix::from_int_rows(&[&[1], &[1], &[0]])).unwrap(), 0);
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::from_fn(rows, cols, |_, _| {
            Scalar::from_parts(rng.gen_range(-3..=3), 1, rng.gen_range(-2..=2), 1)
        })
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(0..=8);
            let cols = rng.gen_range(0..=8);
            let m = random_matrix(&mut rng, rows, cols);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn subquotient_identity_and_kernel_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=6);
            let u_cols = rng.gen_range(0..=6);
            let w_cols = rng.gen_range(0..=6);
            let u = random_matrix(&mut rng, rows, u_cols);
            let w = random_matrix(&mut rng, rows, w_cols);
            let stacked = ExactMatrix::hstack(&[&u, &w]).unwrap();
            assert_eq!(subquotient_dim(&u, &w).unwrap() + w.rank(), stacked.rank());

            let k = u.kernel_basis();
            assert_eq!(k.rank(), u.cols() - u.rank());
            assert!(u.mul(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_and_solve() {
        let m = ExactMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2));
        let x = m.solve_unique(&[sc("3"), sc("2")]).unwrap().unwrap();
        assert_eq!(x, vec![sc("1"), sc("1")]);
        let singular = ExactMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_err());
        // Inconsistent overdetermined system.
        let tall = ExactMatrix::from_int_rows(&[&[1], &[1]]);
        assert_eq!(tall.solve_unique(&[sc("1"), sc("2")]).unwrap(), None);
    }
}
