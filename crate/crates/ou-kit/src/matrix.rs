//! Dense exact matrices and row vectors over a ring instance.
//!
//! Matrices are immutable values in row-major storage; all operations are
//! pure and check ring and dimension compatibility. Inversion is
//! division-free (Berkowitz characteristic polynomial plus Cayley–Hamilton),
//! so it works over any shipped commutative ring whenever the determinant is
//! a unit. 0×0 matrices are first-class.

use std::fmt;

use crate::ring::{Elem, Ring};
use crate::{Error, Result};

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch { left: a.to_string(), right: b.to_string() });
    }
    Ok(())
}

/// A row vector (a_1, …, a_N). Coordinates are exposed 0-based; the
/// paper-facing builders that speak 1-based indices live on the spaces that
/// own a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVec {
    ring: Ring,
    entries: Vec<Elem>,
}

impl RowVec {
    pub fn new(ring: Ring, entries: Vec<Elem>) -> RowVec {
        RowVec { ring, entries }
    }

    pub fn zeros(ring: Ring, len: usize) -> RowVec {
        let z = ring.zero();
        RowVec { ring, entries: vec![z; len] }
    }

    /// Standard basis vector with a 1 in 0-based position `pos`.
    pub fn unit(ring: Ring, len: usize, pos: usize) -> RowVec {
        let mut v = RowVec::zeros(ring, len);
        let one = v.ring.one();
        v.entries[pos] = one;
        v
    }

    pub fn from_i64(ring: &Ring, values: &[i64]) -> RowVec {
        RowVec {
            ring: ring.clone(),
            entries: values.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn at(&self, i: usize) -> &Elem {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Elem) {
        self.entries[i] = value;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    /// Entrywise bar map.
    pub fn conj(&self) -> RowVec {
        RowVec {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|e| self.ring.conj(e)).collect(),
        }
    }

    pub fn add(&self, other: &RowVec) -> Result<RowVec> {
        same_ring(&self.ring, &other.ring)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(RowVec {
            ring: self.ring.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| self.ring.add(x, y))
                .collect(),
        })
    }

    pub fn neg(&self) -> RowVec {
        RowVec {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|e| self.ring.neg(e)).collect(),
        }
    }

    /// Right scalar action v·s.
    pub fn scale(&self, s: &Elem) -> RowVec {
        RowVec {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|e| self.ring.mul(e, s)).collect(),
        }
    }

    /// v·A for a matrix with matching row count.
    pub fn mul_mat(&self, a: &Mat) -> Result<RowVec> {
        same_ring(&self.ring, &a.ring)?;
        if self.len() != a.rows {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} times {}x{} matrix",
                self.len(),
                a.rows,
                a.cols
            )));
        }
        let mut out = RowVec::zeros(self.ring.clone(), a.cols);
        for i in 0..a.rows {
            let vi = &self.entries[i];
            if self.ring.is_zero(vi) {
                continue;
            }
            for j in 0..a.cols {
                let aij = a.at(i, j);
                if self.ring.is_zero(aij) {
                    continue;
                }
                out.entries[j] = self.ring.add(&out.entries[j], &self.ring.mul(vi, aij));
            }
        }
        Ok(out)
    }

    pub fn to_row_mat(&self) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: 1,
            cols: self.len(),
            entries: self.entries.clone(),
        }
    }

    pub fn to_col_mat(&self) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: self.len(),
            cols: 1,
            entries: self.entries.clone(),
        }
    }
}

impl fmt::Display for RowVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A dense exact matrix over a ring instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl Mat {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Mat { ring, rows, cols, entries })
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        let z = ring.zero();
        Mat { ring, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    /// The 0×0 matrix; identity of `perp`.
    pub fn empty(ring: Ring) -> Mat {
        Mat::zero(ring, 0, 0)
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Elem>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(ring: &Ring, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| ring.from_i64(v)))
            .collect();
        Mat { ring: ring.clone(), rows: r, cols: c, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    pub fn at(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Elem) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> RowVec {
        RowVec {
            ring: self.ring.clone(),
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> RowVec {
        RowVec {
            ring: self.ring.clone(),
            entries: (0..self.rows).map(|r| self.at(r, c).clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.ring.is_one(self.at(i, j))
                    } else {
                        self.ring.is_zero(self.at(i, j))
                    }
                })
            })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        same_ring(&self.ring, &other.ring)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.ring.add(x, y))
            .collect();
        Ok(Mat { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| self.ring.neg(e)).collect(),
        }
    }

    /// Entrywise scalar multiple s·A (= A·s on the shipped commutative rings).
    pub fn scale(&self, s: &Elem) -> Mat {
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| self.ring.mul(s, e)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        same_ring(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if self.ring.is_zero(aik) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = self.ring.mul(aik, other.at(k, j));
                    let cur = self.ring.add(out.at(i, j), &prod);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// A·vᵀ as a coordinate vector.
    pub fn mul_col(&self, v: &RowVec) -> Result<RowVec> {
        same_ring(&self.ring, v.ring())?;
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times column of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = RowVec::zeros(self.ring.clone(), self.rows);
        for j in 0..self.cols {
            let vj = v.at(j);
            if self.ring.is_zero(vj) {
                continue;
            }
            for i in 0..self.rows {
                let aij = self.at(i, j);
                if self.ring.is_zero(aij) {
                    continue;
                }
                let acc = self.ring.add(out.at(i), &self.ring.mul(aij, vj));
                out.set(i, acc);
            }
        }
        Ok(out)
    }

    /// Rank-1 product colᵀ·row.
    pub fn outer(col: &RowVec, row: &RowVec) -> Result<Mat> {
        same_ring(col.ring(), row.ring())?;
        let ring = col.ring().clone();
        let mut out = Mat::zero(ring.clone(), col.len(), row.len());
        for i in 0..col.len() {
            if ring.is_zero(col.at(i)) {
                continue;
            }
            for j in 0..row.len() {
                if ring.is_zero(row.at(j)) {
                    continue;
                }
                out.set(i, j, ring.mul(col.at(i), row.at(j)));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    /// Conjugate-transpose: (A*)_{ij} = bar(A_{ji}).
    pub fn conj_transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.ring.conj(self.at(i, j)));
            }
        }
        out
    }

    /// Orthogonal (block-diagonal) sum diag(A, B). Either block may be 0×0.
    pub fn perp(&self, other: &Mat) -> Result<Mat> {
        same_ring(&self.ring, &other.ring)?;
        if !self.is_square() || !other.is_square() {
            return Err(Error::DimensionMismatch(
                "perp needs square blocks".into(),
            ));
        }
        let n = self.rows + other.rows;
        let mut out = Mat::zero(self.ring.clone(), n, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        Ok(out)
    }

    /// The sub-block with rows `r0..r0+h` and columns `c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Result<Mat> {
        if r0 + h > self.rows || c0 + w > self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "block {h}x{w} at ({r0},{c0}) of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Mat::zero(self.ring.clone(), h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.at(r0 + i, c0 + j).clone());
            }
        }
        Ok(out)
    }

    /// Elementary matrix E_{i,j}(a) = I_n + a at position (i, j), with the
    /// customary 1-based subscripts.
    pub fn elementary(ring: &Ring, n: usize, i: usize, j: usize, a: &Elem) -> Result<Mat> {
        if i == j {
            return Err(Error::DiagonalIndex { i });
        }
        if i < 1 || i > n || j < 1 || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "elementary position ({i},{j}) in size {n}"
            )));
        }
        let mut m = Mat::identity(ring.clone(), n);
        m.set(i - 1, j - 1, a.clone());
        Ok(m)
    }

    /// In-place left multiplication by E_{i,j}(a) (1-based): row_i += a·row_j.
    pub fn left_mul_elementary(&mut self, i: usize, j: usize, a: &Elem) -> Result<()> {
        if i == j {
            return Err(Error::DiagonalIndex { i });
        }
        if i < 1 || i > self.rows || j < 1 || j > self.rows {
            return Err(Error::IndexOutOfRange(format!(
                "elementary position ({i},{j}) in size {}",
                self.rows
            )));
        }
        for c in 0..self.cols {
            let add = self.ring.mul(a, self.at(j - 1, c));
            let cur = self.ring.add(self.at(i - 1, c), &add);
            self.set(i - 1, c, cur);
        }
        Ok(())
    }

    /// In-place right multiplication by E_{i,j}(a) (1-based): col_j += col_i·a.
    pub fn right_mul_elementary(&mut self, i: usize, j: usize, a: &Elem) -> Result<()> {
        if i == j {
            return Err(Error::DiagonalIndex { i });
        }
        if i < 1 || i > self.cols || j < 1 || j > self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "elementary position ({i},{j}) in size {}",
                self.cols
            )));
        }
        for r in 0..self.rows {
            let add = self.ring.mul(self.at(r, i - 1), a);
            let cur = self.ring.add(self.at(r, j - 1), &add);
            self.set(r, j - 1, cur);
        }
        Ok(())
    }

    /// Coefficients `[1, c_{n-1}, …, c_0]` of the characteristic polynomial
    /// `x^n + c_{n-1} x^{n-1} + … + c_0`, by the division-free Berkowitz
    /// iteration over leading principal submatrices.
    pub fn char_poly(&self) -> Result<Vec<Elem>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let ring = &self.ring;
        let n = self.rows;
        if n == 0 {
            return Ok(vec![ring.one()]);
        }
        let mut poly = vec![ring.one(), ring.neg(self.at(0, 0))];
        for k in 2..=n {
            // Toeplitz coefficients from the k-th principal submatrix,
            // split as [[M, C],[R, a]].
            let mut items = Vec::with_capacity(k + 1);
            items.push(ring.one());
            items.push(ring.neg(self.at(k - 1, k - 1)));
            let mut vec_iter: Vec<Elem> =
                (0..k - 1).map(|i| self.at(i, k - 1).clone()).collect();
            for j in 2..=k {
                let mut dot = ring.zero();
                for i in 0..k - 1 {
                    dot = ring.add(&dot, &ring.mul(self.at(k - 1, i), &vec_iter[i]));
                }
                items.push(ring.neg(&dot));
                if j < k {
                    let mut next = vec![ring.zero(); k - 1];
                    for (r, slot) in next.iter_mut().enumerate() {
                        let mut acc = ring.zero();
                        for c in 0..k - 1 {
                            acc = ring.add(&acc, &ring.mul(self.at(r, c), &vec_iter[c]));
                        }
                        *slot = acc;
                    }
                    vec_iter = next;
                }
            }
            let mut next_poly = vec![ring.zero(); k + 1];
            for (j, pj) in poly.iter().enumerate() {
                for (off, item) in items.iter().enumerate() {
                    let i = j + off;
                    if i <= k {
                        next_poly[i] = ring.add(&next_poly[i], &ring.mul(item, pj));
                    }
                }
            }
            poly = next_poly;
        }
        Ok(poly)
    }

    /// Exact determinant via the characteristic polynomial.
    pub fn determinant(&self) -> Result<Elem> {
        let poly = self.char_poly()?;
        let c0 = poly.last().expect("char_poly is never empty").clone();
        Ok(if self.rows % 2 == 0 { c0 } else { self.ring.neg(&c0) })
    }

    /// Division-free inverse over a commutative ring: Cayley–Hamilton turns
    /// the characteristic polynomial into the adjugate, which is scaled by
    /// the determinant's unit inverse. Errors when the determinant is not a
    /// unit, naming its value.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let ring = &self.ring;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let poly = self.char_poly()?;
        let det = if n % 2 == 0 { poly[n].clone() } else { ring.neg(&poly[n]) };
        let det_inv = ring
            .try_inverse(&det)
            .ok_or_else(|| Error::NotInvertible { determinant: det.to_string() })?;

        // Horner: B = A^{n-1} + c_{n-1} A^{n-2} + … + c_1 I, so A·B = -c_0·I.
        let mut b = Mat::identity(ring.clone(), n);
        for coeff in poly.iter().take(n).skip(1) {
            b = b.mul(self)?;
            for i in 0..n {
                let cur = ring.add(b.at(i, i), coeff);
                b.set(i, i, cur);
            }
        }
        // A·B = -c_0·I = (-1)^{n+1}·det·I.
        let scale = if n % 2 == 0 { ring.neg(&det_inv) } else { det_inv };
        Ok(b.scale(&scale))
    }

    /// gram_{ji} = −bar(gram_{ij}) for all i, j.
    pub fn is_anti_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| {
                    *self.at(j, i) == self.ring.neg(&self.ring.conj(self.at(i, j)))
                })
            })
    }

    /// Aᵀ = −A with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.ring.is_zero(self.at(i, i)))
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| *self.at(j, i) == self.ring.neg(self.at(i, j)))
            })
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> =
                (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}
