//! Dense integer matrices over arbitrary-precision integers.
//!
//! Rows of a matrix are read as relations on generators, so the cokernel of
//! an `r x c` matrix is `Z^c / (row lattice)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// An empty matrix with a fixed column count, for stacking relations.
    pub fn with_cols(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row<T: Into<BigInt> + Clone>(&mut self, row: &[T]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "row of length {} pushed onto matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend(row.iter().cloned().map(Into::into));
        self.rows += 1;
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::InvalidArgument("column mismatch in vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Keeps only the leading `k` columns.
    pub fn leading_columns(&self, k: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] -= t;
        }
    }

    /// Row echelon form together with the unimodular transform `U` with
    /// `U * self = echelon`. Returns `(echelon, U, rank)`.
    pub fn echelon_with_transform(&self) -> (IntMatrix, IntMatrix, usize) {
        let mut a = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut piv = 0usize;
        for col in 0..a.cols {
            if piv == a.rows {
                break;
            }
            loop {
                let best = (piv..a.rows)
                    .filter(|&i| !a[(i, col)].is_zero())
                    .min_by(|&i, &j| a[(i, col)].abs().cmp(&a[(j, col)].abs()));
                let Some(best) = best else { break };
                a.swap_rows(piv, best);
                u.swap_rows(piv, best);
                let mut clean = true;
                for i in piv + 1..a.rows {
                    if a[(i, col)].is_zero() {
                        continue;
                    }
                    let q = a[(i, col)].div_floor(&a[(piv, col)]);
                    a.sub_row(i, piv, &q);
                    u.sub_row(i, piv, &q);
                    if !a[(i, col)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    piv += 1;
                    break;
                }
            }
        }
        (a, u, piv)
    }

    pub fn rank(&self) -> usize {
        self.echelon_with_transform().2
    }

    /// A basis (as rows) of the left kernel `{x in Z^rows : x * self = 0}`.
    pub fn left_kernel(&self) -> IntMatrix {
        let (_, u, rank) = self.echelon_with_transform();
        let mut out = IntMatrix::with_cols(self.rows);
        for i in rank..self.rows {
            out.push_row(u.row(i)).expect("matching width");
        }
        out
    }

    /// Smith normal form diagonal and a unimodular column transform `V` such
    /// that `U * self * V = diag(d)` for some unimodular `U`. The diagonal has
    /// `min(rows, cols)` entries, all non-negative, with `d_i | d_{i+1}`.
    pub fn smith_with_transform(&self) -> (Vec<BigInt>, IntMatrix) {
        let mut a = self.clone();
        let mut v = IntMatrix::identity(self.cols);
        let n = a.rows.min(a.cols);
        for t in 0..n {
            loop {
                // Pivot on the entry of least absolute value.
                let mut best: Option<(usize, usize)> = None;
                for i in t..a.rows {
                    for j in t..a.cols {
                        if a[(i, j)].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                v.swap_cols(t, bj);

                let mut dirty = false;
                for i in t + 1..a.rows {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &q);
                    dirty |= !a[(i, t)].is_zero();
                }
                for j in t + 1..a.cols {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                    dirty |= !a[(t, j)].is_zero();
                }
                if dirty {
                    continue;
                }
                // Enforce the divisibility chain.
                let pivot = a[(t, t)].clone();
                let offender = (t + 1..a.rows)
                    .find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        a.sub_row(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                for j in 0..a.cols {
                    a[(t, j)] = -a[(t, j)].clone();
                }
            }
        }
        let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
        (diag, v)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * &self[(i, j)]).sum())
            .collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(5));
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(-2));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.determinant().unwrap().is_zero());
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = IntMatrix::from_rows(&[vec![4, 2], vec![2, 4], vec![6, 0], vec![1, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.rows(), 2);
        for i in 0..k.rows() {
            assert!(m.left_mul_vec(k.row(i)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_transform_is_consistent() {
        let m = IntMatrix::from_rows(&[vec![4, 2], vec![2, 4]]).unwrap();
        let (d, v) = m.smith_with_transform();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6)]);
        // every relation maps into diag(d) coordinates
        for i in 0..m.rows() {
            let y = v.left_mul_vec(m.row(i));
            for (yi, di) in y.iter().zip(&d) {
                assert!(yi.is_multiple_of(di));
            }
        }
        assert_eq!(v.determinant().unwrap().abs(), BigInt::one());
    }
}
