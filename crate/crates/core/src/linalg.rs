//! Dense exact matrices with Gauss–Jordan reduction and fraction-free
//! determinants.
//!
//! All routines are deterministic: pivots are chosen as the first nonzero
//! entry in column order, so repeated runs produce identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, nrows: usize, ncols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != nrows * ncols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {nrows}x{ncols} matrix",
                data.len()
            )));
        }
        for s in &data {
            if s.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
            }
        }
        Ok(Matrix { field, nrows, ncols, data })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix of small integers, mainly for fixed instances.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| field.from_i64(n)))
            .collect();
        Matrix::new(field, rows.len(), rows.first().map_or(0, |r| r.len()), data)
    }

    pub fn zero(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            nrows,
            ncols,
            data: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.ncols.max(1)).take(self.nrows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                *m.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut m = Matrix::zero(self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let t = a * other.get(k, j);
                    *m.get_mut(i, j) = &*m.get(i, j) + &t;
                }
            }
        }
        Ok(m)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Matrix {
            field: self.field,
            nrows: rows.len(),
            ncols: cols.len(),
            data,
        }
    }

    pub fn col_submatrix(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.nrows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows {
            return Err(Error::DimensionMismatch("row counts differ".into()));
        }
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut r = self.row(i).to_vec();
            r.extend_from_slice(other.row(i));
            rows.push(r);
        }
        Matrix::from_rows(self.field, rows)
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(pr) = (r..m.nrows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.nrows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone();
                    m.row_sub_scaled(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows of the reduced echelon form that are nonzero: a canonical basis
    /// of the row space.
    pub fn row_basis(&self) -> Matrix {
        let (m, pivots) = self.rref();
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Matrix::from_rows(self.field, rows).expect("rows from rref")
    }

    /// A canonical basis (as rows) of the right kernel `{v : A·v = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (m, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let free: Vec<usize> = (0..self.ncols).filter(|c| pivot_set[*c].is_none()).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.ncols];
            v[f] = self.field.one();
            for (c, opt) in pivot_set.iter().enumerate() {
                if let Some(i) = opt {
                    v[c] = -m.get(*i, f);
                }
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Matrix::zero(self.field, 0, self.ncols)
        } else {
            Matrix::from_rows(self.field, rows).expect("kernel rows")
        }
    }

    /// Solves `A·x = b` for a single solution (free variables set to zero).
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.nrows {
            return Err(Error::DimensionMismatch("rhs length".into()));
        }
        let rhs = Matrix::from_rows(self.field, b.iter().map(|s| vec![s.clone()]).collect())?;
        let aug = self.hconcat(&rhs)?;
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.ncols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = m.get(i, self.ncols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.nrows != self.ncols {
            return Err(Error::NotSquareMatrix);
        }
        let aug = self.hconcat(&Matrix::identity(self.field, self.nrows))?;
        let (m, pivots) = aug.rref();
        if pivots.len() != self.nrows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (self.ncols..2 * self.ncols).collect();
        Ok(m.col_submatrix(&cols))
    }

    /// Exact determinant: Bareiss over `Q` (fraction-free on cleared
    /// denominators), plain elimination over `F_p`.
    pub fn det(&self) -> Result<Scalar> {
        if self.nrows != self.ncols {
            return Err(Error::NotSquareMatrix);
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(self.field.one());
        }
        match self.field {
            FieldSpec::Q => self.det_bareiss(),
            FieldSpec::Fp(_) => self.det_gauss(),
        }
    }

    fn det_gauss(&self) -> Result<Scalar> {
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -&det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in (c + 1)..n {
                if !m.get(i, c).is_zero() {
                    let factor = &*m.get(i, c) * &inv;
                    m.row_sub_scaled(i, c, &factor);
                }
            }
        }
        Ok(det)
    }

    fn det_bareiss(&self) -> Result<Scalar> {
        let n = self.nrows;
        // Clear denominators row by row, tracking the correction factor.
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut denom = BigInt::one();
        for i in 0..n {
            let lcm = self.row(i).iter().fold(BigInt::one(), |acc, s| {
                acc.lcm(s.as_rational().expect("rational entry").denom())
            });
            denom *= &lcm;
            a.push(
                self.row(i)
                    .iter()
                    .map(|s| {
                        let r = s.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(pr) = ((k + 1)..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(self.field.zero());
                };
                a.swap(k, pr);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i][j] = q;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det_int = a[n - 1][n - 1].clone() * BigInt::from(sign);
        Ok(Scalar::Q(BigRational::new(det_int, denom)))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(i * self.ncols + c, j * self.ncols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) {
        for c in 0..self.ncols {
            let v = &*self.get(i, c) * s;
            *self.get_mut(i, c) = v;
        }
    }

    /// `row_i -= s * row_j`
    fn row_sub_scaled(&mut self, i: usize, j: usize, s: &Scalar) {
        for c in 0..self.ncols {
            let t = &*self.get(j, c) * s;
            let v = &*self.get(i, c) - &t;
            *self.get_mut(i, c) = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(FieldSpec::Q, rows).unwrap()
    }

    #[test]
    fn det_small() {
        assert_eq!(qm(&[&[2]]).det().unwrap(), FieldSpec::Q.from_i64(2));
        assert_eq!(
            qm(&[&[1, 2], &[3, 4]]).det().unwrap(),
            FieldSpec::Q.from_i64(-2)
        );
        // Needs a row swap to find the first pivot.
        assert_eq!(
            qm(&[&[0, 1], &[1, 0]]).det().unwrap(),
            FieldSpec::Q.from_i64(-1)
        );
        let vandermonde = qm(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]]);
        assert_eq!(vandermonde.det().unwrap(), FieldSpec::Q.from_i64(2));
    }

    #[test]
    fn det_rational_entries() {
        let f = FieldSpec::Q;
        let m = Matrix::from_rows(
            f,
            vec![
                vec![f.fraction(1, 2).unwrap(), f.fraction(1, 3).unwrap()],
                vec![f.fraction(1, 5).unwrap(), f.fraction(1, 7).unwrap()],
            ],
        )
        .unwrap();
        // 1/14 - 1/15 = 1/210
        assert_eq!(m.det().unwrap(), f.fraction(1, 210).unwrap());
    }

    #[test]
    fn det_mod_p() {
        let f = FieldSpec::Fp(101);
        let m = Matrix::from_i64(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).unwrap();
        assert_eq!(m.det().unwrap(), f.from_i64(-3));
    }

    #[test]
    fn rref_rank_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.nrows(), 1);
        // A · vᵀ = 0 for every kernel row.
        let prod = m.mul(&k.transpose()).unwrap();
        assert!(prod.rows().all(|row| row.iter().all(Scalar::is_zero)));
        // rref is idempotent.
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn row_basis_spans() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let b = m.row_basis();
        assert_eq!(b.nrows(), 2);
        // Appending original rows does not increase the rank.
        let mut rows: Vec<Vec<Scalar>> = b.rows().map(|r| r.to_vec()).collect();
        rows.extend(m.rows().map(|r| r.to_vec()));
        let stacked = Matrix::from_rows(FieldSpec::Q, rows).unwrap();
        assert_eq!(stacked.rank(), 2);
    }

    #[test]
    fn solve_and_inverse() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let f = FieldSpec::Q;
        let x = m.solve(&[f.from_i64(3), f.from_i64(2)]).unwrap().unwrap();
        assert_eq!(x, vec![f.from_i64(1), f.from_i64(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 2));

        let singular = qm(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_err());
        assert_eq!(
            singular.solve(&[f.from_i64(0), f.from_i64(1)]).unwrap(),
            None
        );
    }

    #[test]
    fn empty_matrix_determinant() {
        let m = Matrix::zero(FieldSpec::Q, 0, 0);
        assert!(m.det().unwrap().is_one());
    }
}
