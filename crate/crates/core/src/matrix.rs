//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>, // row-major
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {cols}",
                r.len()
            )));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with the given vectors as columns.
    pub fn from_cols(cols: &[Vec<F>]) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                F::zero()
            }
        })
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

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.clone() * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panics on a shape mismatch; use [`Matrix::try_mul`] for checked input.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shapes agree")
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("matrix shapes agree")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix shapes agree")
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.clone() * c)
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &F) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] -= c.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].checked_inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m[(r, j)].clone() * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = factor.clone() * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free
    /// column, in the standard RREF parametrization.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &pc) in rref.pivots.iter().enumerate() {
                    v[pc] = -rref.matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<F> {
        let n = self.ensure_square()?;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            let inv = pivot.checked_inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone() * &inv;
                for j in c..n {
                    let v = factor.clone() * &m[(c, j)];
                    m[(i, j)] -= v;
                }
            }
            det *= pivot;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.ensure_square()?;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| rref.matrix[(i, n + j)].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `T^-1 * self * T`.
    pub fn conjugate_by(&self, t: &Self) -> Result<Self> {
        let t_inv = t.inverse()?;
        t_inv.try_mul(self)?.try_mul(t)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `det(X I - M)` by the Faddeev–LeVerrier recurrence
    /// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
    pub fn char_poly(&self) -> Result<Poly<F>> {
        let n = self.ensure_square()?;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&mk);
            for i in 0..n {
                next[(i, i)] += coeffs[n - k + 1].clone();
            }
            mk = next;
            let tr = self.mul(&mk).trace();
            coeffs[n - k] = -(tr / F::from_int(k as i64));
        }
        Ok(Poly::new(coeffs))
    }

    /// Companion matrix with ones on the subdiagonal and last column
    /// `(-c_0, ..., -c_{n-1})` for monic `p = X^n + c_{n-1} X^{n-1} + ... + c_0`.
    pub fn companion(p: &Poly<F>) -> Result<Self> {
        let n = p
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidSize("companion of a constant polynomial".into()))?;
        if !p.is_monic() {
            return Err(Error::Precondition("companion polynomial must be monic".into()));
        }
        if p.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "constant coefficient is zero: companion matrix would be singular".into(),
            ));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -p.coeff(i)
            } else if i == j + 1 {
                F::one()
            } else {
                F::zero()
            }
        }))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Column-major flattening, the coordinates used for spaces of matrices.
    pub fn flatten(&self) -> Vec<F> {
        (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self[(i, j)].clone())
            .collect()
    }

    pub fn unflatten(rows: usize, cols: usize, v: &[F]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| v[j * rows + i].clone())
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_ints(rows)
    }

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&n| Q::from_int(n)).collect())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Q>::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::<Q>::identity(4).rank(), 4);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rref_pivots_first_nonzero() {
        let r = m(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]).rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix, m(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
    }

    #[test]
    fn nullspace_solves() {
        let a = m(&[&[1, -1], &[0, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![Q::from_int(1), Q::from_int(1)]]);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det().unwrap(), Q::from_int(1));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert!(m(&[&[1, 2, 3]]).det().is_err());
    }

    #[test]
    fn char_poly_examples() {
        let d = Matrix::diag(&[Q::from_int(2), Q::from_int(3), Q::from_int(5)]);
        assert_eq!(
            d.char_poly().unwrap(),
            Poly::from_roots(&[Q::from_int(2), Q::from_int(3), Q::from_int(5)])
        );
        assert_eq!(m(&[&[0, 1], &[1, 0]]).char_poly().unwrap(), p(&[-1, 0, 1]));
        // cofactor expansion of [[0,-1],[1,-2]]: X(X+2) + 1
        assert_eq!(m(&[&[0, -1], &[1, -2]]).char_poly().unwrap(), p(&[1, 2, 1]));
        assert!(m(&[&[1, 2]]).char_poly().is_err());
    }

    #[test]
    fn companion_layout() {
        assert_eq!(
            Matrix::companion(&p(&[-1, 0, 1])).unwrap(),
            m(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            Matrix::companion(&p(&[1, 2, 1])).unwrap(),
            m(&[&[0, -1], &[1, -2]])
        );
        assert_eq!(Matrix::companion(&p(&[-7, 1])).unwrap(), m(&[&[7]]));
        assert!(Matrix::companion(&p(&[0, 1, 1])).is_err());
        assert!(Matrix::companion(&p(&[1, 2])).is_err());
        assert!(Matrix::companion(&p(&[1, 2, 2])).is_err());
    }

    #[test]
    fn flatten_roundtrip() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let v = a.flatten();
        assert_eq!(v[1], Q::from_int(4));
        assert_eq!(Matrix::unflatten(2, 3, &v), a);
    }
}
