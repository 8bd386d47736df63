//! Linear subspaces of `F^n` in canonical form.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A subspace stored as the nonzero rows of a reduced row echelon basis, so
/// that two subspaces are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &Matrix::<F>::identity(ambient_dim).row_vecs())
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "vector length differs from ambient dimension"
        );
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let rref = Matrix::from_rows(vectors.to_vec())
            .expect("equal lengths")
            .rref();
        let basis = (0..rref.rank()).map(|i| rref.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis,
        }
    }

    /// Span of the first `k` standard basis vectors.
    pub fn coordinate(ambient_dim: usize, k: usize) -> Self {
        Self::span(ambient_dim, &Matrix::<F>::identity(ambient_dim).row_vecs()[..k])
    }

    /// `{v : M v = 0}`.
    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), &m.nullspace())
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix<F>) -> Self {
        Self::span(m.rows(), &m.transpose().row_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_full()
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.ambient_dim, |i, j| self.basis[i][j].clone())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        // reduce v against the echelon basis
        let mut r = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if r[pivot].is_zero() {
                continue;
            }
            let c = r[pivot].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= c.clone() * y;
                }
            }
        }
        r.iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// The annihilator `{w : <w, u> = 0 for all u}` under the standard
    /// bilinear pairing.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        Self::span(self.ambient_dim, &self.basis_matrix().nullspace())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ambient_dim, &vs))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut constraints = self.annihilator().basis;
        constraints.extend(other.annihilator().basis);
        if constraints.is_empty() {
            return Ok(Self::full(self.ambient_dim));
        }
        let m = Matrix::from_rows(constraints).expect("equal lengths");
        Ok(Self::kernel(&m))
    }

    /// `A U`.
    pub fn image_under(&self, a: &Matrix<F>) -> Result<Self> {
        if a.cols() != self.ambient_dim {
            return Err(Error::Shape("matrix does not act on this space".into()));
        }
        let vs: Vec<Vec<F>> = self.basis.iter().map(|b| a.mul_vec(b)).collect();
        Ok(Self::span(a.rows(), &vs))
    }

    /// `{x : A x in U}`.
    pub fn preimage_under(&self, a: &Matrix<F>) -> Result<Self> {
        if a.rows() != self.ambient_dim {
            return Err(Error::Shape("matrix does not map into this space".into()));
        }
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(Self::full(a.cols()));
        }
        Ok(Self::kernel(&ann.basis_matrix().mul(a)))
    }

    pub fn is_invariant_under(&self, a: &Matrix<F>) -> bool {
        a.is_square()
            && a.rows() == self.ambient_dim
            && self.basis.iter().all(|b| self.contains(&a.mul_vec(b)))
    }

    /// Extends the basis to one of the whole space by scanning the standard
    /// basis vectors in order, returning only the added vectors.
    pub fn completion(&self) -> Vec<Vec<F>> {
        let mut current = self.clone();
        let mut added = Vec::new();
        for e in Matrix::<F>::identity(self.ambient_dim).row_vecs() {
            if current.is_full() {
                break;
            }
            if !current.contains(&e) {
                current = current.sum(&Self::span(self.ambient_dim, &[e.clone()])).unwrap();
                added.push(e);
            }
        }
        added
    }
}
