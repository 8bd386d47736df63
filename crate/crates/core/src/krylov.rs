use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Vectors `v` with `v, Av, ..., A^k v` all in `w`.
pub fn krylov_chain<F: Field>(a: &Matrix<F>, w: &Subspace<F>, k: usize) -> Result<Subspace<F>> {
    let mut chain = w.clone();
    for _ in 0..k {
        chain = w.intersect(&chain.preimage_under(a)?)?;
    }
    Ok(chain)
}

/// Finds the vector `v` (up to scale) of the hyperplane `w` for which
/// `v, Av, ..., A^(n-2) v` is a basis of `w`.
///
/// The candidates form the chain `w ∩ A^-1 w ∩ ... ∩ A^-(n-2) w`; anything
/// other than a line means `w` carries an `A`-stable piece, which is the
/// degenerate case.
pub fn krylov_cyclic_vector<F: Field>(a: &Matrix<F>, w: &Subspace<F>) -> Result<Vec<F>> {
    let n = a.ensure_square()?;
    if w.ambient_dim() != n {
        return Err(Error::Shape(format!(
            "subspace lives in F^{}, matrix is {n}x{n}",
            w.ambient_dim()
        )));
    }
    if n < 2 || w.dim() != n - 1 {
        return Err(Error::Precondition(format!(
            "expected a hyperplane of F^{n}, got dimension {}",
            w.dim()
        )));
    }
    let chain = krylov_chain(a, w, n - 2)?;
    if chain.dim() != 1 {
        return Err(Error::KrylovDegenerate { dim: chain.dim() });
    }
    let v = chain.basis()[0].clone();
    let mut family = vec![v.clone()];
    for _ in 1..n - 1 {
        let next = a.mul_vec(family.last().unwrap());
        family.push(next);
    }
    let span = Subspace::span(n, &family);
    if span != *w {
        return Err(Error::KrylovDegenerate { dim: span.dim() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use num_rational::BigRational;

    type Q = BigRational;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_int(x)).collect()
    }

    #[test]
    fn two_by_two_is_just_w() {
        let a = Matrix::<Q>::from_ints(&[&[0, 1], &[1, 0]]);
        let w = Subspace::coordinate(2, 1);
        assert_eq!(krylov_cyclic_vector(&a, &w).unwrap(), v(&[1, 0]));
    }

    #[test]
    fn companion_three_by_three() {
        // X^3 - 2X^2 + X - 1
        let p = Poly::new(v(&[-1, 1, -2, 1]));
        let a = Matrix::companion(&p).unwrap();
        let w = Subspace::coordinate(3, 2);
        // oracle: the chain is {x in W : A x in W}, computed independently
        let aw_pre = Subspace::kernel(&Matrix::from_rows(vec![a.row(2).to_vec()]).unwrap());
        let expected = w.intersect(&aw_pre).unwrap();
        assert_eq!(expected.dim(), 1);
        let got = krylov_cyclic_vector(&a, &w).unwrap();
        assert!(expected.contains(&got));
        let family = [got.clone(), a.mul_vec(&got)];
        assert_eq!(Subspace::span(3, &family), w);
        assert_eq!(got, v(&[1, 0, 0]));
    }

    #[test]
    fn identity_is_degenerate() {
        let a = Matrix::<Q>::identity(3);
        let w = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(
            krylov_cyclic_vector(&a, &w),
            Err(Error::KrylovDegenerate { dim: 2 })
        );
    }

    #[test]
    fn rejects_non_hyperplane() {
        let a = Matrix::<Q>::identity(3);
        assert!(krylov_cyclic_vector(&a, &Subspace::coordinate(3, 1)).is_err());
    }
}
