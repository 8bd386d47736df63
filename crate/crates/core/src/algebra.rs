//! Spaces of matrices: generated algebras and Sylvester solution spaces.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Incrementally maintained echelon basis; `insert` reports whether the
/// vector was new.
struct EchelonBasis<F> {
    rows: Vec<(usize, Vec<F>)>, // (pivot, row with pivot entry 1)
}

impl<F: Field> EchelonBasis<F> {
    fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= c.clone() * y;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].checked_inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = x.clone() * &inv;
        }
        self.rows.push((pivot, v));
        true
    }
}

fn common_size<F: Field>(mats: &[Matrix<F>]) -> Result<usize> {
    let n = match mats.first() {
        Some(m) => m.ensure_square()?,
        None => return Err(Error::InvalidSize("no matrices given".into())),
    };
    for m in mats {
        if m.ensure_square()? != n {
            return Err(Error::Shape("matrices of different sizes".into()));
        }
    }
    Ok(n)
}

/// Dimension of the unital algebra generated by `mats`.
///
/// Breadth-first closure from the identity: every newly independent product
/// is queued and multiplied by each generator in index order. Equals `n^2`
/// exactly when the matrices act irreducibly (Burnside).
pub fn algebra_dimension<F: Field>(mats: &[Matrix<F>]) -> Result<usize> {
    let n = common_size(mats)?;
    let mut basis = EchelonBasis::new();
    let id = Matrix::identity(n);
    basis.insert(id.flatten());
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        if basis.len() == n * n {
            break;
        }
        for g in mats {
            let y = x.mul(g);
            if basis.insert(y.flatten()) {
                queue.push_back(y);
            }
        }
    }
    Ok(basis.len())
}

/// The solutions of `U G = H U`, as a subspace of column-major flattened
/// `n x n` matrices.
pub fn sylvester_solution_space<F: Field>(g: &Matrix<F>, h: &Matrix<F>) -> Result<Subspace<F>> {
    let n = g.ensure_square()?;
    if h.ensure_square()? != n {
        return Err(Error::Shape(format!(
            "Sylvester equation with {n}x{n} and {}x{} coefficients",
            h.rows(),
            h.cols()
        )));
    }
    let idx = |i: usize, j: usize| j * n + i;
    // coefficient of U_ij in (UG - HU)_ab is [a = i] G_jb - H_ai [b = j]
    let mut op = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = idx(i, j);
            for b in 0..n {
                op[(idx(i, b), col)] += g[(j, b)].clone();
            }
            for a in 0..n {
                op[(idx(a, j), col)] -= h[(a, i)].clone();
            }
        }
    }
    Ok(Subspace::kernel(&op))
}

/// Basis of `{U : U G = H U}`; with `G = H` this is the centralizer of `G`.
pub fn sylvester_kernel<F: Field>(g: &Matrix<F>, h: &Matrix<F>) -> Result<Vec<Matrix<F>>> {
    let n = g.rows();
    let space = sylvester_solution_space(g, h)?;
    Ok(space
        .basis()
        .iter()
        .map(|v| Matrix::unflatten(n, n, v))
        .collect())
}

/// `dim Z(G)`.
pub fn centralizer_dimension<F: Field>(g: &Matrix<F>) -> Result<usize> {
    Ok(sylvester_solution_space(g, g)?.dim())
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

    #[test]
    fn algebra_dimension_examples() {
        assert_eq!(algebra_dimension(&[Matrix::<Q>::identity(3)]).unwrap(), 1);
        assert_eq!(algebra_dimension(&[m(&[&[1, 0], &[0, 2]])]).unwrap(), 2);
        let a = m(&[&[0, 1], &[1, 0]]);
        let b = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(algebra_dimension(&[a.clone(), b]).unwrap(), 4);
        // X^2 - 1 and (X + 1)^2 share the eigenvalue -1: span{(1, 1)} is stable
        let c = m(&[&[0, -1], &[1, -2]]);
        assert_eq!(algebra_dimension(&[a, c]).unwrap(), 3);
        assert!(algebra_dimension::<Q>(&[]).is_err());
        assert!(algebra_dimension(&[Matrix::<Q>::identity(2), Matrix::identity(3)]).is_err());
    }

    #[test]
    fn algebra_dimension_by_word_enumeration() {
        // oracle: span of all words of length <= 3 in {a, b}
        let a = m(&[&[0, 1], &[1, 0]]);
        let b = m(&[&[0, -1], &[1, -2]]);
        let closure = algebra_dimension(&[a.clone(), b.clone()]).unwrap();
        let mut words = vec![Matrix::<Q>::identity(2)];
        let mut frontier = words.clone();
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &frontier {
                next.push(w.mul(&a));
                next.push(w.mul(&b));
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let flat: Vec<Vec<Q>> = words.iter().map(Matrix::flatten).collect();
        assert_eq!(Subspace::span(4, &flat).dim(), closure);
        assert_eq!(closure, 3);
    }

    #[test]
    fn sylvester_examples() {
        let id = Matrix::<Q>::identity(3);
        assert_eq!(sylvester_kernel(&id, &id).unwrap().len(), 9);
        let d12 = m(&[&[1, 0], &[0, 2]]);
        let z = sylvester_kernel(&d12, &d12).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|u| u[(0, 1)].is_zero() && u[(1, 0)].is_zero()));
        // U diag(1,2) = diag(2,1) U: four scalar equations leave u12, u21 free
        let d21 = m(&[&[2, 0], &[0, 1]]);
        let sols = sylvester_kernel(&d12, &d21).unwrap();
        assert_eq!(sols.len(), 2);
        for u in &sols {
            assert!(u[(0, 0)].is_zero() && u[(1, 1)].is_zero());
            assert_eq!(u.mul(&d12), d21.mul(u));
        }
        assert!(sylvester_kernel(&d12, &id).is_err());
    }

    #[test]
    fn centralizer_contains_identity() {
        let g = m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let space = sylvester_solution_space(&g, &g).unwrap();
        assert!(space.contains(&Matrix::<Q>::identity(3).flatten()));
        assert_eq!(centralizer_dimension(&g).unwrap(), 3);
    }
}
