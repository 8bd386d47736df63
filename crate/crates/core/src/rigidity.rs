use crate::algebra::{centralizer_dimension, sylvester_kernel};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::tuple::MonodromyTuple;

/// Number of pseudo-random combinations tried when no basis element of the
/// solution space is invertible.
const COMBINATION_ATTEMPTS: usize = 32;

/// An invertible `u` with `u g_i u^-1 = h_i` for every `i`, if one exists.
///
/// The solutions of all `U g_i = h_i U` form a linear space. Its basis
/// elements are tried first; failing that, combinations with coefficients
/// drawn from a fixed-seed generator. When `t1` is irreducible the space is
/// at most a line and the answer is exact. Otherwise a `None` after the
/// random attempts is only overwhelmingly likely to be correct: a nonzero
/// determinant polynomial of degree `n` vanishes at a random point with
/// probability at most `n / 1000`.
pub fn simultaneous_conjugator<F: Field>(
    t1: &MonodromyTuple<F>,
    t2: &MonodromyTuple<F>,
) -> Result<Option<Matrix<F>>> {
    if t1.n() != t2.n() || t1.p() != t2.p() {
        return Err(Error::Shape(format!(
            "tuples of shape (n={}, p={}) and (n={}, p={})",
            t1.n(),
            t1.p(),
            t2.n(),
            t2.p()
        )));
    }
    let n = t1.n();
    let pairs: Vec<_> = t1.members().iter().zip(t2.members()).collect();
    // solve the first equation in full, then each further one only on the
    // solutions found so far
    let mut basis = sylvester_kernel(pairs[0].0, pairs[0].1)?;
    for (g, h) in &pairs[1..] {
        if basis.is_empty() {
            return Ok(None);
        }
        let images: Vec<Vec<F>> = basis.iter().map(|b| b.mul(g).sub(&h.mul(b)).flatten()).collect();
        let coeffs = Matrix::from_cols(&images)?.nullspace();
        basis = coeffs
            .iter()
            .map(|c| {
                basis
                    .iter()
                    .zip(c)
                    .filter(|(_, x)| !x.is_zero())
                    .fold(Matrix::zeros(n, n), |acc, (b, x)| acc.add(&b.scale(x)))
            })
            .collect();
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let mut candidates: Vec<Matrix<F>> = basis.clone();
    if basis.len() > 1 {
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..COMBINATION_ATTEMPTS {
            let mut u = Matrix::zeros(n, n);
            for b in &basis {
                state = state
                    .wrapping_mul(6_364_136_223_846_793_005)
                    .wrapping_add(1_442_695_040_888_963_407);
                let c = F::from_int(((state >> 33) % 1000 + 1) as i64);
                u = u.add(&b.scale(&c));
            }
            candidates.push(u);
        }
    }
    for u in candidates {
        if !u.is_invertible() {
            continue;
        }
        let u_inv = u.inverse()?;
        let ok = t1
            .members()
            .iter()
            .zip(t2.members())
            .all(|(g, h)| u.mul(g).mul(&u_inv) == *h);
        if ok {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// `(2 - p) n^2 + sum_i dim Z(g_i)`; equals 2 for irreducible linearly
/// rigid tuples.
pub fn rigidity_index<F: Field>(t: &MonodromyTuple<F>) -> Result<i64> {
    if !t.product_is_identity() {
        return Err(Error::ProductNotIdentity);
    }
    let n = t.n() as i64;
    let p = t.p() as i64;
    let mut chi = (2 - p) * n * n;
    for g in t.members() {
        chi += centralizer_dimension(g)? as i64;
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_ints(rows)
    }

    fn pair(g: Matrix<Q>) -> MonodromyTuple<Q> {
        let g_inv = g.inverse().unwrap();
        MonodromyTuple::new(vec![g, g_inv]).unwrap()
    }

    #[test]
    fn conjugator_of_a_tuple_with_itself() {
        let t = MonodromyTuple::new(vec![m(&[&[0, 1], &[1, 0]]), m(&[&[0, -1], &[1, 0]])]).unwrap();
        let u = simultaneous_conjugator(&t, &t).unwrap().unwrap();
        let one = u[(0, 0)].clone();
        assert_eq!(u, Matrix::identity(2).scale(&one));
    }

    #[test]
    fn conjugator_recovers_a_change_of_basis() {
        let t = MonodromyTuple::new(vec![m(&[&[0, 1], &[1, 0]]), m(&[&[0, -1], &[1, 0]])]).unwrap();
        let h = m(&[&[2, 1], &[1, 1]]);
        // members h g h^-1
        let t2 = t.conjugate_by(&h.inverse().unwrap()).unwrap();
        let u = simultaneous_conjugator(&t, &t2).unwrap().unwrap();
        for (g, g2) in t.members().iter().zip(t2.members()) {
            assert_eq!(u.mul(g).mul(&u.inverse().unwrap()), *g2);
        }
    }

    #[test]
    fn reducible_tuple_still_finds_invertible_conjugator() {
        let t1 = pair(m(&[&[1, 0], &[0, 2]]));
        let t2 = t1.conjugate_by(&m(&[&[1, 1], &[0, 1]])).unwrap();
        let u = simultaneous_conjugator(&t1, &t2).unwrap().unwrap();
        assert!(u.is_invertible());
    }

    #[test]
    fn different_spectra_have_no_conjugator() {
        let t1 = pair(m(&[&[1, 0], &[0, 2]]));
        let t2 = pair(m(&[&[1, 0], &[0, 3]]));
        assert_eq!(simultaneous_conjugator(&t1, &t2).unwrap(), None);
    }

    #[test]
    fn index_of_a_pair() {
        // (2 - 2) * 4 + 2 + 2
        let t = pair(m(&[&[1, 0], &[0, 2]]));
        assert_eq!(rigidity_index(&t).unwrap(), 4);
        let not_closed = MonodromyTuple::new(vec![m(&[&[1, 0], &[0, 2]]), m(&[&[1, 0], &[0, 2]])]).unwrap();
        assert_eq!(rigidity_index(&not_closed), Err(Error::ProductNotIdentity));
    }
}
