use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// The two kinds of pseudo-reflection `h`, with `h - I = u w^T` of rank one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseudoReflectionKind<F> {
    /// Diagonalizable; the nontrivial eigenvalue is `1 + nu`, `nu != 0`.
    Reflection { nu: F },
    /// Unipotent: `Im(h - I)` lies in `ker(h - I)`.
    Transvection,
}

/// `rank(h - I) = 1`.
pub fn is_pseudo_reflection<F: Field>(h: &Matrix<F>) -> Result<bool> {
    h.ensure_square()?;
    Ok(h.shift(&F::one()).rank() == 1)
}

/// For `h - I = u w^T` the nontrivial eigenvalue is `1 + w.u` and
/// `w.u = tr(h - I)`; the image lies in the kernel exactly when it vanishes.
pub fn classify_pseudo_reflection<F: Field>(h: &Matrix<F>) -> Result<PseudoReflectionKind<F>> {
    h.ensure_square()?;
    let d = h.shift(&F::one());
    let rank = d.rank();
    if rank != 1 {
        return Err(Error::NotAPseudoReflection { rank });
    }
    let nu = d.trace();
    Ok(if nu.is_zero() {
        PseudoReflectionKind::Transvection
    } else {
        PseudoReflectionKind::Reflection { nu }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_ints(rows)
    }

    #[test]
    fn recognizes_pseudo_reflections() {
        assert!(is_pseudo_reflection(&m(&[&[5, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap());
        assert!(!is_pseudo_reflection(&Matrix::<Q>::identity(3)).unwrap());
        assert!(!is_pseudo_reflection(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]])).unwrap());
        assert!(is_pseudo_reflection(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_pseudo_reflection(&m(&[&[3, 0], &[0, 1]])).unwrap(),
            PseudoReflectionKind::Reflection { nu: Q::from_int(2) }
        );
        assert_eq!(
            classify_pseudo_reflection(&m(&[&[1, 1], &[0, 1]])).unwrap(),
            PseudoReflectionKind::Transvection
        );
        assert_eq!(
            classify_pseudo_reflection(&m(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]])).unwrap(),
            PseudoReflectionKind::Transvection
        );
        assert_eq!(
            classify_pseudo_reflection(&Matrix::<Q>::identity(2)),
            Err(Error::NotAPseudoReflection { rank: 0 })
        );
    }

    #[test]
    fn nontrivial_eigenvalue_of_a_reflection() {
        // not diagonal: h - I = (1, 2)^T (1, 1), eigenvalue 1 + 3
        let h = m(&[&[2, 1], &[2, 3]]);
        let PseudoReflectionKind::Reflection { nu } = classify_pseudo_reflection(&h).unwrap() else {
            panic!("expected a reflection");
        };
        let lambda = Q::from_int(1) + nu;
        assert!(h.char_poly().unwrap().eval(&lambda) == Q::from_int(0));
        assert_eq!(lambda, Q::from_int(4));
    }
}
