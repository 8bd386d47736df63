use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// An ordered list of `p >= 2` invertible `n x n` matrices, `n >= 2`.
///
/// Whether the product `A_1 A_2 ... A_p` is the identity is computed once
/// at construction and kept as a flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyTuple<F> {
    n: usize,
    members: Vec<Matrix<F>>,
    product_is_identity: bool,
}

impl<F: Field> MonodromyTuple<F> {
    pub fn new(members: Vec<Matrix<F>>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::InvalidSize(format!(
                "a tuple needs at least 2 members, got {}",
                members.len()
            )));
        }
        let n = members[0].ensure_square()?;
        for (idx, m) in members.iter().enumerate() {
            let k = m.ensure_square()?;
            if k != n {
                return Err(Error::Shape(format!(
                    "member {} is {k}x{k}, member 1 is {n}x{n}",
                    idx + 1
                )));
            }
        }
        if n < 2 {
            return Err(Error::InvalidSize("members must be at least 2x2".into()));
        }
        if let Some(idx) = members.iter().position(|m| !m.is_invertible()) {
            return Err(Error::Singular { index: idx + 1 });
        }
        let product_is_identity = members
            .iter()
            .skip(1)
            .fold(members[0].clone(), |acc, m| acc.mul(m))
            .is_identity();
        Ok(MonodromyTuple {
            n,
            members,
            product_is_identity,
        })
    }

    /// Like [`MonodromyTuple::new`], but insists on `A_1 ... A_p = I`.
    pub fn with_product_identity(members: Vec<Matrix<F>>) -> Result<Self> {
        let t = Self::new(members)?;
        if !t.product_is_identity {
            return Err(Error::ProductNotIdentity);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Matrix<F>] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Matrix<F>> {
        self.members
    }

    pub fn product_is_identity(&self) -> bool {
        self.product_is_identity
    }

    /// Memberwise `T^-1 A_i T`.
    pub fn conjugate_by(&self, t: &Matrix<F>) -> Result<Self> {
        let t_inv = t.inverse()?;
        let members = self
            .members
            .iter()
            .map(|m| t_inv.try_mul(m)?.try_mul(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonodromyTuple {
            n: self.n,
            members,
            product_is_identity: self.product_is_identity,
        })
    }

    /// Conductor of the smallest cyclotomic field holding every entry.
    pub fn conductor(&self) -> u64 {
        self.members
            .iter()
            .flat_map(|m| m.entries())
            .fold(1, |acc, x| num_integer::lcm(acc, x.conductor()))
    }
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
    fn validates_members() {
        assert!(matches!(
            MonodromyTuple::new(vec![m(&[&[1, 0], &[0, 1]])]),
            Err(Error::InvalidSize(_))
        ));
        assert_eq!(
            MonodromyTuple::new(vec![m(&[&[1, 0], &[0, 1]]), m(&[&[1, 2], &[2, 4]])]),
            Err(Error::Singular { index: 2 })
        );
        assert!(matches!(
            MonodromyTuple::new(vec![m(&[&[2]]), m(&[&[3]])]),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            MonodromyTuple::new(vec![Matrix::<Q>::identity(2), Matrix::identity(3)]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn product_flag() {
        let g = m(&[&[1, 1], &[0, 1]]);
        let g_inv = g.inverse().unwrap();
        let t = MonodromyTuple::new(vec![g.clone(), g_inv]).unwrap();
        assert!(t.product_is_identity());
        assert!(!MonodromyTuple::new(vec![g.clone(), g.clone()])
            .unwrap()
            .product_is_identity());
        assert_eq!(
            MonodromyTuple::with_product_identity(vec![g.clone(), g]),
            Err(Error::ProductNotIdentity)
        );
    }
}
