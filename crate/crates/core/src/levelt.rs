//! Levelt tuples: companion matrices with prescribed spectra, and the
//! reduction of any shared-column tuple to that normal form.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::{root_of_unity, Cyclotomic};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::krylov::krylov_cyclic_vector;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::roots::FindRoots;
use crate::subspace::Subspace;
use crate::tuple::MonodromyTuple;

/// A multiset of nonzero eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSpec<F> {
    values: Vec<F>,
}

impl<F: Field> SpectrumSpec<F> {
    pub fn new(values: Vec<F>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSize("empty spectrum".into()));
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::ZeroEigenvalue { spectrum: 1 });
        }
        Ok(SpectrumSpec { values })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `prod (X - alpha)`.
    pub fn poly(&self) -> Poly<F> {
        poly_from_roots(&self.values)
    }
}

pub fn poly_from_roots<F: Field>(roots: &[F]) -> Poly<F> {
    Poly::from_roots(roots)
}

/// The companion tuple of the given spectra.
///
/// Errors when `p < 2`, `n < 2`, sizes differ, a value is zero, or some
/// value lies in every spectrum.
pub fn levelt_construct<F: Field>(specs: &[SpectrumSpec<F>]) -> Result<MonodromyTuple<F>> {
    for (idx, s) in specs.iter().enumerate() {
        if s.values.iter().any(Zero::is_zero) {
            return Err(Error::ZeroEigenvalue { spectrum: idx + 1 });
        }
    }
    check_sizes(specs.len(), specs.iter().map(SpectrumSpec::len))?;
    let common: Vec<F> = {
        let mut vals: Vec<F> = specs[0]
            .values
            .iter()
            .filter(|x| specs[1..].iter().all(|s| s.values.contains(x)))
            .cloned()
            .collect();
        vals.sort();
        vals.dedup();
        vals
    };
    if !common.is_empty() {
        return Err(Error::CommonEigenvalue {
            values: common.iter().map(ToString::to_string).collect(),
        });
    }
    let polys: Vec<Poly<F>> = specs.iter().map(SpectrumSpec::poly).collect();
    from_char_polys(&polys)
}

fn check_sizes(p: usize, sizes: impl Iterator<Item = usize>) -> Result<usize> {
    if p < 2 {
        return Err(Error::InvalidSize(format!("need at least 2 spectra, got {p}")));
    }
    let sizes: Vec<usize> = sizes.collect();
    let n = sizes[0];
    if let Some(idx) = sizes.iter().position(|&s| s != n) {
        return Err(Error::Shape(format!(
            "spectrum {} has {} values, spectrum 1 has {n}",
            idx + 1,
            sizes[idx]
        )));
    }
    if n < 2 {
        return Err(Error::InvalidSize(format!("spectra must have at least 2 values, got {n}")));
    }
    Ok(n)
}

/// Companion tuple from monic characteristic polynomials with coprime
/// common part (no root shared by all of them).
pub fn from_char_polys<F: Field>(polys: &[Poly<F>]) -> Result<MonodromyTuple<F>> {
    check_sizes(polys.len(), polys.iter().map(|p| p.degree().unwrap_or(0)))?;
    let g = common_factor(polys);
    if !g.is_constant() {
        return Err(Error::CommonEigenvalue {
            values: vec![format!("root of {g}")],
        });
    }
    let members = polys
        .iter()
        .map(Matrix::companion)
        .collect::<Result<Vec<_>>>()?;
    MonodromyTuple::new(members)
}

fn common_factor<F: Field>(polys: &[Poly<F>]) -> Poly<F> {
    polys[1..]
        .iter()
        .fold(polys[0].clone(), |acc, p| acc.gcd(p))
}

/// Reduces a tuple sharing its first `n - 1` columns to companion form.
///
/// With `W = span(e_1, ..., e_(n-1))` and `v` the cyclic vector of `A_1` on
/// `W`, the basis `v, A_1 v, ..., A_1^(n-1) v` puts every member in
/// companion form, because each `A_i` agrees with `A_1` on `W`. Returns that
/// basis (as the columns of `T`) and the conjugated tuple.
pub fn levelt_normalize<F: FindRoots>(
    t: &MonodromyTuple<F>,
) -> Result<(Matrix<F>, MonodromyTuple<F>)> {
    let n = t.n();
    let a = t.members();
    for (idx, m) in a.iter().enumerate().skip(1) {
        for c in 0..n - 1 {
            for r in 0..n {
                if m[(r, c)] != a[0][(r, c)] {
                    return Err(Error::SharedColumns {
                        member: idx + 1,
                        row: r + 1,
                        col: c + 1,
                    });
                }
            }
        }
    }
    let polys: Vec<Poly<F>> = a.iter().map(Matrix::char_poly).collect::<Result<_>>()?;
    let g = common_factor(&polys);
    if !g.is_constant() {
        let found = F::roots_with(&g, t.conductor());
        let mut values: Vec<String> = found.roots.iter().map(|(r, _)| r.to_string()).collect();
        if !found.residual.is_constant() {
            values.push(format!("root of {}", found.residual));
        }
        return Err(Error::CommonEigenvalue { values });
    }
    let w = Subspace::coordinate(n, n - 1);
    let v = krylov_cyclic_vector(&a[0], &w)?;
    let mut cols = vec![v];
    for _ in 1..n {
        let next = a[0].mul_vec(cols.last().expect("nonempty"));
        cols.push(next);
    }
    let basis = Matrix::from_cols(&cols)?;
    let normalized = t.conjugate_by(&basis)?;
    for (idx, (m, p)) in normalized.members().iter().zip(&polys).enumerate() {
        if *m != Matrix::companion(p)? {
            return Err(Error::FrameVerification(format!(
                "member {} is not in companion form after normalization",
                idx + 1
            )));
        }
    }
    Ok((basis, normalized))
}

/// Local exponents `a_1..a_n` (at infinity) and `b_1..b_n` (at zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    pub num: Vec<BigRational>,
    pub den: Vec<BigRational>,
}

impl HypergeometricParams {
    pub fn new(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        if num.len() != den.len() {
            return Err(Error::Shape(format!(
                "{} numerator and {} denominator exponents",
                num.len(),
                den.len()
            )));
        }
        if num.len() < 2 {
            return Err(Error::InvalidSize(format!(
                "need at least 2 exponents on each side, got {}",
                num.len()
            )));
        }
        Ok(HypergeometricParams { num, den })
    }

    /// First `(i, j)` (1-based, row-major) with `a_i - b_j` an integer.
    pub fn integer_difference(&self) -> Option<(usize, usize)> {
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in self.den.iter().enumerate() {
                if (a - b).is_integer() {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// The companion matrices `A` (spectrum `exp(2 pi i a_j)`) and `B`
    /// (spectrum `exp(2 pi i b_j)`).
    pub fn companion_pair(&self) -> Result<(Matrix<Cyclotomic>, Matrix<Cyclotomic>)> {
        if let Some((i, j)) = self.integer_difference() {
            return Err(Error::IntegerExponentDifference { i, j });
        }
        let spec = |e: &[BigRational]| e.iter().map(root_of_unity).collect::<Vec<_>>();
        let a = Matrix::companion(&poly_from_roots(&spec(&self.num)))?;
        let b = Matrix::companion(&poly_from_roots(&spec(&self.den)))?;
        Ok((a, b))
    }
}

/// The triple `(A, B^-1, B A^-1)`, whose product is the identity and whose
/// last member is the inverse of the pseudo-reflection `A B^-1`.
pub fn hypergeometric_tuple(params: &HypergeometricParams) -> Result<MonodromyTuple<Cyclotomic>> {
    let (a, b) = params.companion_pair()?;
    let b_inv = b.inverse()?;
    let last = b.mul(&a.inverse()?);
    MonodromyTuple::with_product_identity(vec![a, b_inv, last])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;
    use crate::reflection::is_pseudo_reflection;

    type Q = BigRational;

    fn q(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_ints(rows)
    }

    fn specs(vals: &[&[i64]]) -> Vec<SpectrumSpec<Q>> {
        vals.iter()
            .map(|v| SpectrumSpec::new(v.iter().map(|&x| Q::from_int(x)).collect()).unwrap())
            .collect()
    }

    #[test]
    fn construct_examples() {
        let i = Cyclotomic::zeta(4);
        let s = vec![
            SpectrumSpec::new(vec![Cyclotomic::integer(1), Cyclotomic::integer(-1)]).unwrap(),
            SpectrumSpec::new(vec![i.clone(), -i]).unwrap(),
        ];
        let t = levelt_construct(&s).unwrap();
        assert_eq!(t.members()[0], Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(t.members()[1], Matrix::from_ints(&[&[0, -1], &[1, 0]]));

        let t = levelt_construct(&specs(&[&[-1, -1], &[1, 1]])).unwrap();
        assert_eq!(t.members()[0], m(&[&[0, -1], &[1, -2]]));
        assert_eq!(t.members()[1], m(&[&[0, -1], &[1, 2]]));
    }

    #[test]
    fn construct_errors() {
        assert_eq!(
            levelt_construct(&specs(&[&[1, 2], &[1, 3]])),
            Err(Error::CommonEigenvalue {
                values: vec!["1".into()]
            })
        );
        assert!(matches!(
            levelt_construct(&specs(&[&[1, 2]])),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            levelt_construct(&specs(&[&[1], &[2]])),
            Err(Error::InvalidSize(_))
        ));
        let zero = vec![
            SpectrumSpec { values: vec![Q::from_int(1), Q::from_int(2)] },
            SpectrumSpec { values: vec![Q::from_int(0), Q::from_int(3)] },
        ];
        assert_eq!(levelt_construct(&zero), Err(Error::ZeroEigenvalue { spectrum: 2 }));
        // pairwise overlaps are fine as long as nothing is common to all
        let t = levelt_construct(&specs(&[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(t.p(), 3);
    }

    #[test]
    fn normalize_companion_is_fixed_point() {
        let t = levelt_construct(&specs(&[&[1, 2, 3], &[-1, 5, 7]])).unwrap();
        let (basis, normalized) = levelt_normalize(&t).unwrap();
        assert!(basis.is_identity());
        assert_eq!(normalized, t);
    }

    #[test]
    fn normalize_undoes_shared_column_conjugation() {
        let t = levelt_construct(&specs(&[&[1, 2, 3], &[-1, 5, 7], &[4, 4, -2]])).unwrap();
        // S fixes span(e1, e2), so the conjugates still share two columns
        let s = m(&[&[2, 1, 3], &[1, 1, -1], &[0, 0, 5]]);
        let moved = t.conjugate_by(&s).unwrap();
        let (_, normalized) = levelt_normalize(&moved).unwrap();
        assert_eq!(normalized, t);
    }

    #[test]
    fn normalize_rejects() {
        let t = MonodromyTuple::new(vec![m(&[&[1, 1], &[0, 2]]), m(&[&[1, 1], &[0, 3]])]).unwrap();
        assert!(matches!(levelt_normalize(&t), Err(Error::CommonEigenvalue { .. })));
        let t = MonodromyTuple::new(vec![m(&[&[1, 0], &[0, 2]]), m(&[&[2, 0], &[0, 3]])]).unwrap();
        assert_eq!(
            levelt_normalize(&t),
            Err(Error::SharedColumns {
                member: 2,
                row: 1,
                col: 1
            })
        );
    }

    #[test]
    fn hypergeometric_gauss_case() {
        let params = HypergeometricParams::new(vec![q("1/2"), q("1/2")], vec![q("1"), q("1")]).unwrap();
        let t = hypergeometric_tuple(&params).unwrap();
        assert!(t.product_is_identity());
        let (a, b) = params.companion_pair().unwrap();
        assert_eq!(a, Matrix::from_ints(&[&[0, -1], &[1, -2]]));
        assert_eq!(b, Matrix::from_ints(&[&[0, -1], &[1, 2]]));
        assert_eq!(a.sub(&b).rank(), 1);
        assert!(is_pseudo_reflection(&t.members()[2].inverse().unwrap()).unwrap());
    }

    #[test]
    fn hypergeometric_errors() {
        assert!(matches!(
            HypergeometricParams::new(vec![q("1/2")], vec![q("0")]),
            Err(Error::InvalidSize(_))
        ));
        let p = HypergeometricParams::new(vec![q("1/3"), q("2/3")], vec![q("1/3"), q("1")]).unwrap();
        assert_eq!(
            hypergeometric_tuple(&p),
            Err(Error::IntegerExponentDifference { i: 1, j: 1 })
        );
    }
}
