//! Common invariant subspaces and common eigenvalues of framed tuples.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::frame::{FrameMode, SharedFrame};
use crate::matrix::Matrix;
use crate::reflection::is_pseudo_reflection;
use crate::roots::FindRoots;
use crate::subspace::Subspace;
use crate::tuple::MonodromyTuple;

/// A common invariant line or hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StableSubspace<F> {
    Line(Subspace<F>),
    Hyperplane(Subspace<F>),
}

impl<F> StableSubspace<F> {
    pub fn subspace(&self) -> &Subspace<F> {
        match self {
            StableSubspace::Line(s) | StableSubspace::Hyperplane(s) => s,
        }
    }

    pub fn into_subspace(self) -> Subspace<F> {
        match self {
            StableSubspace::Line(s) | StableSubspace::Hyperplane(s) => s,
        }
    }
}

/// For matrices `M_i` sharing their first `n - 1` rows, each singular:
/// either a common kernel vector (right) or a common left kernel vector.
enum SharedRowsWitness<F> {
    Right(Vec<F>),
    Left(Vec<F>),
}

fn shared_rows_witness<F: Field>(m: &Matrix<F>) -> SharedRowsWitness<F> {
    let n = m.rows();
    let top = Matrix::from_fn(n - 1, n, |i, j| m[(i, j)].clone());
    if top.rank() == n - 1 {
        // the last row of every singular M_i is a combination of the others
        SharedRowsWitness::Right(top.nullspace().swap_remove(0))
    } else {
        let mut c = top.transpose().nullspace().swap_remove(0);
        c.push(F::zero());
        SharedRowsWitness::Left(c)
    }
}

fn check_eigenvalue<F: Field>(t: &MonodromyTuple<F>, lambda: &F) -> Result<()> {
    for (idx, a) in t.members().iter().enumerate() {
        if !a.char_poly()?.eval(lambda).is_zero() {
            return Err(Error::NotCommonEigenvalue {
                value: lambda.to_string(),
                index: idx + 1,
            });
        }
    }
    Ok(())
}

fn check_invariant<F: Field>(t: &MonodromyTuple<F>, s: &Subspace<F>) -> Result<()> {
    match t.members().iter().position(|a| !s.is_invariant_under(a)) {
        Some(idx) => Err(Error::NotInvariant { index: idx + 1 }),
        None => Ok(()),
    }
}

/// A line or hyperplane stable under every member, given a common
/// eigenvalue `lambda`.
///
/// In frame coordinates the matrices `B_i - lambda I` share `n - 1` rows.
/// If those rows are independent their common kernel vector is a common
/// eigenvector; otherwise a dependence `c` among them gives the common left
/// eigenvector `(c, 0)` and hence an invariant hyperplane. Column frames are
/// handled through transposes, which swaps the two outcomes.
pub fn common_line_or_hyperplane<F: Field>(
    t: &MonodromyTuple<F>,
    frame: &SharedFrame<F>,
    lambda: &F,
) -> Result<StableSubspace<F>> {
    check_eigenvalue(t, lambda)?;
    let n = t.n();
    let b = &frame.transformed()[0];
    let shifted = match frame.mode() {
        FrameMode::Rows => b.shift(lambda),
        FrameMode::Columns => b.transpose().shift(lambda),
    };
    let witness = shared_rows_witness(&shifted);
    // `Right` for the frame's own orientation is a line; flip for columns.
    let (as_line, vector) = match (frame.mode(), witness) {
        (FrameMode::Rows, SharedRowsWitness::Right(v)) => (true, v),
        (FrameMode::Rows, SharedRowsWitness::Left(u)) => (false, u),
        (FrameMode::Columns, SharedRowsWitness::Right(v)) => (false, v),
        (FrameMode::Columns, SharedRowsWitness::Left(u)) => (true, u),
    };
    let tm = frame.basis_change();
    let result = if as_line {
        StableSubspace::Line(Subspace::span(n, &[tm.mul_vec(&vector)]))
    } else {
        let perp = Subspace::span(n, &[vector]).annihilator();
        let mapped: Vec<Vec<F>> = perp.basis().iter().map(|x| tm.mul_vec(x)).collect();
        StableSubspace::Hyperplane(Subspace::span(n, &mapped))
    };
    check_invariant(t, result.subspace())
        .map_err(|e| Error::FrameVerification(format!("constructed subspace: {e}")))?;
    Ok(result)
}

/// An eigenvalue shared by all members, read off from a common diagonal
/// block exposed by the invariant subspace `w`.
///
/// In a column frame with `E = span(e_1, ..., e_(n-1))`: if `W ⊆ E` the
/// members agree on `W`, so the block of `A_i` on `W` is common; otherwise
/// `W + E` is everything and the block on the quotient by `W` is common.
/// Row frames are handled through transposes and the annihilator of `W`.
/// The result is the least root of that block's characteristic polynomial.
pub fn common_eigenvalue_from_invariant_subspace<F: FindRoots>(
    t: &MonodromyTuple<F>,
    frame: &SharedFrame<F>,
    w: &Subspace<F>,
) -> Result<F> {
    let n = t.n();
    if w.ambient_dim() != n {
        return Err(Error::Shape(format!(
            "subspace lives in dimension {}, tuple in {n}",
            w.ambient_dim()
        )));
    }
    if !w.is_proper_nonzero() {
        return Err(Error::TrivialSubspace {
            dim: w.dim(),
            ambient: n,
        });
    }
    check_invariant(t, w)?;
    let tm = frame.basis_change();
    let t_inv = tm.inverse()?;
    let local: Vec<Vec<F>> = w.basis().iter().map(|x| t_inv.mul_vec(x)).collect();
    let local = Subspace::span(n, &local);
    let (mats, local): (Vec<Matrix<F>>, Subspace<F>) = match frame.mode() {
        FrameMode::Columns => (frame.transformed().to_vec(), local),
        FrameMode::Rows => (
            frame.transformed().iter().map(Matrix::transpose).collect(),
            local.annihilator(),
        ),
    };
    let block = common_block(&mats, &local)?;
    let poly = block.char_poly()?;
    let roots = F::roots_with(&poly, t.conductor());
    let lambda = roots
        .roots
        .into_iter()
        .map(|(r, _)| r)
        .next()
        .ok_or_else(|| Error::RootOutsideField {
            poly: poly.to_string(),
            conductor: t.conductor(),
        })?;
    check_eigenvalue(t, &lambda)?;
    Ok(lambda)
}

/// The diagonal block common to matrices sharing their first `n - 1`
/// columns, given a common invariant subspace `w`.
fn common_block<F: Field>(mats: &[Matrix<F>], w: &Subspace<F>) -> Result<Matrix<F>> {
    let n = mats[0].rows();
    let e = Subspace::coordinate(n, n - 1);
    let r = w.dim();
    let (cols, range) = if e.contains_subspace(w) {
        let mut cols = w.basis().to_vec();
        cols.extend(w.completion());
        (cols, 0..r)
    } else {
        // vectors of E completing W, followed by W
        let mut span = w.clone();
        let mut cols = Vec::new();
        for v in e.basis() {
            if !span.contains(v) {
                span = span.sum(&Subspace::span(n, &[v.clone()]))?;
                cols.push(v.clone());
            }
        }
        cols.extend(w.basis().iter().cloned());
        (cols, 0..n - r)
    };
    let p = Matrix::from_cols(&cols)?;
    let k = range.len();
    let blocks: Vec<Matrix<F>> = mats
        .iter()
        .map(|m| {
            let c = m.conjugate_by(&p)?;
            Ok(Matrix::from_fn(k, k, |i, j| c[(range.start + i, range.start + j)].clone()))
        })
        .collect::<Result<_>>()?;
    if blocks.iter().any(|b| *b != blocks[0]) {
        return Err(Error::FrameVerification(
            "diagonal blocks on the invariant subspace differ".into(),
        ));
    }
    Ok(blocks.into_iter().next().expect("nonempty"))
}

/// Irreducibility of the group generated by `a` and `b`, with `a b^-1` a
/// pseudo-reflection: it holds exactly when the spectra are disjoint, i.e.
/// when the characteristic polynomials are coprime.
pub fn beukers_irreducible<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    let n = a.ensure_square()?;
    if b.ensure_square()? != n {
        return Err(Error::Shape(format!(
            "{n}x{n} and {}x{} matrices",
            b.rows(),
            b.cols()
        )));
    }
    if !a.is_invertible() {
        return Err(Error::Singular { index: 1 });
    }
    if !b.is_invertible() {
        return Err(Error::Singular { index: 2 });
    }
    if !is_pseudo_reflection(&a.mul(&b.inverse()?))? {
        return Err(Error::NotPseudoReflection { i: 1, j: 2 });
    }
    let g = a.char_poly()?.gcd(&b.char_poly()?);
    Ok(g.is_constant())
}
