//! Common frames for tuples whose pairwise ratios are pseudo-reflections.
//!
//! If every `A_i A_j^-1` is a pseudo-reflection, every difference
//! `A_i - A_j` has rank one, and any two such differences share either their
//! kernel or their image. In a basis whose first `n - 1` vectors span the
//! common kernel the members share their first `n - 1` columns; in a basis
//! ending with a generator of the common image they agree outside the last
//! row.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::tuple::MonodromyTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameMode {
    /// The first `n - 1` columns of every transformed member agree.
    Columns,
    /// The first `n - 1` rows agree; only the last row varies.
    Rows,
}

/// The construction that produced a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameBranch {
    /// `ker(A_1 - A_2) = ker(A_2 - A_3)`, or `p = 2`.
    CommonKernel,
    /// The kernels differ and `Im(A_1 - A_2)` is not inside `ker(A_1 - A_2)`.
    Reflection,
    /// The kernels differ and `Im(A_1 - A_2) ⊆ ker(A_1 - A_2)`.
    Transvection,
    /// Rebuilt from all pairwise differences after members beyond the
    /// third did not fit the three-member frame.
    Global,
    /// Supplied by the caller and verified.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedFrame<F> {
    basis_change: Matrix<F>,
    mode: FrameMode,
    branch: FrameBranch,
    transformed: Vec<Matrix<F>>,
}

impl<F: Field> SharedFrame<F> {
    /// Checks that `T^-1 A_i T` share their first `n - 1` rows or columns.
    pub fn from_basis(t: &MonodromyTuple<F>, basis_change: Matrix<F>, mode: FrameMode) -> Result<Self> {
        Self::build(t, basis_change, mode, FrameBranch::Given)
    }

    fn build(
        t: &MonodromyTuple<F>,
        basis_change: Matrix<F>,
        mode: FrameMode,
        branch: FrameBranch,
    ) -> Result<Self> {
        if basis_change.rows() != t.n() || !basis_change.is_invertible() {
            return Err(Error::FrameVerification(
                "basis change is not an invertible n x n matrix".into(),
            ));
        }
        let transformed = t.conjugate_by(&basis_change)?.into_members();
        verify_shared(&transformed, mode)?;
        Ok(SharedFrame {
            basis_change,
            mode,
            branch,
            transformed,
        })
    }

    /// `T`, whose columns are the new basis.
    pub fn basis_change(&self) -> &Matrix<F> {
        &self.basis_change
    }

    pub fn mode(&self) -> FrameMode {
        self.mode
    }

    pub fn branch(&self) -> FrameBranch {
        self.branch
    }

    /// `T^-1 A_i T`.
    pub fn transformed(&self) -> &[Matrix<F>] {
        &self.transformed
    }
}

/// Entry-by-entry check of the shared rows or columns.
fn verify_shared<F: Field>(mats: &[Matrix<F>], mode: FrameMode) -> Result<()> {
    let first = &mats[0];
    let n = first.rows();
    for (idx, m) in mats.iter().enumerate().skip(1) {
        for a in 0..n - 1 {
            for b in 0..n {
                let (r, c) = match mode {
                    FrameMode::Columns => (b, a),
                    FrameMode::Rows => (a, b),
                };
                if m[(r, c)] != first[(r, c)] {
                    return Err(Error::FrameVerification(format!(
                        "member {} differs from member 1 at ({}, {})",
                        idx + 1,
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

fn columns_frame<F: Field>(kernel: &Subspace<F>) -> Matrix<F> {
    let mut cols = kernel.basis().to_vec();
    cols.extend(kernel.completion());
    Matrix::from_cols(&cols).expect("n columns of length n")
}

fn rows_frame<F: Field>(w: &[F]) -> Matrix<F> {
    let line = Subspace::span(w.len(), &[w.to_vec()]);
    let mut cols = line.completion();
    cols.push(w.to_vec());
    Matrix::from_cols(&cols).expect("n columns of length n")
}

/// Some `x` with `d x = w`, for `d` of rank one and `w` spanning its image.
fn preimage<F: Field>(d: &Matrix<F>, w: &[F]) -> Vec<F> {
    let n = d.cols();
    let j = (0..n)
        .find(|&j| (0..d.rows()).any(|i| !d[(i, j)].is_zero()))
        .expect("d is nonzero");
    let k = w.iter().position(|x| !x.is_zero()).expect("w is nonzero");
    let c = d[(k, j)].clone() / &w[k];
    let mut x = vec![F::zero(); n];
    x[j] = c.checked_inv().expect("nonzero");
    x
}

/// First vector of `candidates` outside `sub`.
fn first_outside<F: Field>(candidates: &[Vec<F>], sub: &Subspace<F>) -> Vec<F> {
    candidates
        .iter()
        .find(|v| !sub.contains(v))
        .cloned()
        .expect("a larger space has a vector outside")
}

/// Finds `T` with the conjugated members sharing `n - 1` rows or columns.
///
/// Follows the three-member construction: with `W1 = ker(A_1 - A_2)` and
/// `W2 = ker(A_2 - A_3)`, equal kernels give a column frame; otherwise the
/// basis is assembled from `W1 ∩ W2`, `W1` and `w`, a generator of
/// `Im(A_1 - A_2)`, and always ends with `w` so that the varying row is the
/// last one. Further members are checked against that frame; if one does not
/// fit, the frame is rebuilt from the kernels or images of all differences.
pub fn shared_frame<F: Field>(t: &MonodromyTuple<F>) -> Result<SharedFrame<F>> {
    let a = t.members();
    let p = a.len();
    for i in 0..p {
        for j in i + 1..p {
            if a[i].sub(&a[j]).rank() != 1 {
                return Err(Error::NotPseudoReflection { i: i + 1, j: j + 1 });
            }
        }
    }
    let d12 = a[0].sub(&a[1]);
    let w1 = Subspace::kernel(&d12);
    if p == 2 {
        return SharedFrame::build(t, columns_frame(&w1), FrameMode::Columns, FrameBranch::CommonKernel);
    }
    let w2 = Subspace::kernel(&a[1].sub(&a[2]));
    let (basis, mode, branch) = if w1 == w2 {
        (columns_frame(&w1), FrameMode::Columns, FrameBranch::CommonKernel)
    } else {
        let w = Subspace::image(&d12).basis()[0].clone();
        let meet = w1.intersect(&w2)?;
        let mut cols: Vec<Vec<F>>;
        let branch;
        if !w1.contains(&w) {
            cols = meet.basis().to_vec();
            cols.push(first_outside(w1.basis(), &meet));
            branch = FrameBranch::Reflection;
        } else if meet.contains(&w) {
            // w heads a basis of W1 ∩ W2, then moves to the end
            let mut span = Subspace::span(t.n(), &[w.clone()]);
            cols = Vec::new();
            for v in meet.basis() {
                if !span.contains(v) {
                    span = span.sum(&Subspace::span(t.n(), &[v.clone()]))?;
                    cols.push(v.clone());
                }
            }
            cols.push(first_outside(w1.basis(), &meet));
            cols.push(preimage(&d12, &w));
            branch = FrameBranch::Transvection;
        } else {
            cols = meet.basis().to_vec();
            cols.push(preimage(&d12, &w));
            branch = FrameBranch::Transvection;
        }
        cols.push(w);
        (
            Matrix::from_cols(&cols).expect("n columns of length n"),
            FrameMode::Rows,
            branch,
        )
    };
    match SharedFrame::build(t, basis, mode, branch) {
        Ok(frame) => Ok(frame),
        Err(Error::FrameVerification(_)) if p > 3 => global_frame(t),
        Err(e) => Err(e),
    }
}

fn global_frame<F: Field>(t: &MonodromyTuple<F>) -> Result<SharedFrame<F>> {
    let a = t.members();
    let diffs: Vec<Matrix<F>> = a[1..].iter().map(|m| a[0].sub(m)).collect();
    let kernel = Subspace::kernel(&diffs[0]);
    if diffs.iter().all(|d| Subspace::kernel(d) == kernel) {
        return SharedFrame::build(t, columns_frame(&kernel), FrameMode::Columns, FrameBranch::Global);
    }
    let image = Subspace::image(&diffs[0]);
    if diffs.iter().all(|d| Subspace::image(d) == image) {
        let w = image.basis()[0].clone();
        return SharedFrame::build(t, rows_frame(&w), FrameMode::Rows, FrameBranch::Global);
    }
    Err(Error::FrameVerification(
        "the differences A_1 - A_j share neither a kernel nor an image".into(),
    ))
}
