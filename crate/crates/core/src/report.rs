use std::collections::BTreeMap;

use crate::algebra::algebra_dimension;
use crate::error::Result;
use crate::frame::{shared_frame, SharedFrame};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::reflection::is_pseudo_reflection;
use crate::rigidity::rigidity_index;
use crate::roots::FindRoots;
use crate::stabilize::common_line_or_hyperplane;
use crate::subspace::Subspace;
use crate::tuple::MonodromyTuple;

/// Whether `A_i A_j^-1` is a pseudo-reflection; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub pseudo_reflection: bool,
}

/// Eigenvalues found in the working field, repeated by multiplicity, and
/// the factor of the characteristic polynomial whose roots lie outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport<F> {
    pub values: Vec<F>,
    pub unresolved: Option<Poly<F>>,
}

impl<F: FindRoots> SpectrumReport<F> {
    fn of(poly: &Poly<F>, conductor: u64) -> Self {
        let roots = F::roots_with(poly, conductor);
        let unresolved = (!roots.splits()).then(|| roots.residual.clone());
        SpectrumReport {
            values: roots.multiset(),
            unresolved,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport<F> {
    pub n: usize,
    pub p: usize,
    pub pseudo_reflection_pairs: Vec<PairEntry>,
    pub spectra: Vec<SpectrumReport<F>>,
    pub spectra_intersection: SpectrumReport<F>,
    pub irreducible: bool,
    pub burnside_dim: usize,
    pub invariant_witness: Option<Subspace<F>>,
    pub rigidity_index: Option<i64>,
    pub shared_frame: Option<SharedFrame<F>>,
    /// Reasons for absent fields and other annotations, keyed by field.
    pub notes: BTreeMap<String, String>,
}

/// Runs every check on `t`. Eigenvalues are searched in the cyclotomic
/// field generated by the entries, widened by `extra_conductor` and by any
/// roots of unity among the eigenvalues.
pub fn analyze<F: FindRoots>(t: &MonodromyTuple<F>, extra_conductor: u64) -> Result<AnalysisReport<F>> {
    let n = t.n();
    let p = t.p();
    let a = t.members();
    let conductor = num_integer::lcm(t.conductor(), extra_conductor.max(1));
    let mut notes = BTreeMap::new();

    let mut pairs = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            let ratio = a[i].mul(&a[j].inverse()?);
            pairs.push(PairEntry {
                i: i + 1,
                j: j + 1,
                pseudo_reflection: is_pseudo_reflection(&ratio)?,
            });
        }
    }

    let polys: Vec<Poly<F>> = a.iter().map(Matrix::char_poly).collect::<Result<_>>()?;
    let spectra: Vec<SpectrumReport<F>> = polys.iter().map(|f| SpectrumReport::of(f, conductor)).collect();
    if spectra.iter().any(|s| s.unresolved.is_some()) {
        notes.insert(
            "spectra".into(),
            "unresolved_factor holds the part of a characteristic polynomial with no roots in the working field".into(),
        );
    }
    let common = polys[1..].iter().fold(polys[0].clone(), |acc, f| acc.gcd(f));
    let spectra_intersection = SpectrumReport::of(&common, conductor);

    let burnside_dim = algebra_dimension(a)?;
    let irreducible = burnside_dim == n * n;

    let frame = if pairs.iter().all(|e| e.pseudo_reflection) {
        match shared_frame(t) {
            Ok(f) => Some(f),
            Err(e) => {
                notes.insert("shared_frame".into(), e.to_string());
                None
            }
        }
    } else {
        let bad = pairs.iter().find(|e| !e.pseudo_reflection).expect("some pair fails");
        notes.insert(
            "shared_frame".into(),
            format!(
                "A_{} A_{}^-1 is not a pseudo-reflection, so no shared frame is guaranteed",
                bad.i, bad.j
            ),
        );
        None
    };

    let invariant_witness = if irreducible {
        notes.insert(
            "invariant_witness".into(),
            "irreducible: no proper nonzero invariant subspace exists".into(),
        );
        None
    } else {
        let found = find_witness(t, frame.as_ref(), &spectra_intersection.values);
        if found.is_none() {
            let reason = if spectra_intersection.values.is_empty() && spectra_intersection.unresolved.is_some() {
                "the common eigenvalues lie outside the working field"
            } else {
                "reducible, but no common eigenvector or eigen-covector exists; invariant subspaces of higher codimension are not searched"
            };
            notes.insert("invariant_witness".into(), reason.into());
        }
        found
    };

    let rigidity = if t.product_is_identity() {
        if p == 2 {
            notes.insert(
                "rigidity_index".into(),
                "p = 2: a pair (g, g^-1) is linearly rigid by direct argument; the index is not the criterion here".into(),
            );
        }
        Some(rigidity_index(t)?)
    } else {
        notes.insert(
            "rigidity_index".into(),
            "the product of the members is not the identity".into(),
        );
        None
    };

    Ok(AnalysisReport {
        n,
        p,
        pseudo_reflection_pairs: pairs,
        spectra,
        spectra_intersection,
        irreducible,
        burnside_dim,
        invariant_witness,
        rigidity_index: rigidity,
        shared_frame: frame,
        notes,
    })
}

/// A verified invariant line or hyperplane: from the shared frame when
/// there is one, otherwise a common eigenvector or eigen-covector.
fn find_witness<F: FindRoots>(
    t: &MonodromyTuple<F>,
    frame: Option<&SharedFrame<F>>,
    common: &[F],
) -> Option<Subspace<F>> {
    let n = t.n();
    let a = t.members();
    let mut lambdas = common.to_vec();
    lambdas.dedup();
    for lambda in &lambdas {
        if let Some(frame) = frame {
            if let Ok(s) = common_line_or_hyperplane(t, frame, lambda) {
                return Some(s.into_subspace());
            }
        }
        let stacked = |transpose: bool| {
            let rows: Vec<Vec<F>> = a
                .iter()
                .flat_map(|m| {
                    let s = m.shift(lambda);
                    let s = if transpose { s.transpose() } else { s };
                    s.row_vecs()
                })
                .collect();
            Matrix::from_rows(rows).expect("equal lengths")
        };
        let right = stacked(false).nullspace();
        let candidate = if let Some(v) = right.into_iter().next() {
            Subspace::span(n, &[v])
        } else if let Some(u) = stacked(true).nullspace().into_iter().next() {
            Subspace::span(n, &[u]).annihilator()
        } else {
            continue;
        };
        if a.iter().all(|m| candidate.is_invariant_under(m)) {
            return Some(candidate);
        }
    }
    None
}
