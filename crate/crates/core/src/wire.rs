//! JSON forms of the domain types.
//!
//! A scalar is written as `{"N": conductor, "coeffs": ["p/q", ...]}` in the
//! power basis of `Q(zeta_N)`. On input a bare `"p/q"` string or integer is
//! also accepted, as is `"e(p/q)"` for `exp(2 pi i p/q)`. Output always uses
//! the canonical object form, so parsing and re-serializing a file written
//! here reproduces it byte for byte.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{root_of_unity, Cyclotomic};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field};
use crate::frame::{FrameBranch, FrameMode, SharedFrame};
use crate::levelt::SpectrumSpec;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::report::{AnalysisReport, PairEntry, SpectrumReport};
use crate::subspace::Subspace;
use crate::tuple::MonodromyTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarWire {
    #[serde(rename = "N")]
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

/// Any accepted spelling of a scalar.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarIn {
    Full(ScalarWire),
    Text(String),
    Int(i64),
}

/// Scalars with a JSON form.
pub trait WireScalar: Field {
    fn to_wire(&self) -> ScalarWire;
    fn from_cyclotomic(c: Cyclotomic) -> Result<Self>;

    fn from_wire(w: &ScalarIn) -> Result<Self> {
        let c = match w {
            ScalarIn::Int(k) => Cyclotomic::integer(*k),
            ScalarIn::Text(s) => parse_text(s)?,
            ScalarIn::Full(f) => {
                let coeffs = f
                    .coeffs
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Cyclotomic::new(f.conductor, coeffs)?
            }
        };
        Self::from_cyclotomic(c)
    }
}

fn parse_text(s: &str) -> Result<Cyclotomic> {
    let t = s.trim();
    match t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
        Some(e) => Ok(root_of_unity(&parse_rational(e)?)),
        None => Ok(Cyclotomic::rational(parse_rational(t)?)),
    }
}

impl WireScalar for Cyclotomic {
    fn to_wire(&self) -> ScalarWire {
        ScalarWire {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
    }

    fn from_cyclotomic(c: Cyclotomic) -> Result<Self> {
        Ok(c)
    }
}

impl WireScalar for BigRational {
    fn to_wire(&self) -> ScalarWire {
        ScalarWire {
            conductor: 1,
            coeffs: vec![format_rational(self)],
        }
    }

    fn from_cyclotomic(c: Cyclotomic) -> Result<Self> {
        c.as_rational()
            .cloned()
            .ok_or_else(|| Error::Parse(format!("{c} is not rational")))
    }
}

fn scalars_in<F: WireScalar>(xs: &[ScalarIn], at: &str) -> Result<Vec<F>> {
    xs.iter()
        .enumerate()
        .map(|(k, x)| F::from_wire(x).map_err(|e| context(e, &format!("{at}[{k}]"))))
        .collect()
}

fn scalars_out<F: WireScalar>(xs: &[F]) -> Vec<ScalarWire> {
    xs.iter().map(F::to_wire).collect()
}

/// Prefixes parse errors with the location they refer to.
fn context(e: Error, at: &str) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{at}: {m}")),
        Error::Shape(m) => Error::Shape(format!("{at}: {m}")),
        other => other,
    }
}

/// Deserializes, reporting the JSON path, line and column on failure.
fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path.is_empty() || path == "." {
            Error::Parse(inner.to_string())
        } else {
            Error::Parse(format!("at {path}: {inner}"))
        }
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarWire>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixIn {
    #[serde(default)]
    pub rows: Option<usize>,
    #[serde(default)]
    pub cols: Option<usize>,
    pub entries: Vec<Vec<ScalarIn>>,
}

pub fn matrix_out<F: WireScalar>(m: &Matrix<F>) -> MatrixWire {
    MatrixWire {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.row_vecs().iter().map(|r| scalars_out(r)).collect(),
    }
}

pub fn matrix_in<F: WireScalar>(m: &MatrixIn, at: &str) -> Result<Matrix<F>> {
    let rows = m
        .entries
        .iter()
        .enumerate()
        .map(|(i, r)| scalars_in(r, &format!("{at}.entries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_rows(rows).map_err(|e| context(e, at))?;
    if m.rows.is_some_and(|r| r != matrix.rows()) || m.cols.is_some_and(|c| c != matrix.cols()) {
        return Err(Error::Shape(format!(
            "{at}: declared {}x{}, entries are {}x{}",
            m.rows.unwrap_or(matrix.rows()),
            m.cols.unwrap_or(matrix.cols()),
            matrix.rows(),
            matrix.cols()
        )));
    }
    Ok(matrix)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceWire {
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<ScalarWire>>,
}

pub fn subspace_out<F: WireScalar>(s: &Subspace<F>) -> SubspaceWire {
    SubspaceWire {
        ambient_dim: s.ambient_dim(),
        dim: s.dim(),
        basis: s.basis().iter().map(|v| scalars_out(v)).collect(),
    }
}

/// Coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyWire {
    pub coeffs: Vec<ScalarWire>,
}

pub fn poly_out<F: WireScalar>(p: &Poly<F>) -> PolyWire {
    PolyWire {
        coeffs: scalars_out(p.coeffs()),
    }
}

/// A tuple file. `notes`, `companions` and `basis_change` are optional
/// annotations carried through unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleFile<F> {
    pub tuple: MonodromyTuple<F>,
    pub notes: BTreeMap<String, String>,
    pub companions: Option<Vec<Matrix<F>>>,
    /// `T` such that the members are `T^-1 A_i T` for some original `A_i`.
    pub basis_change: Option<Matrix<F>>,
}

impl<F: WireScalar> TupleFile<F> {
    pub fn new(tuple: MonodromyTuple<F>) -> Self {
        TupleFile {
            tuple,
            notes: BTreeMap::new(),
            companions: None,
            basis_change: None,
        }
    }
}

#[derive(Serialize)]
struct TupleWire {
    n: usize,
    members: Vec<MatrixWire>,
    product_is_identity: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    notes: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    companions: Option<Vec<MatrixWire>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_change: Option<MatrixWire>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleIn {
    #[serde(default)]
    n: Option<usize>,
    members: Vec<MatrixIn>,
    #[serde(default)]
    product_is_identity: Option<bool>,
    #[serde(default)]
    notes: BTreeMap<String, String>,
    #[serde(default)]
    companions: Option<Vec<MatrixIn>>,
    #[serde(default)]
    basis_change: Option<MatrixIn>,
}

pub fn tuple_to_json<F: WireScalar>(file: &TupleFile<F>) -> String {
    to_json(&TupleWire {
        n: file.tuple.n(),
        members: file.tuple.members().iter().map(matrix_out).collect(),
        product_is_identity: file.tuple.product_is_identity(),
        notes: file.notes.clone(),
        companions: file
            .companions
            .as_ref()
            .map(|c| c.iter().map(matrix_out).collect()),
        basis_change: file.basis_change.as_ref().map(matrix_out),
    })
}

/// Parses a tuple file. A declared `n` must match the members, and a
/// declared `product_is_identity: true` must hold exactly.
pub fn tuple_from_json<F: WireScalar>(text: &str) -> Result<TupleFile<F>> {
    let raw: TupleIn = from_json(text)?;
    let members = raw
        .members
        .iter()
        .enumerate()
        .map(|(k, m)| matrix_in(m, &format!("members[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let tuple = MonodromyTuple::new(members)?;
    if raw.n.is_some_and(|n| n != tuple.n()) {
        return Err(Error::Shape(format!(
            "declared n = {}, members are {}x{}",
            raw.n.unwrap(),
            tuple.n(),
            tuple.n()
        )));
    }
    if raw.product_is_identity == Some(true) && !tuple.product_is_identity() {
        return Err(Error::ProductNotIdentity);
    }
    let companions = raw
        .companions
        .map(|c| {
            c.iter()
                .enumerate()
                .map(|(k, m)| matrix_in(m, &format!("companions[{k}]")))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let basis_change = raw
        .basis_change
        .as_ref()
        .map(|m| matrix_in(m, "basis_change"))
        .transpose()?;
    Ok(TupleFile {
        tuple,
        notes: raw.notes,
        companions,
        basis_change,
    })
}

#[derive(Serialize)]
struct SpectrumWire {
    values: Vec<ScalarWire>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpectrumIn {
    Full {
        values: Vec<ScalarIn>,
    },
    Bare(Vec<ScalarIn>),
}

pub fn spectra_to_json<F: WireScalar>(specs: &[SpectrumSpec<F>]) -> String {
    let out: Vec<SpectrumWire> = specs
        .iter()
        .map(|s| SpectrumWire {
            values: scalars_out(s.values()),
        })
        .collect();
    to_json(&out)
}

/// A list of spectra, each `{"values": [...]}` or a bare list of values.
pub fn spectra_from_json<F: WireScalar>(text: &str) -> Result<Vec<SpectrumSpec<F>>> {
    let raw: Vec<SpectrumIn> = from_json(text)?;
    raw.iter()
        .enumerate()
        .map(|(k, s)| {
            let values = match s {
                SpectrumIn::Full { values } | SpectrumIn::Bare(values) => values,
            };
            let values = scalars_in(values, &format!("[{k}].values"))?;
            SpectrumSpec::new(values).map_err(|e| match e {
                Error::ZeroEigenvalue { .. } => Error::ZeroEigenvalue { spectrum: k + 1 },
                other => context(other, &format!("[{k}]")),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct FrameWire {
    mode: &'static str,
    branch: &'static str,
    basis_change: MatrixWire,
    transformed: Vec<MatrixWire>,
}

fn frame_out<F: WireScalar>(f: &SharedFrame<F>) -> FrameWire {
    FrameWire {
        mode: match f.mode() {
            FrameMode::Columns => "columns",
            FrameMode::Rows => "rows",
        },
        branch: match f.branch() {
            FrameBranch::CommonKernel => "common_kernel",
            FrameBranch::Reflection => "reflection",
            FrameBranch::Transvection => "transvection",
            FrameBranch::Global => "global",
            FrameBranch::Given => "given",
        },
        basis_change: matrix_out(f.basis_change()),
        transformed: f.transformed().iter().map(matrix_out).collect(),
    }
}

#[derive(Serialize)]
struct PairWire {
    i: usize,
    j: usize,
    pseudo_reflection: bool,
}

#[derive(Serialize)]
struct SpectrumReportWire {
    values: Vec<ScalarWire>,
    unresolved_factor: Option<PolyWire>,
}

fn spectrum_report_out<F: WireScalar>(s: &SpectrumReport<F>) -> SpectrumReportWire {
    SpectrumReportWire {
        values: scalars_out(&s.values),
        unresolved_factor: s.unresolved.as_ref().map(poly_out),
    }
}

#[derive(Serialize)]
struct ReportWire {
    n: usize,
    p: usize,
    pseudo_reflection_pairs: Vec<PairWire>,
    spectra: Vec<SpectrumReportWire>,
    spectra_intersection: Vec<ScalarWire>,
    irreducible: bool,
    burnside_dim: usize,
    invariant_witness: Option<SubspaceWire>,
    rigidity_index: Option<i64>,
    shared_frame: Option<FrameWire>,
    notes: BTreeMap<String, String>,
}

/// The report as JSON. Fields come in a fixed order; each null field has a
/// reason under the same key in `notes`.
pub fn report_to_json<F: WireScalar>(r: &AnalysisReport<F>) -> String {
    let mut notes = r.notes.clone();
    if let Some(f) = &r.spectra_intersection.unresolved {
        notes.insert(
            "spectra_intersection".into(),
            format!(
                "the common factor {} has no roots in the working field",
                poly_text(f)
            ),
        );
    }
    to_json(&ReportWire {
        n: r.n,
        p: r.p,
        pseudo_reflection_pairs: r
            .pseudo_reflection_pairs
            .iter()
            .map(|&PairEntry { i, j, pseudo_reflection }| PairWire {
                i,
                j,
                pseudo_reflection,
            })
            .collect(),
        spectra: r.spectra.iter().map(spectrum_report_out).collect(),
        spectra_intersection: scalars_out(&r.spectra_intersection.values),
        irreducible: r.irreducible,
        burnside_dim: r.burnside_dim,
        invariant_witness: r.invariant_witness.as_ref().map(subspace_out),
        rigidity_index: r.rigidity_index,
        shared_frame: r.shared_frame.as_ref().map(frame_out),
        notes,
    })
}

fn poly_text<F: Field>(p: &Poly<F>) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})x"),
            _ => format!("({c})x^{k}"),
        })
        .collect();
    terms.join(" + ")
}

pub fn matrix_to_json<F: WireScalar>(m: &Matrix<F>) -> String {
    to_json(&matrix_out(m))
}

pub fn matrix_from_json<F: WireScalar>(text: &str) -> Result<Matrix<F>> {
    let raw: MatrixIn = from_json(text)?;
    matrix_in(&raw, "matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_spellings() {
        let i = Cyclotomic::zeta(4);
        for text in [r#"{"N": 4, "coeffs": ["0", "1"]}"#, r#""e(1/4)""#] {
            let w: ScalarIn = serde_json::from_str(text).unwrap();
            assert_eq!(Cyclotomic::from_wire(&w).unwrap(), i);
        }
        let w: ScalarIn = serde_json::from_str(r#""-6/4""#).unwrap();
        assert_eq!(Cyclotomic::from_wire(&w).unwrap().to_wire().coeffs, vec!["-3/2"]);
        let w: ScalarIn = serde_json::from_str("7").unwrap();
        assert_eq!(BigRational::from_wire(&w).unwrap(), BigRational::from_int(7));
    }

    #[test]
    fn wrong_coefficient_count_is_a_shape_error() {
        let w: ScalarIn = serde_json::from_str(r#"{"N": 5, "coeffs": ["1"]}"#).unwrap();
        assert!(matches!(Cyclotomic::from_wire(&w), Err(Error::Shape(_))));
    }

    #[test]
    fn tuple_round_trip_is_byte_exact() {
        let text = r#"{"members": [
            {"entries": [["e(1/3)", 0], [0, 1]]},
            {"entries": [[{"N": 3, "coeffs": ["-1", "-1"]}, 0], [0, "1"]]}
        ]}"#;
        let file: TupleFile<Cyclotomic> = tuple_from_json(text).unwrap();
        assert!(file.tuple.product_is_identity());
        let once = tuple_to_json(&file);
        let twice = tuple_to_json(&tuple_from_json::<Cyclotomic>(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn errors_carry_location() {
        let e = tuple_from_json::<Cyclotomic>(r#"{"members": [{"entries": [["x"]]}]}"#).unwrap_err();
        assert!(e.to_string().contains("members[0].entries[0][0]"), "{e}");
        let e = tuple_from_json::<Cyclotomic>("").unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        let e = tuple_from_json::<Cyclotomic>("{\"members\": 3}").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
    }

    #[test]
    fn false_product_claim_rejected() {
        let text = r#"{"members": [{"entries": [[2, 0], [0, 1]]}, {"entries": [[1, 0], [0, 1]]}],
                       "product_is_identity": true}"#;
        assert_eq!(tuple_from_json::<BigRational>(text).unwrap_err(), Error::ProductNotIdentity);
    }

    #[test]
    fn spectra_forms() {
        let specs: Vec<SpectrumSpec<Cyclotomic>> =
            spectra_from_json(r#"[{"values": [1, -1]}, ["e(1/4)", "e(3/4)"]]"#).unwrap();
        assert_eq!(specs[1].values()[0], Cyclotomic::zeta(4));
        let again: Vec<SpectrumSpec<Cyclotomic>> = spectra_from_json(&spectra_to_json(&specs)).unwrap();
        assert_eq!(again, specs);
        let e = spectra_from_json::<Cyclotomic>("[[1], [0, 2]]").unwrap_err();
        assert_eq!(e, Error::ZeroEigenvalue { spectrum: 2 });
    }
}
