//! JSON documents for complexes and chain maps. Scalars are strings in the
//! textual syntax of their field, never JSON numbers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{Field, FieldTag, Polynomial, Rational, RationalFunction, Ring};
use crate::chain_map::ChainMap;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub field: FieldTag,
    pub dims: Vec<usize>,
    pub boundaries: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A complex given inline or by a path relative to the map file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Path(String),
    Inline(ComplexDocument),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub source: ComplexRef,
    pub target: ComplexRef,
    pub maps: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()).at(path.display().to_string()))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn parse_matrix<R: Ring>(
    doc: &MatrixDoc,
    rows: usize,
    cols: usize,
    locus: &str,
    parse: &impl Fn(&str) -> Result<R>,
) -> Result<Matrix<R>> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        let got_cols = doc.first().map_or(0, Vec::len);
        return Err(Error::ShapeMismatch(format!("expected {rows}x{cols}, got {}x{got_cols}", doc.len())).at(locus));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in doc.iter().enumerate() {
        let mut r = Vec::with_capacity(cols);
        for (j, s) in row.iter().enumerate() {
            r.push(parse(s).map_err(|e| e.at(format!("{locus}[{i}][{j}]")))?);
        }
        out.push(r);
    }
    Matrix::from_rows(cols, out)
}

fn matrix_doc<R: Ring>(m: &Matrix<R>) -> MatrixDoc {
    m.iter_rows()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn build_complex<R: Ring>(
    doc: &ComplexDocument,
    locus: &str,
    parse: impl Fn(&str) -> Result<R>,
) -> Result<ChainComplex<R>> {
    let d = &doc.dims;
    if d.is_empty() || doc.boundaries.len() + 1 != d.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} dimensions with {} boundaries",
            d.len(),
            doc.boundaries.len()
        ))
        .at(locus));
    }
    let boundaries = doc
        .boundaries
        .iter()
        .enumerate()
        .map(|(i, b)| parse_matrix(b, d[i + 1], d[i], &format!("{locus}boundaries[{i}]"), &parse))
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(d.clone(), boundaries)
}

/// Parses and validates a complex over `F`.
pub fn complex_from_doc<F: Field>(doc: &ComplexDocument) -> Result<ChainComplex<F>> {
    complex_at(doc, "")
}

fn complex_at<F: Field>(doc: &ComplexDocument, locus: &str) -> Result<ChainComplex<F>> {
    if doc.field != F::TAG {
        return Err(Error::FieldMismatch(doc.field, F::TAG));
    }
    build_complex(doc, locus, F::parse_scalar)
}

/// Parses a complex over `Q[t]`; every entry must be a polynomial.
pub fn poly_complex_from_doc(doc: &ComplexDocument) -> Result<ChainComplex<Polynomial>> {
    build_complex(doc, "", parse_polynomial)
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let r = RationalFunction::parse_scalar(s)?;
    r.as_polynomial()
        .cloned()
        .ok_or_else(|| Error::NotPolynomial(s.to_string()))
}

pub fn complex_to_doc<R: Ring>(c: &ChainComplex<R>, field: FieldTag) -> ComplexDocument {
    ComplexDocument {
        field,
        dims: c.dims().to_vec(),
        boundaries: c.boundaries().iter().map(matrix_doc).collect(),
        note: None,
    }
}

pub fn map_to_doc<R: Ring>(f: &ChainMap<R>, field: FieldTag) -> MapDocument {
    MapDocument {
        source: ComplexRef::Inline(complex_to_doc(f.source(), field)),
        target: ComplexRef::Inline(complex_to_doc(f.target(), field)),
        maps: f.mats().iter().map(matrix_doc).collect(),
        note: None,
    }
}

impl ComplexRef {
    /// The document, reading it from `base` when given by path.
    pub fn load(&self, base: &Path) -> Result<ComplexDocument> {
        match self {
            ComplexRef::Inline(doc) => Ok(doc.clone()),
            ComplexRef::Path(p) => read_json(&base.join(p)),
        }
    }
}

/// A map document with both complexes resolved.
#[derive(Debug, Clone)]
pub struct ResolvedMap {
    pub source: ComplexDocument,
    pub target: ComplexDocument,
    pub maps: Vec<MatrixDoc>,
}

impl MapDocument {
    pub fn resolve(&self, base: &Path) -> Result<ResolvedMap> {
        Ok(ResolvedMap {
            source: self.source.load(base).map_err(|e| e.at("source"))?,
            target: self.target.load(base).map_err(|e| e.at("target"))?,
            maps: self.maps.clone(),
        })
    }
}

impl ResolvedMap {
    /// Both complexes must carry the same field tag.
    pub fn field(&self) -> Result<FieldTag> {
        if self.source.field != self.target.field {
            return Err(Error::FieldMismatch(self.source.field, self.target.field));
        }
        Ok(self.source.field)
    }

    fn build<R: Ring>(
        &self,
        source: ChainComplex<R>,
        target: ChainComplex<R>,
        parse: impl Fn(&str) -> Result<R>,
    ) -> Result<ChainMap<R>> {
        if self.maps.len() != source.length() + 1 {
            return Err(
                Error::ShapeMismatch(format!("{} matrices for length {}", self.maps.len(), source.length())).at("maps"),
            );
        }
        let mats = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let rows = source.dim(i);
                let cols = target.dims().get(i).copied().unwrap_or(0);
                parse_matrix(m, rows, cols, &format!("maps[{i}]"), &parse)
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(source, target, mats)
    }

    pub fn to_map<F: Field>(&self) -> Result<ChainMap<F>> {
        self.field()?;
        let source = complex_at::<F>(&self.source, "source.")?;
        let target = complex_at::<F>(&self.target, "target.")?;
        self.build(source, target, F::parse_scalar)
    }

    pub fn to_poly_map(&self) -> Result<ChainMap<Polynomial>> {
        let source = build_complex(&self.source, "source.", parse_polynomial)?;
        let target = build_complex(&self.target, "target.", parse_polynomial)?;
        self.build(source, target, parse_polynomial)
    }
}

/// Reads a map file; relative complex paths resolve against its directory.
pub fn load_map(path: &Path) -> Result<ResolvedMap> {
    let doc: MapDocument = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    doc.resolve(&base)
}

pub fn load_complex(path: &Path) -> Result<ComplexDocument> {
    read_json(path)
}

/// A complex over whichever field its document names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyComplex {
    Q(ChainComplex<Rational>),
    Qt(ChainComplex<RationalFunction>),
}

impl AnyComplex {
    pub fn from_doc(doc: &ComplexDocument) -> Result<Self> {
        Ok(match doc.field {
            FieldTag::Q => AnyComplex::Q(complex_from_doc(doc)?),
            FieldTag::Qt => AnyComplex::Qt(complex_from_doc(doc)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMap {
    Q(ChainMap<Rational>),
    Qt(ChainMap<RationalFunction>),
}

impl AnyMap {
    pub fn from_resolved(doc: &ResolvedMap) -> Result<Self> {
        Ok(match doc.field()? {
            FieldTag::Q => AnyMap::Q(doc.to_map()?),
            FieldTag::Qt => AnyMap::Qt(doc.to_map()?),
        })
    }
}
