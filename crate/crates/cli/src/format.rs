//! JSON interchange files for algebras and embeddings. All indices are
//! 0-based; rational scalars are `"p/q"` strings (bare integers accepted on
//! input), complex scalars are `{"re": .., "im": ..}` objects.

use std::path::Path;

use lie_frobenius::scalar::{parse_rational, DEFAULT_TOLERANCE};
use lie_frobenius::{Complex, FieldContext, Functional, LieAlgebra, Matrix, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Text(String),
    Integer(i64),
    Complex { re: f64, im: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    Rational,
    Complex64,
}

impl FieldName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rational => "rational",
            Self::Complex64 => "complex64",
        }
    }
}

/// One sparse entry `[e_i, e_j] += c·e_k` (or `e_i·e_j += c·e_k` for products).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: ScalarRepr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub field: FieldName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Entries with `i < j`; repeated entries accumulate.
    pub brackets: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<Vec<ScalarRepr>>,
    /// A left-symmetric product to use instead of one derived from a functional.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lsa: Option<Vec<Entry>>,
}

/// Scalars that can be read from and written to files.
pub trait FileScalar: Scalar {
    const FIELD: FieldName;

    fn from_repr(repr: &ScalarRepr) -> CliResult<Self>;

    fn to_repr(&self) -> ScalarRepr;

    /// Parses a command-line token.
    fn from_text(text: &str) -> CliResult<Self>;
}

impl FileScalar for Rational {
    const FIELD: FieldName = FieldName::Rational;

    fn from_repr(repr: &ScalarRepr) -> CliResult<Self> {
        match repr {
            ScalarRepr::Text(s) => Self::from_text(s),
            ScalarRepr::Integer(n) => Ok(Rational::from_i64(*n)),
            ScalarRepr::Complex { .. } => {
                Err(CliError::Parse("complex scalar in a rational file".into()))
            }
        }
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Text(self.render())
    }

    fn from_text(text: &str) -> CliResult<Self> {
        parse_rational(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

impl FileScalar for Complex {
    const FIELD: FieldName = FieldName::Complex64;

    fn from_repr(repr: &ScalarRepr) -> CliResult<Self> {
        match repr {
            ScalarRepr::Text(s) => Self::from_text(s),
            ScalarRepr::Integer(n) => Ok(Complex::new(*n as f64, 0.0)),
            ScalarRepr::Complex { re, im } => Ok(Complex::new(*re, *im)),
        }
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Complex {
            re: self.re,
            im: self.im,
        }
    }

    /// Real values only: a rational `p/q` or a decimal.
    fn from_text(text: &str) -> CliResult<Self> {
        if let Ok(q) = parse_rational(text) {
            return Ok(Complex::from_rational(&q));
        }
        let x: f64 = text
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("malformed real scalar {text:?}")))?;
        if !x.is_finite() {
            return Err(CliError::Parse(format!("non-finite scalar {text:?}")));
        }
        Ok(Complex::new(x, 0.0))
    }
}

/// Comma-separated scalars, e.g. `0,1,-1/2`.
pub fn parse_list<T: FileScalar>(text: &str) -> CliResult<Vec<T>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(T::from_text).collect()
}

/// Contents of an algebra file over a fixed field. The algebra is not yet
/// validated.
#[derive(Debug, Clone)]
pub struct Loaded<T: Scalar> {
    pub algebra: LieAlgebra<T>,
    pub functional: Option<Functional<T>>,
    pub lsa: Option<Vec<(usize, usize, usize, T)>>,
}

#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Rational(Loaded<Rational>),
    Complex(Loaded<Complex>),
}

fn parse_entries<T: FileScalar>(
    entries: &[Entry],
    dim: usize,
    what: &str,
) -> CliResult<Vec<(usize, usize, usize, T)>> {
    entries
        .iter()
        .enumerate()
        .map(|(n, e)| {
            if e.i >= dim || e.j >= dim || e.k >= dim {
                return Err(CliError::Parse(format!(
                    "{what} entry {n}: index ({}, {}, {}) out of range for dim {dim}",
                    e.i, e.j, e.k
                )));
            }
            let c = T::from_repr(&e.c)
                .map_err(|err| CliError::Parse(format!("{what} entry {n}: {err}")))?;
            Ok((e.i, e.j, e.k, c))
        })
        .collect()
}

fn load_typed<T: FileScalar>(file: &AlgebraFile, field: FieldContext) -> CliResult<Loaded<T>> {
    let dim = file.dim;
    let brackets = parse_entries::<T>(&file.brackets, dim, "bracket")?;
    if let Some(e) = file.brackets.iter().find(|e| e.i >= e.j) {
        return Err(CliError::Parse(format!(
            "bracket ({}, {}) must have i < j",
            e.i, e.j
        )));
    }
    let algebra = LieAlgebra::new(file.basis.clone(), brackets, field)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let functional = match &file.functional {
        None => None,
        Some(coords) if coords.len() != dim => {
            return Err(CliError::Parse(format!(
                "functional has {} coordinates for dim {dim}",
                coords.len()
            )))
        }
        Some(coords) => Some(Functional(
            coords.iter().map(T::from_repr).collect::<CliResult<_>>()?,
        )),
    };
    let lsa = file
        .lsa
        .as_deref()
        .map(|entries| parse_entries::<T>(entries, dim, "lsa"))
        .transpose()?;
    Ok(Loaded {
        algebra,
        functional,
        lsa,
    })
}

pub fn parse_algebra(text: &str) -> CliResult<AnyAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("malformed algebra file: {e}")))?;
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::Parse(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    if file.basis.len() != file.dim {
        return Err(CliError::Parse(format!(
            "{} basis labels for dim {}",
            file.basis.len(),
            file.dim
        )));
    }
    match file.field {
        FieldName::Rational => {
            if file.tolerance.is_some() {
                return Err(CliError::Parse(
                    "tolerance is only meaningful for complex64".into(),
                ));
            }
            Ok(AnyAlgebra::Rational(load_typed(
                &file,
                FieldContext::exact(),
            )?))
        }
        FieldName::Complex64 => {
            let field = FieldContext::approx(file.tolerance.unwrap_or(DEFAULT_TOLERANCE))
                .map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(AnyAlgebra::Complex(load_typed(&file, field)?))
        }
    }
}

pub fn read_algebra(path: &Path) -> CliResult<AnyAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra(&text)
}

pub fn algebra_file<T: FileScalar>(
    algebra: &LieAlgebra<T>,
    functional: Option<&Functional<T>>,
) -> AlgebraFile {
    let field = algebra.field();
    AlgebraFile {
        format_version: FORMAT_VERSION,
        field: T::FIELD,
        tolerance: (!field.is_exact()).then(|| field.tolerance()),
        dim: algebra.dim(),
        basis: algebra.labels().to_vec(),
        brackets: algebra
            .structure_constants()
            .map(|(i, j, k, c)| Entry {
                i,
                j,
                k,
                c: c.to_repr(),
            })
            .collect(),
        functional: functional.map(|f| f.coords().iter().map(T::to_repr).collect()),
        lsa: None,
    }
}

/// The images `φ(e_i)` of an embedding into `sl(dim+1)`, written only after
/// verification has passed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub format_version: u32,
    pub field: FieldName,
    pub dim: usize,
    /// Side length of each image matrix.
    pub size: usize,
    pub basis: Vec<String>,
    /// `images[i][r][c]`, row-major.
    pub images: Vec<Vec<Vec<ScalarRepr>>>,
}

pub fn embedding_file<T: FileScalar>(labels: &[String], images: &[Matrix<T>]) -> EmbeddingFile {
    EmbeddingFile {
        format_version: FORMAT_VERSION,
        field: T::FIELD,
        dim: images.len(),
        size: images.len() + 1,
        basis: labels.to_vec(),
        images: images
            .iter()
            .map(|m| {
                m.to_rows()
                    .iter()
                    .map(|row| row.iter().map(T::to_repr).collect())
                    .collect()
            })
            .collect(),
    }
}
