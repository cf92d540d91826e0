//! The on-disk format for matrix factorizations.
//!
//! Documents are JSON with a fixed field order and polynomials listed
//! in canonical descending graded-lex term order; encoding the decoded
//! form of a canonical document reproduces it byte for byte.  Rational
//! coefficients are strings (`"num"` or `"num/den"` in lowest terms),
//! prime-field coefficients decimal residues.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use cubic_mcm::matfac::{verify_mf, MatrixFactorization};
use cubic_mcm::matrix::PolyMatrix;
use cubic_mcm::poly::{Monomial, MultiPoly};
use cubic_mcm::scalar::{parse_scalar, scalar_to_string, Field, Scalar};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("matrix factorization failed verification:\n{0}")]
    VerificationFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRepr {
    pub terms: Vec<TermRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<PolyRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfDocument {
    /// `"rational"` or `"prime:p"`.
    pub field: String,
    pub variables: Vec<String>,
    pub psi: String,
    pub f: PolyRepr,
    pub a: MatrixRepr,
    pub b: MatrixRepr,
    /// Generator degrees of the first matrix, when the grading is
    /// defined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_degrees: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col_degrees: Option<Vec<i64>>,
    pub note: String,
}

/// Standard variable names: `x0..` in general, `x0 x1 x2 a0 a1 a2` for
/// the six-variable symbolic ring.
pub fn variable_names(nvars: usize) -> Vec<String> {
    if nvars == 6 {
        ["x0", "x1", "x2", "a0", "a1", "a2"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

fn poly_repr(p: &MultiPoly) -> PolyRepr {
    PolyRepr {
        terms: p
            .terms()
            .map(|(m, c)| TermRepr {
                coeff: scalar_to_string(c),
                exponents: m.exponents().to_vec(),
            })
            .collect(),
    }
}

fn matrix_repr(m: &PolyMatrix) -> MatrixRepr {
    MatrixRepr {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| poly_repr(m.entry(i, j)))
            .collect(),
    }
}

/// Builds the document for a factorization.
pub fn encode_mf(mf: &MatrixFactorization, psi: &Scalar, note: &str) -> MfDocument {
    MfDocument {
        field: mf.field().to_string(),
        variables: variable_names(mf.f().nvars()),
        psi: scalar_to_string(psi),
        f: poly_repr(mf.f()),
        a: matrix_repr(mf.a()),
        b: matrix_repr(mf.b()),
        row_degrees: mf.a().row_degrees.clone(),
        col_degrees: mf.a().col_degrees.clone(),
        note: note.to_string(),
    }
}

/// Canonical byte form: pretty JSON plus a trailing newline.
pub fn document_to_string(doc: &MfDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

/// Parses document text; syntax errors carry line and column.
pub fn parse_document(text: &str) -> Result<MfDocument, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_field(s: &str) -> Result<Field, DocError> {
    if s == "rational" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|_| DocError::Invalid(format!("bad field descriptor {s:?}")))?;
        return Field::prime(p).map_err(|e| DocError::Invalid(e.to_string()));
    }
    Err(DocError::Invalid(format!("bad field descriptor {s:?}")))
}

fn poly_from_repr(repr: &PolyRepr, field: Field, nvars: usize) -> Result<MultiPoly, DocError> {
    let mut terms = Vec::with_capacity(repr.terms.len());
    let mut previous: Option<Monomial> = None;
    for t in &repr.terms {
        if t.exponents.len() != nvars {
            return Err(DocError::Invalid(format!(
                "term has {} exponents, expected {nvars}",
                t.exponents.len()
            )));
        }
        let c = parse_scalar(field, &t.coeff)
            .map_err(|e| DocError::Invalid(format!("bad coefficient {:?}: {e}", t.coeff)))?;
        if c.is_zero() {
            return Err(DocError::Invalid(format!(
                "zero coefficient stored for term {:?}",
                t.exponents
            )));
        }
        if scalar_to_string(&c) != t.coeff {
            return Err(DocError::Invalid(format!(
                "coefficient {:?} is not in canonical form",
                t.coeff
            )));
        }
        let m = Monomial::new(t.exponents.clone());
        if let Some(prev) = &previous {
            if &m >= prev {
                return Err(DocError::Invalid(
                    "terms are not in canonical descending order".into(),
                ));
            }
        }
        previous = Some(m.clone());
        terms.push((m, c));
    }
    Ok(MultiPoly::from_terms(field, nvars, terms))
}

fn matrix_from_repr(repr: &MatrixRepr, field: Field, nvars: usize) -> Result<PolyMatrix, DocError> {
    if repr.rows == 0 || repr.cols == 0 {
        return Err(DocError::Invalid("matrix must be nonempty".into()));
    }
    if repr.entries.len() != repr.rows * repr.cols {
        return Err(DocError::Invalid(format!(
            "matrix declares {}x{} but carries {} entries",
            repr.rows,
            repr.cols,
            repr.entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(repr.rows);
    for i in 0..repr.rows {
        let mut row = Vec::with_capacity(repr.cols);
        for j in 0..repr.cols {
            row.push(poly_from_repr(
                &repr.entries[i * repr.cols + j],
                field,
                nvars,
            )?);
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows).map_err(|e| DocError::Invalid(e.to_string()))
}

/// Rebuilds the factorization from a document, validating structure,
/// canonical form and (unless `verify` is false) the factorization
/// identities.
pub fn decode_mf(
    doc: &MfDocument,
    verify: bool,
) -> Result<(MatrixFactorization, Scalar), DocError> {
    let field = parse_field(&doc.field)?;
    let nvars = doc.variables.len();
    if nvars == 0 {
        return Err(DocError::Invalid("no variables declared".into()));
    }
    let psi = parse_scalar(field, &doc.psi)
        .map_err(|e| DocError::Invalid(format!("bad psi {:?}: {e}", doc.psi)))?;
    let f = poly_from_repr(&doc.f, field, nvars)?;
    let a = matrix_from_repr(&doc.a, field, nvars)?;
    let b = matrix_from_repr(&doc.b, field, nvars)?;
    if let (Some(rd), Some(cd)) = (&doc.row_degrees, &doc.col_degrees) {
        if rd.len() != a.rows() || cd.len() != a.cols() {
            return Err(DocError::Invalid(
                "grading vectors do not match the matrix size".into(),
            ));
        }
        for (i, &ri) in rd.iter().enumerate() {
            for (j, &cj) in cd.iter().enumerate() {
                let e = a.entry(i, j);
                if !e.is_zero() && e.degree() != Some(cj - ri) {
                    return Err(DocError::Invalid(format!(
                        "entry ({i}, {j}) violates the declared grading"
                    )));
                }
            }
        }
    }
    let mf = MatrixFactorization::new(f, a, b).map_err(|e| DocError::Invalid(e.to_string()))?;
    if verify {
        let report = verify_mf(&mf);
        if !report.all_pass() {
            return Err(DocError::VerificationFailed(report.to_string()));
        }
    }
    Ok((mf, psi))
}

/// Convenience: parse and rebuild in one step.
pub fn read_mf(text: &str, verify: bool) -> Result<(MatrixFactorization, Scalar), DocError> {
    let doc = parse_document(text)?;
    decode_mf(&doc, verify)
}
