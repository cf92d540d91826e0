//! The all-linear 3x3 factorization half attached to a point of the
//! cubic, and the symbolic identities satisfied by its determinant and
//! adjugate.
//!
//! Symbolic variants live in six variables, ordered
//! `x0, x1, x2, a0, a1, a2`.

use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Field;

use super::{xv, CurvePoint, HesseCubic, MatFacError, MatrixFactorization};

/// Coefficient index (into `a`) and variable index (into `x`) for each
/// entry of the matrix, row-major.
const A_IDX: [[usize; 3]; 3] = [[0, 2, 1], [2, 1, 0], [1, 0, 2]];
const X_IDX: [[usize; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];

/// The 3x3 all-linear matrix of a point, entries `a_* x_*` per the
/// fixed index pattern.
pub fn moore_matrix(point: &CurvePoint) -> PolyMatrix {
    let field = point.field();
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    xv(field, 3, X_IDX[i][j])
                        .scalar_mul(point.coord(A_IDX[i][j]))
                        .expect("same field")
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).expect("well-formed rows")
}

/// Same matrix with the point coordinates as indeterminates: entries
/// are degree-2 monomials in six variables.
pub fn moore_matrix_symbolic(field: Field) -> PolyMatrix {
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    xv(field, 6, X_IDX[i][j])
                        .mul(&xv(field, 6, 3 + A_IDX[i][j]))
                        .expect("same ring")
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).expect("well-formed rows")
}

/// Six-variable polynomial from signed exponent rows
/// `(coefficient, [x0, x1, x2, a0, a1, a2])`.
fn six_var(field: Field, terms: &[(i64, [u32; 6])]) -> MultiPoly {
    MultiPoly::from_terms(
        field,
        6,
        terms
            .iter()
            .map(|&(c, e)| (Monomial::new(e.to_vec()), field.from_integer(c))),
    )
}

/// The quadratic complement matrix in six variables: the matrix that
/// the coordinate product times the second factorization half equals.
/// Identical to the adjugate of [`moore_matrix_symbolic`]; written out
/// entry by entry so the equality is a real cross-check.
pub fn moore_adjugate_symbolic(field: Field) -> PolyMatrix {
    let e = |xs: [u32; 3], ats: [u32; 3]| [xs[0], xs[1], xs[2], ats[0], ats[1], ats[2]];
    let entry = |pos: [u32; 3], pa: [u32; 3], neg: [u32; 3], na: [u32; 3]| {
        six_var(field, &[(1, e(pos, pa)), (-1, e(neg, na))])
    };
    let rows = vec![
        vec![
            // a1 a2 x0^2 - a0^2 x1 x2
            entry([2, 0, 0], [0, 1, 1], [0, 1, 1], [2, 0, 0]),
            // a0 a1 x1^2 - a2^2 x0 x2
            entry([0, 2, 0], [1, 1, 0], [1, 0, 1], [0, 0, 2]),
            // a0 a2 x2^2 - a1^2 x0 x1
            entry([0, 0, 2], [1, 0, 1], [1, 1, 0], [0, 2, 0]),
        ],
        vec![
            // a0 a1 x2^2 - a2^2 x0 x1
            entry([0, 0, 2], [1, 1, 0], [1, 1, 0], [0, 0, 2]),
            // a0 a2 x0^2 - a1^2 x1 x2
            entry([2, 0, 0], [1, 0, 1], [0, 1, 1], [0, 2, 0]),
            // a1 a2 x1^2 - a0^2 x0 x2
            entry([0, 2, 0], [0, 1, 1], [1, 0, 1], [2, 0, 0]),
        ],
        vec![
            // a0 a2 x1^2 - a1^2 x0 x2
            entry([0, 2, 0], [1, 0, 1], [1, 0, 1], [0, 2, 0]),
            // a1 a2 x2^2 - a0^2 x0 x1
            entry([0, 0, 2], [0, 1, 1], [1, 1, 0], [2, 0, 0]),
            // a0 a1 x0^2 - a2^2 x1 x2
            entry([2, 0, 0], [1, 1, 0], [0, 1, 1], [0, 0, 2]),
        ],
    ];
    PolyMatrix::from_rows(rows).expect("well-formed rows")
}

/// Right-hand side of the determinant identity:
/// `a0 a1 a2 (x0^3 + x1^3 + x2^3) - (a0^3 + a1^3 + a2^3) x0 x1 x2`.
pub fn moore_determinant_rhs(field: Field) -> MultiPoly {
    six_var(
        field,
        &[
            (1, [3, 0, 0, 1, 1, 1]),
            (1, [0, 3, 0, 1, 1, 1]),
            (1, [0, 0, 3, 1, 1, 1]),
            (-1, [1, 1, 1, 3, 0, 0]),
            (-1, [1, 1, 1, 0, 3, 0]),
            (-1, [1, 1, 1, 0, 0, 3]),
        ],
    )
}

/// The factorization of a degree-3 line bundle at a point with all
/// coordinates nonzero: the linear matrix of the point paired with its
/// adjugate scaled by the inverse coordinate product.
pub fn moore_mf(curve: &HesseCubic, a: &CurvePoint) -> Result<MatrixFactorization, MatFacError> {
    if a.field() != curve.field() {
        return Err(crate::poly::PolyError::FieldMismatch.into());
    }
    if !curve.polynomial().eval(a.coords())?.is_zero() {
        return Err(MatFacError::NotOnCurve);
    }
    let product = a.coordinate_product();
    if product.is_zero() {
        return Err(MatFacError::OrderThreePoint);
    }
    let linear = moore_matrix(a);
    let complement = linear.adjugate()?.scale(&product.inverse()?)?;
    MatrixFactorization::new(curve.polynomial().clone(), linear, complement)
}
