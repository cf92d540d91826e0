//! 2x2 factorizations attached to a single curve point.
//!
//! The generic construction intersects the curve with two lines through
//! the point and solves `f = l1 f1 + l2 f2` for quadratic forms in
//! coefficient space; it works at every point.  The explicit variant
//! writes the pair down directly from the coordinates and needs them
//! all nonzero.

use crate::matrix::{solve_linear, PolyMatrix};
use crate::poly::{Monomial, MultiPoly, PolyError};
use crate::scalar::{Field, Scalar};

use super::{xv, CurvePoint, HesseCubic, MatFacError, MatrixFactorization};

/// The three 2x2 minors of the coordinate/variable matrix, i.e. the
/// linear forms `a_i x_j - a_j x_i` vanishing at the point.
fn minors(point: &CurvePoint) -> [MultiPoly; 3] {
    let field = point.field();
    let line = |i: usize, j: usize| {
        let first = xv(field, 3, j)
            .scalar_mul(point.coord(i))
            .expect("same field");
        let second = xv(field, 3, i)
            .scalar_mul(point.coord(j))
            .expect("same field");
        first.sub(&second).expect("same ring")
    };
    [line(0, 1), line(0, 2), line(1, 2)]
}

fn linear_coeffs(l: &MultiPoly) -> [Scalar; 3] {
    let field = l.field();
    let mut out = [field.zero(), field.zero(), field.zero()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut e = vec![0u32; 3];
        e[idx] = 1;
        *slot = l.coefficient(&Monomial::new(e));
    }
    out
}

fn independent(l1: &MultiPoly, l2: &MultiPoly) -> bool {
    let a = linear_coeffs(l1);
    let b = linear_coeffs(l2);
    for i in 0..3 {
        for j in i + 1..3 {
            let det = a[i]
                .mul(&b[j])
                .and_then(|x| a[j].mul(&b[i]).map(|y| (x, y)))
                .map(|(x, y)| x.sub(&y).expect("same field"))
                .expect("same field");
            if !det.is_zero() {
                return true;
            }
        }
    }
    false
}

/// Two linearly independent linear forms cutting out the point: the
/// first independent pair among the three minors in a fixed order.
/// A projective point always has one.
pub fn cutting_lines(point: &CurvePoint) -> (MultiPoly, MultiPoly) {
    let [m01, m02, m12] = minors(point);
    for (l1, l2) in [(&m01, &m02), (&m01, &m12), (&m02, &m12)] {
        if independent(l1, l2) {
            return (l1.clone(), l2.clone());
        }
    }
    unreachable!("a projective point always has two independent cutting lines");
}

fn monomials_of_degree(deg: u32) -> Vec<Monomial> {
    // Descending graded lex over three variables.
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for b in (0..=deg - a).rev() {
            out.push(Monomial::new(vec![a, b, deg - a - b]));
        }
    }
    out
}

/// Solves `f = l1 f1 + l2 f2` for quadratic forms, by Gaussian
/// elimination on cubic-monomial coefficients.  `None` means `f` is
/// not in the ideal of the two lines, i.e. the point is off the curve.
fn decompose_through_lines(
    f: &MultiPoly,
    l1: &MultiPoly,
    l2: &MultiPoly,
) -> Result<Option<(MultiPoly, MultiPoly)>, PolyError> {
    let field = f.field();
    let quadrics = monomials_of_degree(2);
    let cubics = monomials_of_degree(3);
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(12); cubics.len()];
    for line in [l1, l2] {
        for q in &quadrics {
            let col = line.mul(&MultiPoly::from_terms(field, 3, [(q.clone(), field.one())]))?;
            for (row, cubic) in rows.iter_mut().zip(&cubics) {
                row.push(col.coefficient(cubic));
            }
        }
    }
    let rhs: Vec<Scalar> = cubics.iter().map(|m| f.coefficient(m)).collect();
    let Some(solution) = solve_linear(&rows, &rhs)? else {
        return Ok(None);
    };
    let build = |coeffs: &[Scalar]| {
        MultiPoly::from_terms(
            field,
            3,
            quadrics.iter().cloned().zip(coeffs.iter().cloned()),
        )
    };
    Ok(Some((build(&solution[..6]), build(&solution[6..]))))
}

/// The 2x2 factorization of a point's residue module:
/// `A = [[l2, f1], [-l1, f2]]`, `B = [[f2, -f1], [l1, l2]]` where
/// `f = l1 f1 + l2 f2`.  Valid at every curve point, including the
/// inflections.
pub fn skyscraper_mf(
    curve: &HesseCubic,
    a: &CurvePoint,
) -> Result<MatrixFactorization, MatFacError> {
    if a.field() != curve.field() {
        return Err(PolyError::FieldMismatch.into());
    }
    let (l1, l2) = cutting_lines(a);
    let Some((f1, f2)) = decompose_through_lines(curve.polynomial(), &l1, &l2)? else {
        return Err(MatFacError::NotOnCurve);
    };
    let mat_a = PolyMatrix::from_rows(vec![
        vec![l2.clone(), f1.clone()],
        vec![l1.neg(), f2.clone()],
    ])?;
    let mat_b = PolyMatrix::from_rows(vec![vec![f2, f1.neg()], vec![l1, l2]])?;
    MatrixFactorization::new(curve.polynomial().clone(), mat_a, mat_b)
}

/// The explicit 2x2 pair written directly from the coordinates; needs
/// all coordinates nonzero.  The first row of `A` holds the two
/// cutting lines, the second row quadratics; `B` is the adjugate of
/// `A` divided by the coordinate product.
pub fn skyscraper_explicit(
    curve: &HesseCubic,
    a: &CurvePoint,
) -> Result<MatrixFactorization, MatFacError> {
    if a.field() != curve.field() {
        return Err(PolyError::FieldMismatch.into());
    }
    if !curve.polynomial().eval(a.coords())?.is_zero() {
        return Err(MatFacError::NotOnCurve);
    }
    let product = a.coordinate_product();
    if product.is_zero() {
        return Err(MatFacError::InflectionPoint);
    }
    let field = curve.field();
    let x = |i: usize| xv(field, 3, i);
    let c = |i: usize| a.coord(i).clone();
    let cc = |i: usize, j: usize| c(i).mul(&c(j)).expect("same field");
    let term = |coef: Scalar, i: usize, j: usize| {
        x(i).mul(&x(j))
            .unwrap()
            .scalar_mul(&coef)
            .expect("same field")
    };
    // l1 = a1 x2 - a2 x1, l2 = a0 x1 - a1 x0
    let l1 = x(2)
        .scalar_mul(&c(1))
        .unwrap()
        .sub(&x(1).scalar_mul(&c(2)).unwrap())
        .unwrap();
    let l2 = x(1)
        .scalar_mul(&c(0))
        .unwrap()
        .sub(&x(0).scalar_mul(&c(1)).unwrap())
        .unwrap();
    // q1 = a0 a2 x0^2 + a0^2 x0 x2 - a1^2 x1 x2 - a2^2 x2^2
    let q1 = term(cc(0, 2), 0, 0)
        .add(&term(cc(0, 0), 0, 2))
        .unwrap()
        .sub(&term(cc(1, 1), 1, 2))
        .unwrap()
        .sub(&term(cc(2, 2), 2, 2))
        .unwrap();
    // q2 = a2^2 x0 x2 + a0 a2 x2^2 - a0^2 x0^2 - a0 a1 x1^2
    let q2 = term(cc(2, 2), 0, 2)
        .add(&term(cc(0, 2), 2, 2))
        .unwrap()
        .sub(&term(cc(0, 0), 0, 0))
        .unwrap()
        .sub(&term(cc(0, 1), 1, 1))
        .unwrap();
    let mat_a = PolyMatrix::from_rows(vec![vec![l1, l2], vec![q1, q2]])?;
    // The complement is adj(A) / (a0 a1 a2); the source prints it with
    // the opposite overall sign, which fails its own product identity.
    let mat_b = mat_a.adjugate()?.scale(&product.inverse()?)?;
    MatrixFactorization::new(curve.polynomial().clone(), mat_a, mat_b)
}

/// Six-variable symbolic version of the explicit matrix `A` (variables
/// `x0, x1, x2, a0, a1, a2`).
pub fn skyscraper_explicit_symbolic(field: Field) -> PolyMatrix {
    let p = |terms: &[(i64, [u32; 6])]| {
        MultiPoly::from_terms(
            field,
            6,
            terms
                .iter()
                .map(|&(c, e)| (Monomial::new(e.to_vec()), field.from_integer(c))),
        )
    };
    let l1 = p(&[(1, [0, 0, 1, 0, 1, 0]), (-1, [0, 1, 0, 0, 0, 1])]);
    let l2 = p(&[(1, [0, 1, 0, 1, 0, 0]), (-1, [1, 0, 0, 0, 1, 0])]);
    let q1 = p(&[
        (1, [2, 0, 0, 1, 0, 1]),
        (1, [1, 0, 1, 2, 0, 0]),
        (-1, [0, 1, 1, 0, 2, 0]),
        (-1, [0, 0, 2, 0, 0, 2]),
    ]);
    let q2 = p(&[
        (1, [1, 0, 1, 0, 0, 2]),
        (1, [0, 0, 2, 1, 0, 1]),
        (-1, [2, 0, 0, 2, 0, 0]),
        (-1, [0, 2, 0, 1, 1, 0]),
    ]);
    PolyMatrix::from_rows(vec![vec![l1, l2], vec![q1, q2]]).expect("well-formed rows")
}

/// The quadratic complement bracket in six variables: coordinate
/// product times the second half, written out entry by entry (with the
/// sign that makes `A * bracket = det(A) * I` hold).
pub fn skyscraper_bracket_symbolic(field: Field) -> PolyMatrix {
    let a = skyscraper_explicit_symbolic(field);
    // adj entries of a 2x2: [[a11, -a01], [-a10, a00]]; spelled out
    // from the printed quadratics rather than computed, so tests can
    // compare the two routes.
    let p = |terms: &[(i64, [u32; 6])]| {
        MultiPoly::from_terms(
            field,
            6,
            terms
                .iter()
                .map(|&(c, e)| (Monomial::new(e.to_vec()), field.from_integer(c))),
        )
    };
    let b00 = p(&[
        (1, [1, 0, 1, 0, 0, 2]),
        (1, [0, 0, 2, 1, 0, 1]),
        (-1, [2, 0, 0, 2, 0, 0]),
        (-1, [0, 2, 0, 1, 1, 0]),
    ]);
    let b01 = p(&[(1, [1, 0, 0, 0, 1, 0]), (-1, [0, 1, 0, 1, 0, 0])]);
    let b10 = p(&[
        (-1, [2, 0, 0, 1, 0, 1]),
        (-1, [1, 0, 1, 2, 0, 0]),
        (1, [0, 1, 1, 0, 2, 0]),
        (1, [0, 0, 2, 0, 0, 2]),
    ]);
    let b11 = p(&[(1, [0, 0, 1, 0, 1, 0]), (-1, [0, 1, 0, 0, 0, 1])]);
    debug_assert_eq!(b11, *a.entry(0, 0));
    PolyMatrix::from_rows(vec![vec![b00, b01], vec![b10, b11]]).expect("well-formed rows")
}
