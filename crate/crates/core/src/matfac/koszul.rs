//! Koszul-type factorizations: the two-periodic tensor product of
//! factorization pairs, and the explicit 4x4 pair for the standard
//! three-term decomposition of the Hesse cubic.

use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;

use super::{hesse_poly, xv, HesseCubic, MatFacError, MatrixFactorization};

/// The 1x1 factorization `{a, b}` of the product `a*b`.
pub fn rank_one(a: MultiPoly, b: MultiPoly) -> Result<MatrixFactorization, MatFacError> {
    let f = a.mul(&b)?;
    let a = PolyMatrix::from_rows(vec![vec![a]])?;
    let b = PolyMatrix::from_rows(vec![vec![b]])?;
    MatrixFactorization::new(f, a, b)
}

/// Kronecker product, row-major block layout.
fn kron(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zero(
        x.field(),
        x.nvars(),
        x.rows() * y.rows(),
        x.cols() * y.cols(),
    );
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if x.entry(i, j).is_zero() {
                continue;
            }
            for k in 0..y.rows() {
                for l in 0..y.cols() {
                    let p = x.entry(i, j).mul(y.entry(k, l)).expect("same ring");
                    out.set_entry(i * y.rows() + k, j * y.cols() + l, p);
                }
            }
        }
    }
    out
}

/// Stacks four equally sized blocks into one matrix.
fn block2(tl: &PolyMatrix, tr: &PolyMatrix, bl: &PolyMatrix, br: &PolyMatrix) -> PolyMatrix {
    let n = tl.rows();
    let mut out = PolyMatrix::zero(tl.field(), tl.nvars(), 2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out.set_entry(i, j, tl.entry(i, j).clone());
            out.set_entry(i, n + j, tr.entry(i, j).clone());
            out.set_entry(n + i, j, bl.entry(i, j).clone());
            out.set_entry(n + i, n + j, br.entry(i, j).clone());
        }
    }
    out
}

/// Tensor product of factorizations: a factorization of `f1 + f2` of
/// twice the product size.
///
/// Sign convention (fixed here once and for all): with first factor
/// `(A1, B1)` of size m and second `(A2, B2)` of size n,
///
/// ```text
/// A = | A1 (x) I      -I (x) B2 |      B = | B1 (x) I      I (x) B2 |
///     | I  (x) A2      B1 (x) I |          | -I (x) A2     A1 (x) I |
/// ```
///
/// For two 1x1 factors this is the classical `[[a, -d], [c, b]]` pair.
pub fn tensor_mf(
    m1: &MatrixFactorization,
    m2: &MatrixFactorization,
) -> Result<MatrixFactorization, MatFacError> {
    let f = m1.f().add(m2.f())?;
    let im = PolyMatrix::identity(m1.field(), m1.f().nvars(), m1.size());
    let in_ = PolyMatrix::identity(m2.field(), m2.f().nvars(), m2.size());
    let a = block2(
        &kron(m1.a(), &in_),
        &kron(&im, m2.b()).neg(),
        &kron(&im, m2.a()),
        &kron(m1.b(), &in_),
    );
    let b = block2(
        &kron(m1.b(), &in_),
        &kron(&im, m2.b()),
        &kron(&im, m2.a()).neg(),
        &kron(m1.a(), &in_),
    );
    MatrixFactorization::new(f, a, b)
}

/// Builds the iterated tensor factorization of `sum a_i * b_i`.
///
/// Each pair must multiply to a homogeneous polynomial, all nonzero
/// products of one common total degree, and the sum must not vanish.
pub fn koszul_mf(pairs: &[(MultiPoly, MultiPoly)]) -> Result<MatrixFactorization, MatFacError> {
    assert!(!pairs.is_empty(), "need at least one pair");
    let mut common_degree: Option<i64> = None;
    for (a, b) in pairs {
        let prod = a.mul(b)?;
        if !prod.is_homogeneous() {
            return Err(MatFacError::InhomogeneousInput);
        }
        if let Some(d) = prod.degree() {
            if *common_degree.get_or_insert(d) != d {
                return Err(MatFacError::InhomogeneousInput);
            }
        }
    }
    let mut acc = rank_one(pairs[0].0.clone(), pairs[0].1.clone())?;
    for (a, b) in &pairs[1..] {
        acc = tensor_mf(&acc, &rank_one(a.clone(), b.clone())?)?;
    }
    if acc.f().is_zero() {
        return Err(MatFacError::ZeroSum);
    }
    Ok(acc)
}

/// The standard three-term decomposition of the Hesse cubic:
/// `f = x0 * x0^2 + x1^2 * x1 + (x2^2 - 3 psi x0 x1) * x2`.
pub fn standard_decomposition(curve: &HesseCubic) -> [(MultiPoly, MultiPoly); 3] {
    let field = curve.field();
    let x = |i: usize| xv(field, 3, i);
    let sq = |i: usize| x(i).mul(&x(i)).unwrap();
    let coeff = field.from_integer(-3).mul(curve.psi()).expect("same field");
    let mixed = x(0)
        .mul(&x(1))
        .unwrap()
        .scalar_mul(&coeff)
        .expect("same field");
    [
        (x(0), sq(0)),
        (sq(1), x(1)),
        (sq(2).add(&mixed).unwrap(), x(2)),
    ]
}

/// The 4x4 reference pair for the standard decomposition, written out
/// entry by entry.  Same factorization as
/// `koszul_mf(&standard_decomposition(curve))` up to base change; the
/// tests compare the two through verification and degree data rather
/// than entry by entry.
pub fn koszul_reference(curve: &HesseCubic) -> MatrixFactorization {
    let field = curve.field();
    let x = |i: usize| xv(field, 3, i);
    let sq = |i: usize| x(i).mul(&x(i)).unwrap();
    let zero = MultiPoly::zero(field, 3);
    let coeff = field.from_integer(-3).mul(curve.psi()).expect("same field");
    // u = x2^2 - 3 psi x0 x1
    let u = sq(2)
        .add(
            &x(0)
                .mul(&x(1))
                .unwrap()
                .scalar_mul(&coeff)
                .expect("same field"),
        )
        .unwrap();
    let a = PolyMatrix::from_rows(vec![
        vec![x(0), sq(1), u.clone(), zero.clone()],
        vec![x(1).neg(), sq(0), zero.clone(), u.clone()],
        vec![x(2).neg(), zero.clone(), sq(0), sq(1).neg()],
        vec![zero.clone(), x(2).neg(), x(1), x(0)],
    ])
    .expect("well-formed rows");
    let b = PolyMatrix::from_rows(vec![
        vec![sq(0), sq(1).neg(), u.neg(), zero.clone()],
        vec![x(1), x(0), zero.clone(), u.neg()],
        vec![x(2), zero.clone(), x(0), sq(1)],
        vec![zero.clone(), x(2), x(1).neg(), sq(0)],
    ])
    .expect("well-formed rows");
    MatrixFactorization::new(hesse_poly(field, 3, curve.psi()), a, b)
        .expect("reference pair is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfac::{hesse, verify_mf};
    use crate::scalar::Field;

    fn x(i: usize) -> MultiPoly {
        xv(Field::Rational, 3, i)
    }

    fn sq(i: usize) -> MultiPoly {
        x(i).mul(&x(i)).unwrap()
    }

    #[test]
    fn rank_one_tensor_is_classical_two_by_two() {
        let m1 = rank_one(x(0), sq(0)).unwrap();
        let m2 = rank_one(sq(1), x(1)).unwrap();
        let t = tensor_mf(&m1, &m2).unwrap();
        assert_eq!(t.size(), 2);
        let f = x(0)
            .mul(&sq(0))
            .unwrap()
            .add(&sq(1).mul(&x(1)).unwrap())
            .unwrap();
        assert_eq!(*t.f(), f);
        assert!(t.a().mul(t.b()).unwrap().is_scalar_identity(&f));
        assert!(t.b().mul(t.a()).unwrap().is_scalar_identity(&f));
        // Classical layout: [[a, -d], [c, b]].
        assert_eq!(*t.a().entry(0, 0), x(0));
        assert_eq!(*t.a().entry(0, 1), x(1).neg());
        assert_eq!(*t.a().entry(1, 0), sq(1));
        assert_eq!(*t.a().entry(1, 1), sq(0));
    }

    #[test]
    fn degenerate_factor() {
        let zero = MultiPoly::zero(Field::Rational, 3);
        let m1 = rank_one(x(0), x(1)).unwrap();
        let m2 = rank_one(zero.clone(), zero).unwrap();
        let t = tensor_mf(&m1, &m2).unwrap();
        let f = x(0).mul(&x(1)).unwrap();
        assert_eq!(*t.f(), f);
        assert!(t.a().mul(t.b()).unwrap().is_scalar_identity(&f));
    }

    #[test]
    fn koszul_of_hesse_decomposition() {
        for psi in [0i64, 2] {
            let curve = hesse(Field::Rational.from_integer(psi)).unwrap();
            let mf = koszul_mf(&standard_decomposition(&curve)).unwrap();
            assert_eq!(mf.size(), 4);
            assert_eq!(mf.f(), curve.polynomial());
            let report = verify_mf(&mf);
            assert!(report.all_pass(), "psi = {psi}: {report}");
        }
    }

    #[test]
    fn koszul_rejections() {
        // Sum of the products is 0.
        let err = koszul_mf(&[(x(0), x(1)), (x(1), x(0).neg())]).unwrap_err();
        assert_eq!(err, MatFacError::ZeroSum);

        // Mixed total degrees.
        let err = koszul_mf(&[(x(0), x(1)), (sq(0), sq(1))]).unwrap_err();
        assert_eq!(err, MatFacError::InhomogeneousInput);

        // Inhomogeneous product.
        let mixed = x(0).add(&sq(1)).unwrap();
        let err = koszul_mf(&[(mixed, x(2))]).unwrap_err();
        assert_eq!(err, MatFacError::InhomogeneousInput);

        // Single pair works.
        let mf = koszul_mf(&[(x(0), sq(0))]).unwrap();
        assert_eq!(mf.size(), 1);
        assert_eq!(*mf.f(), x(0).mul(&sq(0)).unwrap());
    }

    #[test]
    fn reference_pair_verifies() {
        for psi in [0i64, 2] {
            let curve = hesse(Field::Rational.from_integer(psi)).unwrap();
            let mf = koszul_reference(&curve);
            let report = verify_mf(&mf);
            assert!(report.all_pass(), "psi = {psi}: {report}");
            assert_eq!(mf.f(), curve.polynomial());
        }
        let f7 = Field::prime(7).unwrap();
        let curve = hesse(f7.from_integer(3)).unwrap();
        assert!(verify_mf(&koszul_reference(&curve)).all_pass());
    }

    #[test]
    fn reference_pair_gradings() {
        use crate::matrix::grading_infer;
        let curve = hesse(Field::Rational.from_integer(2)).unwrap();
        let mf = koszul_reference(&curve);
        let (rows, cols) = grading_infer(mf.a()).unwrap();
        assert_eq!(rows, vec![0, 0, 0, 1]);
        assert_eq!(cols, vec![1, 2, 2, 2]);
        let (rows, cols) = grading_infer(mf.b()).unwrap();
        assert_eq!(rows, vec![0, 1, 1, 1]);
        assert_eq!(cols, vec![2, 2, 2, 3]);
    }

    #[test]
    fn mismatched_pair_fails_verification() {
        let curve = hesse(Field::Rational.zero()).unwrap();
        let mf = koszul_reference(&curve);
        let twisted =
            MatrixFactorization::new(mf.f().clone(), mf.a().clone(), mf.a().clone()).unwrap();
        let report = verify_mf(&twisted);
        assert!(!report.ab_is_f);
        assert!(!report.all_pass());
    }

    #[test]
    fn tensor_association_orders_agree() {
        let pairs = [(x(0), sq(0)), (sq(1), x(1)), (sq(2), x(2))];
        let left = tensor_mf(
            &tensor_mf(
                &rank_one(pairs[0].0.clone(), pairs[0].1.clone()).unwrap(),
                &rank_one(pairs[1].0.clone(), pairs[1].1.clone()).unwrap(),
            )
            .unwrap(),
            &rank_one(pairs[2].0.clone(), pairs[2].1.clone()).unwrap(),
        )
        .unwrap();
        let right = tensor_mf(
            &rank_one(pairs[0].0.clone(), pairs[0].1.clone()).unwrap(),
            &tensor_mf(
                &rank_one(pairs[1].0.clone(), pairs[1].1.clone()).unwrap(),
                &rank_one(pairs[2].0.clone(), pairs[2].1.clone()).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(left.f(), right.f());
        for mf in [&left, &right] {
            assert!(verify_mf(mf).all_pass());
        }
    }
}
