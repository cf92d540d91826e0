//! Matrix factorizations of the plane cubic in Hesse normal form.
//!
//! A matrix factorization of a polynomial `f` is a pair of square
//! polynomial matrices with `A*B = B*A = f*I`; the cokernels of the two
//! matrices are a module and its first syzygy.  This module builds the
//! explicit families for the Hesse cubic (the Koszul pair from a
//! three-term decomposition of `f`, the all-linear Moore pair attached
//! to a curve point, and the 2x2 skyscraper pairs), verifies the
//! defining identities exactly, and extracts Betti data from the graded
//! structure for cross-checking against the closed-form tables.

mod koszul;
mod moore;
mod skyscraper;

pub use koszul::{koszul_mf, koszul_reference, rank_one, standard_decomposition, tensor_mf};
pub use moore::{
    moore_adjugate_symbolic, moore_determinant_rhs, moore_matrix, moore_matrix_symbolic, moore_mf,
};
pub use skyscraper::{
    cutting_lines, skyscraper_bracket_symbolic, skyscraper_explicit, skyscraper_explicit_symbolic,
    skyscraper_mf,
};

use thiserror::Error;

use crate::betti::BettiTable;
use crate::matrix::{grading_infer, PolyMatrix};
use crate::poly::{MultiPoly, PolyError};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatFacError {
    #[error("psi = {0} gives a singular cubic (psi^3 = 1)")]
    SingularCubic(String),
    #[error("point does not lie on the cubic")]
    NotOnCurve,
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error(
        "point has a zero coordinate (order-3 point), construction needs all coordinates nonzero"
    )]
    OrderThreePoint,
    #[error("point is an inflection point (zero coordinate), the explicit formulas degenerate")]
    InflectionPoint,
    #[error("decomposition pairs must have homogeneous products of one common degree")]
    InhomogeneousInput,
    #[error("decomposition sums to the zero polynomial")]
    ZeroSum,
    #[error("matrix factorization is not minimal (constant entry present)")]
    NotMinimal,
    #[error("point enumeration requires a prime field")]
    EnumerationRequiresPrimeField,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Convenience: the `i`-th variable in an `nvars`-variable ring.
pub(crate) fn xv(field: Field, nvars: usize, i: usize) -> MultiPoly {
    MultiPoly::variable(field, nvars, i)
}

/// `x_i^3` in an `nvars`-variable ring.
pub(crate) fn cube(field: Field, nvars: usize, i: usize) -> MultiPoly {
    let x = xv(field, nvars, i);
    x.mul(&x).unwrap().mul(&x).unwrap()
}

/// The cubic `x0^3 + x1^3 + x2^3 - 3 psi x0 x1 x2` in `nvars >= 3`
/// variables.
pub(crate) fn hesse_poly(field: Field, nvars: usize, psi: &Scalar) -> MultiPoly {
    let sum = cube(field, nvars, 0)
        .add(&cube(field, nvars, 1))
        .unwrap()
        .add(&cube(field, nvars, 2))
        .unwrap();
    let xyz = xv(field, nvars, 0)
        .mul(&xv(field, nvars, 1))
        .unwrap()
        .mul(&xv(field, nvars, 2))
        .unwrap();
    let coeff = field.from_integer(-3).mul(psi).expect("same field");
    sum.add(&xyz.scalar_mul(&coeff).expect("same field"))
        .unwrap()
}

/// A smooth plane cubic in Hesse normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HesseCubic {
    psi: Scalar,
    f: MultiPoly,
}

/// Builds the cubic for a normal-form parameter with `psi^3 != 1`.
pub fn hesse(psi: Scalar) -> Result<HesseCubic, MatFacError> {
    if psi.is_cube_root_of_unity() {
        return Err(MatFacError::SingularCubic(psi.to_string()));
    }
    let f = hesse_poly(psi.field(), 3, &psi);
    Ok(HesseCubic { psi, f })
}

impl HesseCubic {
    pub fn psi(&self) -> &Scalar {
        &self.psi
    }

    pub fn polynomial(&self) -> &MultiPoly {
        &self.f
    }

    pub fn field(&self) -> Field {
        self.psi.field()
    }
}

/// A projective point on a fixed Hesse cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    coords: [Scalar; 3],
}

impl CurvePoint {
    pub fn new(curve: &HesseCubic, coords: [Scalar; 3]) -> Result<Self, MatFacError> {
        if coords.iter().any(|c| c.field() != curve.field()) {
            return Err(MatFacError::Poly(PolyError::FieldMismatch));
        }
        if coords.iter().all(Scalar::is_zero) {
            return Err(MatFacError::ZeroPoint);
        }
        if !curve.f.eval(&coords)?.is_zero() {
            return Err(MatFacError::NotOnCurve);
        }
        Ok(CurvePoint { coords })
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Product of the three coordinates; zero exactly on the nine
    /// inflection points of the pencil.
    pub fn coordinate_product(&self) -> Scalar {
        self.coords[0]
            .mul(&self.coords[1])
            .and_then(|p| p.mul(&self.coords[2]))
            .expect("same field")
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// A pair of square matrices with `A*B = B*A = f*I`.
///
/// Gradings are inferred at construction when the entries allow it and
/// stored on the matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization {
    f: MultiPoly,
    a: PolyMatrix,
    b: PolyMatrix,
}

impl MatrixFactorization {
    pub fn new(f: MultiPoly, a: PolyMatrix, b: PolyMatrix) -> Result<Self, MatFacError> {
        if a.rows() != a.cols() {
            return Err(PolyError::NotSquare(a.rows(), a.cols()).into());
        }
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(
                PolyError::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()).into(),
            );
        }
        if a.field() != f.field() || b.field() != f.field() {
            return Err(PolyError::FieldMismatch.into());
        }
        if a.nvars() != f.nvars() || b.nvars() != f.nvars() {
            return Err(PolyError::ArityMismatch {
                left: f.nvars(),
                right: a.nvars(),
            }
            .into());
        }
        let mut a = a;
        let mut b = b;
        if let Ok((r, c)) = grading_infer(&a) {
            a.row_degrees = Some(r);
            a.col_degrees = Some(c);
        }
        if let Ok((r, c)) = grading_infer(&b) {
            b.row_degrees = Some(r);
            b.col_degrees = Some(c);
        }
        Ok(MatrixFactorization { f, a, b })
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }
}

/// Which matrix of the pair a cokernel is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Outcome of checking the defining identities of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// `A * B = f * I` exactly.
    pub ab_is_f: bool,
    /// `B * A = f * I` exactly.
    pub ba_is_f: bool,
    /// `f` is homogeneous of degree at least one.
    pub f_homogeneous: bool,
    /// No nonzero entry of either matrix is a constant.
    pub minimal: bool,
    /// A joint grading exists: both matrices homogeneous with the
    /// column degrees of the pair shifted by `deg f` across the two.
    pub grading_consistent: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.ab_is_f
            && self.ba_is_f
            && self.f_homogeneous
            && self.minimal
            && self.grading_consistent
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "A*B = f*I: {}", mark(self.ab_is_f))?;
        writeln!(f, "B*A = f*I: {}", mark(self.ba_is_f))?;
        writeln!(f, "f homogeneous: {}", mark(self.f_homogeneous))?;
        writeln!(f, "minimal: {}", mark(self.minimal))?;
        write!(f, "grading consistent: {}", mark(self.grading_consistent))
    }
}

fn is_minimal(m: &PolyMatrix) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let e = m.entry(i, j);
            e.is_zero() || e.degree().unwrap_or(0) >= 1
        })
    })
}

/// Joint grading check: does there exist a degree assignment making
/// `A` a degree-zero map into generators `rho` from relations `gamma`
/// and `B` a degree-zero map from `rho + w` into `gamma`?
fn pair_grading_consistent(a: &PolyMatrix, b: &PolyMatrix, w: i64) -> bool {
    let n = a.rows();
    // Nodes 0..n carry rho (generators), n..2n carry gamma (relations).
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); 2 * n];
    for i in 0..n {
        for j in 0..n {
            let e = a.entry(i, j);
            if !e.is_zero() {
                if !e.is_homogeneous() {
                    return false;
                }
                let d = e.degree().unwrap();
                adj[i].push((n + j, d));
                adj[n + j].push((i, -d));
            }
            let e = b.entry(j, i);
            if !e.is_zero() {
                if !e.is_homogeneous() {
                    return false;
                }
                // deg B[j][i] = (rho_i + w) - gamma_j
                let d = e.degree().unwrap() - w;
                adj[n + j].push((i, d));
                adj[i].push((n + j, -d));
            }
        }
    }
    let mut value = vec![None::<i64>; 2 * n];
    for start in 0..2 * n {
        if value[start].is_some() {
            continue;
        }
        value[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let base = value[u].unwrap();
            for &(v, delta) in &adj[u] {
                match value[v] {
                    None => {
                        value[v] = Some(base + delta);
                        queue.push_back(v);
                    }
                    Some(actual) if actual != base + delta => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Checks the defining identities of a factorization and reports each
/// outcome; nothing is an error here, failures are data.
pub fn verify_mf(mf: &MatrixFactorization) -> VerifyReport {
    let f = mf.f();
    let f_homogeneous = !f.is_zero() && f.is_homogeneous() && f.degree().unwrap_or(0) >= 1;
    let ab_is_f = mf
        .a()
        .mul(mf.b())
        .map(|p| p.is_scalar_identity(f))
        .unwrap_or(false);
    let ba_is_f = mf
        .b()
        .mul(mf.a())
        .map(|p| p.is_scalar_identity(f))
        .unwrap_or(false);
    let minimal = is_minimal(mf.a()) && is_minimal(mf.b());
    let grading_consistent = match f.degree() {
        Some(w) if f_homogeneous => pair_grading_consistent(mf.a(), mf.b(), w),
        _ => false,
    };
    VerifyReport {
        ab_is_f,
        ba_is_f,
        f_homogeneous,
        minimal,
        grading_consistent,
    }
}

/// Betti window of the cokernel of one side of a minimal graded
/// factorization: generator degrees are the row degrees, relation
/// degrees the column degrees, normalized so the smallest generator
/// degree is zero.
pub fn betti_from_mf(mf: &MatrixFactorization, side: Side) -> Result<BettiTable, MatFacError> {
    let m = match side {
        Side::A => mf.a(),
        Side::B => mf.b(),
    };
    if !is_minimal(mf.a()) || !is_minimal(mf.b()) {
        return Err(MatFacError::NotMinimal);
    }
    let (mut rows, mut cols) = grading_infer(m)?;
    let offset = rows.iter().copied().min().expect("matrix is nonempty");
    for v in rows.iter_mut().chain(cols.iter_mut()) {
        *v -= offset;
    }
    let mut entries: Vec<(u8, i64, u64)> = Vec::new();
    for d in rows {
        entries.push((0, d, 1));
    }
    for d in cols {
        entries.push((1, d, 1));
    }
    Ok(BettiTable::from_entries(entries))
}

/// Deterministic enumeration of the projective points of the cubic
/// over a prime field, as representatives with first nonzero
/// coordinate 1, optionally restricted to points with all coordinates
/// nonzero.
pub fn point_search(
    curve: &HesseCubic,
    require_nonzero_coords: bool,
) -> Result<Vec<CurvePoint>, MatFacError> {
    let Field::Prime(p) = curve.field() else {
        return Err(MatFacError::EnumerationRequiresPrimeField);
    };
    let field = curve.field();
    let mut reps: Vec<[Scalar; 3]> = Vec::new();
    reps.push([field.zero(), field.zero(), field.one()]);
    for z in 0..p {
        reps.push([field.zero(), field.one(), field.from_integer(z as i64)]);
    }
    for y in 0..p {
        for z in 0..p {
            reps.push([
                field.one(),
                field.from_integer(y as i64),
                field.from_integer(z as i64),
            ]);
        }
    }
    let mut out = Vec::new();
    for coords in reps {
        if curve.f.eval(&coords)?.is_zero() {
            if require_nonzero_coords && coords.iter().any(Scalar::is_zero) {
                continue;
            }
            out.push(CurvePoint { coords });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hesse_construction() {
        let fermat = hesse(Field::Rational.zero()).unwrap();
        assert_eq!(fermat.polynomial().to_string(), "x0^3 + x1^3 + x2^3");

        assert_eq!(
            hesse(Field::Rational.one()),
            Err(MatFacError::SingularCubic("1".into()))
        );

        let two = hesse(Field::Rational.from_integer(2)).unwrap();
        assert_eq!(
            two.polynomial().to_string(),
            "x0^3 - 6*x0*x1*x2 + x1^3 + x2^3"
        );

        // Over F_7 the cube roots of unity are 1, 2 and 4.
        let f7 = Field::prime(7).unwrap();
        for bad in [1, 2, 4] {
            assert!(hesse(f7.from_integer(bad)).is_err());
        }
        for good in [0, 3, 5, 6] {
            assert!(hesse(f7.from_integer(good)).is_ok());
        }
    }

    #[test]
    fn curve_point_validation() {
        let fermat = hesse(Field::Rational.zero()).unwrap();
        let q = |n: i64| Field::Rational.from_integer(n);
        assert!(CurvePoint::new(&fermat, [q(0), q(-1), q(1)]).is_ok());
        assert_eq!(
            CurvePoint::new(&fermat, [q(1), q(1), q(1)]),
            Err(MatFacError::NotOnCurve)
        );
        assert_eq!(
            CurvePoint::new(&fermat, [q(0), q(0), q(0)]),
            Err(MatFacError::ZeroPoint)
        );
    }

    #[test]
    fn point_search_fermat_f7() {
        let f7 = Field::prime(7).unwrap();
        let fermat = hesse(f7.zero()).unwrap();
        let pts = point_search(&fermat, false).unwrap();
        // Nine points, all with a zero coordinate (the inflections).
        assert_eq!(pts.len(), 9);
        for p in &pts {
            assert!(fermat.polynomial().eval(p.coords()).unwrap().is_zero());
            assert!(p.coordinate_product().is_zero());
        }
        let filtered = point_search(&fermat, true).unwrap();
        assert!(filtered.is_empty());
        // Filtered list is a sublist of the unfiltered one.
        for p in &filtered {
            assert!(pts.contains(p));
        }
    }

    #[test]
    fn point_search_f13_has_free_points() {
        let f13 = Field::prime(13).unwrap();
        let curve = hesse(f13.from_integer(2)).unwrap();
        let all = point_search(&curve, false).unwrap();
        let free = point_search(&curve, true).unwrap();
        assert_eq!(all.len(), 18);
        assert_eq!(free.len(), 9);
        for p in &free {
            assert!(all.contains(p));
            assert!(!p.coordinate_product().is_zero());
        }
        // The classic integer point is among them.
        let classic = CurvePoint::new(
            &curve,
            [f13.one(), f13.from_integer(2), f13.from_integer(3)],
        )
        .unwrap();
        assert!(free.contains(&classic));
    }

    #[test]
    fn point_search_requires_prime_field() {
        let fermat = hesse(Field::Rational.zero()).unwrap();
        assert_eq!(
            point_search(&fermat, false),
            Err(MatFacError::EnumerationRequiresPrimeField)
        );
    }

    #[test]
    fn betti_extraction_error_paths() {
        use crate::matfac::rank_one;
        let field = Field::Rational;
        let x0 = xv(field, 3, 0);

        // Constant entry: not minimal.
        let unit = MultiPoly::one(field, 3);
        let mf = rank_one(unit, x0.clone()).unwrap();
        assert_eq!(betti_from_mf(&mf, Side::A), Err(MatFacError::NotMinimal));

        // Inhomogeneous entry: no grading to read off.
        let mixed = x0.add(&x0.mul(&x0).unwrap()).unwrap();
        let mf = rank_one(mixed, x0).unwrap();
        let err = betti_from_mf(&mf, Side::A).unwrap_err();
        assert!(matches!(
            err,
            MatFacError::Poly(PolyError::NotHomogeneous(0, 0))
        ));
    }
}
