//! The numerical Grothendieck lattice of the curve.
//!
//! Classes of objects modulo the radical of the Euler form are integer
//! pairs `(r, d)` (rank, degree).  The internal-degree shift of graded
//! modules acts on this lattice through an order-3 unimodular matrix;
//! reduction into its fundamental domain is what turns an arbitrary
//! charge into one of the classified table shapes.

use thiserror::Error;

/// Errors from lattice operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The zero charge is the radical class; it is the invariant of no
    /// nonzero stable object and has no fundamental-domain representative.
    #[error("the zero charge (0, 0) has no fundamental-domain representative")]
    ZeroCharge,
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    /// Reduction found the wrong number of representatives.  This cannot
    /// happen for a genuine fundamental domain; we check at runtime
    /// instead of trusting the statement.
    #[error("fundamental-domain reduction found {0} representatives instead of exactly one")]
    Internal(usize),
}

/// Class of an object in the lattice: rank and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Charge {
    /// Rank component.
    pub r: i64,
    /// Degree component.
    pub d: i64,
}

impl Charge {
    pub const fn new(r: i64, d: i64) -> Self {
        Charge { r, d }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.d == 0
    }

    pub fn neg(&self) -> Charge {
        Charge::new(
            self.r.checked_neg().expect("charge overflow"),
            self.d.checked_neg().expect("charge overflow"),
        )
    }
}

impl std::fmt::Display for Charge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.r, self.d)
    }
}

/// A lattice automorphism: a 2x2 integer matrix of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeAuto {
    m: [[i64; 2]; 2],
}

fn checked_mul_add(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a.checked_mul(b)
        .and_then(|x| c.checked_mul(d).and_then(|y| x.checked_add(y)))
        .expect("charge overflow")
}

impl LatticeAuto {
    pub fn new(m00: i64, m01: i64, m10: i64, m11: i64) -> Result<Self, LatticeError> {
        let det = checked_mul_add(m00, m11, -m01, m10);
        if det != 1 {
            return Err(LatticeError::NotUnimodular(det));
        }
        Ok(LatticeAuto {
            m: [[m00, m01], [m10, m11]],
        })
    }

    pub const fn identity() -> Self {
        LatticeAuto {
            m: [[1, 0], [0, 1]],
        }
    }

    /// Action of the spherical twist along the structure sheaf.
    pub const fn structure_sheaf_twist() -> Self {
        LatticeAuto {
            m: [[1, -1], [0, 1]],
        }
    }

    /// Action of the spherical twist along a point (tensoring by the
    /// degree-one line bundle of that point).
    pub const fn point_twist() -> Self {
        LatticeAuto {
            m: [[1, 0], [1, 1]],
        }
    }

    /// Action of the internal degree shift (1) on charges.  Equals the
    /// cube of the point twist composed with the structure-sheaf twist.
    pub const fn degree_shift() -> Self {
        LatticeAuto {
            m: [[1, -1], [3, -2]],
        }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> i64 {
        checked_mul_add(self.m[0][0], self.m[1][1], -self.m[0][1], self.m[1][0])
    }

    pub fn compose(&self, other: &LatticeAuto) -> LatticeAuto {
        let a = self.m;
        let b = other.m;
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = checked_mul_add(a[i][0], b[0][j], a[i][1], b[1][j]);
            }
        }
        LatticeAuto { m }
    }

    /// Matrix-vector action on a charge.
    pub fn apply(&self, c: Charge) -> Charge {
        Charge::new(
            checked_mul_add(self.m[0][0], c.r, self.m[0][1], c.d),
            checked_mul_add(self.m[1][0], c.r, self.m[1][1], c.d),
        )
    }
}

/// The Euler form `<c1, c2> = r1*d2 - d1*r2`.
pub fn euler_form(c1: Charge, c2: Charge) -> i64 {
    checked_mul_add(c1.r, c2.d, -c1.d, c2.r)
}

/// Applies the k-th power of the degree-shift matrix to a charge.  The
/// matrix has order 3, so only `k mod 3` matters.
pub fn sigma_power(k: i64, c: Charge) -> Charge {
    let sigma = LatticeAuto::degree_shift();
    let mut out = c;
    for _ in 0..k.rem_euclid(3) {
        out = sigma.apply(out);
    }
    out
}

/// Fundamental domain of the order-3 shift action: `r > 0`, `0 <= d < 3r`.
pub fn in_domain3(c: Charge) -> bool {
    c.r > 0 && c.d >= 0 && (c.d as i128) < 3 * (c.r as i128)
}

/// Fundamental domain of the order-6 group generated by the negated
/// shift: `r > 0`, `3r > 2d >= 0`.
pub fn in_domain6(c: Charge) -> bool {
    c.r > 0 && c.d >= 0 && 2 * (c.d as i128) < 3 * (c.r as i128)
}

/// Reduces a nonzero charge into the order-3 fundamental domain.
///
/// Returns the unique exponent `k` in `{0, 1, 2}` together with the
/// representative obtained by applying the degree-shift matrix `k`
/// times.  Uniqueness is asserted at runtime.
///
/// The Betti table of a module with this charge is the table of the
/// representative transported by `k` internal-degree shifts; see
/// [`crate::betti::betti_general`] for the exact convention.
pub fn reduce3(c: Charge) -> Result<(u8, Charge), LatticeError> {
    if c.is_zero() {
        return Err(LatticeError::ZeroCharge);
    }
    let sigma = LatticeAuto::degree_shift();
    let mut hits = Vec::new();
    let mut cur = c;
    for k in 0..3u8 {
        if in_domain3(cur) {
            hits.push((k, cur));
        }
        cur = sigma.apply(cur);
    }
    match hits.len() {
        1 => Ok(hits[0]),
        n => Err(LatticeError::Internal(n)),
    }
}

/// Reduces a nonzero charge into the order-6 fundamental domain, using
/// powers of the negated degree-shift matrix.
pub fn reduce6(c: Charge) -> Result<(u8, Charge), LatticeError> {
    if c.is_zero() {
        return Err(LatticeError::ZeroCharge);
    }
    let sigma = LatticeAuto::degree_shift();
    let mut hits = Vec::new();
    let mut cur = c;
    for k in 0..6u8 {
        if in_domain6(cur) {
            hits.push((k, cur));
        }
        cur = sigma.apply(cur).neg();
    }
    match hits.len() {
        1 => Ok(hits[0]),
        n => Err(LatticeError::Internal(n)),
    }
}

/// Charge and cohomological shift of the j-th iterate of the shift
/// functor applied to the shifted structure sheaf.
///
/// The three base cases are the structure sheaf, its degree-3 twist and
/// the restricted twisted cotangent bundle, with charges `(1,0)`,
/// `(1,3)`, `(2,3)` and cohomological shifts `1`, `1`, `2`.  Further
/// iterates repeat with a shift by two:
/// `orbit_v(3i + j0) = (charge(j0), shift(j0) + 2i)`.
///
/// The returned charge is that of the underlying sheaf; it differs from
/// applying the shift matrix directly by the sign `(-1)^(shift+1)`.
pub fn orbit_v(j: i64) -> (Charge, i64) {
    const BASE: [(Charge, i64); 3] = [
        (Charge::new(1, 0), 1),
        (Charge::new(1, 3), 1),
        (Charge::new(2, 3), 2),
    ];
    let j0 = j.rem_euclid(3);
    let i = (j - j0) / 3;
    let (c, s) = BASE[j0 as usize];
    (
        c,
        s.checked_add(i.checked_mul(2).expect("shift overflow"))
            .expect("shift overflow"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> LatticeAuto {
        LatticeAuto::degree_shift()
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(euler_form(Charge::new(1, 0), Charge::new(0, 1)), 1);
        assert_eq!(euler_form(Charge::new(5, 7), Charge::new(5, 7)), 0);
        assert_eq!(euler_form(Charge::new(2, 3), Charge::new(1, 0)), -3);
    }

    #[test]
    fn euler_form_skew_symmetric() {
        for r1 in -6..=6 {
            for d1 in -6..=6 {
                for r2 in -6..=6 {
                    for d2 in -6..=6 {
                        let c1 = Charge::new(r1, d1);
                        let c2 = Charge::new(r2, d2);
                        assert_eq!(euler_form(c1, c2), -euler_form(c2, c1));
                    }
                }
            }
        }
    }

    #[test]
    fn shift_matrix_is_cube_of_point_twist_times_structure_twist() {
        let b = LatticeAuto::point_twist();
        let a = LatticeAuto::structure_sheaf_twist();
        let b3a = b.compose(&b).compose(&b).compose(&a);
        assert_eq!(b3a, sigma());
    }

    #[test]
    fn unimodularity() {
        assert_eq!(sigma().det(), 1);
        assert_eq!(LatticeAuto::structure_sheaf_twist().det(), 1);
        assert_eq!(LatticeAuto::point_twist().det(), 1);
        assert_eq!(LatticeAuto::new(2, 1, 1, 1).unwrap().det(), 1);
        assert_eq!(
            LatticeAuto::new(2, 0, 0, 2),
            Err(LatticeError::NotUnimodular(4))
        );
    }

    #[test]
    fn apply_examples() {
        assert_eq!(sigma().apply(Charge::new(1, 0)), Charge::new(1, 3));
        assert_eq!(sigma().apply(Charge::new(1, 3)), Charge::new(-2, -3));
        assert_eq!(
            LatticeAuto::identity().apply(Charge::new(4, -2)),
            Charge::new(4, -2)
        );
    }

    #[test]
    fn sigma_has_order_three() {
        for r in -10..=10 {
            for d in -10..=10 {
                let c = Charge::new(r, d);
                assert_eq!(sigma_power(3, c), c);
            }
        }
        assert_eq!(sigma_power(3, Charge::new(7, -5)), Charge::new(7, -5));
    }

    #[test]
    fn sigma_power_examples() {
        // The square of the shift matrix is [[-2, 1], [-3, 1]].
        let sq = sigma().compose(&sigma());
        assert_eq!(sq.entries(), [[-2, 1], [-3, 1]]);
        assert_eq!(sigma_power(2, Charge::new(0, 1)), Charge::new(1, 1));
        // Negative exponents wrap: sigma^(-1) = sigma^2.
        assert_eq!(sigma_power(-1, Charge::new(1, 3)), Charge::new(1, 0));
    }

    #[test]
    fn domain_membership() {
        assert!(in_domain3(Charge::new(1, 0)));
        assert!(!in_domain3(Charge::new(1, 3)));
        assert!(!in_domain3(Charge::new(0, 1)));

        assert!(in_domain6(Charge::new(1, 1)));
        assert!(!in_domain6(Charge::new(2, 3)));
        assert!(in_domain6(Charge::new(1, 0)));
    }

    #[test]
    fn reduce3_examples() {
        assert_eq!(reduce3(Charge::new(0, 1)), Ok((2, Charge::new(1, 1))));
        assert_eq!(reduce3(Charge::new(1, 3)), Ok((2, Charge::new(1, 0))));
        assert_eq!(reduce3(Charge::new(2, 3)), Ok((0, Charge::new(2, 3))));
        assert_eq!(reduce3(Charge::new(0, 0)), Err(LatticeError::ZeroCharge));
    }

    #[test]
    fn reduce6_examples() {
        assert_eq!(reduce6(Charge::new(2, 3)), Ok((1, Charge::new(1, 0))));
        assert_eq!(reduce6(Charge::new(-1, 0)), Ok((3, Charge::new(1, 0))));
        assert_eq!(reduce6(Charge::new(1, 1)), Ok((0, Charge::new(1, 1))));
        assert_eq!(reduce6(Charge::new(0, 0)), Err(LatticeError::ZeroCharge));
    }

    #[test]
    fn orbit_partition_small() {
        // Exactly one of the three shift-images lies in the order-3
        // domain and exactly one of the six negated-shift images in the
        // order-6 domain.  The full |r|,|d| <= 50 sweep runs in the
        // acceptance suite.
        for r in -12..=12i64 {
            for d in -12..=12i64 {
                let c = Charge::new(r, d);
                if c.is_zero() {
                    continue;
                }
                let hits3 = (0..3).filter(|&k| in_domain3(sigma_power(k, c))).count();
                assert_eq!(hits3, 1, "charge {c}");
                let mut cur = c;
                let mut hits6 = 0;
                for _ in 0..6 {
                    if in_domain6(cur) {
                        hits6 += 1;
                    }
                    cur = sigma().apply(cur).neg();
                }
                assert_eq!(hits6, 1, "charge {c}");
            }
        }
    }

    #[test]
    fn reduce3_is_orbit_invariant() {
        for r in -8..=8i64 {
            for d in -8..=8i64 {
                let c = Charge::new(r, d);
                if c.is_zero() {
                    continue;
                }
                let (_, rep) = reduce3(c).unwrap();
                for m in 0..3 {
                    let (_, rep2) = reduce3(sigma_power(m, c)).unwrap();
                    assert_eq!(rep, rep2);
                }
            }
        }
    }

    #[test]
    fn orbit_v_examples() {
        assert_eq!(orbit_v(2), (Charge::new(2, 3), 2));
        assert_eq!(orbit_v(-1), (Charge::new(2, 3), 0));
        assert_eq!(orbit_v(5), (Charge::new(2, 3), 4));
        assert_eq!(orbit_v(0), (Charge::new(1, 0), 1));
        // Two steps back lands on the degree-3 twist, one shift down.
        assert_eq!(orbit_v(-2), (Charge::new(1, 3), -1));
    }

    #[test]
    fn orbit_v_charge_tracks_shift_powers() {
        // The sheaf charge equals the shift-matrix image of (1, 0) up to
        // the sign determined by the parity of the cohomological shift.
        for j in -9..=9i64 {
            let (c, s) = orbit_v(j);
            let raw = sigma_power(j, Charge::new(1, 0));
            let expect = if (s + 1).rem_euclid(2) == 0 {
                raw
            } else {
                raw.neg()
            };
            assert_eq!(c, expect, "j = {j}");
        }
    }
}
