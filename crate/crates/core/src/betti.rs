//! Closed-form graded Betti tables for the indecomposable MCM modules
//! over the coordinate ring of a smooth plane cubic.
//!
//! A module is described by a fundamental-domain charge plus a variant
//! flag resolving the two ambiguous rays (`d = 0` and `3r = 2d`), and
//! its Betti numbers fall into one of four window shapes.  Tables are
//! stored as the `i = 0, 1` window and extended to all homological
//! degrees by the two-periodicity law `beta[i+2][j] = beta[i][j-3]`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::charge::{in_domain3, reduce3, Charge, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("charge {0} is not in the fundamental domain")]
    OutsideDomain(Charge),
    #[error("variant {variant:?} is incompatible with charge {charge}")]
    VariantMismatch { charge: Charge, variant: Variant },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("invalid bundle parameters r = {r}, d = {d} (atiyah = {atiyah})")]
    InvalidBundle { r: i64, d: i64, atiyah: bool },
}

/// Which of the possible module families the descriptor denotes.
///
/// The rays `d = 0` and `3r = 2d` of the fundamental domain carry two
/// non-isomorphic families with the same charge, so the flag is
/// mandatory information: it is never guessed from the charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// A member of one of the two continuous families (any domain charge).
    Generic,
    /// The self-dual degree-zero bundle family; requires `d = 0`.
    Atiyah,
    /// The syzygy partners of the degree-zero family; requires `3r = 2d`.
    SpecialS,
}

/// A classified module: fundamental-domain charge, variant, and an
/// optional point label for members of the continuous families.
///
/// The label is carried verbatim for display only; every numerical
/// output of this crate is independent of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectDescriptor {
    charge: Charge,
    variant: Variant,
    lambda: Option<String>,
}

fn variant_compatible(charge: Charge, variant: Variant) -> bool {
    match variant {
        Variant::Generic => true,
        Variant::Atiyah => charge.d == 0,
        Variant::SpecialS => 3 * (charge.r as i128) == 2 * (charge.d as i128),
    }
}

impl ObjectDescriptor {
    pub fn new(
        charge: Charge,
        variant: Variant,
        lambda: Option<String>,
    ) -> Result<Self, BettiError> {
        if !in_domain3(charge) {
            return Err(BettiError::OutsideDomain(charge));
        }
        if !variant_compatible(charge, variant) {
            return Err(BettiError::VariantMismatch { charge, variant });
        }
        Ok(ObjectDescriptor {
            charge,
            variant,
            lambda,
        })
    }

    /// The degree-zero bundle of rank `r`.
    pub fn atiyah(r: i64) -> Result<Self, BettiError> {
        Self::new(Charge::new(r, 0), Variant::Atiyah, None)
    }

    /// The l-th member of the syzygy-partner family, charge `(2l, 3l)`.
    pub fn special(l: i64) -> Result<Self, BettiError> {
        Self::new(
            Charge::new(
                l.checked_mul(2).expect("charge overflow"),
                l.checked_mul(3).expect("charge overflow"),
            ),
            Variant::SpecialS,
            None,
        )
    }

    pub fn generic(r: i64, d: i64) -> Result<Self, BettiError> {
        Self::new(Charge::new(r, d), Variant::Generic, None)
    }

    pub fn generic_at(r: i64, d: i64, lambda: impl Into<String>) -> Result<Self, BettiError> {
        Self::new(Charge::new(r, d), Variant::Generic, Some(lambda.into()))
    }

    pub fn charge(&self) -> Charge {
        self.charge
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn lambda(&self) -> Option<&str> {
        self.lambda.as_deref()
    }
}

/// A sparse window of graded Betti numbers.
///
/// Only homological degrees `i = 0, 1` are stored (zeros omitted); all
/// other rows follow from `beta[i+2][j] = beta[i][j-3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    window: BTreeMap<(u8, i64), u64>,
}

impl BettiTable {
    /// Builds a table from `(i, j, count)` entries with `i` in `{0, 1}`.
    /// Zero counts are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (u8, i64, u64)>) -> Self {
        let mut window = BTreeMap::new();
        for (i, j, v) in entries {
            assert!(i < 2, "window stores homological degrees 0 and 1 only");
            if v > 0 {
                *window.entry((i, j)).or_insert(0) += v;
            }
        }
        BettiTable { window }
    }

    /// The Betti number at arbitrary `(i, j)`, folding through the
    /// periodicity law.
    pub fn at(&self, i: i64, j: i64) -> u64 {
        let i0 = i.rem_euclid(2);
        let m = (i - i0) / 2;
        match j.checked_sub(m.checked_mul(3).expect("degree overflow")) {
            Some(j0) => self.window.get(&(i0 as u8, j0)).copied().unwrap_or(0),
            None => 0,
        }
    }

    /// Stored window entries in `(i, j)` order.
    pub fn window(&self) -> impl Iterator<Item = (u8, i64, u64)> + '_ {
        self.window.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Degrees of the generators (row `i = 0`) with multiplicities,
    /// ascending.
    pub fn generator_degrees(&self) -> Vec<(i64, u64)> {
        self.row(0)
    }

    /// Degrees of the first syzygies (row `i = 1`) with multiplicities,
    /// ascending.
    pub fn relation_degrees(&self) -> Vec<(i64, u64)> {
        self.row(1)
    }

    fn row(&self, i: u8) -> Vec<(i64, u64)> {
        self.window
            .iter()
            .filter(|((wi, _), _)| *wi == i)
            .map(|(&(_, j), &v)| (j, v))
            .collect()
    }

    /// Total count in row `i`, i.e. the rank of the i-th free module.
    pub fn row_total(&self, i: i64) -> u64 {
        let i0 = i.rem_euclid(2) as u8;
        self.window
            .iter()
            .filter(|((wi, _), _)| *wi == i0)
            .map(|(_, &v)| v)
            .sum()
    }
}

/// Dimension of the space of global sections of an indecomposable
/// bundle of rank `r >= 1` and degree `d`: zero in negative degree, one
/// for the degree-zero self-extension family, `d` otherwise.
pub fn h0(r: i64, d: i64, is_atiyah: bool) -> Result<u64, BettiError> {
    if r < 1 || (is_atiyah && d != 0) {
        return Err(BettiError::InvalidBundle {
            r,
            d,
            atiyah: is_atiyah,
        });
    }
    Ok(if d < 0 {
        0
    } else if d == 0 {
        u64::from(is_atiyah)
    } else {
        d as u64
    })
}

/// First cohomology via duality: `h1(r, d) = h0(r, -d)`.
pub fn h1(r: i64, d: i64, is_atiyah: bool) -> Result<u64, BettiError> {
    if is_atiyah && d != 0 {
        return Err(BettiError::InvalidBundle {
            r,
            d,
            atiyah: is_atiyah,
        });
    }
    h0(r, d.checked_neg().expect("degree overflow"), is_atiyah)
}

fn pos(x: i128) -> u64 {
    if x > 0 {
        x as u64
    } else {
        0
    }
}

/// The Betti window of a descriptor.
///
/// The corner entries come from bundle cohomology: `beta[0][0]` and
/// `beta[1][3]` are the zeroth and first cohomology of the bundle
/// itself, `beta[1][2]` is the section count of its twisted dual.  The
/// middle column follows the three-case rule on the sign of `3r - 2d`,
/// with the special family contributing a single extra generator and
/// relation on the ray `3r = 2d`.
pub fn betti_table(desc: &ObjectDescriptor) -> BettiTable {
    let Charge { r, d } = desc.charge();
    let atiyah = desc.variant() == Variant::Atiyah;
    let b00 = h0(r, d, atiyah).expect("descriptor validated");
    let b13 = h1(r, d, atiyah).expect("descriptor validated");
    // Dual twisted by one degree: rank r, degree 3r - d > 0 in the domain.
    let dual_deg = 3 * (r as i128) - d as i128;
    let b12 = h0(r, i64::try_from(dual_deg).expect("degree overflow"), false)
        .expect("descriptor validated");
    let (b01, b11) = match desc.variant() {
        Variant::SpecialS => (1, 1),
        _ => (
            pos(3 * (r as i128) - 2 * (d as i128)),
            pos(2 * (d as i128) - 3 * (r as i128)),
        ),
    };
    BettiTable::from_entries([
        (0, 0, b00),
        (0, 1, b01),
        (1, 1, b11),
        (1, 2, b12),
        (1, 3, b13),
    ])
}

/// Betti table of a module with an arbitrary nonzero charge, reported
/// as the table of its fundamental-domain representative together with
/// the reduction exponent.
///
/// Convention: if the representative object is reached without picking
/// up cohomological shifts, the module's Betti numbers are
/// `table.at(i, j - k)`.  Charges whose natural representative is a
/// shifted complex (torsion classes, for instance) satisfy the same
/// identity only up to an even homological shift absorbed by the
/// periodicity fold; the cross-checks against explicit factorizations
/// pin the convention for the printed cases.
pub fn betti_general(c: Charge, variant: Variant) -> Result<(BettiTable, i64), BettiError> {
    let (k, rep) = reduce3(c)?;
    if !variant_compatible(rep, variant) {
        return Err(BettiError::VariantMismatch {
            charge: rep,
            variant,
        });
    }
    let desc = ObjectDescriptor::new(rep, variant, None)?;
    Ok((betti_table(&desc), i64::from(k)))
}

/// One homological position of a complete resolution: the degrees of
/// the free summands with multiplicities, ascending by degree.
pub type ResolutionStep = Vec<(i64, u64)>;

/// The segment `i = -steps ..= steps` of the two-periodic complete
/// resolution, as degree multisets per homological position.
pub fn complete_resolution(desc: &ObjectDescriptor, steps: u32) -> Vec<(i64, ResolutionStep)> {
    let table = betti_table(desc);
    let steps = i64::from(steps);
    (-steps..=steps)
        .map(|i| {
            let i0 = i.rem_euclid(2);
            let m = (i - i0) / 2;
            let step = table
                .window()
                .filter(|&(wi, _, _)| i64::from(wi) == i0)
                .map(|(_, j0, v)| (j0 + 3 * m, v))
                .collect();
            (i, step)
        })
        .collect()
}

/// The syzygy of a classified module, as a descriptor plus the internal
/// shift that makes the tables match:
/// `beta[i+1][j](desc) = table(desc').at(i, j - shift)` for all `i, j`.
///
/// On charges this is negation followed by reduction; the two
/// degree-zero ray families swap (same discrete index) and the
/// continuous families map to each other with the point label kept.
pub fn descriptor_syzygy(desc: &ObjectDescriptor) -> (ObjectDescriptor, i64) {
    let (k, rep) = reduce3(desc.charge().neg()).expect("descriptor charge is nonzero");
    let variant = match desc.variant() {
        Variant::Atiyah => Variant::SpecialS,
        Variant::SpecialS => Variant::Atiyah,
        Variant::Generic => Variant::Generic,
    };
    let image = ObjectDescriptor::new(rep, variant, desc.lambda.clone())
        .expect("syzygy image must be a valid descriptor");

    let source = betti_table(desc);
    let target = betti_table(&image);
    let shift = match_shift(&source, &target);
    debug_assert_eq!(
        shift,
        i64::from(k),
        "shift convention equals reduction exponent"
    );
    (image, shift)
}

/// Finds the unique internal shift s with
/// `source.at(i + 1, j) = target.at(i, j - s)` for all i, j.
fn match_shift(source: &BettiTable, target: &BettiTable) -> i64 {
    let matches =
        |s: i64| (0..2).all(|i| (-12..=12).all(|j| source.at(i + 1, j) == target.at(i, j - s)));
    let found: Vec<i64> = (-9..=9).filter(|&s| matches(s)).collect();
    match found.as_slice() {
        [s] => *s,
        other => panic!("syzygy shift not unique: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(entries: &[(u8, i64, u64)]) -> BettiTable {
        BettiTable::from_entries(entries.iter().copied())
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(1, 3, false), Ok(3));
        assert_eq!(h0(4, 0, true), Ok(1));
        assert_eq!(h0(2, 0, false), Ok(0));
        assert!(matches!(
            h0(0, 1, false),
            Err(BettiError::InvalidBundle { .. })
        ));
        assert!(matches!(
            h0(2, 1, true),
            Err(BettiError::InvalidBundle { .. })
        ));
    }

    #[test]
    fn euler_characteristic_is_degree() {
        for r in 1..=8i64 {
            for d in -25..=25i64 {
                let chi = h0(r, d, false).unwrap() as i64 - h1(r, d, false).unwrap() as i64;
                assert_eq!(chi, d);
            }
            let chi = h0(r, 0, true).unwrap() as i64 - h1(r, 0, true).unwrap() as i64;
            assert_eq!(chi, 0);
        }
    }

    #[test]
    fn descriptor_validation() {
        assert!(ObjectDescriptor::atiyah(3).is_ok());
        assert!(ObjectDescriptor::special(2).is_ok());
        assert!(ObjectDescriptor::generic(3, 5).is_ok());
        assert!(matches!(
            ObjectDescriptor::new(Charge::new(1, 1), Variant::Atiyah, None),
            Err(BettiError::VariantMismatch { .. })
        ));
        assert!(matches!(
            ObjectDescriptor::new(Charge::new(2, 2), Variant::SpecialS, None),
            Err(BettiError::VariantMismatch { .. })
        ));
        assert!(matches!(
            ObjectDescriptor::generic(1, 3),
            Err(BettiError::OutsideDomain(_))
        ));
    }

    #[test]
    fn table_examples() {
        let f2 = betti_table(&ObjectDescriptor::atiyah(2).unwrap());
        assert_eq!(f2, window(&[(0, 0, 1), (0, 1, 6), (1, 2, 6), (1, 3, 1)]));

        let s1 = betti_table(&ObjectDescriptor::special(1).unwrap());
        assert_eq!(s1, window(&[(0, 0, 3), (0, 1, 1), (1, 1, 1), (1, 2, 3)]));

        let g35 = betti_table(&ObjectDescriptor::generic(3, 5).unwrap());
        assert_eq!(g35, window(&[(0, 0, 5), (1, 1, 1), (1, 2, 4)]));
    }

    #[test]
    fn periodic_folding() {
        let f1 = betti_table(&ObjectDescriptor::atiyah(1).unwrap());
        assert_eq!(f1.at(2, 3), 1);
        assert_eq!(f1.at(3, 5), 3);
        assert_eq!(f1.at(0, 2), 0);
        assert_eq!(f1.at(-1, 0), 1); // beta[-1][0] = beta[1][3]
        assert_eq!(f1.at(-2, -2), 3); // beta[-2][-2] = beta[0][1]
    }

    #[test]
    fn vanishing_window() {
        // Within rows 0 and 1 the table is supported in -1..=3, the
        // degree-2 relation count is strictly positive, and the two
        // generator slots account for every generator.
        for r in 1..=6i64 {
            for d in 0..3 * r {
                let desc = ObjectDescriptor::generic(r, d).unwrap();
                let t = betti_table(&desc);
                for i in 0..2i64 {
                    for j in -30..=30i64 {
                        if !(-1..=3).contains(&j) {
                            assert_eq!(t.at(i, j), 0);
                        }
                    }
                }
                assert_eq!(t.at(0, -1), 0);
                assert!(t.at(1, 2) > 0);
                assert_eq!(t.at(0, 0) + t.at(0, 1), t.row_total(0));
            }
        }
    }

    #[test]
    fn betti_general_examples() {
        let g11 = betti_table(&ObjectDescriptor::generic(1, 1).unwrap());
        assert_eq!(
            betti_general(Charge::new(0, 1), Variant::Generic).unwrap(),
            (g11, 2)
        );

        let g10 = betti_table(&ObjectDescriptor::generic(1, 0).unwrap());
        assert_eq!(
            betti_general(Charge::new(1, 3), Variant::Generic).unwrap(),
            (g10, 2)
        );

        let s1 = betti_table(&ObjectDescriptor::special(1).unwrap());
        assert_eq!(
            betti_general(Charge::new(2, 3), Variant::SpecialS).unwrap(),
            (s1, 0)
        );

        assert!(matches!(
            betti_general(Charge::new(0, 0), Variant::Generic),
            Err(BettiError::Lattice(LatticeError::ZeroCharge))
        ));
        assert!(matches!(
            betti_general(Charge::new(0, 1), Variant::Atiyah),
            Err(BettiError::VariantMismatch { .. })
        ));
    }

    #[test]
    fn resolution_examples() {
        // Every position of the rank-one discrete family carries one
        // rank-1 summand and one rank-3 block, one degree apart.
        let f1 = ObjectDescriptor::atiyah(1).unwrap();
        let res = complete_resolution(&f1, 2);
        let expect: Vec<(i64, ResolutionStep)> = vec![
            (-2, vec![(-3, 1), (-2, 3)]),
            (-1, vec![(-1, 3), (0, 1)]),
            (0, vec![(0, 1), (1, 3)]),
            (1, vec![(2, 3), (3, 1)]),
            (2, vec![(3, 1), (4, 3)]),
        ];
        assert_eq!(res, expect);

        let g11 = ObjectDescriptor::generic(1, 1).unwrap();
        let res = complete_resolution(&g11, 1);
        for (_, step) in &res {
            let total: u64 = step.iter().map(|&(_, v)| v).sum();
            assert_eq!(total, 2);
        }
        assert_eq!(res[0].1, vec![(-1, 2)]);
        assert_eq!(res[1].1, vec![(0, 1), (1, 1)]);
        assert_eq!(res[2].1, vec![(2, 2)]);

        let s1 = ObjectDescriptor::special(1).unwrap();
        let res = complete_resolution(&s1, 0);
        assert_eq!(res, vec![(0, vec![(0, 3), (1, 1)])]);
    }

    #[test]
    fn syzygy_examples() {
        let (img, s) = descriptor_syzygy(&ObjectDescriptor::atiyah(1).unwrap());
        assert_eq!(img, ObjectDescriptor::special(1).unwrap());
        assert_eq!(s, 2);

        let (img, s) = descriptor_syzygy(&ObjectDescriptor::generic_at(1, 1, "p").unwrap());
        assert_eq!(img.charge(), Charge::new(1, 2));
        assert_eq!(img.variant(), Variant::Generic);
        assert_eq!(img.lambda(), Some("p"));
        assert_eq!(s, 2);

        let (img, s) = descriptor_syzygy(&ObjectDescriptor::generic(2, 1).unwrap());
        assert_eq!(img.charge(), Charge::new(3, 5));
        assert_eq!(s, 2);
    }

    #[test]
    fn syzygy_table_identity_and_involution() {
        for r in 1..=10i64 {
            for d in 0..3 * r {
                let mut descs = vec![ObjectDescriptor::generic(r, d).unwrap()];
                if d == 0 {
                    descs.push(ObjectDescriptor::atiyah(r).unwrap());
                }
                if 3 * r == 2 * d {
                    descs.push(ObjectDescriptor::special(r / 2).unwrap());
                }
                for desc in descs {
                    let table = betti_table(&desc);
                    let (img, s1) = descriptor_syzygy(&desc);
                    let img_table = betti_table(&img);
                    for i in 0..2i64 {
                        for j in -12..=12i64 {
                            assert_eq!(table.at(i + 1, j), img_table.at(i, j - s1));
                        }
                    }
                    // Twice a syzygy is the original, three degrees over.
                    let (back, s2) = descriptor_syzygy(&img);
                    assert_eq!(back.charge(), desc.charge());
                    assert_eq!(back.variant(), desc.variant());
                    assert_eq!(s1 + s2, 3);
                }
            }
        }
    }

    #[test]
    fn generator_accessors() {
        let s1 = betti_table(&ObjectDescriptor::special(1).unwrap());
        assert_eq!(s1.generator_degrees(), vec![(0, 3), (1, 1)]);
        assert_eq!(s1.relation_degrees(), vec![(1, 1), (2, 3)]);
        assert_eq!(s1.row_total(0), 4);
        assert_eq!(s1.row_total(5), 4);
    }
}
