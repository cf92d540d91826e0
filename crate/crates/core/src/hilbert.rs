//! Hilbert series and numerical invariants of the classified modules.
//!
//! From a Betti window the alternating generator/relation polynomial
//! `B(t)` determines the Hilbert series as `B(t) / (1-t)^3`; dividing
//! one factor out gives the numerator `P(t)` over `(1-t)^2`, and from
//! `P` we read off multiplicity, minimal generators and module rank.

use crate::betti::{betti_table, BettiError, ObjectDescriptor, Variant};
use crate::charge::{reduce3, Charge};

/// A small integer polynomial in one variable, dense coefficients,
/// index = exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .expect("polynomial evaluation overflow")
        })
    }

    /// Exact quotient by `1 - t`, or `None` when the division leaves a
    /// remainder (equivalently, when the value at 1 is nonzero).
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        // If q * (1 - t) = B then q_k = B_0 + ... + B_k; the division is
        // exact exactly when the full prefix sum vanishes.
        let mut acc = 0i64;
        let mut q = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            acc = acc.checked_add(c).expect("polynomial overflow");
            q.push(acc);
        }
        if acc != 0 {
            return None;
        }
        q.pop();
        Some(IntPoly::new(q))
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Hilbert-series data of a classified module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// `B(t)`: generator degrees minus relation degrees.
    pub alternating: IntPoly,
    /// `P(t) = B(t) / (1 - t)`; the Hilbert series is `P(t) / (1-t)^2`.
    pub numerator: IntPoly,
    /// Multiplicity `e = P(1)`.
    pub multiplicity: u64,
    /// Minimal number of generators, the sum of the generator row.
    pub min_generators: u64,
    /// Module rank `e / 3`.  Distinct from the rank of the bundle.
    pub module_rank: u64,
}

/// Computes `B`, `P`, multiplicity, generator count and module rank for
/// a descriptor.
pub fn hilbert_data(desc: &ObjectDescriptor) -> HilbertData {
    let table = betti_table(desc);
    let mut coeffs = vec![0i64; 5];
    for (i, j, v) in table.window() {
        assert!(
            j >= 0,
            "descriptor windows are supported in nonnegative degrees"
        );
        let v = i64::try_from(v).expect("betti number overflow");
        let sign = if i == 0 { 1 } else { -1 };
        coeffs[j as usize] += sign * v;
    }
    let alternating = IntPoly::new(coeffs);
    let numerator = alternating
        .div_one_minus_t()
        .expect("alternating Betti polynomial must vanish at 1");
    let e = numerator.eval(1);
    assert!(
        e > 0 && e % 3 == 0,
        "multiplicity must be a positive multiple of 3"
    );
    let mu: u64 = table.generator_degrees().iter().map(|&(_, v)| v).sum();
    HilbertData {
        alternating,
        numerator,
        multiplicity: e as u64,
        min_generators: mu,
        module_rank: (e / 3) as u64,
    }
}

/// Dimensions of the graded pieces `M_0, ..., M_n`, by expanding
/// `P(t) / (1 - t)^2`.
pub fn hilbert_coefficients(desc: &ObjectDescriptor, n: u32) -> Vec<u64> {
    let p = hilbert_data(desc).numerator;
    (0..=i64::from(n))
        .map(|k| {
            let mut dim = 0i64;
            for (m, &c) in p.coeffs().iter().enumerate() {
                let m = m as i64;
                if m <= k {
                    dim += c * (k - m + 1);
                }
            }
            u64::try_from(dim).expect("negative Hilbert function value")
        })
        .collect()
}

/// Whether the module is maximally generated (generator count equals
/// multiplicity).  Inside the fundamental domain this happens exactly
/// for the continuous family on the ray `d = 0`.
pub fn is_ulrich(desc: &ObjectDescriptor) -> bool {
    let data = hilbert_data(desc);
    data.min_generators == data.multiplicity
}

/// Ulrich test for an arbitrary nonzero charge.
///
/// The variant flag describes the fundamental-domain representative of
/// the charge; for the boundary family `d = 3r` the representative has
/// degree zero, and the test is true precisely when that representative
/// is not the degree-zero self-extension family.  Both the generator
/// count and the multiplicity are invariant under internal shifts, so
/// the reduction loses nothing.
pub fn is_ulrich_charge(c: Charge, variant: Variant) -> Result<bool, BettiError> {
    let (_, rep) = reduce3(c)?;
    let desc = ObjectDescriptor::new(rep, variant, None)?;
    Ok(is_ulrich(&desc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::ObjectDescriptor;

    #[test]
    fn int_poly_division() {
        // 1 + 3t - 3t^2 - t^3 = (1 - t)(1 + 4t + t^2)
        let b = IntPoly::new(vec![1, 3, -3, -1]);
        assert_eq!(b.div_one_minus_t(), Some(IntPoly::new(vec![1, 4, 1])));
        assert_eq!(IntPoly::new(vec![1, 1]).div_one_minus_t(), None);
        assert_eq!(IntPoly::zero().div_one_minus_t(), Some(IntPoly::zero()));
    }

    #[test]
    fn int_poly_display() {
        assert_eq!(IntPoly::new(vec![1, 4, 1]).to_string(), "1 + 4t + t^2");
        assert_eq!(IntPoly::new(vec![0, 3]).to_string(), "3t");
        assert_eq!(IntPoly::new(vec![6, 6]).to_string(), "6 + 6t");
        assert_eq!(IntPoly::new(vec![1, 0, -2]).to_string(), "1 - 2t^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn hilbert_rows() {
        let f1 = hilbert_data(&ObjectDescriptor::atiyah(1).unwrap());
        assert_eq!(f1.numerator, IntPoly::new(vec![1, 4, 1]));
        assert_eq!(f1.multiplicity, 6);
        assert_eq!(f1.min_generators, 4);
        assert_eq!(f1.module_rank, 2);

        let s2 = hilbert_data(&ObjectDescriptor::special(2).unwrap());
        assert_eq!(s2.numerator, IntPoly::new(vec![6, 6]));
        assert_eq!(s2.multiplicity, 12);
        assert_eq!(s2.min_generators, 7);
        assert_eq!(s2.module_rank, 4);

        let g11 = hilbert_data(&ObjectDescriptor::generic(1, 1).unwrap());
        assert_eq!(g11.numerator, IntPoly::new(vec![1, 2]));
        assert_eq!(g11.multiplicity, 3);
        assert_eq!(g11.min_generators, 2);
        assert_eq!(g11.module_rank, 1);
    }

    #[test]
    fn hilbert_identities_sampled() {
        for r in 1..=12i64 {
            for d in 0..3 * r {
                let mut descs = vec![ObjectDescriptor::generic(r, d).unwrap()];
                if d == 0 {
                    descs.push(ObjectDescriptor::atiyah(r).unwrap());
                }
                if 3 * r == 2 * d {
                    descs.push(ObjectDescriptor::special(r / 2).unwrap());
                }
                for desc in descs {
                    let data = hilbert_data(&desc);
                    assert_eq!(data.alternating.eval(1), 0);
                    assert_eq!(data.multiplicity, 3 * data.module_rank);
                    assert_eq!(data.numerator.eval(1), data.multiplicity as i64);
                }
            }
        }
    }

    #[test]
    fn coefficient_expansion() {
        let g10 = ObjectDescriptor::generic(1, 0).unwrap();
        assert_eq!(hilbert_coefficients(&g10, 3), vec![0, 3, 6, 9]);

        let f1 = ObjectDescriptor::atiyah(1).unwrap();
        assert_eq!(hilbert_coefficients(&f1, 2), vec![1, 6, 12]);

        let g21 = ObjectDescriptor::generic(2, 1).unwrap();
        assert_eq!(hilbert_coefficients(&g21, 2), vec![1, 7, 13]);
    }

    #[test]
    fn module_sections_match_bundle_sections() {
        use crate::betti::h0;
        for r in 1..=6i64 {
            for d in 1..3 * r {
                if 3 * r - 2 * d <= 0 {
                    continue;
                }
                let desc = ObjectDescriptor::generic(r, d).unwrap();
                let coeffs = hilbert_coefficients(&desc, 6);
                for (k, &dim) in coeffs.iter().enumerate() {
                    let twisted = d + 3 * r * k as i64;
                    assert_eq!(dim, h0(r, twisted, false).unwrap());
                }
            }
        }
    }

    #[test]
    fn ulrich_classification() {
        assert!(is_ulrich(&ObjectDescriptor::generic(1, 0).unwrap()));
        assert!(is_ulrich(&ObjectDescriptor::generic(4, 0).unwrap()));
        for r in 1..=8 {
            assert!(!is_ulrich(&ObjectDescriptor::atiyah(r).unwrap()));
        }
        assert!(!is_ulrich(&ObjectDescriptor::special(1).unwrap()));
        assert!(!is_ulrich(&ObjectDescriptor::generic(2, 1).unwrap()));

        // Boundary family d = 3r: Ulrich unless the representative is
        // the degree-zero self-extension family.
        for r in 1..=8 {
            let c = Charge::new(r, 3 * r);
            assert!(is_ulrich_charge(c, Variant::Generic).unwrap());
            assert!(!is_ulrich_charge(c, Variant::Atiyah).unwrap());
        }
    }
}
