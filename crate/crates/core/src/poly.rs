//! Sparse exact multivariate polynomials.
//!
//! Terms are kept in a map ordered by graded lexicographic order with
//! the first variable most significant; canonical (display and
//! serialization) order is the descending one, leading term first.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands have different variable counts ({left} vs {right})")]
    ArityMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 3 is not supported")]
    UnsupportedCharacteristic,
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("matrix dimensions do not match ({0}x{1} vs {2}x{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix entry ({0}, {1}) is not homogeneous")]
    NotHomogeneous(usize, usize),
    #[error("degree constraints are inconsistent at entry ({0}, {1})")]
    InconsistentGrading(usize, usize),
}

/// An exponent vector, ordered by total degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The `idx`-th variable.
    pub fn variable(field: Field, nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut exps = vec![0u32; nvars];
        exps[idx] = 1;
        Self::from_terms(field, nvars, [(Monomial::new(exps), field.one())])
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), nvars, "exponent arity mismatch");
            assert_eq!(c.field(), field, "coefficient field mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("same field by construction");
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2)?);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<MultiPoly, PolyError> {
        if c.field() != self.field {
            return Err(PolyError::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Self::zero(self.field, self.nvars));
        }
        Ok(MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| Ok((m.clone(), v.mul(c)?)))
                .collect::<Result<_, PolyError>>()?,
        })
    }

    /// Evaluates at a point of matching arity.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        for v in point {
            if v.field() != self.field {
                return Err(PolyError::FieldMismatch);
            }
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term = term.mul(&v.pow(e))?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Whether all terms share one total degree.  The zero polynomial
    /// is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> PolyDisplay<'a> {
        assert_eq!(names.len(), self.nvars);
        PolyDisplay { poly: self, names }
    }
}

/// Helper for rendering a polynomial with explicit variable names.
pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [&'a str],
}

impl std::fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", c.neg())
            } else {
                ("+", c.clone())
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let is_const = m.degree() == 0;
            let mut wrote_factor = false;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                wrote_factor = true;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(
            f,
            "{}",
            PolyDisplay {
                poly: self,
                names: &refs
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::variable(Field::Rational, 3, i)
    }

    #[test]
    fn difference_of_squares() {
        let sum = x(0).add(&x(1)).unwrap();
        let diff = x(0).sub(&x(1)).unwrap();
        let prod = sum.mul(&diff).unwrap();
        let expect = x(0)
            .mul(&x(0))
            .unwrap()
            .sub(&x(1).mul(&x(1)).unwrap())
            .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn fermat_vanishes_at_inflection() {
        let f = x(0)
            .mul(&x(0))
            .unwrap()
            .mul(&x(0))
            .unwrap()
            .add(&x(1).mul(&x(1)).unwrap().mul(&x(1)).unwrap())
            .unwrap()
            .add(&x(2).mul(&x(2)).unwrap().mul(&x(2)).unwrap())
            .unwrap();
        let pt = [
            Field::Rational.from_integer(0),
            Field::Rational.from_integer(-1),
            Field::Rational.from_integer(1),
        ];
        assert!(f.eval(&pt).unwrap().is_zero());
    }

    #[test]
    fn homogeneity_and_degree() {
        let p = x(0).mul(&x(0)).unwrap().add(&x(1)).unwrap();
        assert!(!p.is_homogeneous());
        assert_eq!(p.degree(), Some(2));
        assert!(x(0).is_homogeneous());
        let zero = MultiPoly::zero(Field::Rational, 3);
        assert!(zero.is_homogeneous());
        assert_eq!(zero.degree(), None);
    }

    #[test]
    fn arity_and_field_errors() {
        let p2 = MultiPoly::variable(Field::Rational, 2, 0);
        assert_eq!(
            x(0).add(&p2),
            Err(PolyError::ArityMismatch { left: 3, right: 2 })
        );
        let p7 = MultiPoly::variable(Field::prime(7).unwrap(), 3, 0);
        assert_eq!(x(0).add(&p7), Err(PolyError::FieldMismatch));
        assert!(matches!(
            x(0).eval(&[Field::Rational.zero()]),
            Err(PolyError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn canonical_term_order() {
        // Descending graded lex: x0^3, then x0*x1*x2, then x1^3, x2^3.
        let f = Field::Rational;
        let fermat_plus = MultiPoly::from_terms(
            f,
            3,
            [
                (Monomial::new(vec![0, 0, 3]), f.one()),
                (Monomial::new(vec![1, 1, 1]), f.from_integer(2)),
                (Monomial::new(vec![3, 0, 0]), f.one()),
                (Monomial::new(vec![0, 3, 0]), f.one()),
            ],
        );
        let order: Vec<Vec<u32>> = fermat_plus
            .terms()
            .map(|(m, _)| m.exponents().to_vec())
            .collect();
        assert_eq!(
            order,
            vec![vec![3, 0, 0], vec![1, 1, 1], vec![0, 3, 0], vec![0, 0, 3]]
        );
        assert_eq!(fermat_plus.to_string(), "x0^3 + 2*x0*x1*x2 + x1^3 + x2^3");
    }

    #[test]
    fn display_signs_and_units() {
        let f = Field::Rational;
        let p = MultiPoly::from_terms(
            f,
            2,
            [
                (Monomial::new(vec![2, 0]), f.from_integer(1)),
                (Monomial::new(vec![1, 1]), f.from_integer(-3)),
                (
                    Monomial::new(vec![0, 0]),
                    Scalar::from_rational(1, 2).unwrap(),
                ),
            ],
        );
        assert_eq!(p.to_string(), "x0^2 - 3*x0*x1 + 1/2");
        assert_eq!(MultiPoly::zero(f, 2).to_string(), "0");
    }

    fn small_poly(field: Field) -> impl Strategy<Value = MultiPoly> {
        let coeff = match field {
            Field::Rational => (-6i64..=6).boxed(),
            Field::Prime(p) => (0i64..p as i64).boxed(),
        };
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), coeff), 0..5).prop_map(
            move |terms| {
                MultiPoly::from_terms(
                    field,
                    3,
                    terms.into_iter().map(|((a, b, c), v)| {
                        (Monomial::new(vec![a, b, c]), field.from_integer(v))
                    }),
                )
            },
        )
    }

    fn both_fields() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap()),]
    }

    proptest! {
        #[test]
        fn ring_axioms((p, q, r) in both_fields().prop_flat_map(|f| {
            (small_poly(f), small_poly(f), small_poly(f))
        })) {
            // Associativity and distributivity.
            let ab_c = p.mul(&q).unwrap().mul(&r).unwrap();
            let a_bc = p.mul(&q.mul(&r).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = p.mul(&q.add(&r).unwrap()).unwrap();
            let rhs = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let comm = q.mul(&p).unwrap();
            prop_assert_eq!(p.mul(&q).unwrap(), comm);
        }

        #[test]
        fn eval_is_ring_homomorphism(
            (p, q, pt) in both_fields().prop_flat_map(|f| {
                (small_poly(f), small_poly(f),
                 proptest::collection::vec(-5i64..=5, 3).prop_map(move |v| {
                     v.into_iter().map(|n| f.from_integer(n)).collect::<Vec<_>>()
                 }))
            })
        ) {
            let prod_eval = p.mul(&q).unwrap().eval(&pt).unwrap();
            let eval_prod = p.eval(&pt).unwrap().mul(&q.eval(&pt).unwrap()).unwrap();
            prop_assert_eq!(prod_eval, eval_prod);
            let sum_eval = p.add(&q).unwrap().eval(&pt).unwrap();
            let eval_sum = p.eval(&pt).unwrap().add(&q.eval(&pt).unwrap()).unwrap();
            prop_assert_eq!(sum_eval, eval_sum);
        }
    }
}
