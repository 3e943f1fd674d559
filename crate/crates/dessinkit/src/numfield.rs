//! Arithmetic in ℚ[α]/(P) for a monic irreducible P, and polynomials over
//! such a field.
//!
//! Irreducibility is certified at construction: degree 1 is trivial and a
//! quadratic or cubic is irreducible iff it has no rational root. Higher
//! degrees are rejected; nothing here needs them.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    p_add, p_degree, p_derivative, p_divmod, p_ext_gcd, p_eval, p_gcd, p_interpolate, p_monic,
    p_mul, p_neg, p_resultant, p_scale, p_squarefree_part, p_sub, p_trim, CoeffField, RatPoly,
    Rationals,
};

/// A number field ℚ[α]/(min_poly).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumberField {
    min_poly: RatPoly,
}

/// An element of a number field: a residue of degree < d, lowest first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NfElem {
    coeffs: Vec<BigRational>,
}

impl NumberField {
    /// Accepts a monic polynomial of degree 1..=3, certifying irreducibility
    /// by rational-root exclusion (sufficient up to cubics).
    pub fn new(min_poly: RatPoly) -> Result<Self> {
        let deg = min_poly.degree().ok_or(Error::InvalidModulus)?;
        if deg < 1 || !min_poly.leading().map_or(false, |c| c.is_one()) {
            return Err(Error::InvalidModulus);
        }
        if deg > 3 {
            return Err(Error::IrreducibilityUnverified(deg));
        }
        if deg >= 2 && !min_poly.rational_roots()?.is_empty() {
            return Err(Error::ReducibleModulus);
        }
        Ok(NumberField { min_poly })
    }

    /// The field defined by a not-necessarily-monic polynomial, stored monic.
    pub fn from_integer_poly(coeffs: &[i64]) -> Result<Self> {
        NumberField::new(RatPoly::from_ints(coeffs).monic()?)
    }

    pub fn min_poly(&self) -> &RatPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    /// The class of α.
    pub fn gen(&self) -> NfElem {
        if self.degree() == 1 {
            // α is rational: x + c ≡ 0 means α = -c
            return NfElem {
                coeffs: p_trim(&Rationals, vec![-self.min_poly.coeff(0)]),
            };
        }
        NfElem {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn elem_from_rational(&self, q: BigRational) -> NfElem {
        NfElem {
            coeffs: p_trim(&Rationals, vec![q]),
        }
    }

    fn reduce(&self, v: Vec<BigRational>) -> Vec<BigRational> {
        let v = p_trim(&Rationals, v);
        if p_degree(&v).map_or(true, |d| d < self.degree()) {
            return v;
        }
        let (_, r) = p_divmod(&Rationals, &v, self.min_poly.coeffs()).expect("monic modulus");
        r
    }
}

impl CoeffField for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { coeffs: Vec::new() }
    }

    fn one(&self) -> NfElem {
        NfElem {
            coeffs: vec![BigRational::one()],
        }
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.coeffs.is_empty()
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem {
            coeffs: p_add(&Rationals, &a.coeffs, &b.coeffs),
        }
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem {
            coeffs: p_sub(&Rationals, &a.coeffs, &b.coeffs),
        }
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem {
            coeffs: p_neg(&Rationals, &a.coeffs),
        }
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem {
            coeffs: self.reduce(p_mul(&Rationals, &a.coeffs, &b.coeffs)),
        }
    }

    fn inv(&self, a: &NfElem) -> Result<NfElem> {
        if a.coeffs.is_empty() {
            return Err(Error::NotInvertible);
        }
        let (g, s, _) = p_ext_gcd(&a.coeffs, self.min_poly.coeffs())?;
        if p_degree(&g) != Some(0) {
            // only possible for a reducible modulus
            return Err(Error::NotInvertible);
        }
        Ok(NfElem {
            coeffs: self.reduce(s),
        })
    }

    fn from_rational(&self, q: &BigRational) -> NfElem {
        self.elem_from_rational(q.clone())
    }
}

impl NfElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}a", c)?,
                _ => write!(f, "{}a^{}", c, k)?,
            }
        }
        Ok(())
    }
}

/// A polynomial with coefficients in a number field.
#[derive(Clone, PartialEq, Debug)]
pub struct NfPoly {
    pub field: NumberField,
    coeffs: Vec<NfElem>,
}

impl NfPoly {
    pub fn new(field: NumberField, coeffs: Vec<NfElem>) -> Self {
        let coeffs = p_trim(&field, coeffs);
        NfPoly { field, coeffs }
    }

    pub fn zero(field: NumberField) -> Self {
        NfPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: NumberField, c: NfElem) -> Self {
        NfPoly::new(field.clone(), vec![c])
    }

    /// The monomial `z`.
    pub fn x(field: NumberField) -> Self {
        let one = field.one();
        let zero = field.zero();
        NfPoly::new(field, vec![zero, one])
    }

    /// Lifts a rational polynomial into the field.
    pub fn from_ratpoly(field: NumberField, p: &RatPoly) -> Self {
        let coeffs = p.coeffs().iter().map(|c| field.from_rational(c)).collect();
        NfPoly::new(field, coeffs)
    }

    pub fn coeffs(&self) -> &[NfElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        p_degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &NfPoly) -> NfPoly {
        self.check(other);
        NfPoly {
            field: self.field.clone(),
            coeffs: p_add(&self.field, &self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &NfPoly) -> NfPoly {
        self.check(other);
        NfPoly {
            field: self.field.clone(),
            coeffs: p_sub(&self.field, &self.coeffs, &other.coeffs),
        }
    }

    pub fn mul(&self, other: &NfPoly) -> NfPoly {
        self.check(other);
        NfPoly {
            field: self.field.clone(),
            coeffs: p_mul(&self.field, &self.coeffs, &other.coeffs),
        }
    }

    pub fn pow(&self, k: u32) -> NfPoly {
        let mut acc = NfPoly::constant(self.field.clone(), self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> NfPoly {
        NfPoly {
            field: self.field.clone(),
            coeffs: p_derivative(&self.field, &self.coeffs),
        }
    }

    pub fn divmod(&self, d: &NfPoly) -> Result<(NfPoly, NfPoly)> {
        self.check(d);
        let (q, r) = p_divmod(&self.field, &self.coeffs, &d.coeffs)?;
        Ok((
            NfPoly {
                field: self.field.clone(),
                coeffs: q,
            },
            NfPoly {
                field: self.field.clone(),
                coeffs: r,
            },
        ))
    }

    pub fn gcd(&self, other: &NfPoly) -> Result<NfPoly> {
        self.check(other);
        Ok(NfPoly {
            field: self.field.clone(),
            coeffs: p_gcd(&self.field, &self.coeffs, &other.coeffs)?,
        })
    }

    pub fn squarefree_part(&self) -> Result<NfPoly> {
        Ok(NfPoly {
            field: self.field.clone(),
            coeffs: p_squarefree_part(&self.field, &self.coeffs)?,
        })
    }

    pub fn monic(&self) -> Result<NfPoly> {
        Ok(NfPoly {
            field: self.field.clone(),
            coeffs: p_monic(&self.field, &self.coeffs)?,
        })
    }

    pub fn resultant(&self, other: &NfPoly) -> Result<NfElem> {
        self.check(other);
        p_resultant(&self.field, &self.coeffs, &other.coeffs)
    }

    pub fn eval(&self, t: &NfElem) -> NfElem {
        p_eval(&self.field, &self.coeffs, t)
    }

    pub fn scale(&self, s: &NfElem) -> NfPoly {
        NfPoly {
            field: self.field.clone(),
            coeffs: p_scale(&self.field, &self.coeffs, s),
        }
    }

    fn check(&self, other: &NfPoly) {
        assert_eq!(
            self.field, other.field,
            "operands come from different number fields"
        );
    }
}

/// Interpolation in K[y] through rational nodes.
pub fn nf_interpolate(field: &NumberField, points: &[(BigRational, NfElem)]) -> NfPoly {
    let pts: Vec<(NfElem, NfElem)> = points
        .iter()
        .map(|(x, y)| (field.from_rational(x), y.clone()))
        .collect();
    NfPoly {
        field: field.clone(),
        coeffs: p_interpolate(field, &pts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn corpus_field() -> NumberField {
        // 25x^3 - 12x^2 - 24x - 16, stored monic
        NumberField::from_integer_poly(&[-16, -24, -12, 25]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(corpus_field().min_poly().leading().unwrap().is_one());
        assert_eq!(corpus_field().degree(), 3);
        // x^2 - 1 factors
        assert!(matches!(
            NumberField::new(RatPoly::from_ints(&[-1, 0, 1])),
            Err(Error::ReducibleModulus)
        ));
        // degree 4 is not certified
        assert!(matches!(
            NumberField::new(RatPoly::from_ints(&[2, 0, 0, 0, 1])),
            Err(Error::IrreducibilityUnverified(4))
        ));
        // non-monic rejected
        assert!(NumberField::new(RatPoly::from_ints(&[1, 2])).is_err());
        assert!(NumberField::new(RatPoly::from_ints(&[5])).is_err());
    }

    #[test]
    fn generator_satisfies_min_poly() {
        let k = corpus_field();
        let a = k.gen();
        // evaluate the monic min poly at α
        let mp = NfPoly::from_ratpoly(k.clone(), k.min_poly());
        assert!(k.is_zero(&mp.eval(&a)));
    }

    #[test]
    fn inverse_round_trip() {
        let k = corpus_field();
        let a = k.gen();
        let a2 = k.mul(&a, &a);
        let mut e = k.add(&a2, &k.from_rational(&BigRational::new(BigInt::from(7), BigInt::from(3))));
        e = k.sub(&e, &a);
        let inv = k.inv(&e).unwrap();
        assert_eq!(k.mul(&e, &inv), k.one());
        // (a·b)·a⁻¹ = b
        let b = k.add(&a, &k.one());
        let ab = k.mul(&e, &b);
        assert_eq!(k.mul(&ab, &k.inv(&e).unwrap()), b);
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn degree_one_field_is_rational() {
        let k = NumberField::new(RatPoly::from_ints(&[-5, 1])).unwrap();
        let a = k.gen();
        assert!(a.is_rational());
        assert_eq!(a.coeffs()[0], BigRational::from_integer(BigInt::from(5)));
    }

    #[test]
    fn nf_poly_arithmetic() {
        let k = corpus_field();
        let z = NfPoly::x(k.clone());
        let one = NfPoly::constant(k.clone(), k.one());
        // (z + 1)^2 = z^2 + 2z + 1
        let sq = z.add(&one).pow(2);
        assert_eq!(sq.degree(), Some(2));
        let two = k.from_rational(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(sq.coeffs()[1], two);
        // divmod by a monic quadratic
        let (q, r) = sq.divmod(&sq).unwrap();
        assert_eq!(q.degree(), Some(0));
        assert!(r.is_zero());
    }
}
