//! Critical values of polynomial maps and the polynomial-composition
//! pipeline that turns any nonconstant rational polynomial into one whose
//! finite critical values all lie in {0, 1}.
//!
//! The pipeline composes three kinds of maps:
//!   1. the tracker chain: while irrational critical values remain, compose
//!      with their (squarefree, monic) minimal-polynomial product, which
//!      sends them to 0 and strictly drops the tracker degree;
//!   2. nothing at all when only rationals remain;
//!   3. a consolidator that folds a finite rational point set into {0, 1}
//!      with affine maps, the `(m+n)^(m+n)/(m^m n^n) x^m (1-x)^n` step, and
//!      a final quadratic.
//! Everything is exact big-rational arithmetic; there are no tolerances.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numfield::{nf_interpolate, NfPoly};
use crate::poly::{CoeffField, RatPoly};

/// Squarefree description of the finite critical values of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalReport {
    /// Monic squarefree polynomial whose roots are exactly the finite
    /// critical values (the constant 1 when there are none).
    pub critvals_sqfree: RatPoly,
    /// The rational critical values, ascending.
    pub rational_values: Vec<BigRational>,
    /// Product of the irreducible factors of degree >= 2, monic.
    pub nonrational_factor: RatPoly,
}

/// Critical values of `f` as the squarefree part of `Res_x(f′(x), y − f(x))`,
/// computed by evaluation and interpolation in `y`.
pub fn critical_values(f: &RatPoly) -> Result<CriticalReport> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 1 {
        return Err(Error::ZeroPolynomial);
    }
    let df = f.derivative();
    let ddeg = df.degree().expect("derivative of nonconstant poly over Q");
    // Res_x(f', y − f) has y-degree exactly deg f'; sample and interpolate.
    let mut points = Vec::with_capacity(ddeg + 1);
    for k in 0..=ddeg {
        let y0 = BigRational::from_integer(BigInt::from(k as i64));
        let shifted = &RatPoly::constant(y0.clone()) - f;
        points.push((y0, df.resultant(&shifted)?));
    }
    let resultant_in_y = RatPoly::from_coeffs(crate::poly::p_interpolate(
        &crate::poly::Rationals,
        &points,
    ));
    let critvals_sqfree = if resultant_in_y.is_zero() {
        // f' and y − f share a factor only if f' = 0, impossible here
        unreachable!("resultant of coprime-in-x polynomials is nonzero")
    } else {
        resultant_in_y.squarefree_part()?
    };
    let rational_values: Vec<BigRational> = critvals_sqfree
        .rational_roots()?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let mut nonrational = critvals_sqfree.clone();
    for r in &rational_values {
        let lin = RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
        let (q, rem) = nonrational.divmod(&lin)?;
        debug_assert!(rem.is_zero());
        nonrational = q;
    }
    Ok(CriticalReport {
        critvals_sqfree,
        rational_values,
        nonrational_factor: nonrational.monic()?,
    })
}

/// True iff every finite critical value of `f` lies in {0, 1}: every root of
/// `f′` is a root of `f·(f − 1)`, i.e. the squarefree part of `f′` divides
/// `f·(f − 1)`.
pub fn is_belyi_polynomial(f: &RatPoly) -> Result<bool> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 1 {
        return Err(Error::ZeroPolynomial);
    }
    if deg == 1 {
        return Ok(true);
    }
    let c = f.derivative().squarefree_part()?;
    let target = f * &(f - &RatPoly::one());
    target.divisible_by(&c)
}

/// The number-field version, by the resultant route: the squarefree part of
/// `Res_z(f′, y − f)` over K must divide `y(y − 1)`.
pub fn is_belyi_over_number_field(f: &NfPoly) -> Result<bool> {
    let deg = match f.degree() {
        None | Some(0) => return Err(Error::ZeroPolynomial),
        Some(d) => d,
    };
    if deg == 1 {
        return Ok(true);
    }
    let field = f.field.clone();
    let df = f.derivative();
    let ddeg = df.degree().expect("nonconstant over a field of char 0");
    let mut points = Vec::with_capacity(ddeg + 1);
    for k in 0..=ddeg {
        let y0 = BigRational::from_integer(BigInt::from(k as i64));
        let shifted = NfPoly::constant(field.clone(), field.from_rational(&y0)).sub(f);
        points.push((y0, df.resultant(&shifted)?));
    }
    let res_in_y = nf_interpolate(&field, &points);
    let sf = res_in_y.squarefree_part()?;
    // y(y−1) in K[y]
    let y = NfPoly::x(field.clone());
    let one = NfPoly::constant(field.clone(), field.one());
    let target = y.mul(&y.sub(&one));
    let (_, rem) = target.divmod(&sf)?;
    Ok(rem.is_zero())
}

/// Iterates the tracker: composes each current squarefree minimal-polynomial
/// product onto the map, splitting every rational value that appears into an
/// accumulating special set. Returns the composition chain (degrees strictly
/// decreasing) and the accumulated rationals.
pub fn reduce_to_rational(m: &RatPoly) -> Result<(Vec<RatPoly>, Vec<BigRational>)> {
    let deg = m.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 1 {
        return Err(Error::ZeroPolynomial);
    }
    debug_assert!(
        m.gcd(&m.derivative()).map_or(true, |g| g.degree() == Some(0)),
        "tracker input must be squarefree"
    );
    let mut rationals: BTreeSet<BigRational> = BTreeSet::new();
    let mut tracker = m.monic()?;
    // split any rational roots of the input itself
    for (r, _) in tracker.rational_roots()? {
        let lin = RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
        tracker = tracker.divmod(&lin)?.0;
        rationals.insert(r);
    }
    let mut chain = Vec::new();
    while tracker.degree().map_or(false, |d| d >= 1) {
        let g = tracker.monic()?;
        // all tracked rationals move through g; the roots of g land on 0
        rationals = rationals.iter().map(|r| g.eval(r)).collect();
        rationals.insert(BigRational::zero());
        let report = critical_values(&g)?;
        for r in report.rational_values {
            rationals.insert(r);
        }
        let next = report.nonrational_factor;
        debug_assert!(
            next.degree().unwrap_or(0) < g.degree().unwrap(),
            "tracker degree must strictly decrease"
        );
        chain.push(g);
        tracker = next;
    }
    Ok((chain, rationals.into_iter().collect()))
}

/// Largest folding-step degree the consolidator will materialize. The step
/// degree is the denominator of the normalized middle point, which grows
/// with the height of the tracked rationals; beyond this the composite
/// polynomial is not realistically representable.
pub const PMN_DEGREE_CAP: u64 = 2000;

/// The `(m+n)^(m+n) / (m^m n^n) · x^m (1-x)^n` map: sends 0 and 1 to 0,
/// `m/(m+n)` to 1, and has no other finite critical value.
pub fn pmn_step(m: u64, n: u64) -> RatPoly {
    assert!(m >= 1 && n >= 1);
    let big = |v: u64| BigInt::from(v);
    let scale = BigRational::new(big(m + n).pow((m + n) as u32), big(m).pow(m as u32) * big(n).pow(n as u32));
    let x = RatPoly::x();
    let one_minus_x = &RatPoly::one() - &x;
    &RatPoly::constant(scale) * &(&x.pow(m as u32) * &one_minus_x.pow(n as u32))
}

/// Builds one polynomial mapping every point of `set` into {0, 1} with all
/// finite critical values in {0, 1}: repeated affine normalization (least
/// and third-least points to 0 and 1) followed by a `pmn_step`, and a final
/// `-4x(x-1)` quadratic once two points remain.
pub fn consolidate_rationals(set: &[BigRational]) -> Result<RatPoly> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut cur: BTreeSet<BigRational> = set.iter().cloned().collect();
    let mut h = RatPoly::x();
    let zero = BigRational::zero();
    let one = BigRational::one();
    loop {
        let extra: Vec<&BigRational> =
            cur.iter().filter(|v| **v != zero && **v != one).collect();
        if extra.is_empty() {
            return Ok(h);
        }
        let points: Vec<BigRational> = cur.iter().cloned().collect();
        let step = match points.len() {
            1 => {
                // single point q ∉ {0,1}: send it to 0
                RatPoly::from_coeffs(vec![-points[0].clone(), BigRational::one()])
            }
            2 => {
                // affine to {0,1}, then -4x(x-1) folds both onto 0 and the
                // midpoint onto 1
                let (q1, q2) = (&points[0], &points[1]);
                let scale = (q2 - q1).recip();
                let affine =
                    RatPoly::from_coeffs(vec![-q1 * &scale, scale]);
                let quad = RatPoly::from_coeffs(vec![
                    BigRational::zero(),
                    BigRational::from_integer(4.into()),
                    BigRational::from_integer((-4).into()),
                ]);
                quad.compose(&affine)
            }
            _ => {
                let (q1, q2, q3) = (&points[0], &points[1], &points[2]);
                let scale = (q3 - q1).recip();
                // image of the middle point, in lowest terms m/(m+n)
                let lambda = (q2 - q1) * &scale;
                let affine = RatPoly::from_coeffs(vec![-q1 * &scale, scale]);
                debug_assert!(lambda.is_positive() && lambda < BigRational::one());
                let too_big = || Error::BelyiDegreeTooLarge {
                    denominator: lambda.denom().to_string(),
                    point: lambda.to_string(),
                };
                if lambda.denom() > &BigInt::from(PMN_DEGREE_CAP) {
                    return Err(too_big());
                }
                let m = u64::try_from(lambda.numer()).map_err(|_| too_big())?;
                let n = u64::try_from(&(lambda.denom() - lambda.numer())).map_err(|_| too_big())?;
                pmn_step(m, n).compose(&affine)
            }
        };
        cur = cur.iter().map(|v| step.eval(v)).collect();
        if points.len() == 2 {
            cur.insert(BigRational::one());
        }
        h = step.compose(&h);
    }
}

/// A full reduction: the tracker chain, the consolidated rational special
/// set, the consolidator, and the final polynomial.
#[derive(Clone, Debug)]
pub struct BelyiReduction {
    pub chain: Vec<RatPoly>,
    pub special_set: Vec<BigRational>,
    pub consolidator: RatPoly,
    pub result: RatPoly,
}

/// Composes `consolidator ∘ chain ∘ f` so that the result's finite critical
/// values all lie in {0, 1}.
pub fn belyi_reduce(f: &RatPoly) -> Result<RatPoly> {
    Ok(belyi_reduce_detailed(f)?.result)
}

pub fn belyi_reduce_detailed(f: &RatPoly) -> Result<BelyiReduction> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 1 {
        return Err(Error::ZeroPolynomial);
    }
    let report = critical_values(f)?;
    let (chain, chain_rationals) =
        if report.nonrational_factor.degree().map_or(false, |d| d >= 1) {
            reduce_to_rational(&report.nonrational_factor)?
        } else {
            (Vec::new(), Vec::new())
        };
    // push f's own rational critical values through the chain
    let mut special: BTreeSet<BigRational> = chain_rationals.into_iter().collect();
    for r in &report.rational_values {
        let mut v = r.clone();
        for g in &chain {
            v = g.eval(&v);
        }
        special.insert(v);
    }
    let special: Vec<BigRational> = special.into_iter().collect();
    let consolidator = if special.is_empty() {
        RatPoly::x()
    } else {
        consolidate_rationals(&special)?
    };
    let mut result = f.clone();
    for g in &chain {
        result = g.compose(&result);
    }
    result = consolidator.compose(&result);
    debug_assert!(is_belyi_polynomial(&result)?);
    Ok(BelyiReduction {
        chain,
        special_set: special,
        consolidator,
        result,
    })
}
