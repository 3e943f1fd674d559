//! Exact univariate polynomial arithmetic.
//!
//! Coefficients live in an abstract field given by a [`CoeffField`] context,
//! instantiated for the rationals here and for number fields in
//! [`crate::numfield`]. Polynomials are coefficient vectors, lowest degree
//! first, with no trailing zeros (the zero polynomial is the empty vector).
//!
//! Rational-root extraction is factorization-free: real roots are isolated
//! with Sturm sequences, each isolating interval is bisected below
//! `1/(2·lc²)`, and the smallest-denominator rational in the interval is
//! reconstructed by continued fractions and tested exactly. This stays
//! polynomial in the coefficient bit size no matter how large the integers
//! get.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A coefficient field, passed explicitly to the generic polynomial helpers.
pub trait CoeffField {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
}

/// The rational field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffField for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(a.recip())
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
}

// ---------------------------------------------------------------------------
// generic helpers on coefficient vectors (lowest degree first, trimmed)
// ---------------------------------------------------------------------------

pub fn p_trim<F: CoeffField>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().map_or(false, |c| f.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn p_degree<T>(v: &[T]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn p_add<F: CoeffField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    p_trim(f, out)
}

pub fn p_neg<F: CoeffField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn p_sub<F: CoeffField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    p_add(f, a, &p_neg(f, b))
}

pub fn p_mul<F: CoeffField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if f.is_zero(ca) {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(ca, cb));
        }
    }
    p_trim(f, out)
}

pub fn p_scale<F: CoeffField>(f: &F, a: &[F::Elem], s: &F::Elem) -> Vec<F::Elem> {
    p_trim(f, a.iter().map(|c| f.mul(c, s)).collect())
}

/// Long division: `a = q·b + r` with `deg r < deg b`. Errors on zero divisor.
pub fn p_divmod<F: CoeffField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    if b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let db = b.len() - 1;
    let lc_inv = f.inv(b.last().unwrap())?;
    let mut rem: Vec<F::Elem> = a.to_vec();
    if rem.len() <= db {
        return Ok((Vec::new(), p_trim(f, rem)));
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = f.mul(rem.last().unwrap(), &lc_inv);
        if !f.is_zero(&c) {
            quot[da - db] = c.clone();
            for i in 0..db {
                let t = f.mul(&b[i], &c);
                rem[da - db + i] = f.sub(&rem[da - db + i], &t);
            }
        }
        rem.pop();
        rem = p_trim(f, rem);
        if rem.len() <= db {
            break;
        }
    }
    Ok((p_trim(f, quot), p_trim(f, rem)))
}

pub fn p_monic<F: CoeffField>(f: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let inv = f.inv(a.last().unwrap())?;
    Ok(p_scale(f, a, &inv))
}

/// Monic gcd by the Euclidean algorithm. Errors when both inputs are zero.
pub fn p_gcd<F: CoeffField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut u = a.to_vec();
    let mut v = b.to_vec();
    while !v.is_empty() {
        let (_, r) = p_divmod(f, &u, &v)?;
        u = v;
        v = r;
        // keep coefficients small by normalizing each remainder
        if !v.is_empty() {
            v = p_monic(f, &v)?;
        }
    }
    p_monic(f, &u)
}

pub fn p_derivative<F: CoeffField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = f.from_rational(&BigRational::from_integer(BigInt::from(i)));
        out.push(f.mul(c, &k));
    }
    p_trim(f, out)
}

/// `f / gcd(f, f′)` made monic: same roots, all simple.
pub fn p_squarefree_part<F: CoeffField>(f: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if a.len() == 1 {
        return Ok(vec![f.one()]);
    }
    let d = p_derivative(f, a);
    let g = p_gcd(f, a, &d)?;
    let (q, r) = p_divmod(f, a, &g)?;
    debug_assert!(r.is_empty());
    p_monic(f, &q)
}

pub fn p_eval<F: CoeffField>(f: &F, a: &[F::Elem], t: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, t), c);
    }
    acc
}

/// Resultant of two nonzero polynomials by the Euclidean remainder sequence:
/// `res(a, b) = (−1)^{da·db} · lc(b)^{da − dr} · res(b, r)` with `r = a mod b`.
pub fn p_resultant<F: CoeffField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut u = a.to_vec();
    let mut v = b.to_vec();
    let mut acc = f.one();
    loop {
        let du = u.len() - 1;
        let dv = v.len() - 1;
        if du == 0 {
            // res(const c, v) = c^dv
            let mut p = f.one();
            for _ in 0..dv {
                p = f.mul(&p, &u[0]);
            }
            return Ok(f.mul(&acc, &p));
        }
        if dv == 0 {
            let mut p = f.one();
            for _ in 0..du {
                p = f.mul(&p, &v[0]);
            }
            return Ok(f.mul(&acc, &p));
        }
        let (_, r) = p_divmod(f, &u, &v)?;
        if r.is_empty() {
            return Ok(f.zero());
        }
        let dr = r.len() - 1;
        if (du * dv) % 2 == 1 {
            acc = f.neg(&acc);
        }
        let mut p = f.one();
        for _ in 0..(du - dr) {
            p = f.mul(&p, v.last().unwrap());
        }
        acc = f.mul(&acc, &p);
        u = v;
        v = r;
    }
}

/// Lagrange interpolation through distinct nodes.
pub fn p_interpolate<F: CoeffField>(f: &F, points: &[(F::Elem, F::Elem)]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![f.one()];
        let mut denom = f.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = p_mul(f, &basis, &[f.neg(xj), f.one()]);
            denom = f.mul(&denom, &f.sub(xi, xj));
        }
        let scale = f
            .mul(yi, &f.inv(&denom).expect("interpolation nodes are distinct"));
        out = p_add(f, &out, &p_scale(f, &basis, &scale));
    }
    out
}

/// Extended gcd over ℚ: returns `(g, s, t)` monic with `s·a + t·b = g`.
pub fn p_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> Result<(Vec<BigRational>, Vec<BigRational>, Vec<BigRational>)> {
    let f = &Rationals;
    if a.is_empty() && b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![f.one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = p_divmod(f, &r0, &r1)?;
        let ns = p_sub(f, &s0, &p_mul(f, &q, &s1));
        let nt = p_sub(f, &t0, &p_mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    let lead_inv = f.inv(r0.last().unwrap())?;
    Ok((
        p_scale(f, &r0, &lead_inv),
        p_scale(f, &s0, &lead_inv),
        p_scale(f, &t0, &lead_inv),
    ))
}

// ---------------------------------------------------------------------------
// RatPoly: polynomials over ℚ
// ---------------------------------------------------------------------------

/// A univariate polynomial with exact rational coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly {
            coeffs: p_trim(&Rationals, vec![c]),
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        RatPoly {
            coeffs: p_trim(&Rationals, coeffs),
        }
    }

    /// Convenience constructor from integer coefficients, lowest first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        RatPoly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        p_degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        p_eval(&Rationals, &self.coeffs, t)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly {
            coeffs: p_derivative(&Rationals, &self.coeffs),
        }
    }

    pub fn monic(&self) -> Result<RatPoly> {
        Ok(RatPoly {
            coeffs: p_monic(&Rationals, &self.coeffs)?,
        })
    }

    pub fn divmod(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let (q, r) = p_divmod(&Rationals, &self.coeffs, &d.coeffs)?;
        Ok((RatPoly { coeffs: q }, RatPoly { coeffs: r }))
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &RatPoly) -> Result<bool> {
        Ok(self.divmod(d)?.1.is_zero())
    }

    pub fn gcd(&self, other: &RatPoly) -> Result<RatPoly> {
        Ok(RatPoly {
            coeffs: p_gcd(&Rationals, &self.coeffs, &other.coeffs)?,
        })
    }

    pub fn squarefree_part(&self) -> Result<RatPoly> {
        Ok(RatPoly {
            coeffs: p_squarefree_part(&Rationals, &self.coeffs)?,
        })
    }

    pub fn resultant(&self, other: &RatPoly) -> Result<BigRational> {
        p_resultant(&Rationals, &self.coeffs, &other.coeffs)
    }

    /// `self(g(x))` by Horner over polynomials.
    pub fn compose(&self, g: &RatPoly) -> RatPoly {
        let f = &Rationals;
        let mut acc: Vec<BigRational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            acc = p_mul(f, &acc, &g.coeffs);
            acc = p_add(f, &acc, &[c.clone()]);
        }
        RatPoly { coeffs: acc }
    }

    pub fn pow(&self, k: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// All rational roots with multiplicities, ascending. Factorization-free
    /// (Sturm isolation plus continued-fraction reconstruction).
    pub fn rational_roots(&self) -> Result<Vec<(BigRational, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots: Vec<BigRational> = Vec::new();
        let mut g = self.squarefree_part()?;
        while g.degree().map_or(false, |d| d >= 1) {
            match find_one_rational_root(&g) {
                Some(r) => {
                    let lin = RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
                    g = g.divmod(&lin)?.0;
                    roots.push(r);
                }
                None => break,
            }
        }
        roots.sort();
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let lin = RatPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
            let mut mult = 0usize;
            let mut rest = self.clone();
            loop {
                let (q, rem) = rest.divmod(&lin)?;
                if rem.is_zero() {
                    mult += 1;
                    rest = q;
                    if rest.is_zero() {
                        break;
                    }
                } else {
                    break;
                }
            }
            debug_assert!(mult >= 1);
            out.push((r, mult));
        }
        Ok(out)
    }
}

impl std::ops::Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        RatPoly {
            coeffs: p_add(&Rationals, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        RatPoly {
            coeffs: p_sub(&Rationals, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        RatPoly {
            coeffs: p_mul(&Rationals, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: p_neg(&Rationals, &self.coeffs),
        }
    }
}

impl fmt::Display for RatPoly {
    /// Highest-degree-first form accepted back by the expression parser,
    /// e.g. `x^3 - 12/25x^2 - 24/25x - 16/25`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coef_is_one = mag.is_one();
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !coef_is_one {
                        write!(f, "{}", mag)?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// rational root machinery
// ---------------------------------------------------------------------------

/// One rational root of a squarefree polynomial of degree >= 1, or `None`.
/// Fast path: work modulo a prime with no repeated roots; either no root
/// exists mod p (then no rational root exists at all, since a rational root
/// p/q has q dividing the leading coefficient and so reduces mod p), or
/// every rational root is the unique Newton lift of some root mod p and is
/// recovered by rational reconstruction. Falls back to Sturm bisection in
/// the measure-zero case that no usable prime is found.
fn find_one_rational_root(g: &RatPoly) -> Option<BigRational> {
    let deg = g.degree().expect("nonzero");
    debug_assert!(deg >= 1);
    if g.coeff(0).is_zero() {
        return Some(BigRational::zero());
    }
    if deg == 1 {
        return Some(-g.coeff(0) / g.coeff(1));
    }
    let int_coeffs = to_primitive_integers(g);
    if let Some(found) = modular_rational_roots(g, &int_coeffs) {
        return found.into_iter().next();
    }
    find_one_rational_root_sturm(g, &int_coeffs)
}

/// All rational roots of the squarefree primitive integer polynomial, via a
/// single good prime; `None` if no good prime was found.
fn modular_rational_roots(g: &RatPoly, ints: &[BigInt]) -> Option<Vec<BigRational>> {
    let deg = ints.len() - 1;
    // |p| <= |c0| and q <= |lc| for any rational root p/q in lowest terms
    let n_bound: BigUint = ints[0].magnitude().max(ints[deg].magnitude()).clone();
    let target: BigUint = BigUint::from(2u32) * &n_bound * &n_bound + BigUint::one();
    let mut prime = (1u64 << 31) + 11;
    let mut tried = 0usize;
    while tried < 2000 {
        prime = next_prime_u64(prime + 1);
        tried += 1;
        let p = prime;
        let lc_mod = big_mod_u64(&ints[deg], p);
        if lc_mod == 0 {
            continue;
        }
        let gp = reduce_mod_p(ints, p);
        let h = linear_factor_gcd(&gp, p);
        if h.len() == 1 {
            // no roots mod p: certified no rational roots
            return Some(Vec::new());
        }
        let Some(roots_p) = split_linear_roots(&h, p) else {
            continue;
        };
        let dgp = derive_mod_p(&gp, p);
        if roots_p.iter().any(|&r| eval_mod_p(&dgp, r, p) == 0) {
            // repeated root mod p: a bad prime for Newton lifting
            continue;
        }
        let mut out = Vec::new();
        for &r in &roots_p {
            if let Some(cand) = lift_and_reconstruct(ints, r, p, &target, &n_bound) {
                if g.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        return Some(out);
    }
    None
}

/// Exhaustive Sturm bisection: isolate, shrink below 1/(2·lc²), reconstruct
/// the simplest rational, test. Polynomial in the bit size, but slow for
/// very large coefficients; only used when no modular prime worked.
fn find_one_rational_root_sturm(g: &RatPoly, ints: &[BigInt]) -> Option<BigRational> {
    let den_bound = ints.last().unwrap().magnitude().clone();
    let eps = BigRational::new(
        BigInt::one(),
        BigInt::from(2u32) * BigInt::from(&den_bound * &den_bound),
    );
    let bound = cauchy_bound(g);
    let chain = sturm_chain(g);
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = variations_at(&chain, &a) as i64 - variations_at(&chain, &b) as i64;
        if count <= 0 {
            continue;
        }
        if count == 1 {
            // test the simplest rational in the interval at every level;
            // a rational root is discovered long before the depth cap
            let cand = simplest_rational_in(&a, &b);
            if g.eval(&cand).is_zero() {
                return Some(cand);
            }
            if &b - &a < eps {
                continue;
            }
        }
        let mid = (&a + &b) / BigRational::from_integer(2.into());
        if g.eval(&mid).is_zero() {
            return Some(mid);
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    None
}

// --- modular arithmetic helpers (all moduli fit in u64) ---

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime_u64(mut n: u64) -> u64 {
    if n % 2 == 0 {
        n += 1;
    }
    while !is_prime_u64(n) {
        n += 2;
    }
    n
}

fn big_mod_u64(v: &BigInt, p: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(p));
    u64::try_from(&m).expect("residue fits")
}

/// Monic reduction mod p (lowest degree first, trimmed).
fn reduce_mod_p(ints: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = ints.iter().map(|c| big_mod_u64(c, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    let inv = inv_mod(*v.last().unwrap(), p);
    for c in &mut v {
        *c = mul_mod(*c, inv, p);
    }
    v
}

fn trim_mod(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn polymul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(ca, cb, p)) % p;
        }
    }
    trim_mod(out)
}

/// Remainder of a by monic-after-normalization b over F_p.
fn polyrem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lc_inv = inv_mod(*b.last().unwrap(), p);
    while rem.len() > db {
        let c = mul_mod(*rem.last().unwrap(), lc_inv, p);
        let shift = rem.len() - 1 - db;
        if c != 0 {
            for i in 0..db {
                let t = mul_mod(b[i], c, p);
                let idx = shift + i;
                rem[idx] = (rem[idx] + p - t) % p;
            }
        }
        rem.pop();
        rem = trim_mod(rem);
    }
    rem
}

fn polygcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut u = a.to_vec();
    let mut v = b.to_vec();
    while !v.is_empty() {
        let r = polyrem_mod(&u, &v, p);
        u = v;
        v = r;
    }
    if u.is_empty() {
        return u;
    }
    let inv = inv_mod(*u.last().unwrap(), p);
    for c in &mut u {
        *c = mul_mod(*c, inv, p);
    }
    u
}

/// `gcd(x^p − x, g)` over F_p: the product of the distinct linear factors.
fn linear_factor_gcd(g: &[u64], p: u64) -> Vec<u64> {
    // x^p mod g by square-and-multiply
    let mut acc = vec![0u64, 1]; // x
    let mut result = vec![1u64];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = polyrem_mod(&polymul_mod(&result, &acc, p), g, p);
        }
        acc = polyrem_mod(&polymul_mod(&acc, &acc, p), g, p);
        e >>= 1;
    }
    // x^p − x
    let mut diff = result;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    let diff = trim_mod(diff);
    if diff.is_empty() {
        // every residue is a root
        return g.to_vec();
    }
    polygcd_mod(&diff, g, p)
}

/// Roots of a product of distinct monic linear factors over F_p, by
/// Cantor-Zassenhaus splitting with a fixed deterministic shift sequence.
/// `None` if splitting stalls (treat the prime as unusable).
fn split_linear_roots(h: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut stack = vec![h.to_vec()];
    let mut roots = Vec::new();
    let mut salt: u64 = 0x9e3779b97f4a7c15;
    let mut budget = 64 * h.len();
    while let Some(f) = stack.pop() {
        let deg = f.len() - 1;
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            // monic x + c: root = -c
            roots.push((p - f[0]) % p);
            continue;
        }
        if budget == 0 {
            return None;
        }
        budget -= 1;
        // pseudorandom a; (x+a)^((p-1)/2) − 1 splits the roots in half
        salt = salt
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let a = salt % p;
        let mut acc = vec![a, 1];
        let mut result = vec![1u64];
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                result = polyrem_mod(&polymul_mod(&result, &acc, p), &f, p);
            }
            acc = polyrem_mod(&polymul_mod(&acc, &acc, p), &f, p);
            e >>= 1;
        }
        // result − 1
        let mut w = result;
        if w.is_empty() {
            w = vec![0];
        }
        w[0] = (w[0] + p - 1) % p;
        let w = trim_mod(w);
        let g1 = if w.is_empty() {
            f.clone()
        } else {
            polygcd_mod(&w, &f, p)
        };
        if g1.len() <= 1 || g1.len() == f.len() {
            // unlucky split, retry with a new shift
            stack.push(f);
            continue;
        }
        let quot = polydiv_exact_mod(&f, &g1, p);
        stack.push(g1);
        stack.push(quot);
    }
    roots.sort_unstable();
    Some(roots)
}

fn polydiv_exact_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    let lc_inv = inv_mod(*b.last().unwrap(), p);
    while rem.len() > db {
        let c = mul_mod(*rem.last().unwrap(), lc_inv, p);
        let shift = rem.len() - 1 - db;
        quot[shift] = c;
        if c != 0 {
            for i in 0..db {
                let t = mul_mod(b[i], c, p);
                rem[shift + i] = (rem[shift + i] + p - t) % p;
            }
        }
        rem.pop();
        rem = trim_mod(rem);
    }
    debug_assert!(rem.is_empty());
    trim_mod(quot)
}

fn eval_mod_p(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mul_mod(acc, x, p) + c) % p;
    }
    acc
}

fn derive_mod_p(f: &[u64], p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push(mul_mod(c, (i as u64) % p, p));
    }
    trim_mod(out)
}

/// Newton-lifts a simple root of the integer polynomial from mod p to a
/// modulus beyond `target`, then reconstructs a rational with numerator and
/// denominator bounded by `n_bound`.
fn lift_and_reconstruct(
    ints: &[BigInt],
    root: u64,
    p: u64,
    target: &BigUint,
    n_bound: &BigUint,
) -> Option<BigRational> {
    let eval = |m: &BigUint, r: &BigUint, f: &[BigInt]| -> BigUint {
        let mb = BigInt::from(m.clone());
        let mut acc = BigInt::zero();
        let rb = BigInt::from(r.clone());
        for c in f.iter().rev() {
            acc = (acc * &rb + c).mod_floor(&mb);
        }
        acc.to_biguint().expect("mod_floor is nonnegative")
    };
    let dints: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut modulus = BigUint::from(p);
    let mut r = BigUint::from(root);
    while &modulus <= target {
        let next = &modulus * &modulus;
        // Newton step: r <- r - f(r)/f'(r)  (derivative inverse exists mod p)
        let fr = eval(&next, &r, ints);
        let dfr = eval(&next, &r, &dints);
        let dfr_inv = mod_inverse_big(&dfr, &next)?;
        let delta = (&fr * &dfr_inv) % &next;
        r = ((&r + &next) - delta) % &next;
        modulus = next;
    }
    rational_reconstruct(&r, &modulus, n_bound)
}

fn mod_inverse_big(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap())
}

/// Finds p/q with |p|, |q| <= bound and p ≡ q·r (mod m), by the truncated
/// extended Euclidean algorithm; `None` if none exists.
fn rational_reconstruct(r: &BigUint, m: &BigUint, bound: &BigUint) -> Option<BigRational> {
    let mut r0 = BigInt::from(m.clone());
    let mut r1 = BigInt::from(r.clone());
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1.magnitude() > bound {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.magnitude() > bound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    Some(BigRational::new(r1, t1))
}

/// Strict bound on the absolute value of every root: `1 + max |c_i / lc|`.
fn cauchy_bound(g: &RatPoly) -> BigRational {
    let lc = g.leading().expect("nonzero");
    let mut m = BigRational::zero();
    for c in &g.coeffs()[..g.coeffs().len() - 1] {
        let v = (c / lc).abs();
        if v > m {
            m = v;
        }
    }
    m + BigRational::one()
}

/// Integer coefficients with content removed, same roots.
fn to_primitive_integers(g: &RatPoly) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in g.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    ints.iter().map(|c| c / &content).collect()
}

fn sturm_chain(g: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![g.clone(), g.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[k - 2].divmod(&chain[k - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        // normalize to keep the integers small; sign must be preserved
        let scale = r.leading().unwrap().abs().recip();
        chain.push(&(-&r) * &RatPoly::constant(scale));
    }
    chain
}

fn variations_at(chain: &[RatPoly], t: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // sign: true = positive
    for p in chain {
        let v = p.eval(t);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// The unique smallest-denominator rational in the closed interval `[a, b]`.
fn simplest_rational_in(a: &BigRational, b: &BigRational) -> BigRational {
    if a == b {
        return a.clone();
    }
    if !a.is_positive() && !b.is_negative() {
        return BigRational::zero();
    }
    if b.is_negative() {
        return -simplest_rational_in(&-b, &-a);
    }
    // 0 < a < b
    let ca = a.ceil();
    if &ca <= b {
        return ca;
    }
    let fa = a.floor();
    let inner = simplest_rational_in(&(b - &fa).recip(), &(a - &fa).recip());
    fa + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic_basics() {
        let f = RatPoly::from_ints(&[1, 2, 1]); // 1 + 2x + x^2
        let g = RatPoly::from_ints(&[-1, 1]); // x - 1
        assert_eq!(&f * &g, RatPoly::from_ints(&[-1, -1, 1, 1]));
        assert_eq!((&f - &f), RatPoly::zero());
        assert_eq!(f.eval(&qi(2)), qi(9));
        assert_eq!(f.degree(), Some(2));
        assert_eq!(RatPoly::zero().degree(), None);
    }

    #[test]
    fn derivative_examples() {
        // (x^3 - 3x)' = 3x^2 - 3
        let f = RatPoly::from_ints(&[0, -3, 0, 1]);
        assert_eq!(f.derivative(), RatPoly::from_ints(&[-3, 0, 3]));
        assert!(RatPoly::one().derivative().is_zero());
    }

    #[test]
    fn divmod_and_gcd() {
        let f = RatPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let g = RatPoly::from_ints(&[1, 1]); // x + 1
        let (quot, rem) = f.divmod(&g).unwrap();
        assert_eq!(quot, RatPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&g).unwrap(), g.monic().unwrap());
        assert!(f.divmod(&RatPoly::zero()).is_err());
        assert!(RatPoly::zero().gcd(&RatPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // x^2 (x - 1) -> x (x - 1)
        let f = RatPoly::from_ints(&[0, 0, -1, 1]);
        assert_eq!(f.squarefree_part().unwrap(), RatPoly::from_ints(&[0, -1, 1]));
        // already squarefree stays itself (monic)
        let g = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(g.squarefree_part().unwrap(), g);
    }

    #[test]
    fn resultant_examples() {
        let a = RatPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(a.resultant(&a).unwrap(), qi(0));
        // res(x-2, x-3) = -1; res(x^2-1, x^2-4) = 9
        let r = RatPoly::from_ints(&[-2, 1])
            .resultant(&RatPoly::from_ints(&[-3, 1]))
            .unwrap();
        assert_eq!(r, qi(-1));
        let r = RatPoly::from_ints(&[-1, 0, 1])
            .resultant(&RatPoly::from_ints(&[-4, 0, 1]))
            .unwrap();
        assert_eq!(r, qi(9));
        // product formula: res(f,g) = lc(f)^deg g · prod g(root of f)
        let f = RatPoly::from_ints(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let g = RatPoly::from_ints(&[1, 1, 1]);
        let want = g.eval(&qi(1)) * g.eval(&qi(2)) * g.eval(&qi(3));
        assert_eq!(f.resultant(&g).unwrap(), want);
    }

    #[test]
    fn compose_degree_multiplies() {
        let f = RatPoly::from_ints(&[1, 0, -1, 2]);
        let g = RatPoly::from_ints(&[3, 0, 1]);
        let c = f.compose(&g);
        assert_eq!(c.degree(), Some(6));
        let t = q(5, 3);
        assert_eq!(c.eval(&t), f.eval(&g.eval(&t)));
    }

    #[test]
    fn rational_roots_small() {
        // (x - 1/2)^2 (x + 3) x
        let f = &(&RatPoly::from_coeffs(vec![q(-1, 2), qi(1)]).pow(2)
            * &RatPoly::from_ints(&[3, 1]))
            * &RatPoly::x();
        let roots = f.rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![(qi(-3), 1), (qi(0), 1), (q(1, 2), 2)]
        );
        // x^2 - 2 has none
        assert!(RatPoly::from_ints(&[-2, 0, 1])
            .rational_roots()
            .unwrap()
            .is_empty());
        // x^2 + 1 has none (no real roots at all)
        assert!(RatPoly::from_ints(&[1, 0, 1])
            .rational_roots()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rational_roots_with_larger_denominators() {
        // roots 22/7 and -355/113 times an irrational quadratic
        let f = &(&RatPoly::from_coeffs(vec![q(-22, 7), qi(1)])
            * &RatPoly::from_coeffs(vec![q(355, 113), qi(1)]))
            * &RatPoly::from_ints(&[-2, 0, 1]);
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots, vec![(q(-355, 113), 1), (q(22, 7), 1)]);
    }

    #[test]
    fn simplest_rational() {
        // in [3.14, 3.15] nothing with denominator below 7 fits
        let s = simplest_rational_in(&q(314, 100), &q(315, 100));
        assert_eq!(s, q(22, 7));
        // a closed endpoint with a small denominator wins
        assert_eq!(simplest_rational_in(&q(31, 10), &q(16, 5)), q(16, 5));
        assert_eq!(simplest_rational_in(&q(-1, 2), &q(1, 3)), qi(0));
        assert_eq!(simplest_rational_in(&q(5, 2), &qi(4)), qi(3));
        assert_eq!(simplest_rational_in(&qi(2), &qi(2)), qi(2));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = RatPoly::from_ints(&[-1, 0, 1]);
        let b = RatPoly::from_ints(&[2, 1]);
        let (g, s, t) = p_ext_gcd(a.coeffs(), b.coeffs()).unwrap();
        let lhs = p_add(
            &Rationals,
            &p_mul(&Rationals, &s, a.coeffs()),
            &p_mul(&Rationals, &t, b.coeffs()),
        );
        assert_eq!(lhs, g);
        assert_eq!(g, vec![qi(1)]); // coprime
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = RatPoly::from_ints(&[2, -1, 0, 5]);
        let pts: Vec<(BigRational, BigRational)> =
            (0..4).map(|k| (qi(k), f.eval(&qi(k)))).collect();
        let got = p_interpolate(&Rationals, &pts);
        assert_eq!(RatPoly::from_coeffs(got), f);
    }
}
