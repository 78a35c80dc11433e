//! Exact scalars: Gaussian rationals and Laurent polynomials in the loop
//! parameter `δ`.
//!
//! Every algebra in the crate is generic over [`Scalar`]. A single algebra
//! instance therefore never mixes the two scalar kinds; the kind is part of
//! its type.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator by `num-rational`.
pub type Rational = BigRational;

/// Tag naming the scalar kind of an algebra. Used by the file formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    GaussianRational,
    Laurent,
}

impl ScalarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::GaussianRational => "gaussian_rational",
            ScalarKind::Laurent => "laurent",
        }
    }
}

/// Exact commutative ring with a conjugation.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + Send
    + Sync
{
    const KIND: ScalarKind;

    /// Complex conjugation; `δ` is real, so Laurent polynomials conjugate
    /// coefficient-wise.
    fn conj(&self) -> Self;

    fn from_gauss(g: GaussRat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_i64(n))
    }
}

/// Scalars in which every nonzero element is invertible and which embed in
/// the complex numbers.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
}

/// `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den` as a real Gaussian rational. Panics on `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// Canonical text form of a rational: `p/q` with `q > 0`, always with the
/// slash.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes outside the f64 range of the parts.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -&self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(Rational::one())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Add<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + &o.re,
            im: self.im + &o.im,
        }
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Sub<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - &o.re,
            im: self.im - &o.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        self * &o
    }
}

impl Mul<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(self.re * &o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for GaussRat {
    const KIND: ScalarKind = ScalarKind::GaussianRational;

    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn from_gauss(g: GaussRat) -> Self {
        g
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Laurent polynomial `Σ c_k δ^k` with Gaussian-rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, GaussRat>,
}

impl Laurent {
    /// The indeterminate `δ`.
    pub fn delta() -> Self {
        Self::monomial(1, GaussRat::one())
    }

    /// `δ^k`.
    pub fn delta_pow(k: i32) -> Self {
        Self::monomial(k, GaussRat::one())
    }

    pub fn monomial(exp: i32, coeff: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, GaussRat)>) -> Self {
        let mut out = Laurent::default();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> GaussRat {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exp: i32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Substitutes `δ ↦ δ^m`.
    pub fn substitute_power(&self, m: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    /// Multiplies by `δ^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact specialization at a nonzero Gaussian-rational `δ`.
    pub fn eval(&self, delta: &GaussRat) -> Option<GaussRat> {
        let inv = delta.inv()?;
        let mut acc = GaussRat::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { delta } else { &inv };
            let mut p = GaussRat::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base;
            }
            acc += &(c.clone() * &p);
        }
        Some(acc)
    }

    /// Floating-point specialization at a real `δ`.
    pub fn eval_f64(&self, delta: f64) -> Complex64 {
        self.terms().map(|(e, c)| c.to_c64() * delta.powi(e)).sum()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}δ")?,
                _ => write!(f, "{c}δ^{e}")?,
            }
        }
        Ok(())
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(GaussRat::one())
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        self + &o
    }
}

impl Add<&Laurent> for Laurent {
    type Output = Laurent;
    fn add(mut self, o: &Laurent) -> Laurent {
        self += o;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, o: &Laurent) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Sub<&Laurent> for Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o.clone())
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        self * &o
    }
}

impl Mul<&Laurent> for Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1.clone() * c2));
            }
        }
        out
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Scalar for Laurent {
    const KIND: ScalarKind = ScalarKind::Laurent;

    fn conj(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    fn from_gauss(g: GaussRat) -> Self {
        Laurent::constant(g)
    }
}
