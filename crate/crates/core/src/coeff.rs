//! The coefficient abstraction shared by the symbolic and numeric backends.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A field the rewriting engine can compute over.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// `(negative, body)` for printing a term coefficient in front of a word.
    fn signed_parts(&self) -> (bool, String);
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn signed_parts(&self) -> (bool, String) {
        Scalar::signed_parts(self)
    }
}

/// An exact rational number: the coefficient field after numeric specialization.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn signed_parts(&self) -> (bool, String) {
        (self.0.is_negative(), Rational(self.0.abs()).to_string())
    }
}

/// Maps symbolic coefficients into a backend field.
pub trait Specializer<K: Coeff>: Send + Sync {
    fn lift(&self, s: &Scalar) -> Result<K>;
    fn describe(&self) -> String;
}

/// The identity backend: coefficients stay in `Q(p, q)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Specializer<Scalar> for Symbolic {
    fn lift(&self, s: &Scalar) -> Result<Scalar> {
        Ok(s.clone())
    }
    fn describe(&self) -> String {
        "symbolic".into()
    }
}

/// Evaluation at a fixed rational point `(p0, q0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoint {
    pub p: BigRational,
    pub q: BigRational,
}

impl NumericPoint {
    pub fn new(p: BigRational, q: BigRational) -> Result<Self> {
        let pt = NumericPoint { p, q };
        if pt.is_degenerate() {
            return Err(Error::Specialization(format!("degenerate point ({}, {})", pt.p, pt.q)));
        }
        Ok(pt)
    }

    /// Points on `p q = 1`, `p = q`, or with a unit parameter collapse coefficients
    /// the presentations divide by or distinguish.
    pub fn is_degenerate(&self) -> bool {
        let one = BigRational::one();
        self.p.is_zero()
            || self.q.is_zero()
            || &self.p * &self.q == one
            || self.p == self.q
            || self.p.abs() == one
            || self.q.abs() == one
    }

    /// Draws a nondegenerate point with numerators and denominators in `[2, 97]`.
    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        loop {
            let mut draw = || {
                let n: i64 = rng.gen_range(2..=97);
                let d: i64 = rng.gen_range(2..=97);
                BigRational::new(n.into(), d.into())
            };
            let p = draw();
            let q = draw();
            if let Ok(pt) = NumericPoint::new(p, q) {
                return pt;
            }
        }
    }
}

impl Specializer<Rational> for NumericPoint {
    fn lift(&self, s: &Scalar) -> Result<Rational> {
        s.specialize(&self.p, &self.q).map(Rational)
    }
    fn describe(&self) -> String {
        format!("numeric(p={}, q={})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_points_avoid_degenerate_loci() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let pt = NumericPoint::random(&mut rng);
            assert!(!pt.is_degenerate());
        }
    }

    #[test]
    fn numeric_lift_matches_specialize() {
        let pt = NumericPoint::new(BigRational::from_integer(2.into()), BigRational::from_integer(3.into())).unwrap();
        let s = &Scalar::p() * &Scalar::q();
        assert_eq!(pt.lift(&s).unwrap(), Rational::from_i64(6));
    }
}
