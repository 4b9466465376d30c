//! Exact coefficients: the rational function field `Q(p, q)`.

mod poly2;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use poly2::{fmt_monomial, join_signed, Mono, Poly2};

/// Joins `(negative, body)` terms into `a - b + c` form; empty input prints `0`.
pub fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    join_signed(terms)
}

/// An element of `Q(p, q)` kept as a reduced fraction with a monic denominator,
/// so that structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly2,
    den: Poly2,
}

/// The four field operations, for callers that dispatch on an operator value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { num: Poly2::constant(r), den: Poly2::one() }
    }

    pub fn p() -> Self {
        Scalar::laurent(1, 0)
    }

    pub fn q() -> Self {
        Scalar::laurent(0, 1)
    }

    /// `p^a q^b` for arbitrary integer exponents.
    pub fn laurent(a: i32, b: i32) -> Self {
        let one = BigRational::one();
        let num = Mono::new(a.max(0) as u32, b.max(0) as u32);
        let den = Mono::new((-a).max(0) as u32, (-b).max(0) as u32);
        Scalar { num: Poly2::term(one.clone(), num), den: Poly2::term(one, den) }
    }

    fn from_parts(num: Poly2, den: Poly2) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else if g.len() == 1 {
            let (m, _) = g.leading().unwrap();
            (num.div_mono(m), den.div_mono(m))
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value when this scalar does not depend on `p` or `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_laurent_monomial(&self) -> bool {
        self.num.len() == 1 && self.den.len() == 1
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_parts(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn apply(&self, op: ScalarOp, o: &Scalar) -> Result<Scalar> {
        Ok(match op {
            ScalarOp::Add => self + o,
            ScalarOp::Sub => self - o,
            ScalarOp::Mul => self * o,
            ScalarOp::Div => self.checked_div(o)?,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at `p = p0`, `q = q0`.
    pub fn specialize(&self, p0: &BigRational, q0: &BigRational) -> Result<BigRational> {
        if p0.is_zero() || q0.is_zero() {
            return Err(Error::Specialization(format!("parameter vanishes at ({p0}, {q0})")));
        }
        let d = self.den.eval(p0, q0);
        if d.is_zero() {
            return Err(Error::Specialization(format!("denominator {} vanishes at ({p0}, {q0})", self.den)));
        }
        Ok(self.num.eval(p0, q0) / d)
    }

    /// The image under the field automorphism exchanging `p` and `q`.
    pub fn swap_params(&self) -> Scalar {
        Scalar::from_parts(self.num.swap_vars(), self.den.swap_vars())
    }

    /// Returns `(negative, body)` where `body` is safe to juxtapose with `*`.
    pub fn signed_parts(&self) -> (bool, String) {
        if self.is_laurent_monomial() {
            let (nm, nc) = self.num.leading().unwrap();
            let (dm, dc) = self.den.leading().unwrap();
            let c = nc / dc;
            let body = fmt_monomial(&c, nm.p as i64 - dm.p as i64, nm.q as i64 - dm.q as i64);
            return (c.is_negative(), body);
        }
        (false, format!("({self})"))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if let Some((dm, dc)) = self.den.as_monomial() {
            // Laurent polynomial: print with negative exponents.
            let s = join_signed(self.num.descending().map(|(m, c)| {
                let c = c / dc;
                (c.is_negative(), fmt_monomial(&c, m.p as i64 - dm.p as i64, m.q as i64 - dm.q as i64))
            }));
            return f.write_str(&s);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::from_parts(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::from_parts(num, self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        Scalar::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for the fallible form.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Scalar {
        Scalar::p()
    }
    fn q() -> Scalar {
        Scalar::q()
    }
    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation() {
        assert_eq!(&(&p() * &q()) / &q(), p());
    }

    #[test]
    fn add_one_to_pq_minus_one() {
        let pq = &p() * &q();
        assert_eq!(&(&pq - &Scalar::one()) + &Scalar::one(), pq);
    }

    #[test]
    fn q_minus_p_inverse_times_p() {
        let lhs = &(&q() - &Scalar::laurent(-1, 0)) * &p();
        assert_eq!(lhs, &(&p() * &q()) - &Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn specialization_examples() {
        let pq = &p() * &q();
        assert_eq!((&pq - &Scalar::one()).specialize(&rat(2, 1), &rat(3, 1)).unwrap(), rat(5, 1));
        assert_eq!(Scalar::laurent(-1, -1).specialize(&rat(2, 1), &rat(3, 1)).unwrap(), rat(1, 6));
        let inv = pq.inv().unwrap();
        let coeff = &inv * &(&inv - &Scalar::one());
        assert_eq!(coeff.specialize(&rat(2, 1), &rat(3, 1)).unwrap(), rat(-5, 36));
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let pq1 = &(&p() * &q()) - &Scalar::one();
        let x = pq1.inv().unwrap();
        assert!(x.specialize(&rat(1, 2), &rat(2, 1)).is_err());
    }

    #[test]
    fn denominators_are_monic_and_reduced() {
        let pq1 = &(&p() * &q()) - &Scalar::one();
        let two = Scalar::from_int(2);
        let x = &(&two * &p()) / &(&two * &pq1);
        let y = &p() / &pq1;
        assert_eq!(x, y);
        let z = &(&pq1 * &p()) / &(&pq1 * &q());
        assert_eq!(z, &p() / &q());
    }

    #[test]
    fn display_laurent_and_fraction() {
        assert_eq!((&q() - &Scalar::laurent(-1, 0)).to_string(), "q - p^-1");
        assert_eq!(Scalar::laurent(-2, -1).to_string(), "p^-2*q^-1");
        let pq1 = &(&p() * &q()) - &Scalar::one();
        assert_eq!((&Scalar::one() / &pq1).to_string(), "(1)/(p*q - 1)");
        assert_eq!(Scalar::from_rational(rat(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn swap_params_exchanges_variables() {
        let x = &p() / &(&q() + &Scalar::from_int(2));
        assert_eq!(x.swap_params(), &q() / &(&p() + &Scalar::from_int(2)));
    }
}
