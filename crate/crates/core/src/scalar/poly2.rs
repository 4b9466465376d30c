//! Sparse bivariate polynomials in `p`, `q` with rational coefficients.
//!
//! This is the numerator/denominator layer of [`Scalar`](super::Scalar). Only
//! nonnegative exponents live here; negative powers are fractions one level up.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `p^p q^q`, ordered graded-lex: total degree, then `p`, then `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Mono {
    pub p: u32,
    pub q: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { p: 0, q: 0 };

    pub fn new(p: u32, q: u32) -> Self {
        Mono { p, q }
    }

    fn degree(self) -> u32 {
        self.p + self.q
    }

    fn mul(self, o: Mono) -> Mono {
        Mono::new(self.p + o.p, self.q + o.q)
    }

    fn div(self, o: Mono) -> Option<Mono> {
        if self.p >= o.p && self.q >= o.q {
            Some(Mono::new(self.p - o.p, self.q - o.q))
        } else {
            None
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.degree(), self.p, self.q).cmp(&(o.degree(), o.p, o.q))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Poly2 {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn term(c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(Mono, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// The single term, if this is `c * p^a q^b`.
    pub fn as_monomial(&self) -> Option<(Mono, &BigRational)> {
        if self.terms.len() == 1 {
            self.leading()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly2) -> Poly2 {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Poly2) -> Poly2 {
        let mut r = Poly2::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Mono::ONE;
        };
        it.fold(*first, |acc, m| Mono::new(acc.p.min(m.p), acc.q.min(m.q)))
    }

    /// Divide out a monomial that is known to divide every term.
    pub fn div_mono(&self, m: Mono) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.div(m).expect("monomial does not divide"), v.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let (dm, dc) = d.leading()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(dm)?;
            let qc = c / &dc;
            let t = Poly2::term(qc.clone(), qm);
            rem = rem.sub(&d.mul(&t));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, p: &BigRational, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += c * pow(p, m.p) * pow(q, m.q);
        }
        acc
    }

    pub fn swap_vars(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.q, m.p), c.clone()))
                .collect(),
        }
    }

    pub fn gcd(&self, o: &Poly2) -> Poly2 {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.len() == 1 || o.len() == 1 {
            let a = self.monomial_content();
            let b = o.monomial_content();
            return Poly2::term(BigRational::one(), Mono::new(a.p.min(b.p), a.q.min(b.q)));
        }
        let a = Bivar::from_poly(self);
        let b = Bivar::from_poly(o);
        a.gcd(&b).to_poly().monic()
    }

    pub fn monic(&self) -> Poly2 {
        match self.leading() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Terms in descending graded-lex order.
    pub fn descending(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter().rev()
    }
}

pub(crate) fn pow(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow::pow(x.clone(), n as usize)
}

/// Format one `c * p^a q^b` term body without its sign. Exponents may be negative
/// at the Laurent display layer.
pub(crate) fn fmt_monomial(c: &BigRational, p: i64, q: i64) -> String {
    let mut parts: Vec<String> = Vec::new();
    let c = c.abs();
    let has_vars = p != 0 || q != 0;
    if !c.is_one() || !has_vars {
        parts.push(fmt_rational(&c));
    }
    for (name, e) in [("p", p), ("q", q)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Joins signed term bodies as `a + b - c`.
pub(crate) fn join_signed(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_signed(
            self.descending()
                .map(|(m, c)| (c.is_negative(), fmt_monomial(c, m.p as i64, m.q as i64))),
        );
        f.write_str(&s)
    }
}

// Dense univariate polynomials over Q, coefficient index = exponent.
type Uni = Vec<BigRational>;

fn uni_trim(mut a: Uni) -> Uni {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

fn uni_is_zero(a: &Uni) -> bool {
    a.is_empty()
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    uni_trim(r)
}

fn uni_sub(a: &Uni, b: &Uni) -> Uni {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        r.push(x - y);
    }
    uni_trim(r)
}

fn uni_divrem(a: &Uni, b: &Uni) -> (Uni, Uni) {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut rem = a.clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lc;
        for (i, bc) in b.iter().enumerate() {
            rem[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        rem = uni_trim(rem);
    }
    (uni_trim(quot), rem)
}

fn uni_monic(a: Uni) -> Uni {
    match a.last() {
        Some(lc) if !lc.is_one() => {
            let inv = lc.recip();
            a.into_iter().map(|c| c * &inv).collect()
        }
        _ => a,
    }
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !uni_is_zero(&y) {
        let (_, r) = uni_divrem(&x, &y);
        x = y;
        y = r;
    }
    uni_monic(x)
}

/// `Q[p][q]`: coefficients of powers of `q`, each a dense polynomial in `p`.
#[derive(Clone, Debug)]
struct Bivar {
    coeffs: Vec<Uni>,
}

impl Bivar {
    fn from_poly(f: &Poly2) -> Self {
        let mut coeffs: Vec<Uni> = Vec::new();
        for (m, c) in f.terms() {
            let qi = m.q as usize;
            let pi = m.p as usize;
            if coeffs.len() <= qi {
                coeffs.resize(qi + 1, Vec::new());
            }
            let slot = &mut coeffs[qi];
            if slot.len() <= pi {
                slot.resize(pi + 1, BigRational::zero());
            }
            slot[pi] += c;
        }
        let coeffs = coeffs.into_iter().map(uni_trim).collect();
        Bivar { coeffs }.trimmed()
    }

    fn to_poly(&self) -> Poly2 {
        let mut r = Poly2::zero();
        for (qi, u) in self.coeffs.iter().enumerate() {
            for (pi, c) in u.iter().enumerate() {
                r.add_term(Mono::new(pi as u32, qi as u32), c.clone());
            }
        }
        r
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map(uni_is_zero).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn content(&self) -> Uni {
        let mut g: Uni = Vec::new();
        for c in &self.coeffs {
            if !uni_is_zero(c) {
                g = if uni_is_zero(&g) { uni_monic(c.clone()) } else { uni_gcd(&g, c) };
            }
        }
        g
    }

    fn primitive(&self) -> Bivar {
        let c = self.content();
        Bivar {
            coeffs: self
                .coeffs
                .iter()
                .map(|u| if uni_is_zero(u) { Vec::new() } else { uni_divrem(u, &c).0 })
                .collect(),
        }
    }

    fn scale_uni(&self, u: &Uni) -> Bivar {
        Bivar {
            coeffs: self.coeffs.iter().map(|c| uni_mul(c, u)).collect(),
        }
        .trimmed()
    }

    /// Pseudo-remainder of `self` by `b` in `Q[p][q]`.
    fn prem(&self, b: &Bivar) -> Bivar {
        let lc = b.coeffs.last().unwrap().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= b.degree() {
            let shift = r.degree() - b.degree();
            let lr = r.coeffs.last().unwrap().clone();
            let mut next = r.scale_uni(&lc);
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = uni_mul(bc, &lr);
                next.coeffs[i + shift] = uni_sub(&next.coeffs[i + shift], &t);
            }
            r = next.trimmed();
        }
        r
    }

    fn gcd(&self, o: &Bivar) -> Bivar {
        let c = uni_gcd(&self.content(), &o.content());
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        if a.degree() == 0 {
            // q-free gcd: only the content survives
            return Bivar { coeffs: vec![c] };
        }
        a.primitive().scale_uni(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn pq_minus_one() -> Poly2 {
        Poly2::term(r(1), Mono::new(1, 1)).sub(&Poly2::one())
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = pq_minus_one().mul(&Poly2::term(r(1), Mono::new(1, 0)).add(&Poly2::one()));
        let g = pq_minus_one().mul(&Poly2::term(r(3), Mono::new(0, 2)).sub(&Poly2::one()));
        assert_eq!(f.gcd(&g), pq_minus_one());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = Poly2::term(r(1), Mono::new(1, 0)).add(&Poly2::term(r(1), Mono::new(0, 1)));
        let g = pq_minus_one();
        assert!(f.gcd(&g).is_one());
    }

    #[test]
    fn exact_division_round_trips() {
        let a = pq_minus_one();
        let b = Poly2::term(r(2), Mono::new(2, 0)).add(&Poly2::term(r(-1), Mono::new(0, 3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
    }
}
