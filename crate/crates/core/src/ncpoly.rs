//! Words, monomial orders and free-algebra polynomials.
//!
//! Letters are small integers numbered by precedence: letter `0` is the smallest.
//! With that numbering the degree-lexicographic order is just "shorter first, then
//! lexicographic on letter ids", which is what `Ord for Word` implements.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};

pub type Letter = u8;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        Word(SmallVec::from_slice(ls))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// `prefix · middle · suffix` without intermediate allocations.
    pub fn splice(prefix: &[Letter], middle: &[Letter], suffix: &[Letter]) -> Word {
        let mut v = SmallVec::with_capacity(prefix.len() + middle.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(middle);
        v.extend_from_slice(suffix);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Position of the first occurrence of `pat` as a factor.
    pub fn find(&self, pat: &[Letter]) -> Option<usize> {
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A generator set, numbered by ascending precedence.
///
/// Tensor alphabets remember, for every letter, which factor and which factor
/// letter it came from.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    grades: Vec<u32>,
    origin: Vec<Option<(usize, Letter)>>,
    factors: Vec<Arc<Alphabet>>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    /// Builds an alphabet from generator names listed by *descending* precedence.
    pub fn from_precedence<S: AsRef<str>>(descending: &[S]) -> Result<Self> {
        Self::with_grades(descending, &vec![0; descending.len()])
    }

    pub fn with_grades<S: AsRef<str>>(descending: &[S], grades: &[u32]) -> Result<Self> {
        if descending.len() > Letter::MAX as usize {
            return Err(Error::Other("too many generators".into()));
        }
        let names: Vec<String> = descending.iter().rev().map(|s| s.as_ref().to_string()).collect();
        let grades: Vec<u32> = grades.iter().rev().copied().collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as Letter).is_some() {
                return Err(Error::Other(format!("duplicate generator `{n}`")));
            }
        }
        let origin = vec![None; names.len()];
        Ok(Alphabet { names, grades, origin, factors: Vec::new(), index })
    }

    /// Disjoint union of tagged copies; later factors take higher precedence so
    /// that normal words read factor 1, then factor 2, and so on.
    pub fn tensor(factors: &[Arc<Alphabet>]) -> Result<Self> {
        let mut names = Vec::new();
        let mut grades = Vec::new();
        let mut origin = Vec::new();
        for (fi, a) in factors.iter().enumerate() {
            for l in 0..a.len() {
                names.push(format!("{}_{}", a.names[l], fi + 1));
                grades.push(a.grades[l]);
                origin.push(Some((fi, l as Letter)));
            }
        }
        if names.len() > Letter::MAX as usize {
            return Err(Error::Other("tensor alphabet too large".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as Letter).is_some() {
                return Err(Error::Other(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet { names, grades, origin, factors: factors.to_vec(), index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn grade(&self, l: Letter) -> u32 {
        self.grades[l as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.lookup(name)
            .ok_or_else(|| Error::AlphabetMismatch(format!("no generator `{name}`")))
    }

    /// Generator names by descending precedence.
    pub fn precedence(&self) -> Vec<&str> {
        self.names.iter().rev().map(String::as_str).collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn factors(&self) -> &[Arc<Alphabet>] {
        &self.factors
    }

    pub fn is_tensor(&self) -> bool {
        !self.factors.is_empty()
    }

    pub fn origin(&self, l: Letter) -> Option<(usize, Letter)> {
        self.origin[l as usize]
    }

    /// The letter standing for `l` of factor `factor`.
    pub fn factor_letter(&self, factor: usize, l: Letter) -> Option<Letter> {
        let offset: usize = self.factors.get(..factor)?.iter().map(|a| a.len()).sum();
        let fa = self.factors.get(factor)?;
        ((l as usize) < fa.len()).then_some((offset + l as usize) as Letter)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| (l as usize) < self.len())
    }

    pub fn word_grade(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&l| self.grade(l)).sum()
    }

    /// Splits a tensor word into its factor words, keeping relative order.
    pub fn split_word(&self, w: &Word) -> Vec<Word> {
        let mut parts = vec![Word::empty(); self.factors.len()];
        for &l in w.letters() {
            let (fi, fl) = self.origin(l).expect("split_word on a non-tensor alphabet");
            parts[fi].push(fl);
        }
        parts
    }

    pub fn join_words(&self, parts: &[Word]) -> Word {
        let mut w = Word::empty();
        for (fi, part) in parts.iter().enumerate() {
            for &l in part.letters() {
                w.push(self.factor_letter(fi, l).expect("factor letter"));
            }
        }
        w
    }

    pub fn parse_word(&self, names: &[&str]) -> Result<Word> {
        let mut w = Word::empty();
        for n in names {
            w.push(self.letter(n)?);
        }
        Ok(w)
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self.precedence().join(" > "))
    }
}

/// Degree-lexicographic order over an alphabet's precedence.
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    alphabet: Arc<Alphabet>,
}

impl MonomialOrder {
    pub fn deglex(alphabet: Arc<Alphabet>) -> Self {
        MonomialOrder { alphabet }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }
}

pub fn word_compare(u: &Word, v: &Word, ord: &MonomialOrder) -> Result<Ordering> {
    for w in [u, v] {
        if !ord.alphabet.contains_word(w) {
            return Err(Error::AlphabetMismatch(format!("word {w:?} is not over {:?}", ord.alphabet)));
        }
    }
    Ok(u.cmp(v))
}

/// A finite linear combination of words; zero coefficients never stored.
#[derive(Clone, PartialEq)]
pub struct Poly<K> {
    terms: BTreeMap<Word, K>,
}

impl<K: Coeff> Default for Poly<K> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<K: Coeff> Poly<K> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Poly::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Poly { terms }
    }

    pub fn word(w: Word) -> Self {
        Poly::term(w, K::one())
    }

    pub fn letter(l: Letter) -> Self {
        Poly::word(Word::letter(l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &K)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, K)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Word, K)> {
        self.terms.pop_last()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map(Word::len).unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Poly<K>, c: &K) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &o.terms {
            self.add_term(w.clone(), v.mul(c));
        }
    }

    pub fn add(&self, o: &Poly<K>) -> Poly<K> {
        let mut r = self.clone();
        r.add_scaled(o, &K::one());
        r
    }

    pub fn sub(&self, o: &Poly<K>) -> Poly<K> {
        let mut r = self.clone();
        r.add_scaled(o, &K::one().neg());
        r
    }

    pub fn neg(&self) -> Poly<K> {
        self.scale(&K::one().neg())
    }

    pub fn scale(&self, c: &K) -> Poly<K> {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v.mul(c))).collect() }
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, o: &Poly<K>) -> Poly<K> {
        let mut r = Poly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                r.add_term(u.concat(v), a.mul(b));
            }
        }
        r
    }

    pub fn map_coeffs<L: Coeff>(&self, mut f: impl FnMut(&K) -> crate::error::Result<L>) -> crate::error::Result<Poly<L>> {
        let mut r = Poly::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Renames every letter; words must stay distinct or are merged.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Poly<K> {
        let mut r = Poly::zero();
        for (w, c) in &self.terms {
            let nw = Word(w.letters().iter().map(|&l| f(l)).collect());
            r.add_term(nw, c.clone());
        }
        r
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).max()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a, K> {
        PolyDisplay { poly: self, alphabet }
    }
}

impl<K: fmt::Debug> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub struct PolyDisplay<'a, K> {
    poly: &'a Poly<K>,
    alphabet: &'a Alphabet,
}

impl<K: Coeff> fmt::Display for PolyDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms.iter().rev().map(|(w, c)| {
            let (neg, body) = c.signed_parts();
            let text = if w.is_empty() {
                body
            } else if body == "1" {
                self.alphabet.fmt_word(w)
            } else {
                format!("{body}*{}", self.alphabet.fmt_word(w))
            };
            (neg, text)
        });
        f.write_str(&crate::scalar::join_terms(terms))
    }
}

/// A polynomial tagged with its alphabet, for the checked arithmetic entry points.
#[derive(Clone, Debug)]
pub struct Element<K> {
    pub alphabet: Arc<Alphabet>,
    pub poly: Poly<K>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl<K: Coeff> Element<K> {
    pub fn new(alphabet: Arc<Alphabet>, poly: Poly<K>) -> Result<Self> {
        if let Some(w) = poly.words().find(|w| !alphabet.contains_word(w)) {
            return Err(Error::AlphabetMismatch(format!("word {w:?} is not over {alphabet:?}")));
        }
        Ok(Element { alphabet, poly })
    }

    pub fn apply(&self, op: PolyOp, o: &Element<K>) -> Result<Element<K>> {
        if !Arc::ptr_eq(&self.alphabet, &o.alphabet) && *self.alphabet != *o.alphabet {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, o.alphabet)));
        }
        let poly = match op {
            PolyOp::Add => self.poly.add(&o.poly),
            PolyOp::Sub => self.poly.sub(&o.poly),
            PolyOp::Mul => self.poly.mul(&o.poly),
        };
        Ok(Element { alphabet: self.alphabet.clone(), poly })
    }

    pub fn scale(&self, c: &K) -> Element<K> {
        Element { alphabet: self.alphabet.clone(), poly: self.poly.scale(c) }
    }
}

impl<K: Coeff> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display(&self.alphabet))
    }
}

/// Re-tags `f` (over factor `factor` of `target`) into the tensor alphabet.
pub fn tensor_embed<K: Coeff>(f: &Poly<K>, factor: usize, target: &Alphabet) -> Result<Poly<K>> {
    let fa = target
        .factors()
        .get(factor)
        .ok_or_else(|| Error::AlphabetMismatch(format!("tensor alphabet has no factor {}", factor + 1)))?;
    if let Some(w) = f.words().find(|w| !fa.contains_word(w)) {
        return Err(Error::AlphabetMismatch(format!("word {w:?} is not over factor {}", factor + 1)));
    }
    Ok(f.map_letters(|l| target.factor_letter(factor, l).unwrap()))
}

/// Rewrites `f` into `to` by generator name; fails on a letter `to` lacks.
pub fn translate<K: Coeff>(f: &Poly<K>, from: &Alphabet, to: &Alphabet) -> Result<Poly<K>> {
    let mut table = Vec::with_capacity(from.len());
    for l in 0..from.len() as Letter {
        table.push(to.lookup(from.name(l)));
    }
    let mut out = Poly::zero();
    for (w, c) in f.terms() {
        let mut t = Word::empty();
        for &l in w.letters() {
            let m = table[l as usize]
                .ok_or_else(|| Error::AlphabetMismatch(format!("`{}` has no counterpart", from.name(l))))?;
            t.push(m);
        }
        out.add_term(t, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn abcd() -> Arc<Alphabet> {
        Arc::new(Alphabet::from_precedence(&["a", "b", "c", "d"]).unwrap())
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        let names: Vec<String> = s.chars().map(|c| c.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        a.parse_word(&refs).unwrap()
    }

    #[test]
    fn deglex_examples() {
        let a = abcd();
        let ord = MonomialOrder::deglex(a.clone());
        assert_eq!(word_compare(&w(&a, "ab"), &w(&a, "ba"), &ord).unwrap(), Ordering::Greater);
        assert_eq!(word_compare(&w(&a, "a"), &w(&a, "bc"), &ord).unwrap(), Ordering::Less);
        assert_eq!(word_compare(&w(&a, "ad"), &w(&a, "bc"), &ord).unwrap(), Ordering::Greater);
    }

    #[test]
    fn compare_rejects_foreign_letters() {
        let a = abcd();
        let ord = MonomialOrder::deglex(a);
        assert!(word_compare(&Word::letter(9), &Word::letter(0), &ord).is_err());
    }

    #[test]
    fn free_product_and_printing() {
        let a = Arc::new(Alphabet::from_precedence(&["x", "y"]).unwrap());
        let x = Poly::<Scalar>::letter(a.letter("x").unwrap());
        let y = Poly::<Scalar>::letter(a.letter("y").unwrap());
        let xy = x.mul(&y);
        assert_eq!(xy.display(&a).to_string(), "x*y");
        let rel = xy.sub(&y.mul(&x).scale(&Scalar::p()));
        assert_eq!(rel.display(&a).to_string(), "x*y - p*y*x");
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let a = abcd();
        let b = Arc::new(Alphabet::from_precedence(&["x", "y"]).unwrap());
        let f = Element::new(a, Poly::<Scalar>::letter(0)).unwrap();
        let g = Element::new(b, Poly::<Scalar>::letter(0)).unwrap();
        assert!(f.apply(PolyOp::Mul, &g).is_err());
        assert!(Element::new(abcd(), Poly::<Scalar>::letter(7)).is_err());
    }

    #[test]
    fn tensor_embed_retags_letters() {
        let h = abcd();
        let t = Alphabet::tensor(&[h.clone(), h.clone()]).unwrap();
        let a = Poly::<Scalar>::letter(h.letter("a").unwrap());
        let e1 = tensor_embed(&a, 0, &t).unwrap();
        let e2 = tensor_embed(&a, 1, &t).unwrap();
        assert_eq!(e1.display(&t).to_string(), "a_1");
        assert_eq!(e2.display(&t).to_string(), "a_2");
        assert_eq!(tensor_embed(&Poly::<Scalar>::one(), 0, &t).unwrap(), Poly::one());
        assert!(tensor_embed(&a, 2, &t).is_err());
        let prod = e1.mul(&e2);
        let (word, _) = prod.leading().unwrap();
        let parts = t.split_word(word);
        assert_eq!(parts, vec![Word::letter(3), Word::letter(3)]);
        assert_eq!(t.join_words(&parts), word.clone());
    }
}
