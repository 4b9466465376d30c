//! Hopf-algebra structure maps, axiom checks and the convolution algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ncpoly::{Poly, Word};
use crate::presentations::{Algebra, Catalog, GenMap, MapKind};
use crate::report::CheckReport;

/// Sums of tensors of words, one word per factor.
pub type TensorTerms<K> = BTreeMap<Vec<Word>, K>;

pub(crate) fn accumulate<T: Ord, K: Coeff>(map: &mut BTreeMap<T, K>, key: T, c: K) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

type SweedlerCache<K> = HashMap<(Word, usize), Arc<TensorTerms<K>>>;

/// Coproduct, counit and antipode of a presentation, as generator maps.
pub struct HopfStructure<K: Coeff> {
    algebra: Arc<Algebra<K>>,
    coproduct: Arc<GenMap<K>>,
    counit: Arc<GenMap<K>>,
    antipode: Arc<GenMap<K>>,
    sweedler: RwLock<SweedlerCache<K>>,
}

impl<K: Coeff> std::fmt::Debug for HopfStructure<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfStructure({})", self.algebra.name())
    }
}

impl<K: Coeff> HopfStructure<K> {
    pub fn new(coproduct: Arc<GenMap<K>>, counit: Arc<GenMap<K>>, antipode: Arc<GenMap<K>>) -> Result<Self> {
        let algebra = coproduct.source().clone();
        let same = |m: &GenMap<K>| m.source().presentation() == algebra.presentation();
        if !same(&counit) || !same(&antipode) || antipode.target().presentation() != algebra.presentation() {
            return Err(Error::AlphabetMismatch("structure maps disagree on the Hopf algebra".into()));
        }
        if coproduct.target().factors().len() != 2 || !counit.target().alphabet().is_empty() {
            return Err(Error::Other("coproduct must land in a tensor square and counit in the field".into()));
        }
        if antipode.kind() != MapKind::AntiHomomorphism {
            return Err(Error::Other("antipode must be an anti-homomorphism".into()));
        }
        Ok(HopfStructure { algebra, coproduct, counit, antipode, sweedler: RwLock::new(HashMap::new()) })
    }

    /// The structure maps named `coproduct`, `counit` and `antipode`.
    pub fn from_catalog(cat: &Catalog<K>) -> Result<Self> {
        HopfStructure::new(cat.map("coproduct")?, cat.map("counit")?, cat.map("antipode")?)
    }

    pub fn algebra(&self) -> &Arc<Algebra<K>> {
        &self.algebra
    }

    pub fn square(&self) -> &Arc<Algebra<K>> {
        self.coproduct.target()
    }

    pub fn coproduct_map(&self) -> &Arc<GenMap<K>> {
        &self.coproduct
    }

    pub fn counit_map(&self) -> &Arc<GenMap<K>> {
        &self.counit
    }

    pub fn antipode_map(&self) -> &Arc<GenMap<K>> {
        &self.antipode
    }

    /// `Δ(h)`, normalized in the tensor square.
    pub fn coproduct(&self, h: &Poly<K>) -> Poly<K> {
        self.coproduct.apply(h)
    }

    pub fn counit(&self, h: &Poly<K>) -> K {
        self.counit.apply(h).coeff(&Word::empty())
    }

    pub fn counit_word(&self, w: &Word) -> K {
        self.counit.image_word(w).coeff(&Word::empty())
    }

    pub fn antipode(&self, h: &Poly<K>) -> Poly<K> {
        self.antipode.apply(h)
    }

    /// The `n`-fold Sweedler expansion of a word: `Δ^(n-1)(w)` as `n`-tuples
    /// of normal words, iterating on the left slot.
    pub fn sweedler(&self, w: &Word, n: usize) -> Arc<TensorTerms<K>> {
        assert!(n >= 1, "at least one tensor factor");
        let key = (w.clone(), n);
        if let Some(v) = self.sweedler.read().get(&key) {
            return v.clone();
        }
        let mut out = TensorTerms::new();
        if n == 1 {
            for (u, c) in self.algebra.nf(&Poly::word(w.clone())).into_terms() {
                accumulate(&mut out, vec![u], c);
            }
        } else {
            let square = self.square();
            let delta = self.coproduct.image_word(w);
            for (ws, c) in square.split(&delta) {
                let inner = self.sweedler(&ws[0], n - 1);
                for (us, d) in inner.iter() {
                    let mut key = us.clone();
                    key.push(ws[1].clone());
                    accumulate(&mut out, key, c.mul(d));
                }
            }
        }
        let v = Arc::new(out);
        self.sweedler.write().entry(key).or_insert_with(|| v.clone()).clone()
    }

    /// Sweedler expansion of a linear combination.
    pub fn sweedler_poly(&self, h: &Poly<K>, n: usize) -> TensorTerms<K> {
        let mut out = TensorTerms::new();
        for (w, c) in h.terms() {
            for (ws, d) in self.sweedler(w, n).iter() {
                accumulate(&mut out, ws.clone(), c.mul(d));
            }
        }
        out
    }

    fn show(&self, t: &TensorTerms<K>) -> String {
        if t.is_empty() {
            return "0".into();
        }
        let a = self.algebra.alphabet();
        t.iter()
            .map(|(ws, c)| format!("({c})*{}", ws.iter().map(|w| a.fmt_word(w)).collect::<Vec<_>>().join(" ⊗ ")))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Coassociativity, both counit laws and both antipode laws on every
    /// normal word of length at most `max_degree`.
    pub fn check_axioms(&self, max_degree: usize) -> CheckReport {
        let words = self.algebra.normal_words(max_degree);
        let parts: Vec<CheckReport> = words.par_iter().map(|w| self.check_word(w)).collect();
        CheckReport::merged("hopf axioms", parts)
    }

    fn check_word(&self, w: &Word) -> CheckReport {
        let mut r = CheckReport::new("");
        let alg = &self.algebra;
        let name = alg.alphabet().fmt_word(w);
        let delta = self.sweedler(w, 2);

        let mut left = TensorTerms::new();
        let mut right = TensorTerms::new();
        for (ws, c) in delta.iter() {
            for (us, d) in self.sweedler(&ws[0], 2).iter() {
                accumulate(&mut left, vec![us[0].clone(), us[1].clone(), ws[1].clone()], c.mul(d));
            }
            for (us, d) in self.sweedler(&ws[1], 2).iter() {
                accumulate(&mut right, vec![ws[0].clone(), us[0].clone(), us[1].clone()], c.mul(d));
            }
        }
        r.expect(left == right, || format!("coassociativity on {name}"), || {
            format!("(Δ⊗id)Δ = {}, (id⊗Δ)Δ = {}", self.show(&left), self.show(&right))
        });

        let wp = alg.nf(&Poly::word(w.clone()));
        let mut eps_left = Poly::zero();
        let mut eps_right = Poly::zero();
        let mut s_left = Poly::zero();
        let mut s_right = Poly::zero();
        for (ws, c) in delta.iter() {
            eps_left.add_scaled(&Poly::word(ws[1].clone()), &c.mul(&self.counit_word(&ws[0])));
            eps_right.add_scaled(&Poly::word(ws[0].clone()), &c.mul(&self.counit_word(&ws[1])));
            let s0 = self.antipode.image_word(&ws[0]);
            let s1 = self.antipode.image_word(&ws[1]);
            s_left.add_scaled(&alg.mul(&s0, &Poly::word(ws[1].clone())), c);
            s_right.add_scaled(&alg.mul(&Poly::word(ws[0].clone()), &s1), c);
        }
        let eps = Poly::constant(self.counit_word(w));
        for (label, lhs, rhs) in [
            ("left counit", &eps_left, &wp),
            ("right counit", &eps_right, &wp),
            ("left antipode", &s_left, &eps),
            ("right antipode", &s_right, &eps),
        ] {
            r.expect(lhs == rhs, || format!("{label} on {name}"), || {
                format!("{} != {}", alg.fmt(lhs), alg.fmt(rhs))
            });
        }
        r
    }

    /// `ε∘S = ε` and `Δ∘S = (S⊗S)∘flip∘Δ` on generators.
    pub fn check_antipode_compatibility(&self) -> CheckReport {
        let mut r = CheckReport::new("antipode compatibility");
        let alg = &self.algebra;
        for l in 0..alg.alphabet().len() as u8 {
            let g = Word::letter(l);
            let name = alg.alphabet().name(l).to_string();
            let s = self.antipode.image_word(&g);
            let eps_s = self.counit(&s);
            let eps = self.counit_word(&g);
            r.expect(eps_s == eps, || format!("counit of S({name})"), || format!("{eps_s} != {eps}"));
            let lhs = self.sweedler_poly(&s, 2);
            let mut rhs = TensorTerms::new();
            for (ws, c) in self.sweedler(&g, 2).iter() {
                let s0 = self.antipode.image_word(&ws[0]);
                let s1 = self.antipode.image_word(&ws[1]);
                for (u, a) in s1.terms() {
                    for (v, b) in s0.terms() {
                        accumulate(&mut rhs, vec![u.clone(), v.clone()], c.mul(a).mul(b));
                    }
                }
            }
            r.expect(lhs == rhs, || format!("coproduct of S({name})"), || {
                format!("{} != {}", self.show(&lhs), self.show(&rhs))
            });
        }
        r
    }
}

type WordFn<K> = dyn Fn(&Word) -> Poly<K> + Send + Sync;

/// A linear map `H -> P` evaluated lazily on words and cached.
pub struct ConvolutionMap<K: Coeff> {
    pub name: String,
    hopf: Arc<HopfStructure<K>>,
    target: Arc<Algebra<K>>,
    eval: Arc<WordFn<K>>,
    cache: RwLock<HashMap<Word, Arc<Poly<K>>>>,
}

impl<K: Coeff> std::fmt::Debug for ConvolutionMap<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConvolutionMap({}: {} -> {})", self.name, self.hopf.algebra.name(), self.target.name())
    }
}

impl<K: Coeff> ConvolutionMap<K> {
    /// `eval` must return elements normalized in `target`.
    pub fn from_fn(
        name: &str,
        hopf: Arc<HopfStructure<K>>,
        target: Arc<Algebra<K>>,
        eval: impl Fn(&Word) -> Poly<K> + Send + Sync + 'static,
    ) -> Self {
        ConvolutionMap { name: name.into(), hopf, target, eval: Arc::new(eval), cache: RwLock::new(HashMap::new()) }
    }

    /// A (anti-)multiplicative map given by generator images.
    pub fn from_genmap(hopf: Arc<HopfStructure<K>>, map: Arc<GenMap<K>>) -> Result<Self> {
        if map.source().presentation() != hopf.algebra.presentation() {
            return Err(Error::AlphabetMismatch(format!("{} is not defined on {}", map.name, hopf.algebra.name())));
        }
        let target = map.target().clone();
        let name = map.name.clone();
        Ok(Self::from_fn(&name, hopf, target, move |w| (*map.image_word(w)).clone()))
    }

    /// The convolution unit `h ↦ ε(h) 1`.
    pub fn unit(hopf: Arc<HopfStructure<K>>, target: Arc<Algebra<K>>) -> Self {
        let h = hopf.clone();
        Self::from_fn("unit", hopf, target, move |w| Poly::constant(h.counit_word(w)))
    }

    pub fn hopf(&self) -> &Arc<HopfStructure<K>> {
        &self.hopf
    }

    pub fn target(&self) -> &Arc<Algebra<K>> {
        &self.target
    }

    pub fn value(&self, w: &Word) -> Arc<Poly<K>> {
        if let Some(v) = self.cache.read().get(w) {
            return v.clone();
        }
        let v = Arc::new((self.eval)(w));
        self.cache.write().entry(w.clone()).or_insert_with(|| v.clone()).clone()
    }

    pub fn apply(&self, h: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in h.terms() {
            out.add_scaled(&self.value(w), c);
        }
        out
    }

    /// `(f ∗ g)(h) = Σ f(h₁) g(h₂)`.
    pub fn convolve(f: &Arc<ConvolutionMap<K>>, g: &Arc<ConvolutionMap<K>>) -> Result<ConvolutionMap<K>> {
        if f.target.presentation() != g.target.presentation() || f.hopf.algebra.presentation() != g.hopf.algebra.presentation()
        {
            return Err(Error::AlphabetMismatch(format!("cannot convolve {} with {}", f.name, g.name)));
        }
        let (f2, g2) = (f.clone(), g.clone());
        let name = format!("{}*{}", f.name, g.name);
        Ok(Self::from_fn(&name, f.hopf.clone(), f.target.clone(), move |w| {
            let mut out = Poly::zero();
            for (ws, c) in f2.hopf.sweedler(w, 2).iter() {
                out.add_scaled(&f2.target.mul(&f2.value(&ws[0]), &g2.value(&ws[1])), c);
            }
            out
        }))
    }

    /// Compares two maps on every normal word up to `max_degree`.
    pub fn check_equal(&self, other: &ConvolutionMap<K>, max_degree: usize, title: &str) -> CheckReport {
        let words = self.hopf.algebra.normal_words(max_degree);
        let parts: Vec<CheckReport> = words
            .par_iter()
            .map(|w| {
                let mut r = CheckReport::new("");
                let (a, b) = (self.value(w), other.value(w));
                r.expect(a == b, || self.hopf.algebra.alphabet().fmt_word(w), || {
                    format!("{} != {}", self.target.fmt(&a), self.target.fmt(&b))
                });
                r
            })
            .collect();
        CheckReport::merged(title, parts)
    }
}

/// `f ∗ g = g ∗ f = unit` on normal words up to `max_degree`.
pub fn check_convolution_inverse<K: Coeff>(
    f: &Arc<ConvolutionMap<K>>,
    g: &Arc<ConvolutionMap<K>>,
    max_degree: usize,
) -> Result<CheckReport> {
    let unit = ConvolutionMap::unit(f.hopf.clone(), f.target.clone());
    let fg = ConvolutionMap::convolve(f, g)?;
    let gf = ConvolutionMap::convolve(g, f)?;
    let mut r = CheckReport::new(format!("{} inverts {}", g.name, f.name));
    r.absorb(fg.check_equal(&unit, max_degree, "f*g"));
    r.absorb(gf.check_equal(&unit, max_degree, "g*f"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Symbolic;
    use crate::presentations::Registry;
    use crate::scalar::Scalar;

    fn hopf() -> (Catalog<Scalar>, Arc<HopfStructure<Scalar>>) {
        let cat = Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic));
        let h = Arc::new(HopfStructure::from_catalog(&cat).unwrap());
        (cat, h)
    }

    #[test]
    fn coproduct_of_generators() {
        let (cat, h) = hopf();
        let sq = cat.algebra("gl2_tensor_square").unwrap();
        let a = h.algebra().parse("a").unwrap();
        assert_eq!(h.coproduct(&a), sq.parse("a_1*a_2 + b_1*c_2").unwrap());
        let di = h.algebra().parse("Dinv").unwrap();
        assert_eq!(h.coproduct(&di), sq.parse("Dinv_1*Dinv_2").unwrap());
        assert_eq!(h.coproduct(&Poly::one()), Poly::one());
    }

    #[test]
    fn counit_and_antipode_values() {
        let (_, h) = hopf();
        let alg = h.algebra().clone();
        assert!(h.counit(&alg.parse("a*b").unwrap()).is_zero());
        assert!(h.counit(&alg.parse("a*d*Dinv").unwrap()).is_one());
        assert_eq!(h.antipode(&alg.parse("a").unwrap()), alg.parse("d*Dinv").unwrap());
        // Anti-multiplicativity: S(ab) = S(b) S(a).
        let sab = h.antipode(&alg.parse("a*b").unwrap());
        let expected = alg.mul(&alg.parse("-q^-1*b*Dinv").unwrap(), &alg.parse("d*Dinv").unwrap());
        assert_eq!(sab, expected);
    }

    #[test]
    fn antipode_law_on_a() {
        let (_, h) = hopf();
        let alg = h.algebra().clone();
        let lhs = alg.parse("d*Dinv*a - q^-1*b*Dinv*c").unwrap();
        assert_eq!(lhs, Poly::one());
    }

    #[test]
    fn axioms_hold_to_degree_two() {
        let (_, h) = hopf();
        let r = h.check_axioms(2);
        assert!(r.passed(), "{r}");
        assert!(h.check_antipode_compatibility().passed());
    }

    #[test]
    fn unit_is_neutral_for_convolution() {
        let (cat, h) = hopf();
        let gl = cat.algebra("gl2").unwrap();
        let id = Arc::new(ConvolutionMap::from_genmap(h.clone(), Arc::new(GenMap::identity(gl.clone()))).unwrap());
        let unit = Arc::new(ConvolutionMap::unit(h.clone(), gl));
        let u_id = ConvolutionMap::convolve(&unit, &id).unwrap();
        assert!(u_id.check_equal(&id, 2, "unit*id").passed());
        let s = Arc::new(ConvolutionMap::from_genmap(h.clone(), h.antipode_map().clone()).unwrap());
        assert!(check_convolution_inverse(&id, &s, 2).unwrap().passed());
    }
}
