use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use super::{parse_expr, Presentation, Registry};
use crate::coeff::{Coeff, Specializer};
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Letter, Poly, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;

/// Completion bound used for built algebras.
///
/// The inverse-determinant relation has no finite rewriting basis: completion
/// keeps producing `Dinv*c^k*b` rules. Words met by the degree-3 checks stay far
/// below this bound.
pub const DEFAULT_COMPLETION: usize = 12;

/// A presentation bound to a coefficient backend, with its rewrite system.
pub struct Algebra<K: Coeff> {
    presentation: Arc<Presentation>,
    system: RewriteSystem<K>,
    factors: Vec<Arc<Algebra<K>>>,
    lift: Arc<dyn Specializer<K>>,
}

impl<K: Coeff> fmt::Debug for Algebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.presentation.name)
    }
}

impl<K: Coeff> Algebra<K> {
    /// Builds the rewrite system, completing it up to `completion` (see
    /// [`DEFAULT_COMPLETION`]); `0` keeps only the declared rules.
    pub fn new(presentation: Arc<Presentation>, lift: Arc<dyn Specializer<K>>, completion: usize) -> Result<Arc<Self>> {
        let system = presentation.completed_system(lift.as_ref(), completion)?;
        Ok(Arc::new(Algebra { presentation, system, factors: Vec::new(), lift }))
    }

    /// The tensor product of already-built algebras.
    pub fn tensor(name: &str, factors: &[Arc<Algebra<K>>], completion: usize) -> Result<Arc<Self>> {
        let lift = factors.first().ok_or_else(|| Error::Other("empty tensor product".into()))?.lift.clone();
        let pres: Vec<Arc<Presentation>> = factors.iter().map(|f| f.presentation.clone()).collect();
        let presentation = Arc::new(Presentation::tensor(name, &pres)?);
        let system = presentation.completed_system(lift.as_ref(), completion)?;
        Ok(Arc::new(Algebra { presentation, system, factors: factors.to_vec(), lift }))
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn system(&self) -> &RewriteSystem<K> {
        &self.system
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    pub fn specializer(&self) -> &Arc<dyn Specializer<K>> {
        &self.lift
    }

    pub fn scalar(&self, s: &Scalar) -> Result<K> {
        self.lift.lift(s)
    }

    pub fn lift_poly(&self, f: &Poly<Scalar>) -> Result<Poly<K>> {
        f.map_coeffs(|c| self.lift.lift(c))
    }

    pub fn gen(&self, name: &str) -> Result<Poly<K>> {
        Ok(Poly::letter(self.alphabet().letter(name)?))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet().letter(name)
    }

    /// Parses an expression in the presentation language and normalizes it.
    pub fn parse(&self, text: &str) -> Result<Poly<K>> {
        Ok(self.nf(&self.lift_poly(&parse_expr(text, self.alphabet())?)?))
    }

    pub fn nf(&self, f: &Poly<K>) -> Poly<K> {
        self.system.normal_form(f)
    }

    pub fn mul(&self, f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
        self.system.mul(f, g)
    }

    pub fn product<'a>(&self, fs: impl IntoIterator<Item = &'a Poly<K>>) -> Poly<K> {
        fs.into_iter().fold(Poly::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn fmt(&self, f: &Poly<K>) -> String {
        f.display(self.alphabet()).to_string()
    }

    pub fn normal_words(&self, n: usize) -> Vec<Word> {
        self.system.normal_words(n)
    }

    /// A normalized random element built from up to `terms` random words of
    /// length at most `max_degree`, with small nonzero integer coefficients.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R, max_degree: usize, terms: usize) -> Poly<K> {
        let n = self.alphabet().len() as Letter;
        let mut f = Poly::zero();
        for _ in 0..terms {
            let len = if n == 0 { 0 } else { rng.gen_range(0..=max_degree) };
            let w: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let mut c = rng.gen_range(-3i64..=2);
            if c >= 0 {
                c += 1;
            }
            f.add_term(Word::from_letters(&w), K::from_i64(c));
        }
        self.nf(&f)
    }

    pub fn factors(&self) -> &[Arc<Algebra<K>>] {
        &self.factors
    }

    /// `f_1 ⊗ f_2 ⊗ ...` for factor elements given in order.
    pub fn join(&self, parts: &[&Poly<K>]) -> Poly<K> {
        assert_eq!(parts.len(), self.factors.len(), "one part per tensor factor");
        let mut acc: Vec<(Vec<Word>, K)> = vec![(Vec::new(), K::one())];
        for part in parts {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, d) in part.terms() {
                    let mut ws = ws.clone();
                    ws.push(w.clone());
                    next.push((ws, c.mul(d)));
                }
            }
            acc = next;
        }
        let alphabet = self.alphabet();
        let mut out = Poly::zero();
        for (ws, c) in acc {
            out.add_term(alphabet.join_words(&ws), c);
        }
        self.nf(&out)
    }

    /// Terms of a normalized tensor element as `(factor words, coefficient)`.
    pub fn split(&self, f: &Poly<K>) -> Vec<(Vec<Word>, K)> {
        f.terms().map(|(w, c)| (self.alphabet().split_word(w), c.clone())).collect()
    }

    /// Applies one linear map per factor and tensors the results.
    pub fn map_factors(&self, f: &Poly<K>, maps: &[&FactorMap<K>]) -> Poly<K> {
        let mut out = Poly::zero();
        for (ws, c) in self.split(f) {
            let images: Vec<Poly<K>> = ws.iter().zip(maps).map(|(w, m)| m(w)).collect();
            let refs: Vec<&Poly<K>> = images.iter().collect();
            out.add_scaled(&self.join(&refs), &c);
        }
        out
    }
}

/// Per-factor word map used by [`Algebra::map_factors`].
pub type FactorMap<K> = dyn Fn(&Word) -> Poly<K>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    AntiHomomorphism,
}

/// A map determined by generator images, extended (anti-)multiplicatively.
pub struct GenMap<K: Coeff> {
    pub name: String,
    source: Arc<Algebra<K>>,
    target: Arc<Algebra<K>>,
    images: Vec<Poly<K>>,
    kind: MapKind,
    cache: RwLock<HashMap<Word, Arc<Poly<K>>>>,
}

impl<K: Coeff> fmt::Debug for GenMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenMap({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl<K: Coeff> GenMap<K> {
    /// `images` must assign every source generator.
    pub fn new(
        name: &str,
        source: Arc<Algebra<K>>,
        target: Arc<Algebra<K>>,
        images: Vec<(String, Poly<K>)>,
        kind: MapKind,
    ) -> Result<Self> {
        let sa = source.alphabet();
        let mut slots: Vec<Option<Poly<K>>> = vec![None; sa.len()];
        for (g, img) in images {
            let l = sa.letter(&g)?;
            if let Some(w) = img.words().find(|w| !target.alphabet().contains_word(w)) {
                return Err(Error::AlphabetMismatch(format!("image of `{g}` has word {w:?} outside {}", target.name())));
            }
            slots[l as usize] = Some(target.nf(&img));
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(l, s)| s.ok_or_else(|| Error::Other(format!("`{name}` assigns no image to `{}`", sa.name(l as Letter)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GenMap { name: name.to_string(), source, target, images, kind, cache: RwLock::new(HashMap::new()) })
    }

    pub fn identity(alg: Arc<Algebra<K>>) -> Self {
        let images = (0..alg.alphabet().len() as Letter).map(|l| (alg.alphabet().name(l).to_string(), Poly::letter(l))).collect();
        GenMap::new("identity", alg.clone(), alg, images, MapKind::Homomorphism).expect("identity images")
    }

    pub fn source(&self) -> &Arc<Algebra<K>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra<K>> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn image_of(&self, l: Letter) -> &Poly<K> {
        &self.images[l as usize]
    }

    /// Image of an arbitrary (not necessarily normal) source word.
    pub fn image_word(&self, w: &Word) -> Arc<Poly<K>> {
        if w.is_empty() {
            return Arc::new(Poly::one());
        }
        if w.len() == 1 {
            return Arc::new(self.images[w.letters()[0] as usize].clone());
        }
        if let Some(v) = self.cache.read().get(w) {
            return v.clone();
        }
        let ls = w.letters();
        let head = self.image_word(&Word::from_letters(&ls[..ls.len() - 1]));
        let last = &self.images[ls[ls.len() - 1] as usize];
        let v = match self.kind {
            MapKind::Homomorphism => self.target.mul(&head, last),
            MapKind::AntiHomomorphism => self.target.mul(last, &head),
        };
        let v = Arc::new(v);
        self.cache.write().entry(w.clone()).or_insert_with(|| v.clone()).clone()
    }

    /// Linear extension over words; the result is normalized in the target.
    pub fn apply(&self, f: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(&self.image_word(w), c);
        }
        out
    }

    /// Checks that every defining relation of the source maps to zero.
    pub fn respects_relations(&self) -> RelationReport<K> {
        let pres = self.source.presentation();
        let alphabet = pres.alphabet.clone();
        let mut checks = Vec::new();
        for r in &pres.relations {
            let text = format!("{} = {}", r.lhs.display(&alphabet), r.rhs.display(&alphabet));
            let image = match self.source.lift_poly(&r.difference()) {
                Ok(f) => Ok(self.apply(&f)),
                Err(e) => Err(e),
            };
            checks.push(RelationCheck { relation: text, image });
        }
        RelationReport { map: self.name.clone(), checks }
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &GenMap<K>) -> Result<GenMap<K>> {
        if !Arc::ptr_eq(&self.target, &other.source) && self.target.presentation() != other.source.presentation() {
            return Err(Error::AlphabetMismatch(format!("{} does not feed {}", self.name, other.name)));
        }
        let kind = if self.kind == other.kind { MapKind::Homomorphism } else { MapKind::AntiHomomorphism };
        let sa = self.source.alphabet();
        let images = (0..sa.len() as Letter).map(|l| (sa.name(l).to_string(), other.apply(&self.images[l as usize]))).collect();
        GenMap::new(&format!("{}.{}", other.name, self.name), self.source.clone(), other.target.clone(), images, kind)
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck<K> {
    pub relation: String,
    /// Normal form of the relation's image; zero when respected.
    pub image: Result<Poly<K>>,
}

#[derive(Clone, Debug)]
pub struct RelationReport<K> {
    pub map: String,
    pub checks: Vec<RelationCheck<K>>,
}

impl<K: Coeff> RelationReport<K> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(&c.image, Ok(f) if f.is_zero()))
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck<K>> {
        self.checks.iter().filter(|c| !matches!(&c.image, Ok(f) if f.is_zero()))
    }
}

/// Lazily built algebras and maps from a registry, for one backend.
pub struct Catalog<K: Coeff> {
    registry: Arc<Registry>,
    lift: Arc<dyn Specializer<K>>,
    algebras: Mutex<HashMap<String, Arc<Algebra<K>>>>,
    maps: Mutex<HashMap<String, Arc<GenMap<K>>>>,
    completion: usize,
}

impl<K: Coeff> Catalog<K> {
    pub fn new(registry: Arc<Registry>, lift: Arc<dyn Specializer<K>>) -> Self {
        Catalog::with_completion(registry, lift, DEFAULT_COMPLETION)
    }

    pub fn with_completion(registry: Arc<Registry>, lift: Arc<dyn Specializer<K>>, completion: usize) -> Self {
        Catalog {
            registry,
            lift,
            algebras: Mutex::new(HashMap::new()),
            maps: Mutex::new(HashMap::new()),
            completion,
        }
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn specializer(&self) -> &Arc<dyn Specializer<K>> {
        &self.lift
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<Algebra<K>>> {
        if let Some(a) = self.algebras.lock().get(name) {
            return Ok(a.clone());
        }
        let alg = match self.registry.tensor_factors(name) {
            Some(factors) => {
                let fs = factors.iter().map(|f| self.algebra(f)).collect::<Result<Vec<_>>>()?;
                Algebra::tensor(name, &fs, self.completion)?
            }
            None => Algebra::new(self.registry.presentation(name)?, self.lift.clone(), self.completion)?,
        };
        Ok(self.algebras.lock().entry(name.to_string()).or_insert(alg).clone())
    }

    pub fn map(&self, name: &str) -> Result<Arc<GenMap<K>>> {
        if let Some(m) = self.maps.lock().get(name) {
            return Ok(m.clone());
        }
        let decl = self.registry.morphism(name)?;
        let source = self.algebra(&decl.source)?;
        let target = self.algebra(&decl.target)?;
        let images = decl
            .images
            .iter()
            .map(|(g, f)| Ok((g.clone(), target.lift_poly(f)?)))
            .collect::<Result<Vec<_>>>()?;
        let kind = if decl.anti { MapKind::AntiHomomorphism } else { MapKind::Homomorphism };
        let m = Arc::new(GenMap::new(name, source, target, images, kind)?);
        Ok(self.maps.lock().entry(name.to_string()).or_insert(m).clone())
    }
}
