//! Left (cocycle) actions of a Hopf algebra on an algebra, the crossed product
//! they define, and the way back from a cleaving map.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::{accumulate, ConvolutionMap, HopfStructure};
use crate::ncpoly::{translate, Alphabet, Letter, Poly, Word};
use crate::presentations::{Algebra, Catalog, GenMap, Presentation, Relation};
use crate::report::CheckReport;
use crate::rewrite::{Provenance, RewriteSystem};
use crate::scalar::Scalar;

type ActionCache<K> = HashMap<(Letter, Word), Arc<Poly<K>>>;

/// An action given on generators and extended through the coproduct.
pub struct LeftAction<K: Coeff> {
    pub name: String,
    hopf: Arc<HopfStructure<K>>,
    module: Arc<Algebra<K>>,
    /// `table[g][u] = g ▷ u` for generator letters.
    table: Vec<Vec<Poly<K>>>,
    cache: RwLock<ActionCache<K>>,
}

impl<K: Coeff> std::fmt::Debug for LeftAction<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LeftAction({}: {} on {})", self.name, self.hopf.algebra().name(), self.module.name())
    }
}

impl<K: Coeff> LeftAction<K> {
    /// `entries` lists `(h generator, b generator, h ▷ b)`; every pair must
    /// be present.
    pub fn new(
        name: &str,
        hopf: Arc<HopfStructure<K>>,
        module: Arc<Algebra<K>>,
        entries: Vec<(String, String, Poly<K>)>,
    ) -> Result<Self> {
        let ha = hopf.algebra().alphabet().clone();
        let ba = module.alphabet().clone();
        let mut slots: Vec<Vec<Option<Poly<K>>>> = vec![vec![None; ba.len()]; ha.len()];
        for (g, u, v) in entries {
            if let Some(w) = v.words().find(|w| !ba.contains_word(w)) {
                return Err(Error::AlphabetMismatch(format!("{g} |> {u} has word {w:?} outside {}", module.name())));
            }
            slots[ha.letter(&g)? as usize][ba.letter(&u)? as usize] = Some(module.nf(&v));
        }
        let mut table = Vec::with_capacity(ha.len());
        for (g, row) in slots.into_iter().enumerate() {
            let mut out = Vec::with_capacity(ba.len());
            for (u, v) in row.into_iter().enumerate() {
                out.push(v.ok_or_else(|| {
                    Error::MissingAction(format!("{} |> {}", ha.name(g as Letter), ba.name(u as Letter)))
                })?);
            }
            table.push(out);
        }
        Ok(LeftAction { name: name.into(), hopf, module, table, cache: RwLock::new(HashMap::new()) })
    }

    /// The registry action called `name`, bound to `hopf`.
    pub fn from_catalog(cat: &Catalog<K>, hopf: Arc<HopfStructure<K>>, name: &str) -> Result<Self> {
        let decl = cat.registry().action(name)?.clone();
        if decl.hopf != hopf.algebra().name() {
            return Err(Error::AlphabetMismatch(format!("{name} acts with {}, not {}", decl.hopf, hopf.algebra().name())));
        }
        let module = cat.algebra(&decl.module)?;
        let entries = decl
            .table
            .iter()
            .map(|(g, u, v)| Ok((g.clone(), u.clone(), module.lift_poly(v)?)))
            .collect::<Result<Vec<_>>>()?;
        LeftAction::new(name, hopf, module, entries)
    }

    /// `h ▷ b = ε(h) b`.
    pub fn trivial(hopf: Arc<HopfStructure<K>>, module: Arc<Algebra<K>>) -> Self {
        let ha = hopf.algebra().alphabet().clone();
        let ba = module.alphabet().clone();
        let mut entries = Vec::new();
        for g in 0..ha.len() as Letter {
            let e = hopf.counit_word(&Word::letter(g));
            for u in 0..ba.len() as Letter {
                entries.push((ha.name(g).to_string(), ba.name(u).to_string(), Poly::term(Word::letter(u), e.clone())));
            }
        }
        LeftAction::new("trivial", hopf, module, entries).expect("complete table")
    }

    pub fn hopf(&self) -> &Arc<HopfStructure<K>> {
        &self.hopf
    }

    pub fn module(&self) -> &Arc<Algebra<K>> {
        &self.module
    }

    pub fn entry(&self, g: Letter, u: Letter) -> &Poly<K> {
        &self.table[g as usize][u as usize]
    }

    /// A generator acting on a (not necessarily normal) module word:
    /// `g ▷ (u₁…u_m) = Σ (g₁ ▷ u₁)…(g_m ▷ u_m)`.
    pub fn act_gen(&self, g: Letter, u: &Word) -> Arc<Poly<K>> {
        if u.is_empty() {
            return Arc::new(Poly::constant(self.hopf.counit_word(&Word::letter(g))));
        }
        if u.len() == 1 {
            return Arc::new(self.table[g as usize][u.letters()[0] as usize].clone());
        }
        let key = (g, u.clone());
        if let Some(v) = self.cache.read().get(&key) {
            return v.clone();
        }
        let mut out = Poly::zero();
        for (hs, c) in self.hopf.sweedler(&Word::letter(g), u.len()).iter() {
            let mut prod = Poly::one();
            for (h, &l) in hs.iter().zip(u.letters()) {
                let piece = self.act_word(h, &Poly::letter(l));
                prod = self.module.mul(&prod, &piece);
                if prod.is_zero() {
                    break;
                }
            }
            out.add_scaled(&prod, c);
        }
        let v = Arc::new(out);
        self.cache.write().entry(key).or_insert_with(|| v.clone()).clone()
    }

    fn act_gen_poly(&self, g: Letter, b: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in b.terms() {
            out.add_scaled(&self.act_gen(g, w), c);
        }
        out
    }

    /// An H-word acting letter by letter from the right: `g₁ ▷ (g₂ ▷ (… ▷ b))`.
    pub fn act_word(&self, h: &Word, b: &Poly<K>) -> Poly<K> {
        let mut acc = b.clone();
        for &g in h.letters().iter().rev() {
            acc = self.act_gen_poly(g, &acc);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Bilinear extension; `h` may be unnormalized, which is how ideal respect
    /// is tested.
    pub fn apply(&self, h: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in h.terms() {
            out.add_scaled(&self.act_word(w, b), c);
        }
        out
    }

    fn hname(&self, w: &Word) -> String {
        self.hopf.algebra().alphabet().fmt_word(w)
    }

    fn bname(&self, w: &Word) -> String {
        self.module.alphabet().fmt_word(w)
    }

    /// Unit laws, the product rule, `h ▷ (h' ▷ b) = (hh') ▷ b` and respect of
    /// both defining ideals, with words up to `max_degree`.
    pub fn check_axioms(&self, max_degree: usize) -> CheckReport {
        let mut r = CheckReport::new(format!("action {}", self.name));
        r.absorb(self.check_units(max_degree));
        r.absorb(self.check_product_rule(max_degree));
        r.absorb(self.check_composition(max_degree));
        r.absorb(self.check_ideals(max_degree));
        r
    }

    /// `h ▷ 1 = ε(h) 1` on generators and `1 ▷ b = b` on module words.
    pub fn check_units(&self, max_degree: usize) -> CheckReport {
        let mut r = CheckReport::new("units");
        let hn = self.hopf.algebra().alphabet().len() as Letter;
        for g in 0..hn {
            let lhs = self.act_gen(g, &Word::empty());
            let rhs = Poly::constant(self.hopf.counit_word(&Word::letter(g)));
            r.expect(*lhs == rhs, || format!("{} |> 1", self.hname(&Word::letter(g))), || {
                format!("{} != {}", self.module.fmt(&lhs), self.module.fmt(&rhs))
            });
        }
        for u in self.module.normal_words(max_degree) {
            let b = Poly::word(u.clone());
            let lhs = self.act_word(&Word::empty(), &b);
            r.expect(lhs == b, || format!("1 |> {}", self.bname(&u)), || self.module.fmt(&lhs));
        }
        r
    }

    /// `g ▷ (uv) = Σ (g₁ ▷ u)(g₂ ▷ v)` with the product normalized first.
    pub fn check_product_rule(&self, max_degree: usize) -> CheckReport {
        let hn = self.hopf.algebra().alphabet().len() as Letter;
        let words: Vec<Word> = self.module.normal_words(max_degree).into_iter().filter(|w| !w.is_empty()).collect();
        let mut cases = Vec::new();
        for g in 0..hn {
            for u in &words {
                for v in &words {
                    if u.len() + v.len() <= max_degree.max(2) {
                        cases.push((g, u.clone(), v.clone()));
                    }
                }
            }
        }
        let parts: Vec<CheckReport> = cases
            .par_iter()
            .map(|(g, u, v)| {
                let mut r = CheckReport::new("");
                let uv = self.module.mul(&Poly::word(u.clone()), &Poly::word(v.clone()));
                let lhs = self.act_gen_poly(*g, &uv);
                let mut rhs = Poly::zero();
                for (hs, c) in self.hopf.sweedler(&Word::letter(*g), 2).iter() {
                    let a = self.act_word(&hs[0], &Poly::word(u.clone()));
                    let b = self.act_word(&hs[1], &Poly::word(v.clone()));
                    rhs.add_scaled(&self.module.mul(&a, &b), c);
                }
                r.expect(
                    lhs == rhs,
                    || format!("{} |> ({})({})", self.hname(&Word::letter(*g)), self.bname(u), self.bname(v)),
                    || format!("{} != {}", self.module.fmt(&lhs), self.module.fmt(&rhs)),
                );
                r
            })
            .collect();
        CheckReport::merged("product rule", parts)
    }

    /// `h ▷ (h' ▷ b) = (hh') ▷ b` for normal H-words `h, h'` and module words
    /// `b`, all of length at most `max_degree`.
    pub fn check_composition(&self, max_degree: usize) -> CheckReport {
        let hwords = self.hopf.algebra().normal_words(max_degree);
        let bwords = self.module.normal_words(max_degree);
        let halg = self.hopf.algebra();
        let parts: Vec<CheckReport> = hwords
            .par_iter()
            .flat_map_iter(|h| hwords.iter().map(move |h2| (h, h2)))
            .map(|(h, h2)| {
                let mut r = CheckReport::new("");
                let prod = halg.mul(&Poly::word(h.clone()), &Poly::word(h2.clone()));
                for b in &bwords {
                    let bp = Poly::word(b.clone());
                    let lhs = self.act_word(h, &self.act_word(h2, &bp));
                    let rhs = self.apply(&prod, &bp);
                    r.expect(
                        lhs == rhs,
                        || format!("{} |> ({} |> {})", self.hname(h), self.hname(h2), self.bname(b)),
                        || format!("{} != {}", self.module.fmt(&lhs), self.module.fmt(&rhs)),
                    );
                }
                r
            })
            .collect();
        CheckReport::merged("composition", parts)
    }

    /// Every Hopf relation acts as zero on module words up to `max_degree`,
    /// and every generator maps module relations to zero.
    pub fn check_ideals(&self, max_degree: usize) -> CheckReport {
        let mut r = CheckReport::new("ideal respect");
        let hpres = self.hopf.algebra().presentation();
        let lift = self.module.specializer();
        let hrels = hpres.relation_polys(lift.as_ref());
        let brels = self.module.presentation().relation_polys(lift.as_ref());
        let (hrels, brels) = match (hrels, brels) {
            (Ok(h), Ok(b)) => (h, b),
            (Err(e), _) | (_, Err(e)) => {
                r.fail("relations", e.to_string());
                return r;
            }
        };
        let bwords = self.module.normal_words(max_degree);
        let ha = hpres.alphabet.clone();
        for (i, rel) in hrels.iter().enumerate() {
            for b in &bwords {
                let v = self.apply(rel, &Poly::word(b.clone()));
                r.expect(
                    v.is_zero(),
                    || format!("Hopf relation {} ({}) on {}", i + 1, rel.display(&ha), self.bname(b)),
                    || self.module.fmt(&v),
                );
            }
        }
        let ba = self.module.alphabet().clone();
        for rel in &brels {
            for g in 0..ha.len() as Letter {
                let v = self.act_gen_poly(g, rel);
                r.expect(
                    v.is_zero(),
                    || format!("{} |> ({})", ha.name(g), rel.display(&ba)),
                    || self.module.fmt(&v),
                );
            }
        }
        r
    }
}

type PairFn<K> = dyn Fn(&Word, &Word) -> Poly<K> + Send + Sync;

/// A two-cocycle `σ: H ⊗ H -> B`, with its convolution inverse when nontrivial.
#[derive(Clone)]
pub enum Cocycle<K: Coeff> {
    /// `σ(h, h') = ε(h) ε(h') 1`.
    Trivial,
    Custom { sigma: Arc<PairFn<K>>, inverse: Arc<PairFn<K>> },
}

impl<K: Coeff> std::fmt::Debug for Cocycle<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cocycle::Trivial => write!(f, "Cocycle::Trivial"),
            Cocycle::Custom { .. } => write!(f, "Cocycle::Custom"),
        }
    }
}

impl<K: Coeff> Cocycle<K> {
    pub fn custom(
        sigma: impl Fn(&Word, &Word) -> Poly<K> + Send + Sync + 'static,
        inverse: impl Fn(&Word, &Word) -> Poly<K> + Send + Sync + 'static,
    ) -> Self {
        Cocycle::Custom { sigma: Arc::new(sigma), inverse: Arc::new(inverse) }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Cocycle::Trivial)
    }

    pub fn value(&self, hopf: &HopfStructure<K>, h: &Word, h2: &Word) -> Poly<K> {
        match self {
            Cocycle::Trivial => Poly::constant(hopf.counit_word(h).mul(&hopf.counit_word(h2))),
            Cocycle::Custom { sigma, .. } => sigma(h, h2),
        }
    }

    pub fn inverse_value(&self, hopf: &HopfStructure<K>, h: &Word, h2: &Word) -> Poly<K> {
        match self {
            Cocycle::Trivial => self.value(hopf, h, h2),
            Cocycle::Custom { inverse, .. } => inverse(h, h2),
        }
    }

    /// `σ(f, h')` for an H-element `f`, linearly.
    fn value_poly(&self, hopf: &HopfStructure<K>, f: &Poly<K>, h2: &Word) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(&self.value(hopf, w, h2), c);
        }
        out
    }

    fn value_poly_right(&self, hopf: &HopfStructure<K>, h: &Word, f: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(&self.value(hopf, h, w), c);
        }
        out
    }
}

/// The cocycle conditions on words up to `max_degree`. For the trivial
/// cocycle, the normalization, cocycle and invertibility conditions hold
/// identically and the twisted module condition is the composition law of
/// [`LeftAction::check_composition`], which is run in its place.
pub fn check_cocycle_axioms<K: Coeff>(act: &LeftAction<K>, sigma: &Cocycle<K>, max_degree: usize) -> CheckReport {
    let mut r = CheckReport::new("cocycle");
    let hopf = act.hopf().clone();
    let halg = hopf.algebra().clone();
    let b = act.module().clone();
    let hwords = halg.normal_words(max_degree);
    let bwords = b.normal_words(max_degree);

    let mut norm = CheckReport::new("normalization");
    for h in &hwords {
        let e = Poly::constant(hopf.counit_word(h));
        let l = sigma.value(&hopf, h, &Word::empty());
        let rr = sigma.value(&hopf, &Word::empty(), h);
        norm.expect(l == e && rr == e, || act.hname(h), || format!("{} / {}", b.fmt(&l), b.fmt(&rr)));
    }
    r.absorb(norm);

    if sigma.is_trivial() {
        r.note("trivial cocycle: the cocycle and invertibility conditions hold identically");
        r.note("trivial cocycle: the twisted module condition is h |> (h' |> b) = (hh') |> b");
        r.absorb(act.check_composition(max_degree));
        return r;
    }

    // Cocycle condition on triples.
    let mut cocycle = CheckReport::new("cocycle condition");
    for h in &hwords {
        for h1 in &hwords {
            for h2 in &hwords {
                let mut lhs = Poly::zero();
                for (x, c) in hopf.sweedler(h, 2).iter() {
                    for (y, d) in hopf.sweedler(h1, 2).iter() {
                        for (z, e) in hopf.sweedler(h2, 2).iter() {
                            let inner = sigma.value(&hopf, &y[0], &z[0]);
                            let acted = act.apply(&Poly::word(x[0].clone()), &inner);
                            let yz = halg.mul(&Poly::word(y[1].clone()), &Poly::word(z[1].clone()));
                            let s = sigma.value_poly_right(&hopf, &x[1], &yz);
                            lhs.add_scaled(&b.mul(&acted, &s), &c.mul(d).mul(e));
                        }
                    }
                }
                let mut rhs = Poly::zero();
                for (x, c) in hopf.sweedler(h, 2).iter() {
                    for (y, d) in hopf.sweedler(h1, 2).iter() {
                        let s1 = sigma.value(&hopf, &x[0], &y[0]);
                        let xy = halg.mul(&Poly::word(x[1].clone()), &Poly::word(y[1].clone()));
                        let s2 = sigma.value_poly(&hopf, &xy, h2);
                        rhs.add_scaled(&b.mul(&s1, &s2), &c.mul(d));
                    }
                }
                cocycle.expect(
                    lhs == rhs,
                    || format!("({}, {}, {})", act.hname(h), act.hname(h1), act.hname(h2)),
                    || format!("{} != {}", b.fmt(&lhs), b.fmt(&rhs)),
                );
            }
        }
    }
    r.absorb(cocycle);

    // Twisted module condition.
    let mut twisted = CheckReport::new("twisted module");
    for h in &hwords {
        for h1 in &hwords {
            for u in &bwords {
                let bp = Poly::word(u.clone());
                let mut lhs = Poly::zero();
                let mut rhs = Poly::zero();
                for (x, c) in hopf.sweedler(h, 2).iter() {
                    for (y, d) in hopf.sweedler(h1, 2).iter() {
                        let cd = c.mul(d);
                        let acted = act.act_word(&x[0], &act.act_word(&y[0], &bp));
                        lhs.add_scaled(&b.mul(&acted, &sigma.value(&hopf, &x[1], &y[1])), &cd);
                        let xy = halg.mul(&Poly::word(x[1].clone()), &Poly::word(y[1].clone()));
                        rhs.add_scaled(&b.mul(&sigma.value(&hopf, &x[0], &y[0]), &act.apply(&xy, &bp)), &cd);
                    }
                }
                twisted.expect(
                    lhs == rhs,
                    || format!("({}, {}, {})", act.hname(h), act.hname(h1), act.bname(u)),
                    || format!("{} != {}", b.fmt(&lhs), b.fmt(&rhs)),
                );
            }
        }
    }
    r.absorb(twisted);

    // Convolution invertibility on H ⊗ H.
    let mut inv = CheckReport::new("invertibility");
    for h in &hwords {
        for h1 in &hwords {
            let unit = Poly::constant(hopf.counit_word(h).mul(&hopf.counit_word(h1)));
            let mut left = Poly::zero();
            let mut right = Poly::zero();
            for (x, c) in hopf.sweedler(h, 2).iter() {
                for (y, d) in hopf.sweedler(h1, 2).iter() {
                    let cd = c.mul(d);
                    let s = sigma.value(&hopf, &x[0], &y[0]);
                    let t = sigma.inverse_value(&hopf, &x[1], &y[1]);
                    left.add_scaled(&b.mul(&s, &t), &cd);
                    let s = sigma.inverse_value(&hopf, &x[0], &y[0]);
                    let t = sigma.value(&hopf, &x[1], &y[1]);
                    right.add_scaled(&b.mul(&s, &t), &cd);
                }
            }
            inv.expect(
                left == unit && right == unit,
                || format!("({}, {})", act.hname(h), act.hname(h1)),
                || format!("{} / {}", b.fmt(&left), b.fmt(&right)),
            );
        }
    }
    r.absorb(inv);
    r
}

/// Elements of `B ⊗ H` as coefficients on pairs of normal words.
pub type CrossedElement<K> = BTreeMap<(Word, Word), K>;

/// The crossed product `B #_σ H` of an action and a cocycle.
pub struct CrossedProduct<K: Coeff> {
    action: Arc<LeftAction<K>>,
    cocycle: Cocycle<K>,
}

impl<K: Coeff> CrossedProduct<K> {
    pub fn new(action: Arc<LeftAction<K>>, cocycle: Cocycle<K>) -> Self {
        CrossedProduct { action, cocycle }
    }

    /// The smash product: trivial cocycle.
    pub fn smash(action: Arc<LeftAction<K>>) -> Self {
        Self::new(action, Cocycle::Trivial)
    }

    pub fn action(&self) -> &Arc<LeftAction<K>> {
        &self.action
    }

    /// `b ⊗ h` with both slots normalized.
    pub fn pair(&self, b: &Poly<K>, h: &Poly<K>) -> CrossedElement<K> {
        let b = self.action.module.nf(b);
        let h = self.action.hopf.algebra().nf(h);
        let mut out = CrossedElement::new();
        for (u, c) in b.terms() {
            for (v, d) in h.terms() {
                accumulate(&mut out, (u.clone(), v.clone()), c.mul(d));
            }
        }
        out
    }

    pub fn one(&self) -> CrossedElement<K> {
        self.pair(&Poly::one(), &Poly::one())
    }

    /// `(b ⊗ h)(b' ⊗ h') = Σ b (h₁ ▷ b') σ(h₂, h'₁) ⊗ h₃ h'₂`.
    pub fn multiply(&self, x: &CrossedElement<K>, y: &CrossedElement<K>) -> CrossedElement<K> {
        let act = &self.action;
        let hopf = &act.hopf;
        let halg = hopf.algebra();
        let balg = &act.module;
        let mut out = CrossedElement::new();
        for ((b, h), c) in x {
            for ((b2, h2), d) in y {
                let cd = c.mul(d);
                let bp = Poly::word(b.clone());
                let b2p = Poly::word(b2.clone());
                let mut add = |bpart: Poly<K>, hpart: Poly<K>, coef: K| {
                    for (u, e) in bpart.terms() {
                        for (v, f) in hpart.terms() {
                            accumulate(&mut out, (u.clone(), v.clone()), coef.mul(e).mul(f));
                        }
                    }
                };
                if self.cocycle.is_trivial() {
                    for (hs, e) in hopf.sweedler(h, 2).iter() {
                        let left = balg.mul(&bp, &act.act_word(&hs[0], &b2p));
                        let right = halg.mul(&Poly::word(hs[1].clone()), &Poly::word(h2.clone()));
                        add(left, right, cd.mul(e));
                    }
                } else {
                    for (hs, e) in hopf.sweedler(h, 3).iter() {
                        let acted = balg.mul(&bp, &act.act_word(&hs[0], &b2p));
                        for (ks, f) in hopf.sweedler(h2, 2).iter() {
                            let s = self.cocycle.value(hopf, &hs[1], &ks[0]);
                            let left = balg.mul(&acted, &s);
                            let right = halg.mul(&Poly::word(hs[2].clone()), &Poly::word(ks[1].clone()));
                            add(left, right, cd.mul(e).mul(f));
                        }
                    }
                }
            }
        }
        out
    }

    /// Groups an element as `Σ bᵢ ⊗ hᵢ` with distinct H-words `hᵢ`.
    pub fn summands(&self, x: &CrossedElement<K>) -> Vec<(Poly<K>, Poly<K>)> {
        let mut by_h: BTreeMap<Word, Poly<K>> = BTreeMap::new();
        for ((u, v), c) in x {
            by_h.entry(v.clone()).or_insert_with(Poly::zero).add_term(u.clone(), c.clone());
        }
        by_h.into_iter().rev().map(|(v, b)| (b, Poly::word(v))).collect()
    }

    /// `Σ b h` inside an algebra containing both generator sets by name.
    pub fn realize(&self, x: &CrossedElement<K>, target: &Algebra<K>) -> Result<Poly<K>> {
        let ba = self.action.module.alphabet();
        let ha = self.action.hopf.algebra().alphabet();
        let mut out = Poly::zero();
        for ((u, v), c) in x {
            let bu = translate(&Poly::word(u.clone()), ba, target.alphabet())?;
            let hv = translate(&Poly::word(v.clone()), ha, target.alphabet())?;
            out.add_scaled(&bu.mul(&hv), c);
        }
        Ok(target.nf(&out))
    }
}

/// `crossed_multiply((b, h), (b', h'))` as summands `(B-element, H-word)`.
pub fn crossed_multiply<K: Coeff>(
    cp: &CrossedProduct<K>,
    u: (&Poly<K>, &Poly<K>),
    v: (&Poly<K>, &Poly<K>),
) -> Vec<(Poly<K>, Poly<K>)> {
    let x = cp.pair(u.0, u.1);
    let y = cp.pair(v.0, v.1);
    cp.summands(&cp.multiply(&x, &y))
}

/// Generator names of the smash product: Hopf letters above module letters,
/// so normal words read module block, then Hopf block.
fn smash_alphabet<K: Coeff>(act: &LeftAction<K>) -> Result<Arc<Alphabet>> {
    let ha = act.hopf.algebra().alphabet();
    let ba = act.module.alphabet();
    let mut names: Vec<&str> = ha.precedence();
    names.extend(ba.precedence());
    Ok(Arc::new(Alphabet::from_precedence(&names)?))
}

/// Cross relations `g u = Σ (g₁ ▷ u) g₂` over the smash alphabet.
fn cross_relations<K: Coeff>(act: &LeftAction<K>, alphabet: &Alphabet) -> Result<Vec<(Poly<K>, Poly<K>)>> {
    let ha = act.hopf.algebra().alphabet();
    let ba = act.module.alphabet();
    let mut out = Vec::new();
    for g in 0..ha.len() as Letter {
        for u in 0..ba.len() as Letter {
            let lhs = translate(&Poly::word(Word::from_letters(&[g])), ha, alphabet)?
                .mul(&translate(&Poly::letter(u), ba, alphabet)?);
            let mut rhs = Poly::zero();
            for (hs, c) in act.hopf.sweedler(&Word::letter(g), 2).iter() {
                let acted = act.act_word(&hs[0], &Poly::letter(u));
                let piece = translate(&acted, ba, alphabet)?.mul(&translate(&Poly::word(hs[1].clone()), ha, alphabet)?);
                rhs.add_scaled(&piece, c);
            }
            out.push((lhs, rhs));
        }
    }
    Ok(out)
}

/// All defining relations of the smash product, as differences, over `K`.
pub fn smash_relations<K: Coeff>(act: &LeftAction<K>) -> Result<(Arc<Alphabet>, Vec<Poly<K>>)> {
    let alphabet = smash_alphabet(act)?;
    let lift = act.module.specializer();
    let mut rels = Vec::new();
    for alg in [act.hopf.algebra(), &act.module] {
        for f in alg.presentation().relation_polys(lift.as_ref())? {
            rels.push(translate(&f, alg.alphabet(), &alphabet)?);
        }
    }
    for (l, r) in cross_relations(act, &alphabet)? {
        rels.push(l.sub(&r));
    }
    Ok((alphabet, rels))
}

/// The rewrite system of the smash product, completed up to `completion`.
pub fn smash_system<K: Coeff>(act: &LeftAction<K>, completion: usize) -> Result<RewriteSystem<K>> {
    let (alphabet, rels) = smash_relations(act)?;
    let sys = RewriteSystem::from_relations(alphabet, rels.into_iter().map(|f| (f, Provenance::Declared)).collect())?;
    if completion == 0 {
        return Ok(sys);
    }
    Ok(sys.complete(completion, &[])?.system)
}

/// The smash product presentation emitted from a symbolic action table.
pub fn build_smash_presentation(act: &LeftAction<Scalar>, name: &str) -> Result<Presentation> {
    let alphabet = smash_alphabet(act)?;
    let mut relations = Vec::new();
    let mut params: Vec<String> = Vec::new();
    for alg in [act.hopf.algebra(), &act.module] {
        let pres = alg.presentation();
        for r in &pres.relations {
            relations.push(Relation {
                lhs: translate(&r.lhs, &pres.alphabet, &alphabet)?,
                rhs: translate(&r.rhs, &pres.alphabet, &alphabet)?,
            });
        }
        for p in &pres.params {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
    }
    for (lhs, rhs) in cross_relations(act, &alphabet)? {
        relations.push(Relation { lhs, rhs });
    }
    Ok(Presentation { name: name.into(), params, alphabet, relations })
}

/// Reads off `h ▷ b = Σ j(h₁) b j⁻¹(h₂)` on generators and compares it with
/// `reference` when given. The values must be free of Hopf letters.
pub fn recover_action<K: Coeff>(
    j: &Arc<ConvolutionMap<K>>,
    j_inv: &Arc<ConvolutionMap<K>>,
    embedding: &GenMap<K>,
    reference: Option<&LeftAction<K>>,
) -> Result<(LeftAction<K>, CheckReport)> {
    let hopf = j.hopf().clone();
    let total = j.target().clone();
    let base = embedding.source().clone();
    let ha = hopf.algebra().alphabet().clone();
    let ba = base.alphabet().clone();
    let mut entries = Vec::new();
    for g in 0..ha.len() as Letter {
        for u in 0..ba.len() as Letter {
            let v = conjugate(j, j_inv, &Word::letter(g), embedding.image_of(u));
            let back = pull_back(&v, embedding).ok_or_else(|| {
                Error::NotCleaving(format!("{} |> {} = {} is not in {}", ha.name(g), ba.name(u), total.fmt(&v), base.name()))
            })?;
            entries.push((ha.name(g).to_string(), ba.name(u).to_string(), back));
        }
    }
    let act = LeftAction::new("recovered", hopf, base.clone(), entries)?;
    let mut r = CheckReport::new("recovered action");
    if let Some(reference) = reference {
        for g in 0..ha.len() as Letter {
            for u in 0..ba.len() as Letter {
                let (a, b) = (act.entry(g, u), reference.entry(g, u));
                r.expect(a == b, || format!("{} |> {}", ha.name(g), ba.name(u)), || {
                    format!("{} != {}", base.fmt(a), base.fmt(b))
                });
            }
        }
    }
    Ok((act, r))
}

/// `Σ j(h₁) b j⁻¹(h₂)` in the total algebra.
pub fn conjugate<K: Coeff>(j: &ConvolutionMap<K>, j_inv: &ConvolutionMap<K>, h: &Word, b: &Poly<K>) -> Poly<K> {
    let total = j.target();
    let mut out = Poly::zero();
    for (hs, c) in j.hopf().sweedler(h, 2).iter() {
        let left = total.mul(&j.value(&hs[0]), b);
        out.add_scaled(&total.mul(&left, &j_inv.value(&hs[1])), c);
    }
    out
}

/// Inverts a generator-to-generator embedding on an element of its image.
fn pull_back<K: Coeff>(f: &Poly<K>, embedding: &GenMap<K>) -> Option<Poly<K>> {
    let sa = embedding.source().alphabet();
    let mut back: HashMap<Letter, Letter> = HashMap::new();
    for l in 0..sa.len() as Letter {
        let img = embedding.image_of(l);
        let (w, c) = img.leading()?;
        if img.len() != 1 || !c.is_one() || w.len() != 1 {
            return None;
        }
        back.insert(w.letters()[0], l);
    }
    let mut out = Poly::zero();
    for (w, c) in f.terms() {
        let mut t = Word::empty();
        for l in w.letters() {
            t.push(*back.get(l)?);
        }
        out.add_term(t, c.clone());
    }
    Some(embedding.source().nf(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Symbolic;
    use crate::presentations::Registry;

    fn setup() -> (Catalog<Scalar>, Arc<LeftAction<Scalar>>) {
        let cat = Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic));
        let hopf = Arc::new(HopfStructure::from_catalog(&cat).unwrap());
        let act = Arc::new(LeftAction::from_catalog(&cat, hopf, "frame_action").unwrap());
        (cat, act)
    }

    #[test]
    fn table_values() {
        let (_, act) = setup();
        let b = act.module().clone();
        let h = act.hopf().algebra().clone();
        let a = h.letter("a").unwrap();
        let x = b.letter("x").unwrap();
        assert_eq!(act.act_gen(a, &Word::letter(x)).as_ref(), &b.parse("(p*q)^-1*x").unwrap());
        let c = h.letter("c").unwrap();
        assert_eq!(act.act_gen(c, &Word::letter(x)).as_ref(), &b.parse("((p*q)^-1 - 1)*y").unwrap());
    }

    #[test]
    fn generator_on_a_product() {
        let (_, act) = setup();
        let b = act.module().clone();
        let a = act.hopf().algebra().letter("a").unwrap();
        let xy = b.alphabet().parse_word(&["x", "y"]).unwrap();
        // (a ▷ x)(a ▷ y) + (b ▷ x)(c ▷ y) with b ▷ x = 0.
        let expected = b.parse("(p*q)^-1*q^-1*x*y").unwrap();
        assert_eq!(act.act_gen(a, &xy).as_ref(), &expected);
        assert_eq!(act.act_word(&Word::empty(), &Poly::word(xy.clone())), Poly::word(xy));
    }

    #[test]
    fn missing_entry_is_reported() {
        let (cat, act) = setup();
        let b = cat.algebra("quantum_plane").unwrap();
        let err = LeftAction::new("partial", act.hopf().clone(), b, vec![]).unwrap_err();
        assert!(matches!(err, Error::MissingAction(_)));
    }

    #[test]
    fn axioms_at_degree_two() {
        let (_, act) = setup();
        let r = act.check_axioms(2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn trivial_action_passes() {
        let (_, act) = setup();
        let t = LeftAction::trivial(act.hopf().clone(), act.module().clone());
        assert!(t.check_axioms(2).passed());
    }

    #[test]
    fn cross_relation_from_the_product_formula() {
        let (_, act) = setup();
        let cp = CrossedProduct::smash(act.clone());
        let h = act.hopf().algebra().clone();
        let b = act.module().clone();
        let s = crossed_multiply(&cp, (&Poly::one(), &h.parse("a").unwrap()), (&b.parse("x").unwrap(), &Poly::one()));
        assert_eq!(s, vec![(b.parse("(p*q)^-1*x").unwrap(), h.parse("a").unwrap())]);
    }

    #[test]
    fn smash_presentation_matches_builtin() {
        let (cat, act) = setup();
        let pres = build_smash_presentation(&act, "smash").unwrap();
        let fb = cat.algebra("frame_bundle").unwrap();
        for r in &pres.relations {
            let f = translate(&r.difference(), &pres.alphabet, fb.alphabet()).unwrap();
            assert!(fb.nf(&f).is_zero(), "{}", f.display(fb.alphabet()));
        }
        let sys = smash_system(&act, 8).unwrap();
        for f in fb.presentation().relation_polys(&Symbolic).unwrap() {
            let g = translate(&f, fb.alphabet(), sys.alphabet()).unwrap();
            assert!(sys.normal_form(&g).is_zero());
        }
    }

    #[test]
    fn trivial_cocycle_delegates_to_composition() {
        let (_, act) = setup();
        let r = check_cocycle_axioms(&act, &Cocycle::Trivial, 1);
        assert!(r.passed(), "{r}");
        assert!(r.notes.iter().any(|n| n.contains("twisted module")));
    }

    #[test]
    fn custom_cocycle_equal_to_trivial_passes_and_scaled_one_fails() {
        let (_, act) = setup();
        let h1 = act.hopf().clone();
        let h2 = act.hopf().clone();
        let eps = move |u: &Word, v: &Word| Poly::constant(h1.counit_word(u).mul(&h1.counit_word(v)));
        let eps2 = move |u: &Word, v: &Word| Poly::constant(h2.counit_word(u).mul(&h2.counit_word(v)));
        let good = Cocycle::custom(eps.clone(), eps2);
        assert!(check_cocycle_axioms(&act, &good, 1).passed());
        let two = Scalar::from_int(2);
        let bad = Cocycle::custom(move |u, v| eps(u, v).scale(&two), |_, _| Poly::one());
        assert!(!check_cocycle_axioms(&act, &bad, 1).passed());
    }
}
