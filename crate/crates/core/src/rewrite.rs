//! Reduction modulo oriented relations, ambiguity enumeration, local confluence
//! and bounded completion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use rand::Rng;
use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Letter, Poly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Declared,
    Derived,
}

/// `lhs -> rhs` with every word of `rhs` strictly below `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<K> {
    pub lhs: Word,
    pub rhs: Poly<K>,
    pub provenance: Provenance,
}

impl<K: Coeff> Rule<K> {
    /// Admits an explicitly oriented rule.
    pub fn new(lhs: Word, rhs: Poly<K>, provenance: Provenance) -> Result<Self> {
        if let Some(w) = rhs.words().find(|w| **w >= lhs) {
            return Err(Error::RuleRejected(format!(
                "right-hand word {w:?} is not smaller than {lhs:?}"
            )));
        }
        Ok(Rule { lhs, rhs, provenance })
    }

    /// Orients the relation `f = 0` by its leading word and makes it monic.
    pub fn orient(f: &Poly<K>, provenance: Provenance) -> Result<Option<Self>> {
        let Some((lw, lc)) = f.leading() else { return Ok(None) };
        if lw.is_empty() {
            return Err(Error::RuleRejected("relation collapses the algebra: a nonzero scalar equals 0".into()));
        }
        let inv = lc.inv().ok_or_else(|| Error::RuleRejected("leading coefficient is not invertible".into()))?;
        let lhs = lw.clone();
        let mut rhs = f.scale(&inv.neg());
        rhs.add_term(lhs.clone(), K::one());
        Ok(Some(Rule { lhs, rhs, provenance }))
    }

    /// The relation `lhs - rhs` this rule encodes.
    pub fn relation(&self) -> Poly<K> {
        Poly::word(self.lhs.clone()).sub(&self.rhs)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        RuleDisplay { rule: self, alphabet }
    }
}

struct RuleDisplay<'a, K> {
    rule: &'a Rule<K>,
    alphabet: &'a Alphabet,
}

impl<K: Coeff> fmt::Display for RuleDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.alphabet.fmt_word(&self.rule.lhs), self.rule.rhs.display(self.alphabet))
    }
}

/// A set of rules indexed by first letter of the left-hand side.
#[derive(Clone, Debug)]
struct RuleSet<K> {
    rules: Vec<Rule<K>>,
    by_first: Vec<Vec<usize>>,
}

impl<K: Coeff> RuleSet<K> {
    fn new(alphabet_len: usize) -> Self {
        RuleSet { rules: Vec::new(), by_first: vec![Vec::new(); alphabet_len] }
    }

    fn from_rules(alphabet_len: usize, rules: Vec<Rule<K>>) -> Self {
        let mut s = RuleSet::new(alphabet_len);
        for r in rules {
            s.push(r);
        }
        s
    }

    fn push(&mut self, r: Rule<K>) {
        let first = r.lhs.letters()[0] as usize;
        self.by_first[first].push(self.rules.len());
        self.rules.push(r);
    }

    /// All `(position, rule)` redexes in `w`.
    fn redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let ls = w.letters();
        let mut out = Vec::new();
        for i in 0..ls.len() {
            for &ri in &self.by_first[ls[i] as usize] {
                if ls[i..].starts_with(self.rules[ri].lhs.letters()) {
                    out.push((i, ri));
                }
            }
        }
        out
    }

    /// The leftmost redex; among rules starting there, the longest lhs.
    fn leftmost(&self, w: &Word) -> Option<(usize, usize)> {
        let ls = w.letters();
        for i in 0..ls.len() {
            let mut best: Option<usize> = None;
            for &ri in &self.by_first[ls[i] as usize] {
                let lhs = self.rules[ri].lhs.letters();
                if ls[i..].starts_with(lhs) && best.is_none_or(|b| self.rules[b].lhs.len() < lhs.len()) {
                    best = Some(ri);
                }
            }
            if let Some(ri) = best {
                return Some((i, ri));
            }
        }
        None
    }

    fn is_reducible(&self, w: &Word) -> bool {
        self.leftmost(w).is_some()
    }

    /// Replaces the redex `(pos, rule)` of `w`, scaled by `c`, into `out`.
    fn rewrite_into(&self, w: &Word, pos: usize, ri: usize, c: &K, out: &mut Poly<K>) {
        let rule = &self.rules[ri];
        let ls = w.letters();
        let (pre, post) = (&ls[..pos], &ls[pos + rule.lhs.len()..]);
        for (m, d) in rule.rhs.terms() {
            out.add_term(Word::splice(pre, m.letters(), post), c.mul(d));
        }
    }

    /// Full reduction without memoization, processing the largest word first.
    fn reduce(&self, f: &Poly<K>) -> Poly<K> {
        let mut work = f.clone();
        let mut done = Poly::zero();
        while let Some((w, c)) = work.pop_leading() {
            match self.leftmost(&w) {
                Some((pos, ri)) => self.rewrite_into(&w, pos, ri, &c, &mut work),
                None => done.add_term(w, c),
            }
        }
        done
    }
}

/// A non-leftmost redex choice, for strategy-independence tests.
pub trait Strategy {
    fn choose(&mut self, redexes: usize) -> usize;
}

impl<R: Rng> Strategy for R {
    fn choose(&mut self, redexes: usize) -> usize {
        self.gen_range(0..redexes)
    }
}

/// An interreduced rewrite system with a shared normal-form cache.
pub struct RewriteSystem<K> {
    alphabet: Arc<Alphabet>,
    set: RuleSet<K>,
    cache: RwLock<HashMap<Word, Arc<Poly<K>>>>,
}

impl<K: Coeff> Clone for RewriteSystem<K> {
    fn clone(&self) -> Self {
        RewriteSystem { alphabet: self.alphabet.clone(), set: self.set.clone(), cache: RwLock::new(HashMap::new()) }
    }
}

impl<K: Coeff> fmt::Debug for RewriteSystem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem").field("alphabet", &self.alphabet).field("rules", &self.set.rules.len()).finish()
    }
}

impl<K: Coeff> RewriteSystem<K> {
    /// Orients each relation and interreduces the resulting rules.
    pub fn from_relations(alphabet: Arc<Alphabet>, relations: Vec<(Poly<K>, Provenance)>) -> Result<Self> {
        for (f, _) in &relations {
            check_alphabet(&alphabet, f)?;
        }
        let rules = autoreduce(alphabet.len(), relations)?;
        Ok(RewriteSystem { alphabet, set: rules, cache: RwLock::new(HashMap::new()) })
    }

    /// Admits explicitly oriented rules, then interreduces.
    pub fn from_rules(alphabet: Arc<Alphabet>, rules: Vec<Rule<K>>) -> Result<Self> {
        for r in &rules {
            check_alphabet(&alphabet, &Poly::<K>::word(r.lhs.clone()))?;
            check_alphabet(&alphabet, &r.rhs)?;
            Rule::new(r.lhs.clone(), r.rhs.clone(), r.provenance)?;
        }
        let rels = rules.into_iter().map(|r| (r.relation(), r.provenance)).collect();
        Self::from_relations(alphabet, rels)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.set.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.set.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        !self.set.is_reducible(w)
    }

    pub fn clear_cache(&self) {
        self.cache.write().clear();
    }

    /// Normal form of a single word, memoized.
    pub fn normal_form_word(&self, w: &Word) -> Arc<Poly<K>> {
        if let Some(v) = self.cache.read().get(w) {
            return v.clone();
        }
        let nf = match self.set.leftmost(w) {
            None => Poly::word(w.clone()),
            Some((pos, ri)) => {
                let rule = &self.set.rules[ri];
                let ls = w.letters();
                let (pre, post) = (&ls[..pos], &ls[pos + rule.lhs.len()..]);
                let mut acc = Poly::zero();
                for (m, d) in rule.rhs.terms() {
                    let sub = self.normal_form_word(&Word::splice(pre, m.letters(), post));
                    acc.add_scaled(&sub, d);
                }
                acc
            }
        };
        let nf = Arc::new(nf);
        self.cache.write().entry(w.clone()).or_insert_with(|| nf.clone()).clone()
    }

    pub fn normal_form(&self, f: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            if self.is_normal(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_scaled(&self.normal_form_word(w), c);
            }
        }
        out
    }

    /// Checked entry point: rejects words outside the alphabet.
    pub fn try_normal_form(&self, f: &Poly<K>) -> Result<Poly<K>> {
        check_alphabet(&self.alphabet, f)?;
        Ok(self.normal_form(f))
    }

    /// Normal form of a product.
    pub fn mul(&self, f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
        self.normal_form(&f.mul(g))
    }

    /// Reduction choosing an arbitrary redex at every step.
    pub fn reduce_with<S: Strategy>(&self, f: &Poly<K>, strategy: &mut S) -> Poly<K> {
        let mut work = f.clone();
        let mut done = Poly::zero();
        while let Some((w, c)) = work.pop_leading() {
            let redexes = self.set.redexes(&w);
            if redexes.is_empty() {
                done.add_term(w, c);
            } else {
                let (pos, ri) = redexes[strategy.choose(redexes.len())];
                self.set.rewrite_into(&w, pos, ri, &c, &mut work);
            }
        }
        done
    }

    /// Normal words of length exactly `n`, ascending.
    pub fn normal_words_of_length(&self, n: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..self.alphabet.len() as Letter {
                    let mut v = w.clone();
                    v.push(l);
                    if !self.suffix_reducible(&v) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// Normal words of length at most `n`, ascending.
    pub fn normal_words(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.normal_words_of_length(k)).collect()
    }

    fn suffix_reducible(&self, w: &Word) -> bool {
        let ls = w.letters();
        self.set.rules.iter().any(|r| ls.ends_with(r.lhs.letters()))
    }

    /// Every overlap and inclusion ambiguity with superposition length at most `max_degree`.
    pub fn enumerate_ambiguities(&self, max_degree: usize) -> Vec<Ambiguity> {
        enumerate(&self.set.rules, max_degree)
    }

    /// Both one-step resolutions of an ambiguity, each reduced to normal form.
    pub fn resolve(&self, amb: &Ambiguity) -> (Poly<K>, Poly<K>) {
        let (l, r) = one_step(&self.set.rules, amb);
        (self.normal_form(&l), self.normal_form(&r))
    }

    pub fn check_local_confluence(&self, max_degree: usize) -> ConfluenceReport<K> {
        let ambiguities = self.enumerate_ambiguities(max_degree);
        let failures: Vec<ConfluenceFailure<K>> = ambiguities
            .par_iter()
            .filter_map(|a| {
                let (left, right) = self.resolve(a);
                (left != right).then(|| ConfluenceFailure { ambiguity: a.clone(), left, right })
            })
            .collect();
        ConfluenceReport { checked: ambiguities.len(), failures }
    }

    /// Bounded completion. `watch` names a subalphabet whose words must stay
    /// independent; derived rules with a left-hand side over it are reported.
    pub fn complete(&self, max_degree: usize, watch: &[Letter]) -> Result<Completion<K>> {
        let watched: BTreeSet<Letter> = watch.iter().copied().collect();
        let over_watch = |w: &Word| w.letters().iter().all(|l| watched.contains(l));
        let sub_rules = RuleSet::from_rules(
            self.alphabet.len(),
            self.set.rules.iter().filter(|r| over_watch(&r.lhs) && r.rhs.words().all(&over_watch)).cloned().collect(),
        );

        let mut current = self.clone();
        let mut derived = Vec::new();
        let mut rounds = 0;
        let converged = loop {
            let report = current.check_local_confluence(max_degree);
            if report.passed() {
                break true;
            }
            rounds += 1;
            let mut fresh = Vec::new();
            for fail in &report.failures {
                let rel = current.normal_form(&fail.left.sub(&fail.right));
                if !rel.is_zero() {
                    fresh.push(rel);
                }
            }
            if fresh.is_empty() {
                break false;
            }
            let mut rels: Vec<(Poly<K>, Provenance)> =
                current.set.rules.iter().map(|r| (r.relation(), r.provenance)).collect();
            let mut added: Vec<Rule<K>> = Vec::new();
            for f in fresh {
                if let Some(rule) = Rule::orient(&f, Provenance::Derived)? {
                    if !added.contains(&rule) {
                        added.push(rule);
                    }
                }
            }
            for rule in added {
                rels.push((rule.relation(), Provenance::Derived));
                derived.push(rule);
            }
            current = RewriteSystem::from_relations(self.alphabet.clone(), rels)?;
            if rounds > 64 {
                break false;
            }
        };
        let contamination = current
            .rules()
            .iter()
            .filter(|r| r.provenance == Provenance::Derived && over_watch(&r.lhs) && !sub_rules.is_reducible(&r.lhs))
            .cloned()
            .collect();
        Ok(Completion { system: current, derived, contamination, converged, rounds })
    }
}

fn check_alphabet<K: Coeff>(alphabet: &Alphabet, f: &Poly<K>) -> Result<()> {
    match f.words().find(|w| !alphabet.contains_word(w)) {
        Some(w) => Err(Error::AlphabetMismatch(format!("word {w:?} is not over {alphabet:?}"))),
        None => Ok(()),
    }
}

/// Interreduction: no left-hand side contains another, right-hand sides are normal.
fn autoreduce<K: Coeff>(alphabet_len: usize, relations: Vec<(Poly<K>, Provenance)>) -> Result<RuleSet<K>> {
    // Keyed by lhs so the final order is deterministic.
    let mut rules: BTreeMap<Word, Rule<K>> = BTreeMap::new();
    let mut queue: Vec<(Poly<K>, Provenance)> = relations;
    // Smallest leading words first keeps the number of re-insertions low.
    queue.sort_by(|a, b| b.0.leading().map(|x| x.0).cmp(&a.0.leading().map(|x| x.0)));
    while let Some((f, prov)) = queue.pop() {
        let set = RuleSet::from_rules(alphabet_len, rules.values().cloned().collect());
        let f = set.reduce(&f);
        let Some(rule) = Rule::orient(&f, prov)? else { continue };
        let displaced: Vec<Word> = rules.keys().filter(|w| w.find(rule.lhs.letters()).is_some()).cloned().collect();
        for w in displaced {
            let old = rules.remove(&w).unwrap();
            queue.push((old.relation(), old.provenance));
        }
        rules.insert(rule.lhs.clone(), rule);
    }
    let set = RuleSet::from_rules(alphabet_len, rules.values().cloned().collect());
    let finished = rules
        .into_values()
        .map(|r| Rule { rhs: set.reduce(&r.rhs), ..r })
        .collect();
    Ok(RuleSet::from_rules(alphabet_len, finished))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// Two rules applicable to one word at interleaved positions.
///
/// For an overlap the word is `lhs(left)` followed by the unmatched tail of
/// `lhs(right)`; for an inclusion it is `lhs(left)` with `lhs(right)` at `offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambiguity {
    pub word: Word,
    pub kind: AmbiguityKind,
    pub left_rule: usize,
    pub right_rule: usize,
    pub offset: usize,
}

fn enumerate<K: Coeff>(rules: &[Rule<K>], max_degree: usize) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let li = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let lj = rj.lhs.letters();
            // Overlaps: a proper suffix of li equals a proper prefix of lj.
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] == lj[..k] && li.len() + lj.len() - k <= max_degree {
                    out.push(Ambiguity {
                        word: Word::splice(li, &lj[k..], &[]),
                        kind: AmbiguityKind::Overlap,
                        left_rule: i,
                        right_rule: j,
                        offset: li.len() - k,
                    });
                }
            }
            if i != j && lj.len() <= li.len() && li.len() <= max_degree {
                for off in 0..=li.len() - lj.len() {
                    if li[off..off + lj.len()] == *lj {
                        out.push(Ambiguity {
                            word: ri.lhs.clone(),
                            kind: AmbiguityKind::Inclusion,
                            left_rule: i,
                            right_rule: j,
                            offset: off,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn one_step<K: Coeff>(rules: &[Rule<K>], a: &Ambiguity) -> (Poly<K>, Poly<K>) {
    let w = a.word.letters();
    let (ri, rj) = (&rules[a.left_rule], &rules[a.right_rule]);
    let mut left = Poly::zero();
    for (m, c) in ri.rhs.terms() {
        left.add_term(Word::splice(m.letters(), &w[ri.lhs.len()..], &[]), c.clone());
    }
    let mut right = Poly::zero();
    let end = a.offset + rj.lhs.len();
    for (m, c) in rj.rhs.terms() {
        right.add_term(Word::splice(&w[..a.offset], m.letters(), &w[end..]), c.clone());
    }
    (left, right)
}

#[derive(Clone, Debug)]
pub struct ConfluenceFailure<K> {
    pub ambiguity: Ambiguity,
    pub left: Poly<K>,
    pub right: Poly<K>,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport<K> {
    pub checked: usize,
    pub failures: Vec<ConfluenceFailure<K>>,
}

impl<K> ConfluenceReport<K> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub struct Completion<K> {
    pub system: RewriteSystem<K>,
    /// New relations in the order they were derived.
    pub derived: Vec<Rule<K>>,
    /// Surviving derived rules whose lhs is a word over the watched subalphabet.
    pub contamination: Vec<Rule<K>>,
    /// True when no failing ambiguity remains within the degree bound.
    pub converged: bool,
    pub rounds: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn letters(a: &Alphabet, s: &str) -> Word {
        Word::from_letters(&s.chars().map(|c| a.letter(&c.to_string()).unwrap()).collect::<Vec<_>>())
    }

    fn plane() -> RewriteSystem<Scalar> {
        let a = Arc::new(Alphabet::from_precedence(&["x", "y"]).unwrap());
        let xy = Poly::word(letters(&a, "xy"));
        let yx = Poly::word(letters(&a, "yx"));
        RewriteSystem::from_relations(a, vec![(xy.sub(&yx.scale(&Scalar::p())), Provenance::Declared)]).unwrap()
    }

    #[test]
    fn quantum_plane_has_no_ambiguities() {
        let s = plane();
        assert!(s.enumerate_ambiguities(4).is_empty());
        assert!(s.check_local_confluence(6).passed());
    }

    #[test]
    fn plane_normal_form_sorts_words() {
        let s = plane();
        let a = s.alphabet().clone();
        let nf = s.normal_form(&Poly::word(letters(&a, "xyx")));
        assert_eq!(nf.display(&a).to_string(), "p*y*x*x");
        assert_eq!(s.normal_words_of_length(3).len(), 4);
    }

    #[test]
    fn rules_must_decrease() {
        let a = Alphabet::from_precedence(&["x", "y"]).unwrap();
        let bad = Rule::<Scalar>::new(letters(&a, "yx"), Poly::word(letters(&a, "xy")), Provenance::Declared);
        assert!(matches!(bad, Err(Error::RuleRejected(_))));
    }

    #[test]
    fn constant_relation_is_rejected() {
        let a = Arc::new(Alphabet::from_precedence(&["x"]).unwrap());
        let r = RewriteSystem::<Scalar>::from_relations(a, vec![(Poly::one(), Provenance::Declared)]);
        assert!(r.is_err());
    }

    #[test]
    fn interreduction_removes_contained_lhs() {
        let a = Arc::new(Alphabet::from_precedence(&["x", "y"]).unwrap());
        let xy = Poly::<Scalar>::word(letters(&a, "xy"));
        let xyy = Poly::<Scalar>::word(letters(&a, "xyy"));
        let s = RewriteSystem::from_relations(
            a.clone(),
            vec![(xyy.sub(&Poly::word(letters(&a, "y"))), Provenance::Declared), (xy, Provenance::Declared)],
        );
        // xy = 0 forces y = 0, after which xy reduces away entirely.
        let s = s.unwrap();
        let lhs: Vec<String> = s.rules().iter().map(|r| a.fmt_word(&r.lhs)).collect();
        assert_eq!(lhs, vec!["y"]);
    }

    #[test]
    fn completion_of_confluent_system_adds_nothing() {
        // x*x = y together with commutativity is already confluent.
        let a = Arc::new(Alphabet::from_precedence(&["x", "y"]).unwrap());
        let w = |s: &str| Poly::<Scalar>::word(letters(&a, s));
        let s = RewriteSystem::from_relations(
            a.clone(),
            vec![(w("xx").sub(&w("y")), Provenance::Declared), (w("yx").sub(&w("xy")), Provenance::Declared)],
        )
        .unwrap();
        assert!(s.check_local_confluence(4).passed());
        let done = s.complete(4, &[]).unwrap();
        assert!(done.derived.is_empty());
        assert!(done.converged);
    }

    #[test]
    fn overlap_word_is_a_superposition() {
        let a = Arc::new(Alphabet::from_precedence(&["a", "b"]).unwrap());
        let w = |s: &str| Poly::<Scalar>::word(letters(&a, s));
        let s = RewriteSystem::from_relations(
            a.clone(),
            vec![(w("ab").sub(&w("ba").scale(&Scalar::q())), Provenance::Declared), (w("aa").sub(&w("b")), Provenance::Declared)],
        )
        .unwrap();
        for amb in s.enumerate_ambiguities(3) {
            let l = &s.rules()[amb.left_rule].lhs;
            let r = &s.rules()[amb.right_rule].lhs;
            assert!(amb.word.letters().starts_with(l.letters()));
            assert_eq!(&amb.word.letters()[amb.offset..amb.offset + r.len()], r.letters());
        }
    }
}
