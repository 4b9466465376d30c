//! Presentations, the text format, the built-in registry and algebra handles.

mod algebra;
pub mod builtin;
pub mod dsl;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{Coeff, Specializer};
use crate::error::{Error, Result};
use crate::ncpoly::{tensor_embed, Alphabet, Letter, Poly, Word};
use crate::rewrite::{Provenance, RewriteSystem};
use crate::scalar::Scalar;

pub use algebra::{Algebra, DEFAULT_COMPLETION, Catalog, GenMap, MapKind, RelationCheck, RelationReport};
pub use builtin::builtin;
pub use dsl::{parse_document, parse_expr, parse_presentation, print_action, print_morphism, print_presentation};

/// `lhs = rhs` over the free algebra on the presentation's generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub lhs: Poly<Scalar>,
    pub rhs: Poly<Scalar>,
}

impl Relation {
    pub fn difference(&self) -> Poly<Scalar> {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub params: Vec<String>,
    pub alphabet: Arc<Alphabet>,
    pub relations: Vec<Relation>,
}

/// Structural equality: same name, parameters, ranked generators with grades,
/// and the same relations in the same order. Tensor bookkeeping is ignored.
impl PartialEq for Presentation {
    fn eq(&self, o: &Self) -> bool {
        let gens = |p: &Presentation| -> Vec<(String, u32)> {
            let a = &p.alphabet;
            (0..a.len()).map(|l| (a.name(l as Letter).to_string(), a.grade(l as Letter))).collect()
        };
        self.name == o.name && self.params == o.params && gens(self) == gens(o) && self.relations == o.relations
    }
}

impl Presentation {
    /// Tensor product: relations of each factor plus commutation of letters
    /// from different factors.
    pub fn tensor(name: &str, factors: &[Arc<Presentation>]) -> Result<Presentation> {
        let alphabets: Vec<Arc<Alphabet>> = factors.iter().map(|f| f.alphabet.clone()).collect();
        let alphabet = Alphabet::tensor(&alphabets)?;
        let mut relations = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for r in &f.relations {
                relations.push(Relation {
                    lhs: tensor_embed(&r.lhs, i, &alphabet)?,
                    rhs: tensor_embed(&r.rhs, i, &alphabet)?,
                });
            }
        }
        for j in 0..factors.len() {
            for i in 0..j {
                for u in 0..alphabets[j].len() as Letter {
                    for v in 0..alphabets[i].len() as Letter {
                        let uj = alphabet.factor_letter(j, u).unwrap();
                        let vi = alphabet.factor_letter(i, v).unwrap();
                        relations.push(Relation {
                            lhs: Poly::word(Word::from_letters(&[uj, vi])),
                            rhs: Poly::word(Word::from_letters(&[vi, uj])),
                        });
                    }
                }
            }
        }
        let mut params: Vec<String> = Vec::new();
        for f in factors {
            for p in &f.params {
                if !params.contains(p) {
                    params.push(p.clone());
                }
            }
        }
        Ok(Presentation { name: name.to_string(), params, alphabet: Arc::new(alphabet), relations })
    }

    /// A copy keeping only the relations `keep` accepts.
    pub fn filtered(&self, name: &str, keep: impl Fn(&Relation) -> bool) -> Presentation {
        Presentation {
            name: name.to_string(),
            params: self.params.clone(),
            alphabet: self.alphabet.clone(),
            relations: self.relations.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    /// Same generators with extra relations appended.
    pub fn extended(&self, name: &str, extra: Vec<Relation>) -> Presentation {
        let mut p = self.filtered(name, |_| true);
        p.relations.extend(extra);
        p
    }

    pub fn relation_polys<K: Coeff>(&self, lift: &dyn Specializer<K>) -> Result<Vec<Poly<K>>> {
        self.relations.iter().map(|r| r.difference().map_coeffs(|c| lift.lift(c))).collect()
    }

    pub fn rewrite_system<K: Coeff>(&self, lift: &dyn Specializer<K>) -> Result<RewriteSystem<K>> {
        let rels = self.relation_polys(lift)?.into_iter().map(|f| (f, Provenance::Declared)).collect();
        RewriteSystem::from_relations(self.alphabet.clone(), rels)
    }

    /// The declared rules completed up to `degree`; `0` skips completion.
    pub fn completed_system<K: Coeff>(&self, lift: &dyn Specializer<K>, degree: usize) -> Result<RewriteSystem<K>> {
        let sys = self.rewrite_system(lift)?;
        if degree == 0 {
            return Ok(sys);
        }
        Ok(sys.complete(degree, &[])?.system)
    }

    pub fn to_dsl(&self) -> String {
        print_presentation(self)
    }
}

/// A generator-image declaration, before it is bound to algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub anti: bool,
    pub images: Vec<(String, Poly<Scalar>)>,
}

/// An action table `g |> u = v`, before it is bound to algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionDecl {
    pub name: String,
    pub hopf: String,
    pub module: String,
    pub table: Vec<(String, String, Poly<Scalar>)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub algebras: Vec<Presentation>,
    pub morphisms: Vec<MorphismDecl>,
    pub actions: Vec<ActionDecl>,
}

/// Named presentations, morphisms and actions.
#[derive(Clone, Debug)]
pub struct Registry {
    presentations: BTreeMap<String, Arc<Presentation>>,
    tensors: BTreeMap<String, Vec<String>>,
    morphisms: BTreeMap<String, MorphismDecl>,
    actions: BTreeMap<String, ActionDecl>,
    swapped: bool,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            presentations: BTreeMap::new(),
            tensors: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            actions: BTreeMap::new(),
            swapped: false,
        }
    }

    /// Every built-in entry with parameters `(p, q)`.
    pub fn standard() -> Self {
        builtin::registry(false).expect("built-in presentations parse")
    }

    /// The built-ins with `p` and `q` exchanged in the Hopf-algebra factor.
    pub fn swapped() -> Self {
        builtin::registry(true).expect("built-in presentations parse")
    }

    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    pub fn presentation(&self, name: &str) -> Result<Arc<Presentation>> {
        self.presentations.get(name).cloned().ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
    }

    pub fn lookup(&self, name: &str) -> Option<Arc<Presentation>> {
        self.presentations.get(name).cloned()
    }

    pub fn algebra_names(&self) -> impl Iterator<Item = &str> {
        self.presentations.keys().map(String::as_str)
    }

    pub fn morphism_names(&self) -> impl Iterator<Item = &str> {
        self.morphisms.keys().map(String::as_str)
    }

    pub fn action_names(&self) -> impl Iterator<Item = &str> {
        self.actions.keys().map(String::as_str)
    }

    pub fn tensor_factors(&self, name: &str) -> Option<&[String]> {
        self.tensors.get(name).map(Vec::as_slice)
    }

    pub fn morphism(&self, name: &str) -> Result<&MorphismDecl> {
        self.morphisms.get(name).ok_or_else(|| Error::Other(format!("unknown morphism `{name}`")))
    }

    pub fn action(&self, name: &str) -> Result<&ActionDecl> {
        self.actions.get(name).ok_or_else(|| Error::Other(format!("unknown action `{name}`")))
    }

    pub fn insert(&mut self, p: Presentation) {
        self.tensors.remove(&p.name);
        self.presentations.insert(p.name.clone(), Arc::new(p));
    }

    pub fn insert_tensor(&mut self, name: &str, factors: &[&str]) -> Result<()> {
        let fs: Vec<Arc<Presentation>> = factors.iter().map(|f| self.presentation(f)).collect::<Result<_>>()?;
        let p = Presentation::tensor(name, &fs)?;
        self.presentations.insert(name.to_string(), Arc::new(p));
        self.tensors.insert(name.to_string(), factors.iter().map(|s| s.to_string()).collect());
        Ok(())
    }

    pub fn insert_morphism(&mut self, m: MorphismDecl) {
        self.morphisms.insert(m.name.clone(), m);
    }

    pub fn insert_action(&mut self, a: ActionDecl) {
        self.actions.insert(a.name.clone(), a);
    }

    /// Parses `text` against this registry and adds every item; returns the
    /// names defined.
    pub fn load(&mut self, text: &str) -> Result<Vec<String>> {
        let doc = parse_document(text, &|n| self.lookup(n))?;
        let mut names = Vec::new();
        for a in doc.algebras {
            names.push(a.name.clone());
            self.insert(a);
        }
        for m in doc.morphisms {
            names.push(m.name.clone());
            self.insert_morphism(m);
        }
        for a in doc.actions {
            names.push(a.name.clone());
            self.insert_action(a);
        }
        Ok(names)
    }

    /// The DSL text of one algebra, morphism or action.
    pub fn print(&self, name: &str) -> Result<String> {
        if let Some(p) = self.presentations.get(name) {
            return Ok(print_presentation(p));
        }
        if let Some(m) = self.morphisms.get(name) {
            return Ok(print_morphism(m, &self.presentation(&m.target)?.alphabet));
        }
        if let Some(a) = self.actions.get(name) {
            return Ok(print_action(a, &self.presentation(&a.module)?.alphabet));
        }
        Err(Error::UnknownAlgebra(name.to_string()))
    }
}
