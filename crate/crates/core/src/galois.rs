//! Comodule algebras, the canonical map, cleaving maps and the bimodules of
//! colinear maps attached to two-dimensional corepresentations.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::{accumulate, check_convolution_inverse, ConvolutionMap, HopfStructure};
use crate::linalg::Echelon;
use crate::ncpoly::{Letter, Poly, Word};
use crate::presentations::{Algebra, Catalog, GenMap};
use crate::report::CheckReport;

/// Which side the Hopf factor sits on in a coaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Coassociativity and the counit law of a coaction, on normal words of the
/// comodule up to `max_degree`.
pub fn check_coaction<K: Coeff>(
    coaction: &GenMap<K>,
    hopf: &HopfStructure<K>,
    side: Side,
    max_degree: usize,
) -> CheckReport {
    let src = coaction.source().clone();
    let tgt = coaction.target().clone();
    let (m_slot, h_slot) = match side {
        Side::Right => (0, 1),
        Side::Left => (1, 0),
    };
    let words = src.normal_words(max_degree);
    let parts: Vec<CheckReport> = words
        .par_iter()
        .map(|w| {
            let mut r = CheckReport::new("");
            let name = src.alphabet().fmt_word(w);
            let image = coaction.image_word(w);
            let split = tgt.split(&image);
            // Coassociativity: expand the comodule slot again, or the Hopf slot by Δ.
            let mut again: BTreeMap<Vec<Word>, K> = BTreeMap::new();
            let mut delta: BTreeMap<Vec<Word>, K> = BTreeMap::new();
            let mut counit = Poly::zero();
            for (ws, c) in &split {
                let (m, h) = (&ws[m_slot], &ws[h_slot]);
                for (vs, d) in tgt.split(&coaction.image_word(m)) {
                    let key = match side {
                        Side::Right => vec![vs[0].clone(), vs[1].clone(), h.clone()],
                        Side::Left => vec![h.clone(), vs[0].clone(), vs[1].clone()],
                    };
                    accumulate(&mut again, key, c.mul(&d));
                }
                for (hs, d) in hopf.sweedler(h, 2).iter() {
                    let key = match side {
                        Side::Right => vec![m.clone(), hs[0].clone(), hs[1].clone()],
                        Side::Left => vec![hs[0].clone(), hs[1].clone(), m.clone()],
                    };
                    accumulate(&mut delta, key, c.mul(d));
                }
                counit.add_scaled(&Poly::word(m.clone()), &c.mul(&hopf.counit_word(h)));
            }
            r.expect(again == delta, || format!("coassociativity on {name}"), || format!("{} vs {} terms", again.len(), delta.len()));
            let w_nf = src.nf(&Poly::word(w.clone()));
            r.expect(counit == w_nf, || format!("counit on {name}"), || {
                format!("{} != {}", src.fmt(&counit), src.fmt(&w_nf))
            });
            r
        })
        .collect();
    CheckReport::merged(format!("coaction {}", coaction.name), parts)
}

/// Dimension-two corepresentation `ρ(eᵢ) = Σⱼ eⱼ ⊗ m_{ji}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Corepresentation2<K> {
    /// `m[i][j]`, zero-based, normalized in the Hopf algebra.
    pub m: [[Poly<K>; 2]; 2],
}

impl<K: Coeff> Corepresentation2<K> {
    /// The fundamental corepresentation `T = (a b; c d)`.
    pub fn fundamental(hopf: &HopfStructure<K>) -> Result<Self> {
        let g = |n: &str| hopf.algebra().gen(n);
        Ok(Corepresentation2 { m: [[g("a")?, g("b")?], [g("c")?, g("d")?]] })
    }

    /// `S(T)^t`: `ρ(e) = e ⊗ S(a) + f ⊗ S(b)`, `ρ(f) = e ⊗ S(c) + f ⊗ S(d)`.
    pub fn contragredient(hopf: &HopfStructure<K>) -> Result<Self> {
        let t = Self::fundamental(hopf)?;
        let s = |p: &Poly<K>| hopf.antipode(p);
        Ok(Corepresentation2 { m: [[s(&t.m[0][0]), s(&t.m[1][0])], [s(&t.m[0][1]), s(&t.m[1][1])]] })
    }

    /// `S(T)` without the transpose; kept to show that it is not a
    /// corepresentation.
    pub fn antipode_untransposed(hopf: &HopfStructure<K>) -> Result<Self> {
        let t = Self::fundamental(hopf)?;
        let s = |p: &Poly<K>| hopf.antipode(p);
        Ok(Corepresentation2 { m: [[s(&t.m[0][0]), s(&t.m[0][1])], [s(&t.m[1][0]), s(&t.m[1][1])]] })
    }

    /// `Δ(m_ij) = Σ_k m_ik ⊗ m_kj` and `ε(m_ij) = δ_ij`.
    pub fn check_comatrix(&self, hopf: &HopfStructure<K>) -> CheckReport {
        let mut r = CheckReport::new("comatrix identities");
        let sq = hopf.square();
        for i in 0..2 {
            for j in 0..2 {
                let lhs = hopf.coproduct(&self.m[i][j]);
                let mut rhs = Poly::zero();
                for k in 0..2 {
                    rhs = rhs.add(&sq.join(&[&self.m[i][k], &self.m[k][j]]));
                }
                r.expect(lhs == rhs, || format!("coproduct of m{}{}", i + 1, j + 1), || {
                    format!("{} != {}", sq.fmt(&lhs), sq.fmt(&rhs))
                });
                let e = hopf.counit(&self.m[i][j]);
                let want = if i == j { K::one() } else { K::zero() };
                r.expect(e == want, || format!("counit of m{}{}", i + 1, j + 1), || e.to_string());
            }
        }
        r
    }
}

/// A colinear map `F -> P` given by its values on the basis `{e, f}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColinearMap<K> {
    pub e: Poly<K>,
    pub f: Poly<K>,
}

impl<K: Coeff> ColinearMap<K> {
    pub fn new(e: Poly<K>, f: Poly<K>) -> Self {
        ColinearMap { e, f }
    }

    pub fn zero() -> Self {
        ColinearMap { e: Poly::zero(), f: Poly::zero() }
    }

    pub fn slots(&self) -> [&Poly<K>; 2] {
        [&self.e, &self.f]
    }

    pub fn add(&self, o: &Self) -> Self {
        ColinearMap { e: self.e.add(&o.e), f: self.f.add(&o.f) }
    }

    pub fn scale(&self, c: &K) -> Self {
        ColinearMap { e: self.e.scale(c), f: self.f.scale(c) }
    }
}

/// A cleft extension `B ⊆ P` with its coaction and cleaving map.
pub struct CleftExtension<K: Coeff> {
    pub hopf: Arc<HopfStructure<K>>,
    pub base: Arc<Algebra<K>>,
    pub total: Arc<Algebra<K>>,
    /// `P ⊗ H`.
    pub total_h: Arc<Algebra<K>>,
    pub embedding: Arc<GenMap<K>>,
    pub coaction: Arc<GenMap<K>>,
    pub j: Arc<ConvolutionMap<K>>,
    pub j_inv: Arc<ConvolutionMap<K>>,
}

impl<K: Coeff> CleftExtension<K> {
    /// The frame bundle over the quantum plane with `j = 1 ⊗ id` and
    /// `j⁻¹ = j ∘ S`.
    pub fn from_catalog(cat: &Catalog<K>, hopf: Arc<HopfStructure<K>>) -> Result<Self> {
        let embedding = cat.map("plane_embedding")?;
        let coaction = cat.map("frame_coaction")?;
        let cleaving = cat.map("cleaving_map")?;
        let j_inv_map = Arc::new(hopf.antipode_map().then(&cleaving)?);
        let j = Arc::new(ConvolutionMap::from_genmap(hopf.clone(), cleaving)?);
        let mut j_inv = ConvolutionMap::from_genmap(hopf.clone(), j_inv_map)?;
        j_inv.name = "j^-1".into();
        Self::new(hopf, embedding, coaction, j, Arc::new(j_inv))
    }

    pub fn new(
        hopf: Arc<HopfStructure<K>>,
        embedding: Arc<GenMap<K>>,
        coaction: Arc<GenMap<K>>,
        j: Arc<ConvolutionMap<K>>,
        j_inv: Arc<ConvolutionMap<K>>,
    ) -> Result<Self> {
        let total = coaction.source().clone();
        let total_h = coaction.target().clone();
        if embedding.target().presentation() != total.presentation()
            || j.target().presentation() != total.presentation()
            || total_h.factors().len() != 2
        {
            return Err(Error::AlphabetMismatch("inconsistent extension data".into()));
        }
        Ok(CleftExtension { hopf, base: embedding.source().clone(), total, total_h, embedding, coaction, j, j_inv })
    }

    /// Embeds a base element into the total algebra.
    pub fn embed(&self, b: &Poly<K>) -> Poly<K> {
        self.embedding.apply(b)
    }

    fn join(&self, p: &Poly<K>, h: &Poly<K>) -> Poly<K> {
        self.total_h.join(&[p, h])
    }

    /// `Δ_R(e) = e ⊗ 1`.
    pub fn is_coinvariant(&self, e: &Poly<K>) -> bool {
        self.coaction.apply(e) == self.join(e, &Poly::one())
    }

    /// `f ⊗ f' ↦ Σ f f'₍₀₎ ⊗ f'₍₁₎`.
    pub fn canonical_map(&self, f: &Poly<K>, f2: &Poly<K>) -> Poly<K> {
        let left = self.join(f, &Poly::one());
        self.total_h.mul(&left, &self.coaction.apply(f2))
    }

    /// Colinearity `Δ_R ∘ j = (j ⊗ id) ∘ Δ` and convolution invertibility
    /// with the candidate inverse, on normal H-words up to `max_degree`.
    pub fn check_cleaving(&self, max_degree: usize) -> Result<CheckReport> {
        let mut r = CheckReport::new("cleaving map");
        r.absorb(check_colinearity(&self.j, self, max_degree));
        r.absorb(check_convolution_inverse(&self.j, &self.j_inv, max_degree)?);
        Ok(r)
    }

    /// `β(β̂(f ⊗ h)) = f ⊗ h` with `β̂(f ⊗ h) = Σ f j⁻¹(h₁) ⊗ j(h₂)`, for base
    /// words `f` and Hopf words `h` up to `max_degree`.
    pub fn check_galois_onesided(&self, max_degree: usize) -> CheckReport {
        let fs = self.base.normal_words(max_degree);
        let hs = self.hopf.algebra().normal_words(max_degree);
        let cases: Vec<(&Word, &Word)> = fs.iter().flat_map(|f| hs.iter().map(move |h| (f, h))).collect();
        let parts: Vec<CheckReport> = cases
            .par_iter()
            .map(|(f, h)| {
                let mut r = CheckReport::new("");
                let fp = self.embed(&Poly::word((*f).clone()));
                let mut out = Poly::zero();
                for (ws, c) in self.hopf.sweedler(h, 2).iter() {
                    let left = self.total.mul(&fp, &self.j_inv.value(&ws[0]));
                    out.add_scaled(&self.canonical_map(&left, &self.j.value(&ws[1])), c);
                }
                let want = self.join(&fp, &Poly::word((*h).clone()));
                r.expect(
                    out == want,
                    || format!("{} ⊗ {}", self.base.alphabet().fmt_word(f), self.hopf.algebra().alphabet().fmt_word(h)),
                    || format!("{} != {}", self.total_h.fmt(&out), self.total_h.fmt(&want)),
                );
                r
            })
            .collect();
        CheckReport::merged("canonical map composite", parts)
    }

    /// On normal words of the total algebra up to `max_degree`: every word
    /// from the base is coinvariant, and the coinvariant subspace has exactly
    /// their dimension.
    pub fn check_coinvariants(&self, max_degree: usize) -> CheckReport {
        let mut r = CheckReport::new("coinvariants");
        let words = self.total.normal_words(max_degree);
        let base_letters = self.base_letters();
        let is_base = |w: &Word| w.letters().iter().all(|l| base_letters.contains(l));
        let base_count = words.iter().filter(|w| is_base(w)).count();
        for w in words.iter().filter(|w| is_base(w)) {
            let p = Poly::word(w.clone());
            r.expect(self.is_coinvariant(&p), || format!("{} is coinvariant", self.total.alphabet().fmt_word(w)), || {
                self.total_h.fmt(&self.coaction.apply(&p))
            });
        }
        // Rank of f ↦ Δ_R(f) - f ⊗ 1 on the span of all normal words.
        let images: Vec<BTreeMap<Word, K>> = words
            .par_iter()
            .map(|w| {
                let p = Poly::word(w.clone());
                self.coaction.apply(&p).sub(&self.join(&p, &Poly::one())).into_terms().collect()
            })
            .collect();
        let mut e = Echelon::new();
        for v in images {
            e.insert(v);
        }
        let kernel = words.len() - e.rank();
        r.expect(kernel == base_count, || "coinvariant dimension".into(), || {
            format!("kernel has dimension {kernel}, base words span {base_count}")
        });
        r.note(format!("{} normal words, {} from the base", words.len(), base_count));
        r
    }

    fn base_letters(&self) -> Vec<Letter> {
        let ba = self.base.alphabet();
        (0..ba.len() as Letter)
            .filter_map(|l| self.embedding.image_of(l).leading().map(|(w, _)| w.letters()[0]))
            .collect()
    }

    /// `Δ_R(ℓ(e)) = ℓ(e) ⊗ m11 + ℓ(f) ⊗ m21`, and likewise for `f`.
    pub fn is_colinear(&self, l: &ColinearMap<K>, corep: &Corepresentation2<K>) -> bool {
        self.colinearity_defect(l, corep).iter().all(|d| d.is_zero())
    }

    fn colinearity_defect(&self, l: &ColinearMap<K>, corep: &Corepresentation2<K>) -> [Poly<K>; 2] {
        let mut out = [Poly::zero(), Poly::zero()];
        for (i, slot) in out.iter_mut().enumerate() {
            let lhs = self.coaction.apply(l.slots()[i]);
            let rhs = self.join(&l.e, &corep.m[0][i]).add(&self.join(&l.f, &corep.m[1][i]));
            *slot = lhs.sub(&rhs);
        }
        out
    }

    /// `Ψ(u)(λ) = Σ u(λ₀) j(λ₁)` for `u = (u(e), u(f))` with base values.
    pub fn psi(&self, u: (&Poly<K>, &Poly<K>), corep: &Corepresentation2<K>) -> ColinearMap<K> {
        let ue = self.embed(u.0);
        let uf = self.embed(u.1);
        let slot = |i: usize| {
            let a = self.total.mul(&ue, &self.j.apply(&corep.m[0][i]));
            a.add(&self.total.mul(&uf, &self.j.apply(&corep.m[1][i])))
        };
        ColinearMap { e: slot(0), f: slot(1) }
    }

    /// `Ψ(σ_x)` and `Ψ(σ_y)` for the dual basis `σ_x = (1, 0)`, `σ_y = (0, 1)`.
    pub fn section_basis(&self, corep: &Corepresentation2<K>) -> (ColinearMap<K>, ColinearMap<K>) {
        let (one, zero) = (Poly::one(), Poly::zero());
        (self.psi((&one, &zero), corep), self.psi((&zero, &one), corep))
    }

    /// `(∂_x, ∂_y)` from the contragredient corepresentation.
    pub fn tangent_basis(&self) -> Result<(ColinearMap<K>, ColinearMap<K>)> {
        Ok(self.section_basis(&Corepresentation2::contragredient(&self.hopf)?))
    }

    /// `(bℓ)(λ) = b ℓ(λ)`.
    pub fn left_mul(&self, b: &Poly<K>, l: &ColinearMap<K>) -> ColinearMap<K> {
        let bp = self.embed(b);
        ColinearMap { e: self.total.mul(&bp, &l.e), f: self.total.mul(&bp, &l.f) }
    }

    /// `(ℓb)(λ) = ℓ(λ) b`.
    pub fn right_mul(&self, l: &ColinearMap<K>, b: &Poly<K>) -> ColinearMap<K> {
        let bp = self.embed(b);
        ColinearMap { e: self.total.mul(&l.e, &bp), f: self.total.mul(&l.f, &bp) }
    }

    /// Colinearity of a family of maps, with the failing slot as witness.
    pub fn check_colinear(&self, maps: &[(&str, &ColinearMap<K>)], corep: &Corepresentation2<K>) -> CheckReport {
        let mut r = CheckReport::new("colinearity");
        for (name, l) in maps {
            let d = self.colinearity_defect(l, corep);
            for (slot, defect) in ["e", "f"].iter().zip(d.iter()) {
                r.expect(defect.is_zero(), || format!("{name} at {slot}"), || self.total_h.fmt(defect));
            }
        }
        r
    }

    /// Whether `Σ bᵢ ℓᵢ` (left) or `Σ ℓᵢ bᵢ` (right) with base coefficients of
    /// degree at most `max_degree` vanishes only for zero coefficients.
    pub fn check_free(&self, basis: &[ColinearMap<K>], side: Side, max_degree: usize) -> CheckReport {
        let mut r = CheckReport::new(match side {
            Side::Left => "left freeness",
            Side::Right => "right freeness",
        });
        let words = self.base.normal_words(max_degree);
        let mut e = Echelon::new();
        let mut count = 0;
        for (i, l) in basis.iter().enumerate() {
            for w in &words {
                let b = Poly::word(w.clone());
                let m = match side {
                    Side::Left => self.left_mul(&b, l),
                    Side::Right => self.right_mul(l, &b),
                };
                let v: BTreeMap<(u8, Word), K> = m
                    .e
                    .into_terms()
                    .map(|(w, c)| ((0u8, w), c))
                    .chain(m.f.into_terms().map(|(w, c)| ((1u8, w), c)))
                    .collect();
                count += 1;
                if !e.insert(v) {
                    r.fail(format!("basis element {} times {}", i + 1, self.base.alphabet().fmt_word(w)), "dependent on earlier products");
                }
            }
        }
        r.checked = count;
        r
    }
}

/// `Δ_R(j(h)) = (j ⊗ id)(Δ(h))` on normal words up to `max_degree`.
pub fn check_colinearity<K: Coeff>(j: &ConvolutionMap<K>, ext: &CleftExtension<K>, max_degree: usize) -> CheckReport {
    let words = ext.hopf.algebra().normal_words(max_degree);
    let parts: Vec<CheckReport> = words
        .par_iter()
        .map(|w| {
            let mut r = CheckReport::new("");
            let lhs = ext.coaction.apply(&j.value(w));
            let mut rhs = Poly::zero();
            for (ws, c) in ext.hopf.sweedler(w, 2).iter() {
                rhs.add_scaled(&ext.join(&j.value(&ws[0]), &Poly::word(ws[1].clone())), c);
            }
            r.expect(lhs == rhs, || ext.hopf.algebra().alphabet().fmt_word(w), || {
                format!("{} != {}", ext.total_h.fmt(&lhs), ext.total_h.fmt(&rhs))
            });
            r
        })
        .collect();
    CheckReport::merged(format!("colinearity of {}", j.name), parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Symbolic;
    use crate::presentations::Registry;
    use crate::scalar::Scalar;

    fn ext() -> CleftExtension<Scalar> {
        let cat = Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic));
        let hopf = Arc::new(HopfStructure::from_catalog(&cat).unwrap());
        CleftExtension::from_catalog(&cat, hopf).unwrap()
    }

    #[test]
    fn coinvariant_examples() {
        let e = ext();
        let p = |s: &str| e.total.parse(s).unwrap();
        assert!(e.is_coinvariant(&p("x")));
        assert!(!e.is_coinvariant(&p("a")));
        assert!(e.is_coinvariant(&Poly::one()));
    }

    #[test]
    fn canonical_map_examples() {
        let e = ext();
        let p = |s: &str| e.total.parse(s).unwrap();
        let th = |s: &str| e.total_h.parse(s).unwrap();
        assert_eq!(e.canonical_map(&Poly::one(), &p("a")), th("a_1*a_2 + b_1*c_2"));
        assert_eq!(e.canonical_map(&p("x"), &Poly::one()), th("x_1"));
        assert_eq!(e.canonical_map(&Poly::one(), &p("x")), th("x_1"));
    }

    #[test]
    fn psi_of_dual_basis() {
        let e = ext();
        let t = Corepresentation2::fundamental(&e.hopf).unwrap();
        let (sx, sy) = e.section_basis(&t);
        let p = |s: &str| e.total.parse(s).unwrap();
        assert_eq!(sx, ColinearMap::new(p("a"), p("b")));
        assert_eq!(sy, ColinearMap::new(p("c"), p("d")));
        assert!(e.is_colinear(&sx, &t));
        assert!(!e.is_colinear(&ColinearMap::new(Poly::one(), Poly::zero()), &t));
        assert!(e.is_colinear(&ColinearMap::zero(), &t));
    }

    #[test]
    fn tangent_basis_values() {
        let e = ext();
        let (dx, dy) = e.tangent_basis().unwrap();
        let p = |s: &str| e.total.parse(s).unwrap();
        assert_eq!(dx, ColinearMap::new(p("d*Dinv"), p("-q*c*Dinv")));
        assert_eq!(dy, ColinearMap::new(p("-q^-1*b*Dinv"), p("a*Dinv")));
        let st = Corepresentation2::contragredient(&e.hopf).unwrap();
        assert!(st.check_comatrix(&e.hopf).passed());
        assert!(e.is_colinear(&dx, &st) && e.is_colinear(&dy, &st));
        assert!(!Corepresentation2::antipode_untransposed(&e.hopf).unwrap().check_comatrix(&e.hopf).passed());
    }

    #[test]
    fn left_multiple_by_x() {
        let e = ext();
        let t = Corepresentation2::fundamental(&e.hopf).unwrap();
        let (sx, _) = e.section_basis(&t);
        let x = e.base.parse("x").unwrap();
        let xl = e.left_mul(&x, &sx);
        let p = |s: &str| e.total.parse(s).unwrap();
        assert_eq!(xl, ColinearMap::new(p("p*q*a*x"), p("p*q*b*x")));
        assert!(e.is_colinear(&xl, &t));
        assert_eq!(e.right_mul(&sx, &x).e, p("a*x"));
    }

    #[test]
    fn cleaving_and_composite_at_degree_two() {
        let e = ext();
        assert!(e.check_cleaving(2).unwrap().passed());
        assert!(e.check_galois_onesided(2).passed());
    }

    #[test]
    fn counit_collapse_is_not_colinear() {
        let e = ext();
        let collapse = ConvolutionMap::unit(e.hopf.clone(), e.total.clone());
        assert!(!check_colinearity(&collapse, &e, 1).passed());
    }
}
