//! First order calculi over the quantum plane as free bimodules, their
//! realizations by colinear maps, and left and right duals.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::galois::{CleftExtension, ColinearMap, Corepresentation2, Side};
use crate::linalg::Echelon;
use crate::ncpoly::{translate, Letter, Poly, Word};
use crate::presentations::{parse_expr, Algebra, Catalog};
use crate::report::CheckReport;

/// A rank-two free bimodule over the quantum plane, presented as the grade
/// one part of a graded algebra. Elements are stored over the letters of the
/// right-normal algebra.
pub struct Calculus<K: Coeff> {
    pub name: String,
    pub base: Arc<Algebra<K>>,
    /// Normal words read coefficient, then basis letter.
    pub left: Arc<Algebra<K>>,
    /// Normal words read basis letter, then coefficient.
    pub right: Arc<Algebra<K>>,
    basis: [Letter; 2],
}

impl<K: Coeff> Calculus<K> {
    pub fn new(base: Arc<Algebra<K>>, left: Arc<Algebra<K>>, right: Arc<Algebra<K>>, basis: [&str; 2]) -> Result<Self> {
        let ra = right.alphabet();
        let b = [ra.letter(basis[0])?, ra.letter(basis[1])?];
        if b.iter().any(|&l| ra.grade(l) != 1) {
            return Err(Error::Other("basis letters must have grade one".into()));
        }
        Ok(Calculus { name: right.name().to_string(), base, left, right, basis: b })
    }

    /// The cotangent calculus with basis `xi, eta`.
    pub fn cotangent(cat: &Catalog<K>) -> Result<Self> {
        Self::new(
            cat.algebra("quantum_plane")?,
            cat.algebra("cotangent_calculus_left")?,
            cat.algebra("cotangent_calculus")?,
            ["xi", "eta"],
        )
    }

    /// The tangent bimodule with basis `dx, dy` standing for the vector fields
    /// `∂_x, ∂_y`.
    pub fn tangent(cat: &Catalog<K>) -> Result<Self> {
        Self::new(
            cat.algebra("quantum_plane")?,
            cat.algebra("tangent_calculus_left")?,
            cat.algebra("tangent_calculus")?,
            ["dx", "dy"],
        )
    }

    pub fn basis_letter(&self, i: usize) -> Letter {
        self.basis[i]
    }

    pub fn basis_element(&self, i: usize) -> Poly<K> {
        Poly::letter(self.basis[i])
    }

    /// Parses an expression over the calculus generators without normalizing.
    pub fn parse(&self, text: &str) -> Result<Poly<K>> {
        self.right.lift_poly(&parse_expr(text, self.right.alphabet())?)
    }

    /// A base element viewed in the calculus.
    pub fn from_base(&self, b: &Poly<K>) -> Result<Poly<K>> {
        translate(b, self.base.alphabet(), self.right.alphabet())
    }

    fn check_grade(&self, m: &Poly<K>) -> Result<()> {
        let ra = self.right.alphabet();
        if let Some(w) = m.words().find(|w| ra.word_grade(w) != 1) {
            return Err(Error::Other(format!("`{}` does not have grade one", ra.fmt_word(w))));
        }
        Ok(())
    }

    /// Normal form with coefficients on the requested side of the basis.
    pub fn nf(&self, m: &Poly<K>, side: Side) -> Result<Poly<K>> {
        self.check_grade(m)?;
        Ok(match side {
            Side::Right => self.right.nf(m),
            Side::Left => {
                let l = translate(m, self.right.alphabet(), self.left.alphabet())?;
                translate(&self.left.nf(&l), self.left.alphabet(), self.right.alphabet())?
            }
        })
    }

    /// `m = Σ cᵢ·basisᵢ` (left) or `m = Σ basisᵢ·cᵢ` (right).
    pub fn coefficients(&self, m: &Poly<K>, side: Side) -> Result<[Poly<K>; 2]> {
        let n = self.nf(m, side)?;
        let ra = self.right.alphabet();
        let mut out = [Poly::zero(), Poly::zero()];
        for (w, c) in n.terms() {
            let ls = w.letters();
            let (k, rest) = match side {
                Side::Left => (ls[ls.len() - 1], &ls[..ls.len() - 1]),
                Side::Right => (ls[0], &ls[1..]),
            };
            let i = self.basis.iter().position(|&b| b == k).ok_or_else(|| {
                Error::Other(format!("`{}` is not in {} normal form", ra.fmt_word(w), side_name(side)))
            })?;
            let coeff = translate(&Poly::word(Word::from_letters(rest)), ra, self.base.alphabet())?;
            out[i].add_scaled(&coeff, c);
        }
        Ok(out)
    }

    /// `Σ cᵢ·basisᵢ` or `Σ basisᵢ·cᵢ`, returned in right normal form.
    pub fn combine(&self, coeffs: [&Poly<K>; 2], side: Side) -> Result<Poly<K>> {
        let mut out = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let c = self.from_base(c)?;
            let b = self.basis_element(i);
            out = out.add(&match side {
                Side::Left => c.mul(&b),
                Side::Right => b.mul(&c),
            });
        }
        Ok(self.right.nf(&out))
    }

    /// The Leibniz extension of `x ↦ basis₀`, `y ↦ basis₁` to base elements.
    pub fn differential(&self, b: &Poly<K>) -> Result<Poly<K>> {
        let ba = self.base.alphabet();
        let ra = self.right.alphabet();
        let mut images = Vec::with_capacity(ba.len());
        for (i, name) in ["x", "y"].iter().enumerate() {
            if ba.lookup(name).is_none() {
                return Err(Error::Other(format!("base has no generator `{name}`")));
            }
            images.push((ba.letter(name)?, self.basis[i]));
        }
        let mut out = Poly::zero();
        for (w, c) in b.terms() {
            let t: Poly<K> = translate(&Poly::word(w.clone()), ba, ra)?;
            let tw = t.leading().map(|(w, _)| w.clone()).unwrap_or_else(Word::empty);
            for (pos, l) in w.letters().iter().enumerate() {
                let dl = images.iter().find(|(b, _)| b == l).map(|(_, d)| *d).expect("generator image");
                let ls = tw.letters();
                out.add_term(Word::splice(&ls[..pos], &[dl], &ls[pos + 1..]), c.clone());
            }
        }
        Ok(self.right.nf(&out))
    }

    /// Evaluates a grade-one expression with the basis letters replaced by
    /// colinear maps and base letters acting by multiplication on each slot.
    pub fn realize(&self, m: &Poly<K>, images: [&ColinearMap<K>; 2], ext: &CleftExtension<K>) -> Result<ColinearMap<K>> {
        self.check_grade(m)?;
        let ra = self.right.alphabet();
        let mut out = ColinearMap::zero();
        for (w, c) in m.terms() {
            let ls = w.letters();
            let pos = ls.iter().position(|l| self.basis.contains(l)).expect("grade one word has a basis letter");
            let k = self.basis.iter().position(|b| *b == ls[pos]).unwrap();
            let u = translate(&Poly::word(Word::from_letters(&ls[..pos])), ra, self.base.alphabet())?;
            let v = translate(&Poly::word(Word::from_letters(&ls[pos + 1..])), ra, self.base.alphabet())?;
            let piece = ext.right_mul(&ext.left_mul(&u, images[k]), &v);
            out = out.add(&piece.scale(c));
        }
        Ok(out)
    }

    /// The grade-one relations of the presentation, as differences. The
    /// grade-zero ones are those of the base.
    pub fn relations(&self) -> Result<Vec<(String, Poly<K>)>> {
        let pres = self.right.presentation();
        let ra = &pres.alphabet;
        let mut out = Vec::new();
        for r in &pres.relations {
            let f = self.right.lift_poly(&r.difference())?;
            if f.words().all(|w| ra.word_grade(w) == 1) {
                out.push((format!("{} = {}", r.lhs.display(ra), r.rhs.display(ra)), f));
            }
        }
        Ok(out)
    }

    /// Realizes every relation on `images` and expects zero in both slots.
    pub fn check_realized_relations(
        &self,
        images: [&ColinearMap<K>; 2],
        ext: &CleftExtension<K>,
        title: &str,
    ) -> Result<CheckReport> {
        let mut r = CheckReport::new(title);
        for (label, rel) in self.relations()? {
            let v = self.realize(&rel, images, ext)?;
            for (slot, val) in ["e", "f"].iter().zip(v.slots()) {
                r.expect(val.is_zero(), || format!("{label} at slot {slot}"), || ext.total.fmt(val));
            }
        }
        Ok(r)
    }

    /// Left and right normal forms convert into each other without loss.
    pub fn round_trip(&self, m: &Poly<K>) -> Result<bool> {
        let l = self.nf(m, Side::Left)?;
        Ok(self.nf(&l, Side::Right)? == self.nf(m, Side::Right)?)
    }

    /// Left combinations `Σ cᵢ·basisᵢ` with coefficients of degree at most
    /// `max_degree` vanish only trivially.
    pub fn check_free(&self, side: Side, max_degree: usize) -> Result<CheckReport> {
        let mut r = CheckReport::new(format!("{} freeness of {}", side_name(side), self.name));
        let words = self.base.normal_words(max_degree);
        let mut e = Echelon::new();
        for i in 0..2 {
            for w in &words {
                let c = Poly::word(w.clone());
                let zero = Poly::zero();
                let coeffs = if i == 0 { [&c, &zero] } else { [&zero, &c] };
                // Opposite-side normal form makes the check non-trivial.
                let m = self.combine(coeffs, side)?;
                let m = self.nf(&m, opposite(side))?;
                let v: BTreeMap<Word, K> = m.into_terms().collect();
                if e.insert(v) {
                    r.pass();
                } else {
                    r.fail(format!("basis {} times {}", i + 1, self.base.alphabet().fmt_word(w)), "linearly dependent");
                }
            }
        }
        Ok(r)
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn opposite(side: Side) -> Side {
    match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

/// The cotangent coaction respects every calculus relation.
pub fn check_left_covariance<K: Coeff>(cat: &Catalog<K>) -> Result<CheckReport> {
    let map = cat.map("cotangent_coaction")?;
    let rep = map.respects_relations();
    let mut r = CheckReport::new("left covariance");
    for c in &rep.checks {
        match &c.image {
            Ok(f) => r.expect(f.is_zero(), || c.relation.clone(), || map.target().fmt(f)),
            Err(e) => r.fail(c.relation.clone(), e.to_string()),
        }
    }
    Ok(r)
}

/// `Ψ(σ_x) = (a, b)`, `Ψ(σ_y) = (c, d)`, the calculus relations hold on them
/// slot by slot, and they form a left basis.
pub fn check_cotangent_iso<K: Coeff>(cot: &Calculus<K>, ext: &CleftExtension<K>, max_degree: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("cotangent realization");
    let t = Corepresentation2::fundamental(&ext.hopf)?;
    let (sx, sy) = ext.section_basis(&t);
    let p = |s: &str| ext.total.parse(s);
    for (name, got, want) in [("Psi(sigma_x)", &sx, ColinearMap::new(p("a")?, p("b")?)), ("Psi(sigma_y)", &sy, ColinearMap::new(p("c")?, p("d")?))] {
        r.expect(*got == want, || format!("{name} values"), || {
            format!("({}, {})", ext.total.fmt(&got.e), ext.total.fmt(&got.f))
        });
    }
    r.absorb(ext.check_colinear(&[("Psi(sigma_x)", &sx), ("Psi(sigma_y)", &sy)], &t));
    r.absorb(cot.check_realized_relations([&sx, &sy], ext, "relations")?);
    r.absorb(ext.check_free(&[sx, sy], Side::Left, max_degree));
    Ok(r)
}

/// The tangent vector fields from the contragredient corepresentation: their
/// values, the tangent relations slot by slot, and right freeness. The
/// transposed assignment is checked to violate the relations.
pub fn check_tangent_relations<K: Coeff>(tan: &Calculus<K>, ext: &CleftExtension<K>, max_degree: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("tangent realization");
    let st = Corepresentation2::contragredient(&ext.hopf)?;
    r.absorb(st.check_comatrix(&ext.hopf));
    let (dx, dy) = ext.tangent_basis()?;
    let p = |s: &str| ext.total.parse(s);
    let want_x = ColinearMap::new(p("d*Dinv")?, p("-q*c*Dinv")?);
    let want_y = ColinearMap::new(p("-q^-1*b*Dinv")?, p("a*Dinv")?);
    for (name, got, want) in [("d_x", &dx, want_x), ("d_y", &dy, want_y)] {
        r.expect(*got == want, || format!("{name} values"), || {
            format!("({}, {})", ext.total.fmt(&got.e), ext.total.fmt(&got.f))
        });
    }
    r.absorb(ext.check_colinear(&[("d_x", &dx), ("d_y", &dy)], &st));
    r.absorb(tan.check_realized_relations([&dx, &dy], ext, "relations")?);
    r.absorb(ext.check_free(&[dx.clone(), dy.clone()], Side::Right, max_degree));

    let tx = ColinearMap::new(dx.e.clone(), dy.e.clone());
    let ty = ColinearMap::new(dx.f.clone(), dy.f.clone());
    let transposed = tan.check_realized_relations([&tx, &ty], ext, "transposed")?;
    r.expect(!transposed.passed(), || "transposed values violate the relations".into(), || "all relations hold".into());
    if let Some(w) = transposed.first_witness() {
        r.note(format!("transposed assignment fails: {w}"));
    }
    Ok(r)
}

/// A functional on a calculus, by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DualElement<K> {
    /// `Left`: left-linear functionals; `Right`: right-linear ones.
    pub side: Side,
    pub values: [Poly<K>; 2],
}

impl<K: Coeff> DualElement<K> {
    pub fn basis(side: Side, i: usize) -> Self {
        let mut values = [Poly::zero(), Poly::zero()];
        values[i] = Poly::one();
        DualElement { side, values }
    }

    pub fn zero(side: Side) -> Self {
        DualElement { side, values: [Poly::zero(), Poly::zero()] }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.side, o.side, "duals on the same side");
        DualElement { side: self.side, values: [self.values[0].add(&o.values[0]), self.values[1].add(&o.values[1])] }
    }

    pub fn scale(&self, c: &K) -> Self {
        DualElement { side: self.side, values: [self.values[0].scale(c), self.values[1].scale(c)] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }
}

impl<K: Coeff> Calculus<K> {
    /// `X(m)` using the normal form matching the linearity of `X`.
    pub fn evaluate(&self, x: &DualElement<K>, m: &Poly<K>) -> Result<Poly<K>> {
        let c = self.coefficients(m, x.side)?;
        let mut out = Poly::zero();
        for (ci, xi) in c.iter().zip(&x.values) {
            out = out.add(&match x.side {
                Side::Left => self.base.mul(ci, xi),
                Side::Right => self.base.mul(xi, ci),
            });
        }
        Ok(out)
    }

    /// `b·X` (`acting == Left`) or `X·b` (`acting == Right`). Left duals use
    /// `(bX)(m) = X(mb)`, `(Xb)(m) = X(m)b`; right duals use
    /// `(bX)(m) = bX(m)`, `(Xb)(m) = X(bm)`.
    pub fn dual_action(&self, b: &Poly<K>, x: &DualElement<K>, acting: Side) -> Result<DualElement<K>> {
        let bc = self.from_base(b)?;
        let mut values = [Poly::zero(), Poly::zero()];
        for (i, v) in values.iter_mut().enumerate() {
            let e = self.basis_element(i);
            *v = match (x.side, acting) {
                (Side::Left, Side::Left) => self.evaluate(x, &e.mul(&bc))?,
                (Side::Left, Side::Right) => self.base.mul(&x.values[i], b),
                (Side::Right, Side::Left) => self.base.mul(b, &x.values[i]),
                (Side::Right, Side::Right) => self.evaluate(x, &bc.mul(&e))?,
            };
        }
        Ok(DualElement { side: x.side, values })
    }

    /// Evaluates a grade-one expression over `tan` (whose basis letters stand
    /// for `images`) in the dual bimodule of `self`.
    pub fn realize_dual(&self, tan: &Calculus<K>, m: &Poly<K>, images: [&DualElement<K>; 2]) -> Result<DualElement<K>> {
        tan.check_grade(m)?;
        let ta = tan.right.alphabet();
        let ba = self.base.alphabet();
        let mut out = DualElement::zero(images[0].side);
        for (w, c) in m.terms() {
            let ls = w.letters();
            let pos = ls.iter().position(|l| tan.basis.contains(l)).expect("basis letter");
            let k = tan.basis.iter().position(|b| *b == ls[pos]).unwrap();
            let mut acc = images[k].clone();
            for &l in &ls[pos + 1..] {
                let g = translate(&Poly::letter(l), ta, ba)?;
                acc = self.dual_action(&g, &acc, Side::Right)?;
            }
            for &l in ls[..pos].iter().rev() {
                let g = translate(&Poly::letter(l), ta, ba)?;
                acc = self.dual_action(&g, &acc, Side::Left)?;
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }
}

/// The duality claims for the cotangent calculus `cot` and tangent relations
/// `tan`: the left dual basis satisfies the tangent relations, the right dual
/// basis satisfies them with the modified first relation, and
/// `∂_x ↦ ∂_x^R`, `∂_y ↦ (pq)⁻¹ ∂_y^R` intertwines both actions.
pub fn check_duality<K: Coeff>(cot: &Calculus<K>, tan: &Calculus<K>) -> Result<CheckReport> {
    let mut r = CheckReport::new("duality");
    let base = &cot.base;
    let (lx, ly) = (DualElement::basis(Side::Left, 0), DualElement::basis(Side::Left, 1));
    let (rx, ry) = (DualElement::basis(Side::Right, 0), DualElement::basis(Side::Right, 1));

    let mut left = CheckReport::new("left dual");
    for (label, rel) in tan.relations()? {
        let v = cot.realize_dual(tan, &rel, [&lx, &ly])?;
        left.expect(v.is_zero(), || label.clone(), || show_dual(base, &v));
    }
    r.absorb(left);

    let mut right = CheckReport::new("right dual");
    let modified = tan.parse("x*dx - (p*q)^-1*((p*q)^-1 - 1)*dy*y - (p*q)^-1*dx*x")?;
    let mut rels = tan.relations()?;
    let first = rels.remove(0);
    rels.insert(0, ("x*dx modified".into(), modified));
    for (label, rel) in rels {
        let v = cot.realize_dual(tan, &rel, [&rx, &ry])?;
        right.expect(v.is_zero(), || label.clone(), || show_dual(base, &v));
    }
    let unmodified = cot.realize_dual(tan, &first.1, [&rx, &ry])?;
    right.note(format!("unmodified {} on the right dual leaves {}", first.0, show_dual(base, &unmodified)));
    r.absorb(right);

    // φ(Y) = φ(ξ*)·Y(ξ) + φ(η*)·Y(η), using the right action of the right dual.
    let pq_inv = base.scalar(&crate::scalar::Scalar::laurent(-1, -1))?;
    let phi_basis = [rx.clone(), ry.scale(&pq_inv)];
    let phi = |y: &DualElement<K>| -> Result<DualElement<K>> {
        let mut out = DualElement::zero(Side::Right);
        for (v, b) in y.values.iter().zip(&phi_basis) {
            out = out.add(&cot.dual_action(v, b, Side::Right)?);
        }
        Ok(out)
    };
    let mut iso = CheckReport::new("isomorphism");
    for (xi, x) in [("d_x", &lx), ("d_y", &ly)] {
        for g in ["x", "y"] {
            let gp = base.parse(g)?;
            for acting in [Side::Left, Side::Right] {
                let lhs = phi(&cot.dual_action(&gp, x, acting)?)?;
                let rhs = cot.dual_action(&gp, &phi(x)?, acting)?;
                iso.expect(lhs == rhs, || format!("{} action of {g} on {xi}", side_name(acting)), || {
                    format!("{} != {}", show_dual(base, &lhs), show_dual(base, &rhs))
                });
            }
        }
    }
    r.absorb(iso);
    Ok(r)
}

/// Freeness of left combinations `Σ bᵢ Xᵢ` in a dual bimodule.
pub fn check_dual_free<K: Coeff>(cot: &Calculus<K>, side: Side, max_degree: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("{} dual freeness", side_name(side)));
    let mut e = Echelon::new();
    for i in 0..2 {
        let x = DualElement::basis(side, i);
        for w in cot.base.normal_words(max_degree) {
            let y = cot.dual_action(&Poly::word(w.clone()), &x, Side::Left)?;
            let v: BTreeMap<(u8, Word), K> = y.values[0]
                .terms()
                .map(|(w, c)| ((0u8, w.clone()), c.clone()))
                .chain(y.values[1].terms().map(|(w, c)| ((1u8, w.clone()), c.clone())))
                .collect();
            if e.insert(v) {
                r.pass();
            } else {
                r.fail(format!("{} times basis {}", cot.base.alphabet().fmt_word(&w), i + 1), "linearly dependent");
            }
        }
    }
    Ok(r)
}

fn show_dual<K: Coeff>(base: &Algebra<K>, x: &DualElement<K>) -> String {
    format!("({}, {})", base.fmt(&x.values[0]), base.fmt(&x.values[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Symbolic;
    use crate::hopf::HopfStructure;
    use crate::presentations::Registry;
    use crate::scalar::Scalar;

    fn cat() -> Catalog<Scalar> {
        Catalog::new(Arc::new(Registry::standard()), Arc::new(Symbolic))
    }

    #[test]
    fn normal_forms_on_both_sides() {
        let cat = cat();
        let cot = Calculus::cotangent(&cat).unwrap();
        let m = cot.parse("xi*x").unwrap();
        assert_eq!(cot.nf(&m, Side::Left).unwrap(), cot.parse("(p*q)^-1*x*xi").unwrap());
        let m = cot.parse("x*eta").unwrap();
        assert_eq!(cot.nf(&m, Side::Right).unwrap(), cot.parse("(p*q - 1)*xi*y + p*eta*x").unwrap());
        let xi = cot.parse("xi").unwrap();
        assert_eq!(cot.nf(&xi, Side::Left).unwrap(), xi);
        assert!(cot.nf(&cot.parse("x").unwrap(), Side::Left).is_err());
    }

    #[test]
    fn differential_basics() {
        let cat = cat();
        let cot = Calculus::cotangent(&cat).unwrap();
        let b = &cot.base;
        assert_eq!(cot.differential(&b.parse("x").unwrap()).unwrap(), cot.parse("xi").unwrap());
        assert!(cot.differential(&Poly::one()).unwrap().is_zero());
        let raw = b.lift_poly(&parse_expr("x*y - p*y*x", b.alphabet()).unwrap()).unwrap();
        assert!(cot.differential(&raw).unwrap().is_zero());
    }

    #[test]
    fn left_dual_action_on_xi_star() {
        let cat = cat();
        let cot = Calculus::cotangent(&cat).unwrap();
        let x = cot.base.parse("x").unwrap();
        let xs = DualElement::basis(Side::Left, 0);
        let v = cot.dual_action(&x, &xs, Side::Left).unwrap();
        assert_eq!(v.values[0], cot.base.parse("(p*q)^-1*x").unwrap());
        let one = cot.dual_action(&Poly::one(), &xs, Side::Left).unwrap();
        assert_eq!(one, xs);
    }

    #[test]
    fn realizations_and_duality() {
        let cat = cat();
        let hopf = Arc::new(HopfStructure::from_catalog(&cat).unwrap());
        let ext = CleftExtension::from_catalog(&cat, hopf).unwrap();
        let cot = Calculus::cotangent(&cat).unwrap();
        let tan = Calculus::tangent(&cat).unwrap();
        let r = check_cotangent_iso(&cot, &ext, 2).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_tangent_relations(&tan, &ext, 2).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_duality(&cot, &tan).unwrap();
        assert!(r.passed(), "{r}");
        assert!(check_left_covariance(&cat).unwrap().passed());
        assert!(cot.check_free(Side::Left, 2).unwrap().passed());
        assert!(check_dual_free(&cot, Side::Left, 2).unwrap().passed());
    }
}
