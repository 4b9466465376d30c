//! Lexer, parser and printer for the presentation language.
//!
//! ```text
//! algebra CP2 {
//!     generators: x, y;
//!     relations: x*y = p*y*x;
//! }
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Location, Result};
use crate::ncpoly::{Alphabet, Poly};
use crate::scalar::Scalar;

use super::{ActionDecl, Document, MorphismDecl, Presentation, Relation};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    loc: Location,
}

const PUNCT: &[&str] = &["|->", "|>", "->", "{", "}", "(", ")", ":", ";", ",", "=", "+", "-", "*", "/", "^", ">"];

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let loc = Location { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), loc });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), loc });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                i += p.len();
                col += p.len();
                out.push(Token { tok: Tok::Punct(p), loc });
            }
            None => {
                return Err(Error::Syntax { location: loc, message: format!("unexpected character `{c}`") });
            }
        }
    }
    out.push(Token { tok: Tok::Eof, loc: Location { line, column: col } });
    Ok(out)
}

/// Unevaluated expression; generators are resolved against an alphabet later.
#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Int(BigInt),
    Ident(String, Location),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Location),
    Pow(Box<Expr>, i64, Location),
}

impl Expr {
    pub(crate) fn eval(&self, alphabet: &Alphabet) -> Result<Poly<Scalar>> {
        Ok(match self {
            Expr::Int(n) => Poly::constant(Scalar::from_rational(BigRational::from_integer(n.clone()))),
            Expr::Ident(name, loc) => match name.as_str() {
                "p" => Poly::constant(Scalar::p()),
                "q" => Poly::constant(Scalar::q()),
                _ => match alphabet.lookup(name) {
                    Some(l) => Poly::letter(l),
                    None => return Err(Error::UnknownGenerator { location: *loc, name: name.clone() }),
                },
            },
            Expr::Neg(e) => e.eval(alphabet)?.neg(),
            Expr::Add(a, b) => a.eval(alphabet)?.add(&b.eval(alphabet)?),
            Expr::Sub(a, b) => a.eval(alphabet)?.sub(&b.eval(alphabet)?),
            Expr::Mul(a, b) => a.eval(alphabet)?.mul(&b.eval(alphabet)?),
            Expr::Div(a, b, loc) => {
                let d = as_scalar(&b.eval(alphabet)?).ok_or_else(|| Error::Invalid {
                    location: *loc,
                    message: "only division by scalars is allowed".into(),
                })?;
                let inv = d.inv().map_err(|_| Error::Invalid { location: *loc, message: "division by zero".into() })?;
                a.eval(alphabet)?.scale(&inv)
            }
            Expr::Pow(a, e, loc) => {
                let base = a.eval(alphabet)?;
                if let Some(s) = as_scalar(&base) {
                    let v = s.pow(*e).map_err(|_| Error::Invalid { location: *loc, message: "zero to a negative power".into() })?;
                    Poly::constant(v)
                } else if *e < 0 {
                    return Err(Error::Invalid { location: *loc, message: "negative power of a non-scalar".into() });
                } else {
                    let mut acc = Poly::one();
                    for _ in 0..*e {
                        acc = acc.mul(&base);
                    }
                    acc
                }
            }
        })
    }
}

fn as_scalar(f: &Poly<Scalar>) -> Option<Scalar> {
    match f.len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (w, c) = f.leading().unwrap();
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { location: self.peek().loc, message: message.into() })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(&self.peek().tok, Tok::Punct(q) if *q == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == k)
    }

    fn punct(&mut self, p: &str) -> Result<Location> {
        if self.is_punct(p) {
            Ok(self.next().loc)
        } else {
            let found = Self::describe(&self.peek().tok);
            self.err(format!("expected `{p}`, found {found}"))
        }
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        if self.is_keyword(k) {
            self.next();
            Ok(())
        } else {
            let found = Self::describe(&self.peek().tok);
            self.err(format!("expected `{k}`, found {found}"))
        }
    }

    fn ident(&mut self) -> Result<(String, Location)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let loc = self.next().loc;
                Ok((s, loc))
            }
            t => self.err(format!("expected identifier, found {}", Self::describe(&t))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.is_punct("-") {
            self.next();
            true
        } else {
            false
        };
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                let loc = self.peek().loc;
                self.next();
                let v: i64 = i64::try_from(n).map_err(|_| Error::Syntax { location: loc, message: "integer too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            t => self.err(format!("expected integer, found {}", Self::describe(&t))),
        }
    }

    /// `ident ("," ident)*`, possibly empty when `terminator` follows at once.
    fn ident_list(&mut self, terminator: &str) -> Result<Vec<(String, Location)>> {
        let mut out = Vec::new();
        if self.is_punct(terminator) {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if !self.is_punct(",") {
                break;
            }
            self.next();
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.is_punct("-") {
            self.next();
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.is_punct("+") {
                self.next();
            }
            self.term()?
        };
        loop {
            if self.is_punct("+") {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_punct("-") {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.is_punct("*") {
                self.next();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.is_punct("/") {
                let loc = self.next().loc;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?), loc);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.is_punct("^") {
            let loc = self.next().loc;
            base = Expr::Pow(Box::new(base), self.int()?, loc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                let loc = self.next().loc;
                Ok(Expr::Ident(s, loc))
            }
            Tok::Punct("(") => {
                self.next();
                let e = self.expr()?;
                self.punct(")")?;
                Ok(e)
            }
            Tok::Punct("-") => {
                self.next();
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            t => self.err(format!("expected an expression, found {}", Self::describe(&t))),
        }
    }

    fn algebra(&mut self) -> Result<Presentation> {
        self.keyword("algebra")?;
        let (name, _) = self.ident()?;
        let mut params = Vec::new();
        if self.is_punct("(") {
            self.next();
            for (p, loc) in self.ident_list(")")? {
                if p != "p" && p != "q" {
                    return Err(Error::Invalid { location: loc, message: format!("unknown parameter `{p}`") });
                }
                params.push(p);
            }
            self.punct(")")?;
        }
        self.punct("{")?;
        self.keyword("generators")?;
        self.punct(":")?;
        let gens = self.ident_list(";")?;
        self.punct(";")?;
        for (g, loc) in &gens {
            if g == "p" || g == "q" {
                return Err(Error::Invalid { location: *loc, message: format!("`{g}` is reserved for a parameter") });
            }
        }
        let names: Vec<String> = gens.iter().map(|(g, _)| g.clone()).collect();
        let mut grades = vec![0u32; names.len()];
        if self.is_keyword("grade") {
            self.next();
            self.punct(":")?;
            loop {
                let (g, loc) = self.ident()?;
                self.punct("=")?;
                let v = self.int()?;
                let idx = names.iter().position(|n| *n == g).ok_or(Error::UnknownGenerator { location: loc, name: g })?;
                grades[idx] = u32::try_from(v).map_err(|_| Error::Invalid { location: loc, message: "negative grade".into() })?;
                if !self.is_punct(",") {
                    break;
                }
                self.next();
            }
            self.punct(";")?;
        }
        let mut precedence = names.clone();
        if self.is_keyword("order") {
            self.next();
            self.punct(":")?;
            self.keyword("deglex")?;
            let mut prec = Vec::new();
            let start = self.peek().loc;
            if !self.is_punct(";") {
                loop {
                    let (g, loc) = self.ident()?;
                    if !names.contains(&g) {
                        return Err(Error::UnknownGenerator { location: loc, name: g });
                    }
                    if prec.contains(&g) {
                        return Err(Error::Invalid { location: loc, message: format!("`{g}` listed twice in the order") });
                    }
                    prec.push(g);
                    if !self.is_punct(">") {
                        break;
                    }
                    self.next();
                }
            }
            if prec.len() != names.len() {
                return Err(Error::Invalid { location: start, message: "the order must rank every generator".into() });
            }
            self.punct(";")?;
            precedence = prec;
        }
        let prec_grades: Vec<u32> =
            precedence.iter().map(|g| grades[names.iter().position(|n| n == g).unwrap()]).collect();
        let alphabet = Alphabet::with_grades(&precedence, &prec_grades).map_err(|e| Error::Invalid {
            location: gens.first().map(|g| g.1).unwrap_or_default(),
            message: e.to_string(),
        })?;
        self.keyword("relations")?;
        self.punct(":")?;
        let mut relations = Vec::new();
        if !self.is_punct(";") {
            loop {
                let lhs = self.expr()?.eval(&alphabet)?;
                self.punct("=")?;
                let rhs = self.expr()?.eval(&alphabet)?;
                relations.push(Relation { lhs, rhs });
                if !self.is_punct(",") {
                    break;
                }
                self.next();
            }
        }
        self.punct(";")?;
        self.punct("}")?;
        Ok(Presentation { name, params, alphabet: Arc::new(alphabet), relations })
    }

    fn morphism(&mut self, lookup: &dyn Fn(&str) -> Option<Arc<Presentation>>) -> Result<MorphismDecl> {
        self.keyword("morphism")?;
        let (name, _) = self.ident()?;
        self.punct(":")?;
        let (source, sloc) = self.ident()?;
        self.punct("->")?;
        let (target, tloc) = self.ident()?;
        let anti = if self.is_keyword("anti") {
            self.next();
            true
        } else {
            false
        };
        let src = lookup(&source).ok_or(Error::Invalid { location: sloc, message: format!("unknown algebra `{source}`") })?;
        let tgt = lookup(&target).ok_or(Error::Invalid { location: tloc, message: format!("unknown algebra `{target}`") })?;
        self.punct("{")?;
        let mut images = Vec::new();
        while !self.is_punct("}") {
            let (g, loc) = self.ident()?;
            if src.alphabet.lookup(&g).is_none() {
                return Err(Error::UnknownGenerator { location: loc, name: g });
            }
            if images.iter().any(|(h, _)| *h == g) {
                return Err(Error::Invalid { location: loc, message: format!("`{g}` mapped twice") });
            }
            self.punct("|->")?;
            let img = self.expr()?.eval(&tgt.alphabet)?;
            self.punct(";")?;
            images.push((g, img));
        }
        self.punct("}")?;
        Ok(MorphismDecl { name, source, target, anti, images })
    }

    fn action(&mut self, lookup: &dyn Fn(&str) -> Option<Arc<Presentation>>) -> Result<ActionDecl> {
        self.keyword("action")?;
        let (name, _) = self.ident()?;
        self.punct(":")?;
        let (hopf, hloc) = self.ident()?;
        self.keyword("on")?;
        let (module, mloc) = self.ident()?;
        let h = lookup(&hopf).ok_or(Error::Invalid { location: hloc, message: format!("unknown algebra `{hopf}`") })?;
        let b = lookup(&module).ok_or(Error::Invalid { location: mloc, message: format!("unknown algebra `{module}`") })?;
        self.punct("{")?;
        let mut table = Vec::new();
        while !self.is_punct("}") {
            let (g, gloc) = self.ident()?;
            if h.alphabet.lookup(&g).is_none() {
                return Err(Error::UnknownGenerator { location: gloc, name: g });
            }
            self.punct("|>")?;
            let (u, uloc) = self.ident()?;
            if b.alphabet.lookup(&u).is_none() {
                return Err(Error::UnknownGenerator { location: uloc, name: u });
            }
            self.punct("=")?;
            let v = self.expr()?.eval(&b.alphabet)?;
            self.punct(";")?;
            table.push((g, u, v));
        }
        self.punct("}")?;
        Ok(ActionDecl { name, hopf, module, table })
    }
}

/// Parses a file. Morphisms and actions may refer to algebras defined earlier in
/// the same file or to anything `lookup` resolves.
pub fn parse_document(text: &str, lookup: &dyn Fn(&str) -> Option<Arc<Presentation>>) -> Result<Document> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut doc = Document::default();
    loop {
        let local = |name: &str, doc: &Document| doc.algebras.iter().find(|a| a.name == name).cloned().map(Arc::new);
        match p.peek().tok.clone() {
            Tok::Eof => return Ok(doc),
            Tok::Ident(k) if k == "algebra" => {
                let a = p.algebra()?;
                doc.algebras.push(a);
            }
            Tok::Ident(k) if k == "morphism" => {
                let m = {
                    let f = |n: &str| local(n, &doc).or_else(|| lookup(n));
                    p.morphism(&f)?
                };
                doc.morphisms.push(m);
            }
            Tok::Ident(k) if k == "action" => {
                let a = {
                    let f = |n: &str| local(n, &doc).or_else(|| lookup(n));
                    p.action(&f)?
                };
                doc.actions.push(a);
            }
            t => return p.err(format!("expected `algebra`, `morphism` or `action`, found {}", Parser::describe(&t))),
        }
    }
}

/// Parses a single algebra block.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc = parse_document(text, &|_| None)?;
    if doc.algebras.len() != 1 || !doc.morphisms.is_empty() || !doc.actions.is_empty() {
        return Err(Error::Other("expected exactly one algebra block".into()));
    }
    Ok(doc.algebras.into_iter().next().unwrap())
}

/// Parses an expression over `alphabet`.
pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<Poly<Scalar>> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        let found = Parser::describe(&p.peek().tok);
        return p.err(format!("unexpected {found} after expression"));
    }
    e.eval(alphabet)
}

pub fn print_presentation(pres: &Presentation) -> String {
    let a = &pres.alphabet;
    let mut s = String::new();
    let params = if pres.params.is_empty() { String::new() } else { format!("({})", pres.params.join(", ")) };
    let _ = writeln!(s, "algebra {}{} {{", pres.name, params);
    let prec = a.precedence();
    let _ = writeln!(s, "    generators: {};", prec.join(", "));
    let graded: Vec<String> = prec
        .iter()
        .filter_map(|g| {
            let gr = a.grade(a.lookup(g).unwrap());
            (gr != 0).then(|| format!("{g} = {gr}"))
        })
        .collect();
    if !graded.is_empty() {
        let _ = writeln!(s, "    grade: {};", graded.join(", "));
    }
    let _ = writeln!(s, "    order: deglex {};", prec.join(" > "));
    if pres.relations.is_empty() {
        let _ = writeln!(s, "    relations: ;");
    } else {
        let _ = writeln!(s, "    relations:");
        let n = pres.relations.len();
        for (i, r) in pres.relations.iter().enumerate() {
            let sep = if i + 1 == n { ";" } else { "," };
            let _ = writeln!(s, "        {} = {}{}", r.lhs.display(a), r.rhs.display(a), sep);
        }
    }
    s.push_str("}\n");
    s
}

pub fn print_morphism(m: &MorphismDecl, target: &Alphabet) -> String {
    let mut s = String::new();
    let anti = if m.anti { " anti" } else { "" };
    let _ = writeln!(s, "morphism {} : {} -> {}{} {{", m.name, m.source, m.target, anti);
    for (g, img) in &m.images {
        let _ = writeln!(s, "    {g} |-> {};", img.display(target));
    }
    s.push_str("}\n");
    s
}

pub fn print_action(a: &ActionDecl, module: &Alphabet) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "action {} : {} on {} {{", a.name, a.hopf, a.module);
    for (g, u, v) in &a.table {
        let _ = writeln!(s, "    {g} |> {u} = {};", v.display(module));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_plane_block() {
        let p = parse_presentation("algebra CP2 { generators: x, y; relations: x*y = p*y*x; }").unwrap();
        assert_eq!(p.alphabet.precedence(), vec!["x", "y"]);
        assert_eq!(p.relations.len(), 1);
        let printed = print_presentation(&p);
        assert_eq!(parse_presentation(&printed).unwrap(), p);
    }

    #[test]
    fn empty_relations_give_a_free_algebra() {
        let p = parse_presentation("algebra F { generators: u, v; relations: ; }").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn unknown_generator_is_located() {
        let err = parse_presentation("algebra CP2 {\n  generators: x, y;\n  relations: x*z = y;\n}").unwrap_err();
        assert_eq!(err, Error::UnknownGenerator { location: Location { line: 3, column: 16 }, name: "z".into() });
    }

    #[test]
    fn syntax_errors_are_located() {
        let err = parse_presentation("algebra A { generators x; relations: ; }").unwrap_err();
        assert_eq!(err.location(), Some(Location { line: 1, column: 24 }));
        let err = parse_presentation("algebra A { generators: x; relations: x = $; }").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn scalars_powers_and_division() {
        let a = Alphabet::from_precedence(&["x", "y"]).unwrap();
        let f = parse_expr("(p*q)^-1*x - x/(p*q)", &a).unwrap();
        assert!(f.is_zero());
        let g = parse_expr("(x + y)^2", &a).unwrap();
        assert_eq!(g.len(), 4);
        assert!(parse_expr("x/y", &a).is_err());
        assert!(parse_expr("x^-1", &a).is_err());
        assert!(parse_expr("3/2*p^-2*q*x", &a).is_ok());
    }

    #[test]
    fn comments_and_grades() {
        let text = "# calculus\nalgebra G { generators: x, y, xi; grade: xi = 1; order: deglex x > y > xi; relations: x*xi = p*q*xi*x; }";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.alphabet.grade(p.alphabet.letter("xi").unwrap()), 1);
        assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
    }
}
