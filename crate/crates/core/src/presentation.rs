//! Lie algebra presentations and their text format.
//!
//! ```text
//! field = F2
//! algebra surface {
//!   generators = x1, y1, x2, y2;
//!   relations = [x1,y1] + [x2,y2];
//!   truncation = 6;
//! }
//! ```
//!
//! A bare stanza body (`generators x,y; relations [x,y];`) is accepted as a
//! single algebra named `L`. `=` after a keyword is optional, `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::lie::{Bracket, LieExpr};
use crate::with_field;

pub const DEFAULT_TRUNCATION: usize = 6;

/// Generators (all of degree 1), homogeneous bracket relations and a truncation bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiePresentation {
    pub name: String,
    pub field: FieldSpec,
    pub generators: Vec<String>,
    pub relations: Vec<LieExpr>,
    pub truncation: usize,
}

impl LiePresentation {
    /// Validates and normalizes relations.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        generators: Vec<String>,
        relations: Vec<LieExpr>,
        truncation: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let mut normalized = Vec::new();
        for (index, r) in relations.iter().enumerate() {
            if let Some((_, b)) = r.terms.iter().find(|(_, b)| b.max_generator() >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", b.max_generator()), String::new()));
            }
            let degrees = r.degrees();
            if degrees.len() > 1 {
                return Err(Error::Inhomogeneous { index, degrees });
            }
            if let Some(&degree) = degrees.first() {
                if degree < 2 || degree > truncation {
                    return Err(Error::RelationDegree { index, degree, bound: truncation });
                }
            }
            let r =
                with_field!(field, |k| r.normalized(&k)).ok_or_else(|| Error::BadCoefficient(r.render(&generators)))?;
            if !r.is_empty() {
                normalized.push(r);
            }
        }
        Ok(LiePresentation { name: name.into(), field, generators, relations: normalized, truncation })
    }

    pub fn gens(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_degrees(&self) -> Vec<usize> {
        self.relations.iter().filter_map(LieExpr::degree).collect()
    }

    pub fn is_quadratic(&self) -> bool {
        self.relation_degrees().iter().all(|&d| d == 2)
    }

    pub fn with_truncation(&self, n: usize) -> Result<Self> {
        Self::new(self.name.clone(), self.field, self.generators.clone(), self.relations.clone(), n)
    }

    pub fn with_field(&self, field: FieldSpec) -> Result<Self> {
        Self::new(self.name.clone(), field, self.generators.clone(), self.relations.clone(), self.truncation)
    }

    /// Free Lie algebra on `d` generators `x1..xd`.
    pub fn free(field: FieldSpec, d: usize, truncation: usize) -> Self {
        let gens = numbered("x", d);
        Self::new(format!("free{d}"), field, gens, vec![], truncation).expect("valid")
    }

    /// Abelian Lie algebra on `d` generators `a1..ad`.
    pub fn abelian(field: FieldSpec, d: usize, truncation: usize) -> Self {
        let gens = numbered("a", d);
        let mut rels = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                rels.push(LieExpr::bracket(Bracket::pair(Bracket::Gen(i), Bracket::Gen(j))));
            }
        }
        Self::new(format!("abelian{d}"), field, gens, rels, truncation).expect("valid")
    }

    /// `2d` generators `x1,y1,..,xd,yd` with the single relation `sum [xi,yi]`.
    pub fn one_relator(field: FieldSpec, d: usize, truncation: usize) -> Self {
        let mut gens = Vec::new();
        for i in 1..=d {
            gens.push(format!("x{i}"));
            gens.push(format!("y{i}"));
        }
        let rel = LieExpr {
            terms: (0..d)
                .map(|i| (BigRational::one(), Bracket::pair(Bracket::Gen(2 * i), Bracket::Gen(2 * i + 1))))
                .collect(),
        };
        Self::new(format!("one_relator{d}"), field, gens, vec![rel], truncation).expect("valid")
    }

    /// Renders as a stanza in the input grammar (no field header).
    pub fn to_stanza(&self) -> String {
        let mut s = format!("algebra {} {{\n  generators = {};\n", self.name, self.generators.join(", "));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.render(&self.generators)).collect();
            s.push_str(&format!("  relations = {};\n", rels.join(", ")));
        }
        s.push_str(&format!("  truncation = {};\n}}\n", self.truncation));
        s
    }

    /// Renders as a complete file with a field header.
    pub fn to_source(&self) -> String {
        format!("field = {}\n{}", self.field, self.to_stanza())
    }
}

impl fmt::Display for LiePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.render(&self.generators)).collect();
        write!(f, "<{} | {}> over {}, N = {}", self.generators.join(", "), rels.join(", "), self.field, self.truncation)
    }
}

pub fn numbered(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

/// Parses a file and returns every algebra stanza in order.
pub fn parse_file(text: &str) -> Result<Vec<LiePresentation>> {
    Parser::new(text)?.file()
}

/// Parses input holding exactly one algebra (the first one is returned if several are present).
pub fn parse_presentation(text: &str) -> Result<LiePresentation> {
    parse_file(text)?.into_iter().next().ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "no algebra found".into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
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
        let (start_line, start_col) = (line, col);
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: start_line, column: start_col });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: start_line, column: start_col });
        } else if "=;,{}[]+-*/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, column: col });
            i += 1;
            col += 1;
        } else {
            return Err(Error::Syntax { line, column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Stanza {
    name: String,
    generators: Vec<String>,
    relations: Vec<(LieExprSrc, usize, usize)>,
    truncation: Option<usize>,
}

/// A relation before generator names are resolved.
type LieExprSrc = Vec<(BigRational, BracketSrc)>;

enum BracketSrc {
    Name(String, usize, usize),
    Pair(Box<BracketSrc>, Box<BracketSrc>),
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        };
        Err(Error::Syntax { line: t.line, column: t.column, message: format!("{}, found {found}", message.into()) })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn optional_sym(&mut self, c: char) {
        if self.is_sym(c) {
            self.next();
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.next();
                Ok((s, t.line, t.column))
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let n = self.integer()?;
        n.try_into().map_err(|_| Error::Syntax {
            line: t.line,
            column: t.column,
            message: "integer out of range".into(),
        })
    }

    fn file(&mut self) -> Result<Vec<LiePresentation>> {
        let mut field = FieldSpec::Rational;
        if self.is_keyword("field") {
            self.next();
            self.expect_sym('=')?;
            field = self.field_spec()?;
            self.optional_sym(';');
        }
        let mut stanzas = Vec::new();
        if self.is_keyword("generators") {
            stanzas.push(self.body("L".into())?);
        } else {
            while self.is_keyword("algebra") {
                self.next();
                let (name, _, _) = self.ident("an algebra name")?;
                self.expect_sym('{')?;
                let s = self.body(name)?;
                self.expect_sym('}')?;
                stanzas.push(s);
            }
            if stanzas.is_empty() {
                return self.err("expected `algebra` or `generators`");
            }
        }
        if self.peek().tok != Tok::Eof {
            return self.err("expected another `algebra` stanza or end of input");
        }
        stanzas.into_iter().map(|s| resolve(s, field)).collect()
    }

    fn field_spec(&mut self) -> Result<FieldSpec> {
        let t = self.peek().clone();
        let (name, _, _) = self.ident("`Q` or `F<p>`")?;
        let modulus: u64 = if name == "Q" {
            return Ok(FieldSpec::Rational);
        } else if name == "F" {
            let n = self.integer()?;
            n.try_into().unwrap_or(0)
        } else if let Some(digits) = name.strip_prefix('F').map(|s| s.trim_start_matches('_')) {
            digits.parse().map_err(|_| Error::Syntax {
                line: t.line,
                column: t.column,
                message: format!("unknown field `{name}`"),
            })?
        } else {
            return Err(Error::Syntax { line: t.line, column: t.column, message: format!("unknown field `{name}`") });
        };
        FieldSpec::prime(modulus)
    }

    fn body(&mut self, name: String) -> Result<Stanza> {
        if !self.is_keyword("generators") {
            return self.err("expected `generators`");
        }
        self.next();
        self.optional_sym('=');
        let mut generators = Vec::new();
        if !self.is_sym(';') {
            loop {
                generators.push(self.ident("a generator name")?.0);
                if self.is_sym(',') {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect_sym(';')?;
        let mut relations = Vec::new();
        if self.is_keyword("relations") {
            self.next();
            self.optional_sym('=');
            if !self.is_sym(';') {
                loop {
                    let (line, column) = (self.peek().line, self.peek().column);
                    relations.push((self.expr()?, line, column));
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            self.expect_sym(';')?;
        }
        let mut truncation = None;
        if self.is_keyword("truncation") {
            self.next();
            self.optional_sym('=');
            truncation = Some(self.small_int()?);
            self.expect_sym(';')?;
        }
        Ok(Stanza { name, generators, relations, truncation })
    }

    fn expr(&mut self) -> Result<LieExprSrc> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        if self.is_sym('-') {
            self.next();
            sign = -sign;
        } else if self.is_sym('+') {
            self.next();
        }
        loop {
            let (c, b) = self.term()?;
            terms.push((sign.clone() * c, b));
            if self.is_sym('+') {
                self.next();
                sign = BigRational::one();
            } else if self.is_sym('-') {
                self.next();
                sign = -BigRational::one();
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(BigRational, BracketSrc)> {
        if let Tok::Int(_) = self.peek().tok {
            let num = self.integer()?;
            let den = if self.is_sym('/') {
                self.next();
                let t = self.peek().clone();
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(Error::Syntax { line: t.line, column: t.column, message: "zero denominator".into() });
                }
                d
            } else {
                BigInt::one()
            };
            self.expect_sym('*')?;
            Ok((BigRational::new(num, den), self.bracket()?))
        } else {
            Ok((BigRational::one(), self.bracket()?))
        }
    }

    fn bracket(&mut self) -> Result<BracketSrc> {
        if self.is_sym('[') {
            self.next();
            let a = self.bracket()?;
            self.expect_sym(',')?;
            let b = self.bracket()?;
            self.expect_sym(']')?;
            Ok(BracketSrc::Pair(Box::new(a), Box::new(b)))
        } else {
            let (name, line, column) = self.ident("a generator name or `[`")?;
            Ok(BracketSrc::Name(name, line, column))
        }
    }
}

fn resolve_bracket(b: &BracketSrc, gens: &[String]) -> Result<Bracket> {
    match b {
        BracketSrc::Name(n, line, column) => gens
            .iter()
            .position(|g| g == n)
            .map(Bracket::Gen)
            .ok_or_else(|| Error::UnknownGenerator(n.to_string(), format!(" at line {line}, column {column}"))),
        BracketSrc::Pair(a, b) => Ok(Bracket::pair(resolve_bracket(a, gens)?, resolve_bracket(b, gens)?)),
    }
}

fn resolve(s: Stanza, field: FieldSpec) -> Result<LiePresentation> {
    let mut relations = Vec::new();
    for (src, _, _) in &s.relations {
        let mut terms = Vec::new();
        for (c, b) in src {
            terms.push((c.clone(), resolve_bracket(b, &s.generators)?));
        }
        relations.push(LieExpr { terms });
    }
    LiePresentation::new(s.name, field, s.generators, relations, s.truncation.unwrap_or(DEFAULT_TRUNCATION))
}

/// Convenience used in tests and the CLI: coefficients of a relation as field elements.
pub fn relation_coefficients<K: Field>(k: &K, r: &LieExpr) -> Option<Vec<K::Elem>> {
    r.terms.iter().map(|(c, _)| k.from_rational(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_abelian() {
        let p = parse_presentation("generators x,y; relations [x,y];").unwrap();
        assert_eq!(p.generators, vec!["x", "y"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relation_degrees(), vec![2]);
        assert_eq!(p.truncation, DEFAULT_TRUNCATION);
        assert_eq!(p.field, FieldSpec::Rational);
    }

    #[test]
    fn one_relator_source() {
        let p = parse_presentation("generators x1,y1,x2,y2; relations [x1,y1]+[x2,y2];").unwrap();
        assert_eq!(p.gens(), 4);
        assert_eq!(p.relations[0].terms.len(), 2);
        assert_eq!(p, LiePresentation { name: "L".into(), ..LiePresentation::one_relator(FieldSpec::Rational, 2, 6) });
    }

    #[test]
    fn unclosed_bracket_is_a_syntax_error() {
        let e = parse_presentation("generators x,y; relations [x,[y").unwrap_err();
        match e {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 32)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse_presentation("generators x; relations [x,z];"), Err(Error::UnknownGenerator(..))));
        assert!(matches!(
            parse_presentation("generators x,y; relations [x,y] + [x,[x,y]];"),
            Err(Error::Inhomogeneous { .. })
        ));
        assert!(matches!(parse_presentation("field = F4\ngenerators x;"), Err(Error::NotPrime(4))));
        assert!(matches!(parse_presentation("generators x,x;"), Err(Error::DuplicateGenerator(_))));
        assert!(matches!(
            parse_presentation("generators x,y; relations [x,[x,[x,y]]]; truncation = 3;"),
            Err(Error::RelationDegree { degree: 4, .. })
        ));
        assert!(matches!(
            parse_presentation("field = F3\ngenerators x,y; relations 1/3*[x,y];"),
            Err(Error::BadCoefficient(_))
        ));
    }

    #[test]
    fn full_file_with_two_stanzas() {
        let src = "# two factors\nfield = F 2;\nalgebra A { generators = a, b; relations = [a,b]; truncation = 4; }\nalgebra B { generators = c; }\n";
        let ps = parse_file(src).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].field, FieldSpec::Prime(2));
        assert_eq!(ps[0].truncation, 4);
        assert_eq!(ps[1].name, "B");
        assert!(ps[1].relations.is_empty());
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse_presentation("generators x,y,z; relations -2*[x,y] + 1/2*[x,z] - [y,z];").unwrap();
        assert_eq!(p.relations[0].render(&p.generators), "-2*[x,y] + 1/2*[x,z] - [y,z]");
        let p2 = parse_presentation("field = F2\ngenerators x,y; relations 3*[x,y] + [x,y];").unwrap();
        assert!(p2.relations.is_empty());
    }

    #[test]
    fn stanza_roundtrip() {
        let p = LiePresentation::one_relator(FieldSpec::Prime(3), 2, 5);
        assert_eq!(parse_presentation(&p.to_source()).unwrap(), p);
    }
}
