//! Line-oriented concrete syntax.
//!
//! ```text
//! axiom   := concept "SubClassOf" concept
//! concept := operand ("and" operand)*
//! operand := "Top" | NAME | ?VAR | "(" concept ")" | "exists" ROLE "." operand
//! ```
//!
//! `exists r.` takes a single operand, so `exists r.A and B` is
//! `(exists r.A) and B`. Sugar lines are expanded while parsing:
//!
//! ```text
//! chain: r o r SubClassOf s
//! C SubClassOf exists r.Self
//! C SubClassOf (r subRoleOf s)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use elx_core::sugar::SugarAxiom;
use elx_core::{Axiom, Concept, ConceptBase, Error as CoreError, FiniteInterpretation, Ontology, RoleName, VarName};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError { span, message: message.into() }
    }
}

type PResult<T> = Result<T, ParseError>;

const KEYWORDS: [&str; 4] = ["Top", "and", "exists", "SubClassOf"];

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Var(String),
    Dot,
    LParen,
    RParen,
    Colon,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Var(s) => write!(f, "`?{s}`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::End => f.write_str("end of line"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokens of one line; everything after `#` is dropped.
fn lex(line: &str, line_no: usize) -> PResult<Vec<(Tok, SourceSpan)>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let span = |start: usize, end: usize| SourceSpan { line: line_no, column: start + 1, length: end - start };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '.' | '(' | ')' | ':' => {
                i += 1;
                let tok = match c {
                    '.' => Tok::Dot,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Colon,
                };
                out.push((tok, span(start, i)));
            }
            '?' => {
                i += 1;
                if i >= chars.len() || !(is_ident_start(chars[i]) || chars[i] == '_') {
                    return Err(ParseError::new(span(start, i), "expected a variable name after `?`"));
                }
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Var(chars[start + 1..i].iter().collect()), span(start, i)));
            }
            c if is_ident_start(c) => {
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), span(start, i)));
            }
            other => return Err(ParseError::new(span(start, start + 1), format!("unexpected character `{other}`"))),
        }
    }
    out.push((Tok::End, span(chars.len(), chars.len())));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Concept,
    Role,
}

/// Which names have been used as concepts and which as roles.
#[derive(Default)]
struct Namespace {
    kinds: BTreeMap<String, (Kind, SourceSpan)>,
}

impl Namespace {
    fn record(&mut self, name: &str, kind: Kind, span: SourceSpan) -> PResult<()> {
        match self.kinds.get(name) {
            Some(&(seen, first)) if seen != kind => {
                let (now, before) = match kind {
                    Kind::Concept => ("concept", "role"),
                    Kind::Role => ("role", "concept"),
                };
                Err(ParseError::new(span, format!("`{name}` used as a {now} but it is a {before} name (first used at {first})")))
            }
            Some(_) => Ok(()),
            None => {
                self.kinds.insert(name.to_string(), (kind, span));
                Ok(())
            }
        }
    }
}

struct LineParser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    names: &'a mut Namespace,
}

impl LineParser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(self.span(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn expect_end(&mut self) -> PResult<()> {
        self.expect(Tok::End)
    }

    fn concept(&mut self) -> PResult<Concept> {
        let mut conjuncts = vec![self.operand()?];
        while self.is_keyword("and") {
            self.bump();
            conjuncts.push(self.operand()?);
        }
        Ok(if conjuncts.len() == 1 { conjuncts.pop().unwrap().normalize() } else { Concept::and(conjuncts) })
    }

    fn operand(&mut self) -> PResult<Concept> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Ident(s) if s == "Top" => Ok(Concept::Top),
            Tok::Ident(s) if s == "exists" => {
                let role = self.role()?;
                self.expect(Tok::Dot)?;
                if self.is_keyword("Self") {
                    return Err(ParseError::new(
                        self.span(),
                        "`Self` is only allowed as a whole right-hand side `exists r.Self`",
                    ));
                }
                Ok(Concept::exists(role, self.operand()?))
            }
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => {
                Err(ParseError::new(span, format!("expected a concept, found keyword `{s}`")))
            }
            Tok::Ident(s) => {
                self.names.record(&s, Kind::Concept, span)?;
                Ok(Concept::atom(s.as_str()))
            }
            Tok::Var(v) => Ok(Concept::var(v.as_str())),
            Tok::LParen => {
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            other => Err(ParseError::new(span, format!("expected a concept, found {other}"))),
        }
    }

    fn role(&mut self) -> PResult<RoleName> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => {
                Err(ParseError::new(span, format!("expected a role name, found keyword `{s}`")))
            }
            Tok::Ident(s) => {
                self.names.record(&s, Kind::Role, span)?;
                Ok(RoleName::new(s))
            }
            Tok::Var(v) => Err(ParseError::new(span, format!("variable `?{v}` in role position"))),
            other => Err(ParseError::new(span, format!("expected a role name, found {other}"))),
        }
    }

    fn role_chain(&mut self) -> PResult<Vec<RoleName>> {
        let mut roles = vec![self.role()?];
        while self.is_keyword("o") {
            self.bump();
            roles.push(self.role()?);
        }
        Ok(roles)
    }

    /// A whole line: plain axiom or sugar form.
    fn statement(&mut self) -> PResult<Statement> {
        if matches!((self.peek(), self.peek_at(1)), (Tok::Ident(s), Tok::Colon) if s == "chain") {
            self.bump();
            self.bump();
            let lhs = self.role_chain()?;
            self.expect_keyword("SubClassOf")?;
            let rhs = self.role_chain()?;
            self.expect_end()?;
            return Ok(Statement::Sugar(SugarAxiom::RoleChain { lhs, rhs }));
        }
        let lhs_span = self.span();
        let lhs = self.concept()?;
        self.expect_keyword("SubClassOf")?;
        let self_form = matches!(
            (self.peek(), self.peek_at(2), self.peek_at(3), self.peek_at(4)),
            (Tok::Ident(e), Tok::Dot, Tok::Ident(s), Tok::End) if e == "exists" && s == "Self"
        );
        let rvm_form = matches!(
            (self.peek(), self.peek_at(2), self.peek_at(4), self.peek_at(5)),
            (Tok::LParen, Tok::Ident(k), Tok::RParen, Tok::End) if k == "subRoleOf"
        );
        if self_form || rvm_form {
            if !lhs.is_ground() {
                return Err(ParseError::new(lhs_span, "sugar forms need a ground left-hand side"));
            }
            self.bump();
            let first = self.role()?;
            self.bump();
            let sugar = if self_form {
                SugarAxiom::SelfRestriction { lhs, role: first }
            } else {
                let super_role = self.role()?;
                SugarAxiom::LocalRvm { lhs, sub_role: first, super_role }
            };
            self.bump();
            self.expect_end()?;
            return Ok(Statement::Sugar(sugar));
        }
        let rhs = self.concept()?;
        self.expect_end()?;
        Ok(Statement::Axiom(Axiom::new(lhs, rhs)))
    }
}

enum Statement {
    Axiom(Axiom),
    Sugar(SugarAxiom),
}

/// One axiom of a parsed file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedAxiom {
    pub axiom: Axiom,
    pub span: SourceSpan,
    /// The sugar form the axiom was expanded from, if any.
    pub sugar: Option<SugarAxiom>,
}

/// Axioms in file order, duplicates dropped.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParsedOntology {
    pub axioms: Vec<ParsedAxiom>,
}

impl ParsedOntology {
    pub fn ontology(&self) -> Ontology {
        self.axioms.iter().map(|a| a.axiom.clone()).collect()
    }
}

fn line_span(line_no: usize, line: &str) -> SourceSpan {
    let content = line.split('#').next().unwrap_or("");
    let leading = content.len() - content.trim_start().len();
    SourceSpan { line: line_no, column: leading + 1, length: content.trim().chars().count() }
}

pub fn parse_ontology(text: &str) -> PResult<ParsedOntology> {
    let mut names = Namespace::default();
    let mut out = ParsedOntology::default();
    let mut seen = BTreeSet::new();
    let mut fresh = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = lex(line, line_no)?;
        if toks.len() == 1 {
            continue;
        }
        let span = line_span(line_no, line);
        let mut parser = LineParser { toks, pos: 0, names: &mut names };
        let (axiom, sugar) = match parser.statement()? {
            Statement::Axiom(a) => (a, None),
            Statement::Sugar(s) => {
                let var = VarName::new(format!("__v{fresh}"));
                fresh += 1;
                let axiom = s.desugar_with(&var).map_err(|e| ParseError::new(span, e.to_string()))?;
                (axiom, Some(s))
            }
        };
        if seen.insert(axiom.clone()) {
            out.axioms.push(ParsedAxiom { axiom, span, sugar });
        }
    }
    Ok(out)
}

/// A single axiom such as a goal; sugar forms are not accepted here.
pub fn parse_axiom(text: &str) -> PResult<Axiom> {
    let mut names = Namespace::default();
    let mut parser = LineParser { toks: lex(text, 1)?, pos: 0, names: &mut names };
    let lhs = parser.concept()?;
    parser.expect_keyword("SubClassOf")?;
    let rhs = parser.concept()?;
    parser.expect_end()?;
    Ok(Axiom::new(lhs, rhs))
}

pub fn parse_concept(text: &str) -> PResult<Concept> {
    let mut names = Namespace::default();
    let mut parser = LineParser { toks: lex(text, 1)?, pos: 0, names: &mut names };
    let c = parser.concept()?;
    parser.expect_end()?;
    Ok(c)
}

/// One ground concept per line.
pub fn parse_concept_base(text: &str) -> PResult<ConceptBase> {
    let mut names = Namespace::default();
    let mut base = ConceptBase::new();
    for (idx, line) in text.lines().enumerate() {
        let toks = lex(line, idx + 1)?;
        if toks.len() == 1 {
            continue;
        }
        let mut parser = LineParser { toks, pos: 0, names: &mut names };
        let start = parser.span();
        let c = parser.concept()?;
        parser.expect_end()?;
        if !c.is_ground() {
            return Err(ParseError::new(start, format!("base concept `{c}` contains a variable")));
        }
        base.insert(c);
    }
    Ok(base)
}

pub fn print_concept(c: &Concept) -> String {
    c.to_string()
}

pub fn print_axiom(a: &Axiom) -> String {
    a.to_string()
}

pub fn print_ontology(kb: &Ontology) -> String {
    kb.to_string()
}

/// Parses the `*.model` format. Lines (or `/`-separated segments) are
/// `domain: a b c`, `Name: a b` or `role: (a,b) (b,c)`.
pub fn parse_interpretation(text: &str) -> PResult<FiniteInterpretation> {
    let mut interp: Option<FiniteInterpretation> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for segment in content.split('/') {
            let seg_start = offset;
            offset += segment.chars().count() + 1;
            let trimmed = segment.trim();
            if trimmed.is_empty() {
                continue;
            }
            let column = seg_start + segment.chars().take_while(|c| c.is_whitespace()).count() + 1;
            let span = SourceSpan { line: line_no, column, length: trimmed.chars().count() };
            let Some((head, values)) = trimmed.split_once(':') else {
                return Err(ParseError::new(span, "expected `name: values`"));
            };
            let head = head.trim();
            if head.is_empty() || !head.starts_with(is_ident_start) || !head.chars().all(is_ident_char) {
                return Err(ParseError::new(span, format!("invalid name `{head}`")));
            }
            if head == "domain" {
                if interp.is_some() {
                    return Err(ParseError::new(span, "duplicate `domain:` line"));
                }
                let elems: Vec<&str> = values.split_whitespace().collect();
                interp = Some(FiniteInterpretation::new(elems).map_err(|e| ParseError::new(span, e.to_string()))?);
                continue;
            }
            let Some(i) = interp.as_mut() else {
                return Err(ParseError::new(span, "the `domain:` line must come first"));
            };
            let element = |i: &FiniteInterpretation, name: &str| {
                i.element(name).map_err(|e: CoreError| ParseError::new(span, e.to_string()))
            };
            let values = values.trim();
            if values.starts_with('(') {
                let role = RoleName::new(head);
                i.declare_role(&role);
                let mut rest = values;
                while !rest.is_empty() {
                    let Some(inner) = rest.strip_prefix('(') else {
                        return Err(ParseError::new(span, format!("expected `(a,b)`, found `{rest}`")));
                    };
                    let Some((pair, tail)) = inner.split_once(')') else {
                        return Err(ParseError::new(span, "unclosed `(`"));
                    };
                    let Some((a, b)) = pair.split_once(',') else {
                        return Err(ParseError::new(span, format!("expected `(a,b)`, found `({pair})`")));
                    };
                    let a = element(i, a.trim())?;
                    let b = element(i, b.trim())?;
                    i.add_role_pair(&role, a, b);
                    rest = tail.trim_start();
                }
            } else {
                let name = head.into();
                i.declare_concept(&name);
                for e in values.split_whitespace() {
                    let e = element(i, e)?;
                    i.add_concept_member(&name, e);
                }
            }
        }
    }
    interp.ok_or_else(|| ParseError::new(SourceSpan { line: 1, column: 1, length: 0 }, "missing `domain:` line"))
}

pub fn print_interpretation(i: &FiniteInterpretation) -> String {
    i.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use elx_core::Concept as C;

    fn ex(r: &str, c: C) -> C {
        C::exists(r, c)
    }

    #[test]
    fn parses_variable_axiom() {
        let a = parse_axiom("?X SubClassOf exists r.?X").unwrap();
        assert_eq!(a, Axiom::new(C::var("X"), ex("r", C::var("X"))));
    }

    #[test]
    fn parses_pet_axiom() {
        let a = parse_axiom("exists owns.(?X and Pet) SubClassOf exists feeds.?X").unwrap();
        assert_eq!(a, Axiom::new(ex("owns", C::and([C::var("X"), C::atom("Pet")])), ex("feeds", C::var("X"))));
    }

    #[test]
    fn exists_binds_tighter_than_and() {
        let a = parse_axiom("A SubClassOf exists r.B and exists s.C").unwrap();
        assert_eq!(a.rhs, C::Conj(vec![ex("r", C::atom("B")), ex("s", C::atom("C"))]));
        let c = parse_concept("exists r.A and B").unwrap();
        assert_eq!(c, C::and([ex("r", C::atom("A")), C::atom("B")]));
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(print_concept(&C::and([C::atom("A"), ex("r", C::atom("B"))])), "A and exists r.B");
        assert_eq!(print_concept(&ex("r", C::and([C::var("X"), C::atom("Pet")]))), "exists r.(?X and Pet)");
        assert_eq!(print_concept(&C::Top), "Top");
    }

    #[test]
    fn rejects_variable_role() {
        let err = parse_axiom("A SubClassOf exists ?X.B").unwrap_err();
        assert_eq!(err.span, SourceSpan { line: 1, column: 21, length: 2 });
    }

    #[test]
    fn rejects_role_used_as_concept() {
        let err = parse_ontology("A SubClassOf exists r.B\n\nr SubClassOf B\n").unwrap_err();
        assert_eq!((err.span.line, err.span.column), (3, 1));
        assert!(err.message.contains("`r` used as a concept"));
    }

    #[test]
    fn syntax_error_names_expected_token() {
        let err = parse_axiom("A SubClassOf").unwrap_err();
        assert_eq!(err.message, "expected a concept, found end of line");
        let err = parse_axiom("A and B").unwrap_err();
        assert_eq!(err.message, "expected `SubClassOf`, found end of line");
    }

    #[test]
    fn comments_blank_lines_and_duplicates() {
        let p = parse_ontology("# header\nA SubClassOf B  # trailing\n\nA SubClassOf B\n").unwrap();
        assert_eq!(p.axioms.len(), 1);
        assert_eq!(p.axioms[0].span, SourceSpan { line: 2, column: 1, length: 14 });
    }

    #[test]
    fn sugar_lines() {
        let p = parse_ontology(
            "chain: father o father SubClassOf grandfather\nGreatApes SubClassOf exists recognize.Self\nMale SubClassOf (isParentOf subRoleOf isFatherOf)\n",
        )
        .unwrap();
        let printed: Vec<String> = p.axioms.iter().map(|a| a.axiom.to_string()).collect();
        assert_eq!(
            printed,
            [
                "exists father.exists father.?__v0 SubClassOf exists grandfather.?__v0",
                "?__v1 and GreatApes SubClassOf exists recognize.?__v1",
                "Male and exists isParentOf.?__v2 SubClassOf exists isFatherOf.?__v2",
            ]
        );
        assert!(p.axioms.iter().all(|a| a.sugar.is_some()));
    }

    #[test]
    fn composite_chain_rhs_is_rejected_with_span() {
        let err = parse_ontology("A SubClassOf B\nchain: r o r SubClassOf s o s\n").unwrap_err();
        assert_eq!(err.span.line, 2);
    }

    #[test]
    fn self_elsewhere_is_rejected() {
        assert!(parse_ontology("A SubClassOf exists r.Self and B\n").is_err());
    }

    #[test]
    fn interpretation_formats() {
        let i = parse_interpretation("domain: a b c / A: a / B: b / C: c / r: (a,b) / s: (a,c) / t: (a,a)").unwrap();
        assert_eq!(i.domain_size(), 3);
        assert_eq!(i.role_pairs(&"t".into()).collect::<Vec<_>>(), [(0, 0)]);
        let one = parse_interpretation("domain: a\n").unwrap();
        assert_eq!(one.domain_size(), 1);
        assert!(one.concept_names().next().is_none());
        let j = parse_interpretation("domain: a b\nA: a\nr: (a,b) (a,b)\ns: (a,a)\n").unwrap();
        assert_eq!(j.role_pairs(&"r".into()).count(), 1);
        assert_eq!(parse_interpretation(&print_interpretation(&j)).unwrap(), j);
    }

    #[test]
    fn interpretation_errors() {
        let err = parse_interpretation("domain: a\nA: b\n").unwrap_err();
        assert_eq!(err.span.line, 2);
        assert!(parse_interpretation("A: a\n").is_err());
        assert!(parse_interpretation("domain:\n").is_err());
        assert!(parse_interpretation("domain: a\nr: (a,a\n").is_err());
    }

    #[test]
    fn concept_base_file() {
        let base = parse_concept_base("B\n# comment\nexists r.C\n").unwrap();
        assert_eq!(base.len(), 2);
        assert!(parse_concept_base("?X\n").is_err());
    }
}
