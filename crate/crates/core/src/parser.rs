//! Reader and writer for the `.palc` knowledge-base language.
//!
//! ```text
//! document   := { statement } ;
//! statement  := decl | axiom | pcond ;
//! decl       := ("concept" | "role") IDENT "." ;
//! axiom      := IDENT ("<" | "=") concept "." ;
//! pcond      := "pcond" concept "->" concept ":" range "." ;
//! range      := number | "[" number "," number "]" ;
//! concept    := "top" | "bottom" | IDENT
//!             | "(" "and" concept concept { concept } ")"
//!             | "(" "or" concept concept { concept } ")"
//!             | "(" "not" concept ")"
//!             | "(" "all" IDENT concept ")" | "(" "some" IDENT concept ")" ;
//! number     := DECIMAL | INT "/" INT ;
//! comment    := "#" to end-of-line ;
//! ```
//!
//! `<` is specialization, `=` definition. Errors never abort the parse: the
//! reader skips to the next `.` and carries on.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::concept::{is_reserved, Concept, ConceptSymbol, RoleSymbol};
use crate::interval::Interval;
use crate::kb::{KbError, KnowledgeBase, PConditioning};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::terminology::{Axiom, AxiomKind, Terminology, TerminologyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// In characters.
    pub length: usize,
}

impl SourceSpan {
    /// Zero-width span at the start of the document.
    pub fn start() -> Self {
        Self {
            line: 1,
            column: 1,
            length: 0,
        }
    }

    fn join(self, end: SourceSpan) -> SourceSpan {
        if end.line == self.line && end.column + end.length >= self.column {
            SourceSpan {
                length: end.column + end.length - self.column,
                ..self
            }
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    fn error(span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            span,
            message: message.into(),
            severity: Severity::Error,
        }
    }

    fn warning(span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            span,
            message: message.into(),
            severity: Severity::Warning,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {}: {}", self.span.line, self.span.column, level, self.message)
    }
}

/// Everything read from a document, plus diagnostics. Spans are kept so
/// later validation errors can point back into the source.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedKb {
    pub concepts: Vec<ConceptSymbol>,
    pub roles: Vec<RoleSymbol>,
    pub axioms: Vec<Axiom>,
    pub axiom_spans: Vec<SourceSpan>,
    pub conditionings: Vec<PConditioning>,
    pub conditioning_spans: Vec<SourceSpan>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParsedKb {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(ParseDiagnostic::is_error)
    }

    /// Validates the terminology and conditionings. Validation failures are
    /// reported as diagnostics located at the offending statement.
    pub fn into_kb(self) -> Result<KnowledgeBase, Vec<ParseDiagnostic>> {
        if self.has_errors() {
            return Err(self.diagnostics);
        }
        let axiom_span = |pred: &dyn Fn(&Axiom) -> bool| {
            self.axioms
                .iter()
                .zip(&self.axiom_spans)
                .filter(|(a, _)| pred(a))
                .map(|(_, s)| *s)
                .last()
                .unwrap_or_else(SourceSpan::start)
        };
        let terminology = match Terminology::validate(&self.concepts, &self.roles, self.axioms.clone()) {
            Ok(t) => t,
            Err(e) => {
                let span = match &e {
                    TerminologyError::DuplicateDefinition(s) => axiom_span(&|a| a.lhs == *s),
                    TerminologyError::TerminologicalCycle(path) => {
                        axiom_span(&|a| path.first() == Some(&a.lhs))
                    }
                    TerminologyError::UndeclaredSymbol(name) | TerminologyError::NamespaceClash(name) => {
                        axiom_span(&|a| {
                            a.rhs.symbols().iter().any(|s| s.as_str() == name)
                                || a.rhs.roles().iter().any(|r| r.as_str() == name)
                        })
                    }
                    TerminologyError::ReservedSymbol(name) => axiom_span(&|a| a.lhs.as_str() == name),
                };
                return Err(vec![ParseDiagnostic::error(span, e.to_string())]);
            }
        };
        let spans = self.conditioning_spans;
        KnowledgeBase::new(terminology, self.conditionings).map_err(|e| {
            let span = match &e {
                KbError::UnsatisfiableAntecedent { index, .. } | KbError::NonPropositional { index, .. } => {
                    spans[*index]
                }
                KbError::Terminology(_) => spans.first().copied().unwrap_or_else(SourceSpan::start),
            };
            vec![ParseDiagnostic::error(span, e.to_string())]
        })
    }
}

/// Parses a document. Never fails; problems are reported as diagnostics.
pub fn parse_kb(text: &str) -> ParsedKb {
    let (tokens, mut diagnostics) = lex(text);
    let mut parser = Parser {
        tokens,
        pos: 0,
        out: ParsedKb::default(),
    };
    parser.out.diagnostics.append(&mut diagnostics);
    parser.document();
    parser.out
}

/// Parses and validates in one step.
pub fn load_kb(text: &str) -> Result<KnowledgeBase, Vec<ParseDiagnostic>> {
    parse_kb(text).into_kb()
}

/// Parses a single concept expression, e.g. a query operand.
pub fn parse_concept(text: &str) -> Result<Concept, Vec<ParseDiagnostic>> {
    let (tokens, diagnostics) = lex(text);
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        out: ParsedKb::default(),
    };
    let result = parser.concept();
    match result {
        Ok(c) if parser.at_end() => Ok(c),
        Ok(_) => Err(vec![ParseDiagnostic::error(
            parser.peek_span(),
            "unexpected input after concept",
        )]),
        Err(d) => Err(vec![d]),
    }
}

/// Writes a knowledge base back out: declarations, then axioms, then
/// conditionings, each in their original order.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    let t = kb.terminology();
    for s in t.signature() {
        let _ = writeln!(out, "concept {s}.");
    }
    for r in t.roles() {
        let _ = writeln!(out, "role {r}.");
    }
    if !t.axioms().is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        for ax in t.axioms() {
            let op = match ax.kind {
                AxiomKind::Definition => "=",
                AxiomKind::Specialization => "<",
            };
            let _ = writeln!(out, "{} {} {}.", ax.lhs, op, ax.rhs);
        }
    }
    if !kb.conditionings().is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        for pc in kb.conditionings() {
            let _ = writeln!(
                out,
                "pcond {} -> {} : {}.",
                pc.antecedent,
                pc.consequent,
                format_range(&pc.range)
            );
        }
    }
    out
}

/// `p` for a point, `[lo, hi]` otherwise.
pub fn format_range(range: &Interval) -> String {
    if range.is_point() {
        format_rational(range.lo())
    } else {
        range.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Slash,
    Lt,
    Eq,
    Arrow,
    Colon,
    LBracket,
    RBracket,
    Comma,
    LParen,
    RParen,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Slash => "`/`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = SourceSpan {
            line,
            column: col,
            length: 1,
        };
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
                col += 1;
            }
            continue;
        }
        let digit_at = |k: usize| k < chars.len() && chars[k].is_ascii_digit();
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Some(Tok::Ident(chars[i..j].iter().collect())), j - i)
        } else if c.is_ascii_digit() || (c == '.' && digit_at(i + 1)) {
            let mut j = i;
            while digit_at(j) {
                j += 1;
            }
            if j < chars.len() && chars[j] == '.' && digit_at(j + 1) {
                j += 1;
                while digit_at(j) {
                    j += 1;
                }
            }
            (Some(Tok::Number(chars[i..j].iter().collect())), j - i)
        } else {
            match c {
                '/' => (Some(Tok::Slash), 1),
                '<' => (Some(Tok::Lt), 1),
                '=' => (Some(Tok::Eq), 1),
                ':' => (Some(Tok::Colon), 1),
                '[' => (Some(Tok::LBracket), 1),
                ']' => (Some(Tok::RBracket), 1),
                ',' => (Some(Tok::Comma), 1),
                '(' => (Some(Tok::LParen), 1),
                ')' => (Some(Tok::RParen), 1),
                '.' => (Some(Tok::Dot), 1),
                '-' if i + 1 < chars.len() && chars[i + 1] == '>' => (Some(Tok::Arrow), 2),
                _ => (None, 1),
            }
        };
        let span = SourceSpan { length: len, ..start };
        match tok {
            Some(tok) => tokens.push(Token { tok, span }),
            None => diagnostics.push(ParseDiagnostic::error(span, format!("unexpected character `{c}`"))),
        }
        i += len;
        col += len;
    }
    (tokens, diagnostics)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    out: ParsedKb,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_span(&self) -> SourceSpan {
        match self.tokens.get(self.pos) {
            Some(t) => t.span,
            None => match self.tokens.last() {
                Some(t) => SourceSpan {
                    column: t.span.column + t.span.length,
                    length: 0,
                    ..t.span
                },
                None => SourceSpan::start(),
            },
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseDiagnostic {
        match self.peek() {
            Some(t) => ParseDiagnostic::error(self.peek_span(), format!("expected {wanted}, found {}", t.describe())),
            None => ParseDiagnostic::error(self.peek_span(), format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<SourceSpan> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().unwrap().span)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let span = self.bump().unwrap().span;
                if is_reserved(&name) {
                    return Err(ParseDiagnostic::error(span, format!("`{name}` is a reserved word")));
                }
                Ok((name, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// Skips past the next statement terminator.
    fn recover(&mut self) {
        while let Some(t) = self.bump() {
            if t.tok == Tok::Dot {
                break;
            }
        }
    }

    fn document(&mut self) {
        while !self.at_end() {
            if let Err(d) = self.statement() {
                self.out.diagnostics.push(d);
                self.recover();
            }
        }
    }

    fn statement(&mut self) -> PResult<()> {
        let start = self.peek_span();
        match self.peek() {
            Some(Tok::Ident(kw)) if kw == "concept" || kw == "role" => {
                let is_concept = kw == "concept";
                self.bump();
                let (name, span) = self.ident("a name")?;
                self.expect(Tok::Dot, "`.`")?;
                if is_concept {
                    let s = ConceptSymbol::new(&name);
                    if self.out.concepts.contains(&s) {
                        self.out
                            .diagnostics
                            .push(ParseDiagnostic::warning(span, format!("concept `{name}` declared twice")));
                    } else {
                        self.out.concepts.push(s);
                    }
                } else {
                    let r = RoleSymbol::new(&name);
                    if self.out.roles.contains(&r) {
                        self.out
                            .diagnostics
                            .push(ParseDiagnostic::warning(span, format!("role `{name}` declared twice")));
                    } else {
                        self.out.roles.push(r);
                    }
                }
                Ok(())
            }
            Some(Tok::Ident(kw)) if kw == "pcond" => {
                self.bump();
                let antecedent = self.concept()?;
                self.expect(Tok::Arrow, "`->`")?;
                let consequent = self.concept()?;
                self.expect(Tok::Colon, "`:`")?;
                let range = self.range()?;
                let end = self.expect(Tok::Dot, "`.`")?;
                if let Some(range) = range {
                    self.out.conditionings.push(PConditioning::new(antecedent, consequent, range));
                    self.out.conditioning_spans.push(start.join(end));
                }
                Ok(())
            }
            Some(Tok::Ident(_)) => {
                let (name, _) = self.ident("a concept name")?;
                let kind = match self.peek() {
                    Some(Tok::Lt) => AxiomKind::Specialization,
                    Some(Tok::Eq) => AxiomKind::Definition,
                    _ => return Err(self.unexpected("`<` or `=`")),
                };
                self.bump();
                let rhs = self.concept()?;
                let end = self.expect(Tok::Dot, "`.`")?;
                self.out.axioms.push(Axiom {
                    lhs: ConceptSymbol::new(name),
                    rhs,
                    kind,
                });
                self.out.axiom_spans.push(start.join(end));
                Ok(())
            }
            _ => Err(self.unexpected("a declaration, axiom or `pcond`")),
        }
    }

    fn concept(&mut self) -> PResult<Concept> {
        match self.peek() {
            Some(Tok::Ident(name)) if name == "top" => {
                self.bump();
                Ok(Concept::Top)
            }
            Some(Tok::Ident(name)) if name == "bottom" => {
                self.bump();
                Ok(Concept::Bottom)
            }
            Some(Tok::Ident(_)) => {
                let (name, _) = self.ident("a concept")?;
                Ok(Concept::atom(name))
            }
            Some(Tok::LParen) => {
                self.bump();
                let op = match self.peek() {
                    Some(Tok::Ident(op)) => op.clone(),
                    _ => return Err(self.unexpected("`and`, `or`, `not`, `all` or `some`")),
                };
                let op_span = self.peek_span();
                self.bump();
                let c = match op.as_str() {
                    "and" | "or" => {
                        let mut operands = vec![self.concept()?, self.concept()?];
                        while self.peek() != Some(&Tok::RParen) && !self.at_end() {
                            operands.push(self.concept()?);
                        }
                        if op == "and" {
                            Concept::And(operands)
                        } else {
                            Concept::Or(operands)
                        }
                    }
                    "not" => Concept::not(self.concept()?),
                    "all" | "some" => {
                        let (role, _) = self.ident("a role name")?;
                        let filler = self.concept()?;
                        if op == "all" {
                            Concept::all(role, filler)
                        } else {
                            Concept::some(role, filler)
                        }
                    }
                    other => {
                        return Err(ParseDiagnostic::error(
                            op_span,
                            format!("unknown constructor `{other}`; expected and, or, not, all or some"),
                        ))
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }

    fn number(&mut self) -> PResult<(Rational, SourceSpan)> {
        let (text, span) = match self.peek() {
            Some(Tok::Number(n)) => {
                let n = n.clone();
                (n, self.bump().unwrap().span)
            }
            _ => return Err(self.unexpected("a number")),
        };
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let (denom, dspan) = match self.peek() {
                Some(Tok::Number(d)) => {
                    let d = d.clone();
                    (d, self.bump().unwrap().span)
                }
                _ => return Err(self.unexpected("a denominator")),
            };
            let span = span.join(dspan);
            if text.contains('.') || denom.contains('.') {
                return Err(ParseDiagnostic::error(span, "fractions take integer numerator and denominator"));
            }
            return parse_rational(&format!("{text}/{denom}"))
                .map(|r| (r, span))
                .ok_or_else(|| ParseDiagnostic::error(span, "zero denominator"));
        }
        parse_rational(&text)
            .map(|r| (r, span))
            .ok_or_else(|| ParseDiagnostic::error(span, format!("malformed number `{text}`")))
    }

    /// `Ok(None)` when the range was read but is invalid; its diagnostics
    /// have been recorded already.
    fn range(&mut self) -> PResult<Option<Interval>> {
        let ((lo, lo_span), (hi, hi_span)) = if self.peek() == Some(&Tok::LBracket) {
            self.bump();
            let lo = self.number()?;
            self.expect(Tok::Comma, "`,`")?;
            let hi = self.number()?;
            self.expect(Tok::RBracket, "`]`")?;
            (lo, hi)
        } else {
            let p = self.number()?;
            (p.clone(), p)
        };
        let whole = lo_span.join(hi_span);
        let one = Rational::from_integer(1.into());
        let mut ok = true;
        for (value, span) in [(&lo, lo_span), (&hi, hi_span)] {
            if *value > one {
                self.out.diagnostics.push(ParseDiagnostic::error(
                    span,
                    format!("interval out of bounds: {} exceeds 1", format_rational(value)),
                ));
                ok = false;
            }
        }
        if lo > hi {
            self.out.diagnostics.push(ParseDiagnostic::error(
                whole,
                format!("lo > hi: {} > {}", format_rational(&lo), format_rational(&hi)),
            ));
            ok = false;
        }
        Ok(if ok { Interval::new(lo, hi).ok() } else { None })
    }
}
