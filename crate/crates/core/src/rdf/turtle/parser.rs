use std::collections::HashMap;

use url::Url;

use super::{TurtleError, TurtleErrorKind};
use crate::rdf::{Graph, Term, Triple};
use crate::vocab::{rdf, xsd};

/// Parses a Turtle document into a [`Graph`].
///
/// Supported: `@prefix`/`@base` (and the SPARQL-style `PREFIX`/`BASE`), `a`,
/// predicate-object lists, object lists, `[ ... ]` blank nodes, labeled blank
/// nodes, collections, numeric/boolean shorthands, and short string literals
/// with `@lang` or `^^datatype`. Long (triple-quoted) strings are rejected.
///
/// Every blank node, labeled or not, receives a fresh `bN` label.
pub fn parse_turtle(text: &str, base_iri: Option<&str>) -> Result<Graph, TurtleError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        base: None,
        prefixes: HashMap::new(),
        labels: HashMap::new(),
        graph: Graph::new(),
    };
    if let Some(base) = base_iri {
        if !has_scheme(base) {
            return Err(parser.error(TurtleErrorKind::RelativeIri(base.to_string())));
        }
        parser.base = Some(base.to_string());
    }
    parser.document()?;
    Ok(parser.graph)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    base: Option<String>,
    prefixes: HashMap<String, String>,
    labels: HashMap<String, Term>,
    graph: Graph,
}

type PResult<T> = Result<T, TurtleError>;

fn has_scheme(iri: &str) -> bool {
    let mut chars = iri.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        match c {
            ':' => return true,
            c if c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.') => {}
            _ => return false,
        }
    }
    false
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_alphabetic() && c != '_'
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || ('\u{300}'..='\u{36F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
        || c.is_numeric()
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

impl Parser {
    fn error(&self, kind: TurtleErrorKind) -> TurtleError {
        self.error_at(self.pos, kind)
    }

    fn error_at(&self, pos: usize, kind: TurtleErrorKind) -> TurtleError {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        TurtleError { kind, line, column }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(self.error(TurtleErrorKind::Syntax(msg.into())))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.syntax(format!("expected '{want}', found '{c}'")),
            None => self.syntax(format!("expected '{want}', found end of input")),
        }
    }

    fn starts_with_keyword(&self, kw: &str, case_insensitive: bool) -> bool {
        let n = kw.chars().count();
        let slice: String = self.chars[self.pos..].iter().take(n).collect();
        let matches = if case_insensitive {
            slice.eq_ignore_ascii_case(kw)
        } else {
            slice == kw
        };
        matches && self.peek_at(n).is_none_or(|c| !is_pn_chars(c) && c != ':')
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.starts_with_keyword("@prefix", false) {
            self.pos += "@prefix".len();
            self.prefix_decl()?;
            return self.expect('.');
        }
        if self.starts_with_keyword("@base", false) {
            self.pos += "@base".len();
            self.base_decl()?;
            return self.expect('.');
        }
        if self.starts_with_keyword("PREFIX", true) {
            self.pos += "PREFIX".len();
            return self.prefix_decl();
        }
        if self.starts_with_keyword("BASE", true) {
            self.pos += "BASE".len();
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.')
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || c == '.' {
                prefix.push(c);
                self.pos += 1;
            } else {
                return self.syntax(format!("invalid character '{c}' in prefix name"));
            }
        }
        if prefix.ends_with('.') || prefix.starts_with(|c: char| !is_pn_chars_base(c)) {
            return Err(self.error_at(
                start,
                TurtleErrorKind::Syntax(format!("invalid prefix name '{prefix}'")),
            ));
        }
        self.expect(':')?;
        self.skip_ws();
        let ns = self.iriref()?;
        self.graph.set_prefix(prefix.clone(), ns.clone());
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let iri = self.iriref()?;
        self.base = Some(iri);
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                let subject = self.blank_node_property_list()?;
                self.skip_ws();
                if !matches!(self.peek(), Some('.') | None) {
                    self.predicate_object_list(&subject)?;
                }
                Ok(())
            }
            _ => {
                let subject = self.subject()?;
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('(') => self.collection(),
            Some(c) if c == ':' || is_pn_chars_base(c) => match self.name_or_keyword()? {
                Name::Iri(iri) => Ok(Term::Iri(iri)),
                Name::Keyword(kw) => self.syntax(format!("'{kw}' cannot be a subject")),
            },
            Some(c) => self.syntax(format!("unexpected '{c}' at start of triple")),
            None => self.syntax("unexpected end of input"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.pos += 1;
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some(c) if c == ':' || is_pn_chars_base(c) => match self.name_or_keyword()? {
                Name::Iri(iri) => Ok(Term::Iri(iri)),
                Name::Keyword(kw) if kw == "a" => Ok(Term::iri(rdf::TYPE)),
                Name::Keyword(kw) => self.syntax(format!("'{kw}' is not a valid predicate")),
            },
            Some(c) => self.syntax(format!("expected predicate, found '{c}'")),
            None => self.syntax("expected predicate, found end of input"),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object)?;
            self.skip_ws();
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn emit(&mut self, s: Term, p: Term, o: Term) -> PResult<()> {
        let triple = Triple::new(s, p, o)
            .map_err(|e| self.error(TurtleErrorKind::Syntax(e.to_string())))?;
        self.graph.insert(triple);
        Ok(())
    }

    fn object(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('[') => self.blank_node_property_list(),
            Some('(') => self.collection(),
            Some('"') | Some('\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.numeric(),
            Some(c) if c == ':' || is_pn_chars_base(c) => match self.name_or_keyword()? {
                Name::Iri(iri) => Ok(Term::Iri(iri)),
                Name::Keyword(kw) if kw == "true" || kw == "false" => {
                    Ok(Term::typed(kw, xsd::BOOLEAN))
                }
                Name::Keyword(kw) => self.syntax(format!("unexpected keyword '{kw}'")),
            },
            Some(c) => self.syntax(format!("expected object, found '{c}'")),
            None => self.syntax("expected object, found end of input"),
        }
    }

    fn fresh_blank(&mut self) -> Term {
        self.graph.fresh_blank()
    }

    fn blank_label(&mut self) -> PResult<Term> {
        let start = self.pos;
        self.pos += 2;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.pos += 1;
            }
            _ => return self.syntax("invalid blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                label.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        debug_assert!(self.pos > start);
        if let Some(term) = self.labels.get(&label) {
            return Ok(term.clone());
        }
        let term = self.fresh_blank();
        self.labels.insert(label, term.clone());
        Ok(term)
    }

    fn blank_node_property_list(&mut self) -> PResult<Term> {
        self.expect('[')?;
        let node = self.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                None => return self.syntax("unterminated collection"),
                _ => items.push(self.object()?),
            }
        }
        let mut head = Term::iri(rdf::NIL);
        let cells: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (i, item) in items.into_iter().enumerate() {
            let rest = cells.get(i + 1).cloned().unwrap_or_else(|| Term::iri(rdf::NIL));
            self.emit(cells[i].clone(), Term::iri(rdf::FIRST), item)?;
            self.emit(cells[i].clone(), Term::iri(rdf::REST), rest)?;
        }
        if let Some(first) = cells.into_iter().next() {
            head = first;
        }
        Ok(head)
    }

    fn iriref(&mut self) -> PResult<String> {
        let start = self.pos;
        if self.bump() != Some('<') {
            return self.syntax("expected '<'");
        }
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return self.syntax("invalid escape in IRI"),
                    };
                    iri.push(c);
                }
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.syntax(format!("invalid character {c:?} in IRI"));
                }
                Some(c) => iri.push(c),
                None => return self.syntax("unterminated IRI"),
            }
        }
        self.resolve(&iri, start)
    }

    fn resolve(&self, iri: &str, at: usize) -> PResult<String> {
        if has_scheme(iri) {
            return Ok(iri.to_string());
        }
        let Some(base) = &self.base else {
            return Err(self.error_at(at, TurtleErrorKind::RelativeIri(iri.to_string())));
        };
        Url::parse(base)
            .and_then(|b| b.join(iri))
            .map(String::from)
            .map_err(|e| {
                self.error_at(
                    at,
                    TurtleErrorKind::Syntax(format!("cannot resolve <{iri}> against <{base}>: {e}")),
                )
            })
    }

    fn hex_escape(&mut self, digits: usize) -> PResult<char> {
        let mut value = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error(TurtleErrorKind::Syntax("invalid hex escape".into())))?;
            value = value * 16 + d;
        }
        char::from_u32(value)
            .ok_or_else(|| self.error(TurtleErrorKind::Syntax(format!("invalid code point U+{value:X}"))))
    }

    /// Reads a prefixed name or a bare keyword (`a`, `true`, `false`).
    fn name_or_keyword(&mut self) -> PResult<Name> {
        let start = self.pos;
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                prefix.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.peek() != Some(':') {
            while prefix.ends_with('.') {
                prefix.pop();
                self.pos -= 1;
            }
            return Ok(Name::Keyword(prefix));
        }
        if prefix.ends_with('.') {
            return Err(self.error_at(start, TurtleErrorKind::Syntax(format!("invalid prefix '{prefix}'"))));
        }
        self.pos += 1;
        let local = self.local_name()?;
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(self.error_at(start, TurtleErrorKind::UnknownPrefix(prefix)));
        };
        Ok(Name::Iri(format!("{ns}{local}")))
    }

    fn local_name(&mut self) -> PResult<String> {
        let mut local = String::new();
        // Length of `local` up to the last character that may end a name.
        let mut committed = 0;
        let mut committed_pos = self.pos;
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\'
            } else {
                is_pn_chars(c) || matches!(c, '.' | ':' | '%' | '\\')
            };
            if !ok {
                break;
            }
            first = false;
            match c {
                '%' => {
                    let (h1, h2) = (self.peek_at(1), self.peek_at(2));
                    if !(h1.is_some_and(|h| h.is_ascii_hexdigit()) && h2.is_some_and(|h| h.is_ascii_hexdigit())) {
                        return self.syntax("invalid percent escape in local name");
                    }
                    local.push('%');
                    local.push(h1.unwrap_or_default());
                    local.push(h2.unwrap_or_default());
                    self.pos += 3;
                }
                '\\' => match self.peek_at(1) {
                    Some(e) if LOCAL_ESCAPABLE.contains(e) => {
                        local.push(e);
                        self.pos += 2;
                    }
                    _ => return self.syntax("invalid escape in local name"),
                },
                '.' => {
                    local.push('.');
                    self.pos += 1;
                    continue;
                }
                c => {
                    local.push(c);
                    self.pos += 1;
                }
            }
            committed = local.len();
            committed_pos = self.pos;
        }
        local.truncate(committed);
        self.pos = committed_pos;
        Ok(local)
    }

    fn rdf_literal(&mut self) -> PResult<Term> {
        let quote = self.bump().unwrap_or('"');
        if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
            return self.syntax("long (triple-quoted) strings are not supported");
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return self.syntax("invalid string escape"),
                    };
                    lexical.push(c);
                }
                Some('\n') | Some('\r') => return self.syntax("line break in short string"),
                Some(c) => lexical.push(c),
                None => return self.syntax("unterminated string"),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let valid = !tag.is_empty()
                    && tag.split('-').enumerate().all(|(i, part)| {
                        !part.is_empty()
                            && (i > 0 || part.chars().all(|c| c.is_ascii_alphabetic()))
                    });
                if !valid {
                    return self.syntax(format!("invalid language tag '{tag}'"));
                }
                Ok(Term::lang(lexical, tag))
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.pos += 2;
                let datatype = match self.peek() {
                    Some('<') => self.iriref()?,
                    _ => match self.name_or_keyword()? {
                        Name::Iri(iri) => iri,
                        Name::Keyword(kw) => return self.syntax(format!("invalid datatype '{kw}'")),
                    },
                };
                Ok(Term::typed(lexical, datatype))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let start = self.pos;
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.pos += 1;
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.pos += 1;
            int_digits += 1;
        }
        let mut frac_digits = 0;
        let mut has_dot = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            has_dot = true;
            text.push('.');
            self.pos += 1;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.pos += 1;
                frac_digits += 1;
            }
        }
        if int_digits == 0 && frac_digits == 0 {
            return Err(self.error_at(start, TurtleErrorKind::Syntax("invalid number".into())));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.pos += 1;
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.pos += 1;
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.pos += 1;
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return self.syntax("invalid exponent");
            }
            return Ok(Term::typed(text, xsd::DOUBLE));
        }
        if has_dot {
            Ok(Term::typed(text, xsd::DECIMAL))
        } else {
            Ok(Term::typed(text, xsd::INTEGER))
        }
    }
}

enum Name {
    Iri(String),
    Keyword(String),
}
