//! The scheme file language.
//!
//! ```text
//! # two loops and one tip
//! vertices: o
//! arrow y: o -> o
//! arrow x: o -> o
//! order: y x
//! tips: y.x
//! set y.x -> x.y = 1/2
//! ```
//!
//! The language is line oriented and `#` starts a comment. Every identifier
//! must be declared before it is used. `set` lines are checked against the
//! finished scheme, so they may appear anywhere after the arrows they name.

use std::collections::HashSet;
use std::fmt;

use koszul_core::coefficients::Rational;
use koszul_core::order::LengthLex;
use koszul_core::{Path, QuadraticScheme, Quiver};
use num_bigint::BigInt;
use num_traits::Zero;

/// Characters that may not appear in a vertex or arrow name.
pub const RESERVED: &[char] = &['.', ',', ':', '-', '>', '#', '=', '|', '[', ']'];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// One `set t -> n = c` entry. Its position is kept for diagnostics and
/// ignored by equality.
#[derive(Debug, Clone, Eq)]
pub struct SetEntry {
    pub tip: String,
    pub nontip: String,
    pub value: Rational,
    pub line: usize,
    pub column: usize,
}

impl PartialEq for SetEntry {
    fn eq(&self, other: &Self) -> bool {
        (&self.tip, &self.nontip, &self.value) == (&other.tip, &other.nontip, &other.value)
    }
}

/// A parsed and validated scheme file. Paths are kept as dot-joined arrow
/// names in the order they were written.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchemeFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    /// Greatest first; `None` means declaration order.
    pub order: Option<Vec<String>>,
    pub tips: Vec<String>,
    pub sets: Vec<SetEntry>,
}

/// Parses and validates a scheme file.
pub fn parse(text: &str) -> Result<SchemeFile, ParseError> {
    let mut parser = Parser::default();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { line: i + 1, text: content, pos: 0 };
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        parser.directive(&mut cur)?;
    }
    parser.finish()
}

/// Parses the body of a `set` directive, as given to `--set`.
pub fn parse_set(text: &str) -> Result<SetEntry, ParseError> {
    let mut cur = Cursor { line: 1, text, pos: 0 };
    cur.skip_ws();
    let entry = set_body(&mut cur)?;
    cur.end()?;
    Ok(entry)
}

impl SchemeFile {
    /// Builds the scheme described by the file.
    pub fn scheme(&self) -> Result<QuadraticScheme, ParseError> {
        let quiver = self.quiver()?;
        let order = match &self.order {
            Some(names) => {
                let ids = names.iter().map(|a| quiver.arrow_id(a)).collect::<Result<Vec<_>, _>>();
                LengthLex::with_arrow_precedence(&quiver, &ids.map_err(|e| whole_file(e.to_string()))?)
                    .map_err(|e| whole_file(e.to_string()))?
            }
            None => LengthLex::declaration_order(&quiver),
        };
        let tips = self
            .tips
            .iter()
            .map(|t| quiver.parse_path(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| whole_file(e.to_string()))?;
        QuadraticScheme::new(quiver, order, tips).map_err(|e| whole_file(e.to_string()))
    }

    fn quiver(&self) -> Result<Quiver, ParseError> {
        Quiver::new(
            self.vertices.iter().cloned(),
            self.arrows.iter().map(|a| (a.name.clone(), a.source.clone(), a.target.clone())),
        )
        .map_err(|e| whole_file(e.to_string()))
    }
}

/// A coordinate `(t, n)` of a scheme and its value.
pub type Assignment = ((Path, Path), Rational);

/// Resolves `set` entries to coordinates of `scheme`, rejecting paths that are
/// not a tip and a member of its `N_2`, and coordinates given twice.
pub fn coordinates(scheme: &QuadraticScheme, entries: &[SetEntry]) -> Result<Vec<Assignment>, ParseError> {
    let quiver = scheme.quiver();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let at = |message: String| ParseError { line: e.line, column: e.column, message };
        let t = quiver.parse_path(&e.tip).map_err(|err| at(err.to_string()))?;
        let n = quiver.parse_path(&e.nontip).map_err(|err| at(err.to_string()))?;
        if scheme.var(&t, &n).is_none() {
            return Err(at(format!("`{} -> {}` is not a coordinate of this scheme", e.tip, e.nontip)));
        }
        if !seen.insert((t.clone(), n.clone())) {
            return Err(at(format!("coordinate `{} -> {}` set twice", e.tip, e.nontip)));
        }
        out.push(((t, n), e.value.clone()));
    }
    Ok(out)
}

fn whole_file(message: String) -> ParseError {
    ParseError { line: 0, column: 0, message }
}

/// Writes the file back in canonical form; parsing the result gives an equal
/// [`SchemeFile`].
pub fn render(file: &SchemeFile) -> String {
    file.to_string()
}

impl fmt::Display for SchemeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vertices.is_empty() {
            writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        }
        for a in &self.arrows {
            writeln!(f, "arrow {}: {} -> {}", a.name, a.source, a.target)?;
        }
        if let Some(order) = &self.order {
            writeln!(f, "order: {}", order.join(" "))?;
        }
        if self.tips.is_empty() {
            writeln!(f, "tips:")?;
        } else {
            writeln!(f, "tips: {}", self.tips.join(", "))?;
        }
        for s in &self.sets {
            writeln!(f, "set {} -> {} = {}", s.tip, s.nontip, s.value)?;
        }
        Ok(())
    }
}

struct Parser {
    file: SchemeFile,
    quiver: Quiver,
    seen_vertices: bool,
    seen_tips: bool,
    order_at: Option<(usize, usize)>,
    tip_set: HashSet<String>,
}

impl Default for Parser {
    fn default() -> Self {
        Parser {
            file: SchemeFile::default(),
            quiver: Quiver::empty(),
            seen_vertices: false,
            seen_tips: false,
            order_at: None,
            tip_set: HashSet::new(),
        }
    }
}

impl Parser {
    fn directive(&mut self, cur: &mut Cursor) -> Result<(), ParseError> {
        let (line, column) = (cur.line, cur.column());
        let keyword = cur.ident().map_err(|_| cur.error_at(column, "expected a directive".into()))?;
        let colon = |cur: &mut Cursor| cur.expect(":");
        match keyword.as_str() {
            "vertices" => colon(cur).and_then(|_| self.vertices(cur, line, column)),
            "arrow" => self.arrow(cur),
            "order" => colon(cur).and_then(|_| self.order(cur, line, column)),
            "tips" => colon(cur).and_then(|_| self.tips(cur, line, column)),
            "set" => {
                let entry = set_body(cur)?;
                for p in [&entry.tip, &entry.nontip] {
                    // arrows must already exist and compose
                    self.path(p, entry.line, entry.column)?;
                }
                cur.end()?;
                self.file.sets.push(entry);
                Ok(())
            }
            other => Err(cur.error_at(column, format!("unknown directive `{other}`"))),
        }
    }

    fn vertices(&mut self, cur: &mut Cursor, line: usize, column: usize) -> Result<(), ParseError> {
        if self.seen_vertices {
            return Err(ParseError { line, column, message: "duplicate directive `vertices:`".into() });
        }
        self.seen_vertices = true;
        while !cur.at_end() {
            let col = cur.column();
            let name = cur.ident()?;
            if self.quiver.add_vertex(name.clone()).is_err() {
                return Err(cur.error_at(col, format!("duplicate vertex `{name}`")));
            }
            self.file.vertices.push(name);
            cur.skip_ws();
        }
        Ok(())
    }

    fn arrow(&mut self, cur: &mut Cursor) -> Result<(), ParseError> {
        let name_col = cur.column();
        let name = cur.ident()?;
        cur.expect(":")?;
        let endpoint = |cur: &mut Cursor| -> Result<(String, koszul_core::VertexId), ParseError> {
            let col = cur.column();
            let v = cur.ident()?;
            let id = self.quiver.vertex(&v).map_err(|_| cur.error_at(col, format!("unknown vertex `{v}`")))?;
            Ok((v, id))
        };
        let (source, s) = endpoint(cur)?;
        cur.expect("->")?;
        let (target, t) = endpoint(cur)?;
        cur.end()?;
        if self.order_at.is_some() {
            return Err(cur.error_at(name_col, format!("arrow `{name}` declared after `order:`")));
        }
        if self.quiver.add_arrow(name.clone(), s, t).is_err() {
            return Err(cur.error_at(name_col, format!("duplicate arrow `{name}`")));
        }
        self.file.arrows.push(ArrowDecl { name, source, target });
        Ok(())
    }

    fn order(&mut self, cur: &mut Cursor, line: usize, column: usize) -> Result<(), ParseError> {
        if self.order_at.is_some() {
            return Err(ParseError { line, column, message: "duplicate directive `order:`".into() });
        }
        self.order_at = Some((line, column));
        let mut names = Vec::new();
        let mut seen = HashSet::new();
        while !cur.at_end() {
            let col = cur.column();
            let name = cur.ident()?;
            if self.quiver.arrow_id(&name).is_err() {
                return Err(cur.error_at(col, format!("unknown arrow `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(cur.error_at(col, format!("arrow `{name}` listed twice in `order:`")));
            }
            names.push(name);
            cur.skip_ws();
        }
        self.file.order = Some(names);
        Ok(())
    }

    fn tips(&mut self, cur: &mut Cursor, line: usize, column: usize) -> Result<(), ParseError> {
        if self.seen_tips {
            return Err(ParseError { line, column, message: "duplicate directive `tips:`".into() });
        }
        self.seen_tips = true;
        if cur.at_end() {
            return Ok(());
        }
        loop {
            let col = cur.column();
            let tip = cur.path_text()?;
            let p = self.path(&tip, cur.line, col)?;
            if p.len() != 2 {
                return Err(cur.error_at(col, format!("tip `{tip}` does not have length 2")));
            }
            if !self.tip_set.insert(tip.clone()) {
                return Err(cur.error_at(col, format!("duplicate tip `{tip}`")));
            }
            self.file.tips.push(tip);
            cur.skip_ws();
            if cur.at_end() {
                return Ok(());
            }
            cur.expect(",")?;
        }
    }

    fn path(&self, text: &str, line: usize, column: usize) -> Result<Path, ParseError> {
        let mut ids = Vec::new();
        let mut col = column;
        for name in text.split('.') {
            let id = self.quiver.arrow_id(name).map_err(|_| ParseError {
                line,
                column: col,
                message: format!("unknown arrow `{name}`"),
            })?;
            ids.push(id);
            col += name.chars().count() + 1;
        }
        self.quiver.path(&ids).map_err(|_| ParseError {
            line,
            column,
            message: format!("non-composable path `{text}`"),
        })
    }

    fn finish(mut self) -> Result<SchemeFile, ParseError> {
        if let (Some(order), Some((line, column))) = (&self.file.order, self.order_at) {
            if let Some(a) = self.file.arrows.iter().find(|a| !order.contains(&a.name)) {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("`order:` must list every arrow exactly once; `{}` is missing", a.name),
                });
            }
        }
        let scheme = self.file.scheme()?;
        coordinates(&scheme, &self.file.sets)?;
        Ok(std::mem::take(&mut self.file))
    }
}

fn set_body(cur: &mut Cursor) -> Result<SetEntry, ParseError> {
    cur.skip_ws();
    let (line, column) = (cur.line, cur.column());
    let tip = cur.path_text()?;
    cur.expect("->")?;
    let nontip = cur.path_text()?;
    cur.expect("=")?;
    let value = cur.rational()?;
    Ok(SetEntry { tip, nontip, value, line, column })
}

/// A position within one line.
struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.rest().trim().is_empty()
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error_at(&self, column: usize, message: String) -> ParseError {
        ParseError { line: self.line, column, message }
    }

    fn error(&self, message: String) -> ParseError {
        self.error_at(self.column(), message)
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if !self.rest().starts_with(token) {
            let found = self.rest().chars().next().map_or("end of line".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected `{token}`, found {found}")));
        }
        self.pos += token.len();
        self.skip_ws();
        Ok(())
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.rest().trim_end())))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| c.is_whitespace() || RESERVED.contains(&c)).unwrap_or(rest.len());
        if end == 0 {
            let found = rest.chars().next().map_or("end of line".to_string(), |c| format!("`{c}`"));
            return Err(self.error(format!("expected an identifier, found {found}")));
        }
        self.pos += end;
        Ok(rest[..end].to_string())
    }

    /// A dot-joined word of identifiers, returned as written.
    fn path_text(&mut self) -> Result<String, ParseError> {
        let mut names = vec![self.ident()?];
        while self.rest().starts_with('.') {
            self.pos += 1;
            names.push(self.ident()?);
        }
        self.skip_ws();
        Ok(names.join("."))
    }

    /// `[-]digits[/digits]`, with a nonzero denominator.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.column();
        let rest = self.rest();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        self.pos += end;
        let malformed =
            || ParseError { line: self.line, column: start, message: format!("malformed rational `{token}`") };
        let (num, den) = token.split_once('/').unwrap_or((token, "1"));
        let digits = |s: &str, signed: bool| {
            let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
            !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
        };
        if !digits(num, true) || !digits(den, false) {
            return Err(malformed());
        }
        let num: BigInt = num.parse().map_err(|_| malformed())?;
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(malformed());
        }
        Ok(Rational::new(num, den))
    }
}
