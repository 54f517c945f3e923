//! The presentation language: named band, scheme and graded blocks.
//!
//! ```text
//! band F5 { gens: x; null: x^2 + 1, x - 1 - 1; mode: fusion }
//! band L  { gens: t; invertible: t }
//! band M  { gens: a, b; monoid: a*b = 1 }
//! scheme DL { chart U: A1; chart V: A1; glue U V: T, T, T -> T | T -> T }
//! graded C { vars: T0, T1, T2; relations: T0*T1 - T2^2 }
//! ```
//!
//! Formal sums use `+`, `-`, `*`, `^` with unit coefficients; repetition
//! expresses multiplicity. Unknown keys are rejected.

use std::fmt::Write as _;

use crate::core::Mode;
use crate::error::{Error, Result};

pub type MonoExpr = Vec<(String, i32)>;
/// Signed monomial terms; multiplicity by repetition.
pub type SumExpr = Vec<(i32, MonoExpr)>;

#[derive(Clone, Debug, PartialEq)]
pub struct BandDef {
    pub name: String,
    pub base: Option<String>,
    pub gens: Vec<String>,
    pub invertible: Vec<String>,
    pub monoid: Vec<(MonoExpr, Option<(i32, MonoExpr)>)>,
    pub null: Vec<SumExpr>,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlueDef {
    pub chart_a: String,
    pub chart_b: String,
    pub h_a: (i32, MonoExpr),
    pub h_b: (i32, MonoExpr),
    pub forward: Vec<(String, (i32, MonoExpr))>,
    pub backward: Vec<(String, (i32, MonoExpr))>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeDef {
    pub name: String,
    pub charts: Vec<(String, String)>,
    pub glues: Vec<GlueDef>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedDef {
    pub name: String,
    pub base: Option<String>,
    pub vars: Vec<String>,
    pub relations: Vec<SumExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Band(BandDef),
    Scheme(SchemeDef),
    Graded(GradedDef),
}

/// A parsed presentation file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PresentationFile {
    pub items: Vec<Item>,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn next_tok(&mut self) -> Result<(Tok, usize, usize)> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let Some(c) = self.peek() else { return Ok((Tok::Eof, line, col)) };
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(c) = self.peek() {
                if c.is_alphanumeric() || c == '_' || c == '/' {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok((Tok::Ident(s), line, col));
        }
        if c.is_ascii_digit() {
            let mut n = 0i64;
            while let Some(c) = self.peek() {
                if let Some(d) = c.to_digit(10) {
                    n = n * 10 + d as i64;
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok((Tok::Int(n), line, col));
        }
        if c == '-' {
            self.bump();
            if self.peek() == Some('>') {
                self.bump();
                return Ok((Tok::Arrow, line, col));
            }
            return Ok((Tok::Sym('-'), line, col));
        }
        if "{};:,+*^=|".contains(c) {
            self.bump();
            return Ok((Tok::Sym(c), line, col));
        }
        Err(self.error(format!("unexpected character `{c}`")))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (tok, line, col) = lexer.next_tok()?;
        Ok(Parser { lexer, tok, line, col })
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, line, col) = self.lexer.next_tok()?;
        self.tok = tok;
        self.line = line;
        self.col = col;
        Ok(())
    }

    fn eat_sym(&mut self, c: char) -> Result<()> {
        if self.tok == Tok::Sym(c) {
            self.advance()
        } else {
            Err(self.error(format!("expected `{c}`, found {:?}", self.tok)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match &self.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance()?;
                Ok(s)
            }
            t => Err(self.error(format!("expected a name, found {t:?}"))),
        }
    }

    fn parse_file(&mut self) -> Result<PresentationFile> {
        let mut items = vec![];
        loop {
            match &self.tok {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "band" => {
                    self.advance()?;
                    items.push(Item::Band(self.parse_band()?));
                }
                Tok::Ident(kw) if kw == "scheme" => {
                    self.advance()?;
                    items.push(Item::Scheme(self.parse_scheme()?));
                }
                Tok::Ident(kw) if kw == "graded" => {
                    self.advance()?;
                    items.push(Item::Graded(self.parse_graded()?));
                }
                t => return Err(self.error(format!("expected a block keyword, found {t:?}"))),
            }
        }
        Ok(PresentationFile { items })
    }

    fn parse_band(&mut self) -> Result<BandDef> {
        let name = self.ident()?;
        self.eat_sym('{')?;
        let mut def = BandDef {
            name,
            base: None,
            gens: vec![],
            invertible: vec![],
            monoid: vec![],
            null: vec![],
            mode: Mode::Null,
        };
        while self.tok != Tok::Sym('}') {
            let key = self.ident()?;
            self.eat_sym(':')?;
            match key.as_str() {
                "base" => def.base = Some(self.ident()?),
                "gens" => def.gens = self.name_list()?,
                "invertible" => def.invertible = self.name_list()?,
                "mode" => {
                    let m = self.ident()?;
                    def.mode = match m.as_str() {
                        "null" => Mode::Null,
                        "fusion" => Mode::Fusion,
                        _ => return Err(self.error("mode must be `null` or `fusion`")),
                    };
                }
                "monoid" => loop {
                    let lhs = self.parse_monomial()?;
                    self.eat_sym('=')?;
                    let rhs = self.parse_signed_monomial_or_zero()?;
                    def.monoid.push((lhs, rhs));
                    if self.tok == Tok::Sym(',') {
                        self.advance()?;
                    } else {
                        break;
                    }
                },
                "null" => loop {
                    def.null.push(self.parse_sum()?);
                    if self.tok == Tok::Sym(',') {
                        self.advance()?;
                    } else {
                        break;
                    }
                },
                other => return Err(self.error(format!("unknown key `{other}`"))),
            }
            if self.tok == Tok::Sym(';') {
                self.advance()?;
            }
        }
        self.eat_sym('}')?;
        Ok(def)
    }

    fn parse_scheme(&mut self) -> Result<SchemeDef> {
        let name = self.ident()?;
        self.eat_sym('{')?;
        let mut def = SchemeDef { name, charts: vec![], glues: vec![] };
        while self.tok != Tok::Sym('}') {
            let key = self.ident()?;
            match key.as_str() {
                "chart" => {
                    let label = self.ident()?;
                    self.eat_sym(':')?;
                    let band = self.ident()?;
                    def.charts.push((label, band));
                }
                "glue" => {
                    let chart_a = self.ident()?;
                    let chart_b = self.ident()?;
                    self.eat_sym(':')?;
                    let h_a = self.parse_signed_monomial()?;
                    self.eat_sym(',')?;
                    let h_b = self.parse_signed_monomial()?;
                    self.eat_sym(',')?;
                    let forward = self.parse_submap()?;
                    self.eat_sym('|')?;
                    let backward = self.parse_submap()?;
                    def.glues.push(GlueDef { chart_a, chart_b, h_a, h_b, forward, backward });
                }
                other => return Err(self.error(format!("unknown key `{other}`"))),
            }
            if self.tok == Tok::Sym(';') {
                self.advance()?;
            }
        }
        self.eat_sym('}')?;
        Ok(def)
    }

    fn parse_graded(&mut self) -> Result<GradedDef> {
        let name = self.ident()?;
        self.eat_sym('{')?;
        let mut def = GradedDef { name, base: None, vars: vec![], relations: vec![] };
        while self.tok != Tok::Sym('}') {
            let key = self.ident()?;
            self.eat_sym(':')?;
            match key.as_str() {
                "base" => def.base = Some(self.ident()?),
                "vars" => def.vars = self.name_list()?,
                "relations" => loop {
                    def.relations.push(self.parse_sum()?);
                    if self.tok == Tok::Sym(',') {
                        self.advance()?;
                    } else {
                        break;
                    }
                },
                other => return Err(self.error(format!("unknown key `{other}`"))),
            }
            if self.tok == Tok::Sym(';') {
                self.advance()?;
            }
        }
        self.eat_sym('}')?;
        Ok(def)
    }

    fn parse_submap(&mut self) -> Result<Vec<(String, (i32, MonoExpr))>> {
        let mut out = vec![];
        loop {
            let var = self.ident()?;
            if self.tok != Tok::Arrow {
                return Err(self.error("expected `->`"));
            }
            self.advance()?;
            let img = self.parse_signed_monomial()?;
            out.push((var, img));
            if self.tok == Tok::Sym(',') {
                self.advance()?;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        let mut out = vec![self.ident()?];
        while self.tok == Tok::Sym(',') {
            self.advance()?;
            out.push(self.ident()?);
        }
        Ok(out)
    }

    /// `x^2*y`, or `1` for the empty monomial.
    fn parse_monomial(&mut self) -> Result<MonoExpr> {
        let mut out: MonoExpr = vec![];
        loop {
            match &self.tok {
                Tok::Int(1) => {
                    self.advance()?;
                }
                Tok::Ident(_) => {
                    let name = self.ident()?;
                    let mut exp = 1i32;
                    if self.tok == Tok::Sym('^') {
                        self.advance()?;
                        let neg = if self.tok == Tok::Sym('-') {
                            self.advance()?;
                            true
                        } else {
                            false
                        };
                        match self.tok {
                            Tok::Int(n) => {
                                exp = n as i32 * if neg { -1 } else { 1 };
                                self.advance()?;
                            }
                            _ => return Err(self.error("expected an exponent")),
                        }
                    }
                    out.push((name, exp));
                }
                t => return Err(self.error(format!("expected a monomial, found {t:?}"))),
            }
            if self.tok == Tok::Sym('*') {
                self.advance()?;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn parse_signed_monomial(&mut self) -> Result<(i32, MonoExpr)> {
        let sign = if self.tok == Tok::Sym('-') {
            self.advance()?;
            -1
        } else {
            1
        };
        Ok((sign, self.parse_monomial()?))
    }

    fn parse_signed_monomial_or_zero(&mut self) -> Result<Option<(i32, MonoExpr)>> {
        if self.tok == Tok::Int(0) {
            self.advance()?;
            return Ok(None);
        }
        Ok(Some(self.parse_signed_monomial()?))
    }

    fn parse_sum(&mut self) -> Result<SumExpr> {
        let mut out = vec![self.parse_signed_monomial()?];
        loop {
            let sign = match self.tok {
                Tok::Sym('+') => 1,
                Tok::Sym('-') => -1,
                _ => break,
            };
            self.advance()?;
            let m = self.parse_monomial()?;
            out.push((sign, m));
        }
        Ok(out)
    }
}

/// Parses a presentation file, reporting position-annotated errors.
pub fn parse(src: &str) -> Result<PresentationFile> {
    Parser::new(src)?.parse_file()
}

fn mono_to_string(m: &MonoExpr) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.clone()
            } else if *e >= 0 {
                format!("{v}^{e}")
            } else {
                format!("{v}^-{}", -e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn sum_to_string(s: &SumExpr) -> String {
    let mut out = String::new();
    for (i, (sign, m)) in s.iter().enumerate() {
        if i == 0 {
            if *sign < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if *sign < 0 { " - " } else { " + " });
        }
        out.push_str(&mono_to_string(m));
    }
    out
}

/// Serializes an AST back to the presentation language; `parse` of the
/// output reproduces the AST.
pub fn serialize(file: &PresentationFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        match item {
            Item::Band(b) => {
                let _ = write!(out, "band {} {{", b.name);
                if let Some(base) = &b.base {
                    let _ = write!(out, " base: {base};");
                }
                if !b.gens.is_empty() {
                    let _ = write!(out, " gens: {};", b.gens.join(", "));
                }
                if !b.invertible.is_empty() {
                    let _ = write!(out, " invertible: {};", b.invertible.join(", "));
                }
                if !b.monoid.is_empty() {
                    let eqs: Vec<String> = b
                        .monoid
                        .iter()
                        .map(|(l, r)| match r {
                            None => format!("{} = 0", mono_to_string(l)),
                            Some((s, m)) => format!(
                                "{} = {}{}",
                                mono_to_string(l),
                                if *s < 0 { "-" } else { "" },
                                mono_to_string(m)
                            ),
                        })
                        .collect();
                    let _ = write!(out, " monoid: {};", eqs.join(", "));
                }
                if !b.null.is_empty() {
                    let sums: Vec<String> = b.null.iter().map(sum_to_string).collect();
                    let _ = write!(out, " null: {};", sums.join(", "));
                }
                let _ = write!(
                    out,
                    " mode: {};",
                    if b.mode == Mode::Fusion { "fusion" } else { "null" }
                );
                out.push_str(" }\n");
            }
            Item::Scheme(s) => {
                let _ = write!(out, "scheme {} {{", s.name);
                for (label, band) in &s.charts {
                    let _ = write!(out, " chart {label}: {band};");
                }
                for g in &s.glues {
                    let fwd: Vec<String> = g
                        .forward
                        .iter()
                        .map(|(v, (sg, m))| {
                            format!("{v} -> {}{}", if *sg < 0 { "-" } else { "" }, mono_to_string(m))
                        })
                        .collect();
                    let bwd: Vec<String> = g
                        .backward
                        .iter()
                        .map(|(v, (sg, m))| {
                            format!("{v} -> {}{}", if *sg < 0 { "-" } else { "" }, mono_to_string(m))
                        })
                        .collect();
                    let _ = write!(
                        out,
                        " glue {} {}: {}{}, {}{}, {} | {};",
                        g.chart_a,
                        g.chart_b,
                        if g.h_a.0 < 0 { "-" } else { "" },
                        mono_to_string(&g.h_a.1),
                        if g.h_b.0 < 0 { "-" } else { "" },
                        mono_to_string(&g.h_b.1),
                        fwd.join(", "),
                        bwd.join(", ")
                    );
                }
                out.push_str(" }\n");
            }
            Item::Graded(g) => {
                let _ = write!(out, "graded {} {{", g.name);
                if let Some(base) = &g.base {
                    let _ = write!(out, " base: {base};");
                }
                let _ = write!(out, " vars: {};", g.vars.join(", "));
                if !g.relations.is_empty() {
                    let sums: Vec<String> = g.relations.iter().map(sum_to_string).collect();
                    let _ = write!(out, " relations: {};", sums.join(", "));
                }
                out.push_str(" }\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_f5_presentation() {
        let f = parse("band F5 { gens: x; null: x^2 + 1, x - 1 - 1; mode: fusion }").unwrap();
        let Item::Band(b) = &f.items[0] else { panic!() };
        assert_eq!(b.gens, vec!["x"]);
        assert_eq!(b.null.len(), 2);
        assert_eq!(b.mode, Mode::Fusion);
    }

    #[test]
    fn empty_file_is_an_empty_program() {
        assert!(parse("").unwrap().items.is_empty());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("band X {\n  gens ~ x\n}").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn roundtrip_is_identity_on_asts() {
        let src = "band F5 { gens: x; null: x^2 + 1, x - 1 - 1; mode: fusion }\n\
                   band L { gens: t, s; monoid: t*s = 1; mode: null }\n\
                   scheme DL { chart U: A1; chart V: A1; glue U V: T, T, T -> T | T -> T }\n\
                   graded C { vars: T0, T1; relations: T0*T1 - T0*T1 }";
        let ast = parse(src).unwrap();
        let printed = serialize(&ast);
        assert_eq!(parse(&printed).unwrap(), ast);
    }
}
