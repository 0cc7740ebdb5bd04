//! The `coalg-format 1` definition file: a header line, a field line, then
//! named blocks closed by `end`. `#` starts a comment.
//!
//! ```text
//! coalg-format 1
//! field Q
//! coalgebra K
//!   basis g h
//!   delta g g g 1        # Δ(g) ∋ 1·g⊗g
//!   delta h h h 1
//!   counit g 1
//!   counit h 1
//! end
//! morphism eps K -> k
//!   entry 1 g 1          # target label, source label, coefficient
//!   entry 1 h 1
//! end
//! ```
//!
//! Other blocks: `rightcomodule NAME over C` with `coact m n c coef`
//! (`ρ(m) ∋ coef·n⊗c`), `leftcomodule NAME over C` with `coact m c n coef`,
//! `bicomodule NAME over C D` with `left m c n coef` and `right m n d coef`,
//! and `subspace NAME in C` with `vector label coef label coef ...`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use comono_core::{
    Bicomodule, Coalgebra, CoalgebraMorphism, Field, LeftComodule, Matrix, RightComodule, Scalar, Subspace,
};

use crate::error::CliError;

pub const HEADER: &str = "coalg-format 1";

#[derive(Clone, Debug)]
pub struct DefinitionDocument {
    pub field: Field,
    pub coalgebras: Vec<Arc<Coalgebra>>,
    pub morphisms: Vec<(String, CoalgebraMorphism)>,
    pub right_comodules: Vec<(String, RightComodule)>,
    pub left_comodules: Vec<(String, LeftComodule)>,
    pub bicomodules: Vec<(String, Bicomodule)>,
    /// Name, ambient coalgebra, subspace.
    pub subspaces: Vec<(String, String, Subspace)>,
}

impl PartialEq for DefinitionDocument {
    fn eq(&self, other: &Self) -> bool {
        let names = |d: &DefinitionDocument| -> Vec<String> { d.coalgebras.iter().map(|c| c.name().to_string()).collect() };
        self.field == other.field
            && names(self) == names(other)
            && self.coalgebras == other.coalgebras
            && self.morphisms == other.morphisms
            && self.right_comodules == other.right_comodules
            && self.left_comodules == other.left_comodules
            && self.bicomodules == other.bicomodules
            && self.subspaces == other.subspaces
    }
}

impl DefinitionDocument {
    pub fn coalgebra(&self, name: &str) -> Option<&Arc<Coalgebra>> {
        self.coalgebras.iter().find(|c| c.name() == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&CoalgebraMorphism> {
        lookup(&self.morphisms, name)
    }

    pub fn right_comodule(&self, name: &str) -> Option<&RightComodule> {
        lookup(&self.right_comodules, name)
    }

    pub fn left_comodule(&self, name: &str) -> Option<&LeftComodule> {
        lookup(&self.left_comodules, name)
    }

    pub fn bicomodule(&self, name: &str) -> Option<&Bicomodule> {
        lookup(&self.bicomodules, name)
    }

    pub fn subspace(&self, name: &str) -> Option<(&str, &Subspace)> {
        self.subspaces
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, c, s)| (c.as_str(), s))
    }

    /// An empty document over `field`.
    pub fn new(field: Field) -> DefinitionDocument {
        DefinitionDocument {
            field,
            coalgebras: vec![],
            morphisms: vec![],
            right_comodules: vec![],
            left_comodules: vec![],
            bicomodules: vec![],
            subspaces: vec![],
        }
    }
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn err(tok: Token<'_>, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line: tok.line,
        col: tok.col,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = vec![];
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = vec![];
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push(Token {
                        text: &content[s..pos],
                        line: idx + 1,
                        col: content[..s].chars().count() + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if !toks.is_empty() {
            lines.push(toks);
        }
    }
    lines
}

struct Parser<'a> {
    field: Field,
    doc: DefinitionDocument,
    names: HashMap<String, Token<'a>>,
}

/// Parses a definition document. Structure is checked (shapes, names,
/// scalars); axioms are left to the validators.
pub fn parse_document(text: &str) -> Result<DefinitionDocument, CliError> {
    let lines = tokenize(text);
    let mut it = lines.iter().peekable();
    let header = it.next().ok_or(CliError::EmptyDocument)?;
    if header.len() != 2 || header[0].text != "coalg-format" {
        return Err(err(header[0], format!("expected header `{HEADER}`")));
    }
    if header[1].text != "1" {
        return Err(err(header[1], format!("unsupported format version `{}`", header[1].text)));
    }
    let field_line = it.next().ok_or_else(|| err(header[0], "missing `field` line"))?;
    let field = parse_field(field_line)?;
    let mut p = Parser {
        field,
        doc: DefinitionDocument::new(field),
        names: HashMap::new(),
    };
    while let Some(head) = it.next() {
        let mut body = vec![];
        loop {
            let line = it
                .next()
                .ok_or_else(|| err(head[0], format!("`{}` block is not closed by `end`", head[0].text)))?;
            if line[0].text == "end" {
                if line.len() > 1 {
                    return Err(err(line[1], "unexpected text after `end`"));
                }
                break;
            }
            body.push(line);
        }
        p.block(head, &body)?;
    }
    Ok(p.doc)
}

fn parse_field(line: &[Token<'_>]) -> Result<Field, CliError> {
    if line[0].text != "field" {
        return Err(err(line[0], "expected `field Q` or `field Fp <p>`"));
    }
    match line.get(1).map(|t| t.text) {
        Some("Q") if line.len() == 2 => Ok(Field::Rationals),
        Some("Fp") if line.len() == 3 => {
            let p: u64 = line[2]
                .text
                .parse()
                .map_err(|_| err(line[2], format!("`{}` is not a prime", line[2].text)))?;
            Field::prime(p).map_err(|e| err(line[2], e.to_string()))
        }
        Some(other) => Err(err(line[1], format!("unknown field tag `{other}`"))),
        None => Err(err(line[0], "missing field tag")),
    }
}

fn expect_len(line: &[Token<'_>], n: usize, usage: &str) -> Result<(), CliError> {
    if line.len() != n {
        let at = line.get(n).copied().unwrap_or(line[line.len() - 1]);
        return Err(err(at, format!("expected `{usage}`")));
    }
    Ok(())
}

fn index_of(labels: &[String], tok: Token<'_>, what: &str) -> Result<usize, CliError> {
    labels
        .iter()
        .position(|l| l == tok.text)
        .ok_or_else(|| err(tok, format!("unknown {what} basis label `{}`", tok.text)))
}

impl<'a> Parser<'a> {
    fn scalar(&self, tok: Token<'_>) -> Result<Scalar, CliError> {
        self.field.parse_scalar(tok.text).map_err(|e| err(tok, e.to_string()))
    }

    fn claim(&mut self, tok: Token<'a>) -> Result<String, CliError> {
        if let Some(prev) = self.names.get(tok.text) {
            return Err(err(tok, format!("name `{}` already defined on line {}", tok.text, prev.line)));
        }
        self.names.insert(tok.text.to_string(), tok);
        Ok(tok.text.to_string())
    }

    fn coalgebra_ref(&self, tok: Token<'_>) -> Result<Arc<Coalgebra>, CliError> {
        self.doc
            .coalgebra(tok.text)
            .cloned()
            .ok_or_else(|| err(tok, format!("undefined coalgebra `{}`", tok.text)))
    }

    fn basis(&self, body: &[&Vec<Token<'a>>], head: Token<'_>) -> Result<Vec<String>, CliError> {
        let line = body
            .first()
            .filter(|l| l[0].text == "basis")
            .ok_or_else(|| err(head, "block must start with a `basis` line"))?;
        Ok(line[1..].iter().map(|t| t.text.to_string()).collect())
    }

    fn block(&mut self, head: &[Token<'a>], body: &[&Vec<Token<'a>>]) -> Result<(), CliError> {
        let at = |e: comono_core::Error| err(head[0], e.to_string());
        match head[0].text {
            "coalgebra" => {
                expect_len(head, 2, "coalgebra NAME")?;
                let name = self.claim(head[1])?;
                let labels = self.basis(body, head[0])?;
                let mut terms = vec![];
                let mut counit = vec![self.field.zero(); labels.len()];
                for line in &body[1..] {
                    match line[0].text {
                        "delta" => {
                            expect_len(line, 5, "delta ON LEFT RIGHT COEF")?;
                            terms.push((
                                index_of(&labels, line[1], "coalgebra")?,
                                index_of(&labels, line[2], "coalgebra")?,
                                index_of(&labels, line[3], "coalgebra")?,
                                self.scalar(line[4])?,
                            ));
                        }
                        "counit" => {
                            expect_len(line, 3, "counit LABEL VALUE")?;
                            let i = index_of(&labels, line[1], "coalgebra")?;
                            counit[i] = &counit[i] + &self.scalar(line[2])?;
                        }
                        other => return Err(err(line[0], format!("unexpected `{other}` in coalgebra block"))),
                    }
                }
                let c = Coalgebra::from_terms(name, self.field, labels, &terms, counit).map_err(at)?;
                self.doc.coalgebras.push(Arc::new(c));
            }
            "morphism" => {
                if head.len() != 5 || head[3].text != "->" {
                    return Err(err(head[0], "expected `morphism NAME SOURCE -> TARGET`"));
                }
                let name = self.claim(head[1])?;
                let src = self.coalgebra_ref(head[2])?;
                let tgt = self.coalgebra_ref(head[4])?;
                let mut data = vec![self.field.zero(); tgt.dim() * src.dim()];
                for line in body {
                    if line[0].text != "entry" {
                        return Err(err(line[0], format!("unexpected `{}` in morphism block", line[0].text)));
                    }
                    expect_len(line, 4, "entry TARGET SOURCE COEF")?;
                    let r = index_of(tgt.labels(), line[1], "target")?;
                    let c = index_of(src.labels(), line[2], "source")?;
                    let slot = &mut data[r * src.dim() + c];
                    *slot = &*slot + &self.scalar(line[3])?;
                }
                let m = Matrix::new(self.field, tgt.dim(), src.dim(), data).map_err(at)?;
                let f = CoalgebraMorphism::new(src, tgt, m).map_err(at)?;
                self.doc.morphisms.push((name, f));
            }
            kind @ ("rightcomodule" | "leftcomodule") => {
                if head.len() != 4 || head[2].text != "over" {
                    return Err(err(head[0], format!("expected `{kind} NAME over COALGEBRA`")));
                }
                let name = self.claim(head[1])?;
                let c = self.coalgebra_ref(head[3])?;
                let labels = self.basis(body, head[0])?;
                let m = labels.len();
                let n = c.dim();
                let right = kind == "rightcomodule";
                let mut data = vec![self.field.zero(); m * n * m];
                for line in &body[1..] {
                    if line[0].text != "coact" {
                        return Err(err(line[0], format!("unexpected `{}` in comodule block", line[0].text)));
                    }
                    let (a, row) = if right {
                        expect_len(line, 5, "coact ELEMENT MODULE COALGEBRA COEF")?;
                        let a = index_of(&labels, line[1], "module")?;
                        let b = index_of(&labels, line[2], "module")?;
                        let i = index_of(c.labels(), line[3], "coalgebra")?;
                        (a, b * n + i)
                    } else {
                        expect_len(line, 5, "coact ELEMENT COALGEBRA MODULE COEF")?;
                        let a = index_of(&labels, line[1], "module")?;
                        let i = index_of(c.labels(), line[2], "coalgebra")?;
                        let b = index_of(&labels, line[3], "module")?;
                        (a, i * m + b)
                    };
                    let slot = &mut data[row * m + a];
                    *slot = &*slot + &self.scalar(line[4])?;
                }
                let coaction = Matrix::new(self.field, m * n, m, data).map_err(at)?;
                if right {
                    let r = RightComodule::new(c, labels, coaction).map_err(at)?;
                    self.doc.right_comodules.push((name, r));
                } else {
                    let l = LeftComodule::new(c, labels, coaction).map_err(at)?;
                    self.doc.left_comodules.push((name, l));
                }
            }
            "bicomodule" => {
                if head.len() != 5 || head[2].text != "over" {
                    return Err(err(head[0], "expected `bicomodule NAME over LEFT RIGHT`"));
                }
                let name = self.claim(head[1])?;
                let lc = self.coalgebra_ref(head[3])?;
                let rc = self.coalgebra_ref(head[4])?;
                let labels = self.basis(body, head[0])?;
                let m = labels.len();
                let mut left = vec![self.field.zero(); lc.dim() * m * m];
                let mut right = vec![self.field.zero(); m * rc.dim() * m];
                for line in &body[1..] {
                    match line[0].text {
                        "left" => {
                            expect_len(line, 5, "left ELEMENT COALGEBRA MODULE COEF")?;
                            let a = index_of(&labels, line[1], "module")?;
                            let i = index_of(lc.labels(), line[2], "coalgebra")?;
                            let b = index_of(&labels, line[3], "module")?;
                            let slot = &mut left[(i * m + b) * m + a];
                            *slot = &*slot + &self.scalar(line[4])?;
                        }
                        "right" => {
                            expect_len(line, 5, "right ELEMENT MODULE COALGEBRA COEF")?;
                            let a = index_of(&labels, line[1], "module")?;
                            let b = index_of(&labels, line[2], "module")?;
                            let j = index_of(rc.labels(), line[3], "coalgebra")?;
                            let slot = &mut right[(b * rc.dim() + j) * m + a];
                            *slot = &*slot + &self.scalar(line[4])?;
                        }
                        other => return Err(err(line[0], format!("unexpected `{other}` in bicomodule block"))),
                    }
                }
                let left = Matrix::new(self.field, lc.dim() * m, m, left).map_err(at)?;
                let right = Matrix::new(self.field, m * rc.dim(), m, right).map_err(at)?;
                let b = Bicomodule::new(lc, rc, labels, left, right).map_err(at)?;
                self.doc.bicomodules.push((name, b));
            }
            "subspace" => {
                if head.len() != 4 || head[2].text != "in" {
                    return Err(err(head[0], "expected `subspace NAME in COALGEBRA`"));
                }
                let name = self.claim(head[1])?;
                let c = self.coalgebra_ref(head[3])?;
                let mut vectors = vec![];
                for line in body {
                    if line[0].text != "vector" || line.len() % 2 == 0 {
                        return Err(err(line[0], "expected `vector LABEL COEF [LABEL COEF ...]`"));
                    }
                    let mut v = vec![self.field.zero(); c.dim()];
                    for pair in line[1..].chunks(2) {
                        let i = index_of(c.labels(), pair[0], "coalgebra")?;
                        v[i] = &v[i] + &self.scalar(pair[1])?;
                    }
                    vectors.push(v);
                }
                let s = Subspace::span(self.field, c.dim(), &vectors).map_err(at)?;
                self.doc.subspaces.push((name, c.name().to_string(), s));
            }
            other => return Err(err(head[0], format!("unknown block kind `{other}`"))),
        }
        Ok(())
    }
}

/// Writes a document that [`parse_document`] reads back to an equal one.
pub fn serialize_document(doc: &DefinitionDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "field {}", doc.field);
    for c in &doc.coalgebras {
        out.push_str(&serialize_coalgebra(c));
    }
    for (name, f) in &doc.morphisms {
        out.push_str(&serialize_morphism(name, f));
    }
    for (name, m) in &doc.right_comodules {
        let _ = writeln!(out, "rightcomodule {name} over {}", m.over().name());
        let _ = writeln!(out, "  basis {}", m.labels().join(" "));
        let (n, d) = (m.over().dim(), m.dim());
        for a in 0..d {
            for b in 0..d {
                for i in 0..n {
                    let v = m.coaction().get(b * n + i, a);
                    if !v.is_zero() {
                        let _ = writeln!(out, "  coact {} {} {} {v}", m.labels()[a], m.labels()[b], m.over().labels()[i]);
                    }
                }
            }
        }
        out.push_str("end\n");
    }
    for (name, m) in &doc.left_comodules {
        let _ = writeln!(out, "leftcomodule {name} over {}", m.over().name());
        let _ = writeln!(out, "  basis {}", m.labels().join(" "));
        let (n, d) = (m.over().dim(), m.dim());
        for a in 0..d {
            for i in 0..n {
                for b in 0..d {
                    let v = m.coaction().get(i * d + b, a);
                    if !v.is_zero() {
                        let _ = writeln!(out, "  coact {} {} {} {v}", m.labels()[a], m.over().labels()[i], m.labels()[b]);
                    }
                }
            }
        }
        out.push_str("end\n");
    }
    for (name, b) in &doc.bicomodules {
        out.push_str(&serialize_bicomodule(name, b));
    }
    for (name, c, s) in &doc.subspaces {
        let _ = writeln!(out, "subspace {name} in {c}");
        let labels = doc.coalgebra(c).map(|c| c.labels().to_vec()).unwrap_or_default();
        for v in s.basis_vectors() {
            let mut line = String::from("  vector");
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    let _ = write!(line, " {} {x}", labels[i]);
                }
            }
            let _ = writeln!(out, "{line}");
        }
        out.push_str("end\n");
    }
    out
}

pub fn serialize_coalgebra(c: &Coalgebra) -> String {
    let mut out = String::new();
    let n = c.dim();
    let l = c.labels();
    let _ = writeln!(out, "coalgebra {}", c.name());
    let _ = writeln!(out, "  basis {}", l.join(" "));
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let v = c.mu(k, i, j);
                if !v.is_zero() {
                    let _ = writeln!(out, "  delta {} {} {} {v}", l[k], l[i], l[j]);
                }
            }
        }
    }
    for (k, v) in c.counit_vector().iter().enumerate() {
        if !v.is_zero() {
            let _ = writeln!(out, "  counit {} {v}", l[k]);
        }
    }
    out.push_str("end\n");
    out
}

pub fn serialize_morphism(name: &str, f: &CoalgebraMorphism) -> String {
    let mut out = String::new();
    let (s, t) = (f.source(), f.target());
    let _ = writeln!(out, "morphism {name} {} -> {}", s.name(), t.name());
    for r in 0..t.dim() {
        for c in 0..s.dim() {
            let v = f.matrix().get(r, c);
            if !v.is_zero() {
                let _ = writeln!(out, "  entry {} {} {v}", t.labels()[r], s.labels()[c]);
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn serialize_bicomodule(name: &str, b: &Bicomodule) -> String {
    let mut out = String::new();
    let (lc, rc) = (b.left_over(), b.right_over());
    let m = b.dim();
    let _ = writeln!(out, "bicomodule {name} over {} {}", lc.name(), rc.name());
    let _ = writeln!(out, "  basis {}", b.labels().join(" "));
    for a in 0..m {
        for i in 0..lc.dim() {
            for t in 0..m {
                let v = b.left_coaction().get(i * m + t, a);
                if !v.is_zero() {
                    let _ = writeln!(out, "  left {} {} {} {v}", b.labels()[a], lc.labels()[i], b.labels()[t]);
                }
            }
        }
        for t in 0..m {
            for j in 0..rc.dim() {
                let v = b.right_coaction().get(t * rc.dim() + j, a);
                if !v.is_zero() {
                    let _ = writeln!(out, "  right {} {} {} {v}", b.labels()[a], b.labels()[t], rc.labels()[j]);
                }
            }
        }
    }
    out.push_str("end\n");
    out
}
