//! Line-oriented netlist format.
//!
//! ```text
//! field rational            # or: field gaussian
//! node n0 n1 n2
//! edge e1 n0 n1
//! edge e2 n1 n2
//! port p1 n0 n2
//! device d1 edges(e1 e2)
//!   row 1 0 | 0 0 | 4
//!   row 0 1 | 0 -2 | 0
//! end
//! ```
//!
//! A row lists voltage coefficients of the block's edges, then current
//! coefficients, then the source value.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::graph::{Edge, OrientedGraph};
use crate::label::{Decoration, Label};
use crate::multiport::{DeviceBlock, Multiport};
use crate::scalar::{ExactField, FieldMode, GaussianRational, LiteralError, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    Syntax,
    UnknownField,
    DuplicateVertex,
    UnknownVertex,
    DuplicateEdge,
    UnknownEdge,
    RowArity,
    PortInDevice,
    DivisionByZero,
    Literal,
    Device,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "SYNTAX",
            DiagnosticCode::UnknownField => "FIELD",
            DiagnosticCode::DuplicateVertex => "DUPVERTEX",
            DiagnosticCode::UnknownVertex => "VERTEX",
            DiagnosticCode::DuplicateEdge => "DUPEDGE",
            DiagnosticCode::UnknownEdge => "EDGE",
            DiagnosticCode::RowArity => "ARITY",
            DiagnosticCode::PortInDevice => "PORTDEV",
            DiagnosticCode::DivisionByZero => "DIV0",
            DiagnosticCode::Literal => "LITERAL",
            DiagnosticCode::Device => "DEVICE",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: error[{code}]: {message}")]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed netlist in whichever field it declares.
#[derive(Clone, Debug, PartialEq)]
pub enum Netlist {
    Rational(Multiport<Rational>),
    Gaussian(Multiport<GaussianRational>),
}

impl Netlist {
    pub fn mode(&self) -> FieldMode {
        match self {
            Netlist::Rational(_) => FieldMode::Rational,
            Netlist::Gaussian(_) => FieldMode::Gaussian,
        }
    }

    pub fn emit(&self) -> String {
        match self {
            Netlist::Rational(m) => emit(m),
            Netlist::Gaussian(m) => emit(m),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    pos: Pos,
}

fn diag(code: DiagnosticCode, pos: Pos, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        code,
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens before any `#`; `(`, `)` and `|` stand alone.
fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut start: Option<usize> = None;
    for (k, c) in body.char_indices() {
        let single = matches!(c, '(' | ')' | '|');
        if c.is_whitespace() || single {
            if let Some(s) = start.take() {
                spans.push((s, k));
            }
            if single {
                spans.push((k, k + c.len_utf8()));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        spans.push((s, body.len()));
    }
    spans
        .into_iter()
        .map(|(from, to)| Token {
            text: &body[from..to],
            pos: Pos {
                line: number,
                column: body[..from].chars().count() + 1,
            },
        })
        .collect()
}

struct RawRow<'a> {
    pos: Pos,
    sections: Vec<Vec<Token<'a>>>,
}

struct RawDevice<'a> {
    name: Token<'a>,
    edges: Vec<Token<'a>>,
    rows: Vec<RawRow<'a>>,
}

#[derive(Default)]
struct RawDocument<'a> {
    field: Option<(FieldMode, Pos)>,
    vertices: Vec<Token<'a>>,
    edges: Vec<(Token<'a>, Token<'a>, Token<'a>, bool)>,
    devices: Vec<RawDevice<'a>>,
}

fn expect_args<'a>(
    tokens: &[Token<'a>],
    count: usize,
    usage: &str,
) -> Result<Vec<Token<'a>>, Diagnostic> {
    if tokens.len() != count + 1 {
        let pos = tokens.get(count + 1).map_or(tokens[0].pos, |t| t.pos);
        return Err(diag(
            DiagnosticCode::Syntax,
            pos,
            format!("expected `{usage}`"),
        ));
    }
    Ok(tokens[1..].to_vec())
}

fn read_document(text: &str) -> Result<RawDocument<'_>, Diagnostic> {
    let mut doc = RawDocument::default();
    let mut open: Option<RawDevice<'_>> = None;
    let mut last = Pos { line: 1, column: 1 };
    for (k, line) in text.lines().enumerate() {
        let tokens = tokenize(line, k + 1);
        let Some(head) = tokens.first() else { continue };
        last = head.pos;
        if let Some(device) = open.as_mut() {
            match head.text {
                "row" => {
                    let mut sections = vec![Vec::new()];
                    for t in &tokens[1..] {
                        if t.text == "|" {
                            sections.push(Vec::new());
                        } else if matches!(t.text, "(" | ")") {
                            return Err(diag(
                                DiagnosticCode::Syntax,
                                t.pos,
                                "unexpected parenthesis in a row",
                            ));
                        } else {
                            sections.last_mut().expect("one section").push(t.clone());
                        }
                    }
                    device.rows.push(RawRow {
                        pos: head.pos,
                        sections,
                    });
                }
                "end" => {
                    expect_args(&tokens, 0, "end")?;
                    doc.devices.push(open.take().expect("open device"));
                }
                other => {
                    return Err(diag(
                        DiagnosticCode::Syntax,
                        head.pos,
                        format!("expected `row` or `end` inside device, found `{other}`"),
                    ))
                }
            }
            continue;
        }
        match head.text {
            "field" => {
                let args = expect_args(&tokens, 1, "field rational|gaussian")?;
                if let Some((_, first)) = doc.field {
                    return Err(diag(
                        DiagnosticCode::Syntax,
                        head.pos,
                        format!("field already declared on line {}", first.line),
                    ));
                }
                let mode = match args[0].text {
                    "rational" => FieldMode::Rational,
                    "gaussian" => FieldMode::Gaussian,
                    other => {
                        return Err(diag(
                            DiagnosticCode::UnknownField,
                            args[0].pos,
                            format!("unknown field `{other}`"),
                        ))
                    }
                };
                doc.field = Some((mode, head.pos));
            }
            "node" => {
                if tokens.len() < 2 {
                    return Err(diag(
                        DiagnosticCode::Syntax,
                        head.pos,
                        "expected `node <name>...`",
                    ));
                }
                doc.vertices.extend(tokens[1..].iter().cloned());
            }
            "edge" | "port" => {
                let args =
                    expect_args(&tokens, 3, &format!("{} <label> <tail> <head>", head.text))?;
                doc.edges.push((
                    args[0].clone(),
                    args[1].clone(),
                    args[2].clone(),
                    head.text == "port",
                ));
            }
            "device" => {
                let texts: Vec<&str> = tokens.iter().map(|t| t.text).collect();
                let well_formed = texts.len() >= 5
                    && texts[2] == "edges"
                    && texts[3] == "("
                    && texts.last() == Some(&")");
                if !well_formed {
                    return Err(diag(
                        DiagnosticCode::Syntax,
                        head.pos,
                        "expected `device <name> edges(<edge>...)`",
                    ));
                }
                let edges = tokens[4..tokens.len() - 1].to_vec();
                if let Some(t) = edges.iter().find(|t| matches!(t.text, "(" | ")" | "|")) {
                    return Err(diag(
                        DiagnosticCode::Syntax,
                        t.pos,
                        format!("unexpected `{}`", t.text),
                    ));
                }
                open = Some(RawDevice {
                    name: tokens[1].clone(),
                    edges,
                    rows: Vec::new(),
                });
            }
            other => {
                return Err(diag(
                    DiagnosticCode::Syntax,
                    head.pos,
                    format!("unknown statement `{other}`"),
                ))
            }
        }
    }
    if let Some(device) = open {
        return Err(diag(
            DiagnosticCode::Syntax,
            last,
            format!("device `{}` is missing `end`", device.name.text),
        ));
    }
    Ok(doc)
}

fn edge_label(t: &Token<'_>) -> Result<Label, Diagnostic> {
    match t.text.parse::<Label>() {
        Ok(l) if l.decoration == Decoration::Plain => Ok(l),
        _ => Err(diag(
            DiagnosticCode::Syntax,
            t.pos,
            format!("invalid edge label `{}`", t.text),
        )),
    }
}

fn literal<F: ExactField>(t: &Token<'_>) -> Result<F, Diagnostic> {
    F::parse_literal(t.text).map_err(|e| match e {
        LiteralError::DivisionByZero(_) => diag(
            DiagnosticCode::DivisionByZero,
            t.pos,
            format!("division by zero in `{}`", t.text),
        ),
        other => diag(DiagnosticCode::Literal, t.pos, other.to_string()),
    })
}

fn build<F: ExactField>(doc: &RawDocument<'_>) -> Result<Multiport<F>, Diagnostic> {
    let mut vertices = BTreeSet::new();
    for v in &doc.vertices {
        if !Label::is_valid_base(v.text.trim_end_matches('~')) {
            return Err(diag(
                DiagnosticCode::Syntax,
                v.pos,
                format!("invalid vertex name `{}`", v.text),
            ));
        }
        if !vertices.insert(v.text) {
            return Err(diag(
                DiagnosticCode::DuplicateVertex,
                v.pos,
                format!("vertex `{}` declared twice", v.text),
            ));
        }
    }
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut ports = Vec::new();
    for (label, tail, head, is_port) in &doc.edges {
        let l = edge_label(label)?;
        if !seen.insert(l.clone()) {
            return Err(diag(
                DiagnosticCode::DuplicateEdge,
                label.pos,
                format!("edge `{l}` declared twice"),
            ));
        }
        for end in [tail, head] {
            if !vertices.contains(end.text) {
                return Err(diag(
                    DiagnosticCode::UnknownVertex,
                    end.pos,
                    format!("unknown vertex `{}`", end.text),
                ));
            }
        }
        if *is_port {
            ports.push(l.clone());
        }
        edges.push(Edge {
            label: l,
            tail: tail.text.to_string(),
            head: head.text.to_string(),
        });
    }
    let graph = OrientedGraph::new(vertices.iter().copied(), edges).map_err(|e| {
        diag(
            DiagnosticCode::Syntax,
            Pos { line: 1, column: 1 },
            e.to_string(),
        )
    })?;

    let mut blocks = Vec::new();
    let mut owner = BTreeSet::new();
    let mut names = BTreeSet::new();
    for device in &doc.devices {
        if !names.insert(device.name.text) {
            return Err(diag(
                DiagnosticCode::Device,
                device.name.pos,
                format!("device `{}` declared twice", device.name.text),
            ));
        }
        let mut block_edges = Vec::new();
        for t in &device.edges {
            let l = edge_label(t)?;
            if !seen.contains(&l) {
                return Err(diag(
                    DiagnosticCode::UnknownEdge,
                    t.pos,
                    format!("unknown edge `{l}`"),
                ));
            }
            if ports.contains(&l) {
                return Err(diag(
                    DiagnosticCode::PortInDevice,
                    t.pos,
                    format!("port `{l}` cannot belong to a device"),
                ));
            }
            if !owner.insert(l.clone()) {
                return Err(diag(
                    DiagnosticCode::Device,
                    t.pos,
                    format!("edge `{l}` already belongs to a device"),
                ));
            }
            block_edges.push(l);
        }
        let k = block_edges.len();
        let mut rows = Vec::new();
        for row in &device.rows {
            let widths: Vec<usize> = row.sections.iter().map(Vec::len).collect();
            if widths != [k, k, 1] {
                return Err(diag(
                    DiagnosticCode::RowArity,
                    row.pos,
                    format!(
                        "row of device `{}` needs `{k} | {k} | 1` entries, found `{}`",
                        device.name.text,
                        widths
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" | ")
                    ),
                ));
            }
            let values = row
                .sections
                .iter()
                .flatten()
                .map(literal::<F>)
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(values);
        }
        let block = DeviceBlock::new(device.name.text, block_edges, rows).map_err(|e| {
            let message = match e {
                Error::Device(_, m) => m,
                other => other.to_string(),
            };
            diag(
                DiagnosticCode::Device,
                device.name.pos,
                format!("device `{}`: {message}", device.name.text),
            )
        })?;
        blocks.push(block);
    }
    Multiport::new(graph, ports, blocks).map_err(|e| {
        diag(
            DiagnosticCode::Device,
            Pos { line: 1, column: 1 },
            e.to_string(),
        )
    })
}

/// Parses a netlist; without a `field` line the field is rational.
pub fn parse(text: &str) -> Result<Netlist, Diagnostic> {
    let doc = read_document(text)?;
    match doc.field.map_or(FieldMode::Rational, |(m, _)| m) {
        FieldMode::Rational => build(&doc).map(Netlist::Rational),
        FieldMode::Gaussian => build(&doc).map(Netlist::Gaussian),
    }
}

/// Parses a netlist that must be in field `F`.
pub fn parse_as<F: ExactField>(text: &str) -> Result<Multiport<F>, Diagnostic> {
    let doc = read_document(text)?;
    let mode = doc.field.map_or(FieldMode::Rational, |(m, _)| m);
    if mode != F::MODE {
        let pos = doc.field.map_or(Pos { line: 1, column: 1 }, |(_, p)| p);
        return Err(diag(
            DiagnosticCode::UnknownField,
            pos,
            format!("expected field {}, found {}", F::MODE.name(), mode.name()),
        ));
    }
    build(&doc)
}

/// Canonical text: vertices sorted, edges and ports in label order, devices
/// in stored order.
pub fn emit<F: ExactField>(m: &Multiport<F>) -> String {
    let mut out = format!("field {}\n", F::MODE.name());
    let vertices: Vec<&str> = m.graph().vertices().collect();
    if !vertices.is_empty() {
        out.push_str(&format!("node {}\n", vertices.join(" ")));
    }
    for e in m.graph().edges() {
        let keyword = if m.ports().contains(&e.label) {
            "port"
        } else {
            "edge"
        };
        out.push_str(&format!("{keyword} {} {} {}\n", e.label, e.tail, e.head));
    }
    for b in m.blocks() {
        let names: Vec<String> = b.edges().iter().map(ToString::to_string).collect();
        out.push_str(&format!("device {} edges({})\n", b.name(), names.join(" ")));
        let k = b.edges().len();
        for (row, s) in b.coefficients().iter_rows().zip(b.rhs()) {
            let join = |xs: &[F]| xs.iter().map(F::to_literal).collect::<Vec<_>>().join(" ");
            let mut line = String::from("  row");
            for part in [join(&row[..k]), join(&row[k..]), s.to_literal()] {
                if !line.ends_with("row") {
                    line.push_str(" |");
                }
                if !part.is_empty() {
                    line.push(' ');
                    line.push_str(&part);
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}
