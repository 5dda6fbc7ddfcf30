//! Text and structured file formats for every record the toolkit consumes
//! or emits.
//!
//! Two serializations cover the same data. The compact text format uses
//! `p`-headed records in the DIMACS tradition: `p steiner <n> <m> <k>`
//! with `r`, `s`, and `e` lines; `p rorient <n> <m>` with `d` demand
//! lines; `p nae3|cnf2|cnf2col <X> <M>` with `c` clause lines and
//! optional `k`/`col` lines; `p modified` adds a `y` line; `p catalog`
//! concatenates instance records. The structured format spells one
//! `<field> <values...>` pair per line starting with a `type` line, for
//! machine consumption. Vertices are 0-based and edge ids follow line
//! order, so orientation files are positional bit strings. `#` starts a
//! comment anywhere; parse errors carry 1-based line numbers.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::connectivity::SteinerInstance;
use crate::graph::{
    build_multigraph, canonical_code, Dir, GraphError, MultiGraph, Orientation, VertexId,
};
use crate::hardness::{ColoredTwoCnf, Formula, Literal, ModifiedInstance, NaeFormula, TwoCnf};
use crate::minor::{Catalog, CatalogEntry};
use crate::solver::RInstance;

/// A parse failure, annotated with the 1-based source line when known.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{message}")]
    File { message: String },
}

impl IoError {
    fn at(line: usize, message: impl Into<String>) -> IoError {
        IoError::Line {
            line,
            message: message.into(),
        }
    }

    fn file(message: impl Into<String>) -> IoError {
        IoError::File {
            message: message.into(),
        }
    }
}

/// A comment-aware cursor over non-blank lines, tokenized on whitespace.
struct Cursor<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        let mut lines = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                lines.push((index + 1, tokens));
            }
        }
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &[&'a str])> {
        self.lines.get(self.pos).map(|(n, t)| (*n, t.as_slice()))
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &[&'a str]), IoError> {
        match self.lines.get(self.pos) {
            Some((n, t)) => {
                self.pos += 1;
                Ok((*n, t.as_slice()))
            }
            None => Err(IoError::file(format!(
                "unexpected end of input, expected {expected}"
            ))),
        }
    }

    fn expect_done(&mut self) -> Result<(), IoError> {
        match self.peek() {
            None => Ok(()),
            Some((line, tokens)) => Err(IoError::at(
                line,
                format!("unexpected extra line starting with `{}`", tokens[0]),
            )),
        }
    }
}

fn number(line: usize, token: &str) -> Result<usize, IoError> {
    token
        .parse()
        .map_err(|_| IoError::at(line, format!("expected a number, found `{token}`")))
}

fn numbers(line: usize, tokens: &[&str]) -> Result<Vec<usize>, IoError> {
    tokens.iter().map(|t| number(line, t)).collect()
}

/// Requires the line to be `<key> <n1> ... <nc>` with exactly `count` numbers.
fn keyed_numbers(
    line: usize,
    tokens: &[&str],
    key: &str,
    count: usize,
) -> Result<Vec<usize>, IoError> {
    if tokens[0] != key || tokens.len() != count + 1 {
        return Err(IoError::at(
            line,
            format!("expected `{key}` with {count} value(s)"),
        ));
    }
    numbers(line, &tokens[1..])
}

fn parse_literal(line: usize, token: &str) -> Result<Literal, IoError> {
    let (negated, rest) = match token.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    Ok(Literal {
        variable: number(line, rest)?,
        negated,
    })
}

fn literal_token(lit: Literal) -> String {
    if lit.negated {
        format!("~{}", lit.variable)
    } else {
        lit.variable.to_string()
    }
}

/// Reads `m` edge lines with the given key, returning endpoint pairs and
/// their source lines.
fn edge_lines(
    cur: &mut Cursor,
    key: &str,
    m: usize,
) -> Result<(Vec<(VertexId, VertexId)>, Vec<usize>), IoError> {
    let mut edges = Vec::with_capacity(m);
    let mut lines = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = cur.next(&format!("an `{key}` edge line"))?;
        let nums = keyed_numbers(line, tokens, key, 2)?;
        edges.push((nums[0], nums[1]));
        lines.push(line);
    }
    Ok((edges, lines))
}

/// Builds the graph, attributing loop errors to their edge line.
fn build_graph_checked(
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
    lines: &[usize],
) -> Result<MultiGraph, IoError> {
    build_multigraph(vertex_count, edges).map_err(|e| match e {
        GraphError::Loop { index, vertex } => IoError::at(
            lines[index],
            format!("edge forms a loop at vertex {vertex}"),
        ),
        GraphError::EndpointOutOfRange { index, vertex, .. } => IoError::at(
            lines[index],
            format!("endpoint {vertex} is out of range for {vertex_count} vertices"),
        ),
        other => IoError::file(other.to_string()),
    })
}

fn parse_bits(line: usize, token: &str) -> Result<Vec<Dir>, IoError> {
    token
        .chars()
        .map(|c| match c {
            '0' => Ok(Dir::AsListed),
            '1' => Ok(Dir::Reversed),
            other => Err(IoError::at(
                line,
                format!("expected a string of 0s and 1s, found `{other}`"),
            )),
        })
        .collect()
}

fn bits_of(o: &Orientation) -> String {
    o.dirs()
        .iter()
        .map(|d| if *d == Dir::AsListed { '0' } else { '1' })
        .collect()
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Appends `key` and values as one line; a bare `key` line when empty.
fn push_keyed(out: &mut String, key: &str, values: &str) {
    out.push_str(key);
    if !values.is_empty() {
        out.push(' ');
        out.push_str(values);
    }
    out.push('\n');
}

/// Shared tail of both instance formats: assembles and validates.
fn assemble_instance(
    n: usize,
    k: usize,
    root: VertexId,
    terminals: Vec<VertexId>,
    edges: &[(VertexId, VertexId)],
    lines: &[usize],
) -> Result<SteinerInstance, IoError> {
    let graph = build_graph_checked(n, edges, lines)?;
    SteinerInstance::new(graph, root, terminals, k).map_err(|e| IoError::file(e.to_string()))
}

fn parse_instance_body(
    cur: &mut Cursor,
    n: usize,
    m: usize,
    k: usize,
) -> Result<SteinerInstance, IoError> {
    let (line, tokens) = cur.next("an `r` root line")?;
    let root = keyed_numbers(line, tokens, "r", 1)?[0];
    let (line, tokens) = cur.next("an `s` terminals line")?;
    if tokens[0] != "s" {
        return Err(IoError::at(line, "expected an `s` terminals line"));
    }
    let terminals = numbers(line, &tokens[1..])?;
    let (edges, lines) = edge_lines(cur, "e", m)?;
    assemble_instance(n, k, root, terminals, &edges, &lines)
}

/// Parses the `p steiner` text format.
pub fn parse_instance(text: &str) -> Result<SteinerInstance, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `p steiner <n> <m> <k>` header")?;
    if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "steiner" {
        return Err(IoError::at(line, "expected `p steiner <n> <m> <k>`"));
    }
    let nums = numbers(line, &tokens[2..])?;
    let inst = parse_instance_body(&mut cur, nums[0], nums[1], nums[2])?;
    cur.expect_done()?;
    Ok(inst)
}

/// Serializes to the `p steiner` text format.
pub fn serialize_instance(inst: &SteinerInstance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    push_keyed(
        &mut out,
        "p steiner",
        &format!("{} {} {}", g.vertex_count(), g.edge_count(), inst.k()),
    );
    push_keyed(&mut out, "r", &inst.root().to_string());
    push_keyed(&mut out, "s", &join(inst.terminals().iter().copied()));
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "e", &format!("{u} {v}"));
    }
    out
}

/// Parses the positional orientation file: `o <bits>` with `0` = as
/// listed, `1` = reversed.
pub fn parse_orientation(text: &str) -> Result<Orientation, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("an `o` orientation line")?;
    if tokens[0] != "o" || tokens.len() > 2 {
        return Err(IoError::at(line, "expected `o <bits>`"));
    }
    let dirs = if tokens.len() == 2 {
        parse_bits(line, tokens[1])?
    } else {
        Vec::new()
    };
    cur.expect_done()?;
    Ok(Orientation::new(dirs))
}

/// Serializes the positional orientation file.
pub fn serialize_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    push_keyed(&mut out, "o", &bits_of(o));
    out
}

/// Parses the `p rorient` text format with `d <u> <v> <req>` demand lines.
pub fn parse_rinstance(text: &str) -> Result<RInstance, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `p rorient <n> <m>` header")?;
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "rorient" {
        return Err(IoError::at(line, "expected `p rorient <n> <m>`"));
    }
    let nums = numbers(line, &tokens[2..])?;
    let (n, m) = (nums[0], nums[1]);
    let (edges, lines) = edge_lines(&mut cur, "e", m)?;
    let mut demands = BTreeMap::new();
    while let Some((line, tokens)) = cur.peek() {
        if tokens[0] != "d" {
            break;
        }
        let nums = keyed_numbers(line, tokens, "d", 3)?;
        if demands.insert((nums[0], nums[1]), nums[2]).is_some() {
            return Err(IoError::at(
                line,
                format!("duplicate demand for pair ({}, {})", nums[0], nums[1]),
            ));
        }
        cur.pos += 1;
    }
    cur.expect_done()?;
    let graph = build_graph_checked(n, &edges, &lines)?;
    RInstance::new(graph, demands).map_err(|e| IoError::file(e.to_string()))
}

/// Serializes the `p rorient` text format; demands appear in ascending
/// pair order.
pub fn serialize_rinstance(ri: &RInstance) -> String {
    let g = ri.graph();
    let mut out = String::new();
    push_keyed(
        &mut out,
        "p rorient",
        &format!("{} {}", g.vertex_count(), g.edge_count()),
    );
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "e", &format!("{u} {v}"));
    }
    for (&(u, v), &req) in ri.demands() {
        push_keyed(&mut out, "d", &format!("{u} {v} {req}"));
    }
    out
}

fn clause_lines_nae(cur: &mut Cursor, m: usize) -> Result<Vec<[usize; 3]>, IoError> {
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = cur.next("a `c` clause line")?;
        let nums = keyed_numbers(line, tokens, "c", 3)?;
        clauses.push([nums[0], nums[1], nums[2]]);
    }
    Ok(clauses)
}

fn clause_lines_two(cur: &mut Cursor, m: usize) -> Result<Vec<[Literal; 2]>, IoError> {
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = cur.next("a `c` clause line")?;
        if tokens[0] != "c" || tokens.len() != 3 {
            return Err(IoError::at(line, "expected `c <lit> <lit>`"));
        }
        clauses.push([
            parse_literal(line, tokens[1])?,
            parse_literal(line, tokens[2])?,
        ]);
    }
    Ok(clauses)
}

/// Parses any of the three formula formats, dispatching on the header:
/// `p nae3 <X> <M>`, `p cnf2 <X> <M>` with a `k` line, or
/// `p cnf2col <X> <M>` with `k` and `col` lines. Negated literals carry a
/// `~` prefix.
pub fn parse_formula(text: &str) -> Result<Formula, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `p nae3|cnf2|cnf2col <X> <M>` header")?;
    if tokens.len() != 4 || tokens[0] != "p" {
        return Err(IoError::at(line, "expected `p nae3|cnf2|cnf2col <X> <M>`"));
    }
    let kind = tokens[1];
    let nums = numbers(line, &tokens[2..])?;
    let (x, m) = (nums[0], nums[1]);
    let formula = match kind {
        "nae3" => {
            let clauses = clause_lines_nae(&mut cur, m)?;
            Formula::Nae(NaeFormula::new(x, clauses).map_err(|e| IoError::file(e.to_string()))?)
        }
        "cnf2" => {
            let (line, tokens) = cur.next("a `k <target>` line")?;
            let k = keyed_numbers(line, tokens, "k", 1)?[0];
            let clauses = clause_lines_two(&mut cur, m)?;
            Formula::TwoCnf(TwoCnf::new(x, clauses, k).map_err(|e| IoError::file(e.to_string()))?)
        }
        "cnf2col" => {
            let (line, tokens) = cur.next("a `k <k1> <k2> <k3>` line")?;
            let ks = keyed_numbers(line, tokens, "k", 3)?;
            let (line, tokens) = cur.next("a `col` coloring line")?;
            if tokens[0] != "col" {
                return Err(IoError::at(line, "expected a `col` coloring line"));
            }
            let coloring = numbers(line, &tokens[1..])?;
            let clauses = clause_lines_two(&mut cur, m)?;
            Formula::Colored(
                ColoredTwoCnf::new(x, clauses, coloring, [ks[0], ks[1], ks[2]])
                    .map_err(|e| IoError::file(e.to_string()))?,
            )
        }
        other => {
            return Err(IoError::at(
                line,
                format!("unknown formula kind `{other}`, expected nae3, cnf2, or cnf2col"),
            ))
        }
    };
    cur.expect_done()?;
    Ok(formula)
}

/// Serializes any formula to its text format.
pub fn serialize_formula(f: &Formula) -> String {
    let mut out = String::new();
    match f {
        Formula::Nae(f) => {
            push_keyed(
                &mut out,
                "p nae3",
                &format!("{} {}", f.variable_count(), f.clauses().len()),
            );
            for c in f.clauses() {
                push_keyed(&mut out, "c", &join(c.iter().copied()));
            }
        }
        Formula::TwoCnf(f) => {
            push_keyed(
                &mut out,
                "p cnf2",
                &format!("{} {}", f.variable_count(), f.clauses().len()),
            );
            push_keyed(&mut out, "k", &f.k().to_string());
            for c in f.clauses() {
                push_keyed(
                    &mut out,
                    "c",
                    &format!("{} {}", literal_token(c[0]), literal_token(c[1])),
                );
            }
        }
        Formula::Colored(f) => {
            push_keyed(
                &mut out,
                "p cnf2col",
                &format!("{} {}", f.variable_count(), f.clauses().len()),
            );
            push_keyed(&mut out, "k", &join(f.thresholds()));
            push_keyed(&mut out, "col", &join(f.coloring().iter().copied()));
            for c in f.clauses() {
                push_keyed(
                    &mut out,
                    "c",
                    &format!("{} {}", literal_token(c[0]), literal_token(c[1])),
                );
            }
        }
    }
    out
}

/// Parses the `p modified` text format: the steiner layout plus a `y`
/// line naming the preoriented set.
pub fn parse_modified(text: &str) -> Result<ModifiedInstance, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `p modified <n> <m> <k>` header")?;
    if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "modified" {
        return Err(IoError::at(line, "expected `p modified <n> <m> <k>`"));
    }
    let nums = numbers(line, &tokens[2..])?;
    let (n, m, k) = (nums[0], nums[1], nums[2]);
    let (line, tokens) = cur.next("an `r` root line")?;
    let root = keyed_numbers(line, tokens, "r", 1)?[0];
    let (line, tokens) = cur.next("an `s` terminals line")?;
    if tokens[0] != "s" {
        return Err(IoError::at(line, "expected an `s` terminals line"));
    }
    let terminals = numbers(line, &tokens[1..])?;
    let (line, tokens) = cur.next("a `y` preoriented-set line")?;
    if tokens[0] != "y" {
        return Err(IoError::at(line, "expected a `y` preoriented-set line"));
    }
    let y = numbers(line, &tokens[1..])?;
    let (edges, lines) = edge_lines(&mut cur, "e", m)?;
    cur.expect_done()?;
    let instance = assemble_instance(n, k, root, terminals, &edges, &lines)?;
    ModifiedInstance::new(instance, y).map_err(|e| IoError::file(e.to_string()))
}

/// Serializes the `p modified` text format.
pub fn serialize_modified(mi: &ModifiedInstance) -> String {
    let inst = mi.instance();
    let g = inst.graph();
    let mut out = String::new();
    push_keyed(
        &mut out,
        "p modified",
        &format!("{} {} {}", g.vertex_count(), g.edge_count(), inst.k()),
    );
    push_keyed(&mut out, "r", &inst.root().to_string());
    push_keyed(&mut out, "s", &join(inst.terminals().iter().copied()));
    push_keyed(&mut out, "y", &join(mi.y().iter().copied()));
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "e", &format!("{u} {v}"));
    }
    out
}

/// Recomputes an entry's canonical code under the root-and-terminals
/// fixing that the enumerator uses.
fn entry_code(inst: &SteinerInstance) -> Vec<u8> {
    let mut w = vec![inst.root()];
    w.extend_from_slice(inst.terminals());
    canonical_code(inst.graph(), &w)
}

/// Parses the `p catalog <count> <complete>` format: a header followed by
/// `count` concatenated `p steiner` records in catalog order. Entry codes
/// are recomputed on load.
pub fn parse_catalog(text: &str) -> Result<Catalog, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `p catalog <count> <complete>` header")?;
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "catalog" {
        return Err(IoError::at(line, "expected `p catalog <count> <complete>`"));
    }
    let count = number(line, tokens[2])?;
    let complete = match tokens[3] {
        "0" => false,
        "1" => true,
        other => {
            return Err(IoError::at(
                line,
                format!("expected completeness flag 0 or 1, found `{other}`"),
            ))
        }
    };
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, tokens) = cur.next("a `p steiner` entry header")?;
        if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "steiner" {
            return Err(IoError::at(line, "expected `p steiner <n> <m> <k>`"));
        }
        let nums = numbers(line, &tokens[2..])?;
        let instance = parse_instance_body(&mut cur, nums[0], nums[1], nums[2])?;
        let code = entry_code(&instance);
        entries.push(CatalogEntry { instance, code });
    }
    cur.expect_done()?;
    Ok(Catalog { entries, complete })
}

/// Serializes the `p catalog` format.
pub fn serialize_catalog(catalog: &Catalog) -> String {
    let mut out = String::new();
    push_keyed(
        &mut out,
        "p catalog",
        &format!(
            "{} {}",
            catalog.entries.len(),
            if catalog.complete { 1 } else { 0 }
        ),
    );
    for entry in &catalog.entries {
        out.push_str(&serialize_instance(&entry.instance));
    }
    out
}

/// Scalar-once/list-once bookkeeping for structured records.
struct Fields {
    seen: Vec<&'static str>,
}

impl Fields {
    fn new() -> Fields {
        Fields { seen: Vec::new() }
    }

    fn claim(&mut self, line: usize, key: &'static str) -> Result<(), IoError> {
        if self.seen.contains(&key) {
            return Err(IoError::at(line, format!("duplicate `{key}` line")));
        }
        self.seen.push(key);
        Ok(())
    }

    fn require(&self, key: &'static str, record: &str) -> Result<(), IoError> {
        if self.seen.contains(&key) {
            Ok(())
        } else {
            Err(IoError::file(format!(
                "structured {record} record is missing its `{key}` line"
            )))
        }
    }
}

fn expect_type_line(cur: &mut Cursor, kind: &str) -> Result<(), IoError> {
    let (line, tokens) = cur.next(&format!("a `type {kind}` line"))?;
    if tokens != ["type", kind] {
        return Err(IoError::at(line, format!("expected `type {kind}`")));
    }
    Ok(())
}

/// Serializes an instance to the structured format. Field names:
/// `vertex_count`, `requirement`, `root`, `terminals`, `edge`.
pub fn structured_instance(inst: &SteinerInstance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    push_keyed(&mut out, "type", "instance");
    push_keyed(&mut out, "vertex_count", &g.vertex_count().to_string());
    push_keyed(&mut out, "requirement", &inst.k().to_string());
    push_keyed(&mut out, "root", &inst.root().to_string());
    push_keyed(
        &mut out,
        "terminals",
        &join(inst.terminals().iter().copied()),
    );
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "edge", &format!("{u} {v}"));
    }
    out
}

/// Body shared by the standalone instance parser and catalog entries:
/// reads keys in any order after the `type` line.
fn parse_structured_instance_body(cur: &mut Cursor) -> Result<SteinerInstance, IoError> {
    let mut fields = Fields::new();
    let mut vertex_count = 0;
    let mut requirement = 0;
    let mut root = 0;
    let mut terminals = Vec::new();
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    while let Some((line, tokens)) = cur.peek() {
        match tokens[0] {
            "vertex_count" => {
                fields.claim(line, "vertex_count")?;
                vertex_count = keyed_numbers(line, tokens, "vertex_count", 1)?[0];
            }
            "requirement" => {
                fields.claim(line, "requirement")?;
                requirement = keyed_numbers(line, tokens, "requirement", 1)?[0];
            }
            "root" => {
                fields.claim(line, "root")?;
                root = keyed_numbers(line, tokens, "root", 1)?[0];
            }
            "terminals" => {
                fields.claim(line, "terminals")?;
                terminals = numbers(line, &tokens[1..])?;
            }
            "edge" => {
                let nums = keyed_numbers(line, tokens, "edge", 2)?;
                edges.push((nums[0], nums[1]));
                lines.push(line);
            }
            _ => break,
        }
        cur.pos += 1;
    }
    fields.require("vertex_count", "instance")?;
    fields.require("requirement", "instance")?;
    fields.require("root", "instance")?;
    fields.require("terminals", "instance")?;
    assemble_instance(vertex_count, requirement, root, terminals, &edges, &lines)
}

/// Parses the structured instance format.
pub fn parse_structured_instance(text: &str) -> Result<SteinerInstance, IoError> {
    let mut cur = Cursor::new(text);
    expect_type_line(&mut cur, "instance")?;
    let inst = parse_structured_instance_body(&mut cur)?;
    cur.expect_done()?;
    Ok(inst)
}

/// Serializes an orientation to the structured format. Field names:
/// `dirs`.
pub fn structured_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    push_keyed(&mut out, "type", "orientation");
    push_keyed(&mut out, "dirs", &bits_of(o));
    out
}

/// Parses the structured orientation format.
pub fn parse_structured_orientation(text: &str) -> Result<Orientation, IoError> {
    let mut cur = Cursor::new(text);
    expect_type_line(&mut cur, "orientation")?;
    let (line, tokens) = cur.next("a `dirs` line")?;
    if tokens[0] != "dirs" || tokens.len() > 2 {
        return Err(IoError::at(line, "expected `dirs <bits>`"));
    }
    let dirs = if tokens.len() == 2 {
        parse_bits(line, tokens[1])?
    } else {
        Vec::new()
    };
    cur.expect_done()?;
    Ok(Orientation::new(dirs))
}

/// Serializes a demand instance to the structured format. Field names:
/// `vertex_count`, `edge`, `demand`.
pub fn structured_rinstance(ri: &RInstance) -> String {
    let g = ri.graph();
    let mut out = String::new();
    push_keyed(&mut out, "type", "rinstance");
    push_keyed(&mut out, "vertex_count", &g.vertex_count().to_string());
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "edge", &format!("{u} {v}"));
    }
    for (&(u, v), &req) in ri.demands() {
        push_keyed(&mut out, "demand", &format!("{u} {v} {req}"));
    }
    out
}

/// Parses the structured demand-instance format.
pub fn parse_structured_rinstance(text: &str) -> Result<RInstance, IoError> {
    let mut cur = Cursor::new(text);
    expect_type_line(&mut cur, "rinstance")?;
    let mut fields = Fields::new();
    let mut vertex_count = 0;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    let mut demands = BTreeMap::new();
    while let Some((line, tokens)) = cur.peek() {
        match tokens[0] {
            "vertex_count" => {
                fields.claim(line, "vertex_count")?;
                vertex_count = keyed_numbers(line, tokens, "vertex_count", 1)?[0];
            }
            "edge" => {
                let nums = keyed_numbers(line, tokens, "edge", 2)?;
                edges.push((nums[0], nums[1]));
                lines.push(line);
            }
            "demand" => {
                let nums = keyed_numbers(line, tokens, "demand", 3)?;
                if demands.insert((nums[0], nums[1]), nums[2]).is_some() {
                    return Err(IoError::at(
                        line,
                        format!("duplicate demand for pair ({}, {})", nums[0], nums[1]),
                    ));
                }
            }
            other => {
                return Err(IoError::at(
                    line,
                    format!("unknown rinstance field `{other}`"),
                ))
            }
        }
        cur.pos += 1;
    }
    fields.require("vertex_count", "rinstance")?;
    let graph = build_graph_checked(vertex_count, &edges, &lines)?;
    RInstance::new(graph, demands).map_err(|e| IoError::file(e.to_string()))
}

/// Serializes any formula to the structured format. Field names:
/// `variable_count`, `target`/`targets`, `colors`, `clause`.
pub fn structured_formula(f: &Formula) -> String {
    let mut out = String::new();
    match f {
        Formula::Nae(f) => {
            push_keyed(&mut out, "type", "nae3");
            push_keyed(&mut out, "variable_count", &f.variable_count().to_string());
            for c in f.clauses() {
                push_keyed(&mut out, "clause", &join(c.iter().copied()));
            }
        }
        Formula::TwoCnf(f) => {
            push_keyed(&mut out, "type", "cnf2");
            push_keyed(&mut out, "variable_count", &f.variable_count().to_string());
            push_keyed(&mut out, "target", &f.k().to_string());
            for c in f.clauses() {
                push_keyed(
                    &mut out,
                    "clause",
                    &format!("{} {}", literal_token(c[0]), literal_token(c[1])),
                );
            }
        }
        Formula::Colored(f) => {
            push_keyed(&mut out, "type", "cnf2col");
            push_keyed(&mut out, "variable_count", &f.variable_count().to_string());
            push_keyed(&mut out, "targets", &join(f.thresholds()));
            push_keyed(&mut out, "colors", &join(f.coloring().iter().copied()));
            for c in f.clauses() {
                push_keyed(
                    &mut out,
                    "clause",
                    &format!("{} {}", literal_token(c[0]), literal_token(c[1])),
                );
            }
        }
    }
    out
}

/// Parses the structured formula formats (`type nae3|cnf2|cnf2col`).
pub fn parse_structured_formula(text: &str) -> Result<Formula, IoError> {
    let mut cur = Cursor::new(text);
    let (line, tokens) = cur.next("a `type nae3|cnf2|cnf2col` line")?;
    if tokens.len() != 2 || tokens[0] != "type" {
        return Err(IoError::at(line, "expected `type nae3|cnf2|cnf2col`"));
    }
    let kind = tokens[1].to_string();
    let mut fields = Fields::new();
    let mut variable_count = 0;
    let mut target = 0;
    let mut targets = [0usize; 3];
    let mut colors = Vec::new();
    let mut nae_clauses = Vec::new();
    let mut two_clauses = Vec::new();
    while let Some((line, tokens)) = cur.peek() {
        match tokens[0] {
            "variable_count" => {
                fields.claim(line, "variable_count")?;
                variable_count = keyed_numbers(line, tokens, "variable_count", 1)?[0];
            }
            "target" if kind == "cnf2" => {
                fields.claim(line, "target")?;
                target = keyed_numbers(line, tokens, "target", 1)?[0];
            }
            "targets" if kind == "cnf2col" => {
                fields.claim(line, "targets")?;
                let nums = keyed_numbers(line, tokens, "targets", 3)?;
                targets = [nums[0], nums[1], nums[2]];
            }
            "colors" if kind == "cnf2col" => {
                fields.claim(line, "colors")?;
                colors = numbers(line, &tokens[1..])?;
            }
            "clause" if kind == "nae3" => {
                let nums = keyed_numbers(line, tokens, "clause", 3)?;
                nae_clauses.push([nums[0], nums[1], nums[2]]);
            }
            "clause" => {
                if tokens.len() != 3 {
                    return Err(IoError::at(line, "expected `clause <lit> <lit>`"));
                }
                two_clauses.push([
                    parse_literal(line, tokens[1])?,
                    parse_literal(line, tokens[2])?,
                ]);
            }
            other => return Err(IoError::at(line, format!("unknown {kind} field `{other}`"))),
        }
        cur.pos += 1;
    }
    cur.expect_done()?;
    fields.require("variable_count", &kind)?;
    let formula = match kind.as_str() {
        "nae3" => Formula::Nae(
            NaeFormula::new(variable_count, nae_clauses)
                .map_err(|e| IoError::file(e.to_string()))?,
        ),
        "cnf2" => {
            fields.require("target", "cnf2")?;
            Formula::TwoCnf(
                TwoCnf::new(variable_count, two_clauses, target)
                    .map_err(|e| IoError::file(e.to_string()))?,
            )
        }
        "cnf2col" => {
            fields.require("targets", "cnf2col")?;
            fields.require("colors", "cnf2col")?;
            Formula::Colored(
                ColoredTwoCnf::new(variable_count, two_clauses, colors, targets)
                    .map_err(|e| IoError::file(e.to_string()))?,
            )
        }
        other => {
            return Err(IoError::file(format!(
                "unknown formula kind `{other}`, expected nae3, cnf2, or cnf2col"
            )))
        }
    };
    Ok(formula)
}

/// Serializes a preoriented-boundary instance to the structured format.
/// Field names: the instance fields plus `y`.
pub fn structured_modified(mi: &ModifiedInstance) -> String {
    let inst = mi.instance();
    let g = inst.graph();
    let mut out = String::new();
    push_keyed(&mut out, "type", "modified");
    push_keyed(&mut out, "vertex_count", &g.vertex_count().to_string());
    push_keyed(&mut out, "requirement", &inst.k().to_string());
    push_keyed(&mut out, "root", &inst.root().to_string());
    push_keyed(
        &mut out,
        "terminals",
        &join(inst.terminals().iter().copied()),
    );
    push_keyed(&mut out, "y", &join(mi.y().iter().copied()));
    for &(u, v) in g.edges() {
        push_keyed(&mut out, "edge", &format!("{u} {v}"));
    }
    out
}

/// Parses the structured preoriented-boundary format.
pub fn parse_structured_modified(text: &str) -> Result<ModifiedInstance, IoError> {
    let mut cur = Cursor::new(text);
    expect_type_line(&mut cur, "modified")?;
    let mut fields = Fields::new();
    let mut vertex_count = 0;
    let mut requirement = 0;
    let mut root = 0;
    let mut terminals = Vec::new();
    let mut y = Vec::new();
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    while let Some((line, tokens)) = cur.peek() {
        match tokens[0] {
            "vertex_count" => {
                fields.claim(line, "vertex_count")?;
                vertex_count = keyed_numbers(line, tokens, "vertex_count", 1)?[0];
            }
            "requirement" => {
                fields.claim(line, "requirement")?;
                requirement = keyed_numbers(line, tokens, "requirement", 1)?[0];
            }
            "root" => {
                fields.claim(line, "root")?;
                root = keyed_numbers(line, tokens, "root", 1)?[0];
            }
            "terminals" => {
                fields.claim(line, "terminals")?;
                terminals = numbers(line, &tokens[1..])?;
            }
            "y" => {
                fields.claim(line, "y")?;
                y = numbers(line, &tokens[1..])?;
            }
            "edge" => {
                let nums = keyed_numbers(line, tokens, "edge", 2)?;
                edges.push((nums[0], nums[1]));
                lines.push(line);
            }
            other => {
                return Err(IoError::at(
                    line,
                    format!("unknown modified field `{other}`"),
                ))
            }
        }
        cur.pos += 1;
    }
    cur.expect_done()?;
    fields.require("vertex_count", "modified")?;
    fields.require("requirement", "modified")?;
    fields.require("root", "modified")?;
    fields.require("terminals", "modified")?;
    fields.require("y", "modified")?;
    let instance = assemble_instance(vertex_count, requirement, root, terminals, &edges, &lines)?;
    ModifiedInstance::new(instance, y).map_err(|e| IoError::file(e.to_string()))
}

/// Serializes a catalog to the structured format: a header followed by
/// embedded structured instance records. Field names: `complete`,
/// `entries`, then instance fields per entry.
pub fn structured_catalog(catalog: &Catalog) -> String {
    let mut out = String::new();
    push_keyed(&mut out, "type", "catalog");
    push_keyed(
        &mut out,
        "complete",
        if catalog.complete { "1" } else { "0" },
    );
    push_keyed(&mut out, "entries", &catalog.entries.len().to_string());
    for entry in &catalog.entries {
        out.push_str(&structured_instance(&entry.instance));
    }
    out
}

/// Parses the structured catalog format.
pub fn parse_structured_catalog(text: &str) -> Result<Catalog, IoError> {
    let mut cur = Cursor::new(text);
    expect_type_line(&mut cur, "catalog")?;
    let (line, tokens) = cur.next("a `complete` line")?;
    if tokens.len() != 2 || tokens[0] != "complete" {
        return Err(IoError::at(line, "expected `complete 0|1`"));
    }
    let complete = match tokens[1] {
        "0" => false,
        "1" => true,
        other => {
            return Err(IoError::at(
                line,
                format!("expected completeness flag 0 or 1, found `{other}`"),
            ))
        }
    };
    let (line, tokens) = cur.next("an `entries` line")?;
    let count = keyed_numbers(line, tokens, "entries", 1)?[0];
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        expect_type_line(&mut cur, "instance")?;
        let instance = parse_structured_instance_body(&mut cur)?;
        let code = entry_code(&instance);
        entries.push(CatalogEntry { instance, code });
    }
    cur.expect_done()?;
    Ok(Catalog { entries, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardness::gen_3col_to_modified;
    use crate::minor::enumerate_minimal;

    fn sample_instance() -> SteinerInstance {
        let g = build_multigraph(4, &[(0, 1), (1, 2), (1, 2), (0, 3)]).unwrap();
        SteinerInstance::new(g, 0, vec![2, 3], 2).unwrap()
    }

    #[test]
    fn instance_round_trip() {
        let inst = sample_instance();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn instance_single_edge_example() {
        let text = "p steiner 2 1 1\nr 0\ns 1\ne 0 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph().edge_count(), 1);
        assert_eq!(inst.terminals(), &[1]);
        assert_eq!(serialize_instance(&inst), text);
    }

    #[test]
    fn instance_accepts_comments_and_blank_lines() {
        let text = "# header comment\n\np steiner 2 1 1 # inline\nr 0\ns 1\n\ne 0 1\n";
        assert_eq!(
            parse_instance(text).unwrap(),
            parse_instance("p steiner 2 1 1\nr 0\ns 1\ne 0 1").unwrap()
        );
    }

    #[test]
    fn instance_errors_carry_line_numbers() {
        let missing = "p steiner 3 2 1\nr 0\ns 2\ne 0 1\n";
        assert!(matches!(parse_instance(missing), Err(IoError::File { .. })));
        let extra = "p steiner 2 1 1\nr 0\ns 1\ne 0 1\ne 1 0\n";
        assert_eq!(
            parse_instance(extra),
            Err(IoError::Line {
                line: 5,
                message: "unexpected extra line starting with `e`".into()
            })
        );
        let loops = "p steiner 2 2 1\nr 0\ns 1\ne 0 1\ne 1 1\n";
        assert_eq!(
            parse_instance(loops),
            Err(IoError::Line {
                line: 5,
                message: "edge forms a loop at vertex 1".into()
            })
        );
        let bad_number = "p steiner 2 x 1\nr 0\ns 1\n";
        assert_eq!(
            parse_instance(bad_number),
            Err(IoError::Line {
                line: 1,
                message: "expected a number, found `x`".into()
            })
        );
    }

    #[test]
    fn instance_rejects_root_terminal_overlap() {
        let text = "p steiner 2 1 1\nr 0\ns 0 1\ne 0 1\n";
        assert!(matches!(parse_instance(text), Err(IoError::File { .. })));
    }

    #[test]
    fn orientation_round_trip() {
        let o = Orientation::new(vec![Dir::AsListed, Dir::Reversed, Dir::Reversed]);
        let text = serialize_orientation(&o);
        assert_eq!(text, "o 011\n");
        assert_eq!(parse_orientation(&text).unwrap(), o);
        let empty = Orientation::new(Vec::new());
        assert_eq!(
            parse_orientation(&serialize_orientation(&empty)).unwrap(),
            empty
        );
    }

    #[test]
    fn orientation_rejects_bad_characters() {
        assert_eq!(
            parse_orientation("o 01x\n"),
            Err(IoError::Line {
                line: 1,
                message: "expected a string of 0s and 1s, found `x`".into()
            })
        );
    }

    fn sample_rinstance() -> RInstance {
        let g = build_multigraph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut demands = BTreeMap::new();
        demands.insert((0, 2), 1);
        demands.insert((2, 0), 1);
        RInstance::new(g, demands).unwrap()
    }

    #[test]
    fn rinstance_round_trip() {
        let ri = sample_rinstance();
        let text = serialize_rinstance(&ri);
        assert_eq!(parse_rinstance(&text).unwrap(), ri);
    }

    #[test]
    fn rinstance_rejects_duplicate_demand() {
        let text = "p rorient 2 1\ne 0 1\nd 0 1 1\nd 0 1 2\n";
        assert_eq!(
            parse_rinstance(text),
            Err(IoError::Line {
                line: 4,
                message: "duplicate demand for pair (0, 1)".into()
            })
        );
    }

    fn sample_formulas() -> Vec<Formula> {
        vec![
            Formula::Nae(NaeFormula::new(3, vec![[0, 1, 2], [0, 0, 1]]).unwrap()),
            Formula::TwoCnf(
                TwoCnf::new(
                    2,
                    vec![
                        [Literal::pos(0), Literal::neg(1)],
                        [Literal::neg(0), Literal::pos(1)],
                    ],
                    2,
                )
                .unwrap(),
            ),
            Formula::Colored(
                ColoredTwoCnf::new(
                    4,
                    vec![
                        [Literal::pos(0), Literal::pos(1)],
                        [Literal::pos(2), Literal::neg(3)],
                    ],
                    vec![1, 2],
                    [1, 1, 0],
                )
                .unwrap(),
            ),
        ]
    }

    #[test]
    fn formula_round_trips() {
        for f in sample_formulas() {
            let text = serialize_formula(&f);
            assert_eq!(parse_formula(&text).unwrap(), f, "text: {text}");
            let structured = structured_formula(&f);
            assert_eq!(
                parse_structured_formula(&structured).unwrap(),
                f,
                "structured: {structured}"
            );
        }
    }

    #[test]
    fn formula_negation_prefix() {
        let text = "p cnf2 2 1\nk 1\nc ~0 1\n";
        let f = parse_formula(text).unwrap();
        match &f {
            Formula::TwoCnf(f) => {
                assert_eq!(f.clauses()[0][0], Literal::neg(0));
                assert_eq!(f.clauses()[0][1], Literal::pos(1));
            }
            _ => panic!("expected cnf2"),
        }
        assert_eq!(serialize_formula(&f), text);
    }

    fn sample_modified() -> ModifiedInstance {
        let f = ColoredTwoCnf::new(
            2,
            vec![
                [Literal::pos(0), Literal::pos(1)],
                [Literal::neg(0), Literal::neg(1)],
            ],
            vec![1, 2],
            [1, 1, 0],
        )
        .unwrap();
        gen_3col_to_modified(&f).unwrap()
    }

    #[test]
    fn modified_round_trip() {
        let mi = sample_modified();
        let text = serialize_modified(&mi);
        assert_eq!(parse_modified(&text).unwrap(), mi);
        let structured = structured_modified(&mi);
        assert_eq!(parse_structured_modified(&structured).unwrap(), mi);
    }

    #[test]
    fn catalog_round_trip_preserves_codes() {
        let catalog = enumerate_minimal(1, 2, 6, 1 << 22);
        assert!(!catalog.entries.is_empty());
        let text = serialize_catalog(&catalog);
        assert_eq!(parse_catalog(&text).unwrap(), catalog);
        let structured = structured_catalog(&catalog);
        assert_eq!(parse_structured_catalog(&structured).unwrap(), catalog);
    }

    #[test]
    fn structured_instance_round_trip_any_order() {
        let inst = sample_instance();
        let canonical = structured_instance(&inst);
        assert_eq!(parse_structured_instance(&canonical).unwrap(), inst);
        let reordered = "type instance\nroot 0\nterminals 2 3\nedge 0 1\nedge 1 2\nedge 1 2\nedge 0 3\nvertex_count 4\nrequirement 2\n";
        assert_eq!(parse_structured_instance(reordered).unwrap(), inst);
    }

    #[test]
    fn structured_instance_rejects_duplicates_and_gaps() {
        let duplicate = "type instance\nvertex_count 2\nvertex_count 2\nrequirement 1\nroot 0\nterminals 1\ne 0 1\n";
        assert!(matches!(
            parse_structured_instance(duplicate),
            Err(IoError::Line { line: 3, .. })
        ));
        let missing = "type instance\nvertex_count 2\nroot 0\nterminals 1\n";
        assert!(matches!(
            parse_structured_instance(missing),
            Err(IoError::File { .. })
        ));
    }

    #[test]
    fn structured_rinstance_round_trip() {
        let ri = sample_rinstance();
        let text = structured_rinstance(&ri);
        assert_eq!(parse_structured_rinstance(&text).unwrap(), ri);
    }

    #[test]
    fn structured_orientation_round_trip() {
        let o = Orientation::new(vec![Dir::Reversed, Dir::AsListed]);
        let text = structured_orientation(&o);
        assert_eq!(text, "type orientation\ndirs 10\n");
        assert_eq!(parse_structured_orientation(&text).unwrap(), o);
    }
}
