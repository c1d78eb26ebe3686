//! Quiver description files.
//!
//! The text format is line oriented. Blank lines and lines starting with `#`
//! are ignored; every other line is one declaration:
//!
//! ```text
//! quiver 1                      format version, must come first
//! vertices <n>                  vertices are 1..n
//! arrow <name> <from> <to>      one arrow; names are unique
//! pathset <name> = <path>, ...  a named set of paths (possibly empty)
//! poly <name> = <expr>          a multilinear polynomial
//! ```
//!
//! A path is either `e<i>` (the trivial path at vertex `i`) or arrow names
//! separated by spaces, in composition order: `α1 β β`. Arrow names may use
//! any characters except whitespace, `,`, `=` and `#`, and may not have the
//! form `e<digits>`. Polynomial expressions use the grammar of
//! [`quiverpi::syntax`]. The names `all` and `arrows` are reserved for the
//! built-in path sets.
//!
//! The JSON form carries the same data:
//!
//! ```json
//! {"version": 1, "vertices": 2,
//!  "arrows": [{"name": "α", "from": 1, "to": 2}],
//!  "pathsets": [{"name": "pi", "paths": ["e1", ["α"]]}],
//!  "polys": [{"name": "f", "expr": "comm(1,2)*x(3)"}]}
//! ```

use std::fmt;

use quiverpi::{parse_poly, MultilinearPoly, Path, PathSet, Quiver};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;
pub const RESERVED_PATHSETS: [&str; 2] = ["all", "arrows"];

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DocError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPathSet {
    pub name: String,
    pub paths: Vec<Path>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPoly {
    pub name: String,
    /// Source text, kept verbatim for emission.
    pub expr: String,
    pub poly: MultilinearPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDocument {
    pub version: u32,
    pub quiver: Quiver,
    pub arrows: Vec<ArrowDecl>,
    pub pathsets: Vec<NamedPathSet>,
    pub polys: Vec<NamedPoly>,
}

impl QuiverDocument {
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// A named path set, including the built-in `all` (trivial paths and
    /// arrows) and `arrows`.
    pub fn pathset(&self, name: &str) -> Option<PathSet> {
        match name {
            "all" => Some(PathSet::all(&self.quiver)),
            "arrows" => Some(PathSet::arrows(&self.quiver)),
            _ => self
                .pathsets
                .iter()
                .find(|p| p.name == name)
                .map(|p| PathSet::new(&self.quiver, p.paths.iter().cloned()).expect("validated on parse")),
        }
    }

    /// The first declared path set, or `all` when there is none.
    pub fn default_pathset_name(&self) -> &str {
        self.pathsets.first().map_or("all", |p| p.name.as_str())
    }

    pub fn poly(&self, name: &str) -> Option<&NamedPoly> {
        self.polys.iter().find(|p| p.name == name)
    }

    /// Canonical text form; `parse(emit(d)) == d`.
    pub fn emit(&self) -> String {
        let mut s = format!("quiver {}\nvertices {}\n", self.version, self.vertex_count());
        for a in &self.arrows {
            s.push_str(&format!("arrow {} {} {}\n", a.name, a.from, a.to));
        }
        for p in &self.pathsets {
            let labels: Vec<String> = p.paths.iter().map(|x| self.quiver.label(x)).collect();
            if labels.is_empty() {
                s.push_str(&format!("pathset {} =\n", p.name));
            } else {
                s.push_str(&format!("pathset {} = {}\n", p.name, labels.join(", ")));
            }
        }
        for p in &self.polys {
            s.push_str(&format!("poly {} = {}\n", p.name, p.expr));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDocument {
            version: self.version,
            vertices: self.vertex_count(),
            arrows: self.arrows.iter().map(|a| JsonArrow { name: a.name.clone(), from: a.from, to: a.to }).collect(),
            pathsets: self
                .pathsets
                .iter()
                .map(|p| JsonPathSet {
                    name: p.name.clone(),
                    paths: p
                        .paths
                        .iter()
                        .map(|x| match x {
                            Path::Trivial(v) => JsonPath::Trivial(format!("e{v}")),
                            Path::Arrows { arrows, .. } => JsonPath::Arrows(
                                arrows.iter().map(|&a| self.quiver.arrow(a).name.clone()).collect(),
                            ),
                        })
                        .collect(),
                })
                .collect(),
            polys: self.polys.iter().map(|p| JsonPoly { name: p.name.clone(), expr: p.expr.clone() }).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
    }
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, DocError> {
    Err(DocError { line, column, message: message.into() })
}

/// Byte offset to 1-based character column.
fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn is_trivial_name(s: &str) -> bool {
    s.strip_prefix('e').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | '=' | '#'))
}

/// Whitespace-separated words with their byte offsets.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

/// Builder state while reading declarations in order.
struct Reader {
    version: Option<u32>,
    vertices: Option<usize>,
    arrows: Vec<(ArrowDecl, usize)>,
    quiver: Option<Quiver>,
    pathsets: Vec<(NamedPathSet, usize)>,
    polys: Vec<(NamedPoly, usize)>,
}

impl Reader {
    /// The quiver is fixed once the first path set or poly is read.
    fn quiver(&mut self, line: usize) -> Result<&Quiver, DocError> {
        if self.quiver.is_none() {
            let Some(n) = self.vertices else { return err(line, 1, "missing 'vertices' declaration") };
            let q = Quiver::with_names(n, self.arrows.iter().map(|(a, _)| (a.name.clone(), a.from, a.to)))
                .map_err(|e| DocError { line, column: 1, message: e.to_string() })?;
            self.quiver = Some(q);
        }
        Ok(self.quiver.as_ref().unwrap())
    }

    fn check_fresh_name(&self, kind: &str, name: &str, line: usize, column: usize) -> Result<(), DocError> {
        let earlier = match kind {
            "pathset" => self.pathsets.iter().find(|(p, _)| p.name == name).map(|(_, l)| *l),
            _ => self.polys.iter().find(|(p, _)| p.name == name).map(|(_, l)| *l),
        };
        if let Some(first) = earlier {
            return err(line, column, format!("duplicate {kind} name '{name}': first defined on line {first}"));
        }
        if kind == "pathset" && RESERVED_PATHSETS.contains(&name) {
            return err(line, column, format!("'{name}' is a reserved path set name"));
        }
        Ok(())
    }
}

/// Splits `pathset <name> = ...` / `poly <name> = ...` into the name and the
/// right-hand side with its byte offset.
fn named_rhs(raw: &str, keyword_end: usize, lineno: usize) -> Result<(usize, &str, usize, &str), DocError> {
    let Some(eq) = raw.find('=') else { return err(lineno, column_of(raw, raw.len()), "expected '='") };
    let head = &raw[keyword_end..eq];
    let name_words = words(head);
    let [(off, name)] = name_words.as_slice() else {
        return err(lineno, column_of(raw, keyword_end), "expected exactly one name before '='");
    };
    Ok((keyword_end + off, name, eq + 1, &raw[eq + 1..]))
}

fn parse_usize(word: &str, line: usize, column: usize, what: &str) -> Result<usize, DocError> {
    word.parse().or_else(|_| err(line, column, format!("expected {what}, found '{word}'")))
}

pub fn parse_document(text: &str) -> Result<QuiverDocument, DocError> {
    let mut r = Reader { version: None, vertices: None, arrows: Vec::new(), quiver: None, pathsets: Vec::new(), polys: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ws = words(raw);
        let (kw_off, keyword) = ws[0];
        let col = |byte: usize| column_of(raw, byte);
        if r.version.is_none() && keyword != "quiver" {
            return err(lineno, col(kw_off), "document must start with 'quiver <version>'");
        }
        match keyword {
            "quiver" => {
                if r.version.is_some() {
                    return err(lineno, col(kw_off), "repeated 'quiver' header");
                }
                let [_, (off, v)] = ws.as_slice() else { return err(lineno, col(kw_off), "expected 'quiver <version>'") };
                let v = parse_usize(v, lineno, col(*off), "a version number")?;
                if v != FORMAT_VERSION as usize {
                    return err(lineno, col(*off), format!("unsupported format version {v}"));
                }
                r.version = Some(FORMAT_VERSION);
            }
            "vertices" => {
                if r.vertices.is_some() {
                    return err(lineno, col(kw_off), "repeated 'vertices' declaration");
                }
                let [_, (off, v)] = ws.as_slice() else { return err(lineno, col(kw_off), "expected 'vertices <n>'") };
                let n = parse_usize(v, lineno, col(*off), "a vertex count")?;
                if n == 0 {
                    return err(lineno, col(*off), "a quiver needs at least one vertex");
                }
                r.vertices = Some(n);
            }
            "arrow" => {
                let Some(n) = r.vertices else { return err(lineno, col(kw_off), "'arrow' before 'vertices'") };
                if r.quiver.is_some() {
                    return err(lineno, col(kw_off), "arrows must be declared before path sets and polynomials");
                }
                let [_, (noff, name), (foff, from), (toff, to)] = ws.as_slice() else {
                    return err(lineno, col(kw_off), "expected 'arrow <name> <from> <to>'");
                };
                if !valid_name(name) || is_trivial_name(name) {
                    return err(lineno, col(*noff), format!("invalid arrow name '{name}'"));
                }
                if let Some((_, first)) = r.arrows.iter().find(|(a, _)| a.name == *name) {
                    return err(
                        lineno,
                        col(*noff),
                        format!("duplicate arrow name '{name}': first defined on line {first}, again on line {lineno}"),
                    );
                }
                let mut ends = [0usize; 2];
                for (slot, (off, w)) in ends.iter_mut().zip([(foff, from), (toff, to)]) {
                    let v = parse_usize(w, lineno, col(*off), "a vertex")?;
                    if v == 0 || v > n {
                        return err(lineno, col(*off), format!("vertex {v} outside 1..={n}"));
                    }
                    *slot = v;
                }
                r.arrows.push((ArrowDecl { name: name.to_string(), from: ends[0], to: ends[1] }, lineno));
            }
            "pathset" => {
                let (noff, name, rhs_off, rhs) = named_rhs(raw, kw_off + keyword.len(), lineno)?;
                if !valid_name(name) {
                    return err(lineno, col(noff), format!("invalid path set name '{name}'"));
                }
                r.check_fresh_name("pathset", name, lineno, col(noff))?;
                let q = r.quiver(lineno)?.clone();
                let mut paths: Vec<Path> = Vec::new();
                if !rhs.trim().is_empty() {
                    let mut start = 0;
                    for item in rhs.split(',') {
                        let item_off = rhs_off + start;
                        start += item.len() + 1;
                        let p = parse_path(&q, raw, item, item_off, lineno)?;
                        if paths.contains(&p) {
                            return err(lineno, col(item_off + item.len() - item.trim_start().len()), "repeated path");
                        }
                        paths.push(p);
                    }
                }
                r.pathsets.push((NamedPathSet { name: name.to_string(), paths }, lineno));
            }
            "poly" => {
                let (noff, name, rhs_off, rhs) = named_rhs(raw, kw_off + keyword.len(), lineno)?;
                if !valid_name(name) {
                    return err(lineno, col(noff), format!("invalid polynomial name '{name}'"));
                }
                r.check_fresh_name("poly", name, lineno, col(noff))?;
                let lead = rhs.len() - rhs.trim_start().len();
                let expr = rhs.trim();
                let poly = parse_poly(expr).map_err(|e| DocError {
                    line: lineno,
                    column: col(rhs_off + lead) + e.column - 1,
                    message: e.message,
                })?;
                r.polys.push((NamedPoly { name: name.to_string(), expr: expr.to_string(), poly }, lineno));
            }
            other => return err(lineno, col(kw_off), format!("unknown declaration '{other}'")),
        }
    }
    let last = text.lines().count().max(1);
    if r.version.is_none() {
        return err(1, 1, "empty document");
    }
    let quiver = r.quiver(last)?.clone();
    Ok(QuiverDocument {
        version: FORMAT_VERSION,
        quiver,
        arrows: r.arrows.into_iter().map(|(a, _)| a).collect(),
        pathsets: r.pathsets.into_iter().map(|(p, _)| p).collect(),
        polys: r.polys.into_iter().map(|(p, _)| p).collect(),
    })
}

/// One comma-separated path item starting at byte `offset` of `raw`.
fn parse_path(q: &Quiver, raw: &str, item: &str, offset: usize, line: usize) -> Result<Path, DocError> {
    let ws: Vec<(usize, &str)> = words(item).into_iter().map(|(o, w)| (offset + o, w)).collect();
    let col = |byte: usize| column_of(raw, byte);
    match ws.as_slice() {
        [] => err(line, col(offset), "empty path"),
        [(off, w)] if is_trivial_name(w) => {
            let v: usize = w[1..].parse().or_else(|_| err(line, col(*off), "bad vertex"))?;
            q.trivial(v).map_err(|e| DocError { line, column: col(*off), message: e.to_string() })
        }
        _ => names_to_path(q, &ws, line, col),
    }
}

fn names_to_path(
    q: &Quiver,
    ws: &[(usize, &str)],
    line: usize,
    col: impl Fn(usize) -> usize,
) -> Result<Path, DocError> {
    let mut ids = Vec::with_capacity(ws.len());
    for (step, (off, w)) in ws.iter().enumerate() {
        if is_trivial_name(w) {
            return err(line, col(*off), format!("trivial path '{w}' inside a longer path"));
        }
        let Some(id) = q.arrow_by_name(w) else { return err(line, col(*off), format!("unknown arrow '{w}'")) };
        if let Some(&prev) = ids.last() {
            if q.arrow(prev).target != q.arrow(id).source {
                return err(line, col(*off), format!("non-composable at step {}", step + 1));
            }
        }
        ids.push(id);
    }
    Ok(q.path(&ids).expect("checked step by step"))
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    version: u32,
    vertices: usize,
    #[serde(default)]
    arrows: Vec<JsonArrow>,
    #[serde(default)]
    pathsets: Vec<JsonPathSet>,
    #[serde(default)]
    polys: Vec<JsonPoly>,
}

#[derive(Serialize, Deserialize)]
struct JsonArrow {
    name: String,
    from: usize,
    to: usize,
}

#[derive(Serialize, Deserialize)]
struct JsonPathSet {
    name: String,
    paths: Vec<JsonPath>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonPath {
    Trivial(String),
    Arrows(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    name: String,
    expr: String,
}

/// Reads the JSON form by translating it to the text form, so both share
/// one set of checks. Positions in errors refer to the translated text.
pub fn parse_json_document(text: &str) -> Result<QuiverDocument, DocError> {
    let doc: JsonDocument = serde_json::from_str(text)
        .map_err(|e| DocError { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut s = format!("quiver {}\nvertices {}\n", doc.version, doc.vertices);
    for a in &doc.arrows {
        s.push_str(&format!("arrow {} {} {}\n", a.name, a.from, a.to));
    }
    for p in &doc.pathsets {
        let items: Vec<String> = p
            .paths
            .iter()
            .map(|x| match x {
                JsonPath::Trivial(t) => t.clone(),
                JsonPath::Arrows(names) => names.join(" "),
            })
            .collect();
        s.push_str(&format!("pathset {} = {}\n", p.name, items.join(", ")));
    }
    for p in &doc.polys {
        s.push_str(&format!("poly {} = {}\n", p.name, p.expr));
    }
    parse_document(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = "quiver 1\nvertices 2\narrow α 1 2\npathset pi = e1, α\n";

    #[test]
    fn round_trip() {
        let doc = parse_document(EXAMPLE1).unwrap();
        assert_eq!(doc.emit(), EXAMPLE1);
        assert_eq!(parse_document(&doc.emit()).unwrap(), doc);
        assert_eq!(parse_json_document(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn comments_and_spacing_normalize() {
        let text = "# A_2\nquiver 1\n\nvertices   2\narrow α 1 2\npathset pi =e1 ,  α\npoly f =  comm(1,2)*x(3)  \n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.emit(), format!("{EXAMPLE1}poly f = comm(1,2)*x(3)\n"));
        assert_eq!(doc.poly("f").unwrap().poly.degree(), 3);
    }

    #[test]
    fn non_composable_path() {
        let e = parse_document("quiver 1\nvertices 2\narrow α 1 2\npathset bad = α α\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 17));
        assert_eq!(e.message, "non-composable at step 2");
    }

    #[test]
    fn duplicate_arrow_names_both_lines() {
        let e = parse_document("quiver 1\nvertices 2\narrow α 1 2\narrow α 2 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("line 3") && e.message.contains("line 4"), "{e}");
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("vertices 2\n", 1, 1),
            ("quiver 1\nvertices 2\narrow a 1 3\n", 3, 11),
            ("quiver 1\nvertices 2\npathset p = x\n", 3, 13),
            ("quiver 1\nvertices 2\npoly f = comm(1,1)\n", 3, 10),
            ("quiver 1\nvertices 2\npathset all = e1\n", 3, 9),
            ("quiver 1\nvertices 2\narrow e1 1 2\n", 3, 7),
            ("quiver 2\n", 1, 8),
        ];
        for (text, line, column) in cases {
            let e = parse_document(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        }
    }

    #[test]
    fn pathsets_and_defaults() {
        let doc = parse_document("quiver 1\nvertices 2\narrow a 1 2\n").unwrap();
        assert_eq!(doc.default_pathset_name(), "all");
        assert_eq!(doc.pathset("all").unwrap().paths().len(), 3);
        assert_eq!(doc.pathset("arrows").unwrap().paths().len(), 1);
        assert!(doc.pathset("pi").is_none());
        let empty = parse_document("quiver 1\nvertices 1\npathset none =\n").unwrap();
        assert!(empty.pathset("none").unwrap().is_empty());
        assert_eq!(empty.emit(), "quiver 1\nvertices 1\npathset none =\n");
    }
}
