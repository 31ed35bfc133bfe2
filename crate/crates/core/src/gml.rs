//! A small GML reader: key/value lists with `[ ... ]` nesting and `#` line
//! comments. The generic tree produced here is interpreted by the graph,
//! rule and group-registry readers.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphBuilder, GraphError, LabeledGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GmlError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("at {pos}: {msg}")]
    Structure { pos: Pos, msg: String },
    #[error("at {pos}: {source}")]
    Graph {
        pos: Pos,
        #[source]
        source: GraphError,
    },
}

impl GmlError {
    pub(crate) fn structure(pos: Pos, msg: impl Into<String>) -> Self {
        GmlError::Structure { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: Value,
    pub pos: Pos,
}

impl Entry {
    pub fn as_int(&self) -> Result<i64, GmlError> {
        match self.value {
            Value::Int(i) => Ok(i),
            _ => Err(GmlError::structure(
                self.pos,
                format!("`{}` expects an integer", self.key),
            )),
        }
    }

    pub fn as_str(&self) -> Result<&str, GmlError> {
        match &self.value {
            Value::Str(s) => Ok(s),
            _ => Err(GmlError::structure(
                self.pos,
                format!("`{}` expects a string", self.key),
            )),
        }
    }

    pub fn as_list(&self) -> Result<&[Entry], GmlError> {
        match &self.value {
            Value::List(l) => Ok(l),
            _ => Err(GmlError::structure(self.pos, format!("`{}` expects a list", self.key))),
        }
    }
}

/// Looks up the single entry named `key` in a list.
pub(crate) fn field<'a>(list: &'a [Entry], key: &str) -> Option<&'a Entry> {
    list.iter().find(|e| e.key == key)
}

pub(crate) fn required<'a>(list: &'a [Entry], key: &str, at: Pos) -> Result<&'a Entry, GmlError> {
    field(list, key).ok_or_else(|| GmlError::structure(at, format!("missing `{key}`")))
}

struct Lexer<'a> {
    src: &'a [u8],
    i: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Key(String),
    Int(i64),
    Float(f64),
    Str(String),
    Open,
    Close,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.as_bytes(),
            i: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.i];
        self.i += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn skip_trivia(&mut self) {
        while self.i < self.src.len() {
            match self.src[self.i] {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'#' => {
                    while self.i < self.src.len() && self.src[self.i] != b'\n' {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn next(&mut self) -> Result<Option<(Tok, Pos)>, GmlError> {
        self.skip_trivia();
        if self.i >= self.src.len() {
            return Ok(None);
        }
        let pos = self.pos();
        let c = self.src[self.i];
        let tok = match c {
            b'[' => {
                self.bump();
                Tok::Open
            }
            b']' => {
                self.bump();
                Tok::Close
            }
            // bare comparison operators, as in `op =`
            b'=' | b'!' | b'<' | b'>' => {
                self.bump();
                Tok::Str((c as char).to_string())
            }
            b'"' => {
                self.bump();
                let start = self.i;
                loop {
                    if self.i >= self.src.len() {
                        return Err(GmlError::Syntax {
                            pos,
                            msg: "unterminated string".into(),
                        });
                    }
                    if self.src[self.i] == b'"' {
                        break;
                    }
                    self.bump();
                }
                let s = std::str::from_utf8(&self.src[start..self.i])
                    .expect("input is a str")
                    .to_string();
                self.bump();
                Tok::Str(s)
            }
            b'-' | b'+' | b'.' | b'0'..=b'9' => {
                let start = self.i;
                self.bump();
                while self.i < self.src.len()
                    && matches!(self.src[self.i], b'0'..=b'9' | b'.' | b'e' | b'E' | b'-' | b'+')
                {
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.i]).expect("ascii");
                if let Ok(i) = text.parse::<i64>() {
                    Tok::Int(i)
                } else if let Ok(f) = text.parse::<f64>() {
                    Tok::Float(f)
                } else {
                    return Err(GmlError::Syntax {
                        pos,
                        msg: format!("malformed number `{text}`"),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.src.len() && (self.src[self.i].is_ascii_alphanumeric() || self.src[self.i] == b'_')
                {
                    self.bump();
                }
                Tok::Key(
                    std::str::from_utf8(&self.src[start..self.i])
                        .expect("ascii")
                        .to_string(),
                )
            }
            other => {
                return Err(GmlError::Syntax {
                    pos,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(Some((tok, pos)))
    }
}

/// Entries of an open list and the key that opened it.
type Frame = (Vec<Entry>, Option<(String, Pos)>);

/// Parses GML text into its top-level list of entries.
pub fn parse_tree(text: &str) -> Result<Vec<Entry>, GmlError> {
    let mut lx = Lexer::new(text);
    let mut stack: Vec<Frame> = vec![(Vec::new(), None)];
    while let Some((tok, pos)) = lx.next()? {
        match tok {
            Tok::Key(key) => {
                let Some((vtok, vpos)) = lx.next()? else {
                    return Err(GmlError::Syntax {
                        pos,
                        msg: format!("`{key}` has no value"),
                    });
                };
                let value = match vtok {
                    Tok::Int(i) => Value::Int(i),
                    Tok::Float(f) => Value::Float(f),
                    Tok::Str(s) => Value::Str(s),
                    Tok::Open => {
                        stack.push((Vec::new(), Some((key, pos))));
                        continue;
                    }
                    Tok::Key(k) => {
                        return Err(GmlError::Syntax {
                            pos: vpos,
                            msg: format!("expected a value for `{key}`, found `{k}`"),
                        })
                    }
                    Tok::Close => {
                        return Err(GmlError::Syntax {
                            pos: vpos,
                            msg: format!("expected a value for `{key}`, found `]`"),
                        })
                    }
                };
                stack.last_mut().expect("root").0.push(Entry { key, value, pos });
            }
            Tok::Close => {
                if stack.len() == 1 {
                    return Err(GmlError::Syntax {
                        pos,
                        msg: "unbalanced `]`".into(),
                    });
                }
                let (list, head) = stack.pop().expect("checked");
                let (key, kpos) = head.expect("non-root frame has a key");
                stack.last_mut().expect("root").0.push(Entry {
                    key,
                    value: Value::List(list),
                    pos: kpos,
                });
            }
            _ => {
                return Err(GmlError::Syntax {
                    pos,
                    msg: "expected a key".into(),
                })
            }
        }
    }
    if stack.len() != 1 {
        let (_, head) = stack.pop().expect("nonempty");
        let (key, pos) = head.expect("non-root");
        return Err(GmlError::Syntax {
            pos,
            msg: format!("unclosed `{key} [`"),
        });
    }
    Ok(stack.pop().expect("root").0)
}

/// Adds the `node` and `edge` entries of a GML list to a builder, mapping
/// external ids to dense ids in first-appearance order.
pub(crate) fn read_graph_entries(list: &[Entry], at: Pos) -> Result<LabeledGraph, GmlError> {
    let mut b = GraphBuilder::new();
    let mut ids = std::collections::HashMap::new();
    for e in list.iter().filter(|e| e.key == "node") {
        let body = e.as_list()?;
        let id = required(body, "id", e.pos)?.as_int()?;
        let label = required(body, "label", e.pos)?.as_str()?;
        if label.is_empty() {
            return Err(GmlError::Graph {
                pos: e.pos,
                source: GraphError::EmptyLabel,
            });
        }
        if ids.contains_key(&id) {
            return Err(GmlError::Graph {
                pos: e.pos,
                source: GraphError::DuplicateNode(id),
            });
        }
        ids.insert(id, b.add_node_with_external(label, id));
    }
    for e in list.iter().filter(|e| e.key == "edge") {
        let body = e.as_list()?;
        let s = required(body, "source", e.pos)?.as_int()?;
        let t = required(body, "target", e.pos)?.as_int()?;
        let label = required(body, "label", e.pos)?.as_str()?;
        if label.is_empty() {
            return Err(GmlError::Graph {
                pos: e.pos,
                source: GraphError::EmptyLabel,
            });
        }
        let lookup = |x: i64| {
            ids.get(&x).copied().ok_or(GmlError::Graph {
                pos: e.pos,
                source: GraphError::UnknownNode(x),
            })
        };
        let (u, v) = (lookup(s)?, lookup(t)?);
        b.add_edge(u, v, label)
            .map_err(|source| GmlError::Graph { pos: e.pos, source })?;
    }
    let _ = at;
    Ok(b.build())
}

/// Reads `graph [ node [...] edge [...] ]`.
pub fn parse_gml_graph(text: &str) -> Result<LabeledGraph, GmlError> {
    let top = parse_tree(text)?;
    let origin = Pos { line: 1, col: 1 };
    let g = required(&top, "graph", origin)?;
    read_graph_entries(g.as_list()?, g.pos)
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

/// Writes a graph with dense ids, nodes ascending, edges in stored order.
pub fn write_gml_graph(g: &LabeledGraph) -> String {
    let mut out = String::from("graph [\n");
    write_graph_body(g, &mut out, "  ");
    out.push(']');
    out
}

pub(crate) fn write_graph_body(g: &LabeledGraph, out: &mut String, indent: &str) {
    for v in g.nodes() {
        let _ = writeln!(out, "{indent}node [ id {v} label {} ]", quote(g.label(v)));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "{indent}edge [ source {} target {} label {} ]",
            e.a,
            e.b,
            quote(&e.label)
        );
    }
}
