//! Instance and solution files.
//!
//! The text form is line oriented:
//!
//! ```text
//! kconn 1
//! vertices 9
//! k 1
//! terminals 5 6 7 8
//! root 0
//! edge 0 1 3
//! purchased 0 1
//! ```
//!
//! `#` starts a comment. `root` is optional and only read by the rooted
//! tools. `purchased u v` refers to an edge declared earlier. The JSON
//! form carries the same fields.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::connectivity::TerminalSet;
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, EdgeSet, Graph, VertexId};
use crate::reduction::RootedInstance;
use crate::solver::Instance;

pub const INSTANCE_HEADER: &str = "kconn 1";
pub const SOLUTION_HEADER: &str = "kconn-solution 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileFormat {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for FileFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(FileFormat::Text),
            "json" => Ok(FileFormat::Json),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub graph: Graph,
    pub terminals: TerminalSet,
    pub k: usize,
    pub root: Option<VertexId>,
    pub purchased: EdgeSet,
}

/// Serialized shape of [`InstanceFile`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub vertices: usize,
    pub k: usize,
    pub terminals: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<VertexId>,
    pub edges: Vec<(VertexId, VertexId, i64)>,
    #[serde(default)]
    pub purchased: Vec<(VertexId, VertexId)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn to_cost(raw: i64, line: usize) -> Result<Cost> {
    Cost::try_from(raw).map_err(|_| parse_err(line, format!("negative cost {raw}")))
}

fn add_edge(g: &mut Graph, u: VertexId, v: VertexId, cost: Cost, line: usize) -> Result<EdgeId> {
    g.add_edge(u, v, cost)
        .map_err(|e| parse_err(line, e.to_string()))
}

fn lookup(g: &Graph, u: VertexId, v: VertexId, line: usize) -> Result<EdgeId> {
    g.check_vertex(u)
        .and(g.check_vertex(v))
        .map_err(|e| parse_err(line, e.to_string()))?;
    g.find_edge(u, v)
        .ok_or_else(|| parse_err(line, format!("purchased ({u}, {v}) is not an edge")))
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        Self {
            graph: inst.graph.clone(),
            terminals: inst.terminals.clone(),
            k: inst.k,
            root: None,
            purchased: inst.purchased.clone(),
        }
    }

    pub fn from_rooted(inst: &RootedInstance) -> Self {
        Self {
            graph: inst.graph.clone(),
            terminals: inst.terminals.clone(),
            k: inst.k,
            root: Some(inst.root),
            purchased: EdgeSet::new(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        Instance::with_purchased(
            self.graph.clone(),
            self.terminals.clone(),
            self.k,
            self.purchased.clone(),
        )
    }

    pub fn to_rooted(&self) -> Result<RootedInstance> {
        let root = self
            .root
            .ok_or_else(|| Error::InvalidInput("instance has no root".into()))?;
        RootedInstance::new(self.graph.clone(), self.terminals.clone(), root, self.k)
    }

    /// Parses either form; JSON is recognised by a leading `{`.
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            Self::parse_json(src)
        } else {
            Self::parse_text(src)
        }
    }

    pub fn parse_json(src: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(src).map_err(|e| parse_err(e.line(), e.to_string()))?;
        Self::from_doc(&doc)
    }

    /// Builds from a document. Errors carry line 0.
    pub fn from_doc(doc: &InstanceDoc) -> Result<Self> {
        let mut graph = Graph::new(doc.vertices);
        for &(u, v, c) in &doc.edges {
            add_edge(&mut graph, u, v, to_cost(c, 0)?, 0)?;
        }
        let purchased = doc
            .purchased
            .iter()
            .map(|&(u, v)| lookup(&graph, u, v, 0))
            .collect::<Result<EdgeSet>>()?;
        let terminals =
            TerminalSet::new(doc.terminals.clone()).map_err(|e| parse_err(0, e.to_string()))?;
        let file = Self {
            graph,
            terminals,
            k: doc.k,
            root: doc.root,
            purchased,
        };
        file.check().map_err(|e| parse_err(0, e.to_string()))?;
        Ok(file)
    }

    fn check(&self) -> Result<()> {
        self.terminals.validate(&self.graph)?;
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        if let Some(r) = self.root {
            self.graph.check_vertex(r)?;
        }
        Ok(())
    }

    pub fn parse_text(src: &str) -> Result<Self> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, INSTANCE_HEADER)) => {}
            Some((line, other)) => {
                return Err(parse_err(
                    line,
                    format!("expected header {INSTANCE_HEADER:?}, found {other:?}"),
                ))
            }
            None => return Err(parse_err(1, "empty instance file")),
        }
        let mut graph: Option<Graph> = None;
        let mut k = None;
        let mut terminals = None;
        let mut root = None;
        let mut purchased = EdgeSet::new();
        let mut last = 1;
        for (line, text) in lines {
            last = line;
            let mut words = text.split_whitespace();
            let key = words.next().expect("line is not empty");
            let args: Vec<i64> = words
                .map(|w| {
                    w.parse::<i64>()
                        .map_err(|_| parse_err(line, format!("bad number {w:?}")))
                })
                .collect::<Result<_>>()?;
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(parse_err(
                        line,
                        format!("{key} takes {n} values, found {}", args.len()),
                    ))
                }
            };
            let id = |x: i64| {
                usize::try_from(x).map_err(|_| parse_err(line, format!("negative vertex {x}")))
            };
            let need_graph = |g: &mut Option<Graph>| -> Result<()> {
                if g.is_none() {
                    return Err(parse_err(line, format!("{key} before vertices")));
                }
                Ok(())
            };
            match key {
                "vertices" => {
                    arity(1)?;
                    if graph.is_some() {
                        return Err(parse_err(line, "vertices given twice"));
                    }
                    graph = Some(Graph::new(id(args[0])?));
                }
                "k" => {
                    arity(1)?;
                    k = Some(id(args[0])?);
                }
                "terminals" => {
                    let ids = args.iter().map(|&x| id(x)).collect::<Result<Vec<_>>>()?;
                    terminals =
                        Some(TerminalSet::new(ids).map_err(|e| parse_err(line, e.to_string()))?);
                }
                "root" => {
                    arity(1)?;
                    root = Some(id(args[0])?);
                }
                "edge" => {
                    arity(3)?;
                    need_graph(&mut graph)?;
                    let g = graph.as_mut().expect("checked");
                    add_edge(g, id(args[0])?, id(args[1])?, to_cost(args[2], line)?, line)?;
                }
                "purchased" => {
                    arity(2)?;
                    need_graph(&mut graph)?;
                    let g = graph.as_ref().expect("checked");
                    purchased.insert(lookup(g, id(args[0])?, id(args[1])?, line)?);
                }
                _ => return Err(parse_err(line, format!("unknown keyword {key:?}"))),
            }
        }
        let missing = |what: &str| parse_err(last, format!("missing {what}"));
        let file = Self {
            graph: graph.ok_or_else(|| missing("vertices"))?,
            terminals: terminals.ok_or_else(|| missing("terminals"))?,
            k: k.ok_or_else(|| missing("k"))?,
            root,
            purchased,
        };
        file.check().map_err(|e| parse_err(last, e.to_string()))?;
        Ok(file)
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            vertices: self.graph.vertex_count(),
            k: self.k,
            terminals: self.terminals.as_slice().to_vec(),
            root: self.root,
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| (e.u, e.v, e.cost as i64))
                .collect(),
            purchased: self
                .purchased
                .iter()
                .map(|&e| {
                    let e = self.graph.edge(e);
                    (e.u, e.v)
                })
                .collect(),
        }
    }

    pub fn render(&self, format: FileFormat) -> String {
        match format {
            FileFormat::Text => self.render_text(),
            FileFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("plain data");
                s.push('\n');
                s
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{INSTANCE_HEADER}");
        let _ = writeln!(s, "vertices {}", self.graph.vertex_count());
        let _ = writeln!(s, "k {}", self.k);
        let ts: Vec<String> = self.terminals.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "terminals {}", ts.join(" "));
        if let Some(r) = self.root {
            let _ = writeln!(s, "root {r}");
        }
        for e in self.graph.edges() {
            let _ = writeln!(s, "edge {} {} {}", e.u, e.v, e.cost);
        }
        for &id in &self.purchased {
            let e = self.graph.edge(id);
            let _ = writeln!(s, "purchased {} {}", e.u, e.v);
        }
        s
    }
}

/// A solution as a list of endpoint pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub edges: Vec<(VertexId, VertexId)>,
}

impl SolutionFile {
    pub fn from_edges(g: &Graph, edges: &EdgeSet) -> Self {
        Self {
            edges: edges
                .iter()
                .map(|&id| {
                    let e = g.edge(id);
                    (e.u, e.v)
                })
                .collect(),
        }
    }

    /// Resolves endpoint pairs to edge ids of `g`.
    pub fn resolve(&self, g: &Graph) -> Result<EdgeSet> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                if u >= g.vertex_count() || v >= g.vertex_count() {
                    return Err(Error::UnknownEdge(u, v));
                }
                g.find_edge(u, v).ok_or(Error::UnknownEdge(u, v))
            })
            .collect()
    }

    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            return serde_json::from_str(src).map_err(|e| parse_err(e.line(), e.to_string()));
        }
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, SOLUTION_HEADER)) => {}
            Some((line, other)) => {
                return Err(parse_err(
                    line,
                    format!("expected header {SOLUTION_HEADER:?}, found {other:?}"),
                ))
            }
            None => return Err(parse_err(1, "empty solution file")),
        }
        let mut edges = Vec::new();
        for (line, text) in lines {
            let words: Vec<&str> = text.split_whitespace().collect();
            match words.as_slice() {
                ["edge", u, v] => {
                    let num = |w: &str| {
                        w.parse::<VertexId>()
                            .map_err(|_| parse_err(line, format!("bad vertex {w:?}")))
                    };
                    edges.push((num(u)?, num(v)?));
                }
                ["cost", _] => {}
                _ => return Err(parse_err(line, format!("unexpected line {text:?}"))),
            }
        }
        Ok(Self { edges })
    }

    /// Text form; `cost` is written as an informational line.
    pub fn render(&self, cost: Option<Cost>, format: FileFormat) -> String {
        match format {
            FileFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("plain data");
                s.push('\n');
                s
            }
            FileFormat::Text => {
                let mut s = format!("{SOLUTION_HEADER}\n");
                if let Some(c) = cost {
                    let _ = writeln!(s, "cost {c}");
                }
                for (u, v) in &self.edges {
                    let _ = writeln!(s, "edge {u} {v}");
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_tree;

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let f = example_tree();
        let mut file = InstanceFile::from_instance(
            &Instance::with_purchased(
                f.graph.clone(),
                f.terminals.clone(),
                1,
                [0, 3].into_iter().collect(),
            )
            .unwrap(),
        );
        file.root = Some(0);
        let text = file.render_text();
        let back = InstanceFile::parse(&text).unwrap();
        assert_eq!(back.render_text(), text);
        assert_eq!(back.to_doc(), file.to_doc());
        let json = file.render(FileFormat::Json);
        assert_eq!(InstanceFile::parse(&json).unwrap().to_doc(), file.to_doc());
    }

    #[test]
    fn comments_and_blank_lines() {
        let src =
            "# tiny\nkconn 1\n\nvertices 3 # three\nk 1\nterminals 0 2\nedge 0 1 2\nedge 1 2 0\n";
        let file = InstanceFile::parse(src).unwrap();
        assert_eq!(file.graph.edge_count(), 2);
        assert!(file.to_rooted().is_err());
    }

    #[test]
    fn diagnostics_carry_lines() {
        let base = "kconn 1\nvertices 3\nk 1\nterminals 0 2\n";
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}edge 0 1 1\nedge 1 0 2\n")).unwrap_err()),
            6
        );
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}edge 0 1 -1\n")).unwrap_err()),
            5
        );
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}edge 1 1 1\n")).unwrap_err()),
            5
        );
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}edge 0 7 1\n")).unwrap_err()),
            5
        );
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}purchased 0 1\n")).unwrap_err()),
            5
        );
        assert_eq!(
            line_of(InstanceFile::parse(&format!("{base}bogus\n")).unwrap_err()),
            5
        );
        assert_eq!(line_of(InstanceFile::parse("kconn 2\n").unwrap_err()), 1);
        assert_eq!(
            line_of(InstanceFile::parse("kconn 1\nvertices 2\nk 1\n").unwrap_err()),
            3
        );
        assert!(InstanceFile::parse("{\"vertices\": 2,").is_err());
    }

    #[test]
    fn solutions_resolve_against_the_graph() {
        let f = example_tree();
        let sol = SolutionFile::from_edges(&f.graph, &[0, 1].into_iter().collect());
        let text = sol.render(Some(2), FileFormat::Text);
        let back = SolutionFile::parse(&text).unwrap();
        assert_eq!(back, sol);
        assert_eq!(
            back.resolve(&f.graph).unwrap(),
            [0, 1].into_iter().collect()
        );
        let bad = SolutionFile {
            edges: vec![(5, 6)],
        };
        assert_eq!(bad.resolve(&f.graph), Err(Error::UnknownEdge(5, 6)));
        assert_eq!(
            line_of(SolutionFile::parse("kconn-solution 1\nedge 1\n").unwrap_err()),
            2
        );
    }
}
