//! Minimal checker for the DOT language subset: one `graph`/`digraph`,
//! node, edge and attribute statements, quoted or bare identifiers.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Line,
    Punct(char),
}

/// Source, target and attributes of one edge.
pub type Edge = (String, String, Vec<(String, String)>);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotSummary {
    pub directed: bool,
    pub name: Option<String>,
    /// Nodes with an explicit node statement.
    pub declared_nodes: BTreeSet<String>,
    /// Every edge in statement order, with its attributes.
    pub edges: Vec<Edge>,
}

impl DotSummary {
    /// Declared nodes plus every edge endpoint.
    pub fn all_nodes(&self) -> BTreeSet<String> {
        let mut all = self.declared_nodes.clone();
        for (a, b, _) in &self.edges {
            all.insert(a.clone());
            all.insert(b.clone());
        }
        all
    }
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            Some(other) => {
                                s.push('\\');
                                s.push(*other);
                            }
                            None => return Err("dangling escape".into()),
                        }
                        i += 2;
                    }
                    Some(ch) => {
                        s.push(*ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Arrow);
            i += 2;
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            out.push(Tok::Line);
            i += 2;
        } else if "{}[];,=".contains(c) {
            out.push(Tok::Punct(c));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            if i == start {
                return Err(format!("unexpected character {c:?}"));
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct P {
    toks: Vec<Tok>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), String> {
        match self.next() {
            Some(Tok::Punct(x)) if x == c => Ok(()),
            other => Err(format!("expected {c:?}, found {other:?}")),
        }
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>, String> {
        let mut out = Vec::new();
        while self.peek() == Some(&Tok::Punct('[')) {
            self.next();
            loop {
                if self.peek() == Some(&Tok::Punct(']')) {
                    self.next();
                    break;
                }
                let k = self.id()?;
                self.punct('=')?;
                let v = self.id()?;
                out.push((k, v));
                if matches!(self.peek(), Some(Tok::Punct(',' | ';'))) {
                    self.next();
                }
            }
        }
        Ok(out)
    }
}

/// Parses `src`, returning its nodes and edges or a description of the first
/// violation.
pub fn check_dot(src: &str) -> Result<DotSummary, String> {
    let mut p = P { toks: tokenize(src)?, pos: 0 };
    let mut summary = DotSummary::default();
    let kw = p.id()?;
    summary.directed = match kw.as_str() {
        "digraph" => true,
        "graph" => false,
        other => return Err(format!("expected graph or digraph, found {other}")),
    };
    if let Some(Tok::Id(_)) = p.peek() {
        summary.name = Some(p.id()?);
    }
    p.punct('{')?;
    loop {
        match p.peek() {
            None => return Err("missing closing brace".into()),
            Some(Tok::Punct('}')) => {
                p.next();
                break;
            }
            Some(Tok::Punct(';')) => {
                p.next();
                continue;
            }
            _ => {}
        }
        let first = p.id()?;
        match p.peek() {
            Some(Tok::Punct('=')) => {
                p.next();
                p.id()?;
            }
            _ if matches!(first.as_str(), "graph" | "node" | "edge") => {
                p.attrs()?;
            }
            Some(Tok::Arrow | Tok::Line) => {
                let mut chain = vec![first];
                while let Some(op @ (Tok::Arrow | Tok::Line)) = p.peek().cloned() {
                    if (op == Tok::Arrow) != summary.directed {
                        return Err("edge operator does not match graph kind".into());
                    }
                    p.next();
                    chain.push(p.id()?);
                }
                let attrs = p.attrs()?;
                for w in chain.windows(2) {
                    summary.edges.push((w[0].clone(), w[1].clone(), attrs.clone()));
                }
            }
            _ => {
                p.attrs()?;
                summary.declared_nodes.insert(first);
            }
        }
        if p.peek() == Some(&Tok::Punct(';')) {
            p.next();
        }
    }
    if p.pos != p.toks.len() {
        return Err("trailing input after graph".into());
    }
    Ok(summary)
}
