//! Text formats: graphs (`v`/`e` directives), matroids by basis lists
//! (`n`/`b`), GF(2) matrices (`m` plus 0/1 rows), and the `@`-block spec
//! files used by the symmetry checks.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::matroid::{EdgeSubset, Graph, Matroid};
use crate::symmetry::{FourierSplitSpec, Transposition, TwistSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Bad { line: usize, message: String },
    #[error("empty input")]
    Empty,
    #[error("{0}")]
    Invalid(String),
}

fn bad(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Bad {
        line: line + 1,
        message: message.into(),
    }
}

/// A parsed input object; graphs keep their vertex structure for the
/// surgery commands.
#[derive(Debug, Clone)]
pub enum Object {
    Graph(Graph),
    Matroid(Matroid),
}

impl Object {
    pub fn matroid(&self) -> Matroid {
        match self {
            Object::Graph(g) => Matroid::graphic(g.clone()),
            Object::Matroid(m) => m.clone(),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match self {
            Object::Graph(g) => Some(g),
            Object::Matroid(_) => None,
        }
    }
}

/// Parse a graph, basis-list or GF(2) object, switching on the first
/// directive.
pub fn parse_object(text: &str) -> Result<Object, ParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(_, first)) = lines.first() else {
        return Err(ParseError::Empty);
    };
    match first.chars().next().unwrap() {
        'v' | 'e' => parse_graph_lines(&lines).map(Object::Graph),
        'n' | 'b' => parse_bases_lines(&lines).map(Object::Matroid),
        'm' => parse_gf2_lines(&lines).map(Object::Matroid),
        c => Err(bad(lines[0].0, format!("unknown directive {c:?}"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    match parse_object(text)? {
        Object::Graph(g) => Ok(g),
        Object::Matroid(_) => Err(ParseError::Invalid("expected a graph".into())),
    }
}

fn parse_graph_lines(lines: &[(usize, &str)]) -> Result<Graph, ParseError> {
    let mut vertex_count = 0usize;
    let mut edges = Vec::new();
    for &(i, line) in lines {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                vertex_count = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(i, "expected `v <count>`"))?;
            }
            Some("e") => {
                let u: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(i, "expected `e <u> <v>`"))?;
                let v: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(i, "expected `e <u> <v>`"))?;
                edges.push((u, v));
            }
            _ => return Err(bad(i, "expected `v` or `e` directive")),
        }
    }
    Ok(Graph::new(vertex_count, edges))
}

fn parse_bases_lines(lines: &[(usize, &str)]) -> Result<Matroid, ParseError> {
    let mut n = None;
    let mut bases = Vec::new();
    for &(i, line) in lines {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("n") => {
                n = Some(
                    it.next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| bad(i, "expected `n <size>`"))?,
                );
            }
            Some("b") => {
                let elems: Result<Vec<usize>, _> = it.map(|t| t.parse::<usize>()).collect();
                let elems = elems.map_err(|_| bad(i, "expected `b <i> <j> ...`"))?;
                bases.push(EdgeSubset::from_elems(elems));
            }
            _ => return Err(bad(i, "expected `n` or `b` directive")),
        }
    }
    let n = n.ok_or_else(|| ParseError::Invalid("missing `n` directive".into()))?;
    Matroid::from_bases(n, bases).map_err(|e| ParseError::Invalid(e.to_string()))
}

fn parse_gf2_lines(lines: &[(usize, &str)]) -> Result<Matroid, ParseError> {
    let (i0, header) = lines[0];
    let mut it = header.split_whitespace();
    if it.next() != Some("m") {
        return Err(bad(i0, "expected `m <rows> <cols>`"));
    }
    let rows: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(i0, "expected `m <rows> <cols>`"))?;
    let cols: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(i0, "expected `m <rows> <cols>`"))?;
    if rows > 64 {
        return Err(bad(i0, "at most 64 rows supported"));
    }
    let mut columns = vec![0u64; cols];
    let mut row_index = 0usize;
    for &(i, line) in &lines[1..] {
        let bits: Vec<u8> = line
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(bad(i, format!("bad matrix entry {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        if bits.len() != cols {
            return Err(bad(i, format!("expected {cols} entries")));
        }
        for (c, &b) in bits.iter().enumerate() {
            if b == 1 {
                columns[c] |= 1 << row_index;
            }
        }
        row_index += 1;
    }
    if row_index != rows {
        return Err(ParseError::Invalid(format!(
            "expected {rows} matrix rows, found {row_index}"
        )));
    }
    Matroid::linear_gf2(columns).map_err(|e| ParseError::Invalid(e.to_string()))
}

/// Split a spec file into named `@` blocks; the value of a block is its
/// header arguments plus any following lines.
fn split_blocks(text: &str) -> Result<BTreeMap<String, (String, String)>, ParseError> {
    let mut blocks = BTreeMap::new();
    let mut current: Option<(String, String, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('@') {
            if let Some((name, args, body)) = current.take() {
                blocks.insert(name, (args, body));
            }
            let mut it = rest.splitn(2, char::is_whitespace);
            let name = it.next().unwrap_or("").to_string();
            if name.is_empty() {
                return Err(bad(i, "empty block name"));
            }
            let args = it.next().unwrap_or("").trim().to_string();
            current = Some((name, args, String::new()));
        } else {
            match current.as_mut() {
                Some((_, _, body)) => {
                    body.push_str(line);
                    body.push('\n');
                }
                None => return Err(bad(i, "content before the first @block")),
            }
        }
    }
    if let Some((name, args, body)) = current.take() {
        blocks.insert(name, (args, body));
    }
    Ok(blocks)
}

fn block_numbers(args: &str) -> Result<Vec<usize>, ParseError> {
    args.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| ParseError::Invalid(format!("expected a number, got {t:?}")))
        })
        .collect()
}

/// Parse a product-check spec: `@graphA`/`@graphB` object blocks (graphs,
/// basis lists or GF(2) matrices) plus `@edgeA i` and `@edgeB j`.
pub fn parse_product_spec(text: &str) -> Result<(Matroid, usize, Matroid, usize), ParseError> {
    let blocks = split_blocks(text)?;
    let fetch = |name: &str| -> Result<&(String, String), ParseError> {
        blocks
            .get(name)
            .ok_or_else(|| ParseError::Invalid(format!("missing @{name} block")))
    };
    let a = parse_object(&fetch("graphA")?.1)?.matroid();
    let b = parse_object(&fetch("graphB")?.1)?.matroid();
    let e = block_numbers(&fetch("edgeA")?.0)?
        .first()
        .copied()
        .ok_or_else(|| ParseError::Invalid("missing edge index in @edgeA".into()))?;
    let f = block_numbers(&fetch("edgeB")?.0)?
        .first()
        .copied()
        .ok_or_else(|| ParseError::Invalid("missing edge index in @edgeB".into()))?;
    Ok((a, e, b, f))
}

/// Parse a twist spec: `@graph`, `@quad p q r s`, `@sideT e...` and
/// `@transposition pq-rs|pr-qs|ps-qr`.
pub fn parse_twist_spec(text: &str) -> Result<TwistSpec, ParseError> {
    let blocks = split_blocks(text)?;
    let fetch = |name: &str| -> Result<&(String, String), ParseError> {
        blocks
            .get(name)
            .ok_or_else(|| ParseError::Invalid(format!("missing @{name} block")))
    };
    let graph = parse_graph(&fetch("graph")?.1)?;
    let quad_vec = block_numbers(&fetch("quad")?.0)?;
    if quad_vec.len() != 4 {
        return Err(ParseError::Invalid("@quad needs four vertices".into()));
    }
    let side_t = EdgeSubset::from_elems(block_numbers(&fetch("sideT")?.0)?);
    let transposition = match fetch("transposition")?.0.as_str() {
        "pq-rs" => Transposition::PqRs,
        "pr-qs" => Transposition::PrQs,
        "ps-qr" => Transposition::PsQr,
        other => {
            return Err(ParseError::Invalid(format!(
                "unknown transposition {other:?}"
            )))
        }
    };
    Ok(TwistSpec {
        graph,
        quad: [quad_vec[0], quad_vec[1], quad_vec[2], quad_vec[3]],
        side_t,
        transposition,
    })
}

/// Parse a Fourier-split spec: `@graph`, `@sideS e...`, `@terminals u v w`,
/// `@dual` (a graph block) and `@dualterminals u v w`.
pub fn parse_fourier_spec(text: &str) -> Result<FourierSplitSpec, ParseError> {
    let blocks = split_blocks(text)?;
    let fetch = |name: &str| -> Result<&(String, String), ParseError> {
        blocks
            .get(name)
            .ok_or_else(|| ParseError::Invalid(format!("missing @{name} block")))
    };
    let graph = parse_graph(&fetch("graph")?.1)?;
    let side_s = EdgeSubset::from_elems(block_numbers(&fetch("sideS")?.0)?);
    let t = block_numbers(&fetch("terminals")?.0)?;
    let dt = block_numbers(&fetch("dualterminals")?.0)?;
    if t.len() != 3 || dt.len() != 3 {
        return Err(ParseError::Invalid(
            "terminal blocks need three vertices".into(),
        ));
    }
    let dual_side = parse_graph(&fetch("dual")?.1)?;
    Ok(FourierSplitSpec {
        graph,
        side_s,
        terminals: [t[0], t[1], t[2]],
        dual_side,
        dual_terminals: [dt[0], dt[1], dt[2]],
    })
}

/// Render a graph back to the text format.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("v {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
