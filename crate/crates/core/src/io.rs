//! Flat-file formats.
//!
//! * Edge list: optional `#` comment lines, a header `n m`, then exactly `m`
//!   lines `u v` with 0-based ids.
//! * Chain file: line `i` lists the vertex ids of chain `i`.
//! * Index file: header `n k_c`, then one line per vertex
//!   `chain pos e_0 .. e_{k_c-1}` with 1-based chains and positions and `0`
//!   for unreachable chains.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::decomposition::ChainDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Dag, Digraph};
use crate::index::{ReachIndex, UNREACHABLE};

/// Numbered lines that are neither blank nor comments.
fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, line)| {
            line.map(|l| (i + 1, l))
                .map_err(|e| Error::parse(i + 1, e.to_string()))
        })
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

fn parse_fields<const N: usize>(line_no: usize, line: &str, what: &str) -> Result<[usize; N]> {
    let mut out = [0; N];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, format!("expected {what}")))?;
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a vertex id")))?;
    }
    if fields.next().is_some() {
        return Err(Error::parse(
            line_no,
            format!("trailing fields after {what}"),
        ));
    }
    Ok(out)
}

/// Parses the edge-list format into a (possibly cyclic) digraph.
pub fn read_digraph<R: Read>(reader: R) -> Result<Digraph> {
    let mut lines = content_lines(BufReader::new(reader));
    let (header_line, header) = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let [n, m] = parse_fields(header_line, &header, "`n m` header")?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for item in lines {
        let (line_no, line) = item?;
        if edges.len() == m {
            return Err(Error::parse(
                line_no,
                format!("header declares {m} edges but more follow"),
            ));
        }
        let [u, v] = parse_fields(line_no, &line, "`u v` edge")?;
        if u >= n || v >= n {
            return Err(Error::parse(
                line_no,
                format!("edge ({u}, {v}) out of range for {n} vertices"),
            ));
        }
        edges.push((u, v));
        last_line = line_no;
    }
    if edges.len() < m {
        return Err(Error::parse(
            last_line + 1,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Digraph::from_edge_list(n, edges)
}

pub fn load_digraph(path: impl AsRef<Path>) -> Result<Digraph> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_digraph(file)
}

/// Loads an edge list that must be acyclic.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Dag> {
    load_digraph(path)?.to_dag()
}

/// Writes the edge-list format, `comment` lines first (each prefixed `# `).
pub fn write_edge_list<W: Write>(mut w: W, dag: &Dag, comment: &[String]) -> std::io::Result<()> {
    for line in comment {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "{} {}", dag.vertex_count(), dag.edge_count())?;
    for (u, v) in dag.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

pub fn save_edge_list(path: impl AsRef<Path>, dag: &Dag) -> Result<()> {
    save_with(path.as_ref(), |w| write_edge_list(w, dag, &[]))
}

pub fn write_chains<W: Write>(mut w: W, dec: &ChainDecomposition) -> std::io::Result<()> {
    for chain in dec.chains() {
        let line: Vec<String> = chain.iter().map(usize::to_string).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    w.flush()
}

/// Reads a chain file and validates it against `dag`.
pub fn read_chains<R: Read>(reader: R, dag: &Dag) -> Result<ChainDecomposition> {
    let mut chains = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::parse(i + 1, e.to_string()))?;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let chain = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("`{tok}` is not a vertex id")))
            })
            .collect::<Result<Vec<_>>>()?;
        chains.push(chain);
    }
    ChainDecomposition::from_chains(dag, chains)
}

pub fn load_chains(path: impl AsRef<Path>, dag: &Dag) -> Result<ChainDecomposition> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_chains(file, dag)
}

pub fn write_index<W: Write>(mut w: W, ix: &ReachIndex) -> std::io::Result<()> {
    writeln!(w, "{} {}", ix.vertex_count(), ix.chain_count())?;
    let mut line = String::new();
    for v in 0..ix.vertex_count() {
        use std::fmt::Write as _;
        line.clear();
        let _ = write!(line, "{} {}", ix.chain_of(v) + 1, ix.pos_of(v));
        for &e in ix.row(v) {
            let e = if e == UNREACHABLE { 0 } else { e };
            let _ = write!(line, " {e}");
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

pub fn read_index<R: Read>(reader: R) -> Result<ReachIndex> {
    let mut lines = content_lines(BufReader::new(reader));
    let (header_line, header) = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::parse(1, "missing `n k_c` header"))?;
    let [n, k_c] = parse_fields(header_line, &header, "`n k_c` header")?;

    let mut chain_of = Vec::with_capacity(n);
    let mut pos_of = Vec::with_capacity(n);
    let mut idx = Vec::with_capacity(n * k_c);
    for item in lines {
        let (line_no, line) = item?;
        if chain_of.len() == n {
            return Err(Error::parse(line_no, format!("more than {n} vertex lines")));
        }
        let fields = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::parse(line_no, format!("`{t}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        if fields.len() != k_c + 2 {
            return Err(Error::parse(
                line_no,
                format!("expected {} fields, found {}", k_c + 2, fields.len()),
            ));
        }
        let (chain, pos) = (fields[0], fields[1]);
        if chain == 0 || chain as usize > k_c || pos == 0 {
            return Err(Error::parse(line_no, "chain and position are 1-based"));
        }
        if fields[1 + chain as usize] != pos {
            return Err(Error::parse(line_no, "own chain entry must equal position"));
        }
        chain_of.push(chain - 1);
        pos_of.push(pos);
        idx.extend(
            fields[2..]
                .iter()
                .map(|&e| if e == 0 { UNREACHABLE } else { e }),
        );
    }
    if chain_of.len() != n {
        return Err(Error::parse(
            header_line,
            format!("header declares {n} vertices, found {}", chain_of.len()),
        ));
    }
    Ok(ReachIndex::from_parts(k_c, chain_of, pos_of, idx))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<ReachIndex> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_index(file)
}

pub(crate) fn save_with<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut std::io::BufWriter<fs::File>) -> std::io::Result<()>,
{
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write(&mut w).map_err(|e| Error::io(path, e))
}
