//! Line-oriented record files for atoms, projectors and group actions.
//!
//! ```text
//! # comment
//! [atom]
//! name = Bl
//! dim = 2
//! cells = 0, 1, 1, 2
//!
//! [projector]
//! name = p0
//! atom = C_g1
//! block = 0 0 [1]
//!
//! [action]
//! name = swap
//! atom = P1xP1
//! order = 2
//! [generator]
//! block = 0 2 [0 1; 1 0]
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use lawson_core::bigraded::{Bidegree, BigradedMap, DimEntry, LawsonTable};
use lawson_core::quotient::GroupAction;
use lawson_core::{Atom, AtomSpec, Matrix, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source_name}:{line}: {message}")]
pub struct ParseError {
    pub source_name: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Record {
    kind: String,
    line: usize,
    fields: Vec<(String, String, usize)>,
}

struct Parser<'a> {
    source_name: &'a str,
}

impl Parser<'_> {
    fn err(&self, line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            source_name: self.source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    fn records(&self, text: &str) -> Result<Vec<Record>, ParseError> {
        let mut out: Vec<Record> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(kind) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                out.push(Record {
                    kind: kind.trim().to_string(),
                    line,
                    fields: Vec::new(),
                });
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(self.err(line, format!("expected `key = value`, found `{content}`")));
            };
            let Some(rec) = out.last_mut() else {
                return Err(self.err(line, "field outside of a record"));
            };
            rec.fields
                .push((key.trim().to_string(), value.trim().to_string(), line));
        }
        Ok(out)
    }
}

fn unique<'r>(
    p: &Parser<'_>,
    rec: &'r Record,
    allowed: &[&str],
    repeatable: &[&str],
) -> Result<BTreeMap<&'r str, (&'r str, usize)>, ParseError> {
    let mut seen = BTreeMap::new();
    for (k, v, line) in &rec.fields {
        if !allowed.contains(&k.as_str()) && !repeatable.contains(&k.as_str()) {
            return Err(p.err(*line, format!("unknown key `{k}` in [{}]", rec.kind)));
        }
        if repeatable.contains(&k.as_str()) {
            continue;
        }
        if seen.insert(k.as_str(), (v.as_str(), *line)).is_some() {
            return Err(p.err(*line, format!("duplicate key `{k}`")));
        }
    }
    Ok(seen)
}

fn parse_bool(p: &Parser<'_>, v: &str, line: usize) -> Result<bool, ParseError> {
    match v {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(p.err(line, format!("expected true or false, found `{v}`"))),
    }
}

fn parse_num<T: FromStr>(p: &Parser<'_>, v: &str, line: usize) -> Result<T, ParseError> {
    v.trim()
        .parse()
        .map_err(|_| p.err(line, format!("expected a number, found `{}`", v.trim())))
}

fn parse_cells(p: &Parser<'_>, v: &str, line: usize) -> Result<Vec<u32>, ParseError> {
    let inner = v.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(p, s, line))
        .collect()
}

fn parse_table(p: &Parser<'_>, dim: u32, v: &str, line: usize) -> Result<LawsonTable, ParseError> {
    let mut entries = Vec::new();
    for triple in v.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = triple.split_whitespace().collect();
        let [ps, ks, ds] = parts[..] else {
            return Err(p.err(line, format!("table entry `{triple}` is not `p k dim`")));
        };
        let pp: i64 = parse_num(p, ps, line)?;
        let kk: i64 = parse_num(p, ks, line)?;
        let e = match ds.strip_prefix("<=") {
            Some(b) => DimEntry::at_most(parse_num(p, b, line)?),
            None => DimEntry::Exact(parse_num(p, ds, line)?),
        };
        entries.push(((pp, kk), e));
    }
    LawsonTable::new(dim, entries).map_err(|e| p.err(line, e.to_string()))
}

fn parse_atom(p: &Parser<'_>, rec: &Record) -> Result<Atom, ParseError> {
    let f = unique(
        p,
        rec,
        &[
            "name", "dim", "smooth", "quotient", "cellular", "cells", "table",
        ],
        &[],
    )?;
    let need = |k: &str| {
        f.get(k)
            .copied()
            .ok_or_else(|| p.err(rec.line, format!("[atom] is missing `{k}`")))
    };
    let (name, _) = need("name")?;
    let (dim, dim_line) = need("dim")?;
    let dim: u32 = parse_num(p, dim, dim_line)?;
    let flag = |k: &str, default: bool| match f.get(k) {
        Some(&(v, line)) => parse_bool(p, v, line),
        None => Ok(default),
    };
    let cells = match f.get("cells") {
        Some(&(v, line)) => Some(parse_cells(p, v, line)?),
        None => None,
    };
    let table = match f.get("table") {
        Some(&(v, line)) => Some(parse_table(p, dim, v, line)?),
        None => None,
    };
    let spec = AtomSpec {
        name: name.to_string(),
        dim,
        smooth: flag("smooth", true)?,
        quotient: flag("quotient", false)?,
        cellular: flag("cellular", cells.is_some())?,
        cells,
        table,
    };
    Atom::from_spec(spec).map_err(|e| p.err(rec.line, e.to_string()))
}

/// `p k [a b; c d]` with entries `n` or `n/d`.
fn parse_block(p: &Parser<'_>, v: &str, line: usize) -> Result<(Bidegree, Matrix), ParseError> {
    let (head, body) = v
        .split_once('[')
        .ok_or_else(|| p.err(line, "block must look like `p k [row; row]`"))?;
    let body = body
        .strip_suffix(']')
        .ok_or_else(|| p.err(line, "block is missing `]`"))?;
    let idx: Vec<&str> = head.split_whitespace().collect();
    let [ps, ks] = idx[..] else {
        return Err(p.err(line, "block must start with `p k`"));
    };
    let b = Bidegree::new(parse_num(p, ps, line)?, parse_num(p, ks, line)?);
    let rows = body
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| {
                    Rational::from_str(x)
                        .map_err(|_| p.err(line, format!("`{x}` is not an exact rational")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_rows(rows).map_err(|e| p.err(line, e.to_string()))?;
    Ok((b, m))
}

fn parse_blocks(p: &Parser<'_>, rec: &Record) -> Result<BTreeMap<Bidegree, Matrix>, ParseError> {
    let mut out = BTreeMap::new();
    for (k, v, line) in rec.fields.iter().filter(|(k, _, _)| k == "block") {
        debug_assert_eq!(k, "block");
        let (b, m) = parse_block(p, v, *line)?;
        if out.insert(b, m).is_some() {
            return Err(p.err(*line, format!("duplicate block at ({},{})", b.p, b.k)));
        }
    }
    Ok(out)
}

fn lookup_atom<'a>(
    p: &Parser<'_>,
    atoms: &'a dyn Fn(&str) -> Option<Atom>,
    name: &str,
    line: usize,
) -> Result<Atom, ParseError> {
    atoms(name).ok_or_else(|| p.err(line, format!("unknown atom `{name}`")))
}

#[derive(Clone, Debug)]
pub struct NamedProjector {
    pub name: String,
    pub atom: Atom,
    pub map: BigradedMap,
}

#[derive(Clone, Debug)]
pub struct NamedAction {
    pub name: String,
    pub atom: Atom,
    pub action: GroupAction,
}

/// Everything read from one or more record files.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub atoms: Vec<Atom>,
    pub projectors: Vec<NamedProjector>,
    pub actions: Vec<NamedAction>,
}

/// Parse a document. Atoms defined earlier in the same document, and any
/// atom `resolve` knows, may be referenced by projectors and actions.
pub fn parse_document(
    source_name: &str,
    text: &str,
    resolve: &dyn Fn(&str) -> Option<Atom>,
) -> Result<Document, ParseError> {
    let p = Parser { source_name };
    let records = p.records(text)?;
    let mut doc = Document::default();
    let mut i = 0;
    while i < records.len() {
        let rec = &records[i];
        i += 1;
        let local = |name: &str| {
            doc.atoms
                .iter()
                .rev()
                .find(|a| a.name() == name)
                .cloned()
                .or_else(|| resolve(name))
        };
        match rec.kind.as_str() {
            "atom" => {
                let atom = parse_atom(&p, rec)?;
                doc.atoms.push(atom);
            }
            "projector" => {
                let f = unique(&p, rec, &["name", "atom"], &["block"])?;
                let (name, _) = f
                    .get("name")
                    .copied()
                    .ok_or_else(|| p.err(rec.line, "[projector] is missing `name`"))?;
                let (atom_name, line) = f
                    .get("atom")
                    .copied()
                    .ok_or_else(|| p.err(rec.line, "[projector] is missing `atom`"))?;
                let atom = lookup_atom(&p, &local, atom_name, line)?;
                let blocks = parse_blocks(&p, rec)?;
                let map = BigradedMap::new(atom.table().clone(), atom.table().clone(), 0, blocks)
                    .map_err(|e| p.err(rec.line, e.to_string()))?;
                doc.projectors.push(NamedProjector {
                    name: name.to_string(),
                    atom,
                    map,
                });
            }
            "action" => {
                let f = unique(&p, rec, &["name", "atom", "order"], &[])?;
                let get = |k: &str| {
                    f.get(k)
                        .copied()
                        .ok_or_else(|| p.err(rec.line, format!("[action] is missing `{k}`")))
                };
                let (name, _) = get("name")?;
                let (atom_name, line) = get("atom")?;
                let (order, order_line) = get("order")?;
                let order: u64 = parse_num(&p, order, order_line)?;
                let atom = lookup_atom(&p, &local, atom_name, line)?;
                let mut gens = Vec::new();
                while i < records.len() && records[i].kind == "generator" {
                    let g = &records[i];
                    unique(&p, g, &[], &["block"])?;
                    let mut blocks = parse_blocks(&p, g)?;
                    // cells without a block are fixed pointwise
                    for (b, e) in atom.table().entries() {
                        blocks
                            .entry(b)
                            .or_insert_with(|| Matrix::identity(e.value() as usize));
                    }
                    let map =
                        BigradedMap::new(atom.table().clone(), atom.table().clone(), 0, blocks)
                            .map_err(|e| p.err(g.line, e.to_string()))?;
                    gens.push(map);
                    i += 1;
                }
                let action = GroupAction::new(atom.table(), order, gens)
                    .map_err(|e| p.err(rec.line, e.to_string()))?;
                doc.actions.push(NamedAction {
                    name: name.to_string(),
                    atom,
                    action,
                });
            }
            "generator" => return Err(p.err(rec.line, "[generator] must follow an [action]")),
            other => return Err(p.err(rec.line, format!("unknown record [{other}]"))),
        }
    }
    Ok(doc)
}

/// Atoms only; any other record is an error.
pub fn load_atoms(source_name: &str, text: &str) -> Result<Vec<Atom>, ParseError> {
    let p = Parser { source_name };
    p.records(text)?
        .iter()
        .map(|rec| match rec.kind.as_str() {
            "atom" => parse_atom(&p, rec),
            other => Err(p.err(rec.line, format!("expected [atom], found [{other}]"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lawson_core::{builtin_atom, Builtin};

    fn none(_: &str) -> Option<Atom> {
        None
    }

    #[test]
    fn point_from_table() {
        let atoms = load_atoms("t", "[atom]\nname = pt\ndim = 0\ntable = 0 0 1\n").unwrap();
        assert_eq!(atoms[0].table(), builtin_atom(Builtin::Point).table());
    }

    #[test]
    fn cells_synthesize_table() {
        let atoms = load_atoms("t", "[atom]\nname = Bl\ndim = 2\ncells = 0, 1, 1, 2\n").unwrap();
        let t = atoms[0].table();
        assert!(atoms[0].is_cellular());
        for (k, c) in [(0, 1), (2, 2), (4, 1)] {
            for p in 0..=k / 2 {
                assert_eq!(t.lookup(p, k), DimEntry::Exact(c));
            }
        }
        assert_eq!(t.lookup(0, 1), DimEntry::ZERO);
    }

    #[test]
    fn range_violation_reports_line() {
        let err =
            load_atoms("t", "# header\n[atom]\nname = X\ndim = 1\ntable = 2 2 1\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("k < 2p"), "{}", err.message);
    }

    #[test]
    fn schema_errors() {
        let cases = [
            (
                "[atom]\nname = X\ndim = 1\ncolour = red\n",
                4,
                "unknown key",
            ),
            ("name = X\n", 1, "outside"),
            ("[atom]\nname = X\ndim = one\n", 3, "number"),
            ("[atom]\nname = X\n", 1, "missing `dim`"),
            ("[atom]\nname = X\ndim = 1\ndim = 2\n", 4, "duplicate"),
            (
                "[atom]\nname = X\ndim = 1\nsmooth = maybe\ntable = 0 0 1\n",
                4,
                "true or false",
            ),
            (
                "[atom]\nname = X\ndim = 2\ncells = 0 1 2\ntable = 0 0 1\n",
                1,
                "cellular rule",
            ),
            (
                "[atom]\nname = X\ndim = 1\ntable = 0 0\n",
                4,
                "not `p k dim`",
            ),
            ("[widget]\n", 1, "expected [atom]"),
            ("[atom]\nname X\n", 2, "key = value"),
        ];
        for (text, line, needle) in cases {
            let err = load_atoms("t", text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
            assert!(err.message.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn bounded_entries_and_flags() {
        let text = "[atom]\nname = S\ndim = 2\nsmooth = false\nquotient = true\n\
                    table = 0 0 1; 0 2 1; 1 2 <=1; 0 4 1; 1 4 1; 2 4 1\n";
        let a = &load_atoms("t", text).unwrap()[0];
        assert_eq!(a.table().lookup(1, 2), DimEntry::AtMost(1));
        assert!(a.is_quotient() && !a.is_smooth() && !a.is_cellular());
    }

    #[test]
    fn projector_and_action_records() {
        let text = "\
[atom]
name = Q
dim = 2
table = 0 0 1; 0 2 2; 1 2 2; 0 4 1; 1 4 1; 2 4 1
[projector]
name = half
atom = Q
block = 0 2 [1/2 1/2; 1/2 1/2]
[action]
name = swap
atom = Q
order = 2
[generator]
block = 0 2 [0 1; 1 0]
block = 1 2 [0 1; 1 0]
";
        let doc = parse_document("t", text, &none).unwrap();
        assert_eq!(doc.projectors.len(), 1);
        assert!(doc.projectors[0].map.check_idempotent().is_ok());
        assert_eq!(doc.actions[0].action.image().len(), 2);

        let orphan = parse_document("t", "[generator]\nblock = 0 0 [1]\n", &none).unwrap_err();
        assert_eq!(orphan.line, 1);
        let bad = parse_document(
            "t",
            "[projector]\nname = p\natom = P1\nblock = 0 0 [x]\n",
            &|n| Builtin::parse(n).map(builtin_atom),
        )
        .unwrap_err();
        assert!(bad.message.contains("exact rational"), "{bad}");
    }
}
