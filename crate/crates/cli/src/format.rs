//! Line-oriented text formats for rings and modules.
//!
//! ```text
//! [ring]
//! name = r3
//! p = 2
//! dim = 2
//! unit = 1 0
//! mul 0 0 = 1 0
//! mul 0 1 = 0 1
//! mul 1 1 = 0 0
//! ```
//!
//! ```text
//! [module]
//! name = k
//! ring = r3
//! dim = 1
//! act 0 = 1
//! act 1 = 0
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use qdual_core::ring::validate_ring;
use qdual_core::{Matrix, Module, ModuleError, Ring, RingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid ring: {0}")]
    Ring(#[from] RingError),
    #[error("invalid module: {0}")]
    Module(#[from] ModuleError),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Meaningful lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn ints(line: usize, s: &str) -> Result<Vec<i64>, FormatError> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| parse_err(line, format!("expected an integer, found `{t}`")))
        })
        .collect()
}

fn one_int(line: usize, s: &str) -> Result<i64, FormatError> {
    match ints(line, s)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(parse_err(line, "expected exactly one integer")),
    }
}

fn index(line: usize, s: &str, bound: usize, what: &str) -> Result<usize, FormatError> {
    let i = s
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad {what} index `{s}`")))?;
    if i >= bound {
        return Err(parse_err(
            line,
            format!("{what} index {i} out of range (dim {bound})"),
        ));
    }
    Ok(i)
}

fn split_assignment(line: usize, s: &str) -> Result<(&str, &str), FormatError> {
    s.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| parse_err(line, format!("expected `key = value`, found `{s}`")))
}

fn expect_header(text: &str, header: &str) -> Result<usize, FormatError> {
    match lines(text).next() {
        Some((n, l)) if l == header => Ok(n),
        Some((n, l)) => Err(parse_err(n, format!("expected `{header}`, found `{l}`"))),
        None => Err(parse_err(1, format!("empty file, expected `{header}`"))),
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), FormatError> {
    if slot.is_some() {
        return Err(parse_err(line, format!("duplicate `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

#[allow(clippy::needless_range_loop)]
pub fn parse_ring(text: &str) -> Result<Ring, FormatError> {
    let header = expect_header(text, "[ring]")?;
    let mut name = None;
    let mut p = None;
    let mut dim: Option<usize> = None;
    let mut unit = None;
    let mut products: BTreeMap<(usize, usize), (usize, Vec<i64>)> = BTreeMap::new();
    let mut last = header;
    for (n, l) in lines(text).skip(1) {
        last = n;
        let (key, value) = split_assignment(n, l)?;
        let mut words = key.split_whitespace();
        match words.next() {
            Some("name") => set_once(&mut name, value.to_string(), n, "name")?,
            Some("p") => {
                let v = one_int(n, value)?;
                if v < 2 {
                    return Err(RingError::NotPrime(v.max(0) as u64).into());
                }
                set_once(&mut p, v as u64, n, "p")?
            }
            Some("dim") => {
                let v = one_int(n, value)?;
                if v < 1 {
                    return Err(parse_err(n, "dim must be positive"));
                }
                set_once(&mut dim, v as usize, n, "dim")?
            }
            Some("unit") => set_once(&mut unit, (n, ints(n, value)?), n, "unit")?,
            Some("mul") => {
                let d = dim.ok_or_else(|| parse_err(n, "`mul` before `dim`"))?;
                let (Some(a), Some(b), None) = (words.next(), words.next(), words.next()) else {
                    return Err(parse_err(n, "expected `mul <i> <j> = ...`"));
                };
                let (i, j) = (index(n, a, d, "basis")?, index(n, b, d, "basis")?);
                let key = (i.min(j), i.max(j));
                if products.insert(key, (n, ints(n, value)?)).is_some() {
                    return Err(parse_err(
                        n,
                        format!("duplicate product {} {}", key.0, key.1),
                    ));
                }
            }
            _ => return Err(parse_err(n, format!("unknown key `{key}`"))),
        }
    }
    let missing = |key: &str| parse_err(last + 1, format!("missing `{key}`"));
    let name = name.ok_or_else(|| missing("name"))?;
    let p = p.ok_or_else(|| missing("p"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let (unit_line, unit) = unit.ok_or_else(|| missing("unit"))?;
    if unit.len() != dim {
        return Err(parse_err(
            unit_line,
            format!("unit needs {dim} entries, found {}", unit.len()),
        ));
    }
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let (n, v) = products
                .get(&(i, j))
                .ok_or_else(|| parse_err(last + 1, format!("missing product `mul {i} {j}`")))?;
            if v.len() != dim {
                return Err(parse_err(
                    *n,
                    format!("product needs {dim} entries, found {}", v.len()),
                ));
            }
            table[i][j] = v.clone();
            table[j][i] = v.clone();
        }
    }
    Ok(validate_ring(&name, p, &unit, &table)?)
}

/// Rings a module file may refer to, by name.
pub trait RingLookup {
    fn lookup(&self, id: &str) -> Option<Arc<Ring>>;
}

impl RingLookup for [Arc<Ring>] {
    fn lookup(&self, id: &str) -> Option<Arc<Ring>> {
        let id = id.strip_prefix("corpus:").unwrap_or(id);
        self.iter().find(|r| r.name() == id).cloned()
    }
}

pub fn parse_module(text: &str, rings: &(impl RingLookup + ?Sized)) -> Result<Module, FormatError> {
    let header = expect_header(text, "[module]")?;
    let mut name: Option<String> = None;
    let mut ring: Option<Arc<Ring>> = None;
    let mut dim: Option<usize> = None;
    let mut acts: BTreeMap<usize, (usize, &str)> = BTreeMap::new();
    let mut last = header;
    for (n, l) in lines(text).skip(1) {
        last = n;
        let (key, value) = split_assignment(n, l)?;
        let mut words = key.split_whitespace();
        match words.next() {
            Some("name") => set_once(&mut name, value.to_string(), n, "name")?,
            Some("ring") => {
                let r = rings
                    .lookup(value)
                    .ok_or_else(|| FormatError::UnknownRing(value.to_string()))?;
                set_once(&mut ring, r, n, "ring")?
            }
            Some("dim") => {
                let v = one_int(n, value)?;
                if v < 0 {
                    return Err(parse_err(n, "dim must be nonnegative"));
                }
                set_once(&mut dim, v as usize, n, "dim")?
            }
            Some("act") => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| parse_err(n, "`act` before `ring`"))?;
                let (Some(a), None) = (words.next(), words.next()) else {
                    return Err(parse_err(n, "expected `act <i> = ...`"));
                };
                let i = index(n, a, r.dim(), "basis")?;
                if acts.insert(i, (n, value)).is_some() {
                    return Err(parse_err(n, format!("duplicate action {i}")));
                }
            }
            _ => return Err(parse_err(n, format!("unknown key `{key}`"))),
        }
    }
    let missing = |key: &str| parse_err(last + 1, format!("missing `{key}`"));
    let ring = ring.ok_or_else(|| missing("ring"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let field = ring.field();
    let mut action = Vec::with_capacity(ring.dim());
    for i in 0..ring.dim() {
        let Some(&(n, value)) = acts.get(&i) else {
            if dim == 0 {
                action.push(Matrix::zeros(field, 0, 0));
                continue;
            }
            return Err(missing(&format!("act {i}")));
        };
        let rows: Vec<&str> = value.split('/').collect();
        if dim == 0 && rows.len() == 1 && rows[0].trim().is_empty() {
            action.push(Matrix::zeros(field, 0, 0));
            continue;
        }
        if rows.len() != dim {
            return Err(parse_err(
                n,
                format!("act {i} needs {dim} rows, found {}", rows.len()),
            ));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = ints(n, row)?;
            if row.len() != dim {
                return Err(parse_err(
                    n,
                    format!("act {i} rows need {dim} entries, found {}", row.len()),
                ));
            }
            data.extend(row.into_iter().map(|x| field.reduce(x)));
        }
        action.push(Matrix::from_data(field, dim, dim, data));
    }
    Ok(Module::new(ring, dim, action)?)
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn serialize_ring(ring: &Ring) -> String {
    let mut out = String::from("[ring]\n");
    let _ = writeln!(out, "name = {}", ring.name());
    let _ = writeln!(out, "p = {}", ring.p());
    let _ = writeln!(out, "dim = {}", ring.dim());
    let _ = writeln!(out, "unit = {}", join(ring.unit()));
    for i in 0..ring.dim() {
        for j in i..ring.dim() {
            let _ = writeln!(out, "mul {i} {j} = {}", join(&ring.product_of_basis(i, j)));
        }
    }
    out
}

pub fn serialize_module(m: &Module, name: &str) -> String {
    let mut out = String::from("[module]\n");
    let _ = writeln!(out, "name = {name}");
    let _ = writeln!(out, "ring = {}", m.ring().name());
    let _ = writeln!(out, "dim = {}", m.dim());
    for (i, a) in m.action().iter().enumerate() {
        let rows: Vec<String> = (0..a.rows()).map(|r| join(a.row(r))).collect();
        let _ = writeln!(out, "act {i} = {}", rows.join(" / "));
    }
    out
}
