//! Text formats for code files and generator matrix files.
//!
//! Code file (UTF-8, LF):
//! ```text
//! aqc 1
//! k 5/2
//! lines 8
//! 8 16 1
//! ...
//! ```
//! `k` is always written as `<2k>/2`. Each entry row names two distinct
//! points p < q of a line plus the multiplicity. Serialization is canonical
//! (entries by ascending line id, p and q the two smallest points), so
//! `serialize(parse(f)) == f` for canonical files.
//!
//! Generator matrix file: first line `<rows> <cols>`, then one `0`/`1`
//! string per row.

use crate::code::{BinaryLinearCode, GeneratorMatrix, LineMultiset};
use crate::geometry::Geometry;
use crate::{Error, Result};

pub fn serialize_code(lm: &LineMultiset) -> String {
    let g = lm.geometry().expect("valid multiset");
    let mut out = String::new();
    out.push_str("aqc 1\n");
    out.push_str(&format!("k {}/2\n", lm.k2()));
    out.push_str(&format!("lines {}\n", lm.entries().len()));
    for (&id, &mult) in lm.entries() {
        let pts = g.lines[id];
        out.push_str(&format!("{} {} {}\n", pts[0], pts[1], mult));
    }
    out
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_code(text: &str) -> Result<LineMultiset> {
    let mut lines = text.lines();
    match lines.next() {
        Some("aqc 1") => {}
        other => return Err(parse_err(format!("bad magic line: {:?}", other))),
    }
    let k2: usize = match lines.next().and_then(|l| l.strip_prefix("k ")) {
        Some(spec) => match spec.strip_suffix("/2") {
            Some(num) => num
                .parse()
                .map_err(|_| parse_err(format!("bad dimension: {spec}")))?,
            None => return Err(parse_err(format!("dimension must be written <2k>/2, got {spec}"))),
        },
        None => return Err(parse_err("missing k header")),
    };
    if !(2..=6).contains(&k2) {
        return Err(parse_err(format!("dimension {k2}/2 out of range")));
    }
    let count: usize = match lines.next().and_then(|l| l.strip_prefix("lines ")) {
        Some(c) => c
            .parse()
            .map_err(|_| parse_err(format!("bad entry count: {c}")))?,
        None => return Err(parse_err("missing lines header")),
    };
    let g = Geometry::get(k2 - 1)?;
    let mut lm = LineMultiset::new(k2)?;
    let mut rows = 0;
    for row in lines {
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(format!("expected 'p q mult', got {row:?}")));
        }
        let p: u32 = fields[0]
            .parse()
            .map_err(|_| parse_err(format!("bad point: {}", fields[0])))?;
        let q: u32 = fields[1]
            .parse()
            .map_err(|_| parse_err(format!("bad point: {}", fields[1])))?;
        let mult: u32 = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("bad multiplicity: {}", fields[2])))?;
        if p == q {
            return Err(parse_err(format!("row {row:?}: points must be distinct")));
        }
        if mult == 0 {
            return Err(parse_err(format!("row {row:?}: multiplicity must be positive")));
        }
        let id = g
            .line_id(p, q)
            .ok_or_else(|| parse_err(format!("row {row:?}: invalid points for PG({},2)", k2 - 1)))?;
        if lm.entries().contains_key(&id) {
            return Err(parse_err(format!("row {row:?}: duplicate line")));
        }
        lm.add(id, mult)?;
        rows += 1;
    }
    if rows != count {
        return Err(parse_err(format!("header says {count} entries, found {rows}")));
    }
    Ok(lm)
}

pub fn serialize_generator(gm: &GeneratorMatrix) -> String {
    let mut out = format!("{} {}\n", gm.k2, gm.cols.len());
    for i in 0..gm.k2 {
        for &c in &gm.cols {
            out.push(if c >> i & 1 == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn serialize_binary(blc: &BinaryLinearCode) -> String {
    let mut out = format!("{} {}\n", blc.k, blc.n_bits);
    for i in 0..blc.k {
        for j in 0..blc.n_bits {
            out.push(if blc.bit(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_binary(text: &str) -> Result<BinaryLinearCode> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err("empty file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(format!("bad header: {header}"))))
        .collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(parse_err(format!("bad header: {header}")));
    }
    let (k, n_bits) = (dims[0], dims[1]);
    let words = n_bits.div_ceil(64).max(1);
    let mut rows = Vec::with_capacity(k);
    for row in lines.by_ref().take(k) {
        if row.len() != n_bits {
            return Err(parse_err(format!("row length {} != {}", row.len(), n_bits)));
        }
        let mut packed = vec![0u64; words];
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '1' => packed[j / 64] |= 1 << (j % 64),
                '0' => {}
                _ => return Err(parse_err(format!("bad bit {ch:?}"))),
            }
        }
        rows.push(packed);
    }
    if rows.len() != k {
        return Err(parse_err(format!("expected {k} rows, found {}", rows.len())));
    }
    Ok(BinaryLinearCode::from_rows(rows, n_bits))
}
